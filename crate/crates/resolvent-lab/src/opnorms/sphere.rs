//! Zonal convolution operators on the round 3-sphere.
//!
//! S³ carries the coordinates x = (cosθ₁, sinθ₁cosθ₂, sinθ₁sinθ₂cosφ,
//! sinθ₁sinθ₂sinφ) with measure sin²θ₁ sinθ₂ dθ₁ dθ₂ dφ and total mass
//! 2π². The degree-k eigenspace of −Δ (eigenvalue k(k+2), dimension
//! (k+1)²) has reproducing kernel
//!
//!   Z_k(x·y) = (k+1) U_k(x·y) / (2π²),
//!
//! U_k the Chebyshev polynomial of the second kind. An operator with
//! kernel G(x·y) = Σ_k c_k Z_k(x·y) acts diagonally on those eigenspaces
//! with eigenvalues c_k.
//!
//! Discretization: a product grid with Gauss–Chebyshev (second kind)
//! nodes in cosθ₁, Gauss–Legendre nodes in cosθ₂, and a uniform φ grid.
//! With m₁ = m₂ = D+1 and M = 2D+2 φ-nodes the rule integrates products
//! of two degree-≤D polynomial kernels exactly, so degree-≤D projectors
//! stay idempotent on the grid. Since x·y depends on φ, φ' only through
//! φ−φ', the operator is a φ-convolution: conjugating by the φ-DFT turns
//! it into one real symmetric (θ₁θ₂)-pair matrix per frequency m, with
//! the m ↔ M−m symmetry halving storage.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::{Fft, FftDirection, FftPlanner};

use super::ascent::{AscentConfig, PairedOperator};
use crate::quad::gauss_legendre;
use crate::{Error, Result};

const VOL_S3: f64 = 2.0 * std::f64::consts::PI * std::f64::consts::PI;

/// Σ_k c_k (k+1) U_k(t) / (2π²): the zonal kernel with the given
/// eigenspace coefficients, evaluated at t = x·y ∈ [−1, 1].
pub fn zonal_kernel_value(coeffs: &[(u32, Complex64)], t: f64) -> Complex64 {
    let kmax = coeffs.iter().map(|c| c.0).max().unwrap_or(0) as usize;
    let mut dense = vec![Complex64::default(); kmax + 1];
    for (k, c) in coeffs {
        dense[*k as usize] += c * (*k as f64 + 1.0) / VOL_S3;
    }
    let mut acc = Complex64::default();
    let mut prev = 0.0f64; // U_{-1}
    let mut cur = 1.0f64; // U_0
    for c in &dense {
        acc += c * cur;
        let next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
    }
    acc
}

/// Product quadrature grid on S³ exact through polynomial degree
/// 2·`degree`+1 in each angular factor.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    pub degree: usize,
    pub m1: usize,
    pub m2: usize,
    pub mphi: usize,
    u: Vec<f64>,
    su: Vec<f64>,
    v: Vec<f64>,
    sv: Vec<f64>,
    pair_w: Vec<f64>,
}

impl SphereGrid {
    pub fn for_degree(degree: usize) -> Self {
        assert!(degree >= 1, "grid degree must be positive");
        let m1 = degree + 1;
        let m2 = degree + 1;
        let mphi = 2 * degree + 2;
        let mut u = Vec::with_capacity(m1);
        let mut su = Vec::with_capacity(m1);
        let mut wu = Vec::with_capacity(m1);
        for i in 1..=m1 {
            let th = i as f64 * std::f64::consts::PI / (m1 + 1) as f64;
            u.push(th.cos());
            su.push(th.sin());
            wu.push(std::f64::consts::PI / (m1 + 1) as f64 * th.sin() * th.sin());
        }
        let (v, wv) = gauss_legendre(m2).clone();
        let sv: Vec<f64> = v.iter().map(|x| (1.0 - x * x).max(0.0).sqrt()).collect();
        let mut pair_w = Vec::with_capacity(m1 * m2);
        for i in 0..m1 {
            for j in 0..m2 {
                pair_w.push(wu[i] * wv[j]);
            }
        }
        Self { degree, m1, m2, mphi, u, su, v, sv, pair_w }
    }

    /// Number of (θ₁, θ₂) pairs.
    pub fn pairs(&self) -> usize {
        self.m1 * self.m2
    }

    pub fn len(&self) -> usize {
        self.pairs() * self.mphi
    }

    pub fn describe(&self) -> String {
        format!("sphere3-deg{}-{}x{}x{}", self.degree, self.m1, self.m2, self.mphi)
    }

    /// Quadrature mass Σw; equals 2π² up to rounding.
    pub fn total_mass(&self) -> f64 {
        self.pair_w.iter().sum::<f64>() * 2.0 * std::f64::consts::PI
    }

    /// Weighted grid L^p norm with respect to the surface measure.
    pub fn lp_norm(&self, values: &[Complex64], p: f64) -> f64 {
        debug_assert_eq!(values.len(), self.len());
        let wphi = 2.0 * std::f64::consts::PI / self.mphi as f64;
        let mut total = 0.0;
        for pair in 0..self.pairs() {
            let mut s = 0.0;
            for e in 0..self.mphi {
                s += values[pair * self.mphi + e].norm().powf(p);
            }
            total += s * self.pair_w[pair] * wphi;
        }
        total.powf(1.0 / p)
    }

    /// Surface-measure inner product ⟨f, g⟩ = Σ f ḡ w.
    pub fn inner(&self, f: &[Complex64], g: &[Complex64]) -> Complex64 {
        let wphi = 2.0 * std::f64::consts::PI / self.mphi as f64;
        let mut total = Complex64::default();
        for pair in 0..self.pairs() {
            let mut s = Complex64::default();
            for e in 0..self.mphi {
                let idx = pair * self.mphi + e;
                s += f[idx] * g[idx].conj();
            }
            total += s * self.pair_w[pair] * wphi;
        }
        total
    }

    /// The zonal function Z_k(x·N) about the pole N = (1,0,0,0), whose
    /// value at a grid point depends only on cosθ₁.
    pub fn zonal_function(&self, k: u32) -> Vec<Complex64> {
        let coeffs = [(k, Complex64::new(1.0, 0.0))];
        let mut out = Vec::with_capacity(self.len());
        for i in 0..self.m1 {
            let z = zonal_kernel_value(&coeffs, self.u[i]);
            for _ in 0..self.m2 * self.mphi {
                out.push(z);
            }
        }
        out
    }

    /// The kernel column G(x · x₀) for x₀ the mid-grid node: a translate
    /// of the zonal kernel whose peak sits on an actual quadrature node
    /// (the pole θ₁ = 0 is not one), so grid norms see the full peak.
    pub fn kernel_column(&self, coeffs: &[(u32, Complex64)]) -> Vec<Complex64> {
        let (i0, j0) = (self.m1 / 2, self.m2 / 2);
        let mut out = Vec::with_capacity(self.len());
        for i in 0..self.m1 {
            for j in 0..self.m2 {
                let a = self.u[i] * self.u[i0] + self.su[i] * self.su[i0] * self.v[j] * self.v[j0];
                let b = self.su[i] * self.su[i0] * self.sv[j] * self.sv[j0];
                for e in 0..self.mphi {
                    let dphi = 2.0 * std::f64::consts::PI * e as f64 / self.mphi as f64;
                    out.push(zonal_kernel_value(coeffs, a + b * dphi.cos()));
                }
            }
        }
        out
    }

    /// The highest-weight harmonic (x₃ + i x₄)^k = (sinθ₁ sinθ₂)^k e^{ikφ},
    /// concentrated on the equatorial circle.
    pub fn sectoral_function(&self, k: u32) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.len());
        for i in 0..self.m1 {
            for j in 0..self.m2 {
                let amp = (self.su[i] * self.sv[j]).powi(k as i32);
                for e in 0..self.mphi {
                    let phase = 2.0 * std::f64::consts::PI * (k as usize * e % self.mphi) as f64
                        / self.mphi as f64;
                    out.push(Complex64::from_polar(amp, phase));
                }
            }
        }
        out
    }
}

/// Kernel operator f ↦ ∫ G(x·y) f(y) dy realized as per-φ-frequency
/// dense matrices over the (θ₁, θ₂) pairs.
pub struct ZonalOperator<'g> {
    grid: &'g SphereGrid,
    coeffs: Vec<(u32, Complex64)>,
    /// Real part of Ĝ_m, planes m = 0..=M/2, each pairs×pairs row-major.
    gre: Vec<f64>,
    /// Imaginary part, present only for genuinely complex kernels.
    gim: Option<Vec<f64>>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl<'g> ZonalOperator<'g> {
    pub fn build(grid: &'g SphereGrid, coeffs: &[(u32, Complex64)]) -> Result<Self> {
        let kmax = coeffs.iter().map(|c| c.0).max().unwrap_or(0) as usize;
        if kmax > grid.degree {
            return Err(Error::InvalidParameter(format!(
                "kernel degree {kmax} exceeds grid quadrature degree {}",
                grid.degree
            )));
        }
        // Dense eigenvalue table scaled to Chebyshev coefficients of G.
        let mut cre = vec![0.0f64; kmax + 1];
        let mut cim = vec![0.0f64; kmax + 1];
        for (k, c) in coeffs {
            cre[*k as usize] += c.re * (*k as f64 + 1.0) / VOL_S3;
            cim[*k as usize] += c.im * (*k as f64 + 1.0) / VOL_S3;
        }
        let has_im = cim.iter().any(|&x| x != 0.0);

        let np = grid.pairs();
        let m = grid.mphi;
        let m2q = m / 2;
        let planes = m2q + 1;
        // One f64 plane per frequency, doubled for complex kernels.
        let bytes = planes as u64 * (np as u64).pow(2) * 8 * if has_im { 2 } else { 1 };
        if bytes > 3_500_000_000 {
            return Err(Error::InvalidParameter(format!(
                "kernel matrices for grid degree {} need {bytes} bytes, over the memory budget",
                grid.degree
            )));
        }
        let mut gre = vec![0.0f64; planes * np * np];
        let mut gim = if has_im { Some(vec![0.0f64; planes * np * np]) } else { None };

        // cos(2πd/M) and the DFT cosine table cos(2πmd/M).
        let cphi: Vec<f64> = (0..=m2q)
            .map(|d| (2.0 * std::f64::consts::PI * d as f64 / m as f64).cos())
            .collect();
        let mut ctab = vec![0.0f64; planes * planes];
        for mm in 0..planes {
            for d in 0..planes {
                ctab[mm * planes + d] =
                    (2.0 * std::f64::consts::PI * (mm * d % m) as f64 / m as f64).cos();
            }
        }

        let mut g_re = vec![0.0f64; planes];
        let mut g_im = vec![0.0f64; planes];
        for p in 0..np {
            let (i, j) = (p / grid.m2, p % grid.m2);
            for p2 in p..np {
                let (i2, j2) = (p2 / grid.m2, p2 % grid.m2);
                let a = grid.u[i] * grid.u[i2]
                    + grid.su[i] * grid.su[i2] * grid.v[j] * grid.v[j2];
                let b = grid.su[i] * grid.su[i2] * grid.sv[j] * grid.sv[j2];
                for d in 0..planes {
                    let t = a + b * cphi[d];
                    // Clenshaw-free forward recurrence: cheap and stable
                    // for |t| ≤ 1 + O(ε).
                    let mut sre = 0.0;
                    let mut sim = 0.0;
                    let mut prev = 0.0f64;
                    let mut cur = 1.0f64;
                    for k in 0..=kmax {
                        sre += cre[k] * cur;
                        sim += cim[k] * cur;
                        let next = 2.0 * t * cur - prev;
                        prev = cur;
                        cur = next;
                    }
                    g_re[d] = sre;
                    g_im[d] = sim;
                }
                for mm in 0..planes {
                    let row = &ctab[mm * planes..mm * planes + planes];
                    let sign = if mm % 2 == 0 { 1.0 } else { -1.0 };
                    let mut s = g_re[0] + sign * g_re[m2q];
                    for d in 1..m2q {
                        s += 2.0 * g_re[d] * row[d];
                    }
                    gre[(mm * np + p) * np + p2] = s;
                    gre[(mm * np + p2) * np + p] = s;
                    if let Some(gi) = gim.as_mut() {
                        let mut si = g_im[0] + sign * g_im[m2q];
                        for d in 1..m2q {
                            si += 2.0 * g_im[d] * row[d];
                        }
                        gi[(mm * np + p) * np + p2] = si;
                        gi[(mm * np + p2) * np + p] = si;
                    }
                }
            }
        }

        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft(m, FftDirection::Forward);
        let inv = planner.plan_fft(m, FftDirection::Inverse);
        Ok(Self { grid, coeffs: coeffs.to_vec(), gre, gim, fwd, inv })
    }

    pub fn grid(&self) -> &SphereGrid {
        self.grid
    }

    pub fn coeffs(&self) -> &[(u32, Complex64)] {
        &self.coeffs
    }

    /// Kernel value G(t); the diagonal is G(1) = Σ c_k (k+1)²/(2π²).
    pub fn kernel_value(&self, t: f64) -> Complex64 {
        zonal_kernel_value(&self.coeffs, t)
    }

    fn apply_inner(&self, input: &[Complex64], conjugate: bool) -> Vec<Complex64> {
        let np = self.grid.pairs();
        let m = self.grid.mphi;
        let m2q = m / 2;
        debug_assert_eq!(input.len(), np * m);

        // û(p, ·): forward DFT along φ, pair by pair (contiguous rows).
        let mut buf = input.to_vec();
        for p in 0..np {
            self.fwd.process(&mut buf[p * m..(p + 1) * m]);
        }
        // Fold quadrature weights and transpose to frequency-major.
        let mut xt = vec![Complex64::default(); m * np];
        for p in 0..np {
            let w = self.grid.pair_w[p];
            for e in 0..m {
                xt[e * np + p] = buf[p * m + e] * w;
            }
        }
        // One symmetric real matrix per frequency pair {m, M−m}.
        let mut y = vec![Complex64::default(); m * np];
        let sgn = if conjugate { -1.0 } else { 1.0 };
        for mm in 0..=m2q {
            let mirror = (m - mm) % m;
            let re = &self.gre[mm * np * np..(mm + 1) * np * np];
            let im = self.gim.as_deref().map(|g| &g[mm * np * np..(mm + 1) * np * np]);
            let x1 = &xt[mm * np..(mm + 1) * np];
            if mirror == mm {
                for row in 0..np {
                    let rr = &re[row * np..row * np + np];
                    let mut acc = Complex64::default();
                    match im {
                        None => {
                            for c in 0..np {
                                acc += rr[c] * x1[c];
                            }
                        }
                        Some(gi) => {
                            let ri = &gi[row * np..row * np + np];
                            for c in 0..np {
                                acc += Complex64::new(rr[c], sgn * ri[c]) * x1[c];
                            }
                        }
                    }
                    y[mm * np + row] = acc;
                }
            } else {
                let x2 = &xt[mirror * np..(mirror + 1) * np];
                for row in 0..np {
                    let rr = &re[row * np..row * np + np];
                    let mut acc1 = Complex64::default();
                    let mut acc2 = Complex64::default();
                    match im {
                        None => {
                            for c in 0..np {
                                acc1 += rr[c] * x1[c];
                                acc2 += rr[c] * x2[c];
                            }
                        }
                        Some(gi) => {
                            let ri = &gi[row * np..row * np + np];
                            for c in 0..np {
                                let sym = Complex64::new(rr[c], sgn * ri[c]);
                                acc1 += sym * x1[c];
                                acc2 += sym * x2[c];
                            }
                        }
                    }
                    y[mm * np + row] = acc1;
                    y[mirror * np + row] = acc2;
                }
            }
        }
        // Back to pair-major, inverse DFT, scale by (2π/M)·(1/M).
        let mut out = vec![Complex64::default(); np * m];
        for p in 0..np {
            for e in 0..m {
                out[p * m + e] = y[e * np + p];
            }
        }
        for p in 0..np {
            self.inv.process(&mut out[p * m..(p + 1) * m]);
        }
        let scale = 2.0 * std::f64::consts::PI / (m * m) as f64;
        for z in &mut out {
            *z *= scale;
        }
        out
    }
}

impl PairedOperator for ZonalOperator<'_> {
    fn apply(&self, input: &[Complex64]) -> Vec<Complex64> {
        self.apply_inner(input, false)
    }

    fn apply_adjoint(&self, dual: &[Complex64]) -> Vec<Complex64> {
        self.apply_inner(dual, true)
    }

    fn input_norm(&self, v: &[Complex64], p: f64) -> f64 {
        self.grid.lp_norm(v, p)
    }

    fn output_norm(&self, v: &[Complex64], p: f64) -> f64 {
        self.grid.lp_norm(v, p)
    }
}

/// Mandatory ascent starts for a zonal operator: constant, the kernel
/// column at a grid node, zonal spikes at up to 12 of the kernel's
/// degrees, the highest-weight (sectoral) harmonic at the dominant
/// degree, and seeded random grid functions.
pub(crate) fn sphere_starts(
    grid: &SphereGrid,
    coeffs: &[(u32, Complex64)],
    cfg: &AscentConfig,
) -> Vec<Vec<Complex64>> {
    let mut starts = vec![vec![Complex64::new(1.0, 0.0); grid.len()]];
    let mut degrees: Vec<u32> = coeffs.iter().map(|c| c.0).collect();
    degrees.sort_unstable();
    degrees.dedup();
    if !degrees.is_empty() {
        starts.push(grid.kernel_column(coeffs));
        let singles = degrees.len().min(12);
        for i in 0..singles {
            starts.push(grid.zonal_function(degrees[i * degrees.len() / singles]));
        }
        // Dominant degree: largest |c_k|·dim of the eigenspace.
        let dominant = coeffs
            .iter()
            .map(|(k, c)| (*k, c.norm() * (*k as f64 + 1.0).powi(2)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(k, _)| k)
            .unwrap_or(0);
        starts.push(grid.sectoral_function(dominant));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.random_starts {
        let v: Vec<Complex64> = (0..grid.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        starts.push(v);
    }
    starts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opnorms::ascent::run_ascent;

    #[test]
    fn quadrature_mass_is_sphere_volume() {
        for d in [1, 3, 8, 15] {
            let g = SphereGrid::for_degree(d);
            assert!(
                (g.total_mass() - VOL_S3).abs() < 1e-10,
                "degree {d}: mass {}",
                g.total_mass()
            );
        }
    }

    #[test]
    fn zonal_functions_reproduce_eigenspace_dimensions() {
        // ⟨Z_k(·N), Z_l(·N)⟩ = δ_kl Z_k(1) = δ_kl (k+1)²/(2π²).
        let g = SphereGrid::for_degree(9);
        for k in [0u32, 1, 4, 7] {
            for l in [0u32, 1, 4, 7] {
                let zk = g.zonal_function(k);
                let zl = g.zonal_function(l);
                let got = g.inner(&zk, &zl).re;
                let expect =
                    if k == l { (k as f64 + 1.0).powi(2) / VOL_S3 } else { 0.0 };
                assert!(
                    (got - expect).abs() < 1e-10,
                    "k {k} l {l}: got {got}, expect {expect}"
                );
            }
        }
    }

    #[test]
    fn kernel_value_matches_chebyshev_closed_form() {
        // U_3(cos θ) = sin(4θ)/sin(θ).
        let t: f64 = 0.3;
        let th = t.acos();
        let expect = 4.0 * (4.0 * th).sin() / th.sin() / VOL_S3;
        let got = zonal_kernel_value(&[(3, Complex64::new(1.0, 0.0))], t);
        assert!((got.re - expect).abs() < 1e-12);
        assert_eq!(got.im, 0.0);
    }

    #[test]
    fn engine_matches_brute_force_kernel_sum() {
        let g = SphereGrid::for_degree(3);
        let coeffs = vec![
            (0u32, Complex64::new(0.5, -0.25)),
            (2u32, Complex64::new(-1.0, 2.0)),
            (3u32, Complex64::new(0.0, 0.7)),
        ];
        let op = ZonalOperator::build(&g, &coeffs).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f: Vec<Complex64> = (0..g.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let fast = op.apply(&f);

        let wphi = 2.0 * std::f64::consts::PI / g.mphi as f64;
        let mut slow = vec![Complex64::default(); g.len()];
        for p in 0..g.pairs() {
            let (i, j) = (p / g.m2, p % g.m2);
            for e in 0..g.mphi {
                let mut acc = Complex64::default();
                for p2 in 0..g.pairs() {
                    let (i2, j2) = (p2 / g.m2, p2 % g.m2);
                    let a = g.u[i] * g.u[i2] + g.su[i] * g.su[i2] * g.v[j] * g.v[j2];
                    let b = g.su[i] * g.su[i2] * g.sv[j] * g.sv[j2];
                    for e2 in 0..g.mphi {
                        let dphi = 2.0 * std::f64::consts::PI
                            * ((e + g.mphi - e2) % g.mphi) as f64
                            / g.mphi as f64;
                        let t = a + b * dphi.cos();
                        acc += zonal_kernel_value(&coeffs, t)
                            * f[p2 * g.mphi + e2]
                            * g.pair_w[p2]
                            * wphi;
                    }
                }
                slow[p * g.mphi + e] = acc;
            }
        }
        for (x, y) in fast.iter().zip(&slow) {
            assert!((x - y).norm() < 1e-10, "fast {x} slow {y}");
        }
    }

    #[test]
    fn adjoint_pairs_correctly_under_the_surface_inner_product() {
        let g = SphereGrid::for_degree(4);
        let coeffs =
            vec![(1u32, Complex64::new(0.3, 1.1)), (4u32, Complex64::new(-0.8, 0.2))];
        let op = ZonalOperator::build(&g, &coeffs).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f: Vec<Complex64> = (0..g.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let h: Vec<Complex64> = (0..g.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let lhs = g.inner(&op.apply(&f), &h);
        let rhs = g.inner(&f, &op.apply_adjoint(&h));
        assert!((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn projector_is_idempotent_and_reproduces_its_zonal_function() {
        let g = SphereGrid::for_degree(6);
        let k = 4u32;
        let op = ZonalOperator::build(&g, &[(k, Complex64::new(1.0, 0.0))]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let f: Vec<Complex64> = (0..g.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let once = op.apply(&f);
        let twice = op.apply(&once);
        let scale = g.lp_norm(&once, 2.0);
        for (a, b) in twice.iter().zip(&once) {
            assert!((a - b).norm() < 1e-9 * (1.0 + scale));
        }

        let zk = g.zonal_function(k);
        let back = op.apply(&zk);
        for (a, b) in back.iter().zip(&zk) {
            assert!((a - b).norm() < 1e-9);
        }

        // Constants are killed by every positive-degree projector.
        let ones = vec![Complex64::new(1.0, 0.0); g.len()];
        let dead = op.apply(&ones);
        assert!(g.lp_norm(&dead, 2.0) < 1e-9);
    }

    #[test]
    fn projector_operator_norm_is_one_on_l2() {
        let g = SphereGrid::for_degree(8);
        let op = ZonalOperator::build(&g, &[(5, Complex64::new(1.0, 0.0))]).unwrap();
        let cfg = AscentConfig { random_starts: 2, ..AscentConfig::default() };
        let starts = sphere_starts(&g, op.coeffs(), &cfg);
        let out = run_ascent(&op, &starts, 2.0, 2.0, &cfg);
        assert!((out.value - 1.0).abs() < 1e-7, "‖H_5‖₂ = {}", out.value);
    }

    #[test]
    fn degree_beyond_grid_exactness_is_refused() {
        let g = SphereGrid::for_degree(5);
        let err = ZonalOperator::build(&g, &[(6, Complex64::new(1.0, 0.0))])
            .err()
            .expect("degree 6 exceeds a degree-5 grid");
        assert!(matches!(err, Error::InvalidParameter(_)));
    }
}
