//! Flat-torus Fourier operators on uniform grids.
//!
//! The torus is ℝ^d/ℤ^d with unit volume, eigenfunctions e^{2πik·x} and
//! frequencies λ_k = 2π|k|. Grid L^p norms use the mean (volume = 1), so
//! a single exponential has norm one for every p. Two operator shapes
//! cover everything here:
//!
//! * `TorusSynthesis` maps a coefficient vector c to Σ_i c_i a_i e^{2πik_i·x}
//!   (ℓ^p on coefficients → L^p on the grid);
//! * `TorusMultiplier` maps a grid function to the one with Fourier
//!   coefficients multiplied by a_k on a fixed mode list and zeroed off it.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ascent::{AscentConfig, PairedOperator};
use crate::fftutil::fft_nd;

/// Uniform n^dim grid on the unit torus, dim ∈ {2, 3}.
#[derive(Debug, Clone, Copy)]
pub struct TorusGrid {
    pub dim: usize,
    pub n: usize,
}

impl TorusGrid {
    pub fn new(dim: usize, n: usize) -> Self {
        assert!(dim == 2 || dim == 3, "torus grids are 2- or 3-dimensional");
        assert!(n >= 4, "grid too small");
        Self { dim, n }
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn dims(&self) -> Vec<usize> {
        vec![self.n; self.dim]
    }

    pub fn describe(&self) -> String {
        format!("torus{}d-n{}", self.dim, self.n)
    }

    /// Flat index of the lattice mode k (components folded mod n).
    pub fn index_of(&self, mode: [i64; 3]) -> usize {
        let n = self.n as i64;
        let mut idx = 0usize;
        for &c in mode.iter().take(self.dim) {
            idx = idx * self.n + c.rem_euclid(n) as usize;
        }
        idx
    }

    /// Mean-normalized grid L^p norm (exact for the unit-volume torus).
    pub fn lp_norm(&self, values: &[Complex64], p: f64) -> f64 {
        debug_assert_eq!(values.len(), self.len());
        let mean = values.iter().map(|z| z.norm().powf(p)).sum::<f64>() / values.len() as f64;
        mean.powf(1.0 / p)
    }

    /// e^{2πik·x} sampled over the grid.
    pub fn mode_function(&self, mode: [i64; 3]) -> Vec<Complex64> {
        let n = self.n as i64;
        let mut out = vec![Complex64::default(); self.len()];
        let mut coords = [0i64; 3];
        for (flat, slot) in out.iter_mut().enumerate() {
            let mut rem = flat;
            for ax in (0..self.dim).rev() {
                coords[ax] = (rem % self.n) as i64;
                rem /= self.n;
            }
            let mut phase = 0i64;
            for ax in 0..self.dim {
                phase = (phase + (mode[ax].rem_euclid(n)) * coords[ax]) % n;
            }
            let angle = 2.0 * std::f64::consts::PI * phase as f64 / self.n as f64;
            *slot = Complex64::from_polar(1.0, angle);
        }
        out
    }
}

/// Coefficients → grid synthesis with fixed mode list and weights.
pub struct TorusSynthesis {
    grid: TorusGrid,
    entries: Vec<([i64; 3], Complex64)>,
}

impl TorusSynthesis {
    pub fn new(grid: TorusGrid, entries: Vec<([i64; 3], Complex64)>) -> Self {
        let half = (grid.n / 2) as i64;
        for (mode, _) in &entries {
            for &c in mode.iter().take(grid.dim) {
                assert!(c.abs() <= half, "mode {c} aliases on an n = {} grid", grid.n);
            }
        }
        Self { grid, entries }
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn entries(&self) -> &[([i64; 3], Complex64)] {
        &self.entries
    }
}

impl PairedOperator for TorusSynthesis {
    fn apply(&self, input: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(input.len(), self.entries.len());
        let mut spectrum = vec![Complex64::default(); self.grid.len()];
        for ((mode, a), c) in self.entries.iter().zip(input) {
            spectrum[self.grid.index_of(*mode)] += a * c;
        }
        fft_nd(&mut spectrum, &self.grid.dims(), true);
        spectrum
    }

    fn apply_adjoint(&self, dual: &[Complex64]) -> Vec<Complex64> {
        let mut buf = dual.to_vec();
        fft_nd(&mut buf, &self.grid.dims(), false);
        let scale = 1.0 / self.grid.len() as f64;
        self.entries
            .iter()
            .map(|(mode, a)| a.conj() * buf[self.grid.index_of(*mode)] * scale)
            .collect()
    }

    /// Coefficient space carries the plain ℓ^p norm.
    fn input_norm(&self, v: &[Complex64], p: f64) -> f64 {
        v.iter().map(|z| z.norm().powf(p)).sum::<f64>().powf(1.0 / p)
    }

    fn output_norm(&self, v: &[Complex64], p: f64) -> f64 {
        self.grid.lp_norm(v, p)
    }
}

/// Grid → grid Fourier multiplier supported on a fixed mode list.
pub struct TorusMultiplier {
    grid: TorusGrid,
    entries: Vec<([i64; 3], Complex64)>,
}

impl TorusMultiplier {
    pub fn new(grid: TorusGrid, entries: Vec<([i64; 3], Complex64)>) -> Self {
        let half = (grid.n / 2) as i64;
        for (mode, _) in &entries {
            for &c in mode.iter().take(grid.dim) {
                assert!(c.abs() <= half, "mode {c} aliases on an n = {} grid", grid.n);
            }
        }
        Self { grid, entries }
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn entries(&self) -> &[([i64; 3], Complex64)] {
        &self.entries
    }

    fn apply_with_symbol(&self, input: &[Complex64], conjugate: bool) -> Vec<Complex64> {
        debug_assert_eq!(input.len(), self.grid.len());
        let mut buf = input.to_vec();
        fft_nd(&mut buf, &self.grid.dims(), false);
        let scale = 1.0 / self.grid.len() as f64;
        let mut spectrum = vec![Complex64::default(); self.grid.len()];
        for (mode, a) in &self.entries {
            let a = if conjugate { a.conj() } else { *a };
            let idx = self.grid.index_of(*mode);
            spectrum[idx] += a * buf[idx] * scale;
        }
        fft_nd(&mut spectrum, &self.grid.dims(), true);
        spectrum
    }
}

impl PairedOperator for TorusMultiplier {
    fn apply(&self, input: &[Complex64]) -> Vec<Complex64> {
        self.apply_with_symbol(input, false)
    }

    fn apply_adjoint(&self, dual: &[Complex64]) -> Vec<Complex64> {
        self.apply_with_symbol(dual, true)
    }

    fn input_norm(&self, v: &[Complex64], p: f64) -> f64 {
        self.grid.lp_norm(v, p)
    }

    fn output_norm(&self, v: &[Complex64], p: f64) -> f64 {
        self.grid.lp_norm(v, p)
    }
}

fn random_complex_vec(len: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

/// Mode indices belonging to a Knapp-type cap: k·e₁ ≥ 0 and the
/// transverse part below the given squared threshold.
fn knapp_indices(dim: usize, modes: &[[i64; 3]], transverse_sq: f64) -> Vec<usize> {
    modes
        .iter()
        .enumerate()
        .filter(|(_, k)| {
            let perp = if dim == 2 { k[1] * k[1] } else { k[1] * k[1] + k[2] * k[2] };
            k[0] >= 0 && (perp as f64) <= transverse_sq
        })
        .map(|(i, _)| i)
        .collect()
}

/// Starts for coefficient-space ascent: all-ones, a few single modes in
/// lexicographic order, an optional Knapp cap, and seeded random vectors.
pub(crate) fn synthesis_starts(
    dim: usize,
    modes: &[[i64; 3]],
    knapp_transverse_sq: Option<f64>,
    cfg: &AscentConfig,
) -> Vec<Vec<Complex64>> {
    let len = modes.len();
    let one = Complex64::new(1.0, 0.0);
    let mut starts = vec![vec![one; len]];
    let singles = len.min(12);
    for i in 0..singles {
        let mut v = vec![Complex64::default(); len];
        v[i * len / singles] = one;
        starts.push(v);
    }
    if let Some(t) = knapp_transverse_sq {
        let mut v = vec![Complex64::default(); len];
        for i in knapp_indices(dim, modes, t) {
            v[i] = one;
        }
        starts.push(v);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.random_starts {
        starts.push(random_complex_vec(len, &mut rng));
    }
    starts
}

/// Starts for grid-space ascent over a multiplier with the given mode
/// support: constant, pure exponentials at the first 12 listed modes
/// (callers order the list by priority, e.g. resonance), an optional
/// Knapp packet, and seeded random grid functions.
pub(crate) fn multiplier_starts(
    grid: &TorusGrid,
    modes: &[[i64; 3]],
    knapp_transverse_sq: Option<f64>,
    cfg: &AscentConfig,
) -> Vec<Vec<Complex64>> {
    let one = Complex64::new(1.0, 0.0);
    let mut starts = vec![vec![one; grid.len()]];
    for mode in modes.iter().take(12) {
        starts.push(grid.mode_function(*mode));
    }
    if let Some(t) = knapp_transverse_sq {
        let idx = knapp_indices(grid.dim, modes, t);
        if !idx.is_empty() {
            let mut v = vec![Complex64::default(); grid.len()];
            for i in idx {
                let f = grid.mode_function(modes[i]);
                for (slot, z) in v.iter_mut().zip(&f) {
                    *slot += z;
                }
            }
            starts.push(v);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.random_starts {
        starts.push(random_complex_vec(grid.len(), &mut rng));
    }
    starts
}
