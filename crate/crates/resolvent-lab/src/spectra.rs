//! Spectra of √(−Δ) on the model geometries.
//!
//! * Flat torus ℝⁿ/ℤⁿ: eigenvalues 2π|k|, k ∈ ℤⁿ, grouped by the integer
//!   m = |k|² with multiplicity r_n(m), the number of lattice
//!   representations of m as a sum of n squares.
//! * Round sphere Sⁿ: eigenvalues √(k(k+n−1)) with multiplicity
//!   d_k = C(k+n, n) − C(k+n−2, n), the dimension of degree-k spherical
//!   harmonics.
//! * Synthetic Zoll-type spectra: for each k ≥ 1 a cluster of d_k simple
//!   eigenvalues placed low-discrepancy inside [k+α−A/k, k+α+A/k],
//!   reproducing the O(1/k) cluster widths of metrics all of whose
//!   geodesics are closed.
//!
//! The central object is [`SpectrumTable`]: a strictly increasing list of
//! (eigenvalue, multiplicity) pairs complete up to a stated horizon, with
//! right-continuous counting queries N(λ) and closed-window shell counts
//! N(λ+ε) − N((λ−ε)⁻).

use serde::{Deserialize, Serialize};

use crate::special::sphere_volume;
use crate::{Error, Result};

/// One eigenvalue of √(−Δ) together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub lambda: f64,
    pub mult: u64,
}

/// A model geometry whose spectrum can be tabulated exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelManifold {
    Torus { dim: u32 },
    Sphere { dim: u32 },
    /// Synthetic spectrum with Zoll-type eigenvalue clusters: cluster k is
    /// centered at k + alpha with half-width gap_a / k; `seed` fixes the
    /// low-discrepancy placement inside each cluster.
    ZollSynthetic { dim: u32, alpha: f64, gap_a: f64, seed: u64 },
}

impl ModelManifold {
    pub fn dim(&self) -> u32 {
        match *self {
            ModelManifold::Torus { dim }
            | ModelManifold::Sphere { dim }
            | ModelManifold::ZollSynthetic { dim, .. } => dim,
        }
    }

    /// Normalized Riemannian volume: 1 for the unit torus, the round
    /// volume for Sⁿ, and 1 for the synthetic Zoll models (their levels
    /// are abstract — unit normalization keeps proxies comparable).
    pub fn volume(&self) -> f64 {
        match *self {
            ModelManifold::Torus { .. } | ModelManifold::ZollSynthetic { .. } => 1.0,
            ModelManifold::Sphere { dim } => sphere_volume(dim),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dim() < 2 {
            return Err(Error::InvalidParameter(format!(
                "model manifolds need dimension at least 2, got {}",
                self.dim()
            )));
        }
        if let ModelManifold::ZollSynthetic { alpha, gap_a, .. } = *self {
            if !(gap_a > 0.0) || !gap_a.is_finite() || !(alpha >= 0.0) || !alpha.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "cluster geometry needs gap_a > 0 and alpha >= 0, got gap_a={gap_a} alpha={alpha}"
                )));
            }
        }
        Ok(())
    }

    /// Tabulate the spectrum up to `lambda_max`.
    pub fn spectrum(&self, lambda_max: f64) -> Result<SpectrumTable> {
        self.validate()?;
        if !(lambda_max >= 0.0 && lambda_max.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "spectral horizon must be finite and nonnegative, got {lambda_max}"
            )));
        }
        match *self {
            ModelManifold::Torus { dim } => torus_spectrum(dim, lambda_max),
            ModelManifold::Sphere { .. } => sphere_spectrum_to(*self, lambda_max),
            ModelManifold::ZollSynthetic { .. } => zoll_spectrum_to(*self, lambda_max),
        }
    }
}

/// Strictly increasing eigenvalue table, complete up to its horizon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    manifold: ModelManifold,
    levels: Vec<Level>,
    /// cumulative[i] = Σ_{j<i} mult_j; length is levels.len() + 1.
    cumulative: Vec<u64>,
    horizon: f64,
}

impl SpectrumTable {
    /// Build from levels, validating strict monotonicity and completeness
    /// (no level may exceed the horizon).
    pub fn from_levels(
        manifold: ModelManifold,
        levels: Vec<Level>,
        horizon: f64,
    ) -> Result<Self> {
        if !(horizon.is_finite() && horizon >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "spectrum horizon must be finite and nonnegative, got {horizon}"
            )));
        }
        let mut cumulative = Vec::with_capacity(levels.len() + 1);
        cumulative.push(0u64);
        let mut prev = f64::NEG_INFINITY;
        for lv in &levels {
            if !lv.lambda.is_finite() || lv.lambda < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "eigenvalue {} is not a finite nonnegative number",
                    lv.lambda
                )));
            }
            if lv.lambda <= prev {
                return Err(Error::InvalidParameter(format!(
                    "levels must be strictly increasing ({prev} then {})",
                    lv.lambda
                )));
            }
            if lv.lambda > horizon {
                return Err(Error::InvalidParameter(format!(
                    "level {} exceeds the horizon {horizon}",
                    lv.lambda
                )));
            }
            if lv.mult == 0 {
                return Err(Error::InvalidParameter("zero multiplicity".into()));
            }
            prev = lv.lambda;
            cumulative.push(cumulative.last().unwrap() + lv.mult);
        }
        Ok(Self { manifold, levels, cumulative, horizon })
    }

    pub fn manifold(&self) -> &ModelManifold {
        &self.manifold
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn total_count(&self) -> u64 {
        *self.cumulative.last().unwrap()
    }

    fn check_horizon(&self, lambda: f64) -> Result<()> {
        if lambda > self.horizon {
            Err(Error::HorizonExceeded { lambda, horizon: self.horizon })
        } else {
            Ok(())
        }
    }

    /// Right-continuous counting function N(λ) = #{λ_j ≤ λ}, multiplicity
    /// included. Queries beyond the horizon are refused: the table carries
    /// no information there.
    pub fn weyl_count(&self, lambda: f64) -> Result<u64> {
        self.check_horizon(lambda)?;
        let idx = self.levels.partition_point(|lv| lv.lambda <= lambda);
        Ok(self.cumulative[idx])
    }

    /// #{λ_j ∈ [λ−ε, λ+ε]}, both endpoints included — the window count
    /// N(λ+ε) − N((λ−ε)⁻).
    pub fn shell_count(&self, lambda: f64, eps: f64) -> Result<u64> {
        if !(eps >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "shell half-width must be nonnegative, got {eps}"
            )));
        }
        self.check_horizon(lambda + eps)?;
        let lo = self.levels.partition_point(|lv| lv.lambda < lambda - eps);
        let hi = self.levels.partition_point(|lv| lv.lambda <= lambda + eps);
        Ok(self.cumulative[hi] - self.cumulative[lo])
    }

    /// The levels lying in the closed interval [lo, hi].
    pub fn levels_in(&self, lo: f64, hi: f64) -> Result<&[Level]> {
        self.check_horizon(hi)?;
        let a = self.levels.partition_point(|lv| lv.lambda < lo);
        let b = self.levels.partition_point(|lv| lv.lambda <= hi);
        Ok(&self.levels[a..b])
    }

    /// Closed spectral window with its density statistics.
    pub fn window(&self, lambda: f64, epsilon: f64) -> Result<WindowSpec> {
        if !(lambda > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "window center must be positive, got {lambda}"
            )));
        }
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "window half-width must lie in (0, 1], got {epsilon}"
            )));
        }
        let count = self.shell_count(lambda, epsilon)?;
        let dim = self.manifold.dim();
        let density_ratio = count as f64 / (epsilon * lambda.powi(dim as i32 - 1));
        Ok(WindowSpec { lambda, epsilon, count, density_ratio })
    }
}

/// A spectral window [λ−ε, λ+ε] with its density statistics; the count is
/// closed on both ends and density_ratio = count / (ε λ^{n−1}).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub lambda: f64,
    pub epsilon: f64,
    pub count: u64,
    pub density_ratio: f64,
}

/// One row of a density scan: flagged when the ratio exceeds the blow-up
/// candidate threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityScanRow {
    pub lambda: f64,
    pub epsilon: f64,
    pub count: u64,
    pub density_ratio: f64,
    pub flagged: bool,
}

/// Evaluate window densities along a λ-grid with a width rule ε(λ),
/// flagging candidate resolvent blow-up points where the normalized
/// density exceeds `flag_threshold`.
pub fn density_blowup_scan(
    table: &SpectrumTable,
    epsilon_rule: impl Fn(f64) -> f64,
    lambda_grid: &[f64],
    flag_threshold: f64,
) -> Result<Vec<DensityScanRow>> {
    let mut rows = Vec::with_capacity(lambda_grid.len());
    for &lambda in lambda_grid {
        let eps = epsilon_rule(lambda);
        let w = table.window(lambda, eps)?;
        rows.push(DensityScanRow {
            lambda,
            epsilon: eps,
            count: w.count,
            density_ratio: w.density_ratio,
            flagged: w.density_ratio > flag_threshold,
        });
    }
    Ok(rows)
}

/// Budget guard for the representation-count dynamic program (unit: inner
/// loop steps, ≈ dim · m_max · √m_max).
const REP_WORK_CAP: u128 = 2_000_000_000;

/// r_n(m) for all 0 ≤ m ≤ m_max: the number of k ∈ ℤⁿ with |k|² = m,
/// via n-fold convolution with the one-dimensional counts.
pub fn rep_counts(dim: u32, m_max: u64) -> Result<Vec<u64>> {
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let root = m_max.isqrt();
    let work = dim as u128 * (m_max as u128 + 1) * (root as u128 + 1);
    if work > REP_WORK_CAP {
        return Err(Error::EnumerationCap {
            needed: work.min(u64::MAX as u128) as u64,
            cap: REP_WORK_CAP as u64,
        });
    }
    let len = (m_max + 1) as usize;
    let mut counts = vec![0u64; len];
    counts[0] = 1;
    for _ in 0..dim {
        let mut next = vec![0u64; len];
        for (m, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            next[m] += c;
            let mut j = 1u64;
            while j * j <= (len - 1 - m) as u64 {
                next[m + (j * j) as usize] += 2 * c;
                j += 1;
            }
        }
        counts = next;
    }
    Ok(counts)
}

/// Torus spectrum up to `lambda_max`: levels 2π√m with multiplicity
/// r_n(m), grouped by the exact integer m = |k|².
pub fn torus_spectrum(dim: u32, lambda_max: f64) -> Result<SpectrumTable> {
    let manifold = ModelManifold::Torus { dim };
    manifold.validate()?;
    if !(lambda_max >= 0.0 && lambda_max.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "spectral horizon must be finite and nonnegative, got {lambda_max}"
        )));
    }
    let r = lambda_max / (2.0 * std::f64::consts::PI);
    let m_max = (r * r).floor() as u64;
    let reps = rep_counts(dim, m_max)?;
    let mut levels = Vec::new();
    for (m, &c) in reps.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let lambda = 2.0 * std::f64::consts::PI * (m as f64).sqrt();
        // Guard the float boundary: m ≤ m_max guarantees λ ≤ λ_max only up
        // to rounding, so drop strays just above the horizon.
        if lambda <= lambda_max {
            levels.push(Level { lambda, mult: c });
        }
    }
    SpectrumTable::from_levels(manifold, levels, lambda_max)
}

/// dim of the space of degree-k spherical harmonics on Sⁿ:
/// C(k+n, n) − C(k+n−2, n); equals 2k+1 on S² and (k+1)² on S³.
pub fn harmonic_dimension(n: u32, k: u32) -> u64 {
    assert!(n >= 1, "harmonic dimension needs sphere dimension at least 1");
    match k {
        0 => 1,
        1 => u64::from(n) + 1,
        _ => {
            let a = binomial(u64::from(k + n), u64::from(n));
            let b = binomial(u64::from(k + n - 2), u64::from(n));
            let d = a - b;
            assert!(d <= u64::MAX as u128, "harmonic dimension overflows u64");
            d as u64
        }
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    let mut v: u128 = 1;
    for j in 0..k {
        v = v * (n - j) as u128 / (j + 1) as u128;
    }
    v
}

/// λ_k = √(k(k+n−1)), the k-th distinct eigenvalue of √(−Δ_{Sⁿ}).
pub fn sphere_level(dim: u32, k: u32) -> f64 {
    let kf = f64::from(k);
    (kf * (kf + f64::from(dim - 1))).sqrt()
}

/// Sphere spectrum through degree `k_max`: levels √(k(k+n−1)) with
/// multiplicity d_k; the horizon is the last tabulated level.
pub fn sphere_spectrum(dim: u32, k_max: u32) -> Result<SpectrumTable> {
    let manifold = ModelManifold::Sphere { dim };
    manifold.validate()?;
    let levels = (0..=k_max)
        .map(|k| Level { lambda: sphere_level(dim, k), mult: harmonic_dimension(dim, k) })
        .collect();
    SpectrumTable::from_levels(manifold, levels, sphere_level(dim, k_max))
}

fn sphere_spectrum_to(manifold: ModelManifold, lambda_max: f64) -> Result<SpectrumTable> {
    let dim = manifold.dim();
    let mut levels = Vec::new();
    let mut k = 0u32;
    loop {
        let lambda = sphere_level(dim, k);
        if lambda > lambda_max {
            break;
        }
        levels.push(Level { lambda, mult: harmonic_dimension(dim, k) });
        k += 1;
    }
    SpectrumTable::from_levels(manifold, levels, lambda_max)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn unit_from_hash(h: u64) -> f64 {
    (h >> 11) as f64 / (1u64 << 53) as f64
}

/// Width below which a cluster is collapsed to a single degenerate level.
const CLUSTER_COLLAPSE_REL: f64 = 1e-12;

/// Synthetic Zoll-type spectrum through cluster `k_max`: for k = 1..k_max
/// a cluster of d_k simple levels k + α + (A/k)(2u_j − 1), with u_j a
/// golden-ratio low-discrepancy sequence whose phase is hashed from
/// (seed, k). Clusters narrower than float resolution collapse to a
/// single level of full multiplicity.
pub fn zoll_spectrum(
    dim: u32,
    alpha: f64,
    gap_a: f64,
    k_max: u32,
    seed: u64,
) -> Result<SpectrumTable> {
    if k_max < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least two clusters, got k_max={k_max}"
        )));
    }
    let manifold = ModelManifold::ZollSynthetic { dim, alpha, gap_a, seed };
    manifold.validate()?;
    // Horizon: end of cluster k_max, pulled below the start of cluster
    // k_max+1 if the two overlap (possible when A is large), so the table
    // stays complete up to its horizon.
    let top = k_max as f64 + alpha + gap_a / k_max as f64;
    let next_min = (k_max + 1) as f64 + alpha - gap_a / (k_max + 1) as f64;
    let horizon = if next_min > top { top } else { next_min * (1.0 - 1e-12) };
    zoll_spectrum_to(manifold, horizon)
}

fn zoll_spectrum_to(manifold: ModelManifold, lambda_max: f64) -> Result<SpectrumTable> {
    let ModelManifold::ZollSynthetic { dim, alpha, gap_a, seed } = manifold else {
        unreachable!("zoll generator called with a non-Zoll manifold");
    };
    const GOLDEN_FRAC: f64 = 0.618_033_988_749_894_9; // (√5 − 1)/2
    const HASH_SALT: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut raw: Vec<Level> = Vec::new();
    let mut k = 1u64;
    loop {
        let center = k as f64 + alpha;
        let half_width = gap_a / k as f64;
        if center - half_width > lambda_max {
            break;
        }
        let dk = harmonic_dimension(dim, u32::try_from(k).expect("cluster index fits u32"));
        if half_width <= CLUSTER_COLLAPSE_REL * center.max(1.0) {
            if center <= lambda_max {
                raw.push(Level { lambda: center, mult: dk });
            }
        } else {
            let phase = unit_from_hash(splitmix64(seed ^ k.wrapping_mul(HASH_SALT)));
            for j in 0..dk {
                let u = (phase + j as f64 * GOLDEN_FRAC).fract();
                let lambda = center + half_width * (2.0 * u - 1.0);
                if lambda <= lambda_max && lambda >= 0.0 {
                    raw.push(Level { lambda, mult: 1 });
                }
            }
        }
        k += 1;
    }
    raw.sort_by(|a, b| a.lambda.partial_cmp(&b.lambda).unwrap());
    // Merge exact float collisions (possible only across merged clusters).
    let mut levels: Vec<Level> = Vec::with_capacity(raw.len());
    for lv in raw {
        match levels.last_mut() {
            Some(last) if last.lambda == lv.lambda => last.mult += lv.mult,
            _ => levels.push(lv),
        }
    }
    SpectrumTable::from_levels(manifold, levels, lambda_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles;
    use proptest::prelude::*;

    #[test]
    fn rep_counts_match_brute_force_enumeration() {
        for dim in [1u32, 2, 3, 4] {
            let counts = rep_counts(dim, 50).unwrap();
            for m in 0..=50u64 {
                let want = oracles::brute_rep_count(dim, m);
                assert_eq!(counts[m as usize], want, "r_{dim}({m})");
            }
        }
    }

    #[test]
    fn rep_counts_refuse_oversized_requests() {
        match rep_counts(3, 40_000_000_000) {
            Err(Error::EnumerationCap { needed, cap }) => assert!(needed > cap),
            other => panic!("expected enumeration cap, got {other:?}"),
        }
    }

    #[test]
    fn torus_weyl_count_matches_brute_force() {
        let table = torus_spectrum(3, 40.0).unwrap();
        for lambda in [0.0, 6.4, 13.0, 25.0, 39.9] {
            let got = table.weyl_count(lambda).unwrap();
            let want = oracles::brute_torus_weyl(3, lambda);
            assert_eq!(got, want, "N({lambda})");
        }
        // 2π√2 + 1e−9 catches levels m = 0, 1, 2: 1 + 6 + 12.
        let lam = 2.0 * std::f64::consts::PI * 2f64.sqrt() + 1e-9;
        assert_eq!(table.weyl_count(lam).unwrap(), 19);
    }

    #[test]
    fn torus_multiplicity_groups_by_integer_norm() {
        let lam = 2.0 * std::f64::consts::PI * 5.0;
        let table = torus_spectrum(3, lam + 0.1).unwrap();
        let lv = table
            .levels()
            .iter()
            .find(|lv| (lv.lambda - lam).abs() < 1e-9)
            .expect("level 2π·5 present");
        assert_eq!(lv.mult, 30); // r₃(25) = 6 + 24

        let table2 = torus_spectrum(2, 2.0 * std::f64::consts::PI + 0.1).unwrap();
        assert_eq!(table2.levels().last().unwrap().mult, 4);

        let tiny = torus_spectrum(3, 0.5).unwrap();
        assert_eq!(tiny.levels(), &[Level { lambda: 0.0, mult: 1 }]);
    }

    #[test]
    fn weyl_count_is_right_continuous_at_levels() {
        let table = torus_spectrum(2, 30.0).unwrap();
        let lv = table.levels()[3];
        let at = table.weyl_count(lv.lambda).unwrap();
        let before = table.weyl_count(lv.lambda - 1e-9).unwrap();
        assert_eq!(at - before, lv.mult);
        assert_eq!(table.weyl_count(-1.0).unwrap(), 0);
    }

    #[test]
    fn shell_count_includes_both_endpoints() {
        // Center a window so its closed endpoints land exactly on levels.
        let table = sphere_spectrum(2, 20).unwrap();
        let lv = table.levels();
        let (a, b) = (lv[2].lambda, lv[4].lambda);
        let center = 0.5 * (a + b);
        let eps = center - a; // exact in f64; widen one ulp for the top end
        let count = table.shell_count(center, eps * (1.0 + 1e-15)).unwrap();
        assert_eq!(count, lv[2].mult + lv[3].mult + lv[4].mult);
    }

    #[test]
    fn queries_beyond_horizon_are_refused() {
        let table = ModelManifold::Sphere { dim: 3 }.spectrum(25.0).unwrap();
        assert!(matches!(
            table.weyl_count(25.1),
            Err(Error::HorizonExceeded { .. })
        ));
        assert!(matches!(
            table.shell_count(25.0, 0.2),
            Err(Error::HorizonExceeded { .. })
        ));
        assert!(table.weyl_count(25.0).is_ok());
    }

    #[test]
    fn sphere_multiplicities_match_closed_forms() {
        for k in 0..40u32 {
            assert_eq!(harmonic_dimension(2, k), 2 * u64::from(k) + 1);
            assert_eq!(harmonic_dimension(3, k), (u64::from(k) + 1).pow(2));
        }
        // Cross-check against the rank-based oracle in low degrees.
        for n in [2u32, 3, 4] {
            for k in 0..=8u32 {
                assert_eq!(
                    harmonic_dimension(n, k),
                    oracles::harmonic_dimension_by_rank(n, k),
                    "d_{k} on S^{n}"
                );
            }
        }
        // N(√3) on S³ = 1 + 4 (degrees 0 and 1; λ₁ = √3).
        let table = sphere_spectrum(3, 4).unwrap();
        assert_eq!(table.weyl_count(3f64.sqrt()).unwrap(), 5);
    }

    #[test]
    fn zoll_clusters_have_prescribed_size_and_width() {
        let table = zoll_spectrum(3, 0.25, 1.0, 40, 7).unwrap();
        // Cluster k = 30 sits in [30.25 − 1/30, 30.25 + 1/30]; no other
        // cluster reaches it.
        let in_cluster = table.shell_count(30.25, 1.0 / 30.0).unwrap();
        assert_eq!(in_cluster, harmonic_dimension(3, 30));
        let gap = table.shell_count(30.75, 0.4).unwrap();
        assert_eq!(gap, 0, "inter-cluster gap must be empty");
        // Full-cluster window example: ε = 0.2 at the center captures
        // exactly the cluster.
        assert_eq!(
            table.shell_count(10.25, 0.2).unwrap(),
            harmonic_dimension(3, 10)
        );
    }

    #[test]
    fn zoll_placement_is_deterministic_in_the_seed() {
        let a = zoll_spectrum(3, 0.5, 1.0, 20, 7).unwrap();
        let b = zoll_spectrum(3, 0.5, 1.0, 20, 7).unwrap();
        assert_eq!(a, b);
        let c = zoll_spectrum(3, 0.5, 1.0, 20, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn zoll_narrow_clusters_collapse_to_degenerate_levels() {
        let table = zoll_spectrum(2, 0.0, 1e-15, 10, 1).unwrap();
        for (i, lv) in table.levels().iter().enumerate() {
            let k = i as u64 + 1;
            assert_eq!(lv.mult, 2 * k + 1);
            assert_eq!(lv.lambda, k as f64);
        }
    }

    #[test]
    fn window_density_ratio_is_normalized_count() {
        let table = torus_spectrum(3, 50.0).unwrap();
        let w = table.window(30.0, 0.5).unwrap();
        assert_eq!(w.count, table.shell_count(30.0, 0.5).unwrap());
        assert!((w.density_ratio - w.count as f64 / (0.5 * 900.0)).abs() < 1e-12);
        assert!(table.window(30.0, 1.5).is_err());
        assert!(table.window(0.0, 0.5).is_err());
    }

    #[test]
    fn density_scan_flags_zoll_cluster_centers() {
        let table = zoll_spectrum(3, 0.0, 1.0, 60, 3).unwrap();
        let centers: Vec<f64> = (40..=50).map(f64::from).collect();
        let gaps: Vec<f64> = (40..=50).map(|k| f64::from(k) + 0.5).collect();
        let at_centers =
            density_blowup_scan(&table, |l| 2.0 / l, &centers, 10.0).unwrap();
        let at_gaps = density_blowup_scan(&table, |l| 2.0 / l, &gaps, 10.0).unwrap();
        // ratio at center k: (k+1)² / ((2/k)·k²) ≈ k/2 ≥ 20 ≫ threshold.
        assert!(at_centers.iter().all(|r| r.flagged));
        assert!(at_gaps.iter().all(|r| !r.flagged && r.count == 0));
    }

    proptest! {
        #[test]
        fn shell_counts_are_monotone_in_width(
            lambda in 1.0f64..28.0,
            e1 in 0.0f64..1.0,
            e2 in 0.0f64..1.0,
        ) {
            let table = torus_spectrum(2, 30.0).unwrap();
            let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
            prop_assert!(
                table.shell_count(lambda, lo).unwrap()
                    <= table.shell_count(lambda, hi).unwrap()
            );
        }

        #[test]
        fn shell_decomposes_into_weyl_difference(
            lambda in 1.0f64..28.0,
            eps in 0.0f64..1.0,
        ) {
            let table = torus_spectrum(2, 30.0).unwrap();
            let shell = table.shell_count(lambda, eps).unwrap();
            let hi = table.weyl_count(lambda + eps).unwrap();
            let lo = table.weyl_count(lambda - eps).unwrap();
            let at_left: u64 = table
                .levels()
                .iter()
                .find(|lv| lv.lambda == lambda - eps)
                .map_or(0, |lv| lv.mult);
            prop_assert_eq!(shell, hi - lo + at_left);
        }

        #[test]
        fn weyl_equals_cumulative_shell_from_zero(lambda in 0.0f64..29.0) {
            let table = torus_spectrum(2, 30.0).unwrap();
            let n = table.weyl_count(lambda).unwrap();
            let shell = table.shell_count(lambda / 2.0, lambda / 2.0).unwrap();
            prop_assert_eq!(n, shell);
        }
    }
}
