//! Multi-start nonlinear power ascent for L^{p_in} → L^{p_out} operator
//! norm lower bounds.
//!
//! The iteration alternates the two exact coordinate maximizations of
//! F(u, g) = Re⟨Tu, g⟩ over ‖u‖_{p_in} = ‖g‖_{p_out'} = 1:
//!
//!   g ← |v|^{p_out−2} v / ‖v‖^{p_out−1}   with v = Tu,
//!   u ← |h|^{q−2} h / ‖h‖_q^{q−1}         with h = T*g, q = p_in',
//!
//! so the objective ‖Tu‖_{p_out} never decreases in exact arithmetic.
//! A safeguarded step (geometric backtracking toward the previous
//! iterate) absorbs rounding regressions near stationary points. Every
//! exponent appearing in the duality maps is ≥ 0 whenever p_out ≥ 2 and
//! p_in ∈ (1, 2], so no negative powers of |v| occur away from zeros.
//!
//! Starts run in parallel; the merge is keyed by start index with ties
//! resolved toward the earlier start, so results are deterministic.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Iteration budget and determinism knobs for the ascent.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AscentConfig {
    pub max_iterations: u32,
    /// Stop once the relative objective gain drops below this.
    pub rel_tol: f64,
    /// Number of seeded random starts appended to the mandatory ones.
    pub random_starts: u32,
    pub seed: u64,
}

impl Default for AscentConfig {
    fn default() -> Self {
        Self { max_iterations: 40, rel_tol: 1e-7, random_starts: 4, seed: 7 }
    }
}

/// An operator together with the norms of its input and output spaces.
/// `apply_adjoint` must be the adjoint with respect to the inner
/// products that induce the two p = 2 norms.
pub(crate) trait PairedOperator {
    fn apply(&self, input: &[Complex64]) -> Vec<Complex64>;
    fn apply_adjoint(&self, dual: &[Complex64]) -> Vec<Complex64>;
    fn input_norm(&self, v: &[Complex64], p: f64) -> f64;
    fn output_norm(&self, v: &[Complex64], p: f64) -> f64;
}

#[derive(Debug, Clone)]
pub(crate) struct AscentOutcome {
    pub value: f64,
    pub witness: Vec<Complex64>,
    /// Total objective evaluations across all starts.
    pub iterations: u64,
    /// Starts that were actually usable (nonzero, finite).
    pub restarts: u32,
    /// Index (into the start list) of the start that won.
    pub best_start: usize,
}

fn conjugate_exponent(p: f64) -> f64 {
    p / (p - 1.0)
}

/// |v|^{p−2} v / scale^{p−1}: the normalized duality map at exponent p.
fn duality_map(v: &[Complex64], p: f64, norm: f64) -> Vec<Complex64> {
    if p == 2.0 {
        return v.iter().map(|z| z / norm).collect();
    }
    let inv = norm.powf(p - 1.0).recip();
    v.iter()
        .map(|z| {
            let a = z.norm();
            if a == 0.0 {
                Complex64::default()
            } else {
                z * a.powf(p - 2.0) * inv
            }
        })
        .collect()
}

fn blend(a: &[Complex64], b: &[Complex64], s: f64) -> Vec<Complex64> {
    a.iter().zip(b).map(|(x, y)| x * (1.0 - s) + y * s).collect()
}

/// One ascent trajectory; returns (objective, witness, evaluations) or
/// None when the start is degenerate.
fn ascend_one<O: PairedOperator>(
    op: &O,
    start: &[Complex64],
    p_in: f64,
    p_out: f64,
    cfg: &AscentConfig,
) -> Option<(f64, Vec<Complex64>, u64)> {
    let q = conjugate_exponent(p_in);
    let n0 = op.input_norm(start, p_in);
    if !(n0 > 0.0) || !n0.is_finite() {
        return None;
    }
    let mut u: Vec<Complex64> = start.iter().map(|z| z / n0).collect();
    let mut v = op.apply(&u);
    let mut j = op.output_norm(&v, p_out);
    let mut evals = 1u64;
    if !(j > 0.0) || !j.is_finite() {
        return Some((0.0, u, evals));
    }
    for _ in 0..cfg.max_iterations {
        let g = duality_map(&v, p_out, j);
        let h = op.apply_adjoint(&g);
        let hn = op.input_norm(&h, q);
        if !(hn > 0.0) || !hn.is_finite() {
            break;
        }
        let cand = duality_map(&h, q, hn);
        // Safeguarded step: take the full fixed-point update when it does
        // not regress, otherwise halve back toward the current point.
        let mut s = 1.0;
        let mut advanced = false;
        for _ in 0..6 {
            let mut u_try = if s == 1.0 { cand.clone() } else { blend(&u, &cand, s) };
            let tn = op.input_norm(&u_try, p_in);
            if !(tn > 0.0) || !tn.is_finite() {
                break;
            }
            for z in &mut u_try {
                *z /= tn;
            }
            let v_try = op.apply(&u_try);
            let j_try = op.output_norm(&v_try, p_out);
            evals += 1;
            if j_try >= j * (1.0 - 1e-13) {
                let gain = j_try - j;
                u = u_try;
                v = v_try;
                j = j_try;
                advanced = gain > cfg.rel_tol * j;
                break;
            }
            s *= 0.5;
        }
        if !advanced {
            break;
        }
    }
    Some((j, u, evals))
}

/// Run the ascent from every start in parallel; ties between equal
/// objectives go to the earliest start, so outcomes are deterministic.
pub(crate) fn run_ascent<O: PairedOperator + Sync>(
    op: &O,
    starts: &[Vec<Complex64>],
    p_in: f64,
    p_out: f64,
    cfg: &AscentConfig,
) -> AscentOutcome {
    assert!(p_out >= 2.0 && p_in > 1.0, "ascent exponents out of range");
    let results: Vec<Option<(f64, Vec<Complex64>, u64)>> = starts
        .par_iter()
        .map(|s| ascend_one(op, s, p_in, p_out, cfg))
        .collect();
    let mut best = AscentOutcome {
        value: 0.0,
        witness: Vec::new(),
        iterations: 0,
        restarts: 0,
        best_start: 0,
    };
    for (i, r) in results.into_iter().enumerate() {
        if let Some((value, witness, evals)) = r {
            best.iterations += evals;
            best.restarts += 1;
            if value > best.value || best.witness.is_empty() {
                best.value = value;
                best.witness = witness;
                best.best_start = i;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Diagonal operator on ℂ² with plain ℓ^p norms: T(a, b) = (2a, b/2).
    struct Diag;

    impl PairedOperator for Diag {
        fn apply(&self, input: &[Complex64]) -> Vec<Complex64> {
            vec![2.0 * input[0], 0.5 * input[1]]
        }
        fn apply_adjoint(&self, dual: &[Complex64]) -> Vec<Complex64> {
            vec![2.0 * dual[0], 0.5 * dual[1]]
        }
        fn input_norm(&self, v: &[Complex64], p: f64) -> f64 {
            v.iter().map(|z| z.norm().powf(p)).sum::<f64>().powf(1.0 / p)
        }
        fn output_norm(&self, v: &[Complex64], p: f64) -> f64 {
            self.input_norm(v, p)
        }
    }

    #[test]
    fn ascent_finds_the_top_diagonal_entry() {
        // ‖T‖_{ℓ^{4/3}→ℓ⁴} = 2 with witness e₁, from a generic start.
        let cfg = AscentConfig::default();
        let starts = vec![vec![Complex64::new(0.4, 0.1), Complex64::new(0.9, -0.2)]];
        let out = run_ascent(&Diag, &starts, 4.0 / 3.0, 4.0, &cfg);
        assert!((out.value - 2.0).abs() < 1e-9, "value {}", out.value);
        assert!(out.witness[0].norm() > 0.99);
        assert!(out.witness[1].norm() < 1e-4);
    }

    #[test]
    fn zero_and_degenerate_starts_are_skipped() {
        let cfg = AscentConfig::default();
        let starts = vec![
            vec![Complex64::default(), Complex64::default()],
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ];
        let out = run_ascent(&Diag, &starts, 2.0, 4.0, &cfg);
        // Second start is an eigenvector of the small entry: stationary
        // at value 1/2, and the only usable start.
        assert!((out.value - 0.5).abs() < 1e-12);
        assert_eq!(out.restarts, 1);
        assert_eq!(out.best_start, 1);
    }

    #[test]
    fn merge_is_deterministic_under_ties() {
        let cfg = AscentConfig { random_starts: 0, ..AscentConfig::default() };
        // Two starts converging to the same maximizer: the earlier index wins.
        let starts = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.1, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(-0.1, 0.0)],
        ];
        let a = run_ascent(&Diag, &starts, 2.0, 4.0, &cfg);
        let b = run_ascent(&Diag, &starts, 2.0, 4.0, &cfg);
        assert_eq!(a.value, b.value);
        assert_eq!(a.best_start, b.best_start);
        assert_eq!(a.best_start, 0);
    }
}
