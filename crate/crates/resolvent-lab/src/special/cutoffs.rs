//! The smooth compactly supported cutoffs used by the multiplier calculus:
//! a time cutoff ρ concentrated near t = 0, a coarse cutoff b on [−2, 2],
//! a dyadic partition-of-unity bump β, a narrow window bump, and a
//! normalized bump on the unit ball of ℝ³ for mollifying Fourier-side
//! gap windows. All are built from the same C^∞ step
//! S(x) = g(x)/(g(x)+g(1−x)), g(x) = e^{−1/x} 1_{x>0}.

use std::sync::OnceLock;

use crate::quad::gl_fixed;
use crate::{Error, Result};

/// Identifier for the cutoff profile, recorded in experiment reports so
/// that archived numbers can be tied to the exact bump shapes that
/// produced them.
pub const CUTOFF_PROFILE_ID: &str = "exp-smoothstep/v1";

/// C^∞ monotone step: 0 for x ≤ 0, 1 for x ≥ 1.
pub fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let g = (-1.0 / x).exp();
        let h = (-1.0 / (1.0 - x)).exp();
        g / (g + h)
    }
}

/// Cutoff family tied to a short-time scale δ₀ (the injectivity-radius
/// surrogate of the model geometry).
#[derive(Debug, Clone, Copy)]
pub struct CutoffSuite {
    delta0: f64,
}

impl CutoffSuite {
    pub fn new(delta0: f64) -> Result<Self> {
        if !(delta0 > 0.0 && delta0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "short-time scale must be positive and finite, got {delta0}"
            )));
        }
        Ok(Self { delta0 })
    }

    pub fn delta0(&self) -> f64 {
        self.delta0
    }

    /// Even time cutoff ρ: 1 for |t| ≤ δ₀/2, 0 for |t| ≥ δ₀, smooth and
    /// monotone in between.
    pub fn rho(&self, t: f64) -> f64 {
        let u = t.abs();
        smooth_step((self.delta0 - u) / (self.delta0 / 2.0))
    }

    /// Complement 1 − ρ entering remainder terms.
    pub fn one_minus_rho(&self, t: f64) -> f64 {
        1.0 - self.rho(t)
    }
}

/// Coarse even cutoff b: 1 on |t| ≤ 1, 0 on |t| ≥ 2.
pub fn coarse_cutoff(t: f64) -> f64 {
    smooth_step(2.0 - t.abs())
}

/// Dyadic bump β(t) = S(log₂ t + 1) − S(log₂ t), supported in [1/2, 2],
/// with Σ_{j∈ℤ} β(2^{−j} t) = 1 for every t > 0.
pub fn dyadic_bump(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let l = t.log2();
    smooth_step(l + 1.0) - smooth_step(l)
}

/// Narrow window bump: 1 for |s| ≤ 1/10, 0 for |s| ≥ 1/4.
pub fn window_bump(s: f64) -> f64 {
    smooth_step((0.25 - s.abs()) / (0.25 - 0.1))
}

/// Normalized C^∞ bump on the unit ball of ℝ³:
/// η(x) = c·exp(−1/(1−|x|²)) for |x| < 1 with ∫η = 1.
pub fn ball_bump3(x: [f64; 3]) -> f64 {
    let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if r2 >= 1.0 {
        return 0.0;
    }
    (-1.0 / (1.0 - r2)).exp() / ball_bump3_mass()
}

/// ∫_{|x|<1} exp(−1/(1−|x|²)) dx = 4π ∫₀¹ r² e^{−1/(1−r²)} dr, cached.
fn ball_bump3_mass() -> f64 {
    static MASS: OnceLock<f64> = OnceLock::new();
    *MASS.get_or_init(|| {
        4.0 * std::f64::consts::PI
            * gl_fixed(220, 0.0, 1.0, |r| {
                if r >= 1.0 {
                    0.0
                } else {
                    r * r * (-1.0 / (1.0 - r * r)).exp()
                }
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_is_monotone_with_correct_plateaus() {
        assert_eq!(smooth_step(-0.5), 0.0);
        assert_eq!(smooth_step(0.0), 0.0);
        assert_eq!(smooth_step(1.0), 1.0);
        assert_eq!(smooth_step(3.0), 1.0);
        assert!((smooth_step(0.5) - 0.5).abs() < 1e-15); // symmetry point
        let mut prev = -1.0;
        for i in 0..=200 {
            let v = smooth_step(i as f64 / 200.0);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn rho_has_plateau_and_support() {
        let c = CutoffSuite::new(0.4).unwrap();
        assert_eq!(c.rho(0.0), 1.0);
        assert_eq!(c.rho(0.2), 1.0);
        assert_eq!(c.rho(-0.19), 1.0);
        assert_eq!(c.rho(0.4), 0.0);
        assert_eq!(c.rho(-0.7), 0.0);
        let mid = c.rho(0.3);
        assert!(mid > 0.0 && mid < 1.0);
        assert!((c.rho(0.31) + c.one_minus_rho(0.31) - 1.0).abs() < 1e-15);
        assert!(CutoffSuite::new(0.0).is_err());
        assert!(CutoffSuite::new(f64::NAN).is_err());
    }

    #[test]
    fn dyadic_bumps_telescope_to_one() {
        for t in [0.013, 0.7, 1.0, 5.3, 411.0] {
            let mut s = 0.0;
            for j in -60..=60 {
                s += dyadic_bump(2f64.powi(-j) * t);
            }
            assert!((s - 1.0).abs() < 1e-14, "t={t}: partition sums to {s}");
        }
        assert_eq!(dyadic_bump(0.49), 0.0);
        assert_eq!(dyadic_bump(2.01), 0.0);
        assert!(dyadic_bump(1.0) > 0.99);
    }

    #[test]
    fn window_bump_has_prescribed_plateau() {
        assert_eq!(window_bump(0.0), 1.0);
        assert_eq!(window_bump(0.1), 1.0);
        assert_eq!(window_bump(-0.09), 1.0);
        assert_eq!(window_bump(0.25), 0.0);
        assert_eq!(window_bump(-0.3), 0.0);
        let v = window_bump(0.18);
        assert!(v > 0.0 && v < 1.0);
    }

    #[test]
    fn coarse_cutoff_plateaus() {
        assert_eq!(coarse_cutoff(0.0), 1.0);
        assert_eq!(coarse_cutoff(1.0), 1.0);
        assert_eq!(coarse_cutoff(-0.8), 1.0);
        assert_eq!(coarse_cutoff(2.0), 0.0);
        assert!(coarse_cutoff(1.5) > 0.0 && coarse_cutoff(1.5) < 1.0);
    }

    #[test]
    fn ball_bump_is_normalized() {
        // Midpoint rule over the bounding cube; the integrand is smooth and
        // compactly supported, so midpoint converges fast.
        let n = 60;
        let h = 2.0 / n as f64;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let x = -1.0 + (i as f64 + 0.5) * h;
                    let y = -1.0 + (j as f64 + 0.5) * h;
                    let z = -1.0 + (k as f64 + 0.5) * h;
                    s += ball_bump3([x, y, z]);
                }
            }
        }
        s *= h * h * h;
        assert!((s - 1.0).abs() < 1e-6, "bump mass {s}");
        assert_eq!(ball_bump3([1.0, 0.0, 0.0]), 0.0);
    }
}
