//! Special functions for the model geometries: Bessel J_ν (surface-measure
//! Fourier transforms), Gegenbauer polynomials (zonal spectral projector
//! kernels on spheres), and the smooth compactly supported cutoffs and
//! Schwartz windows used throughout the multiplier calculus.

pub mod bessel;
pub mod cutoffs;
pub mod schwartz;

pub use bessel::bessel_j;
pub use cutoffs::{
    ball_bump3, coarse_cutoff, dyadic_bump, window_bump, CutoffSuite, CUTOFF_PROFILE_ID,
};
pub use schwartz::SchwartzWindow;

use crate::spectra;

/// Gegenbauer (ultraspherical) polynomial C_k^ν(x) by the three-term
/// recurrence k C_k = 2(k+ν−1) x C_{k−1} − (k+2ν−2) C_{k−2}.
///
/// ν = 1/2 gives Legendre P_k, ν = 1 gives Chebyshev U_k.
pub fn gegenbauer_c(k: u32, nu: f64, x: f64) -> f64 {
    assert!(nu > 0.0, "Gegenbauer index must be positive");
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * nu * x;
    for j in 2..=k {
        let jf = f64::from(j);
        let next = (2.0 * (jf + nu - 1.0) * x * cur - (jf + 2.0 * nu - 2.0) * prev) / jf;
        prev = cur;
        cur = next;
    }
    cur
}

/// C_k^ν(1) = (2ν)(2ν+1)⋯(2ν+k−1)/k!, the endpoint value normalizing the
/// zonal kernel.
pub fn gegenbauer_at_one(k: u32, nu: f64) -> f64 {
    let mut v = 1.0;
    for j in 0..k {
        let jf = f64::from(j);
        v *= (2.0 * nu + jf) / (jf + 1.0);
    }
    v
}

/// Riemannian volume of the unit sphere Sⁿ ⊂ ℝ^{n+1}: 2π^{(n+1)/2}/Γ((n+1)/2).
pub fn sphere_volume(n: u32) -> f64 {
    let s = f64::from(n + 1) / 2.0;
    2.0 * std::f64::consts::PI.powf(s) / gamma_half_integer(s)
}

/// Γ(s) for s a positive multiple of ½ (the only arguments arising here).
pub(crate) fn gamma_half_integer(s: f64) -> f64 {
    assert!(s > 0.0 && (2.0 * s).fract() == 0.0, "need positive half-integer");
    let half = s.fract() != 0.0;
    let mut g = if half { std::f64::consts::PI.sqrt() } else { 1.0 };
    let mut a = if half { 0.5 } else { 1.0 };
    while a < s {
        g *= a;
        a += 1.0;
    }
    g
}

/// Kernel of the spectral projector onto degree-k spherical harmonics on Sⁿ
/// as a function of the geodesic-angle cosine:
/// H_k(cos θ) = d_k · C_k^ν(cos θ) / (Vol(Sⁿ) · C_k^ν(1)), ν = (n−1)/2.
///
/// Integrating H_k(x·y) against a harmonic of degree k reproduces it;
/// against any other degree it gives zero.
pub fn zonal_projector_kernel(n: u32, k: u32, cos_theta: f64) -> f64 {
    assert!(n >= 2, "zonal kernels need sphere dimension at least 2");
    let nu = f64::from(n - 1) / 2.0;
    let dk = spectra::harmonic_dimension(n, k) as f64;
    dk * gegenbauer_c(k, nu, cos_theta) / (sphere_volume(n) * gegenbauer_at_one(k, nu))
}

/// Fourier transform of the surface measure on the unit sphere S^{n−1} ⊂ ℝⁿ
/// at radius r = |ξ|: (2π)^{n/2} r^{−(n−2)/2} J_{(n−2)/2}(r).
///
/// For n = 3 this is 4π sin(r)/r. The removable singularity at r = 0 is
/// evaluated by the scaled power series (value 2π^{n/2}/Γ(n/2), the total
/// surface measure).
pub fn surface_measure_ft(n: u32, r: f64) -> f64 {
    assert!(n >= 2 && r >= 0.0);
    let nu = f64::from(n - 2) / 2.0;
    let c = (2.0 * std::f64::consts::PI).powf(f64::from(n) / 2.0);
    if r <= 15.0 {
        // r^{−ν} J_ν(r) = 2^{−ν} Σ_m (−1)^m (r/2)^{2m} / (m! Γ(ν+m+1))
        let q = -(r / 2.0) * (r / 2.0);
        let mut term = 0.5f64.powf(nu) / gamma_half_integer(nu + 1.0);
        let mut sum = term;
        for m in 1..200 {
            let mf = m as f64;
            term *= q / (mf * (nu + mf));
            sum += term;
            if term.abs() < 1e-18 * sum.abs().max(1e-300) {
                break;
            }
        }
        c * sum
    } else {
        c * r.powf(-nu) * bessel_j(nu, r)
    }
}
