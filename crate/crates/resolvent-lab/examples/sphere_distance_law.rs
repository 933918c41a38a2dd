//! Distance law for the shifted resolvent on S³. At λ = √(k(k+2)) the
//! spectral parameter ζ = (λ+iμ)² sits a distance ≈ 2λμ from the
//! eigenvalue k(k+2), so the L^{6/5} → L⁶ norm of (−Δ − ζ)^{-1} grows
//! like 1/μ as μ ↓ 0, with the degree-k cluster dominating. Each shift
//! reuses the previous maximizer as a warm start; the fitted slope in μ
//! should sit near −1.

use resolvent_lab::multipliers::ComplexShift;
use resolvent_lab::opnorms::{resolvent_norm_lower_bound, scaling_fit, AscentConfig, Witness};
use resolvent_lab::spectra::{sphere_level, ModelManifold};

fn main() -> resolvent_lab::Result<()> {
    let sphere = ModelManifold::Sphere { dim: 3 };
    let k = 6u32;
    let lambda = sphere_level(3, k);
    let cfg = AscentConfig { max_iterations: 30, rel_tol: 1e-6, random_starts: 1, seed: 11 };

    println!("resolvent lower bounds at lambda = sqrt({k}*{})", k + 2);
    let mut samples = Vec::new();
    let mut warm: Option<Vec<num_complex::Complex64>> = None;
    // Start at mu = 0.25: the 1/mu regime needs 2*lambda*mu well inside
    // the gap to the neighboring clusters.
    for mu in [0.25, 0.125, 0.0625, 0.03125] {
        let est = resolvent_norm_lower_bound(
            &sphere,
            ComplexShift::new(lambda, mu)?,
            6.0,
            None,
            &cfg,
            warm.as_deref(),
        )?;
        println!(
            "  mu = {mu:<7} norm >= {:>9.4}   mu*norm = {:>7.4}   ({} objective evaluations)",
            est.value,
            mu * est.value,
            est.iterations
        );
        samples.push((mu, est.value));
        warm = match est.witness {
            Witness::GridFunction { values } => Some(values),
            _ => None,
        };
    }
    let fit = scaling_fit(&samples, -1.0, 0.15)?;
    println!(
        "fitted slope {:.4} vs -1 (tolerance 0.15): verdict {}",
        fit.slope,
        if fit.verdict { "pass" } else { "fail" }
    );
    Ok(())
}
