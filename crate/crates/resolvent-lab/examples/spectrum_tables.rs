//! Eigenvalue tables for the three model geometries: the flat 3-torus
//! (frequencies 2π|k| with multiplicity r₃(|k|²)), the round 3-sphere
//! (√(k(k+2)) with multiplicity (k+1)²), and a synthetic Zoll-type
//! spectrum whose k-th cluster lies within A/k of k + α. For the first
//! two, the counting function N(λ) is compared with the Weyl main term
//! vol(M)·vol(B³)·(λ/2π)³; for the Zoll model the cluster windows
//! [k+α−A/k, k+α+A/k] are shown carrying the full (k+1)² dimension.

use resolvent_lab::spectra::ModelManifold;

fn main() -> resolvent_lab::Result<()> {
    let ball = 4.0 * std::f64::consts::PI / 3.0;
    for (name, manifold) in [
        ("torus", ModelManifold::Torus { dim: 3 }),
        ("sphere", ModelManifold::Sphere { dim: 3 }),
    ] {
        let table = manifold.spectrum(30.0)?;
        println!("{name}: {} levels up to {}", table.levels().len(), table.horizon());
        for level in table.levels().iter().take(5) {
            println!("  lambda = {:>8.5}  multiplicity = {}", level.lambda, level.mult);
        }
        for lambda in [10.0, 20.0, 30.0] {
            let counted = table.weyl_count(lambda)?;
            let main_term =
                manifold.volume() * ball * (lambda / (2.0 * std::f64::consts::PI)).powi(3);
            println!(
                "  N({lambda:>4}) = {counted:>6}   Weyl main term {main_term:>9.1}   ratio {:.3}",
                counted as f64 / main_term
            );
        }
        println!();
    }

    let zoll = ModelManifold::ZollSynthetic { dim: 3, alpha: 0.25, gap_a: 1.0, seed: 7 };
    let table = zoll.spectrum(12.0)?;
    println!("zoll (alpha = 0.25, A = 1): {} levels up to {}", table.levels().len(), table.horizon());
    for k in [3u32, 6, 9] {
        let tau = k as f64 + 0.25;
        let count = table.shell_count(tau, 1.0 / k as f64)?;
        println!(
            "  cluster {k}: {count} levels within {:.4} of tau = {tau} (dimension (k+1)^2 = {})",
            1.0 / k as f64,
            (k + 1) * (k + 1)
        );
    }
    Ok(())
}
