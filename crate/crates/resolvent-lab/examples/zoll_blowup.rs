//! Eigenvalue density along a Zoll-type spectrum versus the torus. The
//! blow-up functional count(τ, ε) / (10 · Vol · τ² · ε) measures how far
//! a shrinking spectral window exceeds uniform density. On a clustered
//! spectrum (every level within A/k of k + α) windows of width 1/log τ
//! capture whole clusters of dimension (k+1)², so the functional grows
//! like log τ — no uniform window bound can hold. On the torus with
//! ε = τ^{-1/2} it stays in a bounded band.

use resolvent_lab::opnorms::zoll_blowup_lower_bound;
use resolvent_lab::spectra::ModelManifold;

fn main() -> resolvent_lab::Result<()> {
    let zoll = ModelManifold::ZollSynthetic { dim: 3, alpha: 10.0, gap_a: 1.0, seed: 7 };
    let table = zoll.spectrum(80.0)?;
    println!("zoll clusters, eps = 1/log(tau):");
    for k in [4u64, 8, 16, 32, 64] {
        let tau = k as f64 + 10.0;
        let eps = 1.0 / tau.ln();
        let proxy = zoll_blowup_lower_bound(&table, tau, eps)?;
        println!("  tau = {tau:>4}: window count {:>5}, proxy {proxy:.4}", table.shell_count(tau, eps)?);
    }

    let torus = ModelManifold::Torus { dim: 3 };
    let table = torus.spectrum(150.0)?;
    println!("torus, eps = tau^(-1/2):");
    let mut proxies = Vec::new();
    for m in [25u64, 101, 325, 449] {
        let tau = 2.0 * std::f64::consts::PI * (m as f64).sqrt();
        let eps = tau.powf(-0.5);
        let proxy = zoll_blowup_lower_bound(&table, tau, eps)?;
        proxies.push(proxy);
        println!("  tau = {tau:>8.3}: proxy {proxy:.4}");
    }
    let spread = proxies.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        / proxies.iter().cloned().fold(f64::INFINITY, f64::min);
    println!("torus proxy spread (max/min) = {spread:.2}");
    Ok(())
}
