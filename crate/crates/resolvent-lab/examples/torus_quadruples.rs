//! Additive energy of lattice spheres. For the shell S_q = {k ∈ ℤ³ :
//! |k|² = q}, the number of quadruples k₁+k₂ = k₃+k₄ equals the L⁴ norm
//! ‖Σ_{k∈S_q} e^{2πik·x}‖⁴ and controls the p = 4 bound for shell
//! projections. The normalized ratio quadruples/points² would grow like
//! the shell radius if pair sums piled up on few values; arithmetic
//! spreads them out, keeping the growth exponent near zero.

use resolvent_lab::expsums::{quadruple_count, sphere_points};
use resolvent_lab::opnorms::scaling_fit;
use resolvent_lab::oracles::brute_quadruple_count;

fn main() -> resolvent_lab::Result<()> {
    println!("small shells against brute force:");
    for q in [1u64, 2, 3, 5, 9] {
        let fast = quadruple_count(3, q)?;
        let brute = brute_quadruple_count(&sphere_points(3, q)?);
        println!(
            "  q = {q}: {} points, {} quadruples (brute force {brute})",
            fast.points, fast.quadruples
        );
        assert_eq!(fast.quadruples, brute);
    }

    println!("growth of quadruples/points^2:");
    let mut samples = Vec::new();
    for q in [25u64, 125, 325, 1105] {
        let cnt = quadruple_count(3, q)?;
        let ratio = cnt.quadruples as f64 / (cnt.points as f64 * cnt.points as f64);
        samples.push(((q as f64).sqrt(), ratio));
        println!("  q = {q:>5}: {:>4} points, ratio = {ratio:.4}", cnt.points);
    }
    let fit = scaling_fit(&samples, 0.0, 0.2)?;
    println!("fitted exponent in R = sqrt(q): {:.4} (bounded energy needs <= 0.2)", fit.slope);
    Ok(())
}
