//! The four identities behind the multiplier calculus, checked at a small
//! parameter grid. Two are Fourier transforms verified by quadrature:
//! ∫₀^∞ e^{(iλ−μ)t} e^{-itτ} dt = 1/(μ + i(τ−λ)) (half-line damping) and
//! its even pole-pair combination. Two are exact pole algebra: the
//! boundary-difference identity relating the resolvent jump across the
//! real axis to the spectral projector, and the partial-fraction split
//! 1/(x²−ζ²) = (1/2ζ)(1/(x−ζ) − 1/(x+ζ)).

use resolvent_lab::multipliers::{
    heaviside_ft_check, partial_fraction_check, pole_pair_ft_check,
    resolvent_difference_identity_check, ComplexShift,
};

fn main() -> resolvent_lab::Result<()> {
    println!("{:<22} {:>10} {:>10} {:>8} {:>12}", "identity", "lambda", "mu", "t/level", "abs err");
    for (lambda, mu, t) in [(4.0, 0.8, 0.3), (12.0, 1.5, 0.9), (40.0, 2.5, 1.7)] {
        let heav = heaviside_ft_check(mu, t)?;
        println!("{:<22} {:>10} {:>10} {:>8} {:>12.3e}", "heaviside-transform", "-", mu, t, heav.abs_err());
        let pole = pole_pair_ft_check(lambda, mu, t)?;
        println!("{:<22} {:>10} {:>10} {:>8} {:>12.3e}", "pole-pair-transform", lambda, mu, t, pole.abs_err());
    }
    for (level, lambda, eps) in [(9.0, 5.0, 0.5), (36.0, 11.0, 1.25)] {
        let diff = resolvent_difference_identity_check(level, lambda, eps)?;
        println!(
            "{:<22} {:>10} {:>10} {:>8} {:>12.3e}",
            "boundary-difference",
            lambda,
            eps,
            level,
            (diff.lhs - diff.rhs).norm()
        );
        let part = partial_fraction_check(level, ComplexShift::new(lambda, eps)?);
        println!("{:<22} {:>10} {:>10} {:>8} {:>12.3e}", "partial-fractions", lambda, eps, level, part.abs_err());
    }
    Ok(())
}
