//! The numerical coefficients of the low-temperature expansions, computed
//! from their defining integrals, plus the decomposition identity
//! bracket = C·(1/10 + 2I).
//!
//! Run with: cargo run --release -p casimir --example asymptotic_constants

use casimir::asymptotics::{bose_i, bracket_small_a, constant_c_small_a, constant_p1};
use casimir::quadrature::QuadratureSpec;

fn main() -> casimir::Result<()> {
    let spec = QuadratureSpec::default();
    let c = constant_c_small_a(&spec)?;
    let i = bose_i(&spec)?;
    let p1 = constant_p1(&spec)?;
    let bracket = bracket_small_a(&spec)?;

    println!("low-temperature expansion coefficients (rel_tol = {:.0e}):", spec.rel_tol);
    println!();
    println!("  C  = −∫₀^∞ x ln(1 − r_s²(1/x)) dx                  = {c:.9}");
    println!("  I  = ∫₀^∞ (1+t²)^(1/3) sin(⅔ atan t) ρ(t) dt       = {i:.9}");
    println!("  p₁ = ∫₀^∞ (1+t²)^(-1/6) sin(⅓ atan t) ρ(t) dt      = {p1:.9}");
    println!("  bracket = C·(1/10 + 2I)                            = {bracket:.9}");
    println!();
    println!("  identity check: C·(1/10 + 2I) − bracket = {:+.2e}", c * (0.1 + 2.0 * i) - bracket);
    println!("  small-t estimates: I < 1/36 = {:.7} ✓({}), p₁ < 1/72 = {:.7} ✓({})",
        1.0 / 36.0, i < 1.0 / 36.0, 1.0 / 72.0, p1 < 1.0 / 72.0);
    println!();
    println!("usage:  ΔF = (kT/8πa²)[−αζ(3) + ½ζ(3)(1−8u) + bracket·A²]   (A ≪ 1)");
    println!("        ΔF = (kT/8πa²)ζ(3)[−α + 1 − 4u − (32/3√3)(1−2p₁)/A] (A ≫ 1)");
    println!("with ρ(t) = 1/(e^{{2πt}}−1) and u the Thomas-Fermi slope.");
    Ok(())
}
