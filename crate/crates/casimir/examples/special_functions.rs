//! The impedance profile integrals F(b) and G(b): values across the
//! local → Leontovich crossover and their limiting behaviour.
//!
//! Run with: cargo run --release -p casimir --example special_functions

use casimir::impedance::{special_f, special_g};

fn main() -> casimir::Result<()> {
    let gamma = 4.0 / (3.0 * 3.0f64.sqrt());
    println!("b-parameter profile integrals (quadrature)");
    println!("{:>10} {:>14} {:>14} {:>14} {:>14}", "b", "F(b)", "G(b)", "b·F(b)", "b·G(b)");
    for &b in &[0.0, 0.01, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0, 1000.0] {
        let f = special_f(b)?;
        let g = special_g(b)?;
        println!(
            "{:>10.3} {:>14.9} {:>14.9} {:>14.9} {:>14.9}",
            b,
            f,
            g,
            b * f,
            b * g
        );
    }
    println!();
    println!("limits: F(0) = 1, G(0) = 1/2;  b·F, b·G → 4/(3√3) = {gamma:.9} as b → ∞");
    println!("small-b expansions: F = 1 − (4/3π)b³ + …,  G = 1/2 − (4/15π)b³ + …");
    Ok(())
}
