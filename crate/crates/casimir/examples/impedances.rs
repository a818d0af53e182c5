//! Surface impedances three ways: exact wave-number integral, anomalous
//! closed form (ζ/cq)F(b) etc., and the q-free Leontovich value.
//!
//! Run with: cargo run --release -p casimir --example impedances

use casimir::impedance::{
    b_parameter, impedance_anomalous, impedance_exact, impedance_leontovich,
};
use casimir::material::{MetalModel, ResponseKind};
use casimir::quadrature::QuadratureSpec;

fn main() -> casimir::Result<()> {
    let mut m = MetalModel::gold_like();
    m.response = ResponseKind::AnomalousLimit;
    let spec = QuadratureSpec::default();
    let q = 2.5e6; // 1/(2a) for a = 200 nm

    println!("gold-like metal, q = {q:.2e} 1/m (a = 200 nm)");
    println!(
        "{:>10} {:>10} {:>13} {:>13} {:>13} {:>13} {:>13}",
        "ζ (rad/s)", "b", "z_s exact", "z_s closed", "z_p exact", "z_p closed", "Leontovich"
    );
    for exp in [6, 8, 9, 10, 11, 12] {
        let zeta = 10f64.powi(exp);
        let b = b_parameter(&m, zeta, q);
        let exact = impedance_exact(&m, zeta, q, 1.0, &spec)?;
        let closed = impedance_anomalous(&m, zeta, q)?;
        let leo = impedance_leontovich(&m, zeta)?;
        println!(
            "{:>10.1e} {:>10.3e} {:>13.5e} {:>13.5e} {:>13.5e} {:>13.5e} {:>13.5e}",
            zeta, b, exact.z_s, closed.z_s, exact.z_p, closed.z_p, leo
        );
    }
    println!();
    println!("b ≪ 1: z_s → ζ/(cq) (local, relaxation-free) and z_p is dominated by");
    println!("       the Thomas-Fermi term (q²/√3)(c v_F/ζωp): strongly nonlocal.");
    println!("b ≫ 1: both polarizations approach the Leontovich impedance.");
    Ok(())
}
