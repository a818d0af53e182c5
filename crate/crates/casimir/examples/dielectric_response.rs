//! Nonlocal (Boltzmann) dielectric functions on the imaginary axis and
//! their two limits: local Drude at v → 0 and the relaxation-free
//! anomalous forms at v ≫ 1.
//!
//! Run with: cargo run --release -p casimir --example dielectric_response

use casimir::material::{
    dielectric_anomalous, dielectric_local, dielectric_nonlocal, MetalModel, RelaxationLaw,
    ResponseKind,
};

fn main() -> casimir::Result<()> {
    let mut gold = MetalModel::gold_like();
    gold.response = ResponseKind::NonlocalBoltzmann;
    gold.relaxation = RelaxationLaw::Constant { omega_tau: 1e13 };
    let temperature = 300.0;
    let zeta = 1e12; // rad/s, deep in the low-frequency region

    let mut drude = gold;
    drude.response = ResponseKind::LocalDrude;
    let eps_local = dielectric_local(&drude, zeta, temperature)?;

    println!("gold-like metal, ζ = {zeta:.1e} rad/s, ω_τ = 1e13 rad/s");
    println!("local Drude ε(iζ) = {eps_local:.6e}");
    println!();
    println!(
        "{:>10} {:>12} {:>14} {:>14} {:>14} {:>14}",
        "k (1/m)", "v", "ε_l", "ε_t", "ε_l (anom)", "ε_t (anom)"
    );
    for exp in [2, 4, 5, 6, 7, 8, 9] {
        let k = 10f64.powi(exp);
        let v = gold.v_f * k / (zeta + 1e13);
        let full = dielectric_nonlocal(&gold, zeta, k, temperature)?;
        let anom = dielectric_anomalous(&gold, zeta, k)?;
        println!(
            "{:>10.1e} {:>12.3e} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e}",
            k, v, full.eps_l, full.eps_t, anom.eps_l, anom.eps_t
        );
    }
    println!();
    println!("v ≪ 1: both ε match the local Drude value (f_l, f_t → 1).");
    println!("v ≫ 1: ε_l → 1 + 3(ωp/v_F k)² (static Thomas-Fermi screening) and");
    println!("       ε_t → 1 + (3π/4)ωp²/(ζ v_F k); the relaxation frequency has");
    println!("       dropped out — v_F k has taken over its role.");
    Ok(())
}
