//! Physical constants (SI, 2019 exact values where applicable).

/// Speed of light in vacuum, m/s.
pub const C_LIGHT: f64 = 299_792_458.0;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant, J/K.
pub const K_BOLTZMANN: f64 = 1.380_649e-23;

/// Characteristic frequency of the gap, ω_a = c/2a (rad/s).
pub fn omega_a(separation: f64) -> f64 {
    C_LIGHT / (2.0 * separation)
}

/// Effective temperature of the gap, k T_eff = ħ ω_a (K).
pub fn t_eff(separation: f64) -> f64 {
    HBAR * omega_a(separation) / K_BOLTZMANN
}

/// Dimensionless temperature τ = 2πT/T_eff = 2πkT·2a/(ħc).
pub fn tau(separation: f64, temperature: f64) -> f64 {
    2.0 * std::f64::consts::PI * temperature / t_eff(separation)
}

/// Free-energy prefactor kT/(8πa²), J/m².
pub fn classical_prefactor(separation: f64, temperature: f64) -> f64 {
    K_BOLTZMANN * temperature / (8.0 * std::f64::consts::PI * separation * separation)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_is_dimensionless_temperature() {
        // τ = 1 exactly at T = T_eff/2π by construction.
        let a = 2e-7;
        let t = t_eff(a) / (2.0 * std::f64::consts::PI);
        assert!((tau(a, t) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gold_like_effective_temperature_scale() {
        // For a = 200 nm the effective temperature is a few thousand kelvin.
        let t = t_eff(2e-7);
        assert!(t > 5e3 && t < 6e3, "T_eff = {t}");
    }
}
