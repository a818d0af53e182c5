//! Reflection coefficients from surface impedances.
//!
//! With the plane-wave impedances Z_s0 = ζ/(ck₀), Z_p0 = ck₀/ζ
//! (k₀ = √(ζ²/c² + q²)), the reflection coefficients are
//!
//! ```text
//! r_s = −(Z_s0 − Z_s)/(Z_s0 + Z_s),    r_p = (Z_p0 − Z_p)/(Z_p0 + Z_p).
//! ```
//!
//! In the dimensionless variables ξ = ζ/ω_a, y = 2a k₀ the plane-wave
//! impedances reduce to Z_s0 = ξ/y and Z_p0 = y/ξ. Only r² enters the free
//! energy, but the sign conventions above are preserved.
//!
//! The zero-frequency s-polarization value r_s(0, y) is deliberately never
//! produced here: the n = 0 Lifshitz term is controlled by the explicit
//! α-parameterization in [`crate::lifshitz`], not by a silent limit of any
//! impedance model.

use crate::constants::{omega_a, C_LIGHT};
use crate::error::{Error, Result};
use crate::material::MetalModel;
use crate::quadrature::QuadratureSpec;

/// Polarization label for the two transverse field modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarization {
    S,
    P,
}

/// Both reflection coefficients at one dimensionless spectral point.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ReflectionPair {
    /// s-polarization coefficient, in [−1, 1].
    pub r_s: f64,
    /// p-polarization coefficient, in [−1, 1].
    pub r_p: f64,
    pub xi: f64,
    pub y: f64,
}

impl ReflectionPair {
    /// Build from surface impedances (z_s, z_p) at the spectral point
    /// (ξ, y), combining them with the plane-wave impedances.
    pub fn from_surface_impedances(xi: f64, y: f64, z_s: f64, z_p: f64) -> Result<Self> {
        let (z_s0, z_p0) = wave_impedances(xi, y)?;
        Ok(ReflectionPair {
            r_s: reflection_from_impedance(z_s0, z_s, Polarization::S)?,
            r_p: reflection_from_impedance(z_p0, z_p, Polarization::P)?,
            xi,
            y,
        })
    }
}

/// Plane-wave impedances (z_s0, z_p0) in dimensionless variables.
/// Requires y ≥ ξ ≥ 0 and not both zero; z_p0 = ∞ at ξ = 0.
pub fn wave_impedances(xi: f64, y: f64) -> Result<(f64, f64)> {
    if !(xi >= 0.0) || !(y >= 0.0) {
        return Err(Error::Domain(format!("xi, y must be ≥ 0, got ({xi}, {y})")));
    }
    if y < xi {
        return Err(Error::Domain(format!("need y ≥ xi, got y = {y} < xi = {xi}")));
    }
    if y == 0.0 {
        return Err(Error::Domain("xi = y = 0 has no wave impedance".into()));
    }
    if xi == 0.0 {
        return Ok((0.0, f64::INFINITY));
    }
    Ok((xi / y, y / xi))
}

/// Reflection coefficient from a plane-wave impedance `z0` and a surface
/// impedance `z`, for either polarization. Infinite `z0` is accepted as the
/// ξ → 0 limit.
pub fn reflection_from_impedance(z0: f64, z: f64, pol: Polarization) -> Result<f64> {
    if z0 < 0.0 || z < 0.0 || z0.is_nan() || z.is_nan() {
        return Err(Error::Domain(format!("impedances must be ≥ 0, got z0 = {z0}, z = {z}")));
    }
    if z0.is_infinite() {
        // (z0 − z)/(z0 + z) → 1.
        return Ok(match pol {
            Polarization::S => -1.0,
            Polarization::P => 1.0,
        });
    }
    if z.is_infinite() {
        return Ok(match pol {
            Polarization::S => 1.0,
            Polarization::P => -1.0,
        });
    }
    let denom = z0 + z;
    if denom == 0.0 {
        return Err(Error::Domain("z0 + z = 0: reflection undefined".into()));
    }
    let ratio = (z0 - z) / denom;
    Ok(match pol {
        Polarization::S => -ratio,
        Polarization::P => ratio,
    })
}

/// Reduced s-polarization reflection coefficient of the anomalous regime as
/// a function of x = y/A:
///
/// ```text
/// r_s(x) ≈ −(1 − F(1/x)) / (1 + F(1/x)),
/// ```
///
/// with F evaluated by quadrature. |r_s| falls monotonically from 1 (x → 0,
/// Leontovich region) to 0 (x → ∞, local region).
pub fn r_s_anomalous_dimensionless(x: f64) -> Result<f64> {
    r_s_anomalous_dimensionless_with_spec(x, &QuadratureSpec::default())
}

/// Same as [`r_s_anomalous_dimensionless`] with caller-controlled
/// quadrature tolerances for F.
pub fn r_s_anomalous_dimensionless_with_spec(x: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be > 0, got {x}")));
    }
    let f = crate::impedance::special_f_with_spec(1.0 / x, spec)?;
    Ok(-(1.0 - f) / (1.0 + f))
}

/// Thomas-Fermi slope u = (1/√3)(v_F/c)(ω_a/ωp); the low-frequency
/// p-polarization reflection is (1 − u·y)/(1 + u·y).
pub fn thomas_fermi_coefficient(model: &MetalModel, separation: f64) -> f64 {
    (model.v_f / C_LIGHT) * (omega_a(separation) / model.omega_p) / 3.0f64.sqrt()
}

/// Linearized low-frequency p-polarization coefficient
/// r_p ≈ 1 − (2/√3)(v_F/c)(ω_a/ωp)·y. Errors when the correction reaches 1
/// and the linearization is invalid.
pub fn r_p_low_frequency(model: &MetalModel, separation: f64, y: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("y must be > 0, got {y}")));
    }
    let correction = 2.0 * thomas_fermi_coefficient(model, separation) * y;
    if correction >= 1.0 {
        return Err(Error::Domain(format!(
            "linearized Thomas-Fermi correction {correction} ≥ 1 at y = {y}"
        )));
    }
    Ok(1.0 - correction)
}

/// Exact rational form of the low-frequency p-polarization coefficient,
/// r_p = (1 − u·y)/(1 + u·y); bounded in [−1, 1] for all y ≥ 0.
pub fn r_p_low_frequency_rational(model: &MetalModel, separation: f64, y: f64) -> Result<f64> {
    if !(y >= 0.0) {
        return Err(Error::Domain(format!("y must be ≥ 0, got {y}")));
    }
    let u = thomas_fermi_coefficient(model, separation) * y;
    Ok((1.0 - u) / (1.0 + u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::impedance::impedance_exact;
    use crate::material::{RelaxationLaw, ResponseKind};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn wave_impedance_examples() {
        let (s, p) = wave_impedances(1.0, 1.0).unwrap();
        assert_eq!((s, p), (1.0, 1.0));

        let (s, p) = wave_impedances(0.5, 1.0).unwrap();
        assert_eq!(s, 0.5);
        assert_eq!(p, 2.0);
        assert_abs_diff_eq!(s * p, 1.0, epsilon = 1e-15);

        let (s, p) = wave_impedances(0.0, 1.0).unwrap();
        assert_eq!(s, 0.0);
        assert!(p.is_infinite());

        assert!(wave_impedances(2.0, 1.0).is_err());
        assert!(wave_impedances(0.0, 0.0).is_err());
    }

    #[test]
    fn reflection_examples() {
        // Impedance matching.
        assert_eq!(
            reflection_from_impedance(0.3, 0.3, Polarization::S).unwrap(),
            0.0
        );
        assert_eq!(
            reflection_from_impedance(0.3, 0.3, Polarization::P).unwrap(),
            0.0
        );
        // z0 → 0 at fixed z: |r_s| → 1.
        let r = reflection_from_impedance(0.0, 0.4, Polarization::S).unwrap();
        assert_abs_diff_eq!(r.abs(), 1.0, epsilon = 1e-15);
        // Screened electric field: r_p → 1 as z → 0.
        assert_eq!(
            reflection_from_impedance(0.7, 0.0, Polarization::P).unwrap(),
            1.0
        );
        // ξ = 0 limit via infinite z_p0.
        assert_eq!(
            reflection_from_impedance(f64::INFINITY, 0.2, Polarization::P).unwrap(),
            1.0
        );
        assert!(reflection_from_impedance(0.0, 0.0, Polarization::S).is_err());
    }

    #[test]
    fn r_s_reduced_limits_and_value() {
        // x → ∞: F → 1 and r_s → 0.
        assert!(r_s_anomalous_dimensionless(1e4).unwrap().abs() < 1e-3);
        // x → 0: |r_s| → 1.
        assert!(r_s_anomalous_dimensionless(1e-3).unwrap().abs() > 0.997);
        // Sign convention keeps the leading minus.
        assert!(r_s_anomalous_dimensionless(1.0).unwrap() < 0.0);
        // Frozen oracle at x = 1 (from F(1) = 0.748834990126258), stable
        // across tolerance settings.
        let coarse = r_s_anomalous_dimensionless_with_spec(
            1.0,
            &QuadratureSpec::new(1e-8, 1e-12, 300).unwrap(),
        )
        .unwrap();
        let fine = r_s_anomalous_dimensionless_with_spec(
            1.0,
            &QuadratureSpec::new(1e-12, 1e-15, 800).unwrap(),
        )
        .unwrap();
        assert!((coarse - fine).abs() < 1e-9);
        assert_abs_diff_eq!(fine, -0.143618472, epsilon = 1e-8);
    }

    #[test]
    fn r_s_reduced_monotone() {
        let mut prev = 1.0;
        for i in 0..40 {
            let x = 1e-2 * 10f64.powf(i as f64 * 0.1);
            let mag = r_s_anomalous_dimensionless(x).unwrap().abs();
            assert!(mag < prev, "|r_s| must decrease, failed at x = {x}");
            prev = mag;
        }
    }

    #[test]
    fn r_p_low_frequency_values() {
        let m = MetalModel::gold_like();
        let a = 2e-7;
        let u = thomas_fermi_coefficient(&m, a);
        assert!(u > 1.4e-4 && u < 1.55e-4, "u = {u}");
        let r = r_p_low_frequency(&m, a, 1.0).unwrap();
        assert_abs_diff_eq!(r, 1.0 - 2.0 * u, epsilon = 1e-15);

        // Doubling the separation halves ω_a and hence the correction.
        assert_abs_diff_eq!(
            thomas_fermi_coefficient(&m, 2.0 * a) * 2.0,
            u,
            epsilon = 1e-18
        );

        // v_F → 0 removes the correction entirely.
        let mut ideal = m;
        ideal.v_f = 1e-6;
        assert!(r_p_low_frequency(&ideal, a, 1.0).unwrap() > 1.0 - 1e-12);

        // The linearization refuses correction ≥ 1.
        assert!(r_p_low_frequency(&m, a, 1.0 / u).is_err());
        // The rational form stays bounded there.
        let rr = r_p_low_frequency_rational(&m, a, 10.0 / u).unwrap();
        assert!((-1.0..=1.0).contains(&rr));
    }

    #[test]
    fn fresnel_equivalence_for_local_response() {
        // Exact impedances with a k-independent ε reproduce the local
        // Fresnel coefficient at imaginary frequency.
        let mut m = MetalModel::gold_like();
        m.response = ResponseKind::LocalDrude;
        m.relaxation = RelaxationLaw::Constant { omega_tau: 1e13 };
        let spec = QuadratureSpec::new(1e-11, 1e-16, 800).unwrap();
        for &(zeta, q) in &[(1e14, 5e6), (5e14, 1e7)] {
            let eps = crate::material::dielectric_local(&m, zeta, 300.0).unwrap();
            let k0 = ((zeta / C_LIGHT).powi(2) + q * q).sqrt();
            let k_eps = ((zeta / C_LIGHT).powi(2) * eps + q * q).sqrt();
            let fresnel_s = (k0 - k_eps) / (k0 + k_eps);
            let fresnel_p = (eps * k0 - k_eps) / (eps * k0 + k_eps);

            let pair = impedance_exact(&m, zeta, q, 300.0, &spec).unwrap();
            let z_s0 = zeta / (C_LIGHT * k0);
            let z_p0 = C_LIGHT * k0 / zeta;
            let r_s = reflection_from_impedance(z_s0, pair.z_s, Polarization::S).unwrap();
            let r_p = reflection_from_impedance(z_p0, pair.z_p, Polarization::P).unwrap();
            assert_abs_diff_eq!(r_s.abs(), fresnel_s.abs(), epsilon = 1e-8);
            assert_abs_diff_eq!(r_p.abs(), fresnel_p.abs(), epsilon = 1e-8);
        }
    }

    proptest! {
        #[test]
        fn reflection_bounded(z0 in 0.0f64..1e3, z in 0.0f64..1e3) {
            prop_assume!(z0 + z > 0.0);
            for pol in [Polarization::S, Polarization::P] {
                let r = reflection_from_impedance(z0, z, pol).unwrap();
                prop_assert!(r.abs() <= 1.0 + 1e-15);
            }
        }
    }
}
