//! Metal parameters and dielectric response on the imaginary frequency axis.
//!
//! The nonlocal longitudinal/transverse dielectric functions come from the
//! Boltzmann kinetic description of the conduction electrons,
//!
//! ```text
//! ε_l(ζ,k) = 1 + ωp² f_l(v) / (ζ(ζ+ω_τ)),
//! ε_t(ζ,k) = 1 + ωp² f_t(v) / (ζ(ζ+ω_τ)),   v = v_F k / (ζ + ω_τ),
//! ```
//!
//! with
//!
//! ```text
//! f_l(v) = (3/v²)(v − arctan v) / (v + (ω_τ/ζ)(v − arctan v)),
//! f_t(v) = (3/2v³)(−v + (1+v²) arctan v).
//! ```
//!
//! They are valid for ζ < ωp and k below the Fermi wave number k_F; the
//! latter bound is not enforced numerically since k_F is not a model
//! parameter here. For v ≫ 1 (anomalous skin effect) the relaxation
//! frequency drops out and
//!
//! ```text
//! ε_l → 1 + 3(ωp/v_F k)²,      ε_t → 1 + (3π/4) ωp²/(ζ v_F k),
//! ```
//!
//! so ε_l is frequency independent (Thomas-Fermi screening) and v_F k takes
//! over the role of the relaxation frequency in ε_t.

use crate::constants::C_LIGHT;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Temperature law for the Drude relaxation frequency ω_τ(T).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelaxationLaw {
    /// ω_τ(T) = ω_τ0 for all T.
    Constant { omega_tau: f64 },
    /// ω_τ(T) = ω_τ0 (T/T_ref)^p with p ≥ 1. Exponents > 1 encode a
    /// faster-than-linear decrease towards T = 0 (Bloch–Grüneisen-like;
    /// p = 5 for a clean metal well below the Debye temperature).
    PowerLaw {
        omega_tau0: f64,
        t_ref: f64,
        exponent: f64,
    },
    /// Power law plus a residual value ω_res surviving at T = 0, modelling
    /// impurity scattering.
    ResidualPlusPowerLaw {
        omega_res: f64,
        omega_tau0: f64,
        t_ref: f64,
        exponent: f64,
    },
}

impl RelaxationLaw {
    /// ω_τ(T) in rad/s. Errors for T < 0.
    pub fn evaluate(&self, temperature: f64) -> Result<f64> {
        if !(temperature >= 0.0) {
            return Err(Error::Domain(format!(
                "temperature must be ≥ 0, got {temperature}"
            )));
        }
        Ok(match *self {
            RelaxationLaw::Constant { omega_tau } => omega_tau,
            RelaxationLaw::PowerLaw {
                omega_tau0,
                t_ref,
                exponent,
            } => omega_tau0 * (temperature / t_ref).powf(exponent),
            RelaxationLaw::ResidualPlusPowerLaw {
                omega_res,
                omega_tau0,
                t_ref,
                exponent,
            } => omega_res + omega_tau0 * (temperature / t_ref).powf(exponent),
        })
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            RelaxationLaw::Constant { omega_tau } => omega_tau >= 0.0,
            RelaxationLaw::PowerLaw {
                omega_tau0,
                t_ref,
                exponent,
            } => omega_tau0 >= 0.0 && t_ref > 0.0 && exponent >= 1.0,
            RelaxationLaw::ResidualPlusPowerLaw {
                omega_res,
                omega_tau0,
                t_ref,
                exponent,
            } => omega_res >= 0.0 && omega_tau0 >= 0.0 && t_ref > 0.0 && exponent >= 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain("invalid relaxation law parameters".into()))
        }
    }
}

/// Which material response model drives the reflectivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResponseKind {
    /// Local Drude: ε(iζ) = 1 + ωp²/(ζ(ζ+ω_τ)).
    LocalDrude,
    /// Local plasma: ε(iζ) = 1 + ωp²/ζ².
    LocalPlasma,
    /// Nonlocal Boltzmann-theory ε_l, ε_t (keeps ω_τ).
    NonlocalBoltzmann,
    /// Anomalous-skin-effect limits of the Boltzmann forms (ω_τ-free).
    AnomalousLimit,
}

/// Conduction-electron parameters of one plate material.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetalModel {
    /// Plasma frequency ωp, rad/s.
    pub omega_p: f64,
    /// Fermi velocity v_F, m/s.
    pub v_f: f64,
    pub relaxation: RelaxationLaw,
    pub response: ResponseKind,
}

impl MetalModel {
    /// Gold-like demonstration defaults: ωp = 1.37e16 rad/s, v_F = 1.4e6 m/s,
    /// ω_τ(300 K) = 1e13 rad/s falling as T⁵, anomalous-limit response.
    /// These are configuration defaults only; no library formula depends on
    /// them.
    pub fn gold_like() -> Self {
        MetalModel {
            omega_p: 1.37e16,
            v_f: 1.4e6,
            relaxation: RelaxationLaw::PowerLaw {
                omega_tau0: 1e13,
                t_ref: 300.0,
                exponent: 5.0,
            },
            response: ResponseKind::AnomalousLimit,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_p > 0.0) {
            return Err(Error::Domain(format!("omega_p must be > 0, got {}", self.omega_p)));
        }
        if !(self.v_f > 0.0 && self.v_f < C_LIGHT) {
            return Err(Error::Domain(format!("v_f must be in (0, c), got {}", self.v_f)));
        }
        self.relaxation.validate()
    }

    /// ω_τ(T) for this metal's relaxation law.
    pub fn relaxation_frequency(&self, temperature: f64) -> Result<f64> {
        self.relaxation.evaluate(temperature)
    }
}

/// Longitudinal and transverse permittivities at one (ζ, k) point.
/// On the imaginary axis both are real and ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DielectricPair {
    pub eps_l: f64,
    pub eps_t: f64,
}

/// v − arctan v, series-protected against cancellation at small v.
fn arctan_deficit(v: f64) -> f64 {
    if v.abs() < 0.25 {
        // v³/3 − v⁵/5 + v⁷/7 − ...; 12 terms keep the relative error below
        // 1e-14 at v = 0.25.
        let v2 = v * v;
        let mut term = v * v2;
        let mut sum = 0.0;
        let mut sign = 1.0;
        for k in 1..=12 {
            sum += sign * term / (2 * k + 1) as f64;
            term *= v2;
            sign = -sign;
        }
        sum
    } else {
        v - v.atan()
    }
}

/// Boltzmann shape factors f_l(v), f_t(v) for a given ω_τ/ζ ratio.
/// Both tend to 1 as v → 0 and fall off monotonically.
pub(crate) fn shape_factors(v: f64, omega_tau_over_zeta: f64) -> (f64, f64) {
    let defi = arctan_deficit(v);
    let f_l = if v < 1e-4 {
        // Expand the v³-leading deficit to avoid 0/0 below v ~ 1e-300.
        let v2 = v * v;
        let series = (1.0 - 0.6 * v2) / 3.0; // (v − arctan v)/v³
        3.0 * series / (1.0 + omega_tau_over_zeta * v2 * series)
    } else {
        3.0 / (v * v) * defi / (v + omega_tau_over_zeta * defi)
    };
    let f_t = if v < 1e-2 {
        // 1 − v²/5 + 3v⁴/35 − ...
        let v2 = v * v;
        1.0 - 0.2 * v2 + (3.0 / 35.0) * v2 * v2
    } else {
        1.5 / (v * v * v) * (-v + (1.0 + v * v) * v.atan())
    };
    (f_l, f_t)
}

/// Nonlocal Boltzmann dielectric functions at (ζ, k) and temperature T.
pub fn dielectric_nonlocal(
    model: &MetalModel,
    zeta: f64,
    k: f64,
    temperature: f64,
) -> Result<DielectricPair> {
    if !(zeta > 0.0) {
        return Err(Error::Domain(format!("zeta must be > 0, got {zeta}")));
    }
    if !(k > 0.0) {
        return Err(Error::Domain(format!("k must be > 0, got {k}")));
    }
    let omega_tau = model.relaxation_frequency(temperature)?;
    let v = model.v_f * k / (zeta + omega_tau);
    let (f_l, f_t) = shape_factors(v, omega_tau / zeta);
    let drude = model.omega_p * model.omega_p / (zeta * (zeta + omega_tau));
    Ok(DielectricPair {
        eps_l: 1.0 + drude * f_l,
        eps_t: 1.0 + drude * f_t,
    })
}

/// Anomalous-skin-effect limits of the dielectric functions. The relaxation
/// frequency has fallen out; ε_l does not depend on ζ at all.
pub fn dielectric_anomalous(model: &MetalModel, zeta: f64, k: f64) -> Result<DielectricPair> {
    if !(zeta > 0.0) {
        return Err(Error::Domain(format!("zeta must be > 0, got {zeta}")));
    }
    if !(k > 0.0) {
        return Err(Error::Domain(format!("k must be > 0, got {k}")));
    }
    let r = model.omega_p / (model.v_f * k);
    Ok(DielectricPair {
        eps_l: 1.0 + 3.0 * r * r,
        eps_t: 1.0 + 0.75 * std::f64::consts::PI * model.omega_p * model.omega_p
            / (zeta * model.v_f * k),
    })
}

/// Local permittivity at imaginary frequency iζ for the local response
/// kinds. Nonlocal kinds have no single local permittivity and are
/// rejected.
pub fn dielectric_local(model: &MetalModel, zeta: f64, temperature: f64) -> Result<f64> {
    if !(zeta > 0.0) {
        return Err(Error::Domain(format!("zeta must be > 0, got {zeta}")));
    }
    let wp2 = model.omega_p * model.omega_p;
    match model.response {
        ResponseKind::LocalDrude => {
            let omega_tau = model.relaxation_frequency(temperature)?;
            Ok(1.0 + wp2 / (zeta * (zeta + omega_tau)))
        }
        ResponseKind::LocalPlasma => Ok(1.0 + wp2 / (zeta * zeta)),
        _ => Err(Error::Domain(
            "dielectric_local requires a local response kind".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn model(relaxation: RelaxationLaw) -> MetalModel {
        MetalModel {
            relaxation,
            response: ResponseKind::NonlocalBoltzmann,
            ..MetalModel::gold_like()
        }
    }

    #[test]
    fn relaxation_laws() {
        let c = RelaxationLaw::Constant { omega_tau: 1e13 };
        assert_eq!(c.evaluate(300.0).unwrap(), 1e13);

        let p = RelaxationLaw::PowerLaw {
            omega_tau0: 1e13,
            t_ref: 300.0,
            exponent: 5.0,
        };
        assert_eq!(p.evaluate(0.0).unwrap(), 0.0);
        assert_eq!(p.evaluate(300.0).unwrap(), 1e13);

        let r = RelaxationLaw::ResidualPlusPowerLaw {
            omega_res: 1e9,
            omega_tau0: 1e13,
            t_ref: 300.0,
            exponent: 5.0,
        };
        assert_eq!(r.evaluate(0.0).unwrap(), 1e9);
        assert!(r.evaluate(-1.0).is_err());
    }

    #[test]
    fn relaxation_monotone_in_temperature() {
        let laws = [
            RelaxationLaw::Constant { omega_tau: 1e13 },
            RelaxationLaw::PowerLaw {
                omega_tau0: 1e13,
                t_ref: 300.0,
                exponent: 5.0,
            },
            RelaxationLaw::ResidualPlusPowerLaw {
                omega_res: 1e9,
                omega_tau0: 1e13,
                t_ref: 300.0,
                exponent: 2.0,
            },
        ];
        for law in laws {
            let mut prev = law.evaluate(0.0).unwrap();
            for t in [1.0, 10.0, 100.0, 300.0, 1000.0] {
                let cur = law.evaluate(t).unwrap();
                assert!(cur >= prev);
                prev = cur;
            }
        }
    }

    #[test]
    fn local_limit_of_nonlocal_functions() {
        // k → 0 (v → 0): f_l, f_t → 1 and ε_t recovers the local Drude form.
        let m = model(RelaxationLaw::Constant { omega_tau: 1e13 });
        let zeta = 1e14;
        let pair = dielectric_nonlocal(&m, zeta, 1e-3, 300.0).unwrap();
        let drude = 1.0 + m.omega_p * m.omega_p / (zeta * (zeta + 1e13));
        assert_abs_diff_eq!(pair.eps_t / drude, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(pair.eps_l / drude, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn anomalous_limit_of_nonlocal_functions() {
        // v ≫ 1: the Boltzmann forms approach the anomalous closed forms.
        let m = model(RelaxationLaw::Constant { omega_tau: 0.0 });
        let zeta = 1e10;
        let k = 1e7; // v = v_F k / ζ = 1.4e3
        let full = dielectric_nonlocal(&m, zeta, k, 300.0).unwrap();
        let anom = dielectric_anomalous(&m, zeta, k).unwrap();
        assert!(((full.eps_l - anom.eps_l) / anom.eps_l).abs() < 1e-2);
        assert!(((full.eps_t - anom.eps_t) / anom.eps_t).abs() < 1e-2);
    }

    #[test]
    fn anomalous_agreement_within_one_percent_for_large_v() {
        let m = model(RelaxationLaw::Constant { omega_tau: 0.0 });
        for &(zeta, k) in &[(1e9, 1e6), (1e10, 3e6), (1e11, 1e8)] {
            let v = m.v_f * k / zeta;
            assert!(v > 100.0, "test point must have v > 100, got {v}");
            let full = dielectric_nonlocal(&m, zeta, k, 1.0).unwrap();
            let anom = dielectric_anomalous(&m, zeta, k).unwrap();
            assert!(((full.eps_l - anom.eps_l) / anom.eps_l).abs() < 1e-2);
            assert!(((full.eps_t - anom.eps_t) / anom.eps_t).abs() < 1e-2);
        }
    }

    #[test]
    fn anomalous_forms_are_relaxation_free_and_eps_l_static() {
        let m1 = model(RelaxationLaw::Constant { omega_tau: 0.0 });
        let m2 = model(RelaxationLaw::Constant { omega_tau: 5e13 });
        let a = dielectric_anomalous(&m1, 1e11, 1e7).unwrap();
        let b = dielectric_anomalous(&m2, 1e11, 1e7).unwrap();
        assert_eq!(a, b);
        // ε_l independent of ζ at fixed k.
        let c = dielectric_anomalous(&m1, 1e13, 1e7).unwrap();
        assert_eq!(a.eps_l, c.eps_l);
        assert_ne!(a.eps_t, c.eps_t);
    }

    #[test]
    fn local_models() {
        let mut m = model(RelaxationLaw::Constant { omega_tau: 0.0 });
        m.response = ResponseKind::LocalPlasma;
        assert_abs_diff_eq!(
            dielectric_local(&m, m.omega_p, 300.0).unwrap(),
            2.0,
            epsilon = 1e-12
        );

        // Drude with ω_τ = 0 equals plasma at every ζ.
        let mut d = m;
        d.response = ResponseKind::LocalDrude;
        for zeta in [1e12, 1e14, 1e16] {
            assert_eq!(
                dielectric_local(&d, zeta, 300.0).unwrap(),
                dielectric_local(&m, zeta, 300.0).unwrap()
            );
        }
    }

    #[test]
    fn drude_ohmic_low_frequency_behavior() {
        // ζ ≪ ω_τ: ζ(ε−1) → ωp²/ω_τ, the 1/ω behaviour demanded by Ohm's law.
        let mut m = model(RelaxationLaw::Constant { omega_tau: 1e13 });
        m.response = ResponseKind::LocalDrude;
        let target = m.omega_p * m.omega_p / 1e13;
        for zeta in [1e6, 1e5] {
            let eps = dielectric_local(&m, zeta, 300.0).unwrap();
            assert_abs_diff_eq!(zeta * (eps - 1.0) / target, 1.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn shape_factors_bounded_monotone() {
        let mut prev = (1.0, 1.0);
        for i in 0..200 {
            let v = 1e-4 * 10f64.powf(i as f64 * 0.04);
            let (fl, ft) = shape_factors(v, 0.0);
            assert!(fl > 0.0 && fl <= 1.0 + 1e-12, "f_l({v}) = {fl}");
            assert!(ft > 0.0 && ft <= 1.0 + 1e-12, "f_t({v}) = {ft}");
            assert!(fl <= prev.0 + 1e-12 && ft <= prev.1 + 1e-12);
            prev = (fl, ft);
        }
    }

    #[test]
    fn shape_factors_continuous_across_series_switch() {
        for &v in &[0.2499, 0.2501, 0.9e-2, 1.1e-2, 0.9e-4, 1.1e-4] {
            let (fl_a, ft_a) = shape_factors(v * (1.0 - 1e-9), 0.7);
            let (fl_b, ft_b) = shape_factors(v * (1.0 + 1e-9), 0.7);
            assert_abs_diff_eq!(fl_a, fl_b, epsilon = 1e-8);
            assert_abs_diff_eq!(ft_a, ft_b, epsilon = 1e-8);
        }
    }

    #[test]
    fn continuity_in_relaxation_frequency() {
        // ω_τ → 0⁺ approaches the ω_τ = 0 values pointwise.
        let zeta = 1e11;
        let k = 1e7;
        let base = dielectric_nonlocal(
            &model(RelaxationLaw::Constant { omega_tau: 0.0 }),
            zeta,
            k,
            1.0,
        )
        .unwrap();
        let mut prev_err = f64::INFINITY;
        for omega_tau in [1e9, 1e7, 1e5] {
            let m = model(RelaxationLaw::Constant { omega_tau });
            let p = dielectric_nonlocal(&m, zeta, k, 1.0).unwrap();
            let err = ((p.eps_t - base.eps_t) / base.eps_t).abs()
                + ((p.eps_l - base.eps_l) / base.eps_l).abs();
            assert!(err < prev_err);
            prev_err = err;
        }
        assert!(prev_err < 1e-5);
    }

    #[test]
    fn eps_at_least_one() {
        let m = model(RelaxationLaw::PowerLaw {
            omega_tau0: 1e13,
            t_ref: 300.0,
            exponent: 5.0,
        });
        for &zeta in &[1e8, 1e11, 1e14, 1e16] {
            for &k in &[1e2, 1e5, 1e8, 1e10] {
                let p = dielectric_nonlocal(&m, zeta, k, 77.0).unwrap();
                assert!(p.eps_l >= 1.0 && p.eps_t >= 1.0);
            }
        }
    }

    #[test]
    fn invalid_inputs() {
        let m = model(RelaxationLaw::Constant { omega_tau: 0.0 });
        assert!(dielectric_nonlocal(&m, 0.0, 1e7, 1.0).is_err());
        assert!(dielectric_nonlocal(&m, 1e10, -1.0, 1.0).is_err());
        assert!(dielectric_anomalous(&m, -1e10, 1e7).is_err());
        assert!(dielectric_local(&m, 1e10, 1.0).is_err()); // nonlocal kind
    }
}
