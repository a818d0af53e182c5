//! Closed-form low-temperature expansions of ΔF and S, and independent
//! evaluation of their numerical coefficients.
//!
//! In the anomalous regime the s-polarization bracket reduces, for A ≪ 1,
//! to G_s = −C·A² + O(A³) with
//!
//! ```text
//! C = −∫₀^∞ x ln(1 − r_s²(1/x)) dx ≈ 0.0938,
//! ```
//!
//! and the full ΔF bracket coefficient is C·(1/10 + 2I) ≈ 0.0146, where
//! 1/10 = 3/5 − 1/2 collects the ∫₀¹ t^{2/3} dt and ½G terms of the
//! Abel–Plana split and
//!
//! ```text
//! I = ∫₀^∞ (1+t²)^{1/3} sin((2/3) arctan t) / (e^{2πt}−1) dt ≈ 0.0278
//! ```
//!
//! is the Bose-weighted imaginary part of the continued A(z)² ∝ z^{2/3}
//! power law (principal branch). For A ≫ 1 the analogous continuation of
//! the 1/A term produces
//!
//! ```text
//! p₁ = ∫₀^∞ (1+t²)^{−1/6} sin((1/3) arctan t) / (e^{2πt}−1) dt ≈ 0.0133.
//! ```
//!
//! Resulting closed forms (α = α_s + α_p, u the Thomas-Fermi slope):
//!
//! ```text
//! A ≪ 1:  ΔF = (kT/8πa²)·[−αζ(3) + ½ζ(3)(1−8u) + 0.0146·A²],
//!         S  = (k/8πa²)·[α_s ζ(3) − (5/3)·0.0146·A²],
//! A ≫ 1:  ΔF = (kT/8πa²)·ζ(3)·[−α + 1 − 4u − (32/3√3)(1−2p₁)/A],
//!         S  = (k/8πa²)·ζ(3)·[α_s − 1/2 + (64/9√3)(1−2p₁)/A].
//! ```
//!
//! With α_p computed from the Thomas-Fermi-corrected G_p, the u terms
//! cancel identically, so the A-independent part of ΔF depends on α_s only.

use crate::constants::{classical_prefactor, K_BOLTZMANN};
use crate::error::{Error, Result};
use crate::impedance::crossover_a;
use crate::lifshitz::AlphaParameterization;
use crate::material::MetalModel;
use crate::quadrature::{integrate_semi_infinite, zeta3, QuadratureSpec};
use crate::reflection::{r_s_anomalous_dimensionless_with_spec, thomas_fermi_coefficient};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// The numerical coefficients of the low-temperature expansions.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct AsymptoticConstants {
    /// C ≈ 0.0938: G_s = −C·A² for A ≪ 1.
    pub c_small_a: f64,
    /// C·(1/10 + 2I) ≈ 0.0146: the A² coefficient of the ΔF bracket.
    pub bracket_small_a: f64,
    /// p₁ ≈ 0.0133: Bose coefficient of the 1/A term for A ≫ 1.
    pub p1: f64,
    /// I ≈ 0.0278: Bose coefficient of the A² term for A ≪ 1.
    pub bose_i: f64,
}

impl AsymptoticConstants {
    pub fn compute(spec: &QuadratureSpec) -> Result<Self> {
        let c_small_a = constant_c_small_a(spec)?;
        let bose_i = bose_i(spec)?;
        Ok(AsymptoticConstants {
            c_small_a,
            bracket_small_a: c_small_a * (0.1 + 2.0 * bose_i),
            p1: constant_p1(spec)?,
            bose_i,
        })
    }
}

/// Constants computed once at default tolerances and cached.
pub fn asymptotic_constants() -> &'static AsymptoticConstants {
    static CONSTANTS: OnceLock<AsymptoticConstants> = OnceLock::new();
    CONSTANTS.get_or_init(|| {
        AsymptoticConstants::compute(&QuadratureSpec::default())
            .expect("the coefficient integrands are smooth and decaying")
    })
}

/// C = −∫₀^∞ x ln(1 − r_s²(1/x)) dx with the reduced anomalous reflection
/// coefficient (the A → 0 limit drops the e^{−Ax} factor).
pub fn constant_c_small_a(spec: &QuadratureSpec) -> Result<f64> {
    let inner = spec.tightened(30.0);
    let r = integrate_semi_infinite(
        |x| {
            let rs = r_s_anomalous_dimensionless_with_spec(x, &inner).unwrap_or(f64::NAN);
            -x * (1.0 - rs * rs).ln()
        },
        0.0,
        spec,
    )?;
    Ok(r.value)
}

/// p₁ = ∫₀^∞ (1+t²)^{−1/6} sin((1/3) arctan t)/(e^{2πt}−1) dt.
pub fn constant_p1(spec: &QuadratureSpec) -> Result<f64> {
    let r = integrate_semi_infinite(
        |t| {
            if t > 25.0 {
                return 0.0;
            }
            (1.0 + t * t).powf(-1.0 / 6.0) * (t.atan() / 3.0).sin() / (2.0 * PI * t).exp_m1()
        },
        0.0,
        spec,
    )?;
    Ok(r.value)
}

/// I = ∫₀^∞ (1+t²)^{1/3} sin((2/3) arctan t)/(e^{2πt}−1) dt.
pub fn bose_i(spec: &QuadratureSpec) -> Result<f64> {
    let r = integrate_semi_infinite(
        |t| {
            if t > 25.0 {
                return 0.0;
            }
            (1.0 + t * t).powf(1.0 / 3.0) * (2.0 * t.atan() / 3.0).sin() / (2.0 * PI * t).exp_m1()
        },
        0.0,
        spec,
    )?;
    Ok(r.value)
}

/// A² bracket coefficient C·(1/10 + 2I) ≈ 0.0146.
pub fn bracket_small_a(spec: &QuadratureSpec) -> Result<f64> {
    Ok(constant_c_small_a(spec)? * (0.1 + 2.0 * bose_i(spec)?))
}

/// Closed-form ΔF for A ≪ 1. Errors with [`Error::Regime`] for A ≥ 1.
pub fn delta_f_small_a(
    model: &MetalModel,
    separation: f64,
    temperature: f64,
    alpha: &AlphaParameterization,
) -> Result<f64> {
    let a_par = crossover_a(model, separation, temperature);
    if a_par >= 1.0 {
        return Err(Error::Regime(format!(
            "small-A expansion requires A < 1, got A = {a_par:.3}"
        )));
    }
    let alpha_total = alpha.total(model, separation)?;
    let u = thomas_fermi_coefficient(model, separation);
    let bracket = asymptotic_constants().bracket_small_a;
    let pref = classical_prefactor(separation, temperature);
    Ok(pref * (-alpha_total * zeta3() + 0.5 * zeta3() * (1.0 - 8.0 * u) + bracket * a_par * a_par))
}

/// Closed-form ΔF for A ≫ 1 (still τ ≪ 1). Errors for A ≤ 1 or τ ≥ 0.3.
pub fn delta_f_large_a(
    model: &MetalModel,
    separation: f64,
    temperature: f64,
    alpha: &AlphaParameterization,
) -> Result<f64> {
    let a_par = crossover_a(model, separation, temperature);
    let tau = crate::constants::tau(separation, temperature);
    if a_par <= 1.0 {
        return Err(Error::Regime(format!(
            "large-A expansion requires A > 1, got A = {a_par:.3}"
        )));
    }
    if tau >= 0.3 {
        return Err(Error::Regime(format!(
            "large-A expansion requires tau ≪ 1, got tau = {tau:.3}"
        )));
    }
    let alpha_total = alpha.total(model, separation)?;
    let u = thomas_fermi_coefficient(model, separation);
    let p1 = asymptotic_constants().p1;
    let pref = classical_prefactor(separation, temperature);
    Ok(pref
        * zeta3()
        * (-alpha_total + 1.0 - 4.0 * u - 32.0 / (3.0 * 3.0f64.sqrt()) * (1.0 - 2.0 * p1) / a_par))
}

/// Closed-form entropy for A ≪ 1:
/// S = (k/8πa²)·[α_s ζ(3) − (5/3)·bracket·A²]; S ∝ −T^{2/3} for α_s = 0.
pub fn entropy_small_a(
    model: &MetalModel,
    separation: f64,
    temperature: f64,
    alpha_s: f64,
) -> Result<f64> {
    let a_par = crossover_a(model, separation, temperature);
    if a_par >= 1.0 {
        return Err(Error::Regime(format!(
            "small-A expansion requires A < 1, got A = {a_par:.3}"
        )));
    }
    let bracket = asymptotic_constants().bracket_small_a;
    let pref = K_BOLTZMANN / (8.0 * PI * separation * separation);
    Ok(pref * (alpha_s * zeta3() - 5.0 / 3.0 * bracket * a_par * a_par))
}

/// Closed-form entropy for A ≫ 1:
/// S = (k/8πa²)·ζ(3)·[α_s − 1/2 + (64/9√3)(1−2p₁)/A]; negative for
/// α_s = 0 throughout the regime.
pub fn entropy_large_a(
    model: &MetalModel,
    separation: f64,
    temperature: f64,
    alpha_s: f64,
) -> Result<f64> {
    let a_par = crossover_a(model, separation, temperature);
    let tau = crate::constants::tau(separation, temperature);
    if a_par <= 1.0 || tau >= 0.3 {
        return Err(Error::Regime(format!(
            "large-A entropy requires A > 1 and tau ≪ 1, got A = {a_par:.3}, tau = {tau:.3}"
        )));
    }
    let p1 = asymptotic_constants().p1;
    let pref = K_BOLTZMANN / (8.0 * PI * separation * separation);
    Ok(pref
        * zeta3()
        * (alpha_s - 0.5 + 64.0 / (9.0 * 3.0f64.sqrt()) * (1.0 - 2.0 * p1) / a_par))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifshitz::AlphaP;
    use approx::assert_abs_diff_eq;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    // Temperature at which the crossover parameter equals `a_target`.
    fn temperature_for_a(model: &MetalModel, separation: f64, a_target: f64) -> f64 {
        let a1 = crossover_a(model, separation, 1.0);
        (a_target / a1).powi(3)
    }

    #[test]
    fn constant_c_value() {
        let c = constant_c_small_a(&spec()).unwrap();
        assert!((c - 0.0938).abs() < 5e-4, "C = {c}");
        // Independent high-precision oracle value.
        assert_abs_diff_eq!(c, 0.09383419103, epsilon = 5e-7);
    }

    #[test]
    fn constant_c_stable_under_tolerance_halving() {
        let c1 = constant_c_small_a(&spec()).unwrap();
        let tighter = QuadratureSpec::new(spec().rel_tol / 2.0, spec().abs_tol / 2.0, 800).unwrap();
        let c2 = constant_c_small_a(&tighter).unwrap();
        assert!((c1 - c2).abs() < 1e-6);
    }

    #[test]
    fn constant_c_integrand_tail_probe() {
        // x²·integrand → 0 at large x (the integrand decays ~ x^{-5}).
        let inner = spec().tightened(30.0);
        let probe = |x: f64| {
            let rs = r_s_anomalous_dimensionless_with_spec(x, &inner).unwrap();
            let integrand = -x * (1.0 - rs * rs).ln();
            x * x * integrand
        };
        let p10 = probe(10.0);
        let p30 = probe(30.0);
        assert!(p30 < p10);
        assert!(p30 < 1e-3, "x² integrand at 30 = {p30}");
    }

    #[test]
    fn constant_p1_value() {
        let p1 = constant_p1(&spec()).unwrap();
        assert!((p1 - 0.0133).abs() < 5e-4, "p1 = {p1}");
        assert!(p1 > 0.0);
        // The small-t linearization (1/3)(1/24) = 1/72 overestimates.
        assert!(p1 < 1.0 / 72.0);
        assert_abs_diff_eq!(p1, 0.013319876, epsilon = 1e-7);
    }

    #[test]
    fn bose_i_value() {
        let i = bose_i(&spec()).unwrap();
        // Bracketed by its small-t approximation (2/3)(1/24) = 1/36.
        assert!(i < 1.0 / 36.0);
        assert!(i > 0.027);
        assert_abs_diff_eq!(i, 0.027598450, epsilon = 1e-7);
    }

    #[test]
    fn bracket_value_and_identity() {
        let b = bracket_small_a(&spec()).unwrap();
        assert!((b - 0.0146).abs() < 5e-4, "bracket = {b}");
        // Identity against independently computed C and I.
        let c = constant_c_small_a(&spec()).unwrap();
        let i = bose_i(&spec()).unwrap();
        assert!((b / (c * (0.1 + 2.0 * i)) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn constants_reproduce_across_tolerances() {
        let loose = QuadratureSpec::new(1e-8, 1e-11, 300).unwrap();
        let tight = QuadratureSpec::new(1e-10, 1e-13, 2000).unwrap();
        let a = AsymptoticConstants::compute(&loose).unwrap();
        let b = AsymptoticConstants::compute(&tight).unwrap();
        assert!((a.c_small_a - b.c_small_a).abs() < 1e-6);
        assert!((a.bracket_small_a - b.bracket_small_a).abs() < 1e-6);
        assert!((a.p1 - b.p1).abs() < 1e-6);
        assert!((a.bose_i - b.bose_i).abs() < 1e-6);
    }

    #[test]
    fn thomas_fermi_cancellation_in_closed_form() {
        // With computed α_p, the A-independent part reduces to −α_s ζ(3):
        // ΔF = pref·(−α_s ζ(3) + bracket·A²) exactly.
        let m = MetalModel::gold_like();
        let a = 2e-7;
        let alpha = AlphaParameterization::new(0.0, AlphaP::Computed).unwrap();
        let t = temperature_for_a(&m, a, 0.05);
        let df = delta_f_small_a(&m, a, t, &alpha).unwrap();
        let a_par = crossover_a(&m, a, t);
        let pref = classical_prefactor(a, t);
        let expected = pref * asymptotic_constants().bracket_small_a * a_par * a_par;
        assert!(((df - expected) / expected).abs() < 1e-12);
    }

    #[test]
    fn delta_f_small_a_linear_in_alpha_s() {
        let m = MetalModel::gold_like();
        let a = 2e-7;
        let t = temperature_for_a(&m, a, 0.05);
        let pref = classical_prefactor(a, t);
        let d0 = delta_f_small_a(&m, a, t, &AlphaParameterization::new(0.0, AlphaP::Fixed(0.2)).unwrap()).unwrap();
        let d1 = delta_f_small_a(&m, a, t, &AlphaParameterization::new(0.5, AlphaP::Fixed(0.2)).unwrap()).unwrap();
        // ∂ΔF/∂α_s = −ζ(3)·kT/8πa².
        assert_abs_diff_eq!((d1 - d0) / 0.5, -zeta3() * pref, epsilon = 1e-12 * pref);
    }

    #[test]
    fn large_a_bracket_sign() {
        // 1 − 2p₁ > 0, so the 1/A coefficient of ΔF is negative.
        let p1 = asymptotic_constants().p1;
        assert!(1.0 - 2.0 * p1 > 0.0);
    }

    #[test]
    fn large_a_ideal_metal_cancellation() {
        // α = 1, v_F → 0 (so u → 0 and A → ∞): the bracket vanishes and
        // ΔF becomes negligible against the classical scale.
        let mut m = MetalModel::gold_like();
        m.v_f = 1e-8;
        let a = 2e-7;
        let t = 0.1 * crate::constants::t_eff(a) / (2.0 * PI); // tau = 0.1
        let alpha = AlphaParameterization::new(0.5, AlphaP::Fixed(0.5)).unwrap();
        let df = delta_f_large_a(&m, a, t, &alpha).unwrap();
        let pref = classical_prefactor(a, t);
        assert!(df.abs() < 1e-4 * pref * zeta3(), "ΔF = {df}");
        // Quartering v_F doubles A ∝ (1/v_F)^{1/3}... strictly, A grows and
        // the residual shrinks accordingly.
        m.v_f = 1e-10;
        let df2 = delta_f_large_a(&m, a, t, &alpha).unwrap();
        assert!(df2.abs() < df.abs());
    }

    #[test]
    fn entropy_small_a_signs_and_limits() {
        let m = MetalModel::gold_like();
        let a = 2e-7;
        // α_s = 0: S < 0 and S ∝ −T^{2/3}.
        let t1 = temperature_for_a(&m, a, 0.04);
        let t2 = temperature_for_a(&m, a, 0.02);
        let s1 = entropy_small_a(&m, a, t1, 0.0).unwrap();
        let s2 = entropy_small_a(&m, a, t2, 0.0).unwrap();
        assert!(s1 < 0.0 && s2 < 0.0);
        assert_abs_diff_eq!(
            s2 / s1,
            (t2 / t1).powf(2.0 / 3.0),
            epsilon = 1e-12
        );
        // α_s = 1/2: finite positive limit (k/8πa²)·ζ(3)/2 as T → 0.
        let s_half = entropy_small_a(&m, a, t2, 0.5).unwrap();
        let limit = K_BOLTZMANN / (8.0 * PI * a * a) * zeta3() / 2.0;
        assert!(((s_half - limit) / limit).abs() < 1e-3);
    }

    #[test]
    fn entropy_large_a_limits() {
        // Huge A at small τ needs a slow metal; v_F = 1 m/s pushes the
        // crossover far out while keeping τ ≪ 1.
        let mut slow = MetalModel::gold_like();
        slow.v_f = 1.0;
        let a = 2e-7;
        let pref = K_BOLTZMANN / (8.0 * PI * a * a);
        let t = temperature_for_a(&slow, a, 1e3);
        assert!(crate::constants::tau(a, t) < 0.3);
        // S(α_s = 0) → −(k/8πa²)ζ(3)/2 (within the residual 1/A term).
        let s0 = entropy_large_a(&slow, a, t, 0.0).unwrap();
        assert!(((s0 + pref * zeta3() / 2.0) / (pref * zeta3())).abs() < 1e-2);
        // S(α_s = 1/2) → 0 from above.
        let s_half = entropy_large_a(&slow, a, t, 0.5).unwrap();
        assert!(s_half > 0.0 && s_half < 1e-2 * pref * zeta3());
        // Negative for α_s = 0 once A is deep enough in the regime that the
        // 1/A term is a correction (the closed form changes sign near A ≈ 8).
        let m = MetalModel::gold_like();
        for target in [10.0, 15.0, 30.0] {
            let tt = temperature_for_a(&m, a, target);
            assert!(crate::constants::tau(a, tt) < 0.3, "A = {target} leaves the regime");
            assert!(entropy_large_a(&m, a, tt, 0.0).unwrap() < 0.0);
        }
    }

    #[test]
    fn entropy_matches_temperature_derivative_small_a() {
        // Richardson central difference of the closed-form ΔF reproduces
        // the closed-form entropy to ~1e-10 relative.
        let m = MetalModel::gold_like();
        let a = 2e-7;
        let alpha = AlphaParameterization::new(0.3, AlphaP::Computed).unwrap();
        let t = temperature_for_a(&m, a, 0.1);
        let s_closed = entropy_small_a(&m, a, t, alpha.alpha_s).unwrap();
        let d = |h: f64| {
            let hi = delta_f_small_a(&m, a, t + h, &alpha).unwrap();
            let lo = delta_f_small_a(&m, a, t - h, &alpha).unwrap();
            -(hi - lo) / (2.0 * h)
        };
        let h = 1e-3 * t;
        let s_fd = (4.0 * d(0.5 * h) - d(h)) / 3.0;
        assert!(
            ((s_fd - s_closed) / s_closed).abs() < 1e-10,
            "{s_fd} vs {s_closed}"
        );
    }

    #[test]
    fn entropy_matches_temperature_derivative_large_a() {
        let m = MetalModel::gold_like();
        let a = 2e-7;
        let alpha = AlphaParameterization::new(0.25, AlphaP::Computed).unwrap();
        let t = temperature_for_a(&m, a, 20.0);
        let s_closed = entropy_large_a(&m, a, t, alpha.alpha_s).unwrap();
        let d = |h: f64| {
            let hi = delta_f_large_a(&m, a, t + h, &alpha).unwrap();
            let lo = delta_f_large_a(&m, a, t - h, &alpha).unwrap();
            -(hi - lo) / (2.0 * h)
        };
        let h = 1e-3 * t;
        let s_fd = (4.0 * d(0.5 * h) - d(h)) / 3.0;
        assert!(
            ((s_fd - s_closed) / s_closed).abs() < 1e-10,
            "{s_fd} vs {s_closed}"
        );
    }

    #[test]
    fn regime_guards() {
        let m = MetalModel::gold_like();
        let a = 2e-7;
        let alpha = AlphaParameterization::new(0.0, AlphaP::Computed).unwrap();
        let t_large = temperature_for_a(&m, a, 5.0);
        let t_small = temperature_for_a(&m, a, 0.5);
        assert!(matches!(delta_f_small_a(&m, a, t_large, &alpha), Err(Error::Regime(_))));
        assert!(matches!(delta_f_large_a(&m, a, t_small, &alpha), Err(Error::Regime(_))));
        assert!(matches!(entropy_small_a(&m, a, t_large, 0.0), Err(Error::Regime(_))));
        assert!(matches!(entropy_large_a(&m, a, t_small, 0.0), Err(Error::Regime(_))));
    }
}
