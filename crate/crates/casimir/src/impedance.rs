//! Surface impedances on the imaginary frequency axis.
//!
//! Exact impedances follow from the nonlocal dielectric functions through
//! the wave-number integrals (continued to ω = iζ, all denominators
//! positive):
//!
//! ```text
//! Z_s(ζ,q) = (ζ/πc) ∫ dk_z / [(ζ²/c²)ε_t + k²],
//! Z_p(ζ,q) = (ζ/πc) ∫ dk_z/k² [ q²c²/(ζ²ε_l) + k_z²/((ζ²/c²)ε_t + k²) ],
//! ```
//!
//! with k² = q² + k_z². In the anomalous-skin-effect limit they reduce to
//! closed forms built from the profile integrals
//!
//! ```text
//! F(b) = (2/π)∫₀^∞ dχ cosh²χ/(cosh³χ + b³),
//! G(b) = (2/π)∫₀^∞ dχ sinh²χ/(cosh³χ + b³),
//! b = (1/q)·((3π/4) ωp²ζ/(c²v_F))^{1/3}:
//!
//! Z_s = (ζ/cq) F(b),
//! Z_p = (q²/√3)(c v_F/(ζ ωp)) + (ζ/cq) G(b),
//! ```
//!
//! where the first Z_p term is the Thomas-Fermi screening contribution. For
//! b ≫ 1 both polarizations approach the Leontovich impedance
//! Z(ζ) = (4/3√3)·((4/3π)(v_F/c)(ζ²/ωp²))^{1/3}, which is independent of q
//! and of the relaxation frequency.

use crate::constants::C_LIGHT;
use crate::error::{Error, Result};
use crate::material::{
    dielectric_anomalous, dielectric_local, dielectric_nonlocal, MetalModel, ResponseKind,
};
use crate::quadrature::{
    integrate_finite, integrate_semi_infinite, integrate_semi_infinite_with, QuadratureSpec,
};
use num_complex::Complex64;
use std::f64::consts::PI;

/// s- and p-polarization surface impedances at one (ζ, q) point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpedancePair {
    pub z_s: f64,
    pub z_p: f64,
    /// Imaginary-axis frequency this pair was evaluated at (rad/s).
    pub zeta: f64,
    /// Transverse wave number (1/m).
    pub q: f64,
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive and finite, got {v}")))
    }
}

// ---------------------------------------------------------------------------
// Profile integrals F(b), G(b)
// ---------------------------------------------------------------------------

fn fg_integrand(chi: f64, b: f64, sinh_numerator: bool) -> f64 {
    // cosh²/(cosh³+b³) = sech/(1+(b·sech)³); the sinh² variant carries an
    // extra tanh². Written this way the integrand stays finite for any χ.
    let sech = 1.0 / chi.cosh();
    let t = b * sech;
    let base = sech / (1.0 + t * t * t);
    if sinh_numerator {
        let th = chi.tanh();
        base * th * th
    } else {
        base
    }
}

fn special_fg(b: f64, sinh_numerator: bool, spec: &QuadratureSpec) -> Result<f64> {
    if !(b >= 0.0) || !b.is_finite() {
        return Err(Error::Domain(format!("b must be ≥ 0 and finite, got {b}")));
    }
    let f = move |chi: f64| fg_integrand(chi, b, sinh_numerator);
    if b > 2.0 {
        // The integrand is ~b⁻³ up to coshχ ≈ b and only then rolls over
        // into the sech tail; split at the crossover so the adaptive rule
        // sees the structure even for very large b.
        let chi_b = (b + (b * b - 1.0).sqrt()).ln(); // arccosh(b)
        let head = integrate_finite(f, 0.0, chi_b + 3.0, spec)?;
        let tail = integrate_semi_infinite(f, chi_b + 3.0, spec)?;
        Ok(2.0 / PI * (head.value + tail.value))
    } else {
        let r = integrate_semi_infinite(f, 0.0, spec)?;
        Ok(2.0 / PI * r.value)
    }
}

fn special_spec() -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: 1e-11,
        abs_tol: 1e-15,
        max_subdivisions: 600,
    }
}

/// F(b) evaluated by quadrature.
///
/// Asymptotics: F(0) = 1, F(b) = 1 − (4/3π)b³ + O(b⁶) for b ≪ 1 and
/// F(b) = (4/3√3)/b + O(b⁻³) for b ≫ 1.
pub fn special_f(b: f64) -> Result<f64> {
    special_fg(b, false, &special_spec())
}

/// F(b) by quadrature under caller-controlled tolerances.
pub fn special_f_with_spec(b: f64, spec: &QuadratureSpec) -> Result<f64> {
    special_fg(b, false, spec)
}

/// G(b) evaluated by quadrature. G(0) = 1/2; shares the (4/3√3)/b large-b
/// asymptote with F.
pub fn special_g(b: f64) -> Result<f64> {
    special_fg(b, true, &special_spec())
}

/// G(b) by quadrature under caller-controlled tolerances.
pub fn special_g_with_spec(b: f64, spec: &QuadratureSpec) -> Result<f64> {
    special_fg(b, true, spec)
}

// ---------------------------------------------------------------------------
// Closed-form evaluation of F, G (internal fast path)
//
// cosh³χ + b³ factors over the roots w_k = −b·e^{2πik/3} of u³ = −b³, and
// every term reduces to J(w) = ∫₀^∞ dχ/(coshχ − w) = ∫₀¹ 2dx/(x²−2wx+1),
// which is elementary. J is analytic on C∖[1,∞); the engine only requests
// |arg b| ≲ 50°, which keeps all three w_k safely off that cut.
// ---------------------------------------------------------------------------

/// J(w) = ∫₀^∞ dχ/(coshχ − w) for w off the real ray [1, ∞).
fn j_profile(w: Complex64) -> Complex64 {
    if (w + 1.0).norm() < 0.5 {
        // Series around w = −1: J = Σ_k (2(w+1))^k / ((2k+1)·C(2k,k)).
        let z = 2.0 * (w + 1.0);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut zpow = Complex64::new(1.0, 0.0);
        let mut binom = 1.0f64;
        for k in 0..32u32 {
            if k > 0 {
                let kf = k as f64;
                binom *= (2.0 * kf - 1.0) * 2.0 * kf / (kf * kf);
                zpow *= z;
            }
            sum += zpow / ((2 * k + 1) as f64 * binom);
        }
        return sum;
    }
    debug_assert!(
        (w - 1.0).norm() > 1e-6,
        "j_profile evaluated at the branch-cut boundary w ≈ 1"
    );
    let d = (w * w - 1.0).sqrt();
    // The two roots of x² − 2wx + 1 multiply to exactly 1. Form the larger
    // one first (no cancellation) and invert; w ± d would lose the small
    // root entirely once |w| ≳ 1e8.
    // width = x_out − x_in.
    let (x_out, width) = if (w + d).norm() >= (w - d).norm() {
        (w + d, 2.0 * d)
    } else {
        (w - d, -2.0 * d)
    };
    let x_in = 1.0 / x_out;
    2.0 * (-x_in).ln() / width
}

/// Closed-form (F(b), G(b)) for complex b with |arg b| < 60°.
pub(crate) fn fg_closed(b: Complex64) -> (Complex64, Complex64) {
    let n = b.norm();
    if n > 1e8 {
        // F, G → (4/3√3)/b with O(b⁻³) corrections below 1e-16 relative.
        let lead = 4.0 / (3.0 * 3.0f64.sqrt()) / b;
        return (lead, lead);
    }
    if n < 0.05 {
        // F = 1 − (4/3π) b³ + (5/16) b⁶, G = 1/2 − (4/15π) b³ + (1/16) b⁶;
        // the direct root sum for G loses precision to cancellation here.
        let b3 = b * b * b;
        let b6 = b3 * b3;
        let f = 1.0 - 4.0 / (3.0 * PI) * b3 + 0.3125 * b6;
        let g = 0.5 - 4.0 / (15.0 * PI) * b3 + 0.0625 * b6;
        return (f, g);
    }
    debug_assert!(n.is_finite(), "fg_closed got a non-finite b = {b}");
    let rot = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let mut f = Complex64::new(0.0, 0.0);
    let mut g = Complex64::new(0.0, 0.0);
    let mut w = -b;
    for _ in 0..3 {
        let j = j_profile(w);
        f += j;
        g += (1.0 - 1.0 / (w * w)) * j;
        w *= rot;
    }
    let norm = 2.0 / (3.0 * PI);
    (norm * f, norm * g)
}

/// Closed-form (F(b), G(b)) for real b ≥ 0.
pub(crate) fn fg_closed_real(b: f64) -> (f64, f64) {
    let (f, g) = fg_closed(Complex64::new(b, 0.0));
    (f.re, g.re)
}

// ---------------------------------------------------------------------------
// Impedances
// ---------------------------------------------------------------------------

/// b-parameter comparing the anomalous-skin scale to the transverse
/// momentum: b = (1/q)·((3π/4) ωp²ζ/(c² v_F))^{1/3}.
pub fn b_parameter(model: &MetalModel, zeta: f64, q: f64) -> f64 {
    (0.75 * PI * model.omega_p * model.omega_p * zeta / (C_LIGHT * C_LIGHT * model.v_f)).cbrt() / q
}

/// Anomalous-limit impedances from the closed forms above.
pub fn impedance_anomalous(model: &MetalModel, zeta: f64, q: f64) -> Result<ImpedancePair> {
    check_positive("zeta", zeta)?;
    check_positive("q", q)?;
    model.validate()?;
    let b = b_parameter(model, zeta, q);
    let (f, g) = fg_closed_real(b);
    let z_s = zeta / (C_LIGHT * q) * f;
    let z_p = q * q / 3.0f64.sqrt() * C_LIGHT * model.v_f / (zeta * model.omega_p)
        + zeta / (C_LIGHT * q) * g;
    Ok(ImpedancePair { z_s, z_p, zeta, q })
}

/// Leontovich impedance of the strong anomalous skin effect,
/// Z(ζ) = (4/3√3)·((4/3π)(v_F/c)(ζ²/ωp²))^{1/3}; serves both polarizations
/// and is independent of ω_τ.
pub fn impedance_leontovich(model: &MetalModel, zeta: f64) -> Result<f64> {
    check_positive("zeta", zeta)?;
    model.validate()?;
    let arg = 4.0 / (3.0 * PI) * (model.v_f / C_LIGHT) * zeta * zeta
        / (model.omega_p * model.omega_p);
    Ok(4.0 / (3.0 * 3.0f64.sqrt()) * arg.cbrt())
}

enum EpsSupplier<'a> {
    Local { eps: f64 },
    Nonlocal { model: &'a MetalModel, temperature: f64 },
    Anomalous { model: &'a MetalModel },
}

impl EpsSupplier<'_> {
    fn pair(&self, zeta: f64, k: f64) -> (f64, f64) {
        match self {
            EpsSupplier::Local { eps } => (*eps, *eps),
            EpsSupplier::Nonlocal { model, temperature } => {
                let p = dielectric_nonlocal(model, zeta, k, *temperature)
                    .expect("zeta, k > 0 by construction");
                (p.eps_l, p.eps_t)
            }
            EpsSupplier::Anomalous { model } => {
                let p = dielectric_anomalous(model, zeta, k).expect("zeta, k > 0 by construction");
                (p.eps_l, p.eps_t)
            }
        }
    }
}

fn supplier_for<'a>(
    model: &'a MetalModel,
    zeta: f64,
    temperature: f64,
) -> Result<EpsSupplier<'a>> {
    Ok(match model.response {
        ResponseKind::LocalDrude | ResponseKind::LocalPlasma => EpsSupplier::Local {
            eps: dielectric_local(model, zeta, temperature)?,
        },
        ResponseKind::NonlocalBoltzmann => EpsSupplier::Nonlocal { model, temperature },
        ResponseKind::AnomalousLimit => EpsSupplier::Anomalous { model },
    })
}

/// Exact surface impedances by wave-number integration, with the dielectric
/// pair chosen by `model.response`.
///
/// The k_z integrals use the substitution k_z = s·sinhχ (per-term scale s),
/// which compresses all power-law structure logarithmically and leaves an
/// exponentially decaying integrand for the semi-infinite quadrature.
pub fn impedance_exact(
    model: &MetalModel,
    zeta: f64,
    q: f64,
    temperature: f64,
    spec: &QuadratureSpec,
) -> Result<ImpedancePair> {
    check_positive("zeta", zeta)?;
    check_positive("q", q)?;
    if !(temperature >= 0.0) {
        return Err(Error::Domain(format!(
            "temperature must be ≥ 0, got {temperature}"
        )));
    }
    model.validate()?;
    let sup = supplier_for(model, zeta, temperature)?;
    let zc = zeta / C_LIGHT;

    // Scale for the transverse-response integrals: where (ζ²/c²)ε_t(q)
    // competes with k².
    let (_, eps_t_q) = sup.pair(zeta, q);
    let s_t = (q * q + zc * zc * eps_t_q).sqrt().max(q);

    let z_s_int = integrate_semi_infinite(
        |chi| {
            let ch = chi.cosh();
            let th = chi.tanh();
            let sech = 1.0 / ch;
            let k = s_t * ch * (th * th + (q * sech / s_t).powi(2)).sqrt();
            let (_, eps_t) = sup.pair(zeta, k);
            let dt = zc * zc * eps_t;
            (sech / s_t) / ((dt + q * q) * sech * sech / (s_t * s_t) + th * th)
        },
        0.0,
        spec,
    )?;
    let z_s = 2.0 * zeta / (PI * C_LIGHT) * z_s_int.value;

    // Thomas-Fermi (longitudinal) term of Z_p; structure lives at k ~ q and,
    // for nonlocal response, up to the screening wave number, which the
    // sinh substitution reaches within χ ≲ 40.
    let s_l = q;
    let t1_int = integrate_semi_infinite(
        |chi| {
            let ch = chi.cosh();
            let th = chi.tanh();
            let sech = 1.0 / ch;
            let k = s_l * ch * (th * th + sech * sech).sqrt();
            let (eps_l, _) = sup.pair(zeta, k);
            (sech / s_l) / ((q * q * sech * sech / (s_l * s_l) + th * th) * eps_l)
        },
        0.0,
        spec,
    )?;
    let t1 = 2.0 * q * q * C_LIGHT / (PI * zeta) * t1_int.value;

    let t2_int = integrate_semi_infinite(
        |chi| {
            let ch = chi.cosh();
            let th = chi.tanh();
            let sech = 1.0 / ch;
            let k = s_t * ch * (th * th + (q * sech / s_t).powi(2)).sqrt();
            let (_, eps_t) = sup.pair(zeta, k);
            let dt = zc * zc * eps_t;
            let q_term = q * q * sech * sech / (s_t * s_t);
            (th * th * sech / s_t)
                / ((q_term + th * th) * (dt * sech * sech / (s_t * s_t) + q_term + th * th))
        },
        0.0,
        spec,
    )?;
    let t2 = 2.0 * zeta / (PI * C_LIGHT) * t2_int.value;

    Ok(ImpedancePair {
        z_s,
        z_p: t1 + t2,
        zeta,
        q,
    })
}

// ---------------------------------------------------------------------------
// Complex continuation of the exact impedances (Abel-Plana contours)
// ---------------------------------------------------------------------------

fn arctan_deficit_c(v: Complex64) -> Complex64 {
    if v.norm() < 0.25 {
        let v2 = v * v;
        let mut term = v * v2;
        let mut sum = Complex64::new(0.0, 0.0);
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

fn shape_factors_c(v: Complex64, omega_tau_over_zeta: Complex64) -> (Complex64, Complex64) {
    // The contours used by the engine keep Re v > 0, away from the arctan
    // branch cut on the imaginary axis.
    let n = v.norm();
    if n > 1e8 {
        let f_l = 3.0 / (v * v * (1.0 + omega_tau_over_zeta));
        let f_t = 0.75 * PI / v;
        return (f_l, f_t);
    }
    let defi = arctan_deficit_c(v);
    let f_l = if n < 1e-4 {
        let v2 = v * v;
        let series = (1.0 - 0.6 * v2) / 3.0;
        3.0 * series / (1.0 + omega_tau_over_zeta * v2 * series)
    } else {
        3.0 / (v * v) * defi / (v + omega_tau_over_zeta * defi)
    };
    let f_t = if n < 1e-2 {
        let v2 = v * v;
        1.0 - 0.2 * v2 + (3.0 / 35.0) * v2 * v2
    } else {
        1.5 / (v * v * v) * (-v + (1.0 + v * v) * v.atan())
    };
    (f_l, f_t)
}

pub(crate) fn dielectric_pair_c(
    model: &MetalModel,
    response: ResponseKind,
    zeta: Complex64,
    k: Complex64,
    omega_tau: f64,
) -> (Complex64, Complex64) {
    let wp2 = model.omega_p * model.omega_p;
    match response {
        ResponseKind::LocalDrude => {
            let eps = 1.0 + wp2 / (zeta * (zeta + omega_tau));
            (eps, eps)
        }
        ResponseKind::LocalPlasma => {
            let eps = 1.0 + wp2 / (zeta * zeta);
            (eps, eps)
        }
        ResponseKind::NonlocalBoltzmann => {
            let v = model.v_f * k / (zeta + omega_tau);
            let (f_l, f_t) = shape_factors_c(v, omega_tau / zeta);
            let drude = wp2 / (zeta * (zeta + omega_tau));
            (1.0 + drude * f_l, 1.0 + drude * f_t)
        }
        ResponseKind::AnomalousLimit => {
            let r = model.omega_p / (model.v_f * k);
            (
                1.0 + 3.0 * r * r,
                1.0 + 0.75 * PI * wp2 / (zeta * model.v_f * k),
            )
        }
    }
}

/// Exact impedances continued to complex (ζ, q); used for the imaginary
/// Abel-Plana term. Scales are taken from the moduli.
pub(crate) fn impedance_exact_c(
    model: &MetalModel,
    zeta: Complex64,
    q: Complex64,
    temperature: f64,
    spec: &QuadratureSpec,
) -> Result<(Complex64, Complex64)> {
    let omega_tau = model.relaxation_frequency(temperature)?;
    let zc = zeta / C_LIGHT;
    let qn = q.norm();

    let (_, eps_t_q) = dielectric_pair_c(model, model.response, zeta, q, omega_tau);
    let s_t = (qn * qn + (zc * zc * eps_t_q).norm()).sqrt().max(qn);

    let q2 = q * q;
    let z_s_int = integrate_semi_infinite_with(
        |chi| {
            let ch = chi.cosh();
            let th = chi.tanh();
            let sech = 1.0 / ch;
            let k = s_t * ch * (th * th + q2 * (sech / s_t) * (sech / s_t)).sqrt();
            let (_, eps_t) = dielectric_pair_c(model, model.response, zeta, k, omega_tau);
            let dt = zc * zc * eps_t;
            let inv = (dt + q2) * (sech * sech / (s_t * s_t)) + th * th;
            sech / s_t / inv
        },
        0.0,
        spec,
    )?;
    let z_s = 2.0 * zeta / (PI * C_LIGHT) * z_s_int.value;

    let s_l = qn;
    let t1_int = integrate_semi_infinite_with(
        |chi| {
            let ch = chi.cosh();
            let th = chi.tanh();
            let sech = 1.0 / ch;
            let k = s_l * ch * (th * th + q2 * (sech / s_l) * (sech / s_l)).sqrt();
            let (eps_l, _) = dielectric_pair_c(model, model.response, zeta, k, omega_tau);
            let inv = (q2 * (sech * sech / (s_l * s_l)) + th * th) * eps_l;
            sech / s_l / inv
        },
        0.0,
        spec,
    )?;
    let t1 = 2.0 * q2 * C_LIGHT / (PI * zeta) * t1_int.value;

    let t2_int = integrate_semi_infinite_with(
        |chi| {
            let ch = chi.cosh();
            let th = chi.tanh();
            let sech = 1.0 / ch;
            let k = s_t * ch * (th * th + q2 * (sech / s_t) * (sech / s_t)).sqrt();
            let (_, eps_t) = dielectric_pair_c(model, model.response, zeta, k, omega_tau);
            let dt = zc * zc * eps_t;
            let q_term = q2 * (sech * sech / (s_t * s_t));
            let th2 = Complex64::new(th * th, 0.0);
            th * th * sech / s_t
                / ((q_term + th2) * (dt * (sech * sech / (s_t * s_t)) + q_term + th2))
        },
        0.0,
        spec,
    )?;
    let t2 = 2.0 * zeta / (PI * C_LIGHT) * t2_int.value;

    Ok((z_s, t1 + t2))
}

// ---------------------------------------------------------------------------
// Regime diagnostics
// ---------------------------------------------------------------------------

/// Where a given (model, separation, temperature) point sits relative to the
/// validity conditions of the anomalous-limit and Leontovich approximations.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RegimeReport {
    /// v at the smallest wave number k = q = 1/2a and ζ = 2πkT/ħ.
    pub v_min: f64,
    /// b at (ζ = 2πkT/ħ, q = 1/2a).
    pub b: f64,
    /// Crossover parameter A = ((3π/4)(c/v_F)(ωp/ω_a)²·τ)^{1/3}.
    pub a_crossover: f64,
    /// Dimensionless temperature τ = 2πT/T_eff.
    pub tau: f64,
    /// v_min exceeds the large-v threshold (default 10).
    pub anomalous_valid: bool,
    /// Anomalous regime holds and b > 10, so the q-free Leontovich
    /// impedance applies.
    pub leontovich_valid: bool,
}

/// Crossover parameter A for a metal at separation a and temperature T.
pub fn crossover_a(model: &MetalModel, separation: f64, temperature: f64) -> f64 {
    let omega_a = crate::constants::omega_a(separation);
    let tau = crate::constants::tau(separation, temperature);
    let ratio = model.omega_p / omega_a;
    (0.75 * PI * (C_LIGHT / model.v_f) * ratio * ratio * tau).cbrt()
}

/// Classify the (T, a, model) point. Thresholds v > 10 and b > 10 stand in
/// for the ≫ conditions.
pub fn regime_report(model: &MetalModel, separation: f64, temperature: f64) -> Result<RegimeReport> {
    check_positive("separation", separation)?;
    if !(temperature >= 0.0) {
        return Err(Error::Domain(format!(
            "temperature must be ≥ 0, got {temperature}"
        )));
    }
    model.validate()?;

    let tau = crate::constants::tau(separation, temperature);
    let a_crossover = crossover_a(model, separation, temperature);
    let q_min = 1.0 / (2.0 * separation);
    let zeta1 = 2.0 * PI * crate::constants::K_BOLTZMANN * temperature / crate::constants::HBAR;
    let omega_tau = model.relaxation_frequency(temperature)?;

    let denom = zeta1 + omega_tau;
    let v_min = if denom > 0.0 {
        model.v_f * q_min / denom
    } else {
        f64::INFINITY
    };
    let b = if zeta1 > 0.0 {
        b_parameter(model, zeta1, q_min)
    } else {
        0.0
    };
    let anomalous_valid = v_min > 10.0;
    Ok(RegimeReport {
        v_min,
        b,
        a_crossover,
        tau,
        anomalous_valid,
        leontovich_valid: anomalous_valid && b > 10.0,
    })
}
