//! The free-energy engine.
//!
//! All quantities reduce to the functions
//!
//! ```text
//! G_i(ξ) = ∫_ξ^∞ dy y ln[1 − r_i²(ξ,y) e^{−y}],   i = s, p,
//! ```
//!
//! in the dimensionless variables ξ = ζ/ω_a, y = 2a√(ζ²/c² + q²). The full
//! free energy is the Matsubara sum
//!
//! ```text
//! F(a,T) = F₀ + (kT/8πa²) Σ_{n≥1} [G_s(nτ) + G_p(nτ)],
//! ```
//!
//! whose contested n = 0 term is parameterized as F₀ = −α (kT/8πa²) ζ(3)
//! and must be supplied explicitly. The temperature-dependent part
//! ΔF = F(a,T) − F(a,0) is evaluated along two independent routes:
//!
//! * [`delta_f_abel_plana`] uses the Abel–Plana split
//!   `ΔF = F₀ + (kT/8πa²) Σ_i [½G_i(τ) − ∫₀¹G_i(τt)dt
//!   − 2 Im ∫₀^∞ G_i(τ(1+it))/(e^{2πt}−1) dt]`,
//!   where G at complex argument is continued by moving the lower
//!   integration limit to z = τ(1+it) (contour: z → Re z → +∞) and
//!   continuing ξ inside the reflection coefficients;
//! * [`delta_f_direct`] subtracts the zero-temperature integral from the
//!   Matsubara sum cell by cell,
//!   `Σ_n G(nτ) − (1/τ)∫₀^∞G = Σ_n [G(nτ) − (1/τ)∫_{(n−1)τ}^{nτ} G]`,
//!   which needs no complex analysis and serves as the cross-check oracle.
//!
//! Entropy is S = −∂ΔF/∂T by Richardson-extrapolated central differences.

use crate::constants::{classical_prefactor, omega_a, tau as tau_of, C_LIGHT};
use crate::error::{Error, Result};
use crate::impedance::{fg_closed, fg_closed_real, impedance_exact, impedance_exact_c};
use crate::material::MetalModel;
use crate::quadrature::{
    integrate_finite, integrate_finite_with, integrate_semi_infinite,
    integrate_semi_infinite_with, zeta3, IntegralResult, QuadratureSpec,
};
use crate::reflection::{reflection_from_impedance, thomas_fermi_coefficient};
use num_complex::Complex64;
use std::f64::consts::PI;

pub use crate::reflection::Polarization;

// ---------------------------------------------------------------------------
// Reflectivity suppliers
// ---------------------------------------------------------------------------

/// Squared reflection coefficients as a function of the dimensionless
/// variables, with an analytic continuation in ξ (and along the tilted
/// y-contour) for the Abel–Plana imaginary term.
pub trait Reflectivity: Sync {
    fn r_squared(&self, pol: Polarization, xi: f64, y: f64) -> f64;
    fn r_squared_complex(&self, pol: Polarization, xi: Complex64, y: Complex64) -> Complex64;
}

/// r² = 1 for both polarizations (ideal metal).
#[derive(Debug, Clone, Copy)]
pub struct PerfectReflector;

impl Reflectivity for PerfectReflector {
    fn r_squared(&self, _: Polarization, _: f64, _: f64) -> f64 {
        1.0
    }
    fn r_squared_complex(&self, _: Polarization, _: Complex64, _: Complex64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
}

/// Frequency-independent |r|² per polarization; test fixture.
#[derive(Debug, Clone, Copy)]
pub struct ConstantReflectivity {
    pub rs_squared: f64,
    pub rp_squared: f64,
}

impl Reflectivity for ConstantReflectivity {
    fn r_squared(&self, pol: Polarization, _: f64, _: f64) -> f64 {
        match pol {
            Polarization::S => self.rs_squared,
            Polarization::P => self.rp_squared,
        }
    }
    fn r_squared_complex(&self, pol: Polarization, _: Complex64, _: Complex64) -> Complex64 {
        Complex64::new(self.r_squared(pol, 0.0, 0.0), 0.0)
    }
}

/// Anomalous-skin-effect surface in closed form:
/// r_s from Z_s = (ζ/cq) F(b) and r_p from the Thomas-Fermi rational form
/// (1 − u·y)/(1 + u·y). Relaxation-free by construction.
#[derive(Debug, Clone, Copy)]
pub struct NonlocalSurface {
    /// (3π/4)(c/v_F)(ωp/ω_a)²; b³ = d³·ξ/(y²−ξ²)^{3/2}.
    d_cubed: f64,
    /// Thomas-Fermi slope u.
    tf_u: f64,
}

impl NonlocalSurface {
    pub fn new(model: &MetalModel, separation: f64) -> Result<Self> {
        model.validate()?;
        if !(separation > 0.0) {
            return Err(Error::Domain(format!(
                "separation must be > 0, got {separation}"
            )));
        }
        let ratio = model.omega_p / omega_a(separation);
        Ok(NonlocalSurface {
            d_cubed: 0.75 * PI * (C_LIGHT / model.v_f) * ratio * ratio,
            tf_u: thomas_fermi_coefficient(model, separation),
        })
    }

    /// Crossover parameter A at dimensionless temperature τ.
    pub fn a_crossover(&self, tau: f64) -> f64 {
        (self.d_cubed * tau).cbrt()
    }
}

impl Reflectivity for NonlocalSurface {
    fn r_squared(&self, pol: Polarization, xi: f64, y: f64) -> f64 {
        match pol {
            Polarization::S => {
                if xi == 0.0 {
                    return 0.0; // b → 0, F → 1: the exact impedance is local.
                }
                let s2 = y * y - xi * xi;
                if s2 <= 0.0 {
                    return 1.0; // q → 0 endpoint: F(∞) = 0, full reflection.
                }
                let s = s2.sqrt();
                let b = (self.d_cubed * xi).cbrt() / s;
                let (f, _) = fg_closed_real(b);
                let w = y / s * f;
                let r = (1.0 - w) / (1.0 + w);
                r * r
            }
            Polarization::P => {
                let u = self.tf_u * y;
                let r = (1.0 - u) / (1.0 + u);
                r * r
            }
        }
    }

    fn r_squared_complex(&self, pol: Polarization, xi: Complex64, y: Complex64) -> Complex64 {
        match pol {
            Polarization::S => {
                let s = (y * y - xi * xi).sqrt();
                let b = (self.d_cubed * xi).cbrt() / s;
                let (f, _) = fg_closed(b);
                let w = y / s * f;
                let r = (1.0 - w) / (1.0 + w);
                r * r
            }
            Polarization::P => {
                let u = self.tf_u * y;
                let r = (1.0 - u) / (1.0 + u);
                r * r
            }
        }
    }
}

/// Reflectivity backed by the exact wave-number impedance integrals for the
/// model's response kind (keeps the relaxation law, and hence the full
/// temperature dependence of the Boltzmann dielectrics).
#[derive(Debug, Clone)]
pub struct ExactImpedanceSurface {
    model: MetalModel,
    separation: f64,
    temperature: f64,
    spec: QuadratureSpec,
}

impl ExactImpedanceSurface {
    pub fn new(
        model: MetalModel,
        separation: f64,
        temperature: f64,
        spec: QuadratureSpec,
    ) -> Result<Self> {
        model.validate()?;
        if !(separation > 0.0) {
            return Err(Error::Domain(format!(
                "separation must be > 0, got {separation}"
            )));
        }
        if !(temperature >= 0.0) {
            return Err(Error::Domain(format!(
                "temperature must be ≥ 0, got {temperature}"
            )));
        }
        Ok(ExactImpedanceSurface {
            model,
            separation,
            temperature,
            spec,
        })
    }
}

impl Reflectivity for ExactImpedanceSurface {
    fn r_squared(&self, pol: Polarization, xi: f64, y: f64) -> f64 {
        debug_assert!(xi > 0.0 && y > xi);
        let zeta = xi * omega_a(self.separation);
        let q = (y * y - xi * xi).sqrt() / (2.0 * self.separation);
        let pair = match impedance_exact(&self.model, zeta, q, self.temperature, &self.spec) {
            Ok(p) => p,
            Err(Error::NonConvergence { .. }) => {
                // Keep the best available value; the outer quadrature's
                // error estimate absorbs the residual roughness.
                impedance_exact(
                    &self.model,
                    zeta,
                    q,
                    self.temperature,
                    &QuadratureSpec {
                        rel_tol: self.spec.rel_tol * 100.0,
                        ..self.spec
                    },
                )
                .expect("relaxed impedance quadrature")
            }
            Err(e) => panic!("impedance evaluation failed: {e}"),
        };
        let (z0, z) = match pol {
            Polarization::S => (xi / y, pair.z_s),
            Polarization::P => (y / xi, pair.z_p),
        };
        let r = reflection_from_impedance(z0, z, pol).expect("valid impedances");
        r * r
    }

    fn r_squared_complex(&self, pol: Polarization, xi: Complex64, y: Complex64) -> Complex64 {
        let zeta = xi * omega_a(self.separation);
        let q = (y * y - xi * xi).sqrt() / (2.0 * self.separation);
        let (z_s, z_p) = impedance_exact_c(&self.model, zeta, q, self.temperature, &self.spec)
            .expect("complex impedance quadrature");
        let (z0, z) = match pol {
            Polarization::S => (xi / y, z_s),
            Polarization::P => (y / xi, z_p),
        };
        let r = match pol {
            Polarization::S => -((z0 - z) / (z0 + z)),
            Polarization::P => (z0 - z) / (z0 + z),
        };
        r * r
    }
}

// ---------------------------------------------------------------------------
// G functions
// ---------------------------------------------------------------------------

/// G_i(ξ) = ∫_ξ^∞ dy y ln[1 − r_i²(ξ,y) e^{−y}]. Nonpositive, and bounded
/// below by −ζ(3) at ξ = 0 for any |r| ≤ 1.
pub fn g_function<R: Reflectivity + ?Sized>(
    pol: Polarization,
    xi: f64,
    reflectivity: &R,
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    if !(xi >= 0.0) {
        return Err(Error::Domain(format!("xi must be ≥ 0, got {xi}")));
    }
    integrate_semi_infinite(
        |y| {
            let r2 = reflectivity.r_squared(pol, xi, y);
            y * (1.0 - r2 * (-y).exp()).ln()
        },
        xi,
        spec,
    )
}

/// G_i continued to complex argument z (Im z ≥ 0): integrate along the
/// segment z → Re z, then along the real axis Re z → ∞, with ξ = z held
/// complex inside the reflection coefficients.
pub(crate) fn g_function_complex<R: Reflectivity + ?Sized>(
    pol: Polarization,
    z: Complex64,
    reflectivity: &R,
    spec: &QuadratureSpec,
) -> Result<IntegralResult<Complex64>> {
    let integrand = |y: Complex64| -> Complex64 {
        let r2 = reflectivity.r_squared_complex(pol, z, y);
        y * (1.0 - r2 * (-y).exp()).ln()
    };

    // Horizontal ray Re z → ∞ (real parameter y).
    let ray = integrate_semi_infinite_with(|y| integrand(Complex64::new(y, 0.0)), z.re, spec)?;

    if z.im == 0.0 {
        return Ok(ray);
    }

    // Vertical segment z → Re z: y(s) = Re z + i·Im z·(1−s), dy = −i·Im z ds.
    let dy = Complex64::new(0.0, -z.im);
    let seg = integrate_finite_with(
        |s: f64| integrand(Complex64::new(z.re, z.im * (1.0 - s))) * dy,
        0.0,
        1.0,
        spec,
    )?;

    Ok(IntegralResult {
        value: seg.value + ray.value,
        error_estimate: seg.error_estimate + ray.error_estimate,
        converged: seg.converged && ray.converged,
    })
}

/// Closed-form low-temperature G_p for the Thomas-Fermi-corrected perfect
/// p reflectivity: G_p = −ζ(3)(1 − 8u), independent of τ.
pub fn g_p_low_temperature(model: &MetalModel, separation: f64) -> Result<f64> {
    let correction = 8.0 * thomas_fermi_coefficient(model, separation);
    if correction >= 1.0 {
        return Err(Error::Domain(format!(
            "Thomas-Fermi correction {correction} ≥ 1; low-frequency form invalid"
        )));
    }
    Ok(-zeta3() * (1.0 - correction))
}

// ---------------------------------------------------------------------------
// n = 0 parameterization
// ---------------------------------------------------------------------------

/// How α_p is obtained.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaP {
    /// α_p = ½(1 − 8u) from the Thomas-Fermi-corrected G_p.
    Computed,
    /// Fixed numeric value.
    Fixed(f64),
}

/// The n = 0 Lifshitz term is F₀ = −α (kT/8πa²) ζ(3) with α = α_s + α_p.
/// α_s = 0 is the Drude-side prescription (s polarization drops out of the
/// classical term); α_s = 1/2 makes the s contribution match the ideal
/// metal. Any α_s in [0, 1/2] is accepted.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AlphaParameterization {
    pub alpha_s: f64,
    pub alpha_p: AlphaP,
}

impl AlphaParameterization {
    pub fn new(alpha_s: f64, alpha_p: AlphaP) -> Result<Self> {
        let a = AlphaParameterization { alpha_s, alpha_p };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=0.5).contains(&self.alpha_s) {
            return Err(Error::Domain(format!(
                "alpha_s must lie in [0, 0.5], got {}",
                self.alpha_s
            )));
        }
        Ok(())
    }

    /// Total α = α_s + α_p for the given geometry.
    pub fn total(&self, model: &MetalModel, separation: f64) -> Result<f64> {
        Ok(self.alpha_s
            + match self.alpha_p {
                AlphaP::Computed => alpha_p_computed(model, separation)?,
                AlphaP::Fixed(v) => v,
            })
    }
}

/// α_p = −G_p(0)/(2ζ(3)) with the Thomas-Fermi-corrected G_p; equals
/// ½(1 − 8u) and reduces to 1/2 for v_F → 0.
pub fn alpha_p_computed(model: &MetalModel, separation: f64) -> Result<f64> {
    Ok(-g_p_low_temperature(model, separation)? / (2.0 * zeta3()))
}

// ---------------------------------------------------------------------------
// Matsubara sum
// ---------------------------------------------------------------------------

/// Compensated (Kahan) accumulator; summation order is fixed ascending in n
/// so results do not depend on evaluation strategy.
#[derive(Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Full free energy with tail diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct FreeEnergySum {
    /// F(a,T) in J/m².
    pub value: f64,
    /// Analytic bound on the dropped n > n_max tail, J/m².
    pub tail_bound: f64,
    /// Quadrature error accumulated over the summed terms, J/m².
    pub error_estimate: f64,
}

/// Default Matsubara cutoff: e^{−nτ} reaches ~1e-13 at nτ = 30.
pub fn suggested_n_max(tau: f64) -> usize {
    (30.0 / tau).ceil().max(1.0) as usize
}

/// Bound on Σ_{n>N} (1+nτ)e^{−nτ} (geometric sums in closed form).
fn matsubara_tail_bound(tau: f64, n_max: usize) -> f64 {
    let r = (-tau).exp();
    if r >= 1.0 {
        return f64::INFINITY;
    }
    let n = n_max as f64;
    let rn1 = r.powf(n + 1.0);
    let s0 = rn1 / (1.0 - r);
    let s1 = rn1 * ((n + 1.0) - n * r) / ((1.0 - r) * (1.0 - r));
    // |G(ξ)| ≤ (1+ξ)e^{−ξ}/(1−e^{−ξ}); two polarizations.
    2.0 * (s0 + tau * s1) / (1.0 - rn1.min(0.5))
}

/// F(a,T) = F₀ + (kT/8πa²) Σ_{n=1}^{n_max} [G_s(nτ) + G_p(nτ)].
///
/// Errors with [`Error::Truncation`] when the analytic tail bound exceeds
/// the requested tolerance.
pub fn free_energy_total<R: Reflectivity + ?Sized>(
    reflectivity: &R,
    separation: f64,
    temperature: f64,
    alpha_total: f64,
    n_max: usize,
    spec: &QuadratureSpec,
) -> Result<FreeEnergySum> {
    if !(separation > 0.0) || !(temperature > 0.0) {
        return Err(Error::Domain(
            "separation and temperature must be > 0".into(),
        ));
    }
    if n_max == 0 {
        return Err(Error::Domain("n_max must be ≥ 1".into()));
    }
    let tau = tau_of(separation, temperature);
    let pref = classical_prefactor(separation, temperature);
    let f0 = -alpha_total * pref * zeta3();

    // Terms beyond ξ = 60 are < 1e-24 individually; cap the loop there and
    // let the tail bound (taken at the cap) cover everything dropped.
    let n_eff = n_max.min(((60.0 / tau).ceil() as usize).max(1));
    // Budget the per-term absolute error against the whole sum rather than
    // each (possibly tiny) term.
    let g_spec = QuadratureSpec {
        rel_tol: (spec.rel_tol / 4.0).max(1e-14),
        abs_tol: spec.abs_tol.max(spec.rel_tol / n_eff as f64),
        max_subdivisions: spec.max_subdivisions,
    };
    let mut acc = Kahan::default();
    let mut err = Kahan::default();
    for n in 1..=n_eff {
        let xi = n as f64 * tau;
        for pol in [Polarization::S, Polarization::P] {
            let g = g_function(pol, xi, reflectivity, &g_spec)?;
            acc.add(g.value);
            err.add(g.error_estimate);
        }
    }

    let tail = pref * matsubara_tail_bound(tau, n_eff);
    let value = f0 + pref * acc.sum;
    let tolerance = spec.tolerance_for(value.abs());
    if tail > tolerance {
        return Err(Error::Truncation { tail, tolerance });
    }
    Ok(FreeEnergySum {
        value,
        tail_bound: tail,
        error_estimate: pref * err.sum,
    })
}

// ---------------------------------------------------------------------------
// ΔF: Abel-Plana route
// ---------------------------------------------------------------------------

/// The three Abel–Plana bracket terms for one polarization (dimensionless).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PolarizationSplit {
    /// ½ G(τ)
    pub half_g_tau: f64,
    /// ∫₀¹ G(τt) dt
    pub unit_integral: f64,
    /// 2 Im ∫₀^∞ G(τ(1+it)) / (e^{2πt}−1) dt
    pub bose_imag: f64,
}

impl PolarizationSplit {
    /// Contribution of this polarization to the dimensionless ΔF bracket.
    pub fn bracket(&self) -> f64 {
        self.half_g_tau - self.unit_integral - self.bose_imag
    }
}

/// ΔF(a,T) and its Abel–Plana breakdown.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct FreeEnergyBreakdown {
    /// n = 0 term −α (kT/8πa²) ζ(3), J/m².
    pub f0: f64,
    pub s: PolarizationSplit,
    pub p: PolarizationSplit,
    /// ΔF = f0 + (kT/8πa²)·[bracket_s + bracket_p], J/m².
    pub delta_f: f64,
    /// Propagated quadrature error, J/m².
    pub error_estimate: f64,
    /// Dimensionless temperature τ.
    pub tau: f64,
    /// kT/(8πa²), J/m².
    pub prefactor: f64,
}

fn bose_weight(t: f64) -> f64 {
    if t > 25.0 {
        0.0 // e^{−2πt} < 1e-68: below every tolerance in use
    } else {
        1.0 / (2.0 * PI * t).exp_m1()
    }
}

fn abel_plana_split<R: Reflectivity + ?Sized>(
    pol: Polarization,
    tau: f64,
    reflectivity: &R,
    spec: &QuadratureSpec,
) -> Result<(PolarizationSplit, f64)> {
    let g_spec = spec.tightened(30.0);

    let g_tau = g_function(pol, tau, reflectivity, &g_spec)?;

    // ∫₀¹ G(τt) dt with the substitution t = u³, which linearizes the
    // t^{−1/3} endpoint behaviour of the strong-anomalous regime.
    let unit = integrate_finite(
        |u| {
            let g = g_function(pol, tau * u * u * u, reflectivity, &g_spec)
                .map(|r| r.value)
                .unwrap_or(f64::NAN);
            3.0 * u * u * g
        },
        0.0,
        1.0,
        spec,
    )?;

    let bose = integrate_semi_infinite(
        |t| {
            let w = bose_weight(t);
            if w == 0.0 {
                return 0.0;
            }
            let z = Complex64::new(tau, tau * t);
            let g = g_function_complex(pol, z, reflectivity, &g_spec)
                .map(|r| r.value.im)
                .unwrap_or(f64::NAN);
            g * w
        },
        0.0,
        spec,
    )?;

    let split = PolarizationSplit {
        half_g_tau: 0.5 * g_tau.value,
        unit_integral: unit.value,
        bose_imag: 2.0 * bose.value,
    };
    let err = 0.5 * g_tau.error_estimate + unit.error_estimate + 2.0 * bose.error_estimate;
    Ok((split, err))
}

/// Temperature-dependent part of the free energy by the Abel–Plana split.
/// Valid for τ < 0.3 (low-temperature branch).
pub fn delta_f_abel_plana<R: Reflectivity + ?Sized>(
    reflectivity: &R,
    separation: f64,
    temperature: f64,
    alpha_total: f64,
    spec: &QuadratureSpec,
) -> Result<FreeEnergyBreakdown> {
    if !(separation > 0.0) || !(temperature > 0.0) {
        return Err(Error::Domain(
            "separation and temperature must be > 0".into(),
        ));
    }
    let tau = tau_of(separation, temperature);
    if tau >= 0.3 {
        return Err(Error::Regime(format!(
            "Abel-Plana branch requires tau < 0.3, got {tau:.3}; use the direct Matsubara route"
        )));
    }
    let pref = classical_prefactor(separation, temperature);
    let f0 = -alpha_total * pref * zeta3();

    let (s, err_s) = abel_plana_split(Polarization::S, tau, reflectivity, spec)?;
    let (p, err_p) = abel_plana_split(Polarization::P, tau, reflectivity, spec)?;

    let delta_f = f0 + pref * (s.bracket() + p.bracket());
    Ok(FreeEnergyBreakdown {
        f0,
        s,
        p,
        delta_f,
        error_estimate: pref * (err_s + err_p),
        tau,
        prefactor: pref,
    })
}

// ---------------------------------------------------------------------------
// ΔF: direct (summation-minus-integral) route
// ---------------------------------------------------------------------------

/// ΔF by cellwise subtraction of the zero-temperature integral from the
/// Matsubara sum; independent of the Abel-Plana machinery.
#[derive(Debug, Clone, Copy)]
pub struct DirectDeltaF {
    pub delta_f: f64,
    pub error_estimate: f64,
    pub tau: f64,
    pub n_terms: usize,
}

pub fn delta_f_direct<R: Reflectivity + ?Sized>(
    reflectivity: &R,
    separation: f64,
    temperature: f64,
    alpha_total: f64,
    spec: &QuadratureSpec,
) -> Result<DirectDeltaF> {
    if !(separation > 0.0) || !(temperature > 0.0) {
        return Err(Error::Domain(
            "separation and temperature must be > 0".into(),
        ));
    }
    let tau = tau_of(separation, temperature);
    let n_max = (34.0 / tau).ceil() as usize;
    if n_max > 3_000_000 {
        return Err(Error::Regime(format!(
            "tau = {tau:.3e} needs {n_max} Matsubara cells; use the Abel-Plana route"
        )));
    }
    let pref = classical_prefactor(separation, temperature);
    let f0 = -alpha_total * pref * zeta3();

    let n_eff = n_max.min(((60.0 / tau).ceil() as usize).max(1));
    // Same per-term error budgeting as the full Matsubara sum: absolute
    // tolerance set by the aggregate, not by each term's own magnitude.
    let g_spec = QuadratureSpec {
        rel_tol: (spec.rel_tol / 10.0).max(1e-14),
        abs_tol: spec.abs_tol.max(spec.rel_tol / n_eff as f64),
        max_subdivisions: spec.max_subdivisions,
    };
    let mut acc = Kahan::default();
    let mut err = Kahan::default();
    for pol in [Polarization::S, Polarization::P] {
        for n in 1..=n_eff {
            let xi = n as f64 * tau;
            let g_n = g_function(pol, xi, reflectivity, &g_spec)?;
            // Mean of G over the cell [(n−1)τ, nτ] by a single Kronrod rule;
            // cells are far narrower than any structure in G.
            let (cell, cell_err) = crate::quadrature::fixed_gk15(
                |x| {
                    g_function(pol, x, reflectivity, &g_spec)
                        .map(|r| r.value)
                        .unwrap_or(f64::NAN)
                },
                (n - 1) as f64 * tau,
                xi,
            );
            acc.add(g_n.value - cell / tau);
            // The cell mean inherits the inner G noise on top of its own
            // Kronrod estimate.
            err.add(3.0 * g_n.error_estimate + cell_err / tau);
        }
    }

    // Beyond n_eff both the sum and the integral are exponentially small;
    // bound each by the ideal-metal envelope.
    let ne = n_eff as f64;
    let tail = matsubara_tail_bound(tau, n_eff) + 2.0 * (2.0 + ne * tau) * (-ne * tau).exp() / tau;

    Ok(DirectDeltaF {
        delta_f: f0 + pref * acc.sum,
        error_estimate: pref * (err.sum + tail),
        tau,
        n_terms: n_eff,
    })
}

// ---------------------------------------------------------------------------
// Entropy
// ---------------------------------------------------------------------------

/// How an entropy value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyMethod {
    FiniteDifference,
    AsymptoticSmallA,
    AsymptoticLargeA,
}

/// S(T) = −∂ΔF/∂T at one temperature.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct EntropyPoint {
    pub temperature: f64,
    /// J/(K·m²).
    pub entropy: f64,
    pub method: EntropyMethod,
    /// Finite-difference step actually used, if any.
    pub step: Option<f64>,
}

fn delta_f_auto<R: Reflectivity + ?Sized>(
    reflectivity: &R,
    separation: f64,
    temperature: f64,
    alpha_total: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    // The direct route is cheap for moderate τ; the Abel-Plana split is the
    // only tractable engine once τ (hence the cell count) is extreme.
    let tau = tau_of(separation, temperature);
    if tau >= 0.02 {
        delta_f_direct(reflectivity, separation, temperature, alpha_total, spec).map(|d| d.delta_f)
    } else {
        delta_f_abel_plana(reflectivity, separation, temperature, alpha_total, spec)
            .map(|d| d.delta_f)
    }
}

/// Entropy by the requested method: finite differences of the engine ΔF,
/// or the closed-form small-/large-A expansions.
pub fn entropy<R: Reflectivity + ?Sized>(
    reflectivity: &R,
    model: &MetalModel,
    separation: f64,
    temperature: f64,
    alpha: &AlphaParameterization,
    method: EntropyMethod,
    spec: &QuadratureSpec,
) -> Result<EntropyPoint> {
    match method {
        EntropyMethod::FiniteDifference => {
            let alpha_total = alpha.total(model, separation)?;
            entropy_finite_difference(reflectivity, separation, temperature, alpha_total, spec)
        }
        EntropyMethod::AsymptoticSmallA => Ok(EntropyPoint {
            temperature,
            entropy: crate::asymptotics::entropy_small_a(
                model,
                separation,
                temperature,
                alpha.alpha_s,
            )?,
            method,
            step: None,
        }),
        EntropyMethod::AsymptoticLargeA => Ok(EntropyPoint {
            temperature,
            entropy: crate::asymptotics::entropy_large_a(
                model,
                separation,
                temperature,
                alpha.alpha_s,
            )?,
            method,
            step: None,
        }),
    }
}

/// Entropy by Richardson-extrapolated central differences of ΔF.
///
/// The step is relative, h = 1e−3·T, which keeps T − h > 0 at every
/// temperature (an absolute floor would overshoot T itself in the deep
/// small-A regime). Errors with [`Error::StepTooLarge`] when halving the
/// step moves the estimate by more than 5%.
pub fn entropy_finite_difference<R: Reflectivity + ?Sized>(
    reflectivity: &R,
    separation: f64,
    temperature: f64,
    alpha_total: f64,
    spec: &QuadratureSpec,
) -> Result<EntropyPoint> {
    if !(temperature > 0.0) {
        return Err(Error::Domain(format!(
            "finite differences need T > 0, got {temperature}"
        )));
    }
    let h = 1e-3 * temperature;
    let slope = |step: f64| -> Result<f64> {
        let hi = delta_f_auto(reflectivity, separation, temperature + step, alpha_total, spec)?;
        let lo = delta_f_auto(reflectivity, separation, temperature - step, alpha_total, spec)?;
        Ok(-(hi - lo) / (2.0 * step))
    };
    let s_h = slope(h)?;
    let s_h2 = slope(0.5 * h)?;
    let scale = s_h2.abs().max(s_h.abs()).max(f64::MIN_POSITIVE);
    let disagreement = (s_h - s_h2).abs();
    if disagreement > 0.05 * scale {
        return Err(Error::StepTooLarge {
            step: h,
            disagreement,
        });
    }
    Ok(EntropyPoint {
        temperature,
        entropy: s_h2 + (s_h2 - s_h) / 3.0,
        method: EntropyMethod::FiniteDifference,
        step: Some(h),
    })
}
