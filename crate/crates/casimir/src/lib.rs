//! Casimir free energy and entropy between parallel metal plates.
//!
//! The free energy per unit area is evaluated from the Lifshitz formula,
//!
//! ```text
//! F(a,T) = (kT/8πa²) Σ'_n ∫_ξₙ^∞ dy y { ln[1 − r_s²(ξₙ,y)e^{−y}] + (s→p) },
//! ```
//!
//! with the material response described either by local Drude/plasma
//! dielectric functions or by the nonlocal (Boltzmann) dielectric functions
//! that govern the anomalous skin effect. In the nonlocal regime the
//! reflectivity is controlled by momentum-dependent surface impedances
//! rather than by the relaxation frequency, which changes the low-temperature
//! behaviour of the temperature-dependent part ΔF(a,T) = F(a,T) − F(a,0) and
//! of the entropy S = −∂ΔF/∂T.
//!
//! The crate provides
//!
//! * adaptive Gauss–Kronrod quadrature on finite and semi-infinite intervals
//!   ([`quadrature`]),
//! * local and nonlocal dielectric functions on the imaginary frequency axis
//!   ([`material`]),
//! * exact wave-number-dependent surface impedances, their anomalous-limit
//!   closed forms built from the profile integrals F(b) and G(b), and regime
//!   diagnostics ([`impedance`]),
//! * reflection coefficients for both polarizations ([`reflection`]),
//! * the free-energy engine: Matsubara summation, the Abel–Plana split of
//!   ΔF, a summation-based cross-check, and entropy by finite differences
//!   ([`lifshitz`]),
//! * closed-form low-temperature expansions and their numerical
//!   coefficients ([`asymptotics`]),
//! * a JSON-driven sweep runner and the built-in validation suite
//!   ([`scenario`], [`validate`]).
//!
//! The classical n = 0 Matsubara term is never inferred from a material
//! model; it enters through the explicit parameterization
//! F₀ = −α (kT/8πa²) ζ(3) with α = α_s + α_p
//! ([`lifshitz::AlphaParameterization`]), so the competing prescriptions for
//! the zero-frequency s-polarization reflectivity can be compared on equal
//! footing.
//!
//! Start with the runnable examples (`cargo run --release -p casimir
//! --example free_energy`) or the CLI (`casimir run config.json`).

// Domain checks are written as `!(x > 0.0)` so NaN inputs fail them too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod constants;
pub mod error;
pub mod impedance;
pub mod lifshitz;
pub mod material;
pub mod quadrature;
pub mod reflection;
pub mod scenario;
pub mod validate;

pub use error::{Error, Result};
pub use impedance::{ImpedancePair, RegimeReport};
pub use lifshitz::{AlphaParameterization, EntropyPoint, FreeEnergyBreakdown, Polarization};
pub use material::{DielectricPair, MetalModel, RelaxationLaw, ResponseKind};
pub use quadrature::{IntegralResult, QuadratureSpec};
