//! # colddamp
//!
//! Frequency-domain noise budget of a cold-damped mirror: a mechanical
//! oscillator read out by a resonant high-finesse cavity, with the measured
//! velocity fed back as a radiation-pressure force through a servo
//! impedance. The crate computes velocity noise spectra, effective
//! temperatures and residual phonon numbers, the quantum limits the
//! feedback noise must respect, and the squeezed-light states that
//! saturate them.
//!
//! ## Start with the examples
//!
//! Each major capability has one runnable example:
//!
//! ```text
//! examples/
//! ├── free_oscillator.rs        # bath occupation, effective temperature,
//! │                             # free velocity spectrum
//! ├── cooled_spectra.rs         # closed-loop spectra: narrowing amplitude,
//! │                             # widening resonance as gain grows
//! ├── temperature_sweep.rs      # temperature vs coupling for several gains,
//! │                             # locating the per-gain quantum optimum
//! ├── classical_vs_quantum.rs   # where the classical 1/(1+g) law breaks
//! │                             # and the zero-point floor appears
//! ├── squeezed_light_optimum.rs # covariances that saturate the Heisenberg
//! │                             # bound, and how squeezing moves the optimum
//! ├── unitarity_audit.rs        # commutator bookkeeping of the added force
//! │                             # and of the scattered bath field
//! └── variance_equipartition.rs # spectrum integration vs closed-form
//!                               # temperatures
//! ```
//!
//! Run one with:
//!
//! ```bash
//! cargo run -p colddamp --example cooled_spectra
//! ```
//!
//! ## Library layout
//!
//! - [`model`] — parameters, unit systems, validation ([`model::validate_config`])
//! - [`response`] — impedances and noise coefficients vs frequency
//! - [`spectra`] — velocity noise spectra and their lorentzian limits
//! - [`thermo`] — effective temperatures, variance integration, sweeps
//! - [`qlimits`] — commutator checks, Heisenberg bounds, squeezing
//! - [`checks`] — the named invariant suite behind `colddamp check`
//! - [`cli`] — the `colddamp` binary: `spectrum`, `sweep`, `temperature`,
//!   `limits`, `check`
//!
//! ## Minimal use
//!
//! ```
//! use colddamp::model::{self, BathInput, CavityInput, ConfigInput, Feedback,
//!                       LightState, Oscillator, ReducedCavity, UnitSystem};
//!
//! let cfg = model::validate_config(&ConfigInput {
//!     units: UnitSystem::Normalized,
//!     oscillator: Oscillator::new(1.0, 1.0, 1e-6), // Q = 1e6
//!     cavity: CavityInput::Reduced(ReducedCavity { zeta: 1.0, omega_cav: 1e3 }),
//!     feedback: Feedback::cold_damping(10.0 * 1e-6), // g = 10
//!     light: LightState::coherent(),
//!     bath: BathInput::Phonons(1e5),
//!     white_noise: true,
//! }).unwrap();
//!
//! let peak = colddamp::spectra::resonance_noise(&cfg).unwrap();
//! let theta = colddamp::thermo::quantum_cold_damping_temp(&cfg).unwrap();
//! assert!(peak > 0.0 && theta > 0.0);
//! ```

pub mod checks;
pub mod cli;
pub mod model;
pub(crate) mod numeric;
pub mod qlimits;
pub mod response;
pub mod spectra;
pub mod thermo;

/// Errors raised while evaluating responses, spectra, or temperatures on a
/// validated configuration.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("Omega = 0 is excluded: the free-mass response has a pole there")]
    ZeroFrequency,
    #[error(
        "gain g = {g:.3e} is not below the quality factor Q = {q:.3e}: \
         the flat-spectrum (lorentzian) results do not apply"
    )]
    GainExceedsQ { g: f64, q: f64 },
    #[error("operation requires pure cold damping, but Im(Z_fb) = {x_fb:.3e}")]
    ReactiveFeedbackNotAllowed { x_fb: f64 },
    #[error(
        "pure reactive feedback (H_fb = 0): the noise temperature is only \
         an infinite-squeezing limit"
    )]
    PureReactiveFeedback,
    #[error("operation needs the physical cavity form (kappa is not fixed by zeta alone)")]
    NeedsPhysicalCavity,
    #[error(
        "spectrum grid covers [{:.3e}, {:.3e}] but variance integration requires \
         at least [{:.3e}, {:.3e}]",
        actual.0, actual.1, required.0, required.1
    )]
    InsufficientGridCoverage {
        required: (f64, f64),
        actual: (f64, f64),
    },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
