//! Bundled figure presets. `fig2` is the five-gain family of closed-loop
//! velocity spectra (Q = 1e6, 1e5 thermal phonons, zeta = 1); `fig3` is the
//! normalized temperature versus zeta for four gains at 1e5 thermal
//! phonons. Both are stated in normalized units with M = Omega_m = 1.

use crate::model::{
    validate_config, BathInput, CavityInput, ConfigInput, Feedback, LightState, Oscillator,
    ReducedCavity, UnitSystem, ValidatedConfig,
};
use crate::numeric;
use crate::response::FrequencyGrid;

/// Gains of the five `fig2` spectra (curve labels a-e).
pub const FIG2_GAINS: [f64; 5] = [0.0, 10.0, 100.0, 1000.0, 10000.0];
/// Curve labels matching [`FIG2_GAINS`].
pub const FIG2_LABELS: [&str; 5] = ["a", "b", "c", "d", "e"];

/// Gains of the four `fig3` temperature curves (labels a-d).
pub const FIG3_GAINS: [f64; 4] = [10.0, 1e3, 1e5, 1e7];

fn preset(h_m: f64, g: f64) -> ValidatedConfig {
    validate_config(&ConfigInput {
        units: UnitSystem::Normalized,
        oscillator: Oscillator::new(1.0, 1.0, h_m),
        cavity: CavityInput::Reduced(ReducedCavity {
            zeta: 1.0,
            omega_cav: 1e3,
        }),
        feedback: Feedback::cold_damping(g * h_m),
        light: LightState::coherent(),
        bath: BathInput::Phonons(1e5),
        white_noise: true,
    })
    .expect("presets are valid")
}

/// Base configuration of the `fig2` spectra: Q = 1e6, n_theta = 1e5,
/// zeta = 1, wide cavity, coherent light. Gains come from [`FIG2_GAINS`].
pub fn fig2_config() -> ValidatedConfig {
    preset(1e-6, 0.0)
}

/// Default `fig2` grid: linear, 0.95..1.05 Omega_m, 50_000 points, wide
/// enough for the broadest curve (fractional width 1e-2 at g = 1e4).
pub fn fig2_default_grid() -> FrequencyGrid {
    FrequencyGrid::linear(0.95, 1.05, 50_000).expect("static grid is valid")
}

/// Base configuration of the `fig3` sweep. The temperature law only
/// involves (g, zeta, n_theta); the quality factor is set to 1e9 so the
/// largest preset gain (1e7) stays inside the g < Q validity domain.
pub fn fig3_config() -> ValidatedConfig {
    preset(1e-9, 0.0)
}

/// Default `fig3` zeta grid: 1e-1..1e9, 100 points per decade,
/// decade-aligned so every preset gain is hit exactly.
pub fn fig3_zeta_values() -> Vec<f64> {
    numeric::log_space(1e-1, 1e9, 1001)
}
