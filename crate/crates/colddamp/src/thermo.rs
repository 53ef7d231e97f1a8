//! Effective temperatures of the cooled mirror, phonon numbers, variance by
//! spectral integration with equipartition checks, and the optimization of
//! the optomechanical parameter zeta at fixed gain.

use crate::model::ValidatedConfig;
use crate::numeric;
use crate::response::{FrequencyGrid, GridSpacing};
use crate::spectra::Spectrum;
use crate::EvalError;

/// Whether the quantum light terms (back action zeta/2 and measurement
/// g^2/2zeta) enter the cold-damping temperature. `Zeroed` is the
/// classical-limit hook: the result must then equal Theta_m / (1 + g).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LightTerms {
    Included,
    Zeroed,
}

/// Classical cold damping: Theta_fb = Theta_m / (1 + g). Valid when all
/// quantum noises are negligible; has no lower bound, which is the
/// inconsistency the quantum treatment repairs.
pub fn classical_cold_damping_temp(cfg: &ValidatedConfig) -> f64 {
    cfg.theta_m / (1.0 + cfg.g_diss)
}

/// Wide-cavity cold-damping temperature:
/// kB Theta_fb = (hbar Omega_m / 2) (2 n + 1 + (zeta/2) s11 + (g^2/2zeta) s22)
///               / (1 + g).
///
/// With `LightTerms::Zeroed` the two light terms are dropped and the
/// classical law is recovered exactly.
pub fn cold_damping_temperature(
    cfg: &ValidatedConfig,
    light_terms: LightTerms,
) -> Result<f64, EvalError> {
    if !cfg.feedback.is_cold_damping() {
        return Err(EvalError::ReactiveFeedbackNotAllowed {
            x_fb: cfg.feedback.x_fb(),
        });
    }
    if cfg.g_diss >= cfg.q {
        return Err(EvalError::GainExceedsQ {
            g: cfg.g_diss,
            q: cfg.q,
        });
    }
    let g = cfg.g_diss;
    let zeta = cfg.cavity.zeta;
    let terms = match light_terms {
        LightTerms::Included => {
            2.0 * cfg.n_theta
                + 1.0
                + 0.5 * zeta * cfg.light.s11
                + g * g / (2.0 * zeta) * cfg.light.s22
        }
        LightTerms::Zeroed => 2.0 * cfg.n_theta + 1.0,
    };
    let scale = cfg.constants.hbar * cfg.oscillator.omega_m / (2.0 * cfg.constants.kb);
    Ok(scale * terms / (1.0 + g))
}

/// Quantum cold-damping temperature with the light terms included.
pub fn quantum_cold_damping_temp(cfg: &ValidatedConfig) -> Result<f64, EvalError> {
    cold_damping_temperature(cfg, LightTerms::Included)
}

/// Result of the zeta optimization at fixed gain.
#[derive(Debug, Clone, Copy)]
pub struct ZetaOptimum {
    /// Stationary point of the temperature: g sqrt(s22/s11)
    /// (g itself for coherent light).
    pub analytic: f64,
    /// Brute-force minimizer on a log grid.
    pub scanned: f64,
    /// Temperature at the scanned minimizer, K.
    pub scanned_temperature: f64,
    /// Multiplicative grid step of the scan (argmin is reliable to one step).
    pub grid_step_factor: f64,
}

/// Find the zeta minimizing the cold-damping temperature, both analytically
/// (back action equals measurement noise) and by scanning `points`
/// log-spaced values on [zeta_min, zeta_max].
pub fn optimal_zeta(
    cfg: &ValidatedConfig,
    zeta_min: f64,
    zeta_max: f64,
    points: usize,
) -> Result<ZetaOptimum, EvalError> {
    let analytic = cfg.g_diss * (cfg.light.s22 / cfg.light.s11).sqrt();
    let temp_at = |zeta: f64| -> f64 {
        let cfg = cfg.with_zeta(zeta).expect("zeta > 0 stays valid");
        quantum_cold_damping_temp(&cfg).expect("preconditions already checked")
    };
    // surface precondition failures before scanning
    quantum_cold_damping_temp(cfg)?;
    let mut best = (zeta_min, temp_at(zeta_min));
    for zeta in numeric::log_space(zeta_min, zeta_max, points) {
        let t = temp_at(zeta);
        if t < best.1 {
            best = (zeta, t);
        }
    }
    Ok(ZetaOptimum {
        analytic,
        scanned: best.0,
        scanned_temperature: best.1,
        grid_step_factor: (zeta_max / zeta_min).powf(1.0 / (points - 1) as f64),
    })
}

/// Effective temperatures of one configuration, in kelvin and normalized to
/// the zero-point value hbar Omega_m / (2 kB).
#[derive(Debug, Clone, Copy)]
pub struct TemperatureReport {
    /// zeta the quantum temperature was evaluated at.
    pub zeta: f64,
    pub theta_m: f64,
    pub theta_fb_classical: f64,
    pub theta_fb_quantum: f64,
    pub n_theta: f64,
    /// kB Theta_fb / (hbar Omega_m) - 1/2, the residual phonon number.
    pub n_theta_fb: f64,
    pub theta_m_normalized: f64,
    pub theta_fb_classical_normalized: f64,
    pub theta_fb_quantum_normalized: f64,
    /// Set when the classical law predicts cooling below the zero-point
    /// temperature, the regime where only the quantum result is meaningful.
    pub classical_below_zero_point: bool,
}

fn report_at(cfg: &ValidatedConfig, zeta: f64) -> Result<TemperatureReport, EvalError> {
    let cfg_at = if zeta == cfg.cavity.zeta {
        cfg.clone()
    } else {
        cfg.with_zeta(zeta)
            .map_err(|e| EvalError::InvalidGrid(e.to_string()))?
    };
    let zp = cfg.zero_point_temperature();
    let theta_classical = classical_cold_damping_temp(cfg);
    let theta_quantum = quantum_cold_damping_temp(&cfg_at)?;
    let n_fb =
        cfg.constants.kb * theta_quantum / (cfg.constants.hbar * cfg.oscillator.omega_m) - 0.5;
    Ok(TemperatureReport {
        zeta,
        theta_m: cfg.theta_m,
        theta_fb_classical: theta_classical,
        theta_fb_quantum: theta_quantum,
        n_theta: cfg.n_theta,
        n_theta_fb: n_fb,
        theta_m_normalized: cfg.theta_m / zp,
        theta_fb_classical_normalized: theta_classical / zp,
        theta_fb_quantum_normalized: theta_quantum / zp,
        classical_below_zero_point: theta_classical < zp,
    })
}

/// Temperatures at the configured zeta.
pub fn temperature_report(cfg: &ValidatedConfig) -> Result<TemperatureReport, EvalError> {
    report_at(cfg, cfg.cavity.zeta)
}

/// Temperatures at the optimal zeta = g (coherent light):
/// kB Theta_fb = hbar Omega_m (n/(1+g) + 1/2), n_fb = n/(1+g).
pub fn optimal_temperature(cfg: &ValidatedConfig) -> Result<TemperatureReport, EvalError> {
    let analytic = cfg.g_diss * (cfg.light.s22 / cfg.light.s11).sqrt();
    if analytic > 0.0 {
        report_at(cfg, analytic)
    } else {
        // g = 0: no feedback, the optimum degenerates to the open-loop
        // zeta -> 0 limit where the temperature is Theta_m.
        let zp = cfg.zero_point_temperature();
        Ok(TemperatureReport {
            zeta: 0.0,
            theta_m: cfg.theta_m,
            theta_fb_classical: cfg.theta_m,
            theta_fb_quantum: cfg.theta_m,
            n_theta: cfg.n_theta,
            n_theta_fb: cfg.n_theta,
            theta_m_normalized: cfg.theta_m / zp,
            theta_fb_classical_normalized: cfg.theta_m / zp,
            theta_fb_quantum_normalized: cfg.theta_m / zp,
            classical_below_zero_point: false,
        })
    }
}

/// Build an integration grid for [`variance_by_integration`]: log-spaced
/// coverage of [Omega_m/`span`, `span` Omega_m], a dense linear window of
/// `points_per_linewidth` samples per closed-loop linewidth
/// (1 + g) H_m / M around the resonance, and geometric wings in the detuning
/// |Omega - Omega_m| bridging the window to the far tails. The wings are
/// what keeps the trapezoid rule accurate through the 1/(Omega - Omega_m)^2
/// falloff of the resonance.
pub fn integration_grid(
    cfg: &ValidatedConfig,
    span: f64,
    points_per_linewidth: usize,
) -> FrequencyGrid {
    let o = &cfg.oscillator;
    let width = (1.0 + cfg.g_diss) * o.h_m / o.mass;
    let (lo, hi) = (o.omega_m / span, o.omega_m * span);
    let decades = (hi / lo).log10();
    let mut parts = vec![numeric::log_space(
        lo,
        hi,
        (decades * 400.0).ceil() as usize + 2,
    )];

    let core_half = 10.0 * width;
    let core_lo = (o.omega_m - core_half).max(lo);
    let core_hi = (o.omega_m + core_half).min(hi);
    let core_points =
        (((core_hi - core_lo) / width) * points_per_linewidth as f64).ceil() as usize + 2;
    parts.push(numeric::lin_space(core_lo, core_hi, core_points));

    // wings: log-spaced detuning u from the core edge out to the span edge
    let wing_points = |u_min: f64, u_max: f64| -> usize {
        ((u_max / u_min).log10() * (points_per_linewidth as f64)).ceil() as usize + 2
    };
    if core_hi < hi * 0.999 {
        let (u_min, u_max) = (core_hi - o.omega_m, hi - o.omega_m);
        parts.push(
            numeric::log_space(u_min, u_max, wing_points(u_min, u_max))
                .into_iter()
                .map(|u| o.omega_m + u)
                .collect(),
        );
    }
    if core_lo > lo * 1.001 {
        let (u_min, u_max) = (o.omega_m - core_lo, o.omega_m - lo);
        let mut left: Vec<f64> = numeric::log_space(u_min, u_max, wing_points(u_min, u_max))
            .into_iter()
            .map(|u| o.omega_m - u)
            .collect();
        left.reverse();
        parts.push(left);
    }

    let samples = numeric::merge_ascending(parts);
    FrequencyGrid::from_samples(samples, GridSpacing::Irregular)
        .expect("constructed grid is sorted and positive")
}

/// Velocity variance Delta V^2 = (1/2pi) integral of sigma_VV over both
/// signs of Omega: trapezoidal quadrature on the positive samples (doubled
/// by evenness) plus closed-form tails, sigma ~ C/Omega^2 above the grid
/// and sigma ~ c Omega^2 below it.
///
/// Equipartition then gives the temperature: (1/2) M Delta V^2 = (1/2) kB Theta.
pub fn variance_by_integration(
    cfg: &ValidatedConfig,
    spectrum: &Spectrum,
) -> Result<f64, EvalError> {
    let positive: Vec<(f64, f64)> = spectrum
        .grid
        .samples()
        .iter()
        .zip(&spectrum.values)
        .filter(|(&om, _)| om > 0.0)
        .map(|(&om, &v)| (om, v))
        .collect();
    if positive.len() < 2 {
        return Err(EvalError::InvalidGrid(
            "variance integration needs positive-frequency samples".into(),
        ));
    }
    let (omega_lo, _) = positive[0];
    let (omega_hi, sigma_hi) = *positive.last().unwrap();
    let required = (cfg.oscillator.omega_m / 50.0, 50.0 * cfg.oscillator.omega_m);
    if omega_lo > required.0 || omega_hi < required.1 {
        return Err(EvalError::InsufficientGridCoverage {
            required,
            actual: (omega_lo, omega_hi),
        });
    }

    let xs: Vec<f64> = positive.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = positive.iter().map(|p| p.1).collect();
    let bulk = numeric::trapezoid(&xs, &ys) / std::f64::consts::PI;
    // high tail: sigma ~ C / Omega^2 with C pinned at the last sample
    let high_tail = sigma_hi * omega_hi / std::f64::consts::PI;
    // low tail: sigma ~ c Omega^2 with c pinned at the first sample
    let low_tail = ys[0] * omega_lo / (3.0 * std::f64::consts::PI);
    Ok(bulk + high_tail + low_tail)
}

/// One cell of a (g, zeta) sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepPoint {
    pub g: f64,
    pub zeta: f64,
    pub theta_fb_normalized: f64,
    pub n_theta_fb: f64,
    /// Marks the per-g minimizer over the swept zeta values.
    pub is_optimum: bool,
}

/// Evaluate the normalized cold-damping temperature over the cartesian
/// product of gains and zetas; within each gain the minimizing zeta row is
/// flagged. Row order is (g outer, zeta inner), independent of evaluation
/// order.
pub fn sweep_temperature(
    cfg: &ValidatedConfig,
    gains: &[f64],
    zetas: &[f64],
) -> Result<Vec<SweepPoint>, EvalError> {
    let mut rows = Vec::with_capacity(gains.len() * zetas.len());
    for &g in gains {
        let cfg_g = cfg
            .with_gain(g)
            .map_err(|e| EvalError::InvalidGrid(e.to_string()))?;
        let start = rows.len();
        let mut best = (start, f64::INFINITY);
        for &zeta in zetas {
            let report = report_at(&cfg_g, zeta)?;
            if report.theta_fb_quantum < best.1 {
                best = (rows.len(), report.theta_fb_quantum);
            }
            rows.push(SweepPoint {
                g,
                zeta,
                theta_fb_normalized: report.theta_fb_quantum_normalized,
                n_theta_fb: report.n_theta_fb,
                is_optimum: false,
            });
        }
        rows[best.0].is_optimum = true;
    }
    Ok(rows)
}
