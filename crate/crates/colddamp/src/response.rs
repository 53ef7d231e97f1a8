//! Complex frequency-response functions of the coupled mirror/cavity/servo
//! system: mechanical impedance, total impedance under feedback, cavity
//! low-pass filtering, and the noise coefficients of the velocity estimator
//! and of the fed-back force.
//!
//! Sign convention: the Fourier transform is a\[Omega\] = integral of
//! a(t) e^{+i Omega t} dt, so time derivatives map to -i Omega. All
//! responses satisfy R(-Omega) = conj(R(Omega)).

use num_complex::Complex64;

use crate::model::{CavityModel, Feedback, Oscillator, ValidatedConfig};
use crate::EvalError;

/// Mechanical impedance of the free mirror,
/// Z_m = M(-i Omega + Omega_m^2 / (-i Omega)) + H_m
///     = H_m - i M (Omega - Omega_m^2 / Omega).
///
/// Re(Z_m) = H_m at every frequency; the reactive part vanishes at
/// Omega = +/- Omega_m and has a pole at Omega = 0.
pub fn mech_impedance(osc: &Oscillator, omega: f64) -> Result<Complex64, EvalError> {
    if omega == 0.0 {
        return Err(EvalError::ZeroFrequency);
    }
    let reactive = osc.mass * (omega - osc.omega_m * osc.omega_m / omega);
    Ok(Complex64::new(osc.h_m, -reactive))
}

/// Total impedance with the servo loop closed: Z = Z_m + Z_fb.
pub fn total_impedance(
    osc: &Oscillator,
    fb: &Feedback,
    omega: f64,
) -> Result<Complex64, EvalError> {
    Ok(mech_impedance(osc, omega)? + fb.impedance_at(omega))
}

/// Normalized cavity low-pass factor 1 / (1 + (Omega/Omega_cav)^2): the
/// ratio of the radiation-pressure back-action coefficient at Omega to its
/// zero-frequency value.
pub fn cavity_filter(cav: &CavityModel, omega: f64) -> f64 {
    let x = omega / cav.omega_cav;
    1.0 / (1.0 + x * x)
}

/// Coefficient of the incident phase quadrature a2_in in the measurement
/// error V_hat - V of the velocity estimator:
/// -i Omega (gamma + i Omega tau) / (2 sqrt(2 gamma) kappa).
///
/// Expressed through the reduced cavity parameters this is
/// -i Omega (1 + i Omega/Omega_cav) sqrt(hbar / (2 zeta Omega_m H_m)),
/// identical to the physical form for any realization of (zeta, Omega_cav).
pub fn velocity_estimator_noise_coeff(cav: &CavityModel, omega: f64) -> Complex64 {
    let amp = cav.estimator_scale.sqrt();
    Complex64::new(0.0, -omega) * Complex64::new(1.0, omega / cav.omega_cav) * amp
}

/// Coefficients (cA1, cA2) of the incident quadratures in the force the
/// feedback chain adds to the mirror: F_fb_in = cA1 a1_in + cA2 a2_in.
///
/// cA1 is the radiation-pressure back-action channel,
/// sqrt(2 gamma)/(gamma - i Omega tau) hbar kappa. cA2 is the fed-back
/// measurement noise: the force is -Z_fb V_hat, so the estimator error
/// enters with -Z_fb, giving +i Omega (gamma + i Omega tau)
/// / (2 sqrt(2 gamma) kappa) Z_fb.
pub fn feedback_force_coeffs(
    cfg: &ValidatedConfig,
    omega: f64,
) -> Result<(Complex64, Complex64), EvalError> {
    if omega == 0.0 {
        return Err(EvalError::ZeroFrequency);
    }
    let cav = &cfg.cavity;
    let c_a1 = cav.back_action_scale.sqrt() / Complex64::new(1.0, -omega / cav.omega_cav);
    let c_a2 = -cfg.feedback.impedance_at(omega) * velocity_estimator_noise_coeff(cav, omega);
    Ok((c_a1, c_a2))
}

/// Grid point spacing of a [`FrequencyGrid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSpacing {
    Linear,
    Logarithmic,
    /// Hand-assembled or merged grids.
    Irregular,
}

/// Strictly increasing frequency samples, rad/s. Omega = 0 is excluded:
/// the free-mass response has a physical pole there.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    samples: Vec<f64>,
    spacing: GridSpacing,
}

impl FrequencyGrid {
    pub fn linear(start: f64, stop: f64, points: usize) -> Result<Self, EvalError> {
        if points < 2 {
            return Err(EvalError::InvalidGrid("need at least 2 points".into()));
        }
        let step = (stop - start) / (points - 1) as f64;
        let samples = (0..points)
            .map(|i| {
                if i + 1 == points {
                    stop
                } else {
                    start + step * i as f64
                }
            })
            .collect();
        Self::from_samples(samples, GridSpacing::Linear)
    }

    pub fn logarithmic(start: f64, stop: f64, points: usize) -> Result<Self, EvalError> {
        if points < 2 {
            return Err(EvalError::InvalidGrid("need at least 2 points".into()));
        }
        if start <= 0.0 || stop <= 0.0 {
            return Err(EvalError::InvalidGrid(
                "logarithmic grids need positive endpoints".into(),
            ));
        }
        let (la, lb) = (start.ln(), stop.ln());
        let step = (lb - la) / (points - 1) as f64;
        let samples = (0..points)
            .map(|i| {
                if i + 1 == points {
                    stop
                } else {
                    (la + step * i as f64).exp()
                }
            })
            .collect();
        Self::from_samples(samples, GridSpacing::Logarithmic)
    }

    /// Log-spaced positive samples mirrored to negative frequencies:
    /// [-max..-min, min..max], symmetric about zero without containing it.
    pub fn symmetric_log(min: f64, max: f64, points_per_side: usize) -> Result<Self, EvalError> {
        let positive = Self::logarithmic(min, max, points_per_side)?;
        let mut samples: Vec<f64> = positive.samples.iter().rev().map(|x| -x).collect();
        samples.extend_from_slice(&positive.samples);
        Self::from_samples(samples, GridSpacing::Irregular)
    }

    pub fn from_samples(samples: Vec<f64>, spacing: GridSpacing) -> Result<Self, EvalError> {
        if samples.len() < 2 {
            return Err(EvalError::InvalidGrid("need at least 2 points".into()));
        }
        for pair in samples.windows(2) {
            if pair[0] >= pair[1] || pair[0].is_nan() || pair[1].is_nan() {
                return Err(EvalError::InvalidGrid(format!(
                    "samples must be strictly increasing and finite, got {} then {}",
                    pair[0], pair[1]
                )));
            }
        }
        if samples.iter().any(|&x| x == 0.0 || !x.is_finite()) {
            return Err(EvalError::InvalidGrid(
                "Omega = 0 is excluded (free-mass pole) and samples must be finite".into(),
            ));
        }
        Ok(FrequencyGrid { samples, spacing })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn spacing(&self) -> GridSpacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Parse a CLI grid spec `START:STOP:POINTS:lin|log`.
    pub fn parse(spec: &str) -> Result<Self, EvalError> {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 4 {
            return Err(EvalError::InvalidGrid(format!(
                "grid spec must be START:STOP:POINTS:lin|log, got `{spec}`"
            )));
        }
        let parse_f = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| EvalError::InvalidGrid(format!("bad number `{s}` in grid spec")))
        };
        let start = parse_f(parts[0])?;
        let stop = parse_f(parts[1])?;
        let points: usize = parts[2]
            .parse()
            .map_err(|_| EvalError::InvalidGrid(format!("bad point count `{}`", parts[2])))?;
        match parts[3] {
            "lin" => Self::linear(start, stop, points),
            "log" => Self::logarithmic(start, stop, points),
            other => Err(EvalError::InvalidGrid(format!(
                "grid spacing must be `lin` or `log`, got `{other}`"
            ))),
        }
    }
}
