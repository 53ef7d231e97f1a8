//! JSON configuration files. Strict schema: unknown keys anywhere are an
//! error. Redundant parameterizations (h_m/q, g/h_fb, covariances/xi,
//! t_m/n_theta, physical/reduced cavity) are accepted only when consistent.

use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::model::{
    BathInput, CavityInput, ConfigInput, Feedback, LightState, Oscillator, PhysicalCavity,
    ReducedCavity, UnitSystem,
};

#[derive(Debug, thiserror::Error)]
pub enum ConfigFileError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid configuration: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid configuration: {0}")]
    Schema(String),
}

fn schema(msg: impl Into<String>) -> ConfigFileError {
    ConfigFileError::Schema(msg.into())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    units: Option<String>,
    #[serde(default)]
    white_noise: Option<bool>,
    oscillator: OscillatorSpec,
    cavity: CavitySpec,
    feedback: FeedbackSpec,
    #[serde(default)]
    light: Option<LightSpec>,
    bath: BathSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OscillatorSpec {
    mass: f64,
    omega_m: f64,
    #[serde(default)]
    h_m: Option<f64>,
    #[serde(default)]
    q: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CavitySpec {
    #[serde(default)]
    gamma: Option<f64>,
    #[serde(default)]
    tau: Option<f64>,
    #[serde(default)]
    k0: Option<f64>,
    #[serde(default)]
    alpha0: Option<f64>,
    #[serde(default)]
    zeta: Option<f64>,
    #[serde(default)]
    omega_cav: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FeedbackSpec {
    #[serde(default)]
    h_fb: Option<f64>,
    #[serde(default)]
    x_fb: Option<f64>,
    #[serde(default)]
    g: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LightSpec {
    #[serde(default)]
    s11: Option<f64>,
    #[serde(default)]
    s22: Option<f64>,
    #[serde(default)]
    s12: Option<f64>,
    #[serde(default)]
    xi: Option<f64>,
    #[serde(default)]
    angle: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BathSpec {
    #[serde(default)]
    t_m: Option<f64>,
    #[serde(default)]
    n_theta: Option<f64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, ConfigFileError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigFileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn parse_str(text: &str) -> Result<Self, ConfigFileError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Resolve the file into validated inputs. `units_override` (a CLI flag
    /// or environment variable) wins over the file's `units` key.
    pub fn resolve(
        &self,
        units_override: Option<UnitSystem>,
    ) -> Result<ConfigInput, ConfigFileError> {
        let units = match units_override {
            Some(u) => u,
            None => match self.units.as_deref() {
                None | Some("normalized") => UnitSystem::Normalized,
                Some("si") => UnitSystem::Si,
                Some(other) => {
                    return Err(schema(format!(
                        "units must be `si` or `normalized`, got `{other}`"
                    )))
                }
            },
        };

        let o = &self.oscillator;
        let h_m = match (o.h_m, o.q) {
            (Some(h), None) => h,
            (None, Some(q)) => {
                if q <= 0.0 {
                    return Err(schema(format!("oscillator.q must be positive, got {q}")));
                }
                o.mass * o.omega_m / q
            }
            (Some(h), Some(q)) => {
                let derived = o.mass * o.omega_m / q;
                if (h - derived).abs() > 1e-9 * h.abs().max(derived.abs()) {
                    return Err(schema(format!(
                        "oscillator gives h_m = {h} and q = {q}, but q implies h_m = {derived}"
                    )));
                }
                h
            }
            (None, None) => {
                return Err(schema("oscillator needs `h_m` or `q`"));
            }
        };
        let oscillator = Oscillator::new(o.mass, o.omega_m, h_m);

        let c = &self.cavity;
        let physical = match (c.gamma, c.tau, c.k0, c.alpha0) {
            (None, None, None, None) => None,
            (Some(gamma), Some(tau), Some(k0), Some(alpha0)) => Some(PhysicalCavity {
                gamma,
                tau,
                k0,
                alpha0,
            }),
            _ => {
                return Err(schema(
                    "physical cavity form needs all of gamma, tau, k0, alpha0",
                ))
            }
        };
        let reduced = match (c.zeta, c.omega_cav) {
            (None, None) => None,
            (Some(zeta), Some(omega_cav)) => Some(ReducedCavity { zeta, omega_cav }),
            _ => return Err(schema("reduced cavity form needs both zeta and omega_cav")),
        };
        let cavity = match (physical, reduced) {
            (Some(p), None) => CavityInput::Physical(p),
            (None, Some(r)) => CavityInput::Reduced(r),
            (Some(p), Some(r)) => CavityInput::Both(p, r),
            (None, None) => {
                return Err(schema(
                    "cavity needs a reduced (zeta, omega_cav) or physical \
                     (gamma, tau, k0, alpha0) parameterization",
                ))
            }
        };

        let f = &self.feedback;
        let x_fb = f.x_fb.unwrap_or(0.0);
        let h_fb = match (f.h_fb, f.g) {
            (Some(h), None) => h,
            (None, Some(g)) => g * h_m,
            (None, None) => 0.0,
            (Some(h), Some(g)) => {
                let derived = g * h_m;
                if (h - derived).abs() > 1e-9 * h.abs().max(derived.abs()) {
                    return Err(schema(format!(
                        "feedback gives h_fb = {h} and g = {g}, but g implies h_fb = {derived}"
                    )));
                }
                h
            }
        };
        let feedback = Feedback::new(Complex64::new(h_fb, x_fb));

        let light = match &self.light {
            None => LightState::coherent(),
            Some(l) => {
                let has_cov = l.s11.is_some() || l.s22.is_some() || l.s12.is_some();
                let has_squeeze = l.xi.is_some() || l.angle.is_some();
                match (has_cov, has_squeeze) {
                    (true, true) => {
                        return Err(schema(
                            "light takes either covariances (s11, s22, s12) or a \
                             squeezing spec (xi, angle), not both",
                        ))
                    }
                    (false, true) => {
                        LightState::squeezed(l.xi.unwrap_or(0.0), l.angle.unwrap_or(0.0))
                    }
                    _ => LightState {
                        s11: l.s11.unwrap_or(1.0),
                        s22: l.s22.unwrap_or(1.0),
                        s12: l.s12.unwrap_or(0.0),
                    },
                }
            }
        };

        let bath = match (self.bath.t_m, self.bath.n_theta) {
            (Some(t_m), None) => BathInput::Temperature(t_m),
            (None, Some(n_theta)) => BathInput::Phonons(n_theta),
            (Some(t_m), Some(n_theta)) => BathInput::Both { t_m, n_theta },
            (None, None) => return Err(schema("bath needs `t_m` or `n_theta`")),
        };

        Ok(ConfigInput {
            units,
            oscillator,
            cavity,
            feedback,
            light,
            bath,
            white_noise: self.white_noise.unwrap_or(true),
        })
    }
}
