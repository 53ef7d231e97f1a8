//! Physical parameters, unit conventions, and derived dimensionless quantities.
//!
//! Everything downstream (impedances, spectra, temperatures, quantum limits)
//! computes from a [`ValidatedConfig`]; invalid parameter combinations are
//! rejected here, before any evaluation happens.

use num_complex::Complex64;
use sha2::{Digest, Sha256};

/// CODATA value of the reduced Planck constant, J·s.
pub const CODATA_HBAR: f64 = 1.054571817e-34;
/// CODATA value of the Boltzmann constant, J/K.
pub const CODATA_KB: f64 = 1.380649e-23;

/// Relative tolerance for cross-checking redundant parameterizations.
const CONSISTENCY_TOL: f64 = 1e-9;
/// Slack on the uncertainty product so minimum states built in floating
/// point (product = 1 up to rounding) are accepted.
const UNCERTAINTY_SLACK: f64 = 1e-9;

/// Unit convention for all computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSystem {
    /// SI units with CODATA constants.
    Si,
    /// hbar = kB = 1; mechanical parameters are entered in units of a
    /// reference mass and frequency (conventionally M = Omega_m = 1).
    Normalized,
}

/// Fundamental constants in the active unit system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub hbar: f64,
    pub kb: f64,
}

impl Constants {
    pub fn for_units(units: UnitSystem) -> Self {
        match units {
            UnitSystem::Si => Constants {
                hbar: CODATA_HBAR,
                kb: CODATA_KB,
            },
            UnitSystem::Normalized => Constants { hbar: 1.0, kb: 1.0 },
        }
    }
}

/// Mechanical parameters of the mirror, modeled as a single viscously
/// damped harmonic oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillator {
    /// Mass, kg.
    pub mass: f64,
    /// Mechanical resonance frequency, rad/s.
    pub omega_m: f64,
    /// Viscous damping coefficient, kg/s (frequency independent).
    pub h_m: f64,
}

impl Oscillator {
    pub fn new(mass: f64, omega_m: f64, h_m: f64) -> Self {
        Oscillator { mass, omega_m, h_m }
    }

    /// Q = M * Omega_m / H_m.
    pub fn quality_factor(&self) -> f64 {
        self.mass * self.omega_m / self.h_m
    }
}

/// Cavity in its physical parameterization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalCavity {
    /// Input-mirror damping rate per round trip, dimensionless, 0 < gamma < 1.
    pub gamma: f64,
    /// Round-trip time, s.
    pub tau: f64,
    /// Field wavevector, 1/m.
    pub k0: f64,
    /// Mean intracavity field amplitude, dimensionless.
    pub alpha0: f64,
}

impl PhysicalCavity {
    /// Optomechanical coupling kappa = 2 * k0 * alpha0.
    pub fn kappa(&self) -> f64 {
        2.0 * self.k0 * self.alpha0
    }

    /// Cavity bandwidth Omega_cav = gamma / tau, rad/s.
    pub fn omega_cav(&self) -> f64 {
        self.gamma / self.tau
    }

    /// zeta = 4 hbar kappa^2 / (gamma * Omega_m * H_m).
    pub fn zeta(&self, osc: &Oscillator, constants: &Constants) -> f64 {
        let kappa = self.kappa();
        4.0 * constants.hbar * kappa * kappa / (self.gamma * osc.omega_m * osc.h_m)
    }

    pub fn to_reduced(&self, osc: &Oscillator, constants: &Constants) -> ReducedCavity {
        ReducedCavity {
            zeta: self.zeta(osc, constants),
            omega_cav: self.omega_cav(),
        }
    }
}

/// Cavity in reduced form: only the combinations the noise model actually
/// depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedCavity {
    /// Dimensionless optomechanical parameter.
    pub zeta: f64,
    /// Cavity bandwidth, rad/s.
    pub omega_cav: f64,
}

impl ReducedCavity {
    /// A physical realization of this reduced cavity. The split of kappa
    /// into (k0, alpha0) and the choice of gamma are degenerate; a canonical
    /// gamma = 1e-2 and alpha0 = 1 are used. Any choice reproduces the same
    /// (zeta, omega_cav) and therefore the same physics.
    pub fn to_physical(&self, osc: &Oscillator, constants: &Constants) -> PhysicalCavity {
        let gamma = 1e-2;
        let tau = gamma / self.omega_cav;
        let kappa = (self.zeta * gamma * osc.omega_m * osc.h_m / (4.0 * constants.hbar)).sqrt();
        PhysicalCavity {
            gamma,
            tau,
            k0: kappa / 2.0,
            alpha0: 1.0,
        }
    }
}

/// Cavity specification as supplied by the user.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CavityInput {
    Physical(PhysicalCavity),
    Reduced(ReducedCavity),
    /// Both forms given; they must agree on the derived (zeta, omega_cav).
    Both(PhysicalCavity, ReducedCavity),
}

/// Resolved cavity model carrying the coupling scales used by the
/// frequency-response functions.
///
/// `back_action_scale` is the zero-frequency radiation-pressure force PSD
/// coefficient |cA1(0)|^2 = 2 hbar^2 kappa^2 / gamma = (zeta/2) hbar Omega_m H_m.
/// `estimator_scale` is gamma / (8 kappa^2) = hbar / (2 zeta Omega_m H_m), the
/// squared magnitude prefactor of the velocity-estimator noise coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityModel {
    pub zeta: f64,
    pub omega_cav: f64,
    /// Present only when the cavity was supplied in physical form.
    pub physical: Option<PhysicalCavity>,
    pub(crate) back_action_scale: f64,
    pub(crate) estimator_scale: f64,
}

impl CavityModel {
    /// kappa is only defined for a physically parameterized cavity; the
    /// reduced form fixes kappa^2/gamma but not kappa itself.
    pub fn kappa(&self) -> Result<f64, crate::EvalError> {
        self.physical
            .map(|p| p.kappa())
            .ok_or(crate::EvalError::NeedsPhysicalCavity)
    }
}

/// Servo-loop impedance Z_fb. The real part is dissipative (cold damping),
/// the imaginary part is reactive (shifts the resonance).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Feedback {
    pub zfb: Complex64,
}

impl Feedback {
    pub fn new(zfb: Complex64) -> Self {
        Feedback { zfb }
    }

    /// Pure cold damping with dissipative part `h_fb`.
    pub fn cold_damping(h_fb: f64) -> Self {
        Feedback {
            zfb: Complex64::new(h_fb, 0.0),
        }
    }

    pub fn off() -> Self {
        Feedback::cold_damping(0.0)
    }

    /// Dissipative part H_fb = Re(Z_fb).
    pub fn h_fb(&self) -> f64 {
        self.zfb.re
    }

    /// Reactive part X_fb = Im(Z_fb).
    pub fn x_fb(&self) -> f64 {
        self.zfb.im
    }

    /// Impedance at signed frequency. Z_fb is specified at positive
    /// frequencies; reality of the time-domain response fixes
    /// Z_fb(-Omega) = conj(Z_fb(Omega)).
    pub fn impedance_at(&self, omega: f64) -> Complex64 {
        if omega >= 0.0 {
            self.zfb
        } else {
            self.zfb.conj()
        }
    }

    pub fn is_cold_damping(&self) -> bool {
        self.zfb.im == 0.0
    }
}

/// Symmetrized covariances of the incident field quadratures
/// (a1 = amplitude, a2 = phase). Coherent light is (1, 1, 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightState {
    pub s11: f64,
    pub s22: f64,
    pub s12: f64,
}

impl LightState {
    pub fn coherent() -> Self {
        LightState {
            s11: 1.0,
            s22: 1.0,
            s12: 0.0,
        }
    }

    /// Minimum state with the phase quadrature squeezed by e^{-xi}.
    pub fn phase_squeezed(xi: f64) -> Self {
        LightState {
            s11: xi.exp(),
            s22: (-xi).exp(),
            s12: 0.0,
        }
    }

    /// Minimum state squeezed by e^{-xi} along a quadrature rotated by
    /// `angle` (rad) from the phase quadrature. `angle = 0` is phase
    /// squeezing; `angle = pi/4` squeezes the 45-degree quadrature and
    /// correlates amplitude and phase.
    pub fn squeezed(xi: f64, angle: f64) -> Self {
        let (ep, em) = (xi.exp(), (-xi).exp());
        let (s, c) = angle.sin_cos();
        LightState {
            s11: ep * c * c + em * s * s,
            s22: ep * s * s + em * c * c,
            s12: (ep - em) * s * c,
        }
    }

    /// s11*s22 - s12^2; the generalized Heisenberg inequality requires >= 1.
    pub fn uncertainty_product(&self) -> f64 {
        self.s11 * self.s22 - self.s12 * self.s12
    }

    /// Principal covariances (min, max eigenvalues of the 2x2 matrix).
    pub fn principal_values(&self) -> (f64, f64) {
        let half_tr = 0.5 * (self.s11 + self.s22);
        let d = 0.5 * ((self.s11 - self.s22).powi(2) + 4.0 * self.s12 * self.s12).sqrt();
        (half_tr - d, half_tr + d)
    }

    /// Angle (rad, in (-pi/2, pi/2]) of the squeezed principal axis
    /// measured from the phase quadrature.
    pub fn squeezed_quadrature_angle(&self) -> f64 {
        0.5 * (2.0 * self.s12).atan2(self.s11 - self.s22)
    }
}

/// Thermal bath the mirror damping couples to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bath {
    /// Bath temperature, K (0 allowed).
    pub t_m: f64,
}

/// Bath specification: temperature, phonon occupation, or both (checked
/// for consistency, with the phonon number taken as authoritative).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BathInput {
    Temperature(f64),
    Phonons(f64),
    Both { t_m: f64, n_theta: f64 },
}

/// Mean thermal phonon number of the oscillator bath mode,
/// n = 1 / (exp(hbar Omega_m / kB T) - 1); exactly 0 at T = 0.
pub fn thermal_phonons(bath: &Bath, osc: &Oscillator, constants: &Constants) -> f64 {
    phonons_from_temperature(bath.t_m, osc.omega_m, constants)
}

pub(crate) fn phonons_from_temperature(t_m: f64, omega_m: f64, constants: &Constants) -> f64 {
    if t_m == 0.0 {
        return 0.0;
    }
    let x = constants.hbar * omega_m / (constants.kb * t_m);
    1.0 / x.exp_m1()
}

/// Inverse of [`thermal_phonons`]: T = hbar Omega_m / (kB ln(1 + 1/n)).
pub fn bath_temperature_from_phonons(n_theta: f64, osc: &Oscillator, constants: &Constants) -> f64 {
    if n_theta == 0.0 {
        return 0.0;
    }
    constants.hbar * osc.omega_m / (constants.kb * (1.0 / n_theta).ln_1p())
}

/// Effective temperature kB Theta = hbar Omega_m (n + 1/2).
pub fn effective_temperature_from_phonons(
    n_theta: f64,
    osc: &Oscillator,
    constants: &Constants,
) -> f64 {
    constants.hbar * osc.omega_m * (n_theta + 0.5) / constants.kb
}

/// Errors raised while validating a configuration.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("parameter `{name}` must be positive and finite, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },
    #[error("cavity damping gamma must lie in (0, 1), got {gamma}")]
    GammaOutOfRange { gamma: f64 },
    #[error("feedback would anti-damp the mirror: H_fb = Re(Z_fb) = {h_fb} < 0")]
    AntiDamping { h_fb: f64 },
    #[error(
        "light covariances violate the generalized Heisenberg inequality: \
         s11*s22 - s12^2 = {product} < 1"
    )]
    UncertaintyViolation { product: f64 },
    #[error("inconsistent parameterization: {0}")]
    InconsistentParameterization(String),
}

/// All inputs needed to assemble a configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigInput {
    pub units: UnitSystem,
    pub oscillator: Oscillator,
    pub cavity: CavityInput,
    pub feedback: Feedback,
    pub light: LightState,
    pub bath: BathInput,
    /// Replace the thermal force spectrum by its value at Omega_m
    /// (valid for Q >> 1). All flat-spectrum results assume this.
    pub white_noise: bool,
}

/// A fully derived, immutable configuration. All evaluation functions take
/// this by reference; it is safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedConfig {
    pub units: UnitSystem,
    pub constants: Constants,
    pub oscillator: Oscillator,
    pub cavity: CavityModel,
    pub feedback: Feedback,
    pub light: LightState,
    pub bath: Bath,
    pub white_noise: bool,
    /// Mechanical quality factor M Omega_m / H_m.
    pub q: f64,
    /// Dissipative gain H_fb / H_m.
    pub g_diss: f64,
    /// Modulus gain |Z_fb| / H_m (used by the squeezed-light analysis).
    pub g_mod: f64,
    /// Thermal phonon number of the bath at Omega_m.
    pub n_theta: f64,
    /// Effective bath temperature, kB Theta_m = hbar Omega_m (n_theta + 1/2).
    pub theta_m: f64,
    pub warnings: Vec<String>,
}

impl ValidatedConfig {
    /// hbar Omega_m / (2 kB): the zero-point effective temperature, the
    /// normalization used for all dimensionless temperature outputs.
    pub fn zero_point_temperature(&self) -> f64 {
        self.constants.hbar * self.oscillator.omega_m / (2.0 * self.constants.kb)
    }

    /// hbar Omega_m / H_m: velocity noise of the free oscillator at zero
    /// temperature and resonance, the normalization for spectra.
    pub fn spectrum_scale(&self) -> f64 {
        self.constants.hbar * self.oscillator.omega_m / self.oscillator.h_m
    }

    /// Rebuild with a different dissipative gain g = H_fb / H_m (the
    /// reactive part is kept).
    pub fn with_gain(&self, g: f64) -> Result<ValidatedConfig, ConfigError> {
        let zfb = Complex64::new(g * self.oscillator.h_m, self.feedback.x_fb());
        self.rebuilt(|input| input.feedback = Feedback::new(zfb))
    }

    /// Rebuild with a different feedback impedance.
    pub fn with_feedback(&self, feedback: Feedback) -> Result<ValidatedConfig, ConfigError> {
        self.rebuilt(|input| input.feedback = feedback)
    }

    /// Rebuild with a different optomechanical parameter zeta. For a
    /// physically parameterized cavity the intracavity amplitude is scaled
    /// accordingly (zeta is proportional to alpha0^2).
    pub fn with_zeta(&self, zeta: f64) -> Result<ValidatedConfig, ConfigError> {
        let cavity = match self.cavity.physical {
            Some(p) => {
                let scale = (zeta / self.cavity.zeta).sqrt();
                CavityInput::Physical(PhysicalCavity {
                    alpha0: p.alpha0 * scale,
                    ..p
                })
            }
            None => CavityInput::Reduced(ReducedCavity {
                zeta,
                omega_cav: self.cavity.omega_cav,
            }),
        };
        self.rebuilt(|input| input.cavity = cavity)
    }

    /// Rebuild with a different incident light state.
    pub fn with_light(&self, light: LightState) -> Result<ValidatedConfig, ConfigError> {
        self.rebuilt(|input| input.light = light)
    }

    fn rebuilt(
        &self,
        update: impl FnOnce(&mut ConfigInput),
    ) -> Result<ValidatedConfig, ConfigError> {
        let cavity = match self.cavity.physical {
            Some(p) => CavityInput::Physical(p),
            None => CavityInput::Reduced(ReducedCavity {
                zeta: self.cavity.zeta,
                omega_cav: self.cavity.omega_cav,
            }),
        };
        let mut input = ConfigInput {
            units: self.units,
            oscillator: self.oscillator,
            cavity,
            feedback: self.feedback,
            light: self.light,
            bath: BathInput::Phonons(self.n_theta),
            white_noise: self.white_noise,
        };
        update(&mut input);
        validate_config(&input)
    }

    /// Content hash of the resolved configuration (hex SHA-256). Embedded
    /// in output files so results can be traced back to their inputs.
    pub fn digest(&self) -> String {
        let cav = &self.cavity;
        let physical = match cav.physical {
            Some(p) => format!(
                "gamma={:.17e};tau={:.17e};k0={:.17e};alpha0={:.17e}",
                p.gamma, p.tau, p.k0, p.alpha0
            ),
            None => "reduced".to_string(),
        };
        let canonical = format!(
            "units={:?};M={:.17e};Om={:.17e};Hm={:.17e};zeta={:.17e};omcav={:.17e};{};\
             hfb={:.17e};xfb={:.17e};s11={:.17e};s22={:.17e};s12={:.17e};tm={:.17e};\
             ntheta={:.17e};white={}",
            self.units,
            self.oscillator.mass,
            self.oscillator.omega_m,
            self.oscillator.h_m,
            cav.zeta,
            cav.omega_cav,
            physical,
            self.feedback.h_fb(),
            self.feedback.x_fb(),
            self.light.s11,
            self.light.s22,
            self.light.s12,
            self.bath.t_m,
            self.n_theta,
            self.white_noise,
        );
        let hash = Sha256::digest(canonical.as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn require_positive(name: &'static str, value: f64) -> Result<(), ConfigError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::NonPositiveParameter { name, value })
    }
}

fn require_non_negative(name: &'static str, value: f64) -> Result<(), ConfigError> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::NonPositiveParameter { name, value })
    }
}

fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Check every invariant and derive all dependent quantities.
pub fn validate_config(input: &ConfigInput) -> Result<ValidatedConfig, ConfigError> {
    let constants = Constants::for_units(input.units);
    let osc = input.oscillator;
    let mut warnings = Vec::new();

    require_positive("oscillator.mass", osc.mass)?;
    require_positive("oscillator.omega_m", osc.omega_m)?;
    require_positive("oscillator.h_m", osc.h_m)?;
    let q = osc.quality_factor();
    if q < 100.0 {
        warnings.push(format!(
            "quality factor Q = {q:.3e} < 100: narrow-resonance approximations \
             (white thermal noise, flat spectra) are unreliable"
        ));
    }

    let resolve_physical = |p: &PhysicalCavity| -> Result<(f64, f64), ConfigError> {
        if !(p.gamma > 0.0 && p.gamma < 1.0) {
            return Err(ConfigError::GammaOutOfRange { gamma: p.gamma });
        }
        require_positive("cavity.tau", p.tau)?;
        require_positive("cavity.k0", p.k0)?;
        require_positive("cavity.alpha0", p.alpha0)?;
        Ok((p.zeta(&osc, &constants), p.omega_cav()))
    };

    let (zeta, omega_cav, physical) = match &input.cavity {
        CavityInput::Physical(p) => {
            let (zeta, omega_cav) = resolve_physical(p)?;
            (zeta, omega_cav, Some(*p))
        }
        CavityInput::Reduced(r) => {
            require_positive("cavity.zeta", r.zeta)?;
            require_positive("cavity.omega_cav", r.omega_cav)?;
            (r.zeta, r.omega_cav, None)
        }
        CavityInput::Both(p, r) => {
            let (zeta_p, omega_cav_p) = resolve_physical(p)?;
            require_positive("cavity.zeta", r.zeta)?;
            require_positive("cavity.omega_cav", r.omega_cav)?;
            if relative_gap(zeta_p, r.zeta) > CONSISTENCY_TOL {
                return Err(ConfigError::InconsistentParameterization(format!(
                    "physical cavity derives zeta = {zeta_p:.9e} but reduced form says {:.9e}",
                    r.zeta
                )));
            }
            if relative_gap(omega_cav_p, r.omega_cav) > CONSISTENCY_TOL {
                return Err(ConfigError::InconsistentParameterization(format!(
                    "physical cavity derives Omega_cav = {omega_cav_p:.9e} but reduced form \
                     says {:.9e}",
                    r.omega_cav
                )));
            }
            (zeta_p, omega_cav_p, Some(*p))
        }
    };
    if omega_cav < 10.0 * osc.omega_m {
        warnings.push(format!(
            "cavity bandwidth Omega_cav = {omega_cav:.3e} is not large compared to \
             Omega_m = {:.3e}: wide-cavity (flat-spectrum) results are approximate",
            osc.omega_m
        ));
    }
    let cavity = CavityModel {
        zeta,
        omega_cav,
        physical,
        back_action_scale: 0.5 * zeta * constants.hbar * osc.omega_m * osc.h_m,
        estimator_scale: constants.hbar / (2.0 * zeta * osc.omega_m * osc.h_m),
    };

    let fb = input.feedback;
    if !fb.zfb.re.is_finite() || !fb.zfb.im.is_finite() {
        return Err(ConfigError::NonPositiveParameter {
            name: "feedback.zfb",
            value: f64::NAN,
        });
    }
    if fb.h_fb() < 0.0 {
        return Err(ConfigError::AntiDamping { h_fb: fb.h_fb() });
    }
    let g_diss = fb.h_fb() / osc.h_m;
    let g_mod = fb.zfb.norm() / osc.h_m;

    let light = input.light;
    require_positive("light.s11", light.s11)?;
    require_positive("light.s22", light.s22)?;
    let product = light.uncertainty_product();
    if product < 1.0 - UNCERTAINTY_SLACK || product.is_nan() {
        return Err(ConfigError::UncertaintyViolation { product });
    }

    let (t_m, n_theta) = match input.bath {
        BathInput::Temperature(t_m) => {
            require_non_negative("bath.t_m", t_m)?;
            (t_m, phonons_from_temperature(t_m, osc.omega_m, &constants))
        }
        BathInput::Phonons(n) => {
            require_non_negative("bath.n_theta", n)?;
            (bath_temperature_from_phonons(n, &osc, &constants), n)
        }
        BathInput::Both { t_m, n_theta } => {
            require_non_negative("bath.t_m", t_m)?;
            require_non_negative("bath.n_theta", n_theta)?;
            let derived = phonons_from_temperature(t_m, osc.omega_m, &constants);
            if relative_gap(derived, n_theta) > CONSISTENCY_TOL {
                return Err(ConfigError::InconsistentParameterization(format!(
                    "bath.t_m = {t_m:.9e} implies n_theta = {derived:.9e}, conflicting with \
                     the given n_theta = {n_theta:.9e}"
                )));
            }
            // n_theta is authoritative when both are supplied.
            (
                bath_temperature_from_phonons(n_theta, &osc, &constants),
                n_theta,
            )
        }
    };
    let theta_m = effective_temperature_from_phonons(n_theta, &osc, &constants);

    Ok(ValidatedConfig {
        units: input.units,
        constants,
        oscillator: osc,
        cavity,
        feedback: fb,
        light,
        bath: Bath { t_m },
        white_noise: input.white_noise,
        q,
        g_diss,
        g_mod,
        n_theta,
        theta_m,
        warnings,
    })
}
