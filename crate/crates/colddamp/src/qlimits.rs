//! Quantum limits of the feedback loop: the commutator the added force
//! must carry, the Heisenberg bound on its noise temperature, the
//! composed-system temperature, and the squeezed-light prescription that
//! saturates the bound.
//!
//! The gain used throughout this module is the modulus gain
//! g = |Z_fb| / H_m, which coincides with the dissipative gain
//! H_fb / H_m for pure cold damping.

use num_complex::Complex64;

use crate::model::{LightState, ValidatedConfig};
use crate::response;
use crate::EvalError;

/// Outcome of one commutator verification at frequency Omega.
#[derive(Debug, Clone, Copy)]
pub struct CommutatorCheck {
    pub omega: f64,
    /// Antisymmetrized coefficient of the added-force commutator (real part).
    pub coefficient: f64,
    /// The value unitarity demands: 2 hbar Omega H_fb.
    pub target: f64,
    /// |coefficient - target| relative to the commutator scale.
    pub residual: f64,
    /// Imaginary leakage of the antisymmetrized combination (must vanish).
    pub imag_leak: f64,
}

/// Compute the coefficient of 2 pi delta(Omega + Omega') in
/// \[F_fb_in\[Omega\], F_fb_in\[Omega'\]\] from the force coefficients at
/// +/- Omega and the quadrature commutators
/// \[a1\[Omega\], a2\[Omega'\]\] = 2i * 2 pi delta(Omega + Omega'):
///
///   K(Omega) = 2i (cA1(Omega) cA2(-Omega) - cA2(Omega) cA1(-Omega)),
///
/// and compare with the unitarity requirement 2 hbar Omega H_fb. Only the
/// dissipative part of Z_fb enters the target.
pub fn verify_feedback_commutator(
    cfg: &ValidatedConfig,
    omega: f64,
) -> Result<CommutatorCheck, EvalError> {
    let (a1_pos, a2_pos) = response::feedback_force_coeffs(cfg, omega)?;
    let (a1_neg, a2_neg) = response::feedback_force_coeffs(cfg, -omega)?;
    let k = Complex64::new(0.0, 2.0) * (a1_pos * a2_neg - a2_pos * a1_neg);
    let target = 2.0 * cfg.constants.hbar * omega * cfg.feedback.h_fb();
    let scale =
        (2.0 * cfg.constants.hbar * omega.abs() * cfg.feedback.zfb.norm().max(cfg.oscillator.h_m))
            .max(f64::MIN_POSITIVE);
    let residual = ((k.re - target).abs()).max(k.im.abs()) / target.abs().max(scale);
    Ok(CommutatorCheck {
        omega,
        coefficient: k.re,
        target,
        residual,
        imag_leak: k.im.abs(),
    })
}

/// Force noise spectral density sigma_FF\[Omega\] of the added feedback
/// force, from the force coefficients and the light covariances. Keeps the
/// full cavity frequency dependence.
pub fn sigma_ff(cfg: &ValidatedConfig, omega: f64) -> Result<f64, EvalError> {
    let (c_a1, c_a2) = response::feedback_force_coeffs(cfg, omega)?;
    let light = &cfg.light;
    Ok(c_a1.norm_sqr() * light.s11
        + c_a2.norm_sqr() * light.s22
        + 2.0 * (c_a1 * c_a2.conj()).re * light.s12)
}

/// Effective noise temperature of the feedback force, defined by
/// sigma_FF\[Omega_m\] = 2 H_fb kB Theta_fb_in in the wide-cavity limit:
///
/// kB Theta = (hbar Omega_m / 2) [ (|Z_fb|/H_fb)((zeta/2g) s11 + (g/2zeta) s22)
///                                 - (Im Z_fb / H_fb) s12 ],   g = |Z_fb|/H_m.
///
/// Bounded below by hbar Omega_m / (2 kB); the bound is reached for
/// coherent light on the zeta = g cold-damping line and for the
/// prescription returned by [`optimize_squeezing`].
pub fn feedback_noise_temperature(cfg: &ValidatedConfig) -> Result<f64, EvalError> {
    let h_fb = cfg.feedback.h_fb();
    if h_fb == 0.0 {
        return Err(EvalError::PureReactiveFeedback);
    }
    let g = cfg.g_mod;
    let zeta = cfg.cavity.zeta;
    let zmod = cfg.feedback.zfb.norm();
    let light = &cfg.light;
    let bracket = (zmod / h_fb) * (zeta / (2.0 * g) * light.s11 + g / (2.0 * zeta) * light.s22)
        - cfg.feedback.x_fb() / h_fb * light.s12;
    Ok(cfg.constants.hbar * cfg.oscillator.omega_m * bracket / (2.0 * cfg.constants.kb))
}

/// Temperature of the servo-controlled mirror as the damping-weighted
/// average of the bath and feedback noise temperatures:
/// Theta = (H_m Theta_m + H_fb Theta_fb_in) / (H_m + H_fb).
///
/// For cold damping this reproduces the wide-cavity closed-loop
/// temperature computed from the spectrum.
pub fn composed_system_temperature(cfg: &ValidatedConfig) -> Result<f64, EvalError> {
    let h_m = cfg.oscillator.h_m;
    let h_fb = cfg.feedback.h_fb();
    if h_fb == 0.0 {
        return Ok(cfg.theta_m);
    }
    let theta_in = feedback_noise_temperature(cfg)?;
    Ok((h_m * cfg.theta_m + h_fb * theta_in) / (h_m + h_fb))
}

/// Incident-field covariances that make the feedback noise reach the
/// Heisenberg bound, with derived squeezing factor and quadrature angle.
#[derive(Debug, Clone, Copy)]
pub struct SqueezingPrescription {
    pub s11: f64,
    pub s22: f64,
    pub s12: f64,
    /// Squeezing parameter: e^{-xi} is the squeezed principal covariance.
    pub xi: f64,
    /// Angle of the squeezed quadrature from the phase quadrature, rad.
    pub quadrature_angle: f64,
}

impl SqueezingPrescription {
    pub fn light_state(&self) -> LightState {
        LightState {
            s11: self.s11,
            s22: self.s22,
            s12: self.s12,
        }
    }

    pub fn uncertainty_product(&self) -> f64 {
        self.light_state().uncertainty_product()
    }
}

/// Covariances saturating the Heisenberg bound for the configured
/// (zeta, Z_fb):
///
///   s11 = (g/zeta)(|Z_fb|/H_fb),  s22 = (zeta/g)(|Z_fb|/H_fb),
///   s12 = Im(Z_fb)/H_fb,          g = |Z_fb|/H_m.
///
/// The product s11 s22 - s12^2 equals 1 identically
/// (|Z_fb|^2 = H_fb^2 + Im(Z_fb)^2), so the prescription is a minimum
/// state; feeding it into [`feedback_noise_temperature`] yields exactly
/// hbar Omega_m / (2 kB). Pure reactive feedback admits no finite
/// prescription (the bound becomes an infinite-squeezing limit).
pub fn optimize_squeezing(cfg: &ValidatedConfig) -> Result<SqueezingPrescription, EvalError> {
    let h_fb = cfg.feedback.h_fb();
    if h_fb == 0.0 {
        return Err(EvalError::PureReactiveFeedback);
    }
    let g = cfg.g_mod;
    let zeta = cfg.cavity.zeta;
    let ratio = cfg.feedback.zfb.norm() / h_fb;
    let light = LightState {
        s11: g / zeta * ratio,
        s22: zeta / g * ratio,
        s12: cfg.feedback.x_fb() / h_fb,
    };
    let (lo, _) = light.principal_values();
    Ok(SqueezingPrescription {
        s11: light.s11,
        s22: light.s22,
        s12: light.s12,
        xi: -lo.ln(),
        quadrature_angle: light.squeezed_quadrature_angle(),
    })
}

/// Coefficients of the scattered mechanical bath field:
/// m_out = c_m m_in + c_f F_fb_in with
/// c_m = (Z - 2 H_m)/Z and c_f = sqrt(2 H_m / (hbar |Omega|)) / Z.
pub fn output_field_transform(
    cfg: &ValidatedConfig,
    omega: f64,
) -> Result<(Complex64, Complex64), EvalError> {
    let z = response::total_impedance(&cfg.oscillator, &cfg.feedback, omega)?;
    let h_m = cfg.oscillator.h_m;
    let c_m = (z - 2.0 * h_m) / z;
    let c_f = Complex64::new((2.0 * h_m / (cfg.constants.hbar * omega.abs())).sqrt(), 0.0) / z;
    Ok((c_m, c_f))
}

/// Commutator of the output bath field in units of the input one:
/// eps(Omega) |c_m|^2-type closure
///   c_m(Omega) c_m(-Omega) eps(Omega) + c_f(Omega) c_f(-Omega) 2 hbar Omega H_fb
/// must reproduce eps(Omega) for the transformation to be unitary.
pub fn output_commutator_closure(
    cfg: &ValidatedConfig,
    omega: f64,
) -> Result<Complex64, EvalError> {
    let (cm_pos, cf_pos) = output_field_transform(cfg, omega)?;
    let (cm_neg, cf_neg) = output_field_transform(cfg, -omega)?;
    let eps = omega.signum();
    let fb_commutator = 2.0 * cfg.constants.hbar * omega * cfg.feedback.h_fb();
    Ok(cm_pos * cm_neg * eps + cf_pos * cf_neg * fb_commutator)
}

/// Everything `limits` reporting needs, evaluated at Omega_m.
#[derive(Debug, Clone)]
pub struct FeedbackNoiseReport {
    pub omega: f64,
    pub commutator: CommutatorCheck,
    /// sigma_FF\[Omega_m\] with the full cavity response, N^2 s.
    pub sigma_ff_resonance: f64,
    /// sigma_FF / (hbar Omega_m H_fb) with the full cavity response.
    pub heisenberg_margin_general: f64,
    /// Feedback noise temperature, K (infinite for pure reactive feedback).
    pub theta_fb_in: f64,
    /// Theta_fb_in / (hbar Omega_m / 2 kB); this is the wide-cavity
    /// Heisenberg margin and equals 1 exactly at saturation.
    pub heisenberg_margin: f64,
    /// H_fb = 0: the bound is only approached as an infinite-squeezing limit.
    pub pure_reactive: bool,
}

/// Build the noise report at the mechanical resonance.
pub fn noise_report(cfg: &ValidatedConfig) -> Result<FeedbackNoiseReport, EvalError> {
    let omega = cfg.oscillator.omega_m;
    let commutator = verify_feedback_commutator(cfg, omega)?;
    let sigma = sigma_ff(cfg, omega)?;
    let h_fb = cfg.feedback.h_fb();
    let pure_reactive = h_fb == 0.0;
    let (theta_in, margin, margin_general) = if pure_reactive {
        (f64::INFINITY, f64::INFINITY, f64::INFINITY)
    } else {
        let theta_in = feedback_noise_temperature(cfg)?;
        (
            theta_in,
            theta_in / cfg.zero_point_temperature(),
            sigma / (cfg.constants.hbar * omega * h_fb),
        )
    };
    Ok(FeedbackNoiseReport {
        omega,
        commutator,
        sigma_ff_resonance: sigma,
        heisenberg_margin_general: margin_general,
        theta_fb_in: theta_in,
        heisenberg_margin: margin,
        pure_reactive,
    })
}
