//! Named invariant suite behind `colddamp check`: every structural identity
//! the model must satisfy, evaluated with residuals against pinned
//! tolerances. Checks whose preconditions a configuration violates are
//! reported as skipped, not failed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{
    self, validate_config, BathInput, CavityInput, ConfigInput, Constants, Feedback, LightState,
    Oscillator, ReducedCavity, UnitSystem, ValidatedConfig,
};
use crate::response::{self, FrequencyGrid};
use crate::spectra::{self, SpectrumVariant};
use crate::thermo::{self, LightTerms};
use crate::{numeric, qlimits};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// One invariant verdict: the largest residual observed and the tolerance
/// it was held against.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: CheckStatus,
    pub residual: f64,
    pub tolerance: f64,
    pub note: String,
}

impl CheckOutcome {
    fn judged(name: &'static str, residual: f64, tolerance: f64, note: impl Into<String>) -> Self {
        CheckOutcome {
            name,
            status: if residual.is_finite() && residual <= tolerance {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            residual,
            tolerance,
            note: note.into(),
        }
    }

    fn skipped(name: &'static str, note: impl Into<String>) -> Self {
        CheckOutcome {
            name,
            status: CheckStatus::Skipped,
            residual: f64::NAN,
            tolerance: f64::NAN,
            note: note.into(),
        }
    }
}

/// Default configuration for the suite: quality factor 1e6, 1e5 thermal
/// phonons, unit coupling, gain 10, wide cavity, coherent light.
pub fn default_config() -> ValidatedConfig {
    validate_config(&ConfigInput {
        units: UnitSystem::Normalized,
        oscillator: Oscillator::new(1.0, 1.0, 1e-6),
        cavity: CavityInput::Reduced(ReducedCavity {
            zeta: 1.0,
            omega_cav: 1e3,
        }),
        feedback: Feedback::cold_damping(1e-5),
        light: LightState::coherent(),
        bath: BathInput::Phonons(1e5),
        white_noise: true,
    })
    .expect("built-in default configuration is valid")
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Run every check against `cfg`; random sweeps draw from a ChaCha stream
/// seeded with `seed`, so residuals are reproducible run to run.
pub fn run_all(cfg: &ValidatedConfig, seed: u64) -> Vec<CheckOutcome> {
    let flat_ok = cfg.feedback.is_cold_damping() && cfg.g_diss < cfg.q;
    let mut out = vec![
        coth_identity(seed),
        cavity_roundtrip(cfg),
        unit_mode_consistency(cfg),
        reality_symmetry(cfg),
        impedance_real_part(cfg),
        impedance_linearity(cfg),
        spectrum_evenness(cfg),
        spectrum_positivity(cfg, seed),
    ];
    if flat_ok {
        out.push(lorentzian_flatness(cfg));
        out.push(peak_width_scaling(cfg));
        out.push(resonance_suppression_optimum(cfg));
        out.push(resonance_floor(cfg, seed));
        out.push(wide_cavity_agreement(cfg));
        out.push(classical_limit(cfg));
        out.push(temperature_floor_law(cfg, seed));
        out.push(amgm_optimum(cfg));
        out.push(equipartition_closure(cfg));
        out.push(composed_temperature_equality(cfg));
    } else {
        let why = if cfg.feedback.is_cold_damping() {
            format!("g = {:.3e} >= Q = {:.3e}", cfg.g_diss, cfg.q)
        } else {
            format!("reactive feedback Im(Z_fb) = {:.3e}", cfg.feedback.x_fb())
        };
        for name in [
            "lorentzian_flatness",
            "peak_width_scaling",
            "resonance_suppression_optimum",
            "resonance_floor",
            "wide_cavity_agreement",
            "classical_limit",
            "temperature_floor_law",
            "amgm_optimum",
            "equipartition_closure",
            "composed_temperature_equality",
        ] {
            out.push(CheckOutcome::skipped(name, why.clone()));
        }
    }
    out.push(variance_convergence(cfg));
    out.push(feedback_commutator(cfg, seed));
    out.push(commutator_light_independence(cfg));
    out.push(heisenberg_floor(cfg, seed));
    out.push(squeezing_prescription(cfg, seed));
    out.push(output_unitarity(cfg));
    out
}

fn coth_identity(seed: u64) -> CheckOutcome {
    // (1/2) coth(hbar Omega / 2 kB T) = n + 1/2 for all T > 0.
    let constants = Constants::for_units(UnitSystem::Normalized);
    let osc = Oscillator::new(1.0, 1.0, 1e-6);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc074);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let t: f64 = 10f64.powf(rng.random_range(-3.0..8.0));
        let n = model::thermal_phonons(&model::Bath { t_m: t }, &osc, &constants);
        let half_coth = 0.5 / (0.5 * constants.hbar * osc.omega_m / (constants.kb * t)).tanh();
        worst = worst.max(rel(half_coth, n + 0.5));
    }
    CheckOutcome::judged("coth_identity", worst, 1e-12, "200 random temperatures")
}

fn cavity_roundtrip(cfg: &ValidatedConfig) -> CheckOutcome {
    let reduced = ReducedCavity {
        zeta: cfg.cavity.zeta,
        omega_cav: cfg.cavity.omega_cav,
    };
    let back = reduced
        .to_physical(&cfg.oscillator, &cfg.constants)
        .to_reduced(&cfg.oscillator, &cfg.constants);
    let residual = rel(back.zeta, reduced.zeta).max(rel(back.omega_cav, reduced.omega_cav));
    CheckOutcome::judged(
        "cavity_roundtrip",
        residual,
        1e-12,
        "reduced -> physical -> reduced",
    )
}

fn unit_mode_consistency(cfg: &ValidatedConfig) -> CheckOutcome {
    // Rebuild the configuration around an SI-scale oscillator with the
    // same dimensionless parameters; dimensionless outputs must agree.
    let mass = 1e-3;
    let omega_m = 2.0 * std::f64::consts::PI * 1.8e6;
    let si_osc = Oscillator::new(mass, omega_m, mass * omega_m / cfg.q);
    let si = validate_config(&ConfigInput {
        units: UnitSystem::Si,
        oscillator: si_osc,
        cavity: CavityInput::Reduced(ReducedCavity {
            zeta: cfg.cavity.zeta,
            omega_cav: cfg.cavity.omega_cav / cfg.oscillator.omega_m * si_osc.omega_m,
        }),
        feedback: Feedback::new(Complex64::new(
            cfg.g_diss * si_osc.h_m,
            cfg.feedback.x_fb() / cfg.oscillator.h_m * si_osc.h_m,
        )),
        light: cfg.light,
        bath: BathInput::Phonons(cfg.n_theta),
        white_noise: cfg.white_noise,
    });
    let si = match si {
        Ok(c) => c,
        Err(e) => return CheckOutcome::skipped("unit_mode_consistency", e.to_string()),
    };
    let mut worst = rel(
        si.theta_m / si.zero_point_temperature(),
        2.0 * cfg.n_theta + 1.0,
    );
    let theta_pair = (
        thermo::quantum_cold_damping_temp(cfg),
        thermo::quantum_cold_damping_temp(&si),
    );
    if let (Ok(a), Ok(b)) = theta_pair {
        worst = worst.max(rel(
            a / cfg.zero_point_temperature(),
            b / si.zero_point_temperature(),
        ));
    }
    let peak_pair = (spectra::resonance_noise(cfg), spectra::resonance_noise(&si));
    if let (Ok(a), Ok(b)) = peak_pair {
        worst = worst.max(rel(a / cfg.spectrum_scale(), b / si.spectrum_scale()));
    }
    CheckOutcome::judged(
        "unit_mode_consistency",
        worst,
        1e-9,
        "normalized vs SI dimensionless outputs",
    )
}

fn reality_symmetry(cfg: &ValidatedConfig) -> CheckOutcome {
    let mut worst = 0.0f64;
    for &omega in &[0.05, 0.5, 1.0, 3.0, 50.0, 2e3] {
        let omega = omega * cfg.oscillator.omega_m;
        let z = response::total_impedance(&cfg.oscillator, &cfg.feedback, omega).unwrap();
        let zn = response::total_impedance(&cfg.oscillator, &cfg.feedback, -omega).unwrap();
        worst = worst.max((zn - z.conj()).norm() / z.norm());
        if let (Ok((a1, a2)), Ok((b1, b2))) = (
            response::feedback_force_coeffs(cfg, omega),
            response::feedback_force_coeffs(cfg, -omega),
        ) {
            worst = worst.max((b1 - a1.conj()).norm() / a1.norm().max(f64::MIN_POSITIVE));
            worst = worst.max((b2 - a2.conj()).norm() / a2.norm().max(f64::MIN_POSITIVE));
        }
    }
    CheckOutcome::judged(
        "reality_symmetry",
        worst,
        1e-12,
        "R(-Omega) = conj(R(Omega)) for impedances and force coefficients",
    )
}

fn impedance_real_part(cfg: &ValidatedConfig) -> CheckOutcome {
    let mut worst = 0.0f64;
    for &omega in &[0.01, 0.9, 1.0, 1.1, 440.0] {
        let z = response::mech_impedance(&cfg.oscillator, omega * cfg.oscillator.omega_m).unwrap();
        worst = worst.max(rel(z.re, cfg.oscillator.h_m));
    }
    CheckOutcome::judged(
        "impedance_real_part",
        worst,
        0.0,
        "Re(Z_m) = H_m exactly at all frequencies",
    )
}

fn impedance_linearity(cfg: &ValidatedConfig) -> CheckOutcome {
    let z1 = Complex64::new(3.0 * cfg.oscillator.h_m, 1.5 * cfg.oscillator.h_m);
    let z2 = Complex64::new(0.4 * cfg.oscillator.h_m, -2.0 * cfg.oscillator.h_m);
    let omega = 0.77 * cfg.oscillator.omega_m;
    let base = response::total_impedance(&cfg.oscillator, &Feedback::off(), omega).unwrap();
    let with = |z| response::total_impedance(&cfg.oscillator, &Feedback::new(z), omega).unwrap();
    let lhs = with(z1 + z2) - base;
    let rhs = (with(z1) - base) + (with(z2) - base);
    let residual = (lhs - rhs).norm() / lhs.norm().max(f64::MIN_POSITIVE);
    CheckOutcome::judged(
        "impedance_linearity",
        residual,
        1e-14,
        "Z is additive in Z_fb",
    )
}

fn spectrum_evenness(cfg: &ValidatedConfig) -> CheckOutcome {
    let grid = FrequencyGrid::symmetric_log(
        0.3 * cfg.oscillator.omega_m,
        3.0 * cfg.oscillator.omega_m,
        128,
    )
    .unwrap();
    let s = match spectra::evaluate_spectrum(cfg, &grid, SpectrumVariant::General) {
        Ok(s) => s,
        Err(e) => return CheckOutcome::skipped("spectrum_evenness", e.to_string()),
    };
    let n = s.values.len();
    let mut worst = 0.0f64;
    for i in 0..n / 2 {
        worst = worst.max(rel(s.values[i], s.values[n - 1 - i]));
    }
    CheckOutcome::judged(
        "spectrum_evenness",
        worst,
        1e-12,
        "sigma_VV even on a symmetric grid",
    )
}

fn spectrum_positivity(cfg: &ValidatedConfig, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x90f);
    let mut worst = f64::INFINITY;
    for _ in 0..50 {
        let light = LightState::squeezed(rng.random_range(0.0..2.0), rng.random_range(-1.5..1.5));
        let zfb = Complex64::new(
            10f64.powf(rng.random_range(-1.0..4.0)) * cfg.oscillator.h_m,
            rng.random_range(-3.0..3.0) * cfg.oscillator.h_m,
        );
        let probe = cfg
            .with_feedback(Feedback::new(zfb))
            .and_then(|c| c.with_light(light));
        let probe = match probe {
            Ok(c) => c,
            Err(_) => continue,
        };
        for &omega in &[0.01, 0.5, 1.0, 2.0, 700.0] {
            let v =
                spectra::feedback_spectrum_general(&probe, omega * cfg.oscillator.omega_m).unwrap();
            worst = worst.min(v);
        }
    }
    let status = if worst > 0.0 { 0.0 } else { 1.0 };
    CheckOutcome::judged(
        "spectrum_positivity",
        status,
        0.5,
        format!("min sigma_VV over random light/servo draws: {worst:.3e}"),
    )
}

fn lorentzian_flatness(cfg: &ValidatedConfig) -> CheckOutcome {
    let o = &cfg.oscillator;
    let width = (1.0 + cfg.g_diss) * o.h_m / o.mass;
    let grid =
        FrequencyGrid::linear(o.omega_m - 20.0 * width, o.omega_m + 20.0 * width, 4001).unwrap();
    let s = spectra::evaluate_spectrum(cfg, &grid, SpectrumVariant::Simplified).unwrap();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (&omega, &v) in grid.samples().iter().zip(&s.values) {
        let p = v * response::total_impedance(o, &cfg.feedback, omega)
            .unwrap()
            .norm_sqr();
        lo = lo.min(p);
        hi = hi.max(p);
    }
    CheckOutcome::judged(
        "lorentzian_flatness",
        (hi - lo) / lo,
        1e-12,
        "|Z|^2 sigma_VV constant across the resonance",
    )
}

fn peak_width_scaling(cfg: &ValidatedConfig) -> CheckOutcome {
    // peak * (1+g)^2 / noise-terms is g-independent (= hbar Omega_m / H_m);
    // with the extracted width, peak * FWHM^2 / noise-terms is too.
    let o = &cfg.oscillator;
    let mut products = Vec::new();
    for &g in &[0.0, 10.0, 100.0] {
        let c = match cfg.with_gain(g) {
            Ok(c) => c,
            Err(e) => return CheckOutcome::skipped("peak_width_scaling", e.to_string()),
        };
        let peak = spectra::resonance_noise(&c).unwrap();
        let width = spectra::numeric_fwhm(
            |om| spectra::feedback_spectrum_simplified(&c, om).unwrap(),
            o.omega_m,
            (1.0 + g) * o.h_m / o.mass,
        );
        let terms = spectra::flat_numerator(&c) / (o.h_m * c.constants.hbar * o.omega_m);
        products.push(peak * width * width / terms);
    }
    let worst = products[1..]
        .iter()
        .map(|p| rel(*p, products[0]))
        .fold(0.0f64, f64::max);
    CheckOutcome::judged(
        "peak_width_scaling",
        worst,
        0.01,
        "normalized peak * FWHM^2 independent of gain",
    )
}

fn resonance_suppression_optimum(cfg: &ValidatedConfig) -> CheckOutcome {
    // the gain minimizing sigma_VV(Omega_m) at fixed (zeta, n) is
    // g* = 2 (2n + 1 + zeta/2) zeta; oracle: brute-force scan.
    let zeta = cfg.cavity.zeta;
    let a = 2.0 * cfg.n_theta + 1.0 + 0.5 * zeta;
    let g_star = 2.0 * a * zeta;
    if g_star >= 0.5 * cfg.q {
        return CheckOutcome::skipped(
            "resonance_suppression_optimum",
            format!("analytic optimum g* = {g_star:.3e} not inside the g < Q domain"),
        );
    }
    let sigma = |g: f64| {
        let c = cfg.with_gain(g).expect("gain sweep stays valid");
        spectra::resonance_noise(&c).unwrap()
    };
    let hi = (g_star * 100.0).min(0.98 * cfg.q);
    let (g_min, _) = numeric::refine_log_min(&sigma, g_star / 100.0, hi, 4000);
    CheckOutcome::judged(
        "resonance_suppression_optimum",
        rel(g_min, g_star),
        1e-3,
        format!("scanned optimum {g_min:.6e} vs analytic {g_star:.6e}"),
    )
}

fn resonance_floor(cfg: &ValidatedConfig, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xf100);
    let mut worst = f64::INFINITY;
    for _ in 0..300 {
        let g = 10f64.powf(rng.random_range(-2.0..4.5));
        let zeta = 10f64.powf(rng.random_range(-3.0..3.0));
        let probe = cfg
            .with_gain(g)
            .and_then(|c| c.with_zeta(zeta))
            .expect("cold-damping draws stay valid");
        let floor = probe.constants.hbar * probe.oscillator.omega_m
            / (probe.oscillator.h_m + probe.feedback.h_fb());
        worst = worst.min(spectra::resonance_noise(&probe).unwrap() / floor);
    }
    CheckOutcome::judged(
        "resonance_floor",
        (1.0 - worst).max(0.0),
        1e-12,
        format!("min sigma(Omega_m)/floor ratio = {worst:.12}"),
    )
}

fn wide_cavity_agreement(cfg: &ValidatedConfig) -> CheckOutcome {
    if cfg.cavity.omega_cav < 10.0 * cfg.oscillator.omega_m {
        return CheckOutcome::skipped("wide_cavity_agreement", "cavity bandwidth below 10 Omega_m");
    }
    // open measurement channel: the two spectral routes coincide to the
    // cavity-filter correction of the back-action share
    let open = match cfg.with_gain(0.0) {
        Ok(c) => c,
        Err(e) => return CheckOutcome::skipped("wide_cavity_agreement", e.to_string()),
    };
    let mut worst = 0.0f64;
    for &omega in &[0.9, 0.99, 1.0, 1.01, 1.1] {
        let omega = omega * cfg.oscillator.omega_m;
        let g = spectra::feedback_spectrum_general(&open, omega).unwrap();
        let s = spectra::feedback_spectrum_simplified(&open, omega).unwrap();
        worst = worst.max(rel(g, s));
    }
    CheckOutcome::judged(
        "wide_cavity_agreement",
        worst,
        1e-9,
        "general vs flat route near resonance, open measurement channel",
    )
}

fn classical_limit(cfg: &ValidatedConfig) -> CheckOutcome {
    let mut worst = 0.0f64;
    for &g in &[0.0, 1.0, 10.0, 1e3] {
        let c = match cfg.with_gain(g) {
            Ok(c) => c,
            Err(e) => return CheckOutcome::skipped("classical_limit", e.to_string()),
        };
        let zeroed = thermo::cold_damping_temperature(&c, LightTerms::Zeroed).unwrap();
        worst = worst.max(rel(zeroed, thermo::classical_cold_damping_temp(&c)));
    }
    CheckOutcome::judged(
        "classical_limit",
        worst,
        1e-12,
        "light terms zeroed reproduces Theta_m/(1+g)",
    )
}

fn temperature_floor_law(cfg: &ValidatedConfig, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xf10c);
    let zp = cfg.zero_point_temperature();
    let mut worst = 0.0f64;
    for _ in 0..300 {
        let g = 10f64.powf(rng.random_range(-2.0..4.5));
        let zeta = 10f64.powf(rng.random_range(-3.0..3.0));
        let probe = cfg
            .with_gain(g)
            .and_then(|c| c.with_zeta(zeta))
            .expect("draws stay valid");
        let theta = thermo::quantum_cold_damping_temp(&probe).unwrap();
        let theta_opt = thermo::optimal_temperature(&probe)
            .unwrap()
            .theta_fb_quantum;
        worst = worst.max((theta_opt - theta) / theta);
        worst = worst.max((zp - theta_opt) / zp);
    }
    CheckOutcome::judged(
        "temperature_floor_law",
        worst.max(0.0),
        1e-12,
        "Theta_fb >= Theta_opt(g) >= zero-point temperature",
    )
}

fn amgm_optimum(cfg: &ValidatedConfig) -> CheckOutcome {
    let g = if cfg.g_diss > 0.0 { cfg.g_diss } else { 10.0 };
    let at = |zeta: f64| 0.5 * zeta + g * g / (2.0 * zeta);
    let mut worst = rel(at(g), g);
    for &f in &[0.3, 0.9, 1.1, 4.0] {
        if at(f * g) <= g {
            worst = worst.max(1.0);
        }
    }
    CheckOutcome::judged(
        "amgm_optimum",
        worst,
        1e-14,
        "zeta/2 + g^2/2zeta >= g with equality only at zeta = g",
    )
}

fn equipartition_closure(cfg: &ValidatedConfig) -> CheckOutcome {
    let grid = thermo::integration_grid(cfg, 100.0, 200);
    let s = spectra::evaluate_spectrum(cfg, &grid, SpectrumVariant::Simplified).unwrap();
    let dv2 = match thermo::variance_by_integration(cfg, &s) {
        Ok(v) => v,
        Err(e) => return CheckOutcome::skipped("equipartition_closure", e.to_string()),
    };
    let theta = thermo::quantum_cold_damping_temp(cfg).unwrap();
    let via_integral = cfg.oscillator.mass * dv2 / cfg.constants.kb;
    CheckOutcome::judged(
        "equipartition_closure",
        rel(via_integral, theta),
        1e-3,
        "M <V^2> / kB vs closed-form temperature",
    )
}

fn composed_temperature_equality(cfg: &ValidatedConfig) -> CheckOutcome {
    if cfg.feedback.h_fb() == 0.0 {
        return CheckOutcome::skipped("composed_temperature_equality", "no feedback damping");
    }
    let composed = qlimits::composed_system_temperature(cfg).unwrap();
    let direct = thermo::quantum_cold_damping_temp(cfg).unwrap();
    CheckOutcome::judged(
        "composed_temperature_equality",
        rel(composed, direct),
        1e-12,
        "damping-weighted average vs spectral route",
    )
}

fn variance_convergence(cfg: &ValidatedConfig) -> CheckOutcome {
    let variant = if cfg.feedback.is_cold_damping() && cfg.g_diss < cfg.q {
        SpectrumVariant::Simplified
    } else {
        SpectrumVariant::General
    };
    let run = |ppl: usize| {
        let grid = thermo::integration_grid(cfg, 100.0, ppl);
        let s = spectra::evaluate_spectrum(cfg, &grid, variant).unwrap();
        thermo::variance_by_integration(cfg, &s)
    };
    match (run(200), run(400)) {
        (Ok(coarse), Ok(fine)) => CheckOutcome::judged(
            "variance_convergence",
            rel(coarse, fine),
            1e-4,
            format!("{} spectrum, grid density doubled", variant.label()),
        ),
        (Err(e), _) | (_, Err(e)) => CheckOutcome::skipped("variance_convergence", e.to_string()),
    }
}

fn feedback_commutator(cfg: &ValidatedConfig, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0);
    let mut worst = 0.0f64;
    for omega in numeric::log_space(1e-3, 1e3, 100) {
        let omega = omega * cfg.oscillator.omega_m;
        worst = worst.max(
            qlimits::verify_feedback_commutator(cfg, omega)
                .unwrap()
                .residual,
        );
    }
    for _ in 0..50 {
        let zfb = Complex64::new(
            10f64.powf(rng.random_range(-2.0..4.0)) * cfg.oscillator.h_m,
            rng.random_range(-30.0..30.0) * cfg.oscillator.h_m,
        );
        let probe = cfg.with_feedback(Feedback::new(zfb)).expect("valid draw");
        for &omega in &[0.04, 1.0, 9.0] {
            worst = worst.max(
                qlimits::verify_feedback_commutator(&probe, omega * cfg.oscillator.omega_m)
                    .unwrap()
                    .residual,
            );
        }
    }
    CheckOutcome::judged(
        "feedback_commutator",
        worst,
        1e-10,
        "added-force commutator equals 2 hbar Omega H_fb",
    )
}

fn commutator_light_independence(cfg: &ValidatedConfig) -> CheckOutcome {
    let squeezed = cfg
        .with_light(LightState::squeezed(1.1, 0.3))
        .expect("squeezed state is valid");
    let omega = 2.5 * cfg.oscillator.omega_m;
    let a = qlimits::verify_feedback_commutator(cfg, omega).unwrap();
    let b = qlimits::verify_feedback_commutator(&squeezed, omega).unwrap();
    CheckOutcome::judged(
        "commutator_light_independence",
        rel(a.coefficient, b.coefficient),
        0.0,
        "commutator depends on coefficients only",
    )
}

fn heisenberg_floor(cfg: &ValidatedConfig, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6e15);
    let zp = cfg.zero_point_temperature();
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let h_fb = 10f64.powf(rng.random_range(-2.0..4.0)) * cfg.oscillator.h_m;
        let x_fb = h_fb * rng.random_range(-5.0..5.0);
        let zeta = 10f64.powf(rng.random_range(-3.0..3.0));
        let excess: f64 = rng.random_range(1.0..6.0);
        let base = LightState::squeezed(rng.random_range(0.0..2.5), rng.random_range(-1.5..1.5));
        let light = LightState {
            s11: excess * base.s11,
            s22: excess * base.s22,
            s12: excess * base.s12,
        };
        let probe = cfg
            .with_feedback(Feedback::new(Complex64::new(h_fb, x_fb)))
            .and_then(|c| c.with_zeta(zeta))
            .and_then(|c| c.with_light(light))
            .expect("draws stay valid");
        let theta = qlimits::feedback_noise_temperature(&probe).unwrap();
        worst = worst.max((zp - theta) / zp);
    }
    CheckOutcome::judged(
        "heisenberg_floor",
        worst.max(0.0),
        1e-12,
        "feedback noise temperature never below hbar Omega_m / 2 kB (1000 draws)",
    )
}

fn squeezing_prescription(cfg: &ValidatedConfig, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x59e2);
    let zp = cfg.zero_point_temperature();
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let h_fb = 10f64.powf(rng.random_range(-2.0..3.0)) * cfg.oscillator.h_m;
        let x_fb = h_fb * rng.random_range(-4.0..4.0);
        let zeta = 10f64.powf(rng.random_range(-2.0..3.0));
        let probe = cfg
            .with_feedback(Feedback::new(Complex64::new(h_fb, x_fb)))
            .and_then(|c| c.with_zeta(zeta))
            .expect("draws stay valid");
        let p = qlimits::optimize_squeezing(&probe).unwrap();
        worst = worst.max((p.uncertainty_product() - 1.0).abs());
        let saturated = probe.with_light(p.light_state()).expect("minimum state");
        let theta = qlimits::feedback_noise_temperature(&saturated).unwrap();
        worst = worst.max(rel(theta, zp));
    }
    CheckOutcome::judged(
        "squeezing_prescription",
        worst,
        1e-12,
        "prescription is a minimum state and saturates the bound",
    )
}

fn output_unitarity(cfg: &ValidatedConfig) -> CheckOutcome {
    let mut worst = 0.0f64;
    for omega in numeric::log_space(1e-2, 1e2, 40) {
        for &sign in &[1.0, -1.0] {
            let omega = sign * omega * cfg.oscillator.omega_m;
            let closure = qlimits::output_commutator_closure(cfg, omega).unwrap();
            worst = worst.max((closure - omega.signum()).norm());
        }
    }
    CheckOutcome::judged(
        "output_unitarity",
        worst,
        1e-10,
        "scattered bath field keeps the input commutator",
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let cfg = default_config();
        let outcomes = run_all(&cfg, 42);
        for o in &outcomes {
            assert_ne!(
                o.status,
                CheckStatus::Fail,
                "{}: residual {:.3e} (tol {:.3e}) {}",
                o.name,
                o.residual,
                o.tolerance,
                o.note
            );
        }
        assert!(
            outcomes
                .iter()
                .filter(|o| o.status == CheckStatus::Pass)
                .count()
                >= 20
        );
    }

    #[test]
    fn excess_gain_skips_flat_checks_but_keeps_integration() {
        let cfg = default_config().with_gain(2e6).unwrap(); // g = 2 Q
        let outcomes = run_all(&cfg, 42);
        let by_name = |n: &str| outcomes.iter().find(|o| o.name == n).unwrap();
        assert_eq!(by_name("lorentzian_flatness").status, CheckStatus::Skipped);
        assert_eq!(by_name("classical_limit").status, CheckStatus::Skipped);
        assert_eq!(by_name("variance_convergence").status, CheckStatus::Pass);
        assert_eq!(by_name("feedback_commutator").status, CheckStatus::Pass);
    }

    #[test]
    fn residuals_are_reproducible_for_a_seed() {
        let cfg = default_config();
        let a = run_all(&cfg, 7);
        let b = run_all(&cfg, 7);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name, y.name);
            assert!(
                (x.residual == y.residual) || (x.residual.is_nan() && y.residual.is_nan()),
                "{}: {} vs {}",
                x.name,
                x.residual,
                y.residual
            );
        }
    }
}
