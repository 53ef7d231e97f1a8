//! Acceptance suite: one test per shipped guarantee, each printing a
//! single PASS/FAIL line (run with `--nocapture` to see them).
//!
//! Guarantees covered: lorentzian shape laws of the cooled spectra with
//! 1 : 1+g width scaling; temperature-sweep minima at zeta = g with the
//! closed-form floor; exact classical limit; equipartition closure of the
//! spectral variance; unitarity of the added-force commutator; the
//! Heisenberg floor of the feedback noise temperature; the squeezing
//! prescription and its shifted optima; and the resonance noise floor.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use colddamp::cli::{fig2_config, fig3_config, fig3_zeta_values, FIG2_GAINS, FIG3_GAINS};
use colddamp::model::{
    validate_config, BathInput, CavityInput, ConfigInput, Feedback, LightState, Oscillator,
    ReducedCavity, UnitSystem, ValidatedConfig,
};
use colddamp::qlimits;
use colddamp::response::{self, FrequencyGrid};
use colddamp::spectra::{self, SpectrumVariant};
use colddamp::thermo;

const SEED: u64 = 0xacce97;

fn criterion(name: &str, run: impl FnOnce() -> Result<String, String>) {
    match run() {
        Ok(detail) => println!("ACCEPTANCE {name}: PASS ({detail})"),
        Err(why) => {
            println!("ACCEPTANCE {name}: FAIL ({why})");
            panic!("{name}: {why}");
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn build(q: f64, zeta: f64, g: f64, n_theta: f64, omega_cav: f64) -> ValidatedConfig {
    let h_m = 1.0 / q;
    validate_config(&ConfigInput {
        units: UnitSystem::Normalized,
        oscillator: Oscillator::new(1.0, 1.0, h_m),
        cavity: CavityInput::Reduced(ReducedCavity { zeta, omega_cav }),
        feedback: Feedback::cold_damping(g * h_m),
        light: LightState::coherent(),
        bath: BathInput::Phonons(n_theta),
        white_noise: true,
    })
    .expect("acceptance configs are valid")
}

#[test]
fn cooled_spectra_shape_laws() {
    criterion("cooled_spectra_shape_laws", || {
        let base = fig2_config();
        let grid = FrequencyGrid::linear(0.95, 1.05, 50_000).unwrap();
        let started = Instant::now();
        let mut spectra_by_gain = Vec::new();
        for &g in &FIG2_GAINS {
            let cfg = base.with_gain(g).map_err(|e| e.to_string())?;
            let s = spectra::evaluate_spectrum(&cfg, &grid, SpectrumVariant::Simplified)
                .map_err(|e| e.to_string())?;
            spectra_by_gain.push((g, cfg, s));
        }
        let elapsed = started.elapsed();
        if elapsed.as_secs_f64() > 5.0 {
            return Err(format!(
                "five 5e4-point spectra took {elapsed:?} (budget 5 s)"
            ));
        }

        let mut widths = Vec::new();
        for (g, cfg, s) in &spectra_by_gain {
            // lorentzian constancy of |Z|^2 sigma_VV over all 5e4 points
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for (&omega, &v) in s.grid.samples().iter().zip(&s.values) {
                let p = v * response::total_impedance(&cfg.oscillator, &cfg.feedback, omega)
                    .unwrap()
                    .norm_sqr();
                lo = lo.min(p);
                hi = hi.max(p);
            }
            let flatness = (hi - lo) / lo;
            if flatness > 1e-10 {
                return Err(format!(
                    "g={g}: |Z|^2 sigma flatness {flatness:.2e} > 1e-10"
                ));
            }

            // peak against the closed-form resonance value
            let peak = spectra::feedback_spectrum_simplified(cfg, 1.0).unwrap();
            let reference = spectra::resonance_noise(cfg).unwrap();
            if rel(peak, reference) > 1e-9 {
                return Err(format!(
                    "g={g}: peak {peak:.12e} vs closed form {reference:.12e}"
                ));
            }

            // numeric width extraction (bisection on the continuous curve)
            let width = spectra::numeric_fwhm(
                |om| spectra::feedback_spectrum_simplified(cfg, om).unwrap(),
                1.0,
                (1.0 + g) * 1e-6,
            );
            widths.push((*g, width));
        }
        for (g, width) in &widths {
            let expected_ratio = 1.0 + g;
            let ratio = width / widths[0].1;
            if (ratio / expected_ratio - 1.0).abs() > 0.01 {
                return Err(format!(
                    "width ratio at g={g}: {ratio:.4} vs {expected_ratio} (>1%)"
                ));
            }
        }
        Ok(format!(
            "5 curves, width ratios 1:11:101:1001:10001 within 1%, \
             peaks at 1e-9, evaluated in {elapsed:?}"
        ))
    });
}

#[test]
fn temperature_sweep_minima() {
    criterion("temperature_sweep_minima", || {
        let base = fig3_config();
        let zetas = fig3_zeta_values(); // 100 points per decade, decade-aligned
        let step = zetas[1] / zetas[0];
        let started = Instant::now();
        let rows =
            thermo::sweep_temperature(&base, &FIG3_GAINS, &zetas).map_err(|e| e.to_string())?;
        let elapsed = started.elapsed();
        if elapsed.as_secs_f64() > 5.0 {
            return Err(format!("sweep took {elapsed:?} (budget 5 s)"));
        }

        let mut g7_min = f64::NAN;
        for &g in &FIG3_GAINS {
            let minimum = rows
                .iter()
                .find(|r| r.g == g && r.is_optimum)
                .ok_or_else(|| format!("no optimum row for g={g}"))?;
            if (minimum.zeta / g).ln().abs() > step.ln() * 1.0001 {
                return Err(format!(
                    "g={g}: numeric minimum at zeta={} is more than one grid step from g",
                    minimum.zeta
                ));
            }
            let expected = 2.0 * base.n_theta / (1.0 + g) + 1.0;
            if rel(minimum.theta_fb_normalized, expected) > 1e-9 {
                return Err(format!(
                    "g={g}: minimum {:.12e} vs closed form {expected:.12e}",
                    minimum.theta_fb_normalized
                ));
            }
            if g == 1e7 {
                g7_min = minimum.theta_fb_normalized;
            }
        }
        if (g7_min - 1.02).abs() > 1e-6 {
            return Err(format!("g=1e7 minimum {g7_min} is not ~1.02"));
        }
        Ok(format!(
            "4 curves, minima at zeta = g, g=1e7 floor {g7_min:.6}, swept in {elapsed:?}"
        ))
    });
}

#[test]
fn classical_limit_is_exact() {
    criterion("classical_limit_is_exact", || {
        for &g in &[0.0, 1.0, 10.0, 1e3] {
            let cfg = build(1e6, 1.0, g, 1e5, 1e3);
            let zeroed = thermo::cold_damping_temperature(&cfg, thermo::LightTerms::Zeroed)
                .map_err(|e| e.to_string())?;
            let classical = thermo::classical_cold_damping_temp(&cfg);
            if rel(zeroed, classical) > 1e-12 {
                return Err(format!(
                    "g={g}: zeroed light terms give {zeroed:.15e}, classical law {classical:.15e}"
                ));
            }
        }
        Ok("Theta_m/(1+g) recovered at 1e-12 for g in {0, 1, 10, 1e3}".to_string())
    });
}

#[test]
fn equipartition_closure() {
    criterion("equipartition_closure", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xe9);
        let mut worst = 0.0f64;
        for i in 0..20 {
            let q = 10f64.powf(rng.random_range(4.0..8.0));
            let g = 10f64.powf(rng.random_range(-2.0..(q / 10.0).log10()));
            let zeta = 10f64.powf(rng.random_range(-2.0..3.0));
            let n_theta = 10f64.powf(rng.random_range(0.0..6.0));
            let cfg = build(q, zeta, g, n_theta, 1e3);
            let grid = thermo::integration_grid(&cfg, 100.0, 200);
            let spectrum = spectra::evaluate_spectrum(&cfg, &grid, SpectrumVariant::Simplified)
                .map_err(|e| e.to_string())?;
            let dv2 =
                thermo::variance_by_integration(&cfg, &spectrum).map_err(|e| e.to_string())?;
            let theta_integral = cfg.oscillator.mass * dv2 / cfg.constants.kb;
            let theta_formula = thermo::quantum_cold_damping_temp(&cfg).unwrap();
            let gap = rel(theta_integral, theta_formula);
            worst = worst.max(gap);
            if gap > 1e-3 {
                return Err(format!(
                    "config {i} (q={q:.2e}, g={g:.2e}, zeta={zeta:.2e}, n={n_theta:.2e}): \
                     integral temperature off by {gap:.2e} (>0.1%)"
                ));
            }
        }

        // graceful degradation as g approaches Q, integrating the full
        // model (the fed-back measurement noise is white in velocity off
        // resonance, so its window contribution grows with g): reported,
        // not asserted.
        println!("  equipartition drift of the full-model integral as g -> Q (reported only):");
        for &frac in &[1e-3, 1e-2, 0.1, 0.5, 0.9] {
            let q = 1e6;
            let cfg = build(q, 1.0, frac * q, 1e5, 1e3);
            let grid = thermo::integration_grid(&cfg, 100.0, 200);
            let spectrum =
                spectra::evaluate_spectrum(&cfg, &grid, SpectrumVariant::General).unwrap();
            let dv2 = thermo::variance_by_integration(&cfg, &spectrum).unwrap();
            let theta_integral = cfg.oscillator.mass * dv2 / cfg.constants.kb;
            let theta_formula = thermo::quantum_cold_damping_temp(&cfg).unwrap();
            println!(
                "    g/Q = {frac:<5}: relative deviation {:.3e}",
                rel(theta_integral, theta_formula)
            );
        }
        Ok(format!(
            "20 seeded configs with g < Q/10 close within 0.1% (worst {worst:.2e})"
        ))
    });
}

#[test]
fn feedback_commutator_unitarity() {
    criterion("feedback_commutator_unitarity", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x51);
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let q = 10f64.powf(rng.random_range(3.0..9.0));
            let h_m = 1.0 / q;
            let h_fb = 10f64.powf(rng.random_range(-2.0..5.0)) * h_m;
            let x_fb = if rng.random_bool(0.5) {
                h_fb * rng.random_range(-10.0..10.0)
            } else {
                0.0
            };
            let zeta = 10f64.powf(rng.random_range(-3.0..3.0));
            let omega_cav = 10f64.powf(rng.random_range(0.5..4.0));
            let cfg = validate_config(&ConfigInput {
                units: UnitSystem::Normalized,
                oscillator: Oscillator::new(1.0, 1.0, h_m),
                cavity: CavityInput::Reduced(ReducedCavity { zeta, omega_cav }),
                feedback: Feedback::new(Complex64::new(h_fb, x_fb)),
                light: LightState::coherent(),
                bath: BathInput::Phonons(1e4),
                white_noise: true,
            })
            .map_err(|e| e.to_string())?;
            for omega in colddamp_log_space(1e-3, 1e3, 100) {
                let check =
                    qlimits::verify_feedback_commutator(&cfg, omega).map_err(|e| e.to_string())?;
                worst = worst.max(check.residual);
                if check.residual > 1e-10 {
                    return Err(format!(
                        "residual {:.2e} at omega={omega:.3e} (h_fb={h_fb:.2e}, x_fb={x_fb:.2e})",
                        check.residual
                    ));
                }
            }
        }
        Ok(format!(
            "50 seeded servos x 100 frequencies, worst residual {worst:.2e} < 1e-10"
        ))
    });
}

#[test]
fn heisenberg_floor() {
    criterion("heisenberg_floor", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x6f);
        let base = build(1e6, 1.0, 10.0, 1e3, 1e3);
        let zp = base.zero_point_temperature();
        let mut worst_margin = f64::INFINITY;
        for _ in 0..1000 {
            let h_fb = 10f64.powf(rng.random_range(-2.0..4.0)) * base.oscillator.h_m;
            let x_fb = h_fb * rng.random_range(-6.0..6.0);
            let zeta = 10f64.powf(rng.random_range(-3.0..3.0));
            let excess: f64 = rng.random_range(1.0..10.0);
            let s = LightState::squeezed(rng.random_range(0.0..3.0), rng.random_range(-1.5..1.5));
            let light = LightState {
                s11: excess * s.s11,
                s22: excess * s.s22,
                s12: excess * s.s12,
            };
            let cfg = base
                .with_feedback(Feedback::new(Complex64::new(h_fb, x_fb)))
                .and_then(|c| c.with_zeta(zeta))
                .and_then(|c| c.with_light(light))
                .map_err(|e| e.to_string())?;
            let theta = qlimits::feedback_noise_temperature(&cfg).map_err(|e| e.to_string())?;
            worst_margin = worst_margin.min(theta / zp);
            if theta < zp * (1.0 - 1e-12) {
                return Err(format!(
                    "noise temperature {theta:.15e} below the floor {zp:.15e}"
                ));
            }
        }

        // exact saturation on the zeta = g coherent cold-damping line
        for &g in &[0.1, 1.0, 42.0, 1e4] {
            let cfg = base
                .with_gain(g)
                .and_then(|c| c.with_zeta(g))
                .map_err(|e| e.to_string())?;
            let theta = qlimits::feedback_noise_temperature(&cfg).unwrap();
            if rel(theta, zp) > 1e-12 {
                return Err(format!(
                    "zeta=g={g}: saturation off by {:.2e}",
                    rel(theta, zp)
                ));
            }
        }
        // and on every squeezing prescription
        for _ in 0..100 {
            let h_fb = 10f64.powf(rng.random_range(-2.0..3.0)) * base.oscillator.h_m;
            let x_fb = h_fb * rng.random_range(-4.0..4.0);
            let zeta = 10f64.powf(rng.random_range(-2.0..3.0));
            let cfg = base
                .with_feedback(Feedback::new(Complex64::new(h_fb, x_fb)))
                .and_then(|c| c.with_zeta(zeta))
                .map_err(|e| e.to_string())?;
            let p = qlimits::optimize_squeezing(&cfg).map_err(|e| e.to_string())?;
            let theta = qlimits::feedback_noise_temperature(
                &cfg.with_light(p.light_state()).map_err(|e| e.to_string())?,
            )
            .unwrap();
            if rel(theta, zp) > 1e-12 {
                return Err(format!(
                    "prescription saturation off by {:.2e}",
                    rel(theta, zp)
                ));
            }
        }
        Ok(format!(
            "1000 random draws stay above the floor (worst margin {worst_margin:.12}), \
             saturation exact at 1e-12 on the matched line and prescriptions"
        ))
    });
}

#[test]
fn squeezing_optimization() {
    criterion("squeezing_optimization", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x57);
        // minimum-state products
        for _ in 0..300 {
            let h_fb = 10f64.powf(rng.random_range(-7.0..-3.0));
            let x_fb = h_fb * rng.random_range(-6.0..6.0);
            let zeta = 10f64.powf(rng.random_range(-2.0..3.0));
            let cfg = build(1e6, zeta, 1.0, 1e4, 1e3)
                .with_feedback(Feedback::new(Complex64::new(h_fb, x_fb)))
                .map_err(|e| e.to_string())?;
            let p = qlimits::optimize_squeezing(&cfg).map_err(|e| e.to_string())?;
            let err = (p.uncertainty_product() - 1.0).abs();
            if err > 1e-12 {
                return Err(format!("prescription product off by {err:.2e}"));
            }
        }

        // phase squeezing shifts the temperature minimum to e^{-xi} g
        let g = 100.0;
        for &xi in &[0.5, 1.0, 2.0] {
            let cfg = build(1e6, 1.0, g, 1e5, 1e3)
                .with_light(LightState::phase_squeezed(xi))
                .map_err(|e| e.to_string())?;
            let opt = thermo::optimal_zeta(&cfg, 1e-3, 1e6, 901).map_err(|e| e.to_string())?;
            let expected = (-xi).exp() * g;
            if (opt.scanned / expected).ln().abs() > opt.grid_step_factor.ln() * 1.0001 {
                return Err(format!(
                    "xi={xi}: scanned minimum {} not within one grid step of {expected}",
                    opt.scanned
                ));
            }
        }

        // 45-degree rotated case: e^{-xi} = (|Z_fb| - |Im Z_fb|)/H_fb
        for _ in 0..100 {
            let h_fb = 10f64.powf(rng.random_range(-7.0..-4.0));
            let x_fb = h_fb * rng.random_range(-5.0..5.0);
            let zfb = Complex64::new(h_fb, x_fb);
            let zeta_eq_g = zfb.norm() / 1e-6;
            let cfg = build(1e6, zeta_eq_g, 1.0, 1e4, 1e3)
                .with_feedback(Feedback::new(zfb))
                .map_err(|e| e.to_string())?;
            let p = qlimits::optimize_squeezing(&cfg).unwrap();
            let expected = (zfb.norm() - x_fb.abs()) / h_fb;
            if rel((-p.xi).exp(), expected) > 1e-12 {
                return Err(format!(
                    "rotated case: e^-xi {:.15e} vs (|Z|-|X|)/H = {expected:.15e}",
                    (-p.xi).exp()
                ));
            }
            if x_fb != 0.0 && rel(p.quadrature_angle.abs(), std::f64::consts::FRAC_PI_4) > 1e-9 {
                return Err("rotated case: squeezed quadrature not at 45 degrees".to_string());
            }
        }
        Ok(
            "products at 1, phase-squeezed minima shift to e^-xi g for xi in {0.5, 1, 2}, \
             45-degree factor matches"
                .to_string(),
        )
    });
}

#[test]
fn resonance_noise_floor() {
    criterion("resonance_noise_floor", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xf1);
        let mut worst = f64::INFINITY;
        for _ in 0..1000 {
            let q = 10f64.powf(rng.random_range(4.0..8.0));
            let g = 10f64.powf(rng.random_range(-2.0..(q / 10.0).log10()));
            let zeta = 10f64.powf(rng.random_range(-3.0..3.0));
            let n_theta = 10f64.powf(rng.random_range(-2.0..6.0));
            let cfg = build(q, zeta, g, n_theta, 1e3);
            let floor = cfg.constants.hbar * cfg.oscillator.omega_m
                / (cfg.oscillator.h_m + cfg.feedback.h_fb());
            for variant in [SpectrumVariant::Simplified, SpectrumVariant::General] {
                let sigma = match variant {
                    SpectrumVariant::Simplified => spectra::resonance_noise(&cfg).unwrap(),
                    _ => spectra::feedback_spectrum_general(&cfg, 1.0).unwrap(),
                };
                worst = worst.min(sigma / floor);
                if sigma < floor * (1.0 - 1e-12) {
                    return Err(format!(
                        "sigma(Omega_m) = {sigma:.15e} below floor {floor:.15e} \
                         (g={g:.2e}, zeta={zeta:.2e}, n={n_theta:.2e}, {})",
                        variant.label()
                    ));
                }
            }
        }

        // near-equality at n = 0, zeta = g, large gain
        let cfg = build(1e6, 1e4, 1e4, 0.0, 1e3);
        let floor = cfg.constants.hbar / (cfg.oscillator.h_m + cfg.feedback.h_fb());
        let tight = spectra::resonance_noise(&cfg).unwrap() / floor;
        let tight_general = spectra::feedback_spectrum_general(&cfg, 1.0).unwrap() / floor;
        if !(tight < 1.1 && tight_general < 1.1) {
            return Err(format!(
                "large matched gain not near the floor: {tight:.6}, general {tight_general:.6}"
            ));
        }
        Ok(format!(
            "1000 seeded configs respect the floor (min ratio {worst:.9}); \
             matched large gain reaches {tight:.9} of it"
        ))
    });
}

/// Local log-space helper (tests are outside the crate's private modules).
fn colddamp_log_space(a: f64, b: f64, n: usize) -> Vec<f64> {
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}
