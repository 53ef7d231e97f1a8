//! Free mirror without feedback: bath occupation, effective temperature,
//! and the velocity noise spectrum in both the exact (coth) and
//! white-noise thermal models.
//!
//! Run with: cargo run -p colddamp --example free_oscillator

use colddamp::model::{
    self, validate_config, BathInput, CavityInput, ConfigInput, Feedback, LightState, Oscillator,
    ReducedCavity, UnitSystem,
};
use colddamp::spectra;

fn main() {
    // Normalized units: hbar = kB = 1, and we take M = Omega_m = 1 so all
    // frequencies are in units of Omega_m. Q = 1e6 mirrors a good
    // mechanical resonator.
    let oscillator = Oscillator::new(1.0, 1.0, 1e-6);
    let build = |t_m: f64, white_noise: bool| {
        validate_config(&ConfigInput {
            units: UnitSystem::Normalized,
            oscillator,
            cavity: CavityInput::Reduced(ReducedCavity {
                zeta: 1e-12, // negligible light coupling: a bare mirror
                omega_cav: 1e3,
            }),
            feedback: Feedback::off(),
            light: LightState::coherent(),
            bath: BathInput::Temperature(t_m),
            white_noise,
        })
        .unwrap()
    };

    println!("bath occupation and effective temperature (kB Theta = n + 1/2 here):");
    for t_m in [0.0, 0.1, 1.0, 100.0, 1e5] {
        let cfg = build(t_m, true);
        let n = model::thermal_phonons(&cfg.bath, &cfg.oscillator, &cfg.constants);
        println!(
            "  T_m = {t_m:>9.3e}  ->  n_theta = {n:>12.6e},  Theta_m = {:>12.6e}",
            cfg.theta_m
        );
    }

    // At T = 0 the zero-point motion survives: the spectrum at resonance is
    // hbar Omega_m / H_m, here 1e6.
    let cold = build(0.0, true);
    println!(
        "\nzero-temperature resonance noise: {:.6e}  (hbar Omega_m / H_m = {:.6e})",
        spectra::free_spectrum(&cold, 1.0).unwrap(),
        cold.spectrum_scale()
    );

    // Away from resonance the white-noise model and the exact coth model
    // differ once hbar|Omega| is no longer small against kB T.
    let warm_white = build(5.0, true);
    let warm_exact = build(5.0, false);
    println!("\nwhite vs exact thermal force model at T_m = 5:");
    println!("  omega      sigma_white      sigma_exact      ratio");
    for omega in [0.2, 0.5, 1.0, 2.0, 5.0, 20.0] {
        let w = spectra::free_spectrum(&warm_white, omega).unwrap();
        let e = spectra::free_spectrum(&warm_exact, omega).unwrap();
        println!("  {omega:>5.2}  {w:>15.6e}  {e:>15.6e}  {:>8.4}", w / e);
    }
    println!("\n(the two models agree on the resonance, which is all that");
    println!(" matters for a narrow high-Q line)");
}
