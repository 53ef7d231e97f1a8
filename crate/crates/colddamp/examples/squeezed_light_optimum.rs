//! Squeezed-light optimization of the feedback noise: which incident
//! covariances make the feedback chain as quiet as quantum mechanics
//! allows, and how phase squeezing moves the optimal coupling.
//!
//! Run with: cargo run -p colddamp --example squeezed_light_optimum

use num_complex::Complex64;

use colddamp::model::{
    validate_config, BathInput, CavityInput, ConfigInput, Feedback, LightState, Oscillator,
    ReducedCavity, UnitSystem,
};
use colddamp::{qlimits, thermo};

fn main() {
    let h_m = 1e-6;
    let base = validate_config(&ConfigInput {
        units: UnitSystem::Normalized,
        oscillator: Oscillator::new(1.0, 1.0, h_m),
        cavity: CavityInput::Reduced(ReducedCavity {
            zeta: 100.0,
            omega_cav: 1e3,
        }),
        feedback: Feedback::cold_damping(100.0 * h_m),
        light: LightState::coherent(),
        bath: BathInput::Phonons(1e5),
        white_noise: true,
    })
    .unwrap();
    let zp = base.zero_point_temperature();

    // coherent light on the matched line zeta = g already saturates the
    // Heisenberg bound
    let theta = qlimits::feedback_noise_temperature(&base).unwrap();
    println!(
        "coherent, zeta = g = 100: Theta_fb_in / zero-point = {:.12}",
        theta / zp
    );

    // mismatched coupling costs noise ...
    let mismatched = base.with_zeta(400.0).unwrap();
    let theta = qlimits::feedback_noise_temperature(&mismatched).unwrap();
    println!(
        "coherent, zeta = 4 g:     Theta_fb_in / zero-point = {:.12}",
        theta / zp
    );

    // ... which the right squeezed state buys back
    let p = qlimits::optimize_squeezing(&mismatched).unwrap();
    println!(
        "  prescription: s11 = {:.4}, s22 = {:.4}, s12 = {:.4} (product {:.12})",
        p.s11,
        p.s22,
        p.s12,
        p.uncertainty_product()
    );
    let saturated = mismatched.with_light(p.light_state()).unwrap();
    let theta = qlimits::feedback_noise_temperature(&saturated).unwrap();
    println!(
        "  with that light:          Theta_fb_in / zero-point = {:.12}",
        theta / zp
    );

    // phase squeezing moves the optimal coupling to e^{-xi} g: the same
    // floor is reached with less light power
    println!("\noptimal zeta under phase-squeezed light (g = 100):");
    for xi in [0.0, 0.5, 1.0, 2.0] {
        let cfg = base.with_light(LightState::phase_squeezed(xi)).unwrap();
        let opt = thermo::optimal_zeta(&cfg, 1e-2, 1e5, 1401).unwrap();
        println!(
            "  xi = {xi:>4.1}: analytic zeta* = {:>9.4}, scanned {:>9.4}, e^-xi g = {:>9.4}",
            opt.analytic,
            opt.scanned,
            (-xi).exp() * 100.0
        );
    }

    // a servo with a reactive part needs amplitude-phase correlated light:
    // the squeezed quadrature sits at 45 degrees when zeta = |Z_fb|/H_m
    let zfb = Complex64::new(3.0 * h_m, 4.0 * h_m);
    let rotated = base
        .with_feedback(Feedback::new(zfb))
        .unwrap()
        .with_zeta(zfb.norm() / h_m)
        .unwrap();
    let p = qlimits::optimize_squeezing(&rotated).unwrap();
    println!(
        "\nreactive servo Z_fb = (3 + 4i) H_m at matched coupling:\n  \
         squeezed quadrature at {:.1} deg, e^-xi = {:.6} = (|Z|-|Im Z|)/H_fb = {:.6}",
        p.quadrature_angle.to_degrees(),
        (-p.xi).exp(),
        (zfb.norm() - zfb.im.abs()) / zfb.re
    );
}
