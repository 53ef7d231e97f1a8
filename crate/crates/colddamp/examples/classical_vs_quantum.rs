//! Where classical cold damping breaks: the classical law cools as
//! Theta_m / (1 + g) without any floor, while the quantum treatment keeps
//! the zero-point energy untouched and adds the light noises. At the
//! optimal coupling the thermal phonons are still divided by 1 + g, but
//! the 1/2 stays.
//!
//! Run with: cargo run -p colddamp --example classical_vs_quantum

use colddamp::model::{
    validate_config, BathInput, CavityInput, ConfigInput, Feedback, LightState, Oscillator,
    ReducedCavity, UnitSystem,
};
use colddamp::thermo::{self, LightTerms};

fn main() {
    let h_m = 1e-9; // Q = 1e9 so even g = 1e8 stays in the validity domain
    let base = validate_config(&ConfigInput {
        units: UnitSystem::Normalized,
        oscillator: Oscillator::new(1.0, 1.0, h_m),
        cavity: CavityInput::Reduced(ReducedCavity {
            zeta: 1.0,
            omega_cav: 1e3,
        }),
        feedback: Feedback::off(),
        light: LightState::coherent(),
        bath: BathInput::Phonons(1e5),
        white_noise: true,
    })
    .unwrap();

    println!("temperatures normalized to the zero-point value hbar Omega_m/(2 kB);");
    println!("quantum column evaluated at the optimal coupling zeta = g\n");
    println!("      gain     classical     quantum(opt)    n_theta_fb");
    for g in [0.0, 10.0, 1e3, 1e5, 1e7, 1e8] {
        let cfg = base.with_gain(g).unwrap();
        let classical = thermo::classical_cold_damping_temp(&cfg) / cfg.zero_point_temperature();
        let opt = thermo::optimal_temperature(&cfg).unwrap();
        println!(
            "  {g:>8.0e}  {classical:>12.5e}  {:>13.6}  {:>12.5e}",
            opt.theta_fb_quantum_normalized, opt.n_theta_fb
        );
    }
    println!("\nclassical drops below 1 (the zero-point value) at large gain —");
    println!("the inconsistency the quantum noise terms repair.\n");

    // the test hook: zeroing the light terms inside the quantum formula
    // recovers the classical law exactly
    let cfg = base.with_gain(42.0).unwrap();
    let zeroed = thermo::cold_damping_temperature(&cfg, LightTerms::Zeroed).unwrap();
    let classical = thermo::classical_cold_damping_temp(&cfg);
    println!("light terms zeroed at g = 42: {zeroed:.12e} vs classical {classical:.12e}");

    // with the light terms kept, the report flags the classical regime
    let report = thermo::temperature_report(&base.with_gain(1e8).unwrap()).unwrap();
    println!(
        "report at g = 1e8: classical below zero point? {}  (quantum stays at {:.4})",
        report.classical_below_zero_point, report.theta_fb_quantum_normalized
    );
}
