//! Effective temperature of the cooled mirror versus the optomechanical
//! coupling zeta, for several gains. Each curve has a minimum at zeta = g
//! where measurement noise and radiation-pressure back action balance; the
//! minimum temperature falls to the zero-point value as the gain grows.
//!
//! Run with: cargo run -p colddamp --example temperature_sweep

use colddamp::cli::{fig3_config, fig3_zeta_values, FIG3_GAINS};
use colddamp::thermo;

fn main() {
    // n_theta = 1e5 thermal phonons; temperatures normalized to
    // hbar Omega_m / (2 kB), so "1" is the zero-point limit.
    let base = fig3_config();
    let zetas = fig3_zeta_values();

    let rows = thermo::sweep_temperature(&base, &FIG3_GAINS, &zetas).unwrap();
    println!("per-gain minima over zeta in [1e-1, 1e9] (100 points/decade):");
    println!("    gain         zeta_min     Theta_fb/Theta_zp    n_theta_fb");
    for &g in &FIG3_GAINS {
        let m = rows.iter().find(|r| r.g == g && r.is_optimum).unwrap();
        println!(
            "  {g:>9.0e}    {:>9.3e}    {:>15.8}    {:>12.6e}",
            m.zeta, m.theta_fb_normalized, m.n_theta_fb
        );
    }

    println!("\nclosed form of the per-gain floor: 2 n_theta/(1+g) + 1");
    for &g in &FIG3_GAINS {
        println!(
            "  g = {g:>9.0e}:  {:.8}",
            2.0 * base.n_theta / (1.0 + g) + 1.0
        );
    }

    // a slice through one curve, to see the two competing noises
    let g = 1e3;
    println!("\ncurve at g = 1e3 (measurement noise to the left, back action to the right):");
    println!("       zeta    Theta_fb/Theta_zp");
    let cfg = base.with_gain(g).unwrap();
    for factor in [0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0] {
        let at = cfg.with_zeta(factor * g).unwrap();
        let report = thermo::temperature_report(&at).unwrap();
        println!(
            "  {:>9.3e}    {:>14.6}",
            factor * g,
            report.theta_fb_quantum_normalized
        );
    }
}
