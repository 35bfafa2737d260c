//! Irreversible dephasing under power-law classical noise.
//!
//! Unlike the stochastic fields, power-law noise damps the outer coherence
//! by e^{-8 beta(tau)} with beta non-decreasing, so nothing ever revives.
//! Bell nonlocality and concurrence hit exact zero at finite noise time;
//! steerability and purity keep falling until they saturate at the values of
//! the fully dephased state (outer coherence erased, everything else kept).

use gravcat::channels::{beta_pl, dephase_pl, NoiseParams};
use gravcat::measures::measure_all;
use gravcat::model::{thermal_state, ModelParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = ModelParams::new(1.0, 1.0, 0.1)?;
    let rho0 = thermal_state(&p)?;
    let (g, alpha) = (1e-4, 2.1);

    println!("power-law noise at g = {g}, alpha = {alpha}, T = 0.1");
    println!(
        "{:>10}  {:>11}  {:>9}  {:>9}  {:>9}  {:>9}",
        "tau", "beta(tau)", "ST", "BN", "CN", "PR"
    );
    for exp10 in [-1.0, 0.0, 1.0, 2.0, 3.0, 3.5, 4.0, 5.0] {
        let tau = 10f64.powf(exp10);
        let n = NoiseParams::new(g, alpha, tau)?;
        let rho_t = dephase_pl(&rho0, &n)?;
        let m = measure_all(&rho_t, &rho0)?;
        println!(
            "{tau:>10.1}  {:>11.4e}  {:>9.6}  {:>9.6}  {:>9.6}  {:>9.6}",
            beta_pl(&n), m.st, m.bn, m.cn, m.pr
        );
    }

    // The saturation point in closed form: zero out the outer coherence by
    // hand and measure that state directly.
    let n = NoiseParams::new(g, alpha, 1e7)?;
    let late = measure_all(&dephase_pl(&rho0, &n)?, &rho0)?;
    let mut floor = rho0.matrix().clone();
    floor[(0, 3)] = gravcat::C64::new(0.0, 0.0);
    floor[(3, 0)] = gravcat::C64::new(0.0, 0.0);
    let floor = gravcat::DensityMatrix::new(floor)?;
    let want = measure_all(&floor, &rho0)?;
    println!();
    println!("late-time values against the coherence-free state:");
    println!("  ST {:.9} vs {:.9}", late.st, want.st);
    println!("  PR {:.9} vs {:.9}", late.pr, want.pr);
    println!("  BN and CN are exactly zero: {} / {}", late.bn == 0.0, late.cn == 0.0);
    Ok(())
}
