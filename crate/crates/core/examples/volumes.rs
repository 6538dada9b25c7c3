//! Unit-ball volumes of `ℓ_p^n` and the per-dimension volume radius.

use lp_entropy::special::{gamma_growth_ratio, log_volume_lp_ball};
use lp_entropy::{Exponent, Result};

fn main() -> Result<()> {
    let ps = [0.5, 1.0, 2.0, f64::INFINITY].map(|p| Exponent::new(p).unwrap());
    println!("{:>5} {:>8} {:>14} {:>14}", "n", "p", "log vol", "vol^(1/n)");
    for n in [1usize, 2, 3, 10, 100, 1000] {
        for p in ps {
            let lv = log_volume_lp_ball(n, p)?;
            println!("{n:>5} {:>8} {lv:>14.6} {:>14.6}", p.to_string(), (lv / n as f64).exp());
        }
    }
    // vol^{1/n} ~ c n^{-1/p}; the normalised ratio tends to a constant
    for x in [0.5, 1.0, 2.0] {
        let r = gamma_growth_ratio(1e6, Exponent::new(x)?)?;
        println!("gamma growth ratio at p={x}: {r:.6}");
    }
    Ok(())
}
