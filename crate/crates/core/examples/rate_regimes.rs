//! The two-sided rate of entropy numbers across its regimes.

use lp_entropy::special::theoretical_rate;
use lp_entropy::{Exponent, Result};

fn main() -> Result<()> {
    let n = 64;
    for (p, q) in [(0.5, 2.0), (1.0, f64::INFINITY), (2.0, 1.0)] {
        let (p, q) = (Exponent::new(p)?, Exponent::new(q)?);
        println!("p={p} q={q} n={n}");
        for k in [1u64, 3, 6, 16, 64, 65, 128, 256] {
            let (rate, regime) = theoretical_rate(k, n, p, q)?;
            println!("  k={k:>4} {regime:>8} {rate:.6e}");
        }
    }
    Ok(())
}
