//! Certified lower and upper bounds for a single entropy number.

use lp_entropy::bounds::{certified_bounds, Effort};
use lp_entropy::{Exponent, Result};

fn main() -> Result<()> {
    let (p, q) = (Exponent::new(1.0)?, Exponent::INF);
    for (k, n) in [(1u64, 16usize), (4, 16), (16, 16), (64, 16)] {
        let c = certified_bounds(k, n, p, q, Effort::Analytic)?;
        println!(
            "k={k:>3} n={n}: {:.5} ({}) <= e_k <= {:.5} ({}), rate {:.5} [{}]",
            c.lower, c.lower_method, c.upper, c.upper_method, c.rate, c.regime
        );
    }
    let c = certified_bounds(6, 3, p, q, Effort::Constructive { seed: 1, samples: 20_000 })?;
    println!("constructive k=6 n=3: upper {:.5} from {} ({})", c.upper, c.upper_method, c.upper_source);
    println!("{}", serde_json::to_string_pretty(&c).expect("certificate serialises"));
    Ok(())
}
