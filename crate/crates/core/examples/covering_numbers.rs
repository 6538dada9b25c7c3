//! Upper bounds on covering numbers `N(B_p^n, r B_q^n)`.

use lp_entropy::bounds::covering_number_upper;
use lp_entropy::{Exponent, Result};

fn main() -> Result<()> {
    let (p, q) = (Exponent::new(1.0)?, Exponent::INF);
    for n in [2usize, 8, 32] {
        for r in [0.5, 0.25, 0.1] {
            let c = covering_number_upper(n, p, q, r)?;
            println!(
                "n={n:>2} r={r:<4}: log2 N <= {:.2} (k={}, e_k <= {:.4} via {})",
                c.log2_count, c.k, c.upper, c.upper_method
            );
        }
    }
    Ok(())
}
