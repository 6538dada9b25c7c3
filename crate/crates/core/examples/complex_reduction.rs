//! Complex entropy numbers through the real `2n`-dimensional embedding.

use lp_entropy::bounds::{complex_bounds, Effort};
use lp_entropy::spaces::{complex_lp_norm, interleave, lp_norm, ComplexVector};
use lp_entropy::{Exponent, Result};

fn main() -> Result<()> {
    let z = ComplexVector::new(vec![3.0, 0.0], vec![4.0, 1.0])?;
    let p = Exponent::new(1.0)?;
    println!("complex l1 norm {} vs real l1 norm {}", complex_lp_norm(&z, p), lp_norm(&interleave(&z), p));
    for (pf, qf) in [(1.0, f64::INFINITY), (2.0, 2.0), (1.0, 2.0)]{
        let c = complex_bounds(24, 8, Exponent::new(pf)?, Exponent::new(qf)?, Effort::Analytic)?;
        println!(
            "p={pf} q={qf} k=24 n=8: {:.5} <= e_k <= {:.5}, real: [{:.5}, {:.5}], rate {:.5}",
            c.lower, c.upper, c.real.lower, c.real.upper, c.rate
        );
    }
    Ok(())
}
