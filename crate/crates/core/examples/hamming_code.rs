//! Greedy ternary codes of fixed weight and the packings they induce.

use lp_entropy::constructions::{code_packing, hamming_code, TernaryCode};
use lp_entropy::{Exponent, Result};

fn main() -> Result<()> {
    for (n, m) in [(8usize, 2usize), (16, 2), (12, 3), (24, 2)] {
        let code = hamming_code(n, m, 1_000_000)?;
        let packing = code_packing(&code, Exponent::new(1.0)?, Exponent::INF)?;
        packing.validate()?;
        println!(
            "n={n:>2} m={m}: {} words (guaranteed {:.1}), separation {:.4}",
            code.len(),
            TernaryCode::guaranteed_size(n, m),
            packing.separation
        );
    }
    Ok(())
}
