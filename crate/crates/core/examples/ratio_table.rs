//! Ratios of certified bounds to the rate over a family of dimensions.

use std::io::stdout;

use lp_entropy::bounds::{ratio_table, Effort, KRule};
use lp_entropy::formats::write_ratio_csv;
use lp_entropy::{Exponent, Result};

fn main() -> Result<()> {
    let rows = ratio_table(
        Exponent::new(1.0)?,
        Exponent::INF,
        &[4, 8, 16],
        "linear:2".parse::<KRule>()?,
        Effort::Analytic,
    )?;
    write_ratio_csv(&rows, stdout().lock())
}
