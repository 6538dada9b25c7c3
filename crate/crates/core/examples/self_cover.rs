//! Covers of a unit ball by translates of a smaller dilate of itself.

use lp_entropy::bounds::{self_cover_upper, verify_cover};
use lp_entropy::constructions::self_cover;
use lp_entropy::spaces::SpaceDescriptor;
use lp_entropy::{Exponent, Result};

fn main() -> Result<()> {
    for (p, k) in [(f64::INFINITY, 5u64), (1.0, 5), (0.5, 9), (2.0, 9)] {
        let space = SpaceDescriptor::new(2, Exponent::new(p)?)?;
        let mut cover = self_cover(k, space, 128)?;
        let report = verify_cover(&mut cover, 50_000, 7);
        println!(
            "p={p} k={k}: {} centers, radius {:.4} (analytic {:.4}), {} failures, {}",
            cover.len(),
            cover.radius,
            self_cover_upper(k, 2, space.p()),
            report.failures,
            cover.verified.label()
        );
    }
    Ok(())
}
