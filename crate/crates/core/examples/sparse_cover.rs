//! Covers of `B_p^n` in the sup-norm built from covers of sparse supports.

use lp_entropy::bounds::{sparse_cover_upper, verify_cover};
use lp_entropy::constructions::{cube_grid_cover, sparse_support_cover};
use lp_entropy::spaces::SpaceDescriptor;
use lp_entropy::{Exponent, Result};

fn main() -> Result<()> {
    let p = Exponent::new(1.0)?;
    let (n, m) = (6usize, 2usize);
    let inner = cube_grid_cover(SpaceDescriptor::new(m, p)?, 4)?;
    let mut cover = sparse_support_cover(n, m, &inner, p, 1_000_000)?;
    let report = verify_cover(&mut cover, 100_000, 3);
    println!(
        "n={n} m={m}: {} centers, radius {:.4}, max sampled distance {:.4}, {}",
        cover.len(),
        cover.radius,
        report.max_distance,
        cover.verified.label()
    );
    for k in [8u64, 16, 32, 64] {
        if let Some(s) = sparse_cover_upper(k, 32, p, Exponent::INF) {
            println!("analytic n=32 k={k}: {:.4} with m={} l={}", s.value, s.m, s.l);
        }
    }
    Ok(())
}
