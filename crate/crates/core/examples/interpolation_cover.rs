//! Mixing an `ℓ_p` cover and a sup-norm cover into an `ℓ_q` cover.

use lp_entropy::bounds::{interpolation_upper, verify_cover};
use lp_entropy::constructions::{cube_grid_cover, interpolation_cover, self_cover, CandidateSource};
use lp_entropy::spaces::SpaceDescriptor;
use lp_entropy::{Exponent, Result};

fn main() -> Result<()> {
    let (p, q) = (Exponent::new(1.0)?, Exponent::new(2.0)?);
    let space = SpaceDescriptor::new(2, p)?;
    let cover_p = self_cover(5, space, 16)?;
    let cover_inf = cube_grid_cover(space, 4)?;
    let mut cover = interpolation_cover(
        &cover_p,
        &cover_inf,
        q,
        CandidateSource::Random { count: 50_000 },
        11,
    )?;
    let report = verify_cover(&mut cover, 50_000, 12);
    println!(
        "{} x {} cells -> {} centers, radius {:.4}, {} failures, {}",
        cover_p.len(),
        cover_inf.len(),
        cover.len(),
        cover.radius,
        report.failures,
        cover.verified.label()
    );
    for k in [64u64, 128, 256] {
        if let Some((v, k1)) = interpolation_upper(k, 16, p, q) {
            println!("analytic n=16 k={k}: {v:.4} with k1={k1}");
        }
    }
    Ok(())
}
