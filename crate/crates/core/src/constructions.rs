//! Explicit witnesses: separated point sets for lower bounds and covering
//! nets for upper bounds.
//!
//! Every greedy construction scans its candidates in a fixed order (grid
//! lexicographic, seeded sample order, lexicographic subsets), so the result
//! depends only on the inputs and the seed. Cardinality guarantees that only
//! need maximality survive this choice.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exponent::Exponent;
use crate::spaces::{norm, SpaceDescriptor, Vector};
use crate::special::log_binomial_unchecked;

/// Per-axis grid resolution used when none is given: step `2/32`.
pub const DEFAULT_GRID_RESOLUTION: usize = 32;

/// Upper limit on the number of grid points an exhaustive scan may visit.
pub const GRID_POINT_BUDGET: u64 = 2_000_000;

/// Slack for membership and separation re-checks.
pub const CHECK_SLACK: f64 = 1e-9;

/// How trustworthy a cover is.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verification {
    /// The construction itself guarantees that the whole target ball is covered.
    Proven,
    /// Every one of `samples` points drawn from the target ball was covered.
    Sampled { samples: u64, confidence: f64 },
    Unverified,
}

impl Verification {
    pub fn sampled(samples: u64) -> Self {
        Verification::Sampled {
            samples,
            confidence: 1.0 - 1.0 / samples.max(1) as f64,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Verification::Proven => "proven".into(),
            Verification::Sampled { samples, .. } => format!("sampled({samples})"),
            Verification::Unverified => "unverified".into(),
        }
    }
}

/// Which construction produced a witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Provenance {
    Canonical,
    Code { m: usize },
    SupportSystem { k: usize },
    GreedyGrid { resolution: usize },
    GreedyRandom { count: usize },
    OpNormBall,
    SelfCover { k: u64 },
    CubeGrid { cells_per_axis: usize },
    SparseSupport { m: usize, inner_card: usize },
    Interpolation { representatives: usize },
}

/// Where a greedy scan draws its candidates from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum CandidateSource {
    /// All points of `{-1 + 2i/resolution}^n` inside the ball, lexicographic.
    ExhaustiveGrid { resolution: usize },
    /// `count` uniform samples from the ball, in draw order.
    Random { count: usize },
}

/// Points of `B_p^n` that are pairwise more than `separation` apart in `ℓ_q`.
#[derive(Clone, Debug, PartialEq)]
pub struct PackingWitness {
    pub points: Vec<Vector>,
    pub host: SpaceDescriptor,
    pub metric_q: Exponent,
    pub separation: f64,
    pub provenance: Provenance,
    pub seed: Option<u64>,
}

impl PackingWitness {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Exhaustive re-check of ball membership and pairwise separation.
    pub fn validate(&self) -> Result<()> {
        let n = self.host.n();
        for (i, x) in self.points.iter().enumerate() {
            if x.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: x.len() });
            }
            let r = norm(x.as_slice(), self.host.p());
            if r > 1.0 + CHECK_SLACK {
                return domain(format!("packing point {i} has norm {r} > 1"));
            }
        }
        let q = self.metric_q;
        for i in 0..self.points.len() {
            for j in 0..i {
                let d = crate::spaces::distance(
                    self.points[i].as_slice(),
                    self.points[j].as_slice(),
                    q,
                );
                if d <= self.separation - CHECK_SLACK {
                    return domain(format!(
                        "points {j} and {i} are {d} apart, separation claims {}",
                        self.separation
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Balls of radius `radius` in `ℓ_q` around `centers` covering `B_p^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoveringWitness {
    pub centers: Vec<Vector>,
    pub radius: f64,
    pub target: SpaceDescriptor,
    pub metric_q: Exponent,
    pub verified: Verification,
    pub provenance: Provenance,
    pub seed: Option<u64>,
}

impl CoveringWitness {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// The single ball `B_q^n` of radius `max(1, n^{1/q-1/p})` around the origin.
    pub fn op_norm_ball(target: SpaceDescriptor, metric_q: Exponent) -> Self {
        CoveringWitness {
            centers: vec![Vector::zeros(target.n())],
            radius: crate::spaces::identity_op_norm(target.n(), target.p(), metric_q),
            target,
            metric_q,
            verified: Verification::Proven,
            provenance: Provenance::OpNormBall,
            seed: None,
        }
    }

    /// Index of the first center whose ball contains `x`.
    pub fn first_containing(&self, x: &[f64]) -> Option<usize> {
        self.centers
            .iter()
            .position(|c| within(x, c.as_slice(), self.metric_q, self.radius))
    }
}

/// `‖x − y‖_q ≤ r`, abandoning the sum as soon as it is exceeded.
pub fn within(x: &[f64], y: &[f64], q: Exponent, r: f64) -> bool {
    match q {
        Exponent::Infinity => x.iter().zip(y).all(|(a, b)| (a - b).abs() <= r),
        Exponent::Finite(e) => {
            let bound = if e == 1.0 { r } else { r.powf(e) };
            let mut acc = 0.0;
            for (a, b) in x.iter().zip(y) {
                let d = (a - b).abs();
                acc += if e == 1.0 { d } else { d.powf(e) };
                if acc > bound {
                    return false;
                }
            }
            true
        }
    }
}

/// Uniform sampler on `B_p^n`.
///
/// For finite `p`, draws `n` variates with density `∝ exp(−|t|^p)` (a
/// signed `Gamma(1/p)` variate raised to `1/p`), normalizes to the unit
/// sphere and scales by `U^{1/n}`. For `p = ∞` each coordinate is uniform.
pub struct BallSampler {
    n: usize,
    p: Exponent,
    gamma: Option<Gamma<f64>>,
    rng: ChaCha8Rng,
}

impl BallSampler {
    pub fn new(space: SpaceDescriptor, seed: u64) -> Self {
        let gamma = match space.p() {
            Exponent::Finite(p) => Some(Gamma::new(1.0 / p, 1.0).expect("positive shape")),
            Exponent::Infinity => None,
        };
        BallSampler {
            n: space.n(),
            p: space.p(),
            gamma,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn sample(&mut self) -> Vec<f64> {
        match (self.p, &self.gamma) {
            (Exponent::Finite(p), Some(gamma)) => loop {
                let mut t = Vec::with_capacity(self.n);
                let mut total = 0.0;
                for _ in 0..self.n {
                    let g: f64 = gamma.sample(&mut self.rng);
                    total += g;
                    let mag = g.powf(1.0 / p);
                    t.push(if self.rng.random::<bool>() { mag } else { -mag });
                }
                if total <= 0.0 || !total.is_finite() {
                    continue;
                }
                let u: f64 = self.rng.random();
                let scale = u.powf(1.0 / self.n as f64) / total.powf(1.0 / p);
                t.iter_mut().for_each(|c| *c *= scale);
                return t;
            },
            _ => (0..self.n)
                .map(|_| self.rng.random_range(-1.0..=1.0))
                .collect(),
        }
    }
}

/// Lexicographic grid points of `[-1, 1]^n` with step `2/resolution` that
/// lie in `B_p^n`.
pub fn grid_points(space: SpaceDescriptor, resolution: usize) -> Result<Vec<Vec<f64>>> {
    if resolution == 0 {
        return domain("grid resolution must be at least 1");
    }
    let n = space.n();
    let per_axis = (resolution + 1) as f64;
    let total = per_axis.powi(n as i32);
    if total > GRID_POINT_BUDGET as f64 {
        return Err(Error::Budget {
            what: "exhaustive grid",
            needed: total,
            budget: GRID_POINT_BUDGET,
        });
    }
    let axis: Vec<f64> = (0..=resolution)
        .map(|i| -1.0 + 2.0 * i as f64 / resolution as f64)
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let x: Vec<f64> = idx.iter().map(|&i| axis[i]).collect();
        if norm(&x, space.p()) <= 1.0 + 1e-12 {
            out.push(x);
        }
        // odometer, last axis fastest
        let mut d = n;
        loop {
            if d == 0 {
                return Ok(out);
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] <= resolution {
                break;
            }
            idx[d] = 0;
        }
    }
}

fn candidates(space: SpaceDescriptor, source: CandidateSource, seed: u64) -> Result<Vec<Vec<f64>>> {
    let pts = match source {
        CandidateSource::ExhaustiveGrid { resolution } => grid_points(space, resolution)?,
        CandidateSource::Random { count } => {
            let mut sampler = BallSampler::new(space, seed);
            (0..count).map(|_| sampler.sample()).collect()
        }
    };
    if pts.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    Ok(pts)
}

/// Greedy maximal `tau`-separated subset (in `ℓ_q`) of the candidates.
///
/// A candidate is accepted iff it is farther than `tau` from every point
/// accepted before it, so every rejected candidate lies within `tau` of the
/// result.
pub fn greedy_maximal_packing(
    host: SpaceDescriptor,
    metric_q: Exponent,
    tau: f64,
    source: CandidateSource,
    seed: u64,
) -> Result<PackingWitness> {
    if !(tau > 0.0) || !tau.is_finite() {
        return domain(format!("separation must be positive and finite, got {tau}"));
    }
    let cands = candidates(host, source, seed)?;
    let mut accepted: Vec<Vec<f64>> = Vec::new();
    for x in cands {
        if !accepted.iter().rev().any(|a| within(&x, a, metric_q, tau)) {
            accepted.push(x);
        }
    }
    let provenance = match source {
        CandidateSource::ExhaustiveGrid { resolution } => Provenance::GreedyGrid { resolution },
        CandidateSource::Random { count } => Provenance::GreedyRandom { count },
    };
    Ok(PackingWitness {
        points: accepted.into_iter().map(Vector::from_raw).collect(),
        host,
        metric_q,
        separation: tau,
        provenance,
        seed: matches!(source, CandidateSource::Random { .. }).then_some(seed),
    })
}

/// Turn a maximal packing into a cover with the same centers.
///
/// For a grid packing the radius is enlarged from `τ` to
/// `(τ^q̄ + δ^q̄)^{1/q̄}`, where `δ` bounds the `ℓ_q` distance from any ball
/// point to a grid point inside the ball; the result is then a proven cover
/// of the whole ball. A random packing keeps radius `τ` and is reported as
/// sampled over its candidates. Other packings are not maximal and yield an
/// unverified cover.
pub fn packing_to_cover(packing: &PackingWitness) -> CoveringWitness {
    let q = packing.metric_q;
    let tau = packing.separation;
    let (radius, verified) = match packing.provenance {
        Provenance::GreedyGrid { resolution } => {
            let step = 2.0 / resolution as f64;
            // the cube contains the rounded point; other balls need rounding toward 0
            let per_coord = if packing.host.p().is_infinite() { step / 2.0 } else { step };
            let mesh = per_coord * (packing.host.n() as f64).powf(q.recip());
            let b = q.bar();
            ((tau.powf(b) + mesh.powf(b)).powf(1.0 / b), Verification::Proven)
        }
        Provenance::GreedyRandom { count } => (tau, Verification::sampled(count as u64)),
        _ => (tau, Verification::Unverified),
    };
    CoveringWitness {
        centers: packing.points.clone(),
        radius,
        target: packing.host,
        metric_q: q,
        verified,
        provenance: packing.provenance.clone(),
        seed: packing.seed,
    }
}

/// The separation `τ = [2 / (2^{(k−1)p̄/n} − 1)]^{1/p̄}` of the self-cover of
/// an `n`-dimensional `p̄`-normed space; `None` when `k = 1`.
pub fn self_cover_separation(k: u64, n: usize, p: Exponent) -> Option<f64> {
    let b = p.bar();
    let growth = (((k - 1) as f64) * b / n as f64 * std::f64::consts::LN_2).exp_m1();
    (growth > 0.0).then(|| (2.0 / growth).powf(1.0 / b))
}

/// A cover of `B_p^n` by at most `2^{k−1}` translates of a dilate of itself.
///
/// Greedily packs the grid at the separation of
/// [`self_cover_separation`]; the volume comparison bounds the packing size
/// by `2^{k−1}`. Falls back to the unit ball around the origin when that
/// separation is at least 1.
pub fn self_cover(k: u64, space: SpaceDescriptor, resolution: usize) -> Result<CoveringWitness> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    let p = space.p();
    let tau = match self_cover_separation(k, space.n(), p) {
        Some(t) if t < 1.0 => t,
        _ => return Ok(CoveringWitness::op_norm_ball(space, p)),
    };
    let packing = greedy_maximal_packing(
        space,
        p,
        tau,
        CandidateSource::ExhaustiveGrid { resolution },
        0,
    )?;
    if !count_fits(packing.len() as u64, k) {
        return Err(Error::Domain(format!(
            "self-cover packing has {} points, more than 2^{}",
            packing.len(),
            k - 1
        )));
    }
    let mut cover = packing_to_cover(&packing);
    cover.provenance = Provenance::SelfCover { k };
    Ok(cover)
}

/// `count ≤ 2^{k−1}` without overflow.
pub fn count_fits(count: u64, k: u64) -> bool {
    k > 64 || count <= 1u64 << (k - 1)
}

/// `count > 2^{k−1}` without overflow.
pub fn count_exceeds(count: u64, k: u64) -> bool {
    !count_fits(count, k)
}

/// Proven cover of `B_p^n` in `ℓ_∞^n` by the midpoints of the
/// `cells_per_axis^n` cubes of side `2/cells_per_axis` that meet the ball.
pub fn cube_grid_cover(space: SpaceDescriptor, cells_per_axis: usize) -> Result<CoveringWitness> {
    if cells_per_axis == 0 {
        return domain("cells_per_axis must be at least 1");
    }
    let n = space.n();
    let total = (cells_per_axis as f64).powi(n as i32);
    if total > GRID_POINT_BUDGET as f64 {
        return Err(Error::Budget {
            what: "cube grid cover",
            needed: total,
            budget: GRID_POINT_BUDGET,
        });
    }
    let c = cells_per_axis as f64;
    let width = 2.0 / c;
    let mut centers = Vec::new();
    let mut idx = vec![0usize; n];
    'outer: loop {
        let mut mid = Vec::with_capacity(n);
        let mut nearest = Vec::with_capacity(n);
        for &i in &idx {
            let lo = -1.0 + i as f64 * width;
            let hi = lo + width;
            mid.push(lo + width / 2.0);
            nearest.push(if lo > 0.0 {
                lo
            } else if hi < 0.0 {
                hi
            } else {
                0.0
            });
        }
        if norm(&nearest, space.p()) <= 1.0 + 1e-12 {
            centers.push(Vector::from_raw(mid));
        }
        let mut d = n;
        loop {
            if d == 0 {
                break 'outer;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < cells_per_axis {
                break;
            }
            idx[d] = 0;
        }
    }
    Ok(CoveringWitness {
        centers,
        radius: 1.0 / c,
        target: space,
        metric_q: Exponent::INF,
        verified: Verification::Proven,
        provenance: Provenance::CubeGrid { cells_per_axis },
        seed: None,
    })
}

/// A word of `{−1, 0, 1}^n` stored as the bitmasks of its `+1` and `−1`
/// positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TernaryWord {
    pub plus: u64,
    pub minus: u64,
}

impl TernaryWord {
    pub fn weight(&self) -> u32 {
        (self.plus | self.minus).count_ones()
    }

    pub fn hamming(&self, other: &TernaryWord) -> u32 {
        ((self.plus ^ other.plus) | (self.minus ^ other.minus)).count_ones()
    }

    pub fn to_coords(&self, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| {
                let bit = 1u64 << i;
                if self.plus & bit != 0 {
                    1.0
                } else if self.minus & bit != 0 {
                    -1.0
                } else {
                    0.0
                }
            })
            .collect()
    }
}

/// Ternary words of weight `2m` with pairwise Hamming distance `> m`.
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryCode {
    pub n: usize,
    pub m: usize,
    pub words: Vec<TernaryWord>,
}

impl TernaryCode {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Guaranteed size `(n / 2m)^m` of any maximal code.
    pub fn guaranteed_size(n: usize, m: usize) -> f64 {
        (n as f64 / (2 * m) as f64).powi(m as i32)
    }
}

/// Advance `idx` (strictly increasing, values `< n`) to the next subset in
/// lexicographic order; `false` once exhausted.
fn next_subset(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn subset_mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

fn check_budget(what: &'static str, log_count: f64, budget: u64) -> Result<()> {
    if log_count > (budget as f64).ln() + 1e-9 {
        return Err(Error::Budget {
            what,
            needed: log_count.exp(),
            budget,
        });
    }
    Ok(())
}

/// Greedy ternary code over `H_m = {x ∈ {−1,0,1}^n : ‖x‖₁ = 2m}`.
///
/// Candidates run over supports in lexicographic order and, within a
/// support, over sign patterns in binary order (bit `j` set means the `j`-th
/// support position is `−1`). The scan runs to saturation, so the code is
/// maximal and has at least `(n/2m)^m` words.
pub fn hamming_code(n: usize, m: usize, budget: u64) -> Result<TernaryCode> {
    if m == 0 || 4 * m > n {
        return domain(format!("hamming_code needs 1 <= m <= n/4, got n={n}, m={m}"));
    }
    if n > 64 {
        return domain("hamming_code supports n <= 64");
    }
    let w = 2 * m;
    let log_count = log_binomial_unchecked(n as u64, w as u64) + w as f64 * std::f64::consts::LN_2;
    check_budget("ternary code candidates", log_count, budget)?;

    let threshold = m as u32;
    let mut words: Vec<TernaryWord> = Vec::new();
    // words at distance <= m agree in sign on at least m common positions,
    // so indexing every signed m-subset finds all conflicts
    let mut index: HashMap<TernaryWord, Vec<u32>> = HashMap::new();
    let mut keys: Vec<TernaryWord> = Vec::new();
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        for signs in 0u64..(1u64 << w) {
            let mut word = TernaryWord { plus: 0, minus: 0 };
            for (j, &i) in idx.iter().enumerate() {
                if signs >> j & 1 == 1 {
                    word.minus |= 1u64 << i;
                } else {
                    word.plus |= 1u64 << i;
                }
            }
            signed_subsets(&word, &idx, m, &mut keys);
            let conflict = keys.iter().any(|key| {
                index.get(key).is_some_and(|ids| {
                    ids.iter().any(|&a| words[a as usize].hamming(&word) <= threshold)
                })
            });
            if !conflict {
                for key in &keys {
                    index.entry(*key).or_default().push(words.len() as u32);
                }
                words.push(word);
            }
        }
        if !next_subset(&mut idx, n) {
            break;
        }
    }
    Ok(TernaryCode { n, m, words })
}

/// The restrictions of `word` to every `m`-subset of its support `support`.
fn signed_subsets(word: &TernaryWord, support: &[usize], m: usize, keys: &mut Vec<TernaryWord>) {
    keys.clear();
    let mut sel: Vec<usize> = (0..m).collect();
    loop {
        let mask = sel.iter().fold(0u64, |acc, &j| acc | 1u64 << support[j]);
        keys.push(TernaryWord { plus: word.plus & mask, minus: word.minus & mask });
        if !next_subset(&mut sel, support.len()) {
            break;
        }
    }
}

/// Scale the code into `B_p^n`: points `(2m)^{−1/p} x` with `ℓ_q` separation
/// `2^{−1/p} m^{1/q − 1/p}`.
pub fn code_packing(code: &TernaryCode, p: Exponent, q: Exponent) -> Result<PackingWitness> {
    let scale = ((2 * code.m) as f64).powf(-p.recip());
    let separation = 2f64.powf(-p.recip()) * (code.m as f64).powf(q.recip() - p.recip());
    Ok(PackingWitness {
        points: code
            .words
            .iter()
            .map(|w| Vector::from_raw(w.to_coords(code.n).into_iter().map(|c| c * scale).collect()))
            .collect(),
        host: SpaceDescriptor::new(code.n, p)?,
        metric_q: q,
        separation,
        provenance: Provenance::Code { m: code.m },
        seed: None,
    })
}

/// `k`-subsets of `{0, …, n−1}` with pairwise intersections `< k/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportSystem {
    pub n: usize,
    pub k: usize,
    pub sets: Vec<u64>,
}

impl SupportSystem {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Guaranteed size `(n / 4k)^{k/2}`.
    pub fn guaranteed_size(n: usize, k: usize) -> f64 {
        (n as f64 / (4 * k) as f64).powf(k as f64 / 2.0)
    }

    pub fn members(&self, set: u64) -> Vec<usize> {
        (0..self.n).filter(|i| set >> i & 1 == 1).collect()
    }
}

/// Greedy set system over lexicographic `k`-subsets of `{0, …, n−1}`.
pub fn support_system(n: usize, k: usize, budget: u64) -> Result<SupportSystem> {
    if k == 0 || k > n {
        return domain(format!("support_system needs 1 <= k <= n, got n={n}, k={k}"));
    }
    if n > 64 {
        return domain("support_system supports n <= 64");
    }
    check_budget("support subsets", log_binomial_unchecked(n as u64, k as u64), budget)?;
    let mut sets: Vec<u64> = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let t = subset_mask(&idx);
        if !sets.iter().rev().any(|s| 2 * (s & t).count_ones() as usize >= k) {
            sets.push(t);
        }
        if !next_subset(&mut idx, n) {
            break;
        }
    }
    Ok(SupportSystem { n, k, sets })
}

/// Normalized indicators `k^{−1/p} χ_T`; distinct sets differ in at least
/// `k + 1` coordinates, giving `ℓ_q` separation `k^{−1/p} (k+1)^{1/q}`.
pub fn support_packing(system: &SupportSystem, p: Exponent, q: Exponent) -> Result<PackingWitness> {
    let k = system.k as f64;
    let scale = k.powf(-p.recip());
    let separation = scale * (k + 1.0).powf(q.recip());
    Ok(PackingWitness {
        points: system
            .sets
            .iter()
            .map(|&s| {
                Vector::from_raw(
                    (0..system.n)
                        .map(|i| if s >> i & 1 == 1 { scale } else { 0.0 })
                        .collect(),
                )
            })
            .collect(),
        host: SpaceDescriptor::new(system.n, p)?,
        metric_q: q,
        separation,
        provenance: Provenance::SupportSystem { k: system.k },
        seed: None,
    })
}

/// The unit vectors `e^1, …, e^n`, pairwise `2^{1/q}` apart in `ℓ_q`.
pub fn canonical_packing(n: usize, p: Exponent, q: Exponent) -> Result<PackingWitness> {
    if n < 2 {
        return domain("canonical packing needs n >= 2");
    }
    Ok(PackingWitness {
        points: (0..n).map(|i| Vector::unit(n, i)).collect(),
        host: SpaceDescriptor::new(n, p)?,
        metric_q: q,
        separation: 2f64.powf(q.recip()),
        provenance: Provenance::Canonical,
        seed: None,
    })
}

/// Lift a cover of `B_p^m` in `ℓ_∞^m` to a cover of `B_p^n` in `ℓ_∞^n` by
/// placing every inner center on every `m`-element support.
///
/// Any `x ∈ B_p^n` is within `m^{−1/p}` of its best `m`-term approximation,
/// whose restriction to its support lies in `B_p^m`; the radius is therefore
/// `m^{−1/p} + inner.radius`. A proven inner cover gives a proven result.
pub fn sparse_support_cover(
    n: usize,
    m: usize,
    inner: &CoveringWitness,
    p: Exponent,
    budget: u64,
) -> Result<CoveringWitness> {
    if m == 0 || m > n {
        return domain(format!("sparse_support_cover needs 1 <= m <= n, got n={n}, m={m}"));
    }
    if n > 64 {
        return domain("sparse_support_cover supports n <= 64");
    }
    if inner.target.n() != m {
        return Err(Error::DimensionMismatch { expected: m, got: inner.target.n() });
    }
    if inner.target.p() != p || !inner.metric_q.is_infinite() {
        return domain("inner cover must cover B_p^m in the sup-norm");
    }
    let log_card = log_binomial_unchecked(n as u64, m as u64) + (inner.len() as f64).ln();
    check_budget("sparse support cover", log_card, budget)?;

    let mut centers = Vec::new();
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        for c in &inner.centers {
            let mut v = vec![0.0; n];
            for (j, &i) in idx.iter().enumerate() {
                v[i] = c.as_slice()[j];
            }
            centers.push(Vector::from_raw(v));
        }
        if !next_subset(&mut idx, n) {
            break;
        }
    }
    Ok(CoveringWitness {
        centers,
        radius: (m as f64).powf(-p.recip()) + inner.radius,
        target: SpaceDescriptor::new(n, p)?,
        metric_q: Exponent::INF,
        verified: match inner.verified {
            Verification::Proven => Verification::Proven,
            _ => Verification::Unverified,
        },
        provenance: Provenance::SparseSupport { m, inner_card: inner.len() },
        seed: inner.seed,
    })
}

/// Combine a cover of `B_p^n` in `ℓ_p` (radius `r₀`) and one in `ℓ_∞`
/// (radius `r₁`) into a cover in `ℓ_q`, `p < q < ∞`, of radius
/// `2^{1/p̄} r₀^{p/q} r₁^{1−p/q}`.
///
/// Each candidate is assigned to the first ball of either input containing
/// it; the first candidate landing in each nonempty cell `(i, j)` becomes
/// that cell's center. Candidates covered by neither input are skipped.
pub fn interpolation_cover(
    cover_p: &CoveringWitness,
    cover_inf: &CoveringWitness,
    q: Exponent,
    representatives: CandidateSource,
    seed: u64,
) -> Result<CoveringWitness> {
    let target = cover_p.target;
    if cover_inf.target.n() != target.n() {
        return Err(Error::DimensionMismatch {
            expected: target.n(),
            got: cover_inf.target.n(),
        });
    }
    let p = target.p();
    if cover_inf.target.p() != p || cover_p.metric_q != p || !cover_inf.metric_q.is_infinite() {
        return domain("interpolation needs covers of the same B_p^n in the l_p and sup metrics");
    }
    let (pf, qf) = match (p, q) {
        (Exponent::Finite(pf), Exponent::Finite(qf)) if pf < qf => (pf, qf),
        _ => return domain("interpolation needs p < q < inf"),
    };
    let theta = pf / qf;
    let radius = 2f64.powf(1.0 / p.bar())
        * cover_p.radius.powf(theta)
        * cover_inf.radius.powf(1.0 - theta);

    let cands = candidates(target, representatives, seed)?;
    let mut cells: HashMap<(usize, usize), usize> = HashMap::new();
    let mut centers = Vec::new();
    let mut covered = 0u64;
    for x in cands {
        let (Some(i), Some(j)) = (cover_p.first_containing(&x), cover_inf.first_containing(&x))
        else {
            continue;
        };
        covered += 1;
        cells.entry((i, j)).or_insert_with(|| {
            centers.push(Vector::from_raw(x));
            centers.len() - 1
        });
    }
    if centers.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let count = centers.len();
    Ok(CoveringWitness {
        centers,
        radius,
        target,
        metric_q: q,
        verified: Verification::sampled(covered),
        provenance: Provenance::Interpolation { representatives: count },
        seed: matches!(representatives, CandidateSource::Random { .. }).then_some(seed),
    })
}
