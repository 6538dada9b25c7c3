//! Certified two-sided bounds on `e_k(id: ℓ_p^n → ℓ_q^n)`.
//!
//! Every analytic value below is a valid bound on its own; a certificate
//! keeps the largest lower and the smallest upper together with the method
//! that produced each. Witness-backed values enter only in constructive
//! effort, and sampled ones are kept apart from the proven sandwich.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::constructions::{
    self, code_packing, count_exceeds, count_fits, cube_grid_cover, greedy_maximal_packing,
    hamming_code, interpolation_cover, packing_to_cover, self_cover, self_cover_separation,
    sparse_support_cover, BallSampler, CandidateSource, CoveringWitness, PackingWitness,
    Verification,
};
use crate::error::{domain, Error, Result};
use crate::exponent::Exponent;
use crate::spaces::{identity_op_norm, interleave_distortion, SpaceDescriptor};
use crate::special::{
    complex_theoretical_rate, log2_binomial, log_volume_unchecked, theoretical_rate, RateRegime,
};

/// Candidate budget for ternary codes built in constructive effort.
pub const CODE_BUDGET: u64 = 1_000_000;

/// Center budget for sparse-support covers built in constructive effort.
pub const SPARSE_BUDGET: u64 = 2_000_000;

/// Relative slack of a sampled nearest-center distance over the radius.
pub const VERIFY_SLACK: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerMethod {
    Volume,
    Canonical,
    CodePacking,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperMethod {
    OpNorm,
    SelfCover,
    SparseCover,
    Interpolation,
    PackingCover,
    Oracle,
}

impl LowerMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            LowerMethod::Volume => "volume",
            LowerMethod::Canonical => "canonical",
            LowerMethod::CodePacking => "code_packing",
            LowerMethod::Oracle => "oracle",
        }
    }
}

impl UpperMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            UpperMethod::OpNorm => "op_norm",
            UpperMethod::SelfCover => "self_cover",
            UpperMethod::SparseCover => "sparse_cover",
            UpperMethod::Interpolation => "interpolation",
            UpperMethod::PackingCover => "packing_cover",
            UpperMethod::Oracle => "oracle",
        }
    }
}

impl std::fmt::Display for LowerMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::fmt::Display for UpperMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An upper bound backed by a sampled (not proven) cover.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledUpper {
    pub value: f64,
    pub method: UpperMethod,
    pub verified: Verification,
}

/// Proven bracket `lower ≤ e_k ≤ upper` with the theoretical rate alongside.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub k: u64,
    pub n: usize,
    pub p: Exponent,
    pub q: Exponent,
    pub lower: f64,
    pub lower_method: LowerMethod,
    pub upper: f64,
    pub upper_method: UpperMethod,
    /// `"analytic"` or `"witness"`: whether the proven upper came from a built cover.
    pub upper_source: String,
    pub sampled_upper: Option<SampledUpper>,
    pub rate: f64,
    pub regime: RateRegime,
    pub lower_over_rate: f64,
    pub upper_over_rate: f64,
    /// Constructions that were refused and replaced by their analytic value.
    pub downgrades: Vec<String>,
}

impl BoundCertificate {
    /// `lower ≤ upper·(1 + 1e-9)`, `lower > 0` and `upper < ∞`.
    pub fn is_consistent(&self) -> bool {
        self.lower > 0.0 && self.upper.is_finite() && self.lower <= self.upper * (1.0 + 1e-9)
    }

    fn refresh_ratios(&mut self) {
        self.lower_over_rate = self.lower / self.rate;
        self.upper_over_rate = self.upper / self.rate;
    }

    fn offer_lower(&mut self, value: f64, method: LowerMethod) {
        if value > self.lower {
            self.lower = value;
            self.lower_method = method;
        }
    }

    fn offer_upper(&mut self, value: f64, method: UpperMethod, source: &str) {
        if value < self.upper {
            self.upper = value;
            self.upper_method = method;
            self.upper_source = source.into();
        }
    }
}

/// How hard [`certified_bounds`] works.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "effort", rename_all = "snake_case")]
pub enum Effort {
    /// Closed-form bounds only.
    Analytic,
    /// Also build witnesses and verify them with `samples` points.
    Constructive { seed: u64, samples: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundOptions {
    pub effort: Effort,
    /// Replace refused constructions by analytic values instead of failing.
    pub fallback: bool,
    /// Also intersect with [`oracle_entropy`] where it applies.
    pub oracle: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            effort: Effort::Analytic,
            fallback: true,
            oracle: false,
        }
    }
}

fn check_params(k: u64, n: usize) -> Result<()> {
    if k == 0 || n == 0 {
        return domain(format!("bounds need k >= 1 and n >= 1, got k={k}, n={n}"));
    }
    Ok(())
}

/// `2^{−(k−1)/n} (vol B_p^n / vol B_q^n)^{1/n}`.
pub fn lower_bound_volume(k: u64, n: usize, p: Exponent, q: Exponent) -> f64 {
    let ratio = log_volume_unchecked(n, p) - log_volume_unchecked(n, q);
    // same factorisation as the rate, so p = q reproduces it bit for bit
    2f64.powf(-((k - 1) as f64) / n as f64) * (ratio / n as f64).exp()
}

/// `separation / 2^{1/q̄}` when the packing has more than `2^{k−1}` points.
pub fn lower_bound_from_packing(w: &PackingWitness, k: u64) -> Option<f64> {
    count_exceeds(w.len() as u64, k).then(|| w.separation / 2f64.powf(1.0 / w.metric_q.bar()))
}

/// The cover's radius when it has at most `2^{k−1}` centers; the status is
/// `w.verified`.
pub fn upper_bound_from_cover(w: &CoveringWitness, k: u64) -> Option<f64> {
    count_fits(w.len() as u64, k).then_some(w.radius)
}

/// `min(1, 4^{1/p̄} 2^{−(k−1)/n})`.
pub fn self_cover_upper(k: u64, n: usize, p: Exponent) -> f64 {
    let b = p.bar();
    (2.0 / b - (k - 1) as f64 / n as f64).exp2().min(1.0)
}

/// Canonical-vector bound `2^{1/q − 1/q̄}`, valid while `2^{k−1} < n`.
pub fn canonical_lower(k: u64, n: usize, q: Exponent) -> Option<f64> {
    (k <= 64 && (1u128 << (k - 1)) < n as u128).then(|| 2f64.powf(q.recip() - 1.0 / q.bar()))
}

/// Best code-packing bound `2^{−1/p−1/q̄} m^{1/q−1/p}` over `1 ≤ m ≤ n/4`
/// whose guaranteed code size `(n/2m)^m` exceeds `2^{k−1}`; returns the
/// value and `m`.
pub fn code_lower(k: u64, n: usize, p: Exponent, q: Exponent) -> Option<(f64, usize)> {
    let mut best: Option<(f64, usize)> = None;
    for m in 1..=n / 4 {
        let log2_size = m as f64 * (n as f64 / (2 * m) as f64).log2();
        if log2_size <= (k - 1) as f64 + 1e-9 {
            continue;
        }
        let v = code_value(m, p, q);
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, m));
        }
    }
    best
}

fn code_value(m: usize, p: Exponent, q: Exponent) -> f64 {
    2f64.powf(-p.recip() - 1.0 / q.bar()) * (m as f64).powf(q.recip() - p.recip())
}

/// Volume-comparison cover radius
/// `τ = 2^{1/q̄} / [2^{(k−1)p̄/n} V^{−p̄/n} − ν^{p̄}]^{1/p̄}` with
/// `V = vol B_p^n / vol B_q^n` and `ν = ‖id: ℓ_q^n → ℓ_p^n‖`; `None` while
/// the bracket is not positive.
pub fn packing_cover_upper(k: u64, n: usize, p: Exponent, q: Exponent) -> Option<f64> {
    let ratio = log_volume_unchecked(n, p) - log_volume_unchecked(n, q);
    packing_cover_tau(k, n, ratio, identity_op_norm(n, q, p), p.bar(), q.bar())
}

fn packing_cover_tau(k: u64, dim: usize, log_ratio: f64, nu: f64, pb: f64, qb: f64) -> Option<f64> {
    let a = pb / dim as f64 * ((k - 1) as f64 * LN_2 - log_ratio);
    let b = pb * nu.ln();
    if a <= b {
        return None;
    }
    let log_bracket = a + (-(b - a).exp()).ln_1p();
    Some(2f64.powf(1.0 / qb) * (-log_bracket / pb).exp())
}

/// Largest integer `j` with `j^m ≤ 2^e`.
pub fn floor_root_pow2(e: u64, m: u64) -> f64 {
    if m == 1 {
        return (e as f64).exp2();
    }
    let guess = (e as f64 / m as f64).exp2();
    if e >= 127 || guess >= 1e15 {
        return (guess * (1.0 - 1e-12)).floor().max(1.0);
    }
    let fits = |j: u128| j.checked_pow(m as u32).is_some_and(|v| v <= 1u128 << e);
    let mut j = guess.floor().max(1.0) as u128;
    while j > 1 && !fits(j) {
        j -= 1;
    }
    while fits(j + 1) {
        j += 1;
    }
    j as f64
}

/// `⌈log₂ C(n, m)⌉`, exact whenever the binomial fits in 128 bits.
fn ceil_log2_binomial(n: u64, m: u64) -> u64 {
    let m = m.min(n - m);
    let mut c: u128 = 1;
    for i in 0..m {
        match c.checked_mul((n - i) as u128) {
            Some(v) => c = v / (i + 1) as u128,
            None => {
                let l = log2_binomial(n, m).expect("m <= n");
                return (l - 1e-9).ceil().max(0.0) as u64;
            }
        }
    }
    if c <= 1 {
        0
    } else {
        (128 - (c - 1).leading_zeros()) as u64
    }
}

/// Best bound on `e_l(id: ℓ_p^m → ℓ_q^m)`, `p < q`, from the non-sparse
/// methods: the unit ball itself, the sup-grid `m^{1/q}/⌊2^{(l−1)/m}⌋`,
/// the self-cover and the volume cover.
fn inner_upper(l: u64, m: usize, p: Exponent, q: Exponent) -> f64 {
    let j = floor_root_pow2(l - 1, m as u64);
    let cube = if j.is_finite() {
        (m as f64).powf(q.recip()) / j
    } else {
        f64::INFINITY
    };
    let tau = packing_cover_upper(l, m, p, q).unwrap_or(f64::INFINITY);
    cube.min(tau).min(self_cover_upper(l, m, p)).min(1.0)
}

/// A sparse-support parameter choice `(m, l)` and its radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SparseChoice {
    pub value: f64,
    pub m: usize,
    pub l: u64,
}

/// `‖x − x_m‖_q ≤ (m+1)^{1/q−1/p}` for the best `m`-term approximation
/// `x_m` of `x ∈ B_p^n`, `p < q`; zero when `m = n`.
pub fn best_m_term_error(n: usize, m: usize, p: Exponent, q: Exponent) -> f64 {
    if m >= n {
        0.0
    } else {
        ((m + 1) as f64).powf(q.recip() - p.recip())
    }
}

/// Sparse-support bound on `e_k(id: ℓ_p^n → ℓ_q^n)`, `p < q`: an inner
/// cover of `B_p^m` with `2^{l−1}` centers placed on all `C(n,m)` supports,
/// with the largest `l` such that `C(n,m) 2^{l−1} ≤ 2^{k−1}`, minimized
/// over `m`. The tail `x − x_m` and the inner error have disjoint supports,
/// so the radius is `(σ^q + r^q)^{1/q}` (`max(σ, r)` for `q = ∞`).
pub fn sparse_cover_upper(k: u64, n: usize, p: Exponent, q: Exponent) -> Option<SparseChoice> {
    if !(p < q) {
        return None;
    }
    let mut best: Option<SparseChoice> = None;
    for m in 1..=n {
        let need = ceil_log2_binomial(n as u64, m as u64);
        if need >= k {
            continue;
        }
        let l = k - need;
        let sigma = best_m_term_error(n, m, p, q);
        let r = inner_upper(l, m, p, q);
        let value = match q {
            Exponent::Infinity => sigma.max(r),
            Exponent::Finite(qf) => (sigma.powf(qf) + r.powf(qf)).powf(1.0 / qf),
        };
        if best.is_none_or(|b| value < b.value) {
            best = Some(SparseChoice { value, m, l });
        }
    }
    best
}

/// Best analytic bound on `e_k(id: ℓ_p^n → ℓ_∞^n)` and its method.
pub fn sup_upper(k: u64, n: usize, p: Exponent) -> (f64, UpperMethod) {
    let mut best = (1.0, UpperMethod::OpNorm);
    let mut offer = |v: f64, m: UpperMethod| {
        if v < best.0 {
            best = (v, m);
        }
    };
    offer(self_cover_upper(k, n, p), UpperMethod::SelfCover);
    if let Some(t) = packing_cover_upper(k, n, p, Exponent::INF) {
        offer(t, UpperMethod::PackingCover);
    }
    if let Some(s) = sparse_cover_upper(k, n, p, Exponent::INF) {
        offer(s.value, UpperMethod::SparseCover);
    }
    best
}

fn same_space_upper(k: u64, n: usize, p: Exponent) -> f64 {
    let tau = packing_cover_upper(k, n, p, p).unwrap_or(f64::INFINITY);
    self_cover_upper(k, n, p).min(tau)
}

/// Interpolation bound for `p < q < ∞`:
/// `e_{k₁+k₂−1} ≤ 2^{1/p̄} e_{k₁}(p→p)^{p/q} e_{k₂}(p→∞)^{1−p/q}`, optimized
/// over the split; returns the value and `k₁`.
pub fn interpolation_upper(k: u64, n: usize, p: Exponent, q: Exponent) -> Option<(f64, u64)> {
    let theta = match (p, q) {
        (Exponent::Finite(pf), Exponent::Finite(qf)) if pf < qf => pf / qf,
        _ => return None,
    };
    let c = 2f64.powf(1.0 / p.bar());
    let sup: Vec<f64> = (1..=k).map(|k2| sup_upper(k2, n, p).0).collect();
    (1..=k)
        .map(|k1| {
            let r0 = same_space_upper(k1, n, p);
            let r1 = sup[(k - k1) as usize];
            (c * r0.powf(theta) * r1.powf(1.0 - theta), k1)
        })
        .min_by(|a, b| a.0.total_cmp(&b.0))
}

fn analytic_certificate(k: u64, n: usize, p: Exponent, q: Exponent) -> Result<BoundCertificate> {
    let (rate, regime) = theoretical_rate(k, n as u64, p, q)?;
    let op = identity_op_norm(n, p, q);
    let mut c = BoundCertificate {
        k,
        n,
        p,
        q,
        lower: lower_bound_volume(k, n, p, q),
        lower_method: LowerMethod::Volume,
        upper: op,
        upper_method: UpperMethod::OpNorm,
        upper_source: "analytic".into(),
        sampled_upper: None,
        rate,
        regime,
        lower_over_rate: 0.0,
        upper_over_rate: 0.0,
        downgrades: Vec::new(),
    };
    if let Some(v) = canonical_lower(k, n, q) {
        c.offer_lower(v, LowerMethod::Canonical);
    }
    if let Some((v, _)) = code_lower(k, n, p, q) {
        c.offer_lower(v, LowerMethod::CodePacking);
    }
    c.offer_upper(self_cover_upper(k, n, p) * op, UpperMethod::SelfCover, "analytic");
    if let Some(t) = packing_cover_upper(k, n, p, q) {
        c.offer_upper(t, UpperMethod::PackingCover, "analytic");
    }
    if let Some(s) = sparse_cover_upper(k, n, p, q) {
        c.offer_upper(s.value, UpperMethod::SparseCover, "analytic");
    }
    if let Some((v, _)) = interpolation_upper(k, n, p, q) {
        c.offer_upper(v, UpperMethod::Interpolation, "analytic");
    }
    c.refresh_ratios();
    Ok(c)
}

/// Certificate with default options (fallback on, no oracle).
pub fn certified_bounds(
    k: u64,
    n: usize,
    p: Exponent,
    q: Exponent,
    effort: Effort,
) -> Result<BoundCertificate> {
    certified_bounds_with(k, n, p, q, &BoundOptions { effort, ..Default::default() })
}

pub fn certified_bounds_with(
    k: u64,
    n: usize,
    p: Exponent,
    q: Exponent,
    opts: &BoundOptions,
) -> Result<BoundCertificate> {
    check_params(k, n)?;
    let mut c = analytic_certificate(k, n, p, q)?;
    if let Effort::Constructive { seed, samples } = opts.effort {
        Builder { cert: &mut c, fallback: opts.fallback, seed, samples: samples.max(1) }.run()?;
    }
    if opts.oracle {
        match oracle_entropy(k, n, p, q) {
            Some(OracleValue::Exact(v)) => {
                c.offer_lower(v, LowerMethod::Oracle);
                c.offer_upper(v, UpperMethod::Oracle, "analytic");
            }
            Some(OracleValue::Interval { lower, upper }) => {
                c.offer_lower(lower, LowerMethod::Oracle);
                c.offer_upper(upper, UpperMethod::Oracle, "witness");
            }
            None => {}
        }
    }
    c.refresh_ratios();
    Ok(c)
}

/// Witness construction for constructive effort.
struct Builder<'a> {
    cert: &'a mut BoundCertificate,
    fallback: bool,
    seed: u64,
    samples: u64,
}

impl Builder<'_> {
    fn run(&mut self) -> Result<()> {
        let (p, q) = (self.cert.p, self.cert.q);
        self.codes()?;
        self.self_cover()?;
        if p < q {
            if q.is_infinite() {
                self.sparse()?;
            } else {
                self.interpolation()?;
            }
        }
        Ok(())
    }

    /// Record a refused construction, or fail when fallback is off.
    fn refuse(&mut self, what: &str, err: Error) -> Result<()> {
        match err {
            Error::Budget { .. } if self.fallback => {
                self.cert.downgrades.push(format!("{what}: {err}; analytic value kept"));
                Ok(())
            }
            other => Err(other),
        }
    }

    /// Actual codes can beat the guaranteed size at small `m`.
    fn codes(&mut self) -> Result<()> {
        let c = &*self.cert;
        let (k, n, p, q) = (c.k, c.n, c.p, c.q);
        if n > 64 {
            return Ok(());
        }
        for m in step4_range(k, n) {
            let v = code_value(m, p, q);
            if v <= self.cert.lower {
                continue;
            }
            let code = match hamming_code(n, m, CODE_BUDGET) {
                Ok(code) => code,
                Err(e) => {
                    self.refuse(&format!("code_packing m={m}"), e)?;
                    continue;
                }
            };
            let w = code_packing(&code, p, q)?;
            if let Some(v) = lower_bound_from_packing(&w, k) {
                self.cert.offer_lower(v, LowerMethod::CodePacking);
            }
        }
        Ok(())
    }

    fn self_cover(&mut self) -> Result<()> {
        let c = &*self.cert;
        let (k, n, p, q) = (c.k, c.n, c.p, c.q);
        let space = SpaceDescriptor::new(n, p)?;
        let mut w = match self_cover(k, space, constructive_resolution(n)) {
            Ok(w) => w,
            Err(e) => return self.refuse("self_cover", e),
        };
        self.accept(&mut w, UpperMethod::SelfCover, identity_op_norm(n, p, q));
        Ok(())
    }

    fn sparse(&mut self) -> Result<()> {
        let c = &*self.cert;
        let (k, n, p) = (c.k, c.n, c.p);
        let Some(choice) = cube_sparse_choice(k, n, p) else {
            return Ok(());
        };
        let built = SpaceDescriptor::new(choice.m, p)
            .and_then(|s| cube_grid_cover(s, floor_root_pow2(choice.l - 1, choice.m as u64) as usize))
            .and_then(|inner| sparse_support_cover(n, choice.m, &inner, p, SPARSE_BUDGET));
        match built {
            Ok(mut w) => self.accept(&mut w, UpperMethod::SparseCover, 1.0),
            Err(e) => self.refuse("sparse_cover", e)?,
        }
        Ok(())
    }

    fn interpolation(&mut self) -> Result<()> {
        let c = &*self.cert;
        let (k, n, p, q) = (c.k, c.n, c.p, c.q);
        let space = SpaceDescriptor::new(n, p)?;
        let res = constructive_resolution(n);
        let theta = p.as_f64() / q.as_f64();
        let Some((_, k1)) = (1..=k)
            .map(|k1| {
                let r0 = predicted_self_cover_radius(k1, n, p, res);
                let r1 = 1.0 / floor_root_pow2(k - k1, n as u64);
                (r0.powf(theta) * r1.powf(1.0 - theta), k1)
            })
            .min_by(|a, b| a.0.total_cmp(&b.0))
        else {
            return Ok(());
        };
        let k2 = k - k1 + 1;
        let built = self_cover(k1, space, res).and_then(|cp| {
            let ci = cube_grid_cover(space, floor_root_pow2(k2 - 1, n as u64) as usize)?;
            let reps = CandidateSource::Random { count: self.samples.min(20_000) as usize };
            interpolation_cover(&cp, &ci, q, reps, self.seed)
        });
        match built {
            Ok(mut w) => self.accept(&mut w, UpperMethod::Interpolation, 1.0),
            Err(e) => self.refuse("interpolation", e)?,
        }
        Ok(())
    }

    /// Verify a built cover; a proven one joins the sandwich, a sampled one
    /// is reported separately.
    fn accept(&mut self, w: &mut CoveringWitness, method: UpperMethod, scale: f64) {
        let k = self.cert.k;
        let report = verify_cover(w, self.samples, self.seed.wrapping_add(1));
        if !report.passed {
            self.cert
                .downgrades
                .push(format!("{method}: witness failed sampled verification; dropped"));
            return;
        }
        let Some(r) = upper_bound_from_cover(w, k) else {
            return;
        };
        let value = r * scale;
        match w.verified {
            Verification::Proven => self.cert.offer_upper(value, method, "witness"),
            verified => {
                let better = value < self.cert.upper
                    && self.cert.sampled_upper.as_ref().is_none_or(|s| value < s.value);
                if better {
                    self.cert.sampled_upper = Some(SampledUpper { value, method, verified });
                }
            }
        }
    }
}

/// Grid resolution for constructive self-covers; dimensions above 4 are
/// left to the grid budget to refuse.
fn constructive_resolution(n: usize) -> usize {
    if n <= 3 {
        constructions::DEFAULT_GRID_RESOLUTION
    } else {
        16
    }
}

fn predicted_self_cover_radius(k: u64, n: usize, p: Exponent, resolution: usize) -> f64 {
    match self_cover_separation(k, n, p) {
        Some(tau) if tau < 1.0 => {
            let mesh = 2.0 / resolution as f64 * (n as f64).powf(p.recip());
            let b = p.bar();
            (tau.powf(b) + mesh.powf(b)).powf(1.0 / b)
        }
        _ => 1.0,
    }
}

/// The `m` values scanned for code packings:
/// `max(1, ⌊k/log₂(n/k+1)⌋) ..= min(⌊n/4⌋, ⌈2k/log₂(n/k+1)⌉)`.
pub fn step4_range(k: u64, n: usize) -> std::ops::RangeInclusive<usize> {
    let l = (n as f64 / k as f64 + 1.0).log2();
    let lo = ((k as f64 / l).floor() as usize).max(1);
    let hi = ((2.0 * k as f64 / l).ceil() as usize).min(n / 4);
    lo..=hi
}

/// Sparse choice restricted to sup-grid inner covers, which are built
/// explicitly.
fn cube_sparse_choice(k: u64, n: usize, p: Exponent) -> Option<SparseChoice> {
    (1..=n)
        .filter_map(|m| {
            let need = ceil_log2_binomial(n as u64, m as u64);
            (need < k).then(|| {
                let l = k - need;
                let value = (m as f64).powf(-p.recip()) + 1.0 / floor_root_pow2(l - 1, m as u64);
                SparseChoice { value, m, l }
            })
        })
        .min_by(|a, b| a.value.total_cmp(&b.value))
}

/// Outcome of [`verify_cover`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub samples: u64,
    pub failures: u64,
    pub max_distance: f64,
    pub radius: f64,
    pub confidence: f64,
    pub passed: bool,
}

/// `min_c ‖x − c‖_q`, abandoning each center once it cannot win.
pub fn nearest_distance(x: &[f64], centers: &[crate::spaces::Vector], q: Exponent) -> f64 {
    match q {
        Exponent::Infinity => {
            let mut best = f64::INFINITY;
            for c in centers {
                let mut d: f64 = 0.0;
                for (a, b) in x.iter().zip(c.as_slice()) {
                    d = d.max((a - b).abs());
                    if d >= best {
                        break;
                    }
                }
                best = best.min(d);
            }
            best
        }
        Exponent::Finite(e) => {
            let mut best = f64::INFINITY;
            for c in centers {
                let mut acc = 0.0;
                for (a, b) in x.iter().zip(c.as_slice()) {
                    let d = (a - b).abs();
                    acc += if e == 1.0 { d } else { d.powf(e) };
                    if acc >= best {
                        break;
                    }
                }
                best = best.min(acc);
            }
            if e == 1.0 {
                best
            } else {
                best.powf(1.0 / e)
            }
        }
    }
}

/// Draw `samples` uniform points of the target ball and measure their
/// nearest-center distance. A pass upgrades an unproven witness to
/// `sampled`; a failure marks it unverified.
pub fn verify_cover(w: &mut CoveringWitness, samples: u64, seed: u64) -> VerificationReport {
    let samples = samples.max(1);
    let mut sampler = BallSampler::new(w.target, seed);
    let limit = w.radius * (1.0 + VERIFY_SLACK);
    let mut failures = 0;
    let mut max_distance: f64 = 0.0;
    for _ in 0..samples {
        let x = sampler.sample();
        let d = nearest_distance(&x, &w.centers, w.metric_q);
        max_distance = max_distance.max(d);
        if d > limit {
            failures += 1;
        }
    }
    let passed = failures == 0;
    if !passed {
        w.verified = Verification::Unverified;
    } else if w.verified != Verification::Proven {
        w.verified = Verification::sampled(samples);
    }
    VerificationReport {
        samples,
        failures,
        max_distance,
        radius: w.radius,
        confidence: 1.0 - 1.0 / samples as f64,
        passed,
    }
}

/// Ground truth for small instances.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OracleValue {
    Exact(f64),
    Interval { lower: f64, upper: f64 },
}

impl OracleValue {
    pub fn lower(self) -> f64 {
        match self {
            OracleValue::Exact(v) => v,
            OracleValue::Interval { lower, .. } => lower,
        }
    }

    pub fn upper(self) -> f64 {
        match self {
            OracleValue::Exact(v) => v,
            OracleValue::Interval { upper, .. } => upper,
        }
    }
}

/// `n = 1`: `2^{−(k−1)}`. `p = q = ∞`: `1/⌊2^{(k−1)/n}⌋`. Otherwise, for
/// `n ≤ 3`, a bracket from greedy grid packings and grid covers.
pub fn oracle_entropy(k: u64, n: usize, p: Exponent, q: Exponent) -> Option<OracleValue> {
    if k == 0 || n == 0 {
        return None;
    }
    if n == 1 {
        return Some(OracleValue::Exact((-((k - 1) as f64)).exp2()));
    }
    if p.is_infinite() && q.is_infinite() {
        let j = floor_root_pow2(k - 1, n as u64);
        return j.is_finite().then_some(OracleValue::Exact(1.0 / j));
    }
    if n > 3 {
        return None;
    }
    grid_bracket(k, n, p, q).ok()
}

fn grid_bracket(k: u64, n: usize, p: Exponent, q: Exponent) -> Result<OracleValue> {
    let resolution = if n == 2 { 48 } else { 16 };
    let host = SpaceDescriptor::new(n, p)?;
    let source = CandidateSource::ExhaustiveGrid { resolution };
    let pack = |tau: f64| greedy_maximal_packing(host, q, tau, source, 0);
    let diameter = 2.0 * identity_op_norm(n, p, q);
    let qb = q.bar();

    // largest separation whose greedy packing still exceeds 2^{k-1} points
    let mut lower = 0.0;
    let (mut lo, mut hi) = (0.0, diameter);
    for _ in 0..30 {
        let mid = 0.5 * (lo + hi);
        let w = pack(mid)?;
        if count_exceeds(w.len() as u64, k) {
            lower = f64::max(lower, mid / 2f64.powf(1.0 / qb));
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // smallest separation whose greedy packing fits in 2^{k-1} points
    let mut upper = identity_op_norm(n, p, q);
    let (mut lo, mut hi) = (0.0, diameter);
    for _ in 0..30 {
        let mid = 0.5 * (lo + hi);
        let w = pack(mid)?;
        if count_fits(w.len() as u64, k) {
            upper = upper.min(packing_to_cover(&w).radius);
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(OracleValue::Interval { lower, upper })
}

/// Smallest covering count certified for radius `r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoveringCount {
    /// Smallest `k` found with certified upper `≤ r`.
    pub k: u64,
    /// `log₂ N(B_p^n, ℓ_q^n, r) ≤ k − 1`.
    pub log2_count: u64,
    pub upper: f64,
    pub upper_method: UpperMethod,
}

/// Binary search over analytic (and, where available, oracle) uppers.
pub fn covering_number_upper(n: usize, p: Exponent, q: Exponent, r: f64) -> Result<CoveringCount> {
    check_params(1, n)?;
    if !(r > 0.0) {
        return domain(format!("radius must be positive, got {r}"));
    }
    let opts = BoundOptions { oracle: true, ..Default::default() };
    let eval = |k: u64| certified_bounds_with(k, n, p, q, &opts);
    let mut hi = 1u64;
    let mut hi_cert = eval(hi)?;
    while hi_cert.upper > r {
        if hi > u64::MAX / 4 {
            return domain(format!("radius {r} is below every certified upper"));
        }
        hi *= 2;
        hi_cert = eval(hi)?;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let c = eval(mid)?;
        if c.upper <= r {
            hi = mid;
            hi_cert = c;
        } else {
            lo = mid;
        }
    }
    Ok(CoveringCount {
        k: hi,
        log2_count: hi - 1,
        upper: hi_cert.upper,
        upper_method: hi_cert.upper_method,
    })
}

/// Which `k` values a ratio table visits for each `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KRule {
    /// `k = 1, …, c·n`.
    Linear(u64),
    /// `k = 1, 2, 4, …` up to `4n`, plus `n` and `4n`.
    Dyadic,
}

impl KRule {
    pub fn ks(self, n: usize) -> Vec<u64> {
        let n = n as u64;
        match self {
            KRule::Linear(c) => (1..=c * n).collect(),
            KRule::Dyadic => {
                let mut ks: Vec<u64> = std::iter::successors(Some(1u64), |k| Some(k * 2))
                    .take_while(|&k| k <= 4 * n)
                    .chain([n, 4 * n])
                    .collect();
                ks.sort_unstable();
                ks.dedup();
                ks
            }
        }
    }
}

impl std::str::FromStr for KRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "dyadic" {
            return Ok(KRule::Dyadic);
        }
        match s.strip_prefix("linear:").map(str::parse::<u64>) {
            Some(Ok(c)) if c >= 1 => Ok(KRule::Linear(c)),
            _ => domain(format!("k-rule must be 'dyadic' or 'linear:C' with C >= 1, got '{s}'")),
        }
    }
}

impl std::fmt::Display for KRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KRule::Linear(c) => write!(f, "linear:{c}"),
            KRule::Dyadic => f.write_str("dyadic"),
        }
    }
}

/// One `(n, k)` cell of a ratio table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub n: usize,
    pub k: u64,
    pub regime: RateRegime,
    pub lower: f64,
    pub lower_method: LowerMethod,
    pub upper: f64,
    pub upper_method: UpperMethod,
    pub rate: f64,
    pub lower_over_rate: f64,
    pub upper_over_rate: f64,
}

impl From<&BoundCertificate> for RatioRow {
    fn from(c: &BoundCertificate) -> Self {
        RatioRow {
            n: c.n,
            k: c.k,
            regime: c.regime,
            lower: c.lower,
            lower_method: c.lower_method,
            upper: c.upper,
            upper_method: c.upper_method,
            rate: c.rate,
            lower_over_rate: c.lower_over_rate,
            upper_over_rate: c.upper_over_rate,
        }
    }
}

/// Rows sorted by `(n, k)`.
pub fn ratio_table(
    p: Exponent,
    q: Exponent,
    n_list: &[usize],
    k_rule: KRule,
    effort: Effort,
) -> Result<Vec<RatioRow>> {
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut rows = Vec::new();
    for n in ns {
        for k in k_rule.ks(n) {
            rows.push(RatioRow::from(&certified_bounds(k, n, p, q, effort)?));
        }
    }
    Ok(rows)
}

/// Bounds for `ℓ_p^n(ℂ) → ℓ_q^n(ℂ)` transferred from the real `2n`-dimensional
/// certificate through the interleaving map `J` and its inverse `J′`:
/// `upper = ‖J‖_p · upper_ℝ · ‖J′‖_q`, `lower = lower_ℝ / (‖J′‖_p ‖J‖_q)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexCertificate {
    pub k: u64,
    pub n: usize,
    pub p: Exponent,
    pub q: Exponent,
    pub lower: f64,
    pub upper: f64,
    pub rate: f64,
    pub regime: RateRegime,
    pub real: BoundCertificate,
}

/// `(‖J‖_r, ‖J′‖_r)` for the interleaving map on `ℓ_r`.
pub fn interleave_norms(r: Exponent) -> (f64, f64) {
    let (lo, hi) = interleave_distortion(r);
    (hi, 1.0 / lo)
}

pub fn complex_bounds(
    k: u64,
    n: usize,
    p: Exponent,
    q: Exponent,
    effort: Effort,
) -> Result<ComplexCertificate> {
    check_params(k, n)?;
    let real = certified_bounds(k, 2 * n, p, q, effort)?;
    let (jp, jp_inv) = interleave_norms(p);
    let (jq, jq_inv) = interleave_norms(q);
    let (rate, regime) = complex_theoretical_rate(k, n as u64, p, q)?;
    Ok(ComplexCertificate {
        k,
        n,
        p,
        q,
        lower: real.lower / (jp_inv * jq),
        upper: jp * real.upper * jq_inv,
        rate,
        regime,
        real,
    })
}
