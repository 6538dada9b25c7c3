//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so the lines are always shown.
//! Pass criterion numbers as arguments to run a subset:
//! `cargo test --test acceptance -- 3 8`.

use std::collections::HashSet;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use lp_entropy::bounds::{
    certified_bounds, complex_bounds, lower_bound_from_packing, verify_cover, Effort,
};
use lp_entropy::constructions::{
    canonical_packing, cube_grid_cover, hamming_code, interpolation_cover, self_cover,
    sparse_support_cover, support_system, CandidateSource, CoveringWitness,
};
use lp_entropy::spaces::SpaceDescriptor;
use lp_entropy::special::{gamma_growth_ratio, log_volume_lp_ball, theoretical_rate};
use lp_entropy::Exponent;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INF: Exponent = Exponent::INF;

fn e(x: f64) -> Exponent {
    Exponent::new(x).unwrap()
}

fn grid_exponents() -> [Exponent; 4] {
    [e(0.5), e(1.0), e(2.0), INF]
}

const GRID_NS: [usize; 7] = [1, 2, 4, 8, 16, 32, 64];

/// Outcome of one criterion: pass flag and a one-line detail.
type Outcome = (bool, String);

fn main() {
    let wanted: HashSet<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria: [(u32, &str, fn() -> Outcome); 12] = [
        (1, "ball volume closed forms and Monte Carlo", c1_volume),
        (2, "gamma growth ratio within frozen brackets", c2_gamma),
        (3, "certificates bracket the exact oracles", c3_oracles),
        (4, "sandwich and monotonicity over the grid", c4_sandwich),
        (5, "bounded ratios to the rate without growth in n", c5_equivalence),
        (6, "ternary codes: size and Hamming distance", c6_codes),
        (7, "support systems: size and intersections", c7_supports),
        (8, "sparse-support covers verify and count", c8_sparse),
        (9, "interpolation covers: radius and verification", c9_interpolation),
        (10, "complex certificates from real ones", c10_complex),
        (11, "negative controls", c11_negative),
        (12, "seeded commands are byte-identical", c12_determinism),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        if !wanted.is_empty() && !wanted.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let (ok, detail) = run();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "criterion {id:>2} {}: {name} ({detail}; {secs:.1}s)",
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs()
}

// ---- 1 -------------------------------------------------------------------

/// `Γ(1 + n/2)` from `Γ(1) = 1`, `Γ(1/2) = √π` and `Γ(t+1) = tΓ(t)`.
fn gamma_one_plus_half(n: usize) -> f64 {
    let mut t = if n % 2 == 0 { 1.0 } else { std::f64::consts::PI.sqrt() / 2.0 };
    let mut x = if n % 2 == 0 { 1.0 } else { 1.5 };
    while x < 1.0 + n as f64 / 2.0 - 0.25 {
        t *= x;
        x += 1.0;
    }
    t
}

fn c1_volume() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=20usize {
        let fact: f64 = (1..=n).map(|i| i as f64).product();
        let cases = [
            (e(1.0), 2f64.powi(n as i32) / fact),
            (e(2.0), std::f64::consts::PI.powf(n as f64 / 2.0) / gamma_one_plus_half(n)),
            (INF, 2f64.powi(n as i32)),
        ];
        for (p, exact) in cases {
            let v = log_volume_lp_ball(n, p).unwrap().exp();
            worst = worst.max((v - exact).abs() / exact);
        }
    }
    let closed_ok = worst <= 1e-10;

    let samples = 10_000_000u64;
    let mut max_sigma: f64 = 0.0;
    for n in [2usize, 3] {
        for p in [0.5, 1.0, 1.5, 2.0, 3.0] {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 * n as u64 + (10.0 * p) as u64);
            let mut hits = 0u64;
            for _ in 0..samples {
                let s: f64 = (0..n).map(|_| rng.random_range(-1.0f64..1.0).abs().powf(p)).sum();
                if s <= 1.0 {
                    hits += 1;
                }
            }
            let frac = hits as f64 / samples as f64;
            let cube = 2f64.powi(n as i32);
            let est = cube * frac;
            let sigma = cube * (frac * (1.0 - frac) / samples as f64).sqrt();
            let v = log_volume_lp_ball(n, e(p)).unwrap().exp();
            max_sigma = max_sigma.max((est - v).abs() / sigma);
        }
    }
    (
        closed_ok && max_sigma <= 3.0,
        format!("closed-form rel err {worst:.1e}, Monte Carlo max {max_sigma:.2} sigma"),
    )
}

// ---- 2 -------------------------------------------------------------------

/// Brackets frozen from a dense 20001-point scan of `[1, 1e4]`, widened
/// by `1e-4` (the upper ends are attained at `x = 1`).
const GAMMA_BRACKETS: [(f64, f64, f64); 3] = [
    (0.5, 0.5415, 2.0 + 1e-12),
    (1.0, 0.3680, 1.0 + 1e-12),
    (2.0, 0.4290, 0.8863),
];

fn c2_gamma() -> Outcome {
    let mut ok = true;
    let mut lo_seen = f64::INFINITY;
    let mut hi_seen: f64 = 0.0;
    for (p, lo, hi) in GAMMA_BRACKETS {
        for i in 0..200 {
            let x = 10f64.powf(4.0 * i as f64 / 199.0);
            let v = gamma_growth_ratio(x, e(p)).unwrap();
            lo_seen = lo_seen.min(v);
            hi_seen = hi_seen.max(v);
            ok &= lo <= v && v <= hi && (0.2..=2.0 + 1e-12).contains(&v);
        }
    }
    (ok, format!("observed range [{lo_seen:.4}, {hi_seen:.4}]"))
}

// ---- 3 -------------------------------------------------------------------

/// Largest `j` with `j^n ≤ 2^e`, by integer search.
fn int_root_pow2(exp: u32, n: u32) -> u128 {
    let mut j: u128 = 1;
    while (j + 1).pow(n) <= 1u128 << exp {
        j += 1;
    }
    j
}

fn c3_oracles() -> Outcome {
    let mut ok = true;
    let mut worst_ratio: f64 = 0.0;
    let mut cells = 0;
    for p in grid_exponents() {
        for q in grid_exponents() {
            for k in 1..=40u64 {
                let truth = 0.5f64.powi(k as i32 - 1);
                let c = certified_bounds(k, 1, p, q, Effort::Analytic).unwrap();
                let contains = c.lower <= truth * (1.0 + 1e-12) && truth <= c.upper * (1.0 + 1e-12);
                let constant = 4f64.powf(1.0 / p.bar());
                worst_ratio = worst_ratio.max(c.upper / c.lower / constant);
                ok &= contains && c.upper / c.lower <= constant * (1.0 + 1e-12);
                cells += 1;
            }
        }
    }
    for n in 1..=8u32 {
        for k in 1..=4 * n as u64 {
            let truth = 1.0 / int_root_pow2(k as u32 - 1, n) as f64;
            let c = certified_bounds(k, n as usize, INF, INF, Effort::Analytic).unwrap();
            ok &= c.lower <= truth * (1.0 + 1e-12) && truth <= c.upper * (1.0 + 1e-12);
            cells += 1;
        }
    }
    (ok, format!("{cells} cells, max (upper/lower)/4^(1/p_bar) = {worst_ratio:.3}"))
}

// ---- 4 -------------------------------------------------------------------

fn c4_sandwich() -> Outcome {
    let mut ok = true;
    let mut cells = 0;
    let mut raw_upper_rises = 0;
    for p in grid_exponents() {
        for q in grid_exponents() {
            for n in GRID_NS {
                let mut running = f64::INFINITY;
                let mut prev_lower = f64::INFINITY;
                let mut prev_upper = f64::INFINITY;
                for k in 1..=4 * n as u64 {
                    let c = certified_bounds(k, n, p, q, Effort::Analytic).unwrap();
                    ok &= c.is_consistent();
                    let next = running.min(c.upper);
                    ok &= next <= running;
                    running = next;
                    ok &= c.lower <= prev_lower * (1.0 + 1e-12);
                    if c.upper > prev_upper * (1.0 + 1e-12) {
                        raw_upper_rises += 1;
                    }
                    prev_lower = c.lower;
                    prev_upper = c.upper;
                    cells += 1;
                }
            }
        }
    }
    (ok, format!("{cells} cells, {raw_upper_rises} raw upper increases before running min"))
}

// ---- 5 -------------------------------------------------------------------

/// `(p, q, max upper/rate, max rate/lower)` over the full grid, frozen
/// from the first complete run.
const FROZEN_RATIOS: [(f64, f64, f64, f64); 10] = [
    (0.5, 0.5, 8.993922772268958, 1.0000000000000002),
    (0.5, 1.0, 18.626356834122397, 8.496162160473066),
    (0.5, 2.0, 44.29747280663041, 14.744184648062676),
    (0.5, f64::INFINITY, 129.39382861461766, 20.742752678549206),
    (1.0, 1.0, 2.990918796439073, 1.0000000000000002),
    (1.0, 2.0, 5.634086672901448, 3.9089010205337122),
    (1.0, f64::INFINITY, 12.939382861461766, 4.248081080236533),
    (2.0, 2.0, 2.990918796439073, 1.0000000000000002),
    (2.0, f64::INFINITY, 6.669222490714225, 2.7640104186064036),
    (f64::INFINITY, f64::INFINITY, 2.990918796439073, 1.0000000000000002),
];

fn max_ratios(p: Exponent, q: Exponent, ns: &[usize]) -> (f64, f64) {
    let mut up: f64 = 0.0;
    let mut down: f64 = 0.0;
    for &n in ns {
        for k in 1..=4 * n as u64 {
            let c = certified_bounds(k, n, p, q, Effort::Analytic).unwrap();
            let (rate, _) = theoretical_rate(k, n as u64, p, q).unwrap();
            up = up.max(c.upper / rate);
            down = down.max(rate / c.lower);
        }
    }
    (up, down)
}

fn c5_equivalence() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut record = Vec::new();
    for (pf, qf, frozen_up, frozen_down) in FROZEN_RATIOS {
        let (p, q) = (e(pf), e(qf));
        let (up, down) = max_ratios(p, q, &GRID_NS);
        let (up_small, down_small) = max_ratios(p, q, &[8, 16]);
        let (up_large, down_large) = max_ratios(p, q, &[32, 64]);
        let finite = up.is_finite() && down.is_finite();
        let no_growth = up_large <= 2.0 * up_small && down_large <= 2.0 * down_small;
        let frozen = rel_close(up, frozen_up, 1e-9) && rel_close(down, frozen_down, 1e-9);
        if !(finite && no_growth && frozen) {
            notes.push(format!(
                "p={p} q={q}: up {up:.6} (n<=16 {up_small:.4}, n>=32 {up_large:.4}), \
                 down {down:.6} (n<=16 {down_small:.4}, n>=32 {down_large:.4}), frozen={frozen}"
            ));
        }
        ok &= finite && no_growth && frozen;
        record.push(format!("({pf:?}, {qf:?}, {up:?}, {down:?})"));
    }
    if !ok {
        eprintln!("criterion 5 measured values: [{}]", record.join(", "));
    }
    (ok, if notes.is_empty() { "10 exponent pairs".into() } else { notes.join("; ") })
}

// ---- 6 -------------------------------------------------------------------

fn binom(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |c, i| c * (n - i) as u128 / (i + 1) as u128)
}

fn c6_codes() -> Outcome {
    let mut ok = true;
    let mut instances = 0;
    for n in 4..=40usize {
        for m in 1..=n / 4 {
            let h = binom(n as u64, 2 * m as u64) << (2 * m);
            if h > 10_000_000 {
                continue;
            }
            let code = hamming_code(n, m, 10_000_000).unwrap();
            let words: Vec<Vec<f64>> = code.words.iter().map(|w| w.to_coords(n)).collect();
            let guaranteed = (n as f64 / (2 * m) as f64).powi(m as i32);
            ok &= words.len() as f64 >= guaranteed;
            for w in &words {
                ok &= w.iter().filter(|c| **c != 0.0).count() == 2 * m;
            }
            // sign masks rebuilt from the coordinates; differing positions
            // are those where either mask differs
            let masks: Vec<(u64, u64)> = words
                .iter()
                .map(|w| {
                    w.iter().enumerate().fold((0, 0), |(pl, mi), (i, &c)| {
                        (pl | u64::from(c > 0.0) << i, mi | u64::from(c < 0.0) << i)
                    })
                })
                .collect();
            for i in 0..masks.len() {
                for j in 0..i {
                    let d = ((masks[i].0 ^ masks[j].0) | (masks[i].1 ^ masks[j].1)).count_ones();
                    ok &= d as usize > m;
                }
            }
            instances += 1;
        }
    }
    (ok, format!("{instances} (n, m) instances"))
}

// ---- 7 -------------------------------------------------------------------

fn c7_supports() -> Outcome {
    let mut ok = true;
    let mut instances = 0;
    for n in 1..=40usize {
        for k in 1..=10.min(n) {
            if binom(n as u64, k as u64) > 10_000_000 {
                continue;
            }
            let sys = support_system(n, k, 10_000_000).unwrap();
            let sets: Vec<Vec<usize>> = sys.sets.iter().map(|&s| sys.members(s)).collect();
            let guaranteed = (n as f64 / (4 * k) as f64).powf(k as f64 / 2.0);
            ok &= sets.len() as f64 >= guaranteed;
            for s in &sets {
                ok &= s.len() == k;
            }
            for i in 0..sets.len() {
                for j in 0..i {
                    let common = sets[i].iter().filter(|x| sets[j].contains(x)).count();
                    ok &= 2 * common < k;
                }
            }
            instances += 1;
        }
    }
    (ok, format!("{instances} (n, k) instances"))
}

// ---- 8 -------------------------------------------------------------------

fn c8_sparse() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (n, m, p) in [(8usize, 2usize, 1.0), (16, 4, 1.0), (8, 2, 0.5)] {
        let inner = cube_grid_cover(SpaceDescriptor::new(m, e(p)).unwrap(), 2).unwrap();
        let mut w = sparse_support_cover(n, m, &inner, e(p), 10_000_000).unwrap();
        let count_ok = w.len() as u128 == binom(n as u64, m as u64) * inner.len() as u128;
        let report = verify_cover(&mut w, 100_000, 7);
        ok &= count_ok && report.failures == 0;
        notes.push(format!("({n},{m},{p}) card {} fails {}", w.len(), report.failures));
    }
    (ok, notes.join(", "))
}

// ---- 9 -------------------------------------------------------------------

fn c9_interpolation() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (n, k1, k2) in [(2usize, 5u64, 5u64), (4, 9, 9)] {
        let (p, q) = (e(1.0), e(2.0));
        let space = SpaceDescriptor::new(n, p).unwrap();
        let cover_p = self_cover(k1, space, 16).unwrap();
        let cells = int_root_pow2(k2 as u32 - 1, n as u32) as usize;
        let cover_inf = cube_grid_cover(space, cells).unwrap();
        let reps = CandidateSource::Random { count: 200_000 };
        let mut w = interpolation_cover(&cover_p, &cover_inf, q, reps, 11).unwrap();
        // p̄ = 1 and p/q = 1/2
        let expected = 2.0 * cover_p.radius.sqrt() * cover_inf.radius.sqrt();
        let radius_ok = rel_close(w.radius, expected, 1e-15);
        let count_ok = w.len() <= cover_p.len() * cover_inf.len();
        let report = verify_cover(&mut w, 100_000, 12);
        ok &= radius_ok && count_ok && report.failures == 0;
        notes.push(format!(
            "n={n} centers {} radius {:.4} max dist {:.4} fails {}",
            w.len(),
            w.radius,
            report.max_distance,
            report.failures
        ));
    }
    (ok, notes.join(", "))
}

// ---- 10 ------------------------------------------------------------------

/// Extremes of `‖(cos θ, sin θ)‖_r` over a grid containing the multiples
/// of `π/4`; these are the extremes of `‖interleave(z)‖_r / ‖z‖_r`.
fn interleave_extremes(r: Exponent) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for i in 0..=4000 {
        let t = std::f64::consts::FRAC_PI_2 * i as f64 / 4000.0;
        let (c, s) = (t.cos().abs(), t.sin().abs());
        let v = match r {
            Exponent::Infinity => c.max(s),
            Exponent::Finite(r) => (c.powf(r) + s.powf(r)).powf(1.0 / r),
        };
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

fn c10_complex() -> Outcome {
    let mut ok = true;
    let mut cells = 0;
    for (n, p, q) in [(2usize, e(1.0), INF), (4, e(2.0), e(1.0))] {
        let (p_lo, p_hi) = interleave_extremes(p);
        let (q_lo, q_hi) = interleave_extremes(q);
        for k in 1..=4 * n as u64 {
            let c = complex_bounds(k, n, p, q, Effort::Analytic).unwrap();
            let r = certified_bounds(k, 2 * n, p, q, Effort::Analytic).unwrap();
            let upper = p_hi * r.upper / q_lo;
            let lower = r.lower / (q_hi / p_lo);
            ok &= rel_close(c.upper, upper, 1e-9) && rel_close(c.lower, lower, 1e-9);
            ok &= c.lower <= c.upper * (1.0 + 1e-9) && r.is_consistent();
            cells += 1;
        }
    }
    (ok, format!("{cells} cells"))
}

// ---- 11 ------------------------------------------------------------------

fn c11_negative() -> Outcome {
    let space = SpaceDescriptor::new(2, INF).unwrap();
    let mut w: CoveringWitness = self_cover(5, space, 16).unwrap();
    let good = verify_cover(&mut w.clone(), 20_000, 1);
    w.radius /= 2.0;
    let halved = verify_cover(&mut w, 20_000, 1);
    let flagged = halved.failures > 0 && !halved.passed;

    let canon = canonical_packing(4, e(1.0), e(2.0)).unwrap();
    let at_equality = lower_bound_from_packing(&canon, 3).is_none();
    let above = lower_bound_from_packing(&canon, 2).is_some();
    (
        good.passed && flagged && at_equality && above,
        format!("halved radius: {} failures of 20000", halved.failures),
    )
}

// ---- 12 ------------------------------------------------------------------

fn run_bin(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_lp-entropy"))
        .args(args)
        .output()
        .expect("run binary");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn c12_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let commands: [&[&str]; 8] = [
        &["net", "--self", "--n", "2", "--p", "inf", "--k", "3"],
        &["net", "--self", "--n", "3", "--p", "1", "--k", "12", "--resolution", "12"],
        &["net", "--sparse", "--n", "8", "--m", "2", "--p", "1"],
        &["net", "--interp", "--n", "2", "--p", "1", "--q", "2", "--k1", "5", "--k2", "5", "--seed", "9"],
        &["packing", "--code", "--n", "8", "--m", "2", "--p", "1", "--q", "inf"],
        &["packing", "--greedy", "--n", "3", "--p", "2", "--q", "2", "--tau", "0.5", "--random", "3000", "--seed", "4"],
        &["packing", "--support", "--n", "12", "--m", "3", "--p", "1", "--q", "2"],
        &["packing", "--canonical", "--n", "5", "--p", "0.5", "--q", "inf"],
    ];
    let mut ok = true;
    let mut files = 0;
    for (i, cmd) in commands.iter().enumerate() {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("w{i}_{run}.json"));
            let mut args = cmd.to_vec();
            let p = path.to_str().unwrap().to_string();
            args.extend(["--out", p.as_str()]);
            let (code, stdout) = run_bin(&args);
            ok &= code == 0;
            outputs.push((std::fs::read(Path::new(&path)).unwrap_or_default(), stdout));
        }
        ok &= !outputs[0].0.is_empty() && outputs[0] == outputs[1];
        files += 1;
    }
    let seeded: [&[&str]; 2] = [
        &["bounds", "--k", "6", "--n", "2", "--p", "1", "--q", "inf", "--effort", "constructive",
          "--seed", "3", "--samples", "2000", "--json"],
        &["table", "--p", "1", "--q", "inf", "--n-list", "2,4", "--k-rule", "dyadic"],
    ];
    for cmd in seeded {
        let a = run_bin(cmd);
        let b = run_bin(cmd);
        ok &= a.0 == 0 && a == b;
    }
    (ok, format!("{files} witness commands and 2 report commands run twice"))
}
