//! Scalar special functions and the constant-free entropy-number rates.
//!
//! Everything that involves `Γ` is evaluated in the log domain: `Γ(1 + n/p)`
//! overflows an `f64` already around `n = 170` for `p = 1`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exponent::Exponent;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Asymptotic-series coefficients `B_{2j} / (2j (2j - 1))`.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Arguments below this are shifted up with `Γ(1 + t) = t Γ(t)` before the
/// asymptotic series is applied; at 10 the first omitted term is ~1e-18.
const SHIFT_THRESHOLD: f64 = 10.0;

/// `ln Γ(t)` for real `t > 0`.
///
/// Absolute error is a few ulps of `max(1, |ln Γ(t)|)` on `(0, 10⁶]`.
pub fn log_gamma(t: f64) -> Result<f64> {
    if !t.is_finite() || t <= 0.0 {
        return domain(format!("log_gamma needs a finite positive argument, got {t}"));
    }
    Ok(log_gamma_unchecked(t))
}

pub(crate) fn log_gamma_unchecked(t: f64) -> f64 {
    if t == 1.0 || t == 2.0 {
        return 0.0;
    }
    let mut x = t;
    let mut shift = 1.0;
    while x < SHIFT_THRESHOLD {
        shift *= x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        series += c * pow;
        pow *= inv2;
    }
    let main = (x - 0.5) * x.ln() - x + HALF_LN_2PI + series;
    if shift == 1.0 {
        main
    } else {
        main - shift.ln()
    }
}

/// Number of terms above which [`log_binomial`] switches from an explicit
/// product to log-Gamma differences.
const DIRECT_BINOMIAL_TERMS: u64 = 4096;

/// `ln C(n, m)`.
pub fn log_binomial(n: u64, m: u64) -> Result<f64> {
    if m > n {
        return domain(format!("log_binomial needs m <= n, got n={n}, m={m}"));
    }
    Ok(log_binomial_unchecked(n, m))
}

pub(crate) fn log_binomial_unchecked(n: u64, m: u64) -> f64 {
    let k = m.min(n - m);
    if k == 0 {
        return 0.0;
    }
    if k <= DIRECT_BINOMIAL_TERMS {
        let base = (n - k) as f64;
        let mut acc = 0.0;
        let mut comp = 0.0;
        for i in 1..=k {
            let term = ((base + i as f64) / i as f64).ln();
            // Neumaier summation
            let t = acc + term;
            if acc.abs() >= term.abs() {
                comp += (acc - t) + term;
            } else {
                comp += (term - t) + acc;
            }
            acc = t;
        }
        acc + comp
    } else {
        log_gamma_unchecked(n as f64 + 1.0)
            - log_gamma_unchecked(k as f64 + 1.0)
            - log_gamma_unchecked((n - k) as f64 + 1.0)
    }
}

/// `log₂ C(n, m)`.
pub fn log2_binomial(n: u64, m: u64) -> Result<f64> {
    Ok(log_binomial(n, m)? / std::f64::consts::LN_2)
}

/// `ln vol(B_p^n) = n ln 2 + n ln Γ(1 + 1/p) − ln Γ(1 + n/p)`.
pub fn log_volume_lp_ball(n: usize, p: Exponent) -> Result<f64> {
    if n == 0 {
        return domain("ball dimension must be at least 1");
    }
    Ok(log_volume_unchecked(n, p))
}

pub(crate) fn log_volume_unchecked(n: usize, p: Exponent) -> f64 {
    let nf = n as f64;
    match p {
        Exponent::Infinity => nf * std::f64::consts::LN_2,
        Exponent::Finite(p) => {
            nf * std::f64::consts::LN_2 + nf * log_gamma_unchecked(1.0 + 1.0 / p)
                - log_gamma_unchecked(1.0 + nf / p)
        }
    }
}

/// `Γ(1 + x/p)^{1/x} / x^{1/p}`, which stays bounded above and below for
/// `x ≥ 1` and tends to `(p e)^{-1/p}`.
pub fn gamma_growth_ratio(x: f64, p: Exponent) -> Result<f64> {
    let p = match p {
        Exponent::Finite(p) => p,
        Exponent::Infinity => return domain("gamma_growth_ratio needs a finite exponent"),
    };
    if !x.is_finite() || x < 1.0 {
        return domain(format!("gamma_growth_ratio needs x >= 1, got {x}"));
    }
    Ok((log_gamma_unchecked(1.0 + x / p) / x - x.ln() / p).exp())
}

/// Which branch of the rate formula governs a parameter cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateRegime {
    /// `p < q` and `k ≤ log₂ n`: rate 1.
    SmallK,
    /// `p < q` and `log₂ n < k ≤ n`.
    MiddleK,
    /// `p < q` and `k > n`: volumetric decay.
    LargeK,
    /// `q ≤ p`: volumetric decay for every `k`.
    QLeP,
}

impl RateRegime {
    pub fn as_str(self) -> &'static str {
        match self {
            RateRegime::SmallK => "small_k",
            RateRegime::MiddleK => "middle_k",
            RateRegime::LargeK => "large_k",
            RateRegime::QLeP => "q_le_p",
        }
    }
}

impl std::fmt::Display for RateRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `k ≤ log₂ n`, decided exactly as `2^k ≤ n`.
pub(crate) fn k_at_most_log2(k: u64, n: u64) -> bool {
    k < 64 && (1u64 << k) <= n
}

/// The rate of `e_k(id: ℓ_p^n → ℓ_q^n)` without equivalence constants.
pub fn theoretical_rate(k: u64, n: u64, p: Exponent, q: Exponent) -> Result<(f64, RateRegime)> {
    if k == 0 || n == 0 {
        return domain(format!("rate needs k >= 1 and n >= 1, got k={k}, n={n}"));
    }
    Ok(rate_with_dim(k, n, n, p, q))
}

/// Rate for the complex spaces `ℓ_p^n(ℂ) → ℓ_q^n(ℂ)`; the real dimension is `2n`.
pub fn complex_theoretical_rate(
    k: u64,
    n: u64,
    p: Exponent,
    q: Exponent,
) -> Result<(f64, RateRegime)> {
    if k == 0 || n == 0 {
        return domain(format!("rate needs k >= 1 and n >= 1, got k={k}, n={n}"));
    }
    Ok(rate_with_dim(k, 2 * n, n, p, q))
}

/// `dim` governs the regime boundaries and the `2^{-(k-1)/dim}` decay,
/// `n` the polynomial factor `n^{1/q - 1/p}`.
fn rate_with_dim(k: u64, dim: u64, n: u64, p: Exponent, q: Exponent) -> (f64, RateRegime) {
    let alpha = p.recip() - q.recip();
    let volumetric = || 2f64.powf(-((k - 1) as f64) / dim as f64) * (n as f64).powf(-alpha);
    if q <= p {
        return (volumetric(), RateRegime::QLeP);
    }
    if k_at_most_log2(k, dim) {
        (1.0, RateRegime::SmallK)
    } else if k <= dim {
        let kf = k as f64;
        let base = (1.0 + dim as f64 / kf).log2() / kf;
        (base.powf(alpha), RateRegime::MiddleK)
    } else {
        (volumetric(), RateRegime::LargeK)
    }
}
