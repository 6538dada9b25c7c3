//! Finite-dimensional `ℓ_p` spaces: vectors, quasi-norms, norms of identity
//! maps, best `m`-term approximation and the real/complex interleaving.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exponent::Exponent;

/// Dimension and exponent of `ℓ_p^n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    n: usize,
    p: Exponent,
}

impl SpaceDescriptor {
    pub fn new(n: usize, p: Exponent) -> Result<Self> {
        if n == 0 {
            return domain("space dimension must be at least 1");
        }
        Ok(SpaceDescriptor { n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> Exponent {
        self.p
    }

    pub fn p_bar(&self) -> f64 {
        self.p.bar()
    }
}

/// A real vector with finite entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return domain(format!("vector entries must be finite, found {bad}"));
        }
        Ok(Vector(coords))
    }

    pub fn zeros(n: usize) -> Self {
        Vector(vec![0.0; n])
    }

    /// The canonical unit vector `e^i` (zero-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        Vector(v)
    }

    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        Vector(coords)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn scaled(&self, factor: f64) -> Vector {
        Vector(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// `‖x‖_p` on a raw slice. Finite exponents are evaluated after scaling by
/// the largest entry, so neither `|x_i|^p` nor the sum can overflow.
pub fn norm(x: &[f64], p: Exponent) -> f64 {
    let max = x.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    match p {
        Exponent::Infinity => max,
        _ if max == 0.0 => 0.0,
        Exponent::Finite(p) if p == 1.0 => x.iter().map(|c| c.abs()).sum(),
        Exponent::Finite(p) if p == 2.0 => {
            max * x.iter().map(|c| (c / max) * (c / max)).sum::<f64>().sqrt()
        }
        Exponent::Finite(p) => {
            max * x.iter().map(|c| (c.abs() / max).powf(p)).sum::<f64>().powf(1.0 / p)
        }
    }
}

/// `‖x − y‖_p` without allocating.
pub fn distance(x: &[f64], y: &[f64], p: Exponent) -> f64 {
    match p {
        Exponent::Infinity => x
            .iter()
            .zip(y)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs())),
        Exponent::Finite(e) if e == 1.0 => x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum(),
        Exponent::Finite(e) => {
            let s: f64 = x.iter().zip(y).map(|(a, b)| (a - b).abs().powf(e)).sum();
            s.powf(1.0 / e)
        }
    }
}

/// `‖x‖_p` for `p ∈ (0, ∞]`; the max of absolute entries for `p = ∞`.
pub fn lp_norm(x: &Vector, p: Exponent) -> f64 {
    norm(&x.0, p)
}

/// `‖id: ℓ_p^n → ℓ_q^n‖ = max(1, n^{1/q − 1/p})`.
pub fn identity_op_norm(n: usize, p: Exponent, q: Exponent) -> f64 {
    let e = q.recip() - p.recip();
    if e <= 0.0 {
        1.0
    } else {
        (n as f64).powf(e)
    }
}

/// Keep the `m` largest entries in absolute value and zero the rest.
///
/// Ties go to the smaller index. For `x ∈ B_p^n` the sup-distance to the
/// result is at most `m^{-1/p}`.
pub fn best_m_term(x: &Vector, m: usize) -> Result<Vector> {
    let n = x.len();
    if m > n {
        return domain(format!("best_m_term needs m <= n, got m={m}, n={n}"));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        x.0[b]
            .abs()
            .partial_cmp(&x.0[a].abs())
            .expect("finite entries")
            .then(a.cmp(&b))
    });
    let mut out = vec![0.0; n];
    for &i in &order[..m] {
        out[i] = x.0[i];
    }
    Ok(Vector(out))
}

/// A vector of `ℂ^n` stored as separate real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector {
    re: Vec<f64>,
    im: Vec<f64>,
}

impl ComplexVector {
    pub fn new(re: Vec<f64>, im: Vec<f64>) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::DimensionMismatch {
                expected: re.len(),
                got: im.len(),
            });
        }
        if re.iter().chain(&im).any(|c| !c.is_finite()) {
            return domain("complex vector entries must be finite");
        }
        Ok(ComplexVector { re, im })
    }

    pub fn len(&self) -> usize {
        self.re.len()
    }

    pub fn is_empty(&self) -> bool {
        self.re.is_empty()
    }

    pub fn re(&self) -> &[f64] {
        &self.re
    }

    pub fn im(&self) -> &[f64] {
        &self.im
    }

    /// Entrywise moduli `|z_i| = (re² + im²)^{1/2}`.
    pub fn moduli(&self) -> Vec<f64> {
        self.re.iter().zip(&self.im).map(|(a, b)| a.hypot(*b)).collect()
    }
}

/// `‖z‖_p` of `ℓ_p^n(ℂ)`: the real `ℓ_p` norm of the moduli.
pub fn complex_lp_norm(z: &ComplexVector, p: Exponent) -> f64 {
    norm(&z.moduli(), p)
}

/// `(z_1, …, z_n) ↦ (Re z_1, Im z_1, …, Re z_n, Im z_n)`.
pub fn interleave(z: &ComplexVector) -> Vector {
    let mut out = Vec::with_capacity(2 * z.len());
    for (a, b) in z.re.iter().zip(&z.im) {
        out.push(*a);
        out.push(*b);
    }
    Vector(out)
}

/// Inverse of [`interleave`]; needs an even length.
pub fn deinterleave(x: &Vector) -> Result<ComplexVector> {
    if x.len() % 2 != 0 {
        return domain(format!("deinterleave needs an even length, got {}", x.len()));
    }
    let (re, im) = x.0.chunks_exact(2).map(|c| (c[0], c[1])).unzip();
    Ok(ComplexVector { re, im })
}

/// Bracket `[lo, hi]` for `‖interleave(z)‖_p / ‖z‖_p` over nonzero `z`:
/// the endpoints are `1` and `2^{1/p − 1/2}`.
pub fn interleave_distortion(p: Exponent) -> (f64, f64) {
    let t = 2f64.powf(p.recip() - 0.5);
    (t.min(1.0), t.max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rel_close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1e-300)
    }

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn norm_examples() {
        assert_eq!(lp_norm(&v(&[3.0, 4.0]), Exponent::Finite(2.0)), 5.0);
        assert_eq!(lp_norm(&v(&[1.0, 1.0, 1.0, 1.0]), Exponent::Finite(1.0)), 4.0);
        assert!(rel_close(lp_norm(&v(&[1.0, -1.0]), Exponent::Finite(0.5)), 4.0));
        assert_eq!(lp_norm(&v(&[0.5, -2.0]), Exponent::INF), 2.0);
        assert_eq!(lp_norm(&Vector::zeros(3), Exponent::Finite(0.3)), 0.0);
    }

    #[test]
    fn norm_does_not_overflow() {
        let x = v(&[1e300, 1e300]);
        assert!(rel_close(lp_norm(&x, Exponent::Finite(2.0)), 2f64.sqrt() * 1e300));
        assert!(rel_close(lp_norm(&x, Exponent::Finite(3.0)), 2f64.powf(1.0 / 3.0) * 1e300));
    }

    #[test]
    fn vector_rejects_non_finite() {
        assert!(Vector::new(vec![1.0, f64::NAN]).is_err());
        assert!(Vector::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn op_norm_examples() {
        assert_eq!(identity_op_norm(4, Exponent::Finite(2.0), Exponent::INF), 1.0);
        assert_eq!(identity_op_norm(4, Exponent::INF, Exponent::Finite(1.0)), 4.0);
        for p in [0.5, 1.0, 3.0] {
            for q in [0.25, 2.0] {
                assert_eq!(identity_op_norm(1, Exponent::Finite(p), Exponent::Finite(q)), 1.0);
            }
        }
    }

    #[test]
    fn op_norm_attained_by_all_ones() {
        for n in [1usize, 2, 7, 64] {
            let ones = Vector::new(vec![1.0; n]).unwrap();
            for (p, q) in [(2.0, 1.0), (f64::INFINITY, 0.5), (3.0, 2.0)] {
                let p = Exponent::new(p).unwrap();
                let q = Exponent::new(q).unwrap();
                let ratio = lp_norm(&ones, q) / lp_norm(&ones, p);
                assert!(rel_close(ratio, identity_op_norm(n, p, q)));
            }
        }
    }

    #[test]
    fn best_m_term_examples() {
        let x = v(&[0.9, 0.1, 0.5]);
        assert_eq!(best_m_term(&x, 1).unwrap(), v(&[0.9, 0.0, 0.0]));
        assert_eq!(best_m_term(&x, 3).unwrap(), x);
        assert!(best_m_term(&x, 4).is_err());
        let flat = v(&[0.25; 4]);
        let approx = best_m_term(&flat, 2).unwrap();
        assert_eq!(approx, v(&[0.25, 0.25, 0.0, 0.0]));
        let err = lp_norm(&flat.sub(&approx), Exponent::INF);
        assert!(err <= 0.5);
        assert_eq!(err, 0.25);
    }

    #[test]
    fn best_m_term_ties_prefer_smaller_index() {
        let x = v(&[-0.5, 0.5, 0.5, 0.1]);
        assert_eq!(best_m_term(&x, 2).unwrap(), v(&[-0.5, 0.5, 0.0, 0.0]));
    }

    #[test]
    fn interleave_examples() {
        let z = ComplexVector::new(vec![1.0], vec![0.0]).unwrap();
        assert_eq!(interleave(&z), v(&[1.0, 0.0]));
        assert!(deinterleave(&v(&[1.0, 2.0, 3.0])).is_err());
        assert!(ComplexVector::new(vec![1.0], vec![]).is_err());
    }

    #[test]
    fn interleave_is_an_l2_isometry() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(1..12);
            let re: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
            let im: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
            let z = ComplexVector::new(re, im).unwrap();
            let direct: f64 = z.re().iter().chain(z.im()).map(|c| c * c).sum::<f64>().sqrt();
            let x = interleave(&z);
            assert!(rel_close(lp_norm(&x, Exponent::Finite(2.0)), direct));
            assert!(rel_close(complex_lp_norm(&z, Exponent::Finite(2.0)), direct));
            assert_eq!(deinterleave(&x).unwrap(), z);
        }
    }

    const EXPONENTS: [f64; 5] = [0.5, 2.0 / 3.0, 1.0, 2.0, f64::INFINITY];

    fn vec_strategy() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-10.0f64..10.0, 1..16)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2_000))]

        #[test]
        fn quasi_triangle(pairs in prop::collection::vec(-10.0f64..10.0, 2..32), pi in 0usize..5) {
            let p = Exponent::new(EXPONENTS[pi]).unwrap();
            let half = pairs.len() / 2;
            let x = &pairs[..half];
            let y = &pairs[half..2 * half];
            let sum: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
            let b = p.bar();
            let lhs = norm(&sum, p).powf(b);
            let rhs = norm(x, p).powf(b) + norm(y, p).powf(b);
            prop_assert!(lhs <= rhs * (1.0 + 1e-9) + 1e-12);
        }

        #[test]
        fn norm_interpolation(x in vec_strategy(), p in 0.2f64..4.0, dq in 0.01f64..6.0) {
            let q = p + dq;
            let lhs = norm(&x, Exponent::Finite(q));
            let rhs = norm(&x, Exponent::Finite(p)).powf(p / q) * norm(&x, Exponent::INF).powf(1.0 - p / q);
            prop_assert!(lhs <= rhs * (1.0 + 1e-9) + 1e-12);
        }

        #[test]
        fn best_m_term_error_bound(x in vec_strategy(), pi in 0usize..5, mf in 0.0f64..1.0) {
            let p = Exponent::new(EXPONENTS[pi]).unwrap();
            let n = x.len();
            let m = 1 + ((n - 1) as f64 * mf) as usize;
            let nx = norm(&x, p);
            prop_assume!(nx > 0.0);
            let unit = Vector::new(x.iter().map(|c| c / nx).collect()).unwrap();
            let approx = best_m_term(&unit, m).unwrap();
            let err = lp_norm(&unit.sub(&approx), Exponent::INF);
            prop_assert!(err <= (m as f64).powf(-p.recip()) * (1.0 + 1e-9));
            prop_assert!(approx.as_slice().iter().filter(|c| **c != 0.0).count() <= m);
        }

        #[test]
        fn interleave_distortion_bracket(
            re in prop::collection::vec(-5.0f64..5.0, 1..10),
            im_seed in prop::collection::vec(-5.0f64..5.0, 10),
            pi in 0usize..5,
        ) {
            let im = im_seed[..re.len()].to_vec();
            let z = ComplexVector::new(re, im).unwrap();
            let p = Exponent::new(EXPONENTS[pi]).unwrap();
            let nz = complex_lp_norm(&z, p);
            prop_assume!(nz > 1e-9);
            let ratio = lp_norm(&interleave(&z), p) / nz;
            let (lo, hi) = interleave_distortion(p);
            prop_assert!(ratio >= lo * (1.0 - 1e-9) && ratio <= hi * (1.0 + 1e-9));
            prop_assert_eq!(deinterleave(&interleave(&z)).unwrap(), z);
        }
    }
}
