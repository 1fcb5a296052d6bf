//! Exact combinatorial tables and the few real special functions the
//! wavelet machinery needs.
//!
//! Stirling numbers of the second kind and Bernoulli numbers are built once
//! per process in arbitrary precision and shared read-only afterwards. The
//! normalization constants of high-order wavelets involve `|B_2n|` and
//! `{n k}` values well past the 2^53 integer range of `f64`, so conversion to
//! floating point happens only at the use site.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational carrier, always held in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Largest `n` held in the Stirling table.
pub const STIRLING_MAX_N: usize = 64;

/// Largest index held in the Bernoulli table.
pub const BERNOULLI_MAX_INDEX: usize = 128;

/// Triangular table of Stirling numbers of the second kind, `{n k}` for
/// `0 <= k <= n <= max_n`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    /// Builds rows `0..=max_n` from `{n+1 k} = k{n k} + {n k-1}`.
    pub fn build(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigUint::one()]);
        for n in 0..max_n {
            let prev = &rows[n];
            let mut next = vec![BigUint::zero(); n + 2];
            for k in 1..=n + 1 {
                let mut cell = if k <= n {
                    &prev[k] * BigUint::from(k)
                } else {
                    BigUint::zero()
                };
                cell += &prev[k - 1];
                next[k] = cell;
            }
            rows.push(next);
        }
        StirlingTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `{n k}`; zero outside `0 <= k <= n`. Panics if `n > max_n`.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        self.rows[n].get(k).cloned().unwrap_or_default()
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }
}

/// Exact Bernoulli numbers `B_0 ..= B_max_index` with `B_1 = -1/2`.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    /// Builds the table from `sum_{j=0}^{n} C(n+1, j) B_j = 0` for `n >= 1`.
    pub fn build(max_index: usize) -> Self {
        let mut values: Vec<Rational> = Vec::with_capacity(max_index + 1);
        values.push(Rational::one());
        for n in 1..=max_index {
            if n >= 3 && n % 2 == 1 {
                values.push(Rational::zero());
                continue;
            }
            // binomial row C(n+1, j) built incrementally
            let mut binom = BigInt::one();
            let mut acc = Rational::zero();
            for (j, b) in values.iter().enumerate() {
                if !b.is_zero() {
                    acc += b * Rational::from_integer(binom.clone());
                }
                binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
            }
            values.push(-acc / Rational::from_integer(BigInt::from(n + 1)));
        }
        BernoulliTable { values }
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// `B_n`. Panics if `n > max_index`.
    pub fn get(&self, n: usize) -> &Rational {
        &self.values[n]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

static STIRLING: OnceLock<StirlingTable> = OnceLock::new();
static BERNOULLI: OnceLock<BernoulliTable> = OnceLock::new();

/// The process-wide Stirling table.
pub fn stirling_table() -> &'static StirlingTable {
    STIRLING.get_or_init(|| StirlingTable::build(STIRLING_MAX_N))
}

/// The process-wide Bernoulli table.
pub fn bernoulli_table() -> &'static BernoulliTable {
    BERNOULLI.get_or_init(|| BernoulliTable::build(BERNOULLI_MAX_INDEX))
}

/// Stirling number of the second kind `{n k}`.
///
/// Any `k` is accepted (`0` outside `0..=n`); `n` must lie in
/// `0..=STIRLING_MAX_N`.
pub fn stirling2(n: i64, k: i64) -> Result<BigUint> {
    if n < 0 || n as usize > STIRLING_MAX_N {
        return Err(Error::domain(format!(
            "stirling2: n = {n} outside 0..={STIRLING_MAX_N}"
        )));
    }
    if k < 0 || k > n {
        return Ok(BigUint::zero());
    }
    Ok(stirling_table().get(n as usize, k as usize))
}

/// Exact Bernoulli number `B_n` (`B_1 = -1/2` convention).
pub fn bernoulli(n: i64) -> Result<Rational> {
    if n < 0 || n as usize > BERNOULLI_MAX_INDEX {
        return Err(Error::domain(format!(
            "bernoulli: n = {n} outside 0..={BERNOULLI_MAX_INDEX}"
        )));
    }
    Ok(bernoulli_table().get(n as usize).clone())
}

/// Nearest `f64` to an exact rational, robust to numerators and
/// denominators beyond the `f64` range.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // scale both sides down to 1024 significant bits before dividing
    let (num, den) = (r.numer(), r.denom());
    let shift = num.bits().max(den.bits()).saturating_sub(1000);
    let n = (num >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (den >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc *= BigUint::from(n - j);
        acc = acc.div_floor(&BigUint::from(j + 1));
    }
    acc
}

/// `|Γ(1+iξ)|² = πξ / sinh(πξ)`, with the removable singularity at `ξ = 0`
/// filled in. Underflows cleanly to `0` for very large `|ξ|`.
pub fn gamma_modulus_sq(xi: f64) -> f64 {
    let x = (PI * xi).abs();
    if x < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0
    } else if x < 20.0 {
        x / x.sinh()
    } else {
        // sinh(x) = e^x (1 - e^{-2x}) / 2, with e^{-2x} below f64 resolution here
        2.0 * x * (-x).exp()
    }
}

/// Riemann zeta at an integer `s >= 2`.
///
/// Direct summation of the first `N - 1` terms plus an Euler–Maclaurin tail
/// with Bernoulli corrections; relative error below `1e-15`.
pub fn zeta(s: i64) -> Result<f64> {
    if s < 2 {
        return Err(Error::domain(format!("zeta: s = {s} must be >= 2")));
    }
    if s > 1100 {
        return Ok(1.0);
    }
    const N: u32 = 16;
    const CORRECTIONS: usize = 12;
    let sf = s as f64;
    let si = s as i32;
    let nf = N as f64;

    // summed from the small end to limit rounding
    let head: f64 = (1..N).rev().map(|k| (k as f64).powi(-si)).sum();

    let n_pow = nf.powi(-si);
    let mut tail = nf * n_pow / (sf - 1.0) + 0.5 * n_pow;
    // term_j = B_2j / (2j)! * s (s+1) ... (s+2j-2) * N^{-s-2j+1}
    let table = bernoulli_table();
    let mut rising = sf; // s (s+1) ... (s+2j-2)
    let mut fact = 2.0; // (2j)!
    let mut npow = n_pow / nf; // N^{-s-2j+1}
    for j in 1..=CORRECTIONS {
        if j > 1 {
            let m = (2 * j) as f64;
            rising *= (sf + m - 3.0) * (sf + m - 2.0);
            fact *= (m - 1.0) * m;
            npow /= nf * nf;
        }
        let b = rational_to_f64(table.get(2 * j));
        let term = b / fact * rising * npow;
        tail += term;
        if term.abs() < 1e-20 * tail.abs() {
            break;
        }
    }
    Ok(head + tail)
}

/// `ζ(2n)` from the Bernoulli closed form
/// `(-1)^{n+1} 2^{2n-1} π^{2n} B_2n / (2n)!`.
pub fn zeta_even_closed_form(n: u32) -> Result<f64> {
    if n == 0 || 2 * n as usize > BERNOULLI_MAX_INDEX {
        return Err(Error::domain(format!(
            "zeta_even_closed_form: n = {n} outside 1..={}",
            BERNOULLI_MAX_INDEX / 2
        )));
    }
    let b = bernoulli_table().get(2 * n as usize).clone();
    let exact = b * Rational::from_integer(BigInt::from(2u32).pow(2 * n - 1))
        / Rational::from_integer(factorial(2 * n).into());
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    Ok(sign * rational_to_f64(&exact) * PI.powi(2 * n as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn stirling_table_one_values() {
        assert_eq!(stirling2(4, 2).unwrap(), BigUint::from(7u32));
        assert_eq!(stirling2(7, 4).unwrap(), BigUint::from(350u32));
        assert_eq!(stirling2(7, 3).unwrap(), BigUint::from(301u32));
        assert_eq!(stirling2(6, 3).unwrap(), BigUint::from(90u32));
        assert_eq!(stirling2(0, 0).unwrap(), BigUint::one());
    }

    #[test]
    fn stirling_boundaries() {
        assert_eq!(stirling2(5, 0).unwrap(), BigUint::zero());
        assert_eq!(stirling2(3, 4).unwrap(), BigUint::zero());
        assert_eq!(stirling2(3, -1).unwrap(), BigUint::zero());
        assert!(matches!(stirling2(-1, 0), Err(Error::Domain(_))));
        assert!(matches!(stirling2(65, 2), Err(Error::Domain(_))));
        assert!(stirling2(64, 32).unwrap() > BigUint::from(u64::MAX));
    }

    #[test]
    fn stirling_matches_explicit_sum() {
        // {n k} = (1/k!) sum_j (-1)^{k-j} C(k,j) j^n
        for n in 0..=20u32 {
            for k in 0..=n {
                let mut acc = BigInt::zero();
                for j in 0..=k {
                    let term = BigInt::from(binomial(k as u64, j as u64)) * BigInt::from(j).pow(n);
                    if (k - j) % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                let expected = acc / BigInt::from(factorial(k));
                assert_eq!(
                    BigInt::from(stirling2(n as i64, k as i64).unwrap()),
                    expected,
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn bernoulli_listed_values() {
        assert_eq!(bernoulli(0).unwrap(), rat(1, 1));
        assert_eq!(bernoulli(1).unwrap(), rat(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli(4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(6).unwrap(), rat(1, 42));
        assert_eq!(bernoulli(8).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(10).unwrap(), rat(5, 66));
        assert_eq!(bernoulli(12).unwrap(), rat(-691, 2730));
        assert_eq!(bernoulli(7).unwrap(), rat(0, 1));
        assert!(matches!(bernoulli(129), Err(Error::Domain(_))));
        assert!(matches!(bernoulli(-2), Err(Error::Domain(_))));
    }

    #[test]
    fn gamma_modulus_sq_values() {
        assert_eq!(gamma_modulus_sq(0.0), 1.0);
        let expected = PI / PI.sinh();
        assert!((gamma_modulus_sq(1.0) - expected).abs() < 1e-16);
        assert!((gamma_modulus_sq(1.0) - 0.272_029_054_982_133).abs() < 1e-14);
        assert_eq!(gamma_modulus_sq(-1.0), gamma_modulus_sq(1.0));
        assert_eq!(gamma_modulus_sq(1e6), 0.0);
        assert!(gamma_modulus_sq(200.0) > 0.0);
        // continuity across the branch points
        for x in [1e-4 / PI, 20.0 / PI] {
            let lo = gamma_modulus_sq(x * (1.0 - 1e-12));
            let hi = gamma_modulus_sq(x * (1.0 + 1e-12));
            assert!((lo - hi).abs() <= 1e-10 * lo, "x={x}");
        }
    }

    #[test]
    fn zeta_values() {
        let z2 = zeta(2).unwrap();
        assert!((z2 - PI * PI / 6.0).abs() / z2 < 1e-15);
        // Apéry's constant
        let z3 = zeta(3).unwrap();
        assert!((z3 - 1.202_056_903_159_594_2).abs() / z3 < 1e-15);
        let z4 = zeta(4).unwrap();
        assert!((z4 - PI.powi(4) / 90.0).abs() / z4 < 1e-15);
        assert!((zeta(5).unwrap() - 1.036_927_755_143_37).abs() < 1e-15);
        assert!(matches!(zeta(1), Err(Error::Domain(_))));
        assert_eq!(zeta(2000).unwrap(), 1.0);
    }

    #[test]
    fn zeta_matches_brute_force_with_tail_bound() {
        // brute-force partial sum, tail bounded by the integral estimate
        for s in 3..=9i32 {
            let n = 200_000u32;
            let partial: f64 = (1..=n).rev().map(|k| (k as f64).powi(-s)).sum();
            let tail = (n as f64).powi(1 - s) / (s as f64 - 1.0);
            let z = zeta(s as i64).unwrap();
            assert!(
                z >= partial - 1e-15 && z <= partial + tail * 1.0001 + 1e-15,
                "s={s}"
            );
        }
    }

    #[test]
    fn rational_to_f64_handles_huge_parts() {
        let huge = BigInt::from(10u32).pow(400);
        let r = Rational::new(huge.clone() * BigInt::from(3), huge * BigInt::from(4));
        assert_eq!(rational_to_f64(&r), 0.75);
        assert_eq!(rational_to_f64(&rat(-1, 3)), -1.0 / 3.0);
    }
}
