//! Mother and child wavelets built from derivatives of S-shaped curves.
//!
//! The Gompertz wavelet of order `n` is the `n`th derivative of
//! `exp(-exp(-t))` scaled to unit L² norm:
//!
//! ```text
//! psi_n(t) = sqrt(2n / (|B_2n| (2^2n - 1))) * x^(n)(t)
//! ```
//!
//! Its Fourier transform is a power of `iξ` times `Γ(1 + iξ)`, which yields
//! closed forms for the admissibility constant in terms of `ζ(2n - 1)`.
//! A second-order logistic wavelet is provided as a comparison baseline.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::gompertz::{DerivativeOrder, GompertzParams};
use crate::quadrature::{integrate_default, integrate_piecewise};
use crate::special_fn::{
    bernoulli_table, factorial, gamma_modulus_sq, rational_to_f64, zeta, Rational,
};

/// Smallest and largest Gompertz wavelet orders.
pub const MIN_ORDER: u32 = 2;
pub const MAX_ORDER: u32 = DerivativeOrder::MAX;

/// Effective support of the Gompertz mother wavelets at scale 1.
pub const GOMPERTZ_SUPPORT: (f64, f64) = (-8.0, 60.0);

/// Effective support of the logistic comparison wavelet at scale 1.
pub const LOGISTIC_SUPPORT: (f64, f64) = (-40.0, 40.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveletFamily {
    Gompertz,
    Logistic,
}

impl std::fmt::Display for WaveletFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WaveletFamily::Gompertz => f.write_str("gompertz"),
            WaveletFamily::Logistic => f.write_str("logistic"),
        }
    }
}

/// A unit-norm, zero-mean mother wavelet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotherWavelet {
    family: WaveletFamily,
    order: u32,
    normalization: f64,
}

/// `|B_2n| (2^2n - 1) / (2n)`, the exact squared L² norm of `x^(n)` for the
/// standard Gompertz curve.
pub fn derivative_sq_norm_exact(n: u32) -> Result<Rational> {
    if n == 0 || 2 * n as usize > bernoulli_table().max_index() {
        return Err(Error::domain(format!(
            "squared-norm order {n} out of range"
        )));
    }
    let b = bernoulli_table().get(2 * n as usize).abs();
    let pow = (BigInt::from(1u8) << (2 * n)) - 1;
    Ok(b * Rational::from_integer(pow) / Rational::from_integer(BigInt::from(2 * n)))
}

/// Floating-point value of [`derivative_sq_norm_exact`].
pub fn derivative_sq_norm(n: u32) -> Result<f64> {
    derivative_sq_norm_exact(n).map(|r| rational_to_f64(&r))
}

impl MotherWavelet {
    /// Gompertz wavelet of order `n`, `2 <= n <= 12`.
    pub fn gompertz(n: u32) -> Result<Self> {
        if !(MIN_ORDER..=MAX_ORDER).contains(&n) {
            return Err(Error::domain(format!(
                "Gompertz wavelet order {n} outside {MIN_ORDER}..={MAX_ORDER}"
            )));
        }
        let sq_norm = derivative_sq_norm(n)?;
        Ok(MotherWavelet {
            family: WaveletFamily::Gompertz,
            order: n,
            normalization: sq_norm.recip().sqrt(),
        })
    }

    /// `sqrt(30) f''(t)` with `f(t) = 1 / (1 + e^-t)`; `∫ (f'')² = 1/30`.
    pub fn logistic2() -> Self {
        MotherWavelet {
            family: WaveletFamily::Logistic,
            order: 2,
            normalization: 30f64.sqrt(),
        }
    }

    /// The wavelet for `family` at `order`. Logistic wavelets exist at order 2 only.
    pub fn new(family: WaveletFamily, order: u32) -> Result<Self> {
        match family {
            WaveletFamily::Gompertz => Self::gompertz(order),
            WaveletFamily::Logistic if order == 2 => Ok(Self::logistic2()),
            WaveletFamily::Logistic => Err(Error::domain(format!(
                "logistic wavelet is only available at order 2, got {order}"
            ))),
        }
    }

    pub fn family(&self) -> WaveletFamily {
        self.family
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    /// Interval outside of which the wavelet is negligible at scale 1.
    pub fn support(&self) -> (f64, f64) {
        match self.family {
            WaveletFamily::Gompertz => GOMPERTZ_SUPPORT,
            WaveletFamily::Logistic => LOGISTIC_SUPPORT,
        }
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        match self.family {
            WaveletFamily::Gompertz => {
                let order =
                    DerivativeOrder::new(self.order).expect("order validated at construction");
                self.normalization * GompertzParams::standard().derivative(order, t)
            }
            WaveletFamily::Logistic => self.normalization * logistic_second_derivative(t),
        }
    }

    pub fn child(&self, a: f64, b: f64) -> Result<ChildWavelet> {
        ChildWavelet::new(*self, a, b)
    }

    /// `|ψ̂(ξ)|²` under the unitary convention `ψ̂(ξ) = (2π)^{-1/2} ∫ ψ(x) e^{-iξx} dx`.
    pub fn fourier_modulus_sq(&self, xi: f64) -> f64 {
        match self.family {
            WaveletFamily::Gompertz => {
                // n / (|B_2n| (2^2n - 1) π) = normalization² / (2π)
                let pre = self.normalization * self.normalization / (2.0 * PI);
                pre * xi.powi(2 * self.order as i32 - 2) * gamma_modulus_sq(xi)
            }
            WaveletFamily::Logistic => {
                // the logistic density has characteristic function πξ / sinh(πξ)
                let g = gamma_modulus_sq(xi);
                self.normalization * self.normalization / (2.0 * PI) * xi * xi * g * g
            }
        }
    }
}

/// `f''(t)` for the standard logistic `f(t) = 1 / (1 + e^-t)`, evaluated as
/// `-tanh(t/2) e^{-|t|} / (1 + e^{-|t|})²` to stay finite in both tails.
fn logistic_second_derivative(t: f64) -> f64 {
    let e = (-t.abs()).exp();
    -(0.5 * t).tanh() * e / ((1.0 + e) * (1.0 + e))
}

/// Free-function form of [`MotherWavelet::gompertz`].
pub fn mother_gompertz(n: u32) -> Result<MotherWavelet> {
    MotherWavelet::gompertz(n)
}

/// Free-function form of [`MotherWavelet::logistic2`].
pub fn mother_logistic2() -> MotherWavelet {
    MotherWavelet::logistic2()
}

/// Dilated and translated copy `ψ^{a,b}(t) = a^{-1/2} ψ((t - b) / a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChildWavelet {
    mother: MotherWavelet,
    a: f64,
    b: f64,
    inv_sqrt_a: f64,
}

impl ChildWavelet {
    pub fn new(mother: MotherWavelet, a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::domain(format!("scale a must be positive, got {a}")));
        }
        if !b.is_finite() {
            return Err(Error::domain(format!("shift b must be finite, got {b}")));
        }
        Ok(ChildWavelet {
            mother,
            a,
            b,
            inv_sqrt_a: a.sqrt().recip(),
        })
    }

    pub fn mother(&self) -> &MotherWavelet {
        &self.mother
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `(t - b) / a`.
    #[inline]
    pub fn standardize(&self, t: f64) -> f64 {
        (t - self.b) / self.a
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        self.inv_sqrt_a * self.mother.eval(self.standardize(t))
    }

    /// The mother's effective support mapped to `t`.
    pub fn support(&self) -> (f64, f64) {
        let (lo, hi) = self.mother.support();
        (self.b + self.a * lo, self.b + self.a * hi)
    }
}

/// Free-function form of [`ChildWavelet::eval`].
pub fn evaluate(w: &ChildWavelet, t: f64) -> f64 {
    w.eval(t)
}

/// Free-function form of [`MotherWavelet::fourier_modulus_sq`].
pub fn fourier_modulus_sq(w: &MotherWavelet, xi: f64) -> f64 {
    w.fourier_modulus_sq(xi)
}

/// Closed-form and quadrature values of `C_ψ = 2π ∫ |ξ|^{-1} |ψ̂(ξ)|² dξ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibilityResult {
    pub order: u32,
    pub closed_form: f64,
    pub quadrature: f64,
    pub relative_gap: f64,
}

/// Exact rational prefactor of the admissibility constant,
/// `n (2^{2n-1} - 1) (2n-2)! / (|B_2n| (2^2n - 1) 2^{2n-4})`, so that
/// `C_ψn = prefactor * ζ(2n-1) / π^{2n-2}`.
pub fn admissibility_prefactor(n: u32) -> Result<Rational> {
    if !(2..=MAX_ORDER).contains(&n) {
        return Err(Error::domain(format!(
            "admissibility order {n} outside 2..={MAX_ORDER}"
        )));
    }
    let two = |k: u32| BigInt::from(1u8) << k;
    let numer = BigInt::from(n) * (two(2 * n - 1) - 1) * BigInt::from(factorial(2 * n - 2));
    let b = bernoulli_table().get(2 * n as usize).abs();
    let denom = b * Rational::from_integer((two(2 * n) - 1) * two(2 * n - 4));
    Ok(Rational::from_integer(numer) / denom)
}

/// Closed-form `C_ψn` for the Gompertz wavelet of order `n`.
pub fn admissibility_closed_form(n: u32) -> Result<f64> {
    let pre = rational_to_f64(&admissibility_prefactor(n)?);
    Ok(pre * zeta(2 * n as i64 - 1)? / PI.powi(2 * n as i32 - 2))
}

/// `C_ψ` by adaptive quadrature of `2π |ξ|^{-1} |ψ̂(ξ)|²` over `[-40, 40]`.
pub fn admissibility_quadrature(w: &MotherWavelet) -> f64 {
    let integrand = |xi: f64| {
        if xi == 0.0 {
            0.0
        } else {
            w.fourier_modulus_sq(xi) / xi.abs()
        }
    };
    2.0 * PI * integrate_piecewise(integrand, &[-40.0, 0.0, 40.0])
}

/// Both routes to the admissibility constant of the order-`n` Gompertz
/// wavelet, `2 <= n <= 8`.
pub fn admissibility_constant(n: u32) -> Result<AdmissibilityResult> {
    if !(2..=8).contains(&n) {
        return Err(Error::domain(format!(
            "admissibility order {n} outside 2..=8"
        )));
    }
    let closed_form = admissibility_closed_form(n)?;
    let quadrature = admissibility_quadrature(&MotherWavelet::gompertz(n)?);
    Ok(AdmissibilityResult {
        order: n,
        closed_form,
        quadrature,
        relative_gap: (closed_form - quadrature).abs() / closed_form,
    })
}

/// Quadrature values of `∫ x''`, `∫ |x''|` and `∫ (x'')²` for the standard
/// Gompertz curve; analytically `0`, `2/e` and `1/8`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralFacts {
    pub mean: f64,
    pub abs_integral: f64,
    pub sq_integral: f64,
}

pub fn gompertz_integral_facts() -> IntegralFacts {
    let p = GompertzParams::standard();
    let two = DerivativeOrder::new(2).expect("2 is a valid order");
    let d2 = |t: f64| p.derivative(two, t);
    // x'' changes sign at t = 0
    let cuts = [GOMPERTZ_SUPPORT.0, 0.0, GOMPERTZ_SUPPORT.1];
    IntegralFacts {
        mean: integrate_piecewise(d2, &cuts),
        abs_integral: integrate_piecewise(|t| d2(t).abs(), &cuts),
        sq_integral: integrate_piecewise(|t| d2(t).powi(2), &cuts),
    }
}

/// `∫ ψ` and `∫ ψ²` of a child wavelet by quadrature over its effective support.
pub fn child_moments(w: &ChildWavelet) -> (f64, f64) {
    let (lo, hi) = w.support();
    let mid = w.b();
    (
        integrate_piecewise(|t| w.eval(t), &[lo, mid, hi]),
        integrate_piecewise(|t| w.eval(t).powi(2), &[lo, mid, hi]),
    )
}

/// `∫ |ψ̂(ξ)|² dξ`, which equals the squared L² norm by Plancherel.
pub fn fourier_energy(w: &MotherWavelet) -> f64 {
    2.0 * integrate_default(|xi| w.fourier_modulus_sq(xi), 0.0, 60.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, SQRT_2};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn order_two_normalization_is_two_root_two() {
        let w = MotherWavelet::gompertz(2).unwrap();
        assert!(rel(w.normalization(), 2.0 * SQRT_2) < 1e-15);
        assert_eq!(w.eval(0.0), 0.0);
    }

    #[test]
    fn order_three_normalization_is_two() {
        // |B_6| (2^6 - 1) / 6 = (1/42)(63)/6 = 1/4
        let exact = derivative_sq_norm_exact(3).unwrap();
        assert_eq!(exact, Rational::new(1.into(), 4.into()));
        let w = MotherWavelet::gompertz(3).unwrap();
        assert!(rel(w.normalization(), 2.0) < 1e-15);
        let p = GompertzParams::standard();
        let three = DerivativeOrder::new(3).unwrap();
        let q = integrate_piecewise(|t| p.derivative(three, t).powi(2), &[-8.0, 0.0, 60.0]);
        assert!(rel(q, 0.25) < 1e-10);
    }

    #[test]
    fn orders_out_of_range_are_rejected() {
        assert!(MotherWavelet::gompertz(1).is_err());
        assert!(MotherWavelet::gompertz(13).is_err());
        assert!(MotherWavelet::new(WaveletFamily::Logistic, 3).is_err());
        assert!(admissibility_constant(9).is_err());
        assert!(admissibility_constant(1).is_err());
    }

    #[test]
    fn psi2_matches_explicit_formula() {
        let w = MotherWavelet::gompertz(2).unwrap();
        for i in -30..=60 {
            let t = i as f64 * 0.2;
            let explicit = 2.0 * SQRT_2 * (-(-t).exp()).exp() * (-t).exp() * ((-t).exp() - 1.0);
            assert!((w.eval(t) - explicit).abs() <= 1e-14 * explicit.abs().max(1e-3));
        }
    }

    #[test]
    fn child_evaluation() {
        let w = MotherWavelet::gompertz(2).unwrap();
        assert_eq!(w.child(1.0, 0.0).unwrap().eval(0.0), 0.0);
        assert_eq!(w.child(8.0, 25.0).unwrap().eval(25.0), 0.0);
        let c = w.child(2.0, 3.0).unwrap();
        let psi_m1 = 2.0 * SQRT_2 * (-E).exp() * E * (E - 1.0);
        assert!(rel(c.eval(1.0), psi_m1 / SQRT_2) < 1e-14);
        assert!(w.child(0.0, 1.0).is_err());
        assert!(w.child(-2.0, 1.0).is_err());
    }

    #[test]
    fn fourier_modulus_values() {
        let w2 = MotherWavelet::gompertz(2).unwrap();
        assert_eq!(w2.fourier_modulus_sq(0.0), 0.0);
        let expected = 4.0 / PI * (PI / PI.sinh());
        assert!(rel(w2.fourier_modulus_sq(1.0), expected) < 1e-14);
        // 4 / sinh(π)
        assert!((w2.fourier_modulus_sq(1.0) - 0.346_358).abs() < 1e-6);
        for xi in [0.3, 1.7, 4.0] {
            let eq3m = 4.0 * xi * xi / PI * gamma_modulus_sq(xi);
            assert!(rel(w2.fourier_modulus_sq(xi), eq3m) < 1e-14);
        }
        let w3 = MotherWavelet::gompertz(3).unwrap();
        let expected3 = 2.0 / PI * (PI / PI.sinh());
        assert!(rel(w3.fourier_modulus_sq(1.0), expected3) < 1e-14);
        assert!((w3.fourier_modulus_sq(1.0) - 0.173_18).abs() < 1e-5);
    }

    #[test]
    fn plancherel_energy_is_one() {
        for n in 2..=8 {
            let w = MotherWavelet::gompertz(n).unwrap();
            assert!((fourier_energy(&w) - 1.0).abs() < 1e-6, "n={n}");
        }
        assert!((fourier_energy(&MotherWavelet::logistic2()) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn admissibility_order_two_is_56_zeta3_over_pi_sq() {
        let r = admissibility_constant(2).unwrap();
        let expected = 56.0 * zeta(3).unwrap() / (PI * PI);
        assert!(rel(r.closed_form, expected) < 1e-15);
        assert!((r.closed_form - 6.8204).abs() < 1e-4);
        assert!(r.relative_gap < 1e-6);
    }

    #[test]
    fn admissibility_order_three() {
        // 3·31·24·ζ(5) / ((1/42)·63·4·π⁴) = 372 ζ(5) / π⁴
        let r = admissibility_constant(3).unwrap();
        let expected = 372.0 * zeta(5).unwrap() / PI.powi(4);
        assert!(rel(r.closed_form, expected) < 1e-14);
        assert!(r.relative_gap < 1e-6);
    }

    #[test]
    fn integral_facts() {
        let f = gompertz_integral_facts();
        assert!(f.mean.abs() < 1e-10);
        assert!(rel(f.abs_integral, 2.0 / E) < 1e-8);
        assert!(rel(f.sq_integral, 0.125) < 1e-8);
    }

    #[test]
    fn logistic_wavelet_properties() {
        let w = MotherWavelet::logistic2();
        assert!(rel(w.normalization(), 30f64.sqrt()) < 1e-15);
        assert_eq!(w.eval(0.0), 0.0);
        // ∫ (f'')² = ∫_0^1 x(1-x)(1-2x)² dx = 1/30
        let sq = integrate_piecewise(
            |t| logistic_second_derivative(t).powi(2),
            &[-40.0, 0.0, 40.0],
        );
        assert!(rel(sq, 1.0 / 30.0) < 1e-10);
        let c = w.child(1.0, 0.0).unwrap();
        let (mean, norm) = child_moments(&c);
        assert!(mean.abs() < 1e-8);
        assert!((norm - 1.0).abs() < 1e-8);
        // f'' = f (1 - f)(1 - 2f)
        for i in -20..=20 {
            let t = i as f64 * 0.5;
            let f = 1.0 / (1.0 + (-t).exp());
            let direct = f * (1.0 - f) * (1.0 - 2.0 * f);
            assert!((logistic_second_derivative(t) - direct).abs() < 1e-15);
        }
    }
}
