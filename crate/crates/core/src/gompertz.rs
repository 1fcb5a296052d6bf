//! The Gompertz curve `x(t) = x_max exp(-exp(-s (t - t0)))` and its
//! derivatives of any order up to [`DerivativeOrder::MAX`].
//!
//! Every derivative is a polynomial in `u = log(x_max / x) = exp(-s (t - t0))`
//! with Stirling coefficients:
//!
//! ```text
//! x^(n)(t) = s^n x sum_{k=1}^{n} (-1)^{n-k} {n k} u^k
//! ```
//!
//! `u` is evaluated directly from `t`, never as the log of a computed `x`.

use std::sync::OnceLock;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::special_fn::stirling_table;

/// Parameters of a Gompertz curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GompertzParams {
    x_max: f64,
    s: f64,
    t0: f64,
}

impl GompertzParams {
    /// `x_max` is the saturation level, `s` the growth rate, `t0` the inflection time.
    pub fn new(x_max: f64, s: f64, t0: f64) -> Result<Self> {
        if !(x_max.is_finite() && x_max > 0.0) {
            return Err(Error::domain(format!(
                "x_max must be positive, got {x_max}"
            )));
        }
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::domain(format!("s must be positive, got {s}")));
        }
        if !t0.is_finite() {
            return Err(Error::domain(format!("t0 must be finite, got {t0}")));
        }
        Ok(GompertzParams { x_max, s, t0 })
    }

    /// `x_max = 1, s = 1, t0 = 0`: `x(t) = exp(-exp(-t))`.
    pub const fn standard() -> Self {
        GompertzParams {
            x_max: 1.0,
            s: 1.0,
            t0: 0.0,
        }
    }

    /// A wave written in scale/shift form `x_max exp(-exp(-(t - b) / a))`.
    pub fn from_scale_shift(x_max: f64, a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::domain(format!("scale a must be positive, got {a}")));
        }
        Self::new(x_max, 1.0 / a, b)
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    /// `log(x_max / x(t))`, computed as `exp(-s (t - t0))`.
    #[inline]
    fn log_ratio(&self, t: f64) -> f64 {
        (-self.s * (t - self.t0)).exp()
    }

    pub fn value(&self, t: f64) -> f64 {
        self.x_max * (-self.log_ratio(t)).exp()
    }

    /// The closed-form `n`th derivative at `t`.
    pub fn derivative(&self, order: DerivativeOrder, t: f64) -> f64 {
        let u = self.log_ratio(t);
        let x = self.x_max * (-u).exp();
        if x == 0.0 {
            // deep left tail: x underflowed, and u^k may overflow
            return 0.0;
        }
        let poly = horner(stirling_coefficients(order), u);
        self.s.powi(order.get() as i32) * x * poly
    }

    pub fn landmarks(&self) -> Landmarks {
        let golden_sq = (3.0 + 5f64.sqrt()) / 2.0;
        let t1 = self.t0 - golden_sq.ln() / self.s;
        Landmarks {
            t0: self.t0,
            t1,
            x_at_t0: self.x_max / std::f64::consts::E,
            x_at_t1: self.x_max * (-golden_sq).exp(),
        }
    }
}

/// Free-function form of [`GompertzParams::value`].
pub fn gompertz_value(p: &GompertzParams, t: f64) -> f64 {
    p.value(t)
}

/// Free-function form of [`GompertzParams::derivative`].
pub fn gompertz_derivative(p: &GompertzParams, order: DerivativeOrder, t: f64) -> f64 {
    p.derivative(order, t)
}

/// Free-function form of [`GompertzParams::landmarks`].
pub fn landmarks(p: &GompertzParams) -> Landmarks {
    p.landmarks()
}

/// Inflection point `t0` and the smaller zero `t1` of the third derivative,
/// with the curve values there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Landmarks {
    pub t0: f64,
    pub t1: f64,
    pub x_at_t0: f64,
    pub x_at_t1: f64,
}

/// Derivative order `n`, `1 <= n <= MAX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DerivativeOrder(u32);

impl DerivativeOrder {
    pub const MAX: u32 = 12;

    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > Self::MAX {
            return Err(Error::domain(format!(
                "derivative order {n} outside 1..={}",
                Self::MAX
            )));
        }
        Ok(DerivativeOrder(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// Coefficients `c_k = (-1)^{n-k} {n k}` for `k = 0..=n` (with `c_0 = 0`),
/// lowest degree first.
pub fn stirling_coefficients(order: DerivativeOrder) -> &'static [f64] {
    static COEFFS: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    let all = COEFFS.get_or_init(|| {
        let table = stirling_table();
        (0..=DerivativeOrder::MAX as usize)
            .map(|n| {
                (0..=n)
                    .map(|k| {
                        let mag = table.get(n, k).to_f64().unwrap_or(f64::INFINITY);
                        if (n - k) % 2 == 0 {
                            mag
                        } else {
                            -mag
                        }
                    })
                    .collect()
            })
            .collect()
    });
    &all[order.get() as usize]
}

#[inline]
fn horner(coeffs: &[f64], u: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * u + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_default;
    use std::f64::consts::E;

    fn order(n: u32) -> DerivativeOrder {
        DerivativeOrder::new(n).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn params_are_validated() {
        assert!(GompertzParams::new(0.0, 1.0, 0.0).is_err());
        assert!(GompertzParams::new(1.0, -1.0, 0.0).is_err());
        assert!(GompertzParams::new(1.0, 1.0, f64::NAN).is_err());
        assert!(GompertzParams::from_scale_shift(1.0, 0.0, 0.0).is_err());
        assert!(DerivativeOrder::new(0).is_err());
        assert!(DerivativeOrder::new(13).is_err());
    }

    #[test]
    fn value_at_inflection_is_x_max_over_e() {
        let p = GompertzParams::new(100.0, 0.15, 10.0).unwrap();
        assert!(rel(p.value(10.0), 100.0 / E) < 1e-12);
        assert!((p.value(10.0) - 36.788).abs() < 1e-3);
        assert!(rel(GompertzParams::standard().value(0.0), 1.0 / E) < 1e-15);
    }

    #[test]
    fn value_matches_ode_integration() {
        // RK4 on x' = x log(1/x) from x(0) = 1/e up to t = 3
        let f = |x: f64| -x * x.ln();
        let (mut x, h) = (1.0 / E, 1e-3);
        for _ in 0..3000 {
            let k1 = f(x);
            let k2 = f(x + 0.5 * h * k1);
            let k3 = f(x + 0.5 * h * k2);
            let k4 = f(x + h * k3);
            x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        let v = GompertzParams::standard().value(3.0);
        assert!((v - x).abs() < 1e-12);
        assert!((v - 0.951_431).abs() < 1e-6);
    }

    #[test]
    fn value_is_increasing_and_bounded() {
        let p = GompertzParams::new(5.0, 0.7, -2.0).unwrap();
        let mut prev = 0.0;
        for i in -200..200 {
            let v = p.value(i as f64 * 0.05);
            assert!(v > prev && v < 5.0);
            prev = v;
        }
    }

    #[test]
    fn second_derivative_vanishes_at_inflection() {
        assert_eq!(GompertzParams::standard().derivative(order(2), 0.0), 0.0);
        let p = GompertzParams::new(100.0, 0.15, 10.0).unwrap();
        assert!(p.derivative(order(2), 10.0).abs() < 1e-14);
    }

    #[test]
    fn third_derivative_vanishes_at_t1() {
        let p = GompertzParams::standard();
        let t1 = -((3.0 + 5f64.sqrt()) / 2.0).ln();
        assert!((t1 + 0.9624).abs() < 1e-4);
        assert!(p.derivative(order(3), t1).abs() < 1e-15);
        let lm = p.landmarks();
        assert!((lm.t1 - t1).abs() < 1e-15);
        assert!(p.derivative(order(3), lm.t1).abs() < 1e-15);
    }

    #[test]
    fn landmarks_of_example_curve() {
        let p = GompertzParams::new(100.0, 0.15, 10.0).unwrap();
        let lm = p.landmarks();
        assert!((lm.x_at_t1 - 7.29).abs() < 0.01);
        assert!(rel(lm.x_at_t0, 100.0 / E) < 1e-15);
        assert!(rel(p.value(lm.t1), lm.x_at_t1) < 1e-12);
        assert!(p.derivative(order(2), lm.t0).abs() < 1e-14);
    }

    #[test]
    fn expanded_second_and_third_derivatives() {
        let p = GompertzParams::new(3.0, 0.4, 1.5).unwrap();
        for i in -40..=80 {
            let t = i as f64 * 0.25;
            let x = p.value(t);
            let u = (-p.s() * (t - p.t0())).exp();
            let d2 = p.s().powi(2) * x * u * (-1.0 + u);
            let d3 = p.s().powi(3) * x * u * (1.0 - 3.0 * u + u * u);
            let scale2 = p.s().powi(2) * x * u * (1.0 + u);
            let scale3 = p.s().powi(3) * x * u * (1.0 + 3.0 * u + u * u);
            assert!((p.derivative(order(2), t) - d2).abs() <= 1e-14 * scale2.max(1e-300));
            assert!((p.derivative(order(3), t) - d3).abs() <= 1e-14 * scale3.max(1e-300));
        }
    }

    #[test]
    fn fourth_derivative_matches_finite_differences() {
        // five-point central stencil of x itself, h = 1e-3
        let p = GompertzParams::standard();
        let (t, h) = (0.5, 1e-3);
        let fd = (p.value(t + 2.0 * h) - 4.0 * p.value(t + h) + 6.0 * p.value(t)
            - 4.0 * p.value(t - h)
            + p.value(t - 2.0 * h))
            / h.powi(4);
        let exact = p.derivative(order(4), t);
        assert!(rel(fd, exact) < 1e-3, "fd={fd} exact={exact}");
        // tighter check against the derivative chain below
        let h = 1e-4;
        let fd3 = (p.derivative(order(3), t + h) - p.derivative(order(3), t - h)) / (2.0 * h);
        assert!(rel(fd3, exact) < 1e-6);
    }

    #[test]
    fn derivative_chain_matches_central_differences() {
        let p = GompertzParams::standard();
        let h = 1e-4;
        for n in 1..=6 {
            for &t in &[-1.3, -0.4, 0.3, 1.1, 2.7] {
                let exact = p.derivative(order(n + 1), t);
                let fd =
                    (p.derivative(order(n), t + h) - p.derivative(order(n), t - h)) / (2.0 * h);
                let scale = exact.abs().max(1e-3);
                assert!((fd - exact).abs() / scale < 1e-6, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn first_derivative_is_gumbel_density() {
        let p = GompertzParams::standard();
        for i in -50..=50 {
            let t = i as f64 * 0.1;
            let x = p.value(t);
            let ode = x * (1.0 / x).ln();
            let gumbel = (-(-t).exp()).exp() * (-t).exp();
            let d1 = p.derivative(order(1), t);
            assert!(rel(d1, ode) < 1e-12);
            assert!(rel(d1, gumbel) < 1e-12);
        }
        let mass = integrate_default(|t| p.derivative(order(1), t), -40.0, 40.0);
        assert!((mass - 1.0).abs() < 1e-10);
    }

    #[test]
    fn deep_left_tail_is_zero_not_nan() {
        let p = GompertzParams::standard();
        for n in 1..=12 {
            let v = p.derivative(order(n), -800.0);
            assert_eq!(v, 0.0);
        }
    }
}
