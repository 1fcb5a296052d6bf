//! Adaptive Gauss–Kronrod quadrature (21-point Kronrod extension of the
//! 10-point Gauss rule) with global bisection of the worst subinterval.
//!
//! This is the only integrator in the crate; every closed-form identity is
//! checked against it.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Absolute tolerance used for all oracle integrals.
pub const DEFAULT_ABS_TOL: f64 = 1e-12;

const MAX_SUBDIVISIONS: usize = 10_000;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Sum of per-interval Kronrod-minus-Gauss error estimates.
    pub error_estimate: f64,
    pub intervals: usize,
    /// False when the subdivision budget ran out before the tolerance was met.
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 21-point Kronrod pass over `[lo, hi]`: `(kronrod, |kronrod - gauss|)`.
fn gk21<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    for j in 0..10 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        // odd positions of XGK are the Gauss nodes
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    (kronrod, (kronrod - gauss).abs())
}

/// Integrates `f` over `[lo, hi]` to absolute tolerance `abs_tol` (or
/// relative tolerance `rel_tol`, whichever is looser).
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Integral {
    if lo == hi {
        return Integral {
            value: 0.0,
            error_estimate: 0.0,
            intervals: 0,
            converged: true,
        };
    }
    if hi < lo {
        let r = integrate(f, hi, lo, abs_tol, rel_tol);
        return Integral {
            value: -r.value,
            ..r
        };
    }

    let (value, error) = gk21(&f, lo, hi);
    let mut heap = BinaryHeap::new();
    heap.push(Piece {
        lo,
        hi,
        value,
        error,
    });
    let mut total = value;
    let mut total_err = error;

    while total_err > abs_tol.max(rel_tol * total.abs()) {
        if heap.len() >= MAX_SUBDIVISIONS {
            break;
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // interval collapsed to floating-point resolution
            heap.push(Piece {
                error: 0.0,
                ..worst
            });
            total_err -= worst.error;
            continue;
        }
        let (lv, le) = gk21(&f, worst.lo, mid);
        let (rv, re) = gk21(&f, mid, worst.hi);
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        heap.push(Piece {
            lo: worst.lo,
            hi: mid,
            value: lv,
            error: le,
        });
        heap.push(Piece {
            lo: mid,
            hi: worst.hi,
            value: rv,
            error: re,
        });
    }

    // re-sum to shed the drift of the running totals
    let (value, error_estimate) = heap
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
    Integral {
        value,
        error_estimate,
        intervals: heap.len(),
        converged: error_estimate <= abs_tol.max(rel_tol * value.abs()),
    }
}

/// [`integrate`] with the crate-wide absolute tolerance and no relative tolerance.
pub fn integrate_default<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    integrate(f, lo, hi, DEFAULT_ABS_TOL, 0.0).value
}

/// Sums [`integrate_default`] over consecutive breakpoints; use at kinks.
pub fn integrate_piecewise<F: Fn(f64) -> f64>(f: F, breakpoints: &[f64]) -> f64 {
    breakpoints
        .windows(2)
        .map(|w| integrate_default(&f, w[0], w[1]))
        .sum()
}
