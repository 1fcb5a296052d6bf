//! Discrete wavelet analysis of cumulative series.
//!
//! A growth wave `y(t) = y_max exp(-exp(-(t - b) / a))` has second derivative
//! `y'' = y_max / (2√2 a^{3/2}) ψ₂^{a,b}`, so correlating the second
//! differences of a series with child wavelets peaks near the wave's
//! `(a, b)` with height `y_max / (2√2 a^{3/2})`. The correlation is the plain
//! sample sum
//!
//! ```text
//! Index(a, b) = sum_n Δ²y_n ψ^{a,b}(n)
//! ```
//!
//! with no sampling-interval weight.

use std::io::Write;

use chrono::{Duration, NaiveDate};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::wavelets::{ChildWavelet, MotherWavelet, WaveletFamily};

/// Default peak threshold as a fraction of the global scalogram maximum.
pub const DEFAULT_THRESHOLD_FRACTION: f64 = 0.2;

/// Default minimum shift separation between retained peaks, in samples.
pub const DEFAULT_MIN_SEPARATION: i64 = 10;

/// A daily (or unit-step) series of cumulative values indexed by integer `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    start_index: i64,
    values: Vec<f64>,
    label: String,
    /// Calendar date of index `n = 0`, when the series is dated.
    date_origin: Option<NaiveDate>,
}

impl TimeSeries {
    pub fn new(start_index: i64, values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::domain(format!(
                "time series needs at least 3 values, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!("non-finite value at position {i}")));
        }
        Ok(TimeSeries {
            start_index,
            values,
            label: label.into(),
            date_origin: None,
        })
    }

    /// Attaches a calendar: index `n` falls on `origin + n` days.
    pub fn with_date_origin(mut self, origin: NaiveDate) -> Self {
        self.date_origin = Some(origin);
        self
    }

    pub fn start_index(&self) -> i64 {
        self.start_index
    }

    /// Index of the last value.
    pub fn end_index(&self) -> i64 {
        self.start_index + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn date_origin(&self) -> Option<NaiveDate> {
        self.date_origin
    }

    /// Value at index `n`, if inside the series.
    pub fn get(&self, n: i64) -> Option<f64> {
        let i = n.checked_sub(self.start_index)?;
        usize::try_from(i)
            .ok()
            .and_then(|i| self.values.get(i).copied())
    }

    /// Calendar date of index `n`.
    pub fn date_of(&self, n: i64) -> Option<NaiveDate> {
        self.date_origin?.checked_add_signed(Duration::days(n))
    }

    /// Index whose date is `date`.
    pub fn index_of(&self, date: NaiveDate) -> Option<i64> {
        Some((date - self.date_origin?).num_days())
    }

    /// Copy with values multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let mut out = TimeSeries::new(
            self.start_index,
            self.values.iter().map(|v| v * factor).collect(),
            self.label.clone(),
        )?;
        out.date_origin = self.date_origin;
        Ok(out)
    }

    /// Copy with every index moved by `k`, dates kept attached to values.
    pub fn shifted(&self, k: i64) -> Self {
        TimeSeries {
            start_index: self.start_index + k,
            values: self.values.clone(),
            label: self.label.clone(),
            date_origin: self
                .date_origin
                .and_then(|d| d.checked_sub_signed(Duration::days(k))),
        }
    }

    /// Copy renumbered so the first value has index `start_index`, keeping
    /// every value on its calendar date.
    pub fn renumbered(&self, start_index: i64) -> Self {
        self.shifted(start_index - self.start_index)
    }

    /// The sub-series with indices in `lo..=hi`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Result<Self> {
        let lo = lo.max(self.start_index);
        let hi = hi.min(self.end_index());
        if hi < lo {
            return Err(Error::domain(format!("index range {lo}..={hi} is empty")));
        }
        let a = (lo - self.start_index) as usize;
        let b = (hi - self.start_index) as usize;
        let mut out = TimeSeries::new(lo, self.values[a..=b].to_vec(), self.label.clone())?;
        out.date_origin = self.date_origin;
        Ok(out)
    }
}

/// First and central second differences of a series.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferencedSeries {
    initial: f64,
    first: Vec<f64>,
    second: Vec<f64>,
    index_offset: i64,
}

impl DifferencedSeries {
    /// Wraps externally computed second differences whose first element sits
    /// at index `index_offset`.
    pub fn from_second(second: Vec<f64>, index_offset: i64) -> Result<Self> {
        if let Some(i) = second.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!(
                "non-finite second difference at position {i}"
            )));
        }
        Ok(DifferencedSeries {
            initial: f64::NAN,
            first: Vec::new(),
            second,
            index_offset,
        })
    }

    /// `Δ¹y_n = y_n - y_{n-1}`; element `i` belongs to index `index_offset + i`.
    pub fn first(&self) -> &[f64] {
        &self.first
    }

    /// `Δ²y_n = y_{n+1} - 2y_n + y_{n-1}`; element `i` belongs to index `index_offset + i`.
    pub fn second(&self) -> &[f64] {
        &self.second
    }

    /// Index of `second()[0]` (and of `first()[0]`).
    pub fn index_offset(&self) -> i64 {
        self.index_offset
    }

    /// Index range covered by the second differences.
    pub fn index_range(&self) -> (i64, i64) {
        (
            self.index_offset,
            self.index_offset + self.second.len() as i64 - 1,
        )
    }

    pub fn second_at(&self, n: i64) -> Option<f64> {
        let i = n.checked_sub(self.index_offset)?;
        usize::try_from(i)
            .ok()
            .and_then(|i| self.second.get(i).copied())
    }

    /// Keeps only the second differences with index in `lo..=hi`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Result<Self> {
        let (first, last) = self.index_range();
        let (lo, hi) = (lo.max(first), hi.min(last));
        if hi < lo {
            return Err(Error::domain(format!(
                "index window {lo}..={hi} has no data"
            )));
        }
        let a = (lo - self.index_offset) as usize;
        let b = (hi - self.index_offset) as usize;
        DifferencedSeries::from_second(self.second[a..=b].to_vec(), lo)
    }

    /// Rebuilds `y` from its first value and the first differences.
    pub fn reconstruct(&self) -> Vec<f64> {
        std::iter::once(self.initial)
            .chain(self.first.iter().scan(self.initial, |acc, d| {
                *acc += d;
                Some(*acc)
            }))
            .collect()
    }
}

pub fn second_differences(ts: &TimeSeries) -> Result<DifferencedSeries> {
    let y = ts.values();
    if y.len() < 3 {
        return Err(Error::domain("second differences need at least 3 values"));
    }
    let first: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
    let second: Vec<f64> = y.windows(3).map(|w| w[2] - 2.0 * w[1] + w[0]).collect();
    Ok(DifferencedSeries {
        initial: y[0],
        first,
        second,
        index_offset: ts.start_index() + 1,
    })
}

/// Centered moving average over an odd `window`. The first output value
/// sits at `start_index + (window - 1) / 2`.
pub fn moving_average(ts: &TimeSeries, window: usize) -> Result<TimeSeries> {
    if window == 0 || window.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "moving-average window must be odd and positive, got {window}"
        )));
    }
    if ts.len() < window {
        return Err(Error::domain(format!(
            "series of length {} is shorter than window {window}",
            ts.len()
        )));
    }
    if window == 1 {
        return Ok(ts.clone());
    }
    let w = window as f64;
    let values: Vec<f64> = ts
        .values()
        .windows(window)
        .map(|win| win.iter().sum::<f64>() / w)
        .collect();
    let mut out = TimeSeries::new(
        ts.start_index() + (window as i64 - 1) / 2,
        values,
        ts.label(),
    )?;
    out.date_origin = ts.date_origin();
    Ok(out)
}

/// `Index(a, b) = Σ_n Δ²y_n ψ^{a,b}(n)` over the samples inside the child's
/// effective support; samples outside the data contribute nothing.
pub fn index_at(d: &DifferencedSeries, w: &ChildWavelet) -> f64 {
    let (lo, hi) = w.support();
    let (first, last) = d.index_range();
    let n_lo = (lo.ceil() as i64).max(first);
    let n_hi = (hi.floor() as i64).min(last);
    if n_hi < n_lo {
        return 0.0;
    }
    let base = (n_lo - d.index_offset) as usize;
    d.second[base..=base + (n_hi - n_lo) as usize]
        .iter()
        .zip(n_lo..)
        .map(|(&v, n)| v * w.eval(n as f64))
        .sum()
}

/// Integer scales `lo..=hi`.
pub fn integer_scales(lo: u32, hi: u32) -> Vec<f64> {
    (lo..=hi).map(f64::from).collect()
}

/// `count` geometrically spaced scales from `lo` to `hi`.
pub fn log_scales(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo && count >= 1) {
        return Err(Error::domain(
            "log scale grid needs 0 < lo <= hi and count >= 1",
        ));
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    let step = (hi / lo).ln() / (count - 1) as f64;
    Ok((0..count).map(|i| lo * (step * i as f64).exp()).collect())
}

/// Index values over a (scale, shift) grid, stored row-major by scale.
#[derive(Debug, Clone, PartialEq)]
pub struct Scalogram {
    scales: Vec<f64>,
    shifts: Vec<i64>,
    index_values: Vec<f64>,
    wavelet: MotherWavelet,
    /// Index range of the analysed data, for boundary flags.
    data_range: (i64, i64),
}

impl Scalogram {
    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn wavelet(&self) -> &MotherWavelet {
        &self.wavelet
    }

    pub fn data_range(&self) -> (i64, i64) {
        self.data_range
    }

    pub fn rows(&self) -> usize {
        self.scales.len()
    }

    pub fn cols(&self) -> usize {
        self.shifts.len()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.index_values[row * self.shifts.len() + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        let c = self.shifts.len();
        &self.index_values[row * c..(row + 1) * c]
    }

    pub fn values(&self) -> &[f64] {
        &self.index_values
    }

    /// Largest cell as `(row, col, value)`.
    pub fn argmax(&self) -> Option<(usize, usize, f64)> {
        let c = self.shifts.len();
        self.index_values
            .iter()
            .enumerate()
            .fold(None, |best: Option<(usize, f64)>, (i, &v)| match best {
                Some((_, bv)) if bv >= v => best,
                _ => Some((i, v)),
            })
            .map(|(i, v)| (i / c, i % c, v))
    }

    /// Detection record for a grid cell.
    pub fn detection_at(&self, row: usize, col: usize) -> WaveDetection {
        WaveDetection::new(
            &self.wavelet,
            self.scales[row],
            self.shifts[col] as f64,
            self.get(row, col),
            self.data_range,
        )
    }

    /// Writes the matrix as CSV: header `scale,<shift>...`, then one row per
    /// scale with the scale in the first column.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        let mut header = Vec::with_capacity(self.shifts.len() + 1);
        header.push("scale".to_string());
        header.extend(self.shifts.iter().map(|b| b.to_string()));
        wtr.write_record(&header)?;
        for (r, a) in self.scales.iter().enumerate() {
            let mut rec = Vec::with_capacity(self.shifts.len() + 1);
            rec.push(a.to_string());
            rec.extend(self.row(r).iter().map(|v| v.to_string()));
            wtr.write_record(&rec)?;
        }
        wtr.flush().map_err(|e| Error::Csv(e.into()))?;
        Ok(())
    }
}

/// Computes `Index(a, b)` for every scale in `scales` and every integer shift
/// in the data's index range. Scale rows are filled in parallel.
pub fn scalogram(d: &DifferencedSeries, w: &MotherWavelet, scales: &[f64]) -> Result<Scalogram> {
    if scales.is_empty() {
        return Err(Error::domain("scale grid is empty"));
    }
    if let Some(a) = scales.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
        return Err(Error::domain(format!("scales must be positive, got {a}")));
    }
    if scales.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::domain("scales must be strictly ascending"));
    }
    if d.second().is_empty() {
        return Err(Error::domain("no second differences to analyse"));
    }
    let (first, last) = d.index_range();
    let shifts: Vec<i64> = (first..=last).collect();
    let cols = shifts.len();
    let mut index_values = vec![0.0; scales.len() * cols];
    index_values
        .par_chunks_mut(cols)
        .zip(scales.par_iter())
        .try_for_each(|(row, &a)| -> Result<()> {
            for (cell, &b) in row.iter_mut().zip(&shifts) {
                *cell = index_at(d, &ChildWavelet::new(*w, a, b as f64)?);
            }
            Ok(())
        })?;
    Ok(Scalogram {
        scales: scales.to_vec(),
        shifts,
        index_values,
        wavelet: *w,
        data_range: (first, last),
    })
}

/// A scalogram peak read as a growth wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveDetection {
    pub a: f64,
    pub b: f64,
    pub index_value: f64,
    /// `N a^{3/2} Index`, where `N` is the order-2 wavelet's normalization
    /// (`2√2` for Gompertz). `None` for higher-order wavelets.
    pub y_max_estimate: Option<f64>,
    /// True when `b` lies within `2a` of either end of the data.
    pub near_boundary: bool,
}

impl WaveDetection {
    fn new(w: &MotherWavelet, a: f64, b: f64, index_value: f64, data_range: (i64, i64)) -> Self {
        let y_max_estimate = (w.order() == 2).then(|| saturation_factor(w, a) * index_value);
        let margin = 2.0 * a;
        let near_boundary = b - data_range.0 as f64 <= margin || data_range.1 as f64 - b <= margin;
        WaveDetection {
            a,
            b,
            index_value,
            y_max_estimate,
            near_boundary,
        }
    }
}

/// `y_max / Index` for a matched order-2 wave at scale `a`: `N a^{3/2}`.
pub fn saturation_factor(w: &MotherWavelet, a: f64) -> f64 {
    w.normalization() * a.powf(1.5)
}

/// Strict 8-neighbourhood local maxima with `Index >= threshold_fraction *
/// max`, greedily kept from the highest down while at least
/// `min_separation` shifts away from every already kept peak.
pub fn detect_peaks(
    s: &Scalogram,
    min_separation: i64,
    threshold_fraction: f64,
) -> Vec<WaveDetection> {
    let Some((_, _, global)) = s.argmax() else {
        return Vec::new();
    };
    if global.is_nan() || global <= 0.0 {
        return Vec::new();
    }
    let floor = threshold_fraction * global;
    let (rows, cols) = (s.rows() as isize, s.cols() as isize);
    let mut candidates: Vec<(usize, usize, f64)> = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = s.get(r as usize, c as usize);
            if v < floor {
                continue;
            }
            let is_peak = (-1..=1isize).all(|dr| {
                (-1..=1isize).all(|dc| {
                    let (rr, cc) = (r + dr, c + dc);
                    (dr == 0 && dc == 0)
                        || rr < 0
                        || cc < 0
                        || rr >= rows
                        || cc >= cols
                        || s.get(rr as usize, cc as usize) < v
                })
            });
            if is_peak {
                candidates.push((r as usize, c as usize, v));
            }
        }
    }
    candidates.sort_by(|x, y| y.2.total_cmp(&x.2));
    let mut kept: Vec<(usize, usize, f64)> = Vec::new();
    for cand in candidates {
        let b = s.shifts()[cand.1];
        if kept
            .iter()
            .all(|k| (s.shifts()[k.1] - b).abs() >= min_separation)
        {
            kept.push(cand);
        }
    }
    kept.into_iter()
        .map(|(r, c, _)| s.detection_at(r, c))
        .collect()
}

/// Best Gompertz-ψ₂ and logistic peaks over the same data and scales.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveletComparison {
    pub gompertz_peak: WaveDetection,
    pub logistic_peak: WaveDetection,
}

impl WaveletComparison {
    /// The family with the larger peak Index; both wavelets have unit norm.
    pub fn better_family(&self) -> WaveletFamily {
        if self.gompertz_peak.index_value >= self.logistic_peak.index_value {
            WaveletFamily::Gompertz
        } else {
            WaveletFamily::Logistic
        }
    }
}

/// Global scalogram maximum of `d` under `w`, as a detection.
pub fn best_peak(
    d: &DifferencedSeries,
    w: &MotherWavelet,
    scales: &[f64],
) -> Result<WaveDetection> {
    let s = scalogram(d, w, scales)?;
    let (r, c, _) = s.argmax().expect("scalogram is non-empty");
    Ok(s.detection_at(r, c))
}

pub fn compare_wavelets(d: &DifferencedSeries, scales: &[f64]) -> Result<WaveletComparison> {
    Ok(WaveletComparison {
        gompertz_peak: best_peak(d, &MotherWavelet::gompertz(2)?, scales)?,
        logistic_peak: best_peak(d, &MotherWavelet::logistic2(), scales)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gompertz::{DerivativeOrder, GompertzParams};

    fn series(values: Vec<f64>) -> TimeSeries {
        TimeSeries::new(0, values, "test").unwrap()
    }

    #[test]
    fn time_series_validation() {
        assert!(TimeSeries::new(0, vec![1.0, 2.0], "x").is_err());
        assert!(TimeSeries::new(0, vec![1.0, f64::NAN, 2.0], "x").is_err());
    }

    #[test]
    fn squares_have_constant_second_difference() {
        let d = second_differences(&series(vec![0.0, 1.0, 4.0, 9.0])).unwrap();
        assert_eq!(d.second(), &[2.0, 2.0]);
        assert_eq!(d.first(), &[1.0, 3.0, 5.0]);
        assert_eq!(d.index_offset(), 1);
        assert_eq!(d.reconstruct(), vec![0.0, 1.0, 4.0, 9.0]);
    }

    #[test]
    fn constant_series_has_zero_differences() {
        let d = second_differences(&series(vec![7.0; 10])).unwrap();
        assert!(d.second().iter().all(|&v| v == 0.0));
        assert_eq!(d.second().len(), 8);
    }

    #[test]
    fn second_differences_track_second_derivative() {
        let p = GompertzParams::from_scale_shift(100_000.0, 8.0, 25.0).unwrap();
        let ts = series((0..=80).map(|n| p.value(n as f64)).collect());
        let d = second_differences(&ts).unwrap();
        let two = DerivativeOrder::new(2).unwrap();
        let peak = (0..800)
            .map(|i| p.derivative(two, i as f64 * 0.1).abs())
            .fold(0.0, f64::max);
        for n in 5..=60 {
            let dev = (d.second_at(n).unwrap() - p.derivative(two, n as f64)).abs();
            assert!(dev < 0.01 * peak, "n={n}");
        }
    }

    #[test]
    fn moving_average_cases() {
        let ts = series(vec![1.0, 2.0, 3.0, 4.0, 5.0]);
        let m = moving_average(&ts, 3).unwrap();
        assert_eq!(m.values(), &[2.0, 3.0, 4.0]);
        assert_eq!(m.start_index(), 1);
        assert_eq!(moving_average(&ts, 1).unwrap(), ts);
        assert!(moving_average(&ts, 2).is_err());
        assert!(moving_average(&ts, 0).is_err());
        assert!(moving_average(&ts, 7).is_err());
    }

    #[test]
    fn moving_average_removes_alternating_noise() {
        let eps = 0.3;
        let ts = series(
            (0..60)
                .map(|i| 2.0 * i as f64 + 5.0 + if i % 2 == 0 { eps } else { -eps })
                .collect(),
        );
        let m = moving_average(&ts, 7).unwrap();
        assert_eq!(m.start_index(), 3);
        for (i, v) in m.values().iter().enumerate() {
            let n = (i + 3) as f64;
            assert!((v - (2.0 * n + 5.0)).abs() < eps / 3.0);
        }
    }

    #[test]
    fn index_of_zero_signal_is_zero() {
        let d = DifferencedSeries::from_second(vec![0.0; 100], 0).unwrap();
        let w = MotherWavelet::gompertz(2)
            .unwrap()
            .child(8.0, 25.0)
            .unwrap();
        assert_eq!(index_at(&d, &w), 0.0);
    }

    #[test]
    fn index_of_sampled_second_derivative() {
        // y'' of a pure wave sampled at integers
        let p = GompertzParams::from_scale_shift(100_000.0, 8.0, 25.0).unwrap();
        let two = DerivativeOrder::new(2).unwrap();
        let second: Vec<f64> = (0..=350).map(|n| p.derivative(two, n as f64)).collect();
        let d = DifferencedSeries::from_second(second, 0).unwrap();
        let psi = MotherWavelet::gompertz(2).unwrap();
        let at_wave = index_at(&d, &psi.child(8.0, 25.0).unwrap());
        let ceiling = 100_000.0 / (2.0 * 2f64.sqrt() * 8f64.powf(1.5));
        assert!((ceiling - 1562.5).abs() < 1e-9);
        assert!((at_wave - ceiling).abs() < 0.01 * ceiling);
        let far = index_at(&d, &psi.child(8.0, 100.0).unwrap());
        assert!(far.abs() < 0.01 * at_wave);
    }

    #[test]
    fn scalogram_rejects_bad_grids() {
        let d = DifferencedSeries::from_second(vec![1.0; 20], 0).unwrap();
        let w = MotherWavelet::gompertz(2).unwrap();
        assert!(scalogram(&d, &w, &[]).is_err());
        assert!(scalogram(&d, &w, &[2.0, 1.0]).is_err());
        assert!(scalogram(&d, &w, &[0.0, 1.0]).is_err());
    }

    #[test]
    fn zero_input_gives_zero_scalogram_and_no_peaks() {
        let d = second_differences(&series(vec![0.0; 120])).unwrap();
        let s = scalogram(
            &d,
            &MotherWavelet::gompertz(2).unwrap(),
            &integer_scales(1, 16),
        )
        .unwrap();
        assert_eq!(s.rows(), 16);
        assert_eq!(s.cols(), 118);
        assert!(s.values().iter().all(|&v| v == 0.0));
        assert!(detect_peaks(&s, DEFAULT_MIN_SEPARATION, DEFAULT_THRESHOLD_FRACTION).is_empty());
    }

    #[test]
    fn single_wave_detection_recovers_saturation() {
        let p = GompertzParams::from_scale_shift(50_000.0, 10.0, 50.0).unwrap();
        let ts = series((0..=150).map(|n| p.value(n as f64)).collect());
        let d = second_differences(&ts).unwrap();
        let s = scalogram(
            &d,
            &MotherWavelet::gompertz(2).unwrap(),
            &integer_scales(1, 64),
        )
        .unwrap();
        let peaks = detect_peaks(&s, DEFAULT_MIN_SEPARATION, DEFAULT_THRESHOLD_FRACTION);
        assert_eq!(peaks.len(), 1, "{peaks:?}");
        let pk = peaks[0];
        assert!((pk.a - 10.0).abs() <= 1.0 && (pk.b - 50.0).abs() <= 1.0);
        let y = pk.y_max_estimate.unwrap();
        assert!((y - 50_000.0).abs() < 0.02 * 50_000.0, "y={y}");
        assert_eq!(y, 2.0 * 2f64.sqrt() * pk.a.powf(1.5) * pk.index_value);
    }

    #[test]
    fn boundary_flag() {
        let w = MotherWavelet::gompertz(2).unwrap();
        assert!(WaveDetection::new(&w, 10.0, 15.0, 1.0, (0, 300)).near_boundary);
        assert!(WaveDetection::new(&w, 10.0, 290.0, 1.0, (0, 300)).near_boundary);
        assert!(!WaveDetection::new(&w, 10.0, 150.0, 1.0, (0, 300)).near_boundary);
        let w3 = MotherWavelet::gompertz(3).unwrap();
        assert!(WaveDetection::new(&w3, 10.0, 150.0, 1.0, (0, 300))
            .y_max_estimate
            .is_none());
    }

    #[test]
    fn scalogram_csv_layout() {
        let d = DifferencedSeries::from_second(vec![0.0, 1.0, 0.0, -1.0, 0.0], 3).unwrap();
        let s = scalogram(&d, &MotherWavelet::gompertz(2).unwrap(), &[1.0, 2.0]).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "scale,3,4,5,6,7");
        assert!(lines[1].starts_with("1,"));
        assert!(lines[2].starts_with("2,"));
        assert_eq!(lines[1].split(',').count(), 6);
    }

    #[test]
    fn log_scale_grid() {
        let g = log_scales(1.0, 64.0, 7).unwrap();
        assert_eq!(g.len(), 7);
        assert!((g[6] - 64.0).abs() < 1e-12 && (g[3] - 8.0).abs() < 1e-12);
        assert!(log_scales(0.0, 4.0, 3).is_err());
    }
}
