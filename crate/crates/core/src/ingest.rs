//! Loading cumulative series from CSV.
//!
//! Two layouts are understood:
//!
//! * plain: two columns `key,value` with an optional header, where `key` is
//!   either an ISO-8601 date or an integer index;
//! * OWID: a header-addressed file with at least `date`, `location` and
//!   `total_cases` columns, filtered to a single location.
//!
//! Missing days (or indices) are forward-filled with the previous cumulative
//! value so the result is one value per step.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;

use crate::error::{Error, Result};
use crate::transform::{moving_average, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesFormat {
    Plain,
    Owid,
}

/// Where and how to read a series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSource {
    pub path: PathBuf,
    pub format: SeriesFormat,
    pub location: Option<String>,
    /// Inclusive date bounds.
    pub date_range: Option<(NaiveDate, NaiveDate)>,
}

impl SeriesSource {
    pub fn plain(path: impl Into<PathBuf>) -> Self {
        SeriesSource {
            path: path.into(),
            format: SeriesFormat::Plain,
            location: None,
            date_range: None,
        }
    }

    pub fn owid(path: impl Into<PathBuf>, location: impl Into<String>) -> Self {
        SeriesSource {
            path: path.into(),
            format: SeriesFormat::Owid,
            location: Some(location.into()),
            date_range: None,
        }
    }

    pub fn with_date_range(mut self, from: NaiveDate, to: NaiveDate) -> Self {
        self.date_range = Some((from, to));
        self
    }

    fn validate(&self) -> Result<()> {
        if self.format == SeriesFormat::Owid && self.location.is_none() {
            return Err(Error::domain("OWID input requires a location"));
        }
        if let Some((from, to)) = self.date_range {
            if to < from {
                return Err(Error::domain(format!(
                    "date range {from}..{to} is reversed"
                )));
            }
        }
        Ok(())
    }

    fn in_range(&self, date: NaiveDate) -> bool {
        self.date_range
            .is_none_or(|(from, to)| date >= from && date <= to)
    }
}

/// One parsed row.
#[derive(Debug, Clone, PartialEq)]
pub struct RawRecord {
    pub date: NaiveDate,
    pub value: f64,
    pub location: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Date(NaiveDate),
    Index(i64),
}

fn parse_date(s: &str) -> Option<NaiveDate> {
    NaiveDate::parse_from_str(s.trim(), "%Y-%m-%d").ok()
}

fn parse_value(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

fn parse_error(path: &Path, line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn read_plain(src: &SeriesSource) -> Result<Vec<(Key, f64)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(open(&src.path)?);
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = rec.position().map_or(i as u64 + 1, |p| p.line());
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() < 2 {
            return Err(parse_error(&src.path, line, "expected two columns"));
        }
        let key = if let Some(d) = parse_date(&rec[0]) {
            Key::Date(d)
        } else if let Ok(n) = rec[0].parse::<i64>() {
            Key::Index(n)
        } else if i == 0 {
            // header row
            continue;
        } else {
            return Err(parse_error(
                &src.path,
                line,
                format!("unparseable key {:?}", &rec[0]),
            ));
        };
        let value = parse_value(&rec[1]).ok_or_else(|| {
            parse_error(&src.path, line, format!("unparseable value {:?}", &rec[1]))
        })?;
        if let Key::Date(d) = key {
            if !src.in_range(d) {
                continue;
            }
        }
        rows.push((key, value));
    }
    Ok(rows)
}

fn read_owid(src: &SeriesSource) -> Result<Vec<(Key, f64)>> {
    let location = src.location.as_deref().unwrap_or_default();
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(open(&src.path)?);
    let headers = rdr.headers()?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| parse_error(&src.path, 1, format!("missing column {name:?}")))
    };
    let (date_col, loc_col, val_col) =
        (column("date")?, column("location")?, column("total_cases")?);

    let mut seen_location = false;
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.get(loc_col) != Some(location) {
            continue;
        }
        seen_location = true;
        let date = rec
            .get(date_col)
            .and_then(parse_date)
            .ok_or_else(|| parse_error(&src.path, line, "unparseable date"))?;
        if !src.in_range(date) {
            continue;
        }
        let raw = rec.get(val_col).unwrap_or("");
        if raw.is_empty() {
            // not yet reported; filled forward below
            continue;
        }
        let value = parse_value(raw).ok_or_else(|| {
            parse_error(&src.path, line, format!("unparseable total_cases {raw:?}"))
        })?;
        rows.push((Key::Date(date), value));
    }
    if !seen_location {
        return Err(Error::UnknownLocation(location.to_string()));
    }
    Ok(rows)
}

/// Reads `src` into a gap-free series. Dated input gets index `0` on its
/// first date and a calendar attached; integer-keyed input keeps its indices.
pub fn load_series(src: &SeriesSource) -> Result<TimeSeries> {
    src.validate()?;
    let mut rows = match src.format {
        SeriesFormat::Plain => read_plain(src)?,
        SeriesFormat::Owid => read_owid(src)?,
    };
    if rows.is_empty() {
        return Err(Error::EmptySeries(src.path.clone()));
    }
    let dated = matches!(rows[0].0, Key::Date(_));
    if rows.iter().any(|(k, _)| matches!(k, Key::Date(_)) != dated) {
        return Err(parse_error(&src.path, 0, "mixed date and index keys"));
    }
    // stable sort keeps the last row for a repeated key at the end of its run
    rows.sort_by_key(|(k, _)| *k);

    let ordinal = |k: Key| match k {
        Key::Date(d) => (d - NaiveDate::MIN).num_days(),
        Key::Index(n) => n,
    };
    let first = ordinal(rows[0].0);
    let last = ordinal(rows[rows.len() - 1].0);
    let mut values = Vec::with_capacity((last - first + 1) as usize);
    let mut iter = rows.iter().peekable();
    let mut current = rows[0].1;
    for step in first..=last {
        while let Some((k, v)) = iter.peek() {
            if ordinal(*k) > step {
                break;
            }
            current = *v;
            iter.next();
        }
        values.push(current);
    }

    let label = match &src.location {
        Some(loc) => loc.clone(),
        None => src
            .path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
    };
    match rows[0].0 {
        Key::Date(d) => Ok(TimeSeries::new(0, values, label)?.with_date_origin(d)),
        Key::Index(n) => TimeSeries::new(n, values, label),
    }
}

/// Writes `ts` as a plain two-column CSV, keyed by date when the series is
/// dated and by index otherwise.
pub fn write_plain_csv(ts: &TimeSeries, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_plain(ts, file)
}

pub fn write_plain<W: Write>(ts: &TimeSeries, out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    let dated = ts.date_origin().is_some();
    wtr.write_record([if dated { "date" } else { "n" }, "value"])?;
    for (i, v) in ts.values().iter().enumerate() {
        let n = ts.start_index() + i as i64;
        let key = match ts.date_of(n) {
            Some(d) if dated => d.to_string(),
            _ => n.to_string(),
        };
        wtr.write_record([key, v.to_string()])?;
    }
    wtr.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

/// Steps where a cumulative series fell by more than `tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityWarning {
    /// `(index, date, drop)` per offending step.
    pub drops: Vec<(i64, Option<NaiveDate>, f64)>,
}

impl std::fmt::Display for MonotonicityWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "cumulative series decreases at {} step(s):",
            self.drops.len()
        )?;
        for (n, date, drop) in &self.drops {
            match date {
                Some(d) => write!(f, " {d} (-{drop})")?,
                None => write!(f, " n={n} (-{drop})")?,
            }
        }
        Ok(())
    }
}

/// Data-quality check for cumulative series; never an error.
pub fn check_monotone(ts: &TimeSeries, tolerance: f64) -> Option<MonotonicityWarning> {
    let drops: Vec<_> = ts
        .values()
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] - w[1] > tolerance)
        .map(|(i, w)| {
            let n = ts.start_index() + i as i64 + 1;
            (n, ts.date_of(n), w[0] - w[1])
        })
        .collect();
    (!drops.is_empty()).then_some(MonotonicityWarning { drops })
}

/// Smooths a loaded series for analysis.
///
/// With `smooth_window = 1` the series is returned unchanged. Otherwise the
/// centered moving average is taken and renumbered from `n = 1`, with each
/// value dated on the last day of its window; for a daily series starting on
/// day `D`, `n = 1` is `D + window - 1`.
pub fn prepare_pipeline_input(ts: &TimeSeries, smooth_window: usize) -> Result<TimeSeries> {
    let smoothed = moving_average(ts, smooth_window)?;
    if smooth_window == 1 {
        return Ok(smoothed);
    }
    let lag = (smooth_window as i64 - 1) / 2;
    let mut out = smoothed.renumbered(1);
    if let Some(origin) = smoothed.date_origin() {
        // move each label from the window's center to its last day
        let first_center = origin + chrono::Duration::days(smoothed.start_index());
        let first_end = first_center + chrono::Duration::days(lag);
        out = out.with_date_origin(first_end - chrono::Duration::days(1));
    }
    Ok(out)
}
