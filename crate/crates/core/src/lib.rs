//! Gompertz wavelets and a discrete continuous wavelet transform for
//! locating Gompertz-shaped growth waves in cumulative time series.
//!
//! The crate is layered bottom-up:
//!
//! * [`special_fn`]: exact Stirling and Bernoulli tables, `|Γ(1+iξ)|²`, `ζ(s)`.
//! * [`gompertz`]: the Gompertz curve, its closed-form derivatives and landmarks.
//! * [`quadrature`]: adaptive Gauss–Kronrod integration used by every numeric check.
//! * [`wavelets`]: normalized mother wavelets, child wavelets, Fourier forms and
//!   admissibility constants.
//! * [`transform`]: second differences, scalograms, peak detection, saturation estimates.
//! * [`ingest`]: CSV loading (plain `date,value` and OWID-style files).
//! * [`cli`]: the `gwave` command-line front end.

pub mod cli;
pub mod error;
pub mod gompertz;
pub mod ingest;
pub mod quadrature;
pub mod special_fn;
pub mod transform;
pub mod wavelets;

pub use error::{Error, Result};
pub use gompertz::{DerivativeOrder, GompertzParams, Landmarks};
pub use transform::{DifferencedSeries, Scalogram, TimeSeries, WaveDetection};
pub use wavelets::{ChildWavelet, MotherWavelet, WaveletFamily};
