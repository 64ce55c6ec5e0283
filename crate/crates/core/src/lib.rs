//! Warp quantification analysis.
//!
//! A banded dynamic-time-warping engine ([`dtw`]) whose optimal warping path is
//! turned into five interpretable descriptors ([`metrics`]):
//!
//! - **WDR** warp distortion ratio, excess path length over the diagonal
//! - **CWD** central warp deviation, typical offset from the diagonal
//! - **WDV** warp deviation variability, dispersion of that offset
//! - **DRL** diagonal run length, persistence of lockstep segments
//! - **DCR** diagonal crossing rate, sustained side switches of the path
//!
//! Around that core sit a controlled-simulation lab ([`signal`], [`sim`]) that
//! checks each descriptor tracks its own driver, and a pairwise connectivity
//! pipeline ([`connectivity`]) with covariate-adjusted association testing
//! ([`stats`]).
//!
//! ```
//! use warpquant::{compute_report, CentralTendency, DtwParams, Dwell, TimeSeries};
//!
//! let x = TimeSeries::new(vec![0.0, 1.0, 2.0, 1.0, 0.0], 1.0).unwrap();
//! let report = compute_report(&x, &x, DtwParams::new(2, 1.0).unwrap(), Dwell::new(1).unwrap(),
//!     CentralTendency::Median).unwrap();
//! assert_eq!(report.dtw_distance, 0.0);
//! assert_eq!(report.drl, 1.0);
//! ```
//!
//! The `examples/` directory holds one runnable program per capability; the
//! `warpquant` binary exposes the same operations on CSV files.

pub mod cli;
pub mod connectivity;
pub mod dtw;
pub mod error;
pub mod io;
pub mod metrics;
pub mod signal;
pub mod sim;
pub mod stats;
pub mod svg;

pub use dtw::{dtw_align, pointwise_cost, AlignmentResult, DtwParams, TimeSeries, WarpPath};
pub use error::{Result, WqaError};
pub use metrics::{
    compute_dcr, compute_drl, compute_report, compute_wdr, compute_wdv, compute_cwd,
    warp_deviation, CentralTendency, Dwell, WqaReport,
};
