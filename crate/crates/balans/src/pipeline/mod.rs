//! The data pipeline: panel ingestion, rolling-window correlation networks,
//! systemic-event detection, κ-conditional return distributions, random
//! correlation matrices, and the random-matrix experiments.

pub mod bins;
pub mod events;
pub mod experiment;
pub mod kde;
pub mod panel;
pub mod randcorr;
pub mod rolling;
pub mod window;

pub use bins::{conditional_bins, validate_edges, BinStat, BinSummary, PRESET_EQUAL5, PRESET_UNEVEN5};
pub use events::{detect_events, Event, EventList};
pub use experiment::{
    appendix_experiment, pearson, spectral_limits, ExperimentRow, SpectralLimits,
    LIMIT_MOMENTS, LIMIT_TRACE_EXP_NEG, LIMIT_TRACE_EXP_POS,
};
pub use kde::{gaussian_kde, silverman_bandwidth, trapezoid, KDE_GRID_POINTS};
pub use panel::{load_price_panel, load_return_panel, log_returns, PricePanel, ReturnPanel};
pub use randcorr::{derive_seed, random_correlation, wishart_panel_correlation};
pub use rolling::{
    rolling_indicators, window_trailing_mean_returns, RollingConfig, RollingSeries, WindowRecord,
};
pub use window::{rolling_windows, window_correlation, Window, WindowCorrelation, WindowSpec};
