//! Experiment configuration, multi-trial runner, CSV traces and SVG plots.

mod config;
mod csv_io;
mod plot;
mod runner;
mod sweep;

pub use config::{Algorithm, ExperimentConfig, NoiseChoice, QmcMode, RewardChoice, CONFIG_KEYS};
pub use csv_io::{
    emit_csv, parse_summary, parse_traces, write_summary, write_traces, LabeledTrace, TraceLabels,
    SUMMARY_HEADER, TRACE_HEADER,
};
pub use plot::{emit_plot, render_svg, PlotSeries};
pub use runner::{
    mean_std, pooled_standard_error, run_experiment, run_trial, ExperimentOutput, Summary,
    SummaryPoint,
};
pub use sweep::{labels, panel_title, sweep, write_experiment, write_sweep, Panel, SweepConfig};
