//! Library surface of the report tool: config parsing, the pipeline, and
//! canonical report serialization. The binary in `main.rs` is a thin
//! argument-parsing shell over these.

pub mod config;
pub mod pipeline;
pub mod report;

pub use config::{ConfigError, ModelConfig, ModelKind, PieceConfig};
pub use pipeline::{
    csv_rows, default_tol, run_pipeline, run_pipeline_with, scan_iterates, PipelineOutput,
    DEFAULT_MAX_TWIST,
};
pub use report::Report;
