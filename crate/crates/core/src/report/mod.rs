//! Quality indicators, exports and the end-to-end pipeline.

mod config;
mod export;
mod indicators;
mod pipeline;

pub use config::{Config, Thresholds};
pub use export::{export_network, module_color, ExportFormat};
pub use indicators::{
    evaluate_indicators, ClassIndicator, IndicatorVerdict, QualityReport, Verdict, CLASS_INDICATORS,
    PROJECT_INDICATORS,
};
pub use pipeline::{
    run_pipeline, Bundle, HierarchyLevel, HierarchySummary, Input, ModuleResult, NetworkSummary,
    PipelineRun, StageError, BUNDLE_SCHEMA, SCHEMA_VERSION,
};
