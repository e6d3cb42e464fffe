//! Time integration of the sixth-order gradient flow `d gamma/dt = K nu`.

pub mod checkpoint;
pub mod config;
pub mod operator;
pub mod run;
pub mod stepper;

pub use checkpoint::{checkpoint_load, checkpoint_save};
pub use config::{FlowConfig, Scheme};
pub use operator::{
    el_operator, first_variation_check, predicted_variation, ElOperatorField, VariationReport,
    VariationRow,
};
pub use run::{run, run_with, DiagnosticsRecord, RunOutput, Termination, DIAGNOSTICS_HEADER};
pub use stepper::{step, FlowState};
