//! Corpus-level commands: run configuration, synthetic corpora on disk,
//! evaluation, ablation, and uncertainty reports.

mod config;
mod corpus;
mod report;
mod run;

pub use config::{Ablation, AblationVariant, RunConfig};
pub use corpus::{
    case_name, find_mask, list_case_names, load_case, load_corpus, read_manifest, synthesize_corpus, write_corpus,
    CorpusCase, Manifest, GT_FILE, IMAGE_FILE, MANIFEST_FILE, PRIOR_FILE, SPEC_FILE,
};
pub use report::{ablation_csv, ablation_table, eval_csv, refine_csv, sweep_csv, uncertainty_csv};
pub use run::{
    ablate, evaluate_dirs, refine_case, refine_corpus, uncertainty_report, write_segmentation, AblationRow,
    EvalOutcome, RefineRow, UncertaintyRow, VarianceDirection, DIAGNOSTICS_FILE, MASK_FILE, OVERLAY_COLOR_FILE,
    OVERLAY_GRAY_FILE, PHI_FILE,
};
