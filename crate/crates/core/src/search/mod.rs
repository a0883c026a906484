//! Exhaustive extremal search and the structural audits run on its winners.

mod extremal;
mod kite;
mod kiteopt;
mod perturb;
mod scan;
mod structure;

pub use extremal::{
    find_extremal, log_gamma_upper_bound, Contender, ExtremalAcc, ExtremalFold, SearchOptions,
    SearchResult, Source,
};
pub use kite::is_kite;
pub use kiteopt::{kite_optimize, KiteOptimum, KiteRow};
pub use perturb::{perturb_analysis, perturb_deletion, PerturbationReport};
pub use scan::{
    ingest_graph6, scan_labeled, CountFold, Diagnostic, GraphFold, IngestStats, ScanStats,
    MAX_SCAN_ORDER, MIN_SCAN_ORDER,
};
pub use structure::{structure_check, StructureReport, LEMMA7_EXHAUSTIVE_LIMIT};
