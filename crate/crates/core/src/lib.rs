//! Principal ratio `γ(G) = x_max / x_min` of the Perron eigenvector of a
//! connected graph, together with the kite graphs that maximise it, degree
//! irregularity measures, and exhaustive searches over small graphs.

pub mod canon;
pub mod closed_form;
pub mod edgelist;
pub mod error;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod irregularity;
pub mod search;
pub mod spectral;
pub mod verify;

pub use canon::{canonical_code, canonical_form, CanonicalCode};
pub use error::{Error, Result};
pub use family::FamilySpec;
pub use graph::{Graph, KiteParams, MAX_VERTICES};
pub use irregularity::{report_all, IrregularityReport};
pub use spectral::{principal_eigenpair, principal_ratio, SpectralData, DEFAULT_TOLERANCE};
