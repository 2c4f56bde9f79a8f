//! Representation data of the Temperley-Lieb category: multiplicities and
//! fusion rules, trace pairings and negligible morphisms, the Bratteli tower,
//! and positivity of the trace form.

pub mod bratteli;
pub mod fusion;
pub mod gram;
pub mod linalg;
pub mod positivity;

pub use bratteli::{bratteli, BratteliDiagram};
pub use fusion::{
    ballot, catalan_identity_check, clebsch_gordan, decompose_power, power_decomposition,
    truncated_fusion, BallotTable, FusionResult,
};
pub use gram::{
    gram_matrix, is_negligible, loop_matrix, negligible_basis, quotient_dimension,
    truncated_dimension, DPoly, GramMatrix, LoopMatrix,
};
pub use positivity::{positivity_scan, LevelReport, PositivityReport, Verdict};
