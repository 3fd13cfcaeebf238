//! Satellite operations, branched-cover data and the sliceness obstruction.

pub mod cable;
pub mod cover;
pub mod knot_expr;
pub mod obstruct;
pub mod oracle;
pub mod seifert;

pub use cable::{cable_metabelian_witt, classical_witt, connected_sum_witt, mirror_witt, summand_witt};
pub use cover::{BranchedCoverData, Subgroup};
pub use knot_expr::{IteratedTorus, KnotExpr, SignedSummand};
pub use obstruct::{sliceness_obstruction, ObstructionReport, Verdict, Witness};
pub use oracle::torus_decomposition_oracle;
pub use seifert::SeifertMatrix;
