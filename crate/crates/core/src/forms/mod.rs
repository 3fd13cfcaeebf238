//! Linking forms over Q(ζ)[t^{±1}] and their classification.

pub mod basic;
pub mod decompose;
pub mod jumps;
pub mod linking_form;
pub mod roots;
pub mod witt;

pub use basic::{BasicForm, Decomposition, ETerm, FTerm};
pub use decompose::{classify_cyclic, decompose, is_xi_positive, orthogonalize, primary_decompose};
pub use jumps::JumpMap;
pub use linking_form::LinkingForm;
pub use witt::{WittClass, WittSummand, WittTerm};
