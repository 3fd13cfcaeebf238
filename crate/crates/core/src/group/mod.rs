//! Free groups, Fox calculus and zero-surgery presentations.

pub mod fox;
pub mod presentation;
pub mod word;

pub use fox::{fox_derivative, fox_jacobian, GroupRingElt};
pub use presentation::{parse_word, torus_presentation, ChainData, SurgeryPresentation};
pub use word::Word;
