pub mod algebra;
pub mod blanchfield;
pub mod error;
pub mod forms;
pub mod group;
pub mod pipeline;
pub mod representation;
pub mod satellite;

pub use error::{Error, Result};
