pub mod category;
pub mod complex;
pub mod error;
pub mod harness;
pub mod json;
pub mod linalg;
pub mod model;
pub mod module;
pub mod morphcat;
pub mod quiver;
pub mod resolution;
pub mod rep;

pub use error::{Error, Result};
