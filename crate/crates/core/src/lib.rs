//! Plane bichromatic spanning trees of bounded degree.

pub mod builder;
pub mod driver;
pub mod dummy;
pub mod error;
pub mod geom;
pub mod io;
pub mod oracle;
pub mod splits;
pub mod tree;
pub mod validate;

pub use error::{Error, Result};
pub use tree::Tree;
