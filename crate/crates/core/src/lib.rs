pub mod catalog;
pub mod error;
pub mod fpdata;
pub mod genus;
pub mod localization;
pub mod matching;
pub mod petrie;
pub mod weight_algebra;

pub use error::{Error, Result};
