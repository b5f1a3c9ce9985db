//! Command-line front end: spec files, reports, random search and the
//! built-in catalog.

pub mod catalog;
pub mod generate;
pub mod render;
pub mod search;
pub mod spec;
