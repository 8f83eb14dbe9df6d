//! Output plumbing shared between the binary and its tests: CSV writing
//! and re-parsing, and SVG line charts.

pub mod csv;
pub mod svg;
