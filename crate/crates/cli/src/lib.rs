//! Library surface of the `qsw` command-line tool: the argument grammar,
//! the character-spec and u-file parsers, and the dispatcher. Kept as a
//! library so the parsers can be driven directly by tests and fuzz targets.

pub mod app;
pub mod charspec;
