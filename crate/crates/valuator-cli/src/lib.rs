//! Command-line front end for `valuator`: JSON formats, a catalog of
//! test matroids and the acceptance battery.

pub mod catalog;
pub mod commands;
pub mod io;
pub mod suite;
