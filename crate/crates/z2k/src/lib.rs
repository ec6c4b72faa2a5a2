//! Code files, golden data, parallel scans and the `z2k` command line.

pub mod cli;
pub mod codefile;
pub mod golden;
pub mod reconstruct;
pub mod report;
pub mod scan;
