//! Command-line front end for quantum-generator process analysis: generator
//! spec files, report rendering, and the `analyze` / `sample` / `compare` /
//! `examples` commands.

pub mod commands;
pub mod report;
pub mod specfile;
