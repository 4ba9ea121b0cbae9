//! Library side of the `wonderfan` command: config resolution, command
//! dispatch and the JSON envelope.

pub mod commands;
pub mod config;
pub mod envelope;
pub mod error;
pub mod pretty;
pub mod svg;
