//! Command line and HTTP front ends for the `realgame` library.

pub mod cli;
pub mod service;
pub mod specs;
