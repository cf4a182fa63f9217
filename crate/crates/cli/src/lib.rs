//! Library side of the `grassdense` command-line tool.

pub mod cache;
pub mod commands;
pub mod record;
pub mod render;
