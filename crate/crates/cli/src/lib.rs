//! Rendering and golden-table checks behind the `vvmf` binary.

pub mod fixtures;
pub mod render;
