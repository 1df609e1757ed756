//! Parabolic subgroup schemes of reductive groups in small characteristic,
//! encoded as numerical functions on positive roots.

pub mod census;
pub mod chevalley;
pub mod cli;
pub mod geometry;
pub mod phi;
pub mod rootsys;
