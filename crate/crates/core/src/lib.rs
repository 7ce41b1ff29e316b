//! Symbolic verification engine for multi-parameter twisted quantum algebras,
//! their modified forms, and the twist isomorphism onto Lusztig's modified
//! quantum algebra.

pub mod campaign;
pub mod coeffring;
pub mod error;
pub mod hopf;
pub mod ncalg;
pub mod presentations;
pub mod repcheck;
pub mod report;
pub mod rootdata;
pub mod specializations;
pub mod twistmap;

pub use error::{Error, Result};
pub use rootdata::{CartanDatum, RootDatum, Weight};
