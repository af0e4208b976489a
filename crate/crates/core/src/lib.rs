//! Wulff constructions, their maximizing duals, and the combinatorics of
//! partitions and skyscrapers, with samplers and a finite Ising model.

pub mod dual;
pub mod ensemble;
pub mod error;
pub mod field;
pub mod geometry;
pub mod ising;
pub mod partition;
pub mod poset;
pub mod series;
pub mod skyscraper;
pub mod spatial;
pub mod wulff;
pub mod verify;

pub use error::{Error, Result};
