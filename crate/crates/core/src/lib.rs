//! Exact homomesy laboratory.
//!
//! Finite dynamical systems (a state set with an invertible map) are split
//! into orbits, and statistics are averaged over each orbit in exact
//! rational arithmetic. A statistic is homomesic when every orbit average is
//! the same.
//!
//! The crate covers rowmotion and promotion on order ideals and antichains of
//! `[a]×[b]` ([`poset`], [`dynamics`]), a generic orbit engine
//! ([`engine`]) and a set of classical example systems ([`gallery`]).

pub mod dynamics;
pub mod engine;
pub mod error;
pub mod gallery;
pub mod linalg;
pub mod poset;
pub mod rational;
pub mod report;
pub mod words;

pub use dynamics::{block_gap_reversal, HeightFunction};
pub use engine::{
    check_homomesy, invariant_homomesic_decomposition, iterate_orbit, orbit_average, orbit_partition,
    Decomposition, HomomesicSubspace, HomomesyReport, MapFn, Orbit, OrbitPartition, OrbitSummary, Statistic,
    System, DEFAULT_ORBIT_GUARD,
};
pub use error::{Error, Result};
pub use linalg::rational_nullspace;
pub use poset::{Antichain, ElementSet, GridPoset, OrderIdeal, Poset, DEFAULT_ENUMERATION_GUARD};
pub use rational::Rational;
pub use report::ReportDocument;
pub use words::{cyclic_shift, Direction, Sign, SignWord, StanleyThomasWord};
