//! Exact workbench for Helly-type theorems on separated d-intervals.
//!
//! The ground set is a finite `P ⊆ ℝ × [d]`; convex sets are traces of
//! separated d-intervals on `P`. Everything is exact-rational and checked
//! against brute force at small sizes.

pub mod cli;
pub mod complex;
pub mod experiment;
pub mod generators;
pub mod guards;
pub mod helly;
pub mod instance;
pub mod interval;
pub mod lp;
pub mod piercing;
pub mod rat;
pub mod report;
pub mod sweep;

pub use complex::{CollapseSequence, CollapseStep, ComplexError, SimplicialComplex};
pub use guards::{GuardError, Guards};
pub use interval::{
    f_value, hull, intersect_all, minimal_dinterval, trace_of, DInterval, FCoord, FLexValue,
    IntervalError, LevelInterval, Point, PointId, PointSet, TraceSet,
};
pub use rat::Rat;
pub use sweep::{nerve, sweep_collapse, truncate_family, SweepError};
