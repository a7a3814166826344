//! Exact computation of topological representation zeta functions of unipotent
//! groups given by nilpotent Lie algebras over Q.

#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::suspicious_arithmetic_impl)]

pub mod corpus;
pub mod engine;
pub mod euler;
pub mod exact;
pub mod format;
pub mod idealtools;
pub mod io;
pub mod laurent;
pub mod lie;
pub mod polyhedra;
pub mod repdatum;
pub mod topo_eval;

pub use exact::{Rational, RationalFunction};
pub use laurent::LaurentPoly;
