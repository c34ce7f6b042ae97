//! Motif-represented clustering endofunctors on reflexive directed graphs,
//! and the hierarchical clustering of weighted networks they induce.
//!
//! The library is organised around a small tower:
//!
//! * [`graph`] — reflexive directed graphs, graph maps, and constructions;
//! * [`homsearch`] — existence of (pointed) graph maps, the computational
//!   kernel behind every motif-represented functor;
//! * [`functor`] — builtin endofunctors, the expression algebra, order
//!   comparison, axiom checks, and graph hierarchies;
//! * [`motif`] — motif families and their algebra: attachment composition,
//!   lifting, simplification, wedge covers, bounded representability;
//! * [`network`] — extended networks, sublevel filtrations, induced
//!   hierarchical functors, and treegrams;
//! * [`distance`] — correspondences, distortion, exact network distance,
//!   and the stability harness;
//! * [`expr`], [mod@format], [`render`] — the expression grammar and the file
//!   and figure formats.

pub mod corpus;
mod dense;
pub mod distance;
mod error;
pub mod expr;
pub mod format;
pub mod functor;
pub mod graph;
pub mod homsearch;
pub mod iso;
pub mod motif;
pub mod network;
pub mod render;

pub use error::{Error, ParseError};
pub use functor::{evaluate, Axiom, FunctorExpr};
pub use graph::{Graph, GraphMap, Partition, PointedGraph, StandardKind};
pub use iso::{are_isomorphic, are_pointed_isomorphic};
pub use motif::{Caps, MotifFamily, PointedFamily, UnpointedFamily};
pub use network::{ExtReal, ExtendedNetwork, Treegram};

pub use num_rational::Rational64;
