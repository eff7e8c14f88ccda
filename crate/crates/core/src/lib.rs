//! Exact Lin-Lu-Yau Ollivier-Ricci curvature for graphs, with the tools
//! needed to study Ricci-flat graphs of girth at least five.
//!
//! - [`graph`]: immutable simple graphs, distances, girth.
//! - [`transport`]: exact W1 transport with certificates and edge curvature.
//! - [`pentagon`]: 5-cycles through edges, opposite pairs, irregular edges and
//!   the pentagon-gluing surface construction.
//! - [`catalog`]: the known Ricci-flat families.
//! - [`search`]: canonical forms and isomorph-free enumeration of small
//!   subcubic graphs, with a census of the Ricci-flat ones.
//! - [`cli`]: the `ricci-flat` command line.

pub mod catalog;
pub mod cli;
pub mod edgelist;
pub mod graph;
pub mod pentagon;
pub mod rational;
pub mod search;
pub mod transport;

pub use graph::{Girth, Graph, GraphError, Vertex};
pub use rational::Rational;
