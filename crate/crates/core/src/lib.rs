//! Quantified 3-DNF formulas, their reduction to bipartite maximal
//! independent set transversal instances, and exact solvers to check it.

pub mod cli;
pub mod formula;
pub mod graph;
pub mod harness;
pub mod normalize;
pub mod reduction;
