//! Counting, deciding, finding and weight-minimizing color-constrained
//! arborescences and spanning trees of edge-colored multigraphs.
//!
//! Everything reduces to one primitive: the exact determinant of a matrix
//! whose entries are multilinear polynomials in `q - 1` color variables,
//! computed by evaluation over prime fields, interpolation, and CRT
//! reconstruction ([`symdet`]).

pub mod arborescence;
pub mod cli;
pub mod error;
pub mod graph;
pub mod laplacian;
pub mod minweight;
pub mod modp;
pub mod oracle;
pub mod poly;
pub mod symdet;

pub use arborescence::{
    count, count_functional, count_spanning_trees, count_table, decide, find, Arborescence, CountTable,
};
pub use error::{Error, ParseError, Result};
pub use graph::{parse_graph, ColorConstraint, ColoredDigraph, ColoredMultigraph, Edge, ParsedGraph};
pub use laplacian::{build_laplacian, Mode, Orientation, SymbolicMatrix};
pub use minweight::{c_alpha_r, find_min, min_weight, MinWeightConfig, WeightedInstance};
pub use poly::{crt_combine, interpolate, valuation, EvalGrid, ExponentVector, IntPoly, ModPoly, ZPoly};
pub use symdet::{det_mod_p, det_poly, det_poly_mod_p, det_poly_signed, select_primes, Engine, PrimeBasis};
