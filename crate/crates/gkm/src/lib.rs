//! Equivariant cohomology of Hamiltonian T-spaces from their moment graphs.
//!
//! The input is a moment graph: the isolated fixed points of a Hamiltonian
//! torus action with their moment images, and one edge per sphere of the
//! one-skeleton, labelled by the weight of the action on it. A tuple of
//! polynomials, one per fixed point, restricts from the ambient space exactly
//! when the endpoint values of every edge agree modulo the edge weight, so
//! each cohomological degree is the kernel of an exact rational linear system
//! and can be computed outright.
//!
//! Everything runs on exact arithmetic: arbitrary-precision rationals, or
//! integer lattices for the integer-coefficient variant. No floats anywhere.
//!
//! ```
//! use gkm::builders::projective_space;
//! use gkm::cohomology::hilbert_table;
//! use std::sync::Arc;
//!
//! let graph = Arc::new(projective_space(2));
//! let xi = graph.generic_direction();
//! let table = hilbert_table(&graph, &xi, 2).unwrap();
//! assert_eq!(table.computed(), vec![1, 3, 6]);
//! assert!(table.agrees());
//! ```
//!
//! The [`book`] module carries the rendered user guide; its code blocks run
//! as doctests, which keeps the guide in sync with the library.

pub mod builders;
pub mod cohomology;
pub mod graph;
pub mod integral;
pub mod io;
pub mod linalg;
pub mod morse;
pub mod poly;

pub use cohomology::{CohomologyClass, GradedBasis, HilbertTable};
pub use graph::{Edge, GraphError, MomentGraph, ValidationReport, Vertex};
pub use morse::Direction;
pub use poly::{LinearForm, Polynomial, Rational};

pub mod book;
