//! The moment graph: isolated fixed points with their moment images, joined
//! by the one-skeleton's spheres, each labelled by the weight of the torus
//! action on it.
//!
//! Validation enforces the structure the cohomology computation relies on:
//! every edge's moment difference is a strictly positive multiple of its
//! weight (the edge really is a sphere hanging between its two poles), and at
//! each vertex the incident weights are pairwise nonproportional.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::poly::{LinearForm, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub moment: Vec<Rational>,
}

impl Vertex {
    pub fn new(id: impl Into<String>, moment: Vec<Rational>) -> Self {
        Vertex {
            id: id.into(),
            moment,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub src: String,
    pub dst: String,
    pub weight: LinearForm,
}

impl Edge {
    pub fn new(src: impl Into<String>, dst: impl Into<String>, weight: LinearForm) -> Self {
        Edge {
            src: src.into(),
            dst: dst.into(),
            weight,
        }
    }

    /// The weight oriented away from `id`: the stored weight at the source,
    /// its negative at the target.
    pub fn weight_away_from(&self, id: &str) -> LinearForm {
        if self.src == id {
            self.weight.clone()
        } else {
            self.weight.negate()
        }
    }

    pub fn other_endpoint(&self, id: &str) -> &str {
        if self.src == id {
            &self.dst
        } else {
            &self.src
        }
    }

    pub fn touches(&self, id: &str) -> bool {
        self.src == id || self.dst == id
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentGraph {
    torus_rank: usize,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    index: HashMap<String, usize>,
}

impl MomentGraph {
    pub fn new(torus_rank: usize, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        let index = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.clone(), i))
            .collect();
        MomentGraph {
            torus_rank,
            vertices,
            edges,
            index,
        }
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertex_index(id).map(|i| &self.vertices[i])
    }

    pub fn require_vertex(&self, id: &str) -> Result<&Vertex, GraphError> {
        self.vertex(id)
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn incident_edges<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a Edge> {
        self.edges.iter().filter(move |e| e.touches(id))
    }

    /// Check every structural invariant; violations are returned as data, not
    /// raised. Warnings flag imprimitive weights, which are legitimate input
    /// (they are the interesting case for integer coefficients) but worth
    /// surfacing.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        if self.torus_rank == 0 {
            report.violations.push(Violation::ZeroRank);
        }
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        for v in &self.vertices {
            *seen.entry(&v.id).or_insert(0) += 1;
            if v.moment.len() != self.torus_rank {
                report.violations.push(Violation::MomentLength {
                    vertex: v.id.clone(),
                    expected: self.torus_rank,
                    found: v.moment.len(),
                });
            }
        }
        for (id, count) in seen {
            if count > 1 {
                report.violations.push(Violation::DuplicateVertexId {
                    vertex: id.to_string(),
                });
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            let mut endpoints_ok = true;
            for id in [&e.src, &e.dst] {
                if self.vertex_index(id).is_none() {
                    report.violations.push(Violation::UnknownEndpoint {
                        edge: i,
                        vertex: id.clone(),
                    });
                    endpoints_ok = false;
                }
            }
            if e.src == e.dst {
                report.violations.push(Violation::SelfLoop {
                    edge: i,
                    vertex: e.src.clone(),
                });
                endpoints_ok = false;
            }
            if e.weight.num_vars() != self.torus_rank {
                report.violations.push(Violation::WeightLength {
                    edge: i,
                    expected: self.torus_rank,
                    found: e.weight.num_vars(),
                });
                endpoints_ok = false;
            }
            if endpoints_ok {
                let src = self.vertex(&e.src).expect("endpoint checked");
                let dst = self.vertex(&e.dst).expect("endpoint checked");
                if src.moment.len() == self.torus_rank
                    && dst.moment.len() == self.torus_rank
                    && !self.moment_compatible(src, dst, &e.weight)
                {
                    report.violations.push(Violation::MomentIncompatible {
                        edge: i,
                        src: e.src.clone(),
                        dst: e.dst.clone(),
                    });
                }
            }
            if e.weight.num_vars() == self.torus_rank && !e.weight.is_primitive() {
                report.warnings.push(Warning::ImprimitiveWeight {
                    edge: i,
                    content: e.weight.content(),
                });
            }
        }
        // GKM validity: incident weights pairwise nonproportional
        for v in &self.vertices {
            let incident: Vec<(usize, &Edge)> = self
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.touches(&v.id) && e.weight.num_vars() == self.torus_rank)
                .collect();
            for a in 0..incident.len() {
                for b in (a + 1)..incident.len() {
                    if incident[a]
                        .1
                        .weight
                        .is_proportional_to(&incident[b].1.weight)
                    {
                        report.violations.push(Violation::ProportionalWeights {
                            vertex: v.id.clone(),
                            edge_a: incident[a].0,
                            edge_b: incident[b].0,
                        });
                    }
                }
            }
        }
        report
    }

    /// `mu(dst) - mu(src)` must be `c * weight` for a single rational `c > 0`.
    fn moment_compatible(&self, src: &Vertex, dst: &Vertex, weight: &LinearForm) -> bool {
        let diff: Vec<Rational> = dst
            .moment
            .iter()
            .zip(&src.moment)
            .map(|(d, s)| d - s)
            .collect();
        let k = weight.pivot_var();
        let wk = Rational::from_integer(BigInt::from(weight.coeffs()[k]));
        let c = &diff[k] / &wk;
        if c <= Rational::zero() {
            return false;
        }
        diff.iter()
            .zip(weight.coeffs())
            .all(|(d, &w)| *d == &c * Rational::from_integer(BigInt::from(w)))
    }

    pub fn require_valid(&self) -> Result<(), GraphError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(GraphError::Invalid(Box::new(report)))
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("torus rank must be positive")]
    ZeroRank,
    #[error("duplicate vertex id `{vertex}`")]
    DuplicateVertexId { vertex: String },
    #[error("vertex `{vertex}` has moment of length {found}, expected {expected}")]
    MomentLength {
        vertex: String,
        expected: usize,
        found: usize,
    },
    #[error("edge {edge} refers to unknown vertex `{vertex}`")]
    UnknownEndpoint { edge: usize, vertex: String },
    #[error("edge {edge} is a self-loop at `{vertex}`")]
    SelfLoop { edge: usize, vertex: String },
    #[error("edge {edge} has weight of length {found}, expected {expected}")]
    WeightLength {
        edge: usize,
        expected: usize,
        found: usize,
    },
    #[error("edge {edge} (`{src}` -> `{dst}`): moment difference is not a positive multiple of the weight")]
    MomentIncompatible {
        edge: usize,
        src: String,
        dst: String,
    },
    #[error("vertex `{vertex}`: edges {edge_a} and {edge_b} carry proportional weights")]
    ProportionalWeights {
        vertex: String,
        edge_a: usize,
        edge_b: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Warning {
    #[error("edge {edge} has imprimitive weight (content {content})")]
    ImprimitiveWeight { edge: usize, content: u64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("invalid moment graph:\n{0}")]
    Invalid(Box<ValidationReport>),
    #[error("direction ({xi}) is not generic: it pairs to zero with the weight of edge {edge} (`{src}` -> `{dst}`)")]
    NonGenericDirection {
        xi: String,
        edge: usize,
        src: String,
        dst: String,
    },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("direction has {found} components, torus rank is {expected}")]
    DirectionLength { expected: usize, found: usize },
}
