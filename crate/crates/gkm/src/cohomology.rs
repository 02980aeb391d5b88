//! Degreewise computation of the equivariant cohomology as the kernel of the
//! edge congruences.
//!
//! A class is a tuple of homogeneous polynomials, one per fixed point; it
//! comes from the ambient space exactly when, for every edge, the difference
//! of the two endpoint values is divisible by the edge weight. Divisibility
//! by a linear form is the vanishing of the restriction to its hyperplane, so
//! each degree is the nullspace of an exact rational linear system. The
//! Morse side predicts the dimension of every degree independently, which is
//! the consistency check the whole artifact revolves around.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{GraphError, MomentGraph};
use crate::linalg;
use crate::morse::Direction;
use crate::poly::{monomial_basis, monomial_count, PolyError, Polynomial, Rational};

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("expected one value per vertex ({expected}), got {found}")]
    WrongValueCount { expected: usize, found: usize },
    #[error("value at `{vertex}` is not homogeneous of degree {degree}")]
    NotHomogeneous { vertex: String, degree: u32 },
    #[error("congruence fails on edge {edge} (`{src}` -> `{dst}`)")]
    CongruenceViolated {
        edge: usize,
        src: String,
        dst: String,
    },
    #[error(
        "no flow-up class at `{vertex}`: the graph does not model a closed Hamiltonian T-space"
    )]
    NoFlowUpClass { vertex: String },
    #[error("classes live on different moment graphs")]
    GraphMismatch,
    #[error("class does not vanish strictly below `{vertex}`: nonzero at `{witness}`")]
    NotVanishingBelow { vertex: String, witness: String },
}

/// A candidate cohomology class, recorded by its restrictions to the fixed
/// points. Construction checks every edge congruence, so a value of this
/// type always lies in the degreewise kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct CohomologyClass {
    graph: Arc<MomentGraph>,
    degree: u32,
    values: Vec<Polynomial>,
}

impl CohomologyClass {
    pub fn new(
        graph: Arc<MomentGraph>,
        degree: u32,
        values: Vec<Polynomial>,
    ) -> Result<Self, CohomologyError> {
        graph.require_valid()?;
        if values.len() != graph.vertices().len() {
            return Err(CohomologyError::WrongValueCount {
                expected: graph.vertices().len(),
                found: values.len(),
            });
        }
        for (v, p) in graph.vertices().iter().zip(&values) {
            if p.num_vars() != graph.torus_rank() || !p.is_homogeneous_of(degree) {
                return Err(CohomologyError::NotHomogeneous {
                    vertex: v.id.clone(),
                    degree,
                });
            }
        }
        let class = CohomologyClass {
            graph,
            degree,
            values,
        };
        class.check_congruences()?;
        Ok(class)
    }

    fn check_congruences(&self) -> Result<(), CohomologyError> {
        for (i, e) in self.graph.edges().iter().enumerate() {
            let a = self.value(&e.src).expect("validated endpoint");
            let b = self.value(&e.dst).expect("validated endpoint");
            let diff = a.try_sub(b)?;
            if !diff.restrict_to_hyperplane(&e.weight).is_zero() {
                return Err(CohomologyError::CongruenceViolated {
                    edge: i,
                    src: e.src.clone(),
                    dst: e.dst.clone(),
                });
            }
        }
        Ok(())
    }

    /// The unit: degree 0, value 1 at every fixed point.
    pub fn unit(graph: Arc<MomentGraph>) -> Result<Self, CohomologyError> {
        let n = graph.torus_rank();
        let values = vec![Polynomial::one(n); graph.vertices().len()];
        Self::new(graph, 0, values)
    }

    pub fn graph(&self) -> &Arc<MomentGraph> {
        &self.graph
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn value(&self, id: &str) -> Option<&Polynomial> {
        self.graph.vertex_index(id).map(|i| &self.values[i])
    }

    /// Values in graph vertex order.
    pub fn values(&self) -> impl Iterator<Item = (&str, &Polynomial)> {
        self.graph
            .vertices()
            .iter()
            .zip(&self.values)
            .map(|(v, p)| (v.id.as_str(), p))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Polynomial::is_zero)
    }

    /// Vertexwise multiplication by a global polynomial (the module action
    /// of the base ring). The congruences survive because the difference on
    /// each edge is scaled by the same factor.
    pub fn times_polynomial(&self, p: &Polynomial) -> Result<CohomologyClass, CohomologyError> {
        let extra = p.homogeneous_degree().ok_or(PolyError::NotHomogeneous)?;
        let values: Result<Vec<Polynomial>, PolyError> =
            self.values.iter().map(|v| v.try_mul(p)).collect();
        CohomologyClass::new(self.graph.clone(), self.degree + extra, values?)
    }

    /// Coefficient vector over the vertex-major monomial coordinates.
    pub fn coords(&self, monos: &[Vec<u32>]) -> Vec<Rational> {
        self.values.iter().flat_map(|p| p.coords(monos)).collect()
    }
}

/// Vertexwise product of two classes on the same graph. The result satisfies
/// the congruences automatically (each edge ideal absorbs products); the
/// constructor re-checks them anyway.
pub fn class_product(
    a: &CohomologyClass,
    b: &CohomologyClass,
) -> Result<CohomologyClass, CohomologyError> {
    if a.graph != b.graph {
        return Err(CohomologyError::GraphMismatch);
    }
    let values: Result<Vec<Polynomial>, PolyError> = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(p, q)| p.try_mul(q))
        .collect();
    CohomologyClass::new(a.graph.clone(), a.degree + b.degree, values?)
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, p) in self.values() {
            writeln!(f, "{id} {p}")?;
        }
        Ok(())
    }
}

/// Basis of the degree-`d` congruence kernel, in the canonical echelon form
/// over the vertex-major monomial coordinates.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    pub degree: u32,
    pub classes: Vec<CohomologyClass>,
}

impl GradedBasis {
    pub fn dimension(&self) -> usize {
        self.classes.len()
    }
}

/// Computed kernel dimensions next to the Morse prediction, degree by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertTable {
    pub rows: Vec<HilbertRow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertRow {
    pub degree: u32,
    pub computed: usize,
    pub predicted: usize,
}

impl HilbertRow {
    pub fn agrees(&self) -> bool {
        self.computed == self.predicted
    }
}

impl HilbertTable {
    pub fn agrees(&self) -> bool {
        self.rows.iter().all(HilbertRow::agrees)
    }

    pub fn computed(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.computed).collect()
    }

    pub fn predicted(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.predicted).collect()
    }
}

impl fmt::Display for HilbertTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{} {} {}", r.degree, r.computed, r.predicted)?;
        }
        Ok(())
    }
}

/// Rows of the congruence system in degree `d`: for each edge, the
/// coordinates of `a_src - a_dst` restricted to the weight's hyperplane,
/// expressed in the one-fewer-variable monomial basis.
fn congruence_rows(graph: &MomentGraph, degree: u32, monos: &[Vec<u32>]) -> Vec<Vec<Rational>> {
    let n = graph.torus_rank();
    let m = monos.len();
    let cols = graph.vertices().len() * m;
    let mut rows = Vec::new();
    for e in graph.edges() {
        let sub_basis = monomial_basis(n - 1, degree);
        if sub_basis.is_empty() {
            continue;
        }
        let src = graph.vertex_index(&e.src).expect("validated");
        let dst = graph.vertex_index(&e.dst).expect("validated");
        // restriction of each degree-d monomial to the hyperplane, as
        // coordinates over the sub-basis
        let restricted: Vec<Vec<Rational>> = monos
            .iter()
            .map(|mono| {
                let p =
                    Polynomial::from_terms(n, [(mono.clone(), Rational::from_integer(1.into()))])
                        .expect("basis monomial");
                p.restrict_to_hyperplane(&e.weight).coords(&sub_basis)
            })
            .collect();
        for r in 0..sub_basis.len() {
            let mut row = vec![Rational::zero(); cols];
            for (k, coords) in restricted.iter().enumerate() {
                if !coords[r].is_zero() {
                    row[src * m + k] = coords[r].clone();
                    row[dst * m + k] = -coords[r].clone();
                }
            }
            rows.push(row);
        }
    }
    rows
}

fn class_from_coords(
    graph: &Arc<MomentGraph>,
    degree: u32,
    monos: &[Vec<u32>],
    coords: &[Rational],
) -> Result<CohomologyClass, CohomologyError> {
    let n = graph.torus_rank();
    let m = monos.len();
    let values: Result<Vec<Polynomial>, PolyError> = (0..graph.vertices().len())
        .map(|vi| {
            Polynomial::from_terms(
                n,
                monos
                    .iter()
                    .cloned()
                    .zip(coords[vi * m..(vi + 1) * m].iter().cloned()),
            )
        })
        .collect();
    CohomologyClass::new(graph.clone(), degree, values?)
}

/// Basis of the degree-`d` kernel of all edge congruences.
pub fn kernel_basis(graph: &Arc<MomentGraph>, degree: u32) -> Result<GradedBasis, CohomologyError> {
    graph.require_valid()?;
    let n = graph.torus_rank();
    let monos = monomial_basis(n, degree);
    let cols = graph.vertices().len() * monos.len();
    let rows = congruence_rows(graph, degree, &monos);
    let classes = linalg::nullspace_basis(&rows, cols)
        .iter()
        .map(|v| class_from_coords(graph, degree, &monos, v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GradedBasis { degree, classes })
}

/// Morse prediction for the degree-`d` kernel dimension: each vertex of
/// index `lambda` contributes the monomial count of degree `d - lambda/2`
/// (nothing below its index).
pub fn predicted_dimension(
    graph: &MomentGraph,
    xi: &Direction,
    degree: u32,
) -> Result<usize, CohomologyError> {
    let n = graph.torus_rank();
    let mut total = 0;
    for v in graph.vertices() {
        let half = graph.morse_index(xi, &v.id)? / 2;
        if degree >= half {
            total += monomial_count(n, degree - half);
        }
    }
    Ok(total)
}

/// Kernel dimensions against the Morse prediction for all degrees `0..=max_degree`.
pub fn hilbert_table(
    graph: &Arc<MomentGraph>,
    xi: &Direction,
    max_degree: u32,
) -> Result<HilbertTable, CohomologyError> {
    graph.require_valid()?;
    graph.check_generic(xi)?;
    let mut rows = Vec::with_capacity(max_degree as usize + 1);
    for d in 0..=max_degree {
        rows.push(HilbertRow {
            degree: d,
            computed: kernel_basis(graph, d)?.dimension(),
            predicted: predicted_dimension(graph, xi, d)?,
        });
    }
    Ok(HilbertTable { rows })
}

/// Betti numbers read off the Morse indices: `b_{2k}` counts the vertices of
/// index `2k`, odd entries vanish.
pub fn betti_numbers(graph: &MomentGraph, xi: &Direction) -> Result<Vec<usize>, CohomologyError> {
    graph.require_valid()?;
    graph.check_generic(xi)?;
    let indices: Vec<u32> = graph
        .vertices()
        .iter()
        .map(|v| graph.morse_index(xi, &v.id))
        .collect::<Result<_, _>>()?;
    let top = indices.iter().copied().max().unwrap_or(0) as usize;
    let mut betti = vec![0usize; top + 1];
    for i in indices {
        betti[i as usize] += 1;
    }
    Ok(betti)
}

/// Basis of the degree-`d` kernel classes that vanish at every vertex
/// strictly below `v`.
pub fn vanishing_below_basis(
    graph: &Arc<MomentGraph>,
    xi: &Direction,
    vertex: &str,
    degree: u32,
) -> Result<GradedBasis, CohomologyError> {
    graph.require_valid()?;
    graph.check_generic(xi)?;
    let n = graph.torus_rank();
    let monos = monomial_basis(n, degree);
    let m = monos.len();
    let cols = graph.vertices().len() * m;
    let mut rows = congruence_rows(graph, degree, &monos);
    let level = graph.height(xi, vertex)?;
    for (vi, w) in graph.vertices().iter().enumerate() {
        if graph.height(xi, &w.id)? < level {
            for k in 0..m {
                let mut row = vec![Rational::zero(); cols];
                row[vi * m + k] = Rational::one();
                rows.push(row);
            }
        }
    }
    let classes = linalg::nullspace_basis(&rows, cols)
        .iter()
        .map(|v| class_from_coords(graph, degree, &monos, v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GradedBasis { degree, classes })
}

/// The canonical flow-up class of a vertex: the class of degree
/// `morse_index/2` vanishing strictly below the vertex whose value there is
/// exactly the downward Euler class.
///
/// The defining linear system can be underdetermined; the canonical choice
/// is the echelon particular solution with all free coordinates set to zero.
pub fn flow_up_class(
    graph: &Arc<MomentGraph>,
    xi: &Direction,
    vertex: &str,
) -> Result<CohomologyClass, CohomologyError> {
    graph.require_valid()?;
    graph.check_generic(xi)?;
    let n = graph.torus_rank();
    let degree = graph.morse_index(xi, vertex)? / 2;
    let euler = graph.euler_class_down(xi, vertex)?;
    let monos = monomial_basis(n, degree);
    let m = monos.len();
    let cols = graph.vertices().len() * m;

    let mut rows = congruence_rows(graph, degree, &monos);
    let mut rhs = vec![Rational::zero(); rows.len()];
    let level = graph.height(xi, vertex)?;
    for (vi, w) in graph.vertices().iter().enumerate() {
        if graph.height(xi, &w.id)? < level {
            for k in 0..m {
                let mut row = vec![Rational::zero(); cols];
                row[vi * m + k] = Rational::one();
                rows.push(row);
                rhs.push(Rational::zero());
            }
        }
    }
    let vi = graph
        .vertex_index(vertex)
        .ok_or_else(|| GraphError::UnknownVertex(vertex.to_string()))?;
    let euler_coords = euler.coords(&monos);
    for (k, c) in euler_coords.iter().enumerate() {
        let mut row = vec![Rational::zero(); cols];
        row[vi * m + k] = Rational::one();
        rows.push(row);
        rhs.push(c.clone());
    }

    let solution = linalg::solve_particular(&rows, &rhs, cols).ok_or_else(|| {
        CohomologyError::NoFlowUpClass {
            vertex: vertex.to_string(),
        }
    })?;
    class_from_coords(graph, degree, &monos, &solution)
}

/// Divisibility of a class's restriction by the downward Euler class at
/// `vertex`. Requires the class to vanish strictly below the vertex; returns
/// the witness quotient when divisible.
pub fn check_euler_divisibility(
    class: &CohomologyClass,
    xi: &Direction,
    vertex: &str,
) -> Result<Option<Polynomial>, CohomologyError> {
    let graph = class.graph();
    graph.check_generic(xi)?;
    let level = graph.height(xi, vertex)?;
    for (id, p) in class.values() {
        if graph.height(xi, id)? < level && !p.is_zero() {
            return Err(CohomologyError::NotVanishingBelow {
                vertex: vertex.to_string(),
                witness: id.to_string(),
            });
        }
    }
    let factors: Vec<_> = graph
        .downward_edges(xi, vertex)?
        .into_iter()
        .map(|(_, away)| (away, 1u32))
        .collect();
    let value = class.value(vertex).expect("class is total");
    Ok(value.divide_by_linear_powers(&factors)?)
}

/// Flow-up generators for every vertex plus the degreewise freeness check:
/// in each degree up to the bound, the monomial multiples of the generators
/// must be linearly independent and span the kernel.
#[derive(Debug, Clone)]
pub struct ModuleGenerators {
    pub generators: Vec<CohomologyClass>,
    pub freeness: Vec<FreenessRow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessRow {
    pub degree: u32,
    pub products: usize,
    pub rank: usize,
    pub kernel_dimension: usize,
}

impl FreenessRow {
    /// Independent (rank = products) and spanning (products = kernel dim).
    pub fn is_free(&self) -> bool {
        self.rank == self.products && self.products == self.kernel_dimension
    }
}

impl ModuleGenerators {
    pub fn is_free(&self) -> bool {
        self.freeness.iter().all(FreenessRow::is_free)
    }
}

pub fn module_generators(
    graph: &Arc<MomentGraph>,
    xi: &Direction,
    max_degree: u32,
) -> Result<ModuleGenerators, CohomologyError> {
    graph.require_valid()?;
    graph.check_generic(xi)?;
    let n = graph.torus_rank();
    let generators: Vec<CohomologyClass> = graph
        .vertices()
        .iter()
        .map(|v| flow_up_class(graph, xi, &v.id))
        .collect::<Result<_, _>>()?;

    let mut freeness = Vec::new();
    for d in 0..=max_degree {
        let monos = monomial_basis(n, d);
        let cols = graph.vertices().len() * monos.len();
        let mut product_vectors = Vec::new();
        for gen in &generators {
            if gen.degree() > d {
                continue;
            }
            for mono in monomial_basis(n, d - gen.degree()) {
                let p = Polynomial::from_terms(n, [(mono, Rational::from_integer(1.into()))])?;
                let prod = gen.times_polynomial(&p)?;
                product_vectors.push(prod.coords(&monos));
            }
        }
        let rank = linalg::rank(&product_vectors, cols);
        freeness.push(FreenessRow {
            degree: d,
            products: product_vectors.len(),
            rank,
            kernel_dimension: kernel_basis(graph, d)?.dimension(),
        });
    }
    Ok(ModuleGenerators {
        generators,
        freeness,
    })
}
