//! Integer-coefficient analogue of the congruence kernel.
//!
//! Over the integers an edge congruence means exact divisibility in `Z[x]`:
//! the difference of the endpoint values must be the edge weight times an
//! integer polynomial. The solutions in a fixed degree form a lattice, not a
//! vector space, and the rational picture can fail: at a vertex whose
//! downward weights share a common factor, the lattice of achievable
//! restrictions can be strictly coarser than the multiples of the downward
//! Euler class. The gap computed here is the index of that discrepancy; gap
//! 1 means the rational statement survives integrally at the vertex.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{GraphError, MomentGraph};
use crate::linalg;
use crate::morse::Direction;
use crate::poly::{monomial_basis, PolyError, Polynomial, Rational};

#[derive(Debug, Error)]
pub enum IntegralError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("expected one value per vertex ({expected}), got {found}")]
    WrongValueCount { expected: usize, found: usize },
    #[error("value at `{vertex}` must be an integer polynomial, homogeneous of degree {degree}")]
    BadTupleValue { vertex: String, degree: u32 },
    #[error("no nonzero integral class vanishes below `{vertex}`: the graph does not model a closed Hamiltonian T-space")]
    ZeroLattice { vertex: String },
    #[error(
        "integral restrictions at `{vertex}` are not all multiples of the downward Euler class"
    )]
    NotProportional { vertex: String },
    #[error("the downward Euler class at `{vertex}` is not an integral combination of achievable restrictions")]
    GapNotIntegral { vertex: String },
}

/// Lattice basis of the degree-`d` integer congruence kernel, in Hermite
/// normal form over the vertex-major monomial coordinates.
#[derive(Debug, Clone)]
pub struct IntKernelBasis {
    degree: u32,
    vertex_ids: Vec<String>,
    monomials: Vec<Vec<u32>>,
    basis: Vec<Vec<BigInt>>,
}

impl IntKernelBasis {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Value of the `elem`-th basis tuple at a vertex.
    pub fn element_value(&self, elem: usize, vertex: &str) -> Option<Polynomial> {
        let vi = self.vertex_ids.iter().position(|id| id == vertex)?;
        let m = self.monomials.len();
        let coords = &self.basis.get(elem)?[vi * m..(vi + 1) * m];
        Some(poly_from_int_coords(
            self.monomials[0].len(),
            &self.monomials,
            coords,
        ))
    }

    /// Lattice membership of an integer tuple given in graph vertex order.
    pub fn contains(&self, values: &[Polynomial]) -> Result<bool, IntegralError> {
        if values.len() != self.vertex_ids.len() {
            return Err(IntegralError::WrongValueCount {
                expected: self.vertex_ids.len(),
                found: values.len(),
            });
        }
        let mut target = Vec::new();
        for (id, p) in self.vertex_ids.iter().zip(values) {
            if !p.has_integer_coeffs() || !p.is_homogeneous_of(self.degree) {
                return Err(IntegralError::BadTupleValue {
                    vertex: id.clone(),
                    degree: self.degree,
                });
            }
            for mono in &self.monomials {
                target.push(p.coefficient(mono).numer().clone());
            }
        }
        Ok(linalg::hnf_contains(&self.basis, &target))
    }
}

fn poly_from_int_coords(n: usize, monos: &[Vec<u32>], coords: &[BigInt]) -> Polynomial {
    Polynomial::from_terms(
        n,
        monos
            .iter()
            .cloned()
            .zip(coords.iter().map(|c| Rational::from_integer(c.clone()))),
    )
    .expect("basis monomials match the ring")
}

/// Integer rows expressing `a_src - a_dst = weight * q_e` per edge, with the
/// quotient coefficients as auxiliary unknowns. Columns: vertex-major value
/// coordinates first, then per-edge quotient coordinates.
fn divisibility_rows(
    graph: &MomentGraph,
    degree: u32,
    monos: &[Vec<u32>],
    zero_vertices: &[usize],
) -> (Vec<Vec<BigInt>>, usize, usize) {
    let n = graph.torus_rank();
    let nverts = graph.vertices().len();
    let m = monos.len();
    let mono_index: HashMap<&[u32], usize> = monos
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_slice(), i))
        .collect();
    let qmonos = if degree == 0 {
        Vec::new()
    } else {
        monomial_basis(n, degree - 1)
    };
    let q = qmonos.len();
    let a_cols = nverts * m;
    let cols = a_cols + graph.edges().len() * q;

    let mut rows = Vec::new();
    for (ei, e) in graph.edges().iter().enumerate() {
        let src = graph.vertex_index(&e.src).expect("validated");
        let dst = graph.vertex_index(&e.dst).expect("validated");
        let mut block: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); cols]; m];
        for k in 0..m {
            block[k][src * m + k] = BigInt::one();
            block[k][dst * m + k] = -BigInt::one();
        }
        for (gi, gamma) in qmonos.iter().enumerate() {
            let col = a_cols + ei * q + gi;
            for (var, &w) in e.weight.coeffs().iter().enumerate() {
                if w == 0 {
                    continue;
                }
                let mut exps = gamma.clone();
                exps[var] += 1;
                let row = mono_index[exps.as_slice()];
                block[row][col] = -BigInt::from(w);
            }
        }
        rows.extend(block);
    }
    for &vi in zero_vertices {
        for k in 0..m {
            let mut row = vec![BigInt::zero(); cols];
            row[vi * m + k] = BigInt::one();
            rows.push(row);
        }
    }
    (rows, cols, a_cols)
}

fn kernel_projected_to_values(
    graph: &MomentGraph,
    degree: u32,
    monos: &[Vec<u32>],
    zero_vertices: &[usize],
) -> Vec<Vec<BigInt>> {
    let (rows, cols, a_cols) = divisibility_rows(graph, degree, monos, zero_vertices);
    let kernel = linalg::integer_kernel(&rows, cols);
    // the quotient coordinates are determined by the values, so projecting a
    // kernel basis yields a basis of the projected lattice
    let projected: Vec<Vec<BigInt>> = kernel.iter().map(|v| v[..a_cols].to_vec()).collect();
    linalg::row_hnf(projected)
}

/// Lattice basis of the degree-`d` integer kernel.
pub fn int_kernel_basis(graph: &MomentGraph, degree: u32) -> Result<IntKernelBasis, IntegralError> {
    graph.require_valid()?;
    let monos = monomial_basis(graph.torus_rank(), degree);
    let basis = kernel_projected_to_values(graph, degree, &monos, &[]);
    Ok(IntKernelBasis {
        degree,
        vertex_ids: graph.vertices().iter().map(|v| v.id.clone()).collect(),
        monomials: monos,
        basis,
    })
}

/// The divisibility gap at a vertex: the index of `Z * euler_class` inside
/// the lattice of restrictions of integral classes vanishing strictly below
/// the vertex. Gap 1 exactly when the Euler class generates that lattice.
pub fn euler_divisibility_gap(
    graph: &MomentGraph,
    xi: &Direction,
    vertex: &str,
) -> Result<BigInt, IntegralError> {
    graph.require_valid()?;
    graph.check_generic(xi)?;
    let degree = graph.morse_index(xi, vertex)? / 2;
    let euler = graph.euler_class_down(xi, vertex)?;
    let n = graph.torus_rank();
    let monos = monomial_basis(n, degree);
    let m = monos.len();

    let level = graph.height(xi, vertex)?;
    let mut zero_vertices = Vec::new();
    for (vi, w) in graph.vertices().iter().enumerate() {
        if graph.height(xi, &w.id)? < level {
            zero_vertices.push(vi);
        }
    }
    let kernel = kernel_projected_to_values(graph, degree, &monos, &zero_vertices);

    // Euler class as integer coordinates, split into content * primitive.
    let euler_coords: Vec<BigInt> = euler
        .coords(&monos)
        .iter()
        .map(|c| {
            debug_assert!(c.denom().is_one());
            c.numer().clone()
        })
        .collect();
    let content = euler_coords
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(&c.abs()));
    assert!(
        !content.is_zero(),
        "Euler class is a product of nonzero forms"
    );
    let prim: Vec<BigInt> = euler_coords.iter().map(|c| c / &content).collect();
    let lead = prim.iter().position(|c| !c.is_zero()).expect("nonzero");

    let vi = graph
        .vertex_index(vertex)
        .ok_or_else(|| GraphError::UnknownVertex(vertex.to_string()))?;
    let mut multipliers: Vec<BigInt> = Vec::new();
    for elem in &kernel {
        let value = &elem[vi * m..(vi + 1) * m];
        if value.iter().all(|c| c.is_zero()) {
            continue;
        }
        let (lambda, rem) = value[lead].div_rem(&prim[lead]);
        let proportional = rem.is_zero() && value.iter().zip(&prim).all(|(v, p)| *v == &lambda * p);
        if !proportional {
            return Err(IntegralError::NotProportional {
                vertex: vertex.to_string(),
            });
        }
        multipliers.push(lambda);
    }
    if multipliers.is_empty() {
        return Err(IntegralError::ZeroLattice {
            vertex: vertex.to_string(),
        });
    }
    let generator = multipliers
        .iter()
        .fold(BigInt::zero(), |acc, l| acc.gcd(&l.abs()));
    let (gap, rem) = content.div_rem(&generator);
    if !rem.is_zero() {
        return Err(IntegralError::GapNotIntegral {
            vertex: vertex.to_string(),
        });
    }
    Ok(gap)
}

/// The gap at every vertex, in graph order.
pub fn gap_report(
    graph: &MomentGraph,
    xi: &Direction,
) -> Result<Vec<(String, BigInt)>, IntegralError> {
    graph
        .vertices()
        .iter()
        .map(|v| Ok((v.id.clone(), euler_divisibility_gap(graph, xi, &v.id)?)))
        .collect()
}
