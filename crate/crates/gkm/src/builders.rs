//! Constructors for the standard examples: spheres, projective spaces,
//! products, weight-scaled actions, and graphs read off a polytope's
//! vertices and edges.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{Edge, MomentGraph, Vertex};
use crate::poly::{LinearForm, PolyError, Rational};

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("scale factor must be positive")]
    ZeroScale,
    #[error("polytope edge ({0}, {1}) joins coincident points")]
    CoincidentPoints(usize, usize),
    #[error("polytope edge index {0} out of range")]
    BadEdgeIndex(usize),
    #[error("polytope point {point} has {found} coordinates, expected {expected}")]
    PointLength {
        point: usize,
        expected: usize,
        found: usize,
    },
    #[error("polytope data is not a valid moment graph:\n{0}")]
    InvalidGraph(crate::graph::ValidationReport),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The two-sphere with a torus acting through `weight`: south pole at `base`,
/// north pole at `base + scale * weight`.
pub fn sphere(weight: &LinearForm, base: &[Rational], scale: &Rational) -> MomentGraph {
    assert!(scale > &Rational::zero(), "scale must be positive");
    assert_eq!(base.len(), weight.num_vars(), "base point has wrong length");
    let north: Vec<Rational> = base
        .iter()
        .zip(weight.coeffs())
        .map(|(b, &w)| b + scale * Rational::from_integer(BigInt::from(w)))
        .collect();
    MomentGraph::new(
        weight.num_vars(),
        vec![Vertex::new("S", base.to_vec()), Vertex::new("N", north)],
        vec![Edge::new("S", "N", weight.clone())],
    )
}

/// Sphere with all defaults: base at the origin, scale one.
pub fn standard_sphere(weight: &LinearForm) -> MomentGraph {
    let base = vec![Rational::zero(); weight.num_vars()];
    sphere(weight, &base, &Rational::one())
}

/// Complex projective space of dimension `m` under its full torus: the
/// complete graph on the origin and the standard basis points, each edge
/// weighted by the primitive difference vector.
pub fn projective_space(m: usize) -> MomentGraph {
    assert!(m >= 1, "projective space needs positive dimension");
    let mut vertices = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let mut moment = vec![Rational::zero(); m];
        if i > 0 {
            moment[i - 1] = Rational::one();
        }
        vertices.push(Vertex::new(format!("p{i}"), moment));
    }
    let mut edges = Vec::new();
    for i in 0..=m {
        for j in (i + 1)..=m {
            let mut coeffs = vec![0i64; m];
            if i > 0 {
                coeffs[i - 1] = -1;
            }
            coeffs[j - 1] = 1;
            let weight = LinearForm::new(coeffs).expect("difference of distinct basis points");
            edges.push(Edge::new(format!("p{i}"), format!("p{j}"), weight));
        }
    }
    MomentGraph::new(m, vertices, edges)
}

/// Product of two moment graphs under the product torus: vertex ids are the
/// concatenated factor ids, moments are concatenated, and each factor edge is
/// copied across the other factor's vertices with its weight zero-padded into
/// the larger torus.
pub fn product(g1: &MomentGraph, g2: &MomentGraph) -> MomentGraph {
    let n1 = g1.torus_rank();
    let n2 = g2.torus_rank();
    let mut vertices = Vec::with_capacity(g1.vertices().len() * g2.vertices().len());
    for v1 in g1.vertices() {
        for v2 in g2.vertices() {
            let mut moment = v1.moment.clone();
            moment.extend(v2.moment.iter().cloned());
            vertices.push(Vertex::new(format!("{}{}", v1.id, v2.id), moment));
        }
    }
    let mut edges = Vec::new();
    for e in g1.edges() {
        for v2 in g2.vertices() {
            edges.push(Edge::new(
                format!("{}{}", e.src, v2.id),
                format!("{}{}", e.dst, v2.id),
                e.weight.pad_right(n2),
            ));
        }
    }
    for v1 in g1.vertices() {
        for e in g2.edges() {
            edges.push(Edge::new(
                format!("{}{}", v1.id, e.src),
                format!("{}{}", v1.id, e.dst),
                e.weight.pad_left(n1),
            ));
        }
    }
    MomentGraph::new(n1 + n2, vertices, edges)
}

/// Speed up the action: every weight is multiplied by `k`, moment images
/// unchanged. Moment compatibility survives because each edge keeps its
/// direction.
pub fn scale_action(g: &MomentGraph, k: u32) -> Result<MomentGraph, BuildError> {
    if k == 0 {
        return Err(BuildError::ZeroScale);
    }
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            let weight = e.weight.scale(k as i64)?;
            Ok(Edge::new(e.src.clone(), e.dst.clone(), weight))
        })
        .collect::<Result<Vec<_>, PolyError>>()?;
    Ok(MomentGraph::new(
        g.torus_rank(),
        g.vertices().to_vec(),
        edges,
    ))
}

/// Outcome of the polytope builder: the graph plus any warnings from the
/// smoothness check at the vertices.
#[derive(Debug)]
pub struct DelzantGraph {
    pub graph: MomentGraph,
    pub warnings: Vec<String>,
}

/// Build a moment graph from a polytope's vertex coordinates and edge list.
/// Each edge is weighted by the primitive integer vector in the direction
/// `dst - src`. At every polytope vertex with exactly `n` incident edges the
/// primitive edge vectors of a smooth (Delzant) polytope form a basis of the
/// integer lattice; a failed determinant check is reported as a warning, not
/// an error.
pub fn from_delzant(
    points: &[Vec<Rational>],
    edges: &[(usize, usize)],
) -> Result<DelzantGraph, BuildError> {
    let n = points.first().map(|p| p.len()).unwrap_or(0);
    for (i, p) in points.iter().enumerate() {
        if p.len() != n {
            return Err(BuildError::PointLength {
                point: i,
                expected: n,
                found: p.len(),
            });
        }
    }
    let vertices: Vec<Vertex> = points
        .iter()
        .enumerate()
        .map(|(i, p)| Vertex::new(format!("v{i}"), p.clone()))
        .collect();
    let mut graph_edges = Vec::with_capacity(edges.len());
    for &(a, b) in edges {
        if a >= points.len() || b >= points.len() {
            return Err(BuildError::BadEdgeIndex(a.max(b)));
        }
        if points[a] == points[b] {
            return Err(BuildError::CoincidentPoints(a, b));
        }
        let weight = primitive_direction(&points[a], &points[b])
            .ok_or(BuildError::CoincidentPoints(a, b))?;
        graph_edges.push(Edge::new(format!("v{a}"), format!("v{b}"), weight));
    }
    let graph = MomentGraph::new(n, vertices, graph_edges);
    let report = graph.validate();
    if !report.is_valid() {
        return Err(BuildError::InvalidGraph(report));
    }

    let mut warnings = Vec::new();
    for v in graph.vertices() {
        let directions: Vec<LinearForm> = graph
            .incident_edges(&v.id)
            .map(|e| e.weight_away_from(&v.id))
            .collect();
        if directions.len() == n && !is_unimodular(&directions) {
            warnings.push(format!(
                "vertex {}: primitive edge directions do not span the integer lattice",
                v.id
            ));
        }
    }
    Ok(DelzantGraph { graph, warnings })
}

/// Primitive integer vector pointing from `src` to `dst`.
fn primitive_direction(src: &[Rational], dst: &[Rational]) -> Option<LinearForm> {
    let diff: Vec<Rational> = dst.iter().zip(src).map(|(d, s)| d - s).collect();
    let lcm = diff.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = diff
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(&x.abs()));
    if gcd.is_zero() {
        return None;
    }
    let coeffs: Vec<i64> = ints
        .iter()
        .map(|x| {
            (x / &gcd)
                .try_into()
                .expect("primitive direction fits in i64")
        })
        .collect();
    LinearForm::new(coeffs).ok()
}

/// Absolute determinant one, over exactly `n` integer vectors.
fn is_unimodular(directions: &[LinearForm]) -> bool {
    let n = directions.len();
    let mut m: Vec<Vec<BigInt>> = directions
        .iter()
        .map(|f| f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    if m.iter().any(|row| row.len() != n) {
        return false;
    }
    // fraction-free determinant via Bareiss; row swaps only flip the sign,
    // which the absolute value ignores
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return false;
        };
        m.swap(p, k);
        let pivot_row = m[k].clone();
        for row in m.iter_mut().skip(k + 1) {
            let lead = std::mem::replace(&mut row[k], BigInt::zero());
            for j in (k + 1)..n {
                let num = &row[j] * &pivot_row[k] - &lead * &pivot_row[j];
                row[j] = num / &prev;
            }
        }
        prev = pivot_row[k].clone();
    }
    prev.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::kernel_basis;
    use std::sync::Arc;

    fn rat(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn form(coeffs: &[i64]) -> LinearForm {
        LinearForm::new(coeffs.to_vec()).unwrap()
    }

    fn dims(g: &MomentGraph, max_degree: u32) -> Vec<usize> {
        let g = Arc::new(g.clone());
        (0..=max_degree)
            .map(|d| kernel_basis(&g, d).unwrap().dimension())
            .collect()
    }

    #[test]
    fn spheres_validate() {
        for w in [form(&[1]), form(&[2]), form(&[1, -1])] {
            let g = standard_sphere(&w);
            assert!(g.validate().is_valid(), "weight {w}");
            assert_eq!(g.vertices().len(), 2);
            assert_eq!(g.edges().len(), 1);
        }
    }

    #[test]
    fn cp1_is_the_sphere() {
        let cp1 = projective_space(1);
        let s = standard_sphere(&form(&[1]));
        assert_eq!(cp1.torus_rank(), s.torus_rank());
        assert_eq!(dims(&cp1, 3), dims(&s, 3));
    }

    #[test]
    fn cp2_weights_are_the_pairwise_differences() {
        let g = projective_space(2);
        assert!(g.validate().is_valid());
        let weights: Vec<&[i64]> = g.edges().iter().map(|e| e.weight.coeffs()).collect();
        assert_eq!(weights, vec![&[1, 0][..], &[0, 1], &[-1, 1]]);
    }

    #[test]
    fn cp3_is_the_complete_graph_on_four_vertices() {
        let g = projective_space(3);
        assert!(g.validate().is_valid());
        assert_eq!(g.vertices().len(), 4);
        assert_eq!(g.edges().len(), 6);
    }

    #[test]
    fn product_of_spheres_is_the_square() {
        let s = standard_sphere(&form(&[1]));
        let g = product(&s, &s);
        assert!(g.validate().is_valid());
        assert_eq!(g.torus_rank(), 2);
        assert_eq!(g.vertices().len(), 4);
        assert_eq!(g.edges().len(), 4);
        let ids: Vec<&str> = g.vertices().iter().map(|v| v.id.as_str()).collect();
        assert_eq!(ids, vec!["SS", "SN", "NS", "NN"]);
    }

    #[test]
    fn product_with_a_point_pads_the_rank() {
        let s = standard_sphere(&form(&[1]));
        let pt = MomentGraph::new(1, vec![Vertex::new("x", vec![rat(0)])], vec![]);
        let g = product(&s, &pt);
        assert_eq!(g.torus_rank(), 2);
        assert_eq!(g.vertices().len(), 2);
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.edges()[0].weight.coeffs(), &[1, 0]);
    }

    #[test]
    fn scaling_the_sphere_matches_the_fast_sphere_weights() {
        let scaled = scale_action(&standard_sphere(&form(&[1])), 2).unwrap();
        assert_eq!(scaled.edges()[0].weight, form(&[2]));
        assert!(scaled.validate().is_valid());
    }

    #[test]
    fn scaling_preserves_validity_and_rational_kernel() {
        let s = standard_sphere(&form(&[1]));
        let g = product(&s, &s);
        let scaled = scale_action(&g, 2).unwrap();
        assert!(scaled.validate().is_valid());
        assert_eq!(scaled.edges()[0].weight.coeffs(), &[2, 0]);
        assert_eq!(dims(&g, 3), dims(&scaled, 3));
        assert_eq!(scale_action(&g, 1).unwrap(), g);
        assert!(matches!(scale_action(&g, 0), Err(BuildError::ZeroScale)));
    }

    #[test]
    fn unit_square_matches_the_sphere_product() {
        let square = from_delzant(
            &[
                vec![rat(0), rat(0)],
                vec![rat(1), rat(0)],
                vec![rat(0), rat(1)],
                vec![rat(1), rat(1)],
            ],
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        assert!(square.warnings.is_empty());
        let s = standard_sphere(&form(&[1]));
        let prod = product(&s, &s);
        assert_eq!(dims(&square.graph, 4), dims(&prod, 4));
    }

    #[test]
    fn standard_simplices_match_projective_spaces() {
        for m in 1..=3usize {
            let mut points = vec![vec![rat(0); m]];
            for i in 0..m {
                let mut p = vec![rat(0); m];
                p[i] = rat(1);
                points.push(p);
            }
            let mut edges = Vec::new();
            for i in 0..=m {
                for j in (i + 1)..=m {
                    edges.push((i, j));
                }
            }
            let simplex = from_delzant(&points, &edges).unwrap();
            assert!(simplex.warnings.is_empty(), "m = {m}");
            assert_eq!(dims(&simplex.graph, 3), dims(&projective_space(m), 3));
        }
    }

    #[test]
    fn delzant_scales_rational_input_to_primitive_weights() {
        let g = from_delzant(
            &[
                vec![rat(0), rat(0)],
                vec![
                    Rational::new(2.into(), 3.into()),
                    Rational::new(2.into(), 3.into()),
                ],
            ],
            &[(0, 1)],
        )
        .unwrap();
        assert_eq!(g.graph.edges()[0].weight.coeffs(), &[1, 1]);
    }

    #[test]
    fn delzant_rejects_gkm_violations() {
        // two edges from one vertex in proportional directions
        let out = from_delzant(
            &[vec![rat(0)], vec![rat(1)], vec![rat(2)]],
            &[(0, 1), (0, 2)],
        );
        assert!(matches!(out, Err(BuildError::InvalidGraph(_))));
    }

    #[test]
    fn non_smooth_corner_warns() {
        // triangle with a corner whose primitive directions have determinant 2
        let g = from_delzant(
            &[
                vec![rat(0), rat(0)],
                vec![rat(1), rat(0)],
                vec![rat(-1), rat(2)],
            ],
            &[(0, 1), (0, 2), (1, 2)],
        )
        .unwrap();
        assert!(!g.warnings.is_empty());
    }

    #[test]
    fn square_missing_a_bottom_edge_fails_the_morse_prediction() {
        // still a valid moment graph, but the extra local minimum is caught
        // by the degree-0 prediction (2 index-0 vertices, 1 component)
        let broken = from_delzant(
            &[
                vec![rat(0), rat(0)],
                vec![rat(1), rat(0)],
                vec![rat(0), rat(1)],
                vec![rat(1), rat(1)],
            ],
            &[(0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let g = Arc::new(broken.graph);
        assert!(g.validate().is_valid());
        let xi = g.generic_direction();
        let table = crate::cohomology::hilbert_table(&g, &xi, 2).unwrap();
        assert!(!table.agrees());
        assert_eq!(table.computed()[0], 1);
        assert_eq!(table.predicted()[0], 2);
    }

    #[test]
    fn product_is_associative_on_kernel_dimensions() {
        let a = standard_sphere(&form(&[1]));
        let b = standard_sphere(&form(&[2]));
        let c = projective_space(1);
        let left = product(&product(&a, &b), &c);
        let right = product(&a, &product(&b, &c));
        assert_eq!(dims(&left, 2), dims(&right, 2));
    }
}
