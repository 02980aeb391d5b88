//! Morse theory of a generic direction on a moment graph.
//!
//! A direction `xi` in the torus Lie algebra turns the moment image into the
//! height function `f(v) = <mu(v), xi>`. Genericity means no edge weight
//! pairs to zero with `xi`, so every edge runs between two distinct heights.
//! The Morse index of a vertex is twice its number of downward edges, and
//! the downward Euler class is the product of the downward weights (oriented
//! away from the vertex).

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::graph::{Edge, GraphError, MomentGraph};
use crate::poly::{LinearForm, Polynomial, Rational};

/// An integer covector in the Lie algebra of the torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Direction {
    components: Vec<i64>,
}

impl Direction {
    pub fn new(components: Vec<i64>) -> Self {
        Direction { components }
    }

    pub fn components(&self) -> &[i64] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn negate(&self) -> Direction {
        Direction {
            components: self.components.iter().map(|&c| -c).collect(),
        }
    }

    /// `<form, xi>`, exact in 128-bit arithmetic.
    pub fn pair(&self, form: &LinearForm) -> i128 {
        form.coeffs()
            .iter()
            .zip(&self.components)
            .map(|(&a, &x)| a as i128 * x as i128)
            .sum()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl MomentGraph {
    /// First generic direction in the fixed enumeration
    /// `(1, c, c^2, ..., c^(n-1))` for `c = 1, 2, 3, ...`.
    ///
    /// Each candidate pairs with a weight through a nonzero polynomial in `c`
    /// of degree below the rank, so only finitely many candidates can fail and
    /// the enumeration always terminates.
    pub fn generic_direction(&self) -> Direction {
        let n = self.torus_rank();
        for c in 1i64.. {
            let mut components = Vec::with_capacity(n);
            let mut power = 1i64;
            for _ in 0..n {
                components.push(power);
                power = power.saturating_mul(c);
            }
            let xi = Direction::new(components);
            if self.check_generic(&xi).is_ok() {
                return xi;
            }
        }
        unreachable!("a generic direction exists for every finite weight set")
    }

    /// Errors with the first offending edge when `xi` pairs to zero with some
    /// weight (or has the wrong length).
    pub fn check_generic(&self, xi: &Direction) -> Result<(), GraphError> {
        if xi.len() != self.torus_rank() {
            return Err(GraphError::DirectionLength {
                expected: self.torus_rank(),
                found: xi.len(),
            });
        }
        for (i, e) in self.edges().iter().enumerate() {
            if xi.pair(&e.weight) == 0 {
                return Err(GraphError::NonGenericDirection {
                    xi: xi.to_string(),
                    edge: i,
                    src: e.src.clone(),
                    dst: e.dst.clone(),
                });
            }
        }
        Ok(())
    }

    /// Height `f(v) = <mu(v), xi>` of a vertex.
    pub fn height(&self, xi: &Direction, id: &str) -> Result<Rational, GraphError> {
        let v = self.require_vertex(id)?;
        Ok(v.moment
            .iter()
            .zip(xi.components())
            .map(|(m, &x)| m * Rational::from_integer(BigInt::from(x)))
            .fold(Rational::zero(), |acc, t| acc + t))
    }

    /// Incident edges pointing strictly downhill from `id`, with their
    /// away-oriented weights.
    pub fn downward_edges<'a>(
        &'a self,
        xi: &Direction,
        id: &str,
    ) -> Result<Vec<(&'a Edge, LinearForm)>, GraphError> {
        self.check_generic(xi)?;
        self.require_vertex(id)?;
        let mut out = Vec::new();
        for e in self.edges() {
            if !e.touches(id) {
                continue;
            }
            let away = e.weight_away_from(id);
            if xi.pair(&away) < 0 {
                out.push((e, away));
            }
        }
        Ok(out)
    }

    /// Twice the number of downward edges.
    pub fn morse_index(&self, xi: &Direction, id: &str) -> Result<u32, GraphError> {
        Ok(2 * self.downward_edges(xi, id)?.len() as u32)
    }

    /// Product of the downward away-oriented weights; the empty product is 1.
    /// Its degree is half the Morse index.
    pub fn euler_class_down(&self, xi: &Direction, id: &str) -> Result<Polynomial, GraphError> {
        let mut product = Polynomial::one(self.torus_rank());
        for (_, away) in self.downward_edges(xi, id)? {
            product = product
                .try_mul(&away.to_polynomial())
                .expect("weights live in the graph's torus");
        }
        Ok(product)
    }

    /// Vertex ids sorted by ascending height, ties broken by id.
    pub fn critical_order(&self, xi: &Direction) -> Result<Vec<String>, GraphError> {
        self.check_generic(xi)?;
        let mut heights: Vec<(Rational, String)> = self
            .vertices()
            .iter()
            .map(|v| {
                let h = self.height(xi, &v.id).expect("vertex exists");
                (h, v.id.clone())
            })
            .collect();
        heights.sort();
        Ok(heights.into_iter().map(|(_, id)| id).collect())
    }
}
