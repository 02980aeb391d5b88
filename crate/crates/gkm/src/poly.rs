//! Exact arithmetic in the polynomial ring `Sym(t*) = Q[x1..xn]`.
//!
//! Cohomology classes restrict to fixed points as homogeneous polynomials in
//! the weight lattice coordinates, so everything here is exact: coefficients
//! are arbitrary-precision rationals, weights are integer covectors, and
//! divisibility by products of linear forms is decided by long division, not
//! by any numerical test.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

mod text;

pub use text::parse_polynomial;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Parse `"p/q"` or `"p"` into a rational, rejecting zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let bad = |_| PolyError::BadRational(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(bad)?;
            let q: BigInt = q.trim().parse().map_err(bad)?;
            if q.is_zero() {
                return Err(PolyError::BadRational(s.to_string()));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.trim().parse().map_err(bad)?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Render a rational as `p/q`, omitting `/1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("linear form must have at least one nonzero coefficient")]
    ZeroForm,
    #[error("factors {0} and {1} are proportional; powers of proportional forms cannot be divided independently")]
    ProportionalFactors(usize, usize),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// An integer covector, e.g. the weight of a torus representation.
///
/// Weights live in the integral lattice of `t*`, so the coefficients are
/// integers rather than rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<i64>,
}

impl LinearForm {
    /// Build a form from its coefficients. Errors when every entry is zero.
    pub fn new(coeffs: Vec<i64>) -> Result<Self, PolyError> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(PolyError::ZeroForm);
        }
        Ok(LinearForm { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn num_vars(&self) -> usize {
        self.coeffs.len()
    }

    /// Index of the last variable with nonzero coefficient; used as the
    /// eliminated variable in hyperplane restriction and long division.
    pub fn pivot_var(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|&c| c != 0)
            .expect("form is nonzero")
    }

    /// gcd of the absolute coefficients; 1 exactly when the form is primitive.
    pub fn content(&self) -> u64 {
        self.coeffs
            .iter()
            .fold(0u64, |g, &c| g.gcd(&c.unsigned_abs()))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// Divide out the content, keeping the sign pattern.
    pub fn primitive_part(&self) -> LinearForm {
        let g = self.content() as i64;
        LinearForm {
            coeffs: self.coeffs.iter().map(|&c| c / g).collect(),
        }
    }

    pub fn negate(&self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Result<LinearForm, PolyError> {
        if k == 0 {
            return Err(PolyError::ZeroForm);
        }
        Ok(LinearForm {
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        })
    }

    /// Append `extra` zero coordinates (embedding into a larger torus).
    pub fn pad_right(&self, extra: usize) -> LinearForm {
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(std::iter::repeat_n(0, extra));
        LinearForm { coeffs }
    }

    /// Prepend `extra` zero coordinates.
    pub fn pad_left(&self, extra: usize) -> LinearForm {
        let mut coeffs = vec![0; extra + self.coeffs.len()];
        coeffs[extra..].copy_from_slice(&self.coeffs);
        LinearForm { coeffs }
    }

    /// True when the two forms span the same line, i.e. are scalar multiples
    /// of one another over Q.
    pub fn is_proportional_to(&self, other: &LinearForm) -> bool {
        if self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        for i in 0..self.coeffs.len() {
            for j in (i + 1)..self.coeffs.len() {
                let lhs = self.coeffs[i] as i128 * other.coeffs[j] as i128;
                let rhs = self.coeffs[j] as i128 * other.coeffs[i] as i128;
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.coeffs.len();
        let mut p = Polynomial::zero(n);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let mut exps = vec![0u32; n];
                exps[i] = 1;
                p.add_term(exps, Rational::from_integer(BigInt::from(c)));
            }
        }
        p
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// True iff no two of the forms are proportional.
///
/// Nonproportional linear forms are distinct irreducibles in `Q[x1..xn]`, so
/// this is exactly pairwise relative primality of the forms as polynomials.
pub fn pairwise_coprime(forms: &[LinearForm]) -> bool {
    for i in 0..forms.len() {
        for j in (i + 1)..forms.len() {
            if forms[i].is_proportional_to(&forms[j]) {
                return false;
            }
        }
    }
    true
}

/// All exponent vectors of length `n` and total degree `d`, in graded
/// lexicographic order (within the fixed degree: lexicographically
/// descending, so `(d,0,..)` comes first and `(0,..,d)` last).
pub fn monomial_basis(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    fill_monomials(n, d, &mut prefix, &mut out);
    out
}

fn fill_monomials(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        if d == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    if n == 1 {
        prefix.push(d);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for lead in (0..=d).rev() {
        prefix.push(lead);
        fill_monomials(n - 1, d - lead, prefix, out);
        prefix.pop();
    }
}

/// Number of monomials of degree `d` in `n` variables, `C(d+n-1, n-1)`.
pub fn monomial_count(n: usize, d: u32) -> usize {
    if n == 0 {
        return if d == 0 { 1 } else { 0 };
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for k in 1..n {
        num *= (d as u128) + k as u128;
        den *= k as u128;
    }
    (num / den) as usize
}

/// Exact multivariate polynomial over `Rational`.
///
/// Invariants: no stored zero coefficients, every exponent vector has length
/// `num_vars`. The zero polynomial has an empty term map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::one())
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    /// The variable `x_{i+1}` as a polynomial.
    pub fn variable(num_vars: usize, i: usize) -> Self {
        assert!(i < num_vars, "variable index out of range");
        let mut exps = vec![0; num_vars];
        exps[i] = 1;
        let mut p = Self::zero(num_vars);
        p.terms.insert(exps, Rational::one());
        p
    }

    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(num_vars);
        for (exps, c) in terms {
            if exps.len() != num_vars {
                return Err(PolyError::DimensionMismatch {
                    expected: num_vars,
                    found: exps.len(),
                });
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree of the highest term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// `Some(d)` when every term has total degree `d`. The zero polynomial is
    /// homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        if degs.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// True when the polynomial is zero or homogeneous of degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(d)
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_vars(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.num_vars != other.num_vars {
            return Err(PolyError::DimensionMismatch {
                expected: self.num_vars,
                found: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_vars(other)?;
        let mut out = Polynomial::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), -a)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.num_vars);
        for _ in 0..k {
            out = out.try_mul(self).expect("same ring");
        }
        out
    }

    /// Exact division by a linear form.
    ///
    /// Returns `Some(q)` with `q * form == self`, or `None` when the form
    /// does not divide. Long division with respect to the form's pivot
    /// variable; the remainder is free of that variable, so divisibility is
    /// equivalent to a zero remainder.
    pub fn divide_by_linear_form(&self, form: &LinearForm) -> Option<Polynomial> {
        assert_eq!(
            form.num_vars(),
            self.num_vars,
            "form and polynomial live in different rings"
        );
        let j = form.pivot_var();
        let aj = Rational::from_integer(BigInt::from(form.coeffs[j]));
        let mut quotient = Polynomial::zero(self.num_vars);
        let mut rem = self.clone();
        loop {
            // Terms of maximal x_j-degree >= 1 determine the next quotient chunk.
            let top = rem.terms.keys().map(|e| e[j]).max().unwrap_or(0);
            if top == 0 {
                break;
            }
            let mut chunk = Polynomial::zero(self.num_vars);
            for (e, c) in &rem.terms {
                if e[j] == top {
                    let mut exps = e.clone();
                    exps[j] -= 1;
                    chunk.add_term(exps, c / &aj);
                }
            }
            rem = rem
                .try_sub(&chunk.try_mul(&form.to_polynomial()).expect("same ring"))
                .expect("same ring");
            quotient = quotient.try_add(&chunk).expect("same ring");
        }
        if rem.is_zero() {
            Some(quotient)
        } else {
            None
        }
    }

    /// Exact division by a product of powers of pairwise nonproportional
    /// linear forms, the shape every downward Euler class takes at an
    /// isolated fixed point.
    ///
    /// Since the forms are pairwise relatively prime in `Q[x1..xn]`, the
    /// product divides iff each power divides, so the factors are divided out
    /// one at a time. Errors when two factors are proportional; returns
    /// `Ok(None)` when some power does not divide.
    pub fn divide_by_linear_powers(
        &self,
        factors: &[(LinearForm, u32)],
    ) -> Result<Option<Polynomial>, PolyError> {
        let forms: Vec<LinearForm> = factors.iter().map(|(f, _)| f.clone()).collect();
        for i in 0..forms.len() {
            for j in (i + 1)..forms.len() {
                if forms[i].is_proportional_to(&forms[j]) {
                    return Err(PolyError::ProportionalFactors(i, j));
                }
            }
        }
        let mut q = self.clone();
        for (form, mult) in factors {
            for _ in 0..*mult {
                match q.divide_by_linear_form(form) {
                    Some(next) => q = next,
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(q))
    }

    /// Restrict to the hyperplane `form = 0` by eliminating the pivot
    /// variable; the result lives in `num_vars - 1` variables (the pivot
    /// coordinate removed, the rest keeping their relative order).
    ///
    /// A homogeneous polynomial is divisible by the form iff its restriction
    /// vanishes identically, which is what turns each edge congruence into
    /// rows of an exact linear system.
    pub fn restrict_to_hyperplane(&self, form: &LinearForm) -> Polynomial {
        assert_eq!(
            form.num_vars(),
            self.num_vars,
            "form and polynomial live in different rings"
        );
        let n = self.num_vars;
        let j = form.pivot_var();
        let aj = Rational::from_integer(BigInt::from(form.coeffs[j]));

        // x_j = -(sum_{i != j} a_i x_i) / a_j, written in the remaining variables.
        let mut sub = Polynomial::zero(n - 1);
        for (i, &c) in form.coeffs.iter().enumerate() {
            if i == j || c == 0 {
                continue;
            }
            let pos = if i < j { i } else { i - 1 };
            let mut exps = vec![0u32; n - 1];
            exps[pos] = 1;
            sub.add_term(exps, -Rational::from_integer(BigInt::from(c)) / &aj);
        }

        let max_pow = self.terms.keys().map(|e| e[j]).max().unwrap_or(0);
        let mut sub_pows = Vec::with_capacity(max_pow as usize + 1);
        sub_pows.push(Polynomial::one(n - 1));
        for k in 1..=max_pow {
            let next = sub_pows[k as usize - 1].try_mul(&sub).expect("same ring");
            sub_pows.push(next);
        }

        let mut out = Polynomial::zero(n - 1);
        for (e, c) in &self.terms {
            let mut mono = vec![0u32; n - 1];
            for (i, &exp) in e.iter().enumerate() {
                if i != j {
                    let pos = if i < j { i } else { i - 1 };
                    mono[pos] = exp;
                }
            }
            let mut base = Polynomial::zero(n - 1);
            base.add_term(mono, c.clone());
            out = out
                .try_add(&base.try_mul(&sub_pows[e[j] as usize]).expect("same ring"))
                .expect("same ring");
        }
        out
    }

    /// Coefficient vector with respect to `monomial_basis(num_vars, d)`.
    pub fn coords(&self, basis: &[Vec<u32>]) -> Vec<Rational> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("mismatched num_vars")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("mismatched num_vars")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("mismatched num_vars")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}
