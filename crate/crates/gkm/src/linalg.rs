//! Exact dense linear algebra at desk scale.
//!
//! Rational systems are cleared to integer rows and brought to echelon form
//! by fraction-free (Bareiss) elimination, so every intermediate entry is a
//! minor of the input and all divisions are exact. Integer lattices use
//! unimodular column reduction for kernels and the row Hermite normal form as
//! the canonical basis of a lattice. Pivot choices are fixed (first nonzero
//! in order), which makes every output deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

/// Echelon form of an integer matrix together with its pivot positions.
pub struct Echelon {
    pub matrix: Vec<Vec<BigInt>>,
    pub pivots: Vec<(usize, usize)>,
    pub cols: usize,
}

/// Clear denominators row by row (scaling rows does not change the row
/// space, the nullspace, or solution sets once the right-hand side is
/// carried along as an extra column).
pub fn integerize_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free forward elimination with deterministic pivoting.
pub fn echelon(mut m: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let pivot_row = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            let lead = std::mem::replace(&mut row[c], BigInt::zero());
            if lead.is_zero() && pivot_row[c].is_one() && prev.is_one() {
                // row unchanged when the update is the identity
                continue;
            }
            for j in (c + 1)..cols {
                let num = &row[j] * &pivot_row[c] - &lead * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                assert!(
                    rem.is_zero(),
                    "fraction-free elimination produced a remainder"
                );
                row[j] = q;
            }
        }
        prev = pivot_row[c].clone();
        pivots.push((r, c));
        r += 1;
    }
    Echelon {
        matrix: m,
        pivots,
        cols,
    }
}

pub fn rank(rows: &[Vec<Rational>], cols: usize) -> usize {
    echelon(integerize_rows(rows), cols).pivots.len()
}

/// Canonical basis of `{x : Ax = 0}`: one vector per free column, that
/// coordinate set to 1 and every other free coordinate set to 0, pivot
/// coordinates filled by back substitution.
pub fn nullspace_basis(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let ech = echelon(integerize_rows(rows), cols);
    let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free_cols
        .iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            back_substitute(&ech, &mut x);
            x
        })
        .collect()
}

/// One exact solution of `Ax = b` with every free coordinate set to 0, or
/// `None` when the system is inconsistent.
///
/// A solution of `Ax = b` is a nullspace vector of `[A | b]` whose last
/// coordinate is -1, so the augmented system reuses the same back
/// substitution.
pub fn solve_particular(
    rows: &[Vec<Rational>],
    b: &[Rational],
    cols: usize,
) -> Option<Vec<Rational>> {
    assert_eq!(rows.len(), b.len());
    let augmented: Vec<Vec<Rational>> = rows
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let ech = echelon(integerize_rows(&augmented), cols + 1);
    if ech.pivots.iter().any(|&(_, c)| c == cols) {
        return None; // pivot in the right-hand column
    }
    let mut x = vec![Rational::zero(); cols + 1];
    x[cols] = -Rational::one();
    back_substitute(&ech, &mut x);
    x.truncate(cols);
    Some(x)
}

fn back_substitute(ech: &Echelon, x: &mut [Rational]) {
    for &(r, c) in ech.pivots.iter().rev() {
        let mut s = Rational::zero();
        for (entry, xv) in ech.matrix[r][(c + 1)..].iter().zip(&x[(c + 1)..]) {
            if !xv.is_zero() {
                s += Rational::from_integer(entry.clone()) * xv;
            }
        }
        let pivot = Rational::from_integer(ech.matrix[r][c].clone());
        x[c] = -s / pivot;
    }
}

/// `dst -= q * src`, entrywise.
fn sub_scaled(dst: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= q * s;
    }
}

/// Basis of the integer kernel `{x in Z^cols : Ax = 0}` via unimodular
/// column reduction: track column operations on an identity matrix; the
/// tracker columns over the zeroed-out part of `A` form a lattice basis of
/// the kernel.
pub fn integer_kernel(mat: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let rows = mat.len();
    let mut w: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| (0..rows).map(|i| mat[i][j].clone()).collect())
        .collect();
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            let mut e = vec![BigInt::zero(); cols];
            e[j] = BigInt::one();
            e
        })
        .collect();
    let mut done = 0;
    for i in 0..rows {
        loop {
            let nz: Vec<usize> = (done..cols).filter(|&j| !w[j][i].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            if nz.len() == 1 {
                w.swap(done, nz[0]);
                u.swap(done, nz[0]);
                done += 1;
                break;
            }
            // euclidean reduction of row i across the active columns
            let &jmin = nz
                .iter()
                .min_by(|&&a, &&b| w[a][i].abs().cmp(&w[b][i].abs()))
                .expect("nonempty");
            let pivot = w[jmin][i].clone();
            let w_pivot = w[jmin].clone();
            let u_pivot = u[jmin].clone();
            for &j in &nz {
                if j == jmin {
                    continue;
                }
                let q = &w[j][i] / &pivot; // truncated: |remainder| < |pivot|
                if q.is_zero() {
                    continue;
                }
                sub_scaled(&mut w[j], &w_pivot, &q);
                sub_scaled(&mut u[j], &u_pivot, &q);
            }
        }
    }
    u.split_off(done)
}

/// Canonical (row) Hermite normal form of the lattice spanned by the given
/// rows: staircase shape, positive pivots, entries above each pivot reduced
/// into `[0, pivot)`, zero rows dropped.
pub fn row_hnf(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut top = 0;
    for c in 0..cols {
        loop {
            let nz: Vec<usize> = (top..rows.len())
                .filter(|&r| !rows[r][c].is_zero())
                .collect();
            if nz.is_empty() {
                break;
            }
            if nz.len() == 1 {
                rows.swap(top, nz[0]);
                if rows[top][c].is_negative() {
                    for v in rows[top].iter_mut() {
                        *v = -std::mem::take(v);
                    }
                }
                let pivot = rows[top][c].clone();
                let pivot_row = rows[top].clone();
                for row in rows.iter_mut().take(top) {
                    let q = row[c].div_floor(&pivot);
                    if !q.is_zero() {
                        sub_scaled(row, &pivot_row, &q);
                    }
                }
                top += 1;
                break;
            }
            let &rmin = nz
                .iter()
                .min_by(|&&a, &&b| rows[a][c].abs().cmp(&rows[b][c].abs()))
                .expect("nonempty");
            let pivot = rows[rmin][c].clone();
            let pivot_row = rows[rmin].clone();
            for &r in &nz {
                if r == rmin {
                    continue;
                }
                let q = &rows[r][c] / &pivot;
                if !q.is_zero() {
                    sub_scaled(&mut rows[r], &pivot_row, &q);
                }
            }
        }
    }
    rows.truncate(top);
    rows
}

/// Membership of `target` in the lattice spanned by HNF `rows`.
pub fn hnf_contains(rows: &[Vec<BigInt>], target: &[BigInt]) -> bool {
    let mut t = target.to_vec();
    for row in rows {
        let c = match row.iter().position(|v| !v.is_zero()) {
            Some(c) => c,
            None => continue,
        };
        if !t[c].is_zero() {
            let (q, rem) = t[c].div_rem(&row[c]);
            if !rem.is_zero() {
                return false;
            }
            for j in 0..t.len() {
                let u = &t[j] - &q * &row[j];
                t[j] = u;
            }
        }
    }
    t.iter().all(|v| v.is_zero())
}
