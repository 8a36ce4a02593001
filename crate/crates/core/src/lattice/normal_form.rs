//! Determinants and the Hermite/Smith normal forms.
//!
//! Conventions: the row-style HNF `h = u·m` is upper echelon with positive
//! pivots and the entries above each pivot reduced into `[0, pivot)`. The
//! column-style HNF `h = m·u` is its transpose twin: lower triangular, positive
//! diagonal, entries left of each pivot reduced into `[0, pivot)`, so every
//! row's pivot is its unique greatest entry.

use super::{Int, IntMat, IntVec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub h: IntMat,
    pub u: IntMat,
    /// Pivot column of each nonzero row (row form) or pivot row of each
    /// column (column form).
    pub pivots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub s: IntMat,
    pub u: IntMat,
    pub v: IntMat,
}

impl Snf {
    /// Diagonal entries `s_i`, including trailing zeros.
    pub fn invariant_factors(&self) -> Vec<Int> {
        let n = self.s.nrows().min(self.s.ncols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }
}

fn row_addmul(m: &mut IntMat, target: usize, src: usize, k: &Int) {
    if k.is_zero() {
        return;
    }
    for c in 0..m.cols {
        let delta = k * &m[(src, c)];
        if !delta.is_zero() {
            m[(target, c)] -= &delta;
        }
    }
}

fn col_addmul(m: &mut IntMat, target: usize, src: usize, k: &Int) {
    if k.is_zero() {
        return;
    }
    for r in 0..m.rows {
        let delta = k * &m[(r, src)];
        if !delta.is_zero() {
            m[(r, target)] -= &delta;
        }
    }
}

/// Replaces rows `(i, j)` by `(x·ri + y·rj, z·ri + w·rj)`.
fn row_combine(m: &mut IntMat, i: usize, j: usize, c: [&Int; 4]) {
    for col in 0..m.cols {
        let a = m[(i, col)].clone();
        let b = m[(j, col)].clone();
        m[(i, col)] = c[0] * &a + c[1] * &b;
        m[(j, col)] = c[2] * &a + c[3] * &b;
    }
}

fn negate_row(m: &mut IntMat, i: usize) {
    for c in 0..m.cols {
        m[(i, c)] = -&m[(i, c)];
    }
}

/// Row-style Hermite normal form of an arbitrary integer matrix.
pub fn row_hnf(m: &IntMat) -> Hnf {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut h = m.clone();
    let mut u = IntMat::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !h[(i, c)].is_zero()) else {
            continue;
        };
        h.swap_rows(r, p);
        u.swap_rows(r, p);
        for i in r + 1..rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            let a = h[(r, c)].clone();
            let b = h[(i, c)].clone();
            if a.divides(&b) {
                let q = b.div_exact(&a);
                row_addmul(&mut h, i, r, &q);
                row_addmul(&mut u, i, r, &q);
            } else {
                let (g, x, y) = a.extended_gcd(&b);
                let z = -b.div_exact(&g);
                let w = a.div_exact(&g);
                row_combine(&mut h, r, i, [&x, &y, &z, &w]);
                row_combine(&mut u, r, i, [&x, &y, &z, &w]);
            }
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&pivot);
            row_addmul(&mut h, i, r, &q);
            row_addmul(&mut u, i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Hnf { h, u, pivots }
}

/// Column-style Hermite normal form `h = m·u`; requires full column rank.
pub fn column_hnf(m: &IntMat) -> Result<Hnf> {
    let t = row_hnf(&m.transpose());
    if t.pivots.len() < m.ncols() {
        return Err(Error::RankDeficient);
    }
    Ok(Hnf { h: t.h.transpose(), u: t.u.transpose(), pivots: t.pivots })
}

/// Index of the subgroup of ℤ^d generated by the rows of `m`.
pub fn lattice_index(m: &IntMat) -> Result<Int> {
    let hnf = row_hnf(m);
    let dim = m.ncols();
    if hnf.pivots.len() < dim {
        return Err(Error::NotFullRank { rank: hnf.pivots.len(), dim });
    }
    Ok((0..dim).map(|i| hnf.h[(i, hnf.pivots[i])].clone()).product())
}

/// Smith normal form `s = u·m·v` with `s_i | s_{i+1}` and `s_i >= 0`.
pub fn snf(m: &IntMat) -> Snf {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut s = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &s[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Snf { s, u, v };
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let pivot = s[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = s[(i, t)].div_floor(&pivot);
                row_addmul(&mut s, i, t, &q);
                row_addmul(&mut u, i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = s[(t, j)].div_floor(&pivot);
                col_addmul(&mut s, j, t, &q);
                col_addmul(&mut v, j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !pivot.divides(&s[(i, j)])));
            match offender {
                Some(i) => {
                    row_addmul(&mut s, t, i, &Int::from(-1));
                    row_addmul(&mut u, t, i, &Int::from(-1));
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
    }
    Snf { s, u, v }
}

/// Fraction-free (Bareiss) determinant.
pub fn det_bareiss(m: &IntMat) -> Result<Int> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(Int::ONE);
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = Int::ONE;
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(p) => {
                    a.swap_rows(k, p);
                    sign = !sign;
                }
                None => return Ok(Int::ZERO),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = num.div_exact(&prev);
            }
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    Ok(if sign { -d } else { d })
}

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &IntMat) -> Result<Int> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    Ok(cofactor_rec(m))
}

fn cofactor_rec(m: &IntMat) -> Int {
    let n = m.nrows();
    match n {
        0 => Int::ONE,
        1 => m[(0, 0)].clone(),
        2 => &m[(0, 0)] * &m[(1, 1)] - &m[(0, 1)] * &m[(1, 0)],
        _ => {
            let mut acc = Int::ZERO;
            for j in 0..n {
                if m[(0, j)].is_zero() {
                    continue;
                }
                let term = &m[(0, j)] * &cofactor_rec(&minor(m, 0, j));
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}

fn minor(m: &IntMat, row: usize, col: usize) -> IntMat {
    let n = m.nrows();
    let mut out = IntMat::zeros(n - 1, m.ncols() - 1);
    let mut oi = 0;
    for i in 0..n {
        if i == row {
            continue;
        }
        let mut oj = 0;
        for j in 0..m.ncols() {
            if j == col {
                continue;
            }
            out[(oi, oj)] = m[(i, j)].clone();
            oj += 1;
        }
        oi += 1;
    }
    out
}

/// Exact determinant: cofactor expansion up to 3×3, Bareiss beyond.
pub fn det(m: &IntMat) -> Result<Int> {
    if m.is_square() && m.nrows() <= 3 {
        det_cofactor(m)
    } else {
        det_bareiss(m)
    }
}

/// `adj(m)` with `m·adj(m) = det(m)·I`; errors on singular input.
pub fn adjugate(m: &IntMat) -> Result<IntMat> {
    let d = det(m)?;
    if d.is_zero() {
        return Err(Error::Singular);
    }
    let n = m.nrows();
    if n == 1 {
        return Ok(IntMat::identity(1));
    }
    let mut adj = IntMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let c = det(&minor(m, i, j))?;
            adj[(j, i)] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    Ok(adj)
}

/// Rank over ℚ by fraction-free elimination.
pub fn rank(m: &IntMat) -> usize {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        for i in r + 1..rows {
            if a[(i, c)].is_zero() {
                continue;
            }
            let g = a[(r, c)].gcd(&a[(i, c)]);
            let fr = a[(i, c)].div_exact(&g);
            let fi = a[(r, c)].div_exact(&g);
            for j in c..cols {
                a[(i, j)] = &a[(i, j)] * &fi - &a[(r, j)] * &fr;
            }
        }
        r += 1;
    }
    r
}

/// Integer coefficients `c` with `c · basis = v`, if they exist. `basis` must
/// have full row rank.
pub fn solve_integral(basis: &IntMat, v: &[Int]) -> Option<IntVec> {
    let k = basis.nrows();
    // choose k independent columns greedily
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    for j in 0..basis.ncols() {
        let mut trial = chosen.clone();
        trial.push(j);
        let sub = basis.transpose().select_rows(&trial);
        if rank(&sub) == trial.len() {
            chosen = trial;
            if chosen.len() == k {
                break;
            }
        }
    }
    if chosen.len() < k {
        return None;
    }
    let square = basis.transpose().select_rows(&chosen).transpose();
    let d = det(&square).ok()?;
    let adj = adjugate(&square).ok()?;
    let rhs: Vec<Int> = chosen.iter().map(|&j| v[j].clone()).collect();
    let scaled = adj.vec_mul(&rhs);
    let mut coeffs = Vec::with_capacity(k);
    for x in scaled.iter() {
        if !d.divides(x) {
            return None;
        }
        coeffs.push(x.div_exact(&d));
    }
    let coeffs = IntVec(coeffs);
    (basis.vec_mul(&coeffs).0 == v).then_some(coeffs)
}
