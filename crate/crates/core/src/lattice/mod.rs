//! Exact integer vectors and matrices.

mod int;
mod normal_form;
mod rat;

use std::fmt;
use std::ops::{Deref, DerefMut, Index, IndexMut};

pub use int::Int;
pub use normal_form::{
    adjugate, column_hnf, det, det_bareiss, det_cofactor, lattice_index, rank, row_hnf, snf,
    solve_integral, Hnf, Snf,
};
pub use rat::Rat;

use crate::error::{Error, Result};

/// A vector in ℤ^d.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVec(pub Vec<Int>);

impl IntVec {
    pub fn zeros(dim: usize) -> IntVec {
        IntVec(vec![Int::ZERO; dim])
    }

    pub fn unit(dim: usize, i: usize) -> IntVec {
        let mut v = IntVec::zeros(dim);
        v.0[i] = Int::ONE;
        v
    }

    pub fn from_i64s(xs: &[i64]) -> IntVec {
        IntVec(xs.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Int::is_zero)
    }

    pub fn dot(&self, other: &[Int]) -> Int {
        debug_assert_eq!(self.len(), other.len());
        let mut acc = Int::ZERO;
        for (a, b) in self.0.iter().zip(other) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn add(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Int) -> IntVec {
        IntVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> IntVec {
        IntVec(self.0.iter().map(|a| -a).collect())
    }

    /// gcd of the entries (0 for the zero vector).
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for x in &self.0 {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides out the gcd of the entries.
    pub fn primitive(&self) -> Result<IntVec> {
        let g = self.content();
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        if g.is_one() {
            return Ok(self.clone());
        }
        Ok(IntVec(self.0.iter().map(|x| x.div_exact(&g)).collect()))
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(Int::to_i64).collect()
    }
}

impl Deref for IntVec {
    type Target = [Int];
    fn deref(&self) -> &[Int] {
        &self.0
    }
}

impl DerefMut for IntVec {
    fn deref_mut(&mut self) -> &mut [Int] {
        &mut self.0
    }
}

impl AsRef<[Int]> for IntVec {
    fn as_ref(&self) -> &[Int] {
        &self.0
    }
}

impl From<Vec<Int>> for IntVec {
    fn from(v: Vec<Int>) -> Self {
        IntVec(v)
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat { rows, cols, data: vec![Int::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::ONE;
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows<R: AsRef<[Int]>>(rows: &[R]) -> IntMat {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        IntMat { rows: rows.len(), cols, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> IntMat {
        let vs: Vec<IntVec> = rows.iter().map(|r| IntVec::from_i64s(r)).collect();
        IntMat::from_rows(&vs)
    }

    pub fn diagonal(entries: &[Int]) -> IntMat {
        let mut m = IntMat::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> IntVec {
        IntVec(self.row(i).to_vec())
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Int]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn row_vecs(&self) -> Vec<IntVec> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn col_vec(&self, j: usize) -> IntVec {
        IntVec((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Int]) -> IntVec {
        IntVec((0..self.rows).map(|i| IntVec(self.row(i).to_vec()).dot(v)).collect())
    }

    /// `v · self` for a row vector `v`.
    pub fn vec_mul(&self, v: &[Int]) -> IntVec {
        assert_eq!(v.len(), self.rows);
        let mut out = IntVec::zeros(self.cols);
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let b = &self[(i, j)];
                if !b.is_zero() {
                    out.0[j] += a * b;
                }
            }
        }
        out
    }

    pub fn scale(&self, k: &Int) -> IntMat {
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Rows selected (and reordered) by `idx`.
    pub fn select_rows(&self, idx: &[usize]) -> IntMat {
        let rows: Vec<&[Int]> = idx.iter().map(|&i| self.row(i)).collect();
        IntMat::from_rows(&rows)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() })
            })
    }

    pub fn entries(&self) -> &[Int] {
        &self.data
    }
}

impl Index<(usize, usize)> for IntMat {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", IntVec(self.row(i).to_vec()))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}
