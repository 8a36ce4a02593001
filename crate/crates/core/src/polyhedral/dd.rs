//! Double description: extreme rays of `{y : a·y >= 0 for every constraint a}`.
//!
//! Constraints are inserted in lexicographic order after an initial simplex
//! made of the lexicographically first independent constraints. Adjacency of a
//! (+, −) ray pair is decided combinatorially on the sets of tight constraints.

use crate::lattice::{adjugate, det, Int, IntMat, IntVec};

#[derive(Clone, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub(crate) fn new(bits: usize) -> BitSet {
        BitSet { words: vec![0; bits.div_ceil(64)] }
    }

    pub(crate) fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn and(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub(crate) fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn is_superset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == *b)
    }
}

/// Incremental independence test over ℚ using a fraction-free echelon basis.
pub(crate) struct Echelon {
    rows: Vec<(usize, IntVec)>,
}

impl Echelon {
    pub(crate) fn new() -> Echelon {
        Echelon { rows: Vec::new() }
    }

    pub(crate) fn len(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &IntVec) -> IntVec {
        let mut w = v.clone();
        for (pivot, row) in &self.rows {
            if w[*pivot].is_zero() {
                continue;
            }
            let g = row[*pivot].gcd(&w[*pivot]);
            let fw = row[*pivot].div_exact(&g);
            let fr = w[*pivot].div_exact(&g);
            w = w.scale(&fw).sub(&row.scale(&fr));
            if let Ok(p) = w.primitive() {
                w = p;
            }
        }
        w
    }

    /// Adds `v` if independent; returns whether it was added.
    pub(crate) fn push(&mut self, v: &IntVec) -> bool {
        let w = self.reduce(v);
        match w.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, w));
                true
            }
            None => false,
        }
    }

    pub(crate) fn pop(&mut self) {
        self.rows.pop();
    }
}

struct Ray {
    v: IntVec,
    tight: BitSet,
}

/// Primitive extreme rays of the cone cut out by `constraints` in ℚ^dim,
/// sorted lexicographically. Returns `None` when the constraints do not span
/// ℚ^dim, i.e. the cone is not pointed.
pub(crate) fn extreme_rays(constraints: &[IntVec], dim: usize) -> Option<Vec<IntVec>> {
    let mut cons: Vec<IntVec> = constraints.iter().filter_map(|c| c.primitive().ok()).collect();
    cons.sort();
    cons.dedup();

    let mut basis = Echelon::new();
    let mut order = Vec::with_capacity(cons.len());
    for (i, c) in cons.iter().enumerate() {
        if basis.len() < dim && basis.push(c) {
            order.push(i);
        }
    }
    if basis.len() < dim {
        return None;
    }
    let initial: Vec<usize> = order.clone();
    order.extend((0..cons.len()).filter(|i| !initial.contains(i)));
    let m = order.len();

    let b = IntMat::from_rows(&initial.iter().map(|&i| cons[i].clone()).collect::<Vec<_>>());
    let adj = adjugate(&b).expect("initial constraints are independent");
    let d = det(&b).expect("square");
    let sign = if d.is_negative() { Int::from(-1) } else { Int::ONE };
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let v = adj.col_vec(j).scale(&sign).primitive().expect("adjugate column is nonzero");
            let mut tight = BitSet::new(m);
            for k in 0..dim {
                if k != j {
                    tight.insert(k);
                }
            }
            Ray { v, tight }
        })
        .collect();

    let min_common = dim.saturating_sub(2);
    for (t, &ci) in order.iter().enumerate().skip(dim) {
        let a = &cons[ci];
        let vals: Vec<Int> = rays.iter().map(|r| r.v.dot(a)).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.tight.insert(t);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].tight.and(&rays[n].tight);
                if common.count() < min_common {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == n || !r.tight.is_superset(&common));
                if !adjacent {
                    continue;
                }
                let v = rays[n].v.scale(&vals[p]).sub(&rays[p].v.scale(&vals[n]));
                let Ok(v) = v.primitive() else { continue };
                let mut tight = common;
                tight.insert(t);
                fresh.push(Ray { v, tight });
            }
        }
        let mut next = Vec::with_capacity(rays.len() + fresh.len());
        for (r, v) in rays.into_iter().zip(&vals) {
            if v.is_positive() {
                next.push(r);
            } else if v.is_zero() {
                let mut r = r;
                r.tight.insert(t);
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
    }

    let mut out: Vec<IntVec> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(rows: &[&[i64]]) -> Vec<IntVec> {
        rows.iter().map(|r| IntVec::from_i64s(r)).collect()
    }

    #[test]
    fn orthant_is_self_dual() {
        let e = vs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(extreme_rays(&e, 3).unwrap(), vs(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]));
    }

    #[test]
    fn square_cone() {
        // facets of the cone over a square
        let gens = vs(&[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]]);
        let facets = extreme_rays(&gens, 3).unwrap();
        assert_eq!(facets, vs(&[&[-1, -1, 1], &[-1, 1, 1], &[1, -1, 1], &[1, 1, 1]]));
    }

    #[test]
    fn redundant_and_lineality() {
        let gens = vs(&[&[1, 0], &[4, 7], &[1, 1], &[2, 2]]);
        assert_eq!(extreme_rays(&gens, 2).unwrap(), vs(&[&[0, 1], &[7, -4]]));
        assert!(extreme_rays(&vs(&[&[1, 0], &[2, 0]]), 2).is_none());
        // a half-plane's dual is a ray, so the "cone" {0} results
        let gens = vs(&[&[1, 0], &[-1, 0], &[0, 1]]);
        assert_eq!(extreme_rays(&gens, 2).unwrap(), vs(&[&[0, 1]]));
        assert_eq!(extreme_rays(&vs(&[&[1], &[-1]]), 1).unwrap(), Vec::<IntVec>::new());
    }
}
