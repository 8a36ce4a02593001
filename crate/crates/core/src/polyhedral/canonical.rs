//! Canonical representatives and equivalence of cones under GL(d, ℤ).
//!
//! The canonical ray matrix is the lexicographic minimum, over ordered choices
//! of `d` independent rays, of: the column-style HNF of the chosen rays,
//! followed by the remaining rays (in the same coordinates) sorted. The HNF is
//! built one row at a time; its first `k` rows depend only on the first `k`
//! chosen rays, so only choices attaining the least prefix are extended.

use std::fmt;

use crate::lattice::{adjugate, det, Int, IntMat, IntVec};

use super::{unimodular_inverse, Cone};

/// Serialized canonical representative, prefixed by the invariant bucket.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ConeKey(String);

impl ConeKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn from_string(s: String) -> ConeKey {
        ConeKey(s)
    }
}

impl fmt::Display for ConeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub key: ConeKey,
    /// The canonical representative.
    pub cone: Cone,
    /// `cone == original.map_rays(to_canonical)`.
    pub to_canonical: IntMat,
    pub from_canonical: IntMat,
}

#[derive(Clone)]
struct Partial {
    used: Vec<bool>,
    rows: Vec<IntVec>,
    /// Accumulated column operations; chosen rays times `u` give `rows`.
    u: IntMat,
}

fn col_combine(u: &mut IntMat, w: &mut IntVec, i: usize, j: usize, c: [&Int; 4]) {
    // (col_i, col_j) <- (c0·col_i + c1·col_j, c2·col_i + c3·col_j)
    for r in 0..u.nrows() {
        let a = u[(r, i)].clone();
        let b = u[(r, j)].clone();
        u[(r, i)] = c[0] * &a + c[1] * &b;
        u[(r, j)] = c[2] * &a + c[3] * &b;
    }
    let (a, b) = (w[i].clone(), w[j].clone());
    w[i] = c[0] * &a + c[1] * &b;
    w[j] = c[2] * &a + c[3] * &b;
}

fn col_sub(u: &mut IntMat, w: &mut IntVec, target: usize, src: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for r in 0..u.nrows() {
        let delta = q * &u[(r, src)];
        u[(r, target)] -= &delta;
    }
    let delta = q * &w[src];
    w[target] -= &delta;
}

/// Extends a partial HNF by ray `r`; `None` if `r` is dependent on the chosen rays.
fn extend(p: &Partial, r: &IntVec) -> Option<(IntVec, IntMat)> {
    let k = p.rows.len();
    let d = r.dim();
    let mut w = p.u.vec_mul(r);
    if w[k..].iter().all(Int::is_zero) {
        return None;
    }
    let mut u = p.u.clone();
    for j in k + 1..d {
        if w[j].is_zero() {
            continue;
        }
        if w[k].is_zero() {
            col_combine(&mut u, &mut w, k, j, [&Int::ZERO, &Int::ONE, &Int::ONE, &Int::ZERO]);
            continue;
        }
        let (a, b) = (w[k].clone(), w[j].clone());
        let (g, x, y) = a.extended_gcd(&b);
        let z = -b.div_exact(&g);
        let t = a.div_exact(&g);
        col_combine(&mut u, &mut w, k, j, [&x, &y, &z, &t]);
    }
    if w[k].is_negative() {
        for row in 0..d {
            u[(row, k)] = -&u[(row, k)];
        }
        w[k] = -&w[k];
    }
    let pivot = w[k].clone();
    for j in 0..k {
        let q = w[j].div_floor(&pivot);
        col_sub(&mut u, &mut w, j, k, &q);
    }
    Some((w, u))
}

fn serialize(c: &Cone, rows: &[IntVec]) -> String {
    let body: Vec<String> = rows.iter().map(ToString::to_string).collect();
    format!(
        "{}|{}|{}|{}|{}|{}",
        c.dim(),
        c.rays().len(),
        c.facets().len(),
        c.index(),
        c.dual_index(),
        body.join(",")
    )
}

/// Canonical representative, key, and the transforms to and from it.
pub fn canonical_form(c: &Cone) -> CanonicalForm {
    let d = c.dim();
    let rays = c.rays();
    let mut frontier = vec![Partial { used: vec![false; rays.len()], rows: Vec::new(), u: IntMat::identity(d) }];
    for _ in 0..d {
        let mut best: Option<IntVec> = None;
        let mut next = Vec::new();
        for p in &frontier {
            for (i, r) in rays.iter().enumerate() {
                if p.used[i] {
                    continue;
                }
                let Some((w, u)) = extend(p, r) else { continue };
                match &best {
                    Some(b) if &w > b => continue,
                    Some(b) if &w < b => next.clear(),
                    _ => {}
                }
                best = Some(w.clone());
                let mut q = p.clone();
                q.used[i] = true;
                q.rows.push(w);
                q.u = u;
                next.push(q);
            }
        }
        frontier = next;
    }

    let mut winner: Option<(Vec<IntVec>, IntMat)> = None;
    for p in frontier {
        let mut rest: Vec<IntVec> =
            rays.iter().enumerate().filter(|(i, _)| !p.used[*i]).map(|(_, r)| p.u.vec_mul(r)).collect();
        rest.sort();
        let mut all = p.rows;
        all.extend(rest);
        if winner.as_ref().is_none_or(|(w, _)| &all < w) {
            winner = Some((all, p.u));
        }
    }
    let (rows, u) = winner.expect("proper cones have d independent rays");
    let to_canonical = u.transpose();
    let from_canonical = unimodular_inverse(&to_canonical);
    let cone = c.map_rays_with_inverse(&to_canonical, &from_canonical);
    CanonicalForm { key: ConeKey(serialize(c, &rows)), cone, to_canonical, from_canonical }
}

pub fn canonical_key(c: &Cone) -> ConeKey {
    canonical_form(c).key
}

fn same_bucket(a: &Cone, b: &Cone) -> bool {
    a.dim() == b.dim()
        && a.rays().len() == b.rays().len()
        && a.facets().len() == b.facets().len()
        && a.index() == b.index()
        && a.dual_index() == b.dual_index()
}

/// Dispatches to the permutation test for simplicial cones, ray matching otherwise.
pub fn equivalent(a: &Cone, b: &Cone) -> bool {
    if a.is_simplicial() && b.is_simplicial() {
        equivalent_simplicial(a, b)
    } else {
        equivalent_by_rays(a, b)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// For simplicial cones: some column permutation `σ` makes `R_b^T · P_σ · adj(R_a^T)`
/// divisible by `det R_a`, with `|det R_a| = |det R_b|`.
pub fn equivalent_simplicial(a: &Cone, b: &Cone) -> bool {
    if !(a.is_simplicial() && b.is_simplicial()) || !same_bucket(a, b) {
        return false;
    }
    let ra = a.ray_matrix().transpose();
    let rb = b.ray_matrix().transpose();
    let da = det(&ra).expect("square");
    if da.abs() != det(&rb).expect("square").abs() {
        return false;
    }
    let adj = adjugate(&ra).expect("nonsingular");
    let d = a.dim();
    permutations(d).into_iter().any(|perm| {
        let mut permuted = IntMat::zeros(d, d);
        for (i, &j) in perm.iter().enumerate() {
            for r in 0..d {
                permuted[(r, i)] = rb[(r, j)].clone();
            }
        }
        permuted.mul(&adj).entries().iter().all(|x| da.divides(x))
    })
}

/// General test: map the lexicographically first basis among the rays of `a`
/// onto every ordered independent tuple of rays of `b` and check the result.
pub fn equivalent_by_rays(a: &Cone, b: &Cone) -> bool {
    if !same_bucket(a, b) {
        return false;
    }
    let d = a.dim();
    let mut basis = super::dd::Echelon::new();
    let mut chosen = Vec::new();
    for r in a.rays() {
        if basis.len() < d && basis.push(r) {
            chosen.push(r.clone());
        }
    }
    let base_a = IntMat::from_rows(&chosen).transpose();
    let det_a = det(&base_a).expect("square");
    let adj_a = adjugate(&base_a).expect("nonsingular");
    let target: std::collections::HashSet<&IntVec> = b.rays().iter().collect();

    let rays_b = b.rays();
    let mut stack: Vec<usize> = Vec::new();
    let mut echelon = super::dd::Echelon::new();
    fn search(
        rays_b: &[IntVec],
        stack: &mut Vec<usize>,
        echelon: &mut super::dd::Echelon,
        d: usize,
        check: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if stack.len() == d {
            return check(stack);
        }
        for i in 0..rays_b.len() {
            if stack.contains(&i) || !echelon.push(&rays_b[i]) {
                continue;
            }
            stack.push(i);
            let found = search(rays_b, stack, echelon, d, check);
            stack.pop();
            echelon.pop();
            if found {
                return true;
            }
        }
        false
    }
    let mut check = |idx: &[usize]| {
        let img: Vec<IntVec> = idx.iter().map(|&i| rays_b[i].clone()).collect();
        let base_b = IntMat::from_rows(&img).transpose();
        if det(&base_b).expect("square").abs() != det_a.abs() {
            return false;
        }
        let scaled = base_b.mul(&adj_a);
        if !scaled.entries().iter().all(|x| det_a.divides(x)) {
            return false;
        }
        let u = IntMat::from_rows(
            &scaled.row_vecs().iter().map(|r| IntVec(r.iter().map(|x| x.div_exact(&det_a)).collect())).collect::<Vec<_>>(),
        );
        a.rays().iter().all(|r| target.contains(&u.mul_vec(r)))
    };
    search(rays_b, &mut stack, &mut echelon, d, &mut check)
}
