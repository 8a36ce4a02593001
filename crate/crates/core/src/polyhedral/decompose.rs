//! Splitting a cone into a direct sum of lower-dimensional cones.

use crate::lattice::{det, rank, snf, solve_integral, IntMat, IntVec};

use super::{canonical_key, unimodular_inverse, Cone};

/// Basis of `ℤ^d ∩ span(rows)`.
fn saturated_basis(rows: &[IntVec]) -> Vec<IntVec> {
    let m = IntMat::from_rows(rows);
    let k = rank(&m);
    let v_inv = unimodular_inverse(&snf(&m).v);
    (0..k).map(|i| v_inv.row_vec(i)).collect()
}

/// Set partitions of `0..n`, each as a list of blocks.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![Vec::new()];
    for i in 0..n {
        let mut next = Vec::new();
        for p in out {
            for b in 0..p.len() {
                let mut q: Vec<Vec<usize>> = p.clone();
                q[b].push(i);
                next.push(q);
            }
            let mut q = p;
            q.push(vec![i]);
            next.push(q);
        }
        out = next;
    }
    out
}

/// Connected components of the graph joining two rays whenever some facet is
/// nonzero on both. Rays of different summands never get joined.
fn ray_components(c: &Cone) -> Vec<Vec<usize>> {
    let n = c.rays().len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for f in c.facets() {
        let support: Vec<usize> = (0..n).filter(|&i| !f.dot(&c.rays()[i]).is_zero()).collect();
        for w in support.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_of[r] == usize::MAX {
            root_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_of[r]].push(i);
    }
    groups
}

/// The finest decomposition `c ≅ c₁ ⊕ … ⊕ c_k`, each summand in coordinates of
/// a lattice basis of its span. Summands are ordered by decreasing dimension,
/// then by canonical key. A single-element result means `c` is irreducible.
pub fn direct_sum_decompose(c: &Cone) -> Vec<Cone> {
    let d = c.dim();
    let comps = ray_components(c);
    let mut best: Option<Vec<Cone>> = None;
    for partition in set_partitions(comps.len()) {
        if partition.len() < 2 || best.as_ref().is_some_and(|b| b.len() >= partition.len()) {
            continue;
        }
        let groups: Vec<Vec<IntVec>> = partition
            .iter()
            .map(|blocks| blocks.iter().flat_map(|&b| comps[b].iter().map(|&i| c.rays()[i].clone())).collect())
            .collect();
        let bases: Vec<Vec<IntVec>> = groups.iter().map(|g| saturated_basis(g)).collect();
        if bases.iter().map(Vec::len).sum::<usize>() != d {
            continue;
        }
        let stacked: Vec<IntVec> = bases.iter().flatten().cloned().collect();
        if !det(&IntMat::from_rows(&stacked)).is_ok_and(|x| x.abs().is_one()) {
            continue;
        }
        let summands: Vec<Cone> = groups
            .iter()
            .zip(&bases)
            .map(|(g, basis)| {
                let bm = IntMat::from_rows(basis);
                let coords: Vec<IntVec> =
                    g.iter().map(|r| solve_integral(&bm, r).expect("ray lies in its saturated lattice")).collect();
                Cone::from_rays(&coords).expect("summand of a proper cone is proper")
            })
            .collect();
        best = Some(summands);
    }
    let mut out = best.unwrap_or_else(|| vec![c.clone()]);
    if out.len() > 1 {
        let mut keyed: Vec<_> = out.into_iter().map(|s| (s.dim(), canonical_key(&s), s)).collect();
        keyed.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        out = keyed.into_iter().map(|(_, _, s)| s).collect();
    }
    out
}
