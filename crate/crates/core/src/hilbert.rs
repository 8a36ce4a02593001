//! Hilbert bases of `C ∩ ℤ^d` via a placing triangulation and the lattice
//! points of each fundamental parallelepiped.

use std::collections::HashMap;

use crate::lattice::{adjugate, det, snf, Int, IntMat, IntVec};
use crate::polyhedral::{unimodular_inverse, Cone};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    elements: Vec<IntVec>,
    cone: Cone,
}

impl HilbertBasis {
    /// Sorted by coordinate sum, then lexicographically.
    pub fn elements(&self) -> &[IntVec] {
        &self.elements
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    /// Elements as rows.
    pub fn matrix(&self) -> IntMat {
        IntMat::from_rows(&self.elements)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Normal to the hyperplane spanned by `d - 1` vectors, oriented positively on `toward`.
fn hyperplane_normal(vectors: &[&IntVec], toward: &IntVec) -> IntVec {
    let d = toward.dim();
    let mut n = Vec::with_capacity(d);
    for j in 0..d {
        let mut rows: Vec<IntVec> = vectors.iter().map(|v| (*v).clone()).collect();
        rows.push(IntVec::unit(d, j));
        n.push(det(&IntMat::from_rows(&rows)).expect("square"));
    }
    let n = IntVec(n);
    if n.dot(toward).is_negative() {
        n.neg()
    } else {
        n
    }
}

/// Placing triangulation of `c` on its sorted rays. Each piece is spanned by rays of `c`.
pub fn triangulate(c: &Cone) -> Vec<Cone> {
    let d = c.dim();
    if c.is_simplicial() {
        return vec![c.clone()];
    }
    let rays = c.rays();
    let mut order = Vec::new();
    let mut echelon = crate::polyhedral::dd::Echelon::new();
    for (i, r) in rays.iter().enumerate() {
        if echelon.len() < d && echelon.push(r) {
            order.push(i);
        }
    }
    let rest: Vec<usize> = (0..rays.len()).filter(|i| !order.contains(i)).collect();
    order.extend(rest);

    let mut simplices: Vec<Vec<usize>> = vec![order[..d].to_vec()];
    // boundary facet (sorted ray indices) -> inward normal
    let mut boundary: HashMap<Vec<usize>, IntVec> = HashMap::new();
    let toggle = |boundary: &mut HashMap<Vec<usize>, IntVec>, facet: Vec<usize>, opposite: usize| {
        if boundary.remove(&facet).is_none() {
            let vs: Vec<&IntVec> = facet.iter().map(|&i| &rays[i]).collect();
            let n = hyperplane_normal(&vs, &rays[opposite]);
            boundary.insert(facet, n);
        }
    };
    let first = simplices[0].clone();
    for &skip in &first {
        let mut f: Vec<usize> = first.iter().copied().filter(|&i| i != skip).collect();
        f.sort();
        toggle(&mut boundary, f, skip);
    }
    for &p in &order[d..] {
        let mut visible: Vec<Vec<usize>> =
            boundary.iter().filter(|(_, n)| n.dot(&rays[p]).is_negative()).map(|(f, _)| f.clone()).collect();
        visible.sort();
        for f in visible {
            boundary.remove(&f);
            for &q in &f {
                let mut g: Vec<usize> = f.iter().copied().filter(|&i| i != q).collect();
                g.push(p);
                g.sort();
                toggle(&mut boundary, g, q);
            }
            let mut s = f.clone();
            s.push(p);
            simplices.push(s);
        }
    }
    simplices
        .into_iter()
        .map(|s| {
            let gens: Vec<IntVec> = s.iter().map(|&i| rays[i].clone()).collect();
            Cone::from_rays(&gens).expect("simplex spanned by independent rays")
        })
        .collect()
}

/// Lattice points `Σ λ_i g_i` with `0 <= λ_i < 1` for the rays `g_i` of a simplicial cone.
pub fn parallelepiped_points(c: &Cone) -> Vec<IntVec> {
    assert!(c.is_simplicial(), "parallelepiped of a non-simplicial cone");
    let g = c.ray_matrix().transpose();
    let mut vol = det(&g).expect("square");
    let mut adj = adjugate(&g).expect("nonsingular");
    if vol.is_negative() {
        vol = -vol;
        adj = adj.scale(&Int::from(-1));
    }
    let form = snf(&g);
    let factors = form.invariant_factors();
    let u_inv = unimodular_inverse(&form.u);
    let d = c.dim();
    let mut out = Vec::new();
    let mut y = vec![Int::ZERO; d];
    loop {
        let x = u_inv.mul_vec(&y);
        let mu = adj.mul_vec(&x);
        let frac = IntVec(mu.iter().map(|m| m.mod_floor(&vol)).collect());
        let scaled = g.mul_vec(&frac);
        out.push(IntVec(scaled.iter().map(|v| v.div_exact(&vol)).collect()));
        // odometer over the quotient group
        let mut i = 0;
        loop {
            if i == d {
                out.sort();
                out.dedup();
                return out;
            }
            y[i] += &Int::ONE;
            if y[i] < factors[i] {
                break;
            }
            y[i] = Int::ZERO;
            i += 1;
        }
    }
}

/// The unique minimal generating set of the semigroup `c ∩ ℤ^d`.
pub fn hilbert_basis(c: &Cone) -> HilbertBasis {
    let mut candidates: Vec<IntVec> = c.rays().to_vec();
    for piece in triangulate(c) {
        candidates.extend(parallelepiped_points(&piece).into_iter().filter(|p| !p.is_zero()));
    }
    candidates.sort();
    candidates.dedup();
    let values: Vec<Vec<Int>> =
        candidates.iter().map(|h| c.facets().iter().map(|f| f.dot(h)).collect()).collect();
    let weight: Vec<Int> = values.iter().map(|v| v.iter().sum()).collect();
    let mut elements = Vec::new();
    for (i, h) in candidates.iter().enumerate() {
        let reducible = (0..candidates.len()).any(|j| {
            j != i && weight[j] < weight[i] && values[j].iter().zip(&values[i]).all(|(a, b)| a <= b)
        });
        if !reducible {
            elements.push(h.clone());
        }
    }
    elements.sort_by(|a, b| {
        let sa: Int = a.iter().sum();
        let sb: Int = b.iter().sum();
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    HilbertBasis { elements, cone: c.clone() }
}
