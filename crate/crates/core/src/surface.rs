//! Two-dimensional cones: Hirzebruch–Jung continued fractions, their Hilbert
//! bases, and the explicit Nash blow-up of a cone `ℚ₊⟨(1,0),(p,q)⟩`.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{Int, IntMat, IntVec, Rat};
use crate::polyhedral::Cone;

/// `x = a₁ − 1/(a₂ − 1/(… − 1/a_k))` with convergents `p_i/q_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HjExpansion {
    pub a: Vec<Int>,
    /// `p[i]` for `i = 0..=k`, with `p[0] = 1`.
    pub p: Vec<Int>,
    /// `q[i]` for `i = 0..=k`, with `q[0] = 0`.
    pub q: Vec<Int>,
}

impl HjExpansion {
    pub fn from_terms(a: Vec<Int>) -> HjExpansion {
        // p_{-1} = 0, p_0 = 1; q_{-1} = -1, q_0 = 0
        let (mut p, mut q) = (vec![Int::ONE], vec![Int::ZERO]);
        let (mut p_prev, mut q_prev) = (Int::ZERO, Int::from(-1));
        for ai in &a {
            let pi = ai * p.last().unwrap() - &p_prev;
            let qi = ai * q.last().unwrap() - &q_prev;
            p_prev = p.last().unwrap().clone();
            q_prev = q.last().unwrap().clone();
            p.push(pi);
            q.push(qi);
        }
        HjExpansion { a, p, q }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `(p_i, q_i)` for `i = 0..=k`.
    pub fn convergents(&self) -> Vec<IntVec> {
        self.p.iter().zip(&self.q).map(|(p, q)| IntVec(vec![p.clone(), q.clone()])).collect()
    }
}

/// Round up, subtract, invert.
pub fn hj_expand(x: &Rat) -> HjExpansion {
    let mut a = Vec::new();
    let mut x = x.clone();
    loop {
        let c = x.ceil();
        let rest = &Rat::from_int(c.clone()) - &x;
        a.push(c);
        match rest.recip() {
            Some(next) => x = next,
            None => break,
        }
    }
    HjExpansion::from_terms(a)
}

pub fn hj_eval(a: &[Int]) -> Result<Rat> {
    let (last, init) = a.split_last().ok_or(Error::ZeroDenominator)?;
    let mut t = Rat::from_int(last.clone());
    for ai in init.iter().rev() {
        let inv = t.recip().ok_or(Error::ZeroDenominator)?;
        t = &Rat::from_int(ai.clone()) - &inv;
    }
    Ok(t)
}

/// The cone `ℚ₊⟨(1,0),(p,q)⟩` with `0 <= p < q` coprime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StdCone2D {
    pub p: Int,
    pub q: Int,
}

impl StdCone2D {
    pub fn new(p: i64, q: i64) -> Result<StdCone2D> {
        StdCone2D::from_ints(Int::from(p), Int::from(q))
    }

    pub fn from_ints(p: Int, q: Int) -> Result<StdCone2D> {
        if !q.is_positive() || p.is_negative() || p >= q || !p.gcd(&q).is_one() {
            return Err(Error::NotProper(format!("({p},{q}) is not a standard pair")));
        }
        Ok(StdCone2D { p, q })
    }

    pub fn is_smooth(&self) -> bool {
        self.q.is_one()
    }

    pub fn cone(&self) -> Cone {
        Cone::from_rays(&[IntVec::from_i64s(&[1, 0]), IntVec(vec![self.p.clone(), self.q.clone()])])
            .expect("standard pairs give proper cones")
    }

    /// The least of `p` and `p⁻¹ mod q`, a complete invariant of the class.
    pub fn class_rep(&self) -> Int {
        if self.is_smooth() {
            return Int::ZERO;
        }
        let (_, x, _) = self.p.extended_gcd(&self.q);
        let inv = x.mod_floor(&self.q);
        if inv < self.p {
            inv
        } else {
            self.p.clone()
        }
    }

    pub fn expansion(&self) -> HjExpansion {
        hj_expand(&Rat::new(self.p.clone(), self.q.clone()))
    }
}

impl fmt::Display for StdCone2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

fn cross(u: &[Int], v: &[Int]) -> Int {
    &u[0] * &v[1] - &u[1] * &v[0]
}

/// Standard form of a proper 2-D cone and an `SL(2,ℤ)` matrix `t` with
/// `c.map_rays(t)` equal to the standard cone.
///
/// The edge mapped to `(1,0)` is the ray `r` with `cross(r, r') > 0` for the other ray `r'`.
pub fn standard_form_2d(c: &Cone) -> (StdCone2D, IntMat) {
    assert_eq!(c.dim(), 2, "standard form needs a planar cone");
    let (r0, r1) = (&c.rays()[0], &c.rays()[1]);
    let (r, other) = if cross(r0, r1).is_positive() { (r0, r1) } else { (r1, r0) };
    let (_, x, y) = r[0].extended_gcd(&r[1]);
    let m = IntMat::from_rows(&[vec![x, y], vec![-&r[1], r[0].clone()]]);
    let w = m.mul_vec(other);
    let (e, f) = (w[0].clone(), w[1].clone());
    let g = -e.div_floor(&f);
    let shear = IntMat::from_rows(&[vec![Int::ONE, g], vec![Int::ZERO, Int::ONE]]);
    let t = shear.mul(&m);
    let p = e.mod_floor(&f);
    (StdCone2D { p, q: f }, t)
}

/// `v_0 = (1,0)` followed by the convergents of `p/q`.
pub fn hilbert_basis_2d(s: &StdCone2D) -> Vec<IntVec> {
    s.expansion().convergents()
}

/// Lattice points of the boundary of `C + Hull S` where the direction turns.
pub fn blowup_vertices_2d(s: &StdCone2D) -> Vec<IntVec> {
    let h = hilbert_basis_2d(s);
    let pts: Vec<IntVec> = h.windows(2).map(|w| w[0].add(&w[1])).collect();
    let k = pts.len();
    let first_dir = IntVec::from_i64s(&[-1, 0]);
    let last_dir = h.last().expect("nonempty").clone();
    (0..k)
        .filter(|&i| {
            let before = if i == 0 { first_dir.clone() } else { pts[i].sub(&pts[i - 1]) };
            let after = if i + 1 == k { last_dir.clone() } else { pts[i + 1].sub(&pts[i]) };
            !cross(&before, &after).is_zero()
        })
        .map(|i| pts[i].clone())
        .collect()
}

/// One Nash blow-up of a standard cone, from the boundary through the points
/// `v_i + v_{i+1}`. Children come in boundary order, starting next to `(1,0)`.
pub fn nash_blowup_2d(s: &StdCone2D) -> Vec<StdCone2D> {
    let verts = blowup_vertices_2d(s);
    let h = hilbert_basis_2d(s);
    let n = verts.len();
    (0..n)
        .map(|i| {
            let a = if i == 0 { IntVec::from_i64s(&[1, 0]) } else { verts[i - 1].sub(&verts[i]) };
            let b = if i + 1 == n { h.last().unwrap().clone() } else { verts[i + 1].sub(&verts[i]) };
            let local = Cone::from_rays(&[a, b]).expect("vertex cone is proper");
            standard_form_2d(&local).0
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution2D {
    /// Number of blow-up rounds until every cone is smooth.
    pub steps: usize,
    /// Cones present after each round, starting with the input.
    pub levels: Vec<Vec<StdCone2D>>,
}

/// Blows up every singular cone breadth-first until all are smooth.
pub fn resolve_2d(s: &StdCone2D) -> Resolution2D {
    let mut levels = vec![vec![s.clone()]];
    loop {
        let cur = levels.last().unwrap();
        if cur.iter().all(StdCone2D::is_smooth) {
            break;
        }
        let next: Vec<StdCone2D> =
            cur.iter().flat_map(|c| if c.is_smooth() { vec![c.clone()] } else { nash_blowup_2d(c) }).collect();
        levels.push(next);
    }
    Resolution2D { steps: levels.len() - 1, levels }
}
