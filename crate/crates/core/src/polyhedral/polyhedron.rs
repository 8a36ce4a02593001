use crate::error::{Error, Result};
use crate::lattice::{rank, Int, IntMat, IntVec};

use super::{dd, Cone};

/// `normal · x >= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inequality {
    pub normal: IntVec,
    pub offset: Int,
}

impl Inequality {
    pub fn is_tight(&self, x: &[Int]) -> bool {
        self.normal.dot(x) == self.offset
    }

    pub fn holds(&self, x: &[Int]) -> bool {
        self.normal.dot(x) >= self.offset
    }
}

/// A polyhedron `recession + Hull(vertices)` with lattice-point vertices.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    dim: usize,
    vertices: Vec<IntVec>,
    recession: Cone,
    inequalities: Vec<Inequality>,
}

impl Polyhedron {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sorted lexicographically.
    pub fn vertices(&self) -> &[IntVec] {
        &self.vertices
    }

    pub fn recession(&self) -> &Cone {
        &self.recession
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.inequalities.iter().all(|h| h.holds(x))
    }

    /// The cone cut out by the inequalities tight at vertex `v`.
    pub fn localize(&self, v: &IntVec) -> Result<Cone> {
        if self.vertices.binary_search(v).is_err() {
            return Err(Error::NotAVertex);
        }
        let tight: Vec<IntVec> =
            self.inequalities.iter().filter(|h| h.is_tight(v)).map(|h| h.normal.clone()).collect();
        Cone::from_facets(&tight)
    }
}

/// Drops points `s` with `s - s'` in `c` for another point `s'`; such points
/// are never vertices of `c + Hull(points)`.
fn undominated(c: &Cone, points: &[IntVec]) -> Vec<IntVec> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    // Evaluate facet values once; dominance is coordinatewise on them.
    let vals: Vec<Vec<Int>> = pts.iter().map(|p| c.facets().iter().map(|f| f.dot(p)).collect()).collect();
    let mut keep = Vec::new();
    'outer: for (i, p) in pts.iter().enumerate() {
        for (j, q) in vals.iter().enumerate() {
            if i != j && q.iter().zip(&vals[i]).all(|(a, b)| a <= b) {
                continue 'outer;
            }
        }
        keep.push(p.clone());
    }
    keep
}

/// `c + Hull(points)`, computed through the homogenization cone
/// `cone{(0, r) : r ray of c} + cone{(1, s) : s in points}`.
pub fn minkowski_sum_hull(c: &Cone, points: &[IntVec]) -> Result<Polyhedron> {
    let d = c.dim();
    if points.is_empty() {
        return Err(Error::NotProper("empty point set".into()));
    }
    for p in points {
        if p.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: p.dim() });
        }
    }
    let pts = undominated(c, points);
    let lift = |t: i64, v: &IntVec| {
        let mut w = Vec::with_capacity(d + 1);
        w.push(Int::from(t));
        w.extend(v.iter().cloned());
        IntVec(w)
    };
    let mut gens: Vec<IntVec> = c.rays().iter().map(|r| lift(0, r)).collect();
    gens.extend(pts.iter().map(|p| lift(1, p)));
    let facets = dd::extreme_rays(&gens, d + 1).expect("homogenization cone is full-dimensional");

    let mut inequalities = Vec::new();
    for f in &facets {
        let normal = IntVec(f[1..].to_vec());
        if normal.is_zero() {
            continue;
        }
        let g = normal.content();
        let offset = -&f[0];
        debug_assert!(g.divides(&offset));
        inequalities.push(Inequality { normal: normal.primitive()?, offset: offset.div_exact(&g) });
    }
    inequalities.sort();

    let mut vertices = Vec::new();
    for p in &pts {
        let lifted = lift(1, p);
        let tight: Vec<&IntVec> = facets.iter().filter(|f| f.dot(&lifted).is_zero()).collect();
        if !tight.is_empty() && rank(&IntMat::from_rows(&tight)) == d {
            vertices.push(p.clone());
        }
    }
    vertices.sort();
    Ok(Polyhedron { dim: d, vertices, recession: c.clone(), inequalities })
}
