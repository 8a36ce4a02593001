//! Proper rational polyhedral cones and polyhedra.

mod canonical;
pub(crate) mod dd;
mod decompose;
mod polyhedron;

use std::fmt;

pub use canonical::{canonical_form, canonical_key, equivalent, equivalent_by_rays, equivalent_simplicial, CanonicalForm, ConeKey};
pub use decompose::direct_sum_decompose;
pub use polyhedron::{minkowski_sum_hull, Inequality, Polyhedron};

use crate::error::{Error, Result};
use crate::lattice::{adjugate, det, lattice_index, rank, Int, IntMat, IntVec};

/// A proper cone held in dual-pair form: primitive extreme rays and primitive
/// inward facet normals, both sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    rays: Vec<IntVec>,
    facets: Vec<IntVec>,
}

fn check_dims(vs: &[IntVec]) -> Result<usize> {
    let dim = vs.first().map(IntVec::dim).ok_or_else(|| Error::NotProper("no generators".into()))?;
    if dim == 0 {
        return Err(Error::NotProper("dimension 0".into()));
    }
    for v in vs {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: v.dim() });
        }
    }
    Ok(dim)
}

/// Keeps the members of `candidates` whose tight set in `duals` has rank `dim - 1`.
fn irredundant(candidates: &[IntVec], duals: &[IntVec], dim: usize) -> Result<Vec<IntVec>> {
    let mut out = Vec::new();
    for c in candidates {
        let p = c.primitive()?;
        let tight: Vec<&IntVec> = duals.iter().filter(|d| d.dot(&p).is_zero()).collect();
        let r = if tight.is_empty() { 0 } else { rank(&IntMat::from_rows(&tight)) };
        if r + 1 == dim {
            out.push(p);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

impl Cone {
    /// The cone generated by `gens`; fails unless it is full-dimensional and pointed.
    pub fn from_rays(gens: &[IntVec]) -> Result<Cone> {
        let dim = check_dims(gens)?;
        if gens.iter().any(IntVec::is_zero) {
            return Err(Error::ZeroVector);
        }
        let facets = dd::extreme_rays(gens, dim)
            .ok_or_else(|| Error::NotProper("generators do not span the ambient space".into()))?;
        if facets.is_empty() || rank(&IntMat::from_rows(&facets)) < dim {
            return Err(Error::NotProper("cone contains a line".into()));
        }
        let rays = irredundant(gens, &facets, dim)?;
        Ok(Cone { dim, rays, facets })
    }

    /// The cone `{x : f·x >= 0}` for every `f` in `normals`.
    pub fn from_facets(normals: &[IntVec]) -> Result<Cone> {
        let dim = check_dims(normals)?;
        if normals.iter().any(IntVec::is_zero) {
            return Err(Error::ZeroVector);
        }
        let rays = dd::extreme_rays(normals, dim)
            .ok_or_else(|| Error::NotProper("cone contains a line".into()))?;
        if rays.is_empty() || rank(&IntMat::from_rows(&rays)) < dim {
            return Err(Error::NotProper("cone is not full-dimensional".into()));
        }
        let facets = irredundant(normals, &rays, dim)?;
        Ok(Cone { dim, rays, facets })
    }

    pub fn from_ray_rows(rows: &[&[i64]]) -> Result<Cone> {
        Cone::from_rays(&rows.iter().map(|r| IntVec::from_i64s(r)).collect::<Vec<_>>())
    }

    pub fn from_facet_rows(rows: &[&[i64]]) -> Result<Cone> {
        Cone::from_facets(&rows.iter().map(|r| IntVec::from_i64s(r)).collect::<Vec<_>>())
    }

    /// Assembles a cone from data already known to be a valid dual pair.
    pub(crate) fn from_dual_pair(dim: usize, mut rays: Vec<IntVec>, mut facets: Vec<IntVec>) -> Cone {
        rays.sort();
        facets.sort();
        Cone { dim, rays, facets }
    }

    pub fn orthant(dim: usize) -> Cone {
        let units: Vec<IntVec> = (0..dim).rev().map(|i| IntVec::unit(dim, i)).collect();
        Cone { dim, rays: units.clone(), facets: units }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.facets
    }

    pub fn ray_matrix(&self) -> IntMat {
        IntMat::from_rows(&self.rays)
    }

    pub fn facet_matrix(&self) -> IntMat {
        IntMat::from_rows(&self.facets)
    }

    pub fn is_simplicial(&self) -> bool {
        self.facets.len() == self.dim
    }

    /// Index of the lattice generated by the facet normals.
    pub fn index(&self) -> Int {
        lattice_index(&self.facet_matrix()).expect("facets of a proper cone span")
    }

    /// Index of the lattice generated by the extreme rays.
    pub fn dual_index(&self) -> Int {
        lattice_index(&self.ray_matrix()).expect("rays of a proper cone span")
    }

    pub fn is_smooth(&self) -> bool {
        self.is_simplicial() && det(&self.ray_matrix()).map(|d| d.abs().is_one()).unwrap_or(false)
    }

    pub fn dual(&self) -> Cone {
        Cone { dim: self.dim, rays: self.facets.clone(), facets: self.rays.clone() }
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.facets.iter().all(|f| !f.dot(v).is_negative())
    }

    /// Strictly positive on every facet.
    pub fn contains_in_interior(&self, v: &[Int]) -> bool {
        self.facets.iter().all(|f| f.dot(v).is_positive())
    }

    /// Image under `x ↦ u·x` for unimodular `u`.
    pub fn map_rays(&self, u: &IntMat) -> Cone {
        let inv = unimodular_inverse(u);
        self.map_rays_with_inverse(u, &inv)
    }

    /// Image under `x ↦ u·x`, with `inv = u⁻¹` supplied.
    pub fn map_rays_with_inverse(&self, u: &IntMat, inv: &IntMat) -> Cone {
        let rays = self.rays.iter().map(|r| u.mul_vec(r)).collect();
        let facets = self.facets.iter().map(|f| inv.vec_mul(f)).collect();
        Cone::from_dual_pair(self.dim, rays, facets)
    }

    /// Short form used in logs and text output: the facet rows.
    pub fn presentation(&self) -> String {
        self.facets.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

/// Inverse of a unimodular matrix; panics if `u` is not unimodular.
pub fn unimodular_inverse(u: &IntMat) -> IntMat {
    let d = det(u).expect("square");
    assert!(d.abs().is_one(), "matrix is not unimodular");
    adjugate(u).expect("nonsingular").scale(&d)
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone {{ rays: {:?}, facets: {:?} }}", self.rays, self.facets)
    }
}
