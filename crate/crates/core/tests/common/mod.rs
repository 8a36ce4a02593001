#![allow(dead_code)]

use nash_core::lattice::{Int, IntMat, IntVec};
use nash_core::polyhedral::Cone;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random element of GL(d, ℤ) built from elementary operations with small multipliers.
pub fn random_unimodular(d: usize, rng: &mut impl Rng) -> IntMat {
    let mut m: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..3 * d {
        let i = rng.gen_range(0..d);
        let j = rng.gen_range(0..d);
        match rng.gen_range(0..4) {
            0 if i != j => m.swap(i, j),
            1 => m[i].iter_mut().for_each(|x| *x = -*x),
            _ if i != j => {
                let k = rng.gen_range(-2..=2);
                let src = m[j].clone();
                m[i].iter_mut().zip(src).for_each(|(x, y)| *x += k * y);
            }
            _ => {}
        }
    }
    let rows: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
    IntMat::from_i64_rows(&rows)
}

pub fn vecs(rows: &[&[i64]]) -> Vec<IntVec> {
    rows.iter().map(|r| IntVec::from_i64s(r)).collect()
}

pub fn to_i64(v: &[Int]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small entry")).collect()
}

/// Block-diagonal direct sum of two cones.
pub fn direct_sum(a: &Cone, b: &Cone) -> Cone {
    let (da, db) = (a.dim(), b.dim());
    let mut rays = Vec::new();
    for r in a.rays() {
        let mut v = r.0.clone();
        v.extend(std::iter::repeat_n(Int::ZERO, db));
        rays.push(IntVec(v));
    }
    for r in b.rays() {
        let mut v = vec![Int::ZERO; da];
        v.extend(r.0.iter().cloned());
        rays.push(IntVec(v));
    }
    Cone::from_rays(&rays).expect("sum of proper cones is proper")
}

/// Hilbert basis by exhaustive search: lattice points of `c` in the box
/// spanned by the absolute ray sums, minus those that split off another one.
pub fn brute_force_hilbert(c: &Cone) -> Vec<Vec<i64>> {
    let d = c.dim();
    let bound: Vec<i64> = (0..d).map(|k| c.rays().iter().map(|r| r[k].to_i64().unwrap().abs()).sum()).collect();
    let mut pts: Vec<Vec<i64>> = vec![vec![]];
    for &b in &bound {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (-b..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    let facet_values = |p: &[i64]| -> Vec<i64> {
        c.facets().iter().map(|f| f.iter().zip(p).map(|(a, x)| a.to_i64().unwrap() * x).sum()).collect()
    };
    let members: Vec<(Vec<i64>, Vec<i64>)> = pts
        .into_iter()
        .filter(|p| p.iter().any(|&x| x != 0))
        .map(|p| {
            let v = facet_values(&p);
            (p, v)
        })
        .filter(|(_, v)| v.iter().all(|&x| x >= 0))
        .collect();
    let mut out: Vec<Vec<i64>> = members
        .iter()
        .filter(|(p, v)| {
            !members.iter().any(|(q, w)| q != p && w.iter().zip(v.iter()).all(|(a, b)| a <= b))
        })
        .map(|(p, _)| p.clone())
        .collect();
    out.sort();
    out
}
