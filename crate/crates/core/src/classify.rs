//! Equivalence classes of simplicial cones by dimension and index.
//!
//! Every simplicial cone of index `I` has a presentation in lower-triangular
//! Hermite normal form with diagonal product `I` and coprime rows. The
//! classifier enumerates these matrices in lexicographic order, keeps the
//! first member of each equivalence class as its representative, and numbers
//! the classes in that order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::lattice::{snf, Int, IntMat, IntVec};
use crate::polyhedral::{canonical_key, direct_sum_decompose, equivalent_simplicial, Cone, ConeKey};

#[derive(Clone, Debug)]
pub struct ConeClass {
    pub name: String,
    pub dim: usize,
    pub index: Int,
    pub dual_index: Int,
    /// Lexicographically least HNF presentation in the class (facet rows).
    pub presentation: IntMat,
    pub cone: Cone,
    pub key: ConeKey,
    /// Names of the direct summands, largest dimension first; empty when irreducible.
    pub summands: Vec<String>,
}

impl ConeClass {
    /// Label such as `B_{2,1} ⊕ 2A`, or `None` for an irreducible class.
    pub fn reducibility(&self) -> Option<String> {
        if self.summands.is_empty() {
            return None;
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.summands.len() {
            let name = &self.summands[i];
            let run = self.summands[i..].iter().take_while(|s| *s == name).count();
            parts.push(match (run, name.as_str()) {
                (1, _) => name.clone(),
                (k, "A") => format!("{k}A"),
                (k, _) => format!("{k} {name}"),
            });
            i += run;
        }
        Some(parts.join(" ⊕ "))
    }
}

#[derive(Clone, Debug)]
pub struct ClassTable {
    pub dim: usize,
    pub index: u64,
    /// Ordered by representative; `classes[j - 1]` has subscript `j`.
    pub classes: Vec<ConeClass>,
}

/// `A`, `B`, `C`, … for dimensions 1, 2, 3, …
pub fn letter(dim: usize) -> char {
    (b'A' + (dim as u8 - 1)) as char
}

pub fn class_name(dim: usize, index: u64, j: usize) -> String {
    if dim == 1 {
        "A".to_string()
    } else {
        format!("{}_{{{},{}}}", letter(dim), index, j)
    }
}

/// Parses `C_{3,3}` or `C_3_3` into `(dim, index, j)`.
pub fn parse_name(name: &str) -> Option<(usize, u64, usize)> {
    let name = name.trim();
    if name == "A" {
        return Some((1, 1, 1));
    }
    let mut chars = name.chars();
    let l = chars.next()?;
    if !l.is_ascii_uppercase() || l == 'A' {
        return None;
    }
    let dim = (l as u8 - b'A' + 1) as usize;
    let rest: String = chars.collect();
    let rest = rest.strip_prefix('_')?;
    let inner = rest.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(rest);
    let mut parts = inner.split([',', '_']);
    let index = parts.next()?.trim().parse().ok()?;
    let j = parts.next()?.trim().parse().ok()?;
    if parts.next().is_some() || j == 0 {
        return None;
    }
    Some((dim, index, j))
}

fn divisor_chains(d: usize, index: u64) -> Vec<Vec<u64>> {
    if d == 1 {
        return vec![vec![index]];
    }
    let mut out = Vec::new();
    for a in 1..=index {
        if index.is_multiple_of(a) {
            for mut rest in divisor_chains(d - 1, index / a) {
                rest.insert(0, a);
                out.push(rest);
            }
        }
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn product(levels: &[Vec<Vec<u64>>], chosen: &mut Vec<IntVec>, out: &mut Vec<IntMat>) {
    let i = chosen.len();
    if i == levels.len() {
        out.push(IntMat::from_rows(chosen));
        return;
    }
    for row in &levels[i] {
        chosen.push(IntVec(row.iter().map(|&x| Int::from(x as i64)).collect()));
        product(levels, chosen, out);
        chosen.pop();
    }
}

/// Lower-triangular HNF presentations with diagonal product `index`, entries
/// left of the diagonal in `[0, diagonal)` and coprime rows, in lexicographic order.
pub fn enumerate_hnf(d: usize, index: u64) -> Vec<IntMat> {
    let mut out = Vec::new();
    for diag in divisor_chains(d, index) {
        let mut rows_per_level: Vec<Vec<Vec<u64>>> = Vec::new();
        for (i, &a) in diag.iter().enumerate() {
            let mut rows = Vec::new();
            let total = (a as usize).pow(i as u32);
            for code in 0..total {
                let mut c = code;
                let mut row = vec![0u64; d];
                for entry in row.iter_mut().take(i) {
                    *entry = (c % a as usize) as u64;
                    c /= a as usize;
                }
                row[i] = a;
                if row.iter().fold(0, |g, &x| gcd(g, x)) == 1 {
                    rows.push(row);
                }
            }
            rows_per_level.push(rows);
        }
        let mut chosen = Vec::with_capacity(d);
        product(&rows_per_level, &mut chosen, &mut out);
    }
    out.sort();
    out
}

/// Invariants that refine the bucket before the permutation test.
fn bucket(c: &Cone) -> (Vec<Int>, Vec<Int>) {
    (snf(&c.ray_matrix()).invariant_factors(), snf(&c.facet_matrix()).invariant_factors())
}

type Tables = Mutex<HashMap<(usize, u64), Arc<ClassTable>>>;

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Classes of `d`-dimensional simplicial cones of index `index`; memoized per process.
pub fn classify(d: usize, index: u64) -> Arc<ClassTable> {
    if let Some(t) = tables().lock().unwrap().get(&(d, index)) {
        return t.clone();
    }
    let table = Arc::new(classify_uncached(d, index, &enumerate_hnf(d, index)));
    tables().lock().unwrap().entry((d, index)).or_insert(table).clone()
}

/// Classifies the given presentations, which must all have dimension `d` and
/// index `index`; representatives are the least members under `Ord` on `IntMat`.
pub fn classify_uncached(d: usize, index: u64, presentations: &[IntMat]) -> ClassTable {
    let mut sorted = presentations.to_vec();
    sorted.sort();
    let mut reps: Vec<(IntMat, Cone)> = Vec::new();
    let mut buckets: HashMap<(Vec<Int>, Vec<Int>), Vec<usize>> = HashMap::new();
    for m in sorted {
        let cone = Cone::from_facets(&m.row_vecs()).expect("HNF presentation is proper");
        let b = bucket(&cone);
        let members = buckets.entry(b).or_default();
        if members.iter().any(|&r| equivalent_simplicial(&reps[r].1, &cone)) {
            continue;
        }
        members.push(reps.len());
        reps.push((m, cone));
    }
    let classes = reps
        .into_iter()
        .enumerate()
        .map(|(j, (presentation, cone))| {
            let parts = direct_sum_decompose(&cone);
            let summands = if parts.len() > 1 { parts.iter().map(name_of).collect() } else { Vec::new() };
            ConeClass {
                name: class_name(d, index, j + 1),
                dim: d,
                index: Int::from(index as i64),
                dual_index: cone.dual_index(),
                key: canonical_key(&cone),
                presentation,
                cone,
                summands,
            }
        })
        .collect();
    ClassTable { dim: d, index, classes }
}

/// The class of a simplicial cone, if its index fits in a `u64`.
pub fn identify(c: &Cone) -> Option<ConeClass> {
    if !c.is_simplicial() {
        return None;
    }
    let index = c.index().to_i64()? as u64;
    let table = classify(c.dim(), index);
    table.classes.iter().find(|k| equivalent_simplicial(&k.cone, c)).cloned()
}

fn name_of(c: &Cone) -> String {
    identify(c).map(|k| k.name).unwrap_or_else(|| format!("{}(?)", letter(c.dim())))
}

/// Looks a class up by name, e.g. `C_{3,3}` or `D_5_14`.
pub fn class_by_name(name: &str) -> Option<ConeClass> {
    let (d, index, j) = parse_name(name)?;
    classify(d, index).classes.get(j - 1).cloned()
}
