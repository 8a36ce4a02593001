//! Self-checks for the known class counts, the surface theory and
//! the index-growth anomalies.

use nash_core::classify::{class_by_name, classify, identify};
use nash_core::hilbert::hilbert_basis;
use nash_core::lattice::{Int, IntVec};
use nash_core::nash::{nash_blowup, resolution_tree, ResolveOptions};
use nash_core::polyhedral::{equivalent, minkowski_sum_hull, Cone};
use nash_core::surface::{hilbert_basis_2d, hj_eval, nash_blowup_2d, resolve_2d, standard_form_2d, StdCone2D};

pub const T3: [usize; 27] =
    [1, 2, 4, 7, 8, 11, 14, 21, 23, 25, 28, 43, 38, 45, 59, 66, 60, 76, 74, 101, 107, 99, 104, 153, 135, 135, 163];
pub const T4: [usize; 8] = [1, 3, 7, 16, 18, 37, 36, 83];

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, ok: bool, detail: impl Into<String>) -> Check {
        Check { name: name.to_string(), ok, detail: detail.into() }
    }
}

pub fn report(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        out.push_str(&format!("{} {}: {}\n", if c.ok { "PASS" } else { "FAIL" }, c.name, c.detail));
    }
    let failed = checks.iter().filter(|c| !c.ok).count();
    out.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
    out
}

fn counts(d: usize, max: u64) -> Vec<usize> {
    (1..=max).map(|i| classify(d, i).classes.len()).collect()
}

pub fn tables() -> Vec<Check> {
    let t3 = counts(3, 27);
    let t4 = counts(4, 8);
    vec![
        Check::new("dim 3 counts, I <= 27", t3 == T3, format!("{t3:?}")),
        Check::new("dim 3 total", t3.iter().sum::<usize>() == 1602, format!("{}", t3.iter().sum::<usize>())),
        Check::new("dim 4 counts, I <= 8", t4 == T4, format!("{t4:?}")),
        Check::new("dim 4 total", t4.iter().sum::<usize>() == 201, format!("{}", t4.iter().sum::<usize>())),
    ]
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn pairs(max_q: i64) -> Vec<StdCone2D> {
    (1..=max_q)
        .flat_map(|q| (0..q).filter(move |&p| gcd(p, q) == 1).map(move |p| StdCone2D::new(p, q).unwrap()))
        .collect()
}

fn small(x: &Int) -> i64 {
    x.to_i64().expect("small")
}

/// First failing cone of a sweep, or the number of cones checked.
fn sweep(name: &str, cones: Vec<StdCone2D>, f: impl Fn(&StdCone2D) -> bool) -> Check {
    let n = cones.len();
    match cones.iter().find(|s| !f(s)) {
        Some(bad) => Check::new(name, false, format!("fails at {bad}")),
        None => Check::new(name, true, format!("{n} cones")),
    }
}

pub fn surface() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(sweep("every surface resolves within q steps, q <= 100", pairs(100), |s| {
        let r = resolve_2d(s);
        r.levels.last().unwrap().iter().all(StdCone2D::is_smooth) && r.steps as i64 <= small(&s.q)
    }));
    out.push(sweep("convergent determinants and lowest terms, q <= 200", pairs(200), |s| {
        let e = s.expansion();
        (1..=e.len()).all(|k| {
            let det = &e.p[k - 1] * &e.q[k] - &e.p[k] * &e.q[k - 1];
            det.is_one() && e.p[k].gcd(&e.q[k]).is_one()
        }) && e.p[e.len()] == s.p
            && e.q[e.len()] == s.q
    }));
    out.push(sweep("subword denominators, q <= 100", pairs(100), |s| {
        let e = s.expansion();
        let k = e.len();
        (0..k).all(|lo| {
            (lo + 1..=k).all(|hi| {
                let cross = &e.p[lo] * &e.q[hi] - &e.p[hi] * &e.q[lo];
                let ok = hj_eval(&e.a[lo..hi]).map(|v| *v.denom() == cross).unwrap_or(false);
                ok && ((lo, hi) == (0, k) || cross < s.q)
            })
        })
    }));
    out.push(sweep("descent of the denominator, q <= 100", pairs(100), |s| {
        if s.is_smooth() {
            return true;
        }
        let q = small(&s.q);
        let kids = nash_blowup_2d(s);
        if small(&s.p) == q - 1 && q % 2 == 1 {
            let rep = StdCone2D::new(q - 2, q).unwrap().class_rep();
            kids.len() == 2 && kids.iter().all(|k| k.q == s.q && k.class_rep() == rep)
        } else {
            kids.iter().all(|k| k.q < s.q)
        }
    }));
    out.push(sweep("closed-form Hilbert basis, q <= 30", pairs(30), |s| {
        let mut a = hilbert_basis_2d(s);
        let mut b = hilbert_basis(&s.cone()).elements().to_vec();
        a.sort();
        b.sort();
        a == b
    }));
    out.push(sweep("consecutive sums give the same hull, q <= 30", pairs(30), |s| {
        if s.is_smooth() {
            return true;
        }
        let h = hilbert_basis_2d(s);
        let mut full = Vec::new();
        for a in 0..h.len() {
            for b in a + 1..h.len() {
                if !(&h[a][0] * &h[b][1] - &h[a][1] * &h[b][0]).is_zero() {
                    full.push(h[a].add(&h[b]));
                }
            }
        }
        let cons: Vec<IntVec> = h.windows(2).map(|w| w[0].add(&w[1])).collect();
        let (Ok(x), Ok(y)) = (minkowski_sum_hull(&s.cone(), &full), minkowski_sum_hull(&s.cone(), &cons)) else {
            return false;
        };
        x.vertices() == y.vertices() && x.inequalities() == y.inequalities()
    }));
    out.push(sweep("planar blow-up agrees with the general engine, q <= 20", pairs(20), |s| {
        if s.is_smooth() {
            return true;
        }
        let mut a = nash_blowup_2d(s);
        let mut b: Vec<StdCone2D> = nash_blowup(&s.cone()).iter().map(|c| standard_form_2d(c).0).collect();
        a.sort();
        b.sort();
        a == b
    }));
    out
}

fn facets(rows: &[&[i64]]) -> Cone {
    Cone::from_facet_rows(rows).expect("proper")
}

fn same_facets(a: &Cone, b: &Cone) -> bool {
    let mut x = a.facets().to_vec();
    let mut y = b.facets().to_vec();
    x.sort();
    y.sort();
    x == y
}

pub fn anomalies(jobs: usize) -> Vec<Check> {
    let mut out = Vec::new();

    // the index can grow in a single step
    let c65 = class_by_name("C_{6,5}").expect("class exists").cone;
    let target = facets(&[&[1, 3, 6], &[1, 3, 3], &[2, 3, 6]]);
    let kids = nash_blowup(&c65);
    let hit = kids.iter().find(|k| k.is_simplicial() && k.index() == Int::from(9) && equivalent(k, &target));
    let name = hit.and_then(identify).map(|k| k.name).unwrap_or_default();
    out.push(Check::new(
        "C_{6,5} has a child of index 9",
        hit.is_some() && name == "C_{9,23}",
        format!("child {} is {name}", hit.map(|k| k.presentation()).unwrap_or_default()),
    ));

    // the dual index can grow over two steps
    let c922 = class_by_name("C_{9,22}").expect("class exists").cone;
    let given = facets(&[&[1, 0, 0], &[1, 3, 0], &[1, 0, 3]]);
    let mut grown: Vec<Cone> = Vec::new();
    for k in nash_blowup(&c922) {
        for g in nash_blowup(&k) {
            if g.is_simplicial() && g.dual_index() == Int::from(4) {
                grown.push(g);
            }
        }
    }
    let named = facets(&[&[1, 1, 0], &[1, 0, 1], &[4, 3, 3]]);
    let ok = equivalent(&c922, &given)
        && c922.dual_index() == Int::from(3)
        && grown.len() == 3
        && grown.iter().any(|g| equivalent(g, &named));
    out.push(Check::new(
        "C_{9,22} reaches dual index 4 after two steps",
        ok,
        format!("{} grandchildren with I* = 4 from I* = {}", grown.len(), c922.dual_index()),
    ));

    // a non-simplicial cone of dual index 1 with a child of dual index 2
    let c76 = class_by_name("C_{7,6}").expect("class exists").cone;
    let four = facets(&[&[1, 0, 0], &[0, 1, 0], &[2, 4, 7], &[1, 1, 2]]);
    let opts = ResolveOptions { jobs, ..Default::default() };
    let found = resolution_tree(&c76, &opts).ok().and_then(|t| {
        let n = t.nodes().iter().find(|n| same_facets(&n.cone, &four))?;
        let c21 = class_by_name("C_{2,1}").expect("class exists").cone;
        let child = n.children.iter().map(|&c| t.node(c)).find(|k| equivalent(&k.cone, &c21))?;
        Some((n.dual_index.clone(), child.dual_index.clone(), child.cone.presentation()))
    });
    let ok = found.as_ref().is_some_and(|(a, b, _)| *a == Int::ONE && *b == Int::from(2));
    let detail = match &found {
        Some((a, b, p)) => format!("I* {a} -> {b} at child {p}"),
        None => "node not found in the tree".to_string(),
    };
    out.push(Check::new("C_{7,6} tree has a dual-index jump from a 4-facet cone", ok, detail));
    out
}
