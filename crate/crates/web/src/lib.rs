//! Browser bindings. Each export takes plain strings or numbers and returns a
//! JSON string, so the page needs no generated type definitions.

use nash_cli::input::ConeSpec;
use nash_cli::render;
use nash_core::classify::identify;
use nash_core::hilbert::hilbert_basis;
use nash_core::lattice::IntVec;
use nash_core::nash::{resolution_tree, ResolveOptions};
use nash_core::polyhedral::Cone;
use nash_core::surface::{blowup_vertices_2d, hilbert_basis_2d, nash_blowup_2d, resolve_2d, StdCone2D};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Trees bigger than this are cut off; the page is single-threaded.
const MAX_NODES: usize = 20_000;

fn point(v: &IntVec) -> Value {
    json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn cone_from(input: &str, kind: &str) -> Result<Cone, String> {
    let text = Some(input.to_string());
    let spec = match kind {
        "rays" => ConeSpec { rays: text, ..Default::default() },
        "facets" => ConeSpec { facets: text, ..Default::default() },
        "name" => ConeSpec { name: text, ..Default::default() },
        other => return Err(format!("unknown input kind {other:?}")),
    };
    spec.cone().map_err(|e| e.to_string())
}

/// Basis, consecutive sums, vertices and children of one blow-up of `(p, q)`.
pub fn planar_json(p: i64, q: i64) -> Result<String, String> {
    let s = StdCone2D::new(p, q).map_err(|e| e.to_string())?;
    let h = hilbert_basis_2d(&s);
    let sums: Vec<Value> = h.windows(2).map(|w| point(&w[0].add(&w[1]))).collect();
    let children: Vec<Value> =
        if s.is_smooth() { Vec::new() } else { nash_blowup_2d(&s).iter().map(|c| json!([c.p.to_string(), c.q.to_string()])).collect() };
    let out = json!({
        "p": p.to_string(),
        "q": q.to_string(),
        "expansion": s.expansion().a.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "basis": h.iter().map(point).collect::<Vec<_>>(),
        "sums": sums,
        "vertices": if s.is_smooth() { Vec::new() } else { blowup_vertices_2d(&s).iter().map(point).collect() },
        "children": children,
        "steps": resolve_2d(&s).steps,
    });
    Ok(out.to_string())
}

/// Text tree, collapsed shape and statistics for a cone given by rays, facets or class name.
pub fn resolve_json(input: &str, kind: &str, prune_root: bool) -> Result<String, String> {
    let c = cone_from(input, kind)?;
    let opts = ResolveOptions {
        prune_below_index: prune_root.then(|| &c.index() + &nash_core::lattice::Int::ONE),
        max_nodes: Some(MAX_NODES),
        jobs: 1,
        ..Default::default()
    };
    let (tree, budget) = match resolution_tree(&c, &opts) {
        Ok(t) => (t, None),
        Err(e) => (*e.tree.clone(), Some(e.to_string())),
    };
    let mut shape = Vec::new();
    render::shape(&tree, 0).lines(1, 0, &mut shape);
    let stats = tree.stats();
    let out = json!({
        "text": render::text(&tree),
        "shape": shape.join("\n"),
        "depth": stats.depth,
        "size": stats.size,
        "distinct": stats.distinct,
        "resolved": stats.resolved && budget.is_none(),
        "budget": budget,
    });
    Ok(out.to_string())
}

/// Invariants, class name and Hilbert basis of a cone.
pub fn classify_json(input: &str, kind: &str) -> Result<String, String> {
    let c = cone_from(input, kind)?;
    let class = render::class_label(&c).and_then(|_| identify(&c));
    let out = json!({
        "dim": c.dim(),
        "simplicial": c.is_simplicial(),
        "smooth": c.is_smooth(),
        "I": c.index().to_string(),
        "Istar": c.dual_index().to_string(),
        "rays": c.rays().iter().map(point).collect::<Vec<_>>(),
        "facets": c.facets().iter().map(point).collect::<Vec<_>>(),
        "name": class.as_ref().map(|k| k.name.clone()),
        "presentation": class.as_ref().map(|k| k.presentation.row_vecs().iter().map(point).collect::<Vec<_>>()),
        "reducibility": class.as_ref().and_then(|k| k.reducibility()),
        "hilbert": hilbert_basis(&c).elements().iter().map(point).collect::<Vec<_>>(),
    });
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn planar(p: i32, q: i32) -> Result<String, JsValue> {
    planar_json(p.into(), q.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn resolve(input: &str, kind: &str, prune_root: bool) -> Result<String, JsValue> {
    resolve_json(input, kind, prune_root).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify(input: &str, kind: &str) -> Result<String, JsValue> {
    classify_json(input, kind).map_err(|e| JsValue::from_str(&e))
}
