//! Command bodies. Each returns what goes to stdout; diagnostics are returned separately.

use std::path::PathBuf;

use nash_core::classify::classify;
use nash_core::hilbert::hilbert_basis;
use nash_core::lattice::{Int, Rat};
use nash_core::nash::{resolution_tree_with_memo, BlowupMemo, ResolutionTree, ResolveOptions};
use nash_core::surface::{hilbert_basis_2d, hj_expand, nash_blowup_2d, resolve_2d, StdCone2D};

use crate::cache;
use crate::input::ConeSpec;
use crate::render;
use crate::{CliError, CliResult};

pub fn hilbert(spec: &ConeSpec) -> CliResult<String> {
    let c = spec.cone()?;
    Ok(hilbert_basis(&c).elements().iter().map(|h| format!("{h}\n")).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Clone, Debug, Default)]
pub struct ResolveArgs {
    pub spec: ConeSpec,
    /// An integer, or `root` for "at most the root's index".
    pub prune_index: Option<String>,
    pub no_memo: bool,
    pub max_depth: Option<usize>,
    pub max_nodes: Option<usize>,
    pub format: Format,
    pub cache: Option<PathBuf>,
    pub jobs: usize,
}

pub struct ResolveOutput {
    pub stdout: String,
    pub stderr: String,
    /// Set when a budget ran out; the output then holds the partial tree.
    pub budget: Option<String>,
    pub tree: ResolutionTree,
}

pub fn stats_report(tree: &ResolutionTree) -> String {
    let s = tree.stats();
    format!(
        "depth {}, size {} (every node, root and repeated subtrees included), {} distinct classes, max facets {}, {}, {} blow-ups computed\n",
        s.depth,
        s.size,
        s.distinct,
        s.max_facets,
        if s.resolved { "resolved" } else { "unresolved" },
        tree.blowups_performed()
    )
}

pub fn resolve(args: &ResolveArgs) -> CliResult<ResolveOutput> {
    let c = args.spec.cone()?;
    let prune_below_index = match args.prune_index.as_deref() {
        None => None,
        Some("root") => Some(&c.index() + &Int::ONE),
        Some(s) => Some(s.parse::<Int>().map_err(|_| CliError::Input(format!("bad --prune-index {s:?}")))?),
    };
    let defaults = ResolveOptions::default();
    let opts = ResolveOptions {
        prune_below_index,
        memoize: !args.no_memo,
        max_depth: args.max_depth.or(defaults.max_depth),
        max_nodes: args.max_nodes.or(defaults.max_nodes),
        jobs: args.jobs,
    };
    let mut stderr = String::new();
    let cache_path = std::env::var_os("NASH_CACHE").map(PathBuf::from).or_else(|| args.cache.clone());
    let (mut memo, known) = match (&cache_path, opts.memoize) {
        (Some(p), true) => {
            let loaded = cache::load(p)?;
            (loaded.memo, loaded.known)
        }
        (Some(_), false) => {
            stderr.push_str("cache ignored with --no-memo\n");
            (BlowupMemo::new(), Default::default())
        }
        _ => (BlowupMemo::new(), Default::default()),
    };
    let (tree, budget) = match resolution_tree_with_memo(&c, &opts, &mut memo) {
        Ok(t) => (t, None),
        Err(e) => {
            let msg = e.to_string();
            (*e.tree, Some(msg))
        }
    };
    if let (Some(p), true) = (&cache_path, opts.memoize) {
        cache::append(p, &cache::new_records(&tree, &memo, &known))?;
    }
    let stdout = match args.format {
        Format::Text => render::text(&tree),
        Format::Json => render::json(&tree),
        Format::Dot => render::dot(&tree),
    };
    if let Some(b) = &budget {
        stderr.push_str(b);
        stderr.push('\n');
    }
    stderr.push_str(&stats_report(&tree));
    Ok(ResolveOutput { stdout, stderr, budget, tree })
}

pub fn enumerate(dim: usize, index_max: u64, table: bool) -> CliResult<String> {
    if dim == 0 || index_max == 0 {
        return Err(CliError::Input("--dim and --index-max must be positive".into()));
    }
    let mut out = String::new();
    let mut total = 0;
    for i in 1..=index_max {
        let t = classify(dim, i);
        total += t.classes.len();
        if table {
            for k in &t.classes {
                let red = k.reducibility().unwrap_or_default();
                out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", k.name, k.index, k.dual_index, hnf_rows(&k.presentation), red));
            }
        } else {
            out.push_str(&format!("{i} {}\n", t.classes.len()));
        }
    }
    if !table {
        out.push_str(&format!("total {total}\n"));
    }
    Ok(out)
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn hj(p: i64, q: i64, op: &str) -> CliResult<String> {
    if op == "expand" {
        if q <= 0 {
            return Err(CliError::Input("denominator must be positive".into()));
        }
        let e = hj_expand(&Rat::new(Int::from(p), Int::from(q)));
        let terms: Vec<String> = e.a.iter().map(ToString::to_string).collect();
        return Ok(format!("[{}]\n", terms.join(",")));
    }
    let s = StdCone2D::new(p, q)?;
    Ok(match op {
        "basis" => format!("{}\n", join(&hilbert_basis_2d(&s))),
        "blowup" if s.is_smooth() => format!("{s}\n"),
        "blowup" => format!("{}\n", join(&nash_blowup_2d(&s))),
        "resolve" => {
            let r = resolve_2d(&s);
            let mut out = format!("{} steps\n", r.steps);
            for (i, level) in r.levels.iter().enumerate().skip(1) {
                out.push_str(&format!("  level {i}: {}\n", join(level)));
            }
            out
        }
        _ => return Err(CliError::Input(format!("unknown hj operation {op:?}"))),
    })
}

fn hnf_rows(m: &nash_core::lattice::IntMat) -> String {
    m.row_vecs().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}
