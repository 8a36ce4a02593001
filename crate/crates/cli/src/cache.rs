//! Append-only JSON-lines log of blow-up results, replayed into the engine's memo.

use std::collections::{HashMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use nash_core::nash::{BlowupMemo, NodeStatus, ResolutionTree};
use nash_core::polyhedral::{canonical_key, Cone, ConeKey};
use serde::{Deserialize, Serialize};

use crate::render::{matrix_strings, parse_matrix};
use crate::{CliError, CliResult};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CacheRecord {
    pub canonical_key: String,
    pub d: usize,
    #[serde(rename = "I")]
    pub index: String,
    #[serde(rename = "Istar")]
    pub dual_index: String,
    /// `resolved`, `pruned` or `budget`, for the subtree first seen under this key.
    pub status: String,
    pub depth: usize,
    pub size: usize,
    pub child_keys: Vec<String>,
    /// Ray matrices of the children in the class representative's coordinates.
    pub children: Vec<Vec<Vec<String>>>,
}

impl CacheRecord {
    fn same_payload(&self, other: &CacheRecord) -> bool {
        self.d == other.d && self.child_keys == other.child_keys && self.children == other.children
    }
}

/// Loaded cache: the memo map plus the keys already on disk.
pub struct Cache {
    pub memo: BlowupMemo,
    pub known: HashSet<ConeKey>,
}

/// Reads the log, truncating a corrupt final line. A corrupt line elsewhere is an error.
pub fn load(path: &Path) -> CliResult<Cache> {
    let mut cache = Cache { memo: BlowupMemo::new(), known: HashSet::new() };
    let mut text = String::new();
    match File::open(path) {
        Ok(mut f) => {
            f.read_to_string(&mut text)?;
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
        Err(e) => return Err(e.into()),
    }
    let mut records: HashMap<String, CacheRecord> = HashMap::new();
    let mut good_len = 0;
    let lines: Vec<&str> = text.split_inclusive('\n').collect();
    for (i, line) in lines.iter().enumerate() {
        let last = i + 1 == lines.len();
        if line.trim().is_empty() {
            good_len += line.len();
            continue;
        }
        let rec: CacheRecord = match serde_json::from_str(line.trim_end()) {
            Ok(r) => r,
            Err(_) if last => {
                eprintln!("cache: dropping corrupt trailing line in {}", path.display());
                OpenOptions::new().write(true).open(path)?.set_len(good_len as u64)?;
                break;
            }
            Err(e) => return Err(CliError::Input(format!("cache {}: line {} is corrupt: {e}", path.display(), i + 1))),
        };
        good_len += line.len();
        if let Some(prev) = records.get(&rec.canonical_key) {
            if !prev.same_payload(&rec) {
                return Err(CliError::Input(format!("cache: conflicting records for {}", rec.canonical_key)));
            }
            continue;
        }
        let children = rec
            .children
            .iter()
            .map(|rays| Ok(Cone::from_rays(&parse_matrix(rays)?)?))
            .collect::<CliResult<Vec<Cone>>>()?;
        if children.iter().any(|c| c.dim() != rec.d) {
            return Err(CliError::Input(format!("cache: wrong dimension under {}", rec.canonical_key)));
        }
        let key = ConeKey::from_string(rec.canonical_key.clone());
        cache.memo.insert(key.clone(), Arc::new(children));
        cache.known.insert(key);
        records.insert(rec.canonical_key.clone(), rec);
    }
    if good_len == text.len() && !text.is_empty() && !text.ends_with('\n') {
        // a complete record without its newline: terminate it so appends stay line-aligned
        OpenOptions::new().append(true).open(path)?.write_all(b"\n")?;
    }
    Ok(cache)
}

/// Subtree height, size and status summary for every node.
fn subtree_summaries(tree: &ResolutionTree) -> Vec<(usize, usize, &'static str)> {
    let nodes = tree.nodes();
    let mut out = vec![(0, 1, "resolved"); nodes.len()];
    // children always come after their parent in breadth-first order
    for id in (0..nodes.len()).rev() {
        let own = match nodes[id].status {
            NodeStatus::PrunedDepth => "budget",
            NodeStatus::PrunedKnown => "pruned",
            _ => "resolved",
        };
        let (mut h, mut s, mut st) = (0, 1, own);
        for &c in &nodes[id].children {
            let (ch, cs, cst) = out[c];
            h = h.max(ch + 1);
            s += cs;
            st = worse(st, cst);
        }
        out[id] = (h, s, st);
    }
    out
}

fn worse(a: &'static str, b: &'static str) -> &'static str {
    let rank = |s: &str| match s {
        "budget" => 2,
        "pruned" => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

/// Records for memo entries that are not on disk yet, in tree order.
pub fn new_records(tree: &ResolutionTree, memo: &BlowupMemo, known: &HashSet<ConeKey>) -> Vec<CacheRecord> {
    let summaries = subtree_summaries(tree);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (id, n) in tree.nodes().iter().enumerate() {
        if known.contains(&n.key) || !seen.insert(n.key.clone()) {
            continue;
        }
        let Some(children) = memo.get(&n.key) else { continue };
        let (depth, size, status) = summaries[id];
        out.push(CacheRecord {
            canonical_key: n.key.to_string(),
            d: n.cone.dim(),
            index: n.index.to_string(),
            dual_index: n.dual_index.to_string(),
            status: status.to_string(),
            depth,
            size,
            child_keys: children.iter().map(|c| canonical_key(c).to_string()).collect(),
            children: children.iter().map(|c| matrix_strings(c.rays())).collect(),
        });
    }
    out
}

pub fn append(path: &Path, records: &[CacheRecord]) -> CliResult<()> {
    if records.is_empty() {
        return Ok(());
    }
    let mut buf = String::new();
    for r in records {
        buf.push_str(&serde_json::to_string(r).expect("record serializes"));
        buf.push('\n');
    }
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    f.write_all(buf.as_bytes())?;
    Ok(())
}
