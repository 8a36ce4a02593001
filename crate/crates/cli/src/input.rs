//! Cone input grammar: rows separated by `;`, entries by whitespace.

use nash_core::classify::class_by_name;
use nash_core::lattice::{Int, IntVec};
use nash_core::polyhedral::Cone;

use crate::{CliError, CliResult};

pub fn parse_rows(s: &str) -> CliResult<Vec<IntVec>> {
    let mut rows = Vec::new();
    for (i, part) in s.split(';').enumerate() {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let row: Result<Vec<Int>, _> = part.split_whitespace().map(str::parse::<Int>).collect();
        let row = row.map_err(|_| CliError::Input(format!("row {} is not a list of integers: {part:?}", i + 1)))?;
        rows.push(IntVec(row));
    }
    if rows.is_empty() {
        return Err(CliError::Input("no rows given".into()));
    }
    let d = rows[0].dim();
    if let Some(bad) = rows.iter().find(|r| r.dim() != d) {
        return Err(CliError::Input(format!("DimensionMismatch: expected {d} entries, got {}", bad.dim())));
    }
    Ok(rows)
}

/// Where a cone comes from on the command line.
#[derive(Clone, Debug, Default)]
pub struct ConeSpec {
    pub rays: Option<String>,
    pub facets: Option<String>,
    pub name: Option<String>,
}

impl ConeSpec {
    pub fn cone(&self) -> CliResult<Cone> {
        match (&self.rays, &self.facets, &self.name) {
            (Some(r), None, None) => Ok(Cone::from_rays(&parse_rows(r)?)?),
            (None, Some(f), None) => Ok(Cone::from_facets(&parse_rows(f)?)?),
            (None, None, Some(n)) => class_by_name(n)
                .map(|k| k.cone)
                .ok_or_else(|| CliError::Input(format!("no class named {n}"))),
            (None, None, None) => Err(CliError::Input("give one of --rays, --facets or --name".into())),
            _ => Err(CliError::Input("--rays, --facets and --name are mutually exclusive".into())),
        }
    }
}
