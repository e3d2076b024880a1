//! Commands on tropical families.

use crate::report::Report;
use anyhow::{Context, Result};
use clap::Subcommand;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use tropical::{
    check_assumptions, classify_tails, find_splitting_edge, split_at_edge, tangent_edges,
    TropError, TropFamily,
};

#[derive(Subcommand)]
pub enum TropCommand {
    /// Every linear identity and cone condition of a family.
    Validate { family: PathBuf },
    /// Boundary class, assumptions, tails and the splitting edge.
    Classify { family: PathBuf },
    /// Cut a chain edge and write the two halves.
    Split {
        family: PathBuf,
        /// Position along the chain, from 1; the splitting edge by default.
        #[arg(long)]
        edge: Option<usize>,
        /// Directory for `<name>.far.json` and `<name>.near.json`.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// The universal cone of the family's type.
    Ucone { family: PathBuf },
}

fn load(path: &Path) -> Result<TropFamily> {
    TropFamily::load(path).with_context(|| format!("loading {}", path.display()))
}

/// Errors that describe the family rather than the input.
fn finding(e: &TropError) -> bool {
    matches!(
        e,
        TropError::NotApplicable(_)
            | TropError::TerminalTail
            | TropError::Assumption(_)
            | TropError::NotUnique(_)
            | TropError::Property { .. }
            | TropError::NotSplitting(_)
            | TropError::Invalid(_)
    )
}

pub fn run(c: &TropCommand) -> Result<Report> {
    match c {
        TropCommand::Validate { family } => {
            let fam = load(family)?;
            let rep = fam.validate();
            let mut lines: Vec<String> = rep.violations.clone();
            lines.push(if rep.is_valid() {
                "valid".into()
            } else {
                format!("invalid: {} violations", rep.violations.len())
            });
            let json = json!({"valid": rep.is_valid(), "violations": rep.violations});
            Ok(Report::check(lines, json, rep.is_valid()))
        }
        TropCommand::Classify { family } => classify(&load(family)?),
        TropCommand::Split {
            family,
            edge,
            out_dir,
        } => {
            let fam = load(family)?;
            let i = match edge {
                Some(i) => *i,
                None => match find_splitting_edge(&fam) {
                    Ok(s) => s.index,
                    Err(e) if finding(&e) => {
                        return Ok(Report::check(
                            vec![format!("no split: {e}")],
                            json!({"error": e.to_string()}),
                            false,
                        ))
                    }
                    Err(e) => return Err(e.into()),
                },
            };
            let (mut far, mut near) = match split_at_edge(&fam, i) {
                Ok(pair) => pair,
                Err(e) if finding(&e) => {
                    return Ok(Report::check(
                        vec![format!("no split: {e}")],
                        json!({"error": e.to_string()}),
                        false,
                    ))
                }
                Err(e) => return Err(e.into()),
            };
            for f in [&mut far, &mut near] {
                f.geometry = fam.geometry.clone();
            }
            let (fd, nd) = (far.to_data(), near.to_data());
            let mut lines = vec![format!("split at chain edge {i}")];
            if let Some(dir) = out_dir {
                let stem = family
                    .file_name()
                    .and_then(|n| n.to_str())
                    .map(|n| n.trim_end_matches(".json").trim_end_matches(".family"))
                    .unwrap_or("family");
                std::fs::create_dir_all(dir)?;
                for (suffix, d) in [("far", &fd), ("near", &nd)] {
                    let mut data = d.clone();
                    if let Some(g) = &data.geometry {
                        let base = family.parent().unwrap_or(Path::new("."));
                        data.geometry = Some(base.join(g).canonicalize()?.display().to_string());
                    }
                    let path = dir.join(format!("{stem}.{suffix}.json"));
                    std::fs::write(&path, serde_json::to_string_pretty(&data)? + "\n")?;
                    lines.push(format!("wrote {}", path.display()));
                }
            }
            let json = json!({"edge": i, "far": fd, "near": nd});
            Ok(Report::ok(lines, json))
        }
        TropCommand::Ucone { family } => {
            let fam = load(family)?;
            let cone = fam.universal_cone();
            let mini = fam.is_miniversal();
            let mut lines = vec![
                format!("variables: {}", cone.variables.join(" ")),
                format!("dimension: {}", cone.dim),
                format!("base dimension: {}", fam.base_dim()),
                format!("miniversal: {mini}"),
            ];
            lines.extend(cone.rays.iter().map(|r| format!("ray {r:?}")));
            let mut json = serde_json::to_value(&cone)?;
            json["base_dim"] = json!(fam.base_dim());
            json["miniversal"] = json!(mini);
            Ok(Report::ok(lines, json))
        }
    }
}

fn classify(fam: &TropFamily) -> Result<Report> {
    let mut lines = Vec::new();
    let mut json = serde_json::Map::new();
    let class = fam.graph().boundary_class()?;
    lines.push(format!("class: {class}"));
    json.insert("class".into(), json!(class.as_str()));
    let mut passed = true;
    let mut record = |key: &str,
                      v: std::result::Result<Value, TropError>,
                      lines: &mut Vec<String>|
     -> Result<()> {
        match v {
            Ok(v) => {
                let shown = v
                    .as_str()
                    .map(str::to_string)
                    .unwrap_or_else(|| v.to_string());
                lines.push(format!("{key}: {shown}"));
                json.insert(key.into(), v);
            }
            Err(e) if finding(&e) => {
                passed = false;
                lines.push(format!("{key}: {e}"));
                json.insert(key.into(), json!({"error": e.to_string()}));
            }
            Err(e) => return Err(e.into()),
        }
        Ok(())
    };
    record(
        "assumptions",
        check_assumptions(fam).map(|r| match r.failure() {
            None => json!("hold"),
            Some(f) => json!(f),
        }),
        &mut lines,
    )?;
    record(
        "tails",
        classify_tails(fam).map(|t| json!(t.as_str())),
        &mut lines,
    )?;
    record(
        "tangent edges",
        tangent_edges(fam).map(|t| json!(t)),
        &mut lines,
    )?;
    record(
        "splitting edge",
        find_splitting_edge(fam).map(|s| json!({"index": s.index, "edge": s.edge, "s": s.s})),
        &mut lines,
    )?;
    Ok(Report::check(lines, Value::Object(json), passed))
}
