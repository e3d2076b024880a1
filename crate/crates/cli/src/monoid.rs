//! Commands on toric monoids given as JSON files.

use crate::report::Report;
use anyhow::{Context, Result};
use clap::Subcommand;
use lattice_monoid::linalg::{Matrix, Vector};
use lattice_monoid::rational;
use lattice_monoid::{
    fs_pushout, is_integral, lambda_stability, quotient_length, saturate, IdealData, MonoidData,
    MonoidHom, MonoidIdeal, StabilityInput, ToricMonoid,
};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::json;
use std::path::{Path, PathBuf};

#[derive(Subcommand)]
pub enum MonoidCommand {
    /// Hilbert basis of the saturation of `{rank, generators}`.
    Saturate { file: PathBuf },
    /// Saturated pushout of `{source, target1, map1, target2, map2}`.
    Pushout { file: PathBuf },
    /// Integrality of `{source, target, matrix}`.
    Integral { file: PathBuf },
    /// Length of `Z[Q]/K` for `{monoid, ideal}`.
    Length { file: PathBuf },
    /// Quotient lengths before and after the base change for
    /// `{q, ell_q, delta, theta_ell, mu, lambda}`.
    Stability { file: PathBuf },
}

#[derive(Deserialize)]
struct PushoutFile {
    source: MonoidData,
    target1: MonoidData,
    map1: Matrix,
    target2: MonoidData,
    map2: Matrix,
}

#[derive(Deserialize)]
struct HomFile {
    source: MonoidData,
    target: MonoidData,
    matrix: Matrix,
}

#[derive(Deserialize)]
struct LengthFile {
    monoid: MonoidData,
    ideal: IdealData,
}

#[derive(Deserialize)]
struct StabilityFile {
    q: MonoidData,
    ell_q: Vector,
    delta: Vector,
    theta_ell: Vector,
    mu: i64,
    lambda: i64,
}

fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn monoid(d: MonoidData) -> Result<ToricMonoid> {
    Ok(ToricMonoid::try_from(d)?)
}

fn rows(m: &[Vector]) -> String {
    m.iter()
        .map(|r| format!("{r:?}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run(c: &MonoidCommand) -> Result<Report> {
    match c {
        MonoidCommand::Saturate { file } => {
            let m = monoid(read(file)?)?;
            let s = saturate(&m);
            let lines = vec![
                format!("saturated: {}", m.is_saturated()),
                format!("hilbert basis: {}", rows(s.generators())),
            ];
            Ok(Report::ok(
                lines,
                json!({"saturated": m.is_saturated(), "saturation": MonoidData::from(s)}),
            ))
        }
        MonoidCommand::Pushout { file } => {
            let f: PushoutFile = read(file)?;
            let src = monoid(f.source)?;
            let h1 = MonoidHom::new(&src, &monoid(f.target1)?, f.map1)?;
            let h2 = MonoidHom::new(&src, &monoid(f.target2)?, f.map2)?;
            let po = fs_pushout(&h1, &h2)?;
            let lines = vec![
                format!("rank: {}", po.monoid.rank()),
                format!("hilbert basis: {}", rows(po.monoid.generators())),
                format!("map1: {}", rows(&po.map1)),
                format!("map2: {}", rows(&po.map2)),
            ];
            let json = json!({
                "monoid": MonoidData::from(po.monoid.clone()),
                "map1": po.map1,
                "map2": po.map2,
            });
            Ok(Report::ok(lines, json))
        }
        MonoidCommand::Integral { file } => {
            let f: HomFile = read(file)?;
            let h = MonoidHom::new(&monoid(f.source)?, &monoid(f.target)?, f.matrix)?;
            let ok = is_integral(&h)?;
            Ok(Report::ok(
                vec![format!("integral: {ok}")],
                json!({"integral": ok}),
            ))
        }
        MonoidCommand::Length { file } => {
            let f: LengthFile = read(file)?;
            let q = monoid(f.monoid)?;
            let k = MonoidIdeal::new(&q, f.ideal.generators)?;
            let len = quotient_length(&k)?;
            Ok(Report::ok(
                vec![format!("length: {len}")],
                json!({"length": len}),
            ))
        }
        MonoidCommand::Stability { file } => {
            let f: StabilityFile = read(file)?;
            let input = StabilityInput {
                q: monoid(f.q)?,
                ell_q: f.ell_q,
                delta: f.delta,
                theta_ell: f.theta_ell,
                mu: f.mu,
                lambda: f.lambda,
            };
            let r = lambda_stability(&input)?;
            let passed = r.iso_on_reduced && r.multiplicities_equal;
            let lines = vec![
                format!(
                    "a: {}  b: {}  bound: {}",
                    rational::format_short(&r.a),
                    rational::format_short(&r.b),
                    rational::format_short(&r.bound)
                ),
                format!("length over Q: {}", r.length_q),
                format!("length over Q_lambda: {}", r.length_q_lambda),
                format!("iso on reduced: {}", r.iso_on_reduced),
                format!("multiplicities equal: {}", r.multiplicities_equal),
            ];
            let json = json!({
                "a": rational::format_short(&r.a),
                "b": rational::format_short(&r.b),
                "bound": rational::format_short(&r.bound),
                "q_lambda": MonoidData::from(r.q_lambda.clone()),
                "length_q": r.length_q,
                "length_q_lambda": r.length_q_lambda,
                "iso_on_reduced": r.iso_on_reduced,
                "multiplicities_equal": r.multiplicities_equal,
            });
            Ok(Report::check(lines, json, passed))
        }
    }
}
