//! Commands on a geometry with its invariant table.

use crate::report::Report;
use crate::Ctx;
use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand};
use cone_complex::IntegralPoint;
use curve_data::format_class;
use invariants::Policy;
use lattice_monoid::rational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use theta_ring::{
    check_associativity, check_associativity_all, check_commutativity, check_degree_grading,
    check_torus_grading, check_unit, find_presentation, multiply_pairs, CheckReport, Geometry,
    RingPresentation,
};

#[derive(Args)]
pub struct ScenarioArgs {
    /// Geometry JSON file.
    pub geometry: PathBuf,
    /// Invariant table (JSON lines), replacing the one the geometry names.
    #[arg(long, env = "THETACTL_TABLE")]
    pub table: Option<PathBuf>,
    /// `strict` or `complete`, replacing the stored policy.
    #[arg(long)]
    pub policy: Option<Policy>,
    /// Replace the table by the one read off the stored presentation,
    /// up to this bound.
    #[arg(long, value_name = "BOUND")]
    pub derived_table: Option<i64>,
    /// Presentation JSON file, replacing the one the geometry names.
    #[arg(long, env = "THETACTL_PRESENTATION")]
    pub presentation: Option<PathBuf>,
}

#[derive(Args)]
pub struct PointsArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Bound on the weighted pairing; defaults to the stored bound.
    #[arg(long)]
    pub bound: Option<i64>,
}

#[derive(Args)]
pub struct CandidatesArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long)]
    pub p1: String,
    #[arg(long)]
    pub p2: String,
    /// Only this curve class, comma separated; all of P \ I otherwise.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub class: Option<Vec<i64>>,
}

#[derive(Args)]
pub struct MultiplyArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long)]
    pub p1: String,
    #[arg(long)]
    pub p2: String,
}

#[derive(Args)]
pub struct AssocArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, requires_all = ["p2", "p3"], conflicts_with = "bound")]
    pub p1: Option<String>,
    #[arg(long)]
    pub p2: Option<String>,
    #[arg(long)]
    pub p3: Option<String>,
    /// Check every triple of points within this bound.
    #[arg(long)]
    pub bound: Option<i64>,
}

#[derive(Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long)]
    pub bound: Option<i64>,
    /// Check this many points drawn with `--seed` instead of all of them.
    #[arg(long)]
    pub sample: Option<usize>,
}

#[derive(Args)]
pub struct ReesArgs {
    #[command(flatten)]
    pub sample: SampleArgs,
    /// Nonnegative coefficients of the divisor, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub s: Vec<i64>,
    /// Largest Rees degree to list.
    #[arg(long, default_value_t = 3)]
    pub degree: i64,
}

#[derive(Subcommand)]
pub enum PresentationCommand {
    /// Relations among monomials in the given points up to a degree.
    Find {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, num_args = 1.., required = true)]
        gens: Vec<String>,
        #[arg(long)]
        bound: u32,
    },
    /// Normal form of a polynomial in the variables of a presentation.
    Eval {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        word: String,
    },
    /// Confluence of the rewriting rules up to a degree.
    Check {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value_t = 6)]
        bound: u32,
    },
    /// The invariant table implied by a presentation, as JSON lines.
    Derive {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        bound: i64,
    },
}

fn load_presentation(geo: &Geometry, path: Option<&Path>) -> Result<RingPresentation> {
    let path = path
        .map(Path::to_path_buf)
        .or_else(|| geo.presentation_path.clone())
        .context("no presentation file given or named by the geometry")?;
    let text =
        std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    Ok(RingPresentation::from_json(geo, &text)?)
}

pub fn load(a: &ScenarioArgs) -> Result<Geometry> {
    let mut geo = Geometry::load(&a.geometry, a.table.as_deref(), a.policy)
        .with_context(|| format!("loading {}", a.geometry.display()))?;
    if let Some(bound) = a.derived_table {
        let pres = load_presentation(&geo, a.presentation.as_deref())?;
        geo.table = pres.derive_table(&geo, bound)?;
    }
    Ok(geo)
}

fn point(geo: &Geometry, text: &str) -> Result<IntegralPoint> {
    geo.point(text).with_context(|| format!("point {text:?}"))
}

fn check_lines(reps: &[&CheckReport]) -> (Vec<String>, Value, bool) {
    let lines = reps.iter().map(|r| r.summary()).collect();
    let json = Value::Array(reps.iter().map(|r| r.to_json()).collect());
    (lines, json, reps.iter().all(|r| r.passed()))
}

fn sampled_points(
    geo: &Geometry,
    bound: Option<i64>,
    sample: Option<usize>,
    ctx: &Ctx,
) -> Result<Vec<IntegralPoint>> {
    let mut pts = match bound {
        Some(d) => geo.points_within(d)?,
        None => geo.points()?,
    };
    if let Some(n) = sample {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
        pts = pts
            .choose_multiple(&mut rng, n.min(pts.len()))
            .cloned()
            .collect();
        pts.sort();
    }
    Ok(pts)
}

pub fn build(a: &ScenarioArgs) -> Result<Report> {
    let geo = load(a)?;
    let classes: Vec<String> = geo.ring.classes().iter().map(|c| format_class(c)).collect();
    let lines = vec![
        format!("name: {}", geo.name),
        format!("divisors: {}", geo.complex.divisors().join(" ")),
        format!("cones: {}", geo.complex.cones().len()),
        format!("skeleton cones: {}", geo.skeleton.cones().len()),
        format!(
            "mode: {}",
            if geo.relative.is_some() {
                "relative"
            } else {
                "absolute"
            }
        ),
        format!("classes in P \\ I: {}", classes.join(" ")),
        format!(
            "table entries: {} ({:?})",
            geo.table.len(),
            geo.table.policy()
        ),
        format!(
            "points within bound {}: {}",
            geo.point_bound.d,
            geo.points()?.len()
        ),
    ];
    let json = json!({
        "name": geo.name,
        "divisors": geo.complex.divisors(),
        "cones": geo.complex.cones().len(),
        "skeleton_cones": geo.skeleton.cones().len(),
        "relative": geo.relative.is_some(),
        "classes": geo.ring.classes(),
        "table_entries": geo.table.len(),
        "policy": geo.table.policy(),
        "points": geo.points()?.len(),
    });
    Ok(Report::ok(lines, json))
}

pub fn skeleton(a: &ScenarioArgs) -> Result<Report> {
    let geo = load(a)?;
    let c = &geo.complex;
    let mut lines = Vec::new();
    let mut divisors = Vec::new();
    for (i, d) in c.divisors().iter().enumerate() {
        let coeff = rational::format_short(&geo.skeleton.normalized()[i]);
        let good = geo.skeleton.good()[i];
        lines.push(format!("{d} {coeff} {}", if good { "good" } else { "bad" }));
        divisors.push(json!({"divisor": d, "coefficient": coeff, "good": good}));
    }
    let cones: Vec<String> = geo
        .skeleton
        .cones()
        .iter()
        .map(|&k| c.cone(k).id.clone())
        .collect();
    lines.push(format!("cones: {}", cones.join(" ")));
    Ok(Report::ok(
        lines,
        json!({"divisors": divisors, "cones": cones}),
    ))
}

pub fn points(a: &PointsArgs) -> Result<Report> {
    let geo = load(&a.scenario)?;
    let pts = match a.bound {
        Some(d) => geo.points_within(d)?,
        None => geo.points()?,
    };
    let mut lines = Vec::new();
    let mut out = Vec::new();
    for p in &pts {
        lines.push(format!("{} {}", geo.phi(p), geo.format_point(p)));
        out.push(json!({"point": geo.complex.point_data(p), "phi": geo.phi(p)}));
    }
    Ok(Report::ok(lines, Value::Array(out)))
}

pub fn candidates(a: &CandidatesArgs) -> Result<Report> {
    let geo = load(&a.scenario)?;
    let (p1, p2) = (point(&geo, &a.p1)?, point(&geo, &a.p2)?);
    let classes: Vec<Vec<i64>> = match &a.class {
        Some(c) => {
            if c.len() != geo.ring.monoid().rank() {
                bail!(
                    "class has {} entries, H2 has rank {}",
                    c.len(),
                    geo.ring.monoid().rank()
                );
            }
            vec![c.clone()]
        }
        None => geo.ring.classes().to_vec(),
    };
    let rules = geo.rules();
    let mut lines = Vec::new();
    let mut out = Vec::new();
    for c in &classes {
        let rs = rules.candidate_outputs(&p1, &p2, c);
        let names: Vec<String> = rs.iter().map(|r| geo.format_point(r)).collect();
        lines.push(format!("{}: {}", format_class(c), names.join(" ")));
        out.push(json!({"A": c, "r": names}));
    }
    Ok(Report::ok(lines, Value::Array(out)))
}

pub fn multiply(a: &MultiplyArgs) -> Result<Report> {
    let geo = load(&a.scenario)?;
    let (p1, p2) = (point(&geo, &a.p1)?, point(&geo, &a.p2)?);
    let pr = theta_ring::multiply(&geo, &p1, &p2)?;
    let mut lines = vec![format!(
        "theta{{{}}} * theta{{{}}} = {}",
        geo.format_point(&p1),
        geo.format_point(&p2),
        pr.result.format(&geo)
    )];
    for c in pr.nonzero() {
        lines.push(format!(
            "  {} {} theta{{{}}} [{}]",
            rational::format(&c.n),
            format_class(geo.ring.class(c.class)),
            geo.format_point(&c.r),
            c.source.as_str()
        ));
    }
    Ok(Report::ok(lines, pr.to_json(&geo)))
}

pub fn assoc(a: &AssocArgs) -> Result<Report> {
    let geo = load(&a.scenario)?;
    if let (Some(p1), Some(p2), Some(p3)) = (&a.p1, &a.p2, &a.p3) {
        let (p1, p2, p3) = (point(&geo, p1)?, point(&geo, p2)?, point(&geo, p3)?);
        let rep = check_associativity(&geo, &p1, &p2, &p3)?;
        let passed = rep.passed();
        let mut lines = vec![
            format!("(p1 p2) p3 = {}", rep.left_element.format(&geo)),
            format!("p1 (p2 p3) = {}", rep.right_element.format(&geo)),
        ];
        let diff = rep.first_difference(&geo);
        lines.push(match &diff {
            None if passed => "associativity: ok".into(),
            None => "associativity: FAILED, products of elements differ".into(),
            Some(d) => format!("associativity: FAILED, {d}"),
        });
        let json = json!({
            "passed": passed,
            "left": rep.left_element.to_json(&geo),
            "right": rep.right_element.to_json(&geo),
            "difference": diff,
        });
        return Ok(Report::check(lines, json, passed));
    }
    let pts = match a.bound {
        Some(d) => geo.points_within(d)?,
        None => geo.points()?,
    };
    let rep = check_associativity_all(&geo, &pts)?;
    let (lines, json, passed) = check_lines(&[&rep]);
    Ok(Report::check(lines, json, passed))
}

pub fn unit(a: &SampleArgs, ctx: &Ctx) -> Result<Report> {
    let geo = load(&a.scenario)?;
    let pts = sampled_points(&geo, a.bound, a.sample, ctx)?;
    let unit = check_unit(&geo, &pts)?;
    let comm = check_commutativity(&geo, &pts)?;
    let (lines, json, passed) = check_lines(&[&unit, &comm]);
    Ok(Report::check(lines, json, passed))
}

fn all_products(
    geo: &Geometry,
    pts: &[IntegralPoint],
    ctx: &Ctx,
) -> Result<Vec<theta_ring::ProductReport>> {
    let pairs: Vec<(IntegralPoint, IntegralPoint)> = pts
        .iter()
        .flat_map(|p| pts.iter().map(move |q| (p.clone(), q.clone())))
        .collect();
    Ok(multiply_pairs(geo, &pairs, ctx.jobs)?)
}

pub fn grading(a: &SampleArgs, ctx: &Ctx) -> Result<Report> {
    let geo = load(&a.scenario)?;
    let pts = sampled_points(&geo, a.bound, a.sample, ctx)?;
    let products = all_products(&geo, &pts, ctx)?;
    let torus = check_torus_grading(&geo, &products);
    let degree = check_degree_grading(&geo, &products);
    let (lines, json, passed) = check_lines(&[&torus, &degree]);
    Ok(Report::check(lines, json, passed))
}

pub fn rees(a: &ReesArgs, ctx: &Ctx) -> Result<Report> {
    let geo = load(&a.sample.scenario)?;
    let pts = sampled_points(&geo, a.sample.bound, a.sample.sample, ctx)?;
    let products = all_products(&geo, &pts, ctx)?;
    let rep = theta_ring::rees(&geo, &a.s, &products, &pts, a.degree);
    let mut lines = vec![rep.check.summary()];
    for (d, p) in &rep.generators {
        lines.push(format!("u^{d} theta{{{}}}", geo.format_point(p)));
    }
    Ok(Report::check(lines, rep.to_json(&geo), rep.check.passed()))
}

pub fn presentation(c: &PresentationCommand) -> Result<Report> {
    match c {
        PresentationCommand::Find {
            scenario,
            gens,
            bound,
        } => {
            let geo = load(scenario)?;
            let pts = gens
                .iter()
                .map(|g| point(&geo, g))
                .collect::<Result<Vec<_>>>()?;
            let pres = find_presentation(&geo, &pts, *bound)?;
            let mut lines: Vec<String> = pres
                .names()
                .iter()
                .zip(pres.points())
                .map(|(n, p)| format!("{n} = theta{{{}}}", geo.format_point(p)))
                .collect();
            lines.extend(
                pres.relations()
                    .iter()
                    .map(|r| r.format(&geo, pres.names())),
            );
            Ok(Report::ok(lines, serde_json::to_value(pres.to_data(&geo))?))
        }
        PresentationCommand::Eval { scenario, word } => {
            let geo = load(scenario)?;
            let pres = load_presentation(&geo, scenario.presentation.as_deref())?;
            let value = pres.eval_text(&geo, word)?;
            Ok(Report::ok(
                vec![format!("{word} = {}", value.format(&geo))],
                json!({"word": word, "result": value.to_json(&geo), "text": value.format(&geo)}),
            ))
        }
        PresentationCommand::Check { scenario, bound } => {
            let geo = load(scenario)?;
            let pres = load_presentation(&geo, scenario.presentation.as_deref())?;
            let rep = pres.check_confluence(&geo, *bound)?;
            let mut lines = pres.format_rules(&geo);
            lines.push(rep.summary());
            Ok(Report::check(lines, rep.to_json(), rep.passed()))
        }
        PresentationCommand::Derive { scenario, bound } => {
            let geo = load(scenario)?;
            let pres = load_presentation(&geo, scenario.presentation.as_deref())?;
            let table = pres.derive_table(&geo, *bound)?;
            let text = table.to_jsonl(&geo.complex);
            let lines: Vec<String> = text.lines().map(str::to_string).collect();
            let json = Value::Array(
                lines
                    .iter()
                    .map(|l| serde_json::from_str(l))
                    .collect::<std::result::Result<_, _>>()?,
            );
            Ok(Report::ok(lines, json))
        }
    }
}
