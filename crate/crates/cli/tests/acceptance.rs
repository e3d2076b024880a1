//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use lattice_monoid::oracle::{self, random};
use lattice_monoid::{
    complement, fs_pushout, is_integral, lambda_stability, quotient_length, Length, MonoidHom,
    ToricMonoid,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};
use theta_ring::{
    check_associativity_all, check_commutativity, check_degree_grading, check_torus_grading,
    check_unit, find_presentation, multiply, rees, Geometry, ProductReport, RingPresentation,
};
use tropical::random::{random_cone_pair, tail_free_families};
use tropical::transverse::lambda_threshold;
use tropical::{
    classify_tails, find_splitting_edge, load_complex, projection_surjects_on_faces, psi_y,
    splitting_edges, transverse_hypothesis, ConeMap, TailClass, TropFamily,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn geometry(name: &str) -> Result<Geometry, String> {
    Geometry::load(&fixture(name), None, None).map_err(|e| format!("{name}: {e}"))
}

fn presentation(geo: &Geometry) -> Result<RingPresentation, String> {
    let path = geo
        .presentation_path
        .as_ref()
        .ok_or("no presentation named")?;
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    RingPresentation::from_json(geo, &text).map_err(|e| e.to_string())
}

fn product(geo: &Geometry, a: &str, b: &str) -> Result<String, String> {
    let p = geo.point(a).map_err(|e| e.to_string())?;
    let q = geo.point(b).map_err(|e| e.to_string())?;
    Ok(multiply(geo, &p, &q)
        .map_err(|e| e.to_string())?
        .result
        .format(geo))
}

fn expect(what: &str, got: String, want: &str) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    if t < limit {
        Ok(t)
    } else {
        Err(format!("took {t:.2?}, limit {limit:?}"))
    }
}

fn thetactl(args: &[&str]) -> Result<(String, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_thetactl"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((
        String::from_utf8_lossy(&out.stdout).into_owned(),
        out.status.code().unwrap_or(-1),
    ))
}

fn relations(geo: &Geometry, gens: &[&str], bound: u32) -> Result<Vec<String>, String> {
    let pts = gens
        .iter()
        .map(|g| geo.point(g).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let pres = find_presentation(geo, &pts, bound).map_err(|e| e.to_string())?;
    Ok(pres
        .relations()
        .iter()
        .map(|r| r.format(geo, pres.names()))
        .collect())
}

fn p1_end_to_end() -> Outcome {
    let start = Instant::now();
    let geo = geometry("p1_three_points.geometry.json")?;
    if !geo.table.is_empty() {
        return Err("table is not empty".into());
    }
    let mut checked = 0;
    for a in 1..=3 {
        for b in 1..=3 {
            for (i, j) in [(1, 2), (1, 3), (2, 3)] {
                expect(
                    "distinct rays",
                    product(&geo, &format!("{a}v{i}"), &format!("{b}v{j}"))?,
                    "0",
                )?;
                checked += 1;
            }
            for i in 1..=3 {
                let want = format!("1/1 t^[0] theta{{rho{i}:{}}}", a + b);
                expect(
                    "common ray",
                    product(&geo, &format!("{a}v{i}"), &format!("{b}v{i}"))?,
                    &want,
                )?;
                checked += 1;
            }
        }
    }
    let path = fixture("p1_three_points.geometry.json");
    let (out, code) = thetactl(&[
        "presentation",
        "find",
        path.to_str().unwrap(),
        "--gens",
        "v1",
        "v2",
        "v3",
        "--bound",
        "3",
    ])?;
    let rels: Vec<&str> = out.lines().filter(|l| !l.contains('=')).collect();
    if code != 0 || rels != ["x1*x2", "x1*x3", "x2*x3"] {
        return Err(format!("presentation: exit {code}, relations {rels:?}"));
    }
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!(
        "{checked} products, relations x1*x2 x1*x3 x2*x3, {t:.2?}"
    ))
}

fn blowup_products() -> Outcome {
    let start = Instant::now();
    let geo = geometry("blowup_p2.geometry.json")?;
    // classes in the basis (L-E, E): L = [1,1], L-E = [1,0], E = [0,1]
    let entries = [
        ([1, 1], "v1+v2", "v3", "0", "1"),
        ([1, 0], "v1+v2", "v3", "v1", "1"),
        ([1, 0], "v2", "v3", "0", "1"),
        ([0, 1], "v1", "v2", "v2", "0"),
    ];
    for (a, p1, p2, r, n) in entries {
        let pt = |s: &str| geo.point(s).map_err(|e| e.to_string());
        let got = geo
            .table
            .lookup(&a, &pt(p1)?, &pt(p2)?, &pt(r)?)
            .map(|n| n.to_string());
        expect(
            &format!("N^{a:?}_({p1},{p2},{r})"),
            got.unwrap_or_default(),
            n,
        )?;
    }
    expect(
        "v1 v2",
        product(&geo, "v1", "v2")?,
        "1/1 t^[0,0] theta{sigma12:1,1}",
    )?;
    expect(
        "(v1+v2) v3",
        product(&geo, "v1+v2", "v3")?,
        "1/1 t^[1,1] theta{0:} + 1/1 t^[1,0] theta{rho1:1}",
    )?;
    expect(
        "v2 v3",
        product(&geo, "v2", "v3")?,
        "1/1 t^[1,0] theta{0:} + 1/1 t^[0,0] theta{sigma23:1,1}",
    )?;
    let rels = relations(&geo, &["v1", "v2", "v3"], 3)?;
    if rels != ["x1*x2*x3 - t^[1,0]*x1 - t^[1,1]"] {
        return Err(format!("relations {rels:?}"));
    }
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("3 products, relation {}, {t:.2?}", rels[0]))
}

fn triple_product() -> Outcome {
    let geo = geometry("blowup_p2.geometry.json")?;
    let pres = presentation(&geo)?;
    let c = pres.check_confluence(&geo, 6).map_err(|e| e.to_string())?;
    if !c.passed() {
        return Err(c.summary());
    }
    // θ_{v1+2v2} θ_{v2} θ_{2v3} with the monomial rule inside cones
    let got = pres
        .eval_text(&geo, "x1*x2^3*x3^2")
        .map_err(|e| e.to_string())?
        .format(&geo);
    let want = "2/1 t^[2,1] theta{rho2:1} + 1/1 t^[2,0] theta{sigma12:1,1} + 1/1 t^[1,1] theta{sigma23:2,1}";
    expect("triple product", got, want)?;
    Ok("t^[L] theta(2v2+v3) + 2 t^[2L-E] theta(v2) + t^[2L-2E] theta(v1+v2)".into())
}

fn line_conic() -> Outcome {
    let start = Instant::now();
    let mut geo = geometry("line_conic.geometry.json")?;
    expect(
        "v1 v2",
        product(&geo, "v1", "v2")?,
        "1/1 t^[0] theta{sigma1:1,1} + 1/1 t^[0] theta{sigma2:1,1}",
    )?;
    expect(
        "vs1 vs2",
        product(&geo, "sigma1:1,1", "sigma2:1,1")?,
        "1/1 t^[1] theta{rho1:1}",
    )?;
    let pres = presentation(&geo)?;
    geo.table = pres.derive_table(&geo, 6).map_err(|e| e.to_string())?;
    let pts = geo.points_within(3).map_err(|e| e.to_string())?;
    let rep = check_associativity_all(&geo, &pts).map_err(|e| e.to_string())?;
    if !rep.passed() {
        return Err(rep.summary());
    }
    let path = fixture("line_conic.geometry.json");
    let (_, code) = thetactl(&[
        "assoc",
        path.to_str().unwrap(),
        "--derived-table",
        "6",
        "--p1",
        "v1",
        "--p2",
        "v2",
        "--p3",
        "sigma2:1,1",
    ])?;
    if code != 0 {
        return Err(format!("thetactl assoc exited {code}"));
    }
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!("{} triples associative, {t:.2?}", rep.checked))
}

fn monoid_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pushouts = 0;
    let mut attempts = 0;
    while pushouts < 100 {
        attempts += 1;
        if attempts > 5000 {
            return Err("too few usable pushout instances".into());
        }
        let Some((h1, h2)) = random::pushout_instance(&mut rng) else {
            continue;
        };
        let po = fs_pushout(&h1, &h2).map_err(|e| e.to_string())?;
        oracle::check_fs_pushout(&h1, &h2, &po)?;
        pushouts += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let k = random::length_instance(&mut rng);
        let bfs = oracle::complement_bfs(&k, 10_000).ok_or("infinite complement")?;
        let boxed = oracle::complement_box(&k, 40);
        let ours: std::collections::BTreeSet<_> = complement(&k)
            .map_err(|e| e.to_string())?
            .ok_or("complement reported infinite")?
            .into_iter()
            .collect();
        let len = quotient_length(&k).map_err(|e| e.to_string())?;
        if bfs != boxed || ours != bfs || len != Length::Finite(bfs.len() as u64) {
            return Err(format!("length mismatch for ideal {:?}", k.generators()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let input = random::stability_instance(&mut rng);
        let r = lambda_stability(&input).map_err(|e| e.to_string())?;
        if !(r.iso_on_reduced && r.multiplicities_equal) {
            return Err(format!("stability fails for {input:?}"));
        }
    }
    Ok("100 pushouts, 100 lengths, 20 stability instances".into())
}

fn all_matrices(rows: usize, cols: usize, max: i64) -> Vec<Vec<Vec<i64>>> {
    let base = (max + 1) as usize;
    (0..base.pow((rows * cols) as u32))
        .map(|mut code| {
            let mut m = vec![vec![0; cols]; rows];
            for row in m.iter_mut() {
                for x in row.iter_mut() {
                    *x = (code % base) as i64;
                    code /= base;
                }
            }
            m
        })
        .collect()
}

fn integrality() -> Outcome {
    let mut total = 0;
    for r in 1..=2 {
        for s in 1..=2 {
            let (src, dst) = (ToricMonoid::free(r), ToricMonoid::free(s));
            for m in all_matrices(s, r, 3) {
                let h = MonoidHom::new(&src, &dst, m.clone()).map_err(|e| e.to_string())?;
                let ours = is_integral(&h).map_err(|e| e.to_string())?;
                let oracle = match oracle::flat_by_fibre_dimension(&m) {
                    Some(flat) => flat,
                    None => oracle::integral_by_definition(&m, 3),
                };
                if ours != oracle {
                    return Err(format!("matrix {m:?}: {ours} vs oracle {oracle}"));
                }
                total += 1;
            }
        }
    }
    let (n1, n2) = (ToricMonoid::free(1), ToricMonoid::free(2));
    let diag = MonoidHom::new(&n1, &n2, vec![vec![1], vec![1]]).map_err(|e| e.to_string())?;
    let shear =
        MonoidHom::new(&n2, &n2, vec![vec![1, 0], vec![1, 1]]).map_err(|e| e.to_string())?;
    if !is_integral(&diag).map_err(|e| e.to_string())?
        || is_integral(&shear).map_err(|e| e.to_string())?
    {
        return Err("hand cases".into());
    }
    Ok(format!(
        "{total} homomorphisms, diagonal integral, shear not"
    ))
}

fn family(name: &str) -> Result<TropFamily, String> {
    TropFamily::load(&fixture(&format!("tropical/{name}.family.json")))
        .map_err(|e| format!("{name}: {e}"))
}

fn tropical_suite() -> Outcome {
    let first = find_splitting_edge(&family("chain_first")?)
        .map_err(|e| e.to_string())?
        .index;
    let second = find_splitting_edge(&family("chain_second")?)
        .map_err(|e| e.to_string())?
        .index;
    if (first, second) != (1, 2) {
        return Err(format!("splitting edges {first}, {second}"));
    }
    if !family("terminal_tail")?
        .has_terminal_tail()
        .map_err(|e| e.to_string())?
    {
        return Err("terminal tail not detected".into());
    }
    let internal = classify_tails(&family("internal_tail")?).map_err(|e| e.to_string())?;
    if internal != TailClass::Internal {
        return Err(format!("internal tail classified {internal}"));
    }
    let complex = load_complex(&fixture("blowup_p2.geometry.json")).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fams = tail_free_families(&mut rng, &complex, 200, 200_000);
    if fams.len() != 200 {
        return Err(format!("only {} random families", fams.len()));
    }
    let mut bad = 0;
    for fam in &fams {
        let unique = match find_splitting_edge(fam) {
            Ok(s) => splitting_edges(fam).map_err(|e| e.to_string())? == vec![s.index],
            Err(_) => false,
        };
        if !unique || !fam.is_miniversal() || fam.base_dim() != 2 {
            bad += 1;
        }
    }
    if bad > 0 {
        return Err(format!("{bad} counterexamples among 200 families"));
    }
    Ok("edges 1 and 2, terminal tail, internal tail, 200 random families unique".into())
}

fn transversality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut held = 0;
    for _ in 0..50 {
        let (f1, f2) = random_cone_pair(&mut rng);
        if transverse_hypothesis(&f1, &f2).map_err(|e| e.to_string())? {
            held += 1;
            if !projection_surjects_on_faces(&f1, &f2).map_err(|e| e.to_string())? {
                return Err(format!("violation: {f1:?} {f2:?}"));
            }
        }
    }
    let test = ConeMap::orthant(vec![vec![1, 2], vec![0, 1]]).map_err(|e| e.to_string())?;
    let at1 = transverse_hypothesis(&psi_y(1), &test).map_err(|e| e.to_string())?;
    let at2 = transverse_hypothesis(&psi_y(2), &test).map_err(|e| e.to_string())?;
    let threshold = lambda_threshold(&test, 8).map_err(|e| e.to_string())?;
    if at1 || !at2 || threshold != Some(2) {
        return Err(format!(
            "lambda 1: {at1}, lambda 2: {at2}, threshold {threshold:?}"
        ));
    }
    Ok(format!(
        "{held} of 50 pairs meet the hypothesis, no violations; flips at lambda 2"
    ))
}

fn all_products(geo: &Geometry) -> Result<Vec<ProductReport>, String> {
    let pts = geo.points().map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for p in &pts {
        for q in &pts {
            out.push(multiply(geo, p, q).map_err(|e| e.to_string())?);
        }
    }
    Ok(out)
}

fn axioms() -> Outcome {
    let mut line_conic = geometry("line_conic.geometry.json")?;
    line_conic.table = presentation(&line_conic)?
        .derive_table(&line_conic, 6)
        .map_err(|e| e.to_string())?;
    let geos = vec![
        geometry("p1_three_points.geometry.json")?,
        geometry("p1_skeleton.geometry.json")?,
        geometry("blowup_p2.geometry.json")?,
        line_conic,
        geometry("relative_toy.geometry.json")?,
    ];
    let mut checked = 0;
    for geo in &geos {
        let pts = geo.points().map_err(|e| e.to_string())?;
        let products = all_products(geo)?;
        let mut reps = vec![
            check_unit(geo, &pts).map_err(|e| e.to_string())?,
            check_commutativity(geo, &pts).map_err(|e| e.to_string())?,
            check_torus_grading(geo, &products),
            check_degree_grading(geo, &products),
        ];
        for i in 0..geo.divisor_count() {
            let mut s = vec![0; geo.divisor_count()];
            s[i] = 1;
            reps.push(rees(geo, &s, &products, &pts, 3).check);
        }
        for r in &reps {
            if !r.passed() {
                return Err(format!("{}: {}", geo.name, r.summary()));
            }
            checked += r.checked;
        }
        let path = geo_path(&geo.name);
        if let Some(path) = path {
            let (_, code) = thetactl(&["unit", path.to_str().unwrap()])?;
            if code != 0 {
                return Err(format!("thetactl unit exited {code} on {}", geo.name));
            }
        }
    }
    Ok(format!("{} fixtures, {checked} identities", geos.len()))
}

fn geo_path(name: &str) -> Option<PathBuf> {
    [
        "p1_three_points",
        "p1_skeleton",
        "blowup_p2",
        "relative_toy",
    ]
    .iter()
    .map(|f| fixture(&format!("{f}.geometry.json")))
    .find(|p| {
        Geometry::load(p, None, None)
            .map(|g| g.name == name)
            .unwrap_or(false)
    })
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("P1 end-to-end", p1_end_to_end),
        ("blow-up products and presentation", blowup_products),
        ("triple product through the presentation", triple_product),
        ("line and conic products and associativity", line_conic),
        ("monoid suite", monoid_suite),
        ("integrality", integrality),
        ("tropical splitting", tropical_suite),
        ("transversality", transversality),
        ("ring axioms on every fixture", axioms),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(detail) => println!(
                "criterion {}: PASS {name} ({detail}) [{:.2?}]",
                k + 1,
                t.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {}: FAIL {name}: {why} [{:.2?}]",
                    k + 1,
                    t.elapsed()
                );
            }
        }
    }
    let total = start.elapsed();
    println!("acceptance: {} of 9 passed in {total:.2?}", 9 - failed);
    if failed > 0 || total > Duration::from_secs(60) {
        std::process::exit(1);
    }
}
