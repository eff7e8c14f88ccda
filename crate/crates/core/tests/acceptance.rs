//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use ricci_flat::catalog::{catalog_all, make_family, Family};
use ricci_flat::cli::run_with_env;
use ricci_flat::pentagon::{all_five_cycles, edge_profile, pentagon_embedding, verify_lemma1, EmbeddingResult};
use ricci_flat::search::{census, classify_ricci_flat, Constraints, EnumerationOptions};
use ricci_flat::transport::{kappa_alpha, lazy_measure, lly_curvature, wasserstein};
use ricci_flat::{Graph, Rational};
use serde_json::Value;

const CATALOG_BUDGET: Duration = Duration::from_secs(10);
const PENTAGON_BUDGET: Duration = Duration::from_secs(5);
const EMBEDDING_BUDGET: Duration = Duration::from_secs(5);
const CENSUS_BUDGET: Duration = Duration::from_secs(600);
const OT_INSTANCES: usize = 250;
const OT_MIN_INSTANCES: usize = 200;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> ricci_flat::cli::CommandOutcome {
    let argv: Vec<&str> = std::iter::once("ricci-flat").chain(args.iter().copied()).collect();
    run_with_env(&argv, None)
}

fn graph_file(name: &str, g: &Graph) -> String {
    let dir = std::env::temp_dir().join(format!("ricci-flat-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{name}.txt"));
    std::fs::write(&path, ricci_flat::edgelist::write_edge_list(g)).unwrap();
    path.to_string_lossy().into_owned()
}

fn controls() -> Vec<(&'static str, Graph, (usize, usize), Rational)> {
    vec![
        ("C5", cycle(5), (0, 1), Rational::new(1, 2)),
        ("K2", Graph::new(2, &[(0, 1)]).unwrap(), (0, 1), Rational::from_integer(2)),
        ("P3", Graph::new(3, &[(0, 1), (1, 2)]).unwrap(), (0, 1), Rational::one()),
    ]
}

fn catalog_flatness() -> Outcome {
    let start = Instant::now();
    let out = cli(&["verify-catalog", "--format", "json"]);
    let elapsed = start.elapsed();
    ensure(out.exit_code == 0, || format!("exit {} {}", out.exit_code, out.stderr))?;
    let doc: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let families = doc["families"].as_array().ok_or("no families")?;
    let names: BTreeSet<&str> = families.iter().filter_map(|f| f["name"].as_str()).collect();
    let mut wanted: Vec<String> = (6..=20).map(|k| format!("cycle:{k}")).collect();
    wanted.extend(["petersen", "dodecahedral", "half-dodecahedral", "triplex", "path:50"].map(String::from));
    for w in &wanted {
        ensure(names.contains(w.as_str()), || format!("{w} missing"))?;
    }
    ensure(families.iter().all(|f| f["flat"] == true), || "an entry is not flat".into())?;
    let path = families.iter().find(|f| f["name"] == "path:50").unwrap();
    ensure(path["checked_edges"] == 47, || "path interior edge count".into())?;
    let table = cli(&["verify-catalog"]);
    ensure(table.stdout.lines().filter(|l| l.ends_with("  flat: true")).count() == wanted.len(), || "table rows".into())?;
    ensure(elapsed < CATALOG_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{} families, all edges kappa = 0 exactly, {elapsed:.2?}", wanted.len()))
}

fn negative_controls() -> Outcome {
    for (name, g, edge, kappa) in controls() {
        let (x, y) = edge;
        let lib = lly_curvature(&g, x, y).map_err(|e| e.to_string())?;
        ensure(lib == kappa, || format!("{name}: library {lib}, expected {kappa}"))?;
        for alpha in [Rational::new(1, 2), Rational::new(2, 3)] {
            let mu = lazy_measure(&g, x, &alpha).unwrap();
            let nu = lazy_measure(&g, y, &alpha).unwrap();
            let oracle = (Rational::one() - exhaustive_w1(&g, &mu, &nu)) / (Rational::one() - &alpha);
            ensure(oracle == kappa, || format!("{name}: oracle {oracle} at alpha {alpha}"))?;
        }
        let out = cli(&["curvature", "--graph", &graph_file(name, &g), "--format", "json"]);
        ensure(out.exit_code == 1, || format!("{name}: exit {}", out.exit_code))?;
        let doc: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
        ensure(doc["witness"]["edge"] == serde_json::json!([x, y]), || format!("{name}: witness edge"))?;
        ensure(doc["witness"]["kappa"] == kappa.to_string(), || format!("{name}: witness value"))?;
    }
    Ok("C5 = 1/2, K2 = 2, pendant P3 = 1; oracle agrees; CLI exit 1 with witness".into())
}

fn two_point_linearity() -> Outcome {
    let mut graphs: Vec<(String, Graph, Vec<(usize, usize)>)> = catalog_all(20, 50)
        .unwrap()
        .into_iter()
        .map(|e| (e.name, e.graph, e.checked_edges))
        .collect();
    for (name, g, _, _) in controls() {
        let edges = g.edges().collect();
        graphs.push((name.into(), g, edges));
    }
    let (half, two_thirds) = (Rational::new(1, 2), Rational::new(2, 3));
    let mut checked = 0;
    for (name, g, edges) in &graphs {
        for &(x, y) in edges {
            let a = kappa_alpha(g, x, y, &half).unwrap() / (Rational::one() - &half);
            let b = kappa_alpha(g, x, y, &two_thirds).unwrap() / (Rational::one() - &two_thirds);
            ensure(a == b, || format!("{name} {x}-{y}: {a} vs {b}"))?;
            ensure(lly_curvature(g, x, y).is_ok(), || format!("{name} {x}-{y}: violation"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} edges, zero linearity violations"))
}

fn transport_oracle() -> Outcome {
    let mut r = rng(0x5eed);
    for i in 0..OT_INSTANCES {
        let g = random_girth5(5 + i % 8, 3, &mut r);
        ensure(g.girth().at_least(5) && g.n() <= 12, || "generator".into())?;
        let mu = random_measure(&g, 5, &mut r);
        let nu = random_measure(&g, 5, &mut r);
        let (w, cert) = wasserstein(&g, &mu, &nu).map_err(|e| e.to_string())?;
        let oracle = exhaustive_w1(&g, &mu, &nu);
        ensure(w == oracle, || format!("instance {i}: {w} vs oracle {oracle}"))?;
        cert.validate(&g, &mu, &nu).map_err(|e| format!("instance {i}: {e}"))?;
    }
    ensure(OT_INSTANCES >= OT_MIN_INSTANCES, || "too few instances".into())?;
    Ok(format!("{OT_INSTANCES} instances equal exhaustive flow search; all certificates valid"))
}

fn pentagon_structure() -> Outcome {
    let start = Instant::now();
    let t = make_family(Family::Triplex).unwrap();
    let oracle = dfs_five_cycles(&t);
    ensure(all_five_cycles(&t).len() == 9 && oracle.len() == 9, || "triplex 5-cycle total".into())?;
    let mut counts = Vec::new();
    for (x, y) in t.edges() {
        let p = edge_profile(&t, x, y).unwrap();
        ensure(p.c5_count == dfs_count_through(&oracle, x, y), || format!("oracle at {x}-{y}"))?;
        counts.push(p.c5_count);
    }
    counts.sort_unstable();
    ensure(counts == [vec![2; 9], vec![3; 9]].concat(), || format!("multiset {counts:?}"))?;

    let p = edge_profile(&t, 0, 1).unwrap();
    ensure(p.c5_count == 3 && p.has_opposite_pair, || "edge 0-1 profile".into())?;
    ensure(p.x_neighbors == [6, 11] && p.y_neighbors == [2, 9], || "edge 0-1 neighbors".into())?;
    ensure(p.slots[0][0].is_some() && p.slots[1][1].is_some(), || "opposite pair (6,2),(11,9)".into())?;
    ensure(p.slots[1][0].is_some() && p.slots[0][1].is_none(), || "slot (11,2) occupied, (6,9) empty".into())?;
    ensure(edge_profile(&t, 0, 6).unwrap().c5_count == 2, || "chord 0-6".into())?;

    for (family, want) in [(Family::Petersen, 4), (Family::Dodecahedral, 2)] {
        let g = make_family(family).unwrap();
        let oracle = dfs_five_cycles(&g);
        for (x, y) in g.edges() {
            let c = edge_profile(&g, x, y).unwrap().c5_count;
            ensure(c == want && dfs_count_through(&oracle, x, y) == want, || format!("{family} {x}-{y}: {c}"))?;
        }
    }
    for family in [Family::Petersen, Family::Triplex, Family::Dodecahedral] {
        let rep = verify_lemma1(&make_family(family).unwrap()).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("opposite pairs on {family}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < PENTAGON_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("triplex 9 pentagons, counts {{3x9, 2x9}}, petersen 4, dodecahedral 2, flat 3-3 edges have opposite pairs, {elapsed:.2?}"))
}

fn embeddings() -> Outcome {
    let start = Instant::now();
    for (family, faces_want, chi_want) in [(Family::Dodecahedral, 12, 2), (Family::Petersen, 6, 1)] {
        let g = make_family(family).unwrap();
        match pentagon_embedding(&g).map_err(|e| e.to_string())? {
            EmbeddingResult::Closed { faces, euler_characteristic } => {
                ensure(faces.len() == faces_want, || format!("{family}: {} faces", faces.len()))?;
                ensure(euler_characteristic == chi_want, || format!("{family}: chi {euler_characteristic}"))?;
                ensure(5 * faces.len() == 2 * g.m(), || format!("{family}: face sizes"))?;
                for (x, y) in g.edges() {
                    let on = faces.iter().filter(|f| f.contains_edge(x, y)).count();
                    ensure(on == 2, || format!("{family}: edge {x}-{y} on {on} faces"))?;
                }
                let chi = g.n() as i64 - g.m() as i64 + faces.len() as i64;
                ensure(chi == euler_characteristic, || format!("{family}: n - m + f"))?;
            }
            other => return Err(format!("{family}: {other:?}")),
        }
    }
    let t = make_family(Family::Triplex).unwrap();
    match pentagon_embedding(&t).map_err(|e| e.to_string())? {
        EmbeddingResult::Failed { witness: Some((x, y)), .. } => {
            ensure(edge_profile(&t, x, y).unwrap().irregular, || format!("witness {x}-{y} is regular"))?;
        }
        other => return Err(format!("triplex: {other:?}")),
    }
    let elapsed = start.elapsed();
    ensure(elapsed < EMBEDDING_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("dodecahedral 12 faces chi 2, petersen 6 faces chi 1, triplex fails at an irregular edge, {elapsed:.2?}"))
}

fn names(r: &ricci_flat::search::CensusRecord) -> BTreeSet<String> {
    r.ricci_flat.iter().map(|f| f.family.clone().unwrap_or_else(|| "UNKNOWN".into())).collect()
}

fn classification() -> Outcome {
    let single = EnumerationOptions::default();
    let start = Instant::now();
    let mut cubic = Vec::new();
    for (n, count, flat) in [(10, 1, vec!["petersen"]), (12, 2, vec!["triplex"]), (14, 9, vec![])] {
        let r = census(&Constraints::new(n, 3, 3, 5), &single).map_err(|e| e.to_string())?;
        ensure(r.enumerated_count == count, || format!("cubic n={n}: {} classes", r.enumerated_count))?;
        let want: BTreeSet<String> = flat.into_iter().map(String::from).collect();
        ensure(names(&r) == want, || format!("cubic n={n}: flat {:?}", names(&r)))?;
        cubic.push(r);
    }
    let mixed = classify_ricci_flat(11, 2, 3, &single).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let found: BTreeSet<String> = mixed.iter().flat_map(names).collect();
    let want: BTreeSet<String> =
        (6..=11).map(|k| format!("cycle:{k}")).chain(["petersen".to_string()]).collect();
    ensure(found == want, || format!("mixed flat set {found:?}"))?;
    ensure(elapsed < CENSUS_BUDGET, || format!("took {elapsed:?}"))?;

    for workers in [2, 5] {
        let opts = EnumerationOptions { workers, ..single };
        for (r, n) in cubic.iter().zip([10, 12, 14]) {
            let again = census(&Constraints::new(n, 3, 3, 5), &opts).map_err(|e| e.to_string())?;
            ensure(&again == r, || format!("cubic n={n} differs with {workers} workers"))?;
        }
        let again = classify_ricci_flat(11, 2, 3, &opts).map_err(|e| e.to_string())?;
        ensure(again == mixed, || format!("mixed census differs with {workers} workers"))?;
    }
    Ok(format!("cubic 1/2/9 classes, flat {{petersen}}/{{triplex}}/{{}}; mixed n<=11 flat = C6..C11 + petersen; worker-invariant; {elapsed:.2?} single-worker"))
}

fn reproducibility() -> Outcome {
    let triplex = graph_file("repro-triplex", &make_family(Family::Triplex).unwrap());
    let c5 = graph_file("repro-c5", &cycle(5));
    let runs: Vec<Vec<&str>> = vec![
        vec!["gen", "--family", "dodecahedral"],
        vec!["curvature", "--graph", &c5, "--format", "json"],
        vec!["curvature", "--graph", &triplex, "--alpha", "2/3", "--format", "json"],
        vec!["verify-catalog", "--format", "json"],
        vec!["structure", "--graph", &triplex, "--embed", "--format", "json"],
        vec!["search", "--max-n", "12", "--format", "json"],
    ];
    for args in &runs {
        let a = cli(args);
        let b = cli(args);
        ensure(a.exit_code < 2, || format!("{args:?}: {}", a.stderr))?;
        ensure(a == b, || format!("{args:?} differs between runs"))?;
    }
    let argv = ["ricci-flat", "search", "--max-n", "12", "--format", "json"];
    ensure(run_with_env(&argv, Some("1")) == run_with_env(&argv, Some("4")), || "search output depends on workers".into())?;
    Ok(format!("{} commands byte-identical across runs and worker counts", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("catalog flatness", catalog_flatness),
        ("negative controls", negative_controls),
        ("two-point linearity", two_point_linearity),
        ("transport oracle equivalence", transport_oracle),
        ("pentagon structure", pentagon_structure),
        ("pentagon embedding", embeddings),
        ("classification at desk scale", classification),
        ("exact reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
