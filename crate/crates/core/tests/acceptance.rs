//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines always reach the output.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use benchreg::metadata::{extract_dataset_metadata, validate_dataset_metadata, ValidationPolicy};
use benchreg::nanopub::{
    build_report_nanopub, discover_reports, extract_report, nanopub_to_trig, parse_nanopub, DirectorySource,
    DiscoveryOptions,
};
use benchreg::rdf::{dataset_isomorphic, parse_document, serialize_document, RdfDataset, RdfFormat};
use benchreg::server::RedirectTable;
use benchreg::sitegen::{load_catalog, render_results_index, report_entries, report_graph, Manifest, SiteOptions};
use benchreg::vocab::Vocabulary;
use common::registry::{Registry, TestServer};
use common::{brute_force_isomorphic, conneg, cycles, dataset, fixtures, iri, perturb, relabel_randomly, results_groups, tree_bytes};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const PIPELINE_BUDGET: Duration = Duration::from_secs(10);
const ROUND_TRIP_CASES: u32 = 200;
const ISO_PAIRS_PER_SIDE: usize = 500;
const FUZZ_PATHS: usize = 1000;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn runner() -> TestRunner {
    TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pipeline() -> Outcome {
    let started = Instant::now();
    let a = Registry::fresh();
    for (stage, code) in [("validate", a.validate()), ("package", a.package()), ("gen-site", a.gen_site())] {
        ensure(code == 0, || format!("{stage} exited with {code}"))?;
    }
    let elapsed = started.elapsed();
    let b = Registry::fresh();
    for code in [b.validate(), b.package(), b.gen_site()] {
        ensure(code == 0, || "second run failed".into())?;
    }
    let dist_a = tree_bytes(&a.dataset("sample-stream").join("package/dist"));
    let dist_b = tree_bytes(&b.dataset("sample-stream").join("package/dist"));
    ensure(dist_a.len() == 4, || format!("{} distributions, want 4", dist_a.len()))?;
    ensure(dist_a == dist_b, || "distributions differ between runs".into())?;
    let (site_a, site_b) = (tree_bytes(&a.snapshot), tree_bytes(&b.snapshot));
    ensure(site_a == site_b, || "pages or dumps differ between runs".into())?;
    ensure(site_a.keys().any(|k| k.starts_with("dumps/")) && site_a.keys().any(|k| k.starts_with("site/")), || {
        "snapshot lacks pages or dumps".into()
    })?;
    ensure(elapsed < PIPELINE_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "20 elements, {} distributions + {} snapshot files identical across runs; {:.2} s < {} s",
        dist_a.len(),
        site_a.len(),
        elapsed.as_secs_f64(),
        PIPELINE_BUDGET.as_secs()
    ))
}

fn round_trip() -> Outcome {
    let mut runner = runner();
    let strategy = dataset(10, 4);
    let (mut checks, mut failures) = (0, Vec::new());
    for _ in 0..ROUND_TRIP_CASES {
        let d = strategy.new_tree(&mut runner).unwrap().current();
        for f in RdfFormat::ALL.into_iter().filter(|f| f.supports_named_graphs() || !d.has_named_graphs()) {
            checks += 1;
            let ok = serialize_document(&d, f)
                .ok()
                .and_then(|b| parse_document(&b, f, None).ok())
                .is_some_and(|back| dataset_isomorphic(&d, &back).unwrap_or(false));
            if !ok {
                failures.push(format!("{f}: {d:?}"));
            }
        }
    }
    ensure(failures.is_empty(), || format!("{} of {checks} failed, first: {}", failures.len(), failures[0]))?;
    Ok(format!("{ROUND_TRIP_CASES} datasets, {checks} (dataset, format) round trips, 0 failures"))
}

fn iso_oracle() -> Outcome {
    let mut runner = runner();
    let strategy = dataset(10, 6);
    let (mut pos, mut neg, mut disagreements) = (0usize, 0usize, Vec::new());
    let mut check = |a: &RdfDataset, b: &RdfDataset, pos: &mut usize, neg: &mut usize| {
        let oracle = brute_force_isomorphic(a, b);
        if dataset_isomorphic(a, b).ok() != Some(oracle) {
            disagreements.push(format!("{a:?} vs {b:?}"));
        }
        if oracle {
            *pos += 1;
        } else {
            *neg += 1;
        }
    };
    let shapes: [&[usize]; 8] = [&[6], &[3, 3], &[4], &[2, 2], &[2, 4], &[5], &[2, 3], &[3]];
    for x in shapes {
        for y in shapes {
            check(&cycles(x), &relabel_randomly(&cycles(y), 5), &mut pos, &mut neg);
        }
    }
    let mut seed = 0u64;
    while (pos < ISO_PAIRS_PER_SIDE || neg < ISO_PAIRS_PER_SIDE) && seed < 20_000 {
        seed += 1;
        let d = strategy.new_tree(&mut runner).unwrap().current();
        if d.blank_nodes().len() > 6 {
            continue;
        }
        if pos < ISO_PAIRS_PER_SIDE {
            check(&d, &relabel_randomly(&d, seed), &mut pos, &mut neg);
        }
        check(&d, &relabel_randomly(&perturb(&d, seed as usize), seed), &mut pos, &mut neg);
    }
    ensure(disagreements.is_empty(), || format!("{} disagreements, first: {}", disagreements.len(), disagreements[0]))?;
    ensure(pos >= ISO_PAIRS_PER_SIDE && neg >= ISO_PAIRS_PER_SIDE, || format!("only {pos} positive / {neg} negative pairs"))?;
    Ok(format!("{pos} isomorphic + {neg} non-isomorphic pairs (<= 6 blank nodes), 0 disagreements"))
}

fn ingestion() -> Outcome {
    let source = DirectorySource::new(fixtures().join("nanopubs"));
    let d = discover_reports(&source, &DiscoveryOptions::default()).map_err(|e| e.to_string())?;
    ensure(d.reports.len() == 8 && d.diagnostics.len() == 2, || {
        format!("{} reports, {} diagnostics", d.reports.len(), d.diagnostics.len())
    })?;
    let options = SiteOptions::default();
    let (mut catalog, _) = load_catalog(&fixtures().join("registry/catalog"), "1.0", &options).map_err(|e| e.to_string())?;
    catalog.reports = report_entries(
        d.reports.iter().map(|r| (r.report.clone(), report_graph(&r.nanopub, &r.report, &options.vocab))).collect(),
    );
    let (page, _) = render_results_index(&catalog);
    let groups = results_groups(&page.body);
    // Expected grouping, read straight from the fixture files.
    let mut want: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for r in &d.reports {
        let text = String::from_utf8_lossy(&nanopub_to_trig(&r.nanopub)).into_owned();
        let task = text.split("tasks/").nth(1).and_then(|t| t.split('>').next()).unwrap_or_default().to_owned();
        want.entry(task).or_default().push(r.report.date.to_string());
    }
    let mut rows = 0;
    for (name, group) in &groups {
        let task = catalog.tasks.iter().find(|t| &t.metadata.name == name).ok_or(format!("unknown group {name}"))?;
        let dates: Vec<String> = group.iter().map(|(d, _)| d.clone()).collect();
        let mut expected = want.get(&task.metadata.id).cloned().unwrap_or_default();
        expected.sort_by(|a, b| b.cmp(a));
        ensure(dates == expected, || format!("{name}: {dates:?}, want {expected:?}"))?;
        rows += dates.len();
    }
    ensure(rows == 8, || format!("{rows} rows on the results page"))?;
    Ok(format!("10 fixtures -> 8 reports + 2 diagnostics; {rows} rows grouped by task, dates descending"))
}

fn report_round_trip() -> Outcome {
    let vocab = Vocabulary::default();
    let d = discover_reports(&DirectorySource::new(fixtures().join("nanopubs")), &DiscoveryOptions::default())
        .map_err(|e| e.to_string())?;
    for (i, found) in d.reports.iter().enumerate() {
        let r = &found.report;
        let np = build_report_nanopub(r, &iri(&format!("https://w3id.org/np/RAcheck{i}")), &vocab).map_err(|e| e.to_string())?;
        let doc = parse_document(&nanopub_to_trig(&np), RdfFormat::TriG, None).map_err(|e| e.to_string())?;
        let back = extract_report(&parse_nanopub(&doc).map_err(|e| e.to_string())?, &vocab).map_err(|e| e.to_string())?;
        ensure(&back == r, || format!("{} changed: {back:?}", r.report_iri))?;
    }
    Ok(format!("{} complete report fixtures equal field-for-field after build + extract", d.reports.len()))
}

fn conneg_matrix(reg: &Registry, server: &TestServer) -> Outcome {
    let cases = conneg::cases();
    let failures: Vec<String> = cases.iter().filter_map(|c| conneg::check(server, &reg.snapshot, c).err()).collect();
    ensure(cases.len() >= 12, || format!("only {} cases", cases.len()))?;
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} (Accept, resource) cases pass; RDF bodies isomorphic to resource metadata", cases.len()))
}

fn nine_tasks(reg: &Registry) -> Outcome {
    let page = std::fs::read_to_string(reg.snapshot.join("site/results/index.md")).map_err(|e| e.to_string())?;
    let groups = results_groups(&page);
    let tasks = std::fs::read_dir(reg.catalog.join("tasks")).map_err(|e| e.to_string())?.count();
    ensure(tasks == 9 && groups.len() == 9, || format!("{tasks} tasks, {} groups", groups.len()))?;
    Ok("catalog with 9 tasks renders 9 task groups".into())
}

fn curator() -> Outcome {
    let vocab = Vocabulary::default();
    let policy = ValidationPolicy::default();
    let subject = iri("https://w3id.org/benchreg/datasets/candidate");
    let mut seen = Vec::new();
    for (case, rule) in [("license", "open-license"), ("authorship", "authorship"), ("size", "sufficient-size"), ("use-case", "use-case")] {
        let bytes = std::fs::read(fixtures().join("curator").join(case).join("metadata.ttl")).map_err(|e| e.to_string())?;
        let graph = parse_document(&bytes, RdfFormat::Turtle, None).map_err(|e| e.to_string())?;
        let md = extract_dataset_metadata(&graph, &subject, &vocab).map_err(|e| e.to_string())?;
        let report = validate_dataset_metadata(&md, &policy);
        let errors: Vec<&str> = report.errors().map(|v| v.rule_id.as_str()).collect();
        ensure(errors == [rule], || format!("{case}: {errors:?}"))?;
        seen.push(rule);
    }
    Ok(format!("each fixture yields exactly one Error: {}", seen.join(", ")))
}

fn fuzz_path() -> impl Strategy<Value = String> {
    use proptest::prelude::*;
    const SEGMENTS: &[&str] = &[
        "datasets", "tasks", "profiles", "results", "v", "dev", "1.0", "2.0", "sample-stream", "query-window",
        "graph-streams", "rafixture04-report", "index.md", "site", "dumps", "catalog.nq", "", "..", ".", "%2F", "%00",
        "a%20b", "%C3%A9", "x", "%7Bid%7D", "*", "~", "current", "latest",
    ];
    let segment = prop_oneof![
        4 => proptest::sample::select(SEGMENTS).prop_map(str::to_owned),
        1 => "[!-~&&[^#?%]]{1,7}",
    ];
    (proptest::collection::vec(segment, 0..6), proptest::bool::weighted(0.1)).prop_map(|(segments, slash)| {
        let mut path: String = segments.iter().map(|s| format!("/{s}")).collect();
        if path.is_empty() || slash {
            path.push('/');
        }
        path
    })
}

fn purl_totality(reg: &Registry, server: &TestServer) -> Outcome {
    let manifest: Manifest = serde_json::from_slice(&std::fs::read(reg.snapshot.join("manifest.json")).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let table = RedirectTable::parse(&std::fs::read_to_string(reg.snapshot.join("redirects.conf")).map_err(|e| e.to_string())?, &manifest.version)
        .map_err(|e| e.to_string())?;
    let client = TestServer::client();
    let mut pages = 0;
    for entry in walkdir::WalkDir::new(reg.snapshot.join("site")) {
        let entry = entry.map_err(|e| e.to_string())?;
        if !entry.file_type().is_file() {
            continue;
        }
        let page = entry.path().strip_prefix(reg.snapshot.join("site")).unwrap().to_string_lossy().into_owned();
        let resource = manifest.resources.iter().find(|r| r.page == page).ok_or(format!("{page} has no resource"))?;
        let purl = format!("/{}", resource.key);
        let resp = client.get(server.url(&purl)).header("Accept", "text/html").send().map_err(|e| e.to_string())?;
        let location = resp.headers().get("location").and_then(|l| l.to_str().ok()).unwrap_or_default().to_owned();
        ensure(resp.status() == 303 && location == format!("/site/{page}"), || format!("{purl} -> {} {location}", resp.status()))?;
        pages += 1;
    }
    let mut runner = runner();
    let paths = fuzz_path();
    let (mut double, mut server_errors, mut statuses) = (Vec::new(), Vec::new(), BTreeMap::new());
    for _ in 0..FUZZ_PATHS {
        let path = paths.new_tree(&mut runner).unwrap().current();
        if table.matching(&path).len() > 1 {
            double.push(path.clone());
        }
        let status = client.get(server.url(&path)).header("Accept", "*/*").send().map_err(|e| e.to_string())?.status().as_u16();
        *statuses.entry(status).or_insert(0) += 1;
        if status >= 500 {
            server_errors.push(path);
        }
    }
    ensure(double.is_empty(), || format!("double matches: {double:?}"))?;
    ensure(server_errors.is_empty(), || format!("5xx for {server_errors:?}"))?;
    Ok(format!("{pages} pages reachable; {FUZZ_PATHS} fuzzed paths: 0 double matches, 0 5xx (statuses {statuses:?})"))
}

fn main() -> ExitCode {
    let shared = Registry::build();
    let server = TestServer::start(&shared.snapshot);
    let criteria: Vec<Criterion> = vec![
        ("end-to-end pipeline", Box::new(pipeline)),
        ("round-trip property suite", Box::new(round_trip)),
        ("isomorphism oracle equivalence", Box::new(iso_oracle)),
        ("nanopub ingestion resilience", Box::new(ingestion)),
        ("report round-trip", Box::new(report_round_trip)),
        ("content-negotiation matrix", Box::new(|| conneg_matrix(&shared, &server))),
        ("results page with nine tasks", Box::new(|| nine_tasks(&shared))),
        ("curator-criteria validation", Box::new(curator)),
        ("PURL totality", Box::new(|| purl_totality(&shared, &server))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
