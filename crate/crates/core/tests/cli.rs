mod common;

use std::fs;
use std::io::{BufRead, BufReader};
use std::process::{Command, Stdio};

use benchreg::nanopub::{extract_report, parse_nanopub};
use benchreg::rdf::{parse_document, RdfFormat};
use benchreg::vocab::Vocabulary;
use common::registry::{cli, Registry, TestServer};
use common::{fixtures, tree_bytes};

fn s(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn stages_compose_and_serve() {
    let reg = Registry::build();
    let dist: Vec<String> = fs::read_dir(reg.dataset("sample-stream").join("package/dist"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert_eq!(dist.len(), 4, "{dist:?}");
    assert!(reg.dataset("sample-stream").join("package/stats.ttl").is_file());
    assert_eq!(fs::read_dir(reg.catalog.join("reports")).unwrap().filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "trig")).count(), 8);

    let server = TestServer::start(&reg.snapshot);
    let r = TestServer::client().get(server.url("/datasets/sample-stream")).header("Accept", "text/turtle").send().unwrap();
    assert_eq!(r.status(), 200);
    let body = r.text().unwrap();
    assert!(body.contains("statementCount"), "{body}");
}

#[test]
fn reruns_are_byte_identical() {
    let a = Registry::build();
    let b = Registry::build();
    let dist = |r: &Registry| tree_bytes(&r.dataset("sample-stream").join("package"));
    assert_eq!(dist(&a), dist(&b));
    assert_eq!(tree_bytes(&a.snapshot), tree_bytes(&b.snapshot));

    // Running again in place changes nothing either.
    let before = tree_bytes(&a.snapshot);
    let package_before = dist(&a);
    assert_eq!(a.package(), 0);
    assert_eq!(a.gen_site(), 0);
    assert_eq!(tree_bytes(&a.snapshot), before);
    assert_eq!(dist(&a), package_before);
}

#[test]
fn validate_exit_codes() {
    let reg = Registry::fresh();
    let curator = fixtures().join("curator");
    let dir = tempfile::TempDir::new().unwrap();
    for case in ["compliant", "license"] {
        common::copy_dir(&curator.join(case), &dir.path().join(case));
    }
    assert_eq!(reg.run(&["validate", s(&dir.path().join("compliant/metadata.ttl"))]), 0);
    assert!(dir.path().join("compliant/metadata.validation.ttl").is_file());
    assert_eq!(reg.run(&["validate", s(&dir.path().join("license"))]), 1);
    let report = fs::read_to_string(dir.path().join("license/validation.ttl")).unwrap();
    assert!(report.contains("open-license"), "{report}");

    let missing = dir.path().join("no-license.ttl");
    let text = fs::read_to_string(curator.join("compliant/metadata.ttl")).unwrap();
    let without: String = text.lines().filter(|l| !l.contains("br:license")).map(|l| format!("{l}\n")).collect();
    fs::write(&missing, without).unwrap();
    assert_eq!(reg.run(&["validate", s(&missing)]), 1);

    assert_eq!(reg.run(&["validate", s(&dir.path().join("nope.ttl"))]), 2);
    let broken = dir.path().join("broken.ttl");
    fs::write(&broken, "<a> <b> .").unwrap();
    assert_eq!(reg.run(&["validate", s(&broken)]), 2);
    // The worst outcome wins.
    assert_eq!(reg.run(&["validate", s(&dir.path().join("license")), s(&broken)]), 2);
}

#[test]
fn failed_package_leaves_nothing_behind() {
    let reg = Registry::fresh();
    let d = reg.dataset("sample-stream");
    fs::remove_file(d.join("source/e19.nt")).unwrap();
    let out = d.join("package");
    assert_eq!(reg.run(&["package", s(&d.join("source")), s(&d.join("metadata.ttl")), s(&out)]), 1);
    assert!(!out.exists());

    // An earlier successful output survives a failed rerun untouched.
    let fresh = Registry::fresh();
    assert_eq!(fresh.package(), 0);
    let out = fresh.dataset("sample-stream").join("package");
    let before = tree_bytes(&out);
    fs::write(fresh.dataset("sample-stream").join("source/e00.nt"), "not rdf").unwrap();
    assert_eq!(fresh.package(), 2);
    assert_eq!(tree_bytes(&out), before);
    let leftovers: Vec<_> = fs::read_dir(fresh.dataset("sample-stream"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.starts_with(".benchreg"))
        .collect();
    assert!(leftovers.is_empty(), "{leftovers:?}");
}

#[test]
fn fetch_reports_outcomes() {
    let reg = Registry::fresh();
    let out = reg.root.join("fetched");
    assert_eq!(reg.fetch_reports(), 0);
    let log = fs::read_to_string(reg.catalog.join("reports/diagnostics.log")).unwrap();
    assert_eq!(log.lines().count(), 2);
    let json: serde_json::Value = serde_json::from_slice(&fs::read(reg.catalog.join("reports/reports.json")).unwrap()).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 8);

    assert_eq!(reg.run(&["fetch-reports", s(&out), "--index", "http://127.0.0.1:9/index"]), 2);
    assert_eq!(reg.run(&["fetch-reports", s(&out), "--index", s(&reg.root.join("missing"))]), 2);
    assert!(!out.exists());
}

#[test]
fn empty_catalog_gives_empty_site() {
    let dir = tempfile::TempDir::new().unwrap();
    let catalog = dir.path().join("catalog");
    fs::create_dir(&catalog).unwrap();
    let out = dir.path().join("site");
    assert_eq!(cli(&["gen-site", s(&catalog), s(&out)]), 0);
    let tasks = fs::read_to_string(out.join("site/tasks/index.md")).unwrap();
    assert!(tasks.starts_with("# Tasks"));
    let before = tree_bytes(&out);
    assert_eq!(cli(&["gen-site", s(&catalog), s(&out)]), 0);
    assert_eq!(tree_bytes(&out), before);
    assert_eq!(cli(&["gen-site", s(&dir.path().join("absent")), s(&out)]), 2);
}

fn report_args(out: &std::path::Path) -> Vec<String> {
    [
        "report-new",
        "--uri", "https://w3id.org/np/RAnew",
        "--task", "https://w3id.org/benchreg/tasks/stream-latency",
        "--profile", "https://w3id.org/benchreg/profiles/graph-streams",
        "--profile-version", "1.0",
        "--code", "https://github.com/example/bench",
        "--system", "Jelly=1.1.0",
        "--system", "Baseline = 2",
        "--orcid", "https://orcid.org/0000-0002-1825-0097",
        "--date", "2024-08-01",
        "--results", "https://example.org/results/new",
        "--out", s(out),
    ]
    .into_iter()
    .map(str::to_owned)
    .collect()
}

#[test]
fn report_new_round_trips() {
    let dir = tempfile::TempDir::new().unwrap();
    let out = dir.path().join("new.trig");
    let args = report_args(&out);
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    assert_eq!(cli(&argv), 0);
    let doc = parse_document(&fs::read(&out).unwrap(), RdfFormat::TriG, None).unwrap();
    let report = extract_report(&parse_nanopub(&doc).unwrap(), &Vocabulary::default()).unwrap();
    assert_eq!(report.systems.len(), 2);
    assert_eq!(report.systems[1].name, "Baseline");
    assert_eq!(report.author_orcid, "0000-0002-1825-0097");
    assert_eq!(report.report_iri.as_str(), "https://w3id.org/np/RAnew#report");

    let without_task: Vec<&str> = argv
        .iter()
        .enumerate()
        .filter(|(i, a)| **a != "--task" && (*i == 0 || argv[i - 1] != "--task"))
        .map(|(_, a)| *a)
        .collect();
    assert_eq!(cli(&without_task), 1);

    let mut bad_orcid = args.clone();
    let i = bad_orcid.iter().position(|a| a == "--orcid").unwrap();
    bad_orcid[i + 1] = "0000-0002-1825-0098".into();
    let argv: Vec<&str> = bad_orcid.iter().map(String::as_str).collect();
    assert_eq!(cli(&argv), 1);
}

#[test]
fn dump_writes_the_catalog_graph() {
    let reg = Registry::build();
    let out = reg.root.join("dump.nq");
    assert_eq!(reg.run(&["dump", s(&reg.catalog), "--out", s(&out)]), 0);
    assert_eq!(fs::read(&out).unwrap(), fs::read(reg.snapshot.join("dumps/catalog.nq")).unwrap());
    let ttl = reg.root.join("dump.ttl");
    assert_eq!(reg.run(&["dump", s(&reg.catalog), "--format", "turtle", "--out", s(&ttl)]), 0);
    assert_eq!(reg.run(&["dump", s(&reg.catalog), "--format", "rdfxml"]), 1);
}

#[test]
fn config_problems_are_environmental() {
    let dir = tempfile::TempDir::new().unwrap();
    let config = dir.path().join("c.toml");
    fs::write(&config, "cap-ladder = [5, 1]\n").unwrap();
    assert_eq!(cli(&["--config", s(&config), "dump", s(dir.path())]), 2);
    assert_eq!(cli(&["--config", s(&dir.path().join("none.toml")), "dump", s(dir.path())]), 2);
}

#[test]
fn binary_reports_json_and_exit_codes() {
    let reg = Registry::fresh();
    let exe = env!("CARGO_BIN_EXE_benchreg");
    let input = reg.root.join("size.ttl");
    fs::copy(fixtures().join("curator/size/metadata.ttl"), &input).unwrap();
    let output = Command::new(exe)
        .args(["--json", "--config", s(&reg.config), "validate", s(&input)])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "min-element-count is 10 in this config");
    let v: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(v["exitCode"], 0);

    let output = Command::new(exe).args(["--json", "validate", "/nonexistent/path.ttl"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(v["command"], "validate");
    assert_eq!(v["diagnostics"][0]["level"], "error");

    let output = Command::new(exe).arg("frobnicate").output().unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn serve_binary_answers_and_stops_on_sigterm() {
    let reg = Registry::build();
    let mut child = Command::new(env!("CARGO_BIN_EXE_benchreg"))
        .args(["serve", s(&reg.snapshot), "--bind", "127.0.0.1:0"])
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut line = String::new();
    BufReader::new(child.stderr.take().unwrap()).read_line(&mut line).unwrap();
    let url = line.trim().rsplit(' ').next().unwrap().to_owned();
    let client = TestServer::client();
    let ok = client.get(format!("{url}/tasks/query-window")).header("Accept", "text/turtle").send().unwrap();
    assert_eq!(ok.status(), 200);
    let missing = client.get(format!("{url}/no/such/thing")).send().unwrap();
    assert_eq!(missing.status(), 404);
    let head = client.head(format!("{url}/tasks/query-window")).header("Accept", "text/turtle").send().unwrap();
    assert_eq!(head.status(), 200);

    let hup = Command::new("kill").args(["-HUP", &child.id().to_string()]).status().unwrap();
    assert!(hup.success());
    let still = client.get(format!("{url}/tasks/query-window")).header("Accept", "text/turtle").send().unwrap();
    assert_eq!(still.status(), 200);

    Command::new("kill").args(["-TERM", &child.id().to_string()]).status().unwrap();
    let status = child.wait().unwrap();
    assert_eq!(status.code(), Some(0));
}
