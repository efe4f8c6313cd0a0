mod common;

use std::collections::BTreeSet;

use benchreg::server::RedirectTable;
use benchreg::sitegen::Manifest;
use common::conneg;
use common::registry::{Registry, TestServer};

#[test]
fn conformance_table() {
    let reg = Registry::build();
    let server = TestServer::start(&reg.snapshot);
    let cases = conneg::cases();
    assert!(cases.len() >= 12);
    let failures: Vec<String> = cases.iter().filter_map(|c| conneg::check(&server, &reg.snapshot, c).err()).collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn negotiated_responses_vary_on_accept() {
    let reg = Registry::build();
    let server = TestServer::start(&reg.snapshot);
    let client = TestServer::client();
    let r = client.get(server.url("/datasets/sample-stream")).header("Accept", "text/turtle").send().unwrap();
    assert_eq!(r.headers()["vary"], "Accept");
    let page = client.get(server.url("/site/datasets/sample-stream/index.md")).send().unwrap();
    assert_eq!(page.status(), 200);
    assert!(page.headers()["content-type"].to_str().unwrap().starts_with("text/markdown"));
    assert!(page.text().unwrap().starts_with("# Sample stream"));
}

#[test]
fn dumps_are_served() {
    let reg = Registry::build();
    let server = TestServer::start(&reg.snapshot);
    let client = TestServer::client();
    let nq = client.get(server.url("/dumps/catalog.nq")).send().unwrap();
    assert_eq!(nq.status(), 200);
    assert_eq!(nq.headers()["content-type"], "application/n-quads");
    assert_eq!(nq.bytes().unwrap().as_ref(), std::fs::read(reg.snapshot.join("dumps/catalog.nq")).unwrap().as_slice());
}

#[test]
fn other_methods_are_not_found() {
    let reg = Registry::build();
    let server = TestServer::start(&reg.snapshot);
    let r = TestServer::client().post(server.url("/datasets/sample-stream")).send().unwrap();
    assert_eq!(r.status(), 404);
}

#[test]
fn reload_swaps_the_snapshot() {
    let reg = Registry::build();
    let server = TestServer::start(&reg.snapshot);
    let client = TestServer::client();
    let get = |p: &str| client.get(server.url(p)).header("Accept", "text/turtle").send().unwrap().status().as_u16();
    assert_eq!(get("/v/1.0/datasets/sample-stream"), 200);

    assert_eq!(reg.run(&["gen-site", reg.catalog.to_str().unwrap(), reg.snapshot.to_str().unwrap(), "--version", "2.0"]), 0);
    assert_eq!(get("/v/2.0/datasets/sample-stream"), 404, "old snapshot until reload");
    server.store.reload().unwrap();
    assert_eq!(get("/v/2.0/datasets/sample-stream"), 200);
    assert_eq!(get("/v/1.0/datasets/sample-stream"), 404);

    // A broken directory keeps the previous snapshot in service.
    std::fs::remove_file(reg.snapshot.join("manifest.json")).unwrap();
    assert!(server.store.reload().is_err());
    assert_eq!(get("/v/2.0/datasets/sample-stream"), 200);
}

#[test]
fn every_page_is_reachable_by_a_permanent_url() {
    let reg = Registry::build();
    let server = TestServer::start(&reg.snapshot);
    let client = TestServer::client();
    let manifest: Manifest = serde_json::from_slice(&std::fs::read(reg.snapshot.join("manifest.json")).unwrap()).unwrap();
    let table = RedirectTable::parse(&std::fs::read_to_string(reg.snapshot.join("redirects.conf")).unwrap(), &manifest.version).unwrap();

    let pages: BTreeSet<String> = walkdir::WalkDir::new(reg.snapshot.join("site"))
        .into_iter()
        .map(Result::unwrap)
        .filter(|e| e.file_type().is_file())
        .map(|e| e.path().strip_prefix(reg.snapshot.join("site")).unwrap().to_string_lossy().into_owned())
        .collect();
    let mut reached = BTreeSet::new();
    for r in &manifest.resources {
        let purl = format!("/{}", r.key);
        assert_eq!(table.matching(&purl).len(), 1, "{purl}");
        let resp = client.get(server.url(&purl)).header("Accept", "text/html").send().unwrap();
        assert_eq!(resp.status(), 303, "{purl}");
        let location = resp.headers()["location"].to_str().unwrap().to_owned();
        let page = location.strip_prefix("/site/").unwrap();
        assert_eq!(client.get(server.url(&location)).send().unwrap().status(), 200, "{location}");
        reached.insert(page.to_owned());
    }
    assert_eq!(reached, pages);
}
