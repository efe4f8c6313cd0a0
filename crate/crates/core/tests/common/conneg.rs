//! The content-negotiation conformance table.

use std::path::Path;

use benchreg::rdf::{dataset_isomorphic, parse_document, RdfFormat};

use super::registry::TestServer;

pub enum Expect {
    /// 200 with this RDF media type; the body must match the metadata of
    /// the resource with this snapshot key.
    Rdf(&'static str, &'static str),
    /// 303 to this location.
    SeeOther(&'static str),
    NotAcceptable,
    NotFound,
}

pub struct Case {
    pub method: &'static str,
    pub path: &'static str,
    pub accept: Option<&'static str>,
    pub expect: Expect,
}

const fn get(path: &'static str, accept: Option<&'static str>, expect: Expect) -> Case {
    Case { method: "GET", path, accept, expect }
}

const DATASET_PAGE: &str = "/site/datasets/sample-stream/index.md";

pub fn cases() -> Vec<Case> {
    use Expect::*;
    let ds = "/datasets/sample-stream";
    vec![
        get(ds, Some("text/turtle"), Rdf("text/turtle", "datasets/sample-stream")),
        get(ds, Some("application/n-quads"), Rdf("application/n-quads", "datasets/sample-stream")),
        get(ds, Some("application/n-triples"), Rdf("application/n-triples", "datasets/sample-stream")),
        get(ds, Some("text/html"), SeeOther(DATASET_PAGE)),
        get(ds, None, SeeOther(DATASET_PAGE)),
        get(ds, Some("*/*"), SeeOther(DATASET_PAGE)),
        get(ds, Some("application/trig;q=0.5, text/turtle;q=0.9"), Rdf("text/turtle", "datasets/sample-stream")),
        get(ds, Some("text/html;q=0.1, application/n-triples"), Rdf("application/n-triples", "datasets/sample-stream")),
        get(ds, Some("text/turtle;q=0, */*;q=0.1"), SeeOther(DATASET_PAGE)),
        get(ds, Some("text/*;q=0.3, text/turtle;q=0.2, application/trig;q=0.25"), SeeOther(DATASET_PAGE)),
        get(ds, Some("text/turtle; charset=utf-8"), Rdf("text/turtle", "datasets/sample-stream")),
        get(ds, Some("application/json"), NotAcceptable),
        get(ds, Some("text/html;q=0, text/turtle;q=0"), NotAcceptable),
        get("/tasks/stream-latency", Some("application/*"), Rdf("application/n-quads", "tasks/stream-latency")),
        get("/profiles/graph-streams", Some("text/*;q=0.8, application/trig"), Rdf("application/trig", "profiles/graph-streams")),
        get("/results/rafixture04-report", Some("text/turtle"), Rdf("text/turtle", "results/rafixture04-report")),
        get("/results/rafixture04-report", Some("text/html"), SeeOther("/site/results/rafixture04-report.md")),
        get("/datasets", Some("text/turtle"), NotAcceptable),
        get("/datasets", Some("text/html"), SeeOther("/site/datasets/index.md")),
        get("/", None, SeeOther("/site/index.md")),
        get("/v/1.0/datasets/sample-stream", Some("text/turtle"), Rdf("text/turtle", "datasets/sample-stream")),
        get("/v/dev/tasks/query-window", Some("application/trig"), Rdf("application/trig", "tasks/query-window")),
        get("/datasets/sample-stream/1.0", Some("application/n-quads"), Rdf("application/n-quads", "datasets/sample-stream")),
        get("/v/0.9/datasets/sample-stream", Some("text/turtle"), NotFound),
        get("/datasets/no-such-dataset", Some("text/turtle"), NotFound),
        get("/nowhere/at/all", None, NotFound),
        Case { method: "HEAD", path: ds, accept: Some("text/turtle"), expect: Rdf("text/turtle", "datasets/sample-stream") },
    ]
}

/// Runs one case; the error names what differed.
pub fn check(server: &TestServer, snapshot: &Path, case: &Case) -> Result<(), String> {
    let client = TestServer::client();
    let method = reqwest::Method::from_bytes(case.method.as_bytes()).unwrap();
    let mut request = client.request(method, server.url(case.path));
    if let Some(a) = case.accept {
        request = request.header("Accept", a);
    }
    let response = request.send().map_err(|e| e.to_string())?;
    let status = response.status().as_u16();
    let content_type = response
        .headers()
        .get("content-type")
        .and_then(|v| v.to_str().ok())
        .map(|v| v.split(';').next().unwrap_or("").trim().to_owned());
    let location = response.headers().get("location").and_then(|v| v.to_str().ok()).map(str::to_owned);
    let body = response.bytes().map_err(|e| e.to_string())?;
    let what = format!("{} {} Accept={:?}", case.method, case.path, case.accept);
    match case.expect {
        Expect::Rdf(media, key) => {
            if status != 200 || content_type.as_deref() != Some(media) {
                return Err(format!("{what}: got {status} {content_type:?}, want 200 {media}"));
            }
            if case.method == "HEAD" {
                return if body.is_empty() { Ok(()) } else { Err(format!("{what}: HEAD response has a body")) };
            }
            let format = RdfFormat::from_media_type(media).unwrap();
            let got = parse_document(&body, format, None).map_err(|e| format!("{what}: body does not parse: {e}"))?;
            let stored = std::fs::read(snapshot.join("resources").join(format!("{key}.nq"))).map_err(|e| e.to_string())?;
            let want = parse_document(&stored, RdfFormat::NQuads, None).unwrap();
            if want.is_empty() || !dataset_isomorphic(&got, &want).unwrap() {
                return Err(format!("{what}: body is not the resource metadata"));
            }
            Ok(())
        }
        Expect::SeeOther(target) => {
            if status != 303 || location.as_deref() != Some(target) {
                return Err(format!("{what}: got {status} location {location:?}, want 303 {target}"));
            }
            Ok(())
        }
        Expect::NotAcceptable => {
            if status != 406 || content_type.as_deref() != Some("text/plain") {
                return Err(format!("{what}: got {status} {content_type:?}, want 406 text/plain"));
            }
            Ok(())
        }
        Expect::NotFound => {
            if status != 404 {
                return Err(format!("{what}: got {status}, want 404"));
            }
            Ok(())
        }
    }
}
