use std::ffi::{c_char, CStr, CString};
use std::ptr;

use benchreg_ffi::*;

const ABC_SHA256: &str = "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad";

fn last_error() -> String {
    let p = br_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn parse(text: &str, format: BrFormat) -> Result<*mut BrDataset, (BrStatus, String)> {
    let mut ds = ptr::null_mut();
    let status = unsafe { br_dataset_parse(text.as_ptr(), text.len(), format, ptr::null(), &mut ds) };
    if status == BrStatus::Ok {
        Ok(ds)
    } else {
        Err((status, last_error()))
    }
}

fn serialize(ds: *const BrDataset, format: BrFormat) -> Result<String, BrStatus> {
    let (mut data, mut len) = (ptr::null_mut(), 0usize);
    let status = unsafe { br_dataset_serialize(ds, format, &mut data, &mut len) };
    if status != BrStatus::Ok {
        return Err(status);
    }
    let text = String::from_utf8(unsafe { std::slice::from_raw_parts(data, len) }.to_vec()).unwrap();
    unsafe { br_bytes_free(data, len) };
    Ok(text)
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { br_string_free(p) };
    s
}

#[test]
fn parse_serialize_isomorphic() {
    let a = parse("@prefix ex: <http://ex/> .\nex:s ex:p [ ex:q \"v\"@en ] .\n", BrFormat::Turtle).unwrap();
    let mut n = 0;
    assert_eq!(unsafe { br_dataset_len(a, &mut n) }, BrStatus::Ok);
    assert_eq!(n, 2);
    let nt = serialize(a, BrFormat::NTriples).unwrap();
    assert_eq!(nt.lines().count(), 2);
    let b = parse(&nt, BrFormat::NTriples).unwrap();
    let mut equal = false;
    assert_eq!(unsafe { br_dataset_isomorphic(a, b, &mut equal) }, BrStatus::Ok);
    assert!(equal);
    let c = parse("<http://ex/s> <http://ex/p> _:x .\n", BrFormat::NTriples).unwrap();
    assert_eq!(unsafe { br_dataset_isomorphic(a, c, &mut equal) }, BrStatus::Ok);
    assert!(!equal);
    for ds in [a, b, c] {
        unsafe { br_dataset_free(ds) };
    }
    unsafe { br_dataset_free(ptr::null_mut()) };
}

#[test]
fn errors_carry_status_and_message() {
    let (status, message) = parse("<http://ex/s> <http://ex/p> .", BrFormat::NTriples).unwrap_err();
    assert_eq!(status, BrStatus::ParseError);
    assert!(!message.is_empty());

    let quads = parse("<http://a> <http://b> <http://c> <http://g> .\n", BrFormat::NQuads).unwrap();
    assert_eq!(serialize(quads, BrFormat::Turtle), Err(BrStatus::FormatCapability));
    assert!(last_error().contains("named graphs"));
    assert!(serialize(quads, BrFormat::Trig).is_ok());
    assert!(br_last_error().is_null(), "success clears the message");
    unsafe { br_dataset_free(quads) };

    let mut n = 0;
    assert_eq!(unsafe { br_dataset_len(ptr::null(), &mut n) }, BrStatus::NullArgument);
    let mut ds = ptr::null_mut();
    let bad_base = CString::new("not an iri with spaces").unwrap();
    let text = "<a> <http://p> <http://o> .";
    let status = unsafe { br_dataset_parse(text.as_ptr(), text.len(), BrFormat::Turtle, bad_base.as_ptr(), &mut ds) };
    assert_eq!(status, BrStatus::InvalidArgument);
    let invalid = [0x66u8, 0xff, 0];
    let status = unsafe { br_dataset_parse(text.as_ptr(), text.len(), BrFormat::Turtle, invalid.as_ptr().cast(), &mut ds) };
    assert_eq!(status, BrStatus::InvalidUtf8);
}

#[test]
fn sha256_matches_known_vector() {
    let mut hex = [0 as c_char; 65];
    assert_eq!(unsafe { br_sha256_hex(b"abc".as_ptr(), 3, hex.as_mut_ptr()) }, BrStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(hex.as_ptr()) }.to_str().unwrap(), ABC_SHA256);
    assert_eq!(unsafe { br_sha256_hex(ptr::null(), 0, hex.as_mut_ptr()) }, BrStatus::Ok);
    assert!(unsafe { CStr::from_ptr(hex.as_ptr()) }.to_str().unwrap().starts_with("e3b0c442"));
}

fn validate(turtle: &str, subject: &str) -> serde_json::Value {
    let subject = CString::new(subject).unwrap();
    let mut json = ptr::null_mut();
    let status =
        unsafe { br_validate_metadata(turtle.as_ptr(), turtle.len(), ptr::null(), subject.as_ptr(), &mut json) };
    assert_eq!(status, BrStatus::Ok, "{}", last_error());
    serde_json::from_str(&take_string(json)).unwrap()
}

#[test]
fn validation_reports_curator_rules() {
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/fixtures/curator");
    let subject = "https://w3id.org/benchreg/datasets/candidate";
    let compliant = std::fs::read_to_string(format!("{fixtures}/compliant/metadata.ttl")).unwrap();
    let report = validate(&compliant, subject);
    assert_eq!(report["conforms"], true);
    for (case, rule) in [("license", "open-license"), ("size", "sufficient-size")] {
        let text = std::fs::read_to_string(format!("{fixtures}/{case}/metadata.ttl")).unwrap();
        let report = validate(&text, subject);
        assert_eq!(report["conforms"], false);
        let errors: Vec<_> =
            report["violations"].as_array().unwrap().iter().filter(|v| v["severity"] == "Error").collect();
        assert_eq!(errors.len(), 1, "{report}");
        assert_eq!(errors[0]["ruleId"], rule);
    }
    let missing = validate("<http://ex/d> a <https://w3id.org/benchreg/ns/1#Dataset> .", "http://ex/d");
    assert_eq!(missing["violations"][0]["ruleId"], "missing-field");
}

#[test]
fn redirects_and_negotiation() {
    let table = CString::new("/datasets/{id} -> /{current}/datasets/{id}\n").unwrap();
    let version = CString::new("1.0").unwrap();
    let mut handle = ptr::null_mut();
    assert_eq!(unsafe { br_redirects_parse(table.as_ptr(), version.as_ptr(), &mut handle) }, BrStatus::Ok);
    let path = CString::new("/datasets/sample").unwrap();
    let mut target = ptr::null_mut();
    assert_eq!(unsafe { br_redirects_resolve(handle, path.as_ptr(), &mut target) }, BrStatus::Ok);
    assert_eq!(take_string(target), "/1.0/datasets/sample");
    let path = CString::new("/nowhere/at/all").unwrap();
    assert_eq!(unsafe { br_redirects_resolve(handle, path.as_ptr(), &mut target) }, BrStatus::NotFound);
    unsafe { br_redirects_free(handle) };

    let choose = |accept: Option<&str>| {
        let accept = accept.map(|a| CString::new(a).unwrap());
        let mut media = ptr::null();
        let status = unsafe { br_negotiate(accept.as_ref().map_or(ptr::null(), |a| a.as_ptr()), &mut media) };
        (status == BrStatus::Ok).then(|| unsafe { CStr::from_ptr(media) }.to_str().unwrap().to_owned())
    };
    assert_eq!(choose(None).as_deref(), Some("text/html"));
    assert_eq!(choose(Some("text/turtle")).as_deref(), Some("text/turtle"));
    assert_eq!(choose(Some("application/*;q=0.5, application/trig")).as_deref(), Some("application/trig"));
    assert_eq!(choose(Some("image/png")), None);
}
