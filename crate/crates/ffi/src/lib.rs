//! C interface over the registry core.
//!
//! Objects cross the boundary as opaque handles. Every function returns a
//! [`BrStatus`]; on failure `br_last_error()` describes what went wrong on the
//! calling thread. Buffers and strings handed out by the library are released
//! with `br_bytes_free` and `br_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use benchreg::metadata::{extract_dataset_metadata, validate_dataset_metadata, ValidationPolicy};
use benchreg::package::sha256_hex;
use benchreg::rdf::{dataset_isomorphic, parse_document, serialize_document, Iri, RdfDataset, RdfFormat};
use benchreg::server::{choose, RedirectTable, OFFERED};
use benchreg::vocab::Vocabulary;

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    ParseError = 4,
    FormatCapability = 5,
    ComplexityLimit = 6,
    NotFound = 7,
    NotAcceptable = 8,
    Panic = 99,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrFormat {
    Turtle = 0,
    Trig = 1,
    NTriples = 2,
    NQuads = 3,
}

impl From<BrFormat> for RdfFormat {
    fn from(f: BrFormat) -> Self {
        match f {
            BrFormat::Turtle => RdfFormat::Turtle,
            BrFormat::Trig => RdfFormat::TriG,
            BrFormat::NTriples => RdfFormat::NTriples,
            BrFormat::NQuads => RdfFormat::NQuads,
        }
    }
}

/// An RDF dataset.
pub struct BrDataset(RdfDataset);

/// A parsed permanent-URL redirect table.
pub struct BrRedirectTable(RedirectTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let message = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(message).ok());
}

type Failure = (BrStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BrStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BrStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BrStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    (BrStatus::NullArgument, format!("{what} is null"))
}

unsafe fn bytes<'a>(data: *const u8, len: usize, what: &str) -> Result<&'a [u8], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (BrStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn optional_text<'a>(s: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if s.is_null() {
        Ok(None)
    } else {
        text(s, what).map(Some)
    }
}

fn iri(s: &str, what: &str) -> Result<Iri, Failure> {
    Iri::new(s).map_err(|e| (BrStatus::InvalidArgument, format!("{what}: {e}")))
}

unsafe fn out<T>(slot: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if slot.is_null() {
        return Err(null(what));
    }
    slot.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior NULs removed").into_raw()
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn br_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses `len` bytes of `format`. `base` may be NULL.
///
/// # Safety
/// `data` must point to `len` readable bytes, `base` must be NULL or a
/// NUL-terminated string, and `out_dataset` must be writable.
#[no_mangle]
pub unsafe extern "C" fn br_dataset_parse(
    data: *const u8,
    len: usize,
    format: BrFormat,
    base: *const c_char,
    out_dataset: *mut *mut BrDataset,
) -> BrStatus {
    guard(|| {
        let input = bytes(data, len, "data")?;
        let base = optional_text(base, "base")?.map(|b| iri(b, "base")).transpose()?;
        let ds = parse_document(input, format.into(), base.as_ref())
            .map_err(|e| (BrStatus::ParseError, e.to_string()))?;
        out(out_dataset, Box::into_raw(Box::new(BrDataset(ds))), "out_dataset")
    })
}

/// Number of quads in the dataset.
///
/// # Safety
/// `dataset` must be a live handle and `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn br_dataset_len(dataset: *const BrDataset, out_len: *mut usize) -> BrStatus {
    guard(|| {
        let ds = dataset.as_ref().ok_or_else(|| null("dataset"))?;
        out(out_len, ds.0.len(), "out_len")
    })
}

/// Writes the dataset in `format`. The buffer is released with `br_bytes_free`.
///
/// # Safety
/// `dataset` must be a live handle; `out_data` and `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn br_dataset_serialize(
    dataset: *const BrDataset,
    format: BrFormat,
    out_data: *mut *mut u8,
    out_len: *mut usize,
) -> BrStatus {
    guard(|| {
        let ds = dataset.as_ref().ok_or_else(|| null("dataset"))?;
        if out_data.is_null() || out_len.is_null() {
            return Err(null("output pointer"));
        }
        let written = serialize_document(&ds.0, format.into())
            .map_err(|e| (BrStatus::FormatCapability, e.to_string()))?;
        let boxed = written.into_boxed_slice();
        let len = boxed.len();
        out_len.write(len);
        out_data.write(Box::into_raw(boxed) as *mut u8);
        Ok(())
    })
}

/// Sets `*out_equal` to whether the two datasets are equal up to blank node
/// renaming.
///
/// # Safety
/// Both handles must be live; `out_equal` writable.
#[no_mangle]
pub unsafe extern "C" fn br_dataset_isomorphic(
    a: *const BrDataset,
    b: *const BrDataset,
    out_equal: *mut bool,
) -> BrStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("a"))?;
        let b = b.as_ref().ok_or_else(|| null("b"))?;
        let equal = dataset_isomorphic(&a.0, &b.0).map_err(|e| (BrStatus::ComplexityLimit, e.to_string()))?;
        out(out_equal, equal, "out_equal")
    })
}

/// # Safety
/// `dataset` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn br_dataset_free(dataset: *mut BrDataset) {
    if !dataset.is_null() {
        drop(Box::from_raw(dataset));
    }
}

/// Lowercase hex SHA-256 of the input, written as 64 characters plus NUL
/// into `out_hex`, which must hold at least 65 bytes.
///
/// # Safety
/// `data` must point to `len` readable bytes and `out_hex` to 65 writable bytes.
#[no_mangle]
pub unsafe extern "C" fn br_sha256_hex(data: *const u8, len: usize, out_hex: *mut c_char) -> BrStatus {
    guard(|| {
        let input = bytes(data, len, "data")?;
        if out_hex.is_null() {
            return Err(null("out_hex"));
        }
        let hex = sha256_hex(input);
        ptr::copy_nonoverlapping(hex.as_ptr() as *const c_char, out_hex, hex.len());
        out_hex.add(hex.len()).write(0);
        Ok(())
    })
}

/// Validates dataset metadata held in a Turtle document against the default
/// curator policy. `subject` names the described dataset. `*out_json` receives
/// `{"conforms": bool, "violations": [...]}`; release it with `br_string_free`.
/// Missing or mistyped fields are reported as violations, not as a failure.
///
/// # Safety
/// `turtle` must point to `len` readable bytes, `subject` and `base` must be
/// NUL-terminated (`base` may be NULL), `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn br_validate_metadata(
    turtle: *const u8,
    len: usize,
    base: *const c_char,
    subject: *const c_char,
    out_json: *mut *mut c_char,
) -> BrStatus {
    guard(|| {
        let input = bytes(turtle, len, "turtle")?;
        let base = optional_text(base, "base")?.map(|b| iri(b, "base")).transpose()?;
        let subject = iri(text(subject, "subject")?, "subject")?;
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        let graph = parse_document(input, RdfFormat::Turtle, base.as_ref())
            .map_err(|e| (BrStatus::ParseError, e.to_string()))?;
        let report = match extract_dataset_metadata(&graph, &subject, &Vocabulary::default()) {
            Ok(md) => validate_dataset_metadata(&md, &ValidationPolicy::default()),
            Err(e) => e.to_report(),
        };
        let json = serde_json::json!({
            "conforms": !report.has_errors(),
            "violations": report.violations(),
        });
        out_json.write(c_string(json.to_string()));
        Ok(())
    })
}

/// Parses a redirect table. `default_version` is what `{version}` means when
/// a request asks for `current` or `dev`.
///
/// # Safety
/// Both strings must be NUL-terminated; `out_table` writable.
#[no_mangle]
pub unsafe extern "C" fn br_redirects_parse(
    table: *const c_char,
    default_version: *const c_char,
    out_table: *mut *mut BrRedirectTable,
) -> BrStatus {
    guard(|| {
        let parsed = RedirectTable::parse(text(table, "table")?, text(default_version, "default_version")?)
            .map_err(|e| (BrStatus::ParseError, e.to_string()))?;
        out(out_table, Box::into_raw(Box::new(BrRedirectTable(parsed))), "out_table")
    })
}

/// Resolves a request path. `*out_target` is released with `br_string_free`.
/// Returns `BR_STATUS_NOT_FOUND` when no pattern matches.
///
/// # Safety
/// `table` must be a live handle, `path` NUL-terminated, `out_target` writable.
#[no_mangle]
pub unsafe extern "C" fn br_redirects_resolve(
    table: *const BrRedirectTable,
    path: *const c_char,
    out_target: *mut *mut c_char,
) -> BrStatus {
    guard(|| {
        let table = table.as_ref().ok_or_else(|| null("table"))?;
        let target = table.0.resolve(text(path, "path")?).map_err(|e| (BrStatus::NotFound, e.to_string()))?;
        out(out_target, c_string(target), "out_target")
    })
}

/// # Safety
/// `table` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn br_redirects_free(table: *mut BrRedirectTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Picks the representation the server would send for an `Accept` header
/// (NULL means no header). `*out_media_type` points at a static string and
/// must not be freed. Returns `BR_STATUS_NOT_ACCEPTABLE` when nothing fits.
///
/// # Safety
/// `accept` must be NULL or NUL-terminated; `out_media_type` writable.
#[no_mangle]
pub unsafe extern "C" fn br_negotiate(accept: *const c_char, out_media_type: *mut *const c_char) -> BrStatus {
    const STATIC: [&CStr; 5] = [c"text/html", c"text/turtle", c"application/n-quads", c"application/trig", c"application/n-triples"];
    guard(|| {
        let accept = optional_text(accept, "accept")?;
        let chosen = choose(accept, &OFFERED).ok_or((BrStatus::NotAcceptable, "no acceptable representation".into()))?;
        let i = OFFERED.iter().position(|t| *t == chosen).expect("chosen from OFFERED");
        out(out_media_type, STATIC[i].as_ptr(), "out_media_type")
    })
}

/// # Safety
/// `data` and `len` must come from `br_dataset_serialize`, or `data` be NULL.
#[no_mangle]
pub unsafe extern "C" fn br_bytes_free(data: *mut u8, len: usize) {
    if !data.is_null() {
        drop(Box::from_raw(ptr::slice_from_raw_parts_mut(data, len)));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn br_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
