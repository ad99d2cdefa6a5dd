//! C ABI over `autgraph`.
//!
//! Graphs and groups are opaque handles owned by the caller and released
//! with [`ag_graph_free`] / [`ag_group_free`]. Strings returned through
//! `char **` out-parameters are released with [`ag_string_free`]. Every
//! fallible call returns an [`AgStatus`]; on failure,
//! [`ag_last_error_message`] describes the error on the calling thread.
//!
//! The header `include/autgraph.h` is generated by the build script.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use autgraph::auteng::automorphism_group;
use autgraph::families::FamilySpec;
use autgraph::graph::Graph;
use autgraph::perm::PermGroup;
use autgraph::verify::{family_checks, is_stable, VerifyError};
use autgraph::Error;

/// Result codes. The first five match the command line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AgStatus {
    Ok = 0,
    /// A check ran and its conclusion was refuted.
    Refuted = 1,
    ParseError = 2,
    InvariantViolation = 3,
    PreconditionFailed = 4,
    NullPointer = 5,
    InvalidArgument = 6,
    Panic = 7,
}

/// An undirected simple graph.
pub struct AgGraph(Graph);

/// A permutation group with its order and generators.
pub struct AgGroup(PermGroup);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(AgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.exit_code() {
            3 => AgStatus::InvariantViolation,
            4 => AgStatus::PreconditionFailed,
            _ => AgStatus::ParseError,
        };
        Failure(status, e.to_string())
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        Error::from(e).into()
    }
}

fn null(what: &str) -> Failure {
    Failure(AgStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<AgStatus, Failure>) -> AgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            set_error("");
            status
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("panic: {msg}"));
            AgStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(AgStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<AgStatus, Failure> {
    *out = Box::into_raw(Box::new(value));
    Ok(AgStatus::Ok)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<AgStatus, Failure> {
    let c = CString::new(s).map_err(|_| Failure(AgStatus::InvalidArgument, "output contains a nul byte".into()))?;
    *out = c.into_raw();
    Ok(AgStatus::Ok)
}

fn check_out<T>(out: *mut *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    // SAFETY: checked non-null above; the caller provides a writable slot.
    unsafe { *out = ptr::null_mut() };
    Ok(())
}

/// Builds a family graph from a spec such as `"johnson:5,2"`.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ag_graph_from_family(spec: *const c_char, out: *mut *mut AgGraph) -> AgStatus {
    guard(|| {
        check_out(out)?;
        let spec: FamilySpec = read_str(spec, "spec")?.parse().map_err(Error::from)?;
        put(out, AgGraph(spec.build().map_err(Error::from)?))
    })
}

/// Parses a graph in the text (`n m` header plus edge lines) or JSON format.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ag_graph_from_text(text: *const c_char, out: *mut *mut AgGraph) -> AgStatus {
    guard(|| {
        check_out(out)?;
        let g = Graph::parse_any(read_str(text, "text")?).map_err(Error::from)?;
        put(out, AgGraph(g))
    })
}

/// # Safety
/// `graph` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ag_graph_free(graph: *mut AgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ag_graph_vertex_count(graph: *const AgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.n())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ag_graph_edge_count(graph: *const AgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

/// The canonical text encoding; free with [`ag_string_free`].
///
/// # Safety
/// `graph` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ag_graph_to_text(graph: *const AgGraph, out: *mut *mut c_char) -> AgStatus {
    guard(|| {
        check_out(out)?;
        put_string(out, deref(graph, "graph")?.0.to_text())
    })
}

/// # Safety
/// `graph` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ag_automorphism_group(graph: *const AgGraph, out: *mut *mut AgGroup) -> AgStatus {
    guard(|| {
        check_out(out)?;
        put(out, AgGroup(automorphism_group(&deref(graph, "graph")?.0)))
    })
}

/// # Safety
/// `group` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ag_group_free(group: *mut AgGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// The group order in decimal; free with [`ag_string_free`].
///
/// # Safety
/// `group` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ag_group_order_string(group: *const AgGroup, out: *mut *mut c_char) -> AgStatus {
    guard(|| {
        check_out(out)?;
        put_string(out, deref(group, "group")?.0.order().to_string())
    })
}

/// Number of points acted on, or 0 for a null handle.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ag_group_degree(group: *const AgGroup) -> usize {
    group.as_ref().map_or(0, |g| g.0.degree())
}

/// Number of stored generators, or 0 for a null handle.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ag_group_generator_count(group: *const AgGroup) -> usize {
    group.as_ref().map_or(0, |g| g.0.generators().len())
}

/// Copies the image list of generator `index` into `images`, which must
/// hold `len >= degree` entries.
///
/// # Safety
/// `group` must be a live handle and `images` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn ag_group_generator(
    group: *const AgGroup,
    index: usize,
    images: *mut usize,
    len: usize,
) -> AgStatus {
    guard(|| {
        let group = &deref(group, "group")?.0;
        if images.is_null() {
            return Err(null("images"));
        }
        let gen = group.generators().get(index).ok_or_else(|| {
            Failure(
                AgStatus::InvalidArgument,
                format!("generator {index} out of range ({} generators)", group.generators().len()),
            )
        })?;
        if len < gen.degree() {
            return Err(Failure(
                AgStatus::InvalidArgument,
                format!("buffer holds {len} entries, degree is {}", gen.degree()),
            ));
        }
        ptr::copy_nonoverlapping(gen.images().as_ptr(), images, gen.degree());
        Ok(AgStatus::Ok)
    })
}

/// Stability verdict as JSON; free with [`ag_string_free`]. Fails with
/// `PreconditionFailed` on disconnected graphs.
///
/// # Safety
/// `graph` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ag_stability_json(graph: *const AgGraph, out: *mut *mut c_char) -> AgStatus {
    guard(|| {
        check_out(out)?;
        let verdict = is_stable(&deref(graph, "graph")?.0)?;
        put_string(out, serde_json::to_string(&verdict).expect("verdict serializes"))
    })
}

/// Runs every applicable check for a family spec and writes the reports as
/// a JSON array. Returns `Refuted` (with the array still written) when any
/// report is refuted.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ag_verify_family_json(spec: *const c_char, out: *mut *mut c_char) -> AgStatus {
    guard(|| {
        check_out(out)?;
        let spec: FamilySpec = read_str(spec, "spec")?.parse().map_err(Error::from)?;
        let reports = family_checks(&spec)?;
        put_string(out, serde_json::to_string(&reports).expect("reports serialize"))?;
        if reports.iter().any(|r| r.is_refuted()) {
            return Err(Failure(AgStatus::Refuted, format!("{spec}: a check was refuted")));
        }
        Ok(AgStatus::Ok)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ag_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or an empty string.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn ag_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
