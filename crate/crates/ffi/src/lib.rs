//! C ABI over the `rmemoa` search library.
//!
//! Graphs and results are opaque heap handles released with their `_free`
//! function. Every fallible call returns an [`RmeStatus`]; on failure a
//! message is available from [`rme_last_error`] on the same thread.
//! Bound arrays use [`RME_UNBOUNDED`] for an infinite component.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::time::Duration;

use rmemoa::cost::{Bound, BoundVec, CostVec};
use rmemoa::graph::Graph;
use rmemoa::problem::{compute_heuristic, read_instance};
use rmemoa::search::{rme_moa_star, SearchConfig, SearchResult, Termination};

/// Bound component meaning "no limit".
pub const RME_UNBOUNDED: u64 = u64::MAX;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RmeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    IoError = 3,
    ParseError = 4,
    SearchError = 5,
    OutOfRange = 6,
    Panic = 7,
}

/// Opaque graph handle.
pub struct RmeGraph {
    graph: Graph,
}

/// Opaque search result handle.
pub struct RmeResult {
    num_objectives: usize,
    result: SearchResult,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("NULs were replaced"));
}

fn fail(status: RmeStatus, msg: impl Into<String>) -> RmeStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> RmeStatus) -> RmeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            fail(RmeStatus::Panic, msg)
        }
    }
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Option<&'a [T]> {
    if len == 0 {
        Some(&[])
    } else if p.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(p, len))
    }
}

fn bounds(values: &[u64]) -> BoundVec {
    BoundVec::new(
        values
            .iter()
            .map(|&v| if v == RME_UNBOUNDED { Bound::Unbounded } else { Bound::Finite(v) })
            .collect(),
    )
}

/// Message of the last failed call on this thread. Valid until the next
/// failing call on the same thread; never NULL.
#[no_mangle]
pub extern "C" fn rme_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates an empty graph.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn rme_graph_new(
    vertex_count: usize,
    num_objectives: usize,
    start: u32,
    goal: u32,
    out: *mut *mut RmeGraph,
) -> RmeStatus {
    guard(|| {
        if out.is_null() {
            return fail(RmeStatus::NullPointer, "out is NULL");
        }
        match Graph::new(vertex_count, num_objectives, start, goal) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(RmeGraph { graph }));
                RmeStatus::Ok
            }
            Err(e) => fail(RmeStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Reads an instance file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rme_graph_read(path: *const c_char, out: *mut *mut RmeGraph) -> RmeStatus {
    guard(|| {
        if path.is_null() || out.is_null() {
            return fail(RmeStatus::NullPointer, "path or out is NULL");
        }
        let Ok(path) = CStr::from_ptr(path).to_str() else {
            return fail(RmeStatus::InvalidArgument, "path is not UTF-8");
        };
        match read_instance(Path::new(path)) {
            Ok(inst) => {
                *out = Box::into_raw(Box::new(RmeGraph { graph: inst.graph }));
                RmeStatus::Ok
            }
            Err(e @ rmemoa::problem::InstanceError::Io { .. }) => fail(RmeStatus::IoError, e.to_string()),
            Err(e) => fail(RmeStatus::ParseError, e.to_string()),
        }
    })
}

/// Adds a directed edge with `len` cost components.
///
/// # Safety
/// `graph` must come from this library; `cost` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn rme_graph_add_edge(
    graph: *mut RmeGraph,
    from: u32,
    to: u32,
    cost: *const u64,
    len: usize,
) -> RmeStatus {
    guard(|| {
        let (Some(g), Some(cost)) = (graph.as_mut(), slice(cost, len)) else {
            return fail(RmeStatus::NullPointer, "graph or cost is NULL");
        };
        match g.graph.add_edge(from, to, CostVec::from_slice(cost)) {
            Ok(()) => RmeStatus::Ok,
            Err(e) => fail(RmeStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Number of objectives of a graph, or 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or come from this library.
#[no_mangle]
pub unsafe extern "C" fn rme_graph_num_objectives(graph: *const RmeGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.num_objectives())
}

/// # Safety
/// `graph` must be NULL or come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rme_graph_free(graph: *mut RmeGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Searches for the Pareto-optimal solutions of `graph`. `c` and `d` hold
/// `len` components each, which must equal the objective count. A
/// non-positive `time_limit_seconds` means no limit.
///
/// # Safety
/// `graph` must come from this library; `c`, `d` must point to `len`
/// values; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rme_solve(
    graph: *const RmeGraph,
    c: *const u64,
    d: *const u64,
    len: usize,
    time_limit_seconds: f64,
    out: *mut *mut RmeResult,
) -> RmeStatus {
    guard(|| {
        let (Some(g), Some(c), Some(d)) = (graph.as_ref(), slice(c, len), slice(d, len)) else {
            return fail(RmeStatus::NullPointer, "graph, c or d is NULL");
        };
        if out.is_null() {
            return fail(RmeStatus::NullPointer, "out is NULL");
        }
        let mut config = SearchConfig::new(bounds(c), bounds(d));
        if time_limit_seconds > 0.0 {
            match Duration::try_from_secs_f64(time_limit_seconds) {
                Ok(t) => config.time_limit = Some(t),
                Err(e) => return fail(RmeStatus::InvalidArgument, e.to_string()),
            }
        }
        let h = compute_heuristic(&g.graph);
        match rme_moa_star(&g.graph, &h, &config) {
            Ok(result) => {
                *out = Box::into_raw(Box::new(RmeResult {
                    num_objectives: g.graph.num_objectives(),
                    result,
                }));
                RmeStatus::Ok
            }
            Err(e) => fail(RmeStatus::SearchError, e.to_string()),
        }
    })
}

/// # Safety
/// `result` must be NULL or come from [`rme_solve`].
#[no_mangle]
pub unsafe extern "C" fn rme_result_solution_count(result: *const RmeResult) -> usize {
    result.as_ref().map_or(0, |r| r.result.solutions.len())
}

/// 1 if the search hit its time limit, 0 otherwise.
///
/// # Safety
/// `result` must be NULL or come from [`rme_solve`].
#[no_mangle]
pub unsafe extern "C" fn rme_result_timed_out(result: *const RmeResult) -> i32 {
    result
        .as_ref()
        .map_or(0, |r| i32::from(r.result.termination == Termination::TimedOut))
}

/// Peak number of labels stored at once during the search.
///
/// # Safety
/// `result` must be NULL or come from [`rme_solve`].
#[no_mangle]
pub unsafe extern "C" fn rme_result_max_stored_labels(result: *const RmeResult) -> u64 {
    result.as_ref().map_or(0, |r| r.result.metrics.max_stored_labels as u64)
}

/// # Safety
/// `result` must be NULL or come from [`rme_solve`].
#[no_mangle]
pub unsafe extern "C" fn rme_result_expansions(result: *const RmeResult) -> u64 {
    result.as_ref().map_or(0, |r| r.result.metrics.expansions)
}

/// Copies the cost of solution `index` into `out`, which holds `len` values.
///
/// # Safety
/// `result` must come from [`rme_solve`]; `out` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn rme_result_cost(result: *const RmeResult, index: usize, out: *mut u64, len: usize) -> RmeStatus {
    guard(|| {
        let Some(r) = result.as_ref() else {
            return fail(RmeStatus::NullPointer, "result is NULL");
        };
        let Some(s) = r.result.solutions.get(index) else {
            return fail(RmeStatus::OutOfRange, format!("solution index {index} out of range"));
        };
        if len != r.num_objectives {
            return fail(
                RmeStatus::InvalidArgument,
                format!("buffer holds {len} values, cost has {}", r.num_objectives),
            );
        }
        if out.is_null() {
            return fail(RmeStatus::NullPointer, "out is NULL");
        }
        ptr::copy_nonoverlapping(s.cost.as_slice().as_ptr(), out, len);
        RmeStatus::Ok
    })
}

/// Number of vertices on the path of solution `index`, or 0 if out of range.
///
/// # Safety
/// `result` must be NULL or come from [`rme_solve`].
#[no_mangle]
pub unsafe extern "C" fn rme_result_path_len(result: *const RmeResult, index: usize) -> usize {
    result
        .as_ref()
        .and_then(|r| r.result.solutions.get(index))
        .map_or(0, |s| s.path.len())
}

/// Copies the vertex sequence of solution `index` into `out`, which holds
/// `len` values; `len` must equal [`rme_result_path_len`].
///
/// # Safety
/// `result` must come from [`rme_solve`]; `out` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn rme_result_path(result: *const RmeResult, index: usize, out: *mut u32, len: usize) -> RmeStatus {
    guard(|| {
        let Some(r) = result.as_ref() else {
            return fail(RmeStatus::NullPointer, "result is NULL");
        };
        let Some(s) = r.result.solutions.get(index) else {
            return fail(RmeStatus::OutOfRange, format!("solution index {index} out of range"));
        };
        if len != s.path.len() {
            return fail(
                RmeStatus::InvalidArgument,
                format!("buffer holds {len} values, path has {}", s.path.len()),
            );
        }
        if out.is_null() {
            return fail(RmeStatus::NullPointer, "out is NULL");
        }
        ptr::copy_nonoverlapping(s.path.as_ptr(), out, len);
        RmeStatus::Ok
    })
}

/// # Safety
/// `result` must be NULL or come from [`rme_solve`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rme_result_free(result: *mut RmeResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}
