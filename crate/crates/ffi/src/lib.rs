//! C ABI over `glg-core`.
//!
//! Graphs are opaque `GlgGraph` handles created by the `glg_graph_*`
//! constructors and released with `glg_graph_free`. Every fallible call
//! returns a `GlgStatus`; on failure, `glg_last_error` gives a message for
//! the calling thread. Strings returned through `char **` are owned by the
//! caller and must be released with `glg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use glg_core::engine::{default_cap, simulate, GameParams, LifePattern, Outcome};
use glg_core::features::extract_features_with;
use glg_core::formats::{decode_graph6, encode_graph6, parse_edge_list};
use glg_core::generators::{make_complete, make_cycle, make_path, make_star, random_gnm};
use glg_core::iso::{test_isomorphism_with, IsoVerdict};
use glg_core::{Error, Graph};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlgStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed graph6, edge list or UTF-8.
    Parse = 2,
    InvalidArgument = 3,
    /// A game did not terminate within its step cap.
    CapExceeded = 4,
    /// Internal error; the library state is unaffected.
    Panic = 5,
}

/// Opaque graph handle.
pub struct GlgGraph(Graph);

/// Summary of one game.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GlgGameResult {
    pub complexity: usize,
    /// 1 if the game died, 0 if it cycled.
    pub halted: u8,
    /// Step of death, or step where the cycle was entered.
    pub entry: usize,
    /// Step where the earlier pattern recurred; 0 for a game that died.
    pub repeat_at: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GlgStatus {
    match e {
        Error::InGraph { source, .. } => status_of(source),
        Error::Graph6(_) | Error::EdgeList(_) => GlgStatus::Parse,
        Error::CapExceeded { .. } => GlgStatus::CapExceeded,
        _ => GlgStatus::InvalidArgument,
    }
}

fn fail(status: GlgStatus, msg: impl Into<String>) -> GlgStatus {
    set_error(msg.into());
    status
}

/// Run `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), GlgStatus>) -> GlgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GlgStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(GlgStatus::Panic, "internal panic"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, GlgStatus>;
}

impl<T> OrStatus<T> for glg_core::Result<T> {
    fn or_status(self) -> Result<T, GlgStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

unsafe fn graph_ref<'a>(g: *const GlgGraph, name: &str) -> Result<&'a Graph, GlgStatus> {
    // SAFETY: caller passes null or a live handle from this library
    unsafe { g.as_ref() }
        .map(|g| &g.0)
        .ok_or_else(|| fail(GlgStatus::NullPointer, format!("{name} is null")))
}

unsafe fn c_str<'a>(s: *const c_char, name: &str) -> Result<&'a str, GlgStatus> {
    if s.is_null() {
        return Err(fail(GlgStatus::NullPointer, format!("{name} is null")));
    }
    // SAFETY: caller passes a nul-terminated string
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| fail(GlgStatus::Parse, format!("{name} is not UTF-8")))
}

fn check_out<T>(out: *mut T, name: &str) -> Result<(), GlgStatus> {
    if out.is_null() {
        Err(fail(GlgStatus::NullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

unsafe fn put_graph(out: *mut *mut GlgGraph, g: Graph) {
    // SAFETY: out checked non-null by the caller of this helper
    unsafe { *out = Box::into_raw(Box::new(GlgGraph(g))) };
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), GlgStatus> {
    let c = CString::new(s).map_err(|_| fail(GlgStatus::Panic, "string contains nul"))?;
    // SAFETY: out checked non-null by the caller of this helper
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn glg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn glg_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: s came from CString::into_raw
        drop(unsafe { CString::from_raw(s) });
    }
}

/// # Safety
/// `g` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn glg_graph_free(g: *mut GlgGraph) {
    if !g.is_null() {
        // SAFETY: g came from Box::into_raw
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Decode one graph6 record.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glg_graph_from_graph6(text: *const c_char, out: *mut *mut GlgGraph) -> GlgStatus {
    guard(|| {
        check_out(out, "out")?;
        let g = decode_graph6(unsafe { c_str(text, "text") }?.trim_end()).or_status()?;
        unsafe { put_graph(out, g) };
        Ok(())
    })
}

/// Parse an edge list: a header `n m` then `m` lines `u v`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glg_graph_from_edge_list(text: *const c_char, out: *mut *mut GlgGraph) -> GlgStatus {
    guard(|| {
        check_out(out, "out")?;
        let g = parse_edge_list(unsafe { c_str(text, "text") }?).or_status()?;
        unsafe { put_graph(out, g) };
        Ok(())
    })
}

/// Build a graph on `n` vertices from `m` pairs stored as
/// `edges[2i], edges[2i + 1]`.
///
/// # Safety
/// `edges` must point to `2 * m` values (may be null when `m` is 0); `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn glg_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut GlgGraph,
) -> GlgStatus {
    guard(|| {
        check_out(out, "out")?;
        let flat: &[usize] = if m == 0 {
            &[]
        } else if edges.is_null() {
            return Err(fail(GlgStatus::NullPointer, "edges is null"));
        } else {
            // SAFETY: caller guarantees 2 * m readable values
            unsafe { std::slice::from_raw_parts(edges, 2 * m) }
        };
        let g = Graph::from_edges(n, flat.chunks_exact(2).map(|p| (p[0], p[1]))).or_status()?;
        unsafe { put_graph(out, g) };
        Ok(())
    })
}

/// Named families.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlgFamily {
    Path = 0,
    Complete = 1,
    Star = 2,
    Cycle = 3,
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glg_graph_family(family: GlgFamily, n: usize, out: *mut *mut GlgGraph) -> GlgStatus {
    guard(|| {
        check_out(out, "out")?;
        let g = match family {
            GlgFamily::Path => make_path(n),
            GlgFamily::Complete => make_complete(n),
            GlgFamily::Star => make_star(n),
            GlgFamily::Cycle => make_cycle(n),
        }
        .or_status()?;
        unsafe { put_graph(out, g) };
        Ok(())
    })
}

/// Uniform sample from G(n, m), reproducible from `seed`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glg_graph_random(n: usize, m: usize, seed: u64, out: *mut *mut GlgGraph) -> GlgStatus {
    guard(|| {
        check_out(out, "out")?;
        let g = random_gnm(n, m, seed).or_status()?;
        unsafe { put_graph(out, g) };
        Ok(())
    })
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn glg_graph_n(g: *const GlgGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |g| g.0.n())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn glg_graph_m(g: *const GlgGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |g| g.0.m())
}

/// graph6 record of `g`, without a trailing newline.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glg_graph_to_graph6(g: *const GlgGraph, out: *mut *mut c_char) -> GlgStatus {
    guard(|| {
        check_out(out, "out")?;
        let s = encode_graph6(unsafe { graph_ref(g, "g") }?).or_status()?;
        unsafe { put_string(out, s) }
    })
}

/// Play the single-seed game from vertex `seed` under rule `(a, d, r)`.
/// `cap` 0 selects `min(2^n + 1, 10^6)`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glg_simulate(
    g: *const GlgGraph,
    seed: usize,
    a: u32,
    d: u32,
    r: u32,
    cap: usize,
    out: *mut GlgGameResult,
) -> GlgStatus {
    guard(|| {
        check_out(out, "out")?;
        let g = unsafe { graph_ref(g, "g") }?;
        let cap = if cap == 0 { default_cap(g.n()) } else { cap };
        let seed = LifePattern::single(g.n(), seed).or_status()?;
        let t = simulate(g, &seed, GameParams { a, d, r }, cap).or_status()?;
        let (halted, entry, repeat_at) = match t.outcome {
            Outcome::Died { at } => (1, at, 0),
            Outcome::Cycled { entry, repeat_at } => (0, entry, repeat_at),
        };
        // SAFETY: checked non-null
        unsafe {
            *out = GlgGameResult {
                complexity: t.complexity(),
                halted,
                entry,
                repeat_at,
            }
        };
        Ok(())
    })
}

/// Feature vector of `g` over `k` steps under the default rule, as the text
/// line `n k b v1 v2 ...`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glg_features(
    g: *const GlgGraph,
    k: usize,
    normalize: bool,
    out: *mut *mut c_char,
) -> GlgStatus {
    guard(|| {
        check_out(out, "out")?;
        let g = unsafe { graph_ref(g, "g") }?;
        let fv = extract_features_with(g, k, normalize, GameParams::DEFAULT).or_status()?;
        unsafe { put_string(out, fv.to_line()) }
    })
}

/// One-sided isomorphism test. Sets `*non_isomorphic` to 1 with the
/// separating step in `*step` (0 for differing vertex or edge counts), or to
/// 0 when all `k` steps agree.
///
/// # Safety
/// `g` and `h` must be live handles; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn glg_iso_test(
    g: *const GlgGraph,
    h: *const GlgGraph,
    k: usize,
    non_isomorphic: *mut u8,
    step: *mut usize,
) -> GlgStatus {
    guard(|| {
        check_out(non_isomorphic, "non_isomorphic")?;
        check_out(step, "step")?;
        let (g, h) = unsafe { (graph_ref(g, "g")?, graph_ref(h, "h")?) };
        if k == 0 {
            return Err(fail(GlgStatus::InvalidArgument, "k must be at least 1"));
        }
        let (flag, s) = match test_isomorphism_with(g, h, k, GameParams::DEFAULT) {
            IsoVerdict::NonIsomorphic { step } => (1, step),
            IsoVerdict::LikelyIsomorphic { .. } => (0, 0),
        };
        // SAFETY: both checked non-null
        unsafe {
            *non_isomorphic = flag;
            *step = s;
        }
        Ok(())
    })
}

/// Euclidean distance between the `k`-step feature vectors of `g` and `h`.
///
/// # Safety
/// `g` and `h` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glg_distance(
    g: *const GlgGraph,
    h: *const GlgGraph,
    k: usize,
    normalize: bool,
    out: *mut f64,
) -> GlgStatus {
    guard(|| {
        check_out(out, "out")?;
        let (g, h) = unsafe { (graph_ref(g, "g")?, graph_ref(h, "h")?) };
        let d = glg_core::metric::glg_distance(g, h, k, normalize).or_status()?;
        // SAFETY: checked non-null
        unsafe { *out = d };
        Ok(())
    })
}
