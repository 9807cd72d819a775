//! C ABI for the `fiedler` crate.
//!
//! Graphs cross the boundary as opaque `FiedlerGraph` handles created by one of
//! the constructors and released with `fiedler_graph_free`. Every fallible call
//! returns a `FiedlerStatus`; on failure the message is kept per thread and can
//! be copied out with `fiedler_last_error`. Vertex indices are 0-based.
//!
//! Buffers are caller-owned. A call that fills a buffer takes its length and
//! returns `FIEDLER_STATUS_BUFFER_TOO_SMALL` without writing if it is short.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fiedler::optimize::{maximize_connectivity, product_objective};
use fiedler::resistance::{resistance_pseudoinverse, total_resistance};
use fiedler::spectral::{fiedler, pseudo_inverse, spectrum};
use fiedler::{Error, OptimizerConfig, WeightedGraph};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiedlerStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    InvalidGraph = 4,
    Disconnected = 5,
    Numerical = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Opaque graph handle.
pub struct FiedlerGraph {
    inner: WeightedGraph,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FiedlerOptimizerConfig {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub restarts: usize,
    pub seed: u64,
    pub degeneracy_threshold: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct FiedlerOptimizationSummary {
    pub lambda2: f64,
    pub total_resistance: f64,
    pub product: f64,
    pub iterations: usize,
    pub gradient_norm: f64,
    pub converged: bool,
    pub used_fallback: bool,
    pub degenerate_fiedler: bool,
}

impl From<FiedlerOptimizerConfig> for OptimizerConfig {
    fn from(c: FiedlerOptimizerConfig) -> Self {
        OptimizerConfig {
            tolerance: c.tolerance,
            max_iterations: c.max_iterations,
            restarts: c.restarts,
            seed: c.seed,
            degeneracy_threshold: c.degeneracy_threshold,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(message: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = message);
}

struct Failure(FiedlerStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } | Error::EmptyInput => FiedlerStatus::ParseError,
            Error::Disconnected => FiedlerStatus::Disconnected,
            Error::InvalidArgument(_) | Error::OutOfDomain { .. } => FiedlerStatus::InvalidArgument,
            e if e.is_numerical() => FiedlerStatus::Numerical,
            _ => FiedlerStatus::InvalidGraph,
        };
        Failure(status, e.to_string())
    }
}

fn fail(status: FiedlerStatus, message: impl Into<String>) -> Failure {
    Failure(status, message.into())
}

/// Runs `body`, recording the message of any error or panic.
fn guard<F>(body: F) -> FiedlerStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error(String::new());
            FiedlerStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FiedlerStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const FiedlerGraph) -> Result<&'a WeightedGraph, Failure> {
    g.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| fail(FiedlerStatus::NullPointer, "graph handle is null"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| fail(FiedlerStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write_slice(values: &[f64], out: *mut f64, len: usize) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(FiedlerStatus::NullPointer, "output buffer is null"));
    }
    if len < values.len() {
        return Err(fail(
            FiedlerStatus::BufferTooSmall,
            format!("buffer holds {len} values, {} needed", values.len()),
        ));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    Ok(())
}

unsafe fn read_slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(FiedlerStatus::NullPointer, format!("{what} is null")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn publish(g: WeightedGraph, out: &mut *mut FiedlerGraph) {
    *out = Box::into_raw(Box::new(FiedlerGraph { inner: g }));
}

/// Parses the text graph format (`n <count>`, `e <i> <j> [<w>]`, 1-based).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fiedler_graph_parse(
    text: *const c_char,
    out: *mut *mut FiedlerGraph,
) -> FiedlerStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if text.is_null() {
            return Err(fail(FiedlerStatus::NullPointer, "text is null"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| fail(FiedlerStatus::ParseError, "text is not UTF-8"))?;
        publish(WeightedGraph::parse(text)?, out);
        Ok(())
    })
}

/// Builds a graph from `m` edges `(us[k], vs[k], weights[k])` on `n` vertices.
///
/// # Safety
/// The three arrays must hold `m` elements each; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fiedler_graph_from_edges(
    n: usize,
    m: usize,
    us: *const usize,
    vs: *const usize,
    weights: *const f64,
    out: *mut *mut FiedlerGraph,
) -> FiedlerStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let us = read_slice(us, m, "us")?;
        let vs = read_slice(vs, m, "vs")?;
        let ws = read_slice(weights, m, "weights")?;
        let triples: Vec<(usize, usize, f64)> = (0..m).map(|k| (us[k], vs[k], ws[k])).collect();
        publish(WeightedGraph::from_triples(n, &triples)?, out);
        Ok(())
    })
}

/// Path on `n` vertices with `n - 1` edge weights; a null `weights` means all ones.
///
/// # Safety
/// `weights` is null or holds `n - 1` values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fiedler_graph_path(
    n: usize,
    weights: *const f64,
    out: *mut *mut FiedlerGraph,
) -> FiedlerStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let m = n.saturating_sub(1);
        let w = if weights.is_null() {
            vec![1.0; m]
        } else {
            read_slice(weights, m, "weights")?.to_vec()
        };
        publish(WeightedGraph::path(n, &w)?, out);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `g` must come from a constructor in this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fiedler_graph_free(g: *mut FiedlerGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fiedler_graph_vertex_count(g: *const FiedlerGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.vertex_count())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `g` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fiedler_graph_edge_count(g: *const FiedlerGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.edge_count())
}

/// Copies edge weights in input order.
///
/// # Safety
/// `g` is a live handle; `out` holds `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn fiedler_graph_weights(
    g: *const FiedlerGraph,
    out: *mut f64,
    len: usize,
) -> FiedlerStatus {
    guard(|| write_slice(&graph_ref(g)?.weights(), out, len))
}

/// Laplacian eigenvalues in ascending order (`n` values).
///
/// # Safety
/// `g` is a live handle; `out` holds `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn fiedler_eigenvalues(
    g: *const FiedlerGraph,
    out: *mut f64,
    len: usize,
) -> FiedlerStatus {
    guard(|| {
        let dec = spectrum(graph_ref(g)?)?;
        write_slice(dec.eigenvalues(), out, len)
    })
}

/// # Safety
/// `g` is a live handle; `out` is valid.
#[no_mangle]
pub unsafe extern "C" fn fiedler_algebraic_connectivity(
    g: *const FiedlerGraph,
    out: *mut f64,
) -> FiedlerStatus {
    guard(|| {
        let dec = spectrum(graph_ref(g)?)?;
        *out_ref(out, "out")? = dec.eigenvalues()[1];
        Ok(())
    })
}

/// Unit Fiedler vector (`n` values), signed so its first clearly nonzero entry is negative.
///
/// # Safety
/// `g` is a live handle; `out` holds `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn fiedler_fiedler_vector(
    g: *const FiedlerGraph,
    out: *mut f64,
    len: usize,
) -> FiedlerStatus {
    guard(|| {
        let f = fiedler(&spectrum(graph_ref(g)?)?)?;
        write_slice(&f.vector, out, len)
    })
}

/// Effective resistance between vertices `i` and `j`.
///
/// # Safety
/// `g` is a live handle; `out` is valid.
#[no_mangle]
pub unsafe extern "C" fn fiedler_effective_resistance(
    g: *const FiedlerGraph,
    i: usize,
    j: usize,
    out: *mut f64,
) -> FiedlerStatus {
    guard(|| {
        let graph = graph_ref(g)?;
        let out = out_ref(out, "out")?;
        if !graph.is_connected() {
            return Err(Error::Disconnected.into());
        }
        let lp = pseudo_inverse(&spectrum(graph)?);
        *out = resistance_pseudoinverse(&lp, i, j)?;
        Ok(())
    })
}

/// Sum of effective resistances over unordered vertex pairs.
///
/// # Safety
/// `g` is a live handle; `out` is valid.
#[no_mangle]
pub unsafe extern "C" fn fiedler_total_resistance(
    g: *const FiedlerGraph,
    out: *mut f64,
) -> FiedlerStatus {
    guard(|| {
        *out_ref(out, "out")? = total_resistance(graph_ref(g)?)?;
        Ok(())
    })
}

/// `λ₂ · R_tot`, invariant under scaling all weights.
///
/// # Safety
/// `g` is a live handle; `out` is valid.
#[no_mangle]
pub unsafe extern "C" fn fiedler_product_objective(
    g: *const FiedlerGraph,
    out: *mut f64,
) -> FiedlerStatus {
    guard(|| {
        *out_ref(out, "out")? = product_objective(graph_ref(g)?)?;
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn fiedler_optimizer_config_default() -> FiedlerOptimizerConfig {
    let c = OptimizerConfig::default();
    FiedlerOptimizerConfig {
        tolerance: c.tolerance,
        max_iterations: c.max_iterations,
        restarts: c.restarts,
        seed: c.seed,
        degeneracy_threshold: c.degeneracy_threshold,
    }
}

/// Maximizes `λ₂` at the unweighted graph's total resistance.
///
/// Writes the optimal weights (one per edge, input order) and, if `summary` is
/// not null, the run summary. A null `config` uses the defaults. A run that
/// stops without converging still returns `FIEDLER_STATUS_OK`; check `summary.converged`.
///
/// # Safety
/// `g` is a live handle, `config` and `summary` are null or valid, and
/// `weights_out` holds `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn fiedler_optimize(
    g: *const FiedlerGraph,
    config: *const FiedlerOptimizerConfig,
    weights_out: *mut f64,
    len: usize,
    summary: *mut FiedlerOptimizationSummary,
) -> FiedlerStatus {
    guard(|| {
        let graph = graph_ref(g)?;
        // check the buffer before spending time optimizing
        if weights_out.is_null() {
            return Err(fail(FiedlerStatus::NullPointer, "output buffer is null"));
        }
        if len < graph.edge_count() {
            return Err(fail(
                FiedlerStatus::BufferTooSmall,
                format!("buffer holds {len} values, {} needed", graph.edge_count()),
            ));
        }
        let config = config
            .as_ref()
            .copied()
            .map_or_else(OptimizerConfig::default, Into::into);
        let res = maximize_connectivity(graph, &config)?;
        write_slice(&res.weights, weights_out, len)?;
        if let Some(s) = summary.as_mut() {
            *s = FiedlerOptimizationSummary {
                lambda2: res.lambda2,
                total_resistance: res.total_resistance,
                product: res.product,
                iterations: res.iterations,
                gradient_norm: res.gradient_norm,
                converged: res.converged,
                used_fallback: res.used_fallback,
                degenerate_fiedler: res.degenerate_fiedler,
            };
        }
        Ok(())
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn fiedler_status_string(status: FiedlerStatus) -> *const c_char {
    let s: &'static CStr = match status {
        FiedlerStatus::Ok => c"ok",
        FiedlerStatus::NullPointer => c"null pointer",
        FiedlerStatus::InvalidArgument => c"invalid argument",
        FiedlerStatus::ParseError => c"parse error",
        FiedlerStatus::InvalidGraph => c"invalid graph",
        FiedlerStatus::Disconnected => c"graph is disconnected",
        FiedlerStatus::Numerical => c"numerical failure",
        FiedlerStatus::BufferTooSmall => c"buffer too small",
        FiedlerStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Copies the calling thread's last error message, NUL-terminated and truncated
/// to fit. Returns the full message length excluding the NUL, so a caller can
/// pass a null buffer first to size one.
///
/// # Safety
/// `buf` is null or holds `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn fiedler_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}
