//! C ABI over the `helistar` library.
//!
//! Results live behind opaque handles that the caller releases with the
//! matching `*_free` function. Every fallible call returns a
//! [`HelistarStatus`]; on failure [`helistar_last_error_message`] describes
//! the error on the calling thread.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::fs::File;
use std::io::BufWriter;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;

use helistar::analysis::{classify, VertexFigure};
use helistar::band::BandSpec;
use helistar::export::{write_obj, ObjMode};
use helistar::realize::{antiprism_tower, realize, verify_uniform, MeshSegment};
use helistar::solver::{solve_band, BranchSolution, SolverOptions};
use helistar::Error;

/// Status codes. The first four match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HelistarStatus {
    Ok = 0,
    VerifyFailed = 1,
    InvalidArgument = 2,
    NoResult = 3,
    Io = 4,
    NullPointer = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HelistarVertexFigure {
    Simple = 0,
    Crossed = 1,
    Indeterminate = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelistarSolverOptions {
    pub theta_min: f64,
    pub theta_max: f64,
    pub grid_points: usize,
    pub bisection_tol: f64,
    pub residual_tol: f64,
    pub min_a: f64,
    pub min_b: f64,
}

impl From<SolverOptions> for HelistarSolverOptions {
    fn from(o: SolverOptions) -> Self {
        Self {
            theta_min: o.theta_min,
            theta_max: o.theta_max,
            grid_points: o.grid_points,
            bisection_tol: o.bisection_tol,
            residual_tol: o.residual_tol,
            min_a: o.min_a,
            min_b: o.min_b,
        }
    }
}

impl From<HelistarSolverOptions> for SolverOptions {
    fn from(o: HelistarSolverOptions) -> Self {
        Self {
            theta_min: o.theta_min,
            theta_max: o.theta_max,
            grid_points: o.grid_points,
            bisection_tol: o.bisection_tol,
            residual_tol: o.residual_tol,
            min_a: o.min_a,
            min_b: o.min_b,
        }
    }
}

/// One branch with its classification.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelistarBranch {
    pub branch_index: usize,
    /// Star label, 0 when not defined.
    pub winding_m: u32,
    pub theta: f64,
    pub radius: f64,
    pub rise: f64,
    pub residual: f64,
    pub intersecting: bool,
    pub vertex_figure: HelistarVertexFigure,
}

/// Opaque list of solved branches.
pub struct HelistarBranchSet {
    branches: Vec<BranchSolution>,
}

/// Opaque finite mesh.
pub struct HelistarMesh {
    segment: MeshSegment,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> HelistarStatus {
    match err {
        Error::NoSuchBranch { .. } => HelistarStatus::NoResult,
        Error::Io(_) => HelistarStatus::Io,
        _ => HelistarStatus::InvalidArgument,
    }
}

fn fail(status: HelistarStatus, msg: impl Into<String>) -> HelistarStatus {
    set_error(msg);
    status
}

fn guard<F: FnOnce() -> HelistarStatus>(body: F) -> HelistarStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(HelistarStatus::Panic, "internal panic"),
    }
}

fn lift(err: Error) -> HelistarStatus {
    fail(status_of(&err), err.to_string())
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn helistar_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn helistar_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `out` must be NULL or point to writable memory for one options struct.
#[no_mangle]
pub unsafe extern "C" fn helistar_solver_options_default(out: *mut HelistarSolverOptions) -> HelistarStatus {
    guard(|| {
        if out.is_null() {
            return fail(HelistarStatus::NullPointer, "out is NULL");
        }
        *out = SolverOptions::default().into();
        HelistarStatus::Ok
    })
}

/// Solve band `(strips, shift)`. `opts` may be NULL for defaults. On
/// success `*out` owns a new branch set, possibly empty.
///
/// # Safety
/// `opts` must be NULL or valid; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn helistar_solve(
    strips: u32,
    shift: u32,
    opts: *const HelistarSolverOptions,
    out: *mut *mut HelistarBranchSet,
) -> HelistarStatus {
    guard(|| {
        if out.is_null() {
            return fail(HelistarStatus::NullPointer, "out is NULL");
        }
        *out = ptr::null_mut();
        let options = if opts.is_null() {
            SolverOptions::default()
        } else {
            (*opts).into()
        };
        let solved = BandSpec::new(strips, shift).and_then(|band| solve_band(&band, &options));
        match solved {
            Ok(branches) => {
                *out = Box::into_raw(Box::new(HelistarBranchSet { branches }));
                HelistarStatus::Ok
            }
            Err(e) => lift(e),
        }
    })
}

/// # Safety
/// `set` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn helistar_branch_set_len(set: *const HelistarBranchSet) -> usize {
    set.as_ref().map_or(0, |s| s.branches.len())
}

/// Copy branch `index` (0-based) into `*out`.
///
/// # Safety
/// `set` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn helistar_branch_set_get(
    set: *const HelistarBranchSet,
    index: usize,
    out: *mut HelistarBranch,
) -> HelistarStatus {
    guard(|| {
        let (Some(set), false) = (set.as_ref(), out.is_null()) else {
            return fail(HelistarStatus::NullPointer, "set or out is NULL");
        };
        let Some(b) = set.branches.get(index) else {
            return fail(
                HelistarStatus::NoResult,
                format!("index {index} out of range, set holds {}", set.branches.len()),
            );
        };
        let class = classify(b);
        *out = HelistarBranch {
            branch_index: b.branch_index,
            winding_m: b.winding_m.unwrap_or(0),
            theta: b.params.twist,
            radius: b.params.radius,
            rise: b.params.rise,
            residual: b.residual,
            intersecting: class.intersecting,
            vertex_figure: match class.vertex_figure {
                VertexFigure::Simple => HelistarVertexFigure::Simple,
                VertexFigure::Crossed => HelistarVertexFigure::Crossed,
                VertexFigure::Indeterminate => HelistarVertexFigure::Indeterminate,
            },
        };
        HelistarStatus::Ok
    })
}

/// # Safety
/// `set` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn helistar_branch_set_free(set: *mut HelistarBranchSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

fn emit_mesh(result: helistar::Result<MeshSegment>, out: *mut *mut HelistarMesh) -> HelistarStatus {
    match result {
        Ok(segment) => {
            // SAFETY: callers check `out` before computing `result`.
            unsafe { *out = Box::into_raw(Box::new(HelistarMesh { segment })) };
            HelistarStatus::Ok
        }
        Err(e) => lift(e),
    }
}

/// Mesh of branch `index` (0-based) over `periods` periods.
///
/// # Safety
/// `set` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn helistar_mesh_realize(
    set: *const HelistarBranchSet,
    index: usize,
    periods: u32,
    out: *mut *mut HelistarMesh,
) -> HelistarStatus {
    guard(|| {
        let (Some(set), false) = (set.as_ref(), out.is_null()) else {
            return fail(HelistarStatus::NullPointer, "set or out is NULL");
        };
        *out = ptr::null_mut();
        let Some(b) = set.branches.get(index) else {
            return fail(
                HelistarStatus::NoResult,
                format!("index {index} out of range, set holds {}", set.branches.len()),
            );
        };
        emit_mesh(realize(b, periods), out)
    })
}

/// Stack of `rings` regular `gon`-gons joined by antiprism bands.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn helistar_antiprism(gon: u32, rings: u32, out: *mut *mut HelistarMesh) -> HelistarStatus {
    guard(|| {
        if out.is_null() {
            return fail(HelistarStatus::NullPointer, "out is NULL");
        }
        *out = ptr::null_mut();
        emit_mesh(antiprism_tower(gon, rings), out)
    })
}

/// # Safety
/// `mesh` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn helistar_mesh_vertex_count(mesh: *const HelistarMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.segment.vertices.len())
}

/// # Safety
/// `mesh` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn helistar_mesh_face_count(mesh: *const HelistarMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.segment.faces.len())
}

/// # Safety
/// `mesh` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn helistar_mesh_edge_count(mesh: *const HelistarMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.segment.edges.len())
}

/// Copy `x y z` triples into `buf`, which holds `len` doubles
/// (at least 3 × vertex count).
///
/// # Safety
/// `mesh` must be a live handle and `buf` writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn helistar_mesh_copy_vertices(
    mesh: *const HelistarMesh,
    buf: *mut f64,
    len: usize,
) -> HelistarStatus {
    guard(|| {
        let (Some(mesh), false) = (mesh.as_ref(), buf.is_null()) else {
            return fail(HelistarStatus::NullPointer, "mesh or buf is NULL");
        };
        let need = 3 * mesh.segment.vertices.len();
        if len < need {
            return fail(
                HelistarStatus::InvalidArgument,
                format!("buffer holds {len} doubles, need {need}"),
            );
        }
        let dst = std::slice::from_raw_parts_mut(buf, need);
        for (chunk, v) in dst.chunks_exact_mut(3).zip(&mesh.segment.vertices) {
            chunk.copy_from_slice(&[v.x, v.y, v.z]);
        }
        HelistarStatus::Ok
    })
}

/// Copy 0-based, outward-oriented face triples into `buf` of `len` entries
/// (at least 3 × face count).
///
/// # Safety
/// `mesh` must be a live handle and `buf` writable for `len` entries.
#[no_mangle]
pub unsafe extern "C" fn helistar_mesh_copy_faces(
    mesh: *const HelistarMesh,
    buf: *mut u32,
    len: usize,
) -> HelistarStatus {
    guard(|| {
        let (Some(mesh), false) = (mesh.as_ref(), buf.is_null()) else {
            return fail(HelistarStatus::NullPointer, "mesh or buf is NULL");
        };
        let need = 3 * mesh.segment.faces.len();
        if len < need {
            return fail(
                HelistarStatus::InvalidArgument,
                format!("buffer holds {len} entries, need {need}"),
            );
        }
        let dst = std::slice::from_raw_parts_mut(buf, need);
        for (chunk, f) in dst.chunks_exact_mut(3).zip(&mesh.segment.faces) {
            chunk.copy_from_slice(&f.map(|i| i as u32));
        }
        HelistarStatus::Ok
    })
}

/// Uniformity check on the interior of the mesh. Returns `OK` or
/// `VERIFY_FAILED`.
///
/// # Safety
/// `mesh` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn helistar_mesh_verify(mesh: *const HelistarMesh) -> HelistarStatus {
    guard(|| {
        let Some(mesh) = mesh.as_ref() else {
            return fail(HelistarStatus::NullPointer, "mesh is NULL");
        };
        match verify_uniform(&mesh.segment) {
            Ok(report) if report.passed() => HelistarStatus::Ok,
            Ok(report) => {
                let failed: Vec<&str> = report.checks().iter().filter(|c| !c.passed).map(|c| c.name).collect();
                fail(
                    HelistarStatus::VerifyFailed,
                    format!("failed checks: {}", failed.join(", ")),
                )
            }
            Err(e) => lift(e),
        }
    })
}

/// Write the mesh as OBJ to `path`; `frame` selects `l` records.
///
/// # Safety
/// `mesh` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn helistar_mesh_write_obj(
    mesh: *const HelistarMesh,
    path: *const c_char,
    frame: bool,
) -> HelistarStatus {
    guard(|| {
        let (Some(mesh), false) = (mesh.as_ref(), path.is_null()) else {
            return fail(HelistarStatus::NullPointer, "mesh or path is NULL");
        };
        let Ok(path) = CStr::from_ptr(path).to_str() else {
            return fail(HelistarStatus::InvalidArgument, "path is not UTF-8");
        };
        let file = match File::create(path) {
            Ok(f) => f,
            Err(e) => return fail(HelistarStatus::Io, format!("cannot create {path}: {e}")),
        };
        let mode = if frame { ObjMode::Frame } else { ObjMode::Faces };
        match write_obj(&mesh.segment, mode, BufWriter::new(file)) {
            Ok(()) => HelistarStatus::Ok,
            Err(e) => lift(e),
        }
    })
}

/// # Safety
/// `mesh` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn helistar_mesh_free(mesh: *mut HelistarMesh) {
    if !mesh.is_null() {
        drop(Box::from_raw(mesh));
    }
}
