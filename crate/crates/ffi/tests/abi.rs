use std::ffi::{CStr, CString};
use std::ptr;

use helistar_ffi::*;

fn last_error() -> String {
    let p = helistar_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn solve(strips: u32, shift: u32) -> *mut HelistarBranchSet {
    let mut set = ptr::null_mut();
    let status = unsafe { helistar_solve(strips, shift, ptr::null(), &mut set) };
    assert_eq!(status, HelistarStatus::Ok, "{}", last_error());
    set
}

#[test]
fn tetrahelix_through_the_abi() {
    let set = solve(3, 1);
    unsafe {
        assert_eq!(helistar_branch_set_len(set), 1);
        let mut b = std::mem::zeroed::<HelistarBranch>();
        assert_eq!(helistar_branch_set_get(set, 0, &mut b), HelistarStatus::Ok);
        assert!((b.theta - (-2.0f64 / 3.0).acos()).abs() < 1e-9);
        assert_eq!(b.branch_index, 1);
        assert!(!b.intersecting);
        assert_eq!(b.vertex_figure, HelistarVertexFigure::Simple);

        let mut mesh = ptr::null_mut();
        assert_eq!(helistar_mesh_realize(set, 0, 4, &mut mesh), HelistarStatus::Ok);
        assert_eq!(helistar_mesh_vertex_count(mesh), 13);
        assert_eq!(helistar_mesh_face_count(mesh), 20);
        assert_eq!(helistar_mesh_edge_count(mesh), 33);
        let mut xyz = vec![0.0; 39];
        assert_eq!(
            helistar_mesh_copy_vertices(mesh, xyz.as_mut_ptr(), xyz.len()),
            HelistarStatus::Ok
        );
        for k in 0..12 {
            let d: f64 = (0..3).map(|i| (xyz[3 * k + 3 + i] - xyz[3 * k + i]).powi(2)).sum();
            assert!((d.sqrt() - 1.0).abs() < 1e-12);
        }
        let mut faces = vec![0u32; 60];
        assert_eq!(
            helistar_mesh_copy_faces(mesh, faces.as_mut_ptr(), faces.len()),
            HelistarStatus::Ok
        );
        assert!(faces.iter().all(|&i| i < 13));
        assert_eq!(helistar_mesh_verify(mesh), HelistarStatus::Ok);
        helistar_mesh_free(mesh);
        helistar_branch_set_free(set);
    }
}

#[test]
fn invalid_band_reports_code_and_message() {
    let mut set = ptr::null_mut();
    let status = unsafe { helistar_solve(5, 5, ptr::null(), &mut set) };
    assert_eq!(status, HelistarStatus::InvalidArgument);
    assert!(set.is_null());
    assert!(last_error().contains("shift"));
}

#[test]
fn null_and_range_errors() {
    unsafe {
        assert_eq!(
            helistar_solve(3, 1, ptr::null(), ptr::null_mut()),
            HelistarStatus::NullPointer
        );
        assert_eq!(helistar_branch_set_len(ptr::null()), 0);
        helistar_branch_set_free(ptr::null_mut());
        helistar_mesh_free(ptr::null_mut());

        let set = solve(3, 1);
        let mut b = std::mem::zeroed::<HelistarBranch>();
        assert_eq!(helistar_branch_set_get(set, 1, &mut b), HelistarStatus::NoResult);
        let mut mesh = ptr::null_mut();
        assert_eq!(helistar_mesh_realize(set, 0, 4, &mut mesh), HelistarStatus::Ok);
        let mut small = [0.0; 3];
        assert_eq!(
            helistar_mesh_copy_vertices(mesh, small.as_mut_ptr(), small.len()),
            HelistarStatus::InvalidArgument
        );
        helistar_mesh_free(mesh);
        helistar_branch_set_free(set);
    }
}

#[test]
fn custom_options_are_validated() {
    unsafe {
        let mut opts = std::mem::zeroed::<HelistarSolverOptions>();
        assert_eq!(helistar_solver_options_default(&mut opts), HelistarStatus::Ok);
        assert_eq!(opts.grid_points, 200_000);
        opts.theta_max = 0.5;
        opts.theta_min = 0.6;
        let mut set = ptr::null_mut();
        assert_eq!(helistar_solve(3, 1, &opts, &mut set), HelistarStatus::InvalidArgument);
    }
}

#[test]
fn antiprism_and_obj_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = CString::new(dir.path().join("tower.obj").to_str().unwrap()).unwrap();
    unsafe {
        let mut mesh = ptr::null_mut();
        assert_eq!(helistar_antiprism(4, 3, &mut mesh), HelistarStatus::Ok);
        assert_eq!(helistar_mesh_vertex_count(mesh), 12);
        assert_eq!(helistar_mesh_face_count(mesh), 16);
        assert_eq!(helistar_mesh_write_obj(mesh, path.as_ptr(), false), HelistarStatus::Ok);
        helistar_mesh_free(mesh);
    }
    let text = std::fs::read_to_string(dir.path().join("tower.obj")).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 12);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 16);
}

#[test]
fn version_is_crate_version() {
    let v = unsafe { CStr::from_ptr(helistar_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
