use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use cgdg_ffi::*;

fn last_error() -> String {
    let p = cgdg_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn named(name: &str) -> *mut CgdgShape {
    let name = CString::new(name).unwrap();
    let mut shape = ptr::null_mut();
    assert_eq!(unsafe { cgdg_shape_named(name.as_ptr(), &mut shape) }, CgdgStatus::Ok);
    shape
}

#[test]
fn triangle_is_complete() {
    let xy = [0.0, 0.0, 1.0, 0.1, 0.4, 0.9];
    let mut inst = ptr::null_mut();
    unsafe {
        assert_eq!(cgdg_instance_new(xy.as_ptr(), 3, ptr::null(), 0, &mut inst), CgdgStatus::Ok);
        assert_eq!(cgdg_instance_len(inst), 3);
        let shape = named("square");
        let mut g = ptr::null_mut();
        assert_eq!(cgdg_graph_build(inst, shape, 0, &mut g), CgdgStatus::Ok);
        assert_eq!(cgdg_graph_edge_count(g), 3);
        let mut buf = [0usize; 6];
        let mut written = 0;
        assert_eq!(cgdg_graph_edges(g, buf.as_mut_ptr(), 3, &mut written), CgdgStatus::Ok);
        assert_eq!((written, buf), (3, [0, 1, 0, 2, 1, 2]));
        assert_eq!(cgdg_graph_has_edge(g, 2, 1), 1);
        assert_eq!(cgdg_graph_has_edge(g, 2, 7), 0);
        let mut stretch = 0.0;
        assert_eq!(cgdg_graph_max_stretch(g, &mut stretch), CgdgStatus::Ok);
        assert_eq!(stretch, 1.0);
        cgdg_graph_free(g);
        cgdg_shape_free(shape);
        cgdg_instance_free(inst);
    }
}

#[test]
fn small_buffer_reports_size() {
    unsafe {
        let mut inst = ptr::null_mut();
        assert_eq!(cgdg_instance_generate(5, 12, 2, &mut inst), CgdgStatus::Ok);
        let shape = named("rect:2:1");
        let mut g = ptr::null_mut();
        assert_eq!(cgdg_graph_build(inst, shape, 1, &mut g), CgdgStatus::Ok);
        let mut written = 0;
        let mut one = [0usize; 2];
        assert_eq!(cgdg_graph_edges(g, one.as_mut_ptr(), 1, &mut written), CgdgStatus::BufferTooSmall);
        assert_eq!(written, cgdg_graph_edge_count(g));
        assert!(last_error().contains("room for 1"));
        cgdg_graph_free(g);
        cgdg_shape_free(shape);
        cgdg_instance_free(inst);
    }
}

#[test]
fn square_constants() {
    let shape = named("square");
    let mut c = CgdgConstants::default();
    unsafe {
        assert_eq!(cgdg_shape_constants(shape, 32, &mut c), CgdgStatus::Ok);
        cgdg_shape_free(shape);
    }
    assert!((c.alpha - std::f64::consts::FRAC_PI_4).abs() < 1e-9);
    assert!((c.kappa - 2.0).abs() < 1e-9);
    assert!(c.bound_triangulation < c.bound_general);
}

#[test]
fn polygon_shape_and_json_instance() {
    let tri = [0.0, 0.0, 2.0, 0.0, 0.0, 2.0];
    let json = CString::new(r#"{"points": [[0,0],[1,0],[0.5,0.8],[0.5,0.3]], "constraints": [[0,2]]}"#).unwrap();
    unsafe {
        let mut shape = ptr::null_mut();
        assert_eq!(cgdg_shape_polygon(tri.as_ptr(), 3, 0.5, 0.5, &mut shape), CgdgStatus::Ok);
        let mut inst = ptr::null_mut();
        assert_eq!(cgdg_instance_from_json(json.as_ptr(), &mut inst), CgdgStatus::Ok);
        let mut g = ptr::null_mut();
        assert_eq!(cgdg_graph_build(inst, shape, 0, &mut g), CgdgStatus::Ok);
        assert!(cgdg_graph_edge_count(g) >= 3);
        cgdg_graph_free(g);
        cgdg_instance_free(inst);
        cgdg_shape_free(shape);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut inst = ptr::null_mut();
        let dup = [0.0, 0.0, 0.0, 0.0];
        assert_eq!(cgdg_instance_new(dup.as_ptr(), 2, ptr::null(), 0, &mut inst), CgdgStatus::InvalidInstance);
        assert!(last_error().contains("coincide"));
        assert!(inst.is_null());

        let cw = [0.0, 0.0, 0.0, 2.0, 2.0, 0.0];
        let mut shape = ptr::null_mut();
        assert_eq!(cgdg_shape_polygon(cw.as_ptr(), 3, 0.5, 0.5, &mut shape), CgdgStatus::InvalidShape);

        let bad = CString::new("circle").unwrap();
        assert_eq!(cgdg_shape_named(bad.as_ptr(), &mut shape), CgdgStatus::Parse);
        assert_eq!(cgdg_shape_named(ptr::null(), &mut shape), CgdgStatus::NullPointer);

        let sq = [0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0];
        assert_eq!(cgdg_instance_new(sq.as_ptr(), 4, ptr::null(), 0, &mut inst), CgdgStatus::Ok);
        let square = named("square");
        let mut g = ptr::null_mut();
        assert_eq!(cgdg_graph_build(inst, square, 0, &mut g), CgdgStatus::GeneralPosition);
        assert_eq!(cgdg_graph_build(inst, square, 1, &mut g), CgdgStatus::Ok);
        assert_eq!(cgdg_graph_edge_count(g), 4);

        assert_eq!(cgdg_instance_generate(0, 1, 0, &mut inst), CgdgStatus::InvalidArgument);
        cgdg_graph_free(g);
        cgdg_shape_free(square);
        cgdg_instance_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/cgdg.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["cgdg_graph_build", "cgdg_shape_constants", "cgdg_last_error_message", "CGDG_STATUS_BUFFER_TOO_SMALL"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    // compile a caller against it when a C compiler is around
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"cgdg.h\"\nint f(void) { CgdgShape *s = 0; CgdgConstants c; return cgdg_shape_constants(s, 8, &c) == CGDG_STATUS_OK; }\n",
    )
    .unwrap();
    let include = header.parent().unwrap();
    match Command::new("cc").arg("-fsyntax-only").arg("-Wall").arg("-I").arg(include).arg(&src).output() {
        Ok(out) => assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr)),
        Err(_) => eprintln!("no C compiler; header syntax not checked"),
    }
}
