use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use fiedler_ffi::*;

unsafe fn last_error() -> String {
    let len = fiedler_last_error(ptr::null_mut(), 0);
    let mut buf = vec![0 as std::ffi::c_char; len + 1];
    fiedler_last_error(buf.as_mut_ptr(), buf.len());
    CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
}

unsafe fn parse(text: &str) -> (FiedlerStatus, *mut FiedlerGraph) {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    let status = fiedler_graph_parse(text.as_ptr(), &mut g);
    (status, g)
}

#[test]
fn spectrum_and_resistance_of_p4() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            fiedler_graph_path(4, ptr::null(), &mut g),
            FiedlerStatus::Ok
        );
        assert_eq!(fiedler_graph_vertex_count(g), 4);
        assert_eq!(fiedler_graph_edge_count(g), 3);

        let mut ev = [0.0; 4];
        assert_eq!(
            fiedler_eigenvalues(g, ev.as_mut_ptr(), 4),
            FiedlerStatus::Ok
        );
        // path eigenvalues 2 - 2cos(kπ/n)
        for (k, l) in ev.iter().enumerate() {
            let expected = 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / 4.0).cos();
            assert!((l - expected).abs() < 1e-12);
        }
        let mut l2 = 0.0;
        assert_eq!(
            fiedler_algebraic_connectivity(g, &mut l2),
            FiedlerStatus::Ok
        );
        assert_eq!(l2, ev[1]);

        let mut u = [0.0; 4];
        assert_eq!(
            fiedler_fiedler_vector(g, u.as_mut_ptr(), 4),
            FiedlerStatus::Ok
        );
        assert!(u[0] < 0.0 && (u[0] + u[3]).abs() < 1e-12);

        let mut r = 0.0;
        assert_eq!(
            fiedler_effective_resistance(g, 0, 3, &mut r),
            FiedlerStatus::Ok
        );
        assert!((r - 3.0).abs() < 1e-12);
        assert_eq!(fiedler_total_resistance(g, &mut r), FiedlerStatus::Ok);
        assert!((r - 10.0).abs() < 1e-12);
        let mut p = 0.0;
        assert_eq!(fiedler_product_objective(g, &mut p), FiedlerStatus::Ok);
        assert!((p - 10.0 * ev[1]).abs() < 1e-12);
        fiedler_graph_free(g);
    }
}

#[test]
fn optimize_p4() {
    unsafe {
        let (status, g) = parse("n 4\ne 1 2\ne 2 3\ne 3 4\n");
        assert_eq!(status, FiedlerStatus::Ok);
        let mut config = fiedler_optimizer_config_default();
        config.restarts = 1;
        config.seed = 5;
        let mut w = [0.0; 3];
        let mut summary = FiedlerOptimizationSummary::default();
        assert_eq!(
            fiedler_optimize(g, &config, w.as_mut_ptr(), 3, &mut summary),
            FiedlerStatus::Ok
        );
        assert!(summary.converged);
        assert!((summary.lambda2 - (2.0 - 4.0 * 3f64.sqrt() / 5.0)).abs() < 1e-7);
        assert!((summary.total_resistance - 10.0).abs() < 1e-9);
        assert!((w[0] - w[2]).abs() < 1e-6 * w[0]);
        // the handle is unchanged by optimization
        let mut before = [0.0; 3];
        fiedler_graph_weights(g, before.as_mut_ptr(), 3);
        assert_eq!(before, [1.0; 3]);
        assert_eq!(
            fiedler_optimize(g, ptr::null(), w.as_mut_ptr(), 2, ptr::null_mut()),
            FiedlerStatus::BufferTooSmall
        );
        fiedler_graph_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let (status, g) = parse("n 3\ne 1 2\ne 2 9\n");
        assert_eq!(status, FiedlerStatus::ParseError);
        assert!(g.is_null());
        assert!(last_error().contains("line 3"), "{}", last_error());

        let (_, g) = parse("n 4\ne 1 2\ne 3 4\n");
        let mut r = 0.0;
        assert_eq!(
            fiedler_total_resistance(g, &mut r),
            FiedlerStatus::Disconnected
        );
        assert_eq!(
            fiedler_effective_resistance(g, 0, 1, &mut r),
            FiedlerStatus::Disconnected
        );
        let mut ev = [0.0; 2];
        assert_eq!(
            fiedler_eigenvalues(g, ev.as_mut_ptr(), 2),
            FiedlerStatus::BufferTooSmall
        );
        fiedler_graph_free(g);

        assert_eq!(
            fiedler_algebraic_connectivity(ptr::null(), &mut r),
            FiedlerStatus::NullPointer
        );
        let mut g = ptr::null_mut();
        let w = [1.0, -2.0];
        assert_eq!(
            fiedler_graph_path(3, w.as_ptr(), &mut g),
            FiedlerStatus::InvalidGraph
        );
        let (us, vs, ws) = ([0usize], [0usize], [1.0]);
        assert_eq!(
            fiedler_graph_from_edges(2, 1, us.as_ptr(), vs.as_ptr(), ws.as_ptr(), &mut g),
            FiedlerStatus::InvalidGraph
        );
        assert_eq!(fiedler_graph_vertex_count(ptr::null()), 0);
        fiedler_graph_free(ptr::null_mut());

        let s = CStr::from_ptr(fiedler_status_string(FiedlerStatus::Disconnected));
        assert_eq!(s.to_str().unwrap(), "graph is disconnected");
        let mut l2 = 0.0;
        let (_, g) = parse("n 2\ne 1 2\n");
        assert_eq!(
            fiedler_algebraic_connectivity(g, &mut l2),
            FiedlerStatus::Ok
        );
        assert_eq!(last_error(), "");
        fiedler_graph_free(g);
    }
}

/// Compiles a small C program against the generated header and the static library.
#[test]
fn c_smoke_test() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = target_dir.join("libfiedler_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let exe = target_dir.join("fiedler_ffi_smoke");
    let out = Command::new("cc")
        .arg(crate_dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let run = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "{stdout}");
    assert!(stdout.contains("lambda2 0.585786437627"), "{stdout}");
    assert!(stdout.contains("status 3 parse error"), "{stdout}");
}
