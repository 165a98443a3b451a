use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use dioclt_ffi::*;

fn problem(m: usize, n: usize, thetas: &[f64]) -> *mut DiocltProblem {
    let mut p = ptr::null_mut();
    let rc = unsafe { dioclt_problem_new(m, n, thetas.as_ptr(), ptr::null(), DIOCLT_NORM_SUP, 0.0, &mut p) };
    assert_eq!(rc, DIOCLT_OK);
    p
}

fn last_error() -> String {
    let p = dioclt_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn delta_and_constants() {
    let p = problem(2, 1, &[1.0, 1.0]);
    let (u, v) = ([0.0; 2], [0.0; 2]);
    let (mut total, mut q) = (0u64, 0u64);
    let rc = unsafe { dioclt_delta(p, u.as_ptr(), 2, v.as_ptr(), 2, 10.0, &mut total, &mut q) };
    assert_eq!((rc, total, q), (DIOCLT_OK, 18, 20));

    let mut c = DiocltConstants::default();
    assert_eq!(unsafe { dioclt_constants(p, 1e-10, &mut c) }, DIOCLT_OK);
    assert_eq!(c.c_mean, 8.0);
    assert!(c.zeta_n.is_nan());

    let residues = [1i64, 1, 1];
    assert_eq!(unsafe { dioclt_problem_set_congruence(p, residues.as_ptr(), 3, 2) }, DIOCLT_OK);
    assert_eq!(unsafe { dioclt_constants(p, 1e-10, &mut c) }, DIOCLT_OK);
    assert_eq!(c.c_mean, 1.0);
    unsafe { dioclt_problem_free(p) };
}

#[test]
fn exact_mean_and_windows() {
    let p = problem(2, 1, &[0.25, 0.25]);
    let mut mean = 0.0;
    assert_eq!(unsafe { dioclt_exact_mean(p, 3.0, &mut mean) }, DIOCLT_OK);
    assert!((mean - 0.75).abs() < 1e-15);

    let (u, v) = ([0.31, 0.77], [0.1, 0.9]);
    let mut counts = [0u64; 3];
    let rc = unsafe { dioclt_window_counts(p, u.as_ptr(), 2, v.as_ptr(), 2, 3, counts.as_mut_ptr()) };
    assert_eq!(rc, DIOCLT_OK);
    let (mut total, mut q) = (0u64, 0u64);
    let t = 3f64.exp();
    unsafe { dioclt_delta(p, u.as_ptr(), 2, v.as_ptr(), 2, t, &mut total, &mut q) };
    assert_eq!(counts.iter().sum::<u64>(), total);
    unsafe { dioclt_problem_free(p) };
}

#[test]
fn error_codes() {
    let mut p = ptr::null_mut();
    let bad = [1.0, -1.0];
    let rc = unsafe { dioclt_problem_new(2, 1, bad.as_ptr(), ptr::null(), DIOCLT_NORM_SUP, 0.0, &mut p) };
    assert_eq!(rc, DIOCLT_ERR_INVALID);
    assert!(p.is_null());
    assert!(last_error().contains("theta"), "{}", last_error());

    let rc = unsafe { dioclt_problem_new(2, 1, ptr::null(), ptr::null(), DIOCLT_NORM_SUP, 0.0, &mut p) };
    assert_eq!(rc, DIOCLT_ERR_NULL);
    let ok = [1.0, 1.0];
    let rc = unsafe { dioclt_problem_new(2, 1, ok.as_ptr(), ptr::null(), 9, 0.0, &mut p) };
    assert_eq!(rc, DIOCLT_ERR_INVALID);

    let p = problem(2, 1, &ok);
    let mut out = 0u64;
    let rc = unsafe { dioclt_delta(p, ptr::null(), 0, ptr::null(), 0, 10.0, &mut out, ptr::null_mut()) };
    assert_eq!(rc, DIOCLT_ERR_INVALID);
    let (u, v) = ([0.0; 2], [0.0; 2]);
    let rc = unsafe { dioclt_delta(p, u.as_ptr(), 2, v.as_ptr(), 2, 1e12, &mut out, ptr::null_mut()) };
    assert_eq!(rc, DIOCLT_ERR_BUDGET);

    // failed update leaves the handle usable
    let residues = [1i64, 1];
    assert_eq!(unsafe { dioclt_problem_set_congruence(p, residues.as_ptr(), 2, 2) }, DIOCLT_ERR_INVALID);
    let mut c = DiocltConstants::default();
    assert_eq!(unsafe { dioclt_constants(p, 1e-10, &mut c) }, DIOCLT_OK);
    assert_eq!(c.c_mean, 8.0);
    assert_eq!(unsafe { dioclt_constants(ptr::null(), 1e-10, &mut c) }, DIOCLT_ERR_NULL);
    unsafe { dioclt_problem_free(p) };
    unsafe { dioclt_problem_free(ptr::null_mut()) };
}

#[test]
fn divergent_series_code() {
    let p = problem(1, 1, &[1.0]);
    let residues = [1i64, 1];
    assert_eq!(unsafe { dioclt_problem_set_congruence(p, residues.as_ptr(), 2, 2) }, DIOCLT_OK);
    let mut c = DiocltConstants::default();
    assert_eq!(unsafe { dioclt_constants(p, 1e-10, &mut c) }, DIOCLT_ERR_DIVERGENT);
    unsafe { dioclt_problem_free(p) };
}

fn target_dir() -> PathBuf {
    // <target>/<profile>/deps/api-<hash>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_header() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libdioclt_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let exe = std::env::temp_dir().join(format!("dioclt_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(root.join("tests/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
