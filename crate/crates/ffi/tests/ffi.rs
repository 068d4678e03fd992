use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use igband_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { igband_string_free(s) };
    out
}

fn last_error() -> String {
    let p = igband_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn bundled(name: &str) -> *mut IgBand {
    let mut b = ptr::null_mut();
    assert_eq!(
        unsafe { igband_bundled(c(name).as_ptr(), &mut b) },
        IgStatus::Ok
    );
    b
}

#[test]
fn classify_and_size() {
    let b = bundled("normal10");
    let mut cls = IgClassification::default();
    unsafe {
        assert_eq!(igband_size(b), 10);
        assert_eq!(igband_classify(b, &mut cls), IgStatus::Ok);
        igband_free(b);
    }
    assert!(cls.is_normal);
    assert_eq!(cls.num_classes, 4);
}

#[test]
fn parse_reports_errors() {
    let mut b = ptr::null_mut();
    let status = unsafe { igband_parse(c("a b\na a\n").as_ptr(), &mut b) };
    assert_eq!(status, IgStatus::InvalidBand);
    assert!(b.is_null());
    assert!(!last_error().is_empty());

    let text = igband::bundled::source("y3").unwrap();
    assert_eq!(
        unsafe { igband_parse(c(text).as_ptr(), &mut b) },
        IgStatus::Ok
    );
    assert_eq!(unsafe { igband_size(b) }, 3);
    unsafe { igband_free(b) };

    let status = unsafe { igband_bundled(c("nosuch").as_ptr(), &mut b) };
    assert_eq!(status, IgStatus::InvalidBand);
}

#[test]
fn null_arguments_are_rejected() {
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(
            igband_normal_form(ptr::null(), c("a").as_ptr(), &mut out),
            IgStatus::NullPointer
        );
        assert_eq!(
            igband_bundled(ptr::null(), ptr::null_mut()),
            IgStatus::NullPointer
        );
        assert_eq!(igband_size(ptr::null()), 0);
        igband_free(ptr::null_mut());
        igband_string_free(ptr::null_mut());
    }
}

#[test]
fn words_and_verdicts() {
    let b = bundled("normal10");
    let mut out = ptr::null_mut();
    let mut v = IgVerdict::Inconclusive;
    let mut cert = ptr::null_mut();
    unsafe {
        assert_eq!(igband_anf(b, c("e v").as_ptr(), &mut out), IgStatus::Ok);
        assert_eq!(take(out), "e | v");
        let s = igband_equal(
            b,
            c("e v").as_ptr(),
            c("e h e v").as_ptr(),
            0,
            100_000,
            &mut v,
            &mut cert,
        );
        assert_eq!(s, IgStatus::Ok);
        assert_eq!(v, IgVerdict::Equal);
        assert!(take(cert).starts_with("start: e v\n"));
        let s = igband_equal(
            b,
            c("e h e").as_ptr(),
            c("e").as_ptr(),
            0,
            100_000,
            &mut v,
            &mut cert,
        );
        assert_eq!(s, IgStatus::Ok);
        assert_eq!(v, IgVerdict::NotEqual);
        assert!(cert.is_null());
        let s = igband_equal(
            b,
            c("").as_ptr(),
            c("e").as_ptr(),
            0,
            100_000,
            &mut v,
            ptr::null_mut(),
        );
        assert_eq!(s, IgStatus::InvalidWord);
        igband_free(b);
    }
}

fn exported_functions(src: &str) -> Vec<String> {
    src.lines()
        .filter_map(|l| {
            l.strip_prefix("pub unsafe extern \"C\" fn ")
                .or_else(|| l.strip_prefix("pub extern \"C\" fn "))
        })
        .map(|l| l.split('(').next().unwrap().to_string())
        .collect()
}

#[test]
fn header_declares_every_export() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/igband.h")).unwrap();
    let src = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let names = exported_functions(&src);
    assert_eq!(names.len(), 10);
    for name in names {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from igband.h"
        );
    }
}

/// `cargo test` leaves the static library next to this test binary in
/// `target/<profile>/deps`; `cargo build` also copies it one level up.
fn static_library() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    [deps, deps.parent().unwrap()]
        .iter()
        .map(|d| d.join("libigband_ffi.a"))
        .find(|p| p.exists())
        .expect("libigband_ffi.a is built alongside the tests")
}

#[test]
fn c_program_links_against_the_static_library() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = static_library();
    let exe = std::env::temp_dir().join(format!("igband-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("tests/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    std::fs::remove_file(&exe).ok();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(out.stdout, b"ok\n");
}
