use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use fagroup_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { fag_string_free(p) };
    s
}

fn last_error() -> String {
    let p = fag_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn group(spec: &str) -> *mut FagGroup {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { fag_group_from_spec(c(spec).as_ptr(), &mut g) }, FagStatus::Ok);
    g
}

#[test]
fn finite_group_queries() {
    let g = group("prod(C 2, C 2)");
    let (mut order, mut fa, mut nfa2, mut w) = (0usize, false, true, 0usize);
    unsafe {
        assert_eq!(fag_group_order(g, &mut order), FagStatus::Ok);
        assert_eq!(fag_group_is_fa(g, &mut fa), FagStatus::Ok);
        assert_eq!(fag_group_is_nfa(g, 2, &mut nfa2), FagStatus::Ok);
        assert_eq!(fag_group_weight(g, &mut w), FagStatus::Ok);
    }
    assert_eq!((order, fa, nfa2, w), (4, true, false, 2));

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { fag_group_invariants_json(g, &mut s) }, FagStatus::Ok);
    let inv: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(inv, serde_json::json!({"free_rank": 0, "factors": [2, 2]}));

    assert_eq!(unsafe { fag_group_verify_json(g, &mut s) }, FagStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
    unsafe { fag_group_free(g) };

    let c15 = group("C 15");
    unsafe {
        assert_eq!(fag_group_is_fa(c15, &mut fa), FagStatus::Ok);
        assert_eq!(fag_group_is_nfa(c15, 0, &mut fa), FagStatus::InvalidArgument);
        fag_group_free(c15);
    }
    assert!(!fa);
}

#[test]
fn cayley_tables() {
    let klein: [u32; 16] = [0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0];
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { fag_group_from_cayley_table(klein.as_ptr(), 4, &mut g) }, FagStatus::Ok);
    let mut fa = false;
    assert_eq!(unsafe { fag_group_is_fa(g, &mut fa) }, FagStatus::Ok);
    assert!(fa);
    unsafe { fag_group_free(g) };

    let broken: [u32; 9] = [0, 1, 2, 1, 2, 0, 2, 1, 0];
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { fag_group_from_cayley_table(broken.as_ptr(), 3, &mut g) }, FagStatus::NotAGroup);
    assert!(g.is_null());
    assert!(last_error().contains("not a group"));
}

#[test]
fn presentations() {
    let mut p = ptr::null_mut();
    let text = c("< x,y,z | x^2, y^3, z^5 >");
    assert_eq!(unsafe { fag_presentation_parse(text.as_ptr(), &mut p) }, FagStatus::Ok);
    let mut v = FagVerdict::Fa;
    assert_eq!(unsafe { fag_presentation_classify(p, ptr::null(), 1, &mut v) }, FagStatus::Ok);
    assert_eq!(v, FagVerdict::Unknown);
    let solvable = c("solvable");
    assert_eq!(unsafe { fag_presentation_classify(p, solvable.as_ptr(), 1, &mut v) }, FagStatus::Ok);
    assert_eq!(v, FagVerdict::NotFa);
    let bogus = c("nilpotent");
    assert_eq!(
        unsafe { fag_presentation_classify(p, bogus.as_ptr(), 1, &mut v) },
        FagStatus::InvalidArgument
    );

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { fag_presentation_analyze_json(p, ptr::null(), 1, &mut s) }, FagStatus::Ok);
    let a: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(a["invariants"]["factors"], serde_json::json!([30]));
    assert_eq!(a["easily_fa"], false);

    let word = c("x");
    assert_eq!(unsafe { fag_find_annihilator_json(p, word.as_ptr(), 5, &mut s) }, FagStatus::Ok);
    let w: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(w["target"]["name"], "C3");
    assert_eq!(w["verified"], true);
    unsafe { fag_presentation_free(p) };

    let c2 = c("< a | a^2 >");
    assert_eq!(unsafe { fag_presentation_parse(c2.as_ptr(), &mut p) }, FagStatus::Ok);
    let a = c("a");
    let mut s = ptr::NonNull::<std::ffi::c_char>::dangling().as_ptr();
    assert_eq!(unsafe { fag_find_annihilator_json(p, a.as_ptr(), 60, &mut s) }, FagStatus::Ok);
    assert!(s.is_null());
    unsafe { fag_presentation_free(p) };
}

#[test]
fn errors() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { fag_group_from_spec(ptr::null(), &mut g) }, FagStatus::NullPointer);
    assert_eq!(unsafe { fag_group_from_spec(c("S 9").as_ptr(), &mut g) }, FagStatus::CapExceeded);
    assert_eq!(unsafe { fag_group_from_spec(c("Z 3").as_ptr(), &mut g) }, FagStatus::ParseError);
    assert!(last_error().contains("unknown family"));
    let mut order = 0usize;
    assert_eq!(unsafe { fag_group_order(ptr::null(), &mut order) }, FagStatus::NullPointer);
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { fag_presentation_parse(c("< a | b >").as_ptr(), &mut p) }, FagStatus::ParseError);
    let bad_utf8 = [0xffu8, 0];
    assert_eq!(
        unsafe { fag_presentation_parse(bad_utf8.as_ptr().cast(), &mut p) },
        FagStatus::InvalidUtf8
    );
    unsafe {
        fag_group_free(ptr::null_mut());
        fag_presentation_free(ptr::null_mut());
        fag_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/fagroup.h")).unwrap();
    for name in [
        "typedef struct FagGroup FagGroup;",
        "typedef struct FagPresentation FagPresentation;",
        "FAG_STATUS_CAP_EXCEEDED = 4",
        "fag_group_from_spec",
        "fag_group_from_cayley_table",
        "fag_group_is_nfa",
        "fag_presentation_classify",
        "fag_find_annihilator_json",
        "fag_string_free",
        "fag_last_error",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "fagroup.h"

int main(void) {
    FagGroup *g = NULL;
    if (fag_group_from_spec("S 5", &g) != FAG_STATUS_OK) return 1;
    bool fa = true;
    size_t order = 0, weight = 0;
    if (fag_group_is_fa(g, &fa) != FAG_STATUS_OK || fa) return 2;
    if (fag_group_order(g, &order) != FAG_STATUS_OK || order != 120) return 3;
    if (fag_group_weight(g, &weight) != FAG_STATUS_OK || weight != 1) return 4;
    fag_group_free(g);

    FagPresentation *p = NULL;
    if (fag_presentation_parse("< x, y | x^2, y^3 >", &p) != FAG_STATUS_OK) return 5;
    enum FagVerdict v;
    if (fag_presentation_classify(p, NULL, 1, &v) != FAG_STATUS_OK || v != FAG_VERDICT_NOT_FA) return 6;
    fag_presentation_free(p);

    if (fag_presentation_parse("< a | a^ >", &p) != FAG_STATUS_PARSE_ERROR) return 7;
    if (strstr(fag_last_error(), "exponent") == NULL) return 8;
    puts("ok");
    return 0;
}
"#;

/// Compile a C program against the generated header and the static library.
#[test]
fn c_program_links_against_staticlib() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    // target/<profile>/deps/<test-binary>
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libfagroup_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or {} not built", lib.display());
        return;
    }
    let dir = tempfile_dir();
    let src = dir.join("smoke.c");
    let bin = dir.join("smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "C program failed: {out:?}");
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}

fn tempfile_dir() -> PathBuf {
    let d = std::env::temp_dir().join(format!("fagroup-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
