use std::ffi::{c_void, CStr};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use rlemaw_ffi::*;

fn bundle(text: &str) -> *mut RlemawBundle {
    let mut b = ptr::null_mut();
    let s = unsafe { rlemaw_bundle_new(text.as_ptr(), text.len(), &mut b) };
    assert_eq!(s, RlemawStatus::Ok);
    assert!(!b.is_null());
    b
}

extern "C" fn collect(h: *const RlemawHandle, user: *mut c_void) -> i32 {
    let out = unsafe { &mut *(user as *mut Vec<RlemawHandle>) };
    out.push(unsafe { *h });
    0
}

extern "C" fn stop_after_two(_: *const RlemawHandle, user: *mut c_void) -> i32 {
    let n = unsafe { &mut *(user as *mut usize) };
    *n += 1;
    i32::from(*n == 2)
}

fn handles(b: *const RlemawBundle, mask: u32) -> Vec<RlemawHandle> {
    let mut out: Vec<RlemawHandle> = Vec::new();
    let s = unsafe {
        rlemaw_bundle_enumerate(b, mask, Some(collect), &mut out as *mut _ as *mut c_void)
    };
    assert_eq!(s, RlemawStatus::Ok);
    out
}

fn word(b: *const RlemawBundle, h: &RlemawHandle) -> String {
    let mut buf = [0u8; 64];
    let mut len = 0usize;
    let s = unsafe { rlemaw_handle_expand_utf8(b, h, buf.as_mut_ptr(), buf.len(), &mut len) };
    assert_eq!(s, RlemawStatus::Ok);
    String::from_utf8(buf[..len].to_vec()).unwrap()
}

#[test]
fn counts_and_words() {
    let b = bundle("bbacccbaa");
    let mut counts = [0u64; 5];
    assert_eq!(
        unsafe { rlemaw_bundle_counts(b, counts.as_mut_ptr()) },
        RlemawStatus::Ok
    );
    assert_eq!(counts, [3, 3, 2, 1, 3]);
    let all: Vec<String> = handles(b, 0).iter().map(|h| word(b, h)).collect();
    assert_eq!(all.len(), 12);
    let type4: Vec<String> = handles(b, 1 << 3).iter().map(|h| word(b, h)).collect();
    assert_eq!(type4, ["cbac"]);
    assert!(unsafe { rlemaw_bundle_space_words(b) } > 0);
    unsafe { rlemaw_bundle_free(b) };
}

#[test]
fn code_point_expansion_and_short_buffers() {
    let b = bundle("ab\u{e9}\u{e9}\u{e9}b");
    let h = handles(b, 1)
        .into_iter()
        .find(|h| h.lead_symbol == 0xe9)
        .unwrap();
    let mut len = 0usize;
    let s = unsafe { rlemaw_handle_expand(b, &h, ptr::null_mut(), 0, &mut len) };
    assert_eq!(s, RlemawStatus::BufferTooSmall);
    assert_eq!(len, 4);
    let mut buf = vec![0u32; len];
    assert_eq!(
        unsafe { rlemaw_handle_expand(b, &h, buf.as_mut_ptr(), len, &mut len) },
        RlemawStatus::Ok
    );
    assert_eq!(buf, [0xe9; 4]);
    unsafe { rlemaw_bundle_free(b) };
}

#[test]
fn enumeration_stops_on_request() {
    let b = bundle("bbacccbaa");
    let mut n = 0usize;
    let s = unsafe {
        rlemaw_bundle_enumerate(b, 0, Some(stop_after_two), &mut n as *mut _ as *mut c_void)
    };
    assert_eq!(s, RlemawStatus::Ok);
    assert_eq!(n, 2);
    unsafe { rlemaw_bundle_free(b) };
}

#[test]
fn run_format_input() {
    let src = "a^1 c^998 b^1";
    let mut b = ptr::null_mut();
    assert_eq!(
        unsafe { rlemaw_bundle_new_rle(src.as_ptr(), src.len(), &mut b) },
        RlemawStatus::Ok
    );
    assert_eq!(handles(b, 1 << 2).len(), 997);
    unsafe { rlemaw_bundle_free(b) };
}

#[test]
fn error_codes() {
    let mut b = ptr::null_mut();
    let bad = [0xffu8, 0xfe];
    assert_eq!(
        unsafe { rlemaw_bundle_new(bad.as_ptr(), 2, &mut b) },
        RlemawStatus::InvalidUtf8
    );
    assert_eq!(
        unsafe { rlemaw_bundle_new(ptr::null(), 3, &mut b) },
        RlemawStatus::NullPointer
    );
    assert_eq!(
        unsafe { rlemaw_bundle_new(bad.as_ptr(), 0, ptr::null_mut()) },
        RlemawStatus::NullPointer
    );
    let src = "a^0";
    assert_eq!(
        unsafe { rlemaw_bundle_new_rle(src.as_ptr(), 3, &mut b) },
        RlemawStatus::InvalidInput
    );
    let mut counts = [0u64; 5];
    assert_eq!(
        unsafe { rlemaw_bundle_counts(ptr::null(), counts.as_mut_ptr()) },
        RlemawStatus::NullPointer
    );
    assert_eq!(
        unsafe { rlemaw_bundle_enumerate(ptr::null(), 0, Some(collect), ptr::null_mut()) },
        RlemawStatus::NullPointer
    );

    let b = bundle("abc");
    assert_eq!(
        unsafe { rlemaw_bundle_enumerate(b, 0, None, ptr::null_mut()) },
        RlemawStatus::NullPointer
    );
    let bogus = RlemawHandle {
        type_id: 3,
        lead_symbol: 'a' as u32,
        lead_count: 1,
        run_index: 9,
        run_span: 2,
        adjust_exponent: 1,
    };
    let mut len = 0;
    assert_eq!(
        unsafe { rlemaw_handle_expand(b, &bogus, ptr::null_mut(), 0, &mut len) },
        RlemawStatus::InvalidHandle
    );
    let msg = unsafe { CStr::from_ptr(rlemaw_status_message(RlemawStatus::InvalidHandle)) };
    assert!(!msg.to_bytes().is_empty());
    unsafe {
        rlemaw_bundle_free(b);
        rlemaw_bundle_free(ptr::null_mut());
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(crate_dir().join("include/rlemaw.h")).unwrap();
    for name in [
        "rlemaw_bundle_new",
        "rlemaw_bundle_new_rle",
        "rlemaw_bundle_free",
        "rlemaw_bundle_counts",
        "rlemaw_bundle_enumerate",
        "rlemaw_handle_expand",
        "rlemaw_handle_expand_utf8",
        "rlemaw_status_message",
        "RLEMAW_STATUS_BUFFER_TOO_SMALL",
        "typedef struct RlemawBundle RlemawBundle",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "rlemaw.h"

static int count(const RlemawHandle *h, void *user) {
    (void)h;
    ++*(int *)user;
    return 0;
}

int main(void) {
    const char *text = "bbacccbaa";
    RlemawBundle *b = NULL;
    if (rlemaw_bundle_new((const uint8_t *)text, strlen(text), &b) != RLEMAW_STATUS_OK) return 1;
    uint64_t counts[5];
    rlemaw_bundle_counts(b, counts);
    int n = 0;
    rlemaw_bundle_enumerate(b, 0, count, &n);
    printf("%d %llu %llu\n", n, (unsigned long long)counts[0], (unsigned long long)counts[4]);
    rlemaw_bundle_free(b);
    return 0;
}
"#;

/// Compiles and runs a C program against the static library.
#[test]
fn c_program_links_against_static_library() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("librlemaw_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let bin = dir.path().join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler named cc");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "12 3 3\n");
}
