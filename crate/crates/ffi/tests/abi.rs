use std::ffi::{CStr, CString};
use std::ptr;

use glg_ffi::*;

fn graph6(s: &str) -> *mut GlgGraph {
    let c = CString::new(s).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { glg_graph_from_graph6(c.as_ptr(), &mut g) }, GlgStatus::Ok);
    g
}

fn family(f: GlgFamily, n: usize) -> *mut GlgGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { glg_graph_family(f, n, &mut g) }, GlgStatus::Ok);
    g
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { glg_string_free(s) };
    out
}

#[test]
fn path_game() {
    let g = graph6("DhC");
    assert_eq!(unsafe { (glg_graph_n(g), glg_graph_m(g)) }, (5, 4));
    let mut r = GlgGameResult::default();
    assert_eq!(unsafe { glg_simulate(g, 2, 1, 1, 1, 0, &mut r) }, GlgStatus::Ok);
    assert_eq!(r, GlgGameResult { complexity: 3, halted: 0, entry: 1, repeat_at: 3 });
    unsafe { glg_graph_free(g) };
}

#[test]
fn complete_game() {
    let g = family(GlgFamily::Complete, 5);
    let mut r = GlgGameResult::default();
    assert_eq!(unsafe { glg_simulate(g, 0, 1, 1, 1, 0, &mut r) }, GlgStatus::Ok);
    assert_eq!((r.complexity, r.halted), (2, 0));
    unsafe { glg_graph_free(g) };
}

#[test]
fn cap_exceeded() {
    let g = family(GlgFamily::Path, 5);
    let mut r = GlgGameResult::default();
    assert_eq!(unsafe { glg_simulate(g, 2, 1, 1, 1, 1, &mut r) }, GlgStatus::CapExceeded);
    assert!(!glg_last_error().is_null());
    unsafe { glg_graph_free(g) };
}

#[test]
fn iso_and_distance() {
    let p = family(GlgFamily::Path, 4);
    let s = family(GlgFamily::Star, 4);
    let (mut flag, mut step) = (9u8, 9usize);
    assert_eq!(unsafe { glg_iso_test(p, s, 2, &mut flag, &mut step) }, GlgStatus::Ok);
    assert_eq!((flag, step), (1, 1));
    assert_eq!(unsafe { glg_iso_test(p, p, 2, &mut flag, &mut step) }, GlgStatus::Ok);
    assert_eq!((flag, step), (0, 0));
    let mut d = -1.0;
    assert_eq!(unsafe { glg_distance(p, s, 1, false, &mut d) }, GlgStatus::Ok);
    assert_eq!(d, 2f64.sqrt());
    unsafe {
        glg_graph_free(p);
        glg_graph_free(s);
    }
}

#[test]
fn features_and_graph6() {
    let g = family(GlgFamily::Star, 4);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { glg_graph_to_graph6(g, &mut s) }, GlgStatus::Ok);
    let text = take_string(s);
    let h = graph6(&text);
    assert_eq!(unsafe { glg_graph_m(h) }, 3);
    assert_eq!(unsafe { glg_features(g, 1, false, &mut s) }, GlgStatus::Ok);
    assert!(take_string(s).starts_with("4 1 0 "));
    unsafe {
        glg_graph_free(g);
        glg_graph_free(h);
    }
}

#[test]
fn edges_and_text() {
    let e = [0usize, 1, 1, 2];
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { glg_graph_from_edges(3, e.as_ptr(), 2, &mut g) }, GlgStatus::Ok);
    assert_eq!(unsafe { glg_graph_m(g) }, 2);
    unsafe { glg_graph_free(g) };
    let bad = [0usize, 3];
    assert_eq!(unsafe { glg_graph_from_edges(3, bad.as_ptr(), 1, &mut g) }, GlgStatus::InvalidArgument);
    let text = CString::new("3 2\n0 1\n1 2\n").unwrap();
    assert_eq!(unsafe { glg_graph_from_edge_list(text.as_ptr(), &mut g) }, GlgStatus::Ok);
    unsafe { glg_graph_free(g) };
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { glg_graph_random(6, 4, 1, &mut r) }, GlgStatus::Ok);
    assert_eq!(unsafe { glg_graph_m(r) }, 4);
    unsafe { glg_graph_free(r) };
}

#[test]
fn errors() {
    let mut g = ptr::null_mut();
    let bad = CString::new("Bx").unwrap();
    assert_eq!(unsafe { glg_graph_from_graph6(bad.as_ptr(), &mut g) }, GlgStatus::Parse);
    assert!(g.is_null());
    let msg = unsafe { CStr::from_ptr(glg_last_error()) }.to_str().unwrap();
    assert!(!msg.is_empty());
    assert_eq!(unsafe { glg_graph_from_graph6(ptr::null(), &mut g) }, GlgStatus::NullPointer);
    let ok = CString::new("Bw").unwrap();
    assert_eq!(unsafe { glg_graph_from_graph6(ok.as_ptr(), ptr::null_mut()) }, GlgStatus::NullPointer);
    let mut d = 0.0;
    assert_eq!(unsafe { glg_distance(ptr::null(), ptr::null(), 1, false, &mut d) }, GlgStatus::NullPointer);
    let (a, b) = (family(GlgFamily::Path, 4), family(GlgFamily::Path, 5));
    assert_eq!(unsafe { glg_distance(a, b, 1, false, &mut d) }, GlgStatus::InvalidArgument);
    assert_eq!(unsafe { glg_graph_family(GlgFamily::Cycle, 0, &mut g) }, GlgStatus::InvalidArgument);
    unsafe {
        glg_graph_free(a);
        glg_graph_free(b);
        glg_graph_free(ptr::null_mut());
        glg_string_free(ptr::null_mut());
    }
}
