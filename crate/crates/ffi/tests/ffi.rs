use std::ffi::{CStr, CString};
use std::ptr;

use tight_embed_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = te_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

unsafe fn modulus(json: &str) -> *mut TeModulus {
    let mut m = ptr::null_mut();
    assert_eq!(te_modulus_from_json(c(json).as_ptr(), &mut m), TeStatus::Ok);
    m
}

unsafe fn space(json: &str) -> *mut TeSpace {
    let mut s = ptr::null_mut();
    assert_eq!(te_space_from_json(c(json).as_ptr(), &mut s), TeStatus::Ok, "{}", last_error());
    s
}

#[test]
fn modulus_round_trip() {
    unsafe {
        let m = modulus(r#"{"family":"power_rho","alpha":0.5}"#);
        let mut v = 0.0;
        assert_eq!(te_modulus_eval(m, 4.0, &mut v), TeStatus::Ok);
        assert_eq!(v, 2.0);
        assert_eq!(te_modulus_eval(m, -1.0, &mut v), TeStatus::InvalidInput);
        assert!(!last_error().is_empty());

        let mut pass = false;
        assert_eq!(te_modulus_check(m, TeClass::P, &mut pass), TeStatus::Ok);
        assert!(pass);
        assert_eq!(te_modulus_check(m, TeClass::Omega, &mut pass), TeStatus::Ok);
        assert!(!pass);
        assert!(last_error().contains("clause"));

        let mut js = ptr::null_mut();
        assert_eq!(te_modulus_to_json(m, &mut js), TeStatus::Ok);
        let text = CStr::from_ptr(js).to_str().unwrap().to_owned();
        te_string_free(js);
        assert!(text.contains("power_rho"));
        te_modulus_free(m);
    }
}

#[test]
fn null_and_malformed_inputs_are_invalid() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(te_modulus_from_json(ptr::null(), &mut m), TeStatus::InvalidInput);
        assert_eq!(te_modulus_from_json(c("{not json").as_ptr(), &mut m), TeStatus::InvalidInput);
        assert!(m.is_null());
        let mut v = 0.0;
        assert_eq!(te_modulus_eval(ptr::null(), 1.0, &mut v), TeStatus::InvalidInput);
        assert_eq!(te_space_len(ptr::null()), 0);
        te_modulus_free(ptr::null_mut());
        te_space_free(ptr::null_mut());
        te_string_free(ptr::null_mut());
    }
}

#[test]
fn successful_call_clears_last_error() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(te_modulus_from_json(ptr::null(), &mut m), TeStatus::InvalidInput);
        assert!(!te_last_error().is_null());
        let m = modulus(r#"{"family":"exp_floor"}"#);
        assert!(te_last_error().is_null());
        te_modulus_free(m);
    }
}

#[test]
fn lp_embedding_through_handles() {
    unsafe {
        let s = space(r#"{"type":"points","p":2,"coords":[[0,0],[1,0],[0,3],[2,2],[0.25,0.1]],"basepoint":0}"#);
        assert_eq!(te_space_len(s), 5);
        let phi = modulus(r#"{"family":"exp_floor"}"#);
        let mut e = ptr::null_mut();
        let status = te_lp_embed(s, phi, 0.0, 0.06, 2.0, &mut e);
        assert_eq!(status, TeStatus::Ok, "{}", last_error());
        assert!(te_lp_embedding_pass(e));

        let mut d = 0.0;
        assert_eq!(te_lp_embedding_distance(e, 0, 0, &mut d), TeStatus::Ok);
        assert_eq!(d, 0.0);
        assert_eq!(te_lp_embedding_distance(e, 1, 2, &mut d), TeStatus::Ok);
        // the map is 9-Lipschitz and injective on these points
        assert!(d > 0.0 && d <= 9.0 * 10f64.sqrt());
        assert_eq!(te_lp_embedding_distance(e, 0, 5, &mut d), TeStatus::InvalidInput);

        let mut js = ptr::null_mut();
        assert_eq!(te_lp_embedding_to_json(e, &mut js), TeStatus::Ok);
        assert!(CStr::from_ptr(js).to_str().unwrap().contains("\"kind\""));
        te_string_free(js);

        te_lp_embedding_free(e);
        te_modulus_free(phi);
        te_space_free(s);
    }
}

#[test]
fn lp_embed_needs_points_with_origin() {
    unsafe {
        let s = space(r#"{"type":"matrix","d":[[0,1],[1,0]]}"#);
        let phi = modulus(r#"{"family":"exp_floor"}"#);
        let mut e = ptr::null_mut();
        assert_eq!(te_lp_embed(s, phi, 0.0, 0.06, 2.0, &mut e), TeStatus::InvalidInput);
        assert!(e.is_null());
        assert_eq!(te_lp_embed(s, phi, 0.0, 0.5, 2.0, &mut e), TeStatus::InvalidInput);
        te_modulus_free(phi);
        te_space_free(s);
    }
}

#[test]
fn stable_embedding_through_handles() {
    unsafe {
        let s = space(r#"{"type":"matrix","d":[[0,1,3],[1,0,2],[3,2,0]]}"#);
        let rho = modulus(r#"{"family":"power_rho","alpha":0.5}"#);
        let omega = modulus(r#"{"family":"power_omega","alpha":0.5}"#);
        let mut e = ptr::null_mut();
        assert_eq!(te_stable_embed(s, 0, rho, omega, &mut e), TeStatus::Ok, "{}", last_error());
        assert!(te_stable_embedding_pass(e));
        assert!(te_stable_embedding_max_n_omega(e) <= 1.0 + 1e-12);

        let mut d = 0.0;
        assert_eq!(te_stable_embedding_distance(e, 0, 2, &mut d), TeStatus::Ok);
        // the regularized rho interpolates sqrt(t) by chords, so it sits just below it
        assert!(d >= 3f64.sqrt() * (1.0 - 1e-4) && d <= 3.0 * (1.0 + 1e-9), "{d}");

        let mut js = ptr::null_mut();
        assert_eq!(te_stable_embedding_to_json(e, &mut js), TeStatus::Ok);
        assert!(CStr::from_ptr(js).to_str().unwrap().contains("\"stable\""));
        te_string_free(js);

        let mut bad = ptr::null_mut();
        assert_eq!(te_stable_embed(s, 7, rho, omega, &mut bad), TeStatus::InvalidInput);
        assert_eq!(te_stable_embed(s, 0, omega, rho, &mut bad), TeStatus::InvalidInput);

        te_stable_embedding_free(e);
        te_modulus_free(rho);
        te_modulus_free(omega);
        te_space_free(s);
    }
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(te_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/tight_embed.h")).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 20);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    for ty in ["TeModulus", "TeSpace", "TeLpEmbedding", "TeStableEmbedding", "TE_STATUS_VERIFY_FAILED"] {
        assert!(header.contains(ty), "{ty} missing from header");
    }
}
