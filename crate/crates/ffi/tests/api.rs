use std::ffi::{CStr, CString};
use std::ptr;

use zerosum_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    zs_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = zs_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn parse(text: &str) -> *mut ZsPair {
    let mut p = ptr::null_mut();
    assert_eq!(zs_pair_parse(cstr(text).as_ptr(), &mut p), ZsStatus::Ok);
    p
}

#[test]
fn parse_check_and_print() {
    unsafe {
        let p = parse("6^3 5 | 7^3 1^2");
        assert_eq!(take_string(zs_pair_to_text(p)), "7^3 1^2 | 6^3 5");
        assert_eq!(
            take_string(zs_pair_to_json(p)),
            r#"{"A": [[7,3],[1,2]], "B": [[6,3],[5,1]]}"#
        );
        assert_eq!(zs_pair_length(p), 9);
        assert_eq!(zs_pair_max_element(p), 7);
        assert!(zs_pair_is_balanced(p));
        let mut irr = false;
        assert_eq!(zs_pair_is_irreducible(p, &mut irr), ZsStatus::Ok);
        assert!(irr);
        zs_pair_free(p);
    }
}

#[test]
fn json_round_trip() {
    unsafe {
        let p = parse("5 3^2 | 4^2 3");
        let json = zs_pair_to_json(p);
        let mut q = ptr::null_mut();
        assert_eq!(zs_pair_parse_json(json, &mut q), ZsStatus::Ok);
        zs_string_free(json);
        assert_eq!(
            take_string(zs_pair_to_text(q)),
            take_string(zs_pair_to_text(p))
        );
        zs_pair_free(p);
        zs_pair_free(q);
    }
}

#[test]
fn from_runs_matches_parse() {
    unsafe {
        let (av, ac) = ([1u32, 7], [2u32, 3]);
        let (bv, bc) = ([5u32, 6], [1u32, 3]);
        let mut p = ptr::null_mut();
        let st = zs_pair_from_runs(
            av.as_ptr(),
            ac.as_ptr(),
            2,
            bv.as_ptr(),
            bc.as_ptr(),
            2,
            &mut p,
        );
        assert_eq!(st, ZsStatus::Ok);
        assert_eq!(take_string(zs_pair_to_text(p)), "7^3 1^2 | 6^3 5");
        zs_pair_free(p);

        let zero = [0u32];
        let st = zs_pair_from_runs(
            zero.as_ptr(),
            ac.as_ptr(),
            1,
            bv.as_ptr(),
            bc.as_ptr(),
            2,
            &mut p,
        );
        assert_eq!(st, ZsStatus::InvalidArgument);
    }
}

#[test]
fn reducibility_witness_text() {
    unsafe {
        let p = parse("2 1^2 | 2^2");
        let mut kind = ZsReducibility::Irreducible;
        let mut w = ptr::null_mut();
        assert_eq!(zs_pair_reducibility(p, &mut kind, &mut w), ZsStatus::Ok);
        assert_eq!(kind, ZsReducibility::Reducible);
        assert_eq!(take_string(w), "2 | 2");
        zs_pair_free(p);

        let p = parse("3 | 2");
        assert_eq!(zs_pair_reducibility(p, &mut kind, &mut w), ZsStatus::Ok);
        assert_eq!(kind, ZsReducibility::Unbalanced);
        assert!(w.is_null());
        // witness pointer is optional
        assert_eq!(
            zs_pair_reducibility(p, &mut kind, ptr::null_mut()),
            ZsStatus::Ok
        );
        zs_pair_free(p);
    }
}

#[test]
fn parse_errors_set_message() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            zs_pair_parse(cstr("3 x | 3").as_ptr(), &mut p),
            ZsStatus::ParseError
        );
        assert!(p.is_null());
        assert!(last_error().contains("column"));
        assert_eq!(zs_pair_parse(ptr::null(), &mut p), ZsStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(
            zs_pair_parse(bad.as_ptr().cast(), &mut p),
            ZsStatus::InvalidUtf8
        );
        assert_eq!(
            zs_pair_parse(cstr("1 | 1").as_ptr(), ptr::null_mut()),
            ZsStatus::NullPointer
        );
    }
}

#[test]
fn derivations() {
    unsafe {
        let p = parse("7^3 1^2 | 6^3 5");
        let mut q = ptr::null_mut();
        let st = zs_derive_product(p, cstr("7,6^3").as_ptr(), &mut q);
        assert_eq!(st, ZsStatus::Ok);
        assert_eq!(take_string(zs_pair_to_text(q)), "5 | 1^5");
        zs_pair_free(q);

        let mut step = usize::MAX;
        let st = zs_derive_chain(p, cstr("7,6;9,1").as_ptr(), &mut q, &mut step);
        assert_eq!(st, ZsStatus::DerivationFailed);
        assert_eq!(step, 1);
        assert!(last_error().contains("step 1"));

        let st = zs_derive_product(p, cstr("7,6^9").as_ptr(), &mut q);
        assert_eq!(st, ZsStatus::DerivationFailed);
        let st = zs_derive_product(p, cstr("7;6").as_ptr(), &mut q);
        assert_eq!(st, ZsStatus::ParseError);
        zs_pair_free(p);
    }
}

#[test]
fn ell_report() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(zs_compute_ell(4, ZsMode::Brute, 0, &mut r), ZsStatus::Ok);
        assert_eq!(zs_report_ell(r), 7);
        assert_eq!(zs_report_sum_cap(r), 16);
        assert!(zs_report_pairs_scanned(r) > 0);
        assert_eq!(zs_report_witness_count(r), 1);
        let mut w = ptr::null_mut();
        assert_eq!(zs_report_witness(r, 0, &mut w), ZsStatus::Ok);
        let mut e = ptr::null_mut();
        assert_eq!(zs_extremal_construction(4, &mut e), ZsStatus::Ok);
        assert_eq!(
            take_string(zs_pair_to_text(w)),
            take_string(zs_pair_to_text(e))
        );
        assert_eq!(zs_report_witness(r, 1, &mut w), ZsStatus::OutOfRange);
        let json = take_string(zs_report_to_json(r));
        assert!(json.contains("\"ell\": 7"));
        zs_pair_free(w);
        zs_pair_free(e);
        zs_report_free(r);

        assert_eq!(
            zs_compute_ell(7, ZsMode::Brute, 0, &mut r),
            ZsStatus::ResourceLimit
        );
        assert_eq!(
            zs_compute_ell(0, ZsMode::Brute, 0, &mut r),
            ZsStatus::InvalidArgument
        );
        assert_eq!(
            zs_extremal_construction(1, &mut e),
            ZsStatus::InvalidArgument
        );
    }
}

#[test]
fn enumeration_list() {
    unsafe {
        let mut l = ptr::null_mut();
        assert_eq!(
            zs_enumerate(3, ZsMode::Pruned, 0, 0, 0, &mut l),
            ZsStatus::Ok
        );
        let n = zs_pair_list_len(l);
        let mut seen = Vec::new();
        for i in 0..n {
            let mut p = ptr::null_mut();
            assert_eq!(zs_pair_list_get(l, i, &mut p), ZsStatus::Ok);
            seen.push(take_string(zs_pair_to_text(p)));
            zs_pair_free(p);
        }
        let mut p = ptr::null_mut();
        assert_eq!(zs_pair_list_get(l, n, &mut p), ZsStatus::OutOfRange);
        zs_pair_list_free(l);
        assert!(seen.contains(&"3^2 | 2^3".to_string()));
        assert_eq!(seen[0], "1 | 1");

        assert_eq!(
            zs_enumerate(3, ZsMode::Brute, 0, 5, 5, &mut l),
            ZsStatus::Ok
        );
        assert_eq!(zs_pair_list_len(l), 1);
        zs_pair_list_free(l);
    }
}

#[test]
fn marble_allocation() {
    unsafe {
        let x = [3u64, 2];
        let y = [2u64, 2, 4];
        let mut t = 0usize;
        assert_eq!(
            zs_allocate_marbles(x.as_ptr(), 2, y.as_ptr(), 3, &mut t, ptr::null_mut(), 0),
            ZsStatus::BufferTooSmall
        );
        assert!(t >= 1);
        let mut z = vec![0u64; 2 * (t + 1)];
        assert_eq!(
            zs_allocate_marbles(
                x.as_ptr(),
                2,
                y.as_ptr(),
                3,
                &mut t,
                z.as_mut_ptr(),
                z.len()
            ),
            ZsStatus::Ok
        );
        for (i, row) in z.chunks(t + 1).enumerate() {
            assert_eq!(row.iter().sum::<u64>(), x[i]);
        }

        let big = [100u64];
        assert_eq!(
            zs_allocate_marbles(
                x.as_ptr(),
                2,
                big.as_ptr(),
                1,
                &mut t,
                z.as_mut_ptr(),
                z.len()
            ),
            ZsStatus::InvalidArgument
        );
    }
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        zs_pair_free(ptr::null_mut());
        zs_report_free(ptr::null_mut());
        zs_pair_list_free(ptr::null_mut());
        zs_string_free(ptr::null_mut());
        assert!(zs_pair_to_text(ptr::null()).is_null());
        assert_eq!(zs_pair_length(ptr::null()), 0);
        let mut b = false;
        assert_eq!(
            zs_pair_is_irreducible(ptr::null(), &mut b),
            ZsStatus::NullPointer
        );
        let v = CStr::from_ptr(zs_version()).to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}
