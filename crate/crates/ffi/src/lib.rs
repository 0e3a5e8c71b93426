//! C ABI for `zerosum`.
//!
//! Pairs, reports, and pair lists cross the boundary as opaque handles that
//! the caller releases with the matching `*_free` function. Every fallible
//! function returns a [`ZsStatus`]; on failure a message is available from
//! [`zs_last_error`] on the same thread. Strings returned as `char *` are
//! owned by the caller and released with [`zs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use zerosum::formats::{format_sides, parse_chain, parse_pair_json, parse_plan};
use zerosum::{
    allocate_marbles, compute_ell, derive_chain, derive_product, enumerate_irreducible,
    extremal_construction, is_irreducible, normalize, pair_canonical, pair_to_json, parse_pair,
    reducibility_witness, split_index, AllocationError, DeriveError, EllReport, EnumConfig,
    EnumError, Mode, Pair, Reducibility,
};

/// Result codes shared by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    DerivationFailed = 5,
    ResourceLimit = 6,
    OutOfRange = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZsMode {
    Brute = 0,
    Pruned = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZsReducibility {
    Irreducible = 0,
    Reducible = 1,
    Unbalanced = 2,
}

/// Opaque canonical pair.
pub struct ZsPair {
    inner: Pair,
}

/// Opaque `ell(k)` report.
pub struct ZsReport {
    inner: EllReport,
}

/// Opaque list of pairs in enumeration order.
pub struct ZsPairList {
    inner: Vec<Pair>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: ZsStatus, msg: impl Into<String>) -> ZsStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> Result<(), ZsStatus>) -> ZsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ZsStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(ZsStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, ZsStatus> {
    if text.is_null() {
        return Err(fail(ZsStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(ZsStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn pair_ref<'a>(pair: *const ZsPair) -> Result<&'a Pair, ZsStatus> {
    pair.as_ref()
        .map(|p| &p.inner)
        .ok_or_else(|| fail(ZsStatus::NullPointer, "null pair handle"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), ZsStatus> {
    if out.is_null() {
        return Err(fail(ZsStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

fn into_handle(pair: Pair) -> *mut ZsPair {
    Box::into_raw(Box::new(ZsPair { inner: pair }))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn enum_status(e: EnumError) -> ZsStatus {
    let status = match e {
        EnumError::KTooLarge { .. } | EnumError::TooManyCandidates { .. } => {
            ZsStatus::ResourceLimit
        }
        _ => ZsStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn derive_status(e: DeriveError) -> ZsStatus {
    fail(ZsStatus::DerivationFailed, e.to_string())
}

/// Message describing the last failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn zs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn zs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a pair in text form (`7^3 1^2 | 6^3 5`).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zs_pair_parse(text: *const c_char, out: *mut *mut ZsPair) -> ZsStatus {
    guard(|| {
        let text = read_str(text)?;
        let pair = parse_pair(text).map_err(|e| fail(ZsStatus::ParseError, e.to_string()))?;
        write_out(out, into_handle(pair))
    })
}

/// Parses a pair in JSON form (`{"A": [[7,3],[1,2]], "B": [[6,3],[5,1]]}`).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zs_pair_parse_json(
    text: *const c_char,
    out: *mut *mut ZsPair,
) -> ZsStatus {
    guard(|| {
        let text = read_str(text)?;
        let pair = parse_pair_json(text).map_err(|e| fail(ZsStatus::ParseError, e.to_string()))?;
        write_out(out, into_handle(pair))
    })
}

/// Builds a pair from run arrays: side A holds `a_counts[i]` copies of
/// `a_values[i]`, likewise for B.
///
/// # Safety
/// Each array must hold at least the stated number of elements.
#[no_mangle]
pub unsafe extern "C" fn zs_pair_from_runs(
    a_values: *const u32,
    a_counts: *const u32,
    a_len: usize,
    b_values: *const u32,
    b_counts: *const u32,
    b_len: usize,
    out: *mut *mut ZsPair,
) -> ZsStatus {
    guard(|| {
        let side = |values: *const u32, counts: *const u32, len: usize| {
            if len > 0 && (values.is_null() || counts.is_null()) {
                return Err(fail(ZsStatus::NullPointer, "null run array"));
            }
            let (values, counts) = if len == 0 {
                (&[][..], &[][..])
            } else {
                (
                    std::slice::from_raw_parts(values, len),
                    std::slice::from_raw_parts(counts, len),
                )
            };
            normalize(
                values
                    .iter()
                    .zip(counts)
                    .map(|(&v, &c)| (v as i64, c as i64)),
            )
            .map_err(|e| fail(ZsStatus::InvalidArgument, e.to_string()))
        };
        let a = side(a_values, a_counts, a_len)?;
        let b = side(b_values, b_counts, b_len)?;
        write_out(out, into_handle(pair_canonical(a, b)))
    })
}

/// # Safety
/// `pair` must be NULL or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zs_pair_free(pair: *mut ZsPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Text form of the pair; NULL if `pair` is NULL.
///
/// # Safety
/// `pair` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zs_pair_to_text(pair: *const ZsPair) -> *mut c_char {
    pair.as_ref()
        .map_or(ptr::null_mut(), |p| into_c_string(p.inner.to_string()))
}

/// JSON form of the pair; NULL if `pair` is NULL.
///
/// # Safety
/// `pair` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zs_pair_to_json(pair: *const ZsPair) -> *mut c_char {
    pair.as_ref()
        .map_or(ptr::null_mut(), |p| into_c_string(pair_to_json(&p.inner)))
}

/// `|A| + |B|`, or 0 for a NULL handle.
///
/// # Safety
/// `pair` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zs_pair_length(pair: *const ZsPair) -> u64 {
    pair.as_ref().map_or(0, |p| p.inner.length())
}

/// # Safety
/// `pair` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zs_pair_max_element(pair: *const ZsPair) -> u32 {
    pair.as_ref().map_or(0, |p| p.inner.max_element())
}

/// # Safety
/// `pair` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zs_pair_is_balanced(pair: *const ZsPair) -> bool {
    pair.as_ref().is_some_and(|p| p.inner.is_balanced())
}

/// # Safety
/// `pair` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zs_pair_is_irreducible(pair: *const ZsPair, out: *mut bool) -> ZsStatus {
    guard(|| {
        let p = pair_ref(pair)?;
        write_out(out, is_irreducible(p))
    })
}

/// Classifies the pair. When it is reducible and `out_witness` is not NULL,
/// `*out_witness` receives the witness as `A' | B'` text (free with
/// [`zs_string_free`]); otherwise it is set to NULL.
///
/// # Safety
/// `pair` must be a live handle; `out_kind` must be writable; `out_witness`
/// must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn zs_pair_reducibility(
    pair: *const ZsPair,
    out_kind: *mut ZsReducibility,
    out_witness: *mut *mut c_char,
) -> ZsStatus {
    guard(|| {
        let p = pair_ref(pair)?;
        let (kind, witness) = match reducibility_witness(p) {
            Reducibility::Irreducible => (ZsReducibility::Irreducible, ptr::null_mut()),
            Reducibility::Unbalanced => (ZsReducibility::Unbalanced, ptr::null_mut()),
            Reducibility::Reducible(w) => (
                ZsReducibility::Reducible,
                into_c_string(format_sides(&w.a_sub, &w.b_sub)),
            ),
        };
        write_out(out_kind, kind)?;
        if !out_witness.is_null() {
            out_witness.write(witness);
        } else if !witness.is_null() {
            zs_string_free(witness);
        }
        Ok(())
    })
}

/// Applies a product plan (`7,6^2;7,5`) with `a` values drawn from A.
///
/// # Safety
/// `pair` must be a live handle, `plan` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zs_derive_product(
    pair: *const ZsPair,
    plan: *const c_char,
    out: *mut *mut ZsPair,
) -> ZsStatus {
    guard(|| {
        let p = pair_ref(pair)?;
        let plan =
            parse_plan(read_str(plan)?).map_err(|e| fail(ZsStatus::ParseError, e.to_string()))?;
        let derived = derive_product(p, &plan).map_err(derive_status)?;
        write_out(out, into_handle(derived))
    })
}

/// Applies a chain of single derivations (`5,2;3,2`) left to right. On a
/// failing step, `*out_failed_step` (if not NULL) receives its index.
///
/// # Safety
/// `pair` must be a live handle, `chain` a NUL-terminated string, `out`
/// writable, and `out_failed_step` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn zs_derive_chain(
    pair: *const ZsPair,
    chain: *const c_char,
    out: *mut *mut ZsPair,
    out_failed_step: *mut usize,
) -> ZsStatus {
    guard(|| {
        let p = pair_ref(pair)?;
        let steps =
            parse_chain(read_str(chain)?).map_err(|e| fail(ZsStatus::ParseError, e.to_string()))?;
        match derive_chain(p, &steps) {
            Ok(derived) => write_out(out, into_handle(derived)),
            Err(e) => {
                if let (DeriveError::ChainStep { index, .. }, false) =
                    (&e, out_failed_step.is_null())
                {
                    out_failed_step.write(*index);
                }
                Err(derive_status(e))
            }
        }
    })
}

/// `{k^(k-1)} | {(k-1)^k}` for `k > 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zs_extremal_construction(k: u32, out: *mut *mut ZsPair) -> ZsStatus {
    guard(|| {
        let p =
            extremal_construction(k).map_err(|e| fail(ZsStatus::InvalidArgument, e.to_string()))?;
        write_out(out, into_handle(p))
    })
}

fn config(k: u32, mode: ZsMode, sum_cap: u64) -> EnumConfig {
    let mode = match mode {
        ZsMode::Brute => Mode::Brute,
        ZsMode::Pruned => Mode::Pruned,
    };
    let cfg = EnumConfig::new(k, mode);
    if sum_cap == 0 {
        cfg
    } else {
        cfg.with_sum_cap(sum_cap)
    }
}

/// Computes `ell(k)` over pairs with common sum at most `sum_cap`
/// (0 selects the default `k*k`).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zs_compute_ell(
    k: u32,
    mode: ZsMode,
    sum_cap: u64,
    out: *mut *mut ZsReport,
) -> ZsStatus {
    guard(|| {
        let report = compute_ell(&config(k, mode, sum_cap)).map_err(enum_status)?;
        write_out(out, Box::into_raw(Box::new(ZsReport { inner: report })))
    })
}

/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zs_report_ell(report: *const ZsReport) -> u64 {
    report.as_ref().map_or(0, |r| r.inner.ell)
}

/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zs_report_sum_cap(report: *const ZsReport) -> u64 {
    report.as_ref().map_or(0, |r| r.inner.sum_cap)
}

/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zs_report_pairs_scanned(report: *const ZsReport) -> u64 {
    report.as_ref().map_or(0, |r| r.inner.pairs_scanned)
}

/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zs_report_witness_count(report: *const ZsReport) -> usize {
    report.as_ref().map_or(0, |r| r.inner.witnesses.len())
}

/// Copies witness `index` into a new pair handle.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zs_report_witness(
    report: *const ZsReport,
    index: usize,
    out: *mut *mut ZsPair,
) -> ZsStatus {
    guard(|| {
        let r = report
            .as_ref()
            .ok_or_else(|| fail(ZsStatus::NullPointer, "null report handle"))?;
        let p = r.inner.witnesses.get(index).ok_or_else(|| {
            fail(
                ZsStatus::OutOfRange,
                format!("witness {index} of {}", r.inner.witnesses.len()),
            )
        })?;
        write_out(out, into_handle(p.clone()))
    })
}

/// The report as a JSON document; NULL if `report` is NULL.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zs_report_to_json(report: *const ZsReport) -> *mut c_char {
    report
        .as_ref()
        .map_or(ptr::null_mut(), |r| into_c_string(r.inner.to_json()))
}

/// # Safety
/// `report` must be NULL or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zs_report_free(report: *mut ZsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Enumerates k-irreducible pairs with common sum at most `sum_cap` (0 for
/// `k*k`) and length in `[min_len, max_len]` (`max_len` 0 for unbounded).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zs_enumerate(
    k: u32,
    mode: ZsMode,
    sum_cap: u64,
    min_len: u64,
    max_len: u64,
    out: *mut *mut ZsPairList,
) -> ZsStatus {
    guard(|| {
        let mut cfg = config(k, mode, sum_cap);
        if min_len > 0 || max_len > 0 {
            let hi = if max_len == 0 { u64::MAX } else { max_len };
            cfg = cfg.with_length_window(min_len, hi);
        }
        let pairs = enumerate_irreducible(&cfg).map_err(enum_status)?;
        write_out(out, Box::into_raw(Box::new(ZsPairList { inner: pairs })))
    })
}

/// # Safety
/// `list` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zs_pair_list_len(list: *const ZsPairList) -> usize {
    list.as_ref().map_or(0, |l| l.inner.len())
}

/// Copies entry `index` into a new pair handle.
///
/// # Safety
/// `list` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zs_pair_list_get(
    list: *const ZsPairList,
    index: usize,
    out: *mut *mut ZsPair,
) -> ZsStatus {
    guard(|| {
        let l = list
            .as_ref()
            .ok_or_else(|| fail(ZsStatus::NullPointer, "null list handle"))?;
        let p = l.inner.get(index).ok_or_else(|| {
            fail(
                ZsStatus::OutOfRange,
                format!("index {index} of {}", l.inner.len()),
            )
        })?;
        write_out(out, into_handle(p.clone()))
    })
}

/// # Safety
/// `list` must be NULL or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zs_pair_list_free(list: *mut ZsPairList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Marble allocation for bin capacities `x[0..nx]` and color counts
/// `y[0..ny]`. Writes the split index to `*out_t` and the `nx` by `t + 1`
/// matrix, row-major, to `z`. Returns `BufferTooSmall` (with `*out_t` set)
/// when `z_capacity < nx * (t + 1)`.
///
/// # Safety
/// `x` and `y` must hold `nx` and `ny` elements; `out_t` must be writable;
/// `z` must be writable for `z_capacity` elements (or NULL when 0).
#[no_mangle]
pub unsafe extern "C" fn zs_allocate_marbles(
    x: *const u64,
    nx: usize,
    y: *const u64,
    ny: usize,
    out_t: *mut usize,
    z: *mut u64,
    z_capacity: usize,
) -> ZsStatus {
    guard(|| {
        if x.is_null() || y.is_null() {
            return Err(fail(ZsStatus::NullPointer, "null input array"));
        }
        let x = std::slice::from_raw_parts(x, nx);
        let y = std::slice::from_raw_parts(y, ny);
        let alloc_status = |e: AllocationError| fail(ZsStatus::InvalidArgument, e.to_string());
        let t = split_index(x, y).map_err(alloc_status)?;
        write_out(out_t, t)?;
        let needed = nx * (t + 1);
        if z_capacity < needed || z.is_null() {
            return Err(fail(
                ZsStatus::BufferTooSmall,
                format!("z needs {needed} elements, capacity {z_capacity}"),
            ));
        }
        let result = allocate_marbles(x, y, t).map_err(alloc_status)?;
        let dst = std::slice::from_raw_parts_mut(z, needed);
        for (cell, v) in dst.iter_mut().zip(result.z.iter().flatten()) {
            *cell = *v;
        }
        Ok(())
    })
}
