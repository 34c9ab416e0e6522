//! C ABI over the smoothsum library.
//!
//! Conventions: every fallible call returns an [`SsStatus`]; out-params are
//! written only on `SS_OK` (except where noted); handles are opaque and
//! freed with their matching `_free` function; buffers returned by the
//! library are released with [`ss_buffer_free`]. A thread-local message for
//! the most recent failure is available from [`ss_last_error`].

use smoothsum::repr::{FOutcome, RepresentationTable};
use smoothsum::smooth::PrimeSet;
use smoothsum::{Error, ResourceLimits};
use std::cell::RefCell;
use std::ffi::{c_char, c_int, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

/// Status codes mirroring the CLI exit-code contract.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SsStatus {
    /// Success.
    Ok = 0,
    /// Invalid input (bad primes, out-of-range parameter, ...).
    InvalidArgument = 1,
    /// A resource cap was exceeded.
    ResourceLimit = 2,
    /// The search finished without a result (honestly absent).
    BudgetExhausted = 3,
    /// A required pointer was null.
    NullPointer = 4,
    /// Unexpected internal failure.
    Internal = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', "?")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> SsStatus {
    match err.exit_code() {
        1 => SsStatus::InvalidArgument,
        _ => SsStatus::ResourceLimit,
    }
}

fn fail(err: &Error) -> SsStatus {
    set_error(&err.to_string());
    status_of(err)
}

fn guard<F: FnOnce() -> SsStatus>(f: F) -> SsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            SsStatus::Internal
        }
    }
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ss_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ss_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Opaque validated prime set.
pub struct PrimeSetHandle {
    inner: PrimeSet,
    limits: ResourceLimits,
}

/// Opaque minimal-term table.
pub struct MinTermsTableHandle {
    inner: RepresentationTable,
}

/// Validate, sort and deduplicate `primes` into a new handle.
///
/// # Safety
/// `primes` must point to `len` readable u64 values; `out` must be a valid
/// pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn ss_prime_set_new(
    primes: *const u64,
    len: usize,
    out: *mut *mut PrimeSetHandle,
) -> SsStatus {
    guard(|| {
        if primes.is_null() || out.is_null() {
            set_error("null pointer");
            return SsStatus::NullPointer;
        }
        let slice = unsafe { slice::from_raw_parts(primes, len) };
        match PrimeSet::new(slice) {
            Ok(ps) => {
                let handle = Box::new(PrimeSetHandle {
                    inner: ps,
                    limits: ResourceLimits::from_env(),
                });
                unsafe { *out = Box::into_raw(handle) };
                SsStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Release a prime-set handle. Null is ignored.
///
/// # Safety
/// `ps` must be a pointer returned by [`ss_prime_set_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_prime_set_free(ps: *mut PrimeSetHandle) {
    if !ps.is_null() {
        drop(unsafe { Box::from_raw(ps) });
    }
}

/// Number of primes in the set, 0 for a null handle.
///
/// # Safety
/// `ps` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ss_prime_set_count(ps: *const PrimeSetHandle) -> usize {
    if ps.is_null() {
        return 0;
    }
    unsafe { &*ps }.inner.count()
}

/// Write 1 to `out_is_smooth` iff n is a product of powers of the set's
/// primes (n >= 1).
///
/// # Safety
/// `ps` must be a live handle; `out_is_smooth` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_is_smooth(
    ps: *const PrimeSetHandle,
    n: u64,
    out_is_smooth: *mut c_int,
) -> SsStatus {
    guard(|| {
        if ps.is_null() || out_is_smooth.is_null() {
            set_error("null pointer");
            return SsStatus::NullPointer;
        }
        let h = unsafe { &*ps };
        if n == 0 {
            set_error("n must be >= 1");
            return SsStatus::InvalidArgument;
        }
        let v = smoothsum::smooth::is_smooth(&h.inner, n).is_some();
        unsafe { *out_is_smooth = v as c_int };
        SsStatus::Ok
    })
}

/// Largest element of A not exceeding n.
///
/// # Safety
/// `ps` must be a live handle; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_largest_smooth_leq(
    ps: *const PrimeSetHandle,
    n: u64,
    out_value: *mut u64,
) -> SsStatus {
    guard(|| {
        if ps.is_null() || out_value.is_null() {
            set_error("null pointer");
            return SsStatus::NullPointer;
        }
        let h = unsafe { &*ps };
        match smoothsum::smooth::largest_smooth_leq(&h.inner, n) {
            Ok(s) => {
                unsafe { *out_value = s.value() };
                SsStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

unsafe fn give_buffer(values: Vec<u64>, out_ptr: *mut *mut u64, out_len: *mut usize) {
    let boxed = values.into_boxed_slice();
    let len = boxed.len();
    let ptr = Box::into_raw(boxed) as *mut u64;
    unsafe {
        *out_ptr = ptr;
        *out_len = len;
    }
}

/// Release a u64 buffer returned by this library.
///
/// # Safety
/// `(ptr, len)` must be exactly as returned by a smoothsum call.
#[no_mangle]
pub unsafe extern "C" fn ss_buffer_free(ptr: *mut u64, len: usize) {
    if !ptr.is_null() {
        drop(unsafe { Box::from_raw(std::ptr::slice_from_raw_parts_mut(ptr, len)) });
    }
}

/// All elements of A in [1, limit], ascending, as a library-owned buffer.
///
/// # Safety
/// `ps` live handle; `out_values`/`out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn ss_enumerate_smooth(
    ps: *const PrimeSetHandle,
    limit: u64,
    out_values: *mut *mut u64,
    out_len: *mut usize,
) -> SsStatus {
    guard(|| {
        if ps.is_null() || out_values.is_null() || out_len.is_null() {
            set_error("null pointer");
            return SsStatus::NullPointer;
        }
        let h = unsafe { &*ps };
        match smoothsum::smooth::enumerate_smooth_values(&h.inner, limit, &h.limits) {
            Ok(values) => {
                unsafe { give_buffer(values, out_values, out_len) };
                SsStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Greedy decomposition of n; terms are non-increasing and sum to n.
///
/// # Safety
/// `ps` live handle; `out_terms`/`out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn ss_greedy_decompose(
    ps: *const PrimeSetHandle,
    n: u64,
    out_terms: *mut *mut u64,
    out_len: *mut usize,
) -> SsStatus {
    guard(|| {
        if ps.is_null() || out_terms.is_null() || out_len.is_null() {
            set_error("null pointer");
            return SsStatus::NullPointer;
        }
        let h = unsafe { &*ps };
        match smoothsum::smooth::greedy_decompose(&h.inner, n) {
            Ok(terms) => {
                let values: Vec<u64> = terms.iter().map(|t| t.value()).collect();
                unsafe { give_buffer(values, out_terms, out_len) };
                SsStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Build the minimal-term table for n <= limit with the given term cap.
///
/// # Safety
/// `ps` live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ss_min_terms_table_new(
    ps: *const PrimeSetHandle,
    limit: u64,
    term_cap: u8,
    out: *mut *mut MinTermsTableHandle,
) -> SsStatus {
    guard(|| {
        if ps.is_null() || out.is_null() {
            set_error("null pointer");
            return SsStatus::NullPointer;
        }
        let h = unsafe { &*ps };
        match smoothsum::repr::build_min_terms(&h.inner, limit, term_cap, &h.limits) {
            Ok(table) => {
                unsafe { *out = Box::into_raw(Box::new(MinTermsTableHandle { inner: table })) };
                SsStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Release a table handle. Null is ignored.
///
/// # Safety
/// `t` must come from [`ss_min_terms_table_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_min_terms_table_free(t: *mut MinTermsTableHandle) {
    if !t.is_null() {
        drop(unsafe { Box::from_raw(t) });
    }
}

/// Minimal term count for n; UINT32_MAX when it exceeds the table's cap.
///
/// # Safety
/// `t` live handle; `out` writable; n within the table's limit.
#[no_mangle]
pub unsafe extern "C" fn ss_min_terms(
    t: *const MinTermsTableHandle,
    n: u64,
    out: *mut u32,
) -> SsStatus {
    guard(|| {
        if t.is_null() || out.is_null() {
            set_error("null pointer");
            return SsStatus::NullPointer;
        }
        let h = unsafe { &*t };
        if n < 1 || n > h.inner.limit() {
            set_error("n outside table range");
            return SsStatus::InvalidArgument;
        }
        let v = match h.inner.min_terms(n) {
            Some(c) => c as u32,
            None => u32::MAX,
        };
        unsafe { *out = v };
        SsStatus::Ok
    })
}

/// F(k) from a prebuilt table. Returns SS_BUDGET_EXHAUSTED when every n up
/// to the table limit is representable (out is not written).
///
/// # Safety
/// `t` live handle; `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn ss_f_of_k(
    t: *const MinTermsTableHandle,
    k: u32,
    out_value: *mut u64,
) -> SsStatus {
    guard(|| {
        if t.is_null() || out_value.is_null() {
            set_error("null pointer");
            return SsStatus::NullPointer;
        }
        let h = unsafe { &*t };
        match h.inner.f_of_k(k) {
            FOutcome::Value(v) => {
                unsafe { *out_value = v };
                SsStatus::Ok
            }
            FOutcome::ExceedsLimit(l) => {
                set_error(&format!("every n <= {l} is representable"));
                SsStatus::BudgetExhausted
            }
        }
    })
}

/// Carmichael function of m.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_carmichael_lambda(m: u64, out: *mut u64) -> SsStatus {
    guard(|| {
        if out.is_null() {
            set_error("null pointer");
            return SsStatus::NullPointer;
        }
        match smoothsum::carmichael::carmichael_lambda(m) {
            Ok(l) => {
                unsafe { *out = l };
                SsStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Minimal signed term count for n under a magnitude bound. `out_found`
/// is 0 when no representation of at most `length_cap` terms exists under
/// the bound (then `out_len` is not written). `out_certified` reports the
/// bound >= n^2 certification flag.
///
/// # Safety
/// `ps` live handle; out-params writable.
#[no_mangle]
pub unsafe extern "C" fn ss_min_terms_signed(
    ps: *const PrimeSetHandle,
    n: i64,
    bound: u64,
    length_cap: u32,
    out_len: *mut u32,
    out_found: *mut c_int,
    out_certified: *mut c_int,
) -> SsStatus {
    guard(|| {
        if ps.is_null() || out_len.is_null() || out_found.is_null() || out_certified.is_null() {
            set_error("null pointer");
            return SsStatus::NullPointer;
        }
        let h = unsafe { &*ps };
        match smoothsum::signed::min_terms_signed(&h.inner, n, bound, length_cap, &h.limits) {
            Ok(r) => {
                unsafe {
                    *out_certified = r.certified as c_int;
                    match r.length {
                        Some(l) => {
                            *out_found = 1;
                            *out_len = l;
                        }
                        None => {
                            *out_found = 0;
                        }
                    }
                }
                SsStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Residue coverage count mod m for sums of at most k (signed) smooth
/// terms. `out_has_missing` is 1 when some residue is uncovered and then
/// `out_first_missing` holds the smallest one.
///
/// # Safety
/// `ps` live handle; out-params writable.
#[no_mangle]
pub unsafe extern "C" fn ss_coverage_count(
    ps: *const PrimeSetHandle,
    k: u32,
    m: u64,
    signed_terms: c_int,
    out_covered: *mut u64,
    out_first_missing: *mut u64,
    out_has_missing: *mut c_int,
) -> SsStatus {
    guard(|| {
        if ps.is_null()
            || out_covered.is_null()
            || out_first_missing.is_null()
            || out_has_missing.is_null()
        {
            set_error("null pointer");
            return SsStatus::NullPointer;
        }
        let h = unsafe { &*ps };
        match smoothsum::residue::sumset_coverage(&h.inner, k, m, signed_terms != 0, &h.limits) {
            Ok(cov) => {
                unsafe {
                    *out_covered = cov.count();
                    match cov.first_missing() {
                        Some(r) => {
                            *out_has_missing = 1;
                            *out_first_missing = r;
                        }
                        None => {
                            *out_has_missing = 0;
                        }
                    }
                }
                SsStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;
    use std::ptr;

    fn new_ps(primes: &[u64]) -> *mut PrimeSetHandle {
        let mut out: *mut PrimeSetHandle = ptr::null_mut();
        let st = unsafe { ss_prime_set_new(primes.as_ptr(), primes.len(), &mut out) };
        assert_eq!(st, SsStatus::Ok);
        out
    }

    #[test]
    fn lifecycle_and_values() {
        let ps = new_ps(&[2, 3]);
        assert_eq!(unsafe { ss_prime_set_count(ps) }, 2);

        let mut v = 0u64;
        assert_eq!(unsafe { ss_largest_smooth_leq(ps, 23, &mut v) }, SsStatus::Ok);
        assert_eq!(v, 18);

        let mut terms: *mut u64 = ptr::null_mut();
        let mut len = 0usize;
        assert_eq!(
            unsafe { ss_greedy_decompose(ps, 23, &mut terms, &mut len) },
            SsStatus::Ok
        );
        let slice = unsafe { std::slice::from_raw_parts(terms, len) };
        assert_eq!(slice, &[18, 4, 1]);
        unsafe { ss_buffer_free(terms, len) };

        unsafe { ss_prime_set_free(ps) };
    }

    #[test]
    fn error_codes_and_messages() {
        let mut out: *mut PrimeSetHandle = ptr::null_mut();
        let bad = [2u64, 4];
        let st = unsafe { ss_prime_set_new(bad.as_ptr(), 2, &mut out) };
        assert_eq!(st, SsStatus::InvalidArgument);
        let msg = unsafe { CStr::from_ptr(ss_last_error()) }.to_str().unwrap();
        assert!(msg.contains("4"), "message was {msg:?}");

        let st = unsafe { ss_prime_set_new(ptr::null(), 0, &mut out) };
        assert_eq!(st, SsStatus::NullPointer);
    }

    #[test]
    fn table_and_thresholds() {
        let ps = new_ps(&[2, 3]);
        let mut table: *mut MinTermsTableHandle = ptr::null_mut();
        assert_eq!(
            unsafe { ss_min_terms_table_new(ps, 1000, 8, &mut table) },
            SsStatus::Ok
        );
        let mut mt = 0u32;
        assert_eq!(unsafe { ss_min_terms(table, 23, &mut mt) }, SsStatus::Ok);
        assert_eq!(mt, 3);

        let mut f = 0u64;
        assert_eq!(unsafe { ss_f_of_k(table, 2, &mut f) }, SsStatus::Ok);
        assert_eq!(f, 23);
        assert_eq!(
            unsafe { ss_f_of_k(table, 8, &mut f) },
            SsStatus::BudgetExhausted
        );
        unsafe { ss_min_terms_table_free(table) };
        unsafe { ss_prime_set_free(ps) };
    }

    #[test]
    fn lambda_signed_and_coverage() {
        let mut l = 0u64;
        assert_eq!(unsafe { ss_carmichael_lambda(15, &mut l) }, SsStatus::Ok);
        assert_eq!(l, 4);

        let ps = new_ps(&[2, 3]);
        let (mut len, mut found, mut cert) = (0u32, 0, 0);
        assert_eq!(
            unsafe { ss_min_terms_signed(ps, 23, 1000, 8, &mut len, &mut found, &mut cert) },
            SsStatus::Ok
        );
        assert_eq!((found, len, cert), (1, 2, 1)); // 27 - 4; 1000 >= 23^2

        let (mut covered, mut first, mut has) = (0u64, 0u64, 0);
        assert_eq!(
            unsafe { ss_coverage_count(ps, 1, 2730, 1, &mut covered, &mut first, &mut has) },
            SsStatus::Ok
        );
        assert_eq!((covered, has, first), (339, 1, 5));
        unsafe { ss_prime_set_free(ps) };
    }

    #[test]
    fn enumerate_buffer() {
        let ps = new_ps(&[2, 3]);
        let mut vals: *mut u64 = ptr::null_mut();
        let mut len = 0usize;
        assert_eq!(
            unsafe { ss_enumerate_smooth(ps, 10, &mut vals, &mut len) },
            SsStatus::Ok
        );
        assert_eq!(unsafe { std::slice::from_raw_parts(vals, len) }, &[1, 2, 3, 4, 6, 8, 9]);
        unsafe { ss_buffer_free(vals, len) };
        unsafe { ss_prime_set_free(ps) };
    }
}
