//! C ABI over the mgcensus library.
//!
//! Conventions: every fallible call returns an [`MgcStatus`] code and writes
//! its result through out-pointers; census tables travel as opaque handles
//! that must be released with [`mgc_census_free`]; strings returned by the
//! library are NUL-terminated, UTF-8, and must be released with
//! [`mgc_string_free`]. Partitions use the bracket text form, e.g. `"[3,1]"`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mgcensus::census::{census_mnc, census_sylow, squarefree_sieve, CensusConfig, CensusTable};
use mgcensus::constants::{artin_xi, b_q, constant_a, k_constant};
use mgcensus::multgroup::{sylow_signature, Factorization};
use mgcensus::partitions::Partition;
use mgcensus::verify::{predicted_d, predicted_d0, predicted_mnc};
use mgcensus::Error;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MgcStatus {
    Ok = 0,
    /// A pointer argument was NULL.
    NullPointer = 1,
    /// An argument failed validation (q not an odd prime, bad partition
    /// text, limit out of range, ...).
    InvalidArgument = 2,
    /// The requested n exceeds the configured oracle cap.
    CapExceeded = 3,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 4,
    /// Unexpected internal failure.
    Internal = 5,
}

fn status_of(e: &Error) -> MgcStatus {
    match e {
        Error::OracleCap { .. } => MgcStatus::CapExceeded,
        _ => MgcStatus::InvalidArgument,
    }
}

/// Opaque census table handle.
pub struct MgcCensus {
    table: CensusTable,
}

unsafe fn cstr_arg<'a>(ptr: *const c_char) -> Result<&'a str, MgcStatus> {
    if ptr.is_null() {
        return Err(MgcStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| MgcStatus::InvalidUtf8)
}

fn guard(f: impl FnOnce() -> MgcStatus) -> MgcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => MgcStatus::Internal,
    }
}

fn write_out<T>(out: *mut T, value: T) -> MgcStatus {
    if out.is_null() {
        return MgcStatus::NullPointer;
    }
    unsafe { out.write(value) };
    MgcStatus::Ok
}

fn export_string(s: String, out: *mut *mut c_char) -> MgcStatus {
    match CString::new(s) {
        Ok(c) => write_out(out, c.into_raw()),
        Err(_) => MgcStatus::Internal,
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn mgc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Releases a string allocated by this library.
///
/// # Safety
/// `s` must have been returned by an mgcensus function and not freed yet.
#[no_mangle]
pub unsafe extern "C" fn mgc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs a Sylow-signature census of `n <= x` for the odd prime `q` and
/// returns an opaque table handle through `out`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mgc_census_run(
    x: u64,
    q: u64,
    segment_size: u64,
    out: *mut *mut MgcCensus,
) -> MgcStatus {
    if out.is_null() {
        return MgcStatus::NullPointer;
    }
    guard(|| {
        let mut cfg = CensusConfig::new(x, q);
        if segment_size != 0 {
            cfg.segment_size = segment_size;
        }
        match census_sylow(&cfg) {
            Ok(table) => write_out(out, Box::into_raw(Box::new(MgcCensus { table }))),
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a census handle.
///
/// # Safety
/// `handle` must come from [`mgc_census_run`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mgc_census_free(handle: *mut MgcCensus) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

unsafe fn census_ref<'a>(handle: *const MgcCensus) -> Result<&'a CensusTable, MgcStatus> {
    handle
        .as_ref()
        .map(|h| &h.table)
        .ok_or(MgcStatus::NullPointer)
}

/// Total count over all cells (equals x).
///
/// # Safety
/// `handle` must be a live census handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mgc_census_total(handle: *const MgcCensus, out: *mut u64) -> MgcStatus {
    guard(|| match census_ref(handle) {
        Ok(t) => write_out(out, t.total()),
        Err(s) => s,
    })
}

/// `D(H, x)` for the signature in bracket text form.
///
/// # Safety
/// `handle` must be a live census handle; `signature` a NUL-terminated
/// string; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn mgc_census_count_d(
    handle: *const MgcCensus,
    signature: *const c_char,
    out: *mut u64,
) -> MgcStatus {
    guard(|| {
        let table = match census_ref(handle) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let sig = match cstr_arg(signature) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match sig.parse::<Partition>() {
            Ok(p) => write_out(out, table.count_d(&p)),
            Err(_) => MgcStatus::InvalidArgument,
        }
    })
}

/// `D_k(H, x)` for one stratum.
///
/// # Safety
/// Same contract as [`mgc_census_count_d`].
#[no_mangle]
pub unsafe extern "C" fn mgc_census_count_dk(
    handle: *const MgcCensus,
    k: u32,
    signature: *const c_char,
    out: *mut u64,
) -> MgcStatus {
    guard(|| {
        let table = match census_ref(handle) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let sig = match cstr_arg(signature) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match sig.parse::<Partition>() {
            Ok(p) => write_out(out, table.count_dk(k, &p)),
            Err(_) => MgcStatus::InvalidArgument,
        }
    })
}

/// Census table in the canonical CSV form; free with [`mgc_string_free`].
///
/// # Safety
/// `handle` must be a live census handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn mgc_census_csv(
    handle: *const MgcCensus,
    out: *mut *mut c_char,
) -> MgcStatus {
    guard(|| match census_ref(handle) {
        Ok(t) => export_string(t.to_csv(), out),
        Err(s) => s,
    })
}

/// Census table as JSON; free with [`mgc_string_free`].
///
/// # Safety
/// `handle` must be a live census handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn mgc_census_json(
    handle: *const MgcCensus,
    out: *mut *mut c_char,
) -> MgcStatus {
    guard(|| match census_ref(handle) {
        Ok(t) => export_string(t.to_json_string(), out),
        Err(s) => s,
    })
}

/// Counts `n <= x` whose multiplicative group is maximally non-cyclic.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mgc_census_mnc(x: u64, out: *mut u64) -> MgcStatus {
    guard(|| match census_mnc(x) {
        Ok(c) => write_out(out, c),
        Err(e) => status_of(&e),
    })
}

/// Sylow q-subgroup signature of `(Z/nZ)^x` in bracket text form; free the
/// string with [`mgc_string_free`].
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mgc_sylow_signature(
    q: u64,
    n: u64,
    out: *mut *mut c_char,
) -> MgcStatus {
    guard(|| {
        let f = match Factorization::of(n) {
            Ok(f) => f,
            Err(e) => return status_of(&e),
        };
        match sylow_signature(q, &f) {
            Ok(sig) => export_string(sig.to_string(), out),
            Err(e) => status_of(&e),
        }
    })
}

/// `B_q` truncated at `cutoff`, with its absolute error bound.
///
/// # Safety
/// `out_value` and `out_err` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mgc_constant_bq(
    q: u64,
    cutoff: u64,
    out_value: *mut f64,
    out_err: *mut f64,
) -> MgcStatus {
    guard(|| match b_q(q, cutoff) {
        Ok(v) => {
            let s = write_out(out_value, v.value);
            if s != MgcStatus::Ok {
                return s;
            }
            write_out(out_err, v.err)
        }
        Err(e) => status_of(&e),
    })
}

/// `K(Z_{q^alpha}) = B_q C(alpha) E_q(alpha)`.
///
/// # Safety
/// `alpha` must be a NUL-terminated string; outputs valid.
#[no_mangle]
pub unsafe extern "C" fn mgc_constant_k(
    q: u64,
    alpha: *const c_char,
    cutoff: u64,
    out_value: *mut f64,
    out_err: *mut f64,
) -> MgcStatus {
    guard(|| {
        let alpha = match cstr_arg(alpha) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let alpha: Partition = match alpha.parse() {
            Ok(p) => p,
            Err(_) => return MgcStatus::InvalidArgument,
        };
        match k_constant(q, &alpha, cutoff) {
            Ok(v) => {
                let s = write_out(out_value, v.value);
                if s != MgcStatus::Ok {
                    return s;
                }
                write_out(out_err, v.err)
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Artin's constant truncated at `cutoff`.
///
/// # Safety
/// Outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn mgc_artin_xi(
    cutoff: u64,
    out_value: *mut f64,
    out_err: *mut f64,
) -> MgcStatus {
    guard(|| match artin_xi(cutoff) {
        Ok(v) => {
            let s = write_out(out_value, v.value);
            if s != MgcStatus::Ok {
                return s;
            }
            write_out(out_err, v.err)
        }
        Err(e) => status_of(&e),
    })
}

/// The Wirsing-Odoni constant A with its rigorous error bound and the
/// separately reported heuristic tail estimate.
///
/// # Safety
/// Outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn mgc_constant_a(
    cutoff: u64,
    out_value: *mut f64,
    out_err: *mut f64,
    out_heuristic_tail: *mut f64,
) -> MgcStatus {
    guard(|| {
        if cutoff < 100 {
            return MgcStatus::InvalidArgument;
        }
        let sqfree = squarefree_sieve(cutoff);
        match constant_a(cutoff, &sqfree) {
            Ok(v) => {
                for (ptr, val) in [
                    (out_value, v.value),
                    (out_err, v.err),
                    (out_heuristic_tail, v.heuristic_tail),
                ] {
                    let s = write_out(ptr, val);
                    if s != MgcStatus::Ok {
                        return s;
                    }
                }
                MgcStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Asymptotic main term for `D(Z_{q^alpha}, x)`.
///
/// # Safety
/// `alpha` must be a NUL-terminated string; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn mgc_predicted_d(
    q: u64,
    alpha: *const c_char,
    x: f64,
    cutoff: u64,
    out: *mut f64,
) -> MgcStatus {
    guard(|| {
        let alpha = match cstr_arg(alpha) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let alpha: Partition = match alpha.parse() {
            Ok(p) => p,
            Err(_) => return MgcStatus::InvalidArgument,
        };
        match predicted_d(q, &alpha, x, cutoff) {
            Ok(v) => write_out(out, v),
            Err(e) => status_of(&e),
        }
    })
}

/// Asymptotic main term for the zero stratum `D_0(Z_{q^alpha}, x)`.
///
/// # Safety
/// Same contract as [`mgc_predicted_d`].
#[no_mangle]
pub unsafe extern "C" fn mgc_predicted_d0(
    q: u64,
    alpha: *const c_char,
    x: f64,
    cutoff: u64,
    out: *mut f64,
) -> MgcStatus {
    guard(|| {
        let alpha = match cstr_arg(alpha) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let alpha: Partition = match alpha.parse() {
            Ok(p) => p,
            Err(_) => return MgcStatus::InvalidArgument,
        };
        match predicted_d0(q, &alpha, x, cutoff) {
            Ok(v) => write_out(out, v),
            Err(e) => status_of(&e),
        }
    })
}

/// Asymptotic main term for the maximally-non-cyclic count.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mgc_predicted_mnc(x: f64, cutoff: u64, out: *mut f64) -> MgcStatus {
    guard(|| match predicted_mnc(x, cutoff) {
        Ok(v) => write_out(out, v),
        Err(e) => status_of(&e),
    })
}

/// Element-order oracle signature, bounded by `cap`; free the string with
/// [`mgc_string_free`].
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mgc_sylow_signature_oracle(
    q: u64,
    n: u64,
    cap: u64,
    out: *mut *mut c_char,
) -> MgcStatus {
    guard(
        || match mgcensus::multgroup::sylow_signature_oracle(q, n, cap) {
            Ok(sig) => export_string(sig.to_string(), out),
            Err(e) => status_of(&e),
        },
    )
}
