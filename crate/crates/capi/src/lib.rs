//! C ABI over the core library. Complexes travel as opaque handles, all
//! structured data crosses as UTF-8 JSON text, and every fallible call
//! returns a status code mirroring the CLI exit contract; the message behind
//! a failure is readable through `macx_last_error` until the next call on the
//! same thread.

use macx::betti::{hochster_betti_table, BettiOptions};
use macx::complex::SimplicialComplex;
use macx::error::Error;
use macx::homology::CoefficientChoice;
use macx::io::{fingerprint, ComplexFile};
use macx::koszul::{parse_cochain, Koszul};
use macx::massey::{canonical_pcube_classes, higher_massey, triple_massey};
use macx::nerve::pcube_nerve;
use macx::obstruction::{cached_obstruction_catalog, detect_obstruction};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

/// Status of a C ABI call. Nonzero values match the CLI exit codes, with an
/// extra code for null arguments.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MacxStatus {
    Ok = 0,
    InvalidInput = 2,
    ResourceLimit = 3,
    Internal = 4,
    NullArgument = 5,
}

/// Opaque simplicial complex handle.
pub struct MacxComplex {
    inner: SimplicialComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn clear_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

fn fail(status: MacxStatus, message: &str) -> MacxStatus {
    let text = CString::new(message.replace('\0', " ")).expect("nul stripped");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
    status
}

fn fail_error(e: &Error) -> MacxStatus {
    let status = match e.exit_code() {
        2 => MacxStatus::InvalidInput,
        3 => MacxStatus::ResourceLimit,
        _ => MacxStatus::Internal,
    };
    fail(status, &e.to_string())
}

/// The message of the most recent failure on this thread, or null. Owned by
/// the library; valid until the next call on the thread.
#[no_mangle]
pub extern "C" fn macx_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |s| s.as_ptr())
    })
}

/// Frees a string returned through an `out` parameter.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn macx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Frees a complex handle.
///
/// # Safety
/// `h` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn macx_complex_free(h: *mut MacxComplex) {
    if !h.is_null() {
        drop(unsafe { Box::from_raw(h) });
    }
}

unsafe fn read_utf8<'a>(text: *const c_char) -> Result<&'a str, MacxStatus> {
    unsafe { CStr::from_ptr(text) }
        .to_str()
        .map_err(|_| fail(MacxStatus::InvalidInput, "text is not UTF-8"))
}

fn give_string(out: *mut *mut c_char, text: String) -> MacxStatus {
    let text = CString::new(text.replace('\0', " ")).expect("nul stripped");
    unsafe { *out = text.into_raw() };
    MacxStatus::Ok
}

fn give_complex(out: *mut *mut MacxComplex, inner: SimplicialComplex) -> MacxStatus {
    unsafe { *out = Box::into_raw(Box::new(MacxComplex { inner })) };
    MacxStatus::Ok
}

/// Parses a complex from its JSON form `{"m": …, "facets": [[…], …]}`.
///
/// # Safety
/// `text` must be a readable C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn macx_complex_from_json(
    text: *const c_char,
    out: *mut *mut MacxComplex,
) -> MacxStatus {
    clear_error();
    if text.is_null() || out.is_null() {
        return fail(MacxStatus::NullArgument, "null argument");
    }
    let text = match unsafe { read_utf8(text) } {
        Ok(t) => t,
        Err(status) => return status,
    };
    let parsed: ComplexFile = match serde_json::from_str(text) {
        Ok(p) => p,
        Err(e) => return fail(MacxStatus::InvalidInput, &e.to_string()),
    };
    match parsed.into_complex() {
        Ok(k) => give_complex(out, k),
        Err(e) => fail_error(&e),
    }
}

/// Writes the JSON form of the complex to `out`.
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn macx_complex_to_json(
    h: *const MacxComplex,
    out: *mut *mut c_char,
) -> MacxStatus {
    clear_error();
    if h.is_null() || out.is_null() {
        return fail(MacxStatus::NullArgument, "null argument");
    }
    let file = ComplexFile::from_complex(&unsafe { &*h }.inner);
    give_string(out, serde_json::to_string(&file).expect("serializable"))
}

/// Number of vertices (counting ghosts), or 0 for a null handle.
///
/// # Safety
/// `h` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn macx_complex_vertex_count(h: *const MacxComplex) -> usize {
    if h.is_null() {
        return 0;
    }
    unsafe { &*h }.inner.m()
}

/// Writes the canonical-form fingerprint, equal for isomorphic complexes.
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn macx_complex_fingerprint(
    h: *const MacxComplex,
    out: *mut *mut c_char,
) -> MacxStatus {
    clear_error();
    if h.is_null() || out.is_null() {
        return fail(MacxStatus::NullArgument, "null argument");
    }
    give_string(out, fingerprint(&unsafe { &*h }.inner))
}

/// Builds the nerve of the dimension-`n` 2-truncated cube.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn macx_nerve_pcube(n: usize, out: *mut *mut MacxComplex) -> MacxStatus {
    clear_error();
    if out.is_null() {
        return fail(MacxStatus::NullArgument, "null argument");
    }
    match pcube_nerve(n) {
        Ok(nerve) => give_complex(out, nerve.complex),
        Err(e) => fail_error(&e),
    }
}

/// Writes the bigraded Betti table as JSON. `coefficients` is one of
/// `rational`, `f2`, `fp:<p>`, `int`; `strip` restricts to the strip entries.
///
/// # Safety
/// Pointer arguments must be readable/writable as for the other calls.
#[no_mangle]
pub unsafe extern "C" fn macx_betti_json(
    h: *const MacxComplex,
    coefficients: *const c_char,
    strip: bool,
    out: *mut *mut c_char,
) -> MacxStatus {
    clear_error();
    if h.is_null() || coefficients.is_null() || out.is_null() {
        return fail(MacxStatus::NullArgument, "null argument");
    }
    let coeff = match unsafe { read_utf8(coefficients) }.map(CoefficientChoice::parse) {
        Ok(Ok(c)) => c,
        Ok(Err(e)) => return fail_error(&e),
        Err(status) => return status,
    };
    let options = BettiOptions { strip_only: strip, ..Default::default() };
    match hochster_betti_table(&unsafe { &*h }.inner, coeff, options) {
        Ok(table) => give_string(out, table.to_json().to_string()),
        Err(e) => fail_error(&e),
    }
}

/// Runs the Massey product of the given classes over the complex and writes
/// the verdict JSON. Classes use the text syntax, e.g. `"v1 u4"`.
///
/// # Safety
/// `classes` must point to `len` readable C strings.
#[no_mangle]
pub unsafe extern "C" fn macx_massey_json(
    h: *const MacxComplex,
    coefficients: *const c_char,
    classes: *const *const c_char,
    len: usize,
    out: *mut *mut c_char,
) -> MacxStatus {
    clear_error();
    if h.is_null() || coefficients.is_null() || classes.is_null() || out.is_null() {
        return fail(MacxStatus::NullArgument, "null argument");
    }
    let coeff = match unsafe { read_utf8(coefficients) }.map(CoefficientChoice::parse) {
        Ok(Ok(c)) => c,
        Ok(Err(e)) => return fail_error(&e),
        Err(status) => return status,
    };
    if len < 2 {
        return fail(MacxStatus::InvalidInput, "a Massey product needs at least two classes");
    }
    let alg = Koszul::new(unsafe { &*h }.inner.clone(), coeff.field());
    let mut parsed = Vec::with_capacity(len);
    for i in 0..len {
        let text = unsafe { *classes.add(i) };
        if text.is_null() {
            return fail(MacxStatus::NullArgument, "null class string");
        }
        let text = match unsafe { read_utf8(text) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_cochain(text, alg.complex(), coeff.field()) {
            Ok(c) => parsed.push(c),
            Err(e) => return fail_error(&e),
        }
    }
    let verdict = if len == 3 {
        triple_massey(&alg, &parsed[0], &parsed[1], &parsed[2])
    } else {
        higher_massey(&alg, &parsed)
    };
    match verdict {
        Ok(v) => give_string(out, v.to_json().to_string()),
        Err(e) => fail_error(&e),
    }
}

/// Runs the canonical n-fold product on the 2-truncated cube nerve and writes
/// the verdict JSON.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn macx_massey_canonical_pcube(
    n: usize,
    out: *mut *mut c_char,
) -> MacxStatus {
    clear_error();
    if out.is_null() {
        return fail(MacxStatus::NullArgument, "null argument");
    }
    let run = canonical_pcube_classes(n, macx::linalg::FieldSpec::Rational)
        .and_then(|(alg, classes)| higher_massey(&alg, &classes));
    match run {
        Ok(v) => give_string(out, v.to_json().to_string()),
        Err(e) => fail_error(&e),
    }
}

/// Searches the complex for an induced obstruction graph from the derived
/// catalog. On success `*found` says whether one exists, and when it does the
/// six witness vertices are written to `witness`. The first call derives the
/// catalog and caches it for the process.
///
/// # Safety
/// `found` must be writable; `witness` must point to six writable `size_t`.
#[no_mangle]
pub unsafe extern "C" fn macx_detect_obstruction(
    h: *const MacxComplex,
    found: *mut bool,
    witness: *mut usize,
) -> MacxStatus {
    clear_error();
    if h.is_null() || found.is_null() || witness.is_null() {
        return fail(MacxStatus::NullArgument, "null argument");
    }
    let catalog = match cached_obstruction_catalog() {
        Ok(c) => c,
        Err(e) => return fail_error(&e),
    };
    match detect_obstruction(&unsafe { &*h }.inner, catalog) {
        Some(sub) => {
            unsafe { *found = true };
            for (i, v) in sub.to_vec().into_iter().enumerate() {
                unsafe { *witness.add(i) = v };
            }
        }
        None => unsafe { *found = false },
    }
    MacxStatus::Ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take_string(ptr: *mut c_char) -> String {
        let text = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
        unsafe { macx_string_free(ptr) };
        text
    }

    #[test]
    fn complex_round_trips_through_the_abi() {
        unsafe {
            let text = cstr(r#"{"m": 4, "facets": [[1, 2], [2, 3], [3, 4], [1, 4]]}"#);
            let mut h: *mut MacxComplex = ptr::null_mut();
            assert_eq!(macx_complex_from_json(text.as_ptr(), &mut h), MacxStatus::Ok);
            assert_eq!(macx_complex_vertex_count(h), 4);

            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(macx_complex_to_json(h, &mut json), MacxStatus::Ok);
            let round = take_string(json);
            assert!(round.contains(r#""m":4"#));

            let mut fp1: *mut c_char = ptr::null_mut();
            assert_eq!(macx_complex_fingerprint(h, &mut fp1), MacxStatus::Ok);
            let fp1 = take_string(fp1);

            let mut cube: *mut MacxComplex = ptr::null_mut();
            assert_eq!(macx_nerve_pcube(2, &mut cube), MacxStatus::Ok);
            let mut fp2: *mut c_char = ptr::null_mut();
            assert_eq!(macx_complex_fingerprint(cube, &mut fp2), MacxStatus::Ok);
            assert_eq!(fp1, take_string(fp2), "the square is the dimension-2 cube nerve");

            macx_complex_free(h);
            macx_complex_free(cube);
        }
    }

    #[test]
    fn invalid_input_reports_status_and_message() {
        unsafe {
            let text = cstr(r#"{"m": 2, "facets": [[1, 7]]}"#);
            let mut h: *mut MacxComplex = ptr::null_mut();
            assert_eq!(
                macx_complex_from_json(text.as_ptr(), &mut h),
                MacxStatus::InvalidInput
            );
            let msg = CStr::from_ptr(macx_last_error()).to_str().unwrap();
            assert!(!msg.is_empty());

            assert_eq!(
                macx_complex_from_json(ptr::null(), &mut h),
                MacxStatus::NullArgument
            );
            assert_eq!(macx_complex_vertex_count(ptr::null()), 0);
        }
    }

    #[test]
    fn betti_of_the_square_through_the_abi() {
        unsafe {
            let text = cstr(r#"{"m": 4, "facets": [[1, 2], [2, 3], [3, 4], [1, 4]]}"#);
            let mut h: *mut MacxComplex = ptr::null_mut();
            assert_eq!(macx_complex_from_json(text.as_ptr(), &mut h), MacxStatus::Ok);
            let coeff = cstr("rational");
            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(
                macx_betti_json(h, coeff.as_ptr(), false, &mut json),
                MacxStatus::Ok
            );
            let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
            assert_eq!(v["total"], serde_json::json!([1, 0, 0, 2, 0, 0, 1]));

            let bad = cstr("f9");
            assert_eq!(
                macx_betti_json(h, bad.as_ptr(), false, &mut json),
                MacxStatus::InvalidInput
            );
            macx_complex_free(h);
        }
    }

    #[test]
    fn canonical_massey_and_class_parsing_through_the_abi() {
        unsafe {
            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(macx_massey_canonical_pcube(2, &mut json), MacxStatus::Ok);
            let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
            assert_eq!(v["defined"], serde_json::json!(true));
            assert_eq!(v["contains_zero"], serde_json::json!(false));

            let text = cstr(r#"{"m": 4, "facets": [[1, 2], [2, 3], [3, 4], [1, 4]]}"#);
            let mut h: *mut MacxComplex = ptr::null_mut();
            assert_eq!(macx_complex_from_json(text.as_ptr(), &mut h), MacxStatus::Ok);
            let coeff = cstr("rational");
            let a = cstr("v1 u3");
            let b = cstr("v2 u4");
            let classes = [a.as_ptr(), b.as_ptr(), a.as_ptr()];
            assert_eq!(
                macx_massey_json(h, coeff.as_ptr(), classes.as_ptr(), 3, &mut json),
                MacxStatus::Ok
            );
            let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
            assert_eq!(v["order"], serde_json::json!(3));

            let bad = cstr("v1 w3");
            let classes = [bad.as_ptr(), b.as_ptr()];
            assert_eq!(
                macx_massey_json(h, coeff.as_ptr(), classes.as_ptr(), 2, &mut json),
                MacxStatus::InvalidInput
            );
            macx_complex_free(h);
        }
    }

    #[test]
    fn obstruction_detection_through_the_abi() {
        unsafe {
            // nerve of the 4-cycle graph-associahedron: carries an obstruction
            let nerve = macx::nerve::cyclohedron_nerve(3).unwrap();
            let file = ComplexFile::from_complex(&nerve.complex);
            let text = cstr(&serde_json::to_string(&file).unwrap());
            let mut h: *mut MacxComplex = ptr::null_mut();
            assert_eq!(macx_complex_from_json(text.as_ptr(), &mut h), MacxStatus::Ok);
            let mut found = false;
            let mut witness = [0usize; 6];
            assert_eq!(
                macx_detect_obstruction(h, &mut found, witness.as_mut_ptr()),
                MacxStatus::Ok
            );
            assert!(found);
            assert!(witness.iter().all(|&v| (1..=file.m).contains(&v)));
            macx_complex_free(h);
        }
    }

    #[test]
    fn generated_header_declares_the_surface() {
        let header = include_str!("../include/macx.h");
        for needle in [
            "typedef struct MacxComplex MacxComplex;",
            "MACX_STATUS_OK",
            "MACX_STATUS_RESOURCE_LIMIT",
            "macx_complex_from_json",
            "macx_massey_canonical_pcube",
            "macx_detect_obstruction",
            "macx_string_free",
            "macx_last_error",
        ] {
            assert!(header.contains(needle), "header lacks `{needle}`");
        }
    }
}
