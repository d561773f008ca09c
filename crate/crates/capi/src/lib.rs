//! C interface. Handles are opaque pointers owned by the caller and
//! released with the matching `_free`; strings returned through `out`
//! parameters are NUL-terminated UTF-8 owned by the caller and released
//! with `alc_string_free`. Every fallible call returns an `AlcStatus`;
//! on failure `alc_last_error_message` describes the problem until the
//! next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use alcove_orbits::cartan::{build_datum_with, RootDatum, TypeLetter};
use alcove_orbits::involutions::classify;
use alcove_orbits::{report, svg, Budgets, Error};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AlcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BudgetExceeded = 3,
    Unsupported = 4,
    InternalError = 5,
}

/// A root system plus enumeration budgets. Opaque.
pub struct AlcDatum {
    datum: RootDatum,
    budgets: Budgets,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let owned = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(owned));
}

fn fail(e: &Error) -> AlcStatus {
    set_error(&e.to_string());
    match e {
        Error::BudgetExceeded { .. } => AlcStatus::BudgetExceeded,
        Error::SvgRankUnsupported { .. } => AlcStatus::Unsupported,
        Error::Internal(_) => AlcStatus::InternalError,
        _ => AlcStatus::InvalidArgument,
    }
}

fn guarded(f: impl FnOnce() -> AlcStatus) -> AlcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            AlcStatus::InternalError
        }
    }
}

fn give_string(s: String, out: *mut *mut c_char) -> AlcStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            AlcStatus::Ok
        }
        Err(_) => {
            set_error("interior NUL in produced string");
            AlcStatus::InternalError
        }
    }
}

/// Message for the most recent failure on this thread, or NULL. The
/// pointer stays valid until the next failing call on the same thread;
/// copy it if you need it longer.
#[no_mangle]
pub extern "C" fn alc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null(), |c| c.as_ptr())
    })
}

/// Library version as a static string; never freed.
#[no_mangle]
pub extern "C" fn alc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Create a root system handle. `type_letter` is one of 'A'..'G' and the
/// rank must fit the type. On success `*out` owns the handle.
#[no_mangle]
pub extern "C" fn alc_datum_new(
    type_letter: c_char,
    rank: usize,
    out: *mut *mut AlcDatum,
) -> AlcStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out pointer is NULL");
            return AlcStatus::NullPointer;
        }
        let letter_char = char::from(type_letter as u8);
        let Some(letter) = TypeLetter::from_char(letter_char) else {
            return fail(&Error::InvalidType {
                letter: letter_char,
                rank,
                constraint: "type letter must be one of A, B, C, D, E, F, G".into(),
            });
        };
        let budgets = Budgets::default();
        match build_datum_with(letter, rank, &budgets) {
            Ok(datum) => {
                let handle = Box::new(AlcDatum { datum, budgets });
                unsafe { *out = Box::into_raw(handle) };
                AlcStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Release a handle from `alc_datum_new`. NULL is a no-op.
#[no_mangle]
pub extern "C" fn alc_datum_free(datum: *mut AlcDatum) {
    if !datum.is_null() {
        drop(unsafe { Box::from_raw(datum) });
    }
}

/// Cap enumerated group and ball elements for later calls on this handle.
#[no_mangle]
pub extern "C" fn alc_datum_set_budget(datum: *mut AlcDatum, max_elements: usize) -> AlcStatus {
    guarded(|| {
        let Some(handle) = (unsafe { datum.as_mut() }) else {
            set_error("datum is NULL");
            return AlcStatus::NullPointer;
        };
        handle.budgets.max_group_elements = max_elements;
        handle.budgets.max_ball_elements = max_elements;
        AlcStatus::Ok
    })
}

#[no_mangle]
pub extern "C" fn alc_rank(datum: *const AlcDatum, out: *mut usize) -> AlcStatus {
    guarded(|| {
        let (Some(handle), false) = (unsafe { datum.as_ref() }, out.is_null()) else {
            set_error("datum or out pointer is NULL");
            return AlcStatus::NullPointer;
        };
        unsafe { *out = handle.datum.rank() };
        AlcStatus::Ok
    })
}

/// Number of involution classes of the affine Weyl group.
#[no_mangle]
pub extern "C" fn alc_class_count(datum: *const AlcDatum, out: *mut usize) -> AlcStatus {
    guarded(|| {
        let (Some(handle), false) = (unsafe { datum.as_ref() }, out.is_null()) else {
            set_error("datum or out pointer is NULL");
            return AlcStatus::NullPointer;
        };
        match classify(&handle.datum, &handle.budgets) {
            Ok(cls) => {
                unsafe { *out = cls.class_count() };
                AlcStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// The involution class table as pretty-printed JSON.
#[no_mangle]
pub extern "C" fn alc_classes_json(datum: *const AlcDatum, out: *mut *mut c_char) -> AlcStatus {
    guarded(|| {
        let (Some(handle), false) = (unsafe { datum.as_ref() }, out.is_null()) else {
            set_error("datum or out pointer is NULL");
            return AlcStatus::NullPointer;
        };
        match report::build_class_table(&handle.datum, &handle.budgets)
            .and_then(|t| report::class_table_to_json(&t))
        {
            Ok(text) => give_string(text, out),
            Err(e) => fail(&e),
        }
    })
}

/// Full decomposition report at the given ball radius, as JSON. The bytes
/// are identical whether or not `parallel` is set.
#[no_mangle]
pub extern "C" fn alc_report_json(
    datum: *const AlcDatum,
    radius: usize,
    parallel: bool,
    out: *mut *mut c_char,
) -> AlcStatus {
    guarded(|| {
        let (Some(handle), false) = (unsafe { datum.as_ref() }, out.is_null()) else {
            set_error("datum or out pointer is NULL");
            return AlcStatus::NullPointer;
        };
        match report::build_report(&handle.datum, radius, &handle.budgets, parallel)
            .and_then(|r| report::to_json(&r))
        {
            Ok(text) => give_string(text, out),
            Err(e) => fail(&e),
        }
    })
}

/// Run the brute-force cross-checks. Returns Ok when the brute-force
/// partitions refine the exact ones (the hard guarantee); `*all_equal`
/// additionally tells whether they matched outright at this conjugator
/// radius. A refinement violation is an internal error.
#[no_mangle]
pub extern "C" fn alc_oracle_check(
    datum: *const AlcDatum,
    radius: usize,
    conjugator_radius: usize,
    all_equal: *mut bool,
) -> AlcStatus {
    guarded(|| {
        let (Some(handle), false) = (unsafe { datum.as_ref() }, all_equal.is_null()) else {
            set_error("datum or out pointer is NULL");
            return AlcStatus::NullPointer;
        };
        match report::run_oracle(&handle.datum, radius, conjugator_radius, &handle.budgets) {
            Ok(outcome) => {
                if !outcome.refinement_ok() {
                    set_error("brute-force partition does not refine the exact one");
                    return AlcStatus::InternalError;
                }
                unsafe { *all_equal = outcome.all_equal() };
                AlcStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// SVG picture of the alcove ball colored by orbits of one class.
/// Rank 1 and 2 only.
#[no_mangle]
pub extern "C" fn alc_svg(
    datum: *const AlcDatum,
    class_index: usize,
    radius: usize,
    out: *mut *mut c_char,
) -> AlcStatus {
    guarded(|| {
        let (Some(handle), false) = (unsafe { datum.as_ref() }, out.is_null()) else {
            set_error("datum or out pointer is NULL");
            return AlcStatus::NullPointer;
        };
        let result = classify(&handle.datum, &handle.budgets).and_then(|cls| {
            svg::render_svg(
                &handle.datum,
                &cls,
                class_index,
                radius,
                &handle.budgets,
            )
        });
        match result {
            Ok(text) => give_string(text, out),
            Err(e) => fail(&e),
        }
    })
}

/// Release a string returned through an `out` parameter. NULL is a no-op.
#[no_mangle]
pub extern "C" fn alc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
