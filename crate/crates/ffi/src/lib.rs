//! C ABI for `liaison`.
//!
//! Every object crosses the boundary as an opaque heap handle released by
//! its `_free` function. Every fallible call returns a [`LiaisonStatus`];
//! on failure the message is available from [`liaison_last_error`] until
//! the next call on the same thread. Strings returned to the caller are
//! released with [`liaison_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use liaison::algebra::Field;
use liaison::linkage;
use liaison::modcalc::{self, make_ring, Ideal, PresentedModule, Ring};
use liaison::script::{run_source, Options};
use liaison::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiaisonStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Usage = 3,
    NotCompleteIntersection = 4,
    Precondition = 5,
    Resource = 6,
    Undecided = 7,
    TruncationTooSmall = 8,
    Parse = 9,
    Invariant = 10,
    Panic = 11,
}

/// A quotient ring `k[x1..xn]/(g1..gk)`.
pub struct LiaisonRing {
    ring: Ring,
}

pub struct LiaisonIdeal {
    ideal: Ideal,
}

/// A finitely presented module `coker A`.
pub struct LiaisonModule {
    module: PresentedModule,
}

/// Finite-length invariants; `length` is -1 for modules of infinite length.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LiaisonInvariants {
    pub length: i64,
    pub nu: u64,
    pub type_: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LiaisonStatus {
    match e {
        Error::Usage(_) => LiaisonStatus::Usage,
        Error::NotCompleteIntersection(_) => LiaisonStatus::NotCompleteIntersection,
        Error::Precondition(_) => LiaisonStatus::Precondition,
        Error::Resource(_) => LiaisonStatus::Resource,
        Error::Undecided(_) => LiaisonStatus::Undecided,
        Error::TruncationTooSmall(_) => LiaisonStatus::TruncationTooSmall,
        Error::Parse { .. } => LiaisonStatus::Parse,
        Error::Invariant(_) => LiaisonStatus::Invariant,
    }
}

enum Fail {
    Null,
    Utf8,
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail::Lib(e)
    }
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LiaisonStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LiaisonStatus::Ok,
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument");
            LiaisonStatus::NullPointer
        }
        Ok(Err(Fail::Utf8)) => {
            set_error("string argument is not valid UTF-8");
            LiaisonStatus::InvalidUtf8
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("panic inside liaison");
            LiaisonStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null);
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Utf8)
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null)
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(v);
    Ok(())
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message of the last failure on this thread. Owned by the library.
#[no_mangle]
pub extern "C" fn liaison_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn liaison_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a ring. `vars` and `relations` are comma-separated; `field_char`
/// is a prime or 0 for the rationals; `weights` may be null for all ones.
///
/// # Safety
/// Pointer arguments must be valid; `weights` must hold `nweights` values.
#[no_mangle]
pub unsafe extern "C" fn liaison_ring_new(
    vars: *const c_char,
    field_char: u32,
    weights: *const u32,
    nweights: usize,
    relations: *const c_char,
    local: bool,
    out: *mut *mut LiaisonRing,
) -> LiaisonStatus {
    guard(|| {
        let vars = split_list(str_arg(vars)?);
        let rels = split_list(str_arg(relations)?);
        let field = if field_char == 0 { Field::Rationals } else { Field::prime(field_char)? };
        let w = if weights.is_null() { None } else { Some(std::slice::from_raw_parts(weights, nweights).to_vec()) };
        let ring = make_ring(&vars, field, w, &rels, local)?;
        write_out(out, Box::into_raw(Box::new(LiaisonRing { ring })))
    })
}

/// # Safety
/// `r` must come from `liaison_ring_new` or be null.
#[no_mangle]
pub unsafe extern "C" fn liaison_ring_free(r: *mut LiaisonRing) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Ideal with comma-separated generators.
///
/// # Safety
/// Pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn liaison_ideal_new(r: *const LiaisonRing, gens: *const c_char, out: *mut *mut LiaisonIdeal) -> LiaisonStatus {
    guard(|| {
        let ring = &handle(r)?.ring;
        let gens = split_list(str_arg(gens)?);
        let ideal = Ideal::parse(ring, &gens)?;
        write_out(out, Box::into_raw(Box::new(LiaisonIdeal { ideal })))
    })
}

/// # Safety
/// `i` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn liaison_ideal_free(i: *mut LiaisonIdeal) {
    if !i.is_null() {
        drop(Box::from_raw(i));
    }
}

/// Canonical form `(g1, g2, ...)`.
///
/// # Safety
/// Pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn liaison_ideal_to_string(i: *const LiaisonIdeal, out: *mut *mut c_char) -> LiaisonStatus {
    guard(|| write_out(out, to_c(handle(i)?.ideal.display())))
}

/// `(a : b)`.
///
/// # Safety
/// Pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn liaison_ideal_colon(a: *const LiaisonIdeal, b: *const LiaisonIdeal, out: *mut *mut LiaisonIdeal) -> LiaisonStatus {
    guard(|| {
        let ideal = handle(a)?.ideal.colon(&handle(b)?.ideal)?;
        write_out(out, Box::into_raw(Box::new(LiaisonIdeal { ideal })))
    })
}

/// `((x) : I)` for a comma-separated regular sequence `x` inside `I`.
///
/// # Safety
/// Pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn liaison_ci_link(i: *const LiaisonIdeal, xs: *const c_char, out: *mut *mut LiaisonIdeal) -> LiaisonStatus {
    guard(|| {
        let ideal = &handle(i)?.ideal;
        let xs = split_list(str_arg(xs)?)
            .into_iter()
            .map(|s| ideal.ring.parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        let linked = linkage::ci_link(ideal, &xs)?;
        write_out(out, Box::into_raw(Box::new(LiaisonIdeal { ideal: linked })))
    })
}

/// The cyclic module `R/I`.
///
/// # Safety
/// Pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn liaison_module_quotient(i: *const LiaisonIdeal, out: *mut *mut LiaisonModule) -> LiaisonStatus {
    guard(|| {
        let module = handle(i)?.ideal.quotient();
        write_out(out, Box::into_raw(Box::new(LiaisonModule { module })))
    })
}

/// The ideal `I` as a module.
///
/// # Safety
/// Pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn liaison_module_from_ideal(i: *const LiaisonIdeal, out: *mut *mut LiaisonModule) -> LiaisonStatus {
    guard(|| {
        let module = handle(i)?.ideal.as_module();
        write_out(out, Box::into_raw(Box::new(LiaisonModule { module })))
    })
}

/// # Safety
/// `m` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn liaison_module_free(m: *mut LiaisonModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Canonical form: `0`, `R`, `R^n` or `coker [..]`.
///
/// # Safety
/// Pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn liaison_module_to_string(m: *const LiaisonModule, out: *mut *mut c_char) -> LiaisonStatus {
    guard(|| write_out(out, to_c(handle(m)?.module.display())))
}

/// # Safety
/// Pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn liaison_module_invariants(m: *const LiaisonModule, out: *mut LiaisonInvariants) -> LiaisonStatus {
    guard(|| {
        let inv = modcalc::invariants(&handle(m)?.module)?;
        let rec = LiaisonInvariants {
            length: inv.length.map(|l| l as i64).unwrap_or(-1),
            nu: inv.nu as u64,
            type_: inv.type_ as u64,
        };
        write_out(out, rec)
    })
}

/// # Safety
/// Pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn liaison_is_isomorphic(a: *const LiaisonModule, b: *const LiaisonModule, out: *mut bool) -> LiaisonStatus {
    guard(|| write_out(out, modcalc::is_isomorphic(&handle(a)?.module, &handle(b)?.module)?))
}

/// # Safety
/// Pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn liaison_is_doubly_perfectly_linked(
    a: *const LiaisonModule,
    b: *const LiaisonModule,
    out: *mut bool,
) -> LiaisonStatus {
    guard(|| write_out(out, linkage::is_doubly_perfectly_linked(&handle(a)?.module, &handle(b)?.module)?))
}

/// `Ext^r(ker f, R)` for the canonical perfect cover `f` of `m`.
///
/// # Safety
/// Pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn liaison_perfect_link(m: *const LiaisonModule, out: *mut *mut LiaisonModule) -> LiaisonStatus {
    guard(|| {
        let f = linkage::perfect_morphism(&handle(m)?.module)?;
        let module = linkage::perfect_link(&f)?;
        write_out(out, Box::into_raw(Box::new(LiaisonModule { module })))
    })
}

/// Runs a script. `output` receives stdout text and `exit_status` the
/// CLI exit code; a failing script still returns `Ok` with a nonzero exit.
///
/// # Safety
/// Pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn liaison_run_script(
    source: *const c_char,
    seed: u64,
    json: bool,
    output: *mut *mut c_char,
    exit_status: *mut i32,
) -> LiaisonStatus {
    guard(|| {
        let src = str_arg(source)?;
        let options = Options { seed, json, ..Options::default() };
        let report = run_source(src, &options);
        if let Some(e) = &report.error {
            set_error(e);
        }
        write_out(exit_status, report.status)?;
        write_out(output, to_c(report.stdout(&options)))
    })
}
