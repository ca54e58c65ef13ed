//! C interface to `lpi-core`.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free` function. Every call returns an [`LpiStatus`]; on failure
//! the message is kept per thread and read with [`lpi_last_error`]. Strings
//! returned through out-parameters are released with [`lpi_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lpi_core::checkers::{bounds_from_d, check_group_identity, check_lpi, GroundSet, Mode, Outcome, SearchConfig, Verdict};
use lpi_core::rings::RingSpec;
use lpi_core::textio::{parse_laurent, parse_word, AlgebraSpec};
use lpi_core::with_ring;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    CheckFailed = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpiOutcome {
    Holds = 0,
    Counterexample = 1,
    Inconclusive = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpiGround {
    Auto = 0,
    Elements = 1,
    Units = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpiMode {
    Exhaustive = 0,
    Random = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LpiConfig {
    pub mode: LpiMode,
    pub budget: u64,
    pub cap: u64,
    pub seed: u64,
    pub workers: u32,
}

/// `(l, r, d)` of the normalized element and the substitution used.
/// `variable` is 0 when no substitution was needed.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LpiProfile {
    pub l: i64,
    pub r: i64,
    pub d: i64,
    pub variable: u32,
    pub k: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LpiBounds {
    pub d: u64,
    pub q: u64,
    pub max_field_size: u64,
    pub max_n: u64,
}

/// A parsed group-algebra element together with its coefficient ring.
pub struct LpiExpr {
    text: String,
    ring: RingSpec,
    canonical: CString,
}

/// An algebra descriptor such as `M2@Fp:2`.
pub struct LpiAlgebra {
    spec: AlgebraSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

type Res<T> = Result<T, (LpiStatus, String)>;

fn guard(f: impl FnOnce() -> Res<()>) -> LpiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LpiStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LpiStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Res<&'a str> {
    if p.is_null() {
        return Err((LpiStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (LpiStatus::InvalidUtf8, e.to_string()))
}

unsafe fn out<'a, T>(p: *mut T) -> Res<&'a mut T> {
    p.as_mut().ok_or((LpiStatus::NullPointer, "null output pointer".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Res<&'a T> {
    p.as_ref().ok_or((LpiStatus::NullPointer, "null handle".into()))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn parse_err(e: impl ToString) -> (LpiStatus, String) {
    (LpiStatus::Parse, e.to_string())
}

fn bad(e: impl ToString) -> (LpiStatus, String) {
    (LpiStatus::InvalidArgument, e.to_string())
}

fn failed(e: impl ToString) -> (LpiStatus, String) {
    (LpiStatus::CheckFailed, e.to_string())
}

/// The message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn lpi_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn lpi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn lpi_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Exhaustive mode, budget 1000, cap 2^24, seed 0, one worker.
#[no_mangle]
pub extern "C" fn lpi_config_default() -> LpiConfig {
    let d = SearchConfig::default();
    LpiConfig { mode: LpiMode::Exhaustive, budget: d.budget, cap: d.cap, seed: d.seed, workers: d.workers as u32 }
}

fn search_config(c: Option<&LpiConfig>) -> SearchConfig {
    let Some(c) = c else { return SearchConfig::default() };
    SearchConfig {
        mode: match c.mode {
            LpiMode::Exhaustive => Mode::Exhaustive,
            LpiMode::Random => Mode::Random,
        },
        budget: c.budget,
        cap: c.cap,
        seed: c.seed,
        workers: c.workers.max(1) as usize,
    }
}

/// Parses `text` over `ring` (`"ZZ"` or `"Fp:p"`).
#[no_mangle]
pub unsafe extern "C" fn lpi_expr_parse(text_: *const c_char, ring: *const c_char, out_: *mut *mut LpiExpr) -> LpiStatus {
    guard(|| {
        let out_ = out(out_)?;
        *out_ = ptr::null_mut();
        let src = text(text_)?;
        let ring: RingSpec = text(ring)?.parse().map_err(bad)?;
        let canonical = with_ring!(ring, |r| parse_laurent(&r, src).map_err(parse_err)?.to_string());
        let canonical = CString::new(canonical).map_err(bad)?;
        *out_ = Box::into_raw(Box::new(LpiExpr { text: src.to_string(), ring, canonical }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn lpi_expr_free(e: *mut LpiExpr) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Canonical text, owned by the handle.
#[no_mangle]
pub unsafe extern "C" fn lpi_expr_canonical(e: *const LpiExpr) -> *const c_char {
    e.as_ref().map_or(ptr::null(), |e| e.canonical.as_ptr())
}

/// Normalizes and profiles the element; fails with `LPI_STATUS_INVALID_ARGUMENT`
/// when it is not admissible.
#[no_mangle]
pub unsafe extern "C" fn lpi_expr_profile(e: *const LpiExpr, out_: *mut LpiProfile) -> LpiStatus {
    guard(|| {
        let e = handle(e)?;
        let out_ = out(out_)?;
        *out_ = with_ring!(e.ring, |r| {
            let el = parse_laurent(&r, &e.text).map_err(parse_err)?;
            let n = el.normalize().map_err(bad)?;
            let p = n.element.profile().map_err(bad)?;
            LpiProfile { l: p.l, r: p.r, d: p.d, variable: n.variable.unwrap_or(0), k: n.k }
        });
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn lpi_algebra_new(desc: *const c_char, out_: *mut *mut LpiAlgebra) -> LpiStatus {
    guard(|| {
        let out_ = out(out_)?;
        *out_ = ptr::null_mut();
        let spec: AlgebraSpec = text(desc)?.parse().map_err(bad)?;
        *out_ = Box::into_raw(Box::new(LpiAlgebra { spec }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn lpi_algebra_free(a: *mut LpiAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

fn finish(v: Verdict, outcome: *mut LpiOutcome, json: *mut *mut c_char) -> Res<()> {
    unsafe {
        if let Some(o) = outcome.as_mut() {
            *o = match v.outcome {
                Outcome::Holds => LpiOutcome::Holds,
                Outcome::Counterexample => LpiOutcome::Counterexample,
                Outcome::Inconclusive => LpiOutcome::Inconclusive,
            };
        }
        if let Some(j) = json.as_mut() {
            *j = to_c(serde_json::to_string(&v).map_err(failed)?);
        }
    }
    Ok(())
}

/// Checks `e` on the algebra. The verdict is written to `outcome`; when
/// `json` is not null it receives the verdict as JSON. `config` may be null.
#[no_mangle]
pub unsafe extern "C" fn lpi_check_lpi(
    a: *const LpiAlgebra,
    e: *const LpiExpr,
    ground: LpiGround,
    config: *const LpiConfig,
    outcome: *mut LpiOutcome,
    json: *mut *mut c_char,
) -> LpiStatus {
    guard(|| {
        let a = handle(a)?;
        let e = handle(e)?;
        if a.spec.ring != e.ring {
            return Err(bad(format!("expression is over {} but the algebra is over {}", e.ring, a.spec.ring)));
        }
        let cfg = search_config(config.as_ref());
        let ground = match ground {
            LpiGround::Auto => GroundSet::Auto,
            LpiGround::Elements => GroundSet::Elements,
            LpiGround::Units => GroundSet::Units,
        };
        let v = with_ring!(a.spec.ring, |r| {
            let h = a.spec.handle(r).map_err(bad)?;
            let el = parse_laurent(&r, &e.text).map_err(parse_err)?;
            check_lpi(&h, &el, ground, &cfg).map_err(failed)?
        });
        finish(v, outcome, json)
    })
}

/// Checks the group word `word` on the units of the algebra.
#[no_mangle]
pub unsafe extern "C" fn lpi_check_gi(
    a: *const LpiAlgebra,
    word: *const c_char,
    config: *const LpiConfig,
    outcome: *mut LpiOutcome,
    json: *mut *mut c_char,
) -> LpiStatus {
    guard(|| {
        let a = handle(a)?;
        let w = parse_word(text(word)?).map_err(parse_err)?;
        let cfg = search_config(config.as_ref());
        let v = with_ring!(a.spec.ring, |r| {
            let h = a.spec.handle(r).map_err(bad)?;
            check_group_identity(&h, &w, &cfg).map_err(failed)?
        });
        finish(v, outcome, json)
    })
}

/// Bounds on the field size and matrix dimension; `q = 0` selects the default.
#[no_mangle]
pub unsafe extern "C" fn lpi_bounds(d: u64, q: u64, out_: *mut LpiBounds) -> LpiStatus {
    guard(|| {
        let out_ = out(out_)?;
        let b = bounds_from_d(d, (q != 0).then_some(q)).map_err(bad)?;
        *out_ = LpiBounds { d: b.d, q: b.q, max_field_size: b.max_field_size, max_n: b.max_n };
        Ok(())
    })
}

/// Runs the command line with `argv[0..argc]` (without the program name).
/// Standard output and error are returned as strings; either pointer may be
/// null. Returns the exit code, or -1 on invalid arguments.
#[no_mangle]
pub unsafe extern "C" fn lpi_run(
    argc: usize,
    argv: *const *const c_char,
    stdout_: *mut *mut c_char,
    stderr_: *mut *mut c_char,
) -> i32 {
    let mut exit = -1;
    let status = guard(|| {
        if argc > 0 && argv.is_null() {
            return Err((LpiStatus::NullPointer, "null argv".into()));
        }
        let mut args = vec!["lpi".to_string()];
        for i in 0..argc {
            args.push(text(*argv.add(i))?.to_string());
        }
        let inv = lpi_core::textio::cli::run(args);
        if let Some(o) = stdout_.as_mut() {
            *o = to_c(inv.stdout);
        }
        if let Some(o) = stderr_.as_mut() {
            *o = to_c(inv.stderr);
        }
        exit = inv.code;
        Ok(())
    });
    if status == LpiStatus::Ok {
        exit
    } else {
        -1
    }
}
