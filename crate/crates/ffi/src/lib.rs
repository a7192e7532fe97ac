//! C ABI over the kstsp toolkit.
//!
//! Instances and solutions are opaque heap handles released with their
//! `_free` function. Every fallible call returns a [`KstspStatus`]; on
//! failure [`kstsp_last_error_message`] describes the cause. Strings handed
//! out by the library are released with [`kstsp_string_free`]. Tours are
//! arrays of `n` items numbered from 1; matrices are row-major arrays of
//! `(n+1)*(n+1)` entries with the depot at index 0; a stacking order is a
//! flat item array plus one length per stack, each stack bottom to top.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use kstsp::compat::{conflict_chromatic_number, stacking_from_tours};
use kstsp::families::{gen_family, random_instance, Family, FamilyParams};
use kstsp::format::{instance_from_json, instance_to_json, solution_to_json};
use kstsp::model::{
    check_triple_feasible, DistanceMatrix, Instance, Solution, StackingOrder, Tour,
};
use kstsp::solve::{
    exact_oracle_pairs, exact_oracle_stacks, twd, tws, Alpha, Caps, Objective, Side,
};
use kstsp::stackdp::optimal_tours_given_stacks;
use kstsp::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KstspStatus {
    Ok = 0,
    /// The tours and stacks cannot be combined within the instance's stacks.
    Infeasible = 1,
    InvalidArgument = 2,
    CapExceeded = 3,
    NullPointer = 4,
    Parse = 5,
    Panic = 6,
}

/// Solver selected by [`kstsp_solve`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KstspMethod {
    OraclePairs = 0,
    OracleStacks = 1,
    TwsPickup = 2,
    TwsDelivery = 3,
    /// Aggregate-distance heuristic with equal weights.
    Twd = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KstspFamily {
    I = 0,
    J = 1,
    H = 2,
}

/// Opaque instance handle.
pub struct KstspInstance(Instance);

/// Opaque solution handle.
pub struct KstspSolution(Solution);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(KstspStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::CapExceeded { .. } => KstspStatus::CapExceeded,
            Error::Format(_) => KstspStatus::Parse,
            _ => KstspStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

type Outcome = std::result::Result<KstspStatus, Failure>;

fn set_last_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn guard(f: impl FnOnce() -> Outcome) -> KstspStatus {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Err(Failure(KstspStatus::Panic, msg))
    });
    match outcome {
        Ok(status) => {
            set_last_error("");
            status
        }
        Err(Failure(status, msg)) => {
            set_last_error(&msg);
            status
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(KstspStatus::NullPointer, format!("{what} is null"))
}

unsafe fn as_ref<'a, T>(p: *const T, what: &str) -> std::result::Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn as_slice<'a, T>(
    p: *const T,
    len: usize,
    what: &str,
) -> std::result::Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(KstspStatus::Ok)
}

unsafe fn put_string(out: *mut *mut c_char, text: String) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(text)
        .map_err(|e| Failure(KstspStatus::Parse, e.to_string()))?
        .into_raw();
    Ok(KstspStatus::Ok)
}

unsafe fn read_tour(
    items: *const usize,
    n: usize,
    what: &str,
) -> std::result::Result<Tour, Failure> {
    Ok(Tour::new(as_slice(items, n, what)?.to_vec())?)
}

unsafe fn read_stacking(
    items: *const usize,
    lengths: *const usize,
    stack_count: usize,
) -> std::result::Result<StackingOrder, Failure> {
    let lengths = as_slice(lengths, stack_count, "stack lengths")?;
    let total = lengths
        .iter()
        .try_fold(0usize, |acc, &l| acc.checked_add(l))
        .ok_or_else(|| {
            Failure(
                KstspStatus::InvalidArgument,
                "stack lengths overflow".into(),
            )
        })?;
    let flat = as_slice(items, total, "stack items")?;
    let mut stacks = Vec::with_capacity(stack_count);
    let mut at = 0;
    for &l in lengths {
        stacks.push(flat[at..at + l].to_vec());
        at += l;
    }
    Ok(StackingOrder::new(stacks)?)
}

unsafe fn read_matrix(
    d: *const u64,
    side: usize,
    what: &str,
) -> std::result::Result<DistanceMatrix, Failure> {
    let len = side
        .checked_mul(side)
        .ok_or_else(|| Failure(KstspStatus::InvalidArgument, "matrix too large".into()))?;
    let flat = as_slice(d, len, what)?;
    Ok(DistanceMatrix::from_rows(
        flat.chunks(side).map(<[u64]>::to_vec).collect(),
    )?)
}

fn caps_with(cap: u64) -> Caps {
    let mut caps = Caps::default();
    if cap > 0 {
        caps.stack_arrangements = cap as u128;
        caps.labelings = cap as u128;
    }
    caps
}

/// Message describing the last failed call on this thread, or an empty
/// string. Owned by the library and valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn kstsp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kstsp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds an instance from two row-major `(n+1)*(n+1)` matrices.
///
/// # Safety
/// `d1` and `d2` must point to `(n+1)*(n+1)` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kstsp_instance_new(
    n: usize,
    k: usize,
    d1: *const u64,
    d2: *const u64,
    out: *mut *mut KstspInstance,
) -> KstspStatus {
    guard(|| {
        let side = n
            .checked_add(1)
            .ok_or_else(|| Failure(KstspStatus::InvalidArgument, "n too large".into()))?;
        let d1 = read_matrix(d1, side, "d1")?;
        let d2 = read_matrix(d2, side, "d2")?;
        put(out, KstspInstance(Instance::new(n, k, d1, d2)?))
    })
}

/// Parses an instance JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kstsp_instance_from_json(
    json: *const c_char,
    out: *mut *mut KstspInstance,
) -> KstspStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(KstspStatus::Parse, e.to_string()))?;
        put(out, KstspInstance(instance_from_json(text)?))
    })
}

/// Writes the canonical JSON document of an instance to `*out`.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kstsp_instance_to_json(
    inst: *const KstspInstance,
    out: *mut *mut c_char,
) -> KstspStatus {
    guard(|| put_string(out, instance_to_json(&as_ref(inst, "instance")?.0)))
}

/// Generates a member of an adversarial family (two stacks).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kstsp_generate_family(
    family: KstspFamily,
    n: usize,
    unit: u64,
    eps: u64,
    out: *mut *mut KstspInstance,
) -> KstspStatus {
    guard(|| {
        let family = match family {
            KstspFamily::I => Family::I,
            KstspFamily::J => Family::J,
            KstspFamily::H => Family::H,
        };
        put(
            out,
            KstspInstance(gen_family(&FamilyParams::new(family, n, unit, eps)?)?),
        )
    })
}

/// Generates a seeded instance with distances uniform in `[lo, hi]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kstsp_random_instance(
    n: usize,
    k: usize,
    lo: u64,
    hi: u64,
    seed: u64,
    out: *mut *mut KstspInstance,
) -> KstspStatus {
    guard(|| put(out, KstspInstance(random_instance(n, k, lo, hi, seed)?)))
}

/// Releases an instance. Null is ignored.
///
/// # Safety
/// `inst` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kstsp_instance_free(inst: *mut KstspInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Item count, or 0 for null.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kstsp_instance_n(inst: *const KstspInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.n())
}

/// Stack count, or 0 for null.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kstsp_instance_k(inst: *const KstspInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.k())
}

/// Returns `Ok` if the tours and stacking order are mutually compatible and
/// `Infeasible` otherwise.
///
/// # Safety
/// `t1` and `t2` must hold `n` items; `stack_lengths` must hold `stack_count`
/// lengths and `stack_items` their sum.
#[no_mangle]
pub unsafe extern "C" fn kstsp_check_triple(
    t1: *const usize,
    t2: *const usize,
    n: usize,
    stack_items: *const usize,
    stack_lengths: *const usize,
    stack_count: usize,
) -> KstspStatus {
    guard(|| {
        let t1 = read_tour(t1, n, "t1")?;
        let t2 = read_tour(t2, n, "t2")?;
        let p = read_stacking(stack_items, stack_lengths, stack_count)?;
        Ok(if check_triple_feasible(&t1, &t2, &p)? {
            KstspStatus::Ok
        } else {
            KstspStatus::Infeasible
        })
    })
}

/// Minimum number of stacks the tour pair needs (0 when every item can share
/// one stack with any other).
///
/// # Safety
/// `t1` and `t2` must hold `n` items; `out_chi` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kstsp_conflict_chi(
    t1: *const usize,
    t2: *const usize,
    n: usize,
    out_chi: *mut usize,
) -> KstspStatus {
    guard(|| {
        let t1 = read_tour(t1, n, "t1")?;
        let t2 = read_tour(t2, n, "t2")?;
        if out_chi.is_null() {
            return Err(null("out_chi"));
        }
        *out_chi = conflict_chromatic_number(&t1, &t2)?;
        Ok(KstspStatus::Ok)
    })
}

/// Completes a tour pair with a stacking order; `Infeasible` (and no
/// solution) if it needs more stacks than the instance has.
///
/// # Safety
/// `inst` must be a live handle; `t1` and `t2` must hold `n(inst)` items; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kstsp_solve_pair(
    inst: *const KstspInstance,
    t1: *const usize,
    t2: *const usize,
    out: *mut *mut KstspSolution,
) -> KstspStatus {
    guard(|| {
        let inst = &as_ref(inst, "instance")?.0;
        let t1 = read_tour(t1, inst.n(), "t1")?;
        let t2 = read_tour(t2, inst.n(), "t2")?;
        match stacking_from_tours(&t1, &t2, inst.k())? {
            Some(p) => put(out, KstspSolution(Solution::assemble(inst, t1, t2, p)?)),
            None => Ok(KstspStatus::Infeasible),
        }
    })
}

/// Solves an instance. `cap` bounds the enumerations of the exact and
/// heuristic methods; 0 keeps the defaults.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kstsp_solve(
    inst: *const KstspInstance,
    method: KstspMethod,
    cap: u64,
    out: *mut *mut KstspSolution,
) -> KstspStatus {
    guard(|| {
        let inst = &as_ref(inst, "instance")?.0;
        let caps = caps_with(cap);
        let sol = match method {
            KstspMethod::OraclePairs => exact_oracle_pairs(inst, Objective::Min, &caps)?,
            KstspMethod::OracleStacks => exact_oracle_stacks(inst, &caps)?,
            KstspMethod::TwsPickup => tws(inst, Side::Pickup, &caps)?,
            KstspMethod::TwsDelivery => tws(inst, Side::Delivery, &caps)?,
            KstspMethod::Twd => twd(inst, Alpha::HALF, None, &caps)?,
        };
        put(out, KstspSolution(sol))
    })
}

/// Aggregate-distance heuristic weighting pickup distances by
/// `alpha_num/alpha_den`; `scale` 0 picks the smallest integral scale.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kstsp_solve_twd(
    inst: *const KstspInstance,
    alpha_num: u64,
    alpha_den: u64,
    scale: u64,
    cap: u64,
    out: *mut *mut KstspSolution,
) -> KstspStatus {
    guard(|| {
        let inst = &as_ref(inst, "instance")?.0;
        let alpha = Alpha::new(alpha_num, alpha_den)?;
        let scale = (scale > 0).then_some(scale);
        put(
            out,
            KstspSolution(twd(inst, alpha, scale, &caps_with(cap))?),
        )
    })
}

/// Optimal pickup and delivery tours for a fixed stacking order.
///
/// # Safety
/// `inst` must be a live handle; `stack_lengths` must hold `stack_count`
/// lengths and `stack_items` their sum; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kstsp_solve_given_stacks(
    inst: *const KstspInstance,
    stack_items: *const usize,
    stack_lengths: *const usize,
    stack_count: usize,
    out: *mut *mut KstspSolution,
) -> KstspStatus {
    guard(|| {
        let inst = &as_ref(inst, "instance")?.0;
        let p = read_stacking(stack_items, stack_lengths, stack_count)?;
        put(out, KstspSolution(optimal_tours_given_stacks(inst, &p)?))
    })
}

/// Releases a solution. Null is ignored.
///
/// # Safety
/// `sol` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kstsp_solution_free(sol: *mut KstspSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// Total distance of both tours, or 0 for null.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kstsp_solution_value(sol: *const KstspSolution) -> u64 {
    sol.as_ref().map_or(0, |s| s.0.value)
}

/// Item count, or 0 for null.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kstsp_solution_n(sol: *const KstspSolution) -> usize {
    sol.as_ref().map_or(0, |s| s.0.t1.len())
}

unsafe fn copy_out(src: &[usize], buf: *mut usize, len: usize) -> Outcome {
    if len < src.len() {
        return Err(Failure(
            KstspStatus::InvalidArgument,
            format!("buffer holds {len} items, {} needed", src.len()),
        ));
    }
    if !src.is_empty() {
        if buf.is_null() {
            return Err(null("buffer"));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    }
    Ok(KstspStatus::Ok)
}

/// Copies the pickup tour into `buf`, which holds `len` items.
///
/// # Safety
/// `sol` must be a live handle; `buf` must have room for `len` items.
#[no_mangle]
pub unsafe extern "C" fn kstsp_solution_t1(
    sol: *const KstspSolution,
    buf: *mut usize,
    len: usize,
) -> KstspStatus {
    guard(|| copy_out(as_ref(sol, "solution")?.0.t1.seq(), buf, len))
}

/// Copies the delivery tour into `buf`, which holds `len` items.
///
/// # Safety
/// `sol` must be a live handle; `buf` must have room for `len` items.
#[no_mangle]
pub unsafe extern "C" fn kstsp_solution_t2(
    sol: *const KstspSolution,
    buf: *mut usize,
    len: usize,
) -> KstspStatus {
    guard(|| copy_out(as_ref(sol, "solution")?.0.t2.seq(), buf, len))
}

/// Number of stacks, including empty ones, or 0 for null.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kstsp_solution_stack_count(sol: *const KstspSolution) -> usize {
    sol.as_ref().map_or(0, |s| s.0.stacking.stack_count())
}

/// Height of stack `index`, or 0 for null or out-of-range.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kstsp_solution_stack_len(
    sol: *const KstspSolution,
    index: usize,
) -> usize {
    sol.as_ref()
        .and_then(|s| s.0.stacking.stacks().get(index))
        .map_or(0, Vec::len)
}

/// Copies stack `index`, bottom to top, into `buf`, which holds `len` items.
///
/// # Safety
/// `sol` must be a live handle; `buf` must have room for `len` items.
#[no_mangle]
pub unsafe extern "C" fn kstsp_solution_stack(
    sol: *const KstspSolution,
    index: usize,
    buf: *mut usize,
    len: usize,
) -> KstspStatus {
    guard(|| {
        let stacks = as_ref(sol, "solution")?.0.stacking.stacks();
        let stack = stacks.get(index).ok_or_else(|| {
            Failure(
                KstspStatus::InvalidArgument,
                format!("stack {index} out of range ({} stacks)", stacks.len()),
            )
        })?;
        copy_out(stack, buf, len)
    })
}

/// Writes the canonical JSON document of a solution to `*out`.
///
/// # Safety
/// `sol` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kstsp_solution_to_json(
    sol: *const KstspSolution,
    out: *mut *mut c_char,
) -> KstspStatus {
    guard(|| put_string(out, solution_to_json(&as_ref(sol, "solution")?.0)))
}
