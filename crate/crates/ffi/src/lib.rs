//! C ABI over `zlconst`.
//!
//! Groups and character tables are opaque handles created by `zl_*_new`
//! style constructors and released with the matching `_free`. Every
//! fallible call returns a [`ZlStatus`]; on failure a message is available
//! from [`zl_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use zlconst::amenability::{
    amzl_direct_norm, amzl_general, closed_form_a2xb, closed_form_affine, closed_form_dihedral,
    closed_form_extraspecial, closed_form_frobenius,
};
use zlconst::char_table::character_table;
use zlconst::group::{build_from_generators, conjugacy_classes, parse_generators};
use zlconst::{
    CharTable, ConjClassPartition, Error, ErrorKind, ExactRational, Family, FrobeniusSpec,
    GroupTable,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ZlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Construction = 3,
    Numeric = 4,
    Overflow = 5,
    OutOfRange = 6,
    Panic = 7,
}

/// A finite group with its conjugacy classes.
pub struct ZlGroup {
    group: GroupTable,
    classes: ConjClassPartition,
}

/// A character table; rows are characters, columns conjugacy classes.
pub struct ZlCharTable {
    table: CharTable,
}

/// The general constant with its diagonal and off-diagonal parts.
#[repr(C)]
#[derive(Copy, Clone, Debug, Default, PartialEq)]
pub struct ZlAmenability {
    pub value: f64,
    pub am_diag: f64,
    pub am_off: f64,
}

/// `num / den` with `den > 0`.
#[repr(C)]
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct ZlRational {
    pub num: i64,
    pub den: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> ZlStatus {
    if matches!(e, Error::IndexOutOfRange { .. }) {
        return ZlStatus::OutOfRange;
    }
    match e.kind() {
        ErrorKind::Usage => ZlStatus::InvalidArgument,
        ErrorKind::Construction => ZlStatus::Construction,
        ErrorKind::Numeric => ZlStatus::Numeric,
    }
}

struct Fail(ZlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> ZlStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ZlStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            ZlStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(ZlStatus::NullPointer, format!("null pointer: {what}"))
}

/// SAFETY: caller guarantees `p` is null or valid for reads.
unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

/// SAFETY: caller guarantees `p` is null or valid for writes.
unsafe fn put<T>(p: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(v);
    Ok(())
}

fn to_rational(v: ExactRational) -> Result<ZlRational, Fail> {
    v.to_i64_pair()
        .map(|(num, den)| ZlRational { num, den })
        .ok_or_else(|| {
            Fail(
                ZlStatus::Overflow,
                format!("{v} does not fit in 64-bit integers"),
            )
        })
}

fn index_ok(i: usize, bound: usize) -> Result<(), Fail> {
    if i < bound {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: i, bound }.into())
    }
}

fn finish_group(group: GroupTable, out: *mut *mut ZlGroup) -> Result<(), Fail> {
    let classes = conjugacy_classes(&group);
    let handle = Box::into_raw(Box::new(ZlGroup { group, classes }));
    // SAFETY: `out` checked by the callers below for null-ness via put.
    unsafe { put(out, handle, "out") }.inspect_err(|_| {
        // SAFETY: just created by Box::into_raw and not shared.
        drop(unsafe { Box::from_raw(handle) });
    })
}

fn build_family(family: Family, cap: usize, out: *mut *mut ZlGroup) -> ZlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        finish_group(family.build(cap)?, out)
    })
}

fn cap_or_default(cap: usize) -> usize {
    if cap == 0 {
        zlconst::DEFAULT_ORDER_CAP
    } else {
        cap
    }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn zl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Cyclic group of order `n`. A `cap` of 0 uses the default order cap.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn zl_group_cyclic(n: u64, cap: usize, out: *mut *mut ZlGroup) -> ZlStatus {
    build_family(Family::Cyclic { n }, cap_or_default(cap), out)
}

/// Dihedral group of order `2n`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn zl_group_dihedral(n: u64, cap: usize, out: *mut *mut ZlGroup) -> ZlStatus {
    build_family(Family::Dihedral { n }, cap_or_default(cap), out)
}

/// Affine group of the field with `q` elements.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn zl_group_affine(q: u64, cap: usize, out: *mut *mut ZlGroup) -> ZlStatus {
    build_family(Family::Affine { q }, cap_or_default(cap), out)
}

/// Maps `x -> a^2 x + b` over the field with `q` elements, `q` odd.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn zl_group_a2xb(q: u64, cap: usize, out: *mut *mut ZlGroup) -> ZlStatus {
    build_family(Family::A2xb { q }, cap_or_default(cap), out)
}

/// Extraspecial group of order `p^(2n+1)`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn zl_group_extraspecial(
    p: u64,
    n: u32,
    cap: usize,
    out: *mut *mut ZlGroup,
) -> ZlStatus {
    build_family(Family::Extraspecial { p, n }, cap_or_default(cap), out)
}

/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn zl_group_quaternion8(out: *mut *mut ZlGroup) -> ZlStatus {
    build_family(Family::Quaternion8, zlconst::DEFAULT_ORDER_CAP, out)
}

/// `Z_k x| Z_h` acting by `x -> u x`. A `multiplier` of 0 picks the
/// smallest valid one.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn zl_group_frobenius_cyclic(
    k: u64,
    h: u64,
    multiplier: u64,
    cap: usize,
    out: *mut *mut ZlGroup,
) -> ZlStatus {
    let spec = if multiplier == 0 {
        match FrobeniusSpec::cyclic_auto(k, h) {
            Ok(s) => s,
            Err(e) => {
                let f = Fail::from(e);
                set_error(f.1);
                return f.0;
            }
        }
    } else {
        FrobeniusSpec::cyclic(k, h, multiplier)
    };
    build_family(Family::Frobenius(spec), cap_or_default(cap), out)
}

/// Closure of permutation generators, one per line in cycle notation.
///
/// # Safety
/// `text` must be null or a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn zl_group_from_generators(
    text: *const c_char,
    cap: usize,
    out: *mut *mut ZlGroup,
) -> ZlStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|_| {
            Fail(
                ZlStatus::InvalidArgument,
                "generator text is not UTF-8".into(),
            )
        })?;
        let gens = parse_generators(s)?;
        finish_group(build_from_generators(&gens, cap_or_default(cap))?, out)
    })
}

/// # Safety
/// `g` must be null or a handle from a `zl_group_*` constructor, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zl_group_free(g: *mut ZlGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live group handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zl_group_order(g: *const ZlGroup, out: *mut usize) -> ZlStatus {
    guard(|| put(out, get(g, "group")?.group.order(), "out"))
}

/// # Safety
/// `g` must be a live group handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zl_group_num_classes(g: *const ZlGroup, out: *mut usize) -> ZlStatus {
    guard(|| put(out, get(g, "group")?.classes.num_classes(), "out"))
}

/// Size of conjugacy class `class`, in the library's class order.
///
/// # Safety
/// `g` must be a live group handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zl_group_class_size(
    g: *const ZlGroup,
    class: usize,
    out: *mut usize,
) -> ZlStatus {
    guard(|| {
        let sizes = get(g, "group")?.classes.sizes();
        index_ok(class, sizes.len())?;
        put(out, sizes[class], "out")
    })
}

/// # Safety
/// `g` must be a live group handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zl_char_table_new(
    g: *const ZlGroup,
    seed: u64,
    out: *mut *mut ZlCharTable,
) -> ZlStatus {
    guard(|| {
        let g = get(g, "group")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let table = character_table(&g.group, &g.classes, seed)?;
        put(out, Box::into_raw(Box::new(ZlCharTable { table })), "out")
    })
}

/// # Safety
/// `t` must be null or a handle from [`zl_char_table_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zl_char_table_free(t: *mut ZlCharTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live table handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zl_char_table_degree(
    t: *const ZlCharTable,
    character: usize,
    out: *mut u64,
) -> ZlStatus {
    guard(|| {
        let t = &get(t, "table")?.table;
        index_ok(character, t.num_classes())?;
        put(out, t.degrees()[character], "out")
    })
}

/// # Safety
/// `t` must be a live table handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zl_char_table_value(
    t: *const ZlCharTable,
    character: usize,
    class: usize,
    re: *mut f64,
    im: *mut f64,
) -> ZlStatus {
    guard(|| {
        let t = &get(t, "table")?.table;
        index_ok(character, t.num_classes())?;
        index_ok(class, t.num_classes())?;
        if re.is_null() || im.is_null() {
            return Err(null("re/im"));
        }
        let v = t.value(character, class);
        re.write(v.re);
        im.write(v.im);
        Ok(())
    })
}

/// The constant from the class-pair sum over the character table.
///
/// # Safety
/// `t` must be a live table handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zl_amzl_general(
    t: *const ZlCharTable,
    out: *mut ZlAmenability,
) -> ZlStatus {
    guard(|| {
        let r = amzl_general(&get(t, "table")?.table);
        let v = ZlAmenability {
            value: r.value_float,
            am_diag: r.am_diag.unwrap_or(f64::NAN),
            am_off: r.am_off.unwrap_or(f64::NAN),
        };
        put(out, v, "out")
    })
}

/// The constant from the element-pair norm; only for small groups.
///
/// # Safety
/// `g` and `t` must be live handles with `t` built from `g`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zl_amzl_direct_norm(
    g: *const ZlGroup,
    t: *const ZlCharTable,
    out: *mut f64,
) -> ZlStatus {
    guard(|| {
        let g = get(g, "group")?;
        let t = &get(t, "table")?.table;
        if t.num_classes() != g.classes.num_classes() || t.group_order() != g.group.order() {
            return Err(Fail(
                ZlStatus::InvalidArgument,
                "table does not belong to this group".into(),
            ));
        }
        put(out, amzl_direct_norm(t, &g.classes)?, "out")
    })
}

fn closed(v: zlconst::Result<ExactRational>, out: *mut ZlRational) -> ZlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let r = to_rational(v?)?;
        // SAFETY: non-null checked above; caller guarantees writability.
        unsafe { put(out, r, "out") }
    })
}

/// Closed form for the dihedral group of order `2n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zl_closed_form_dihedral(n: u64, out: *mut ZlRational) -> ZlStatus {
    closed(closed_form_dihedral(n), out)
}

/// Closed form for a Frobenius group with complement order `h` and kernel order `k`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zl_closed_form_frobenius(
    h: u64,
    k: u64,
    out: *mut ZlRational,
) -> ZlStatus {
    closed(closed_form_frobenius(h, k), out)
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zl_closed_form_affine(q: u64, out: *mut ZlRational) -> ZlStatus {
    closed(closed_form_affine(q), out)
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zl_closed_form_a2xb(q: u64, out: *mut ZlRational) -> ZlStatus {
    closed(closed_form_a2xb(q), out)
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zl_closed_form_extraspecial(
    p: u64,
    n: u32,
    out: *mut ZlRational,
) -> ZlStatus {
    closed(closed_form_extraspecial(p, n), out)
}
