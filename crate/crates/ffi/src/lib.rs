//! C ABI over `rlemaw`.
//!
//! A bundle is an opaque pointer created by `rlemaw_bundle_new*` and released
//! with `rlemaw_bundle_free`. Every fallible call returns an
//! [`RlemawStatus`]; results travel through out-parameters.

use std::ffi::{c_char, c_void};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use rlemaw::{
    encode, parse_rle_text, symbols, Error, FnSink, MawHandle, ReprBundle, Symbol, TypeFilter,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RlemawStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    InvalidHandle = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// A MAW as six integers; see `rlemaw_handle_expand`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RlemawHandle {
    pub type_id: u8,
    pub lead_symbol: u32,
    pub lead_count: u64,
    pub run_index: u64,
    pub run_span: u64,
    pub adjust_exponent: u64,
}

/// Opaque bundle of MAW structures for one text.
pub struct RlemawBundle {
    inner: ReprBundle,
}

impl From<MawHandle> for RlemawHandle {
    fn from(h: MawHandle) -> Self {
        RlemawHandle {
            type_id: h.type_id,
            lead_symbol: h.lead_symbol.code(),
            lead_count: h.lead_count as u64,
            run_index: h.run_index as u64,
            run_span: h.run_span as u64,
            adjust_exponent: h.adjust_exponent as u64,
        }
    }
}

impl RlemawHandle {
    fn to_handle(self) -> Result<MawHandle, RlemawStatus> {
        let size = |v: u64| usize::try_from(v).map_err(|_| RlemawStatus::InvalidHandle);
        Ok(MawHandle {
            type_id: self.type_id,
            lead_symbol: Symbol::new(self.lead_symbol).map_err(|_| RlemawStatus::InvalidHandle)?,
            lead_count: size(self.lead_count)?,
            run_index: size(self.run_index)?,
            run_span: size(self.run_span)?,
            adjust_exponent: size(self.adjust_exponent)?,
        })
    }
}

fn status_of(e: &Error) -> RlemawStatus {
    match e {
        Error::InvalidHandle(_) => RlemawStatus::InvalidHandle,
        _ => RlemawStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), RlemawStatus>) -> RlemawStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RlemawStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => RlemawStatus::Panic,
    }
}

unsafe fn bytes<'a>(data: *const u8, len: usize) -> Result<&'a [u8], RlemawStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(RlemawStatus::NullPointer);
    }
    Ok(slice::from_raw_parts(data, len))
}

unsafe fn publish(bundle: ReprBundle, out: *mut *mut RlemawBundle) {
    *out = Box::into_raw(Box::new(RlemawBundle { inner: bundle }));
}

/// Builds a bundle from UTF-8 text over the symbols it contains.
///
/// # Safety
/// `text` must point to `len` readable bytes (or be null with `len == 0`);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rlemaw_bundle_new(
    text: *const u8,
    len: usize,
    out: *mut *mut RlemawBundle,
) -> RlemawStatus {
    guard(|| {
        if out.is_null() {
            return Err(RlemawStatus::NullPointer);
        }
        let s = std::str::from_utf8(bytes(text, len)?).map_err(|_| RlemawStatus::InvalidUtf8)?;
        let rle = encode(&symbols(s)).map_err(|e| status_of(&e))?;
        publish(ReprBundle::from_rle(&rle), out);
        Ok(())
    })
}

/// Builds a bundle from the `a^2 c^7 b^2` run format.
///
/// # Safety
/// As for [`rlemaw_bundle_new`].
#[no_mangle]
pub unsafe extern "C" fn rlemaw_bundle_new_rle(
    src: *const u8,
    len: usize,
    out: *mut *mut RlemawBundle,
) -> RlemawStatus {
    guard(|| {
        if out.is_null() {
            return Err(RlemawStatus::NullPointer);
        }
        let s = std::str::from_utf8(bytes(src, len)?).map_err(|_| RlemawStatus::InvalidUtf8)?;
        let rle = parse_rle_text(s).map_err(|e| status_of(&e))?;
        publish(ReprBundle::from_rle(&rle), out);
        Ok(())
    })
}

/// Releases a bundle. Null is ignored.
///
/// # Safety
/// `bundle` must come from `rlemaw_bundle_new*` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rlemaw_bundle_free(bundle: *mut RlemawBundle) {
    if !bundle.is_null() {
        drop(Box::from_raw(bundle));
    }
}

unsafe fn get<'a>(bundle: *const RlemawBundle) -> Result<&'a ReprBundle, RlemawStatus> {
    bundle
        .as_ref()
        .map(|b| &b.inner)
        .ok_or(RlemawStatus::NullPointer)
}

/// Writes the number of MAWs of each type 1..5 to `counts[0..5]`.
///
/// # Safety
/// `bundle` must be live; `counts` must have room for five values.
#[no_mangle]
pub unsafe extern "C" fn rlemaw_bundle_counts(
    bundle: *const RlemawBundle,
    counts: *mut u64,
) -> RlemawStatus {
    guard(|| {
        let b = get(bundle)?;
        if counts.is_null() {
            return Err(RlemawStatus::NullPointer);
        }
        for (i, c) in b.counts().iter().enumerate() {
            *counts.add(i) = *c as u64;
        }
        Ok(())
    })
}

/// Machine words held by the bundle's structures.
///
/// # Safety
/// `bundle` must be live or null (null gives 0).
#[no_mangle]
pub unsafe extern "C" fn rlemaw_bundle_space_words(bundle: *const RlemawBundle) -> u64 {
    get(bundle)
        .map(|b| b.space_words().total as u64)
        .unwrap_or(0)
}

/// Calls `callback` once per MAW whose type bit is set in `type_mask`
/// (bit `t-1` for type `t`; 0 selects every type). A nonzero return from
/// `callback` stops the enumeration.
///
/// # Safety
/// `bundle` must be live; `callback` must be safe to call with `user`.
#[no_mangle]
pub unsafe extern "C" fn rlemaw_bundle_enumerate(
    bundle: *const RlemawBundle,
    type_mask: u32,
    callback: Option<extern "C" fn(handle: *const RlemawHandle, user: *mut c_void) -> i32>,
    user: *mut c_void,
) -> RlemawStatus {
    guard(|| {
        let b = get(bundle)?;
        let cb = callback.ok_or(RlemawStatus::NullPointer)?;
        let types: Vec<u8> = (1..=5u8)
            .filter(|t| type_mask == 0 || type_mask & (1 << (t - 1)) != 0)
            .collect();
        let filter = TypeFilter::only(&types).map_err(|e| status_of(&e))?;
        let mut stopped = false;
        let mut sink = FnSink(|h: MawHandle| {
            if !stopped {
                let c = RlemawHandle::from(h);
                stopped = cb(&c, user) != 0;
            }
        });
        b.enumerate_all(filter, &mut sink);
        Ok(())
    })
}

/// Writes the MAW's code points to `buf` and its length to `out_len`.
/// Returns `BUFFER_TOO_SMALL` with the needed length when `cap` is short.
///
/// # Safety
/// `bundle` and `handle` must be valid; `buf` must have room for `cap`
/// values; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rlemaw_handle_expand(
    bundle: *const RlemawBundle,
    handle: *const RlemawHandle,
    buf: *mut u32,
    cap: usize,
    out_len: *mut usize,
) -> RlemawStatus {
    guard(|| {
        let b = get(bundle)?;
        let h = handle
            .as_ref()
            .ok_or(RlemawStatus::NullPointer)?
            .to_handle()?;
        if out_len.is_null() {
            return Err(RlemawStatus::NullPointer);
        }
        let word = h.expand_symbols(&b.rle).map_err(|e| status_of(&e))?;
        *out_len = word.len();
        if word.len() > cap {
            return Err(RlemawStatus::BufferTooSmall);
        }
        if !word.is_empty() && buf.is_null() {
            return Err(RlemawStatus::NullPointer);
        }
        for (i, s) in word.iter().enumerate() {
            *buf.add(i) = s.code();
        }
        Ok(())
    })
}

/// As [`rlemaw_handle_expand`], writing UTF-8 bytes without a terminator.
///
/// # Safety
/// As for [`rlemaw_handle_expand`], with `buf` holding `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn rlemaw_handle_expand_utf8(
    bundle: *const RlemawBundle,
    handle: *const RlemawHandle,
    buf: *mut u8,
    cap: usize,
    out_len: *mut usize,
) -> RlemawStatus {
    guard(|| {
        let b = get(bundle)?;
        let h = handle
            .as_ref()
            .ok_or(RlemawStatus::NullPointer)?
            .to_handle()?;
        if out_len.is_null() {
            return Err(RlemawStatus::NullPointer);
        }
        let word: String = h
            .expand_symbols(&b.rle)
            .map_err(|e| status_of(&e))?
            .into_iter()
            .filter_map(Symbol::to_char)
            .collect();
        *out_len = word.len();
        if word.len() > cap {
            return Err(RlemawStatus::BufferTooSmall);
        }
        if !word.is_empty() && buf.is_null() {
            return Err(RlemawStatus::NullPointer);
        }
        ptr::copy_nonoverlapping(word.as_ptr(), buf, word.len());
        Ok(())
    })
}

/// A static, NUL-terminated description of `status`.
#[no_mangle]
pub extern "C" fn rlemaw_status_message(status: RlemawStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        RlemawStatus::Ok => b"ok\0",
        RlemawStatus::NullPointer => b"null pointer\0",
        RlemawStatus::InvalidUtf8 => b"input is not UTF-8\0",
        RlemawStatus::InvalidInput => b"invalid input\0",
        RlemawStatus::InvalidHandle => b"handle does not fit this bundle\0",
        RlemawStatus::BufferTooSmall => b"buffer too small\0",
        RlemawStatus::Panic => b"internal error\0",
    };
    s.as_ptr().cast()
}
