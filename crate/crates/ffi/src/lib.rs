//! C ABI over the `nonsolv` crate.
//!
//! Groups and character tables live behind opaque handles. Each constructor
//! has a matching `*_free`.
//! Every fallible function returns an [`NsStatus`]; on failure a message is
//! available from [`ns_last_error_message`] on the same thread until the next
//! call into this library. Strings handed out by the library must be released
//! with [`ns_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nonsolv::catalog;
use nonsolv::chartable::{load_character_table, CharacterTable};
use nonsolv::conditions::SearchMode;
use nonsolv::definition::GroupDefinition;
use nonsolv::report::{self, AnalyzeDocument, Condition, CountMethod, SCHEMA_VERSION};
use nonsolv::structure::is_solvable;
use nonsolv::{Error, FiniteGroup};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    OrderCapExceeded = 5,
    UnknownClass = 6,
    TableInvalid = 7,
    WrongTable = 8,
    Io = 9,
    Internal = 10,
    Panic = 11,
}

/// Condition codes accepted by [`ns_group_check`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NsCondition {
    Thompson = 0,
    KaplanLevy = 1,
    ThreePo = 2,
    ThreePpo = 3,
    ThreeSs = 4,
}

/// Sylow conjugate search strategy for the 3SS condition.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NsSearchMode {
    Exhaustive = 0,
    Fast = 1,
}

/// An enumerated finite group.
pub struct NsGroup {
    group: FiniteGroup,
}

/// A validated character table.
pub struct NsTable {
    table: CharacterTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: NsStatus,
    message: String,
}

impl Failure {
    fn new(status: NsStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) | Error::Json(_) | Error::InvalidElement(_) => NsStatus::Parse,
            Error::OrderCapExceeded { .. } => NsStatus::OrderCapExceeded,
            Error::UnknownClass(_) => NsStatus::UnknownClass,
            Error::TableInvalid { .. } | Error::TableInconsistent(_) => NsStatus::TableInvalid,
            Error::WrongTable(_) => NsStatus::WrongTable,
            Error::Io(_) => NsStatus::Io,
            _ => NsStatus::Internal,
        };
        Failure::new(status, e.to_string())
    }
}

fn set_last_error(message: Option<String>) {
    let c = message.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            NsStatus::Ok
        }
        Ok(Err(fail)) => {
            set_last_error(Some(fail.message));
            fail.status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_last_error(Some(format!("internal panic: {msg}")));
            NsStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(
            NsStatus::NullArgument,
            format!("{what} is NULL"),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(NsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(NsStatus::NullArgument, format!("{what} is NULL")))
}

fn require_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(NsStatus::NullArgument, "out is NULL"));
    }
    Ok(())
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(
            NsStatus::NullArgument,
            format!("{what} is NULL"),
        ));
    }
    out.write(value);
    Ok(())
}

fn cap_or_default(max_order: usize) -> usize {
    if max_order == 0 {
        nonsolv::DEFAULT_ORDER_CAP
    } else {
        max_order
    }
}

fn search_mode(mode: u32) -> Result<SearchMode, Failure> {
    match mode {
        m if m == NsSearchMode::Exhaustive as u32 => Ok(SearchMode::Exhaustive),
        m if m == NsSearchMode::Fast as u32 => Ok(SearchMode::Fast),
        other => Err(Failure::new(
            NsStatus::InvalidArgument,
            format!("unknown search mode {other}"),
        )),
    }
}

fn condition(code: u32) -> Result<Condition, Failure> {
    Condition::ALL
        .into_iter()
        .find(|c| ffi_code(*c) as u32 == code)
        .ok_or_else(|| {
            Failure::new(
                NsStatus::InvalidArgument,
                format!("unknown condition {code}"),
            )
        })
}

fn ffi_code(c: Condition) -> NsCondition {
    match c {
        Condition::Thompson => NsCondition::Thompson,
        Condition::KaplanLevy => NsCondition::KaplanLevy,
        Condition::ThreePo => NsCondition::ThreePo,
        Condition::ThreePpo => NsCondition::ThreePpo,
        Condition::ThreeSs => NsCondition::ThreeSs,
    }
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure::new(NsStatus::Internal, "output contains a nul byte"))
}

/// Message describing the last failure on this thread, or NULL after a
/// successful call. The pointer stays valid until the next call into the
/// library from the same thread.
#[no_mangle]
pub extern "C" fn ns_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Version of the structured documents produced by [`ns_group_analyze_json`].
#[no_mangle]
pub extern "C" fn ns_schema_version() -> u32 {
    SCHEMA_VERSION
}

/// Builds a group from a JSON group definition. `max_order` of 0 selects the
/// default cap.
///
/// # Safety
/// `definition` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ns_group_from_definition(
    definition: *const c_char,
    max_order: usize,
    out: *mut *mut NsGroup,
) -> NsStatus {
    guard(|| {
        require_out(out)?;
        let text = read_str(definition, "definition")?;
        let group = GroupDefinition::parse(text)?.build(cap_or_default(max_order))?;
        write_out(out, Box::into_raw(Box::new(NsGroup { group })), "out")
    })
}

/// Builds a group from the built-in catalog by name (case-insensitive).
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ns_group_from_catalog(
    name: *const c_char,
    max_order: usize,
    out: *mut *mut NsGroup,
) -> NsStatus {
    guard(|| {
        require_out(out)?;
        let name = read_str(name, "name")?;
        let group = catalog::lookup(name)?
            .definition
            .build(cap_or_default(max_order))?;
        write_out(out, Box::into_raw(Box::new(NsGroup { group })), "out")
    })
}

/// Releases a group. NULL is ignored.
///
/// # Safety
/// `group` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ns_group_free(group: *mut NsGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// # Safety
/// `group` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ns_group_order(group: *const NsGroup, out: *mut usize) -> NsStatus {
    guard(|| {
        let g = deref(group, "group")?;
        write_out(out, g.group.order(), "out")
    })
}

/// # Safety
/// `group` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ns_group_is_solvable(group: *const NsGroup, out: *mut bool) -> NsStatus {
    guard(|| {
        let g = deref(group, "group")?;
        write_out(out, is_solvable(&g.group).solvable, "out")
    })
}

/// Decides one condition. `condition_code` is an [`NsCondition`] and `mode` an
/// [`NsSearchMode`]. `conclusive` may be NULL; it is false only for a failed
/// 3SS search in fast mode.
///
/// # Safety
/// `group` and `holds` must be valid pointers; `conclusive` valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn ns_group_check(
    group: *const NsGroup,
    condition_code: u32,
    mode: u32,
    holds: *mut bool,
    conclusive: *mut bool,
) -> NsStatus {
    guard(|| {
        let g = deref(group, "group")?;
        let doc = report::check_condition(&g.group, condition(condition_code)?, search_mode(mode)?);
        write_out(holds, doc.holds, "holds")?;
        if !conclusive.is_null() {
            conclusive.write(doc.conclusive);
        }
        Ok(())
    })
}

/// Counts `(x, y, z)` with `xyz = 1` over three classes by enumeration.
/// Selectors are class labels or element orders, as on the command line.
///
/// # Safety
/// All pointers must be valid; selectors nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn ns_group_count_triples(
    group: *const NsGroup,
    class1: *const c_char,
    class2: *const c_char,
    class3: *const c_char,
    out: *mut u64,
) -> NsStatus {
    guard(|| {
        let g = deref(group, "group")?;
        let sel = [
            read_str(class1, "class1")?.to_string(),
            read_str(class2, "class2")?.to_string(),
            read_str(class3, "class3")?.to_string(),
        ];
        let doc = report::count_triples(&g.group, &sel, CountMethod::Brute, None)?;
        write_out(out, doc.brute.expect("brute count requested"), "out")
    })
}

/// Loads and validates a character table document.
///
/// # Safety
/// `document` must be nul-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ns_table_load(
    document: *const c_char,
    out: *mut *mut NsTable,
) -> NsStatus {
    guard(|| {
        require_out(out)?;
        let text = read_str(document, "document")?;
        let table = load_character_table(text)?;
        write_out(out, Box::into_raw(Box::new(NsTable { table })), "out")
    })
}

/// Releases a table. NULL is ignored.
///
/// # Safety
/// `table` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ns_table_free(table: *mut NsTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Counts class triples from the character table after matching its classes
/// to those of `group`. Selectors may use table labels.
///
/// # Safety
/// All pointers must be valid; selectors nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn ns_table_count_triples(
    group: *const NsGroup,
    table: *const NsTable,
    class1: *const c_char,
    class2: *const c_char,
    class3: *const c_char,
    out: *mut u64,
) -> NsStatus {
    guard(|| {
        let g = deref(group, "group")?;
        let t = deref(table, "table")?;
        let sel = [
            read_str(class1, "class1")?.to_string(),
            read_str(class2, "class2")?.to_string(),
            read_str(class3, "class3")?.to_string(),
        ];
        let doc = report::count_triples(&g.group, &sel, CountMethod::Character, Some(&t.table))?;
        write_out(
            out,
            doc.character.expect("character count requested"),
            "out",
        )
    })
}

/// Full condition report as a JSON document. Release the result with
/// [`ns_string_free`].
///
/// # Safety
/// `group` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ns_group_analyze_json(
    group: *const NsGroup,
    mode: u32,
    out: *mut *mut c_char,
) -> NsStatus {
    guard(|| {
        require_out(out)?;
        let g = deref(group, "group")?;
        let doc = AnalyzeDocument {
            schema_version: SCHEMA_VERSION,
            report: report::analyze(&g.group, search_mode(mode)?, false),
        };
        let text = serde_json::to_string(&doc)
            .map_err(|e| Failure::new(NsStatus::Internal, e.to_string()))?;
        write_out(out, into_c_string(text)?, "out")
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ns_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
