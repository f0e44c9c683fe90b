//! C ABI for the folred toolkit. Strings cross the boundary as UTF-8,
//! reports as JSON documents; germ handles are opaque. Every returned
//! string must be released with `folred_string_free`, every handle with
//! `folred_germ_free`. The committed header lives in include/folred.h.

use folred::germ::{linear_classify, FoliationGerm};
use folred::parse::{germ_to_expression, parse_expression};
use folred::report::{run_pipeline, split_input, Pipeline, RunConfig};
use std::ffi::{c_char, c_int, CStr, CString};

/// Opaque handle around a parsed foliation germ.
pub struct FolredGerm(FoliationGerm);

pub const FOLRED_OK: c_int = 0;
/// Hard failure: bad input, unrepresentable data, internal error.
pub const FOLRED_ERR: c_int = 2;
/// Resource-limit failure: depth or order ran out before an answer.
pub const FOLRED_ERR_LIMIT: c_int = 3;

fn leak_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', "")).expect("no interior NUL").into_raw()
}

unsafe fn read_str<'s>(p: *const c_char) -> Option<&'s str> {
    if p.is_null() {
        return None;
    }
    CStr::from_ptr(p).to_str().ok()
}

fn write_out(out: *mut *mut c_char, s: String) {
    if !out.is_null() {
        unsafe { *out = leak_string(s) };
    }
}

/// Parses one 1-form expression at the given truncation order. Returns null
/// on failure and, when `err` is non-null, stores the error message there.
///
/// # Safety
/// `text` must be a NUL-terminated UTF-8 string; `err`, if non-null, must
/// point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn folred_germ_parse(
    text: *const c_char,
    order: usize,
    err: *mut *mut c_char,
) -> *mut FolredGerm {
    let Some(text) = read_str(text) else {
        write_out(err, "invalid input pointer or encoding".into());
        return std::ptr::null_mut();
    };
    match parse_expression(text, order) {
        Ok(g) => Box::into_raw(Box::new(FolredGerm(g))),
        Err(e) => {
            write_out(err, format!("{}: {}", e.code(), e));
            std::ptr::null_mut()
        }
    }
}

/// Releases a germ handle. Null is ignored.
///
/// # Safety
/// `germ` must come from `folred_germ_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn folred_germ_free(germ: *mut FolredGerm) {
    if !germ.is_null() {
        drop(Box::from_raw(germ));
    }
}

/// Canonical printed expression of the germ.
///
/// # Safety
/// `germ` must be a live handle from `folred_germ_parse`.
#[no_mangle]
pub unsafe extern "C" fn folred_germ_expression(germ: *const FolredGerm) -> *mut c_char {
    if germ.is_null() {
        return std::ptr::null_mut();
    }
    leak_string(germ_to_expression(&(*germ).0))
}

/// Linear classification of the germ as a JSON document, or null with the
/// error message in `err` on failure.
///
/// # Safety
/// `germ` must be a live handle; `err` as in `folred_germ_parse`.
#[no_mangle]
pub unsafe extern "C" fn folred_germ_classify_json(
    germ: *const FolredGerm,
    err: *mut *mut c_char,
) -> *mut c_char {
    if germ.is_null() {
        write_out(err, "null germ handle".into());
        return std::ptr::null_mut();
    }
    match linear_classify(&(*germ).0) {
        Ok(class) => {
            let doc = serde_json::json!({
                "tag": format!("{:?}", class.tag),
                "lambda": class.lambda.as_ref().map(|l| l.to_string()),
                "trace": class.trace.to_string(),
                "det": class.det.to_string(),
            });
            leak_string(serde_json::to_string(&doc).expect("classification serializes"))
        }
        Err(e) => {
            write_out(err, format!("{}: {}", e.code(), e));
            std::ptr::null_mut()
        }
    }
}

/// One-shot pipeline run. `pipeline` is one of the CLI pipeline names,
/// `input` holds one expression per line (or semicolon-separated). On
/// success stores the JSON report in `out` and returns 0; otherwise stores
/// the error message and returns the error class (2 hard, 3 limit).
///
/// # Safety
/// `pipeline` and `input` must be NUL-terminated UTF-8 strings; `out`, if
/// non-null, must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn folred_run_json(
    pipeline: *const c_char,
    input: *const c_char,
    order: usize,
    depth_limit: usize,
    out: *mut *mut c_char,
) -> c_int {
    let (Some(pipeline), Some(input)) = (read_str(pipeline), read_str(input)) else {
        write_out(out, "invalid input pointer or encoding".into());
        return FOLRED_ERR;
    };
    let pipeline = match Pipeline::from_name(pipeline) {
        Ok(p) => p,
        Err(e) => {
            write_out(out, format!("{}: {}", e.code(), e));
            return FOLRED_ERR;
        }
    };
    let cfg = RunConfig { pipeline, order, depth_limit };
    let exprs = split_input(&input.replace(';', "\n"));
    match run_pipeline(&exprs, &cfg) {
        Ok(run) => {
            write_out(
                out,
                serde_json::to_string_pretty(&run.report).expect("report serializes"),
            );
            FOLRED_OK
        }
        Err(e) => {
            write_out(out, format!("{}: {}", e.code(), e));
            e.exit_code() as c_int
        }
    }
}

/// Releases a string returned by any folred function. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn folred_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(p: *mut c_char) -> String {
        assert!(!p.is_null());
        let s = CStr::from_ptr(p).to_str().unwrap().to_string();
        folred_string_free(p);
        s
    }

    #[test]
    fn parse_classify_free() {
        unsafe {
            let text = c("x*dy + y*dx");
            let mut err: *mut c_char = std::ptr::null_mut();
            let g = folred_germ_parse(text.as_ptr(), 12, &mut err);
            assert!(!g.is_null());
            let expr = take(folred_germ_expression(g));
            assert_eq!(expr, "(y)*dx + (x)*dy");
            let json = take(folred_germ_classify_json(g, &mut err));
            let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
            assert_eq!(doc["lambda"], "-1");
            folred_germ_free(g);
        }
    }

    #[test]
    fn parse_error_reports_message() {
        unsafe {
            let text = c("x +");
            let mut err: *mut c_char = std::ptr::null_mut();
            let g = folred_germ_parse(text.as_ptr(), 12, &mut err);
            assert!(g.is_null());
            let msg = take(err);
            assert!(msg.starts_with("E_PARSE"), "{}", msg);
        }
    }

    #[test]
    fn one_shot_run() {
        unsafe {
            let pipeline = c("pair-reduce");
            let input = c("dy; d(y+x^3)");
            let mut out: *mut c_char = std::ptr::null_mut();
            let rc = folred_run_json(pipeline.as_ptr(), input.as_ptr(), 12, 24, &mut out);
            assert_eq!(rc, FOLRED_OK);
            let doc: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
            assert_eq!(doc["nodes"][0]["pair_type"]["tag"], "(2)");
        }
    }

    #[test]
    fn limit_errors_get_their_own_code() {
        unsafe {
            let pipeline = c("seidenberg");
            let input = c("d(y^2 - x^3)");
            let mut out: *mut c_char = std::ptr::null_mut();
            let rc = folred_run_json(pipeline.as_ptr(), input.as_ptr(), 12, 0, &mut out);
            assert_eq!(rc, FOLRED_ERR_LIMIT);
            let msg = take(out);
            assert!(msg.starts_with("E_DEPTH_LIMIT"), "{}", msg);
        }
    }
}
