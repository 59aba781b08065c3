//! C ABI over the symcert toolkit. Systems are held behind an opaque
//! handle; analyses return JSON report documents as heap-allocated C
//! strings that the caller releases with `sc_string_free`.
//!
//! All functions return an `ScStatus` code; output pointers are written
//! only on `SC_STATUS_OK`.

use std::ffi::{CStr, CString};
use std::os::raw::c_char;

use symcert::doc::{SubspaceDocument, SystemDocument};
use symcert::generate::GenerateKind;
use symcert::lti::StateSpaceSystem;
use symcert::report::{self, FormChoice, GeometryTest, Property};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScStatus {
    /// Success.
    ScStatusOk = 0,
    /// A pointer argument was null or a flag value was not recognized.
    ScStatusInvalidArgument = 1,
    /// The input document failed to parse or validate.
    ScStatusParse = 2,
    /// The analysis could not run (e.g. degenerate generator draw).
    ScStatusAnalysis = 3,
}

/// Opaque handle to a parsed state-space system.
pub struct ScSystem {
    name: String,
    system: StateSpaceSystem,
}

fn take_str<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().ok()
}

fn emit(out: *mut *mut c_char, text: String) -> ScStatus {
    match CString::new(text) {
        Ok(cstr) => {
            unsafe { *out = cstr.into_raw() };
            ScStatus::ScStatusOk
        }
        Err(_) => ScStatus::ScStatusAnalysis,
    }
}

/// Version string of the underlying toolkit; storage is static, do not free.
#[no_mangle]
pub extern "C" fn sc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parse a SystemDocument JSON string into an opaque handle.
#[no_mangle]
pub extern "C" fn sc_system_parse_json(
    json: *const c_char,
    out: *mut *mut ScSystem,
) -> ScStatus {
    if out.is_null() {
        return ScStatus::ScStatusInvalidArgument;
    }
    let Some(text) = take_str(json) else {
        return ScStatus::ScStatusInvalidArgument;
    };
    let doc = match SystemDocument::parse(text) {
        Ok(d) => d,
        Err(_) => return ScStatus::ScStatusParse,
    };
    let system = match doc.to_system() {
        Ok(s) => s,
        Err(_) => return ScStatus::ScStatusParse,
    };
    let handle = Box::new(ScSystem {
        name: doc.name,
        system,
    });
    unsafe { *out = Box::into_raw(handle) };
    ScStatus::ScStatusOk
}

/// Release a system handle. Null is a no-op.
#[no_mangle]
pub extern "C" fn sc_system_free(sys: *mut ScSystem) {
    if !sys.is_null() {
        drop(unsafe { Box::from_raw(sys) });
    }
}

/// Release a string returned by an analysis call. Null is a no-op.
#[no_mangle]
pub extern "C" fn sc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Run certificate searches; `property` as in the CLI (`all`, `reciprocal`,
/// ...). Writes a ReportDocument JSON string to `out_json`.
#[no_mangle]
pub extern "C" fn sc_certify_json(
    sys: *const ScSystem,
    property: *const c_char,
    out_json: *mut *mut c_char,
) -> ScStatus {
    if sys.is_null() || out_json.is_null() {
        return ScStatus::ScStatusInvalidArgument;
    }
    let Some(props) = take_str(property).and_then(Property::parse) else {
        return ScStatus::ScStatusInvalidArgument;
    };
    let handle = unsafe { &*sys };
    let report = report::run_certify(&handle.name, &handle.system, &props);
    emit(out_json, report.to_json())
}

/// Run a canonical-form transformation; `form` as in the CLI.
#[no_mangle]
pub extern "C" fn sc_canonicalize_json(
    sys: *const ScSystem,
    form: *const c_char,
    out_json: *mut *mut c_char,
) -> ScStatus {
    if sys.is_null() || out_json.is_null() {
        return ScStatus::ScStatusInvalidArgument;
    }
    let Some(choice) = take_str(form).and_then(FormChoice::parse) else {
        return ScStatus::ScStatusInvalidArgument;
    };
    let handle = unsafe { &*sys };
    let report = report::run_canonicalize(&handle.name, &handle.system, choice);
    emit(out_json, report.to_json())
}

/// Hankel spectral report. Pass `horizon <= 0` to use the default grid.
#[no_mangle]
pub extern "C" fn sc_hankel_json(
    sys: *const ScSystem,
    horizon: f64,
    step: f64,
    out_json: *mut *mut c_char,
) -> ScStatus {
    if sys.is_null() || out_json.is_null() {
        return ScStatus::ScStatusInvalidArgument;
    }
    let grid = if horizon > 0.0 && step > 0.0 && step <= horizon {
        Some((horizon, step))
    } else if horizon <= 0.0 {
        None
    } else {
        return ScStatus::ScStatusInvalidArgument;
    };
    let handle = unsafe { &*sys };
    let report = report::run_hankel(&handle.name, &handle.system, grid);
    emit(out_json, report.to_json())
}

/// Subspace test on a SubspaceDocument JSON string; `test` as in the CLI.
#[no_mangle]
pub extern "C" fn sc_geometry_json(
    subspace_json: *const c_char,
    test: *const c_char,
    out_json: *mut *mut c_char,
) -> ScStatus {
    if out_json.is_null() {
        return ScStatus::ScStatusInvalidArgument;
    }
    let Some(which) = take_str(test).and_then(GeometryTest::parse) else {
        return ScStatus::ScStatusInvalidArgument;
    };
    let Some(text) = take_str(subspace_json) else {
        return ScStatus::ScStatusInvalidArgument;
    };
    let doc = match SubspaceDocument::parse(text) {
        Ok(d) => d,
        Err(_) => return ScStatus::ScStatusParse,
    };
    let sub = match doc.to_subspace() {
        Ok(s) => s,
        Err(_) => return ScStatus::ScStatusParse,
    };
    let report = report::run_geometry(&doc.name, &sub, which);
    emit(out_json, report.to_json())
}

/// Generate a structured random system; writes a SystemDocument JSON
/// string with the ground-truth certificate embedded.
#[no_mangle]
pub extern "C" fn sc_generate_json(
    kind: *const c_char,
    n: usize,
    m: usize,
    seed: u64,
    out_json: *mut *mut c_char,
) -> ScStatus {
    if out_json.is_null() {
        return ScStatus::ScStatusInvalidArgument;
    }
    let Some(k) = take_str(kind).and_then(GenerateKind::parse) else {
        return ScStatus::ScStatusInvalidArgument;
    };
    match report::run_generate(k, n, m, seed) {
        Ok(doc) => emit(out_json, doc.to_json()),
        Err(_) => ScStatus::ScStatusAnalysis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;
    use std::ptr;

    const POINT_MASS: &str = r#"{"name":"point-mass",
        "a":[[0.0,1.0],[0.0,0.0]],"b":[[0.0],[1.0]],
        "c":[[1.0,0.0]],"d":[[0.0]],"sigma":[1.0]}"#;

    fn parse(json: &str) -> *mut ScSystem {
        let c = CString::new(json).unwrap();
        let mut out: *mut ScSystem = ptr::null_mut();
        assert_eq!(
            sc_system_parse_json(c.as_ptr(), &mut out),
            ScStatus::ScStatusOk
        );
        assert!(!out.is_null());
        out
    }

    fn grab(out: *mut c_char) -> String {
        assert!(!out.is_null());
        let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
        sc_string_free(out);
        s
    }

    #[test]
    fn version_is_non_empty() {
        let v = unsafe { CStr::from_ptr(sc_version()) }.to_str().unwrap();
        assert!(!v.is_empty());
    }

    #[test]
    fn parse_and_certify() {
        let sys = parse(POINT_MASS);
        let prop = CString::new("iohamiltonian").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            sc_certify_json(sys, prop.as_ptr(), &mut out),
            ScStatus::ScStatusOk
        );
        let json = grab(out);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["verdicts"]["iohamiltonian"]["value"], "true");
        let omega = &parsed["certificates"]["iohamiltonian"]["matrix"];
        assert_eq!(omega[0][1].as_f64().unwrap(), -1.0);
        sc_system_free(sys);
    }

    #[test]
    fn parse_failure_codes() {
        let bad = CString::new("{not json").unwrap();
        let mut out: *mut ScSystem = ptr::null_mut();
        assert_eq!(
            sc_system_parse_json(bad.as_ptr(), &mut out),
            ScStatus::ScStatusParse
        );
        assert!(out.is_null());
        assert_eq!(
            sc_system_parse_json(ptr::null(), &mut out),
            ScStatus::ScStatusInvalidArgument
        );
    }

    #[test]
    fn canonicalize_refusal_is_still_ok_status() {
        let sys = parse(POINT_MASS);
        let form = CString::new("factorize").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            sc_canonicalize_json(sys, form.as_ptr(), &mut out),
            ScStatus::ScStatusOk
        );
        let parsed: serde_json::Value = serde_json::from_str(&grab(out)).unwrap();
        assert_eq!(parsed["verdicts"]["factorize"]["value"], "false");
        sc_system_free(sys);

        let sys = parse(POINT_MASS);
        let bad = CString::new("no-such-form").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            sc_canonicalize_json(sys, bad.as_ptr(), &mut out),
            ScStatus::ScStatusInvalidArgument
        );
        sc_system_free(sys);
    }

    #[test]
    fn hankel_and_generate() {
        let scalar = r#"{"name":"scalar","a":[[-1.0]],"b":[[1.0]],
                         "c":[[1.0]],"d":[[0.0]],"sigma":[1.0]}"#;
        let sys = parse(scalar);
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            sc_hankel_json(sys, 0.0, 0.0, &mut out),
            ScStatus::ScStatusOk
        );
        let parsed: serde_json::Value = serde_json::from_str(&grab(out)).unwrap();
        let lam = parsed["spectral"]["eigenvalues"][0].as_f64().unwrap();
        assert!((lam - 0.5).abs() < 1e-12);
        sc_system_free(sys);

        let kind = CString::new("lossless").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            sc_generate_json(kind.as_ptr(), 4, 2, 11, &mut out),
            ScStatus::ScStatusOk
        );
        let doc: serde_json::Value = serde_json::from_str(&grab(out)).unwrap();
        assert_eq!(doc["ground_truth"]["kind"], "lossless");
    }

    #[test]
    fn geometry_entry_point() {
        let sub = CString::new(
            r#"{"name":"graph","ambient":2,"generators":[[1.0,2.0]]}"#,
        )
        .unwrap();
        let test = CString::new("lagrangian").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            sc_geometry_json(sub.as_ptr(), test.as_ptr(), &mut out),
            ScStatus::ScStatusOk
        );
        let parsed: serde_json::Value = serde_json::from_str(&grab(out)).unwrap();
        assert_eq!(parsed["verdicts"]["lagrangian"]["value"], "true");
    }
}
