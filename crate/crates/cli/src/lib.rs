//! Library half of the command-line front end: request parsing and
//! validation, execution dispatch, and canonical response serialization.
//! The binary in `main.rs` is a thin wrapper handling IO and exit codes.

pub mod diag;
pub mod exec;
pub mod request;
pub mod response;

use diag::{domain_diagnostic, Diagnostic};
use serde_json::Value;

/// Outcome of processing one request document.
pub enum Processed {
    /// Response document and exit code 0.
    Ok(Value),
    /// Error response document, diagnostics, and the exit code (2 for
    /// validation, 3 for domain errors).
    Failed(Value, Vec<Diagnostic>, u8),
}

/// Parse, validate, and execute one document. Pure: identical input bytes
/// and override produce identical output documents.
pub fn process(bytes: &[u8], k_override: Option<usize>) -> Processed {
    match request::parse_request(bytes, k_override) {
        Ok(req) => match exec::execute(&req) {
            Ok(output) => Processed::Ok(response::ok_response(&output)),
            Err(err) => {
                let diags = vec![domain_diagnostic(&err)];
                Processed::Failed(response::error_response(&diags), diags, 3)
            }
        },
        Err(diags) => Processed::Failed(response::error_response(&diags), diags, 2),
    }
}
