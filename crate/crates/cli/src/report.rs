use serde::Serialize;
use serde_json::Value;
use slocc_core::state::format_number;
use slocc_core::{CharPoly, C64};

/// Everything a command printed, in machine form.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: &'static str,
    pub inputs: Value,
    pub outputs: Value,
    pub passed: bool,
    pub exit_code: i32,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, outputs: Value, exit_code: i32) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION"),
            inputs,
            outputs,
            passed: exit_code == 0,
            exit_code,
        }
    }
}

/// `re+imi`, each part in shortest round-trip form.
pub fn fmt_complex(z: C64) -> String {
    let im = format_number(z.im);
    if im.starts_with('-') {
        format!("{}{}i", format_number(z.re), im)
    } else {
        format!("{}+{}i", format_number(z.re), im)
    }
}

pub fn fmt_poly(p: &CharPoly) -> String {
    let parts: Vec<String> = p.coeffs().iter().map(|&z| fmt_complex(z)).collect();
    format!("[{}]", parts.join(", "))
}
