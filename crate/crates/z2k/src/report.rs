//! Versioned JSON reports.

use serde::Serialize;

pub const SCHEMA: &str = "report_v1";

#[derive(Debug, Clone, Serialize)]
pub struct Report<T: Serialize> {
    pub schema: &'static str,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub pass: bool,
    pub data: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &'static str, pass: bool, data: T) -> Report<T> {
        Report { schema: SCHEMA, tool: env!("CARGO_PKG_NAME"), version: env!("CARGO_PKG_VERSION"), command, pass, data }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
