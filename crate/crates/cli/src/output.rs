use serde::Serialize;
use serde_json::{json, Value};

/// Version of the JSON report envelope.
pub const SCHEMA_VERSION: u32 = 1;

pub struct Output {
    pub json: bool,
}

impl Output {
    /// `{"schema", "command", "params", "result"}` on one line.
    pub fn report(&self, command: &str, params: Value, result: &impl Serialize) -> String {
        let doc = json!({
            "schema": SCHEMA_VERSION,
            "command": command,
            "params": params,
            "result": result,
        });
        let mut text = serde_json::to_string(&doc).expect("report serializes");
        text.push('\n');
        text
    }
}
