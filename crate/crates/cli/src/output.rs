use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// The structured form of every command's result.
#[derive(Serialize, Debug)]
pub struct ResultDocument {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<Value>,
    pub outputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<Value>,
    pub elapsed_secs: f64,
}

impl ResultDocument {
    pub fn new(command: Vec<String>, outputs: Value, elapsed: Duration) -> ResultDocument {
        ResultDocument {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            config: None,
            outputs,
            stats: None,
            elapsed_secs: elapsed.as_secs_f64(),
        }
    }
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("result types serialize")
}
