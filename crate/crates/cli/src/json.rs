//! JSON rendering. `serde_json::Map` keeps keys sorted, so output is stable.

use kahler_core::report::VerificationReport;
use serde_json::{json, Map, Value};

pub fn report(r: &VerificationReport) -> Value {
    let params: Map<String, Value> = r.params.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    let claims: Vec<Value> = r
        .claims
        .iter()
        .map(|c| json!({ "label": c.label, "anchor": c.anchor, "pass": c.pass, "witness": c.witness }))
        .collect();
    json!({
        "construction": r.construction,
        "params": params,
        "claims": claims,
        "pass": r.pass(),
        "status": r.status.name(),
        "elapsed_ms": r.elapsed_ms.unwrap_or(0),
    })
}

pub fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}
