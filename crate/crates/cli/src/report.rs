//! Report emission: JSON with every float cut to 9 significant digits, or a
//! flat key/value table with `--pretty`.

use serde::Serialize;
use serde_json::{Map, Number, Value};

const SIGNIFICANT_DIGITS: usize = 9;
const TIMING_KEYS: [&str; 3] = ["wall_time_ms", "seconds", "total_seconds"];

/// Rounds `x` to 9 significant digits; `-0` becomes `0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let text = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    text.parse().unwrap_or(x)
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| Number::from_f64(round_sig(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

pub fn to_value<T: Serialize>(report: &T) -> Value {
    round_value(serde_json::to_value(report).expect("reports serialise"))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                flatten(&key(k), inner, rows);
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            rows.push((prefix.to_string(), items.iter().map(scalar).collect::<Vec<_>>().join(", ")));
        }
        Value::Array(items) => {
            for (i, inner) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), inner, rows);
            }
        }
        other => rows.push((prefix.to_string(), scalar(other))),
    }
}

/// Two-column table of the flattened report.
pub fn table(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

/// Drops wall-clock fields so identical inputs give identical bytes.
pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.retain(|k, _| !TIMING_KEYS.contains(&k.as_str()));
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

/// Renders a report as compact JSON or as a table.
pub fn render(value: &Value, pretty: bool) -> String {
    if pretty {
        table(value)
    } else {
        let mut s = serde_json::to_string(value).expect("values serialise");
        s.push('\n');
        s
    }
}

/// Object keyed by arc id, skipping zero entries.
pub fn by_id(ids: &[String], values: &[f64]) -> Value {
    Value::Object(
        ids.iter()
            .zip(values)
            .filter(|(_, v)| **v != 0.0)
            .map(|(id, v)| (id.clone(), Value::from(*v)))
            .collect::<Map<_, _>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(round_sig(2.0 / 3.0), 0.666666667);
        assert_eq!(round_sig(123456789012.0), 123456789000.0);
        assert_eq!(round_sig(-0.0).to_bits(), 0.0f64.to_bits());
        assert_eq!(round_sig(7.0), 7.0);
    }

    #[test]
    fn nested_rounding() {
        let v = to_value(&serde_json::json!({"a": [1.0 / 3.0], "b": {"c": 0.1 + 0.2}}));
        assert_eq!(v.to_string(), r#"{"a":[0.333333333],"b":{"c":0.3}}"#);
    }

    #[test]
    fn timing_is_stripped() {
        let mut v = serde_json::json!({"a": 1, "wall_time_ms": 2.0, "c": [{"seconds": 1.0, "d": 0}]});
        strip_timing(&mut v);
        assert_eq!(v.to_string(), r#"{"a":1,"c":[{"d":0}]}"#);
    }

    #[test]
    fn table_flattens() {
        let v = serde_json::json!({"a": {"b": 1}, "c": ["x", "y"]});
        assert_eq!(table(&v), "a.b  1\nc    x, y\n");
    }
}
