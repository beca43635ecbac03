//! Expectation matching: an expected value is a subset pattern of the
//! result. Objects match when every expected key matches; arrays match
//! elementwise at equal length; scalars match on equality. Rationals may be
//! written as strings (`"-1/2"`) or integers. Operator objects:
//! `{"$absLt": "1/20"}` and `{"$len": n}`.

use serde_json::Value;

use crate::pairing::Rational;

fn as_rational(v: &Value) -> Option<Rational> {
    match v {
        Value::String(s) => s.parse().ok(),
        Value::Number(n) => n.as_i64().map(Rational::from_int),
        _ => None,
    }
}

fn matches_scalar(e: &Value, a: &Value) -> bool {
    if e == a {
        return true;
    }
    match (as_rational(e), as_rational(a)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

fn walk(e: &Value, a: &Value, path: &str, out: &mut Vec<String>) {
    match e {
        Value::Object(eo) if eo.len() == 1 && eo.keys().next().is_some_and(|k| k.starts_with('$')) => {
            let (op, arg) = eo.iter().next().unwrap();
            let ok = match op.as_str() {
                "$absLt" => match (as_rational(arg), as_rational(a)) {
                    (Some(bound), Some(x)) => x.abs() < bound,
                    _ => false,
                },
                "$len" => a.as_array().map(|v| v.len() as u64) == arg.as_u64(),
                _ => {
                    out.push(format!("{path}: unknown operator {op}"));
                    return;
                }
            };
            if !ok {
                out.push(format!("{path}: expected {op} {arg}, got {a}"));
            }
        }
        Value::Object(eo) => match a.as_object() {
            Some(ao) => {
                for (k, ev) in eo {
                    let p = format!("{path}.{k}");
                    match ao.get(k) {
                        Some(av) => walk(ev, av, &p, out),
                        None => out.push(format!("{p}: missing")),
                    }
                }
            }
            None => out.push(format!("{path}: expected an object, got {a}")),
        },
        Value::Array(ea) => match a.as_array() {
            Some(aa) if aa.len() == ea.len() => {
                for (i, (ev, av)) in ea.iter().zip(aa).enumerate() {
                    walk(ev, av, &format!("{path}[{i}]"), out);
                }
            }
            Some(aa) => out.push(format!("{path}: expected {} entries, got {}", ea.len(), aa.len())),
            None => out.push(format!("{path}: expected an array, got {a}")),
        },
        _ => {
            if !matches_scalar(e, a) {
                out.push(format!("{path}: expected {e}, got {a}"));
            }
        }
    }
}

/// Paths at which `actual` fails to match `expected`; empty on a match.
pub fn mismatches(expected: &Value, actual: &Value) -> Vec<String> {
    let mut out = Vec::new();
    walk(expected, actual, "$", &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn subset_semantics() {
        let actual = json!({ "theta": "-1", "eta1": "-1/2", "lengths": [1, 0, 1], "extra": true });
        assert!(mismatches(&json!({ "eta1": "-1/2" }), &actual).is_empty());
        assert!(mismatches(&json!({ "theta": -1 }), &actual).is_empty());
        assert!(mismatches(&json!({ "lengths": { "$len": 3 } }), &actual).is_empty());
        assert!(mismatches(&json!({ "eta1": { "$absLt": "1" } }), &actual).is_empty());
        assert_eq!(mismatches(&json!({ "eta1": { "$absLt": "1/20" } }), &actual).len(), 1);
        assert_eq!(mismatches(&json!({ "lengths": [1, 0] }), &actual).len(), 1);
        assert_eq!(mismatches(&json!({ "missing": 1 }), &actual), vec!["$.missing: missing"]);
        assert!(mismatches(&json!({ "theta": "-2/2" }), &actual).is_empty());
    }
}
