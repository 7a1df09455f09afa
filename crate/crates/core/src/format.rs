//! Text formats shared with the CLI: instance files, verdict records, and
//! piecewise polynomial descriptions. All of them are JSON with rationals
//! and dyadics as canonical strings, serialized with sorted keys so repeated
//! runs emit byte-identical records.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::instance::InequalityInstance;
use crate::poly::{PiecewisePoly, Segment};
use crate::rational::Rational;
use crate::verdict::Verdict;

fn json_error(e: serde_json::Error) -> Error {
    // serde_json appends its own position to the message; strip it since the
    // line and column travel separately
    let mut message = e.to_string();
    if let Some(at) = message.rfind(" at line ") {
        message.truncate(at);
    }
    Error::parse_at(e.line(), e.column(), message)
}

fn as_object(value: Value, what: &str) -> Result<Map<String, Value>> {
    match value {
        Value::Object(map) => Ok(map),
        _ => Err(Error::parse(format!("{what} must be an object"))),
    }
}

fn string_field(map: &Map<String, Value>, name: &str) -> Result<String> {
    match map.get(name) {
        Some(Value::String(s)) => Ok(s.clone()),
        Some(_) => Err(Error::parse(format!("{name} must be a string"))),
        None => Err(Error::parse(format!("missing {name}"))),
    }
}

fn rational_field(value: &Value, context: &str) -> Result<Rational> {
    match value {
        Value::String(s) => s.parse().map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(format!("{context}: {message}")),
            other => other,
        }),
        _ => Err(Error::parse(format!(
            "{context}: expected a rational string"
        ))),
    }
}

fn rational_list(map: &Map<String, Value>, name: &str) -> Result<Option<Vec<Rational>>> {
    let items = match map.get(name) {
        None => return Ok(None),
        Some(Value::Array(items)) => items,
        Some(_) => {
            return Err(Error::parse(format!(
                "{name} must be a list of rational strings"
            )))
        }
    };
    items
        .iter()
        .enumerate()
        .map(|(i, v)| rational_field(v, &format!("{name}[{i}]")))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// Reads one instance object. Structural domain checks (lengths, sign
/// conditions) are left to `validate_domain`; parsing only enforces shape,
/// canonical rationals, and presence of the family's required parameters.
pub fn parse_instance(text: &str) -> Result<InequalityInstance> {
    let value: Value = serde_json::from_str(text).map_err(json_error)?;
    let map = as_object(value, "instance")?;
    for key in map.keys() {
        if !matches!(key.as_str(), "family" | "a" | "b" | "lambda" | "params") {
            return Err(Error::parse(format!("unknown field {key:?}")));
        }
    }

    let family = string_field(&map, "family")?.parse()?;
    let a = rational_list(&map, "a")?.ok_or_else(|| Error::parse("missing a"))?;
    let b = rational_list(&map, "b")?.unwrap_or_default();
    let lambda = rational_list(&map, "lambda")?;

    let mut instance = InequalityInstance::new(family, a, b, []);
    instance.lambda = lambda;
    if let Some(params) = map.get("params") {
        let params = match params {
            Value::Object(p) => p,
            _ => return Err(Error::parse("params must be an object")),
        };
        for (name, value) in params {
            let parsed = rational_field(value, &format!("params.{name}"))?;
            instance.params.insert(name.clone(), parsed);
        }
    }
    for required in family.required_params() {
        if !instance.params.contains_key(*required) {
            return Err(Error::parse(format!("missing {required}")));
        }
    }
    Ok(instance)
}

fn rational_strings(values: &[Rational]) -> Value {
    Value::Array(
        values
            .iter()
            .map(|v| Value::String(v.to_string()))
            .collect(),
    )
}

/// One-line canonical form; `parse_instance` of the output reproduces the
/// instance exactly.
pub fn serialize_instance(instance: &InequalityInstance) -> String {
    let mut map = Map::new();
    map.insert(
        "family".into(),
        Value::String(instance.family.name().into()),
    );
    map.insert("a".into(), rational_strings(&instance.a));
    if !instance.b.is_empty() {
        map.insert("b".into(), rational_strings(&instance.b));
    }
    if let Some(lambda) = &instance.lambda {
        map.insert("lambda".into(), rational_strings(lambda));
    }
    if !instance.params.is_empty() {
        let params: Map<String, Value> = instance
            .params
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.to_string())))
            .collect();
        map.insert("params".into(), Value::Object(params));
    }
    Value::Object(map).to_string()
}

fn interval_pair(interval: &crate::dyadic::DyadicInterval) -> Value {
    Value::Array(vec![
        Value::String(interval.lo().to_string()),
        Value::String(interval.hi().to_string()),
    ])
}

/// One-line machine record: outcome token, both sides and the margin as
/// pairs of dyadic strings, and the precision the decision fired at.
pub fn verdict_record(verdict: &Verdict) -> String {
    let mut map = Map::new();
    map.insert(
        "outcome".into(),
        Value::String(verdict.outcome.token().into()),
    );
    map.insert("lhs".into(), interval_pair(&verdict.lhs));
    map.insert("rhs".into(), interval_pair(&verdict.rhs));
    map.insert("margin".into(), interval_pair(&verdict.margin));
    map.insert(
        "precision_used".into(),
        Value::Number(verdict.precision_used.into()),
    );
    Value::Object(map).to_string()
}

/// Reads a piecewise polynomial as a list of `{lo, hi, coeffs}` records.
pub fn parse_piecewise(text: &str) -> Result<PiecewisePoly> {
    let value: Value = serde_json::from_str(text).map_err(json_error)?;
    let items = match value {
        Value::Array(items) => items,
        _ => return Err(Error::parse("piecewise polynomial must be a list")),
    };
    let mut segments = Vec::with_capacity(items.len());
    for (i, item) in items.into_iter().enumerate() {
        let map = as_object(item, &format!("segment[{i}]"))?;
        for key in map.keys() {
            if !matches!(key.as_str(), "lo" | "hi" | "coeffs") {
                return Err(Error::parse(format!("unknown field {key:?}")));
            }
        }
        let lo = rational_field(
            map.get("lo").ok_or_else(|| Error::parse("missing lo"))?,
            &format!("segment[{i}].lo"),
        )?;
        let hi = rational_field(
            map.get("hi").ok_or_else(|| Error::parse("missing hi"))?,
            &format!("segment[{i}].hi"),
        )?;
        let coeffs = rational_list(&map, "coeffs")?
            .ok_or_else(|| Error::parse(format!("segment[{i}] missing coeffs")))?;
        segments.push(Segment::new(lo, hi, coeffs));
    }
    PiecewisePoly::new(segments)
}

pub fn serialize_piecewise(poly: &PiecewisePoly) -> String {
    let items: Vec<Value> = poly
        .segments()
        .iter()
        .map(|seg| {
            let mut map = Map::new();
            map.insert("lo".into(), Value::String(seg.lo.to_string()));
            map.insert("hi".into(), Value::String(seg.hi.to_string()));
            map.insert("coeffs".into(), rational_strings(&seg.coeffs));
            Value::Object(map)
        })
        .collect();
    Value::Array(items).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::check_instance;
    use crate::instance::Family;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn minimal_instance_round_trips() {
        let text = r#"{"family": "bergstrom", "a": ["1", "1"], "b": ["1", "1"]}"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.family, Family::Bergstrom);
        assert_eq!(inst.a, vec![rat("1"), rat("1")]);
        let reparsed = parse_instance(&serialize_instance(&inst)).unwrap();
        assert_eq!(inst, reparsed);
    }

    #[test]
    fn rationals_canonicalize_on_round_trip() {
        let text = r#"{"family": "radon", "a": ["2/4"], "b": ["6/4"], "params": {"m": "2"}}"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.a[0], rat("1/2"));
        let out = serialize_instance(&inst);
        assert!(out.contains("\"1/2\""));
        assert!(out.contains("\"3/2\""));
        assert_eq!(parse_instance(&out).unwrap(), inst);
    }

    #[test]
    fn missing_required_param_is_reported() {
        let text = r#"{"family": "radon", "a": ["1"], "b": ["1"]}"#;
        match parse_instance(text).unwrap_err() {
            Error::Parse { message, .. } => assert_eq!(message, "missing m"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn malformed_rational_is_a_parse_error() {
        let text = r#"{"family": "bergstrom", "a": ["1/0"], "b": ["1"]}"#;
        assert!(matches!(
            parse_instance(text).unwrap_err(),
            Error::Parse { .. }
        ));
    }

    #[test]
    fn json_syntax_errors_carry_position() {
        match parse_instance("{\"family\": \"radon\",\n  oops").unwrap_err() {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"family": "bergstrom", "a": ["1"], "b": ["1"], "c": ["1"]}"#;
        assert!(matches!(
            parse_instance(text).unwrap_err(),
            Error::Parse { .. }
        ));
    }

    #[test]
    fn lambda_and_params_survive_round_trip() {
        let inst = InequalityInstance::new(
            Family::GeoSuperadd,
            vec![rat("1"), rat("4")],
            vec![rat("4"), rat("1")],
            [],
        )
        .with_lambda(vec![rat("1/2"), rat("1/2")]);
        let reparsed = parse_instance(&serialize_instance(&inst)).unwrap();
        assert_eq!(inst, reparsed);
        assert!(check_instance(&reparsed, 256).is_ok());
    }

    #[test]
    fn verdict_record_is_stable_json() {
        let inst = InequalityInstance::new(
            Family::Radon,
            vec![rat("1"), rat("2")],
            vec![rat("1"), rat("3")],
            [("m", rat("2"))],
        );
        let verdict = check_instance(&inst, 256).unwrap();
        let line = verdict_record(&verdict);
        assert_eq!(line, verdict_record(&verdict));
        let value: Value = serde_json::from_str(&line).unwrap();
        assert_eq!(value["outcome"], "holds");
        assert_eq!(value["precision_used"], 0);
        let margin = value["margin"].as_array().unwrap();
        assert!(margin[0].as_str().unwrap().contains("*2^"));
    }

    #[test]
    fn piecewise_round_trips() {
        let text = r#"[
            {"lo": "0", "hi": "1/2", "coeffs": ["1", "2"]},
            {"lo": "1/2", "hi": "1", "coeffs": ["2"]}
        ]"#;
        let poly = parse_piecewise(text).unwrap();
        assert_eq!(poly.segments().len(), 2);
        let reparsed = parse_piecewise(&serialize_piecewise(&poly)).unwrap();
        assert_eq!(serialize_piecewise(&poly), serialize_piecewise(&reparsed));
    }

    #[test]
    fn discontiguous_pieces_are_rejected() {
        let text = r#"[
            {"lo": "0", "hi": "1/2", "coeffs": ["1"]},
            {"lo": "3/4", "hi": "1", "coeffs": ["2"]}
        ]"#;
        assert!(parse_piecewise(text).is_err());
    }
}
