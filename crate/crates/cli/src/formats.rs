//! Bit-exact text formats for instances, quotas, allocations, and verdicts.
//!
//! Documents are JSON with a fixed canonical field order. A rational value is
//! written as a plain JSON integer when its denominator is 1 and the
//! numerator fits in an `i64`, and as a `"p/q"` string in lowest terms (sign
//! on the numerator, `q > 0`) otherwise; parsing accepts either form wherever
//! a value is expected. Serialization is deterministic, so
//! `serialize ∘ parse ∘ serialize` is byte-identical on documents this module
//! wrote. Every parse error names the offending field by its path, e.g.
//! `zero denominator at values[1][2]`.

use std::fmt;

use aef_core::{
    format_rational, parse_rational, Allocation, Instance, Quota, Rational, ValueModel,
};
use num::One;
use serde_json::{Map, Number, Value};

/// A parse failure plus the document path it occurred at. Rendered as
/// `"{message} at {path}"` (or just the message for whole-document errors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub path: String,
    pub message: String,
}

impl FormatError {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        FormatError {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{} at {}", self.message, self.path)
        }
    }
}

impl std::error::Error for FormatError {}

/// An instance document: valuations plus the optional quota block and any
/// generator metadata carried along verbatim.
#[derive(Debug, Clone)]
pub struct InstanceDoc {
    pub instance: Instance,
    pub quota: Option<Quota>,
    pub metadata: Option<Map<String, Value>>,
}

/// An allocation document: the owner vector plus any verdicts block carried
/// along verbatim.
#[derive(Debug, Clone)]
pub struct AllocationDoc {
    pub allocation: Allocation,
    pub verdicts: Option<Value>,
}

fn parse_root(text: &str) -> Result<Map<String, Value>, FormatError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| FormatError::new("", format!("invalid document: {e}")))?;
    match value {
        Value::Object(map) => Ok(map),
        other => Err(FormatError::new(
            "",
            format!("expected a JSON object, found {}", kind_of(&other)),
        )),
    }
}

fn kind_of(value: &Value) -> &'static str {
    match value {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn require<'a>(
    map: &'a Map<String, Value>,
    field: &str,
    path: &str,
) -> Result<&'a Value, FormatError> {
    map.get(field)
        .ok_or_else(|| FormatError::new(join(path, field), "missing required field"))
}

fn join(path: &str, field: &str) -> String {
    if path.is_empty() {
        field.to_string()
    } else {
        format!("{path}.{field}")
    }
}

fn reject_unknown_fields(
    map: &Map<String, Value>,
    known: &[&str],
    path: &str,
) -> Result<(), FormatError> {
    for key in map.keys() {
        if !known.contains(&key.as_str()) {
            return Err(FormatError::new(join(path, key), "unknown field"));
        }
    }
    Ok(())
}

fn parse_index(value: &Value, path: &str) -> Result<usize, FormatError> {
    match value {
        Value::Number(n) => n
            .as_u64()
            .and_then(|x| usize::try_from(x).ok())
            .ok_or_else(|| FormatError::new(path, "expected a non-negative integer")),
        other => Err(FormatError::new(
            path,
            format!("expected a non-negative integer, found {}", kind_of(other)),
        )),
    }
}

/// One valuation cell: a JSON integer or a `"p"`/`"p/q"` string.
fn parse_cell(value: &Value, path: &str) -> Result<Rational, FormatError> {
    let rational = match value {
        Value::Number(n) => {
            let int = n
                .as_i64()
                .map(|x| Rational::from_integer(x.into()))
                .or_else(|| n.as_u64().map(|x| Rational::from_integer(x.into())));
            int.ok_or_else(|| {
                FormatError::new(
                    path,
                    "expected an integer or a \"p/q\" string, found a non-integer number",
                )
            })?
        }
        Value::String(s) => parse_rational(s).map_err(|e| FormatError::new(path, e.to_string()))?,
        other => Err(FormatError::new(
            path,
            format!(
                "expected an integer or a \"p/q\" string, found {}",
                kind_of(other)
            ),
        ))?,
    };
    Ok(rational)
}

fn parse_usize_array(
    value: &Value,
    expected: usize,
    path: &str,
) -> Result<Vec<usize>, FormatError> {
    let Value::Array(entries) = value else {
        return Err(FormatError::new(
            path,
            format!("expected an array of integers, found {}", kind_of(value)),
        ));
    };
    if entries.len() != expected {
        return Err(FormatError::new(
            path,
            format!("expected {expected} entries, found {}", entries.len()),
        ));
    }
    entries
        .iter()
        .enumerate()
        .map(|(i, entry)| parse_index(entry, &format!("{path}[{i}]")))
        .collect()
}

/// Parses an instance document. Validation mirrors the model's constructors
/// but reports failures with document paths.
pub fn parse_instance_doc(text: &str) -> Result<InstanceDoc, FormatError> {
    let root = parse_root(text)?;
    reject_unknown_fields(
        &root,
        &["agents", "items", "values", "quota", "metadata"],
        "",
    )?;

    let agents = parse_index(require(&root, "agents", "")?, "agents")?;
    if agents == 0 {
        return Err(FormatError::new("agents", "must be at least 1"));
    }

    let (items, labels) = match require(&root, "items", "")? {
        Value::Number(_) => (parse_index(&root["items"], "items")?, None),
        Value::Array(entries) => {
            let labels = entries
                .iter()
                .enumerate()
                .map(|(j, entry)| match entry {
                    Value::String(s) => Ok(s.clone()),
                    other => Err(FormatError::new(
                        format!("items[{j}]"),
                        format!("expected a label string, found {}", kind_of(other)),
                    )),
                })
                .collect::<Result<Vec<_>, _>>()?;
            (labels.len(), Some(labels))
        }
        other => {
            return Err(FormatError::new(
                "items",
                format!(
                    "expected an item count or a label array, found {}",
                    kind_of(other)
                ),
            ))
        }
    };

    let rows = match require(&root, "values", "")? {
        Value::Array(rows) => rows,
        other => {
            return Err(FormatError::new(
                "values",
                format!("expected an array of rows, found {}", kind_of(other)),
            ))
        }
    };
    if rows.len() != agents {
        return Err(FormatError::new(
            "values",
            format!("expected {agents} rows, found {}", rows.len()),
        ));
    }
    let mut values = Vec::with_capacity(agents);
    for (i, row) in rows.iter().enumerate() {
        let Value::Array(cells) = row else {
            return Err(FormatError::new(
                format!("values[{i}]"),
                format!("expected an array of values, found {}", kind_of(row)),
            ));
        };
        if cells.len() != items {
            return Err(FormatError::new(
                format!("values[{i}]"),
                format!("expected {items} entries, found {}", cells.len()),
            ));
        }
        let mut parsed = Vec::with_capacity(items);
        for (j, cell) in cells.iter().enumerate() {
            let path = format!("values[{i}][{j}]");
            let value = parse_cell(cell, &path)?;
            if value < Rational::from_integer(0.into()) {
                return Err(FormatError::new(path, "negative value"));
            }
            parsed.push(value);
        }
        values.push(parsed);
    }

    let instance = match labels {
        Some(labels) => Instance::with_labels(values, labels),
        None => Instance::new(values),
    }
    .map_err(|e| FormatError::new("values", e.to_string()))?;

    let quota = match root.get("quota") {
        None => None,
        Some(Value::Object(block)) => {
            reject_unknown_fields(block, &["lower", "upper"], "quota")?;
            let lower =
                parse_usize_array(require(block, "lower", "quota")?, agents, "quota.lower")?;
            let upper =
                parse_usize_array(require(block, "upper", "quota")?, agents, "quota.upper")?;
            Some(Quota::new(lower, upper).map_err(|e| FormatError::new("quota", e.to_string()))?)
        }
        Some(other) => {
            return Err(FormatError::new(
                "quota",
                format!("expected an object, found {}", kind_of(other)),
            ))
        }
    };

    let metadata = match root.get("metadata") {
        None => None,
        Some(Value::Object(map)) => Some(map.clone()),
        Some(other) => {
            return Err(FormatError::new(
                "metadata",
                format!("expected an object, found {}", kind_of(other)),
            ))
        }
    };

    Ok(InstanceDoc {
        instance,
        quota,
        metadata,
    })
}

/// Parses an allocation document against the instance's shape.
pub fn parse_allocation_doc(
    text: &str,
    agents: usize,
    items: usize,
) -> Result<AllocationDoc, FormatError> {
    let root = parse_root(text)?;
    reject_unknown_fields(&root, &["owner", "verdicts"], "")?;

    let Value::Array(entries) = require(&root, "owner", "")? else {
        return Err(FormatError::new(
            "owner",
            format!(
                "expected an array of agent indices, found {}",
                kind_of(&root["owner"])
            ),
        ));
    };
    if entries.len() != items {
        return Err(FormatError::new(
            "owner",
            format!("expected {items} entries, found {}", entries.len()),
        ));
    }
    let mut owners = Vec::with_capacity(items);
    for (j, entry) in entries.iter().enumerate() {
        let path = format!("owner[{j}]");
        let owner = parse_index(entry, &path)?;
        if owner >= agents {
            return Err(FormatError::new(
                path,
                format!("agent index {owner} out of range for {agents} agents"),
            ));
        }
        owners.push(owner);
    }

    Ok(AllocationDoc {
        allocation: Allocation::from_owners(owners),
        verdicts: root.get("verdicts").cloned(),
    })
}

/// Canonical JSON value for one rational: integer number when it fits,
/// `"p/q"` string otherwise.
pub fn rational_value(x: &Rational) -> Value {
    if x.denom().is_one() {
        if let Ok(n) = i64::try_from(x.numer().clone()) {
            return Value::Number(Number::from(n));
        }
    }
    Value::String(format_rational(x))
}

fn pretty(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON tree serializes");
    text.push('\n');
    text
}

/// Renders an instance document in canonical form.
pub fn render_instance_doc(doc: &InstanceDoc) -> String {
    let mut root = Map::new();
    root.insert("agents".into(), doc.instance.agents().into());
    let items_value = match doc.instance.item_labels() {
        Some(labels) => Value::Array(labels.iter().map(|l| Value::String(l.clone())).collect()),
        None => doc.instance.items().into(),
    };
    root.insert("items".into(), items_value);
    root.insert(
        "values".into(),
        Value::Array(
            doc.instance
                .values()
                .iter()
                .map(|row| Value::Array(row.iter().map(rational_value).collect()))
                .collect(),
        ),
    );
    if let Some(quota) = &doc.quota {
        let mut block = Map::new();
        block.insert(
            "lower".into(),
            Value::Array(quota.lower_bounds().iter().map(|&b| b.into()).collect()),
        );
        block.insert(
            "upper".into(),
            Value::Array(quota.upper_bounds().iter().map(|&b| b.into()).collect()),
        );
        root.insert("quota".into(), Value::Object(block));
    }
    if let Some(metadata) = &doc.metadata {
        root.insert("metadata".into(), Value::Object(metadata.clone()));
    }
    pretty(&Value::Object(root))
}

/// Renders an allocation document in canonical form.
pub fn render_allocation_doc(owners: &[usize], verdicts: Option<&Value>) -> String {
    let mut root = Map::new();
    root.insert(
        "owner".into(),
        Value::Array(owners.iter().map(|&o| o.into()).collect()),
    );
    if let Some(verdicts) = verdicts {
        root.insert("verdicts".into(), verdicts.clone());
    }
    pretty(&Value::Object(root))
}

/// Renders a standalone verdict document (the output of a check run).
pub fn render_verdict_doc(verdicts: &Value) -> String {
    pretty(verdicts)
}

/// Parses a value-model expression: `binary(p)`, `uniform_int(lo,hi)`, or
/// `uniform_rational(den_max)`.
pub fn parse_value_model(text: &str) -> Result<ValueModel, FormatError> {
    let path = "model";
    let open = text
        .find('(')
        .ok_or_else(|| FormatError::new(path, expected_model(text)))?;
    let Some(inner) = text[open + 1..].strip_suffix(')') else {
        return Err(FormatError::new(path, expected_model(text)));
    };
    let name = &text[..open];
    let args: Vec<&str> = if inner.is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(str::trim).collect()
    };
    let arity = |want: usize| -> Result<(), FormatError> {
        if args.len() == want {
            Ok(())
        } else {
            Err(FormatError::new(
                path,
                format!(
                    "{name} takes {want} argument{}, found {}",
                    if want == 1 { "" } else { "s" },
                    args.len()
                ),
            ))
        }
    };
    match name {
        "binary" => {
            arity(1)?;
            let p = parse_rational(args[0])
                .map_err(|e| FormatError::new(path, format!("{e} in binary({})", args[0])))?;
            Ok(ValueModel::Binary { p })
        }
        "uniform_int" => {
            arity(2)?;
            let bound = |s: &str| -> Result<u64, FormatError> {
                s.parse::<u64>().map_err(|_| {
                    FormatError::new(path, format!("{s:?} is not a non-negative integer"))
                })
            };
            Ok(ValueModel::UniformInt {
                lo: bound(args[0])?,
                hi: bound(args[1])?,
            })
        }
        "uniform_rational" => {
            arity(1)?;
            let max_denominator = args[0].parse::<u64>().map_err(|_| {
                FormatError::new(path, format!("{:?} is not a positive integer", args[0]))
            })?;
            Ok(ValueModel::UniformRational { max_denominator })
        }
        other => Err(FormatError::new(path, expected_model(other))),
    }
}

fn expected_model(got: &str) -> String {
    format!("expected binary(p), uniform_int(lo,hi), or uniform_rational(den_max), found {got:?}")
}

/// Canonical text for a model, used in generator metadata.
pub fn render_value_model(model: &ValueModel) -> String {
    match model {
        ValueModel::Binary { p } => format!("binary({})", format_rational(p)),
        ValueModel::UniformInt { lo, hi } => format!("uniform_int({lo},{hi})"),
        ValueModel::UniformRational { max_denominator } => {
            format!("uniform_rational({max_denominator})")
        }
    }
}
