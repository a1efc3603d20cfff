//! The JSON instance format.
//!
//! ```json
//! {"d": 2,
//!  "points": [["0", 1], ["1/2", 2]],
//!  "sets": [{"name": "A", "levels": [{"level": 1, "lo": "0", "hi": "1"}]}],
//!  "families": [[0], [0]]}
//! ```
//!
//! Coordinates are strings holding integers, decimals or fractions. Sets are
//! canonicalized to their traces; serializing writes each set's minimal
//! enclosing interval, so `serialize(parse(x))` is a fixed point.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::generators::Instance;
use crate::interval::{minimal_dinterval, trace_of, DInterval, LevelInterval, Point, PointSet};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        path: path.to_string(),
        message: message.into(),
    })
}

/// A parsed instance plus what is needed to write it back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceDoc {
    pub instance: Instance,
    pub names: Vec<String>,
    /// Whether `families` appears in the document.
    pub explicit_families: bool,
}

impl InstanceDoc {
    /// Wraps a generated instance, naming sets `S1, S2, …`.
    pub fn from_instance(instance: Instance) -> Self {
        let names = (1..=instance.sets.len()).map(|i| format!("S{i}")).collect();
        let explicit_families =
            instance.families.len() != 1 || instance.families[0].len() != instance.sets.len();
        InstanceDoc {
            instance,
            names,
            explicit_families,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    /// Unknown fields are errors.
    Strict,
    /// Unknown fields become warnings.
    Lenient,
}

struct Ctx {
    mode: Strictness,
    warnings: Vec<String>,
}

impl Ctx {
    fn object<'a>(
        &mut self,
        v: &'a Value,
        path: &str,
        allowed: &[&str],
    ) -> Result<&'a Map<String, Value>, ParseError> {
        let Some(obj) = v.as_object() else {
            return err(path, "expected an object");
        };
        for key in obj.keys() {
            if !allowed.contains(&key.as_str()) {
                let msg = format!("{path}.{key}: unknown field");
                match self.mode {
                    Strictness::Strict => return err(&format!("{path}.{key}"), "unknown field"),
                    Strictness::Lenient => self.warnings.push(msg),
                }
            }
        }
        Ok(obj)
    }
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value, ParseError> {
    obj.get(key)
        .map_or_else(|| err(path, format!("missing field `{key}`")), Ok)
}

fn uint(v: &Value, path: &str) -> Result<usize, ParseError> {
    match v.as_u64() {
        Some(x) => Ok(x as usize),
        None => err(path, "expected a non-negative integer"),
    }
}

fn coord(v: &Value, path: &str) -> Result<Rat, ParseError> {
    match v {
        Value::String(s) => s.parse().or_else(|e| err(path, format!("{e}"))),
        Value::Number(_) => err(
            path,
            "coordinates must be strings (e.g. \"3\", \"0.25\", \"7/3\")",
        ),
        _ => err(path, "expected a coordinate string"),
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, ParseError> {
    v.as_array()
        .map_or_else(|| err(path, "expected an array"), Ok)
}

/// Parses and canonicalizes an instance document.
pub fn parse_instance(
    text: &str,
    mode: Strictness,
) -> Result<(InstanceDoc, Vec<String>), ParseError> {
    let root: Value =
        serde_json::from_str(text).or_else(|e| err("$", format!("invalid JSON: {e}")))?;
    let mut ctx = Ctx {
        mode,
        warnings: Vec::new(),
    };
    let obj = ctx.object(&root, "$", &["d", "points", "sets", "families"])?;
    let d = uint(field(obj, "$", "d")?, "$.d")?;
    if d == 0 {
        return err("$.d", "d must be positive");
    }

    let mut points = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, p) in array(field(obj, "$", "points")?, "$.points")?
        .iter()
        .enumerate()
    {
        let path = format!("$.points[{i}]");
        let pair = array(p, &path)?;
        if pair.len() != 2 {
            return err(&path, "expected [coordString, level]");
        }
        let c = coord(&pair[0], &format!("{path}[0]"))?;
        let level = uint(&pair[1], &format!("{path}[1]"))?;
        if level == 0 || level > d {
            return err(
                &format!("{path}[1]"),
                format!("level {level} outside [1, {d}]"),
            );
        }
        if !seen.insert((level, c.clone())) {
            return err(&path, format!("duplicate point ({c}, {level})"));
        }
        points.push(Point { coord: c, level });
    }
    let ground = Arc::new(PointSet::new(d, points).or_else(|e| err("$.points", e.to_string()))?);

    let mut names = Vec::new();
    let mut sets = Vec::new();
    for (i, s) in array(field(obj, "$", "sets")?, "$.sets")?
        .iter()
        .enumerate()
    {
        let path = format!("$.sets[{i}]");
        let so = ctx.object(s, &path, &["name", "levels"])?;
        let name = match field(so, &path, "name")? {
            Value::String(n) => n.clone(),
            _ => return err(&format!("{path}.name"), "expected a string"),
        };
        let mut levels = vec![LevelInterval::Empty; d];
        for (j, lv) in array(field(so, &path, "levels")?, &format!("{path}.levels"))?
            .iter()
            .enumerate()
        {
            let lpath = format!("{path}.levels[{j}]");
            let lo_obj = ctx.object(lv, &lpath, &["level", "lo", "hi"])?;
            let level = uint(field(lo_obj, &lpath, "level")?, &format!("{lpath}.level"))?;
            if level == 0 || level > d {
                return err(
                    &format!("{lpath}.level"),
                    format!("level {level} outside [1, {d}]"),
                );
            }
            let lo = coord(field(lo_obj, &lpath, "lo")?, &format!("{lpath}.lo"))?;
            let hi = coord(field(lo_obj, &lpath, "hi")?, &format!("{lpath}.hi"))?;
            if lo > hi {
                return err(
                    &lpath,
                    format!("set `{name}` level {level}: lo {lo} > hi {hi}"),
                );
            }
            if !levels[level - 1].is_empty() {
                return err(&lpath, format!("set `{name}` lists level {level} twice"));
            }
            levels[level - 1] = LevelInterval::Closed { lo, hi };
        }
        let interval = DInterval::new(levels).or_else(|e| err(&path, e.to_string()))?;
        sets.push(trace_of(&interval, &ground).or_else(|e| err(&path, e.to_string()))?);
        names.push(name);
    }

    let (families, explicit) = match obj.get("families") {
        None => (vec![(0..sets.len()).collect()], false),
        Some(v) => {
            let mut out = Vec::new();
            for (i, f) in array(v, "$.families")?.iter().enumerate() {
                let path = format!("$.families[{i}]");
                let mut fam = Vec::new();
                for (j, x) in array(f, &path)?.iter().enumerate() {
                    let idx = uint(x, &format!("{path}[{j}]"))?;
                    if idx >= sets.len() {
                        return err(
                            &format!("{path}[{j}]"),
                            format!("set index {idx} out of range"),
                        );
                    }
                    fam.push(idx);
                }
                out.push(fam);
            }
            (out, true)
        }
    };
    let instance = Instance {
        ground,
        sets,
        families,
    };
    Ok((
        InstanceDoc {
            instance,
            names,
            explicit_families: explicit,
        },
        ctx.warnings,
    ))
}

/// Canonical JSON value: points sorted by level then coordinate, every set
/// written as the minimal interval of its trace (empty levels omitted).
pub fn instance_to_value(doc: &InstanceDoc) -> Value {
    let inst = &doc.instance;
    let points: Vec<Value> = inst
        .ground
        .points()
        .iter()
        .map(|p| json!([p.coord.to_string(), p.level]))
        .collect();
    let sets: Vec<Value> = inst
        .sets
        .iter()
        .zip(&doc.names)
        .map(|(t, name)| {
            let levels: Vec<Value> = minimal_dinterval(t)
                .levels()
                .iter()
                .enumerate()
                .filter_map(|(i, lv)| match lv {
                    LevelInterval::Empty => None,
                    LevelInterval::Closed { lo, hi } => {
                        Some(json!({"level": i + 1, "lo": lo.to_string(), "hi": hi.to_string()}))
                    }
                })
                .collect();
            json!({"name": name, "levels": levels})
        })
        .collect();
    let mut root = Map::new();
    root.insert("d".into(), json!(inst.ground.d()));
    root.insert("points".into(), Value::Array(points));
    root.insert("sets".into(), Value::Array(sets));
    if doc.explicit_families {
        root.insert("families".into(), json!(inst.families));
    }
    Value::Object(root)
}

pub fn serialize_instance(doc: &InstanceDoc) -> String {
    let mut s = serde_json::to_string_pretty(&instance_to_value(doc)).expect("serializable");
    s.push('\n');
    s
}
