//! File formats: JSON for graphs, motif families, networks, and treegrams,
//! plus the line-oriented text format for graphs.
//!
//! Emission is deterministic (lexicographic everywhere) and weights are
//! written exactly: integers as JSON numbers, terminating decimals as JSON
//! numbers, other rationals as `"p/q"` strings, and infinity as `"inf"`.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde_json::{json, Map, Number, Value};

use crate::error::Error;
use crate::graph::{Graph, PointedGraph};
use crate::motif::{MotifFamily, PointedFamily, UnpointedFamily};
use crate::network::{
    parse_ext_real, parse_scalar, scalar_to_string, ExtReal, ExtendedNetwork, Treegram,
    TreegramEvent,
};

fn format_error(format: &'static str, message: impl Into<String>) -> Error {
    Error::Format {
        format,
        message: message.into(),
    }
}

fn parse_json(text: &str, format: &'static str) -> Result<Value, Error> {
    serde_json::from_str(text).map_err(|e| format_error(format, e.to_string()))
}

fn as_object<'v>(
    value: &'v Value,
    format: &'static str,
    what: &str,
) -> Result<&'v Map<String, Value>, Error> {
    value
        .as_object()
        .ok_or_else(|| format_error(format, format!("{} must be an object", what)))
}

fn as_array<'v>(value: &'v Value, format: &'static str, what: &str) -> Result<&'v [Value], Error> {
    value
        .as_array()
        .map(|a| a.as_slice())
        .ok_or_else(|| format_error(format, format!("{} must be an array", what)))
}

fn as_str<'v>(value: &'v Value, format: &'static str, what: &str) -> Result<&'v str, Error> {
    value
        .as_str()
        .ok_or_else(|| format_error(format, format!("{} must be a string", what)))
}

fn field<'v>(
    map: &'v Map<String, Value>,
    key: &str,
    format: &'static str,
) -> Result<&'v Value, Error> {
    map.get(key)
        .ok_or_else(|| format_error(format, format!("missing field `{}`", key)))
}

// ---------------------------------------------------------------------------
// Graphs

pub fn graph_to_json(graph: &Graph) -> Value {
    json!({
        "vertices": graph.vertices(),
        "arrows": graph.arrows().map(|(a, b)| vec![a, b]).collect::<Vec<_>>(),
    })
}

pub fn graph_to_json_string(graph: &Graph) -> String {
    graph_to_json(graph).to_string()
}

pub fn graph_from_json(value: &Value) -> Result<Graph, Error> {
    const F: &str = "graph JSON";
    let map = as_object(value, F, "graph")?;
    let vertices = as_array(field(map, "vertices", F)?, F, "`vertices`")?
        .iter()
        .map(|v| as_str(v, F, "vertex").map(str::to_string))
        .collect::<Result<Vec<_>, _>>()?;
    let mut arrows = Vec::new();
    for entry in as_array(field(map, "arrows", F)?, F, "`arrows`")? {
        let pair = as_array(entry, F, "arrow")?;
        if pair.len() != 2 {
            return Err(format_error(F, "arrows must be [from, to] pairs"));
        }
        arrows.push((
            as_str(&pair[0], F, "arrow endpoint")?.to_string(),
            as_str(&pair[1], F, "arrow endpoint")?.to_string(),
        ));
    }
    Graph::new(vertices, arrows)
}

pub fn graph_from_json_str(text: &str) -> Result<Graph, Error> {
    graph_from_json(&parse_json(text, "graph JSON")?)
}

/// The text format: a `vertices:` line, then one `from to` pair per line;
/// `#` starts a comment.
pub fn graph_to_text(graph: &Graph) -> String {
    let mut out = String::from("vertices:");
    for v in graph.vertices() {
        out.push(' ');
        out.push_str(v);
    }
    out.push('\n');
    for (a, b) in graph.arrows() {
        out.push_str(a);
        out.push(' ');
        out.push_str(b);
        out.push('\n');
    }
    out
}

pub fn graph_from_text(text: &str) -> Result<Graph, Error> {
    const F: &str = "graph text";
    let mut vertices: Option<Vec<String>> = None;
    let mut arrows = Vec::new();
    for raw in text.lines() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices:") {
            if vertices.is_some() {
                return Err(format_error(F, "second `vertices:` line"));
            }
            vertices = Some(rest.split_whitespace().map(str::to_string).collect());
            continue;
        }
        let mut tokens = line.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => arrows.push((a.to_string(), b.to_string())),
            _ => {
                return Err(format_error(
                    F,
                    format!("expected `from to`, got `{}`", line),
                ))
            }
        }
    }
    let vertices = vertices.ok_or_else(|| format_error(F, "missing `vertices:` line"))?;
    Graph::new(vertices, arrows)
}

// ---------------------------------------------------------------------------
// Motif families

pub fn family_to_json(family: &MotifFamily) -> Value {
    match family {
        MotifFamily::Unpointed(f) => json!({
            "pointed": false,
            "motifs": f
                .members()
                .iter()
                .map(|g| json!({ "graph": graph_to_json(g) }))
                .collect::<Vec<_>>(),
        }),
        MotifFamily::Pointed(f) => json!({
            "pointed": true,
            "motifs": f
                .members()
                .iter()
                .map(|m| {
                    json!({
                        "graph": graph_to_json(m.graph()),
                        "z": m.source_mark(),
                        "zhat": m.target_mark(),
                    })
                })
                .collect::<Vec<_>>(),
        }),
    }
}

pub fn family_to_json_string(family: &MotifFamily) -> String {
    family_to_json(family).to_string()
}

pub fn family_from_json(value: &Value) -> Result<MotifFamily, Error> {
    const F: &str = "motif-family JSON";
    let map = as_object(value, F, "family")?;
    let pointed = field(map, "pointed", F)?
        .as_bool()
        .ok_or_else(|| format_error(F, "`pointed` must be a boolean"))?;
    let motifs = as_array(field(map, "motifs", F)?, F, "`motifs`")?;
    if pointed {
        let mut members = Vec::new();
        for entry in motifs {
            let obj = as_object(entry, F, "motif")?;
            let graph = graph_from_json(field(obj, "graph", F)?)?;
            let z = as_str(field(obj, "z", F)?, F, "`z`")?;
            let zhat = as_str(field(obj, "zhat", F)?, F, "`zhat`")?;
            members.push(PointedGraph::new(graph, z, zhat)?);
        }
        Ok(MotifFamily::Pointed(PointedFamily::new(members)))
    } else {
        let mut members = Vec::new();
        for entry in motifs {
            let obj = as_object(entry, F, "motif")?;
            if obj.contains_key("z") || obj.contains_key("zhat") {
                return Err(format_error(F, "unpointed families must omit marks"));
            }
            members.push(graph_from_json(field(obj, "graph", F)?)?);
        }
        Ok(MotifFamily::Unpointed(UnpointedFamily::new(members)))
    }
}

pub fn family_from_json_str(text: &str) -> Result<MotifFamily, Error> {
    family_from_json(&parse_json(text, "motif-family JSON")?)
}

// ---------------------------------------------------------------------------
// Networks

fn ext_real_to_value(value: &ExtReal) -> Value {
    match value {
        ExtReal::Infinity => Value::String("inf".to_string()),
        ExtReal::Finite(v) => {
            let rendered = scalar_to_string(v);
            // Integers and terminating decimals are valid JSON numbers;
            // `p/q` fractions fall back to strings.
            match serde_json::from_str::<Number>(&rendered) {
                Ok(n) => Value::Number(n),
                Err(_) => Value::String(rendered),
            }
        }
    }
}

fn ext_real_from_value(value: &Value, format: &'static str) -> Result<ExtReal, Error> {
    match value {
        Value::Number(n) => parse_scalar(&n.to_string())
            .map(ExtReal::Finite)
            .map_err(|m| format_error(format, m)),
        Value::String(s) => parse_ext_real(s).map_err(|m| format_error(format, m)),
        other => Err(format_error(
            format,
            format!("weight must be a number or string, got {}", other),
        )),
    }
}

pub fn network_to_json(network: &ExtendedNetwork) -> Value {
    let n = network.point_count();
    let rows: Vec<Value> = (0..n)
        .map(|i| {
            Value::Array(
                (0..n)
                    .map(|j| ext_real_to_value(network.weight_at(i, j)))
                    .collect(),
            )
        })
        .collect();
    json!({
        "points": network.points(),
        "weights": rows,
    })
}

pub fn network_to_json_string(network: &ExtendedNetwork) -> String {
    network_to_json(network).to_string()
}

pub fn network_from_json(value: &Value) -> Result<ExtendedNetwork, Error> {
    const F: &str = "network JSON";
    let map = as_object(value, F, "network")?;
    let points = as_array(field(map, "points", F)?, F, "`points`")?
        .iter()
        .map(|v| as_str(v, F, "point").map(str::to_string))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::new();
    for row in as_array(field(map, "weights", F)?, F, "`weights`")? {
        rows.push(
            as_array(row, F, "weight row")?
                .iter()
                .map(|v| ext_real_from_value(v, F))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    ExtendedNetwork::new(points, rows)
}

pub fn network_from_json_str(text: &str) -> Result<ExtendedNetwork, Error> {
    network_from_json(&parse_json(text, "network JSON")?)
}

// ---------------------------------------------------------------------------
// Treegrams

fn scalar_to_value(value: &Rational64) -> Value {
    ext_real_to_value(&ExtReal::Finite(*value))
}

pub fn treegram_to_json(treegram: &Treegram) -> Value {
    let births: Map<String, Value> = treegram
        .births()
        .iter()
        .map(|(p, v)| (p.clone(), scalar_to_value(v)))
        .collect();
    let events: Vec<Value> = treegram
        .events()
        .iter()
        .map(|event| {
            json!({
                "epsilon": scalar_to_value(&event.epsilon),
                "partition": event.partition,
            })
        })
        .collect();
    json!({ "births": births, "events": events })
}

pub fn treegram_to_json_string(treegram: &Treegram) -> String {
    treegram_to_json(treegram).to_string()
}

pub fn treegram_from_json(value: &Value) -> Result<Treegram, Error> {
    const F: &str = "treegram JSON";
    let map = as_object(value, F, "treegram")?;
    let mut births = BTreeMap::new();
    for (point, v) in as_object(field(map, "births", F)?, F, "`births`")? {
        match ext_real_from_value(v, F)? {
            ExtReal::Finite(r) => births.insert(point.clone(), r),
            ExtReal::Infinity => {
                return Err(format_error(F, "birth values must be finite"));
            }
        };
    }
    let mut events = Vec::new();
    for entry in as_array(field(map, "events", F)?, F, "`events`")? {
        let obj = as_object(entry, F, "event")?;
        let epsilon = match ext_real_from_value(field(obj, "epsilon", F)?, F)? {
            ExtReal::Finite(r) => r,
            ExtReal::Infinity => return Err(format_error(F, "event values must be finite")),
        };
        let mut partition = Vec::new();
        for block in as_array(field(obj, "partition", F)?, F, "`partition`")? {
            partition.push(
                as_array(block, F, "block")?
                    .iter()
                    .map(|v| as_str(v, F, "point").map(str::to_string))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        events.push(TreegramEvent { epsilon, partition });
    }
    Ok(Treegram::from_parts(births, events))
}

pub fn treegram_from_json_str(text: &str) -> Result<Treegram, Error> {
    treegram_from_json(&parse_json(text, "treegram JSON")?)
}
