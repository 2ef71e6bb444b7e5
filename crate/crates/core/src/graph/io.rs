use serde_json::Value;

use super::{GraphBuilder, MultiGraph};
use crate::error::{Error, Result};

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

fn field(prefix: &str, name: &str) -> String {
    if prefix.is_empty() {
        name.to_owned()
    } else {
        format!("{prefix}.{name}")
    }
}

/// Reads `{"vertices": [...], "edges": [[u, v], ...]}` out of a JSON value.
/// `prefix` names the enclosing field in diagnostics.
pub(crate) fn graph_from_value(value: &Value, prefix: &str) -> Result<MultiGraph> {
    let obj = value.as_object().ok_or_else(|| {
        parse_err(
            if prefix.is_empty() { "<root>" } else { prefix },
            "expected an object",
        )
    })?;
    let vfield = field(prefix, "vertices");
    let efield = field(prefix, "edges");
    let vertices = obj
        .get("vertices")
        .ok_or_else(|| parse_err(&vfield, "missing field"))?
        .as_array()
        .ok_or_else(|| parse_err(&vfield, "expected an array of strings"))?;
    let edges = obj
        .get("edges")
        .ok_or_else(|| parse_err(&efield, "missing field"))?
        .as_array()
        .ok_or_else(|| parse_err(&efield, "expected an array of pairs"))?;

    let mut b = GraphBuilder::new();
    for (i, v) in vertices.iter().enumerate() {
        let loc = format!("{vfield}[{i}]");
        let label = v
            .as_str()
            .ok_or_else(|| parse_err(&loc, "expected a string"))?;
        b.vertex(label).map_err(|e| parse_err(&loc, strip(e)))?;
    }
    for (i, e) in edges.iter().enumerate() {
        let loc = format!("{efield}[{i}]");
        let pair = e
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| parse_err(&loc, "expected a 2-element array"))?;
        let mut ends = [0usize; 2];
        for (j, end) in pair.iter().enumerate() {
            let eloc = format!("{loc}[{j}]");
            let label = end
                .as_str()
                .ok_or_else(|| parse_err(&eloc, "expected a string"))?;
            ends[j] = b
                .index
                .get(label)
                .copied()
                .ok_or_else(|| parse_err(&eloc, format!("unknown vertex {label:?}")))?;
        }
        b.edge_by_index(ends[0], ends[1])
            .map_err(|e| parse_err(&loc, strip(e)))?;
    }
    Ok(b.build())
}

fn strip(e: Error) -> String {
    match e {
        Error::Input(m) => m,
        other => other.to_string(),
    }
}

/// Parses the plain-text format: a header line `n m`, then `m` lines `u v`.
///
/// Vertices are the edge endpoints in order of first appearance. If fewer
/// than `n` labels occur, the remaining isolated vertices are named by the
/// smallest unused nonnegative integers.
pub fn parse_text(text: &str) -> Result<MultiGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err("line 1", "missing `n m` header"))?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    let hloc = format!("line {hline}");
    if nums.len() != 2 {
        return Err(parse_err(&hloc, "header must be `n m`"));
    }
    let n: usize = nums[0]
        .parse()
        .map_err(|_| parse_err(&hloc, format!("bad vertex count {:?}", nums[0])))?;
    let m: usize = nums[1]
        .parse()
        .map_err(|_| parse_err(&hloc, format!("bad edge count {:?}", nums[1])))?;

    let mut b = GraphBuilder::new();
    let mut count = 0;
    for (lineno, line) in lines {
        let loc = format!("line {lineno}");
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(&loc, "expected `u v`"));
        }
        if count == m {
            return Err(parse_err(&loc, format!("more than the declared {m} edges")));
        }
        let u = b
            .ensure_vertex(toks[0])
            .map_err(|e| parse_err(&loc, strip(e)))?;
        let v = b
            .ensure_vertex(toks[1])
            .map_err(|e| parse_err(&loc, strip(e)))?;
        if b.vertices.len() > n {
            return Err(parse_err(
                &loc,
                format!("more than the declared {n} vertices"),
            ));
        }
        b.edge_by_index(u, v)
            .map_err(|e| parse_err(&loc, strip(e)))?;
        count += 1;
    }
    if count != m {
        return Err(parse_err(
            "<eof>",
            format!("declared {m} edges but found {count}"),
        ));
    }
    let mut next = 0usize;
    while b.vertices.len() < n {
        while b.contains(&next.to_string()) {
            next += 1;
        }
        b.vertex(&next.to_string())?;
    }
    Ok(b.build())
}

/// Writes the plain-text format. Labels of isolated vertices are not
/// representable there; use JSON when they matter.
pub fn to_text(g: &MultiGraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_loop_reports_field() {
        let err = MultiGraph::from_json(r#"{"vertices":["a","b"],"edges":[["a","b"],["b","b"]]}"#)
            .unwrap_err();
        match err {
            Error::Parse { location, .. } => assert_eq!(location, "edges[1]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_unknown_endpoint_reports_field() {
        let err = MultiGraph::from_json(r#"{"vertices":["a"],"edges":[["a","z"]]}"#).unwrap_err();
        assert_eq!(err, parse_err("edges[0][1]", "unknown vertex \"z\""));
    }

    #[test]
    fn json_missing_field() {
        assert!(matches!(
            MultiGraph::from_json(r#"{"vertices":[]}"#),
            Err(Error::Parse { location, .. }) if location == "edges"
        ));
    }

    #[test]
    fn text_format_roundtrip() {
        let g = parse_text("4 3\na b\nb c\nc a\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
        assert!(g.contains("0"));
        assert_eq!(parse_text(&to_text(&g)).unwrap(), g);
    }

    #[test]
    fn text_loop_reports_line() {
        let err = parse_text("2 2\na b\nb b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { location, .. } if location == "line 3"));
    }

    #[test]
    fn text_count_mismatch() {
        assert!(parse_text("3 2\na b\n").is_err());
        assert!(parse_text("2 1\na b\nb c\n").is_err());
    }
}
