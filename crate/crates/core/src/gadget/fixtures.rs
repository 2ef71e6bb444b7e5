//! The fixture graphs used to pin down what any valid gadget must satisfy.
//!
//! All fixtures contain the crossing edges ab and cd.
//!
//! * `crossing-l0`, `crossing-l1`: (2,0)- and (2,1)-tight graphs on a, b, c, d and
//!   three helper vertices where V - {b, c} induces 10 - l edges.
//! * `dense-l3-G`: not (2,3)-tight, because {a, b, e, f} induces 6 > 5 edges.
//!   `dense-l3-H1` moves edge ae to de and `dense-l3-H2` moves bf to cf; both are
//!   (2,3)-tight.
//! * `dense-l{0,1,2}-G`: the same construction for l = 0, 1, 2, with kn - l
//!   edges but V - {c, d} too dense. The H1/H2 variants use the same two
//!   edge moves and are tight.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{graph_from_value, MultiGraph};
use crate::sparsity::{recognize, Method, SparsityParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub sparse: bool,
    pub tight: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub graph: MultiGraph,
    pub params: SparsityParams,
    pub expected: Expectation,
}

impl Fixture {
    fn new(name: &str, graph: MultiGraph, l: u32, expected: Expectation) -> Self {
        Fixture {
            name: name.into(),
            graph,
            params: SparsityParams::new(2, l as i64).expect("l <= 3"),
            expected,
        }
    }
}

const TIGHT: Expectation = Expectation {
    sparse: true,
    tight: true,
};
const DENSE: Expectation = Expectation {
    sparse: false,
    tight: false,
};

fn graph(edges: &[(&str, &str)]) -> MultiGraph {
    MultiGraph::from_edges(edges).expect("static fixture")
}

/// The (2,l)-tight graph for l = 0 or 1 (l = 1 drops the edge ad).
pub(crate) fn crossing_tight(l: u32) -> MultiGraph {
    let mut edges = vec![
        ("1", "2"),
        ("1", "3"),
        ("1", "a"),
        ("1", "d"),
        ("2", "a"),
        ("2", "d"),
        ("2", "3"),
        ("3", "a"),
        ("3", "d"),
        ("a", "d"),
        ("b", "a"),
        ("b", "d"),
        ("c", "a"),
        ("c", "d"),
    ];
    if l == 1 {
        edges.retain(|&e| e != ("a", "d"));
    }
    graph(&edges)
}

const DENSE_L3_EDGES: [(&str, &str); 9] = [
    ("a", "b"),
    ("c", "d"),
    ("d", "f"),
    ("e", "f"),
    ("a", "f"),
    ("a", "e"),
    ("b", "f"),
    ("b", "e"),
    ("c", "e"),
];

/// The non-tight graph G of the dense-set family for (2,l).
pub(crate) fn dense_family_g(l: u32) -> MultiGraph {
    let mut edges: Vec<(&str, &str)> = DENSE_L3_EDGES.to_vec();
    match l {
        0 => edges.extend([
            ("a", "x"),
            ("a", "y"),
            ("e", "y"),
            ("b", "y"),
            ("b", "x"),
            ("f", "x"),
            ("x", "y"),
        ]),
        1 => edges.extend([("a", "x"), ("b", "x"), ("e", "x"), ("f", "x")]),
        2 => {
            edges.retain(|&e| e != ("e", "f"));
            edges.extend([("a", "x"), ("b", "x"), ("e", "x"), ("f", "x")]);
        }
        _ => {}
    }
    graph(&edges)
}

fn moved(g: &MultiGraph, from: (&str, &str), to: (&str, &str)) -> MultiGraph {
    g.without_edge(from.0, from.1)
        .and_then(|h| h.with_edge(to.0, to.1))
        .expect("fixture edges exist")
}

/// G, H1, H2 for (2,l).
pub(crate) fn dense_family(l: u32) -> [MultiGraph; 3] {
    let g = dense_family_g(l);
    let h1 = moved(&g, ("a", "e"), ("d", "e"));
    let h2 = moved(&g, ("b", "f"), ("c", "f"));
    [g, h1, h2]
}

fn family_prefix(l: u32) -> String {
    format!("dense-l{l}")
}

/// Named graphs with their expected (2,l) status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureSet {
    pub fixtures: Vec<Fixture>,
}

/// One fixture evaluated by one recognizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureCheck {
    pub fixture: String,
    pub method: Method,
    pub expected: Expectation,
    /// `None` when the recognizer refused (for example over its size cap).
    pub got: Option<Expectation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl FixtureCheck {
    pub fn agrees(&self) -> bool {
        self.got == Some(self.expected)
    }
}

impl FixtureSet {
    pub fn standard() -> Self {
        let mut fixtures = vec![
            Fixture::new("crossing-l0", crossing_tight(0), 0, TIGHT),
            Fixture::new("crossing-l1", crossing_tight(1), 1, TIGHT),
        ];
        for l in [3, 0, 1, 2] {
            let prefix = family_prefix(l);
            let [g, h1, h2] = dense_family(l);
            fixtures.push(Fixture::new(&format!("{prefix}-G"), g, l, DENSE));
            fixtures.push(Fixture::new(&format!("{prefix}-H1"), h1, l, TIGHT));
            fixtures.push(Fixture::new(&format!("{prefix}-H2"), h2, l, TIGHT));
        }
        FixtureSet { fixtures }
    }

    /// The standard set, after checking every expectation with the subset
    /// oracle.
    pub fn load() -> Result<Self> {
        let set = Self::standard();
        if let Some(bad) = set
            .verify(&[Method::Brute], crate::sparsity::DEFAULT_ORACLE_LIMIT)
            .into_iter()
            .find(|c| !c.agrees())
        {
            return Err(Error::Precondition(format!(
                "fixture {} does not have its documented status",
                bad.fixture
            )));
        }
        Ok(set)
    }

    pub fn get(&self, name: &str) -> Option<&Fixture> {
        self.fixtures.iter().find(|f| f.name == name)
    }

    pub fn verify(&self, methods: &[Method], oracle_limit: usize) -> Vec<FixtureCheck> {
        let mut out = Vec::new();
        for f in &self.fixtures {
            for &method in methods {
                let (got, error) = match recognize(&f.graph, f.params, method, oracle_limit) {
                    Ok(v) => (
                        Some(Expectation {
                            sparse: v.sparse,
                            tight: v.tight,
                        }),
                        None,
                    ),
                    Err(e) => (None, Some(e.to_string())),
                };
                out.push(FixtureCheck {
                    fixture: f.name.clone(),
                    method,
                    expected: f.expected,
                    got,
                    error,
                });
            }
        }
        out
    }

    /// Corpus JSON: an array of `{name, k, l, expected, graph}`.
    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.fixtures
                .iter()
                .map(|f| {
                    serde_json::json!({
                        "name": f.name,
                        "k": f.params.k(),
                        "l": f.params.l(),
                        "expected": f.expected,
                        "graph": f.graph,
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {}", e.line()),
            message: e.to_string(),
        })?;
        let items = value.as_array().ok_or_else(|| Error::Parse {
            location: "<root>".into(),
            message: "expected an array of fixtures".into(),
        })?;
        let mut fixtures = Vec::new();
        for (i, item) in items.iter().enumerate() {
            let at = |field: &str| format!("[{i}].{field}");
            let perr = |field: &str, message: &str| Error::Parse {
                location: at(field),
                message: message.into(),
            };
            let name = item
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| perr("name", "expected a string"))?;
            let k = item
                .get("k")
                .and_then(Value::as_i64)
                .ok_or_else(|| perr("k", "expected an integer"))?;
            let l = item
                .get("l")
                .and_then(Value::as_i64)
                .ok_or_else(|| perr("l", "expected an integer"))?;
            let expected: Expectation = item
                .get("expected")
                .cloned()
                .ok_or_else(|| perr("expected", "missing field"))
                .and_then(|v| {
                    serde_json::from_value(v).map_err(|e| perr("expected", &e.to_string()))
                })?;
            let g = item
                .get("graph")
                .ok_or_else(|| perr("graph", "missing field"))?;
            fixtures.push(Fixture {
                name: name.into(),
                graph: graph_from_value(g, &at("graph"))?,
                params: SparsityParams::new(k, l)?,
                expected,
            });
        }
        Ok(FixtureSet { fixtures })
    }
}
