//! The communication-network data model.
//!
//! A network is a directed acyclic graph with capacitated point-to-point
//! edges and a set of multicast sessions, each generated at a single source
//! node and demanded by one or more sink nodes. Documents use the ids that
//! appear in them (1-based by convention); internally everything is densely
//! renumbered 0-based in input order.

use crate::rational::{format_rational, parse_rational};
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};

/// A capacitated directed edge. Capacity is in bits per channel use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Dense 0-based index, the id used everywhere internally.
    pub id: usize,
    /// Id as written in the source document.
    pub doc_id: i64,
    pub tail: usize,
    pub head: usize,
    pub capacity: BigRational,
}

/// A multicast session: one source node, one or more sinks demanding it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Session {
    pub id: usize,
    pub doc_id: i64,
    pub source: usize,
    pub sinks: BTreeSet<usize>,
}

/// A validated (or not-yet-validated) communication network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    /// Document label of each node; internal node id is the index here.
    pub node_labels: Vec<i64>,
    pub edges: Vec<Edge>,
    pub sessions: Vec<Session>,
}

/// Errors raised while reading a network document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// Malformed JSON, with line and column from the parser.
    Syntax { line: usize, column: usize, msg: String },
    /// Structurally valid JSON that does not match the document schema.
    Schema(String),
    /// A node/edge/session id appears twice.
    DuplicateId(String),
    /// An edge or session refers to a node that is not declared.
    DanglingNode(String),
    /// A capacity failed to parse or is negative.
    BadCapacity(String),
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseError::Syntax { line, column, msg } => {
                write!(f, "syntax error at line {line}, column {column}: {msg}")
            }
            ParseError::Schema(m) => write!(f, "schema error: {m}"),
            ParseError::DuplicateId(m) => write!(f, "duplicate id: {m}"),
            ParseError::DanglingNode(m) => write!(f, "dangling node reference: {m}"),
            ParseError::BadCapacity(m) => write!(f, "bad capacity: {m}"),
        }
    }
}

impl std::error::Error for ParseError {}

/// One violated network invariant. Violations are data, not faults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Nodes on a directed cycle, by document label.
    Cycle(Vec<i64>),
    /// Session whose source node is also one of its sinks.
    SourceInSinks { session: i64 },
    /// Session with an empty sink set.
    NoSinks { session: i64 },
    /// Edge not on any directed path from a source node to a sink node.
    EdgeOffPath { edge: i64 },
    /// Edge with equal endpoints.
    SelfLoop { edge: i64 },
    /// Negative capacity.
    NegativeCapacity { edge: i64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Cycle(nodes) => {
                let names: Vec<String> = nodes.iter().map(|n| n.to_string()).collect();
                write!(f, "cycle detected: {}", names.join(","))
            }
            Violation::SourceInSinks { session } => {
                write!(f, "session {session}: source \u{2208} sinks")
            }
            Violation::NoSinks { session } => write!(f, "session {session}: empty sink set"),
            Violation::EdgeOffPath { edge } => {
                write!(f, "edge {edge} on no source-sink path")
            }
            Violation::SelfLoop { edge } => write!(f, "edge {edge} is a self-loop"),
            Violation::NegativeCapacity { edge } => {
                write!(f, "edge {edge} has negative capacity")
            }
        }
    }
}

/// Outcome of [`validate_network`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Per-edge source and sink connections of a three-layer unicast network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeLayerView {
    /// Middle-layer edge ids.
    pub middle: Vec<usize>,
    /// For each middle edge: sessions whose source node feeds its tail.
    pub alpha: BTreeMap<usize, BTreeSet<usize>>,
    /// For each middle edge: sessions demanded directly below its head.
    pub beta: BTreeMap<usize, BTreeSet<usize>>,
}

impl Network {
    pub fn num_nodes(&self) -> usize {
        self.node_labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_sessions(&self) -> usize {
        self.sessions.len()
    }

    /// Edges with `head == node`.
    pub fn in_edges(&self, node: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.head == node)
            .map(|e| e.id)
            .collect()
    }

    /// Edges with `tail == node`.
    pub fn out_edges(&self, node: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.tail == node)
            .map(|e| e.id)
            .collect()
    }

    /// Nodes hosting at least one session source.
    pub fn source_nodes(&self) -> BTreeSet<usize> {
        self.sessions.iter().map(|s| s.source).collect()
    }

    /// Nodes demanded by at least one session.
    pub fn sink_nodes(&self) -> BTreeSet<usize> {
        self.sessions
            .iter()
            .flat_map(|s| s.sinks.iter().copied())
            .collect()
    }
}

fn as_i64(v: &Value, what: &str) -> Result<i64, ParseError> {
    v.as_i64()
        .ok_or_else(|| ParseError::Schema(format!("{what}: expected an integer, got {v}")))
}

fn capacity_from_value(v: &Value, edge: i64) -> Result<BigRational, ParseError> {
    let text = match v {
        Value::String(s) => s.clone(),
        // arbitrary_precision keeps the literal digits, so decimals stay exact
        Value::Number(n) => n.to_string(),
        other => {
            return Err(ParseError::BadCapacity(format!(
                "edge {edge}: expected a number or \"p/q\" string, got {other}"
            )))
        }
    };
    let r = parse_rational(&text)
        .map_err(|e| ParseError::BadCapacity(format!("edge {edge}: {e}")))?;
    if r.is_negative() {
        return Err(ParseError::BadCapacity(format!(
            "edge {edge}: capacity {text} is negative"
        )));
    }
    Ok(r)
}

/// Parse a UTF-8 network document.
///
/// The document is a JSON object with keys `nodes` (array of ints), `edges`
/// (array of `[id, tail, head, capacity]` with capacity a number or `"p/q"`
/// string, parsed exactly) and `sessions` (array of
/// `{id, source, sinks: [...]}`). Ids are densely renumbered in input order.
pub fn parse_network(text: &str) -> Result<Network, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let obj = value
        .as_object()
        .ok_or_else(|| ParseError::Schema("top level must be an object".to_string()))?;

    let nodes_val = obj
        .get("nodes")
        .ok_or_else(|| ParseError::Schema("missing key `nodes`".to_string()))?
        .as_array()
        .ok_or_else(|| ParseError::Schema("`nodes` must be an array".to_string()))?;
    let mut node_labels = Vec::with_capacity(nodes_val.len());
    let mut node_index: BTreeMap<i64, usize> = BTreeMap::new();
    for v in nodes_val {
        let label = as_i64(v, "node")?;
        if node_index.insert(label, node_labels.len()).is_some() {
            return Err(ParseError::DuplicateId(format!("node {label}")));
        }
        node_labels.push(label);
    }
    let look = |label: i64, what: &str| {
        node_index
            .get(&label)
            .copied()
            .ok_or_else(|| ParseError::DanglingNode(format!("{what} refers to unknown node {label}")))
    };

    let edges_val = obj
        .get("edges")
        .ok_or_else(|| ParseError::Schema("missing key `edges`".to_string()))?
        .as_array()
        .ok_or_else(|| ParseError::Schema("`edges` must be an array".to_string()))?;
    let mut edges = Vec::with_capacity(edges_val.len());
    let mut edge_ids = BTreeSet::new();
    for (i, v) in edges_val.iter().enumerate() {
        let tuple = v
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| ParseError::Schema(format!("edge #{i}: expected [id, tail, head, capacity]")))?;
        let doc_id = as_i64(&tuple[0], "edge id")?;
        if !edge_ids.insert(doc_id) {
            return Err(ParseError::DuplicateId(format!("edge {doc_id}")));
        }
        let tail = look(as_i64(&tuple[1], "edge tail")?, &format!("edge {doc_id} tail"))?;
        let head = look(as_i64(&tuple[2], "edge head")?, &format!("edge {doc_id} head"))?;
        let capacity = capacity_from_value(&tuple[3], doc_id)?;
        edges.push(Edge { id: i, doc_id, tail, head, capacity });
    }

    let sessions_val = obj
        .get("sessions")
        .ok_or_else(|| ParseError::Schema("missing key `sessions`".to_string()))?
        .as_array()
        .ok_or_else(|| ParseError::Schema("`sessions` must be an array".to_string()))?;
    let mut sessions = Vec::with_capacity(sessions_val.len());
    let mut session_ids = BTreeSet::new();
    for (i, v) in sessions_val.iter().enumerate() {
        let o = v
            .as_object()
            .ok_or_else(|| ParseError::Schema(format!("session #{i}: expected an object")))?;
        let doc_id = as_i64(
            o.get("id")
                .ok_or_else(|| ParseError::Schema(format!("session #{i}: missing `id`")))?,
            "session id",
        )?;
        if !session_ids.insert(doc_id) {
            return Err(ParseError::DuplicateId(format!("session {doc_id}")));
        }
        let source = look(
            as_i64(
                o.get("source")
                    .ok_or_else(|| ParseError::Schema(format!("session {doc_id}: missing `source`")))?,
                "session source",
            )?,
            &format!("session {doc_id} source"),
        )?;
        let sinks_val = o
            .get("sinks")
            .ok_or_else(|| ParseError::Schema(format!("session {doc_id}: missing `sinks`")))?
            .as_array()
            .ok_or_else(|| ParseError::Schema(format!("session {doc_id}: `sinks` must be an array")))?;
        let mut sinks = BTreeSet::new();
        for sv in sinks_val {
            sinks.insert(look(as_i64(sv, "sink")?, &format!("session {doc_id} sink"))?);
        }
        sessions.push(Session { id: i, doc_id, source, sinks });
    }

    Ok(Network { node_labels, edges, sessions })
}

/// Serialize back to the document format. `parse_network` of the result
/// returns an identical `Network`.
pub fn serialize_network(net: &Network) -> String {
    let mut out = String::from("{\n  \"nodes\": [");
    out.push_str(
        &net.node_labels
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(", "),
    );
    out.push_str("],\n  \"edges\": [\n");
    for (i, e) in net.edges.iter().enumerate() {
        out.push_str(&format!(
            "    [{}, {}, {}, \"{}\"]{}\n",
            e.doc_id,
            net.node_labels[e.tail],
            net.node_labels[e.head],
            format_rational(&e.capacity),
            if i + 1 < net.edges.len() { "," } else { "" }
        ));
    }
    out.push_str("  ],\n  \"sessions\": [\n");
    for (i, s) in net.sessions.iter().enumerate() {
        let sinks: Vec<String> = s.sinks.iter().map(|k| net.node_labels[*k].to_string()).collect();
        out.push_str(&format!(
            "    {{\"id\": {}, \"source\": {}, \"sinks\": [{}]}}{}\n",
            s.doc_id,
            net.node_labels[s.source],
            sinks.join(", "),
            if i + 1 < net.sessions.len() { "," } else { "" }
        ));
    }
    out.push_str("  ]\n}\n");
    out
}

/// Check every `Network` invariant and report all violations found.
pub fn validate_network(net: &Network) -> ValidationReport {
    let mut violations = Vec::new();
    let n = net.num_nodes();

    for e in &net.edges {
        if e.tail == e.head {
            violations.push(Violation::SelfLoop { edge: e.doc_id });
        }
        if e.capacity.is_negative() {
            violations.push(Violation::NegativeCapacity { edge: e.doc_id });
        }
    }

    // Kahn peeling; whatever survives lies on a directed cycle.
    let mut indeg = vec![0usize; n];
    for e in &net.edges {
        indeg[e.head] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|v| indeg[*v] == 0).collect();
    let mut seen = 0usize;
    while let Some(v) = queue.pop() {
        seen += 1;
        for e in &net.edges {
            if e.tail == v {
                indeg[e.head] -= 1;
                if indeg[e.head] == 0 {
                    queue.push(e.head);
                }
            }
        }
    }
    if seen < n {
        // Walk parent pointers inside the residual subgraph until a repeat,
        // then rotate the smallest label to the front for stable output.
        let stuck = (0..n).find(|v| indeg[*v] > 0).unwrap();
        let mut path = vec![stuck];
        let cycle = loop {
            let cur = *path.last().unwrap();
            let parent = net
                .edges
                .iter()
                .find(|e| e.head == cur && indeg[e.tail] > 0)
                .map(|e| e.tail)
                .expect("residual node keeps a residual parent");
            if let Some(pos) = path.iter().position(|&x| x == parent) {
                let mut cycle: Vec<usize> = path[pos..].to_vec();
                cycle.reverse();
                break cycle;
            }
            path.push(parent);
        };
        let min_pos = (0..cycle.len())
            .min_by_key(|&i| net.node_labels[cycle[i]])
            .unwrap();
        let labels: Vec<i64> = (0..cycle.len())
            .map(|i| net.node_labels[cycle[(min_pos + i) % cycle.len()]])
            .collect();
        violations.push(Violation::Cycle(labels));
    }

    for s in &net.sessions {
        if s.sinks.is_empty() {
            violations.push(Violation::NoSinks { session: s.doc_id });
        }
        if s.sinks.contains(&s.source) {
            violations.push(Violation::SourceInSinks { session: s.doc_id });
        }
    }

    // Every edge must lie on some directed source-node -> sink-node path.
    let from_src = reach_forward(net, &net.source_nodes());
    let to_sink = reach_backward(net, &net.sink_nodes());
    for e in &net.edges {
        if !(from_src[e.tail] && to_sink[e.head]) {
            violations.push(Violation::EdgeOffPath { edge: e.doc_id });
        }
    }

    ValidationReport { violations }
}

fn reach_forward(net: &Network, start: &BTreeSet<usize>) -> Vec<bool> {
    let mut ok = vec![false; net.num_nodes()];
    let mut stack: Vec<usize> = start.iter().copied().collect();
    for &v in start {
        ok[v] = true;
    }
    while let Some(v) = stack.pop() {
        for e in &net.edges {
            if e.tail == v && !ok[e.head] {
                ok[e.head] = true;
                stack.push(e.head);
            }
        }
    }
    ok
}

fn reach_backward(net: &Network, start: &BTreeSet<usize>) -> Vec<bool> {
    let mut ok = vec![false; net.num_nodes()];
    let mut stack: Vec<usize> = start.iter().copied().collect();
    for &v in start {
        ok[v] = true;
    }
    while let Some(v) = stack.pop() {
        for e in &net.edges {
            if e.head == v && !ok[e.tail] {
                ok[e.tail] = true;
                stack.push(e.tail);
            }
        }
    }
    ok
}

/// Why a network fails the three-layer structural test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotThreeLayer(pub String);

impl std::fmt::Display for NotThreeLayer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "not three-layer: {}", self.0)
    }
}

impl std::error::Error for NotThreeLayer {}

/// Classify a unicast network into source, middle and sink edge layers.
///
/// Succeeds when every session is unicast, source and sink nodes are
/// disjoint, every edge sits in exactly one layer and every edge lies on a
/// directed path of length three from some source node to some sink node.
pub fn three_layer_view(net: &Network) -> Result<ThreeLayerView, NotThreeLayer> {
    for s in &net.sessions {
        if s.sinks.len() != 1 {
            return Err(NotThreeLayer(format!("session {} is not unicast", s.doc_id)));
        }
    }
    let src_nodes = net.source_nodes();
    let sink_nodes = net.sink_nodes();
    if !src_nodes.is_disjoint(&sink_nodes) {
        return Err(NotThreeLayer("a node is both source and sink".to_string()));
    }

    #[derive(PartialEq)]
    enum Layer {
        First,
        Middle,
        Third,
    }
    let mut layer = Vec::with_capacity(net.num_edges());
    for e in &net.edges {
        let t_src = src_nodes.contains(&e.tail);
        let t_sink = sink_nodes.contains(&e.tail);
        let h_src = src_nodes.contains(&e.head);
        let h_sink = sink_nodes.contains(&e.head);
        let l = match (t_src, t_sink, h_src, h_sink) {
            (true, false, false, false) => Layer::First,
            (false, false, false, false) => Layer::Middle,
            (false, false, false, true) => Layer::Third,
            _ => {
                return Err(NotThreeLayer(format!(
                    "edge {} does not fit the layer structure",
                    e.doc_id
                )))
            }
        };
        layer.push(l);
    }

    // Every edge must extend to a first-middle-third triple it belongs to.
    let on_triple = |m: &Edge| -> bool {
        net.edges
            .iter()
            .any(|f| layer[f.id] == Layer::First && f.head == m.tail)
            && net
                .edges
                .iter()
                .any(|g| layer[g.id] == Layer::Third && g.tail == m.head)
    };
    for e in &net.edges {
        let ok = match layer[e.id] {
            Layer::Middle => on_triple(e),
            Layer::First => net
                .edges
                .iter()
                .any(|m| layer[m.id] == Layer::Middle && m.tail == e.head && on_triple(m)),
            Layer::Third => net
                .edges
                .iter()
                .any(|m| layer[m.id] == Layer::Middle && m.head == e.tail && on_triple(m)),
        };
        if !ok {
            return Err(NotThreeLayer(format!(
                "edge {} lies on no length-3 source-sink path",
                e.doc_id
            )));
        }
    }

    let mut middle = Vec::new();
    let mut alpha = BTreeMap::new();
    let mut beta = BTreeMap::new();
    for e in &net.edges {
        if layer[e.id] != Layer::Middle {
            continue;
        }
        middle.push(e.id);
        let a: BTreeSet<usize> = net
            .sessions
            .iter()
            .filter(|s| {
                net.edges
                    .iter()
                    .any(|f| layer[f.id] == Layer::First && f.tail == s.source && f.head == e.tail)
            })
            .map(|s| s.id)
            .collect();
        let b: BTreeSet<usize> = net
            .sessions
            .iter()
            .filter(|s| {
                net.edges.iter().any(|g| {
                    layer[g.id] == Layer::Third
                        && g.tail == e.head
                        && s.sinks.contains(&g.head)
                })
            })
            .map(|s| s.id)
            .collect();
        alpha.insert(e.id, a);
        beta.insert(e.id, b);
    }
    Ok(ThreeLayerView { middle, alpha, beta })
}
