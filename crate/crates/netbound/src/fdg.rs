//! Functional dependence graphs and determination procedures.
//!
//! An FDG asserts that every node is a function of its parents. Two
//! constructions are built from a network: construction A over source and
//! edge variables only, and construction B which adds one decoded-estimate
//! node per (session, sink) pair. The closure procedures delete everything a
//! seed set determines; d-/fd-separation certify conditional independence.

use crate::bitset::{NodeSet, MAX_NODES};
use crate::model::Network;
use std::collections::VecDeque;

/// What a graph node stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// Source variable of a session.
    Source { session: usize },
    /// Variable carried on a network edge.
    EdgeVar { edge: usize },
    /// Decoded estimate of `session` at sink node `sink` (construction B).
    Estimate { session: usize, sink: usize },
    /// A node of a hand-built graph with no network meaning.
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdgNode {
    pub kind: NodeKind,
    pub name: String,
}

/// Which construction produced the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    ConstructionA,
    ConstructionB,
    Generic,
}

/// Which determination procedure a closure runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClosureKind {
    /// Plain deletion cascade; accepts any graph.
    PhiA,
    /// Cascade plus the all-estimates rule; construction B only.
    PhiB,
    /// Cascade plus source-ancestry pruning and the fd-separation estimate
    /// rule for independent sources; construction B only.
    Psi,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FdgError {
    /// Closure kind requires a construction-B graph.
    KindMismatch { kind: ClosureKind, graph: GraphKind },
    /// Separation queries need pairwise disjoint sets.
    OverlappingSets,
    /// More nodes than a `NodeSet` can index.
    TooManyNodes(usize),
}

impl std::fmt::Display for FdgError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FdgError::KindMismatch { kind, graph } => {
                write!(f, "{kind:?} closure is not defined on a {graph:?} graph")
            }
            FdgError::OverlappingSets => write!(f, "separation sets must be disjoint"),
            FdgError::TooManyNodes(n) => write!(f, "graph has {n} nodes, limit is {MAX_NODES}"),
        }
    }
}

impl std::error::Error for FdgError {}

/// A functional dependence graph. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Fdg {
    pub kind: GraphKind,
    pub nodes: Vec<FdgNode>,
    /// Directed edges as (from, to) pairs.
    pub edge_list: Vec<(usize, usize)>,
    out_eids: Vec<Vec<usize>>,
    in_eids: Vec<Vec<usize>>,
}

impl Fdg {
    pub fn new(kind: GraphKind, nodes: Vec<FdgNode>, edge_list: Vec<(usize, usize)>) -> Fdg {
        assert!(nodes.len() <= MAX_NODES, "graph too large for NodeSet");
        let mut out_eids = vec![Vec::new(); nodes.len()];
        let mut in_eids = vec![Vec::new(); nodes.len()];
        for (i, &(u, v)) in edge_list.iter().enumerate() {
            out_eids[u].push(i);
            in_eids[v].push(i);
        }
        Fdg { kind, nodes, edge_list, out_eids, in_eids }
    }

    /// A hand-built graph of anonymous nodes, for tests and experiments.
    pub fn generic(n: usize, edges: &[(usize, usize)]) -> Fdg {
        let nodes = (0..n)
            .map(|i| FdgNode { kind: NodeKind::Plain, name: format!("X{}", i + 1) })
            .collect();
        Fdg::new(GraphKind::Generic, nodes, edges.to_vec())
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::full(self.num_nodes())
    }

    pub fn parents(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.in_eids[v].iter().map(move |&e| self.edge_list[e].0)
    }

    pub fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_eids[v].iter().map(move |&e| self.edge_list[e].1)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_eids[v].len()
    }

    pub fn is_source_node(&self, v: usize) -> bool {
        matches!(self.nodes[v].kind, NodeKind::Source { .. })
    }

    pub fn is_estimate_node(&self, v: usize) -> bool {
        matches!(self.nodes[v].kind, NodeKind::Estimate { .. })
    }

    /// Node set of all estimate nodes.
    pub fn estimate_nodes(&self) -> NodeSet {
        NodeSet::from_iter((0..self.num_nodes()).filter(|&v| self.is_estimate_node(v)))
    }

    /// Node id of session `s`'s source variable, if present.
    pub fn source_of_session(&self, s: usize) -> Option<usize> {
        (0..self.num_nodes())
            .find(|&v| matches!(self.nodes[v].kind, NodeKind::Source { session } if session == s))
    }

    /// Estimate node ids of session `s`, ascending by sink node id.
    pub fn estimates_of_session(&self, s: usize) -> Vec<usize> {
        let mut out: Vec<(usize, usize)> = (0..self.num_nodes())
            .filter_map(|v| match self.nodes[v].kind {
                NodeKind::Estimate { session, sink } if session == s => Some((sink, v)),
                _ => None,
            })
            .collect();
        out.sort();
        out.into_iter().map(|(_, v)| v).collect()
    }

    /// Sessions that have at least one estimate node, ascending.
    fn sessions_with_estimates(&self) -> Vec<usize> {
        let mut s: Vec<usize> = (0..self.num_nodes())
            .filter_map(|v| match self.nodes[v].kind {
                NodeKind::Estimate { session, .. } => Some(session),
                _ => None,
            })
            .collect();
        s.sort();
        s.dedup();
        s
    }

    /// Nodes treated as information sources by separation procedures:
    /// source variables and parentless nodes (they coincide on Kramer-style
    /// graphs such as the construction-B subgraph without estimate edges).
    fn source_like(&self, v: usize) -> bool {
        self.is_source_node(v) || self.in_degree(v) == 0
    }
}

/// Build the construction-A graph: nodes for every source and edge variable,
/// encoder edges into each edge variable, decoder edges from each sink's
/// incoming edge variables straight into the demanded source variable.
pub fn build_construction_a(net: &Network) -> Fdg {
    let (nodes, mut edges, edge_var) = encoder_skeleton(net);
    for s in &net.sessions {
        for &u in &s.sinks {
            for e in &net.edges {
                if e.head == u {
                    edges.push((edge_var[e.id], s.id));
                }
            }
        }
    }
    Fdg::new(GraphKind::ConstructionA, nodes, edges)
}

/// Build the construction-B graph: construction A's encoder edges, one
/// estimate node per (session, sink) fed by that sink's incoming edge
/// variables, and an edge from every estimate into its source variable.
pub fn build_construction_b(net: &Network) -> Fdg {
    let (mut nodes, mut edges, edge_var) = encoder_skeleton(net);
    for s in &net.sessions {
        for &u in &s.sinks {
            let est = nodes.len();
            nodes.push(FdgNode {
                kind: NodeKind::Estimate { session: s.id, sink: u },
                name: format!("Yhat{}@{}", s.id + 1, net.node_labels[u]),
            });
            for e in &net.edges {
                if e.head == u {
                    edges.push((edge_var[e.id], est));
                }
            }
            edges.push((est, s.id));
        }
    }
    Fdg::new(GraphKind::ConstructionB, nodes, edges)
}

/// Sources, edge variables and encoder edges shared by both constructions.
fn encoder_skeleton(net: &Network) -> (Vec<FdgNode>, Vec<(usize, usize)>, Vec<usize>) {
    let mut nodes: Vec<FdgNode> = net
        .sessions
        .iter()
        .map(|s| FdgNode { kind: NodeKind::Source { session: s.id }, name: format!("Y{}", s.id + 1) })
        .collect();
    let mut edge_var = Vec::with_capacity(net.num_edges());
    for e in &net.edges {
        edge_var.push(nodes.len());
        nodes.push(FdgNode { kind: NodeKind::EdgeVar { edge: e.id }, name: format!("U{}", e.id + 1) });
    }
    let mut edges = Vec::new();
    for e in &net.edges {
        for s in &net.sessions {
            if s.source == e.tail {
                edges.push((s.id, edge_var[e.id]));
            }
        }
        for f in &net.edges {
            if f.head == e.tail {
                edges.push((edge_var[f.id], edge_var[e.id]));
            }
        }
    }
    (nodes, edges, edge_var)
}

/// Drop every edge whose head is a source variable. On a construction-B
/// graph this leaves the acyclic Kramer-style graph whose only parentless
/// nodes are the sources.
pub fn subgraph_gbar(g: &Fdg) -> Result<Fdg, FdgError> {
    if g.kind != GraphKind::ConstructionB {
        return Err(FdgError::KindMismatch { kind: ClosureKind::PhiB, graph: g.kind });
    }
    let edges: Vec<(usize, usize)> = g
        .edge_list
        .iter()
        .copied()
        .filter(|&(_, v)| !g.is_source_node(v))
        .collect();
    Ok(Fdg::new(GraphKind::Generic, g.nodes.clone(), edges))
}

/// Mutable deletion state shared by the closure procedures.
struct Cascade<'g> {
    g: &'g Fdg,
    edge_alive: Vec<bool>,
    in_alive: Vec<usize>,
    deleted: Vec<bool>,
    worklist: VecDeque<usize>,
}

impl<'g> Cascade<'g> {
    fn new(g: &'g Fdg) -> Cascade<'g> {
        Cascade {
            g,
            edge_alive: vec![true; g.edge_list.len()],
            in_alive: (0..g.num_nodes()).map(|v| g.in_degree(v)).collect(),
            deleted: vec![false; g.num_nodes()],
            worklist: VecDeque::new(),
        }
    }

    fn kill_edge(&mut self, eid: usize) {
        if self.edge_alive[eid] {
            self.edge_alive[eid] = false;
            let head = self.g.edge_list[eid].1;
            self.in_alive[head] -= 1;
            if self.in_alive[head] == 0 {
                self.worklist.push_back(head);
            }
        }
    }

    fn remove_out_edges(&mut self, v: usize) {
        for eid in self.g.out_eids[v].clone() {
            self.kill_edge(eid);
        }
    }

    fn delete_node(&mut self, v: usize) {
        if self.deleted[v] {
            return;
        }
        self.deleted[v] = true;
        self.remove_out_edges(v);
        for eid in self.g.in_eids[v].clone() {
            self.edge_alive[eid] = false;
        }
    }

    /// Nodes whose alive in-degree fell to zero are deleted, unless they had
    /// no parents to begin with: originally parentless nodes are constants
    /// of the graph and never cascade away.
    fn run(&mut self) {
        while let Some(v) = self.worklist.pop_front() {
            if !self.deleted[v] && self.in_alive[v] == 0 && self.g.in_degree(v) > 0 {
                self.delete_node(v);
            }
        }
    }

    fn alive(&self, v: usize) -> bool {
        !self.deleted[v]
    }

    fn deleted_set(&self) -> NodeSet {
        NodeSet::from_iter((0..self.g.num_nodes()).filter(|&v| self.deleted[v]))
    }

    /// Alive nodes forward-reachable from an alive source-variable node.
    fn reachable_from_sources(&self) -> NodeSet {
        let mut seen = NodeSet::EMPTY;
        let mut stack = Vec::new();
        for v in 0..self.g.num_nodes() {
            if self.alive(v) && self.g.is_source_node(v) {
                seen.insert(v);
                stack.push(v);
            }
        }
        while let Some(v) = stack.pop() {
            for &eid in &self.g.out_eids[v] {
                let w = self.g.edge_list[eid].1;
                if self.edge_alive[eid] && self.alive(w) && !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Delete alive non-source nodes unreachable from every alive source,
    /// alternating with the in-degree cascade until stable.
    fn prune_no_source_ancestry(&mut self) {
        loop {
            self.run();
            let reach = self.reachable_from_sources();
            let mut changed = false;
            for v in 0..self.g.num_nodes() {
                if self.alive(v) && !self.g.is_source_node(v) && !reach.contains(v) {
                    self.delete_node(v);
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }

    /// Estimate rule shared by the phi-B and psi procedures: wipe out every
    /// estimate of `session` and cascade.
    fn delete_session_estimates(&mut self, session: usize) -> bool {
        let mut changed = false;
        for est in self.g.estimates_of_session(session) {
            if self.alive(est) {
                self.delete_node(est);
                changed = true;
            }
        }
        self.run();
        changed
    }

    /// Is `src_node` disconnected (undirected) from `est_node` in the
    /// ancestral part, with respect to {src, est} ∪ seed, of the alive graph
    /// with estimate-to-source edges removed?
    fn fd_disconnected(&self, src_node: usize, est_node: usize, seed: NodeSet) -> bool {
        if self.deleted[src_node] || self.deleted[est_node] {
            return true;
        }
        let gbar_edge = |eid: usize| {
            let (u, v) = self.g.edge_list[eid];
            self.edge_alive[eid]
                && self.alive(u)
                && self.alive(v)
                && !self.g.is_source_node(v)
        };
        // Ancestral node set over the alive Gbar edges.
        let mut members = NodeSet::from_iter(
            seed.iter()
                .filter(|&v| self.alive(v))
                .chain([src_node, est_node]),
        );
        let mut stack: Vec<usize> = members.iter().collect();
        while let Some(v) = stack.pop() {
            for &eid in &self.g.in_eids[v] {
                if gbar_edge(eid) {
                    let u = self.g.edge_list[eid].0;
                    if !members.contains(u) {
                        members.insert(u);
                        stack.push(u);
                    }
                }
            }
        }
        // Undirected reachability within the ancestral part.
        let mut seen = NodeSet::singleton(src_node);
        let mut stack = vec![src_node];
        while let Some(v) = stack.pop() {
            if v == est_node {
                return false;
            }
            let neighbours = self.g.out_eids[v].iter().chain(self.g.in_eids[v].iter());
            for &eid in neighbours {
                if !gbar_edge(eid) {
                    continue;
                }
                let (a, b) = self.g.edge_list[eid];
                let w = if a == v { b } else { a };
                if members.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        true
    }
}

/// Deleted-node set of the determination procedure selected by `kind`,
/// started from seed set `a`. The result may contain members of `a` itself
/// when the cascade consumes them.
pub fn closure(g: &Fdg, a: NodeSet, kind: ClosureKind) -> Result<NodeSet, FdgError> {
    closure_scanning(g, a, kind, false)
}

/// Like [`closure`] but lets tests flip the (session, sink) scan order to
/// confirm the fixpoint does not depend on it.
#[doc(hidden)]
pub fn closure_scanning(
    g: &Fdg,
    a: NodeSet,
    kind: ClosureKind,
    reverse_scan: bool,
) -> Result<NodeSet, FdgError> {
    if kind != ClosureKind::PhiA && g.kind != GraphKind::ConstructionB {
        return Err(FdgError::KindMismatch { kind, graph: g.kind });
    }
    let scan = |mut sessions: Vec<usize>| {
        if reverse_scan {
            sessions.reverse();
        }
        sessions
    };
    let mut c = Cascade::new(g);
    for v in a.iter() {
        c.remove_out_edges(v);
    }
    match kind {
        ClosureKind::PhiA => c.run(),
        ClosureKind::PhiB => {
            c.run();
            loop {
                let mut changed = false;
                for s in scan(g.sessions_with_estimates()) {
                    let ests = g.estimates_of_session(s);
                    let any_deleted = ests.iter().any(|&e| c.deleted[e]);
                    let any_alive = ests.iter().any(|&e| c.alive(e));
                    if any_deleted && any_alive {
                        changed |= c.delete_session_estimates(s);
                    }
                }
                if !changed {
                    break;
                }
            }
        }
        ClosureKind::Psi => {
            c.prune_no_source_ancestry();
            loop {
                let mut changed = false;
                for s in scan(g.sessions_with_estimates()) {
                    let ests = g.estimates_of_session(s);
                    if ests.iter().all(|&e| c.deleted[e]) {
                        continue;
                    }
                    let y = match g.source_of_session(s) {
                        Some(y) => y,
                        None => continue,
                    };
                    let separated = ests
                        .iter()
                        .any(|&e| c.deleted[e] || c.fd_disconnected(y, e, a));
                    if separated {
                        changed |= c.delete_session_estimates(s);
                        c.prune_no_source_ancestry();
                    }
                }
                if !changed {
                    break;
                }
            }
        }
    }
    Ok(c.deleted_set())
}

/// Nodes with a directed path into some member of `a`, excluding `a`.
pub fn ancestors(g: &Fdg, a: NodeSet) -> NodeSet {
    let mut seen = NodeSet::EMPTY;
    let mut stack: Vec<usize> = a.iter().collect();
    while let Some(v) = stack.pop() {
        for u in g.parents(v) {
            if !seen.contains(u) {
                seen.insert(u);
                stack.push(u);
            }
        }
    }
    seen.minus(a)
}

fn check_disjoint(a: NodeSet, b: NodeSet, c: NodeSet) -> Result<(), FdgError> {
    if a.is_disjoint(b) && a.is_disjoint(c) && b.is_disjoint(c) {
        Ok(())
    } else {
        Err(FdgError::OverlappingSets)
    }
}

/// d-separation: are `a` and `b` disconnected, in the undirected sense, in
/// the ancestral graph of `a ∪ b ∪ c` once the edges leaving `c` are gone?
pub fn d_separates(g: &Fdg, a: NodeSet, b: NodeSet, c: NodeSet) -> Result<bool, FdgError> {
    check_disjoint(a, b, c)?;
    Ok(separated(g, a, b, c, false))
}

/// fd-separation: d-separation plus recursive removal of every edge that has
/// no source node among its ancestors.
pub fn fd_separates(g: &Fdg, a: NodeSet, b: NodeSet, c: NodeSet) -> Result<bool, FdgError> {
    check_disjoint(a, b, c)?;
    Ok(separated(g, a, b, c, true))
}

fn separated(g: &Fdg, a: NodeSet, b: NodeSet, c: NodeSet, fd: bool) -> bool {
    let all = a.union(b).union(c);
    let members = all.union(ancestors_within(g, all));
    // Edge alive: both ends ancestral, tail not in the conditioning set.
    let mut alive: Vec<bool> = g
        .edge_list
        .iter()
        .map(|&(u, v)| members.contains(u) && members.contains(v) && !c.contains(u))
        .collect();
    if fd {
        // Keep only edges whose tail descends from a source-like node.
        let mut reach = NodeSet::EMPTY;
        let mut stack = Vec::new();
        for v in members.iter() {
            if g.source_like(v) {
                reach.insert(v);
                stack.push(v);
            }
        }
        while let Some(v) = stack.pop() {
            for &eid in &g.out_eids[v] {
                let w = g.edge_list[eid].1;
                if alive[eid] && !reach.contains(w) {
                    reach.insert(w);
                    stack.push(w);
                }
            }
        }
        for (eid, &(u, _)) in g.edge_list.iter().enumerate() {
            if alive[eid] && !reach.contains(u) {
                alive[eid] = false;
            }
        }
    }
    // Undirected reachability from a; separated iff we never touch b.
    let mut seen = a;
    let mut stack: Vec<usize> = a.iter().collect();
    while let Some(v) = stack.pop() {
        for (eid, &(x, y)) in g.edge_list.iter().enumerate() {
            if !alive[eid] {
                continue;
            }
            let w = if x == v {
                y
            } else if y == v {
                x
            } else {
                continue;
            };
            if !seen.contains(w) {
                if b.contains(w) {
                    return false;
                }
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    true
}

fn ancestors_within(g: &Fdg, a: NodeSet) -> NodeSet {
    let mut seen = NodeSet::EMPTY;
    let mut stack: Vec<usize> = a.iter().collect();
    while let Some(v) = stack.pop() {
        for u in g.parents(v) {
            if !seen.contains(u) {
                seen.insert(u);
                stack.push(u);
            }
        }
    }
    seen
}

/// Kahn topological order, or a directed cycle as witness.
pub fn topological_sort(g: &Fdg) -> Result<Vec<usize>, Vec<usize>> {
    let n = g.num_nodes();
    let mut indeg: Vec<usize> = (0..n).map(|v| g.in_degree(v)).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for w in g.children(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Walk parent pointers inside the leftover subgraph until a repeat.
    let stuck: Vec<usize> = (0..n).filter(|&v| indeg[v] > 0).collect();
    let mut cur = stuck[0];
    let mut path = vec![cur];
    loop {
        let parent = g
            .parents(cur)
            .find(|p| indeg[*p] > 0)
            .expect("stuck node keeps a stuck parent");
        if let Some(pos) = path.iter().position(|&x| x == parent) {
            let mut cycle: Vec<usize> = path[pos..].to_vec();
            cycle.reverse();
            return Err(cycle);
        }
        path.push(parent);
        cur = parent;
    }
}

/// Is the graph free of directed cycles?
pub fn is_acyclic(g: &Fdg) -> bool {
    topological_sort(g).is_ok()
}

/// DOT rendering with the node-id table embedded as comments.
pub fn dot_dump(g: &Fdg) -> String {
    let mut out = String::from("digraph fdg {\n");
    for (i, node) in g.nodes.iter().enumerate() {
        out.push_str(&format!("  // {} = {}\n", i + 1, node.name));
    }
    for (i, node) in g.nodes.iter().enumerate() {
        out.push_str(&format!("  n{} [label=\"{}\"];\n", i + 1, node.name));
    }
    for &(u, v) in &g.edge_list {
        out.push_str(&format!("  n{} -> n{};\n", u + 1, v + 1));
    }
    out.push_str("}\n");
    out
}

/// The sidecar listing: one `id<TAB>name` line per node, 1-based.
pub fn id_table(g: &Fdg) -> String {
    let mut out = String::new();
    for (i, node) in g.nodes.iter().enumerate() {
        out.push_str(&format!("{}\t{}\n", i + 1, node.name));
    }
    out
}
