//! Outer-bound regions and their comparison.
//!
//! Every region here is a box over weighted session-rate inequalities: a map
//! from nonempty session subsets W to rational constants, read as
//! `sum of rates over W <= c_W` in independent mode or as a bound on the
//! conditional source entropy `h(Y_W | Y_{W^c}) <= c_W` in correlated mode.
//! Constants are raw per-subset minima; no cross-subset tightening is done.

use crate::bitset::NodeSet;
use crate::fdg::{
    build_construction_a, build_construction_b, subgraph_gbar, ClosureKind, Fdg, FdgError,
    NodeKind,
};
use crate::maxsets::{all_max_sets_cyclic, MaxSetError};
use crate::model::{three_layer_view, Network, NotThreeLayer};
use crate::rational::{format_rational, parse_rational};
use num_rational::BigRational;
use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

/// How a region's constants are to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Constants bound conditional source entropies h(Y_W | Y_{W^c}).
    Correlated,
    /// Constants bound rate sums over W.
    Independent,
}

/// A per-subset constant; unbounded directions use the infinity sentinel,
/// which compares greater than every rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegionValue {
    Finite(BigRational),
    Infinite,
}

impl RegionValue {
    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            RegionValue::Finite(v) => Some(v),
            RegionValue::Infinite => None,
        }
    }

    fn min_with(&mut self, candidate: BigRational) {
        match self {
            RegionValue::Infinite => *self = RegionValue::Finite(candidate),
            RegionValue::Finite(cur) => {
                if candidate < *cur {
                    *cur = candidate;
                }
            }
        }
    }
}

impl PartialOrd for RegionValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RegionValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (RegionValue::Infinite, RegionValue::Infinite) => Ordering::Equal,
            (RegionValue::Infinite, RegionValue::Finite(_)) => Ordering::Greater,
            (RegionValue::Finite(_), RegionValue::Infinite) => Ordering::Less,
            (RegionValue::Finite(a), RegionValue::Finite(b)) => a.cmp(b),
        }
    }
}

/// An outer bound: one constant per nonempty session subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub mode: Mode,
    pub num_sessions: usize,
    /// Keyed by session bitmask (bit s = session s), nonempty masks only.
    pub constants: BTreeMap<u32, RegionValue>,
    /// Which bound produced it, e.g. "fd:psi" or "cutset".
    pub provenance: String,
}

impl Region {
    fn empty(mode: Mode, num_sessions: usize, provenance: &str) -> Region {
        let mut constants = BTreeMap::new();
        for w in 1u32..(1 << num_sessions) {
            constants.insert(w, RegionValue::Infinite);
        }
        Region { mode, num_sessions, constants, provenance: provenance.to_string() }
    }

    pub fn constant(&self, w: u32) -> &RegionValue {
        &self.constants[&w]
    }

    /// Same constants under the other reading; used when relating the
    /// correlated-mode bounds to independent-source ones.
    pub fn reinterpret(&self, mode: Mode) -> Region {
        Region {
            mode,
            num_sessions: self.num_sessions,
            constants: self.constants.clone(),
            provenance: self.provenance.clone(),
        }
    }

    /// Session subsets ascending by size, then lexicographic on sorted ids.
    fn ordered_masks(&self) -> Vec<u32> {
        let mut masks: Vec<u32> = self.constants.keys().copied().collect();
        masks.sort_by_key(|m| {
            (
                m.count_ones(),
                (0..self.num_sessions).filter(|s| m & (1 << s) != 0).collect::<Vec<_>>(),
            )
        });
        masks
    }

    /// One line per subset: `sum{1,2} <= 4` (independent) or `H{1|2} <= 3`
    /// (correlated, members left of the bar, complement right of it).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for w in self.ordered_masks() {
            let members: Vec<String> = (0..self.num_sessions)
                .filter(|s| w & (1 << s) != 0)
                .map(|s| (s + 1).to_string())
                .collect();
            let value = match &self.constants[&w] {
                RegionValue::Finite(v) => format_rational(v),
                RegionValue::Infinite => "inf".to_string(),
            };
            match self.mode {
                Mode::Independent => {
                    out.push_str(&format!("sum{{{}}} <= {}\n", members.join(","), value));
                }
                Mode::Correlated => {
                    let rest: Vec<String> = (0..self.num_sessions)
                        .filter(|s| w & (1 << s) == 0)
                        .map(|s| (s + 1).to_string())
                        .collect();
                    out.push_str(&format!(
                        "H{{{}|{}}} <= {}\n",
                        members.join(","),
                        rest.join(","),
                        value
                    ));
                }
            }
        }
        out
    }

    /// Parse the text format back; the number of sessions is inferred from
    /// the largest session id mentioned.
    pub fn parse_text(text: &str) -> Result<Region, String> {
        let mut mode = None;
        let mut entries: Vec<(Vec<usize>, RegionValue)> = Vec::new();
        let mut max_session = 0usize;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (m, body) = if let Some(rest) = line.strip_prefix("sum{") {
                (Mode::Independent, rest)
            } else if let Some(rest) = line.strip_prefix("H{") {
                (Mode::Correlated, rest)
            } else {
                return Err(format!("unrecognized region line: {line}"));
            };
            if *mode.get_or_insert(m) != m {
                return Err("mixed sum/H lines in one region".to_string());
            }
            let (head, value_str) = body
                .split_once("} <= ")
                .ok_or_else(|| format!("missing `}} <= ` in line: {line}"))?;
            let members_str = match m {
                Mode::Independent => head,
                Mode::Correlated => {
                    let (w, rest) = head
                        .split_once('|')
                        .ok_or_else(|| format!("missing `|` in line: {line}"))?;
                    for part in rest.split(',').filter(|p| !p.is_empty()) {
                        let id: usize =
                            part.parse().map_err(|_| format!("bad session id {part}"))?;
                        max_session = max_session.max(id);
                    }
                    w
                }
            };
            let mut members = Vec::new();
            for part in members_str.split(',').filter(|p| !p.is_empty()) {
                let id: usize = part.parse().map_err(|_| format!("bad session id {part}"))?;
                max_session = max_session.max(id);
                members.push(id - 1);
            }
            let value = if value_str == "inf" {
                RegionValue::Infinite
            } else {
                RegionValue::Finite(parse_rational(value_str)?)
            };
            entries.push((members, value));
        }
        let mode = mode.ok_or("empty region text")?;
        let mut region = Region::empty(mode, max_session, "parsed");
        for (members, value) in entries {
            let mask = members.iter().fold(0u32, |m, s| m | (1 << s));
            if mask == 0 {
                return Err("empty session subset in region text".to_string());
            }
            region.constants.insert(mask, value);
        }
        Ok(region)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundsError {
    Fdg(FdgError),
    MaxSets(String),
    NotThreeLayer(String),
    /// The exhaustive search refuses networks above the edge guard.
    GuardExceeded { edges: usize, guard: usize },
    /// Regions over different modes or session sets cannot be compared.
    ModeMismatch,
}

impl std::fmt::Display for BoundsError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundsError::Fdg(e) => write!(f, "{e}"),
            BoundsError::MaxSets(e) => write!(f, "{e}"),
            BoundsError::NotThreeLayer(e) => write!(f, "{e}"),
            BoundsError::GuardExceeded { edges, guard } => {
                write!(f, "network has {edges} edges, search guard is {guard}")
            }
            BoundsError::ModeMismatch => write!(f, "regions have different modes or sessions"),
        }
    }
}

impl std::error::Error for BoundsError {}

impl From<FdgError> for BoundsError {
    fn from(e: FdgError) -> Self {
        BoundsError::Fdg(e)
    }
}

impl From<MaxSetError> for BoundsError {
    fn from(e: MaxSetError) -> Self {
        BoundsError::MaxSets(e.to_string())
    }
}

impl From<NotThreeLayer> for BoundsError {
    fn from(e: NotThreeLayer) -> Self {
        BoundsError::NotThreeLayer(e.to_string())
    }
}

/// The functional dependence bound. `PhiA` runs on construction A, `PhiB`
/// and `Psi` on construction B; the first two bound conditional entropies of
/// correlated sources, `Psi` bounds rate sums of independent ones.
///
/// For a subset W the constant is the cheapest maximal irreducible set made
/// of edge variables plus sources from the complement of W only (estimate
/// nodes never appear in enumerated sets).
pub fn fd_region(net: &Network, kind: ClosureKind) -> Result<Region, BoundsError> {
    let g = match kind {
        ClosureKind::PhiA => build_construction_a(net),
        ClosureKind::PhiB | ClosureKind::Psi => build_construction_b(net),
    };
    let collection = all_max_sets_cyclic(&g, NodeSet::EMPTY, kind)?;
    let mode = match kind {
        ClosureKind::Psi => Mode::Independent,
        _ => Mode::Correlated,
    };
    let name = match kind {
        ClosureKind::PhiA => "fd:phiA",
        ClosureKind::PhiB => "fd:phiB",
        ClosureKind::Psi => "fd:psi",
    };
    let mut region = Region::empty(mode, net.num_sessions(), name);
    for set in &collection.sets {
        let mut session_mask = 0u32;
        let mut cost = BigRational::zero();
        for v in set.iter() {
            match g.nodes[v].kind {
                NodeKind::Source { session } => session_mask |= 1 << session,
                NodeKind::EdgeVar { edge } => cost += &net.edges[edge].capacity,
                NodeKind::Estimate { .. } | NodeKind::Plain => {
                    unreachable!("only sources and edge variables are members")
                }
            }
        }
        for w in 1u32..(1 << net.num_sessions()) {
            if session_mask & w == 0 {
                region.constants.get_mut(&w).unwrap().min_with(cost.clone());
            }
        }
    }
    Ok(region)
}

/// The cut-set bound, by exhaustive enumeration of node cuts. Valid for
/// correlated sources as well.
pub fn cut_set_region(net: &Network) -> Region {
    let mut region = Region::empty(Mode::Correlated, net.num_sessions(), "cutset");
    let n = net.num_nodes();
    for w in 1u32..(1 << net.num_sessions()) {
        let sessions: Vec<usize> =
            (0..net.num_sessions()).filter(|s| w & (1 << s) != 0).collect();
        for t in 0u64..(1 << n) {
            let inside = |v: usize| t & (1 << v) != 0;
            let ok = sessions.iter().all(|&s| {
                inside(net.sessions[s].source)
                    && net.sessions[s].sinks.iter().any(|&u| !inside(u))
            });
            if !ok {
                continue;
            }
            let mut cost = BigRational::zero();
            for e in &net.edges {
                if inside(e.tail) && !inside(e.head) {
                    cost += &e.capacity;
                }
            }
            region.constants.get_mut(&w).unwrap().min_with(cost);
        }
    }
    region
}

/// Reading of the permutation filter in the network sharing bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NsQuantifier {
    /// `s_i` precedes every demanded session of the edge (default).
    ForAll,
    /// `s_i` precedes at least one demanded session of the edge.
    Exists,
}

/// The network sharing bound for three-layer unicast networks: minimise the
/// shared middle-edge cost over all orderings of the subset's sessions.
pub fn network_sharing_region(
    net: &Network,
    quantifier: NsQuantifier,
) -> Result<Region, BoundsError> {
    let view = three_layer_view(net)?;
    let mut region = Region::empty(Mode::Independent, net.num_sessions(), "ns");
    for w in 1u32..(1 << net.num_sessions()) {
        let sessions: Vec<usize> =
            (0..net.num_sessions()).filter(|s| w & (1 << s) != 0).collect();
        for order in permutations(&sessions) {
            let rank = |s: usize| order.iter().position(|&x| x == s);
            let mut cost = BigRational::zero();
            for &e in &view.middle {
                let beta_w: Vec<usize> = view.beta[&e]
                    .iter()
                    .copied()
                    .filter(|s| w & (1 << s) != 0)
                    .collect();
                if beta_w.is_empty() {
                    continue;
                }
                // W[beta(e)]: sessions of W that precede beta(e) in the order.
                let precedes = |si: usize| {
                    let ri = rank(si).unwrap();
                    match quantifier {
                        NsQuantifier::ForAll => beta_w.iter().all(|&sj| ri < rank(sj).unwrap()),
                        NsQuantifier::Exists => beta_w.iter().any(|&sj| ri < rank(sj).unwrap()),
                    }
                };
                let alpha_w_escapes = view.alpha[&e]
                    .iter()
                    .copied()
                    .filter(|s| w & (1 << s) != 0)
                    .any(|s| !precedes(s));
                if alpha_w_escapes {
                    cost += &net.edges[e].capacity;
                }
            }
            region.constants.get_mut(&w).unwrap().min_with(cost);
        }
    }
    Ok(region)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest: Vec<usize> = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Progressive d-separating edge-set bound, run on the construction-B
/// subgraph without estimate-to-source edges. Edge sets are searched in
/// ascending cost order, so the first passing set is the constant.
/// `improved` restricts each disconnection test to the ancestral part of
/// the session and its estimates, which tightens the bound.
pub fn pde_region(net: &Network, improved: bool, guard: usize) -> Result<Region, BoundsError> {
    if net.num_edges() > guard {
        return Err(BoundsError::GuardExceeded { edges: net.num_edges(), guard });
    }
    let g = build_construction_b(net);
    let gbar = subgraph_gbar(&g)?;
    let edge_node: Vec<usize> = (0..net.num_edges())
        .map(|e| {
            (0..gbar.num_nodes())
                .find(|&v| matches!(gbar.nodes[v].kind, NodeKind::EdgeVar { edge } if edge == e))
                .expect("edge variable present")
        })
        .collect();
    let name = if improved { "pde:improved" } else { "pde:plain" };
    let mut region = Region::empty(Mode::Independent, net.num_sessions(), name);
    for w in 1u32..(1 << net.num_sessions()) {
        let sessions: Vec<usize> =
            (0..net.num_sessions()).filter(|s| w & (1 << s) != 0).collect();
        let orders = permutations(&sessions);
        if let Some(cost) = cheapest_pde_set(net, &gbar, &edge_node, w, &orders, improved) {
            region.constants.get_mut(&w).unwrap().min_with(cost);
        }
    }
    Ok(region)
}

/// Does a specific edge set pass the (improved) procedure for subset `w`
/// under some ordering of its sessions?
pub fn pde_set_passes(
    net: &Network,
    edges: &[usize],
    w: u32,
    improved: bool,
) -> Result<bool, BoundsError> {
    let g = build_construction_b(net);
    let gbar = subgraph_gbar(&g)?;
    let edge_node: Vec<usize> = (0..net.num_edges())
        .map(|e| {
            (0..gbar.num_nodes())
                .find(|&v| matches!(gbar.nodes[v].kind, NodeKind::EdgeVar { edge } if edge == e))
                .expect("edge variable present")
        })
        .collect();
    let sessions: Vec<usize> = (0..net.num_sessions()).filter(|s| w & (1 << s) != 0).collect();
    Ok(permutations(&sessions)
        .iter()
        .any(|order| pde_passes(&gbar, &edge_node, edges, w, order, improved)))
}

/// The progressive d-separation constant for a single session subset.
pub fn pde_constant(
    net: &Network,
    w: u32,
    improved: bool,
    guard: usize,
) -> Result<RegionValue, BoundsError> {
    if net.num_edges() > guard {
        return Err(BoundsError::GuardExceeded { edges: net.num_edges(), guard });
    }
    let g = build_construction_b(net);
    let gbar = subgraph_gbar(&g)?;
    let edge_node: Vec<usize> = (0..net.num_edges())
        .map(|e| {
            (0..gbar.num_nodes())
                .find(|&v| matches!(gbar.nodes[v].kind, NodeKind::EdgeVar { edge } if edge == e))
                .expect("edge variable present")
        })
        .collect();
    let sessions: Vec<usize> = (0..net.num_sessions()).filter(|s| w & (1 << s) != 0).collect();
    let orders = permutations(&sessions);
    Ok(match cheapest_pde_set(net, &gbar, &edge_node, w, &orders, improved) {
        Some(cost) => RegionValue::Finite(cost),
        None => RegionValue::Infinite,
    })
}

/// Min-cost edge subset passing the procedure for any of the given orders.
fn cheapest_pde_set(
    net: &Network,
    gbar: &Fdg,
    edge_node: &[usize],
    w: u32,
    orders: &[Vec<usize>],
    improved: bool,
) -> Option<BigRational> {
    #[derive(PartialEq, Eq)]
    struct Entry {
        cost: BigRational,
        mask: u64,
        next: usize,
    }
    impl Ord for Entry {
        fn cmp(&self, other: &Self) -> Ordering {
            other.cost.cmp(&self.cost).then(other.mask.cmp(&self.mask))
        }
    }
    impl PartialOrd for Entry {
        fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
            Some(self.cmp(other))
        }
    }
    let m = net.num_edges();
    let mut heap = BinaryHeap::new();
    heap.push(Entry { cost: BigRational::zero(), mask: 0, next: 0 });
    while let Some(Entry { cost, mask, next }) = heap.pop() {
        let edges: Vec<usize> = (0..m).filter(|e| mask & (1 << e) != 0).collect();
        if orders.iter().any(|order| pde_passes(gbar, edge_node, &edges, w, order, improved)) {
            return Some(cost);
        }
        for e in next..m {
            heap.push(Entry {
                cost: cost.clone() + &net.edges[e].capacity,
                mask: mask | (1 << e),
                next: e + 1,
            });
        }
    }
    None
}

/// One run of the (improved) progressive d-separation procedure.
fn pde_passes(
    gbar: &Fdg,
    edge_node: &[usize],
    a_edges: &[usize],
    w: u32,
    order: &[usize],
    improved: bool,
) -> bool {
    let n = gbar.num_nodes();
    // Step 1a: keep the ancestral part of the edge set, the subset's sources
    // and their estimates.
    let mut seeds = NodeSet::EMPTY;
    for &e in a_edges {
        seeds.insert(edge_node[e]);
    }
    for &s in order {
        if let Some(y) = gbar.source_of_session(s) {
            seeds.insert(y);
        }
        for est in gbar.estimates_of_session(s) {
            seeds.insert(est);
        }
    }
    let members = ancestral_closure(gbar, seeds, None);
    let mut alive: Vec<bool> = gbar
        .edge_list
        .iter()
        .map(|&(u, v)| members.contains(u) && members.contains(v))
        .collect();
    // Step 1b: cut the flow out of the chosen edges and the other sources.
    for &e in a_edges {
        remove_out_edges(gbar, &mut alive, edge_node[e]);
    }
    for v in 0..n {
        if let NodeKind::Source { session } = gbar.nodes[v].kind {
            if w & (1 << session) == 0 {
                remove_out_edges(gbar, &mut alive, v);
            }
        }
    }
    starve(gbar, &mut alive);
    // Step 2: session by session in the chosen order.
    for &s in order {
        let y = match gbar.source_of_session(s) {
            Some(y) => y,
            None => continue,
        };
        let ests = gbar.estimates_of_session(s);
        let scope = if improved {
            // The ancestral part of the session, its estimates and the
            // candidate edge set, over the edges still alive.
            let mut focus = NodeSet::singleton(y);
            for &e in &ests {
                focus.insert(e);
            }
            for &e in a_edges {
                focus.insert(edge_node[e]);
            }
            Some(ancestral_closure(gbar, focus, Some(&alive)))
        } else {
            None
        };
        let reachable = undirected_reach(gbar, &alive, y, scope.as_ref());
        // Disconnection from one estimate suffices: a decoded estimate
        // equals its source exactly, so the information is pinned as soon
        // as any single sink's copy is cut off.
        if !ests.is_empty() && ests.iter().all(|e| reachable.contains(*e)) {
            return false;
        }
        remove_out_edges(gbar, &mut alive, y);
        starve(gbar, &mut alive);
    }
    true
}

/// Seeds plus everything with a directed path into them, optionally over a
/// restricted live-edge set.
fn ancestral_closure(g: &Fdg, seeds: NodeSet, alive: Option<&Vec<bool>>) -> NodeSet {
    let mut seen = seeds;
    let mut stack: Vec<usize> = seeds.iter().collect();
    while let Some(v) = stack.pop() {
        for (eid, &(u, to)) in g.edge_list.iter().enumerate() {
            if to != v {
                continue;
            }
            if let Some(alive) = alive {
                if !alive[eid] {
                    continue;
                }
            }
            if !seen.contains(u) {
                seen.insert(u);
                stack.push(u);
            }
        }
    }
    seen
}

fn remove_out_edges(g: &Fdg, alive: &mut [bool], v: usize) {
    for (eid, &(u, _)) in g.edge_list.iter().enumerate() {
        if u == v {
            alive[eid] = false;
        }
    }
}

/// Starve the graph: repeatedly drop the out-edges of non-source nodes with
/// no live in-edges. On the acyclic host graph this removes exactly the
/// edges with no live path from a source variable.
fn starve(g: &Fdg, alive: &mut [bool]) {
    loop {
        let mut changed = false;
        for v in 0..g.num_nodes() {
            if matches!(g.nodes[v].kind, NodeKind::Source { .. }) {
                continue;
            }
            let has_in = g.edge_list.iter().enumerate().any(|(eid, &(_, to))| alive[eid] && to == v);
            if has_in {
                continue;
            }
            for (eid, &(u, _)) in g.edge_list.iter().enumerate() {
                if u == v && alive[eid] {
                    alive[eid] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// Undirected reachability from `start` over live edges, optionally fenced
/// into a node scope.
fn undirected_reach(g: &Fdg, alive: &[bool], start: usize, scope: Option<&NodeSet>) -> NodeSet {
    let inside = |v: usize| scope.map_or(true, |s| s.contains(v));
    if !inside(start) {
        return NodeSet::EMPTY;
    }
    let mut seen = NodeSet::singleton(start);
    let mut stack = vec![start];
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
            if inside(w) && !seen.contains(w) {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    seen
}

/// Outcome of a pointwise region comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionRelation {
    Equal,
    /// Left region is strictly contained; witness subset where it is tighter.
    LeftInsideRight { witness: u32 },
    RightInsideLeft { witness: u32 },
    Incomparable { left_tighter: u32, right_tighter: u32 },
}

/// Pointwise comparison of two regions over the same mode and session set.
/// Both are boxes over the same inequality family, so containment is
/// equivalent to pointwise ordering of the constants.
pub fn compare_regions(r1: &Region, r2: &Region) -> Result<RegionRelation, BoundsError> {
    if r1.mode != r2.mode || r1.num_sessions != r2.num_sessions {
        return Err(BoundsError::ModeMismatch);
    }
    let mut left_tighter = None;
    let mut right_tighter = None;
    for (w, v1) in &r1.constants {
        let v2 = &r2.constants[w];
        match v1.cmp(v2) {
            Ordering::Less => left_tighter = left_tighter.or(Some(*w)),
            Ordering::Greater => right_tighter = right_tighter.or(Some(*w)),
            Ordering::Equal => {}
        }
    }
    Ok(match (left_tighter, right_tighter) {
        (None, None) => RegionRelation::Equal,
        (Some(w), None) => RegionRelation::LeftInsideRight { witness: w },
        (None, Some(w)) => RegionRelation::RightInsideLeft { witness: w },
        (Some(a), Some(b)) => RegionRelation::Incomparable { left_tighter: a, right_tighter: b },
    })
}
