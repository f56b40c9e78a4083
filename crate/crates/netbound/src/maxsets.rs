//! Enumeration of maximal irreducible sets.
//!
//! A set is irreducible when no proper subset determines the rest of it, and
//! maximal when its closure covers the graph (for acyclic graphs: everything
//! outside its ancestry). Maximal irreducible sets are the
//! information-theoretic bottlenecks the capacity bounds are built from.
//!
//! On construction-B graphs the enumerations range over source and edge
//! variables only: a decoded estimate equals its session's source variable,
//! so sets containing estimate nodes are redundant aliases and are never
//! reported as members.

use crate::bitset::NodeSet;
use crate::fdg::{ancestors, closure, is_acyclic, ClosureKind, Fdg, FdgError};
use std::collections::{BTreeSet, HashMap};

/// Deduplicated, canonically ordered collection of maximal irreducible sets.
#[derive(Debug, Clone)]
pub struct MaxSetCollection {
    pub kind: ClosureKind,
    /// Members, lexicographic on sorted node ids.
    pub sets: Vec<NodeSet>,
    /// Number of recursive calls the enumeration made.
    pub calls: u64,
    /// Set when the enumeration precondition failed and the result is empty.
    pub precondition_failed: bool,
}

impl MaxSetCollection {
    /// The wire format: one `{a,b,c}` line per set, 1-based ids.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sets {
            out.push_str(&s.to_display_1based());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MaxSetError {
    Fdg(FdgError),
    /// Brute force refuses graphs above its size guard.
    GuardExceeded { nodes: usize, guard: usize },
    /// The acyclic enumeration was handed a cyclic graph.
    CyclicGraph,
}

impl std::fmt::Display for MaxSetError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MaxSetError::Fdg(e) => write!(f, "{e}"),
            MaxSetError::GuardExceeded { nodes, guard } => {
                write!(f, "graph has {nodes} nodes, brute-force guard is {guard}")
            }
            MaxSetError::CyclicGraph => write!(f, "graph has a directed cycle"),
        }
    }
}

impl std::error::Error for MaxSetError {}

impl From<FdgError> for MaxSetError {
    fn from(e: FdgError) -> Self {
        MaxSetError::Fdg(e)
    }
}

/// Node universe the enumerations draw members from: everything except
/// estimate nodes under the construction-B closure kinds.
fn member_universe(g: &Fdg, kind: ClosureKind) -> NodeSet {
    match kind {
        ClosureKind::PhiA => g.all_nodes(),
        ClosureKind::PhiB | ClosureKind::Psi => g.all_nodes().minus(g.estimate_nodes()),
    }
}

/// Does the closure of `a` swallow the whole graph?
fn closure_complete(g: &Fdg, a: NodeSet, kind: ClosureKind) -> Result<bool, FdgError> {
    Ok(a.union(closure(g, a, kind)?) == g.all_nodes())
}

/// Acyclic completeness: nothing left outside closure, ancestry and the set.
fn acyclic_complete(g: &Fdg, a: NodeSet, kind: ClosureKind) -> Result<bool, FdgError> {
    let phi = closure(g, a, kind)?;
    Ok(g.all_nodes().minus(phi).minus(ancestors(g, a)).minus(a).is_empty())
}

fn completeness(g: &Fdg, a: NodeSet, kind: ClosureKind, acyclic: bool) -> Result<bool, FdgError> {
    if acyclic {
        acyclic_complete(g, a, kind)
    } else {
        closure_complete(g, a, kind)
    }
}

/// True iff no proper subset of `b` determines the rest of `b`.
pub fn is_irreducible(g: &Fdg, b: NodeSet, kind: ClosureKind) -> Result<bool, FdgError> {
    for a in b.proper_subsets() {
        if b.is_subset(a.union(closure(g, a, kind)?)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maximality test. Cyclic kinds demand closure completeness; the acyclic
/// variant (plain cascade on a DAG) additionally discounts the ancestry of
/// the set. Either way no proper subset may share the property.
pub fn is_maximal_irreducible(g: &Fdg, a: NodeSet, kind: ClosureKind) -> Result<bool, FdgError> {
    let acyclic = kind == ClosureKind::PhiA && is_acyclic(g);
    if !completeness(g, a, kind, acyclic)? {
        return Ok(false);
    }
    for s in a.proper_subsets() {
        if completeness(g, s, kind, acyclic)? {
            return Ok(false);
        }
    }
    is_irreducible(g, a, kind)
}

/// Drop duplicates and strict supersets, order lexicographically.
fn prune_minimal(raw: BTreeSet<NodeSet>) -> Vec<NodeSet> {
    let mut keep: Vec<NodeSet> = Vec::new();
    for &s in &raw {
        if !raw.iter().any(|&t| t != s && t.is_subset(s)) {
            keep.push(s);
        }
    }
    keep.sort_by_key(|s| s.iter().collect::<Vec<usize>>());
    keep
}

/// All maximal irreducible sets of an acyclic graph that contain `seed`,
/// found by recursive augmentation.
pub fn all_max_sets_acyclic(g: &Fdg, seed: NodeSet) -> Result<MaxSetCollection, MaxSetError> {
    if !is_acyclic(g) {
        return Err(MaxSetError::CyclicGraph);
    }
    let kind = ClosureKind::PhiA;
    let mut raw = BTreeSet::new();
    let mut calls = 0u64;
    let mut visited = BTreeSet::new();
    recurse_acyclic(g, seed, &mut raw, &mut calls, &mut visited)?;
    Ok(MaxSetCollection { kind, sets: prune_minimal(raw), calls, precondition_failed: false })
}

fn recurse_acyclic(
    g: &Fdg,
    a: NodeSet,
    raw: &mut BTreeSet<NodeSet>,
    calls: &mut u64,
    visited: &mut BTreeSet<NodeSet>,
) -> Result<(), MaxSetError> {
    *calls += 1;
    if !visited.insert(a) {
        return Ok(());
    }
    let phi = closure(g, a, ClosureKind::PhiA)?;
    let augment = g.all_nodes().minus(phi).minus(ancestors(g, a)).minus(a);
    if augment.is_empty() {
        raw.insert(a);
        return Ok(());
    }
    for b in augment.iter() {
        recurse_acyclic(g, a.union(NodeSet::singleton(b)), raw, calls, visited)?;
    }
    Ok(())
}

/// All maximal irreducible sets disjoint from `excluded`, by the recursion
/// for (possibly) cyclic graphs: drop one redundant element at a time.
///
/// The precondition that the complement of `excluded` still contains a
/// maximal irreducible set is checked up front; on failure the collection
/// comes back empty with `precondition_failed` set.
pub fn all_max_sets_cyclic(
    g: &Fdg,
    excluded: NodeSet,
    kind: ClosureKind,
) -> Result<MaxSetCollection, MaxSetError> {
    let universe = member_universe(g, kind);
    let excluded = excluded.intersect(universe);
    let mut calls = 0u64;
    if !closure_complete(g, universe.minus(excluded), kind)? {
        return Ok(MaxSetCollection { kind, sets: Vec::new(), calls, precondition_failed: true });
    }
    let mut raw = BTreeSet::new();
    let mut memo: HashMap<NodeSet, ()> = HashMap::new();
    recurse_cyclic(g, universe, excluded, 0, kind, &mut raw, &mut calls, &mut memo)?;
    Ok(MaxSetCollection { kind, sets: prune_minimal(raw), calls, precondition_failed: false })
}

#[allow(clippy::too_many_arguments)]
fn recurse_cyclic(
    g: &Fdg,
    universe: NodeSet,
    excluded: NodeSet,
    from: usize,
    kind: ClosureKind,
    raw: &mut BTreeSet<NodeSet>,
    calls: &mut u64,
    memo: &mut HashMap<NodeSet, ()>,
) -> Result<(), MaxSetError> {
    *calls += 1;
    if memo.insert(excluded, ()).is_some() {
        return Ok(());
    }
    let candidate = universe.minus(excluded);
    let mut redundant = NodeSet::EMPTY;
    for v in candidate.iter() {
        let rest = candidate.minus(NodeSet::singleton(v));
        if closure(g, rest, kind)?.contains(v) {
            redundant.insert(v);
        }
    }
    if redundant.is_empty() {
        raw.insert(candidate);
        return Ok(());
    }
    // Exclusions are explored in increasing node order only. The cascade is
    // monotone, so a node outside a maximal set stays redundant at every
    // candidate containing that set: every maximal set is still reached via
    // the increasing exclusion sequence of its complement, and no branch is
    // explored twice.
    for v in redundant.iter().filter(|&v| v >= from) {
        recurse_cyclic(
            g,
            universe,
            excluded.union(NodeSet::singleton(v)),
            v + 1,
            kind,
            raw,
            calls,
            memo,
        )?;
    }
    Ok(())
}

/// Reference answer: test every subset of the member universe against the
/// maximality definition. Guarded, and exponential even under the guard.
pub fn brute_force_max_sets(g: &Fdg, kind: ClosureKind) -> Result<MaxSetCollection, MaxSetError> {
    const GUARD: usize = 20;
    let n = g.num_nodes();
    if n > GUARD {
        return Err(MaxSetError::GuardExceeded { nodes: n, guard: GUARD });
    }
    let universe = member_universe(g, kind);
    let acyclic = kind == ClosureKind::PhiA && is_acyclic(g);
    // Completeness table over subsets of the universe.
    let members: Vec<usize> = universe.iter().collect();
    let m = members.len();
    let expand = |bits: u64| -> NodeSet {
        let mut s = NodeSet::EMPTY;
        for (i, &v) in members.iter().enumerate() {
            if bits & (1 << i) != 0 {
                s.insert(v);
            }
        }
        s
    };
    let mut complete = vec![false; 1usize << m];
    for bits in 0..(1u64 << m) {
        complete[bits as usize] = completeness(g, expand(bits), kind, acyclic)?;
    }
    let mut raw = BTreeSet::new();
    'next: for bits in 0..(1u64 << m) {
        if !complete[bits as usize] {
            continue;
        }
        // Minimality among complete subsets.
        let mut sub = bits;
        loop {
            sub = sub.wrapping_sub(1) & bits;
            if sub == bits {
                break;
            }
            if complete[sub as usize] {
                continue 'next;
            }
            if sub == 0 {
                break;
            }
        }
        let set = expand(bits);
        if is_irreducible(g, set, kind)? {
            raw.insert(set);
        }
    }
    let mut sets: Vec<NodeSet> = raw.into_iter().collect();
    sets.sort_by_key(|s| s.iter().collect::<Vec<usize>>());
    Ok(MaxSetCollection { kind, sets, calls: 0, precondition_failed: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdg::{build_construction_a, build_construction_b};
    use crate::testutil::butterfly;

    fn ns(ids_1based: &[usize]) -> NodeSet {
        NodeSet::from_iter(ids_1based.iter().map(|&i| i - 1))
    }

    /// The butterfly's fifteen construction-A bottleneck sets, 1-based ids
    /// (1 = Y1, 2 = Y2, k = U_{k-2}).
    pub fn butterfly_a_sets() -> Vec<NodeSet> {
        [
            vec![1, 2], vec![1, 5], vec![1, 7], vec![1, 8],
            vec![2, 4], vec![2, 7], vec![2, 9],
            vec![3, 4, 5], vec![3, 4, 8], vec![3, 7], vec![3, 8, 9],
            vec![4, 5, 6], vec![5, 6, 9], vec![6, 7], vec![6, 8, 9],
        ]
        .iter()
        .map(|v| ns(v))
        .collect()
    }

    /// The sixteen independent-source sets of the construction-B graph.
    pub fn butterfly_psi_sets() -> Vec<NodeSet> {
        [
            vec![1, 2], vec![1, 5], vec![1, 7], vec![1, 8],
            vec![2, 4], vec![2, 7], vec![2, 9], vec![3, 7],
            vec![4, 5], vec![4, 7], vec![4, 8], vec![5, 7], vec![5, 9],
            vec![6, 7], vec![3, 8, 9], vec![6, 8, 9],
        ]
        .iter()
        .map(|v| ns(v))
        .collect()
    }

    fn sorted(mut sets: Vec<NodeSet>) -> Vec<NodeSet> {
        sets.sort_by_key(|s| s.iter().collect::<Vec<usize>>());
        sets
    }

    #[test]
    fn butterfly_construction_a_fifteen_sets() {
        let g = build_construction_a(&butterfly());
        let got = all_max_sets_cyclic(&g, NodeSet::EMPTY, ClosureKind::PhiA).unwrap();
        assert_eq!(got.sets, sorted(butterfly_a_sets()));
    }

    #[test]
    fn butterfly_psi_sixteen_sets() {
        let g = build_construction_b(&butterfly());
        let got = all_max_sets_cyclic(&g, NodeSet::EMPTY, ClosureKind::Psi).unwrap();
        assert_eq!(got.sets, sorted(butterfly_psi_sets()));
    }

    #[test]
    fn brute_force_agrees_on_butterfly_a() {
        let g = build_construction_a(&butterfly());
        let brute = brute_force_max_sets(&g, ClosureKind::PhiA).unwrap();
        assert_eq!(brute.sets, sorted(butterfly_a_sets()));
    }

    #[test]
    fn singleton_is_irreducible() {
        let g = build_construction_a(&butterfly());
        for v in 0..g.num_nodes() {
            assert!(is_irreducible(&g, NodeSet::singleton(v), ClosureKind::PhiA).unwrap());
        }
    }

    #[test]
    fn reducible_and_maximal_examples() {
        let g = build_construction_a(&butterfly());
        // Y1, Y2 determine U1, so {1,2,3} is reducible.
        assert!(!is_irreducible(&g, ns(&[1, 2, 3]), ClosureKind::PhiA).unwrap());
        assert!(!is_maximal_irreducible(&g, ns(&[1, 2, 3]), ClosureKind::PhiA).unwrap());
        assert!(is_irreducible(&g, ns(&[3, 7]), ClosureKind::PhiA).unwrap());
        assert!(is_maximal_irreducible(&g, ns(&[3, 7]), ClosureKind::PhiA).unwrap());
        assert!(is_maximal_irreducible(&g, ns(&[6, 7]), ClosureKind::PhiA).unwrap());
    }

    #[test]
    fn edgeless_graph_single_call() {
        for n in 1..6 {
            let g = Fdg::generic(n, &[]);
            let got = all_max_sets_cyclic(&g, NodeSet::EMPTY, ClosureKind::PhiA).unwrap();
            assert_eq!(got.calls, 1);
            assert_eq!(got.sets, vec![NodeSet::full(n)]);
            // Forced by the cascade rule for parentless nodes; cross-check.
            assert!(is_maximal_irreducible(&g, NodeSet::full(n), ClosureKind::PhiA).unwrap());
        }
    }

    #[test]
    fn line_graph_call_count() {
        for n in 3..=10 {
            let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
            let g = Fdg::generic(n, &edges);
            let got = all_max_sets_acyclic(&g, NodeSet::EMPTY).unwrap();
            assert_eq!(got.calls as usize, n + 1);
            let brute = brute_force_max_sets(&g, ClosureKind::PhiA).unwrap();
            assert_eq!(got.sets, brute.sets);
        }
    }

    #[test]
    fn two_isolated_nodes_fuse() {
        let g = Fdg::generic(2, &[]);
        let got = all_max_sets_acyclic(&g, NodeSet::EMPTY).unwrap();
        assert_eq!(got.sets, vec![NodeSet::full(2)]);
        let brute = brute_force_max_sets(&g, ClosureKind::PhiA).unwrap();
        assert_eq!(brute.sets, vec![NodeSet::full(2)]);
    }

    #[test]
    fn acyclic_enumeration_rejects_cycles() {
        let g = build_construction_a(&butterfly());
        assert!(matches!(
            all_max_sets_acyclic(&g, NodeSet::EMPTY),
            Err(MaxSetError::CyclicGraph)
        ));
    }

    #[test]
    fn seeded_acyclic_outputs_contain_seed() {
        let g = build_construction_b(&butterfly());
        let gbar = crate::fdg::subgraph_gbar(&g).unwrap();
        let seed = NodeSet::singleton(0);
        let got = all_max_sets_acyclic(&gbar, seed).unwrap();
        assert!(!got.sets.is_empty());
        assert!(got.sets.iter().all(|s| seed.is_subset(*s)));
    }

    #[test]
    fn cyclic_precondition_failure_is_reported() {
        let g = build_construction_a(&butterfly());
        // Excluding everything leaves no complete candidate.
        let got = all_max_sets_cyclic(&g, g.all_nodes(), ClosureKind::PhiA).unwrap();
        assert!(got.precondition_failed);
        assert!(got.sets.is_empty());
    }

    #[test]
    fn empty_graph_brute_force() {
        let g = Fdg::generic(0, &[]);
        let got = brute_force_max_sets(&g, ClosureKind::PhiA).unwrap();
        assert_eq!(got.sets, vec![NodeSet::EMPTY]);
    }

    #[test]
    fn excluded_nodes_never_appear() {
        let g = build_construction_a(&butterfly());
        let excl = ns(&[1]);
        let got = all_max_sets_cyclic(&g, excl, ClosureKind::PhiA).unwrap();
        assert!(!got.sets.is_empty());
        assert!(got.sets.iter().all(|s| s.is_disjoint(excl)));
    }

    #[test]
    fn collection_text_format() {
        let g = build_construction_a(&butterfly());
        let got = all_max_sets_cyclic(&g, NodeSet::EMPTY, ClosureKind::PhiA).unwrap();
        let text = got.to_text();
        assert!(text.lines().count() == 15);
        assert!(text.contains("{3,7}\n"));
        assert!(text.starts_with("{1,2}\n"));
    }

    #[test]
    fn call_count_within_lemma_bound() {
        let g = build_construction_b(&butterfly());
        let gbar = crate::fdg::subgraph_gbar(&g).unwrap();
        let got = all_max_sets_acyclic(&gbar, NodeSet::EMPTY).unwrap();
        let k = gbar.num_nodes() as u64;
        let mut bound = 0u64;
        for i in 0..=k {
            bound += (k - i + 1..=k).product::<u64>().max(1);
        }
        assert!(got.calls <= bound, "calls {} exceed bound {}", got.calls, bound);
    }
}
