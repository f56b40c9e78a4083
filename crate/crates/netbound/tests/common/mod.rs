//! Shared fixtures and deterministic generators for the integration suites.
// Not every test target uses every helper.
#![allow(dead_code)]

use netbound::model::{parse_network, validate_network, Network};
use netbound::rational::rat;
use num_rational::BigRational;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("cannot read {path}: {e}"))
}

pub fn butterfly() -> Network {
    parse_network(&fixture("butterfly.json")).unwrap()
}

pub fn butterfly_cutset_capacities() -> Network {
    parse_network(&fixture("butterfly_cutset.json")).unwrap()
}

pub fn three_layer_butterfly() -> Network {
    parse_network(&fixture("three_layer_butterfly.json")).unwrap()
}

pub fn two_butterflies() -> Network {
    parse_network(&fixture("two_butterflies.json")).unwrap()
}

fn pick_capacity(rng: &mut ChaCha8Rng) -> BigRational {
    let choices = [rat(1, 2), rat(1, 1), rat(2, 1), rat(3, 1)];
    choices[rng.random_range(0..choices.len())].clone()
}

/// Small random valid network with `|S| + |E| <= 10`. Rejection-samples
/// until every invariant holds and every session's sink is reachable.
pub fn random_network(seed: u64) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let num_sessions = rng.random_range(1..=3usize);
        let num_nodes = rng.random_range(num_sessions + 1..=6usize);
        let max_edges = 10 - num_sessions;
        let num_edges = rng.random_range(1..=max_edges.min(8));
        // Random permutation gives the topological order; edges point
        // forward along it, so the graph is acyclic by construction.
        let mut order: Vec<usize> = (0..num_nodes).collect();
        for i in (1..num_nodes).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        let mut pos = vec![0usize; num_nodes];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut pairs = BTreeSet::new();
        let mut guard = 0;
        while pairs.len() < num_edges && guard < 200 {
            guard += 1;
            let a = rng.random_range(0..num_nodes);
            let b = rng.random_range(0..num_nodes);
            if a == b {
                continue;
            }
            let (t, h) = if pos[a] < pos[b] { (a, b) } else { (b, a) };
            pairs.insert((t, h));
        }
        let edges_doc: Vec<String> = pairs
            .iter()
            .enumerate()
            .map(|(i, (t, h))| {
                format!(
                    "[{}, {}, {}, \"{}\"]",
                    i + 1,
                    t + 1,
                    h + 1,
                    netbound::rational::format_rational(&pick_capacity(&mut rng))
                )
            })
            .collect();
        let mut sessions_doc = Vec::new();
        let mut ok = true;
        for s in 0..num_sessions {
            let source = rng.random_range(0..num_nodes);
            let reach = forward_reach(num_nodes, &pairs, source);
            let candidates: Vec<usize> = reach.into_iter().filter(|&v| v != source).collect();
            if candidates.is_empty() {
                ok = false;
                break;
            }
            let mut sinks = BTreeSet::new();
            sinks.insert(candidates[rng.random_range(0..candidates.len())]);
            if candidates.len() > 1 && rng.random_range(0..4) == 0 {
                sinks.insert(candidates[rng.random_range(0..candidates.len())]);
            }
            let sinks: Vec<String> = sinks.iter().map(|v| (v + 1).to_string()).collect();
            sessions_doc.push(format!(
                "{{\"id\": {}, \"source\": {}, \"sinks\": [{}]}}",
                s + 1,
                source + 1,
                sinks.join(",")
            ));
        }
        if !ok {
            continue;
        }
        let nodes: Vec<String> = (1..=num_nodes).map(|v| v.to_string()).collect();
        let doc = format!(
            "{{\"nodes\": [{}], \"edges\": [{}], \"sessions\": [{}]}}",
            nodes.join(","),
            edges_doc.join(","),
            sessions_doc.join(",")
        );
        let mut net = parse_network(&doc).unwrap();
        // Drop edges that sit on no source-sink path, then revalidate.
        let report = validate_network(&net);
        if !report.is_ok() {
            let off_path: BTreeSet<i64> = report
                .violations
                .iter()
                .filter_map(|v| match v {
                    netbound::model::Violation::EdgeOffPath { edge } => Some(*edge),
                    _ => None,
                })
                .collect();
            if off_path.is_empty() {
                continue;
            }
            net.edges.retain(|e| !off_path.contains(&e.doc_id));
            for (i, e) in net.edges.iter_mut().enumerate() {
                e.id = i;
            }
            if net.edges.is_empty() || !validate_network(&net).is_ok() {
                continue;
            }
        }
        return net;
    }
}

fn forward_reach(n: usize, pairs: &BTreeSet<(usize, usize)>, from: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        for &(t, h) in pairs {
            if t == v && !seen[h] {
                seen[h] = true;
                stack.push(h);
            }
        }
    }
    (0..n).filter(|&v| seen[v]).collect()
}

/// Random three-layer unicast network: up to 4 sessions and 6 middle edges,
/// every session feeding and fed by at least one middle edge. Total edge
/// count is capped to keep the bottleneck enumeration at desk scale.
pub fn random_three_layer(seed: u64) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let k = rng.random_range(1..=4usize);
        let m = rng.random_range(k..=6usize);
        let budget = 13usize;
        // Node labels: sources 1..k, tails, heads, sinks.
        let tail0 = k;
        let head0 = k + m;
        let sink0 = k + 2 * m;
        let num_nodes = k + 2 * m + k;
        // Constructive coverage: session j feeds middle edge j and is
        // demanded below a randomly chosen one; extra memberships sprinkle.
        let mut alphas: Vec<BTreeSet<usize>> = (0..m).map(|_| BTreeSet::new()).collect();
        let mut betas: Vec<BTreeSet<usize>> = (0..m).map(|_| BTreeSet::new()).collect();
        for s in 0..k {
            alphas[s].insert(s);
            let j = rng.random_range(0..m);
            betas[j].insert(s);
        }
        for j in 0..m {
            if alphas[j].is_empty() || rng.random_range(0..5) == 0 {
                alphas[j].insert(rng.random_range(0..k));
            }
            if betas[j].is_empty() || rng.random_range(0..5) == 0 {
                betas[j].insert(rng.random_range(0..k));
            }
        }
        let total: usize =
            alphas.iter().map(BTreeSet::len).sum::<usize>() + m + betas.iter().map(BTreeSet::len).sum::<usize>();
        if total > budget {
            continue;
        }
        // Only the middle channels are capacity-constrained; access links
        // to and from them get a capacity no bound can bind on.
        let middles: Vec<BigRational> = (0..m).map(|_| pick_capacity(&mut rng)).collect();
        let access: BigRational = middles.iter().sum::<BigRational>() + rat(1, 1);
        let mut edges = Vec::new();
        for (j, a) in alphas.iter().enumerate() {
            for &s in a {
                edges.push((s, tail0 + j, access.clone()));
            }
        }
        for (j, cap) in middles.iter().enumerate() {
            edges.push((tail0 + j, head0 + j, cap.clone()));
        }
        for (j, b) in betas.iter().enumerate() {
            for &s in b {
                edges.push((head0 + j, sink0 + s, access.clone()));
            }
        }
        let edges_doc: Vec<String> = edges
            .iter()
            .enumerate()
            .map(|(i, (t, h, c))| {
                format!(
                    "[{}, {}, {}, \"{}\"]",
                    i + 1,
                    t + 1,
                    h + 1,
                    netbound::rational::format_rational(c)
                )
            })
            .collect();
        let sessions_doc: Vec<String> = (0..k)
            .map(|s| {
                format!(
                    "{{\"id\": {}, \"source\": {}, \"sinks\": [{}]}}",
                    s + 1,
                    s + 1,
                    sink0 + s + 1
                )
            })
            .collect();
        let nodes: Vec<String> = (1..=num_nodes).map(|v| v.to_string()).collect();
        let doc = format!(
            "{{\"nodes\": [{}], \"edges\": [{}], \"sessions\": [{}]}}",
            nodes.join(","),
            edges_doc.join(","),
            sessions_doc.join(",")
        );
        let net = parse_network(&doc).unwrap();
        if validate_network(&net).is_ok() {
            return net;
        }
    }
}

/// Random DAG on up to `max_nodes` nodes for the acyclic enumerations.
pub fn random_dag(seed: u64, max_nodes: usize) -> netbound::fdg::Fdg {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_nodes);
    let mut edges = Vec::new();
    for t in 0..n {
        for h in t + 1..n {
            if rng.random_range(0..3) == 0 {
                edges.push((t, h));
            }
        }
    }
    netbound::fdg::Fdg::generic(n, &edges)
}
