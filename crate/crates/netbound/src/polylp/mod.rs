//! The polymatroid linear program and its exact solution.
//!
//! Pseudo-entropies of every nonempty subset of the ground set (sources
//! first, then edge variables) are the LP coordinates, ordered by the binary
//! representation of the subset. The polymatroid cone is generated by its
//! elemental inequalities; network structure enters as equality constraints
//! for encoding and decoding plus capacity rows. Solving the LP yields the
//! geometric outer bounds.

mod floatlp;
pub mod simplex;

use crate::model::Network;
use crate::rational::format_rational;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use simplex::SimplexResult;
use std::collections::BTreeMap;

/// Bijection between nonempty subsets of an `n`-element ground set and the
/// coordinates `0..2^n - 1`: the coordinate of a subset is its bitmask minus
/// one (binary-representation order).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntropyIndex {
    pub n: usize,
}

impl EntropyIndex {
    pub fn num_coords(&self) -> usize {
        (1usize << self.n) - 1
    }

    /// Coordinate of a nonempty subset bitmask.
    pub fn coord(&self, mask: u32) -> usize {
        debug_assert!(mask != 0 && (mask as usize) < (1 << self.n) + 1);
        mask as usize - 1
    }

    pub fn mask_of_coord(&self, coord: usize) -> u32 {
        (coord + 1) as u32
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Ge,
    Eq,
    Le,
}

/// A sparse linear constraint over entropy coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    /// (coordinate, coefficient), sorted by coordinate, no zeros.
    pub coeffs: Vec<(usize, BigRational)>,
    pub rel: Rel,
    pub rhs: BigRational,
}

impl LinearConstraint {
    /// Build from subset-mask/integer pairs, merging repeats and dropping
    /// zeros and the empty mask (h of the empty set is identically zero).
    pub fn from_masks(index: &EntropyIndex, terms: &[(u32, i64)], rel: Rel, rhs: BigRational) -> LinearConstraint {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(mask, c) in terms {
            if mask == 0 || c == 0 {
                continue;
            }
            *acc.entry(index.coord(mask)).or_insert(0) += c;
        }
        let coeffs = acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(k, c)| (k, BigRational::from_integer(c.into())))
            .collect();
        LinearConstraint { coeffs, rel, rhs }
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.coeffs.iter().map(|(c, v)| v * &x[*c]).sum()
    }

    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        let lhs = self.eval(x);
        match self.rel {
            Rel::Ge => lhs >= self.rhs,
            Rel::Eq => lhs == self.rhs,
            Rel::Le => lhs <= self.rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpError {
    /// Ground set larger than the guard; refuse rather than degrade.
    GuardExceeded { n: usize, guard: usize },
    /// Supplied joint entropies fail the polymatroid axioms.
    NonPolymatroidal(String),
    /// Dump/load format problems.
    Format(String),
}

impl std::fmt::Display for LpError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LpError::GuardExceeded { n, guard } => {
                write!(f, "ground set of {n} exceeds the guard {guard}")
            }
            LpError::NonPolymatroidal(m) => write!(f, "joint entropies not polymatroidal: {m}"),
            LpError::Format(m) => write!(f, "problem text: {m}"),
        }
    }
}

impl std::error::Error for LpError {}

/// The `n` nondecreasing rows `h(i | everything else) >= 0` plus the
/// `C(n,2) * 2^(n-2)` conditional mutual information rows
/// `I(i; j | K) >= 0`, expanded into joint-entropy coordinates. This is the
/// minimal generating set of the polymatroid cone.
pub fn elemental_inequalities(n: usize) -> Result<Vec<LinearConstraint>, LpError> {
    const GUARD: usize = 14;
    if n == 0 || n > GUARD {
        return Err(LpError::GuardExceeded { n, guard: GUARD });
    }
    let index = EntropyIndex { n };
    let full: u32 = ((1u64 << n) - 1) as u32;
    let mut rows = Vec::new();
    for i in 0..n {
        let bit = 1u32 << i;
        rows.push(LinearConstraint::from_masks(
            &index,
            &[(full, 1), (full & !bit, -1)],
            Rel::Ge,
            BigRational::zero(),
        ));
    }
    for i in 0..n {
        for j in i + 1..n {
            let bi = 1u32 << i;
            let bj = 1u32 << j;
            let rest = full & !bi & !bj;
            // Subsets K of the remaining ground set.
            let mut k: u32 = 0;
            loop {
                rows.push(LinearConstraint::from_masks(
                    &index,
                    &[(k | bi, 1), (k | bj, 1), (k | bi | bj, -1), (k, -1)],
                    Rel::Ge,
                    BigRational::zero(),
                ));
                if k == rest {
                    break;
                }
                k = next_subset(k, rest);
            }
        }
    }
    Ok(rows)
}

/// Number of elemental inequalities for a ground set of size `n`:
/// `n + C(n,2) * 2^(n-2)`.
pub fn elemental_count(n: usize) -> usize {
    if n < 2 {
        return n;
    }
    n + n * (n - 1) / 2 * (1usize << (n - 2))
}

/// One row per distinct instance of the Ingleton inequality over subsets
/// (A, B, C, D) of the ground set, deduplicated after normalizing by the
/// coefficient gcd. Rank functions of subspaces satisfy all of them.
pub fn ingleton_inequalities(n: usize) -> Result<Vec<LinearConstraint>, LpError> {
    const GUARD: usize = 6;
    if n == 0 || n > GUARD {
        return Err(LpError::GuardExceeded { n, guard: GUARD });
    }
    let index = EntropyIndex { n };
    let size = 1u32 << n;
    let mut seen = std::collections::BTreeSet::new();
    let mut rows = Vec::new();
    let mut acc = vec![0i64; size as usize];
    for a in 0..size {
        for b in 0..size {
            for c in 0..size {
                for d in 0..size {
                    for v in acc.iter_mut() {
                        *v = 0;
                    }
                    acc[(a | b) as usize] += 1;
                    acc[(a | c) as usize] += 1;
                    acc[(a | d) as usize] += 1;
                    acc[(b | c) as usize] += 1;
                    acc[(b | d) as usize] += 1;
                    acc[a as usize] -= 1;
                    acc[b as usize] -= 1;
                    acc[(c | d) as usize] -= 1;
                    acc[(a | b | c) as usize] -= 1;
                    acc[(a | b | d) as usize] -= 1;
                    acc[0] = 0;
                    let mut terms: Vec<(u32, i64)> = (1..size)
                        .filter(|&m| acc[m as usize] != 0)
                        .map(|m| (m, acc[m as usize]))
                        .collect();
                    if terms.is_empty() {
                        continue;
                    }
                    let g = terms.iter().fold(0i64, |g, &(_, c)| gcd(g, c.abs()));
                    for t in terms.iter_mut() {
                        t.1 /= g;
                    }
                    if seen.insert(terms.clone()) {
                        rows.push(LinearConstraint::from_masks(
                            &index,
                            &terms,
                            Rel::Ge,
                            BigRational::zero(),
                        ));
                    }
                }
            }
        }
    }
    Ok(rows)
}

fn gcd(a: i64, b: i64) -> i64 {
    if a == 0 {
        b
    } else {
        gcd(b % a, a)
    }
}

/// A ready-to-solve maximization problem over entropy coordinates.
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub index: EntropyIndex,
    /// Sparse objective, maximized.
    pub objective: Vec<(usize, BigRational)>,
    pub constraints: Vec<LinearConstraint>,
    /// Optional presolve hint: `coord_class[c]` is a representative
    /// coordinate whose value provably equals coordinate `c` on every
    /// feasible point. The network builders derive it from the encoder and
    /// decoder equalities: a subset and its functional-dependence closure
    /// carry the same entropy on any polymatroid satisfying those rows, so
    /// their coordinates may share one LP variable. Solving ignores the
    /// hint's absence; correctness of the hint is the builder's contract.
    pub coord_class: Option<Vec<usize>>,
}

/// Forward-chaining closure of the per-edge and per-(sink, session)
/// dependence rules, mapping each coordinate to its class representative.
fn dependence_classes(net: &Network, index: &EntropyIndex) -> Vec<usize> {
    // Rules premise-mask -> new bit.
    let mut rules: Vec<(u32, u32)> = Vec::new();
    for e in &net.edges {
        let mut inputs: u32 = 0;
        for s in &net.sessions {
            if s.source == e.tail {
                inputs |= source_bit(s.id);
            }
        }
        for f in &net.edges {
            if f.head == e.tail {
                inputs |= edge_bit(net, f.id);
            }
        }
        rules.push((inputs, edge_bit(net, e.id)));
    }
    for s in &net.sessions {
        for &u in &s.sinks {
            let mut incoming: u32 = 0;
            for e in &net.edges {
                if e.head == u {
                    incoming |= edge_bit(net, e.id);
                }
            }
            rules.push((incoming, source_bit(s.id)));
        }
    }
    let close = |mut mask: u32| -> u32 {
        loop {
            let mut grew = false;
            for &(premise, bit) in &rules {
                if mask & bit == 0 && premise & !mask == 0 {
                    mask |= bit;
                    grew = true;
                }
            }
            if !grew {
                return mask;
            }
        }
    };
    (0..index.num_coords())
        .map(|c| index.coord(close(index.mask_of_coord(c))))
        .collect()
}

/// Ground-set bookkeeping: sources take bits `0..|S|`, edges the rest.
pub fn ground_set_size(net: &Network) -> usize {
    net.num_sessions() + net.num_edges()
}

pub fn source_bit(s: usize) -> u32 {
    1u32 << s
}

pub fn edge_bit(net: &Network, e: usize) -> u32 {
    1u32 << (net.num_sessions() + e)
}

/// Network structure rows shared by the independent and correlated LPs:
/// one encoding equality per edge, one decoding equality per (sink, session)
/// demand, one capacity bound per edge.
fn network_rows(net: &Network, index: &EntropyIndex) -> Vec<LinearConstraint> {
    let mut rows = Vec::new();
    for e in &net.edges {
        let mut inputs: u32 = 0;
        for s in &net.sessions {
            if s.source == e.tail {
                inputs |= source_bit(s.id);
            }
        }
        for f in &net.edges {
            if f.head == e.tail {
                inputs |= edge_bit(net, f.id);
            }
        }
        rows.push(LinearConstraint::from_masks(
            index,
            &[(inputs | edge_bit(net, e.id), 1), (inputs, -1)],
            Rel::Eq,
            BigRational::zero(),
        ));
    }
    for s in &net.sessions {
        for &u in &s.sinks {
            let mut incoming: u32 = 0;
            for e in &net.edges {
                if e.head == u {
                    incoming |= edge_bit(net, e.id);
                }
            }
            rows.push(LinearConstraint::from_masks(
                index,
                &[(incoming | source_bit(s.id), 1), (incoming, -1)],
                Rel::Eq,
                BigRational::zero(),
            ));
        }
    }
    for e in &net.edges {
        rows.push(LinearConstraint {
            coeffs: vec![(index.coord(edge_bit(net, e.id)), BigRational::one())],
            rel: Rel::Le,
            rhs: e.capacity.clone(),
        });
    }
    rows
}

/// The weighted sum-rate LP for independent sources: polymatroid rows, the
/// source-independence equality, network rows, objective
/// `sum of w_s h(Y_s)`.
pub fn build_independent_lp(
    net: &Network,
    weights: &[BigRational],
    guard: usize,
) -> Result<LpProblem, LpError> {
    let n = ground_set_size(net);
    if n > guard || n > 14 {
        return Err(LpError::GuardExceeded { n, guard: guard.min(14) });
    }
    let index = EntropyIndex { n };
    let mut constraints = elemental_inequalities(n)?;
    // Source independence: h(all sources) = sum of h(Y_s).
    let mut terms: Vec<(u32, i64)> = vec![((1u32 << net.num_sessions()) - 1, 1)];
    for s in 0..net.num_sessions() {
        terms.push((source_bit(s), -1));
    }
    constraints.push(LinearConstraint::from_masks(&index, &terms, Rel::Eq, BigRational::zero()));
    constraints.extend(network_rows(net, &index));
    let objective = weights
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(s, w)| (index.coord(source_bit(s)), w.clone()))
        .collect();
    let coord_class = Some(dependence_classes(net, &index));
    Ok(LpProblem { index, objective, constraints, coord_class })
}

/// The correlated-source LP: the source blocks are pinned to the given
/// joint entropies (one equality per nonempty session subset, validated
/// polymatroidal first), network rows as usual, objective left empty for
/// the caller (a zero objective makes `solve_lp` a feasibility check).
pub fn build_correlated_lp(
    net: &Network,
    joint: &BTreeMap<u32, BigRational>,
    guard: usize,
) -> Result<LpProblem, LpError> {
    let n = ground_set_size(net);
    if n > guard || n > 14 {
        return Err(LpError::GuardExceeded { n, guard: guard.min(14) });
    }
    let s_count = net.num_sessions();
    let full: u32 = (1u32 << s_count) - 1;
    for w in 1..=full {
        if !joint.contains_key(&w) {
            return Err(LpError::NonPolymatroidal(format!(
                "missing joint entropy for session mask {w:#b}"
            )));
        }
    }
    let h = |mask: u32| -> BigRational {
        if mask == 0 {
            BigRational::zero()
        } else {
            joint[&mask].clone()
        }
    };
    // Polymatroid check on the session ground set via its elemental rows.
    for i in 0..s_count {
        let bit = 1u32 << i;
        if h(full) < h(full & !bit) {
            return Err(LpError::NonPolymatroidal(format!(
                "monotonicity fails at session {}",
                i + 1
            )));
        }
    }
    for i in 0..s_count {
        for j in i + 1..s_count {
            let bi = 1u32 << i;
            let bj = 1u32 << j;
            let rest = full & !bi & !bj;
            let mut k: u32 = 0;
            loop {
                if h(k | bi) + h(k | bj) < h(k | bi | bj) + h(k) {
                    return Err(LpError::NonPolymatroidal(format!(
                        "submodularity fails at sessions {},{} given mask {k:#b}",
                        i + 1,
                        j + 1
                    )));
                }
                if k == rest {
                    break;
                }
                k = next_subset(k, rest);
            }
        }
    }
    let index = EntropyIndex { n };
    let mut constraints = elemental_inequalities(n)?;
    for w in 1..=full {
        constraints.push(LinearConstraint {
            coeffs: vec![(index.coord(w), BigRational::one())],
            rel: Rel::Eq,
            rhs: h(w),
        });
    }
    constraints.extend(network_rows(net, &index));
    let coord_class = Some(dependence_classes(net, &index));
    Ok(LpProblem { index, objective: Vec::new(), constraints, coord_class })
}

fn next_subset(k: u32, rest: u32) -> u32 {
    (k.wrapping_sub(rest)) & rest
}

/// Solver outcome. The optimal point is the full coordinate vector and
/// satisfies every constraint exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: BigRational, point: Vec<BigRational> },
    Unbounded,
    Infeasible,
}

/// Exact solve. Entropy coordinates are nonnegative (implied by the
/// elemental rows, so restricting to the nonnegative orthant loses
/// nothing). Coordinates sharing a dependence class collapse into one LP
/// variable first; the remaining inequality rows are activated lazily as
/// the iterate or the unbounded ray violates them, keeping the tableau far
/// below the full row count. The returned point is in original coordinates
/// and satisfies every constraint exactly.
pub fn solve_lp(p: &LpProblem) -> LpOutcome {
    let nv = p.index.num_coords();
    let identity: Vec<usize>;
    let class: &[usize] = match &p.coord_class {
        Some(c) => c,
        None => {
            identity = (0..nv).collect();
            &identity
        }
    };
    // Dense numbering of class representatives.
    let mut var_of_class: BTreeMap<usize, usize> = BTreeMap::new();
    for c in 0..nv {
        let rep = class[c];
        let next = var_of_class.len();
        var_of_class.entry(rep).or_insert(next);
    }
    let reduced_nv = var_of_class.len();
    let var_of = |c: usize| var_of_class[&class[c]];

    let mut objective = vec![BigRational::zero(); reduced_nv];
    for (c, w) in &p.objective {
        objective[var_of(*c)] += w;
    }

    // Remap rows onto class variables; drop trivial rows, dedup the rest,
    // and catch constant contradictions outright.
    let mut seen = std::collections::BTreeSet::new();
    let mut rows: Vec<(Vec<(usize, BigRational)>, Rel, BigRational)> = Vec::new();
    for c in &p.constraints {
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (coord, v) in &c.coeffs {
            let e = acc.entry(var_of(*coord)).or_insert_with(BigRational::zero);
            *e += v;
        }
        let coeffs: Vec<(usize, BigRational)> =
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if coeffs.is_empty() {
            let violated = match c.rel {
                Rel::Ge => c.rhs.is_positive(),
                Rel::Le => c.rhs.is_negative(),
                Rel::Eq => !c.rhs.is_zero(),
            };
            if violated {
                return LpOutcome::Infeasible;
            }
            continue;
        }
        let key = (
            coeffs.iter().map(|(k, v)| (*k, v.clone())).collect::<Vec<_>>(),
            c.rel as u8,
            c.rhs.clone(),
        );
        if seen.insert(key) {
            rows.push((coeffs, c.rel, c.rhs.clone()));
        }
    }

    match solve_rows(&objective, &rows) {
        LpOutcome::Optimal { value, point } => {
            let full: Vec<BigRational> = (0..nv).map(|c| point[var_of(c)].clone()).collect();
            LpOutcome::Optimal { value, point: full }
        }
        other => other,
    }
}

/// The lazy row-activation loop around the simplex core. A floating-point
/// scout proposes an initial active set (the rows binding at its
/// approximate optimum); the exact simplex then usually confirms in one or
/// two rounds. The scout is advisory only.
fn solve_rows(
    objective: &[BigRational],
    rows: &[(Vec<(usize, BigRational)>, Rel, BigRational)],
) -> LpOutcome {
    let mut active: Vec<bool> = rows.iter().map(|(_, rel, _)| matches!(rel, Rel::Eq)).collect();
    if rows.len() <= 128 {
        active.iter_mut().for_each(|a| *a = true);
    } else {
        let to_f = |r: &BigRational| -> f64 {
            let n = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
            let d = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
            n / d
        };
        let scout_rows: Vec<floatlp::ScoutRow> = rows
            .iter()
            .map(|(coeffs, rel, rhs)| floatlp::ScoutRow {
                coeffs: coeffs.iter().map(|(c, v)| (*c, to_f(v))).collect(),
                rel: *rel,
                rhs: to_f(rhs),
            })
            .collect();
        let scout_obj: Vec<f64> = objective.iter().map(to_f).collect();
        if let Some(binding) = floatlp::scout(&scout_obj, &scout_rows) {
            for i in binding {
                active[i] = true;
            }
        }
    }
    const BATCH: usize = 64;
    let eval = |coeffs: &[(usize, BigRational)], x: &[BigRational]| -> BigRational {
        coeffs.iter().map(|(c, v)| v * &x[*c]).sum()
    };
    loop {
        let active_rows: Vec<(Vec<(usize, BigRational)>, Rel, BigRational)> = rows
            .iter()
            .zip(&active)
            .filter(|(_, a)| **a)
            .map(|(r, _)| r.clone())
            .collect();
        if std::env::var_os("NETBOUND_LP_DEBUG").is_some() {
            eprintln!(
                "    [lp] round with {} active rows ({} total), pivots so far {}",
                active_rows.len(),
                rows.len(),
                simplex::PIVOTS.with(|p| *p.borrow())
            );
        }
        match simplex::maximize(objective, &active_rows) {
            SimplexResult::Infeasible => return LpOutcome::Infeasible,
            SimplexResult::Optimal { value, x } => {
                let mut violated: Vec<(BigRational, usize)> = Vec::new();
                for (i, (coeffs, rel, rhs)) in rows.iter().enumerate() {
                    if active[i] {
                        continue;
                    }
                    let lhs = eval(coeffs, &x);
                    let gap = match rel {
                        Rel::Ge => rhs - &lhs,
                        Rel::Le => &lhs - rhs,
                        Rel::Eq => (&lhs - rhs).abs(),
                    };
                    if gap.is_positive() {
                        violated.push((gap, i));
                    }
                }
                if violated.is_empty() {
                    return LpOutcome::Optimal { value, point: x };
                }
                violated.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
                for (_, i) in violated.into_iter().take(BATCH) {
                    active[i] = true;
                }
            }
            SimplexResult::Unbounded { x, ray } => {
                let mut any = false;
                for (i, (coeffs, rel, rhs)) in rows.iter().enumerate() {
                    if active[i] {
                        continue;
                    }
                    let along = eval(coeffs, &ray);
                    let cuts_ray = match rel {
                        Rel::Ge => along.is_negative(),
                        Rel::Le => along.is_positive(),
                        Rel::Eq => !along.is_zero(),
                    };
                    let at_base = eval(coeffs, &x);
                    let violated_now = match rel {
                        Rel::Ge => at_base < *rhs,
                        Rel::Le => at_base > *rhs,
                        Rel::Eq => at_base != *rhs,
                    };
                    if cuts_ray || violated_now {
                        active[i] = true;
                        any = true;
                    }
                }
                if !any {
                    return LpOutcome::Unbounded;
                }
            }
        }
    }
}

/// Optimum of `sum of h(Y_s) over s in W` for the independent-source LP.
pub fn lp_region_probe(net: &Network, w_mask: u32, guard: usize) -> Result<LpOutcome, LpError> {
    let weights: Vec<BigRational> = (0..net.num_sessions())
        .map(|s| {
            if w_mask & (1 << s) != 0 {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let p = build_independent_lp(net, &weights, guard)?;
    Ok(solve_lp(&p))
}

impl LpProblem {
    /// Plain-text dump: `n=<k>`, an `obj:` line, one constraint per line
    /// with coordinates labelled by subset bitmask in hex.
    pub fn dump(&self) -> String {
        let mut out = format!("n={}\n", self.index.n);
        let term = |c: &usize, v: &BigRational| {
            format!("{:x}={}", self.index.mask_of_coord(*c), format_rational(v))
        };
        let obj: Vec<String> = self.objective.iter().map(|(c, v)| term(c, v)).collect();
        out.push_str(&format!("obj: {}\n", obj.join(" ")));
        for c in &self.constraints {
            let terms: Vec<String> = c.coeffs.iter().map(|(k, v)| term(k, v)).collect();
            let rel = match c.rel {
                Rel::Ge => ">=",
                Rel::Eq => "=",
                Rel::Le => "<=",
            };
            out.push_str(&format!("{} {} {}\n", terms.join(" "), rel, format_rational(&c.rhs)));
        }
        out
    }

    pub fn parse(text: &str) -> Result<LpProblem, LpError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| LpError::Format("empty".into()))?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| LpError::Format("missing n= header".into()))?;
        let index = EntropyIndex { n };
        let parse_terms = |s: &str| -> Result<Vec<(usize, BigRational)>, LpError> {
            let mut out = Vec::new();
            for tok in s.split_whitespace() {
                let (mask, val) = tok
                    .split_once('=')
                    .ok_or_else(|| LpError::Format(format!("bad term {tok}")))?;
                let mask = u32::from_str_radix(mask, 16)
                    .map_err(|_| LpError::Format(format!("bad mask {mask}")))?;
                let val = crate::rational::parse_rational(val).map_err(LpError::Format)?;
                out.push((index.coord(mask), val));
            }
            Ok(out)
        };
        let obj_line = lines.next().ok_or_else(|| LpError::Format("missing obj".into()))?;
        let objective = parse_terms(
            obj_line
                .strip_prefix("obj:")
                .ok_or_else(|| LpError::Format("missing obj: prefix".into()))?,
        )?;
        let mut constraints = Vec::new();
        for line in lines {
            let (rel, split) = if line.contains(">=") {
                (Rel::Ge, ">=")
            } else if line.contains("<=") {
                (Rel::Le, "<=")
            } else {
                (Rel::Eq, " = ")
            };
            let (lhs, rhs) = line
                .split_once(split)
                .ok_or_else(|| LpError::Format(format!("bad constraint {line}")))?;
            constraints.push(LinearConstraint {
                coeffs: parse_terms(lhs)?,
                rel,
                rhs: crate::rational::parse_rational(rhs.trim()).map_err(LpError::Format)?,
            });
        }
        Ok(LpProblem { index, objective, constraints, coord_class: None })
    }
}
