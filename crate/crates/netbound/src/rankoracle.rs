//! Linear network codes over GF(q) as rank oracles.
//!
//! A valid code realises a pseudo-entropy function: the joint entropy of a
//! set of source and edge variables is the rank of their stacked matrices,
//! in units of log q. Rank functions of subspaces satisfy every elemental
//! and Ingleton inequality, so a code is an independent witness for the
//! determination, separation and outer-bound claims made elsewhere.

use crate::model::Network;
use crate::rational::rat_int;
use num_rational::BigRational;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Arithmetic in the prime field GF(q), q <= 251.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf {
    pub q: u16,
}

impl Gf {
    pub fn new(q: u16) -> Gf {
        assert!(is_prime(q) && q <= 251, "field size must be a prime <= 251");
        Gf { q }
    }

    pub fn add(self, a: u16, b: u16) -> u16 {
        (a + b) % self.q
    }

    pub fn sub(self, a: u16, b: u16) -> u16 {
        (a + self.q - b % self.q) % self.q
    }

    pub fn mul(self, a: u16, b: u16) -> u16 {
        ((a as u32 * b as u32) % self.q as u32) as u16
    }

    pub fn inv(self, a: u16) -> u16 {
        assert!(a % self.q != 0, "zero has no inverse");
        // Fermat: a^(q-2) mod q.
        let mut result = 1u16;
        let mut base = a % self.q;
        let mut exp = self.q - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        result
    }
}

pub fn is_prime(n: u16) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u16;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Row-major matrix over GF(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfMatrix {
    pub field: Gf,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u16>,
}

impl GfMatrix {
    pub fn zeros(field: Gf, rows: usize, cols: usize) -> GfMatrix {
        GfMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(field: Gf, rows: Vec<Vec<u16>>) -> GfMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        let data = rows.into_iter().flatten().map(|x| x % field.q).collect();
        GfMatrix { field, rows: r, cols: c, data }
    }

    pub fn at(&self, r: usize, c: usize) -> u16 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u16) {
        self.data[r * self.cols + c] = v % self.field.q;
    }

    /// Rank by Gaussian elimination on a scratch copy.
    pub fn rank(&self) -> usize {
        rank_of_rows(self.field, self.cols, self.data.chunks(self.cols.max(1)))
    }

    /// self * other.
    pub fn matmul(&self, other: &GfMatrix) -> GfMatrix {
        assert_eq!(self.cols, other.rows);
        let f = self.field;
        let mut out = GfMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.at(i, j), f.mul(a, other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

fn rank_of_rows<'a>(field: Gf, cols: usize, rows: impl Iterator<Item = &'a [u16]>) -> usize {
    let mut m: Vec<Vec<u16>> = rows.map(|r| r.to_vec()).collect();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..m.len()).find(|&r| m[r][col] != 0);
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = field.inv(m[rank][col]);
        for c in col..cols {
            m[rank][c] = field.mul(m[rank][c], inv);
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in col..cols {
                    let v = field.sub(m[r][c], field.mul(factor, m[rank][c]));
                    m[r][c] = v;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// A source or edge variable, the objects ranks are taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    Source(usize),
    Edge(usize),
}

/// A linear network code: one global matrix per edge, mapping the stacked
/// message vector (dimension sum of per-session dimensions) to the edge's
/// symbol vector. `scale` is the blocklength factor: an edge may carry up to
/// `capacity * scale` symbols and session s contributes rate `dims[s]/scale`.
#[derive(Clone, Debug)]
pub struct LinearCode {
    pub field: Gf,
    pub dims: Vec<usize>,
    pub scale: u32,
    pub edge_matrices: Vec<GfMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeError {
    DimensionMismatch(String),
    PreconditionViolated(String),
}

impl std::fmt::Display for CodeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CodeError::DimensionMismatch(m) => write!(f, "dimension mismatch: {m}"),
            CodeError::PreconditionViolated(m) => write!(f, "precondition violated: {m}"),
        }
    }
}

impl std::error::Error for CodeError {}

impl LinearCode {
    pub fn message_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Column offset of session `s`'s block in the message vector.
    fn session_offset(&self, s: usize) -> usize {
        self.dims[..s].iter().sum()
    }

    /// Identity-block rows standing for session `s` in rank computations.
    fn session_rows(&self, s: usize) -> Vec<Vec<u16>> {
        let k = self.message_dim();
        let off = self.session_offset(s);
        (0..self.dims[s])
            .map(|i| {
                let mut row = vec![0u16; k];
                row[off + i] = 1;
                row
            })
            .collect()
    }

    fn stacked_rows(&self, vars: &[Var]) -> Vec<Vec<u16>> {
        let mut rows = Vec::new();
        for v in vars {
            match *v {
                Var::Source(s) => rows.extend(self.session_rows(s)),
                Var::Edge(e) => {
                    let m = &self.edge_matrices[e];
                    for r in 0..m.rows {
                        rows.push(m.data[r * m.cols..(r + 1) * m.cols].to_vec());
                    }
                }
            }
        }
        rows
    }

    /// Joint pseudo-entropy of the variables, in units of log q: the rank of
    /// their stacked matrices (sources contribute identity blocks).
    pub fn rank(&self, vars: &[Var]) -> usize {
        let rows = self.stacked_rows(vars);
        rank_of_rows(self.field, self.message_dim(), rows.iter().map(|r| r.as_slice()))
    }

    /// Rate of session `s` in capacity units.
    pub fn rate(&self, s: usize) -> BigRational {
        rat_int(self.dims[s] as i64) / rat_int(self.scale as i64)
    }

    /// Plain-text dump: field, dimensions, then one line of rows per edge.
    pub fn dump(&self) -> String {
        let mut out = format!(
            "q={}\ndims={}\nscale={}\n",
            self.field.q,
            self.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
            self.scale
        );
        for (e, m) in self.edge_matrices.iter().enumerate() {
            let rows: Vec<String> = (0..m.rows)
                .map(|r| {
                    (0..m.cols).map(|c| m.at(r, c).to_string()).collect::<Vec<_>>().join(" ")
                })
                .collect();
            out.push_str(&format!("e{}: {}\n", e + 1, rows.join(" ; ")));
        }
        out
    }
}

/// Is the code a valid zero-error code for the network: every edge matrix a
/// composition of local maps, every edge within capacity, every demand
/// decodable from its sink's incoming edges alone?
pub fn check_code(code: &LinearCode, net: &Network) -> Result<bool, CodeError> {
    if code.dims.len() != net.num_sessions() {
        return Err(CodeError::DimensionMismatch(format!(
            "{} session dimensions for {} sessions",
            code.dims.len(),
            net.num_sessions()
        )));
    }
    if code.edge_matrices.len() != net.num_edges() {
        return Err(CodeError::DimensionMismatch(format!(
            "{} edge matrices for {} edges",
            code.edge_matrices.len(),
            net.num_edges()
        )));
    }
    let k = code.message_dim();
    for (e, m) in code.edge_matrices.iter().enumerate() {
        if m.cols != k {
            return Err(CodeError::DimensionMismatch(format!(
                "edge {} matrix has {} columns, message dimension is {k}",
                e + 1,
                m.cols
            )));
        }
    }
    // Capacity: edge dimension within capacity * scale.
    for e in &net.edges {
        let dim = code.edge_matrices[e.id].rows;
        if rat_int(dim as i64) > e.capacity.clone() * rat_int(code.scale as i64) {
            return Ok(false);
        }
    }
    // Local composition: the global map of an edge must live in the row
    // space of its tail's inputs (parent edges plus locally available
    // sources).
    for e in &net.edges {
        let mut inputs: Vec<Var> = net
            .sessions
            .iter()
            .filter(|s| s.source == e.tail)
            .map(|s| Var::Source(s.id))
            .collect();
        inputs.extend(net.edges.iter().filter(|f| f.head == e.tail).map(|f| Var::Edge(f.id)));
        let base = code.rank(&inputs);
        let mut with_edge = inputs.clone();
        with_edge.push(Var::Edge(e.id));
        if code.rank(&with_edge) != base {
            return Ok(false);
        }
    }
    // Decodability at every sink of every session.
    for s in &net.sessions {
        for &u in &s.sinks {
            let incoming: Vec<Var> =
                net.edges.iter().filter(|e| e.head == u).map(|e| Var::Edge(e.id)).collect();
            let base = code.rank(&incoming);
            let mut with_source = incoming.clone();
            with_source.push(Var::Source(s.id));
            if code.rank(&with_source) != base {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `a` determines `b` under this code: adjoining `b` adds no rank.
pub fn verify_determination(code: &LinearCode, a: &[Var], b: &[Var]) -> bool {
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    code.rank(&both) == code.rank(a)
}

/// Conditional mutual information rank(a,c) + rank(b,c) - rank(c) - rank(a,b,c),
/// in units of log q.
pub fn rank_cmi(code: &LinearCode, a: &[Var], b: &[Var], c: &[Var]) -> i64 {
    let cat = |xs: &[&[Var]]| -> Vec<Var> { xs.concat() };
    let r = |vars: Vec<Var>| code.rank(&vars) as i64;
    r(cat(&[a, c])) + r(cat(&[b, c])) - r(c.to_vec()) - r(cat(&[a, b, c]))
}

/// Sample random local maps in topological edge order, compose them into
/// global matrices and keep the first code that checks out. Edge dimensions
/// are `floor(capacity * scale)`.
pub fn random_code(
    net: &Network,
    q: u16,
    dims: &[usize],
    scale: u32,
    attempts: u32,
    seed: u64,
) -> Option<LinearCode> {
    let field = Gf::new(q);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = topological_edge_order(net)?;
    let k: usize = dims.iter().sum();
    for _ in 0..attempts {
        let mut mats: Vec<Option<GfMatrix>> = vec![None; net.num_edges()];
        for &eid in &order {
            let e = &net.edges[eid];
            let cap_syms = (e.capacity.clone() * rat_int(scale as i64)).floor();
            let dim = cap_syms.numer().try_into().unwrap_or(0usize);
            // Stack the tail's inputs: local sources then parent edges.
            let mut input_rows: Vec<Vec<u16>> = Vec::new();
            for s in &net.sessions {
                if s.source == e.tail {
                    let off: usize = dims[..s.id].iter().sum();
                    for i in 0..dims[s.id] {
                        let mut row = vec![0u16; k];
                        row[off + i] = 1;
                        input_rows.push(row);
                    }
                }
            }
            for f in &net.edges {
                if f.head == e.tail {
                    let m = mats[f.id].as_ref().expect("parents precede in topological order");
                    for r in 0..m.rows {
                        input_rows.push(m.data[r * m.cols..(r + 1) * m.cols].to_vec());
                    }
                }
            }
            let input = GfMatrix::from_rows(field, input_rows);
            let mut local = GfMatrix::zeros(field, dim, input.rows);
            for r in 0..dim {
                for c in 0..input.rows {
                    local.set(r, c, rng.random_range(0..q));
                }
            }
            mats[eid] = Some(if input.rows == 0 {
                GfMatrix::zeros(field, dim, k)
            } else {
                local.matmul(&input)
            });
        }
        let code = LinearCode {
            field,
            dims: dims.to_vec(),
            scale,
            edge_matrices: mats.into_iter().map(Option::unwrap).collect(),
        };
        if check_code(&code, net) == Ok(true) {
            return Some(code);
        }
    }
    None
}

fn topological_edge_order(net: &Network) -> Option<Vec<usize>> {
    let n = net.num_nodes();
    let mut indeg = vec![0usize; n];
    for e in &net.edges {
        indeg[e.head] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut node_order = Vec::new();
    while let Some(v) = queue.pop() {
        node_order.push(v);
        for e in &net.edges {
            if e.tail == v {
                indeg[e.head] -= 1;
                if indeg[e.head] == 0 {
                    queue.push(e.head);
                }
            }
        }
    }
    if node_order.len() != n {
        return None;
    }
    let pos: Vec<usize> = {
        let mut p = vec![0; n];
        for (i, &v) in node_order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    let mut eids: Vec<usize> = (0..net.num_edges()).collect();
    eids.sort_by_key(|&e| pos[net.edges[e].tail]);
    Some(eids)
}

/// Outcome of the dominance probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// Some supplied code gains rank when the edge joins the set, so the set
    /// does not informationally dominate the edge.
    WitnessFound { code_index: usize },
    /// No supplied code distinguishes them. This proves nothing: dominance
    /// quantifies over all zero-error codes, including nonlinear ones.
    NoWitness,
}

/// Best-effort check that an edge set fails to informationally dominate `e`:
/// search the supplied codes for one where adding `e` increases rank.
///
/// Precondition: `e` must lie outside the set and outside its psi-closure
/// (otherwise dominance holds and no witness can exist).
pub fn psi_containment_probe(
    net: &Network,
    a_edges: &[usize],
    e: usize,
    codes: &[LinearCode],
) -> Result<ProbeOutcome, CodeError> {
    if a_edges.contains(&e) {
        return Err(CodeError::PreconditionViolated(format!(
            "edge {} is in the candidate set",
            e + 1
        )));
    }
    let g = crate::fdg::build_construction_b(net);
    let seed = crate::bitset::NodeSet::from_iter(
        a_edges.iter().map(|&eid| net.num_sessions() + eid),
    );
    let closure = crate::fdg::closure(&g, seed, crate::fdg::ClosureKind::Psi)
        .map_err(|err| CodeError::PreconditionViolated(err.to_string()))?;
    if closure.contains(net.num_sessions() + e) {
        return Err(CodeError::PreconditionViolated(format!(
            "edge {} already lies in the psi-closure of the set",
            e + 1
        )));
    }
    let a_vars: Vec<Var> = a_edges.iter().map(|&eid| Var::Edge(eid)).collect();
    for (i, code) in codes.iter().enumerate() {
        let mut with = a_vars.clone();
        with.push(Var::Edge(e));
        if code.rank(&with) > code.rank(&a_vars) {
            return Ok(ProbeOutcome::WitnessFound { code_index: i });
        }
    }
    Ok(ProbeOutcome::NoWitness)
}

/// The hand-written XOR code on the canonical butterfly over GF(2).
pub fn butterfly_xor_code() -> LinearCode {
    let f = Gf::new(2);
    let row = |r: Vec<u16>| GfMatrix::from_rows(f, vec![r]);
    LinearCode {
        field: f,
        dims: vec![1, 1],
        scale: 1,
        edge_matrices: vec![
            row(vec![1, 0]), // e1 = Y1
            row(vec![1, 0]), // e2 = Y1
            row(vec![0, 1]), // e3 = Y2
            row(vec![0, 1]), // e4 = Y2
            row(vec![1, 1]), // e5 = Y1 + Y2
            row(vec![1, 1]), // e6 = Y1 + Y2
            row(vec![1, 1]), // e7 = Y1 + Y2
        ],
    }
}
