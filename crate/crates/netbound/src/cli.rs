//! Scriptable command-line front end.
//!
//! One command per invocation; deterministic output for identical inputs
//! and seed. Exit code 0 on success, 1 on domain errors (invalid network,
//! guard exceeded, unreadable file), 2 on usage errors.

use crate::bounds::{
    compare_regions, cut_set_region, fd_region, network_sharing_region, pde_region, Mode,
    NsQuantifier, Region, RegionRelation,
};
use crate::fdg::{build_construction_a, build_construction_b, dot_dump, id_table, subgraph_gbar, ClosureKind};
use crate::maxsets::all_max_sets_cyclic;
use crate::model::{parse_network, validate_network, Network};
use crate::polylp::{build_independent_lp, lp_region_probe, solve_lp, LpOutcome};
use crate::rational::{format_rational, parse_rational};
use crate::rankoracle::{check_code, random_code};
use crate::NodeSet;
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;

const USAGE: &str = "\
usage: netbound <command> [flags]

commands:
  validate  --net <path>                   check the network invariants
  fdg-dump  --net <path> --construction {A|B} [--gbar] [--ids]
  maxsets   --net <path> --construction {A|B} [--kind {phiA|phiB|psi}] [--independent]
  bound     --net <path> --bound {fd|cutset|ns|pde|ipde|lp} [--kind ...]
            [--independent] [--improved] [--W <list|all>] [--guard <n>] [--ns-exists]
  lp        --net <path> [--weights <list>] [--guard <n>] [--dump]
  compare   <left-region-file> <right-region-file>
  oracle    --net <path> --seed <u64> [--q <prime>] [--dims <list>]
            [--attempts <n>] [--scale <k>]
";

/// Run one invocation; returns (exit code, stdout, stderr).
pub fn run(args: &[String]) -> (i32, String, String) {
    match dispatch(args) {
        Ok(out) => (0, out, String::new()),
        Err(CliError::Usage(msg)) => (2, String::new(), format!("{msg}\n{USAGE}")),
        Err(CliError::Domain(msg)) => (1, String::new(), format!("{msg}\n")),
    }
}

enum CliError {
    Usage(String),
    Domain(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn domain(msg: impl Into<String>) -> CliError {
    CliError::Domain(msg.into())
}

struct Flags {
    named: BTreeMap<String, String>,
    bare: Vec<String>,
    positional: Vec<String>,
}

const BARE_FLAGS: &[&str] = &["--independent", "--improved", "--gbar", "--ids", "--dump", "--ns-exists"];

fn parse_flags(args: &[String]) -> Result<Flags, CliError> {
    let mut named = BTreeMap::new();
    let mut bare = Vec::new();
    let mut positional = Vec::new();
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if BARE_FLAGS.contains(&a.as_str()) {
            bare.push(a.clone());
        } else if let Some(name) = a.strip_prefix("--") {
            let value = it.next().ok_or_else(|| usage(format!("flag --{name} needs a value")))?;
            named.insert(name.to_string(), value.clone());
        } else {
            positional.push(a.clone());
        }
    }
    Ok(Flags { named, bare, positional })
}

impl Flags {
    fn has(&self, flag: &str) -> bool {
        self.bare.iter().any(|b| b == flag)
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.named.get(name).map(|s| s.as_str())
    }

    fn require(&self, name: &str) -> Result<&str, CliError> {
        self.get(name).ok_or_else(|| usage(format!("missing --{name}")))
    }

    fn guard(&self, default: usize) -> Result<usize, CliError> {
        match self.get("guard") {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| usage(format!("bad --guard {v}"))),
        }
    }
}

fn load_network(flags: &Flags) -> Result<Network, CliError> {
    let path = flags.require("net")?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| domain(format!("cannot read network document {path}: {e}")))?;
    let net = parse_network(&text).map_err(|e| domain(e.to_string()))?;
    Ok(net)
}

fn load_valid_network(flags: &Flags) -> Result<Network, CliError> {
    let net = load_network(flags)?;
    let report = validate_network(&net);
    if !report.is_ok() {
        let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(domain(format!("invalid network:\n{}", lines.join("\n"))));
    }
    Ok(net)
}

fn dispatch(args: &[String]) -> Result<String, CliError> {
    let Some(command) = args.first() else {
        return Err(usage("no command given"));
    };
    let flags = parse_flags(&args[1..])?;
    match command.as_str() {
        "validate" => cmd_validate(&flags),
        "fdg-dump" => cmd_fdg_dump(&flags),
        "maxsets" => cmd_maxsets(&flags),
        "bound" => cmd_bound(&flags),
        "lp" => cmd_lp(&flags),
        "compare" => cmd_compare(&flags),
        "oracle" => cmd_oracle(&flags),
        other => Err(usage(format!("unknown command {other:?}"))),
    }
}

fn cmd_validate(flags: &Flags) -> Result<String, CliError> {
    let net = load_network(flags)?;
    let report = validate_network(&net);
    if report.is_ok() {
        Ok("ok\n".to_string())
    } else {
        let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        Err(domain(lines.join("\n")))
    }
}

fn parse_construction(flags: &Flags) -> Result<char, CliError> {
    match flags.require("construction")? {
        "A" => Ok('A'),
        "B" => Ok('B'),
        other => Err(usage(format!("bad --construction {other:?}, expected A or B"))),
    }
}

fn cmd_fdg_dump(flags: &Flags) -> Result<String, CliError> {
    let net = load_valid_network(flags)?;
    let g = match parse_construction(flags)? {
        'A' => build_construction_a(&net),
        _ => build_construction_b(&net),
    };
    let g = if flags.has("--gbar") {
        subgraph_gbar(&g).map_err(|e| domain(e.to_string()))?
    } else {
        g
    };
    if flags.has("--ids") {
        Ok(id_table(&g))
    } else {
        Ok(dot_dump(&g))
    }
}

fn parse_kind(flags: &Flags, construction: char) -> Result<ClosureKind, CliError> {
    let kind = match flags.get("kind") {
        Some("phiA") => ClosureKind::PhiA,
        Some("phiB") => ClosureKind::PhiB,
        Some("psi") => ClosureKind::Psi,
        Some(other) => return Err(usage(format!("bad --kind {other:?}"))),
        None => match (construction, flags.has("--independent")) {
            ('A', _) => ClosureKind::PhiA,
            ('B', false) => ClosureKind::PhiB,
            ('B', true) => ClosureKind::Psi,
            _ => unreachable!(),
        },
    };
    let compatible = matches!(
        (construction, kind),
        ('A', ClosureKind::PhiA) | ('B', ClosureKind::PhiB) | ('B', ClosureKind::Psi)
    );
    if !compatible {
        return Err(usage(format!("--kind {kind:?} does not fit construction {construction}")));
    }
    Ok(kind)
}

fn cmd_maxsets(flags: &Flags) -> Result<String, CliError> {
    let net = load_valid_network(flags)?;
    let construction = parse_construction(flags)?;
    let kind = parse_kind(flags, construction)?;
    let g = match construction {
        'A' => build_construction_a(&net),
        _ => build_construction_b(&net),
    };
    let sets = all_max_sets_cyclic(&g, NodeSet::EMPTY, kind).map_err(|e| domain(e.to_string()))?;
    if sets.precondition_failed {
        return Err(domain("no maximal irreducible set exists outside the excluded nodes".to_string()));
    }
    Ok(sets.to_text())
}

/// Parse `--W`: `all` is the full session set; otherwise a 1-based comma
/// list like `1,3`. Absent means every nonempty subset.
fn parse_w(flags: &Flags, num_sessions: usize) -> Result<Option<u32>, CliError> {
    let Some(spec) = flags.get("W") else { return Ok(None) };
    if spec == "all" {
        return Ok(Some((1u32 << num_sessions) - 1));
    }
    let mut mask = 0u32;
    for part in spec.split(',') {
        let id: usize = part
            .parse()
            .ok()
            .filter(|&id| id >= 1 && id <= num_sessions)
            .ok_or_else(|| usage(format!("bad session id {part:?} in --W")))?;
        mask |= 1 << (id - 1);
    }
    Ok(Some(mask))
}

fn restrict(region: &Region, w: Option<u32>) -> Region {
    match w {
        None => region.clone(),
        Some(mask) => {
            let mut r = region.clone();
            r.constants.retain(|k, _| *k == mask);
            r
        }
    }
}

fn cmd_bound(flags: &Flags) -> Result<String, CliError> {
    let net = load_valid_network(flags)?;
    let which = flags.require("bound")?;
    let w = parse_w(flags, net.num_sessions())?;
    let region = match which {
        "fd" => {
            let kind = match flags.get("kind") {
                Some("phiA") => ClosureKind::PhiA,
                Some("phiB") => ClosureKind::PhiB,
                Some("psi") => ClosureKind::Psi,
                Some(other) => return Err(usage(format!("bad --kind {other:?}"))),
                None if flags.has("--independent") => ClosureKind::Psi,
                None => ClosureKind::PhiB,
            };
            fd_region(&net, kind).map_err(|e| domain(e.to_string()))?
        }
        "cutset" => cut_set_region(&net),
        "ns" => {
            let quant = if flags.has("--ns-exists") {
                NsQuantifier::Exists
            } else {
                NsQuantifier::ForAll
            };
            network_sharing_region(&net, quant).map_err(|e| domain(e.to_string()))?
        }
        "pde" | "ipde" => {
            let improved = which == "ipde" || flags.has("--improved");
            pde_region(&net, improved, flags.guard(16)?).map_err(|e| domain(e.to_string()))?
        }
        "lp" => {
            let guard = flags.guard(12)?;
            let mut region = Region {
                mode: Mode::Independent,
                num_sessions: net.num_sessions(),
                constants: BTreeMap::new(),
                provenance: "lp".to_string(),
            };
            let masks: Vec<u32> = match w {
                Some(m) => vec![m],
                None => (1..(1u32 << net.num_sessions())).collect(),
            };
            for mask in masks {
                let value = match lp_region_probe(&net, mask, guard)
                    .map_err(|e| domain(e.to_string()))?
                {
                    LpOutcome::Optimal { value, .. } => {
                        crate::bounds::RegionValue::Finite(value)
                    }
                    LpOutcome::Unbounded => crate::bounds::RegionValue::Infinite,
                    LpOutcome::Infeasible => {
                        return Err(domain("network LP is infeasible".to_string()))
                    }
                };
                region.constants.insert(mask, value);
            }
            return Ok(restrict(&region, w).to_text());
        }
        other => return Err(usage(format!("bad --bound {other:?}"))),
    };
    Ok(restrict(&region, w).to_text())
}

fn cmd_lp(flags: &Flags) -> Result<String, CliError> {
    let net = load_valid_network(flags)?;
    let weights: Vec<BigRational> = match flags.get("weights") {
        None => vec![BigRational::one(); net.num_sessions()],
        Some(spec) => {
            let parsed: Result<Vec<BigRational>, String> =
                spec.split(',').map(parse_rational).collect();
            let parsed = parsed.map_err(|e| usage(format!("bad --weights: {e}")))?;
            if parsed.len() != net.num_sessions() {
                return Err(usage(format!(
                    "--weights needs {} entries",
                    net.num_sessions()
                )));
            }
            parsed
        }
    };
    let problem =
        build_independent_lp(&net, &weights, flags.guard(12)?).map_err(|e| domain(e.to_string()))?;
    if flags.has("--dump") {
        return Ok(problem.dump());
    }
    match solve_lp(&problem) {
        LpOutcome::Optimal { value, .. } => Ok(format!("optimum {}\n", format_rational(&value))),
        LpOutcome::Unbounded => Ok("unbounded\n".to_string()),
        LpOutcome::Infeasible => Ok("infeasible\n".to_string()),
    }
}

fn cmd_compare(flags: &Flags) -> Result<String, CliError> {
    if flags.positional.len() != 2 {
        return Err(usage("compare needs two region files"));
    }
    let mut regions = Vec::new();
    for path in &flags.positional {
        let text = std::fs::read_to_string(path)
            .map_err(|e| domain(format!("cannot read region file {path}: {e}")))?;
        regions.push(Region::parse_text(&text).map_err(domain)?);
    }
    let subset = |mask: u32, n: usize| {
        let ids: Vec<String> =
            (0..n).filter(|s| mask & (1 << s) != 0).map(|s| (s + 1).to_string()).collect();
        format!("{{{}}}", ids.join(","))
    };
    let n = regions[0].num_sessions;
    match compare_regions(&regions[0], &regions[1]).map_err(|e| domain(e.to_string()))? {
        RegionRelation::Equal => Ok("equal\n".to_string()),
        RegionRelation::LeftInsideRight { witness } => {
            Ok(format!("left strictly inside right; witness {}\n", subset(witness, n)))
        }
        RegionRelation::RightInsideLeft { witness } => {
            Ok(format!("right strictly inside left; witness {}\n", subset(witness, n)))
        }
        RegionRelation::Incomparable { left_tighter, right_tighter } => Ok(format!(
            "incomparable; left tighter at {}, right tighter at {}\n",
            subset(left_tighter, n),
            subset(right_tighter, n)
        )),
    }
}

fn cmd_oracle(flags: &Flags) -> Result<String, CliError> {
    let net = load_valid_network(flags)?;
    let seed: u64 = flags
        .require("seed")?
        .parse()
        .map_err(|_| usage("bad --seed"))?;
    let q: u16 = match flags.get("q") {
        None => 2,
        Some(v) => v.parse().map_err(|_| usage("bad --q"))?,
    };
    let dims: Vec<usize> = match flags.get("dims") {
        None => vec![1; net.num_sessions()],
        Some(spec) => {
            let parsed: Option<Vec<usize>> = spec.split(',').map(|p| p.parse().ok()).collect();
            parsed.ok_or_else(|| usage("bad --dims"))?
        }
    };
    if dims.len() != net.num_sessions() {
        return Err(usage(format!("--dims needs {} entries", net.num_sessions())));
    }
    let attempts: u32 = match flags.get("attempts") {
        None => 200,
        Some(v) => v.parse().map_err(|_| usage("bad --attempts"))?,
    };
    let scale: u32 = match flags.get("scale") {
        None => 1,
        Some(v) => v.parse().map_err(|_| usage("bad --scale"))?,
    };
    if !crate::rankoracle::is_prime(q) || q > 251 {
        return Err(usage(format!("--q {q} is not a prime <= 251")));
    }
    match random_code(&net, q, &dims, scale, attempts, seed) {
        None => Err(domain(format!("no valid code found in {attempts} attempts"))),
        Some(code) => {
            debug_assert_eq!(check_code(&code, &net), Ok(true));
            Ok(code.dump())
        }
    }
}
