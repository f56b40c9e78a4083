//! Browser front end: paste a network document, explore its bottleneck sets
//! and outer bounds interactively. Compiled to WebAssembly for the static
//! page in `www/`; the same functions are plain Rust on native targets so
//! they can be tested without a browser.

use netbound::bounds::{
    compare_regions, cut_set_region, fd_region, network_sharing_region, pde_region, NsQuantifier,
    RegionRelation,
};
use netbound::fdg::{build_construction_a, build_construction_b, dot_dump, ClosureKind};
use netbound::maxsets::all_max_sets_cyclic;
use netbound::model::{parse_network, three_layer_view, validate_network, Network};
use netbound::NodeSet;

#[cfg(target_arch = "wasm32")]
use wasm_bindgen::prelude::wasm_bindgen;

fn load(doc: &str) -> Result<Network, String> {
    let net = parse_network(doc).map_err(|e| e.to_string())?;
    let report = validate_network(&net);
    if !report.is_ok() {
        let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(format!("invalid network:\n{}", lines.join("\n")));
    }
    Ok(net)
}

/// Validate a document and list the maximal irreducible sets of the chosen
/// construction (`"A"`, `"B"` or `"B-independent"`).
#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn maximal_sets(doc: &str, construction: &str) -> String {
    let run = || -> Result<String, String> {
        let net = load(doc)?;
        let (g, kind) = match construction {
            "A" => (build_construction_a(&net), ClosureKind::PhiA),
            "B" => (build_construction_b(&net), ClosureKind::PhiB),
            "B-independent" => (build_construction_b(&net), ClosureKind::Psi),
            other => return Err(format!("unknown construction {other:?}")),
        };
        let sets = all_max_sets_cyclic(&g, NodeSet::EMPTY, kind).map_err(|e| e.to_string())?;
        Ok(format!(
            "{} maximal irreducible sets ({} recursive calls):\n{}",
            sets.sets.len(),
            sets.calls,
            sets.to_text()
        ))
    };
    run().unwrap_or_else(|e| format!("error: {e}"))
}

/// Compute every bound the network supports and report how the functional
/// dependence bound relates to the cut-set bound.
#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn bounds_report(doc: &str) -> String {
    let run = || -> Result<String, String> {
        let net = load(doc)?;
        let mut out = String::new();
        let fd_b = fd_region(&net, ClosureKind::PhiB).map_err(|e| e.to_string())?;
        let psi = fd_region(&net, ClosureKind::Psi).map_err(|e| e.to_string())?;
        let cs = cut_set_region(&net);
        out.push_str("functional dependence bound (correlated sources):\n");
        out.push_str(&fd_b.to_text());
        out.push_str("\nfunctional dependence bound (independent sources):\n");
        out.push_str(&psi.to_text());
        out.push_str("\ncut-set bound:\n");
        out.push_str(&cs.to_text());
        match compare_regions(&fd_b, &cs).map_err(|e| e.to_string())? {
            RegionRelation::Equal => out.push_str("\nfd bound = cut-set bound here\n"),
            RegionRelation::LeftInsideRight { witness } => out.push_str(&format!(
                "\nfd bound strictly tighter than cut-set (witness subset mask {witness:#b})\n"
            )),
            other => out.push_str(&format!("\nfd vs cut-set: {other:?}\n")),
        }
        if let Ok(ns) = network_sharing_region(&net, NsQuantifier::ForAll) {
            out.push_str("\nnetwork sharing bound (three-layer):\n");
            out.push_str(&ns.to_text());
        }
        if net.num_edges() <= 12 {
            if let Ok(pde) = pde_region(&net, true, 12) {
                out.push_str("\nimproved progressive d-separation bound:\n");
                out.push_str(&pde.to_text());
            }
        }
        Ok(out)
    };
    run().unwrap_or_else(|e| format!("error: {e}"))
}

/// DOT rendering of a functional dependence graph for quick visualisation.
#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn fdg_dot(doc: &str, construction: &str) -> String {
    let run = || -> Result<String, String> {
        let net = load(doc)?;
        let g = match construction {
            "A" => build_construction_a(&net),
            "B" => build_construction_b(&net),
            other => return Err(format!("unknown construction {other:?}")),
        };
        let mut out = dot_dump(&g);
        if three_layer_view(&net).is_ok() {
            out.push_str("// three-layer network\n");
        }
        Ok(out)
    };
    run().unwrap_or_else(|e| format!("error: {e}"))
}
