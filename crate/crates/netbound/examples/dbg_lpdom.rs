#[path = "../tests/common/mod.rs"]
mod common;
use common::*;
use netbound::polylp::{lp_region_probe, LpOutcome};
use std::time::Instant;
fn main() {
    for seed in [14u64, 8] {
        let net = random_network(seed);
        let n = net.num_sessions() + net.num_edges();
        eprintln!("starting seed {seed}: n={n} S={}", net.num_sessions());
        let t = Instant::now();
        for w in 1u32..(1 << net.num_sessions()) {
            let tw = Instant::now();
            match lp_region_probe(&net, w, 12).unwrap() {
                LpOutcome::Optimal { .. } => {}
                other => eprintln!("  seed {seed} W={w:#b}: {other:?}"),
            }
            eprintln!("  seed {seed} W={w:#b}: {:?}", tw.elapsed());
        }
        eprintln!("seed {seed}: done in {:?}", t.elapsed());
    }
}
