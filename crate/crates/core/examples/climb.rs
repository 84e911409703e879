//! Multi-seed directed climbs: `climb <spec>...`

use std::time::Instant;

use terrace_core::groups::parse_group_spec;
use terrace_core::hillclimb::{climb, ClimbParams};

fn main() {
    for spec in std::env::args().skip(1) {
        let g = parse_group_spec(&spec).expect("group spec");
        for seed in 0..8 {
            let t = Instant::now();
            let r = climb(&g, &ClimbParams { seed, ..ClimbParams::default() }).unwrap();
            println!(
                "{spec} seed={seed} {:?} steps={} teleports={} {:.2}s",
                r.outcome,
                r.steps_taken,
                r.teleports_taken,
                t.elapsed().as_secs_f64()
            );
        }
    }
}
