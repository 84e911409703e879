//! Prints t(G) and d(G) for the groups given on the command line.
//!
//! cargo run --release -p terrace-core --example counts -- Z5 Z6 D6 Z3xZ3

use std::time::Instant;

use terrace_core::enumerate::count_table;
use terrace_core::groups::parse_group_spec;

fn main() {
    let specs: Vec<String> = std::env::args().skip(1).collect();
    for spec in specs {
        let g = parse_group_spec(&spec).expect("valid group spec");
        let start = Instant::now();
        let (t, d) = count_table(&g).expect("order within cap");
        println!("{spec:>8} {t:>10} {d:>8}   {:.2}s", start.elapsed().as_secs_f64());
    }
}
