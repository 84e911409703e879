//! Runs `search_first` for one group and kind, printing the witness.
//!
//! cargo run --release -p terrace-core --example search -- Q16 t2

use std::time::Instant;

use terrace_core::enumerate::{search_first, EnumKind};
use terrace_core::groups::parse_group_spec;

fn main() {
    let mut args = std::env::args().skip(1);
    let spec = args.next().expect("usage: search <group> <kind>");
    let kind: EnumKind = args.next().expect("usage: search <group> <kind>").parse().expect("kind");
    let g = parse_group_spec(&spec).expect("valid group spec");
    let start = Instant::now();
    let found = search_first(&g, kind).expect("search runs");
    let secs = start.elapsed().as_secs_f64();
    match found {
        Some(w) => println!("{spec} {kind}: found in {secs:.2}s {w:?}"),
        None => println!("{spec} {kind}: none ({secs:.2}s)"),
    }
}
