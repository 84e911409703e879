use std::collections::HashSet;

use terrace_core::enumerate::{enumerate_basic, EnumKind, EnumMode};
use terrace_core::groups::parse_group_spec;
use terrace_core::orbit::{explore_chain, orbit_of, two_piece_moves};
use terrace_core::props::is_terrace;

const SMALL_GROUPS: &[&str] =
    &["Z1", "Z2", "Z3", "Z4", "E4", "Z5", "Z6", "D6", "Z7", "Z8", "Z4xZ2", "D8", "Q8", "E8", "Z9", "Z3xZ3"];

fn essential_terraces(spec: &str) -> Vec<Vec<usize>> {
    let g = parse_group_spec(spec).unwrap();
    let mode = EnumMode { kind: EnumKind::Terrace, count_only: false, essentially_different: true };
    let r = enumerate_basic(&g, mode).unwrap();
    assert_eq!(r.essential_count, Some(r.witnesses.len() as u64));
    r.witnesses
}

#[test]
fn orbit_sizes_divide_four_or_six() {
    for spec in SMALL_GROUPS {
        let g = parse_group_spec(spec).unwrap();
        let all = essential_terraces(spec);
        let mut covered: HashSet<Vec<usize>> = HashSet::new();
        for a in &all {
            if covered.contains(a) {
                continue;
            }
            let orbit = orbit_of(&g, a).unwrap();
            assert!([1, 2, 3, 4, 6].contains(&orbit.len()), "{spec}: orbit of {a:?} has {}", orbit.len());
            for m in orbit.members() {
                assert!(is_terrace(&g, &m.representative));
                assert!(covered.insert(m.canonical.clone()), "{spec}: orbits overlap");
            }
        }
        let everything: HashSet<Vec<usize>> = all.into_iter().collect();
        assert_eq!(covered, everything, "{spec}");
    }
}

#[test]
fn d6_has_two_essential_terraces() {
    let all = essential_terraces("D6");
    assert_eq!(all.len(), 2);
    let g = parse_group_spec("D6").unwrap();
    for a in &all {
        assert!([1, 2, 3, 4, 6].contains(&orbit_of(&g, a).unwrap().len()));
    }
}

#[test]
fn chain_never_exceeds_terrace_count() {
    for n in 2..=9 {
        let spec = format!("Z{n}");
        let g = parse_group_spec(&spec).unwrap();
        let all = essential_terraces(&spec);
        for a in &all {
            let r = explore_chain(&g, a, usize::MAX, |_, _| false).unwrap();
            assert!(r.exhausted && r.visited <= all.len(), "{spec}");
        }
    }
}

#[test]
fn chain_is_deterministic() {
    let g = parse_group_spec("Z9").unwrap();
    let a = &essential_terraces("Z9")[0];
    let r1 = explore_chain(&g, a, 50, |_, _| false).unwrap();
    let r2 = explore_chain(&g, a, 50, |_, _| false).unwrap();
    assert_eq!(r1, r2);
}

#[test]
fn z5_chain_within_table_bound() {
    let g = parse_group_spec("Z5").unwrap();
    let r = explore_chain(&g, &[0, 1, 4, 2, 3], usize::MAX, |_, _| false).unwrap();
    assert!(r.visited <= 3);
    assert!(!two_piece_moves(&g, &[0, 1, 4, 2, 3], false).unwrap().is_empty());
}
