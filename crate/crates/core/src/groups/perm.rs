//! Permutation groups by breadth-first closure.
//!
//! Products follow the left-to-right convention: `x·y` applies `x` first,
//! then `y`, so `(x·y)(i) = y(x(i))`. Published permutation terraces use
//! this convention.

use std::collections::HashMap;

use super::{Group, GroupError};

pub const DEFAULT_CLOSURE_CAP: usize = 1024;

/// Parses cycle notation over points `1..=degree`, e.g. `"(1,2)(3,4)"`.
/// `"()"` is the identity. Returns the 0-based image array.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Vec<usize>, GroupError> {
    let bad = |m: String| GroupError::InvalidPermutation(format!("{s}: {m}"));
    let mut img: Vec<usize> = (0..degree).collect();
    let mut touched = vec![false; degree];
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = compact.as_str();
    if rest.is_empty() {
        return Err(bad("empty".into()));
    }
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`".into()))?;
        let close = body.find(')').ok_or_else(|| bad("missing `)`".into()))?;
        let inner = &body[..close];
        rest = &body[close + 1..];
        if inner.is_empty() {
            continue;
        }
        let pts = inner
            .split(',')
            .map(|t| t.parse::<usize>().map_err(|_| bad(format!("bad point `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        for &p in &pts {
            if p == 0 || p > degree {
                return Err(bad(format!("point {p} outside 1..={degree}")));
            }
            if touched[p - 1] {
                return Err(bad(format!("point {p} repeated")));
            }
            touched[p - 1] = true;
        }
        for w in 0..pts.len() {
            img[pts[w] - 1] = pts[(w + 1) % pts.len()] - 1;
        }
    }
    Ok(img)
}

/// Cycle notation with 1-based points, each cycle led by its least point.
pub fn format_cycles(img: &[usize]) -> String {
    let mut seen = vec![false; img.len()];
    let mut out = String::new();
    for start in 0..img.len() {
        if seen[start] || img[start] == start {
            continue;
        }
        let mut cyc = vec![start + 1];
        seen[start] = true;
        let mut p = img[start];
        while p != start {
            seen[p] = true;
            cyc.push(p + 1);
            p = img[p];
        }
        let body: Vec<String> = cyc.iter().map(|p| p.to_string()).collect();
        out.push('(');
        out.push_str(&body.join(","));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn validate(img: &[usize], degree: usize) -> Result<(), GroupError> {
    if img.len() != degree {
        return Err(GroupError::InvalidPermutation(format!("expected {degree} images, got {}", img.len())));
    }
    let mut seen = vec![false; degree];
    for &p in img {
        if p >= degree || seen[p] {
            return Err(GroupError::InvalidPermutation(format!("{img:?} is not a bijection")));
        }
        seen[p] = true;
    }
    Ok(())
}

/// The group generated by `gens` (0-based image arrays on `degree` points).
///
/// Elements are numbered in breadth-first discovery order from the
/// identity, multiplying on the right by each generator in listed order.
pub fn closure_from_permutations(
    degree: usize,
    gens: &[Vec<usize>],
    cap: usize,
    spec: &str,
) -> Result<Group, GroupError> {
    if gens.is_empty() {
        return Err(GroupError::InvalidPermutation("no generators".into()));
    }
    for g in gens {
        validate(g, degree)?;
    }
    let cap = cap.min(super::MAX_ORDER);
    let identity: Vec<usize> = (0..degree).collect();
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut head = 0;
    while head < elems.len() {
        for g in gens {
            let prod: Vec<usize> = elems[head].iter().map(|&i| g[i]).collect();
            if !index.contains_key(&prod) {
                if elems.len() == cap {
                    return Err(GroupError::ClosureTooLarge { cap });
                }
                index.insert(prod.clone(), elems.len());
                elems.push(prod);
            }
        }
        head += 1;
    }
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    let mut prod = vec![0usize; degree];
    for x in &elems {
        for y in &elems {
            for (slot, &i) in prod.iter_mut().zip(x.iter()) {
                *slot = y[i];
            }
            table.push(index[&prod] as u16);
        }
    }
    let words = elems.iter().map(|e| format_cycles(e)).collect();
    Group::from_table(n, table, words, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_cyclic;

    #[test]
    fn cycle_round_trip() {
        let p = parse_cycles("(1,2)(3,4)", 4).unwrap();
        assert_eq!(p, vec![1, 0, 3, 2]);
        assert_eq!(format_cycles(&p), "(1,2)(3,4)");
        assert_eq!(format_cycles(&parse_cycles("(2,3,4)", 4).unwrap()), "(2,3,4)");
        assert_eq!(format_cycles(&parse_cycles("(3,4,2)", 4).unwrap()), "(2,3,4)");
        assert_eq!(format_cycles(&parse_cycles("()", 4).unwrap()), "()");
        assert!(parse_cycles("(1,1)", 4).is_err());
        assert!(parse_cycles("(1,5)", 4).is_err());
        assert!(parse_cycles("1,2", 4).is_err());
    }

    #[test]
    fn a4_from_generators() {
        let gens = vec![parse_cycles("(1,2,3)", 4).unwrap(), parse_cycles("(1,2)(3,4)", 4).unwrap()];
        let a4 = closure_from_permutations(4, &gens, DEFAULT_CLOSURE_CAP, "A4").unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(a4.involutions().len(), 3);
    }

    #[test]
    fn composition_is_left_to_right() {
        let gens = vec![parse_cycles("(1,2)", 3).unwrap(), parse_cycles("(2,3)", 3).unwrap()];
        let s3 = closure_from_permutations(3, &gens, 10, "S3").unwrap();
        let a = s3.element_by_word("(1,2)").unwrap();
        let b = s3.element_by_word("(2,3)").unwrap();
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!(s3.word(s3.mul(a, b)), "(1,3,2)");
    }

    #[test]
    fn long_cycle_matches_cyclic_table() {
        for n in 1..=12 {
            let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            let g = closure_from_permutations(n, &[c], 64, "C").unwrap();
            let z = build_cyclic(n).unwrap();
            assert_eq!(g.order_profile(), z.order_profile());
            assert_eq!(g.table(), z.table());
        }
    }

    #[test]
    fn cap_and_validation() {
        let gens = vec![parse_cycles("(1,2,3,4,5)", 5).unwrap(), parse_cycles("(1,2)", 5).unwrap()];
        assert!(matches!(
            closure_from_permutations(5, &gens, 100, "S5"),
            Err(GroupError::ClosureTooLarge { cap: 100 })
        ));
        assert!(closure_from_permutations(3, &[vec![0, 0, 1]], 10, "x").is_err());
        assert!(closure_from_permutations(3, &[], 10, "x").is_err());
    }
}
