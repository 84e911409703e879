//! Named groups that have no constructor family of their own.
//!
//! | name            | realisation                                              |
//! |-----------------|----------------------------------------------------------|
//! | `A4`, `A5`, `A6`| alternating groups from `(1,2,3)` and an n- or (n−1)-cycle |
//! | `S4`, `S5`      | `(1,…,n)` and `(1,2)`                                    |
//! | `PSL2_p`        | Möbius maps `z+1`, `−1/z` on the projective line GF(p)∪{∞} |
//! | `PGL2_p`        | as `PSL2_p` plus `g·z` for the least primitive root `g`  |
//! | `G21_1`         | `SD(7,3,4)`                                              |
//! | `G27_3`         | Heisenberg group: affine maps of Z₃² generated by `(a,b)↦(a+1,b)`, `(a,b)↦(a,a+b)` |
//! | `G27_4`         | `SD(9,3,7)`                                              |
//! | `G39_1`         | `SD(13,3,3)`                                             |
//! | `G16_6`         | `SD(8,2,5)`, the modular group Z₈⋊Z₂                     |
//! | `G16_13`        | Pauli group D₈∘Z₄ acting on the 8 points `i^k e_j`       |
//!
//! Projective points are numbered `1..=p` for `0..p−1` and `p+1` for ∞.

use super::perm::{closure_from_permutations, parse_cycles, DEFAULT_CLOSURE_CAP};
use super::{build_semidirect_cyclic, Group, GroupError};

const PRIMES: [usize; 4] = [3, 5, 7, 11];

/// Every catalogue identifier accepted by [`named_group`].
pub fn catalogue_names() -> Vec<String> {
    let mut names: Vec<String> = ["A4", "S4", "A5", "S5", "A6"].iter().map(|s| s.to_string()).collect();
    for p in PRIMES {
        names.push(format!("PSL2_{p}"));
    }
    for p in [3, 5, 7] {
        names.push(format!("PGL2_{p}"));
    }
    for s in ["G16_6", "G16_13", "G21_1", "G27_3", "G27_4", "G39_1"] {
        names.push(s.to_string());
    }
    names
}

fn from_cycles(name: &str, degree: usize, gens: &[&str]) -> Result<Group, GroupError> {
    let gens = gens.iter().map(|g| parse_cycles(g, degree)).collect::<Result<Vec<_>, _>>()?;
    closure_from_permutations(degree, &gens, DEFAULT_CLOSURE_CAP, name)
}

fn mod_inv(x: usize, p: usize) -> usize {
    (1..p).find(|y| x * y % p == 1).expect("nonzero residue is invertible mod prime")
}

fn primitive_root(p: usize) -> usize {
    (2..p)
        .find(|&g| {
            let mut x = 1;
            (1..p - 1).all(|_| {
                x = x * g % p;
                x != 1
            })
        })
        .unwrap_or(1)
}

/// Möbius generators on the projective line over GF(p), 0-based points with
/// `p` standing for ∞.
fn projective_generators(p: usize, with_scaling: bool) -> Vec<Vec<usize>> {
    let inf = p;
    let translate: Vec<usize> = (0..=p).map(|z| if z == inf { inf } else { (z + 1) % p }).collect();
    let invert: Vec<usize> = (0..=p)
        .map(|z| match z {
            z if z == inf => 0,
            0 => inf,
            z => (p - mod_inv(z, p)) % p,
        })
        .collect();
    let mut gens = vec![translate, invert];
    if with_scaling {
        let g = primitive_root(p);
        gens.push((0..=p).map(|z| if z == inf { inf } else { z * g % p }).collect());
    }
    gens
}

/// Resolves a catalogue identifier.
pub fn named_group(name: &str) -> Result<Group, GroupError> {
    let renamed = |g: Group| g.with_spec(name);
    match name {
        "A4" => from_cycles(name, 4, &["(1,2,3)", "(2,3,4)"]),
        "S4" => from_cycles(name, 4, &["(1,2,3,4)", "(1,2)"]),
        "A5" => from_cycles(name, 5, &["(1,2,3)", "(1,2,3,4,5)"]),
        "S5" => from_cycles(name, 5, &["(1,2,3,4,5)", "(1,2)"]),
        "A6" => from_cycles(name, 6, &["(1,2,3)", "(2,3,4,5,6)"]),
        "G21_1" => build_semidirect_cyclic(7, 3, 4).map(renamed),
        "G27_4" => build_semidirect_cyclic(9, 3, 7).map(renamed),
        "G39_1" => build_semidirect_cyclic(13, 3, 3).map(renamed),
        "G16_6" => build_semidirect_cyclic(8, 2, 5).map(renamed),
        // Points (a,b) of Z3^2 numbered 3a+b+1.
        "G27_3" => from_cycles(name, 9, &["(1,4,7)(2,5,8)(3,6,9)", "(4,5,6)(7,9,8)"]),
        // Points i^k e_j numbered 2k+j+1: X swaps e_0/e_1, Z negates e_1,
        // and iI shifts the phase.
        "G16_13" => from_cycles(name, 8, &["(1,2)(3,4)(5,6)(7,8)", "(2,6)(4,8)", "(1,3,5,7)(2,4,6,8)"]),
        _ => {
            let (kind, p) = name
                .split_once('_')
                .and_then(|(k, p)| p.parse::<usize>().ok().map(|p| (k, p)))
                .ok_or_else(|| GroupError::UnknownName(name.into()))?;
            let scaling = match kind {
                "PSL2" if PRIMES.contains(&p) => false,
                "PGL2" if PRIMES[..3].contains(&p) => true,
                _ => return Err(GroupError::UnknownName(name.into())),
            };
            let gens = projective_generators(p, scaling);
            closure_from_permutations(p + 1, &gens, DEFAULT_CLOSURE_CAP, name)
        }
    }
}
