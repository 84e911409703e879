//! Automorphism groups of small groups.
//!
//! A greedy generating set is chosen (repeatedly add the least id outside
//! the current closure), then generator images are assigned by
//! backtracking over elements of matching order. Each partial assignment is
//! propagated along the Cayley graph of the generators assigned so far;
//! a conflicting or non-injective propagation prunes the branch.

use super::{Group, GroupError};

pub const DEFAULT_AUT_CAP: usize = 32;

/// A permutation of element ids that respects multiplication.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism(Vec<u16>);

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Self((0..n as u16).collect())
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0u16; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            out[y as usize] = x as u16;
        }
        Self(out)
    }

    /// Checks `φ(x·y) = φ(x)·φ(y)` for every pair and bijectivity.
    pub fn is_automorphism_of(&self, g: &Group) -> bool {
        let n = g.order();
        if self.0.len() != n || self.apply(0) != 0 {
            return false;
        }
        let mut seen = vec![false; n];
        for &y in &self.0 {
            if seen[y as usize] {
                return false;
            }
            seen[y as usize] = true;
        }
        (0..n).all(|x| (0..n).all(|y| self.apply(g.mul(x, y)) == g.mul(self.apply(x), self.apply(y))))
    }
}

/// `Aut(G)` sorted lexicographically, with the default order cap.
pub fn automorphisms(g: &Group) -> Result<Vec<Automorphism>, GroupError> {
    automorphisms_with_cap(g, DEFAULT_AUT_CAP)
}

pub fn automorphisms_with_cap(g: &Group, cap: usize) -> Result<Vec<Automorphism>, GroupError> {
    let n = g.order();
    if n > cap {
        return Err(GroupError::AutomorphismCap { order: n, cap });
    }
    let gens = greedy_generators(g);
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|&s| (1..n).filter(|&y| g.element_order(y) == g.element_order(s)).collect()).collect();

    let mut found = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    search(g, &gens, &candidates, &mut images, &mut found);
    found.sort();
    Ok(found)
}

fn greedy_generators(g: &Group) -> Vec<usize> {
    let n = g.order();
    let mut gens = Vec::new();
    let mut inside = vec![false; n];
    inside[0] = true;
    while let Some(x) = inside.iter().position(|&b| !b) {
        gens.push(x);
        inside.fill(false);
        for y in g.subgroup_closure(&gens) {
            inside[y] = true;
        }
    }
    gens
}

fn search(
    g: &Group,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    found: &mut Vec<Automorphism>,
) {
    let depth = images.len();
    if let Some(map) = propagate(g, &gens[..depth], images) {
        if depth == gens.len() {
            found.push(Automorphism(map.into_iter().map(|v| v as u16).collect()));
            return;
        }
    } else {
        return;
    }
    for &y in &candidates[depth] {
        images.push(y);
        search(g, gens, candidates, images, found);
        images.pop();
    }
}

/// Extends `gens[i] ↦ images[i]` over `⟨gens⟩` via `φ(x·s) = φ(x)·φ(s)`.
/// Returns the full map when `gens` generate `G` and the extension is a
/// consistent injection; for a proper subgroup returns a placeholder map
/// whose unreached entries are `usize::MAX`.
fn propagate(g: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let img = g.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[img] {
                    return None;
                }
                map[y] = img;
                used[img] = true;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}
