//! Terrace-preserving cut-and-reassemble moves.
//!
//! A terrace is cut once, the two pieces are glued back in either order
//! (optionally reversing pieces) and the result is kept when it is again a
//! terrace. The orbit of a terrace is its closure under these moves without
//! piece reversal, plus reversal of the whole sequence; chains also allow
//! reversing single pieces. Both closures are taken over canonical forms, so
//! their sizes count essentially different terraces.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{automorphisms_with_cap, Automorphism, Group, GroupError, DEFAULT_AUT_CAP};
use crate::hillclimb::moves;
use crate::par::{map_ordered, Exec};
use crate::props::{self, canonical_form_with, is_terrace, to_basic};

#[derive(Debug, Error)]
pub enum OrbitError {
    #[error("input arrangement is not a terrace")]
    NotTerrace,
    #[error(transparent)]
    Props(#[from] props::PropsError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Basic forms of every terrace one move away from `a`, in move order,
/// without duplicates and without `a`'s own basic form. Whole reversal is
/// always tried first.
pub fn two_piece_moves(g: &Group, a: &[usize], allow_piece_reversal: bool) -> Result<Vec<Vec<usize>>, OrbitError> {
    props::check_arrangement(g, a)?;
    if !is_terrace(g, a) {
        return Err(OrbitError::NotTerrace);
    }
    Ok(raw_moves(g, a, allow_piece_reversal))
}

fn raw_moves(g: &Group, a: &[usize], allow_piece_reversal: bool) -> Vec<Vec<usize>> {
    let own = to_basic(g, a);
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut push = |c: Vec<usize>| {
        if is_terrace(g, &c) {
            let c = to_basic(g, &c);
            if c != own && !out.contains(&c) {
                out.push(c);
            }
        }
    };
    push(a.iter().rev().copied().collect());
    for mv in moves(a.len(), 1, allow_piece_reversal) {
        push(mv.apply(a));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub canonical: Vec<usize>,
    /// A concrete basic terrace with this canonical form.
    pub representative: Vec<usize>,
    /// Distinct canonical forms one move away.
    pub degree: usize,
}

/// Canonical forms in discovery order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerraceSet {
    members: Vec<Member>,
    #[serde(skip)]
    index: HashMap<Vec<usize>, usize>,
}

impl TerraceSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn contains(&self, canonical: &[usize]) -> bool {
        self.index.contains_key(canonical)
    }

    /// Canonical forms, sorted.
    pub fn canonical_forms(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self.members.iter().map(|m| m.canonical.clone()).collect();
        v.sort();
        v
    }

    fn insert(&mut self, g: &Group, canonical: Vec<usize>, representative: Vec<usize>) -> bool {
        if self.index.contains_key(&canonical) {
            return false;
        }
        assert!(is_terrace(g, &representative), "only terraces enter a TerraceSet");
        self.index.insert(canonical.clone(), self.members.len());
        self.members.push(Member { canonical, representative, degree: 0 });
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub found: Option<Vec<usize>>,
    pub visited: usize,
    /// True when the whole component was explored without a hit.
    pub exhausted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitConfig {
    pub aut_cap: usize,
    pub exec: Exec,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        Self { aut_cap: DEFAULT_AUT_CAP, exec: Exec::default() }
    }
}

struct Closure<'g> {
    g: &'g Group,
    auts: Vec<Automorphism>,
    allow_piece_reversal: bool,
    exec: Exec,
}

impl Closure<'_> {
    /// Level-synchronous BFS. Frontier expansion may run in parallel;
    /// insertion happens in frontier order, so the result is deterministic.
    /// Stops once `stop` accepts a new member or `limit` members exist.
    fn run(
        &self,
        start: &[usize],
        limit: usize,
        stop: impl Fn(&[usize]) -> bool,
    ) -> (TerraceSet, Option<Vec<usize>>, bool) {
        let g = self.g;
        let mut set = TerraceSet::default();
        let basic = to_basic(g, start);
        set.insert(g, canonical_form_with(g, &basic, &self.auts), basic.clone());
        if stop(&basic) {
            return (set, Some(basic), false);
        }
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let reps: Vec<Vec<usize>> = frontier.iter().map(|&i| set.members[i].representative.clone()).collect();
            let expanded = map_ordered(self.exec, &reps, |r| {
                raw_moves(g, r, self.allow_piece_reversal)
                    .into_iter()
                    .map(|c| (canonical_form_with(g, &c, &self.auts), c))
                    .collect::<Vec<_>>()
            });
            let mut next = Vec::new();
            for (&from, neighbours) in frontier.iter().zip(expanded) {
                let mut seen: Vec<&Vec<usize>> = neighbours.iter().map(|(c, _)| c).collect();
                seen.sort();
                seen.dedup();
                set.members[from].degree = seen.len();
                for (canonical, rep) in neighbours {
                    if set.len() >= limit {
                        return (set, None, false);
                    }
                    if set.insert(g, canonical, rep.clone()) {
                        if stop(&rep) {
                            return (set, Some(rep), false);
                        }
                        next.push(set.len() - 1);
                    }
                }
            }
            frontier = next;
        }
        (set, None, true)
    }
}

fn closure<'g>(
    g: &'g Group,
    a: &[usize],
    allow_piece_reversal: bool,
    cfg: &OrbitConfig,
) -> Result<Closure<'g>, OrbitError> {
    props::check_arrangement(g, a)?;
    if !is_terrace(g, a) {
        return Err(OrbitError::NotTerrace);
    }
    Ok(Closure { g, auts: automorphisms_with_cap(g, cfg.aut_cap)?, allow_piece_reversal, exec: cfg.exec })
}

/// The orbit of `a`: closure under piece-order swaps and whole reversal.
pub fn orbit_of(g: &Group, a: &[usize]) -> Result<TerraceSet, OrbitError> {
    orbit_of_with(g, a, &OrbitConfig::default())
}

pub fn orbit_of_with(g: &Group, a: &[usize], cfg: &OrbitConfig) -> Result<TerraceSet, OrbitError> {
    let c = closure(g, a, false, cfg)?;
    Ok(c.run(a, usize::MAX, |_| false).0)
}

/// Breadth-first walk with single-piece reversals allowed, stopping at the
/// first basic terrace satisfying `predicate` or after `limit` forms.
pub fn explore_chain(
    g: &Group,
    a: &[usize],
    limit: usize,
    predicate: impl Fn(&Group, &[usize]) -> bool,
) -> Result<ChainReport, OrbitError> {
    explore_chain_with(g, a, limit, predicate, &OrbitConfig::default())
}

pub fn explore_chain_with(
    g: &Group,
    a: &[usize],
    limit: usize,
    predicate: impl Fn(&Group, &[usize]) -> bool,
    cfg: &OrbitConfig,
) -> Result<ChainReport, OrbitError> {
    let c = closure(g, a, true, cfg)?;
    let (set, found, exhausted) = c.run(a, limit.max(1), |r| predicate(g, r));
    Ok(ChainReport { found, visited: set.len(), exhausted })
}

/// Predicate for [`explore_chain`]: an extendable basic terrace.
pub fn extendable(g: &Group, a: &[usize]) -> bool {
    matches!(props::is_extendable(g, a), Ok(Some(_)))
}
