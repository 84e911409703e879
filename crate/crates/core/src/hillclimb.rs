//! First-improvement hill climbing over arrangements.
//!
//! Moves cut the arrangement at one or two positions and reassemble the
//! pieces in another order, optionally reversing pieces (undirected mode
//! only). Only the junction entries of `b` change under such a move, so a
//! candidate is scored from O(k) bucket updates without building it.
//! When no neighbour is strictly higher, one random element is moved to the
//! end (a teleport) and the climb continues.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)`; a given seed,
//! parameter set and group spec always replay the same trajectory.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::Group;
use crate::par::{find_first, map_ordered, Exec};
use crate::props;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClimbError {
    #[error("hill climbing needs a group of order at least 2")]
    TooSmall,
    #[error("max_cuts must be 1 or 2, got {0}")]
    BadCuts(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClimbMode {
    /// Altitude = distinct entries of `b`; target is a directed terrace.
    Directed,
    /// Altitude = capped class counts; target is a terrace.
    Terrace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RestartPolicy {
    FreshRandom,
    TeleportOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClimbParams {
    pub mode: ClimbMode,
    pub max_cuts: u8,
    pub seed: u64,
    /// Budget per attempt, counting accepted moves and teleports.
    pub max_steps: u64,
    pub max_restarts: u32,
    pub restart_policy: RestartPolicy,
    pub record_trace: bool,
}

impl Default for ClimbParams {
    fn default() -> Self {
        Self {
            mode: ClimbMode::Directed,
            max_cuts: 2,
            seed: 0,
            max_steps: 1_000_000,
            max_restarts: 0,
            restart_policy: RestartPolicy::TeleportOnly,
            record_trace: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Found,
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClimbResult {
    pub outcome: Outcome,
    pub arrangement: Vec<usize>,
    pub altitude: usize,
    pub steps_taken: u64,
    pub teleports_taken: u64,
    pub restarts_taken: u32,
    pub seed: u64,
    /// Altitude after each accepted move, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<usize>>,
}

/// Running altitude of an arrangement, stored as bucket counts.
///
/// Directed mode buckets by element with cap 1; terrace mode buckets by
/// inverse-pair class with cap = class size.
#[derive(Debug, Clone)]
pub struct Altitude<'g> {
    g: &'g Group,
    mode: ClimbMode,
    counts: Vec<u32>,
    caps: Vec<u32>,
    value: usize,
}

impl<'g> Altitude<'g> {
    pub fn new(g: &'g Group, mode: ClimbMode, a: &[usize]) -> Self {
        let caps = match mode {
            ClimbMode::Directed => vec![1; g.order()],
            ClimbMode::Terrace => g.inverse_pair_classes().iter().map(|c| c.len() as u32).collect(),
        };
        let mut alt = Self { g, mode, counts: vec![0; caps.len()], caps, value: 0 };
        alt.reset(a);
        alt
    }

    pub fn value(&self) -> usize {
        self.value
    }

    fn reset(&mut self, a: &[usize]) {
        self.counts.fill(0);
        self.value = 0;
        for w in a.windows(2) {
            self.add(self.g.ldiv(w[0], w[1]));
        }
    }

    #[inline]
    fn bucket(&self, v: usize) -> usize {
        match self.mode {
            ClimbMode::Directed => v,
            ClimbMode::Terrace => self.g.class_of(v),
        }
    }

    #[inline]
    fn add(&mut self, v: usize) {
        let b = self.bucket(v);
        if self.counts[b] < self.caps[b] {
            self.value += 1;
        }
        self.counts[b] += 1;
    }

    #[inline]
    fn remove(&mut self, v: usize) {
        let b = self.bucket(v);
        self.counts[b] -= 1;
        if self.counts[b] < self.caps[b] {
            self.value -= 1;
        }
    }

    /// Altitude after swapping `removed` junction entries for `added` ones.
    fn probe(&mut self, removed: &[usize], added: &[usize]) -> usize {
        for &v in removed {
            self.remove(v);
        }
        for &v in added {
            self.add(v);
        }
        let out = self.value;
        for &v in added {
            self.remove(v);
        }
        for &v in removed {
            self.add(v);
        }
        out
    }
}

/// Full-recompute altitude for the given mode.
pub fn altitude(g: &Group, mode: ClimbMode, a: &[usize]) -> usize {
    match mode {
        ClimbMode::Directed => props::altitude_directed(g, a),
        ClimbMode::Terrace => props::altitude_undirected(g, a),
    }
}

/// A cut-and-reassemble move.
///
/// `cuts` holds one or two positions in `1..n` (a cut at `i` separates
/// `a_i` from `a_{i+1}`). Pieces are numbered left to right; `order` lists
/// them in their new order and bit `p` of `reverse` reverses piece `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub cuts: [usize; 2],
    pub ncuts: usize,
    pub order: [u8; 3],
    pub reverse: u8,
}

const ORDERS_1: [[u8; 3]; 2] = [[0, 1, 2], [1, 0, 2]];
const ORDERS_2: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

impl Move {
    fn pieces(&self, n: usize) -> [(usize, usize); 3] {
        match self.ncuts {
            1 => [(0, self.cuts[0]), (self.cuts[0], n), (n, n)],
            _ => [(0, self.cuts[0]), (self.cuts[0], self.cuts[1]), (self.cuts[1], n)],
        }
    }

    fn is_identity(&self, n: usize) -> bool {
        let pieces = self.pieces(n);
        let in_place = self.order[..=self.ncuts].iter().enumerate().all(|(i, &p)| i == p as usize);
        let noop_reversal = (0..=self.ncuts).all(|p| self.reverse & (1 << p) == 0 || pieces[p].1 - pieces[p].0 <= 1);
        in_place && noop_reversal
    }

    pub fn apply(&self, a: &[usize]) -> Vec<usize> {
        let pieces = self.pieces(a.len());
        let mut out = Vec::with_capacity(a.len());
        for &p in &self.order[..=self.ncuts] {
            let (s, e) = pieces[p as usize];
            if self.reverse & (1 << p) != 0 {
                out.extend(a[s..e].iter().rev());
            } else {
                out.extend_from_slice(&a[s..e]);
            }
        }
        out
    }

    /// Old junction entries removed and new ones created by the move.
    fn junctions(&self, g: &Group, a: &[usize], removed: &mut [usize; 2], added: &mut [usize; 2]) {
        let pieces = self.pieces(a.len());
        for (slot, &c) in removed.iter_mut().zip(&self.cuts[..self.ncuts]) {
            *slot = g.ldiv(a[c - 1], a[c]);
        }
        let ends = |p: u8| {
            let (s, e) = pieces[p as usize];
            if self.reverse & (1 << p) != 0 {
                (a[e - 1], a[s])
            } else {
                (a[s], a[e - 1])
            }
        };
        for (slot, pair) in added.iter_mut().zip(self.order[..=self.ncuts].windows(2)) {
            let (_, last) = ends(pair[0]);
            let (first, _) = ends(pair[1]);
            *slot = g.ldiv(last, first);
        }
    }
}

/// Calls `f` on every move with exactly `cuts` cuts, in scan order: cut
/// positions ascending, then piece orders (lexicographic), then reversal
/// masks ascending. The identity rearrangement is skipped. Stops early
/// when `f` returns `true`.
fn for_each_move(n: usize, cuts: usize, allow_reversal: bool, mut f: impl FnMut(&Move) -> bool) -> bool {
    let masks: u8 = if allow_reversal { 1 << (cuts + 1) } else { 1 };
    let mut visit = |mv: &mut Move, orders: &[[u8; 3]]| {
        for order in orders {
            mv.order = *order;
            for mask in 0..masks {
                mv.reverse = mask;
                if !mv.is_identity(n) && f(mv) {
                    return true;
                }
            }
        }
        false
    };
    if cuts == 1 {
        for i in 1..n {
            let mut mv = Move { cuts: [i, 0], ncuts: 1, order: [0, 1, 2], reverse: 0 };
            if visit(&mut mv, &ORDERS_1) {
                return true;
            }
        }
    } else {
        for i in 1..n {
            for j in i + 1..n {
                let mut mv = Move { cuts: [i, j], ncuts: 2, order: [0, 1, 2], reverse: 0 };
                if visit(&mut mv, &ORDERS_2) {
                    return true;
                }
            }
        }
    }
    false
}

/// All neighbours reachable with exactly `cuts` cuts, in scan order.
pub fn neighbors(a: &[usize], cuts: usize, allow_reversal: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_move(a.len(), cuts, allow_reversal, |mv| {
        out.push(mv.apply(a));
        false
    });
    out
}

/// The moves themselves, in scan order.
pub fn moves(n: usize, cuts: usize, allow_reversal: bool) -> Vec<Move> {
    let mut out = Vec::new();
    for_each_move(n, cuts, allow_reversal, |mv| {
        out.push(*mv);
        false
    });
    out
}

/// Moves the element at `index` to the end.
pub fn teleport_at(a: &[usize], index: usize) -> Vec<usize> {
    let mut out = a.to_vec();
    let x = out.remove(index);
    out.push(x);
    out
}

/// Moves a uniformly chosen element to the end.
pub fn teleport(a: &[usize], rng: &mut impl Rng) -> Vec<usize> {
    let i = rng.random_range(0..a.len());
    teleport_at(a, i)
}

struct Climber<'g> {
    g: &'g Group,
    params: ClimbParams,
    alt: Altitude<'g>,
    a: Vec<usize>,
}

impl Climber<'_> {
    /// First strictly higher neighbour in scan order, one cut before two.
    fn improving_move(&mut self) -> Option<Move> {
        let target = self.alt.value();
        let n = self.a.len();
        let allow_reversal = self.params.mode == ClimbMode::Terrace;
        let (g, a, alt) = (self.g, &self.a, &mut self.alt);
        let mut found = None;
        for cuts in 1..=self.params.max_cuts as usize {
            let hit = for_each_move(n, cuts, allow_reversal, |mv| {
                let (mut removed, mut added) = ([0; 2], [0; 2]);
                mv.junctions(g, a, &mut removed, &mut added);
                if alt.probe(&removed[..mv.ncuts], &added[..mv.ncuts]) > target {
                    found = Some(*mv);
                    true
                } else {
                    false
                }
            });
            if hit {
                break;
            }
        }
        found
    }

    fn set(&mut self, a: Vec<usize>) {
        self.alt.reset(&a);
        self.a = a;
    }
}

/// Runs one climb on `g`.
pub fn climb(g: &Group, params: &ClimbParams) -> Result<ClimbResult, ClimbError> {
    let n = g.order();
    if n < 2 {
        return Err(ClimbError::TooSmall);
    }
    if !(1..=2).contains(&params.max_cuts) {
        return Err(ClimbError::BadCuts(params.max_cuts));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut start: Vec<usize> = (0..n).collect();
    start.shuffle(&mut rng);
    let mut c = Climber { g, params: params.clone(), alt: Altitude::new(g, params.mode, &start), a: start };
    let mut trace = params.record_trace.then(Vec::new);
    let (mut steps, mut teleports, mut restarts) = (0u64, 0u64, 0u32);
    let mut attempt_steps = 0u64;

    loop {
        debug_assert_eq!(c.alt.value(), altitude(g, params.mode, &c.a));
        if c.alt.value() == n - 1 {
            let verified = match params.mode {
                ClimbMode::Directed => props::is_directed_terrace(g, &c.a),
                ClimbMode::Terrace => props::is_terrace(g, &c.a),
            };
            assert!(verified, "altitude bookkeeping disagrees with the verifier");
            return Ok(ClimbResult {
                outcome: Outcome::Found,
                altitude: n - 1,
                arrangement: c.a,
                steps_taken: steps,
                teleports_taken: teleports,
                restarts_taken: restarts,
                seed: params.seed,
                trace,
            });
        }
        if attempt_steps >= params.max_steps {
            if restarts >= params.max_restarts {
                return Ok(ClimbResult {
                    outcome: Outcome::Exhausted,
                    altitude: c.alt.value(),
                    arrangement: c.a,
                    steps_taken: steps,
                    teleports_taken: teleports,
                    restarts_taken: restarts,
                    seed: params.seed,
                    trace,
                });
            }
            restarts += 1;
            attempt_steps = 0;
            let next = match params.restart_policy {
                RestartPolicy::FreshRandom => {
                    let mut a: Vec<usize> = (0..n).collect();
                    a.shuffle(&mut rng);
                    a
                }
                RestartPolicy::TeleportOnly => teleport(&c.a, &mut rng),
            };
            c.set(next);
            continue;
        }
        attempt_steps += 1;
        match c.improving_move() {
            Some(mv) => {
                let next = mv.apply(&c.a);
                c.set(next);
                steps += 1;
                if let Some(t) = trace.as_mut() {
                    t.push(c.alt.value());
                }
            }
            None => {
                let next = teleport(&c.a, &mut rng);
                c.set(next);
                teleports += 1;
            }
        }
    }
}

/// Runs one climb per seed and returns all results in seed order.
pub fn climb_many(g: &Group, params: &ClimbParams, seeds: &[u64], exec: Exec) -> Result<Vec<ClimbResult>, ClimbError> {
    map_ordered(exec, seeds, |&seed| climb(g, &ClimbParams { seed, ..params.clone() })).into_iter().collect()
}

/// The successful climb with the earliest seed in `seeds`, if any.
pub fn first_found(
    g: &Group,
    params: &ClimbParams,
    seeds: &[u64],
    exec: Exec,
) -> Result<Option<ClimbResult>, ClimbError> {
    if g.order() < 2 {
        return Err(ClimbError::TooSmall);
    }
    Ok(find_first(exec, seeds, |&seed| {
        climb(g, &ClimbParams { seed, ..params.clone() }).ok().filter(|r| r.outcome == Outcome::Found)
    }))
}
