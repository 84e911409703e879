//! Exhaustive backtracking over basic arrangements.
//!
//! The search extends prefixes `(e, a_2, …)` one element at a time and keeps
//! the partial difference lists in incremental tables, so every prune check
//! is O(k) for the k step lists tracked. Counting essentially different
//! solutions uses the automorphism group directly: a prefix is abandoned as
//! soon as some automorphism maps it to a lexicographically smaller one, and
//! the automorphisms that still fix the prefix are carried down the tree. At
//! a leaf those are exactly the stabiliser, which gives the orbit size and
//! hence the raw count for free.
//!
//! Work is split on the choice of `(a_2, a_3)`; per-branch results are
//! concatenated in branch order, so output is independent of threading.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{automorphisms_with_cap, Group, GroupError, DEFAULT_AUT_CAP};
use crate::par::{find_first, map_ordered, Exec};

/// Default order cap for terrace-type enumeration.
pub const DEFAULT_TERRACE_CAP: usize = 16;
/// Default order cap for directed enumeration.
pub const DEFAULT_DIRECTED_CAP: usize = 24;
/// Default order cap for `search_first`.
pub const DEFAULT_SEARCH_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("invalid mode: {0}")]
    InvalidMode(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Which family of arrangements to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum EnumKind {
    Directed,
    Terrace,
    /// Directed T_k-terrace for `k ≥ 2`.
    DirectedTk(usize),
    HalfAndHalf,
    Narcissistic,
    DirectedHalfAndHalf,
}

impl fmt::Display for EnumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumKind::Directed => f.write_str("directed"),
            EnumKind::Terrace => f.write_str("terrace"),
            EnumKind::DirectedTk(k) => write!(f, "t{k}"),
            EnumKind::HalfAndHalf => f.write_str("half-and-half"),
            EnumKind::Narcissistic => f.write_str("narcissistic"),
            EnumKind::DirectedHalfAndHalf => f.write_str("directed-half-and-half"),
        }
    }
}

impl FromStr for EnumKind {
    type Err = EnumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let kind = match s {
            "directed" | "t1" => EnumKind::Directed,
            "terrace" => EnumKind::Terrace,
            "half-and-half" | "hh" => EnumKind::HalfAndHalf,
            "narcissistic" => EnumKind::Narcissistic,
            "directed-half-and-half" | "dhh" => EnumKind::DirectedHalfAndHalf,
            _ => {
                let k = s
                    .strip_prefix('t')
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| EnumError::InvalidMode(format!("unknown kind `{s}`")))?;
                if k < 2 {
                    return Err(EnumError::InvalidMode(format!("T_{k} is not defined")));
                }
                EnumKind::DirectedTk(k)
            }
        };
        Ok(kind)
    }
}

impl From<EnumKind> for String {
    fn from(k: EnumKind) -> String {
        k.to_string()
    }
}

impl TryFrom<String> for EnumKind {
    type Error = EnumError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl EnumKind {
    fn is_directed(self) -> bool {
        matches!(self, EnumKind::Directed | EnumKind::DirectedTk(_) | EnumKind::DirectedHalfAndHalf)
    }

    fn needs_odd_order(self) -> bool {
        matches!(self, EnumKind::HalfAndHalf | EnumKind::Narcissistic | EnumKind::DirectedHalfAndHalf)
    }

    fn validate(self, n: usize) -> Result<(), EnumError> {
        if let EnumKind::DirectedTk(k) = self {
            if k < 2 {
                return Err(EnumError::InvalidMode("directed T_k needs k >= 2; use `directed` for k = 1".into()));
            }
            if k >= n {
                return Err(EnumError::InvalidMode(format!("T_{k} needs order > {k}, group has order {n}")));
            }
        }
        if self.needs_odd_order() && n.is_multiple_of(2) {
            return Err(EnumError::InvalidMode(format!("{self} is only defined for odd order, got {n}")));
        }
        Ok(())
    }

    /// Verifies a completed arrangement with the independent `props` code.
    pub fn verify(self, g: &Group, a: &[usize]) -> bool {
        use crate::props;
        match self {
            EnumKind::Directed => props::is_directed_terrace(g, a),
            EnumKind::Terrace => props::is_terrace(g, a),
            EnumKind::DirectedTk(k) => props::is_directed_tk(g, a, k).unwrap_or(false),
            EnumKind::HalfAndHalf => props::is_half_and_half(g, a).unwrap_or(false),
            EnumKind::Narcissistic => props::is_narcissistic(g, a).unwrap_or(false),
            EnumKind::DirectedHalfAndHalf => {
                props::is_directed_terrace(g, a) && props::is_half_and_half(g, a).unwrap_or(false)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumMode {
    pub kind: EnumKind,
    pub count_only: bool,
    pub essentially_different: bool,
}

impl EnumMode {
    pub fn count(kind: EnumKind) -> Self {
        Self { kind, count_only: true, essentially_different: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumResult {
    /// Number of basic sequences of the requested kind.
    pub raw_count: u64,
    /// Number of orbits under `Aut(G)`, when requested.
    pub essential_count: Option<u64>,
    /// Basic witnesses in DFS order; canonical representatives when
    /// counting essentially different solutions. Empty in count-only mode.
    pub witnesses: Vec<Vec<usize>>,
    pub automorphism_count: usize,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    pub terrace_cap: usize,
    pub directed_cap: usize,
    pub aut_cap: usize,
    pub exec: Exec,
}

impl Default for EnumConfig {
    fn default() -> Self {
        Self {
            terrace_cap: DEFAULT_TERRACE_CAP,
            directed_cap: DEFAULT_DIRECTED_CAP,
            aut_cap: DEFAULT_AUT_CAP,
            exec: Exec::default(),
        }
    }
}

struct Engine<'a> {
    g: &'a Group,
    n: usize,
    /// Number of step lists kept repeat-free (0 for undirected kinds).
    steps: usize,
    class_caps: bool,
    half: Option<usize>,
    mirror: bool,
    seq: Vec<usize>,
    used: Vec<bool>,
    diff_used: Vec<bool>,
    class_count: Vec<u8>,
    class_cap: Vec<u8>,
    first_half: Vec<u8>,
    b: Vec<usize>,
    auts: &'a [Vec<u16>],
    tied: Vec<u16>,
    tied_start: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

enum Stop {
    Found,
    Budget,
}

impl<'a> Engine<'a> {
    fn new(g: &'a Group, kind: EnumKind, auts: &'a [Vec<u16>]) -> Self {
        let n = g.order();
        let steps = match kind {
            EnumKind::Directed | EnumKind::DirectedHalfAndHalf => 1,
            EnumKind::DirectedTk(k) => k,
            _ => 0,
        };
        let half = kind.needs_odd_order().then_some((n - 1) / 2);
        let class_cap = g.inverse_pair_classes().iter().map(|c| c.len() as u8).collect();
        Self {
            g,
            n,
            steps,
            class_caps: !kind.is_directed(),
            half,
            mirror: kind == EnumKind::Narcissistic,
            seq: vec![0],
            used: {
                let mut u = vec![false; n];
                u[0] = true;
                u
            },
            diff_used: vec![false; steps * n],
            class_count: vec![0; g.class_count()],
            class_cap,
            first_half: vec![0; g.class_count()],
            b: Vec::with_capacity(n),
            auts,
            tied: (0..auts.len() as u16).collect(),
            tied_start: vec![0],
            nodes: 0,
            max_nodes: u64::MAX,
        }
    }

    /// Number of automorphisms fixing the current prefix, identity included.
    fn stabiliser(&self) -> usize {
        1 + self.tied.len() - self.tied_start[self.seq.len() - 1]
    }

    fn try_push(&mut self, x: usize) -> bool {
        if self.used[x] {
            return false;
        }
        let d = self.seq.len();
        let n = self.n;
        let g = self.g;
        let prev = self.seq[d - 1];
        let bv = g.ldiv(prev, x);
        let bi = d - 1;
        if self.mirror && bi >= self.half.unwrap_or(usize::MAX) && bv != self.b[n - 2 - bi] {
            return false;
        }
        let c = g.class_of(bv);
        if self.class_caps && self.class_count[c] >= self.class_cap[c] {
            return false;
        }
        if let Some(h) = self.half {
            if bi < h && self.first_half[c] > 0 {
                return false;
            }
        }
        let steps = self.steps.min(d);
        if steps > 0 {
            if self.diff_used[bv] {
                return false;
            }
            for m in 2..=steps {
                let v = g.ldiv(self.seq[d - m], x);
                if self.diff_used[(m - 1) * n + v] {
                    return false;
                }
            }
        }
        let start = self.tied.len();
        for i in self.tied_start[d - 1]..start {
            let phi = self.tied[i];
            let y = self.auts[phi as usize][x] as usize;
            if y < x {
                self.tied.truncate(start);
                return false;
            }
            if y == x {
                self.tied.push(phi);
            }
        }
        self.tied_start.push(start);

        self.used[x] = true;
        self.seq.push(x);
        self.b.push(bv);
        self.class_count[c] += 1;
        if matches!(self.half, Some(h) if bi < h) {
            self.first_half[c] += 1;
        }
        if steps > 0 {
            self.diff_used[bv] = true;
            for m in 2..=steps {
                let v = g.ldiv(self.seq[d - m], x);
                self.diff_used[(m - 1) * n + v] = true;
            }
        }
        true
    }

    fn pop(&mut self) {
        let x = self.seq.pop().expect("pop below root");
        let d = self.seq.len();
        let bv = self.b.pop().expect("b tracks seq");
        let bi = d - 1;
        let c = self.g.class_of(bv);
        self.used[x] = false;
        self.class_count[c] -= 1;
        if matches!(self.half, Some(h) if bi < h) {
            self.first_half[c] -= 1;
        }
        let steps = self.steps.min(d);
        if steps > 0 {
            self.diff_used[bv] = false;
            for m in 2..=steps {
                let v = self.g.ldiv(self.seq[d - m], x);
                self.diff_used[(m - 1) * self.n + v] = false;
            }
        }
        let start = self.tied_start.pop().expect("tied tracks seq");
        self.tied.truncate(start);
    }

    fn dfs<F>(&mut self, depth_limit: usize, visit: &mut F) -> ControlFlow<Stop>
    where
        F: FnMut(&Self) -> ControlFlow<()>,
    {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return ControlFlow::Break(Stop::Budget);
        }
        let d = self.seq.len();
        if d == self.n || d == depth_limit {
            return match visit(self) {
                ControlFlow::Continue(()) => ControlFlow::Continue(()),
                ControlFlow::Break(()) => ControlFlow::Break(Stop::Found),
            };
        }
        if self.mirror && d > self.half.unwrap_or(usize::MAX) {
            let forced = self.g.mul(self.seq[d - 1], self.b[self.n - 1 - d]);
            if self.try_push(forced) {
                let r = self.dfs(depth_limit, visit);
                self.pop();
                r?;
            }
            return ControlFlow::Continue(());
        }
        for x in 1..self.n {
            if !self.used[x] && self.try_push(x) {
                let r = self.dfs(depth_limit, visit);
                self.pop();
                r?;
            }
        }
        ControlFlow::Continue(())
    }

    fn replay(&mut self, prefix: &[usize]) -> bool {
        prefix[1..].iter().all(|&x| self.try_push(x))
    }
}

const SPLIT_DEPTH: usize = 3;

fn aut_tables(g: &Group, cap: usize) -> Result<Vec<Vec<u16>>, EnumError> {
    Ok(automorphisms_with_cap(g, cap)?
        .into_iter()
        .skip(1) // identity is first in lexicographic order
        .map(|a| a.images().to_vec())
        .collect())
}

/// Surviving prefixes of length `SPLIT_DEPTH` (or complete solutions if the
/// group is smaller), in DFS order.
fn split_prefixes(g: &Group, kind: EnumKind, auts: &[Vec<u16>]) -> Vec<Vec<usize>> {
    let mut eng = Engine::new(g, kind, auts);
    let mut out = Vec::new();
    let _ = eng.dfs(SPLIT_DEPTH, &mut |e| {
        out.push(e.seq.clone());
        ControlFlow::Continue(())
    });
    out
}

fn check_cap(g: &Group, kind: EnumKind, cfg: &EnumConfig) -> Result<(), EnumError> {
    let cap = if kind.is_directed() { cfg.directed_cap } else { cfg.terrace_cap };
    if g.order() > cap {
        return Err(EnumError::CapExceeded { order: g.order(), cap });
    }
    kind.validate(g.order())
}

/// Counts (and optionally lists) the basic arrangements of the given kind.
pub fn enumerate_basic(g: &Group, mode: EnumMode) -> Result<EnumResult, EnumError> {
    enumerate_basic_with(g, mode, &EnumConfig::default())
}

pub fn enumerate_basic_with(g: &Group, mode: EnumMode, cfg: &EnumConfig) -> Result<EnumResult, EnumError> {
    check_cap(g, mode.kind, cfg)?;
    let auts = if mode.essentially_different { aut_tables(g, cfg.aut_cap)? } else { Vec::new() };
    let aut_order = auts.len() as u64 + 1;
    let prefixes = split_prefixes(g, mode.kind, &auts);

    struct Partial {
        raw: u64,
        essential: u64,
        witnesses: Vec<Vec<usize>>,
        nodes: u64,
    }
    let parts = map_ordered(cfg.exec, &prefixes, |prefix| {
        let mut eng = Engine::new(g, mode.kind, &auts);
        let replayed = eng.replay(prefix);
        debug_assert!(replayed);
        let mut p = Partial { raw: 0, essential: 0, witnesses: Vec::new(), nodes: 0 };
        let _ = eng.dfs(usize::MAX, &mut |e| {
            p.essential += 1;
            p.raw += aut_order / e.stabiliser() as u64;
            if !mode.count_only {
                p.witnesses.push(e.seq.clone());
            }
            ControlFlow::Continue(())
        });
        p.nodes = eng.nodes;
        p
    });

    let mut result = EnumResult {
        raw_count: 0,
        essential_count: mode.essentially_different.then_some(0),
        witnesses: Vec::new(),
        automorphism_count: aut_order as usize,
        nodes: 0,
    };
    for p in parts {
        result.raw_count += p.raw;
        if let Some(e) = result.essential_count.as_mut() {
            *e += p.essential;
        }
        result.witnesses.extend(p.witnesses);
        result.nodes += p.nodes;
    }
    Ok(result)
}

/// `(t(G), d(G))`: essentially different terraces and directed terraces.
pub fn count_table(g: &Group) -> Result<(u64, u64), EnumError> {
    count_table_with(g, &EnumConfig::default())
}

pub fn count_table_with(g: &Group, cfg: &EnumConfig) -> Result<(u64, u64), EnumError> {
    if g.order() > 15 {
        return Err(EnumError::CapExceeded { order: g.order(), cap: 15 });
    }
    let t = enumerate_basic_with(g, EnumMode::count(EnumKind::Terrace), cfg)?;
    let d = enumerate_basic_with(g, EnumMode::count(EnumKind::Directed), cfg)?;
    Ok((t.essential_count.expect("essential requested"), d.essential_count.expect("essential requested")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub cap: usize,
    /// Prune by automorphisms when `Aut(G)` is computable under `aut_cap`.
    pub use_symmetry: bool,
    pub aut_cap: usize,
    /// Node budget; budgeted searches run sequentially for reproducibility.
    pub max_nodes: Option<u64>,
    pub exec: Exec,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            cap: DEFAULT_SEARCH_CAP,
            use_symmetry: true,
            aut_cap: DEFAULT_AUT_CAP,
            max_nodes: None,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOutcome {
    Found(Vec<usize>),
    /// The whole space was searched: no arrangement of this kind exists.
    Exhausted,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    /// Nodes visited; only counted for budgeted searches.
    pub nodes: Option<u64>,
}

/// First witness in DFS order, or `None` as a nonexistence certificate.
pub fn search_first(g: &Group, kind: EnumKind) -> Result<Option<Vec<usize>>, EnumError> {
    let report = search_with(g, kind, &SearchConfig::default())?;
    Ok(match report.outcome {
        SearchOutcome::Found(w) => Some(w),
        _ => None,
    })
}

pub fn search_with(g: &Group, kind: EnumKind, cfg: &SearchConfig) -> Result<SearchReport, EnumError> {
    if g.order() > cfg.cap {
        return Err(EnumError::CapExceeded { order: g.order(), cap: cfg.cap });
    }
    kind.validate(g.order())?;
    let auts = if cfg.use_symmetry && g.order() <= cfg.aut_cap { aut_tables(g, cfg.aut_cap)? } else { Vec::new() };

    if let Some(budget) = cfg.max_nodes {
        let mut eng = Engine::new(g, kind, &auts);
        eng.max_nodes = budget;
        let mut found = None;
        let flow = eng.dfs(usize::MAX, &mut |e| {
            found = Some(e.seq.clone());
            ControlFlow::Break(())
        });
        let outcome = match (flow, found) {
            (_, Some(w)) => SearchOutcome::Found(w),
            (ControlFlow::Break(Stop::Budget), None) => SearchOutcome::BudgetExceeded,
            _ => SearchOutcome::Exhausted,
        };
        return Ok(SearchReport { outcome, nodes: Some(eng.nodes.min(budget)) });
    }

    let prefixes = split_prefixes(g, kind, &auts);
    let found = find_first(cfg.exec, &prefixes, |prefix| {
        let mut eng = Engine::new(g, kind, &auts);
        eng.replay(prefix);
        let mut found = None;
        let _ = eng.dfs(usize::MAX, &mut |e| {
            found = Some(e.seq.clone());
            ControlFlow::Break(())
        });
        found
    });
    Ok(SearchReport { outcome: found.map_or(SearchOutcome::Exhausted, SearchOutcome::Found), nodes: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{automorphisms, parse_group_spec};
    use crate::props::{self, canonical_form_with};
    use std::collections::{BTreeSet, HashMap};

    /// Naive filter over all (n−1)! basic arrangements with the props
    /// verifiers, canonicalised with `canonical_form_with`.
    fn naive(g: &Group, kind: EnumKind) -> (u64, u64, Vec<Vec<usize>>) {
        let n = g.order();
        let auts = automorphisms(g).unwrap();
        let mut raw = Vec::new();
        let mut rest: Vec<usize> = (1..n).collect();
        permute(&mut rest, 0, &mut |p| {
            let mut a = vec![0];
            a.extend_from_slice(p);
            if kind.verify(g, &a) {
                raw.push(a);
            }
        });
        raw.sort();
        let classes: BTreeSet<Vec<usize>> = raw.iter().map(|a| canonical_form_with(g, a, &auts)).collect();
        (raw.len() as u64, classes.len() as u64, raw)
    }

    fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, f);
            v.swap(k, i);
        }
    }

    fn raw_mode(kind: EnumKind) -> EnumMode {
        EnumMode { kind, count_only: false, essentially_different: false }
    }

    #[test]
    fn z4_directed() {
        let z4 = parse_group_spec("Z4").unwrap();
        let raw = enumerate_basic(&z4, raw_mode(EnumKind::Directed)).unwrap();
        assert_eq!(raw.raw_count, 2);
        assert_eq!(raw.witnesses, vec![vec![0, 1, 3, 2], vec![0, 3, 1, 2]]);
        let ess = enumerate_basic(&z4, EnumMode::count(EnumKind::Directed)).unwrap();
        assert_eq!(ess.essential_count, Some(1));
        assert_eq!(ess.raw_count, 2);
    }

    #[test]
    fn z5_counts() {
        let z5 = parse_group_spec("Z5").unwrap();
        assert_eq!(count_table(&z5).unwrap(), (3, 0));
    }

    #[test]
    fn matches_naive_filter_up_to_order_6() {
        let specs = ["Z1", "Z2", "Z3", "Z4", "E4", "Z5", "Z6", "D6"];
        let kinds = [
            EnumKind::Directed,
            EnumKind::Terrace,
            EnumKind::DirectedTk(2),
            EnumKind::DirectedTk(3),
            EnumKind::HalfAndHalf,
            EnumKind::Narcissistic,
            EnumKind::DirectedHalfAndHalf,
        ];
        for spec in specs {
            let g = parse_group_spec(spec).unwrap();
            for kind in kinds {
                if kind.validate(g.order()).is_err() {
                    continue;
                }
                let (raw, ess, list) = naive(&g, kind);
                let got = enumerate_basic(&g, raw_mode(kind)).unwrap();
                assert_eq!(got.raw_count, raw, "{spec} {kind}");
                assert_eq!(got.witnesses, list, "{spec} {kind}");
                let e = enumerate_basic(&g, EnumMode::count(kind)).unwrap();
                assert_eq!(e.essential_count, Some(ess), "{spec} {kind}");
                assert_eq!(e.raw_count, raw, "{spec} {kind}");
            }
        }
    }

    #[test]
    fn orbit_sizes_reproduce_raw_counts() {
        for spec in ["Z7", "Z8", "D8", "Q8", "Z4xZ2", "Z9", "Z3xZ3"] {
            let g = parse_group_spec(spec).unwrap();
            let auts = automorphisms(&g).unwrap();
            let full = enumerate_basic(&g, raw_mode(EnumKind::Terrace)).unwrap();
            let ess = enumerate_basic(
                &g,
                EnumMode { kind: EnumKind::Terrace, count_only: false, essentially_different: true },
            )
            .unwrap();
            assert_eq!(full.raw_count, ess.raw_count, "{spec}");
            let e = ess.essential_count.unwrap();
            assert!(e <= full.raw_count && full.raw_count <= e * auts.len() as u64);
            // every witness is its own canonical form and all are distinct orbits
            let mut by_form: HashMap<Vec<usize>, usize> = HashMap::new();
            for a in &full.witnesses {
                *by_form.entry(canonical_form_with(&g, a, &auts)).or_default() += 1;
            }
            assert_eq!(by_form.len() as u64, e, "{spec}");
            for w in &ess.witnesses {
                assert_eq!(&canonical_form_with(&g, w, &auts), w);
                assert!(props::is_terrace(&g, w));
            }
        }
    }

    #[test]
    fn search_first_examples() {
        let q8 = parse_group_spec("Q8").unwrap();
        assert_eq!(search_first(&q8, EnumKind::Directed).unwrap(), None);
        let d8 = parse_group_spec("D8").unwrap();
        assert_eq!(search_first(&d8, EnumKind::DirectedTk(2)).unwrap(), None);
        let z10 = parse_group_spec("Z10").unwrap();
        let w = search_first(&z10, EnumKind::Directed).unwrap().unwrap();
        assert!(props::is_directed_terrace(&z10, &w));
    }

    #[test]
    fn budgeted_search() {
        let z12 = parse_group_spec("Z12").unwrap();
        let cfg = SearchConfig { max_nodes: Some(3), ..SearchConfig::default() };
        let r = search_with(&z12, EnumKind::Directed, &cfg).unwrap();
        assert_eq!(r.outcome, SearchOutcome::BudgetExceeded);
        let r = search_with(&z12, EnumKind::Directed, &SearchConfig { max_nodes: Some(1_000_000), ..cfg }).unwrap();
        assert!(matches!(r.outcome, SearchOutcome::Found(_)));
    }

    #[test]
    fn mode_validation() {
        let z6 = parse_group_spec("Z6").unwrap();
        assert!(matches!(enumerate_basic(&z6, EnumMode::count(EnumKind::HalfAndHalf)), Err(EnumError::InvalidMode(_))));
        assert!(matches!(
            enumerate_basic(&z6, EnumMode::count(EnumKind::DirectedTk(1))),
            Err(EnumError::InvalidMode(_))
        ));
        let z17 = parse_group_spec("Z17").unwrap();
        assert_eq!(
            enumerate_basic(&z17, EnumMode::count(EnumKind::Terrace)),
            Err(EnumError::CapExceeded { order: 17, cap: 16 })
        );
        assert_eq!("t2".parse::<EnumKind>().unwrap(), EnumKind::DirectedTk(2));
        assert_eq!("t1".parse::<EnumKind>().unwrap(), EnumKind::Directed);
        assert!("t0".parse::<EnumKind>().is_err());
        for k in ["directed", "terrace", "t3", "half-and-half", "narcissistic", "directed-half-and-half"] {
            assert_eq!(k.parse::<EnumKind>().unwrap().to_string(), k);
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = parse_group_spec("D10").unwrap();
        let mode = EnumMode { kind: EnumKind::Terrace, count_only: false, essentially_different: true };
        let seq =
            enumerate_basic_with(&g, mode, &EnumConfig { exec: Exec::Sequential, ..EnumConfig::default() }).unwrap();
        let par = enumerate_basic_with(&g, mode, &EnumConfig::default()).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.essential_count, Some(76));
    }
}
