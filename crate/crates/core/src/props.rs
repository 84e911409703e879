//! Difference lists, altitudes and the terrace verifiers.
//!
//! An arrangement `a = (a_1, …, a_n)` lists every element once. Its step-`m`
//! difference list has entries `a_i⁻¹·a_{i+m}`; the step-1 list is the `b`
//! that all terrace conditions are phrased in. Verifiers take plain id
//! slices so the search code can call them without wrapping.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{automorphisms, Automorphism, Group, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropsError {
    #[error("sequence is not an arrangement of the {n} group elements: {reason}")]
    NotAnArrangement { n: usize, reason: String },
    #[error("step {m} out of range for order {n}")]
    StepOutOfRange { m: usize, n: usize },
    #[error("symmetric sequencings need a group with exactly one involution")]
    NotBinary,
    #[error("arrangement is not a directed terrace")]
    NotDirected,
    #[error("arrangement is not a terrace")]
    NotTerrace,
    #[error("arrangement does not start with the identity")]
    NotBasic,
    #[error("property is only defined for groups of odd order (order {0})")]
    EvenOrder(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A validated arrangement of the elements of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement<'g> {
    group: &'g Group,
    seq: Vec<usize>,
}

impl<'g> Arrangement<'g> {
    pub fn new(group: &'g Group, seq: Vec<usize>) -> Result<Self, PropsError> {
        check_arrangement(group, &seq)?;
        Ok(Self { group, seq })
    }

    /// Resolves display words (see [`Group::element_by_word`]).
    pub fn from_words<S: AsRef<str>>(group: &'g Group, words: &[S]) -> Result<Self, PropsError> {
        let seq = words
            .iter()
            .map(|w| {
                group.element_by_word(w.as_ref()).ok_or_else(|| PropsError::NotAnArrangement {
                    n: group.order(),
                    reason: format!("unknown element word `{}`", w.as_ref()),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(group, seq)
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    pub fn into_seq(self) -> Vec<usize> {
        self.seq
    }

    pub fn words(&self) -> Vec<&str> {
        self.seq.iter().map(|&x| self.group.word(x)).collect()
    }

    pub fn diff_list(&self, m: usize) -> Result<DiffList, PropsError> {
        diff_list(self.group, &self.seq, m).map(|vals| DiffList { step: m, vals })
    }

    pub fn to_basic(&self) -> Self {
        Self { group: self.group, seq: to_basic(self.group, &self.seq) }
    }

    pub fn classify(&self) -> PropertyReport {
        classify(self.group, &self.seq)
    }
}

/// The step-`m` quotient list of an arrangement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffList {
    pub step: usize,
    pub vals: Vec<usize>,
}

pub fn check_arrangement(g: &Group, seq: &[usize]) -> Result<(), PropsError> {
    let n = g.order();
    let fail = |reason: String| PropsError::NotAnArrangement { n, reason };
    if seq.len() != n {
        return Err(fail(format!("length {} != {n}", seq.len())));
    }
    let mut seen = vec![false; n];
    for &x in seq {
        if x >= n {
            return Err(fail(format!("id {x} out of range")));
        }
        if seen[x] {
            return Err(fail(format!("id {x} repeated")));
        }
        seen[x] = true;
    }
    Ok(())
}

/// `(a_i⁻¹·a_{i+m})` for `i = 1..n−m`. Empty for the trivial group.
pub fn diff_list(g: &Group, a: &[usize], m: usize) -> Result<Vec<usize>, PropsError> {
    let n = a.len();
    if m == 0 || (m >= n && !(n == 1 && m == 1)) {
        return Err(PropsError::StepOutOfRange { m, n });
    }
    Ok(step_diffs(g, a, m))
}

fn step_diffs(g: &Group, a: &[usize], m: usize) -> Vec<usize> {
    if m >= a.len() {
        return Vec::new();
    }
    a.iter().zip(&a[m..]).map(|(&x, &y)| g.ldiv(x, y)).collect()
}

fn all_distinct(n: usize, vals: &[usize]) -> bool {
    let mut seen = vec![false; n];
    vals.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}

/// Number of distinct entries of `b`.
pub fn altitude_directed(g: &Group, a: &[usize]) -> usize {
    let mut seen = vec![false; g.order()];
    step_diffs(g, a, 1).into_iter().filter(|&v| !std::mem::replace(&mut seen[v], true)).count()
}

/// Per-class occurrence counts of `b`, indexed as [`Group::inverse_pair_classes`].
pub fn class_counts(g: &Group, b: &[usize]) -> Vec<usize> {
    let mut counts = vec![0usize; g.class_count()];
    for &v in b {
        if v != 0 {
            counts[g.class_of(v)] += 1;
        }
    }
    counts
}

/// Capped class counts: involution classes contribute at most 1, inverse
/// pairs at most 2. Equals `n − 1` exactly on terraces.
pub fn altitude_undirected(g: &Group, a: &[usize]) -> usize {
    let b = step_diffs(g, a, 1);
    class_counts(g, &b).iter().zip(g.inverse_pair_classes()).map(|(&c, class)| c.min(class.len())).sum()
}

pub fn is_directed_terrace(g: &Group, a: &[usize]) -> bool {
    all_distinct(g.order(), &step_diffs(g, a, 1))
}

/// Every involution once in `b`, every `{x, x⁻¹}` pair twice in total.
pub fn is_terrace(g: &Group, a: &[usize]) -> bool {
    let b = step_diffs(g, a, 1);
    if b.contains(&0) {
        return false;
    }
    class_counts(g, &b).iter().zip(g.inverse_pair_classes()).all(|(&c, class)| c == class.len())
}

/// Left-multiplies by `a_1⁻¹` so the arrangement starts at the identity.
pub fn to_basic(g: &Group, a: &[usize]) -> Vec<usize> {
    match a.first() {
        None => Vec::new(),
        Some(&first) => {
            let f = g.inv(first);
            a.iter().map(|&x| g.mul(f, x)).collect()
        }
    }
}

/// Entrywise left multiplication `a ↦ h·a`.
pub fn left_translate(g: &Group, h: usize, a: &[usize]) -> Vec<usize> {
    a.iter().map(|&x| g.mul(h, x)).collect()
}

/// No repeats in any step-`m` list for `m ≤ k`.
pub fn is_directed_tk(g: &Group, a: &[usize], k: usize) -> Result<bool, PropsError> {
    let n = a.len();
    if k == 0 || k >= n {
        return Err(PropsError::StepOutOfRange { m: k, n });
    }
    Ok((1..=k).all(|m| all_distinct(n, &step_diffs(g, a, m))))
}

/// Largest `k` for which `a` is a directed T_k-terrace, 0 if not directed.
pub fn max_directed_tk(g: &Group, a: &[usize]) -> usize {
    let n = a.len();
    (1..n).take_while(|&m| all_distinct(n, &step_diffs(g, a, m))).count()
}

/// For a binary group of order `2m` with involution `z`: `b_m = z` and
/// `b_{2m−i} = b_i⁻¹` for `1 ≤ i < m`.
pub fn is_symmetric_sequencing(g: &Group, a: &[usize]) -> Result<bool, PropsError> {
    let invs = g.involutions();
    if invs.len() != 1 {
        return Err(PropsError::NotBinary);
    }
    if !is_directed_terrace(g, a) {
        return Err(PropsError::NotDirected);
    }
    let z = invs[0];
    let b = step_diffs(g, a, 1);
    let m = a.len() / 2;
    Ok(b[m - 1] == z && (1..m).all(|i| b[2 * m - i - 1] == g.inv(b[i - 1])))
}

/// For a basic terrace: `a_n = a_2²` and some `j ≥ 5` (1-based) with
/// `a_{j−1}·a_{j+1} = a_j = a_{j+1}·a_{j−1}`. Returns the least such `j`.
pub fn is_extendable(g: &Group, a: &[usize]) -> Result<Option<usize>, PropsError> {
    if a.first() != Some(&0) {
        return Err(PropsError::NotBasic);
    }
    if !is_terrace(g, a) {
        return Err(PropsError::NotTerrace);
    }
    let n = a.len();
    if n < 6 || a[n - 1] != g.mul(a[1], a[1]) {
        return Ok(None);
    }
    // 1-based j has neighbours at 0-based j-2 and j.
    Ok((5..n).find(|&j| {
        let (prev, mid, next) = (a[j - 2], a[j - 1], a[j]);
        g.mul(prev, next) == mid && g.mul(next, prev) == mid
    }))
}

fn require_odd_terrace(g: &Group, a: &[usize]) -> Result<Vec<usize>, PropsError> {
    let n = g.order();
    if n.is_multiple_of(2) {
        return Err(PropsError::EvenOrder(n));
    }
    if !is_terrace(g, a) {
        return Err(PropsError::NotTerrace);
    }
    Ok(step_diffs(g, a, 1))
}

/// Odd order: each `{g, g⁻¹}` class contributes exactly one entry to the
/// first `(n−1)/2` entries of `b`.
pub fn is_half_and_half(g: &Group, a: &[usize]) -> Result<bool, PropsError> {
    let b = require_odd_terrace(g, a)?;
    let half = (a.len() - 1) / 2;
    Ok(class_counts(g, &b[..half]).iter().all(|&c| c == 1))
}

/// Odd order: `b` is a palindrome.
pub fn is_narcissistic(g: &Group, a: &[usize]) -> Result<bool, PropsError> {
    let b = require_odd_terrace(g, a)?;
    Ok(b.iter().eq(b.iter().rev()))
}

/// Lexicographically least image of `to_basic(a)` under the given
/// automorphisms (which must include the identity).
pub fn canonical_form_with(g: &Group, a: &[usize], auts: &[Automorphism]) -> Vec<usize> {
    let basic = to_basic(g, a);
    let mut best: Option<Vec<usize>> = None;
    for phi in auts {
        let img: Vec<usize> = basic.iter().map(|&x| phi.apply(x)).collect();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
    }
    best.unwrap_or(basic)
}

pub fn canonical_form(g: &Group, a: &[usize]) -> Result<Vec<usize>, PropsError> {
    let auts = automorphisms(g)?;
    Ok(canonical_form_with(g, a, &auts))
}

/// `(0, 1, n−1, 2, n−2, 3, …)` in `Z_n`.
pub fn walecki(n: usize) -> Vec<usize> {
    (0..n)
        .map(|i| match i {
            0 => 0,
            i if i % 2 == 1 => i.div_ceil(2),
            i => n - i / 2,
        })
        .collect()
}

/// Every verifier applied to one arrangement. `None` marks a property whose
/// preconditions do not hold (e.g. half-and-half for even order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub order: usize,
    pub is_basic: bool,
    pub is_directed_terrace: bool,
    pub is_terrace: bool,
    pub is_symmetric_sequencing: Option<bool>,
    pub is_extendable: Option<bool>,
    pub extendable_witness_j: Option<usize>,
    pub is_half_and_half: Option<bool>,
    pub is_directed_half_and_half: Option<bool>,
    pub is_narcissistic: Option<bool>,
    pub max_k_directed_tk: usize,
    pub altitude_directed: usize,
    pub altitude_undirected: usize,
}

pub fn classify(g: &Group, a: &[usize]) -> PropertyReport {
    let directed = is_directed_terrace(g, a);
    let extendable = is_extendable(g, a).ok();
    let hh = is_half_and_half(g, a).ok();
    PropertyReport {
        order: g.order(),
        is_basic: a.first() == Some(&0),
        is_directed_terrace: directed,
        is_terrace: is_terrace(g, a),
        is_symmetric_sequencing: is_symmetric_sequencing(g, a).ok(),
        is_extendable: extendable.map(|j| j.is_some()),
        extendable_witness_j: extendable.flatten(),
        is_half_and_half: hh,
        is_directed_half_and_half: hh.map(|h| h && directed),
        is_narcissistic: is_narcissistic(g, a).ok(),
        max_k_directed_tk: max_directed_tk(g, a),
        altitude_directed: altitude_directed(g, a),
        altitude_undirected: altitude_undirected(g, a),
    }
}
