//! Finite groups as explicit Cayley tables.
//!
//! Every constructor fixes a deterministic element ordering and puts the
//! identity at id 0, so arrangements written as id lists stay meaningful
//! across runs. Tables are stored as `u16`, which bounds groups at
//! [`MAX_ORDER`] elements.

mod automorphism;
mod catalogue;
mod perm;
mod spec;

pub use automorphism::{automorphisms, automorphisms_with_cap, Automorphism, DEFAULT_AUT_CAP};
pub use catalogue::{catalogue_names, named_group};
pub use perm::{closure_from_permutations, format_cycles, parse_cycles, DEFAULT_CLOSURE_CAP};
pub use spec::{parse_group_spec, Atom, GroupSpec};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Largest group order any constructor will produce.
pub const MAX_ORDER: usize = 1024;

/// Errors raised while building or analysing a group.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid order {order} for {family}: {reason}")]
    InvalidOrder { family: &'static str, order: usize, reason: &'static str },
    #[error("relation v u = u^{k} v is inconsistent for u^{m} = v^{n} = e (need gcd(k,m) = 1 and k^n = 1 mod m)")]
    InconsistentRelation { m: usize, n: usize, k: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group closure exceeds the cap of {cap} elements")]
    ClosureTooLarge { cap: usize },
    #[error("automorphism search limited to order {cap}, group has order {order}")]
    AutomorphismCap { order: usize, cap: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown catalogue group `{0}`")]
    UnknownName(String),
    #[error("table is not a group: {0}")]
    NotAGroup(String),
}

/// An immutable finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    order: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
    elem_orders: Vec<u32>,
    words: Vec<String>,
    spec: String,
    class_of: Vec<u16>,
    classes: Vec<Vec<usize>>,
}

impl Group {
    /// Builds a group from a row-major table `table[x * n + y] = x·y`.
    ///
    /// Checks the identity, the Latin property and associativity
    /// (exhaustively up to order 64, on 10^5 sampled triples above that).
    pub fn from_table(
        order: usize,
        table: Vec<u16>,
        words: Vec<String>,
        spec: impl Into<String>,
    ) -> Result<Self, GroupError> {
        if order == 0 || order > MAX_ORDER {
            return Err(GroupError::InvalidOrder { family: "group", order, reason: "order must lie in 1..=1024" });
        }
        if table.len() != order * order || words.len() != order {
            return Err(GroupError::NotAGroup("table or word list has the wrong size".into()));
        }
        let n = order;
        if table.iter().any(|&v| v as usize >= n) {
            return Err(GroupError::NotAGroup("entry out of range".into()));
        }
        for x in 0..n {
            if table[x] as usize != x || table[x * n] as usize != x {
                return Err(GroupError::NotAGroup(format!("id 0 is not an identity at {x}")));
            }
        }
        check_latin(n, &table)?;
        check_associative(n, &table)?;

        let mut inv = vec![0u16; n];
        for x in 0..n {
            let row = &table[x * n..(x + 1) * n];
            let y = row.iter().position(|&v| v == 0).expect("latin row contains identity");
            inv[x] = y as u16;
        }
        let mut elem_orders = vec![0u32; n];
        for x in 0..n {
            let mut t = 1;
            let mut p = x;
            while p != 0 {
                p = table[p * n + x] as usize;
                t += 1;
            }
            elem_orders[x] = t;
        }

        let mut class_of = vec![u16::MAX; n];
        let mut classes = Vec::new();
        for x in 1..n {
            if class_of[x] != u16::MAX {
                continue;
            }
            let idx = classes.len() as u16;
            let xi = inv[x] as usize;
            class_of[x] = idx;
            if xi == x {
                classes.push(vec![x]);
            } else {
                class_of[xi] = idx;
                classes.push(vec![x, xi]);
            }
        }

        Ok(Self { order, table, inv, elem_orders, words, spec: spec.into(), class_of, classes })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The product `x·y`.
    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    /// `x⁻¹·y`, the quotient used for difference lists.
    #[inline]
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.mul(self.inv(x), y)
    }

    /// Row `x` of the table: `row(x)[y] = x·y`.
    #[inline]
    pub fn row(&self, x: usize) -> &[u16] {
        &self.table[x * self.order..(x + 1) * self.order]
    }

    pub fn table(&self) -> &[u16] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.elem_orders[x] as usize
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.elem_orders
    }

    pub fn word(&self, x: usize) -> &str {
        &self.words[x]
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    /// Resolves a display word back to its id. Whitespace is ignored.
    pub fn element_by_word(&self, word: &str) -> Option<usize> {
        let key: String = word.chars().filter(|c| !c.is_whitespace()).collect();
        self.words.iter().position(|w| *w == key)
    }

    /// The spec string this group was built from.
    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub(crate) fn with_spec(mut self, spec: impl Into<String>) -> Self {
        self.spec = spec.into();
        self
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| (x + 1..n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Sorted ids of all elements of order 2.
    pub fn involutions(&self) -> Vec<usize> {
        (1..self.order).filter(|&x| self.elem_orders[x] == 2).collect()
    }

    /// A group with exactly one involution.
    pub fn is_binary(&self) -> bool {
        self.involutions().len() == 1
    }

    /// The partition of non-identity elements into `{x, x⁻¹}` classes,
    /// ordered by least member. Involutions form singleton classes.
    pub fn inverse_pair_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Index into [`Group::inverse_pair_classes`] for a non-identity element.
    /// The identity maps to `u16::MAX`.
    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Largest element order.
    pub fn exponent(&self) -> usize {
        let mut e = 1usize;
        for &o in &self.elem_orders {
            e = lcm(e, o as usize);
        }
        e
    }

    /// Elements fixed by conjugation, i.e. the center.
    pub fn center(&self) -> Vec<usize> {
        let n = self.order;
        (0..n).filter(|&z| (0..n).all(|x| self.mul(z, x) == self.mul(x, z))).collect()
    }

    /// Sorted histogram of element orders, a cheap isomorphism invariant.
    pub fn order_profile(&self) -> Vec<u32> {
        let mut p = self.elem_orders.clone();
        p.sort_unstable();
        p
    }

    /// The subgroup generated by `gens`, as a sorted id list.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        queue.sort_unstable();
        queue
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn check_latin(n: usize, table: &[u16]) -> Result<(), GroupError> {
    let mut seen = vec![0u32; n];
    let mut stamp = 0u32;
    for r in 0..n {
        stamp += 1;
        for c in 0..n {
            let v = table[r * n + c] as usize;
            if seen[v] == stamp {
                return Err(GroupError::NotAGroup(format!("row {r} repeats {v}")));
            }
            seen[v] = stamp;
        }
    }
    for c in 0..n {
        stamp += 1;
        for r in 0..n {
            let v = table[r * n + c] as usize;
            if seen[v] == stamp {
                return Err(GroupError::NotAGroup(format!("column {c} repeats {v}")));
            }
            seen[v] = stamp;
        }
    }
    Ok(())
}

fn check_associative(n: usize, table: &[u16]) -> Result<(), GroupError> {
    let m = |x: usize, y: usize| table[x * n + y] as usize;
    let bad = |x, y, z| GroupError::NotAGroup(format!("({x}·{y})·{z} != {x}·({y}·{z})"));
    if n <= 64 {
        for x in 0..n {
            for y in 0..n {
                let xy = m(x, y);
                for z in 0..n {
                    if m(xy, z) != m(x, m(y, z)) {
                        return Err(bad(x, y, z));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a550c);
        for _ in 0..100_000 {
            let (x, y, z) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
            if m(m(x, y), z) != m(x, m(y, z)) {
                return Err(bad(x, y, z));
            }
        }
    }
    Ok(())
}

fn power_word(base: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{e}"),
    }
}

/// `u^i v^j` style display word, `e` for the identity.
fn uv_word(u: &str, i: usize, v: &str, j: usize) -> String {
    let w = power_word(u, i) + &power_word(v, j);
    if w.is_empty() {
        "e".into()
    } else {
        w
    }
}

/// The cyclic group `Z_n`; element `i` is the integer `i`.
pub fn build_cyclic(n: usize) -> Result<Group, GroupError> {
    if n == 0 || n > MAX_ORDER {
        return Err(GroupError::InvalidOrder { family: "cyclic", order: n, reason: "order must lie in 1..=1024" });
    }
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            table.push(((i + j) % n) as u16);
        }
    }
    let words = (0..n).map(|i| i.to_string()).collect();
    Group::from_table(n, table, words, format!("Z{n}"))
}

/// The dihedral group of the given order, `⟨r, s | r^m = s^2 = e, srs = r⁻¹⟩`.
///
/// `r^i s^j` has id `2i + j`.
pub fn build_dihedral(order: usize) -> Result<Group, GroupError> {
    if order < 2 || !order.is_multiple_of(2) || order > MAX_ORDER {
        return Err(GroupError::InvalidOrder {
            family: "dihedral",
            order,
            reason: "order must be even and at least 2",
        });
    }
    let m = order / 2;
    let id = |i: usize, j: usize| (2 * i + j) as u16;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, b) = (x / 2, x % 2);
        for y in 0..order {
            let (c, d) = (y / 2, y % 2);
            // s^b r^c = r^{±c} s^b
            let i = if b == 0 { (a + c) % m } else { (a + m - c) % m };
            table.push(id(i, (b + d) % 2));
        }
    }
    let words = (0..order).map(|x| uv_word("r", x / 2, "s", x % 2)).collect();
    Group::from_table(order, table, words, format!("D{order}"))
}

/// The dicyclic group of the given order,
/// `⟨u, v | u^{2m} = e, v^2 = u^m, v u v⁻¹ = u⁻¹⟩`.
///
/// `u^i v^j` has id `2i + j`.
pub fn build_dicyclic(order: usize) -> Result<Group, GroupError> {
    if order < 8 || !order.is_multiple_of(4) || order > MAX_ORDER {
        return Err(GroupError::InvalidOrder {
            family: "dicyclic",
            order,
            reason: "order must be a multiple of 4 and at least 8",
        });
    }
    let m = order / 4;
    let cyc = 2 * m;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, b) = (x / 2, x % 2);
        for y in 0..order {
            let (c, d) = (y / 2, y % 2);
            let mut i = if b == 0 { (a + c) % cyc } else { (a + cyc - c) % cyc };
            let mut j = b + d;
            if j == 2 {
                i = (i + m) % cyc;
                j = 0;
            }
            table.push((2 * i + j) as u16);
        }
    }
    let words = (0..order).map(|x| uv_word("u", x / 2, "v", x % 2)).collect();
    Group::from_table(order, table, words, format!("Q{order}"))
}

/// `⟨u, v | u^m = v^n = e, v u = u^k v⟩`; `u^i v^j` has id `i·n + j`.
pub fn build_semidirect_cyclic(m: usize, n: usize, k: usize) -> Result<Group, GroupError> {
    if m == 0 || n == 0 || m * n > MAX_ORDER {
        return Err(GroupError::InvalidOrder {
            family: "semidirect",
            order: m * n,
            reason: "m and n must be positive with m·n <= 1024",
        });
    }
    let k = k % m;
    let consistent = m == 1 || (gcd(k, m) == 1 && mod_pow(k, n, m) == 1 % m);
    if !consistent {
        return Err(GroupError::InconsistentRelation { m, n, k });
    }
    // v^j u^c = u^{c k^j} v^j
    let kpow: Vec<usize> = (0..n).map(|j| mod_pow(k, j, m)).collect();
    let order = m * n;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, b) = (x / n, x % n);
        for y in 0..order {
            let (c, d) = (y / n, y % n);
            let i = (a + c * kpow[b]) % m;
            let j = (b + d) % n;
            table.push((i * n + j) as u16);
        }
    }
    let words = (0..order).map(|x| uv_word("u", x / n, "v", x % n)).collect();
    Group::from_table(order, table, words, format!("SD({m},{n},{k})"))
}

fn mod_pow(base: usize, exp: usize, m: usize) -> usize {
    let mut r = 1 % m;
    let mut b = base % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// `G × H`; `(g, h)` has id `g·|H| + h`.
pub fn direct_product(g: &Group, h: &Group) -> Result<Group, GroupError> {
    direct_product_many(&[g, h])
}

/// Iterated direct product with mixed-radix ids (last factor fastest).
/// Words are flat tuples of the factor words.
pub fn direct_product_many(factors: &[&Group]) -> Result<Group, GroupError> {
    let order: usize = factors.iter().map(|f| f.order()).product();
    if factors.is_empty() || order > MAX_ORDER {
        return Err(GroupError::InvalidOrder {
            family: "direct product",
            order,
            reason: "product must be nonempty with order <= 1024",
        });
    }
    let decompose = |mut x: usize| {
        let mut parts = vec![0usize; factors.len()];
        for (slot, f) in parts.iter_mut().zip(factors).rev() {
            *slot = x % f.order();
            x /= f.order();
        }
        parts
    };
    let digits: Vec<Vec<usize>> = (0..order).map(decompose).collect();
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        for y in 0..order {
            let mut id = 0;
            for (i, f) in factors.iter().enumerate() {
                id = id * f.order() + f.mul(digits[x][i], digits[y][i]);
            }
            table.push(id as u16);
        }
    }
    let words = digits
        .iter()
        .map(|parts| {
            let inner: Vec<&str> = parts.iter().zip(factors).map(|(&p, f)| f.word(p)).collect();
            format!("({})", inner.join(","))
        })
        .collect();
    let spec = factors.iter().map(|f| f.spec()).collect::<Vec<_>>().join("x");
    Group::from_table(order, table, words, spec)
}

/// Elementary abelian group of prime-power order `q = p^d`, as `Z_p^d`.
pub fn build_elementary(q: usize) -> Result<Group, GroupError> {
    let bad =
        GroupError::InvalidOrder { family: "elementary abelian", order: q, reason: "order must be a prime power" };
    if q == 1 {
        return build_cyclic(1).map(|g| g.with_spec("E1"));
    }
    if !(2..=MAX_ORDER).contains(&q) {
        return Err(bad);
    }
    let p = (2..=q).find(|p| q.is_multiple_of(*p)).expect("q >= 2 has a prime factor");
    let mut d = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        d += 1;
    }
    if r != 1 {
        return Err(bad);
    }
    if d == 1 {
        return build_cyclic(p).map(|g| g.with_spec(format!("E{q}")));
    }
    let zp = build_cyclic(p)?;
    let factors: Vec<&Group> = std::iter::repeat_n(&zp, d).collect();
    direct_product_many(&factors).map(|g| g.with_spec(format!("E{q}")))
}
