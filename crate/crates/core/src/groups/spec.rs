//! The textual group-spec grammar:
//!
//! ```text
//! spec := atom ( "x" atom )*
//! atom := "Z"int | "D"int | "Q"int | "E"int | "SD(" int "," int "," int ")" | NAME
//! ```
//!
//! `D8` is the dihedral group of order 8, `Q12` the dicyclic group of
//! order 12, `E8` the elementary abelian group of order 8.

use std::fmt;
use std::str::FromStr;

use super::catalogue::{catalogue_names, named_group};
use super::{
    build_cyclic, build_dicyclic, build_dihedral, build_elementary, build_semidirect_cyclic, direct_product_many,
    Group, GroupError,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    Elementary(usize),
    Semidirect(usize, usize, usize),
    Named(String),
}

/// Parse tree of a group spec: a direct product of atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub atoms: Vec<Atom>,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Cyclic(n) => write!(f, "Z{n}"),
            Atom::Dihedral(n) => write!(f, "D{n}"),
            Atom::Dicyclic(n) => write!(f, "Q{n}"),
            Atom::Elementary(n) => write!(f, "E{n}"),
            Atom::Semidirect(m, n, k) => write!(f, "SD({m},{n},{k})"),
            Atom::Named(s) => f.write_str(s),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> GroupError {
        GroupError::Parse { pos: self.pos, msg: msg.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), GroupError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn int(&mut self) -> Result<usize, GroupError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| GroupError::Parse { pos: start, msg: "integer too large".into() })
    }

    fn atom(&mut self) -> Result<Atom, GroupError> {
        let start = self.pos;
        if self.src[self.pos..].starts_with(b"SD(") {
            self.pos += 3;
            let m = self.int()?;
            self.expect(b',')?;
            let n = self.int()?;
            self.expect(b',')?;
            let k = self.int()?;
            self.expect(b')')?;
            return Ok(Atom::Semidirect(m, n, k));
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_uppercase() || c.is_ascii_digit() || c == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a group atom"));
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let family = |prefix: char| -> Option<usize> {
            let rest = word.strip_prefix(prefix)?;
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                rest.parse().ok()
            } else {
                None
            }
        };
        if let Some(n) = family('Z') {
            return Ok(Atom::Cyclic(n));
        }
        if let Some(n) = family('D') {
            return Ok(Atom::Dihedral(n));
        }
        if let Some(n) = family('Q') {
            return Ok(Atom::Dicyclic(n));
        }
        if let Some(n) = family('E') {
            return Ok(Atom::Elementary(n));
        }
        if catalogue_names().iter().any(|c| c == word) {
            return Ok(Atom::Named(word.to_string()));
        }
        Err(GroupError::Parse { pos: start, msg: format!("unknown group `{word}`") })
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.trim().as_bytes(), pos: 0 };
        let mut atoms = vec![p.atom()?];
        while p.peek() == Some(b'x') {
            p.pos += 1;
            atoms.push(p.atom()?);
        }
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(GroupSpec { atoms })
    }
}

impl Atom {
    pub fn build(&self) -> Result<Group, GroupError> {
        match *self {
            Atom::Cyclic(n) => build_cyclic(n),
            Atom::Dihedral(n) => build_dihedral(n),
            Atom::Dicyclic(n) => build_dicyclic(n),
            Atom::Elementary(n) => build_elementary(n),
            Atom::Semidirect(m, n, k) => build_semidirect_cyclic(m, n, k),
            Atom::Named(ref s) => named_group(s),
        }
    }
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group, GroupError> {
        let parts = self.atoms.iter().map(Atom::build).collect::<Result<Vec<_>, _>>()?;
        let group = if parts.len() == 1 {
            parts.into_iter().next().expect("one atom")
        } else {
            let refs: Vec<&Group> = parts.iter().collect();
            direct_product_many(&refs)?
        };
        Ok(group.with_spec(self.to_string()))
    }
}

/// Parses and builds a group in one step.
pub fn parse_group_spec(s: &str) -> Result<Group, GroupError> {
    s.parse::<GroupSpec>()?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let z12 = parse_group_spec("Z12").unwrap();
        assert_eq!(z12.order(), 12);
        assert!(z12.is_abelian());
        assert_eq!(parse_group_spec("Z4xZ2").unwrap().order(), 8);
        let g21 = parse_group_spec("SD(7,3,4)").unwrap();
        assert_eq!(g21.table(), parse_group_spec("G21_1").unwrap().table());
        assert_eq!(parse_group_spec("Z2xZ2xZ2").unwrap().table(), parse_group_spec("E8").unwrap().table());
        assert_eq!(parse_group_spec("  D8 ").unwrap().spec(), "D8");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!("Z4xK3".parse::<GroupSpec>(), Err(GroupError::Parse { pos: 3, msg: "unknown group `K3`".into() }));
        assert!(matches!("Z4x".parse::<GroupSpec>(), Err(GroupError::Parse { pos: 3, .. })));
        assert!(matches!("SD(7,3)".parse::<GroupSpec>(), Err(GroupError::Parse { pos: 6, .. })));
        assert!(matches!("Z4 Z2".parse::<GroupSpec>(), Err(GroupError::Parse { pos: 2, .. })));
        assert!(matches!(parse_group_spec("SD(7,3,3)"), Err(GroupError::InconsistentRelation { .. })));
        assert!(matches!(parse_group_spec("D7"), Err(GroupError::InvalidOrder { .. })));
    }

    #[test]
    fn canonical_format() {
        let s: GroupSpec = "Z04xSD(7,3,4)xA4".parse().unwrap();
        assert_eq!(s.to_string(), "Z4xSD(7,3,4)xA4");
    }

    fn atom_strategy() -> impl Strategy<Value = Atom> {
        prop_oneof![
            (1usize..50).prop_map(Atom::Cyclic),
            (1usize..50).prop_map(Atom::Dihedral),
            (1usize..50).prop_map(Atom::Dicyclic),
            (1usize..50).prop_map(Atom::Elementary),
            (1usize..20, 1usize..20, 0usize..20).prop_map(|(m, n, k)| Atom::Semidirect(m, n, k)),
            prop::sample::select(catalogue_names()).prop_map(Atom::Named),
        ]
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(atoms in prop::collection::vec(atom_strategy(), 1..4)) {
            let spec = GroupSpec { atoms };
            let text = spec.to_string();
            let back: GroupSpec = text.parse().unwrap();
            prop_assert_eq!(&back, &spec);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
