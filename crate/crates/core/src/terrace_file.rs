//! JSON files holding one arrangement.
//!
//! ```json
//! {"group": "SD(7,3,4)", "words": ["e", "v", "u", ...]}
//! {"group": "Z5", "elements": [0, 1, 4, 2, 3]}
//! ```
//!
//! Exactly one of `elements` (ids) and `words` must be present.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{parse_group_spec, Group, GroupError};
use crate::props::{self, PropsError};

#[derive(Debug, Error)]
pub enum TerraceFileError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("give exactly one of \"elements\" and \"words\"")]
    Ambiguous,
    #[error("unknown element word {0:?}")]
    UnknownWord(String),
    #[error("file is for group {file}, not {given}")]
    GroupMismatch { file: String, given: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Props(#[from] PropsError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerraceFile {
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<String>>,
}

impl TerraceFile {
    pub fn parse(text: &str) -> Result<Self, TerraceFileError> {
        let f: Self = serde_json::from_str(text)?;
        if f.elements.is_some() == f.words.is_some() {
            return Err(TerraceFileError::Ambiguous);
        }
        Ok(f)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self, TerraceFileError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn from_elements(g: &Group, a: &[usize]) -> Self {
        Self { group: g.spec().to_string(), elements: Some(a.to_vec()), words: None }
    }

    pub fn from_words(g: &Group, a: &[usize]) -> Self {
        Self {
            group: g.spec().to_string(),
            elements: None,
            words: Some(a.iter().map(|&x| g.word(x).to_string()).collect()),
        }
    }

    /// Builds the file's group.
    pub fn build_group(&self) -> Result<Group, TerraceFileError> {
        Ok(parse_group_spec(&self.group)?)
    }

    /// Element ids in `g`, checked to form an arrangement.
    pub fn resolve(&self, g: &Group) -> Result<Vec<usize>, TerraceFileError> {
        let seq = match (&self.elements, &self.words) {
            (Some(ids), None) => ids.clone(),
            (None, Some(words)) => words
                .iter()
                .map(|w| g.element_by_word(w).ok_or_else(|| TerraceFileError::UnknownWord(w.clone())))
                .collect::<Result<_, _>>()?,
            _ => return Err(TerraceFileError::Ambiguous),
        };
        props::check_arrangement(g, &seq)?;
        Ok(seq)
    }

    /// Resolves against `g`, first checking that the file's group has the
    /// same elements and multiplication table.
    pub fn resolve_for(&self, g: &Group) -> Result<Vec<usize>, TerraceFileError> {
        let own = self.build_group()?;
        if own.table() != g.table() || own.words() != g.words() {
            return Err(TerraceFileError::GroupMismatch { file: own.spec().to_string(), given: g.spec().to_string() });
        }
        self.resolve(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("terrace files serialise")
    }
}

/// Sequences shipped with the crate, by file name.
pub mod fixtures {
    pub const G21_T2: &str = include_str!("../fixtures/g21_t2.json");
    pub const A4_T2: &str = include_str!("../fixtures/a4_t2.json");
    pub const G27_NARCISSISTIC: &str = include_str!("../fixtures/g27_narcissistic.json");
    pub const G27_DIRECTED_HH: &str = include_str!("../fixtures/g27_directed_hh.json");

    pub const ALL: [(&str, &str); 4] = [
        ("g21_t2", G21_T2),
        ("a4_t2", A4_T2),
        ("g27_narcissistic", G27_NARCISSISTIC),
        ("g27_directed_hh", G27_DIRECTED_HH),
    ];
}
