//! Terraces, sequencings and the complete Latin squares they produce.

pub mod enumerate;
pub mod groups;
pub mod hillclimb;
pub mod latin;
pub mod orbit;
pub mod par;
pub mod props;
pub mod terrace_file;
