//! Group inputs: two-generator one-relator presentations and simplicial
//! graphs defining right-angled Artin groups.

mod graph;
mod word;

pub use graph::{SimplicialGraph, MAX_VERTICES};
pub use word::{parse_presentation, Letter, OneRelatorPresentation, PrefixWalk, Word};
