//! Graphs of groups, normal forms and coset representatives.

mod abelian;
mod coset;
mod enumerate;
mod free;
mod graph;
mod normal_form;
mod vertex;

pub use coset::Site;
pub use enumerate::syllabic_words;
pub use free::{CyclicSubgroup, FreeWord, Syllable};
pub use graph::{EdgeSpec, GraphId, GraphOfGroups, GraphSpec, WordSpec};
pub use normal_form::{Letter, NormalForm, Path, PathLetter};
pub use vertex::{EdgeGroup, GroupKind, VElem, VertexGroup};
