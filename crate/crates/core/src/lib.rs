//! Decompositions of `{g,r}`-graphs and related regular graphs into paths of a fixed odd length.

pub mod cayley;
pub mod graph;
pub mod group;
pub mod matching;
pub mod power;
pub mod collage;
pub mod engine;
pub mod io;
pub mod verify;
