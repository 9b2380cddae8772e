//! Presentations and amalgam decompositions of Bestvina-Brady groups.
//!
//! Given a finite simplicial graph, this crate computes Dicks-Leary and
//! spanning-tree (Papadima-Suciu style) presentations of the associated
//! Bestvina-Brady group, classifies triangles as favourable or unfavourable
//! relative to a spanning tree, and, where a suitable tree exists, emits the
//! iterated amalgamated-product decomposition of the group into a
//! right-angled Artin group and copies of Z^2.

pub mod classify;
pub mod complex;
pub mod decompose;
pub mod generate;
pub mod graph;
pub mod io;
pub mod presentation;
pub mod snf;
pub mod word;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
