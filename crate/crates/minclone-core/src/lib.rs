//! Finite binary idempotent groupoids.
//!
//! Tables, the binary term clone, right-orbit digraphs, category checks with
//! certificates, the word problem for finitely presented melds, a catalogue of
//! named algebras and brute-force census tooling.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;

pub mod census;
pub mod classify;
pub mod clone;
pub mod graphs;
pub mod groupoid;
pub mod hom;
pub mod meld;
pub mod relation;
pub mod term;
pub mod zoo;

pub use classify::{classify, Classification, Tag};
pub use clone::{free_algebra_two, FreeAlgebra2, TermTable};
pub use error::Error;
pub use graphs::{labeled_digraph, LabeledDigraph};
pub use groupoid::{Elem, Groupoid, Partition};
pub use term::Term;

pub type Result<T> = core::result::Result<T, Error>;
