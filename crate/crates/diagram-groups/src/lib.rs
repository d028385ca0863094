//! A workbench for semigroup diagrams and diagram groups.
//!
//! A *diagram* over a semigroup presentation is a plane graph recording a
//! derivation between two words; diagrams over a fixed base word form a
//! group under concatenation once dipoles (adjacent mutually inverse cells)
//! are cancelled. This crate implements the calculus exactly, with:
//!
//! - [`presentations`]: alphabets, words and rewriting relations;
//! - [`diagrams`]: derivation-encoded diagrams with composition, sum,
//!   inversion, canonical forms, dipole reduction and positive/negative
//!   splitting;
//! - [`geometry`]: the explicit planar realization (vertices, labeled
//!   edges, cells) with edge depths and DOT rendering;
//! - [`thompson`]: generalized Thompson's groups `F_r` as diagram groups
//!   over `<x | x = x^r>`, with generator diagrams and normal forms;
//! - [`plmaps`]: the exact piecewise-linear representation with rational
//!   breakpoints;
//! - [`families`]: Fibonacci-like and Johnson presentations and the basic
//!   diagrams attached to them;
//! - [`isomorphisms`]: the maps between diagram groups over those
//!   two-letter presentations and the matching `F_r`, in both directions,
//!   with round-trip verification;
//! - [`semigroup`]: bounded word-problem and element-counting oracles for
//!   the presented semigroups;
//! - [`verify`]: the one-shot verification suite behind `dgw verify all`;
//! - [`cli`]: the `dgw` command-line front end.
//!
//! Everything is exact integer/rational arithmetic; no floating point.
//! All core values are immutable and safe to share across threads.
//!
//! See the crate examples for runnable tours of each capability.

#![forbid(unsafe_code)]

pub mod cli;
pub mod diagrams;
pub mod error;
pub mod families;
pub mod geometry;
pub mod isomorphisms;
pub mod plmaps;
pub mod presentations;
pub mod rng;
pub mod semigroup;
pub mod thompson;
pub mod verify;

pub use error::Error;
