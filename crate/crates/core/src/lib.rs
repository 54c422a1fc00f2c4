//! Binary matroid toolkit built around the connectivity function.
//!
//! The crate covers GF(2) linear algebra, binary matroids in standard form,
//! connectivity and separations, single- and two-element growth, excluded
//! minor testing, and a certifier that decides whether a matroid with an
//! exact k-separation is a k-decomposer for a minor-closed class.

pub mod catalog;
pub mod connectivity;
pub mod decomposer;
pub mod error;
pub mod gf2;
pub mod growth;
pub mod io;
pub mod iso;
pub mod limits;
pub mod matroid;
pub mod minor;
pub mod reproduce;

pub use error::{Error, Result};
pub use gf2::{Gf2Matrix, Gf2Vector};
pub use matroid::{ids, BinaryMatroid, ElementId, ElementSet, StructureReport, Triple, TripleKind};
