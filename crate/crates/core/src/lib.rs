//! Exact torsion homology growth for mapping tori of surface automorphisms.

pub mod alexander;
pub mod covers;
pub mod error;
pub mod exact_linalg;
pub mod group;
pub mod intpoly;
mod par;
pub mod roots;
pub mod serial;
pub mod torus_tower;

pub use error::{Error, Result};
pub use exact_linalg::{cokernel, smith_normal_form, CokerSummary, IntMatrix, SnfResult};
pub use group::{Automorphism, FreeWord, Letter, SurfaceKind, SurfacePresentation};
pub use intpoly::{cyclotomic_poly, mahler_measure, resultant, IntPoly, MahlerResult};
