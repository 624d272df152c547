//! Exact, desk-scale model of the flux, Calabi and discontinuous-intersection cocycles on
//! groups of area-preserving surface maps.
//!
//! Real numbers are modeled by polynomials over `Q` in a finite symbol alphabet, the group
//! by tuples (symplectic action, compactly supported flux, mapping-class crossed
//! homomorphism value, Calabi value), and cohomology by explicit cochains on the
//! inhomogeneous bar complex. Every identity is checked with exact arithmetic.

pub mod bar;
pub mod certify;
pub mod cocycles;
pub mod error;
pub mod group;
pub mod io;
pub mod kunneth;
pub mod linalg;
pub mod random;
pub mod scalars;
pub mod symplectic;

pub use error::{Error, Result};
pub use group::{ModelSymp, SubgroupTag};
