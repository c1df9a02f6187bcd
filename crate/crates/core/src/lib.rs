//! Exact symbolic workbench for polynomial automorphisms of C^k and
//! birational self-maps of P^k: iteration with common-factor cancellation,
//! degree-growth classification, and stability analysis.

pub mod dynamics;
pub mod gcd;
pub mod jets;
pub mod maps;
pub mod parse;
pub mod poly;
pub mod zoo;

pub use poly::{Degree, Int, Monomial, Poly, Rat};
