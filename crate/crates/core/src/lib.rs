//! Exact computations in the Hochschild cohomology of Koszul quiver algebras.
//!
//! The pipeline runs bottom-up: exact linear algebra ([`exactlinalg`]), normal forms in
//! `Λ = kQ/I` ([`algebra`]), the Koszul data `f^n_i` and comultiplicative scalars
//! ([`koszul`]), the bimodule resolution `K` ([`resolution`]), cochains and cup products
//! ([`cohomology`]), homotopy liftings and derivation operators ([`lifting`]), and
//! Gerstenhaber brackets with a bar-complex oracle ([`bracket`]).

pub mod algebra;
pub mod exactlinalg;
pub mod koszul;
pub mod presets;
pub mod resolution;
pub mod cohomology;
pub mod lifting;
pub mod bracket;
pub mod golden;
