//! Exact algebra over finite fields: Moore determinants, F_q-linear
//! polynomials, residue forms with simple poles, the Frobenius-sum pairing, symbolic
//! and randomized identity verification, and Artin–Schreier étale algebras.

pub mod addpoly;
pub mod error;
pub mod etale;
pub mod forms;
pub mod gf;
pub mod moore;
pub mod pairing;
pub mod poly;
pub mod ring;
pub mod suite;
pub mod symid;

pub use error::{Error, Result};
pub use gf::{build_field, build_field_with_cap, FieldCtx, Gf};
