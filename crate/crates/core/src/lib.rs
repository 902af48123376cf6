//! Character theory of the finite symplectic similitude group `GSp(4, F_q)`.
//!
//! For small odd prime powers `q` the crate computes the canonical field tower
//! `F_q ⊂ F_{q²} ⊂ F_{q⁴}`, the group by exhaustive enumeration together with
//! its Borel, Siegel and Klingen parabolic subgroups, the labeled conjugacy
//! classes, class functions with Frobenius induction, the `GL(2, F_q)`
//! characters in closed form, the closed-form character tables of the
//! parabolically induced representations, the Gelfand–Graev character, the
//! full irreducible character table via a class-algebra eigensolver, and the
//! dimension table for principal-congruence fixed vectors.
//!
//! Every closed-form table is cross-checked against brute-force oracles at
//! small `q`; the verification suites live in the test targets and in the
//! companion CLI crate.

pub mod chartab;
pub mod classfn;
pub mod conjugacy;
pub mod dimensions;
pub mod field;
pub mod gl2;
pub mod parabolic;
pub mod whittaker;
pub mod group;
pub mod irreducibles;

pub use field::{FieldDescriptor, FieldError};
pub use group::{GroupCtx, GroupEnumeration};
