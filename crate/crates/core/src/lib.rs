//! Exact arithmetic for elliptic curves over the rationals.
//!
//! Modules, roughly bottom-up:
//! - [`arith`]: integers, rationals, primality, factorization, valuations
//! - [`poly`], [`sym`]: dense polynomials over an exact ring, and the ring Z[A,B,λ]
//! - [`curves`]: Weierstrass models, invariants, minimization, reduction types
//! - [`divpoly`]: division polynomials and the identities built from them
//! - [`ffcurve`]: curves over F_p
//! - [`torsionq`]: rational torsion
//! - [`numfield`]: traces in quotient rings Q[X]/(g)
//! - [`galoisrules`]: surjectivity rules and the exceptional-prime report
//! - [`liftkit`]: lifting plans, admissible sets and tower descriptors

pub mod arith;
pub mod curves;
pub mod divpoly;
pub mod error;
pub mod ffcurve;
pub mod galoisrules;
pub mod liftkit;
pub mod numfield;
pub mod poly;
pub mod roots;
pub mod sym;
pub mod torsionq;

pub use error::{Error, Result};
