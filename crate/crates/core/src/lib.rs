//! Exact-arithmetic toolkit for newforms and oldforms on unramified odd
//! unitary groups over p-adic fields.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactnum`] — the base field model: exact rationals with p-adic
//!   valuation, the unramified quadratic extension E = F(sqrt(eps)), and
//!   additive character angles.
//! * [`matgroups`] — matrix groups over E: the unitary groups U(2n+1) and
//!   U(2r), their level subgroups, root elements, Weyl representatives, and
//!   the constructive decomposition / double-coset classification routines.
//! * [`polyalg`] — multivariate Laurent polynomials over exact rationals
//!   with a formal half-power of q, symmetric function constructors, and
//!   graded Laurent series in a spectral variable Y.
//! * [`lfactors`] — unramified L-parameters, conductor bookkeeping and the
//!   explicit tensor / Asai / epsilon polynomial factories.
//! * [`dimension`] — closed-form dimension counts for fixed-vector spaces
//!   and the combinatorial identities behind them.
//! * [`hecke`] — spherical Hecke algebra models on both the general-linear
//!   and unitary sides: involution, trace counts, Satake transform by
//!   lattice-point counting, and level raising.
//! * [`whittaker`] — Whittaker value tables: exact Shintani values for
//!   GL_r(E), truncated Jacquet-integral oracles for GL_2 and U(3), and
//!   support predicates.
//! * [`rankinselberg`] — the Xi-calculus: partial sums of the local zeta
//!   integral, series assembly against L-factor polynomials, the newform
//!   constancy check, oldform closed forms, and the rank-one intertwining
//!   (Gindikin-Karpelevich) comparison.

pub mod dimension;
pub mod exactnum;
pub mod hecke;
pub mod lfactors;
pub mod matgroups;
pub mod polyalg;
pub mod rankinselberg;
pub mod whittaker;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
