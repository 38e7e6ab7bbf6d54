//! Exact-arithmetic toolkit for positively graded finite-dimensional algebras.
//!
//! The crate provides, over Q and F_p with no floating point anywhere:
//!
//! - exact linear algebra and integer-lattice normal forms ([`matrix`], [`lattice`]);
//! - graded algebras from structure constants or quiver presentations, with
//!   radical series ([`algebra`], [`quiver`], [`radical`]);
//! - graded modules, minimal graded projective resolutions, and graded ext
//!   tables ([`module`], [`simples`], [`resolution`], [`ext`]);
//! - quasi-hereditary structures and the Koszul / Q-Koszul / standard Q-Koszul
//!   certification suite ([`qh`], [`certify`]);
//! - the forced gradings gr A (radical filtration) and the integral variant
//!   over a Z-order with base change to F_p ([`forced`]);
//! - constructive graded Morita transfer through full grade-0 idempotents
//!   ([`morita`]);
//! - a JSON interchange format for algebras, orders and reports ([`spec_io`]).
//!
//! Brute-force reference implementations used to cross-check the fast paths
//! live in [`oracle`]; small example algebras used by the test suites live in
//! [`corpus`].

pub mod algebra;
pub mod certify;
pub mod corpus;
pub mod error;
pub mod ext;
pub mod forced;
pub mod lattice;
pub mod matrix;
pub mod module;
pub mod morita;
pub mod oracle;
pub mod qh;
pub mod quiver;
pub mod radical;
pub mod resolution;
pub mod scalar;
pub mod simples;
pub mod spec_io;

pub use error::{CoreError, Result};
pub use scalar::{ExactScalar, FieldMode};
