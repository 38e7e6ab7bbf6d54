//! Finite and affine Weyl group combinatorics with exact integer arithmetic.
//!
//! Elements are affine transformations (finite part, translation) of the root
//! coordinate space; equality is equality of the pair, lengths and descents
//! come from exact root counting, so no word-problem solver is involved.
//! Balls are BFS truncations carrying the Bruhat order; on top of them sit
//! coset and double-coset enumeration with regularity certificates, the
//! parabolic-singular index posets with their anti-isomorphism, the
//! Kazhdan-Lusztig recursion, and the weight-lattice predicates.

pub mod ball;
pub mod cosets;
pub mod element;
pub mod error;
pub mod group;
pub mod kl;
pub mod oracle;
pub mod root_data;
pub mod types;
pub mod weights;

pub use ball::CoxBall;
pub use element::WeylElem;
pub use error::{Result, WeylError};
pub use group::WeylGroup;
pub use types::CartanType;
