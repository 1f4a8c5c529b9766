//! Exhaustive checks of coprime-order triple conditions on small finite groups.
//!
//! Groups are fully enumerated (permutation groups or matrix groups over a
//! prime field). On top of that the crate decides Thompson triples,
//! Kaplan-Levy triples, the three-prime-order (3PO) and three-prime-power-order
//! (3PPO) conditions and the three-Sylow product-set condition (3SS), converts
//! witnesses between 3PPO and 3SS in both directions, and counts class
//! multiplication solutions both by brute force and from an exact character
//! table.

pub mod algebraic;
pub mod arith;
pub mod catalog;
pub mod chartable;
pub mod conditions;
pub mod definition;
pub mod element;
pub mod error;
pub mod group;
pub mod report;
pub mod structure;

pub use element::{GroupElement, ModMatrix, Permutation, Shape};
pub use error::{Error, Result};
pub use group::{generate_group, ElemId, FiniteGroup, DEFAULT_ORDER_CAP};
