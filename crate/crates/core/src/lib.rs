//! Finitely annihilated groups.
//!
//! A nontrivial group is *finitely annihilated* (F-A) when every element dies
//! in some nontrivial finite quotient; for finite groups this means the group
//! is the union of its proper normal subgroups. This crate decides that
//! property (and its n-element generalisation) exactly for small finite
//! groups, classifies finitely presented groups through their abelianisation,
//! and searches for explicit finite-quotient witnesses.

pub mod abelian;
pub mod catalog;
pub mod config;
pub mod covering;
pub mod error;
pub mod group;
pub mod harness;
pub mod presentation;
pub mod search;
pub mod set;
pub mod structure;

pub use abelian::AbelianInvariants;
pub use config::Caps;
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use set::{ElementSet, Mask, SetKind};
