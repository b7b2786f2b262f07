//! Engine for impartial combinatorial games played by three players who
//! move in a fixed rotation, where the player unable to move loses and a
//! two-player coalition may play arbitrarily badly on purpose.
//!
//! With best play against the *queer* possibility of endless mutual
//! sabotage, every game falls into exactly one of four types:
//!
//! * `P` (also written **0**) — the Previous player can force the win;
//! * `N` (**1**) — the Next player to move can force the win;
//! * `O` (**2**) — the Other player (neither next nor previous) can;
//! * `Q` (**∞**) — nobody can force the win single-handedly.
//!
//! The crate is `no_std` (with `alloc`): all state lives in an explicit
//! [`store::Store`] of interned game trees, and everything else — the
//! classifier, notation, universe enumeration, the empirical type algebra
//! and the Nim endgame theory — is a pure function over that store.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod classify;
pub mod enumerate;
pub mod nim;
pub mod notation;
pub mod scan;
pub mod store;

pub use classify::{Classifier, CoalitionOracle, GameType, Seat};
pub use store::{GameId, Store};
