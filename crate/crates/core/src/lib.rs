//! Skein-theoretic invariants of spatial graph diagrams at desk scale.
//!
//! The coefficient ring is ℛ = ℤ[A, A⁻¹, d⁻¹] with d = −A² − A⁻², kept exact
//! (arbitrary-precision integers, explicit d-denominators). On top of it:
//!
//! * [`yamada`]: the Yamada polynomial of a spatial graph diagram (flat
//!   vertices of any valency plus crossings), by crossing expansion and
//!   memoized deletion–contraction.
//! * [`kauffman`]: the Kauffman bracket of link diagrams, in the sphere and
//!   in the annulus (solid-torus skein module ℛ[z]).
//! * [`cabling`]: the 2-cable homomorphism Φ with Jones–Wenzl projector f₁
//!   on every edge; `phi_check` cross-validates Y against the cabled bracket.
//! * [`annulus`]: reduction of annular graph diagrams to the ℛ[z] basis,
//!   the bouquet evaluation table, and the θ_n/S_n/b_n relation audit.
//! * [`periodicity`]: congruence tests mod (p, A^{2p}−1) and the Frobenius
//!   ideal, a p-th-power solver, and an abstract symmetry screen, combined
//!   into a "cannot be p-periodic" verdict.
//!
//! The crate is `no_std` (alloc required); IO, JSON, and the command-line
//! front end live in the companion `graphskein` crate.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod annulus;
pub mod cabling;
pub mod canon;
pub mod diagram;
pub mod gen;
pub mod kauffman;
pub mod periodicity;
pub mod ring;
pub mod yamada;

use alloc::string::String;
use core::fmt;

/// Unified error type. `Malformed` marks rejected input; the other variants
/// mark a convention violation detected mid-computation (a diagram that is
/// not an embedded annular/spherical diagram, or ring misuse).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Structurally invalid input (bad half-edge incidence, bad modulus, …).
    Malformed(String),
    /// A circle or loop acquired winding |w| ≥ 2: the input was not an
    /// embedded diagram in the stated ambient surface.
    WindingCorruption(i32),
    /// Essential (winding ±1) content showed up while evaluating in the
    /// sphere, where no essential curve exists.
    EssentialInSphere,
    /// Inversion of a non-unit scalar was requested.
    NotInvertible,
    /// Internal invariant breach; the message names the violated invariant.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Malformed(m) => write!(f, "malformed input: {m}"),
            Error::WindingCorruption(w) => {
                write!(f, "winding corruption: circle with winding {w}")
            }
            Error::EssentialInSphere => {
                write!(f, "essential circle or loop in a sphere evaluation")
            }
            Error::NotInvertible => write!(f, "scalar is not invertible"),
            Error::Internal(m) => write!(f, "internal assertion: {m}"),
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
