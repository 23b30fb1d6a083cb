//! Ideals generated by adjacent 2-minors of a generic matrix.
//!
//! The crate models configurations of unit boxes on the grid and answers
//! questions about the ideal of their adjacent 2-minors: primality, existence
//! of a quadratic Gröbner basis, radicality, the minimal primes of the radical,
//! and connectivity of contingency tables under adjacent moves. A small exact
//! Gröbner engine for binomial ideals backs and cross-checks the
//! combinatorial answers.

pub mod classify;
pub mod error;
pub mod fiber;
pub mod fixtures;
pub mod format;
pub mod grid;
pub mod groebner;
pub mod primes;

pub use classify::{
    has_quadratic_gb, is_prime, radical_verdict, MarkChoice, Marking, QuadraticCertificate,
    RadicalStatus, RadicalVerdict,
};
pub use error::{Error, Result};
pub use fiber::{bfs_fiber, connected, margins, random_walk, ConnectivityVerdict, Move, Table};
pub use grid::{Cell, Configuration, GeneralMinor, UnitMinor};
pub use groebner::{BinomialElement, GroebnerBasis, Monomial, VariableRanking};
pub use primes::{admissible_sets, inner_minors, minimal_primes, AdmissibleSet, PrimeComponent};
