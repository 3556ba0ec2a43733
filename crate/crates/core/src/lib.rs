//! Stalactic, taiga, sylvester, sylvester♯ and Baxter monoids.
//!
//! Words over positive-integer letters are read into canonical objects by
//! insertion ([`tableaux`], [`bst`]); two words are equal in the monoid
//! exactly when their objects coincide ([`monoids`]). Identities between
//! words over variables are decided from word statistics and checked against
//! brute-force substitution ([`identities`]).
//!
//! ```
//! use plactic_lab::monoids::{equivalent, MonoidFamily};
//! use plactic_lab::identities::satisfies;
//!
//! let (u, v) = ("212".parse().unwrap(), "122".parse().unwrap());
//! assert!(equivalent(MonoidFamily::Stal, &u, &v).unwrap());
//! assert!(!equivalent(MonoidFamily::Sylv, &u, &v).unwrap());
//! assert!(satisfies(MonoidFamily::Stal, &"xyx = yxx".parse().unwrap()));
//! ```

pub mod bst;
pub mod cli;
pub mod error;
pub mod identities;
pub mod monoids;
pub mod tableaux;
mod tree;
pub mod words;

pub use error::{Error, Result};
pub use monoids::MonoidFamily;
pub use tree::NodeRef;
pub use words::{Identity, Letter, LetterWord, Var, VarWord, Word};
