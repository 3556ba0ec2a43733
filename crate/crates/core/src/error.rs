use thiserror::Error;

use crate::monoids::MonoidFamily;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letters are positive integers; 0 is not a letter")]
    ZeroLetter,

    #[error("invalid variable name `{0}` (expected [a-zA-Z][a-zA-Z0-9_]*)")]
    InvalidVariable(String),

    #[error("cannot parse word `{input}`: {reason}")]
    WordSyntax { input: String, reason: String },

    #[error("cannot parse identity `{0}` (expected `<lhs> = <rhs>`)")]
    IdentitySyntax(String),

    #[error("identity `{0}` has an empty side")]
    EmptySide(String),

    #[error("anchor `{0}` does not occur in the word")]
    AnchorAbsent(String),

    #[error("letter {letter} is outside the alphabet of {family} (largest letter {max})")]
    RankViolation {
        family: MonoidFamily,
        letter: u32,
        max: u32,
    },

    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("variable `{0}` has no image under the substitution")]
    UnboundVariable(String),

    #[error("{0} has no identity basis or normal form here")]
    NoNormalForm(MonoidFamily),

    #[error(
        "{family} was decided not to satisfy `{identity}`, but no counterexample exists with images up to length {cap}"
    )]
    DecisionMismatch {
        family: MonoidFamily,
        identity: String,
        cap: usize,
    },

    #[error("no rule of the identity system justifies swapping positions {position} and {} of `{word}`", position + 1)]
    NoJustifyingRule { word: String, position: usize },

    #[error("substitution space of {0} elements is too large to enumerate")]
    SpaceTooLarge(u128),

    #[error("invalid finite monoid table: {0}")]
    InvalidTable(String),
}
