//! Identity checking for the monoid families.
//!
//! Satisfaction is decided exactly from word statistics. For every family of
//! rank at least 2 an identity `u ≈ v` holds if and only if:
//!
//! | family            | condition                                                   |
//! |-------------------|-------------------------------------------------------------|
//! | `stal`, `taig`    | `ev(u) = ev(v)` and `fp(u) = fp(v)`                         |
//! | `sylv`            | as above, and every after-last-occurrence count agrees      |
//! | `sylvsharp`       | `ev`, `ip`, and every before-first-occurrence count agrees  |
//! | `baxt`            | `ev`, `ip`, `fp`, and both directional count families agree |
//! | `l21` / `r21`     | `ip(u) = ip(v)` / `fp(u) = fp(v)`                           |
//! | `free1`           | `occ(x, u) = occ(x, v)` for every variable                  |
//!
//! Each characterization comes with a normal form ([`normal_form`]), a
//! constructive derivation of the normal form from the family's identity
//! basis ([`normalize_derivation`]), and a brute-force substitution oracle
//! ([`oracle`]) that checks decisions against the insertion algorithms.

mod derivation;
mod normal_form;
mod oracle;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::monoids::MonoidFamily;
use crate::words::{Direction, Identity, Symbol, Word};

pub use derivation::{
    apply_endo, certificate, derivation_system, deletion_closure, derive_search, is_deletion_instance,
    normalize_derivation, verify_derivation, DerivationStep, RuleDirection, SearchBounds,
};
pub use normal_form::normal_form;
pub use oracle::{
    find_counterexample, find_counterexample_with_cap, oracle, CounterExample, OracleConfig,
    OracleMode, Substitution, Verdict, DEFAULT_ESCALATION_CAP,
};

/// Identity basis of a plactic-like family.
pub fn basis(f: MonoidFamily) -> Result<Vec<Identity>> {
    let texts: &[&str] = match f {
        MonoidFamily::Stal | MonoidFamily::Taig => &["xyx = yxx"],
        MonoidFamily::Sylv => &["xysxty = yxsxty"],
        MonoidFamily::SylvSharp => &["ytxsyx = ytxsxy"],
        MonoidFamily::Baxt => &["ysxtxyhxky = ysxtyxhxky", "xsytxyhxky = xsytyxhxky"],
        _ => return Err(Error::NoNormalForm(f)),
    };
    Ok(texts.iter().map(|t| t.parse().expect("basis identities parse")).collect())
}

/// For every ordered pair `(anchor, x)` the number of occurrences of `x`
/// before the first (resp. after the last) occurrence of `anchor`. Zero
/// counts are omitted.
pub fn directional_profile<S: Symbol>(w: &Word<S>, direction: Direction) -> BTreeMap<(S, S), usize> {
    let symbols = w.symbols();
    let order: Box<dyn Iterator<Item = &S>> = match direction {
        Direction::Before => Box::new(symbols.iter()),
        Direction::After => Box::new(symbols.iter().rev()),
    };
    // Scanning away from the anchored side, the counts accumulated when an
    // anchor is first met are exactly the occurrences beyond it.
    let mut seen: BTreeMap<&S, usize> = BTreeMap::new();
    let mut profile = BTreeMap::new();
    for s in order {
        if !seen.contains_key(s) {
            for (x, &c) in &seen {
                profile.insert((s.clone(), (*x).clone()), c);
            }
        }
        *seen.entry(s).or_insert(0) += 1;
    }
    profile
}

/// Whether `u ≈ v` holds in every monoid of the family (rank ≥ 2 for the
/// plactic-like families).
pub fn words_agree<S: Symbol>(f: MonoidFamily, u: &Word<S>, v: &Word<S>) -> bool {
    let ev = || u.ev() == v.ev();
    let ip = || u.ip() == v.ip();
    let fp = || u.fp() == v.fp();
    let after = || directional_profile(u, Direction::After) == directional_profile(v, Direction::After);
    let before = || directional_profile(u, Direction::Before) == directional_profile(v, Direction::Before);
    match f {
        MonoidFamily::Stal | MonoidFamily::Taig => ev() && fp(),
        MonoidFamily::Sylv => ev() && fp() && after(),
        MonoidFamily::SylvSharp => ev() && ip() && before(),
        MonoidFamily::Baxt => ev() && ip() && fp() && before() && after(),
        MonoidFamily::LeftZeroAdjoined => ip(),
        MonoidFamily::RightZeroAdjoined => fp(),
        MonoidFamily::FreeMonogenic => ev(),
    }
}

/// Exact decision: does every monoid of the family (of rank ≥ 2) satisfy
/// `id`?
pub fn satisfies(f: MonoidFamily, id: &Identity) -> bool {
    words_agree(f, &id.lhs, &id.rhs)
}
