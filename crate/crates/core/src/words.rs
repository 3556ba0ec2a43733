//! Words over ordered letters or named variables, and the statistics that the
//! identity characterizations are phrased in.
//!
//! A [`Word`] is generic over its symbol type, so a word of monoid letters
//! ([`Letter`]) and a word of identity variables ([`Var`]) are different types
//! and can never be mixed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::Hash;
use std::ops::Add;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Common bound for the two symbol kinds.
pub trait Symbol: Clone + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {}

/// A letter of the ordered alphabet `1 < 2 < 3 < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Letter(u32);

impl Letter {
    pub fn new(value: u32) -> Result<Self> {
        if value == 0 {
            Err(Error::ZeroLetter)
        } else {
            Ok(Letter(value))
        }
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Symbol for Letter {}

/// A named identity variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Result<Self> {
        let mut chars = name.chars();
        let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
        if head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            Ok(Var(Arc::from(name)))
        } else {
            Err(Error::InvalidVariable(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Var {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl Symbol for Var {}

/// Which side of the anchor a directional occurrence count looks at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Occurrences strictly before the first occurrence of the anchor.
    Before,
    /// Occurrences strictly after the last occurrence of the anchor.
    After,
}

/// Which occurrences a skeleton keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Skeleton {
    /// First occurrence of every symbol (the initial part).
    Ip,
    /// Last occurrence of every symbol (the final part).
    Fp,
    /// First and last occurrence of every symbol.
    Mix,
}

/// A finite sequence of symbols; the empty word is the identity element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word<S>(Vec<S>);

pub type LetterWord = Word<Letter>;
pub type VarWord = Word<Var>;

impl<S> Default for Word<S> {
    fn default() -> Self {
        Word(Vec::new())
    }
}

impl<S> From<Vec<S>> for Word<S> {
    fn from(symbols: Vec<S>) -> Self {
        Word(symbols)
    }
}

impl<S> FromIterator<S> for Word<S> {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a, S> IntoIterator for &'a Word<S> {
    type Item = &'a S;
    type IntoIter = std::slice::Iter<'a, S>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl<S> Word<S> {
    pub fn new(symbols: Vec<S>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[S] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<S> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.0.iter()
    }

    pub fn first(&self) -> Option<&S> {
        self.0.first()
    }

    pub fn last(&self) -> Option<&S> {
        self.0.last()
    }
}

impl<S: Clone> Word<S> {
    pub fn concat(&self, other: &Word<S>) -> Word<S> {
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.0);
        symbols.extend_from_slice(&other.0);
        Word(symbols)
    }

    pub fn reversed(&self) -> Word<S> {
        Word(self.0.iter().rev().cloned().collect())
    }

    /// The factor occupying positions `range`.
    pub fn factor(&self, range: std::ops::Range<usize>) -> Word<S> {
        Word(self.0[range].to_vec())
    }
}

impl<S: Symbol> Word<S> {
    /// `con(w)`.
    pub fn content(&self) -> BTreeSet<S> {
        self.0.iter().cloned().collect()
    }

    /// `occ(x, w)`.
    pub fn occ(&self, x: &S) -> usize {
        self.0.iter().filter(|s| *s == x).count()
    }

    pub fn first_occurrence(&self, x: &S) -> Option<usize> {
        self.0.iter().position(|s| s == x)
    }

    pub fn last_occurrence(&self, x: &S) -> Option<usize> {
        self.0.iter().rposition(|s| s == x)
    }

    /// Number of occurrences of `x` before the first (resp. after the last)
    /// occurrence of `anchor`. The anchoring occurrence itself never counts.
    pub fn directional_occ(&self, direction: Direction, anchor: &S, x: &S) -> Result<usize> {
        match direction {
            Direction::Before => {
                let first = self
                    .first_occurrence(anchor)
                    .ok_or_else(|| Error::AnchorAbsent(anchor.to_string()))?;
                Ok(self.0[..first].iter().filter(|s| *s == x).count())
            }
            Direction::After => {
                let last = self
                    .last_occurrence(anchor)
                    .ok_or_else(|| Error::AnchorAbsent(anchor.to_string()))?;
                Ok(self.0[last + 1..].iter().filter(|s| *s == x).count())
            }
        }
    }

    /// Positions retained by a skeleton, in increasing order.
    pub fn skeleton_positions(&self, mode: Skeleton) -> Vec<usize> {
        let mut first: BTreeMap<&S, usize> = BTreeMap::new();
        let mut last: BTreeMap<&S, usize> = BTreeMap::new();
        for (i, s) in self.0.iter().enumerate() {
            first.entry(s).or_insert(i);
            last.insert(s, i);
        }
        let mut keep: Vec<usize> = match mode {
            Skeleton::Ip => first.into_values().collect(),
            Skeleton::Fp => last.into_values().collect(),
            Skeleton::Mix => first.into_values().chain(last.into_values()).collect(),
        };
        keep.sort_unstable();
        keep.dedup();
        keep
    }

    /// `ip(w)`, `fp(w)` or `mix(w)`.
    pub fn skeleton(&self, mode: Skeleton) -> Word<S> {
        self.skeleton_positions(mode)
            .into_iter()
            .map(|i| self.0[i].clone())
            .collect()
    }

    pub fn ip(&self) -> Word<S> {
        self.skeleton(Skeleton::Ip)
    }

    pub fn fp(&self) -> Word<S> {
        self.skeleton(Skeleton::Fp)
    }

    pub fn mix(&self) -> Word<S> {
        self.skeleton(Skeleton::Mix)
    }

    /// `w[x1, ..., xm]`: keep only the occurrences of symbols in `keep`.
    pub fn restrict(&self, keep: &BTreeSet<S>) -> Word<S> {
        self.0.iter().filter(|s| keep.contains(s)).cloned().collect()
    }

    pub fn ev(&self) -> Evaluation<S> {
        let mut counts = BTreeMap::new();
        for s in &self.0 {
            *counts.entry(s.clone()).or_insert(0) += 1;
        }
        Evaluation { counts }
    }

    /// Whether every symbol occurs at most once.
    pub fn is_simple(&self) -> bool {
        self.content().len() == self.len()
    }
}

/// Occurrence counts of a word; symbols with count zero are absent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Evaluation<S: Ord> {
    counts: BTreeMap<S, usize>,
}

impl<S: Symbol> Evaluation<S> {
    pub fn get(&self, x: &S) -> usize {
        self.counts.get(x).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn counts(&self) -> &BTreeMap<S, usize> {
        &self.counts
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &Evaluation<S>) -> bool {
        self.counts.iter().all(|(s, &c)| c <= other.get(s))
    }
}

impl<S: Symbol> FromIterator<(S, usize)> for Evaluation<S> {
    fn from_iter<I: IntoIterator<Item = (S, usize)>>(iter: I) -> Self {
        let mut counts = BTreeMap::new();
        for (s, c) in iter {
            if c > 0 {
                *counts.entry(s).or_insert(0) += c;
            }
        }
        Evaluation { counts }
    }
}

impl<S: Symbol> Add for &Evaluation<S> {
    type Output = Evaluation<S>;

    fn add(self, rhs: &Evaluation<S>) -> Evaluation<S> {
        let mut counts = self.counts.clone();
        for (s, c) in &rhs.counts {
            *counts.entry(s.clone()).or_insert(0) += c;
        }
        Evaluation { counts }
    }
}

impl<S: Symbol> fmt::Display for Evaluation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (s, c)) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}:{c}")?;
        }
        f.write_str("}")
    }
}

// Text formats. Letter words print as compact digits when every letter is at
// most 9 and as space-separated integers otherwise; variable words print
// juxtaposed when every name is one character long. Input containing any
// whitespace is read in the separated format, so a separated word of one
// symbol carries a trailing space.

impl fmt::Display for Word<Letter> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.0.iter().all(|l| l.0 <= 9);
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 && !compact {
                f.write_str(" ")?;
            }
            write!(f, "{}", l.0)?;
        }
        if !compact && self.0.len() == 1 {
            // "10" alone would read back as the letters 1, 0.
            f.write_str(" ")?;
        }
        Ok(())
    }
}

impl fmt::Display for Word<Var> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.0.iter().all(|v| v.0.len() == 1);
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 && !compact {
                f.write_str(" ")?;
            }
            f.write_str(&v.0)?;
        }
        if !compact && self.0.len() == 1 {
            f.write_str(" ")?;
        }
        Ok(())
    }
}

fn syntax(input: &str, reason: impl Into<String>) -> Error {
    Error::WordSyntax {
        input: input.to_string(),
        reason: reason.into(),
    }
}

impl FromStr for Word<Letter> {
    type Err = Error;

    fn from_str(raw: &str) -> Result<Self> {
        let s = raw.trim();
        if raw.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|tok| {
                    let v: u32 = tok
                        .parse()
                        .map_err(|_| syntax(s, format!("`{tok}` is not a positive integer")))?;
                    Letter::new(v)
                })
                .collect()
        } else {
            s.chars()
                .map(|c| match c.to_digit(10) {
                    Some(0) => Err(Error::ZeroLetter),
                    Some(d) => Ok(Letter(d)),
                    None => Err(syntax(s, format!("`{c}` is not a digit 1-9"))),
                })
                .collect()
        }
    }
}

impl FromStr for Word<Var> {
    type Err = Error;

    fn from_str(raw: &str) -> Result<Self> {
        let s = raw.trim();
        if raw.contains(char::is_whitespace) {
            s.split_whitespace().map(Var::new).collect()
        } else {
            s.chars()
                .map(|c| {
                    if c.is_ascii_alphabetic() {
                        Ok(Var(Arc::from(c.to_string())))
                    } else {
                        Err(syntax(
                            s,
                            format!("`{c}` is not a one-letter variable; separate longer names with spaces"),
                        ))
                    }
                })
                .collect()
        }
    }
}

impl Serialize for Word<Letter> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        serializer.collect_str(self)
    }
}

impl Serialize for Word<Var> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        serializer.collect_str(self)
    }
}

/// A formal equation `lhs ≈ rhs` between variable words.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Identity {
    pub lhs: VarWord,
    pub rhs: VarWord,
}

impl Identity {
    /// Builds an identity with two nonempty sides.
    pub fn new(lhs: VarWord, rhs: VarWord) -> Result<Self> {
        let id = Identity { lhs, rhs };
        if id.lhs.is_empty() || id.rhs.is_empty() {
            return Err(Error::EmptySide(id.to_string()));
        }
        Ok(id)
    }

    /// Builds an identity whose sides may be empty (monoid identities such as
    /// `x ≈ 1` arise when testing small cases).
    pub fn with_empty_sides(lhs: VarWord, rhs: VarWord) -> Self {
        Identity { lhs, rhs }
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        let mut vars = self.lhs.content();
        vars.extend(self.rhs.content());
        vars
    }

    /// `reverse(lhs) ≈ reverse(rhs)`.
    pub fn reversed(&self) -> Identity {
        Identity {
            lhs: self.lhs.reversed(),
            rhs: self.rhs.reversed(),
        }
    }

    pub fn flipped(&self) -> Identity {
        Identity {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (lhs, rhs) = s
            .split_once('=')
            .or_else(|| s.split_once('≈'))
            .ok_or_else(|| Error::IdentitySyntax(s.to_string()))?;
        if rhs.contains('=') || rhs.contains('≈') {
            return Err(Error::IdentitySyntax(s.to_string()));
        }
        Identity::new(lhs.trim().parse()?, rhs.trim().parse()?)
    }
}

impl Serialize for Identity {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        serializer.collect_str(self)
    }
}

/// Parses an identity system: one identity per line, `#` starts a comment.
pub fn parse_identity_system(text: &str) -> Result<Vec<Identity>> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(str::parse)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lw(s: &str) -> LetterWord {
        s.parse().unwrap()
    }

    fn vw(s: &str) -> VarWord {
        s.parse().unwrap()
    }

    fn l(v: u32) -> Letter {
        Letter::new(v).unwrap()
    }

    fn v(name: &str) -> Var {
        Var::new(name).unwrap()
    }

    const EXAMPLE: &str = "3613151265";

    #[test]
    fn occ_counts() {
        assert_eq!(lw(EXAMPLE).occ(&l(1)), 3);
        assert_eq!(vw("xyx").occ(&v("x")), 2);
        assert_eq!(lw(EXAMPLE).occ(&l(7)), 0);
    }

    #[test]
    fn directional_occ_examples() {
        let w = lw(EXAMPLE);
        assert_eq!(w.directional_occ(Direction::After, &l(3), &l(1)).unwrap(), 2);
        assert_eq!(w.directional_occ(Direction::Before, &l(3), &l(3)).unwrap(), 0);
        let (x, y) = (v("x"), v("y"));
        assert_eq!(vw("xyx").directional_occ(Direction::After, &y, &x).unwrap(), 1);
        assert_eq!(vw("yxx").directional_occ(Direction::After, &y, &x).unwrap(), 2);
    }

    #[test]
    fn directional_occ_absent_anchor_is_an_error() {
        let err = lw("121").directional_occ(Direction::After, &l(3), &l(1));
        assert_eq!(err, Err(Error::AnchorAbsent("3".into())));
        assert!(lw("").directional_occ(Direction::Before, &l(1), &l(1)).is_err());
    }

    #[test]
    fn skeletons() {
        let w = lw(EXAMPLE);
        assert_eq!(w.fp(), lw("31265"));
        assert_eq!(w.ip(), lw("36152"));
        assert_eq!(w.mix(), lw("361351265"));
        assert_eq!(lw("").mix(), lw(""));
        assert_eq!(vw("x").mix(), vw("x"));
    }

    #[test]
    fn restriction() {
        let w = lw(EXAMPLE);
        let keep: BTreeSet<_> = [l(1), l(5)].into();
        assert_eq!(w.restrict(&keep), lw("11515"));
        assert_eq!(vw("xyx").restrict(&[v("x")].into()), vw("xx"));
        assert_eq!(w.restrict(&w.content()), w);
    }

    #[test]
    fn evaluation() {
        let e = lw(EXAMPLE).ev();
        let expected: Evaluation<Letter> =
            [(l(1), 3), (l(2), 1), (l(3), 2), (l(5), 2), (l(6), 2)].into_iter().collect();
        assert_eq!(e, expected);
        assert_eq!(e.total(), 10);
        assert!(vw("xy").ev().leq(&vw("xysxty").ev()));
        assert!(!vw("xx").ev().leq(&vw("xy").ev()));
    }

    #[test]
    fn letter_formats() {
        assert_eq!(lw("12 3 12").symbols(), &[l(12), l(3), l(12)]);
        assert_eq!(lw("12 3 12").to_string(), "12 3 12");
        assert_eq!(lw("1 2 3").to_string(), "123");
        assert_eq!(lw(EXAMPLE).to_string(), EXAMPLE);
        assert!(lw("").is_empty());
        assert_eq!("120".parse::<LetterWord>(), Err(Error::ZeroLetter));
        assert!("1a".parse::<LetterWord>().is_err());
        assert!("1 -2".parse::<LetterWord>().is_err());
        // One wide letter keeps a separator so that it reads back whole.
        assert_eq!(lw("10 ").symbols(), &[l(10)]);
        assert_eq!(lw("10 ").to_string(), "10 ");
        assert_eq!(lw("19").len(), 2);
    }

    #[test]
    fn variable_formats() {
        assert_eq!(vw("xyx").to_string(), "xyx");
        let long = vw("x1 y x1");
        assert_eq!(long.len(), 3);
        assert_eq!(long.to_string(), "x1 y x1");
        assert!("x1".parse::<VarWord>().is_err());
        let single = vw("x1 ");
        assert_eq!(single.len(), 1);
        assert_eq!(single.to_string().parse::<VarWord>().unwrap(), single);
        assert!(Var::new("1x").is_err());
        assert!(Var::new("").is_err());
        assert!(Var::new("a_b2").is_ok());
    }

    #[test]
    fn identity_parsing() {
        let id: Identity = "xyx = yxx".parse().unwrap();
        assert_eq!(id.lhs, vw("xyx"));
        assert_eq!(id.rhs, vw("yxx"));
        assert_eq!(id.to_string(), "xyx = yxx");
        assert_eq!("xyx ≈ yxx".parse::<Identity>().unwrap(), id);
        assert!("xyx".parse::<Identity>().is_err());
        assert!("x = y = z".parse::<Identity>().is_err());
        assert!(matches!("x = ".parse::<Identity>(), Err(Error::EmptySide(_))));
    }

    #[test]
    fn identity_system_file() {
        let text = "# sylvester\nxysxty = yxsxty\n\n  xyx = yxx # stalactic\n";
        let sys = parse_identity_system(text).unwrap();
        assert_eq!(sys.len(), 2);
        assert_eq!(sys[1].to_string(), "xyx = yxx");
    }
}
