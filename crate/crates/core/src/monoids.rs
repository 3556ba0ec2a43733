//! A uniform interface over the monoid families: canonical objects,
//! equivalence of words, the declared rank, and the three small monoids
//! `L₂¹`, `R₂¹` and the free monogenic monoid.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::bst::{BaxterObject, LeftStrictBst, RightStrictBst};
use crate::error::{Error, Result};
use crate::tableaux::{MultiplicityBst, StalacticTableau};
use crate::words::{Letter, LetterWord, Var, VarWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MonoidFamily {
    Stal,
    Taig,
    Sylv,
    SylvSharp,
    Baxt,
    /// `L₂¹`: the left-zero semigroup of order 2 with a unit adjoined.
    LeftZeroAdjoined,
    /// `R₂¹`: the right-zero semigroup of order 2 with a unit adjoined.
    RightZeroAdjoined,
    /// The free monogenic monoid, over the one-letter alphabet `{1}`.
    FreeMonogenic,
}

impl MonoidFamily {
    pub const ALL: [MonoidFamily; 8] = [
        MonoidFamily::Stal,
        MonoidFamily::Taig,
        MonoidFamily::Sylv,
        MonoidFamily::SylvSharp,
        MonoidFamily::Baxt,
        MonoidFamily::LeftZeroAdjoined,
        MonoidFamily::RightZeroAdjoined,
        MonoidFamily::FreeMonogenic,
    ];

    /// The five families built from insertion algorithms.
    pub const PLACTIC_LIKE: [MonoidFamily; 5] = [
        MonoidFamily::Stal,
        MonoidFamily::Taig,
        MonoidFamily::Sylv,
        MonoidFamily::SylvSharp,
        MonoidFamily::Baxt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MonoidFamily::Stal => "stal",
            MonoidFamily::Taig => "taig",
            MonoidFamily::Sylv => "sylv",
            MonoidFamily::SylvSharp => "sylvsharp",
            MonoidFamily::Baxt => "baxt",
            MonoidFamily::LeftZeroAdjoined => "l21",
            MonoidFamily::RightZeroAdjoined => "r21",
            MonoidFamily::FreeMonogenic => "free1",
        }
    }

    /// Largest letter the family accepts, if it has a fixed alphabet.
    pub fn max_letter(self) -> Option<u32> {
        match self {
            MonoidFamily::LeftZeroAdjoined | MonoidFamily::RightZeroAdjoined => Some(2),
            MonoidFamily::FreeMonogenic => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for MonoidFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MonoidFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        MonoidFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = MonoidFamily::ALL.iter().map(|f| f.name()).collect();
                format!("unknown monoid `{s}` (expected one of {})", names.join(", "))
            })
    }
}

impl Serialize for MonoidFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// An element of a [`FiniteMonoid`], as an index into its element list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub usize);

/// A monoid given by its full multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteMonoid {
    names: Vec<String>,
    unit: Element,
    table: Vec<Vec<Element>>,
}

impl FiniteMonoid {
    /// Checks closure, the unit laws and associativity over every triple.
    pub fn new(names: Vec<String>, unit: Element, table: Vec<Vec<Element>>) -> Result<Self> {
        let n = names.len();
        if unit.0 >= n {
            return Err(Error::InvalidTable("unit is not an element".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable(format!("table must be {n}×{n}")));
        }
        if table.iter().flatten().any(|e| e.0 >= n) {
            return Err(Error::InvalidTable("table is not closed".into()));
        }
        let m = FiniteMonoid { names, unit, table };
        for a in m.elements() {
            if m.mul(m.unit, a) != a || m.mul(a, m.unit) != a {
                return Err(Error::InvalidTable(format!("unit law fails at {}", m.name(a))));
            }
            for b in m.elements() {
                for c in m.elements() {
                    if m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c)) {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({}, {}, {})",
                            m.name(a),
                            m.name(b),
                            m.name(c)
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    /// `L₂¹ = {1, a, b}` with `a² = ab = a`, `b² = ba = b`.
    pub fn left_zero_adjoined() -> &'static FiniteMonoid {
        static CELL: OnceLock<FiniteMonoid> = OnceLock::new();
        CELL.get_or_init(|| {
            let e = Element;
            FiniteMonoid::new(
                vec!["1".into(), "a".into(), "b".into()],
                e(0),
                vec![
                    vec![e(0), e(1), e(2)],
                    vec![e(1), e(1), e(1)],
                    vec![e(2), e(2), e(2)],
                ],
            )
            .expect("L2^1 is a monoid")
        })
    }

    /// `R₂¹ = {1, a, b}` with `a² = ba = a`, `b² = ab = b`.
    pub fn right_zero_adjoined() -> &'static FiniteMonoid {
        static CELL: OnceLock<FiniteMonoid> = OnceLock::new();
        CELL.get_or_init(|| {
            let e = Element;
            FiniteMonoid::new(
                vec!["1".into(), "a".into(), "b".into()],
                e(0),
                vec![
                    vec![e(0), e(1), e(2)],
                    vec![e(1), e(1), e(2)],
                    vec![e(2), e(1), e(2)],
                ],
            )
            .expect("R2^1 is a monoid")
        })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn unit(&self) -> Element {
        self.unit
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.names.len()).map(Element)
    }

    pub fn name(&self, e: Element) -> &str {
        &self.names[e.0]
    }

    pub fn element(&self, name: &str) -> Option<Element> {
        self.names.iter().position(|n| n == name).map(Element)
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a.0][b.0]
    }

    pub fn product(&self, items: impl IntoIterator<Item = Element>) -> Element {
        items.into_iter().fold(self.unit, |acc, e| self.mul(acc, e))
    }
}

/// Evaluates `φ(w)` in `m` by folding the table left to right from the unit.
pub fn eval_in_finite(
    m: &FiniteMonoid,
    w: &VarWord,
    phi: &std::collections::BTreeMap<Var, Element>,
) -> Result<Element> {
    w.iter().try_fold(m.unit(), |acc, v| {
        let e = phi.get(v).ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
        Ok(m.mul(acc, *e))
    })
}

/// The combinatorial object representing the class of a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalObject {
    Stal(StalacticTableau),
    Taig(MultiplicityBst),
    Sylv(RightStrictBst),
    SylvSharp(LeftStrictBst),
    Baxt(BaxterObject),
    /// An element of `L₂¹` or `R₂¹`, with its display name.
    Finite { element: Element, name: String },
    /// The exponent `k` of `a^k` in the free monogenic monoid.
    Exponent(usize),
}

impl CanonicalObject {
    pub fn to_text(&self) -> String {
        match self {
            CanonicalObject::Stal(t) => t.to_text(),
            CanonicalObject::Taig(t) => t.to_text(),
            CanonicalObject::Sylv(t) => t.to_text(),
            CanonicalObject::SylvSharp(t) => t.to_text(),
            CanonicalObject::Baxt(b) => b.to_text(),
            CanonicalObject::Finite { name, .. } => format!("{name}\n"),
            CanonicalObject::Exponent(k) => format!("a^{k}\n"),
        }
    }

    /// Graphviz rendering. Tableaux are drawn as a row of column records.
    pub fn to_dot(&self) -> String {
        match self {
            CanonicalObject::Stal(t) => {
                let mut out = String::from("digraph stal {\n  node [shape=record];\n");
                for (i, c) in t.columns().iter().enumerate() {
                    let cells = vec![c.letter.to_string(); c.mult as usize].join("|");
                    out.push_str(&format!("  c{i} [label=\"{{{cells}}}\"];\n"));
                }
                out.push_str("}\n");
                out
            }
            CanonicalObject::Taig(t) => t.to_dot(),
            CanonicalObject::Sylv(t) => t.to_dot(),
            CanonicalObject::SylvSharp(t) => t.to_dot(),
            CanonicalObject::Baxt(b) => b.to_dot(),
            CanonicalObject::Finite { name, .. } => format!("digraph finite {{\n  e [label=\"{name}\"];\n}}\n"),
            CanonicalObject::Exponent(k) => format!("digraph free1 {{\n  e [label=\"a^{k}\"];\n}}\n"),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let value = match self {
            CanonicalObject::Stal(t) => serde_json::to_value(t),
            CanonicalObject::Taig(t) => serde_json::to_value(t),
            CanonicalObject::Sylv(t) => serde_json::to_value(t),
            CanonicalObject::SylvSharp(t) => serde_json::to_value(t),
            CanonicalObject::Baxt(b) => serde_json::to_value(b),
            CanonicalObject::Finite { name, .. } => Ok(serde_json::Value::String(name.clone())),
            CanonicalObject::Exponent(k) => Ok(serde_json::json!({ "exponent": k })),
        };
        value.expect("canonical objects serialize to JSON")
    }

    /// `(letter, count)` pairs carried by the object, sorted by letter. For
    /// the plactic-like families this is the evaluation of any reading word.
    pub fn letter_counts(&self) -> Option<Vec<(Letter, usize)>> {
        use std::collections::BTreeMap;
        let mut counts: BTreeMap<Letter, usize> = BTreeMap::new();
        match self {
            CanonicalObject::Stal(t) => {
                for c in t.columns() {
                    *counts.entry(c.letter).or_default() += c.mult as usize;
                }
            }
            CanonicalObject::Taig(t) => {
                for n in t.nodes() {
                    *counts.entry(n.label).or_default() += n.mult as usize;
                }
            }
            CanonicalObject::Sylv(t) => t.labels().for_each(|l| *counts.entry(*l).or_default() += 1),
            CanonicalObject::SylvSharp(t) => t.labels().for_each(|l| *counts.entry(*l).or_default() += 1),
            CanonicalObject::Baxt(b) => {
                let plain: BTreeMap<Letter, usize> = b.plain.labels().fold(BTreeMap::new(), |mut m, l| {
                    *m.entry(*l).or_default() += 1;
                    m
                });
                b.sharp.labels().for_each(|l| *counts.entry(*l).or_default() += 1);
                if plain != counts {
                    return None;
                }
            }
            CanonicalObject::Finite { .. } | CanonicalObject::Exponent(_) => return None,
        }
        Some(counts.into_iter().collect())
    }
}

fn check_letters(f: MonoidFamily, w: &LetterWord, max: u32) -> Result<()> {
    match w.iter().find(|l| l.value() > max) {
        Some(l) => Err(Error::RankViolation { family: f, letter: l.value(), max }),
        None => Ok(()),
    }
}

fn finite_object(m: &FiniteMonoid, w: &LetterWord) -> CanonicalObject {
    // Letter 1 is a, letter 2 is b.
    let element = m.product(w.iter().map(|l| Element(l.value() as usize)));
    CanonicalObject::Finite { element, name: m.name(element).to_string() }
}

/// `P_M(w)` for the chosen family.
pub fn canonical(f: MonoidFamily, w: &LetterWord) -> Result<CanonicalObject> {
    if let Some(max) = f.max_letter() {
        check_letters(f, w, max)?;
    }
    Ok(match f {
        MonoidFamily::Stal => CanonicalObject::Stal(StalacticTableau::from_word(w)),
        MonoidFamily::Taig => CanonicalObject::Taig(MultiplicityBst::from_word(w)),
        MonoidFamily::Sylv => CanonicalObject::Sylv(RightStrictBst::from_word(w)),
        MonoidFamily::SylvSharp => CanonicalObject::SylvSharp(LeftStrictBst::from_word(w)),
        MonoidFamily::Baxt => CanonicalObject::Baxt(BaxterObject::from_word(w)),
        MonoidFamily::LeftZeroAdjoined => finite_object(FiniteMonoid::left_zero_adjoined(), w),
        MonoidFamily::RightZeroAdjoined => finite_object(FiniteMonoid::right_zero_adjoined(), w),
        MonoidFamily::FreeMonogenic => CanonicalObject::Exponent(w.len()),
    })
}

/// Like [`canonical`], additionally rejecting letters above the declared rank.
pub fn canonical_at_rank(f: MonoidFamily, rank: u32, w: &LetterWord) -> Result<CanonicalObject> {
    if rank == 0 {
        return Err(Error::ZeroRank);
    }
    check_letters(f, w, rank)?;
    canonical(f, w)
}

/// `u ≡ v` in the family.
pub fn equivalent(f: MonoidFamily, u: &LetterWord, v: &LetterWord) -> Result<bool> {
    Ok(canonical(f, u)? == canonical(f, v)?)
}

/// A monoid element remembering one word that represents it, so that
/// products can be formed by concatenating reading words.
#[derive(Clone, Debug)]
pub struct MonoidElement {
    family: MonoidFamily,
    reading: LetterWord,
    object: CanonicalObject,
}

impl MonoidElement {
    pub fn new(family: MonoidFamily, reading: LetterWord) -> Result<Self> {
        let object = canonical(family, &reading)?;
        Ok(MonoidElement { family, reading, object })
    }

    pub fn identity(family: MonoidFamily) -> Self {
        MonoidElement::new(family, LetterWord::empty()).expect("the empty word is in every family")
    }

    pub fn family(&self) -> MonoidFamily {
        self.family
    }

    pub fn reading(&self) -> &LetterWord {
        &self.reading
    }

    pub fn object(&self) -> &CanonicalObject {
        &self.object
    }

    /// # Panics
    ///
    /// If the two elements belong to different families.
    pub fn mul(&self, other: &MonoidElement) -> MonoidElement {
        assert_eq!(self.family, other.family, "cannot multiply elements of different monoids");
        MonoidElement::new(self.family, self.reading.concat(&other.reading))
            .expect("a product of valid words is valid")
    }
}

impl PartialEq for MonoidElement {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.object == other.object
    }
}

impl Eq for MonoidElement {}
