//! Brute-force substitution oracle: evaluate both sides of an identity under
//! bounded substitutions and compare the canonical objects.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::monoids::{canonical, CanonicalObject, MonoidFamily};
use crate::words::{Identity, Letter, LetterWord, Var, VarWord};

/// Images of variables; an empty image stands for the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Substitution(pub BTreeMap<Var, LetterWord>);

impl Substitution {
    pub fn get(&self, v: &Var) -> Option<&LetterWord> {
        self.0.get(v)
    }

    pub fn apply(&self, w: &VarWord) -> Result<LetterWord> {
        let mut out = Vec::new();
        for v in w {
            let img = self.0.get(v).ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
            out.extend_from_slice(img.symbols());
        }
        Ok(LetterWord::new(out))
    }

    /// Length of the longest image.
    pub fn max_image_len(&self) -> usize {
        self.0.values().map(LetterWord::len).max().unwrap_or(0)
    }
}

impl FromIterator<(Var, LetterWord)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Var, LetterWord)>>(iter: I) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, img)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if img.is_empty() {
                write!(f, "{v} ↦ ε")?;
            } else {
                write!(f, "{v} ↦ {img}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Substitution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (v, img) in &self.0 {
            map.serialize_entry(v.name(), &img.to_string())?;
        }
        map.end()
    }
}

/// A substitution under which the two sides have different canonical objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterExample {
    pub sub: Substitution,
    pub lhs_word: LetterWord,
    pub rhs_word: LetterWord,
    pub lhs_object: CanonicalObject,
    pub rhs_object: CanonicalObject,
}

impl CounterExample {
    /// `None` if `sub` does not separate the two sides (or is not defined on
    /// every variable, or produces letters outside the family's alphabet).
    pub fn new(f: MonoidFamily, id: &Identity, sub: Substitution) -> Option<CounterExample> {
        let lhs_word = sub.apply(&id.lhs).ok()?;
        let rhs_word = sub.apply(&id.rhs).ok()?;
        let lhs_object = canonical(f, &lhs_word).ok()?;
        let rhs_object = canonical(f, &rhs_word).ok()?;
        (lhs_object != rhs_object).then_some(CounterExample { sub, lhs_word, rhs_word, lhs_object, rhs_object })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    HoldsWithinBound,
    CounterExample(Box<CounterExample>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::HoldsWithinBound)
    }

    pub fn counterexample(&self) -> Option<&CounterExample> {
        match self {
            Verdict::HoldsWithinBound => None,
            Verdict::CounterExample(c) => Some(c),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::HoldsWithinBound => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("verdict", "holds")?;
                map.end()
            }
            Verdict::CounterExample(c) => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("verdict", "counterexample")?;
                map.serialize_entry("sub", &c.sub)?;
                map.end()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    /// Every substitution with images of length `0..=max_len`.
    Exhaustive { max_len: usize },
    /// `trials` substitutions drawn from a seeded generator.
    Random { trials: u64, max_len: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub mode: OracleMode,
    /// Worker threads for the search; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl OracleConfig {
    pub fn exhaustive(max_len: usize) -> Self {
        OracleConfig { mode: OracleMode::Exhaustive { max_len }, threads: None }
    }

    pub fn random(trials: u64, max_len: usize, seed: u64) -> Self {
        OracleConfig { mode: OracleMode::Random { trials, max_len, seed }, threads: None }
    }
}

pub const DEFAULT_ESCALATION_CAP: usize = 6;

/// Below this many candidates the search stays on the calling thread.
const PARALLEL_THRESHOLD: u64 = 2048;

/// All words of length `0..=max_len` over `1..=r`, in shortlex order.
fn shortlex_words(r: u32, max_len: usize) -> Vec<LetterWord> {
    let letters: Vec<Letter> = (1..=r).map(|a| Letter::new(a).expect("positive")).collect();
    let mut out = vec![LetterWord::empty()];
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |&a| {
                    let mut next = w.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
        out.extend(layer.iter().cloned().map(LetterWord::new));
    }
    out
}

/// Lowest index in `0..space` for which `probe` yields a counterexample.
fn first_hit<F>(space: u64, threads: Option<usize>, probe: F) -> Option<CounterExample>
where
    F: Fn(u64) -> Option<CounterExample> + Sync + Send,
{
    if space < PARALLEL_THRESHOLD {
        return (0..space).find_map(probe);
    }
    let search = || (0..space).into_par_iter().find_map_first(&probe);
    match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(search),
            Err(_) => search(),
        },
        None => search(),
    }
}

/// Bounded brute-force check of `id` in the family at the given rank.
///
/// The alphabet is `1..=rank`, clamped to the family's own alphabet for the
/// small monoids. Exhaustive mode orders substitutions with the
/// alphabetically first variable most significant and images in shortlex
/// order, and reports the first counterexample in that order. Random mode
/// reports the counterexample from the lowest-numbered failing trial.
pub fn oracle(f: MonoidFamily, rank: u32, id: &Identity, cfg: &OracleConfig) -> Result<Verdict> {
    if rank == 0 {
        return Err(Error::ZeroRank);
    }
    let r = f.max_letter().map_or(rank, |m| m.min(rank));
    let vars: Vec<Var> = id.variables().into_iter().collect();
    let hit = match cfg.mode {
        OracleMode::Exhaustive { max_len } => {
            let images = shortlex_words(r, max_len);
            let n = images.len() as u128;
            let space = (0..vars.len()).try_fold(1u128, |acc, _| acc.checked_mul(n)).unwrap_or(u128::MAX);
            let space = u64::try_from(space).map_err(|_| Error::SpaceTooLarge(space))?;
            first_hit(space, cfg.threads, |mut index| {
                let mut sub = BTreeMap::new();
                for v in vars.iter().rev() {
                    sub.insert(v.clone(), images[(index % n as u64) as usize].clone());
                    index /= n as u64;
                }
                CounterExample::new(f, id, Substitution(sub))
            })
        }
        OracleMode::Random { trials, max_len, seed } => first_hit(trials, cfg.threads, |trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let sub = vars
                .iter()
                .map(|v| {
                    let len = rng.gen_range(0..=max_len);
                    let img = (0..len).map(|_| Letter::new(rng.gen_range(1..=r)).expect("positive")).collect();
                    (v.clone(), LetterWord::new(img))
                })
                .collect();
            CounterExample::new(f, id, sub)
        }),
    };
    Ok(hit.map_or(Verdict::HoldsWithinBound, |c| Verdict::CounterExample(Box::new(c))))
}

/// Least rank-2 counterexample, trying image lengths `1, 2, …` up to
/// [`DEFAULT_ESCALATION_CAP`].
pub fn find_counterexample(f: MonoidFamily, id: &Identity) -> Result<CounterExample> {
    find_counterexample_with_cap(f, id, DEFAULT_ESCALATION_CAP)
}

pub fn find_counterexample_with_cap(f: MonoidFamily, id: &Identity, cap: usize) -> Result<CounterExample> {
    for max_len in 1..=cap {
        if let Verdict::CounterExample(c) = oracle(f, 2, id, &OracleConfig::exhaustive(max_len))? {
            return Ok(*c);
        }
    }
    Err(Error::DecisionMismatch { family: f, identity: id.to_string(), cap })
}
