//! Derivations: sequences of words in which each step replaces an instance
//! `φ(p)` of one side of an identity `p ≈ q` by `φ(q)` inside a context.
//!
//! Endomorphisms map every variable to a *nonempty* word. Monoid bases are
//! therefore used through their deletion closure ([`deletion_closure`]): the
//! basis together with every identity obtained from it by erasing some
//! variables, which is what substituting the unit for those variables does.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{basis, normal_form};
use crate::error::{Error, Result};
use crate::monoids::MonoidFamily;
use crate::words::{Identity, Var, VarWord, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleDirection {
    LeftToRight,
    RightToLeft,
}

impl RuleDirection {
    fn flipped(self) -> Self {
        match self {
            RuleDirection::LeftToRight => RuleDirection::RightToLeft,
            RuleDirection::RightToLeft => RuleDirection::LeftToRight,
        }
    }
}

/// One elementary step `prefix·φ(from)·suffix → prefix·φ(to)·suffix`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationStep {
    pub before: VarWord,
    pub after: VarWord,
    pub rule_index: usize,
    pub direction: RuleDirection,
    pub prefix: VarWord,
    pub suffix: VarWord,
    pub endo: BTreeMap<Var, VarWord>,
}

impl DerivationStep {
    /// The same rewrite read backwards.
    pub fn reversed(&self) -> DerivationStep {
        DerivationStep {
            before: self.after.clone(),
            after: self.before.clone(),
            direction: self.direction.flipped(),
            ..self.clone()
        }
    }
}

fn sides(rule: &Identity, direction: RuleDirection) -> (&VarWord, &VarWord) {
    match direction {
        RuleDirection::LeftToRight => (&rule.lhs, &rule.rhs),
        RuleDirection::RightToLeft => (&rule.rhs, &rule.lhs),
    }
}

/// `φ(w)`, or `None` if some variable of `w` has no image.
pub fn apply_endo(endo: &BTreeMap<Var, VarWord>, w: &VarWord) -> Option<VarWord> {
    let mut out = Vec::new();
    for v in w {
        out.extend_from_slice(endo.get(v)?.symbols());
    }
    Some(Word::new(out))
}

fn framed(prefix: &VarWord, middle: &VarWord, suffix: &VarWord) -> VarWord {
    prefix.concat(middle).concat(suffix)
}

/// Checks every step by recomputation and that consecutive steps chain.
pub fn verify_derivation(system: &[Identity], steps: &[DerivationStep]) -> bool {
    let step_ok = |s: &DerivationStep| {
        let Some(rule) = system.get(s.rule_index) else {
            return false;
        };
        if s.endo.values().any(|img| img.is_empty()) {
            return false;
        }
        let (from, to) = sides(rule, s.direction);
        match (apply_endo(&s.endo, from), apply_endo(&s.endo, to)) {
            (Some(f), Some(t)) => {
                framed(&s.prefix, &f, &s.suffix) == s.before && framed(&s.prefix, &t, &s.suffix) == s.after
            }
            _ => false,
        }
    };
    steps.iter().all(step_ok) && steps.windows(2).all(|w| w[0].after == w[1].before)
}

/// The basis plus every nontrivial identity obtained by erasing variables
/// from one of its members. The basis itself comes first, in order.
pub fn deletion_closure(basis: &[Identity]) -> Vec<Identity> {
    let mut out: Vec<Identity> = basis.to_vec();
    for id in basis {
        let vars: Vec<Var> = id.variables().into_iter().collect();
        for mask in 1u64..(1 << vars.len()) {
            let keep = vars
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) == 0)
                .map(|(_, v)| v.clone())
                .collect();
            let reduced = Identity::with_empty_sides(id.lhs.restrict(&keep), id.rhs.restrict(&keep));
            if !reduced.is_trivial() && !out.contains(&reduced) {
                out.push(reduced);
            }
        }
    }
    out
}

/// Whether `rule` is a member of `basis` with some variables erased.
pub fn is_deletion_instance(rule: &Identity, basis: &[Identity]) -> bool {
    let keep = rule.variables();
    basis.iter().any(|b| {
        keep.is_subset(&b.variables()) && b.lhs.restrict(&keep) == rule.lhs && b.rhs.restrict(&keep) == rule.rhs
    })
}

/// The identity system that [`normalize_derivation`] draws its rules from.
pub fn derivation_system(f: MonoidFamily) -> Result<Vec<Identity>> {
    Ok(deletion_closure(&basis(f)?))
}

type Env = BTreeMap<Var, VarWord>;

/// Backtracking match of `pattern` against `word` starting at `pos`. Unbound
/// variables take every nonempty factor in turn; `accept` receives the end
/// position and bindings and returns `true` to stop the search.
fn match_at(
    pattern: &[Var],
    word: &[Var],
    pos: usize,
    env: &mut Env,
    accept: &mut dyn FnMut(usize, &Env) -> bool,
) -> bool {
    let Some((v, rest)) = pattern.split_first() else {
        return accept(pos, env);
    };
    if let Some(img) = env.get(v) {
        let end = pos + img.len();
        return end <= word.len() && word[pos..end] == *img.symbols() && match_at(rest, word, end, env, accept);
    }
    let longest = word.len().saturating_sub(pos + rest.len());
    for len in 1..=longest {
        env.insert(v.clone(), Word::new(word[pos..pos + len].to_vec()));
        if match_at(rest, word, pos + len, env, accept) {
            env.remove(v);
            return true;
        }
    }
    env.remove(v);
    false
}

/// Every way some rule rewrites `word` in one step, in a fixed order: rule
/// index, direction, start position, then endomorphism.
fn neighbors(system: &[Identity], word: &VarWord, max_len: usize) -> Vec<DerivationStep> {
    let mut out = Vec::new();
    for (rule_index, rule) in system.iter().enumerate() {
        if rule.lhs.is_empty() || rule.rhs.is_empty() {
            continue;
        }
        for direction in [RuleDirection::LeftToRight, RuleDirection::RightToLeft] {
            let (from, to) = sides(rule, direction);
            let mut found: Vec<(usize, usize, Env)> = Vec::new();
            for start in 0..word.len() {
                let mut env = Env::new();
                match_at(from.symbols(), word.symbols(), start, &mut env, &mut |end, env| {
                    found.push((start, end, env.clone()));
                    false
                });
            }
            found.sort();
            for (start, end, endo) in found {
                let image = apply_endo(&endo, to).expect("both sides share their variables");
                if word.len() - (end - start) + image.len() > max_len {
                    continue;
                }
                let prefix = word.factor(0..start);
                let suffix = word.factor(end..word.len());
                out.push(DerivationStep {
                    before: word.clone(),
                    after: framed(&prefix, &image, &suffix),
                    rule_index,
                    direction,
                    prefix,
                    suffix,
                    endo,
                });
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Longest derivation returned.
    pub max_steps: usize,
    /// Words longer than this are never visited.
    pub max_word_len: usize,
}

/// Bidirectional breadth-first search for a derivation of `v` from `u`.
/// Returns `None` if no derivation exists within the bounds.
pub fn derive_search(
    system: &[Identity],
    u: &VarWord,
    v: &VarWord,
    bounds: SearchBounds,
) -> Option<Vec<DerivationStep>> {
    if u == v {
        return Some(Vec::new());
    }
    // Forward map: word -> step that reached it from u's side.
    // Backward map: word -> step leading from it towards v.
    let mut fwd: HashMap<VarWord, Option<DerivationStep>> = HashMap::from([(u.clone(), None)]);
    let mut bwd: HashMap<VarWord, Option<DerivationStep>> = HashMap::from([(v.clone(), None)]);
    let mut fwd_frontier = vec![u.clone()];
    let mut bwd_frontier = vec![v.clone()];
    let mut depth = 0;

    while depth < bounds.max_steps && !fwd_frontier.is_empty() && !bwd_frontier.is_empty() {
        let forward = fwd_frontier.len() <= bwd_frontier.len();
        let (frontier, mine, other) = if forward {
            (&mut fwd_frontier, &mut fwd, &bwd)
        } else {
            (&mut bwd_frontier, &mut bwd, &fwd)
        };
        let mut next = Vec::new();
        let mut meeting = None;
        'layer: for w in frontier.iter() {
            for step in neighbors(system, w, bounds.max_word_len) {
                if mine.contains_key(&step.after) {
                    continue;
                }
                let reached = step.after.clone();
                let record = if forward { step } else { step.reversed() };
                mine.insert(reached.clone(), Some(record));
                if other.contains_key(&reached) {
                    meeting = Some(reached);
                    break 'layer;
                }
                next.push(reached);
            }
        }
        depth += 1;
        if let Some(meet) = meeting {
            let mut path = Vec::new();
            let mut at = meet.clone();
            while let Some(Some(step)) = fwd.get(&at) {
                at = step.before.clone();
                path.push(step.clone());
            }
            path.reverse();
            let mut at = meet;
            while let Some(Some(step)) = bwd.get(&at) {
                at = step.after.clone();
                path.push(step.clone());
            }
            debug_assert!(verify_derivation(system, &path));
            return Some(path);
        }
        *frontier = next;
    }
    None
}

/// Finds a rule instance rewriting exactly `word[start..end]` into
/// `replacement`.
fn justify_window(
    system: &[Identity],
    word: &VarWord,
    start: usize,
    end: usize,
    replacement: &VarWord,
) -> Option<DerivationStep> {
    for (rule_index, rule) in system.iter().enumerate() {
        for direction in [RuleDirection::LeftToRight, RuleDirection::RightToLeft] {
            let (from, to) = sides(rule, direction);
            let mut hit = None;
            let mut env = Env::new();
            match_at(from.symbols(), word.symbols(), start, &mut env, &mut |e, env| {
                if e == end && apply_endo(env, to).as_ref() == Some(replacement) {
                    hit = Some(env.clone());
                    true
                } else {
                    false
                }
            });
            if let Some(endo) = hit {
                let prefix = word.factor(0..start);
                let suffix = word.factor(end..word.len());
                return Some(DerivationStep {
                    before: word.clone(),
                    after: framed(&prefix, replacement, &suffix),
                    rule_index,
                    direction,
                    prefix,
                    suffix,
                    endo,
                });
            }
        }
    }
    None
}

/// Index `k` such that `to` is `from` with positions `k` and `k + 1`
/// exchanged (and the two differ).
fn transposition_point(from: &VarWord, to: &VarWord) -> Option<usize> {
    if from.len() != to.len() {
        return None;
    }
    let (a, b) = (from.symbols(), to.symbols());
    let k = (0..a.len()).find(|&i| a[i] != b[i])?;
    let swapped = k + 1 < a.len() && a[k] == b[k + 1] && a[k + 1] == b[k];
    (swapped && a[k + 2..] == b[k + 2..]).then_some(k)
}

/// A step exchanging the letters at positions `i` and `i + 1`. The rule's
/// transposed pair is anchored on those two positions and the rest of the
/// rule is matched around them.
fn swap_step(system: &[Identity], word: &VarWord, i: usize) -> Option<DerivationStep> {
    let w = word.symbols();
    for (rule_index, rule) in system.iter().enumerate() {
        for direction in [RuleDirection::LeftToRight, RuleDirection::RightToLeft] {
            let (from, _) = sides(rule, direction);
            let Some(k) = transposition_point(from, sides(rule, direction).1) else {
                continue;
            };
            let pat = from.symbols();
            let (p, q) = (&pat[k], &pat[k + 1]);
            if p == q {
                continue;
            }
            let mut env: Env = [
                (p.clone(), Word::new(vec![w[i].clone()])),
                (q.clone(), Word::new(vec![w[i + 1].clone()])),
            ]
            .into();
            let (head, tail) = (&pat[..k], &pat[k + 2..]);
            let mut hit = None;
            for start in (0..=i).rev() {
                let matched = match_at(head, w, start, &mut env, &mut |end, env| {
                    if end != i {
                        return false;
                    }
                    let mut env = env.clone();
                    match_at(tail, w, i + 2, &mut env, &mut |stop, env| {
                        hit = Some((start, stop, env.clone()));
                        true
                    })
                });
                if matched {
                    break;
                }
            }
            if let Some((start, stop, endo)) = hit {
                let mut after = w.to_vec();
                after.swap(i, i + 1);
                return Some(DerivationStep {
                    before: word.clone(),
                    after: Word::new(after),
                    rule_index,
                    direction,
                    prefix: word.factor(0..start),
                    suffix: word.factor(stop..w.len()),
                    endo,
                });
            }
        }
    }
    None
}

fn no_rule(word: &VarWord, position: usize) -> Error {
    Error::NoJustifyingRule { word: word.to_string(), position }
}

/// Sorts each factor strictly between consecutive `fixed` positions by
/// `key`, recording one step per adjacent exchange.
fn sort_segments(
    system: &[Identity],
    word: &mut VarWord,
    steps: &mut Vec<DerivationStep>,
    segments: Vec<(std::ops::Range<usize>, BTreeMap<Var, usize>)>,
) -> Result<()> {
    for (range, key) in segments {
        for i in range.clone() {
            let mut j = i;
            while j > range.start && key[&word.symbols()[j - 1]] > key[&word.symbols()[j]] {
                let step = swap_step(system, word, j - 1).ok_or_else(|| no_rule(word, j - 1))?;
                *word = step.after.clone();
                steps.push(step);
                j -= 1;
            }
        }
    }
    Ok(())
}

/// A derivation from `w` to `normal_form(f, w)` using only the deletion
/// closure of `f`'s basis ([`derivation_system`]). Empty when `w` is already
/// in normal form.
pub fn normalize_derivation(f: MonoidFamily, w: &VarWord) -> Result<Vec<DerivationStep>> {
    let system = derivation_system(f)?;
    let mut word = w.clone();
    let mut steps = Vec::new();
    match f {
        MonoidFamily::Stal | MonoidFamily::Taig => {
            // Gather a non-last x onto the next x: x·u·x → u·x·x.
            loop {
                let s = word.symbols();
                let next_same = |i: usize| (i + 1..s.len()).find(|&j| s[j] == s[i]);
                let Some((i, j)) = (0..s.len().saturating_sub(1))
                    .filter(|&i| s[i + 1] != s[i])
                    .find_map(|i| next_same(i).map(|j| (i, j)))
                else {
                    break;
                };
                let mut replacement = s[i + 1..j].to_vec();
                replacement.extend([s[i].clone(), s[i].clone()]);
                let step = justify_window(&system, &word, i, j + 1, &Word::new(replacement))
                    .ok_or_else(|| no_rule(&word, i))?;
                word = step.after.clone();
                steps.push(step);
            }
        }
        MonoidFamily::Sylv => {
            let fp = w.fp().into_symbols();
            let last: Vec<usize> = fp.iter().map(|x| w.last_occurrence(x).expect("x in fp")).collect();
            let rank: BTreeMap<Var, usize> = fp.iter().cloned().zip(0..).collect();
            let segments = (0..fp.len())
                .map(|k| {
                    let start = if k == 0 { 0 } else { last[k - 1] + 1 };
                    let mut key = rank.clone();
                    key.insert(fp[k].clone(), fp.len());
                    (start..last[k], key)
                })
                .collect();
            sort_segments(&system, &mut word, &mut steps, segments)?;
        }
        MonoidFamily::SylvSharp => {
            let ip = w.ip().into_symbols();
            let first: Vec<usize> = ip.iter().map(|x| w.first_occurrence(x).expect("x in ip")).collect();
            let rank: BTreeMap<Var, usize> = ip.iter().cloned().zip(1..).collect();
            let segments = (0..ip.len())
                .map(|k| {
                    let end = first.get(k + 1).copied().unwrap_or(w.len());
                    let mut key = rank.clone();
                    key.insert(ip[k].clone(), 0);
                    (first[k] + 1..end, key)
                })
                .collect();
            sort_segments(&system, &mut word, &mut steps, segments)?;
        }
        MonoidFamily::Baxt => {
            let rank: BTreeMap<Var, usize> = w.ip().into_symbols().into_iter().zip(0..).collect();
            let keep = w.skeleton_positions(crate::words::Skeleton::Mix);
            let segments = keep.windows(2).map(|p| (p[0] + 1..p[1], rank.clone())).collect();
            sort_segments(&system, &mut word, &mut steps, segments)?;
        }
        _ => return Err(Error::NoNormalForm(f)),
    }
    debug_assert_eq!(word, normal_form(f, w)?);
    Ok(steps)
}

/// A derivation `u → v` built by normalizing both sides and joining the two
/// halves; `None` when the normal forms differ.
pub fn certificate(f: MonoidFamily, u: &VarWord, v: &VarWord) -> Result<Option<Vec<DerivationStep>>> {
    if normal_form(f, u)? != normal_form(f, v)? {
        return Ok(None);
    }
    let mut steps = normalize_derivation(f, u)?;
    steps.extend(normalize_derivation(f, v)?.into_iter().rev().map(|s| s.reversed()));
    Ok(Some(steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vw(s: &str) -> VarWord {
        s.parse().unwrap()
    }

    fn id(s: &str) -> Identity {
        s.parse().unwrap()
    }

    fn var(s: &str) -> Var {
        Var::new(s).unwrap()
    }

    #[test]
    fn single_gathering_step() {
        let steps = normalize_derivation(MonoidFamily::Stal, &vw("xyx")).unwrap();
        assert_eq!(steps.len(), 1);
        let s = &steps[0];
        assert_eq!((s.rule_index, s.direction), (0, RuleDirection::LeftToRight));
        assert_eq!(s.endo, [(var("x"), vw("x")), (var("y"), vw("y"))].into());
        assert!(s.prefix.is_empty() && s.suffix.is_empty());
        assert_eq!(s.after, vw("yxx"));
    }

    #[test]
    fn gathering_several_occurrences() {
        let w = vw("xyxzx");
        let steps = normalize_derivation(MonoidFamily::Stal, &w).unwrap();
        assert_eq!(steps.last().unwrap().after, vw("yzxxx"));
        assert_eq!(steps[0].before, w);
        assert!(verify_derivation(&derivation_system(MonoidFamily::Stal).unwrap(), &steps));
    }

    #[test]
    fn normal_words_need_no_steps() {
        assert!(normalize_derivation(MonoidFamily::Sylv, &vw("xysxty")).unwrap().is_empty());
        assert!(normalize_derivation(MonoidFamily::Baxt, &vw("ysxtyxhxky")).unwrap().is_empty());
    }

    #[test]
    fn swaps_use_deleted_gaps_when_needed() {
        // xyxy → yxxy needs the sylvester rule with s and t erased.
        let system = derivation_system(MonoidFamily::Sylv).unwrap();
        let steps = normalize_derivation(MonoidFamily::Sylv, &vw("xyxy")).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(system[steps[0].rule_index], id("xyxy = yxxy"));
        assert!(verify_derivation(&system, &steps));
    }

    #[test]
    fn derivations_reach_the_normal_form() {
        for f in [MonoidFamily::Stal, MonoidFamily::Sylv, MonoidFamily::SylvSharp, MonoidFamily::Baxt] {
            let system = derivation_system(f).unwrap();
            for text in ["yxsxty", "xyzxzyyx", "abcabcab", "zyxxyzzyx", "ytxsxy", "ysxtxyhxky"] {
                let w = vw(text);
                let steps = normalize_derivation(f, &w).unwrap();
                let end = steps.last().map_or(w.clone(), |s| s.after.clone());
                assert_eq!(end, normal_form(f, &w).unwrap(), "{f} {text}");
                assert!(verify_derivation(&system, &steps), "{f} {text}");
            }
        }
    }

    #[test]
    fn closure_members_are_deletion_instances() {
        for f in [MonoidFamily::Stal, MonoidFamily::Sylv, MonoidFamily::SylvSharp, MonoidFamily::Baxt] {
            let b = basis(f).unwrap();
            let closure = deletion_closure(&b);
            assert_eq!(&closure[..b.len()], &b[..]);
            assert!(closure.iter().all(|r| is_deletion_instance(r, &b) && !r.is_trivial()));
        }
        assert_eq!(derivation_system(MonoidFamily::Stal).unwrap().len(), 1);
        assert_eq!(derivation_system(MonoidFamily::Sylv).unwrap().len(), 4);
        assert!(!is_deletion_instance(&id("xy = yx"), &basis(MonoidFamily::Sylv).unwrap()));
    }

    #[test]
    fn verification_rejects_tampering() {
        let system = vec![id("xyx = yxx")];
        let steps = normalize_derivation(MonoidFamily::Stal, &vw("xyxzx")).unwrap();
        assert!(verify_derivation(&system, &steps));

        let mut bad = steps.clone();
        bad[0].suffix = vw("q");
        assert!(!verify_derivation(&system, &bad));

        let mut bad = steps.clone();
        bad[0].rule_index = 7;
        assert!(!verify_derivation(&system, &bad));

        // Chaining: drop the middle step.
        let mut bad = steps.clone();
        bad.remove(1);
        assert!(!verify_derivation(&system, &bad));
    }

    #[test]
    fn verification_rejects_empty_images() {
        let system = vec![id("xysxty = yxsxty")];
        let step = DerivationStep {
            before: vw("xyxy"),
            after: vw("yxxy"),
            rule_index: 0,
            direction: RuleDirection::LeftToRight,
            prefix: vw(""),
            suffix: vw(""),
            endo: [
                (var("x"), vw("x")),
                (var("y"), vw("y")),
                (var("s"), vw("")),
                (var("t"), vw("")),
            ]
            .into(),
        };
        // The words reconstruct, but s and t are erased.
        assert!(!verify_derivation(&system, &[step]));
    }

    #[test]
    fn search_examples() {
        let stal = vec![id("xyx = yxx")];
        let d = derive_search(&stal, &vw("xyx"), &vw("yxx"), SearchBounds { max_steps: 4, max_word_len: 8 }).unwrap();
        assert_eq!(d.len(), 1);
        assert!(verify_derivation(&stal, &d));

        assert!(derive_search(&stal, &vw("xy"), &vw("yx"), SearchBounds { max_steps: 6, max_word_len: 8 }).is_none());

        let sylv = vec![id("xysxty = yxsxty")];
        let d = derive_search(&sylv, &vw("yxsxty"), &vw("xysxty"), SearchBounds { max_steps: 2, max_word_len: 10 })
            .unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].direction, RuleDirection::RightToLeft);
    }

    #[test]
    fn search_finds_multi_step_paths() {
        let stal = vec![id("xyx = yxx")];
        let (u, v) = (vw("xyxzx"), vw("yzxxx"));
        let d = derive_search(&stal, &u, &v, SearchBounds { max_steps: 6, max_word_len: 5 }).unwrap();
        assert!(verify_derivation(&stal, &d));
        assert_eq!(d.first().unwrap().before, u);
        assert_eq!(d.last().unwrap().after, v);
        assert!(derive_search(&stal, &u, &v, SearchBounds { max_steps: 1, max_word_len: 5 }).is_none());
        assert_eq!(derive_search(&stal, &u, &u, SearchBounds { max_steps: 0, max_word_len: 0 }), Some(vec![]));
    }

    #[test]
    fn certificates_join_two_normalizations() {
        let (u, v) = (vw("xyxy"), vw("yxxy"));
        let cert = certificate(MonoidFamily::Sylv, &u, &v).unwrap().unwrap();
        assert!(verify_derivation(&derivation_system(MonoidFamily::Sylv).unwrap(), &cert));
        assert_eq!(certificate(MonoidFamily::Sylv, &vw("xyx"), &vw("yxx")).unwrap(), None);
    }
}
