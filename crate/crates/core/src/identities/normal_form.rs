use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::monoids::MonoidFamily;
use crate::words::{Direction, Skeleton, Symbol, Word};

/// The representative of `w`'s class under the family's identity basis.
///
/// * `stal`/`taig`: `x₁^e₁ ⋯ x_m^e_m` with `fp(w) = x₁⋯x_m`.
/// * `sylv`: `u₁x₁^e₁ ⋯ u_m x_m^e_m`, where `x_i^e_i` collects every occurrence
///   of `x_i` after the last `x_{i-1}` and the block `u_i` holds the remaining
///   letters between the two last occurrences, ordered by their position in
///   `fp(w)`.
/// * `sylvsharp`: the mirror image of `sylv`.
/// * `baxt`: `mix(w)` with the letters between consecutive skeleton entries
///   grouped and ordered by their position in `ip(w)`.
///
/// Two words have the same normal form exactly when the family satisfies the
/// identity between them.
pub fn normal_form<S: Symbol>(f: MonoidFamily, w: &Word<S>) -> Result<Word<S>> {
    match f {
        MonoidFamily::Stal | MonoidFamily::Taig => Ok(stalactic(w)),
        MonoidFamily::Sylv => Ok(sylvester(w)),
        MonoidFamily::SylvSharp => Ok(sylvester(&w.reversed()).reversed()),
        MonoidFamily::Baxt => Ok(baxter(w)),
        _ => Err(Error::NoNormalForm(f)),
    }
}

fn power<S: Clone>(out: &mut Vec<S>, x: &S, e: usize) {
    out.extend(std::iter::repeat_n(x.clone(), e));
}

fn stalactic<S: Symbol>(w: &Word<S>) -> Word<S> {
    let mut out = Vec::with_capacity(w.len());
    for x in w.fp().iter() {
        power(&mut out, x, w.occ(x));
    }
    Word::new(out)
}

fn sylvester<S: Symbol>(w: &Word<S>) -> Word<S> {
    let fp = w.fp();
    let xs = fp.symbols();
    let after = |anchor: &S, x: &S| {
        w.directional_occ(Direction::After, anchor, x)
            .expect("anchors are taken from fp(w)")
    };
    let mut out = Vec::with_capacity(w.len());
    for (i, xi) in xs.iter().enumerate() {
        for xj in &xs[i + 1..] {
            let g = match i {
                0 => w.occ(xj) - after(xi, xj),
                _ => after(&xs[i - 1], xj) - after(xi, xj),
            };
            power(&mut out, xj, g);
        }
        let e = match i {
            0 => w.occ(xi),
            _ => after(&xs[i - 1], xi),
        };
        power(&mut out, xi, e);
    }
    Word::new(out)
}

fn baxter<S: Symbol>(w: &Word<S>) -> Word<S> {
    let ip_index: BTreeMap<S, usize> = w.ip().into_symbols().into_iter().enumerate().map(|(i, s)| (s, i)).collect();
    let keep = w.skeleton_positions(Skeleton::Mix);
    let mut symbols = w.symbols().to_vec();
    for pair in keep.windows(2) {
        symbols[pair[0] + 1..pair[1]].sort_by_key(|s| ip_index[s]);
    }
    Word::new(symbols)
}
