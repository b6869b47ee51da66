//! A deliberately naive reference implementation used as ground truth.
//!
//! Words are vectors of `Tok`; the defining relations are written out
//! literally and classes are closed by substring replacement. Nothing here
//! calls into the library except to convert to and from its token format.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::Rng;
use singbraid::{PositiveWord, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tok {
    // Declaration order is the letter order: σ before σ⁻¹ is irrelevant for
    // positive words, σ before x is the one that matters.
    S(u8),
    X(u8),
    Inv(u8),
}

pub type Toks = Vec<Tok>;

pub fn to_text(w: &[Tok]) -> String {
    w.iter()
        .map(|t| match t {
            Tok::S(i) => format!("s{i}"),
            Tok::Inv(i) => format!("s{i}-"),
            Tok::X(i) => format!("x{i}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn from_text(text: &str) -> Toks {
    text.split_whitespace()
        .map(|t| {
            if let Some(rest) = t.strip_prefix('x') {
                Tok::X(rest.parse().unwrap())
            } else if let Some(rest) = t.strip_suffix('-') {
                Tok::Inv(rest[1..].parse().unwrap())
            } else {
                Tok::S(t[1..].parse().unwrap())
            }
        })
        .collect()
}

pub fn word(w: &[Tok], n: usize) -> Word {
    Word::parse(&to_text(w), n).unwrap()
}

pub fn pos(w: &[Tok], n: usize) -> PositiveWord {
    PositiveWord::parse(&to_text(w), n).unwrap()
}

pub fn toks_of(w: &Word) -> Toks {
    from_text(&w.to_string())
}

/// Positive defining relations at `n`, each listed once as `(lhs, rhs)`.
pub fn relations(n: usize) -> Vec<(Toks, Toks)> {
    use Tok::{S, X};
    let g = (n - 1) as u8;
    let mut out = Vec::new();
    for i in 1..=g {
        for j in 1..=g {
            if i.abs_diff(j) >= 2 && i < j {
                out.push((vec![S(i), S(j)], vec![S(j), S(i)]));
                out.push((vec![X(i), X(j)], vec![X(j), X(i)]));
            }
            if i.abs_diff(j) != 1 {
                out.push((vec![X(i), S(j)], vec![S(j), X(i)]));
            }
        }
        if i < g {
            out.push((vec![S(i), S(i + 1), S(i)], vec![S(i + 1), S(i), S(i + 1)]));
            out.push((vec![S(i), S(i + 1), X(i)], vec![X(i + 1), S(i), S(i + 1)]));
            out.push((vec![S(i + 1), S(i), X(i + 1)], vec![X(i), S(i + 1), S(i)]));
        }
    }
    out
}

fn directed(n: usize) -> Vec<(Toks, Toks)> {
    relations(n).into_iter().flat_map(|(l, r)| [(l.clone(), r.clone()), (r, l)]).collect()
}

/// Every word obtained from `w` by one relation application.
pub fn moves(w: &[Tok], rules: &[(Toks, Toks)]) -> Vec<Toks> {
    let mut out = Vec::new();
    for (l, r) in rules {
        if l.len() > w.len() {
            continue;
        }
        for at in 0..=w.len() - l.len() {
            if &w[at..at + l.len()] == l.as_slice() {
                let mut v = w[..at].to_vec();
                v.extend_from_slice(r);
                v.extend_from_slice(&w[at + l.len()..]);
                out.push(v);
            }
        }
    }
    out
}

/// The full positive-equivalence class of a positive word, sorted.
pub fn class(w: &[Tok], n: usize) -> BTreeSet<Toks> {
    let rules = directed(n);
    let mut seen: HashSet<Toks> = HashSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(v) = queue.pop_front() {
        for m in moves(&v, &rules) {
            if seen.insert(m.clone()) {
                queue.push_back(m);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn least(w: &[Tok], n: usize) -> Toks {
    class(w, n).into_iter().next().unwrap()
}

/// All positive words of exactly `len` letters over σ and x.
pub fn positive_words(n: usize, len: usize) -> Vec<Toks> {
    let g = (n - 1) as u8;
    let alphabet: Vec<Tok> = (1..=g).map(Tok::S).chain((1..=g).map(Tok::X)).collect();
    let mut out: Vec<Toks> = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                alphabet.iter().map(move |&t| {
                    let mut q = p.clone();
                    q.push(t);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn random_positive<R: Rng>(rng: &mut R, n: usize, len: usize) -> Toks {
    let g = (n - 1) as u8;
    (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=g);
            if rng.gen_bool(0.5) {
                Tok::S(i)
            } else {
                Tok::X(i)
            }
        })
        .collect()
}

pub fn random_braid<R: Rng>(rng: &mut R, n: usize, len: usize) -> Toks {
    let g = (n - 1) as u8;
    (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=g);
            if rng.gen_bool(0.5) {
                Tok::S(i)
            } else {
                Tok::Inv(i)
            }
        })
        .collect()
}

pub fn random_mixed<R: Rng>(rng: &mut R, n: usize, len: usize) -> Toks {
    let g = (n - 1) as u8;
    (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=g);
            match rng.gen_range(0..3) {
                0 => Tok::S(i),
                1 => Tok::Inv(i),
                _ => Tok::X(i),
            }
        })
        .collect()
}

/// A different spelling of the same element: random relation moves, insertion
/// of cancelling pairs and deletion of adjacent cancelling pairs.
pub fn respell<R: Rng>(rng: &mut R, w: &[Tok], n: usize, steps: usize) -> Toks {
    let rules = directed(n);
    let g = (n - 1) as u8;
    let mut cur = w.to_vec();
    for _ in 0..steps {
        match rng.gen_range(0..4) {
            0 | 1 => {
                let options = moves(&cur, &rules);
                if !options.is_empty() {
                    cur = options[rng.gen_range(0..options.len())].clone();
                }
            }
            2 => {
                let at = rng.gen_range(0..=cur.len());
                let i = rng.gen_range(1..=g);
                let pair = if rng.gen_bool(0.5) { [Tok::S(i), Tok::Inv(i)] } else { [Tok::Inv(i), Tok::S(i)] };
                cur.splice(at..at, pair);
            }
            _ => {
                let spots: Vec<usize> =
                    (0..cur.len().saturating_sub(1)).filter(|&k| cancels(cur[k], cur[k + 1])).collect();
                if !spots.is_empty() {
                    let k = spots[rng.gen_range(0..spots.len())];
                    cur.drain(k..k + 2);
                }
            }
        }
    }
    cur
}

fn cancels(a: Tok, b: Tok) -> bool {
    matches!((a, b), (Tok::S(i), Tok::Inv(j)) | (Tok::Inv(i), Tok::S(j)) if i == j)
}

/// Image in the symmetric group, σ_i and x_i both acting as (i i+1).
/// Every relation preserves it, so words with different images differ.
pub fn permutation(w: &[Tok], n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for t in w {
        let i = match *t {
            Tok::S(i) | Tok::X(i) | Tok::Inv(i) => i as usize,
        };
        p.swap(i - 1, i);
    }
    p
}

/// `Δ` spelled as `Π_{n-1} … Π_1`, `Π_t = σ_1 … σ_t`.
pub fn delta(n: usize) -> Toks {
    (1..n).rev().flat_map(|t| (1..=t as u8).map(Tok::S)).collect()
}

pub fn reflect(w: &[Tok], n: usize) -> Toks {
    let r = |i: u8| n as u8 - i;
    w.iter()
        .map(|t| match *t {
            Tok::S(i) => Tok::S(r(i)),
            Tok::X(i) => Tok::X(r(i)),
            Tok::Inv(i) => Tok::Inv(r(i)),
        })
        .collect()
}

pub fn cat(parts: &[&[Tok]]) -> Toks {
    parts.concat()
}
