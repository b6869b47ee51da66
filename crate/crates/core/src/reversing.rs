//! Divisibility by a single letter through word reversing.
//!
//! The positive relations are complemented: for letters `a ≠ b` there is at
//! most one relation of the form `a·f(a,b) = b·f(b,a)`, and none for the
//! pairs `x_i, x_{i±1}`. Reversing rewrites `a⁻¹b` to `f(a,b)·f(b,a)⁻¹`
//! (and `a⁻¹a` to nothing). Starting from `c⁻¹·w`, it either gets stuck on
//! a pair without a relation, leaves negative letters behind, runs past the
//! length of `w`, or ends in a positive word `P`; `c` left-divides `w`
//! exactly in the last case, and then `w ≐ c·P`.
//!
//! That equivalence is the completeness of reversing, which holds when the
//! complement satisfies the cube condition on letters. The integration tests
//! check the resulting division against exhaustive class enumeration.

use crate::words::Context;

/// Right complement `f(a,b)` in letter codes, or `None` when `a` and `b` have
/// no common right multiple.
fn complement(a: u8, b: u8, s: u8, out: &mut Vec<u8>) -> bool {
    out.clear();
    if a == b {
        return true;
    }
    let (ax, bx) = (a >= s, b >= s);
    let (i, k) = (if ax { a - s } else { a }, if bx { b - s } else { b });
    let far = i.abs_diff(k) >= 2;
    match (ax, bx) {
        (false, false) => {
            if far {
                out.push(b);
            } else {
                // σ_i σ_k σ_i = σ_k σ_i σ_k
                out.extend_from_slice(&[b, a]);
            }
        }
        (true, true) => {
            if far {
                out.push(b);
            } else {
                return false;
            }
        }
        (false, true) => {
            if i.abs_diff(k) != 1 {
                out.push(b);
            } else {
                // σ_i · σ_k x_i = x_k · σ_i σ_k
                out.extend_from_slice(&[k, s + i]);
            }
        }
        (true, false) => {
            if i.abs_diff(k) != 1 {
                out.push(b);
            } else {
                // x_i · σ_k σ_i = σ_k · σ_i x_k, i.e. the case above read from x.
                out.extend_from_slice(&[k, i]);
            }
        }
    }
    true
}

/// `Some(P)` with `w ≐ c·P` if the letter `c` left-divides `w`.
pub(crate) fn left_quotient(ctx: Context, w: &[u8], c: u8) -> Option<Vec<u8>> {
    let s = ctx.generators() as u8;
    let top = w.len() as i64;
    // Signed letters: (code, positive). Reversing only ever rewrites a
    // negative letter immediately followed by a positive one.
    let mut word: Vec<(u8, bool)> = Vec::with_capacity(w.len() + 8);
    word.push((c, false));
    word.extend(w.iter().map(|&l| (l, true)));
    let (mut fab, mut fba) = (Vec::new(), Vec::new());
    let mut at = 0;
    // The prefix before `at` contains no negative-positive pair.
    while let Some(p) = (at..word.len().saturating_sub(1)).find(|&p| !word[p].1 && word[p + 1].1) {
        let (a, b) = (word[p].0, word[p + 1].0);
        if !complement(a, b, s, &mut fab) || !complement(b, a, s, &mut fba) {
            return None;
        }
        let replacement = fab.iter().map(|&l| (l, true)).chain(fba.iter().rev().map(|&l| (l, false)));
        word.splice(p..p + 2, replacement);
        // The word is a path through the reversing diagram from `c` to `w`.
        // If `c` divides `w`, every vertex on it is a left divisor of `w`, so
        // the running length stays between 0 and |w|. Without a common
        // multiple reversing can run forever, and this is what stops it.
        let mut height = 1;
        for &(_, positive) in &word {
            height += if positive { 1 } else { -1 };
            if !(0..=top).contains(&height) {
                return None;
            }
        }
        at = p.saturating_sub(1);
    }
    if word.iter().all(|&(_, positive)| positive) {
        Some(word.into_iter().map(|(l, _)| l).collect())
    } else {
        None
    }
}

/// `Some(P)` with `w ≐ P·c`. The relations are closed under reversal of
/// words, so this is left division of the mirror image.
pub(crate) fn right_quotient(ctx: Context, w: &[u8], c: u8) -> Option<Vec<u8>> {
    let mirrored: Vec<u8> = w.iter().rev().copied().collect();
    left_quotient(ctx, &mirrored, c).map(|mut q| {
        q.reverse();
        q
    })
}
