//! The half twist `Δ`, Garside normal forms `Δ^m·Ā`, the word problem, and
//! left/right greedy forms.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rewrite::{Engine, Side};
use crate::words::{Context, Letter, LetterKind, PositiveWord, Word};

/// `Δ^m · base` with `base` the lexicographically least spelling of a
/// positive element that `Δ` does not left-divide.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub ctx: Context,
    pub power: i64,
    pub base: PositiveWord,
}

impl Serialize for NormalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("NormalForm", 3)?;
        st.serialize_field("n", &self.ctx.strands())?;
        st.serialize_field("power", &self.power)?;
        st.serialize_field("base", &self.base)?;
        st.end()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.power)?;
        if !self.base.is_empty() {
            write!(f, " {}", self.base)?;
        }
        Ok(())
    }
}

/// One `S_j X_j` factor of a greedy form: permutation-braid fragments followed
/// by a block of singular letters (`X_j S_j` for right forms).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GreedyBlock {
    pub fragments: Vec<PositiveWord>,
    pub xs: Vec<usize>,
}

/// Left form: `Δ^t S_1 X_1 … S_k X_k`. Right form: `X_k S_k … X_1 S_1 Δ^t`,
/// blocks listed in reading order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GreedyForm {
    pub ctx: Context,
    pub side: Side,
    pub power: i64,
    pub blocks: Vec<GreedyBlock>,
}

impl Serialize for Side {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl Serialize for GreedyForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GreedyForm", 4)?;
        st.serialize_field("n", &self.ctx.strands())?;
        st.serialize_field("power", &self.power)?;
        st.serialize_field("blocks", &self.blocks)?;
        st.serialize_field("side", &self.side)?;
        st.end()
    }
}

impl fmt::Display for GreedyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let block = |f: &mut fmt::Formatter<'_>, b: &GreedyBlock| -> fmt::Result {
            let frags = b.fragments.iter().map(|w| format!("[{w}]")).collect::<Vec<_>>();
            let xs = b.xs.iter().map(|i| format!("x{i}")).collect::<Vec<_>>();
            match self.side {
                Side::Left => write!(f, " {} | {}", frags.join(" "), xs.join(" ")),
                Side::Right => write!(f, " {} | {}", xs.join(" "), frags.join(" ")),
            }
        };
        match self.side {
            Side::Left => {
                write!(f, "D^{}", self.power)?;
                for b in &self.blocks {
                    f.write_str(" ;")?;
                    block(f, b)?;
                }
            }
            Side::Right => {
                for b in &self.blocks {
                    block(f, b)?;
                    f.write_str(" ;")?;
                }
                write!(f, " D^{}", self.power)?;
            }
        }
        Ok(())
    }
}

pub(crate) fn delta_codes(ctx: Context) -> Vec<u8> {
    let mut out = Vec::with_capacity(ctx.delta_len());
    for t in (1..ctx.strands()).rev() {
        out.extend(0..t as u8);
    }
    out
}

/// `Δ = Π_{n-1} … Π_1` with `Π_t = σ_1 … σ_t`.
pub fn delta(ctx: Context) -> PositiveWord {
    PositiveWord::from_codes(ctx, &delta_codes(ctx))
}

/// `Δ^m`, spelled with inverse letters when `m < 0`.
pub fn delta_power(ctx: Context, m: i64) -> Word {
    let d = delta(ctx).into_word();
    let unit = if m < 0 { d.invert().expect("Δ is a braid") } else { d };
    let mut letters = Vec::with_capacity(unit.len() * m.unsigned_abs() as usize);
    for _ in 0..m.unsigned_abs() {
        letters.extend_from_slice(unit.letters());
    }
    Word::new_unchecked(ctx, letters)
}

pub(crate) fn reflect_codes(ctx: Context, w: &[u8]) -> Vec<u8> {
    let s = ctx.generators() as u8;
    w.iter().map(|&c| if c < s { s - 1 - c } else { s + (2 * s - 1 - c) }).collect()
}

/// Strand positions after a braid-letter word, or `None` once some pair of
/// strands crosses a second time.
fn arrangement(ctx: Context, w: &[u8]) -> Option<Vec<usize>> {
    let mut arr: Vec<usize> = (0..ctx.strands()).collect();
    for &c in w {
        let c = c as usize;
        if arr[c] > arr[c + 1] {
            return None;
        }
        arr.swap(c, c + 1);
    }
    Some(arr)
}

/// Lexicographically least reduced braid-letter word moving the strands from
/// `from` to `to`.
fn simple_word(from: &[usize], to: &[usize]) -> Vec<u8> {
    let mut pos_in_target = vec![0; to.len()];
    for (p, &strand) in to.iter().enumerate() {
        pos_in_target[strand] = p;
    }
    let mut cur = from.to_vec();
    let mut out = Vec::new();
    'outer: loop {
        for c in 0..cur.len() - 1 {
            if pos_in_target[cur[c + 1]] < pos_in_target[cur[c]] {
                cur.swap(c, c + 1);
                out.push(c as u8);
                continue 'outer;
            }
        }
        return out;
    }
}

/// Canonical spelling of a permutation braid given by any reduced spelling.
pub(crate) fn canonical_simple(ctx: Context, w: &[u8]) -> Option<Vec<u8>> {
    let target = arrangement(ctx, w)?;
    let id: Vec<usize> = (0..ctx.strands()).collect();
    Some(simple_word(&id, &target))
}

fn is_reduced_braid(ctx: Context, w: &[u8]) -> bool {
    arrangement(ctx, w).is_some()
}

/// True iff no two strands cross twice, i.e. `w` left-divides `Δ`.
pub fn is_permutation_braid(w: &PositiveWord) -> Result<bool> {
    if w.has_x() {
        return Err(Error::XLettersPresent);
    }
    Ok(is_reduced_braid(w.ctx(), &w.codes()))
}

fn complement_codes(ctx: Context, i: usize, side: Side) -> Vec<u8> {
    let n = ctx.strands();
    let id: Vec<usize> = (0..n).collect();
    let reversed: Vec<usize> = (0..n).rev().collect();
    match side {
        Side::Left => {
            let mut after = id;
            after.swap(i - 1, i);
            simple_word(&after, &reversed)
        }
        Side::Right => {
            let mut before = reversed;
            before.swap(i - 1, i);
            simple_word(&id, &before)
        }
    }
}

/// `D` with `σ_i · D ≐ Δ`, spelled lexicographically least.
pub fn complement_right(ctx: Context, i: usize) -> Result<PositiveWord> {
    ctx.check_index(i)?;
    Ok(PositiveWord::from_codes(ctx, &complement_codes(ctx, i, Side::Left)))
}

/// `D` with `D · σ_i ≐ Δ`, spelled lexicographically least.
pub fn complement_left(ctx: Context, i: usize) -> Result<PositiveWord> {
    ctx.check_index(i)?;
    Ok(PositiveWord::from_codes(ctx, &complement_codes(ctx, i, Side::Right)))
}

/// `D` with `s · D ≐ Δ` for a permutation braid `s`, canonically spelled.
pub(crate) fn simple_complement_codes(ctx: Context, s: &[u8]) -> Option<Vec<u8>> {
    let arr = arrangement(ctx, s)?;
    let reversed: Vec<usize> = (0..ctx.strands()).rev().collect();
    Some(simple_word(&arr, &reversed))
}

/// Canonical spellings of all `n!` permutation braids.
pub(crate) fn all_simple_codes(ctx: Context) -> Vec<Vec<u8>> {
    fn perms(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..left.len() {
            let v = left.remove(k);
            prefix.push(v);
            perms(prefix, left, out);
            prefix.pop();
            left.insert(k, v);
        }
    }
    let n = ctx.strands();
    let id: Vec<usize> = (0..n).collect();
    let mut all = Vec::new();
    perms(&mut Vec::new(), &mut id.clone(), &mut all);
    all.iter().map(|p| simple_word(&id, p)).collect()
}

/// `w` moved across `Δ`: `w·Δ ≐ Δ·R(w)`.
pub fn delta_commute_pos(w: &PositiveWord) -> PositiveWord {
    w.reflect()
}

/// Permutation-braid fragments followed by singular letters, in codes.
type RawBlock = (Vec<Vec<u8>>, Vec<u8>);

impl Engine {
    pub(crate) fn split_delta_codes(&self, ctx: Context, w: Vec<u8>) -> Result<(u64, Vec<u8>)> {
        let s = ctx.generators() as u8;
        let delta = delta_codes(ctx);
        let mut rest = w;
        let mut t = 0;
        while rest.len() >= delta.len() {
            // Δ divides iff every σ_i does.
            for c in 0..s {
                if self.divide_letter(ctx, &rest, c, Side::Left)?.is_none() {
                    return Ok((t, rest));
                }
            }
            rest = self
                .divide_codes(ctx, &rest, &delta, Side::Left)?
                .ok_or_else(|| Error::Invariant("every σ_i left-divides a word that Δ does not".into()))?;
            t += 1;
        }
        Ok((t, rest))
    }

    /// Largest `t` with `Δ^t` left-dividing `w`, and the quotient.
    pub fn delta_power_split(&self, w: &PositiveWord) -> Result<(u64, PositiveWord)> {
        let ctx = w.ctx();
        let (t, rest) = self.split_delta_codes(ctx, w.codes())?;
        Ok((t, PositiveWord::from_codes(ctx, &rest)))
    }

    /// Garside normal form. Inverse letters are replaced by `D_i Δ⁻¹` and the
    /// `Δ⁻¹` pushed to the left through `a·Δ⁻¹ = Δ⁻¹·R(a)`, unless `σ_i`
    /// already right-divides the positive part accumulated so far.
    pub fn normal_form(&self, w: &Word) -> Result<NormalForm> {
        let ctx = w.ctx();
        let mut power: i64 = 0;
        let mut acc: Vec<u8> = Vec::new();
        for &l in w.free_reduce().letters() {
            match l.kind {
                LetterKind::SigmaPos | LetterKind::X => {
                    acc.push(l.code(ctx));
                    // Keep the accumulator prime to Δ so its classes stay small.
                    if l.is_sigma() && acc.len() >= ctx.delta_len() {
                        let (t, rest) = self.split_delta_codes(ctx, acc)?;
                        power += t as i64;
                        acc = rest;
                    }
                }
                LetterKind::SigmaNeg => {
                    let c = (l.index - 1) as u8;
                    if let Some(q) = self.divide_letter(ctx, &acc, c, Side::Right)? {
                        acc = q;
                    } else {
                        acc.extend(complement_codes(ctx, l.index, Side::Left));
                        acc = reflect_codes(ctx, &acc);
                        power -= 1;
                        let (t, rest) = self.split_delta_codes(ctx, acc)?;
                        power += t as i64;
                        acc = rest;
                    }
                }
            }
        }
        let (t, rest) = self.split_delta_codes(ctx, acc)?;
        power += t as i64;
        let base = self.base_codes(ctx, &rest)?;
        Ok(NormalForm { ctx, power, base: PositiveWord::from_codes(ctx, &base) })
    }

    /// Word problem: equal iff the normal forms coincide.
    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        u.ctx().ensure_same(v.ctx())?;
        if u.degrees() != v.degrees() {
            return Ok(false);
        }
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    fn braid_fragments(&self, ctx: Context, braid: Vec<u8>) -> Result<Vec<Vec<u8>>> {
        let s = ctx.generators() as u8;
        let mut rest = braid;
        let mut fragments = Vec::new();
        while !rest.is_empty() {
            let mut frag: Vec<u8> = Vec::new();
            'grow: loop {
                for c in 0..s {
                    frag.push(c);
                    let simple = is_reduced_braid(ctx, &frag);
                    frag.pop();
                    if !simple {
                        continue;
                    }
                    if let Some(q) = self.divide_letter(ctx, &rest, c, Side::Left)? {
                        frag.push(c);
                        rest = q;
                        continue 'grow;
                    }
                }
                break;
            }
            if frag.is_empty() {
                return Err(Error::Invariant("nonempty braid word with no letter divisor".into()));
            }
            let canonical = canonical_simple(ctx, &frag)
                .ok_or_else(|| Error::Invariant("fragment is not a permutation braid".into()))?;
            fragments.push(canonical);
        }
        Ok(fragments)
    }

    fn left_greedy_blocks(&self, ctx: Context, positive: Vec<u8>) -> Result<Vec<RawBlock>> {
        let s = ctx.generators() as u8;
        let mut rest = positive;
        let mut blocks = Vec::new();
        while !rest.is_empty() {
            let (braid, tail) = self.max_braid_divisor_codes(ctx, &rest, Side::Left)?;
            let fragments = self.braid_fragments(ctx, braid)?;
            rest = tail;
            let mut xs = Vec::new();
            while !rest.is_empty() {
                let smallest = *self
                    .x_divisor_codes(ctx, &rest, Side::Left)?
                    .first()
                    .ok_or_else(|| Error::Invariant("nonempty word with no divisor".into()))?;
                rest = self.divide_letter(ctx, &rest, smallest, Side::Left)?.expect("divisor was just found");
                xs.push(smallest - s);
                if rest.is_empty() {
                    break;
                }
                let mut braid_divides = false;
                for c in 0..s {
                    if self.divide_letter(ctx, &rest, c, Side::Left)?.is_some() {
                        braid_divides = true;
                        break;
                    }
                }
                if braid_divides {
                    break;
                }
            }
            blocks.push((fragments, xs));
        }
        Ok(blocks)
    }

    /// Greedy form. The right form is the mirror image of the left form of
    /// the reversed word.
    pub fn greedy_form(&self, w: &Word, side: Side) -> Result<GreedyForm> {
        let ctx = w.ctx();
        let source = match side {
            Side::Left => w.clone(),
            Side::Right => w.reversed(),
        };
        let nf = self.normal_form(&source)?;
        let raw = self.left_greedy_blocks(ctx, nf.base.codes())?;
        let to_word = |c: &[u8]| PositiveWord::from_codes(ctx, c);
        let blocks = match side {
            Side::Left => raw
                .into_iter()
                .map(|(frags, xs)| GreedyBlock {
                    fragments: frags.iter().map(|f| to_word(f)).collect(),
                    xs: xs.into_iter().map(|k| k as usize + 1).collect(),
                })
                .collect(),
            Side::Right => raw
                .into_iter()
                .rev()
                .map(|(frags, xs)| {
                    let fragments = frags
                        .iter()
                        .rev()
                        .map(|f| {
                            let mut r = f.clone();
                            r.reverse();
                            canonical_simple(ctx, &r).map(|c| to_word(&c))
                        })
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| Error::Invariant("mirrored fragment not simple".into()))?;
                    Ok(GreedyBlock { fragments, xs: xs.into_iter().rev().map(|k| k as usize + 1).collect() })
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(GreedyForm { ctx, side, power: nf.power, blocks })
    }
}

/// Spells `Δ^m · base`.
pub fn reconstruct(nf: &NormalForm) -> Word {
    let head = delta_power(nf.ctx, nf.power);
    head.concat(nf.base.as_word()).expect("same context")
}

/// Spells a greedy form back out as a word.
pub fn reconstruct_greedy(g: &GreedyForm) -> Word {
    let ctx = g.ctx;
    let mut letters: Vec<Letter> = Vec::new();
    let push_block = |letters: &mut Vec<Letter>, b: &GreedyBlock, side: Side| {
        let frags = b.fragments.iter().flat_map(|f| f.letters().iter().copied());
        let xs = b.xs.iter().map(|&i| Letter::x(i));
        match side {
            Side::Left => {
                letters.extend(frags);
                letters.extend(xs);
            }
            Side::Right => {
                letters.extend(xs);
                letters.extend(frags);
            }
        }
    };
    let head = delta_power(ctx, g.power);
    if g.side == Side::Left {
        letters.extend_from_slice(head.letters());
    }
    for b in &g.blocks {
        push_block(&mut letters, b, g.side);
    }
    if g.side == Side::Right {
        letters.extend_from_slice(head.letters());
    }
    Word::new_unchecked(ctx, letters)
}
