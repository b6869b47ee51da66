//! Positive equivalence in the positive singular braid monoid.
//!
//! Every defining relation of the positive monoid preserves word length and
//! the number of letters of each family, so the set of positive words equal to
//! a given one is finite and can be enumerated breadth-first. That
//! enumeration is the definition and is exposed as [`Engine::enumerate_class`].
//!
//! Equality, bases, divisibility and maximal braid divisors are instead built
//! on division by single letters, decided by word reversing. This keeps them
//! polynomial in the word length where class sizes grow exponentially; the
//! integration tests check them against the enumeration.

use std::fmt;
use std::sync::{Arc, Mutex, MutexGuard};

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::reversing;
use crate::words::{Context, Letter, PositiveWord};

pub const DEFAULT_CLASS_CAP: usize = 2_000_000;
pub const DEFAULT_STRAND_BOUND: usize = 5;
pub const DEFAULT_SUMMIT_CAP: usize = 100_000;

/// Upper bound on the number of member words indexed by the class memo.
const MEMO_LIMIT: usize = 1 << 22;

/// A positive equivalence class, members stored sorted in lexicographic order.
#[derive(Clone)]
pub struct EquivalenceClass(Arc<ClassData>);

struct ClassData {
    ctx: Context,
    word_len: usize,
    count: usize,
    /// Flat member storage, `word_len` codes per member, sorted.
    members: Vec<u8>,
    complete: bool,
}

impl ClassData {
    fn from_members(ctx: Context, word_len: usize, mut words: Vec<Box<[u8]>>, complete: bool) -> Self {
        words.sort_unstable();
        let mut members = Vec::with_capacity(words.len() * word_len);
        for w in &words {
            members.extend_from_slice(w);
        }
        ClassData { ctx, word_len, count: words.len(), members, complete }
    }
}

impl EquivalenceClass {
    pub fn ctx(&self) -> Context {
        self.0.ctx
    }

    /// Number of member words.
    pub fn size(&self) -> usize {
        self.0.count
    }

    /// Common length of every member.
    pub fn word_len(&self) -> usize {
        self.0.word_len
    }

    /// False only for the partial class carried by a cap error.
    pub fn is_complete(&self) -> bool {
        self.0.complete
    }

    pub fn members(&self) -> impl Iterator<Item = PositiveWord> + '_ {
        (0..self.0.count).map(move |i| PositiveWord::from_codes(self.0.ctx, self.codes(i)))
    }

    /// The lexicographically smallest member.
    pub fn base(&self) -> PositiveWord {
        PositiveWord::from_codes(self.0.ctx, self.codes(0))
    }

    pub fn contains(&self, w: &PositiveWord) -> bool {
        w.ctx() == self.0.ctx && self.contains_codes(&w.codes())
    }

    pub(crate) fn codes(&self, i: usize) -> &[u8] {
        let l = self.0.word_len;
        &self.0.members[i * l..(i + 1) * l]
    }

    pub(crate) fn contains_codes(&self, w: &[u8]) -> bool {
        if w.len() != self.0.word_len {
            return false;
        }
        let i = self.lower_bound(w);
        i < self.0.count && self.codes(i) == w
    }

    fn lower_bound(&self, key: &[u8]) -> usize {
        let (mut lo, mut hi) = (0, self.0.count);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.codes(mid) < key {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

impl fmt::Debug for EquivalenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EquivalenceClass")
            .field("n", &self.0.ctx.strands())
            .field("word_len", &self.0.word_len)
            .field("size", &self.0.count)
            .field("complete", &self.0.complete)
            .finish()
    }
}

/// Split `w ≐ s_part · t_part` with `s_part` a longest braid-letter left divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxDivisorSplit {
    pub s_part: PositiveWord,
    pub t_part: PositiveWord,
}

/// Number of σ codes for a context; codes `0..s` are `σ_1..σ_{n-1}`, codes
/// `s..2s` are `x_1..x_{n-1}`.
#[inline]
fn sigma_count(ctx: Context) -> u8 {
    ctx.generators() as u8
}

#[inline]
fn commute(a: u8, b: u8, s: u8) -> bool {
    match (a < s, b < s) {
        (true, true) => a.abs_diff(b) > 1,
        (false, false) => (a - s).abs_diff(b - s) > 1,
        (true, false) => a.abs_diff(b - s) != 1,
        (false, true) => (a - s).abs_diff(b) != 1,
    }
}

/// The length-three relations, read in either direction.
#[inline]
fn rewrite_triple(a: u8, b: u8, c: u8, s: u8) -> Option<[u8; 3]> {
    let sig = |v: u8| v < s;
    match (sig(a), sig(b), sig(c)) {
        // σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}
        (true, true, true) if a == c && a.abs_diff(b) == 1 => Some([b, a, b]),
        (true, true, false) => {
            let k = c - s;
            if b == a + 1 && k == a {
                // σ_i σ_{i+1} x_i -> x_{i+1} σ_i σ_{i+1}
                Some([s + a + 1, a, b])
            } else if a == b + 1 && k == a {
                // σ_{i+1} σ_i x_{i+1} -> x_i σ_{i+1} σ_i
                Some([s + b, a, b])
            } else {
                None
            }
        }
        (false, true, true) => {
            let k = a - s;
            if k >= 1 && b == k - 1 && c == k {
                // x_{i+1} σ_i σ_{i+1} -> σ_i σ_{i+1} x_i
                Some([b, c, s + b])
            } else if b == k + 1 && c == k {
                // x_i σ_{i+1} σ_i -> σ_{i+1} σ_i x_{i+1}
                Some([b, c, s + b])
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Calls `f` once per single-relation rewrite of `w` (possibly with repeats).
pub(crate) fn for_each_neighbor(ctx: Context, w: &[u8], buf: &mut Vec<u8>, mut f: impl FnMut(&[u8])) {
    let s = sigma_count(ctx);
    buf.clear();
    buf.extend_from_slice(w);
    for p in 0..w.len().saturating_sub(1) {
        let (a, b) = (w[p], w[p + 1]);
        if a != b && commute(a, b, s) {
            buf.swap(p, p + 1);
            f(buf);
            buf.swap(p, p + 1);
        }
    }
    for p in 0..w.len().saturating_sub(2) {
        if let Some(t) = rewrite_triple(w[p], w[p + 1], w[p + 2], s) {
            buf[p..p + 3].copy_from_slice(&t);
            f(buf);
            buf[p..p + 3].copy_from_slice(&w[p..p + 3]);
        }
    }
}

/// All words one positive relation away from `w`, sorted and deduplicated.
pub fn neighbors(w: &PositiveWord) -> Vec<PositiveWord> {
    let ctx = w.ctx();
    let mut out: Vec<Vec<u8>> = Vec::new();
    let mut buf = Vec::new();
    for_each_neighbor(ctx, &w.codes(), &mut buf, |nb| out.push(nb.to_vec()));
    out.sort_unstable();
    out.dedup();
    out.iter().map(|c| PositiveWord::from_codes(ctx, c)).collect()
}

fn explore(ctx: Context, start: &[u8], cap: usize) -> Result<ClassData, ClassData> {
    let mut seen: FxHashSet<Box<[u8]>> = FxHashSet::default();
    let mut order: Vec<Box<[u8]>> = vec![start.into()];
    seen.insert(start.into());
    let mut buf = Vec::with_capacity(start.len());
    let mut head = 0;
    let mut overflow = false;
    while head < order.len() && !overflow {
        let current = order[head].clone();
        head += 1;
        for_each_neighbor(ctx, &current, &mut buf, |nb| {
            if overflow || seen.contains(nb) {
                return;
            }
            if order.len() >= cap {
                overflow = true;
                return;
            }
            seen.insert(nb.into());
            order.push(nb.into());
        });
    }
    drop(seen);
    let data = ClassData::from_members(ctx, start.len(), order, !overflow);
    if overflow {
        Err(data)
    } else {
        Ok(data)
    }
}

#[derive(Default)]
struct Memo {
    index: FxHashMap<Box<[u8]>, EquivalenceClass>,
}

fn memo_key(ctx: Context, codes: &[u8]) -> Vec<u8> {
    let mut key = Vec::with_capacity(codes.len() + 1);
    key.push(ctx.strands() as u8);
    key.extend_from_slice(codes);
    key
}

/// Owns the resource limits and the class cache. Every operation that needs
/// positive equivalence goes through an engine.
///
/// The cache only ever stores complete classes, so results never depend on
/// whether it is warm.
pub struct Engine {
    class_cap: usize,
    strand_bound: usize,
    summit_cap: usize,
    memo: Mutex<Memo>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

impl fmt::Debug for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Engine")
            .field("class_cap", &self.class_cap)
            .field("strand_bound", &self.strand_bound)
            .field("summit_cap", &self.summit_cap)
            .finish_non_exhaustive()
    }
}

impl Engine {
    pub fn new() -> Self {
        Engine {
            class_cap: DEFAULT_CLASS_CAP,
            strand_bound: DEFAULT_STRAND_BOUND,
            summit_cap: DEFAULT_SUMMIT_CAP,
            memo: Mutex::new(Memo::default()),
        }
    }

    pub fn with_class_cap(mut self, cap: usize) -> Self {
        self.class_cap = cap.max(1);
        self
    }

    pub fn with_strand_bound(mut self, bound: usize) -> Self {
        self.strand_bound = bound;
        self
    }

    pub fn with_summit_cap(mut self, cap: usize) -> Self {
        self.summit_cap = cap.max(1);
        self
    }

    pub fn class_cap(&self) -> usize {
        self.class_cap
    }

    pub fn strand_bound(&self) -> usize {
        self.strand_bound
    }

    pub fn summit_cap(&self) -> usize {
        self.summit_cap
    }

    pub(crate) fn check_bound(&self, ctx: Context) -> Result<()> {
        if ctx.strands() > self.strand_bound {
            Err(Error::BoundExceeded { n: ctx.strands(), bound: self.strand_bound })
        } else {
            Ok(())
        }
    }

    fn memo(&self) -> MutexGuard<'_, Memo> {
        self.memo.lock().unwrap_or_else(|e| e.into_inner())
    }

    fn cached(&self, ctx: Context, codes: &[u8]) -> Option<EquivalenceClass> {
        self.memo().index.get(memo_key(ctx, codes).as_slice()).cloned()
    }

    pub(crate) fn class_of(&self, ctx: Context, codes: &[u8]) -> Result<EquivalenceClass> {
        if let Some(c) = self.cached(ctx, codes) {
            return Ok(c);
        }
        let class = match explore(ctx, codes, self.class_cap) {
            Ok(data) => EquivalenceClass(Arc::new(data)),
            Err(partial) => {
                return Err(Error::CapExceeded {
                    cap: self.class_cap,
                    partial: Some(EquivalenceClass(Arc::new(partial))),
                })
            }
        };
        if class.size() <= MEMO_LIMIT {
            let mut memo = self.memo();
            if memo.index.len() + class.size() > MEMO_LIMIT {
                memo.index.clear();
            }
            for i in 0..class.size() {
                memo.index.insert(memo_key(ctx, class.codes(i)).into_boxed_slice(), class.clone());
            }
        }
        Ok(class)
    }

    /// Breadth-first closure of `{w}` under single relation applications.
    pub fn enumerate_class(&self, w: &PositiveWord) -> Result<EquivalenceClass> {
        self.class_of(w.ctx(), &w.codes())
    }

    pub fn positively_equal(&self, a: &PositiveWord, b: &PositiveWord) -> Result<bool> {
        a.ctx().ensure_same(b.ctx())?;
        if a.len() != b.len() || a.degrees() != b.degrees() {
            return Ok(false);
        }
        self.equal_codes(a.ctx(), &a.codes(), &b.codes())
    }

    /// Same length and `a` left-divides `b`.
    pub(crate) fn equal_codes(&self, ctx: Context, a: &[u8], b: &[u8]) -> Result<bool> {
        if a == b {
            return Ok(true);
        }
        Ok(a.len() == b.len() && self.divide_codes(ctx, b, a, Side::Left)?.is_some_and(|z| z.is_empty()))
    }

    /// Lexicographically least member of the class.
    pub fn base(&self, w: &PositiveWord) -> Result<PositiveWord> {
        Ok(PositiveWord::from_codes(w.ctx(), &self.base_codes(w.ctx(), &w.codes())?))
    }

    /// By left cancellativity the least member starts with the least letter
    /// dividing `w` and continues with the least member of the quotient.
    pub(crate) fn base_codes(&self, ctx: Context, w: &[u8]) -> Result<Vec<u8>> {
        let letters = 2 * sigma_count(ctx);
        let mut out = Vec::with_capacity(w.len());
        let mut rest = w.to_vec();
        while !rest.is_empty() {
            let (c, q) = (0..letters)
                .find_map(|c| reversing::left_quotient(ctx, &rest, c).map(|q| (c, q)))
                .ok_or_else(|| Error::Invariant(format!("no letter divides a nonempty word {rest:?}")))?;
            out.push(c);
            rest = q;
        }
        Ok(out)
    }

    /// `Z` with `w ≐ d·Z`, if `d` left-divides `w`.
    pub fn left_divide(&self, w: &PositiveWord, d: &PositiveWord) -> Result<Option<PositiveWord>> {
        w.ctx().ensure_same(d.ctx())?;
        let ctx = w.ctx();
        Ok(self.divide_codes(ctx, &w.codes(), &d.codes(), Side::Left)?.map(|z| PositiveWord::from_codes(ctx, &z)))
    }

    /// `Z` with `w ≐ Z·d`, if `d` right-divides `w`.
    pub fn right_divide(&self, w: &PositiveWord, d: &PositiveWord) -> Result<Option<PositiveWord>> {
        w.ctx().ensure_same(d.ctx())?;
        let ctx = w.ctx();
        Ok(self.divide_codes(ctx, &w.codes(), &d.codes(), Side::Right)?.map(|z| PositiveWord::from_codes(ctx, &z)))
    }

    /// Divides letter by letter: `d = c·d'` divides `w` iff `c` does and `d'`
    /// divides the quotient (cancellativity).
    pub(crate) fn divide_codes(&self, ctx: Context, w: &[u8], d: &[u8], side: Side) -> Result<Option<Vec<u8>>> {
        if d.len() > w.len() {
            return Ok(None);
        }
        let mut rest = w.to_vec();
        let letters: Box<dyn Iterator<Item = &u8>> = match side {
            Side::Left => Box::new(d.iter()),
            Side::Right => Box::new(d.iter().rev()),
        };
        for &c in letters {
            match self.divide_letter(ctx, &rest, c, side)? {
                Some(q) => rest = q,
                None => return Ok(None),
            }
        }
        Ok(Some(rest))
    }

    pub(crate) fn divide_letter(&self, ctx: Context, w: &[u8], c: u8, side: Side) -> Result<Option<Vec<u8>>> {
        Ok(match side {
            Side::Left => reversing::left_quotient(ctx, w, c),
            Side::Right => reversing::right_quotient(ctx, w, c),
        })
    }

    /// Peels `σ_i` letters off the left, smallest index first, until none
    /// divides the remainder.
    pub fn max_braid_divisor(&self, w: &PositiveWord) -> Result<MaxDivisorSplit> {
        let ctx = w.ctx();
        let (s, t) = self.max_braid_divisor_codes(ctx, &w.codes(), Side::Left)?;
        Ok(MaxDivisorSplit { s_part: PositiveWord::from_codes(ctx, &s), t_part: PositiveWord::from_codes(ctx, &t) })
    }

    /// Mirror of [`Engine::max_braid_divisor`]: `w ≐ t_part · s_part`.
    pub fn max_braid_divisor_right(&self, w: &PositiveWord) -> Result<MaxDivisorSplit> {
        let ctx = w.ctx();
        let (s, t) = self.max_braid_divisor_codes(ctx, &w.codes(), Side::Right)?;
        Ok(MaxDivisorSplit { s_part: PositiveWord::from_codes(ctx, &s), t_part: PositiveWord::from_codes(ctx, &t) })
    }

    pub(crate) fn max_braid_divisor_codes(&self, ctx: Context, w: &[u8], side: Side) -> Result<(Vec<u8>, Vec<u8>)> {
        let s = sigma_count(ctx);
        let mut peeled = Vec::new();
        let mut rest = w.to_vec();
        'outer: while !rest.is_empty() {
            for c in 0..s {
                if let Some(q) = self.divide_letter(ctx, &rest, c, side)? {
                    peeled.push(c);
                    rest = q;
                    continue 'outer;
                }
            }
            break;
        }
        if side == Side::Right {
            peeled.reverse();
        }
        Ok((peeled, rest))
    }

    /// Indices `i`, ascending, such that `x_i` left-divides `w`.
    pub fn x_divisors(&self, w: &PositiveWord) -> Result<Vec<usize>> {
        let ctx = w.ctx();
        self.x_divisor_codes(ctx, &w.codes(), Side::Left)
            .map(|v| v.into_iter().map(|c| Letter::from_code(c, ctx).index).collect())
    }

    pub(crate) fn x_divisor_codes(&self, ctx: Context, w: &[u8], side: Side) -> Result<Vec<u8>> {
        let s = sigma_count(ctx);
        let mut out = Vec::new();
        for c in s..2 * s {
            if self.divide_letter(ctx, w, c, side)?.is_some() {
                out.push(c);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}
