//! Alphabets and words over `n` strands.
//!
//! The Artin alphabet has three letter families: the crossings `σ_i`, their
//! inverses `σ_i⁻¹` and the singular points `x_i`, for `1 <= i <= n-1`.
//! Words are written as whitespace-separated tokens: `s<k>` for `σ_k`,
//! `s<k>-` for `σ_k⁻¹` and `x<k>` for `x_k`. The empty string is the
//! identity.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported strand count. Positive letters are packed into a byte
/// code and first/last-letter sets into a `u128`.
pub const MAX_STRANDS: usize = 64;

/// The strand count a word lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context {
    n: usize,
}

impl Context {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewStrands(n));
        }
        if n > MAX_STRANDS {
            return Err(Error::TooManyStrands { n, max: MAX_STRANDS });
        }
        Ok(Context { n })
    }

    pub fn strands(self) -> usize {
        self.n
    }

    /// Number of generator indices, `n - 1`.
    pub fn generators(self) -> usize {
        self.n - 1
    }

    /// Length of the half twist, `n(n-1)/2`.
    pub fn delta_len(self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub(crate) fn check_index(self, index: usize) -> Result<()> {
        if index == 0 || index >= self.n {
            Err(Error::IndexOutOfRange { index, n: self.n })
        } else {
            Ok(())
        }
    }

    pub(crate) fn ensure_same(self, other: Context) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch { left: self.n, right: other.n })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LetterKind {
    SigmaPos,
    SigmaNeg,
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub kind: LetterKind,
    pub index: usize,
}

impl Letter {
    pub fn sigma(index: usize) -> Self {
        Letter { kind: LetterKind::SigmaPos, index }
    }

    pub fn sigma_inv(index: usize) -> Self {
        Letter { kind: LetterKind::SigmaNeg, index }
    }

    pub fn x(index: usize) -> Self {
        Letter { kind: LetterKind::X, index }
    }

    pub fn is_positive(self) -> bool {
        self.kind != LetterKind::SigmaNeg
    }

    pub fn is_sigma(self) -> bool {
        self.kind != LetterKind::X
    }

    /// `i -> n - i`, kind preserved.
    pub fn reflect(self, ctx: Context) -> Self {
        Letter { kind: self.kind, index: ctx.n - self.index }
    }

    /// The letter with the opposite crossing sign; `None` for `x_i`.
    pub fn inverse(self) -> Option<Self> {
        match self.kind {
            LetterKind::SigmaPos => Some(Letter::sigma_inv(self.index)),
            LetterKind::SigmaNeg => Some(Letter::sigma(self.index)),
            LetterKind::X => None,
        }
    }

    /// Byte code of a positive letter. Codes are ordered like the letters:
    /// `σ_1 < … < σ_{n-1} < x_1 < … < x_{n-1}`.
    pub(crate) fn code(self, ctx: Context) -> u8 {
        match self.kind {
            LetterKind::SigmaPos => (self.index - 1) as u8,
            LetterKind::X => (ctx.n - 2 + self.index) as u8,
            LetterKind::SigmaNeg => panic!("inverse letters have no positive code"),
        }
    }

    pub(crate) fn from_code(code: u8, ctx: Context) -> Self {
        let c = code as usize;
        if c < ctx.n - 1 {
            Letter::sigma(c + 1)
        } else {
            Letter::x(c + 2 - ctx.n)
        }
    }

    fn parse_token(token: &str, position: usize) -> Result<Self> {
        let malformed = || Error::MalformedToken { token: token.to_string(), position };
        let (kind, digits) = if let Some(rest) = token.strip_prefix('s') {
            match rest.strip_suffix('-') {
                Some(d) => (LetterKind::SigmaNeg, d),
                None => (LetterKind::SigmaPos, rest),
            }
        } else if let Some(rest) = token.strip_prefix('x') {
            (LetterKind::X, rest)
        } else {
            return Err(malformed());
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let index = digits.parse().map_err(|_| malformed())?;
        Ok(Letter { kind, index })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LetterKind::SigmaPos => write!(f, "s{}", self.index),
            LetterKind::SigmaNeg => write!(f, "s{}-", self.index),
            LetterKind::X => write!(f, "x{}", self.index),
        }
    }
}

/// Degrees with respect to the crossings, the singular letters, and in total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Degrees {
    pub deg_sigma: i64,
    pub deg_x: u64,
    pub total: i64,
}

impl Add for Degrees {
    type Output = Degrees;

    fn add(self, rhs: Degrees) -> Degrees {
        Degrees {
            deg_sigma: self.deg_sigma + rhs.deg_sigma,
            deg_x: self.deg_x + rhs.deg_x,
            total: self.total + rhs.total,
        }
    }
}

/// A word in the Artin alphabet. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    ctx: Context,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(ctx: Context, letters: Vec<Letter>) -> Result<Self> {
        for l in &letters {
            ctx.check_index(l.index)?;
        }
        Ok(Word { ctx, letters })
    }

    pub(crate) fn new_unchecked(ctx: Context, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|l| l.index >= 1 && l.index < ctx.n));
        Word { ctx, letters }
    }

    pub fn identity(ctx: Context) -> Self {
        Word { ctx, letters: Vec::new() }
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        parse(text, n)
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.is_positive())
    }

    pub fn has_x(&self) -> bool {
        self.letters.iter().any(|l| l.kind == LetterKind::X)
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.ctx.ensure_same(other.ctx)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { ctx: self.ctx, letters })
    }

    pub fn degrees(&self) -> Degrees {
        degrees(self)
    }

    pub fn reflect(&self) -> Word {
        reflect(self)
    }

    pub fn invert(&self) -> Result<Word> {
        invert(self)
    }

    /// Letters in reverse order, signs unchanged. The defining relations are
    /// closed under reversal, so this is an anti-automorphism.
    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { ctx: self.ctx, letters }
    }

    /// Cancels adjacent `σ_i σ_i⁻¹` and `σ_i⁻¹ σ_i` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if let (Some(&last), Some(inv)) = (out.last(), l.inverse()) {
                if last == inv {
                    out.pop();
                    continue;
                }
            }
            out.push(l);
        }
        Word { ctx: self.ctx, letters: out }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A word without inverse letters, i.e. an element spelling of the positive
/// monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositiveWord(Word);

impl PositiveWord {
    pub fn new(ctx: Context, letters: Vec<Letter>) -> Result<Self> {
        Word::new(ctx, letters)?.try_into()
    }

    pub fn identity(ctx: Context) -> Self {
        PositiveWord(Word::identity(ctx))
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        parse(text, n)?.try_into()
    }

    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn ctx(&self) -> Context {
        self.0.ctx
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0.letters
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degrees(&self) -> Degrees {
        self.0.degrees()
    }

    pub fn reflect(&self) -> PositiveWord {
        PositiveWord(self.0.reflect())
    }

    pub fn reversed(&self) -> PositiveWord {
        PositiveWord(self.0.reversed())
    }

    pub fn concat(&self, other: &PositiveWord) -> Result<PositiveWord> {
        Ok(PositiveWord(self.0.concat(&other.0)?))
    }

    pub fn has_x(&self) -> bool {
        self.0.has_x()
    }

    pub(crate) fn codes(&self) -> Vec<u8> {
        self.0.letters.iter().map(|l| l.code(self.0.ctx)).collect()
    }

    pub(crate) fn from_codes(ctx: Context, codes: &[u8]) -> Self {
        let letters = codes.iter().map(|&c| Letter::from_code(c, ctx)).collect();
        PositiveWord(Word { ctx, letters })
    }
}

impl TryFrom<Word> for PositiveWord {
    type Error = Error;

    fn try_from(w: Word) -> Result<Self> {
        if w.is_positive() {
            Ok(PositiveWord(w))
        } else {
            Err(Error::NotPositive)
        }
    }
}

impl From<PositiveWord> for Word {
    fn from(p: PositiveWord) -> Word {
        p.0
    }
}

impl AsRef<Word> for PositiveWord {
    fn as_ref(&self) -> &Word {
        &self.0
    }
}

impl fmt::Display for PositiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for PositiveWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

pub fn parse(text: &str, n: usize) -> Result<Word> {
    let ctx = Context::new(n)?;
    let letters = text
        .split_whitespace()
        .enumerate()
        .map(|(position, token)| {
            let l = Letter::parse_token(token, position)?;
            ctx.check_index(l.index)?;
            Ok(l)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Word { ctx, letters })
}

pub fn format(w: &Word) -> String {
    w.to_string()
}

pub fn degrees(w: &Word) -> Degrees {
    let mut d = Degrees::default();
    for l in &w.letters {
        match l.kind {
            LetterKind::SigmaPos => d.deg_sigma += 1,
            LetterKind::SigmaNeg => d.deg_sigma -= 1,
            LetterKind::X => d.deg_x += 1,
        }
    }
    d.total = d.deg_sigma + d.deg_x as i64;
    d
}

pub fn reflect(w: &Word) -> Word {
    let letters = w.letters.iter().map(|l| l.reflect(w.ctx)).collect();
    Word { ctx: w.ctx, letters }
}

/// Lexicographic order with `σ_1 < … < σ_{n-1} < x_1 < … < x_{n-1}`; a proper
/// prefix precedes its extensions.
pub fn lex_compare(a: &PositiveWord, b: &PositiveWord) -> Result<Ordering> {
    a.ctx().ensure_same(b.ctx())?;
    let ctx = a.ctx();
    let ka = a.letters().iter().map(|l| l.code(ctx));
    let kb = b.letters().iter().map(|l| l.code(ctx));
    Ok(ka.cmp(kb))
}

/// Group inverse of a braid word.
pub fn invert(w: &Word) -> Result<Word> {
    let letters =
        w.letters.iter().rev().map(|l| l.inverse().ok_or(Error::NonInvertible)).collect::<Result<Vec<_>>>()?;
    Ok(Word { ctx: w.ctx, letters })
}
