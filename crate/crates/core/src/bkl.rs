//! The band-generator presentation.
//!
//! `a_ts` crosses strands `t` and `s` in front of the strands between them,
//! `b_qp` is the same band with a singular point. Band words have no
//! intrinsic equality here: two band words are equal iff their Artin images
//! are, which is decided by [`Engine::equal`].

use std::fmt;
use std::thread;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rewrite::Engine;
use crate::words::{Context, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BandKind {
    APos,
    ANeg,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BandLetter {
    pub kind: BandKind,
    pub t: usize,
    pub s: usize,
}

impl BandLetter {
    pub fn a(t: usize, s: usize) -> Self {
        BandLetter { kind: BandKind::APos, t, s }
    }

    pub fn a_inv(t: usize, s: usize) -> Self {
        BandLetter { kind: BandKind::ANeg, t, s }
    }

    pub fn b(t: usize, s: usize) -> Self {
        BandLetter { kind: BandKind::B, t, s }
    }

    pub fn check(self, ctx: Context) -> Result<Self> {
        let n = ctx.strands();
        if 1 <= self.s && self.s < self.t && self.t <= n {
            Ok(self)
        } else {
            Err(Error::BandIndexOutOfRange { t: self.t, s: self.s, n })
        }
    }

    /// `a_ts ↦ a_ts⁻¹` and back; `None` for the singular band.
    pub fn inverse(self) -> Option<Self> {
        match self.kind {
            BandKind::APos => Some(BandLetter { kind: BandKind::ANeg, ..self }),
            BandKind::ANeg => Some(BandLetter { kind: BandKind::APos, ..self }),
            BandKind::B => None,
        }
    }

    fn parse_token(token: &str, position: usize) -> Result<Self> {
        let malformed = || Error::MalformedToken { token: token.to_owned(), position };
        let (head, rest) = token.split_at_checked(1).ok_or_else(malformed)?;
        let (body, inverse) = match rest.strip_suffix('-') {
            Some(body) => (body, true),
            None => (rest, false),
        };
        let inner = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(malformed)?;
        let (t, s) = inner.split_once(',').ok_or_else(malformed)?;
        let index = |v: &str| -> Result<usize> {
            if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            v.parse().map_err(|_| malformed())
        };
        let (t, s) = (index(t)?, index(s)?);
        let kind = match (head, inverse) {
            ("a", false) => BandKind::APos,
            ("a", true) => BandKind::ANeg,
            ("b", false) => BandKind::B,
            _ => return Err(malformed()),
        };
        Ok(BandLetter { kind, t, s })
    }
}

impl fmt::Display for BandLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BandKind::APos => write!(f, "a[{},{}]", self.t, self.s),
            BandKind::ANeg => write!(f, "a[{},{}]-", self.t, self.s),
            BandKind::B => write!(f, "b[{},{}]", self.t, self.s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BandWord {
    ctx: Context,
    letters: Vec<BandLetter>,
}

impl BandWord {
    pub fn new(ctx: Context, letters: Vec<BandLetter>) -> Result<Self> {
        for l in &letters {
            l.check(ctx)?;
        }
        Ok(BandWord { ctx, letters })
    }

    pub fn identity(ctx: Context) -> Self {
        BandWord { ctx, letters: Vec::new() }
    }

    /// Whitespace-separated `a[t,s]`, `a[t,s]-` and `b[q,p]` tokens.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let ctx = Context::new(n)?;
        let letters = text
            .split_whitespace()
            .enumerate()
            .map(|(position, token)| BandLetter::parse_token(token, position)?.check(ctx))
            .collect::<Result<Vec<_>>>()?;
        Ok(BandWord { ctx, letters })
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn letters(&self) -> &[BandLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BandWord) -> Result<BandWord> {
        self.ctx.ensure_same(other.ctx)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BandWord { ctx: self.ctx, letters })
    }

    fn push(mut self, l: BandLetter) -> Self {
        self.letters.push(l);
        self
    }
}

impl fmt::Display for BandWord {
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

impl Serialize for BandWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn artin_letters(l: BandLetter, out: &mut Vec<Letter>) {
    out.extend((l.s + 1..l.t).rev().map(Letter::sigma));
    out.push(match l.kind {
        BandKind::APos => Letter::sigma(l.s),
        BandKind::ANeg => Letter::sigma_inv(l.s),
        BandKind::B => Letter::x(l.s),
    });
    out.extend((l.s + 1..l.t).map(Letter::sigma_inv));
}

/// Letterwise substitution of the Artin spelling of each band letter.
pub fn artin_of(bw: &BandWord) -> Word {
    let mut letters = Vec::new();
    for &l in &bw.letters {
        artin_letters(l, &mut letters);
    }
    Word::new(bw.ctx, letters).expect("band indices were checked")
}

/// `σ_i ↦ a_(i+1)i`, `σ_i⁻¹ ↦ a_(i+1)i⁻¹`, `x_i ↦ b_(i+1)i`.
pub fn band_of_artin(w: &Word) -> BandWord {
    use crate::words::LetterKind;
    let letters = w
        .letters()
        .iter()
        .map(|l| {
            let (t, s) = (l.index + 1, l.index);
            match l.kind {
                LetterKind::SigmaPos => BandLetter::a(t, s),
                LetterKind::SigmaNeg => BandLetter::a_inv(t, s),
                LetterKind::X => BandLetter::b(t, s),
            }
        })
        .collect();
    BandWord { ctx: w.ctx(), letters }
}

/// `a_{k(k-1)} … a_{(lo+1)lo}` for `k` running from `hi` down to `lo + 1`.
fn descending_run(word: BandWord, hi: usize, lo: usize) -> BandWord {
    (lo + 1..=hi).rev().fold(word, |w, k| w.push(BandLetter::a(k, k - 1)))
}

/// `δ = a_{n(n-1)} a_{(n-1)(n-2)} … a_21`.
pub fn delta_band(n: usize) -> Result<BandWord> {
    let ctx = Context::new(n)?;
    Ok(descending_run(BandWord::identity(ctx), n, 1))
}

/// The spelling of `δ` that begins with `a_ts`:
/// `a_ts · a_{n(n-1)} … a_{(t+2)(t+1)} · a_{(t+1)s} · a_{t(t-1)} … a_{(s+2)(s+1)} · a_{s(s-1)} … a_21`,
/// where `a_{(t+1)s}` is absent when `t = n`.
pub fn delta_left_factor(t: usize, s: usize, n: usize) -> Result<BandWord> {
    let ctx = Context::new(n)?;
    BandLetter::a(t, s).check(ctx)?;
    let mut w = BandWord::identity(ctx).push(BandLetter::a(t, s));
    w = descending_run(w, n, t + 1);
    if t < n {
        w = w.push(BandLetter::a(t + 1, s));
    }
    w = descending_run(w, t, s + 1);
    Ok(descending_run(w, s, 1))
}

/// The letter `l'` with `l · δ = δ · l'`.
pub fn band_delta_commute(l: BandLetter, n: usize) -> Result<BandLetter> {
    let ctx = Context::new(n)?;
    l.check(ctx)?;
    let (t, s) = if l.t < n { (l.t + 1, l.s + 1) } else { (l.s + 1, 1) };
    Ok(BandLetter { t, s, ..l })
}

impl Engine {
    pub fn band_equal(&self, u: &BandWord, v: &BandWord) -> Result<bool> {
        u.ctx.ensure_same(v.ctx)?;
        self.equal(&artin_of(u), &artin_of(v))
    }
}

/// One relation family checked by [`verify_presentation`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub name: &'static str,
    pub instances: usize,
    /// Instances whose two sides differ, as `"lhs = rhs"`.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub n: usize,
    pub families: Vec<FamilyReport>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.failures.is_empty())
    }

    pub fn instances(&self) -> usize {
        self.families.iter().map(|f| f.instances).sum()
    }
}

type Instance = (BandWord, BandWord);

fn far_apart(t: usize, s: usize, r: usize, q: usize) -> bool {
    let (t, s, r, q) = (t as i64, s as i64, r as i64, q as i64);
    (t - r) * (t - q) * (s - r) * (s - q) > 0
}

/// Every relation family of the band presentation, followed by the Artin
/// relations rewritten in band letters, each with all its instances at `n`.
pub fn relation_families(ctx: Context) -> Vec<(&'static str, Vec<Instance>)> {
    let n = ctx.strands();
    let word = |ls: &[BandLetter]| BandWord { ctx, letters: ls.to_vec() };
    let a = BandLetter::a;
    let ai = BandLetter::a_inv;
    let b = BandLetter::b;
    let pairs: Vec<(usize, usize)> = (2..=n).flat_map(|t| (1..t).map(move |s| (t, s))).collect();
    let triples: Vec<(usize, usize, usize)> =
        (3..=n).flat_map(|t| (2..t).flat_map(move |s| (1..s).map(move |r| (t, s, r)))).collect();
    let far_pairs: Vec<(usize, usize, usize, usize)> = pairs
        .iter()
        .flat_map(|&(t, s)| pairs.iter().map(move |&(r, q)| (t, s, r, q)))
        .filter(|&(t, s, r, q)| far_apart(t, s, r, q))
        .collect();
    let gens: Vec<usize> = (1..n).collect();

    let mut families: Vec<(&'static str, Vec<Instance>)> = Vec::new();
    let mut family = |name, inst: Vec<Instance>| families.push((name, inst));

    family(
        "far-aa",
        far_pairs.iter().map(|&(t, s, r, q)| (word(&[a(t, s), a(r, q)]), word(&[a(r, q), a(t, s)]))).collect(),
    );
    family(
        "triangle",
        triples
            .iter()
            .flat_map(|&(t, s, r)| {
                [
                    (word(&[a(t, s), a(s, r)]), word(&[a(t, r), a(t, s)])),
                    (word(&[a(t, r), a(t, s)]), word(&[a(s, r), a(t, r)])),
                ]
            })
            .collect(),
    );
    family(
        "inverse",
        pairs
            .iter()
            .flat_map(|&(t, s)| [(word(&[a(t, s), ai(t, s)]), word(&[])), (word(&[ai(t, s), a(t, s)]), word(&[]))])
            .collect(),
    );
    family(
        "far-ab",
        far_pairs.iter().map(|&(t, s, r, q)| (word(&[a(t, s), b(r, q)]), word(&[b(r, q), a(t, s)]))).collect(),
    );
    family("same-ab", pairs.iter().map(|&(t, s)| (word(&[a(t, s), b(t, s)]), word(&[b(t, s), a(t, s)]))).collect());
    family(
        "slide-ab-upper",
        triples.iter().map(|&(t, s, r)| (word(&[a(t, s), b(s, r)]), word(&[b(t, r), a(t, s)]))).collect(),
    );
    family(
        "slide-ab-lower",
        triples.iter().map(|&(t, s, r)| (word(&[a(s, r), b(t, r)]), word(&[b(t, s), a(s, r)]))).collect(),
    );
    family(
        "slide-ab-outer",
        triples.iter().map(|&(t, s, r)| (word(&[a(t, r), b(t, s)]), word(&[b(s, r), a(t, r)]))).collect(),
    );
    family(
        "far-bb",
        far_pairs.iter().map(|&(t, s, r, q)| (word(&[b(t, s), b(r, q)]), word(&[b(r, q), b(t, s)]))).collect(),
    );

    let adjacent = |i: usize| a(i + 1, i);
    let gen_pairs: Vec<(usize, usize)> = gens.iter().flat_map(|&i| gens.iter().map(move |&j| (i, j))).collect();
    family(
        "artin-far-commute",
        gen_pairs
            .iter()
            .filter(|&&(i, j)| i.abs_diff(j) > 1)
            .map(|&(i, j)| (word(&[adjacent(i), adjacent(j)]), word(&[adjacent(j), adjacent(i)])))
            .collect(),
    );
    family(
        "artin-braid",
        gens.iter()
            .filter(|&&i| i + 2 <= n)
            .map(|&i| {
                let (p, q) = (adjacent(i), adjacent(i + 1));
                (word(&[p, q, p]), word(&[q, p, q]))
            })
            .collect(),
    );
    // a_ts, a_ts⁻¹ and b_qp spelled by conjugating the adjacent generator.
    let conjugated = |mid: BandLetter, t: usize, s: usize| {
        let mut ls: Vec<BandLetter> = (s + 1..t).rev().map(|k| a(k + 1, k)).collect();
        ls.push(mid);
        ls.extend((s + 1..t).map(|k| ai(k + 1, k)));
        word(&ls)
    };
    family("band-a", pairs.iter().map(|&(t, s)| (word(&[a(t, s)]), conjugated(a(s + 1, s), t, s))).collect());
    family("band-a-inverse", pairs.iter().map(|&(t, s)| (word(&[ai(t, s)]), conjugated(ai(s + 1, s), t, s))).collect());
    family(
        "artin-far-commute-x",
        gen_pairs
            .iter()
            .filter(|&&(i, j)| i.abs_diff(j) > 1)
            .map(|&(i, j)| (word(&[b(i + 1, i), b(j + 1, j)]), word(&[b(j + 1, j), b(i + 1, i)])))
            .collect(),
    );
    family(
        "artin-commute-sigma-x",
        gen_pairs
            .iter()
            .filter(|&&(i, j)| i.abs_diff(j) != 1)
            .map(|&(i, j)| (word(&[b(i + 1, i), adjacent(j)]), word(&[adjacent(j), b(i + 1, i)])))
            .collect(),
    );
    family(
        "artin-slide-x-up",
        gens.iter()
            .filter(|&&i| i + 2 <= n)
            .map(|&i| {
                let (p, q) = (adjacent(i), adjacent(i + 1));
                (word(&[p, q, b(i + 1, i)]), word(&[b(i + 2, i + 1), p, q]))
            })
            .collect(),
    );
    family(
        "artin-slide-x-down",
        gens.iter()
            .filter(|&&i| i + 2 <= n)
            .map(|&i| {
                let (p, q) = (adjacent(i), adjacent(i + 1));
                (word(&[q, p, b(i + 2, i + 1)]), word(&[b(i + 1, i), q, p]))
            })
            .collect(),
    );
    family("band-b", pairs.iter().map(|&(q, p)| (word(&[b(q, p)]), conjugated(b(p + 1, p), q, p))).collect());

    families
}

impl Engine {
    /// Checks every relation instance by comparing Artin normal forms.
    /// Families are checked on separate threads.
    pub fn verify_presentation(&self, n: usize) -> Result<PresentationReport> {
        let ctx = Context::new(n)?;
        self.check_bound(ctx)?;
        let families = relation_families(ctx);
        let reports: Vec<Result<FamilyReport>> = thread::scope(|scope| {
            let handles: Vec<_> = families
                .iter()
                .map(|(name, instances)| {
                    scope.spawn(move || -> Result<FamilyReport> {
                        let mut failures = Vec::new();
                        for (lhs, rhs) in instances {
                            if !self.band_equal(lhs, rhs)? {
                                failures.push(format!("{lhs} = {rhs}"));
                            }
                        }
                        Ok(FamilyReport { name, instances: instances.len(), failures })
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("verifier thread panicked")).collect()
        });
        Ok(PresentationReport { n, families: reports.into_iter().collect::<Result<_>>()? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(text: &str, n: usize) -> BandWord {
        BandWord::parse(text, n).unwrap()
    }

    fn w(text: &str, n: usize) -> Word {
        Word::parse(text, n).unwrap()
    }

    #[test]
    fn token_round_trip() {
        let text = "a[3,1] a[2,1]- b[4,2]";
        assert_eq!(bw(text, 4).to_string(), text);
        assert!(bw("", 3).is_empty());
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        for bad in ["a3,1", "a[3,1", "c[2,1]", "b[2,1]-", "a[,1]", "a[2,+1]", "a[2,1]--", "a"] {
            assert!(matches!(BandWord::parse(bad, 4), Err(Error::MalformedToken { .. })), "{bad}");
        }
        assert!(matches!(BandWord::parse("a[1,2]", 3), Err(Error::BandIndexOutOfRange { t: 1, s: 2, n: 3 })));
        assert!(matches!(BandWord::parse("b[4,1]", 3), Err(Error::BandIndexOutOfRange { .. })));
        assert!(matches!(BandWord::parse("a[2,0]", 3), Err(Error::BandIndexOutOfRange { .. })));
    }

    #[test]
    fn artin_of_examples() {
        assert_eq!(artin_of(&bw("a[2,1]", 3)), w("s1", 3));
        assert_eq!(artin_of(&bw("a[3,1]", 3)), w("s2 s1 s2-", 3));
        assert_eq!(artin_of(&bw("a[3,1]-", 3)), w("s2 s1- s2-", 3));
        assert_eq!(artin_of(&bw("b[3,1]", 3)), w("s2 x1 s2-", 3));
        assert_eq!(artin_of(&bw("b[4,1]", 4)), w("s3 s2 x1 s2- s3-", 4));
    }

    #[test]
    fn band_of_artin_examples() {
        assert_eq!(band_of_artin(&w("s2", 3)), bw("a[3,2]", 3));
        assert_eq!(band_of_artin(&w("x1", 3)), bw("b[2,1]", 3));
        assert_eq!(band_of_artin(&w("s1-", 3)), bw("a[2,1]-", 3));
        assert!(band_of_artin(&w("", 3)).is_empty());
        assert_eq!(artin_of(&band_of_artin(&w("s1 x2 s2-", 3))), w("s1 x2 s2-", 3));
    }

    #[test]
    fn delta_band_examples() {
        assert_eq!(delta_band(2).unwrap(), bw("a[2,1]", 2));
        assert_eq!(delta_band(3).unwrap(), bw("a[3,2] a[2,1]", 3));
        assert_eq!(artin_of(&delta_band(4).unwrap()), w("s3 s2 s1", 4));
        assert!(matches!(delta_band(1), Err(Error::TooFewStrands(1))));
    }

    #[test]
    fn delta_left_factor_examples() {
        assert_eq!(delta_left_factor(2, 1, 2).unwrap(), bw("a[2,1]", 2));
        assert_eq!(delta_left_factor(3, 1, 3).unwrap(), bw("a[3,1] a[3,2]", 3));
        assert_eq!(delta_left_factor(2, 1, 3).unwrap(), bw("a[2,1] a[3,1]", 3));
        let e = Engine::new();
        for n in 2..=4 {
            let delta = delta_band(n).unwrap();
            for t in 2..=n {
                for s in 1..t {
                    let f = delta_left_factor(t, s, n).unwrap();
                    assert_eq!(f.len(), n - 1);
                    assert_eq!(f.letters()[0], BandLetter::a(t, s));
                    assert!(e.band_equal(&f, &delta).unwrap(), "({t},{s}) n={n}: {f}");
                }
            }
        }
        assert!(matches!(delta_left_factor(3, 3, 4), Err(Error::BandIndexOutOfRange { .. })));
    }

    #[test]
    fn band_delta_commute_examples() {
        assert_eq!(band_delta_commute(BandLetter::b(2, 1), 3).unwrap(), BandLetter::b(3, 2));
        assert_eq!(band_delta_commute(BandLetter::b(3, 1), 3).unwrap(), BandLetter::b(2, 1));
        // The wrap rule (n,s) ↦ (s+1,1): σ2 · σ2σ1 = σ2σ1 · σ2σ1σ2⁻¹.
        assert_eq!(band_delta_commute(BandLetter::a(3, 2), 3).unwrap(), BandLetter::a(3, 1));
        assert_eq!(band_delta_commute(BandLetter::a_inv(3, 1), 3).unwrap(), BandLetter::a_inv(2, 1));

        let e = Engine::new();
        let delta = delta_band(3).unwrap();
        let lhs = bw("a[3,2]", 3).concat(&delta).unwrap();
        assert!(e.band_equal(&lhs, &delta.concat(&bw("a[3,1]", 3)).unwrap()).unwrap());
        assert!(!e.band_equal(&lhs, &delta.concat(&bw("a[2,1]", 3)).unwrap()).unwrap());
    }

    #[test]
    fn band_equal_examples() {
        let e = Engine::new();
        assert!(e.band_equal(&bw("a[2,1] a[2,1]-", 3), &bw("", 3)).unwrap());
        assert!(e.band_equal(&bw("a[3,2] a[2,1]", 3), &bw("a[3,1] a[3,2]", 3)).unwrap());
        assert!(!e.band_equal(&bw("b[2,1]", 3), &bw("b[3,2]", 3)).unwrap());
        assert!(matches!(e.band_equal(&bw("", 3), &bw("", 4)), Err(Error::ContextMismatch { .. })));
    }

    #[test]
    fn presentation_holds_for_small_n() {
        let e = Engine::new();
        let r2 = e.verify_presentation(2).unwrap();
        assert!(r2.passed());
        let r3 = e.verify_presentation(3).unwrap();
        assert!(r3.passed(), "{r3:?}");
        let find = |name: &str| r3.families.iter().find(|f| f.name == name).unwrap().instances;
        assert_eq!(find("same-ab"), 3);
        assert_eq!(find("slide-ab-upper"), 1);
        assert_eq!(find("far-aa"), 0);
        assert_eq!(r3.families.len(), 18);
    }

    #[test]
    fn verifier_detects_false_relations() {
        let e = Engine::new();
        let ctx = Context::new(3).unwrap();
        let bad = (bw("a[3,2] b[2,1]", 3), bw("b[2,1] a[3,2]", 3));
        assert!(!e.band_equal(&bad.0, &bad.1).unwrap());
        assert!(relation_families(ctx).iter().all(|(_, inst)| !inst.contains(&bad)));
    }

    #[test]
    fn report_json_shape() {
        let e = Engine::new();
        let json = serde_json::to_value(e.verify_presentation(2).unwrap()).unwrap();
        assert_eq!(json["n"], 2);
        assert_eq!(json["families"][0]["name"], "far-aa");
        assert_eq!(json["families"][0]["instances"], 0);
        assert!(json["families"][0]["failures"].as_array().unwrap().is_empty());
    }
}
