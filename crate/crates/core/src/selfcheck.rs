//! Small exhaustive consistency suites, run by `singbraid selfcheck`.
//!
//! Each suite walks every word up to a short length over one strand count and
//! cross-checks two procedures that should agree. They are cheap enough to
//! run for `n ≤ 4` in well under a second.

use std::collections::HashMap;

use serde::Serialize;

use crate::bkl::{band_delta_commute, delta_band, delta_left_factor, BandLetter, BandWord};
use crate::error::Result;
use crate::garside::{delta, reconstruct, reconstruct_greedy};
use crate::rewrite::{Engine, Side};
use crate::words::{Context, Letter, PositiveWord, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    /// First failing case, if any.
    pub failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// The defining relations of the monoid at `n`, one instance per index choice.
pub fn defining_relations(ctx: Context) -> Vec<(Word, Word)> {
    let n = ctx.strands();
    let w = |ls: &[Letter]| Word::new(ctx, ls.to_vec()).expect("indices in range");
    let (s, si, x) = (Letter::sigma, Letter::sigma_inv, Letter::x);
    let gens: Vec<usize> = (1..n).collect();
    let mut out = Vec::new();
    for &i in &gens {
        for &j in &gens {
            if i.abs_diff(j) > 1 {
                out.push((w(&[s(i), s(j)]), w(&[s(j), s(i)])));
                out.push((w(&[x(i), x(j)]), w(&[x(j), x(i)])));
            }
            if i.abs_diff(j) != 1 {
                out.push((w(&[x(i), s(j)]), w(&[s(j), x(i)])));
            }
        }
        if i + 1 < n {
            out.push((w(&[s(i), s(i + 1), s(i)]), w(&[s(i + 1), s(i), s(i + 1)])));
            out.push((w(&[s(i), s(i + 1), x(i)]), w(&[x(i + 1), s(i), s(i + 1)])));
            out.push((w(&[s(i + 1), s(i), x(i + 1)]), w(&[x(i), s(i + 1), s(i)])));
        }
        out.push((w(&[s(i), si(i)]), w(&[])));
        out.push((w(&[si(i), s(i)]), w(&[])));
    }
    out
}

/// Every word of exactly `len` letters over `alphabet`, in odometer order.
pub fn all_words(ctx: Context, alphabet: &[Letter], len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Letter>| {
                alphabet.iter().map(move |&l| {
                    let mut p = prefix.clone();
                    p.push(l);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(|ls| Word::new(ctx, ls).expect("alphabet in range")).collect()
}

pub fn positive_alphabet(ctx: Context) -> Vec<Letter> {
    let g = ctx.generators();
    (1..=g).map(Letter::sigma).chain((1..=g).map(Letter::x)).collect()
}

pub fn full_alphabet(ctx: Context) -> Vec<Letter> {
    let g = ctx.generators();
    let mut a = positive_alphabet(ctx);
    a.extend((1..=g).map(Letter::sigma_inv));
    a
}

struct Suite {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, cases: 0, failure: None }
    }

    fn check(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(case());
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult { name: self.name, cases: self.cases, failure: self.failure }
    }
}

/// Runs every suite at `n`. Errors from the engine (caps, bounds) abort.
pub fn run_suites(engine: &Engine, n: usize) -> Result<Vec<SuiteResult>> {
    let ctx = Context::new(n)?;
    let (short, mixed) = if n <= 3 { (4, 3) } else { (3, 2) };
    let mut results = Vec::new();

    let mut suite = Suite::new("defining-relations");
    for (l, r) in defining_relations(ctx) {
        suite.check(engine.equal(&l, &r)?, || format!("{l} = {r}"));
    }
    results.push(suite.finish());

    let mut suite = Suite::new("delta-commutes-by-reflection");
    let d = delta(ctx);
    for l in positive_alphabet(ctx) {
        let g = PositiveWord::new(ctx, vec![l])?;
        let ok = engine.positively_equal(&g.concat(&d)?, &d.concat(&g.reflect())?)?;
        suite.check(ok, || format!("{g}"));
    }
    results.push(suite.finish());

    let mut suite = Suite::new("normal-form-round-trip");
    for len in 0..=mixed {
        for w in all_words(ctx, &full_alphabet(ctx), len) {
            let nf = engine.normal_form(&w)?;
            let back = reconstruct(&nf);
            let ok = engine.normal_form(&back)? == nf && engine.equal(&back, &w)?;
            suite.check(ok, || format!("{w}"));
        }
    }
    results.push(suite.finish());

    // Positive words are equal in the monoid iff positively equivalent:
    // normal forms and class bases induce the same partition.
    let mut suite = Suite::new("positive-embedding");
    for len in 0..=short {
        let mut by_nf: HashMap<_, PositiveWord> = HashMap::new();
        let mut by_base: HashMap<PositiveWord, _> = HashMap::new();
        for w in all_words(ctx, &positive_alphabet(ctx), len) {
            let p = PositiveWord::try_from(w.clone())?;
            let nf = engine.normal_form(&w)?;
            let base = engine.base(&p)?;
            let first_by_nf = by_nf.entry(nf.clone()).or_insert_with(|| base.clone()).clone();
            let first_by_base = by_base.entry(base.clone()).or_insert_with(|| nf.clone()).clone();
            suite.check(first_by_nf == base && first_by_base == nf, || format!("{w}"));
        }
    }
    results.push(suite.finish());

    let mut suite = Suite::new("greedy-round-trip");
    for len in 0..=short {
        for w in all_words(ctx, &positive_alphabet(ctx), len) {
            for side in [Side::Left, Side::Right] {
                let g = engine.greedy_form(&w, side)?;
                suite.check(engine.equal(&reconstruct_greedy(&g), &w)?, || format!("{w} ({side:?})"));
            }
        }
    }
    results.push(suite.finish());

    if n <= engine.strand_bound() {
        let report = engine.verify_presentation(n)?;
        let mut suite = Suite::new("band-presentation");
        for f in &report.families {
            suite.cases += f.instances;
            if let Some(first) = f.failures.first() {
                suite.failure.get_or_insert_with(|| format!("{}: {first}", f.name));
            }
        }
        results.push(suite.finish());

        let mut suite = Suite::new("band-delta-laws");
        let db = delta_band(n)?;
        for t in 2..=n {
            for s in 1..t {
                let f = delta_left_factor(t, s, n)?;
                suite.check(engine.band_equal(&f, &db)?, || format!("left factor ({t},{s})"));
                for l in [BandLetter::a(t, s), BandLetter::a_inv(t, s), BandLetter::b(t, s)] {
                    let lw = BandWord::new(ctx, vec![l])?;
                    let rw = BandWord::new(ctx, vec![band_delta_commute(l, n)?])?;
                    let ok = engine.band_equal(&lw.concat(&db)?, &db.concat(&rw)?)?;
                    suite.check(ok, || format!("commute {l}"));
                }
            }
        }
        results.push(suite.finish());
    }

    Ok(results)
}
