//! Conjugacy under the unit group: `v = g⁻¹ u g` with `g` a braid.
//!
//! Summit sets are computed by closing the normal form of the input under
//! conjugation by every permutation braid, keeping only the highest power
//! seen so far.

use std::collections::{BTreeMap, VecDeque};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::garside::{all_simple_codes, reconstruct, reflect_codes, simple_complement_codes, NormalForm};
use crate::rewrite::Engine;
use crate::words::{Context, PositiveWord, Word};

/// Units are exactly the braids: no singular letter.
pub fn is_unit(w: &Word) -> bool {
    !w.has_x()
}

/// `g⁻¹ · w · g`, unreduced.
pub fn conjugate(w: &Word, g: &Word) -> Result<Word> {
    g.invert()?.concat(w)?.concat(g)
}

/// Every permutation braid on `n` strands, canonically spelled, ordered by
/// length and then lexicographically. There are `n!` of them.
pub fn simple_elements(ctx: Context, bound: usize) -> Result<Vec<PositiveWord>> {
    if ctx.strands() > bound {
        return Err(Error::BoundExceeded { n: ctx.strands(), bound });
    }
    let mut words = all_simple_codes(ctx);
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(words.iter().map(|w| PositiveWord::from_codes(ctx, w)).collect())
}

/// Highest-power normal forms in a conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummitSet {
    pub ctx: Context,
    pub summit_power: i64,
    /// Sorted by base in the letter order.
    pub members: Vec<NormalForm>,
    /// `witnesses[k]` conjugates the input to `members[k]`.
    pub witnesses: Vec<Word>,
}

impl SummitSet {
    pub fn same_members(&self, other: &SummitSet) -> bool {
        self.ctx == other.ctx && self.summit_power == other.summit_power && self.members == other.members
    }
}

impl Serialize for SummitSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SummitSet", 3)?;
        st.serialize_field("n", &self.ctx.strands())?;
        st.serialize_field("summit_power", &self.summit_power)?;
        st.serialize_field("members", &self.members)?;
        st.end()
    }
}

impl Engine {
    /// `s⁻¹ · Δ^m A · s` for a permutation braid `s`, in normal form.
    ///
    /// With `s·D = Δ` we have `s⁻¹ = D Δ⁻¹`, so the conjugate is
    /// `Δ^{m-1} · R^{m-1}(D) · A · s`.
    fn conjugate_by_simple(&self, nf: &NormalForm, s: &[u8], complement: &[u8]) -> Result<NormalForm> {
        let ctx = nf.ctx;
        let mut pos =
            if (nf.power - 1).rem_euclid(2) == 1 { reflect_codes(ctx, complement) } else { complement.to_vec() };
        pos.extend(nf.base.codes());
        pos.extend_from_slice(s);
        let (t, rest) = self.split_delta_codes(ctx, pos)?;
        let base = self.base_codes(ctx, &rest)?;
        Ok(NormalForm { ctx, power: nf.power - 1 + t as i64, base: PositiveWord::from_codes(ctx, &base) })
    }

    pub fn summit_set(&self, w: &Word) -> Result<SummitSet> {
        let ctx = w.ctx();
        self.check_bound(ctx)?;
        let simples: Vec<(Vec<u8>, Vec<u8>)> = simple_elements(ctx, self.strand_bound())?
            .into_iter()
            .filter(|s| !s.is_empty())
            .map(|s| {
                let codes = s.codes();
                let comp = simple_complement(ctx, &codes);
                (codes, comp)
            })
            .collect();

        let start = self.normal_form(w)?;
        let mut power = start.power;
        // base codes -> (normal form, conjugator from the input)
        let mut members: BTreeMap<Vec<u8>, (NormalForm, Word)> = BTreeMap::new();
        let mut queue: VecDeque<Vec<u8>> = VecDeque::new();
        members.insert(start.base.codes(), (start, Word::identity(ctx)));
        queue.push_back(members.keys().next().cloned().expect("just inserted"));

        while let Some(key) = queue.pop_front() {
            let Some((current, witness)) = members.get(&key).cloned() else {
                continue;
            };
            if current.power != power {
                continue;
            }
            for (s, comp) in &simples {
                let next = self.conjugate_by_simple(&current, s, comp)?;
                if next.power < power {
                    continue;
                }
                let conj = witness.concat(PositiveWord::from_codes(ctx, s).as_word())?;
                let k = next.base.codes();
                if next.power > power {
                    power = next.power;
                    members.clear();
                    queue.clear();
                    members.insert(k.clone(), (next, conj));
                    queue.push_back(k);
                    break;
                }
                if !members.contains_key(&k) {
                    if members.len() >= self.summit_cap() {
                        return Err(Error::cap(self.summit_cap()));
                    }
                    members.insert(k.clone(), (next, conj));
                    queue.push_back(k);
                }
            }
        }

        let (members, witnesses) = members.into_values().unzip();
        Ok(SummitSet { ctx, summit_power: power, members, witnesses })
    }

    /// Conjugacy decision: equal summit sets.
    pub fn conjugate_p(&self, u: &Word, v: &Word) -> Result<bool> {
        u.ctx().ensure_same(v.ctx())?;
        self.check_bound(u.ctx())?;
        if u.degrees() != v.degrees() {
            return Ok(false);
        }
        Ok(self.summit_set(u)?.same_members(&self.summit_set(v)?))
    }
}

fn simple_complement(ctx: Context, s: &[u8]) -> Vec<u8> {
    simple_complement_codes(ctx, s).expect("permutation braid")
}

/// Used by tests and the CLI: the witness conjugates the input into the member.
pub fn check_witness(engine: &Engine, input: &Word, set: &SummitSet, k: usize) -> Result<bool> {
    let conj = conjugate(input, &set.witnesses[k])?;
    engine.equal(&conj, &reconstruct(&set.members[k]))
}
