mod common;

use std::collections::HashMap;

use common::{class, delta, pos, positive_words, random_mixed, random_positive, reflect, respell, word, Tok, Toks};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use singbraid::garside::{reconstruct, reconstruct_greedy};
use singbraid::{Engine, NormalForm, Side};

#[test]
fn respellings_share_a_normal_form() {
    let e = Engine::new();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let len = rng.gen_range(0..=8);
        let w = random_mixed(&mut rng, 3, len);
        let nf = e.normal_form(&word(&w, 3)).unwrap();
        for _ in 0..3 {
            let v = respell(&mut rng, &w, 3, 6);
            assert_eq!(e.normal_form(&word(&v, 3)).unwrap(), nf, "{} vs {}", common::to_text(&w), common::to_text(&v));
        }
    }
    for _ in 0..100 {
        let w = random_positive(&mut rng, 4, 7);
        let nf = e.normal_form(&word(&w, 4)).unwrap();
        let v = respell(&mut rng, &w, 4, 4);
        assert_eq!(e.normal_form(&word(&v, 4)).unwrap(), nf);
    }
}

#[test]
fn reconstruction_is_sound() {
    let e = Engine::new();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..300 {
        let w = word(&random_mixed(&mut rng, 3, 8), 3);
        let nf = e.normal_form(&w).unwrap();
        let back = reconstruct(&nf);
        assert!(e.equal(&back, &w).unwrap());
        assert_eq!(e.normal_form(&back).unwrap(), nf);
        // The base is never divisible by Δ.
        assert!(e.left_divide(&nf.base, &singbraid::garside::delta(nf.ctx)).unwrap().is_none());
    }
}

#[test]
fn distinct_permutations_or_degrees_mean_distinct_elements() {
    let e = Engine::new();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..300 {
        let u = random_mixed(&mut rng, 3, 6);
        let v = random_mixed(&mut rng, 3, 6);
        let eq = e.equal(&word(&u, 3), &word(&v, 3)).unwrap();
        if eq {
            assert_eq!(common::permutation(&u, 3), common::permutation(&v, 3));
            assert_eq!(word(&u, 3).degrees(), word(&v, 3).degrees());
        }
    }
}

/// Positive words are equal in the group-like monoid iff they are positively
/// equivalent: the partition by normal form is the partition by class.
#[test]
fn embedding_exhaustive_n3() {
    let e = Engine::new();
    let n = 3;
    for len in 0..=6 {
        let mut by_nf: HashMap<NormalForm, Toks> = HashMap::new();
        for w in positive_words(n, len) {
            let nf = e.normal_form(&word(&w, n)).unwrap();
            let least = common::least(&w, n);
            let first = by_nf.entry(nf).or_insert_with(|| least.clone());
            assert_eq!(*first, least, "{}", common::to_text(&w));
        }
        let classes: std::collections::HashSet<Toks> =
            positive_words(n, len).iter().map(|w| common::least(w, n)).collect();
        assert_eq!(by_nf.len(), classes.len(), "length {len}");
    }
}

/// Δ left-divides a positive word iff every σ_i does.
#[test]
fn delta_divisibility_exhaustive_n3() {
    let e = Engine::new();
    let n = 3;
    let d = delta(n);
    for len in 0..=6 {
        for w in positive_words(n, len) {
            let c = class(&w, n);
            let by_all = (1..n as u8).all(|i| c.iter().any(|m| m.first() == Some(&Tok::S(i))));
            let by_delta = c.iter().any(|m| m.starts_with(&d));
            assert_eq!(by_all, by_delta, "{}", common::to_text(&w));
            let lib = e.left_divide(&pos(&w, n), &pos(&d, n)).unwrap().is_some();
            assert_eq!(lib, by_delta);
        }
    }
}

#[test]
fn delta_commutes_by_reflection() {
    let e = Engine::new();
    for n in 2..=6 {
        let d = delta(n);
        for i in 1..n as u8 {
            for g in [Tok::S(i), Tok::X(i)] {
                let lhs = common::cat(&[&[g], &d]);
                let rhs = common::cat(&[&d, &reflect(&[g], n)]);
                assert!(e.positively_equal(&pos(&lhs, n), &pos(&rhs, n)).unwrap(), "n={n} {g:?}");
                if n <= 4 {
                    assert!(class(&lhs, n).contains(&rhs));
                }
            }
        }
    }
}

#[test]
fn greedy_forms_are_class_invariants() {
    let e = Engine::new();
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for (n, count) in [(3, 120), (4, 60)] {
        for _ in 0..count {
            let len = rng.gen_range(1..=7);
            let w = random_positive(&mut rng, n, len);
            for side in [Side::Left, Side::Right] {
                let g = e.greedy_form(&word(&w, n), side).unwrap();
                assert!(e.equal(&reconstruct_greedy(&g), &word(&w, n)).unwrap());
                for m in class(&w, n).iter().take(200) {
                    assert_eq!(e.greedy_form(&word(m, n), side).unwrap(), g);
                }
            }
        }
    }
}

#[test]
fn greedy_fragments_are_permutation_braids() {
    let e = Engine::new();
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..100 {
        let w = random_positive(&mut rng, 4, 8);
        let g = e.greedy_form(&word(&w, 4), Side::Left).unwrap();
        for (k, b) in g.blocks.iter().enumerate() {
            for f in &b.fragments {
                assert!(singbraid::garside::is_permutation_braid(f).unwrap());
                assert!(!f.is_empty());
            }
            // Blocks other than the last end with singular letters.
            if k + 1 < g.blocks.len() {
                assert!(!b.xs.is_empty());
            }
        }
    }
}

#[test]
fn delta_squared_is_central() {
    let e = Engine::new();
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for (n, mixed) in [(3, true), (4, false)] {
        let d2 = common::cat(&[&delta(n), &delta(n)]);
        for _ in 0..40 {
            let len = rng.gen_range(0..=8);
            let w = if mixed { random_mixed(&mut rng, n, len) } else { random_positive(&mut rng, n, len) };
            let l = word(&common::cat(&[&d2, &w]), n);
            let r = word(&common::cat(&[&w, &d2]), n);
            assert!(e.equal(&l, &r).unwrap());
        }
    }
    let d = delta(3);
    let l = word(&common::cat(&[&d, &[Tok::S(1)]]), 3);
    let r = word(&common::cat(&[&[Tok::S(1)], &d]), 3);
    assert!(!e.equal(&l, &r).unwrap());
}

#[test]
fn two_strands_are_classified_by_degrees() {
    let e = Engine::new();
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    for _ in 0..300 {
        let (lu, lv) = (rng.gen_range(0..=10), rng.gen_range(0..=10));
        let u = random_mixed(&mut rng, 2, lu);
        let v = random_mixed(&mut rng, 2, lv);
        let (u, v) = (word(&u, 2), word(&v, 2));
        assert_eq!(e.equal(&u, &v).unwrap(), u.degrees() == v.degrees());
    }
}
