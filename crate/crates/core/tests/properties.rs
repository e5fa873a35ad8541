use h2lyndon::freegrp::GroupWord;
use h2lyndon::matgrp::{rho, rho_by_generators};
use h2lyndon::series::{eps, magnus, Modulus};
use h2lyndon::shufalg::{infiltration, reversal_in_span, shuffle};
use h2lyndon::words::{alp_cmp, is_lyndon, lyndon_words, preceq_cmp, standard_factorization, Alphabet, Letter, Word};
use proptest::prelude::*;
use std::cmp::Ordering;

fn group_word(letters: u8, max_len: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((0..letters, prop_oneof![-3i64..=-1, 1i64..=3]), 0..=max_len)
        .prop_map(GroupWord::from_syllables)
}

fn word(letters: u8, min_len: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..letters, min_len..=max_len).prop_map(|v| Word::from_slice(&v))
}

fn small_modulus() -> impl Strategy<Value = Modulus> {
    prop_oneof![(Just(2u64), 1u32..=9), (Just(3u64), 1u32..=5), (Just(5u64), 1u32..=4)]
        .prop_map(|(p, k)| Modulus::new(p, k).unwrap())
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn group_multiplication_is_associative(a in group_word(3, 6), b in group_word(3, 6), c in group_word(3, 6)) {
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
    }

    #[test]
    fn identity_and_inverse_laws(a in group_word(3, 8)) {
        let e = GroupWord::identity();
        prop_assert_eq!(&a.multiply(&e), &a);
        prop_assert_eq!(&e.multiply(&a), &a);
        prop_assert!(a.multiply(&a.inverse()).is_identity());
        prop_assert!(a.inverse().multiply(&a).is_identity());
        prop_assert_eq!(a.inverse().inverse(), a);
    }

    #[test]
    fn powers_add_exponents(a in group_word(2, 4), i in -4i64..=4, j in -4i64..=4) {
        prop_assert_eq!(a.power(i).multiply(&a.power(j)), a.power(i + j));
    }

    #[test]
    fn magnus_is_multiplicative(g in group_word(3, 12), h in group_word(3, 12), m in small_modulus(), d in 1usize..=4) {
        let product = magnus(&g, m, d).mul(&magnus(&h, m, d)).unwrap();
        prop_assert_eq!(magnus(&g.multiply(&h), m, d), product);
    }

    #[test]
    fn magnus_of_inverse_is_series_inverse(g in group_word(3, 8), m in small_modulus(), d in 1usize..=4) {
        prop_assert_eq!(magnus(&g.inverse(), m, d), magnus(&g, m, d).invert().unwrap());
    }

    #[test]
    fn rho_is_a_homomorphism(w in word(3, 1, 3), g in group_word(3, 8), h in group_word(3, 8), m in small_modulus()) {
        let gh = rho(&w, &g.multiply(&h), m);
        prop_assert_eq!(&gh, &rho(&w, &g, m).mul(&rho(&w, &h, m)).unwrap());
        prop_assert_eq!(&gh, &rho_by_generators(&w, &g.multiply(&h), m));
    }

    #[test]
    fn letter_coefficient_is_additive(g in group_word(3, 10), h in group_word(3, 10), x in 0u8..3, m in small_modulus()) {
        let x = Word::letter(x);
        let sum = m.add(eps(&g, &x, m).value(), eps(&h, &x, m).value());
        prop_assert_eq!(eps(&g.multiply(&h), &x, m).value(), sum);
    }

    #[test]
    fn lyndon_iff_smaller_than_rotations(w in word(3, 1, 8)) {
        let by_rotation = (1..w.len()).all(|i| alp_cmp(&w, &w.rotation(i)) == Ordering::Less);
        prop_assert_eq!(is_lyndon(&w), by_rotation);
    }

    #[test]
    fn shuffle_is_top_part_of_infiltration(u in word(3, 1, 3), v in word(3, 1, 3)) {
        let top = infiltration(&u, &v).unwrap().homogeneous_part(u.len() + v.len());
        let sh = shuffle(&u, &v).unwrap();
        prop_assert_eq!(&sh, &top);
        prop_assert_eq!(sh.coefficient_sum(), binomial(u.len() + v.len(), u.len()));
    }

    #[test]
    fn shuffle_is_commutative(u in word(3, 1, 4), v in word(3, 1, 4)) {
        prop_assert_eq!(shuffle(&u, &v).unwrap(), shuffle(&v, &u).unwrap());
        prop_assert_eq!(infiltration(&u, &v).unwrap(), infiltration(&v, &u).unwrap());
    }
}

#[test]
fn lyndon_words_are_increasing_and_factor_into_lyndon_words() {
    for letters in ["xy", "xyz"] {
        let a = Alphabet::parse(letters).unwrap();
        let all = lyndon_words(&a, if letters.len() == 2 { 8 } else { 6 });
        for pair in all.windows(2) {
            assert_eq!(preceq_cmp(pair[0].word(), pair[1].word()), Ordering::Less);
        }
        for w in all.iter().filter(|w| w.len() >= 2) {
            let (l, r) = standard_factorization(w).unwrap();
            assert!(is_lyndon(l.word()) && is_lyndon(r.word()));
            assert_eq!(&l.word().concat(r.word()), w.word());
        }
    }
}

#[test]
fn reversal_lies_in_shuffle_span() {
    for k in 2..=5usize {
        let letters: Vec<Letter> = (0..k as Letter).collect();
        for p in [7u64, 11] {
            assert!(reversal_in_span(&letters, p).unwrap(), "k = {k}, p = {p}");
        }
    }
}
