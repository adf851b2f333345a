use proptest::prelude::*;
use wordramsey::index::FactorIndex;
use wordramsey::oracle;
use wordramsey::words::{psi, zimin_letter_at, Word, WordSource, ZiminDefinition};
use wordramsey::zimin::{build_u, build_v, concat_is_factor, eta, parse_factor, CanonicalFactor, FinSet};

fn canonical(k: u32) -> impl Strategy<Value = CanonicalFactor> {
    let mask = (1u64 << (k - 1)) - 1;
    (any::<u64>(), any::<u64>()).prop_map(move |(a, b)| {
        CanonicalFactor::new(FinSet::from_bits(a & mask), k, FinSet::from_bits(b & mask)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_inverts_build(c in (1u32..=16).prop_flat_map(canonical)) {
        let w = c.build().unwrap();
        prop_assert_eq!(w.len() as u128, c.len());
        prop_assert_eq!(parse_factor(&w).unwrap(), c);
    }

    #[test]
    fn built_factors_occur_in_z(c in (1u32..=12).prop_flat_map(canonical)) {
        // u_A x_k v_B sits at 2^(k-1) - 1 - |u_A|
        let w = c.build().unwrap();
        let at = (1usize << (c.k() - 1)) - 1 - build_u(c.a()).unwrap().len();
        prop_assert_eq!(oracle::zimin_slice(at, w.len()), w.letters().to_vec());
    }

    #[test]
    fn u_and_v_are_suffix_and_prefix(bits in 0u64..1 << 12) {
        let a = FinSet::from_bits(bits);
        let k = a.iter().max().map_or(1, |m| m + 1);
        let z = oracle::zimin_prefix((1 << (k - 1)) - 1);
        let u = build_u(a).unwrap();
        let v = build_v(a).unwrap();
        prop_assert!(z.ends_with(u.letters()));
        prop_assert!(z.starts_with(v.letters()));
    }

    #[test]
    fn concat_test_matches_scan(c1 in (1u32..=5).prop_flat_map(canonical), c2 in (6u32..=8).prop_flat_map(canonical)) {
        let text = oracle::zimin_prefix(1 << 9);
        let w = c1.build().unwrap().concat(&c2.build().unwrap());
        prop_assert_eq!(concat_is_factor(&c1, &c2).unwrap(), oracle::is_factor(&text, w.letters()));
    }

    #[test]
    fn eta_is_largest_missing_index(bits in 0u64..1 << 10, k in 1u32..=11) {
        let a = FinSet::from_bits(bits & ((1 << (k - 1)) - 1));
        let c = CanonicalFactor::new(a, k, FinSet::EMPTY).unwrap();
        let want = (1..k).rev().find(|i| !a.contains(*i)).unwrap_or(0);
        prop_assert_eq!(eta(&c), want);
    }

    #[test]
    fn closed_form_letters(p in 0u64..1 << 40) {
        let n = p + 1;
        prop_assert_eq!(zimin_letter_at(p), n.trailing_zeros() + 1);
    }

    #[test]
    fn first_occurrence_matches_scan(at in 0usize..400, len in 1usize..20, which in 0usize..3) {
        let src = [
            WordSource::zimin(ZiminDefinition::Valuation),
            WordSource::period_doubling(),
            WordSource::squarefree(),
        ][which].clone();
        let idx = FactorIndex::build(&src, 512).unwrap();
        let u = idx.text().slice(at..at + len);
        prop_assert_eq!(Some(idx.first_occurrence(&u).unwrap()), oracle::first_occurrence(idx.text().letters(), u.letters()));
    }

    #[test]
    fn psi_commutes_with_slicing(at in 0usize..1000, len in 0usize..64) {
        let z = WordSource::zimin(ZiminDefinition::Limit).prefix(at + len).unwrap();
        let d = WordSource::period_doubling().prefix(at + len).unwrap();
        prop_assert_eq!(psi(&z.slice(at..at + len)).unwrap(), d.slice(at..at + len));
    }

    #[test]
    fn word_text_round_trip(letters in prop::collection::vec(1u32..30, 0..20)) {
        let w = Word::zimin(&letters);
        prop_assert_eq!(Word::parse_as(&w.to_string(), w.alphabet()).unwrap(), w);
    }
}
