//! Small worked examples whose expected values were derived by hand; each
//! is confirmed against the naive oracle before being asserted.

use wordramsey::colorings::{Color, Coloring, ColoringSpec};
use wordramsey::conslen::{boundary_sets, BoundarySet};
use wordramsey::index::{FactorIndex, Membership};
use wordramsey::oracle;
use wordramsey::words::{Word, WordSource, ZiminDefinition};
use wordramsey::zimin::{lift_w, parse_factor, suffix_decomposition_m, FinSet};

fn z() -> WordSource {
    WordSource::zimin(ZiminDefinition::Limit)
}

#[test]
fn period_doubling_split_of_111() {
    let idx = FactorIndex::build(&WordSource::period_doubling(), 64).unwrap();
    let text = idx.text().letters().to_vec();
    assert!(!oracle::is_factor(&text, &[1, 1]));
    let u = Word::binary("111");
    assert_eq!(idx.is_factor(&u), Membership::No);
    // neither 1|11 nor 11|1 has two factor halves
    let oracle_split = (1..3).find(|&p| oracle::is_factor(&text, &u.letters()[..p]) && oracle::is_factor(&text, &u.letters()[p..]));
    assert_eq!(oracle_split, None);
    assert_eq!(idx.two_factor_split(&u).unwrap(), None);
    let c = ColoringSpec::nonfactor_nf(ColoringSpec::PeriodDoublingCw).color(&idx, &u).unwrap();
    assert_eq!(c, Color::Red);
}

#[test]
fn zimin_splits() {
    let idx = FactorIndex::build(&z(), 255).unwrap();
    assert_eq!(idx.two_factor_split(&Word::zimin(&[1, 1])).unwrap(), Some(1));
    assert_eq!(idx.two_factor_split(&Word::zimin(&[1, 1, 2, 2])).unwrap(), None);
    assert_eq!(idx.is_factor(&Word::zimin(&[1, 1])), Membership::No);
}

#[test]
fn peeling_of_second_suffix() {
    // greedy peel on a 64-letter prefix of T^2(Z): x1 | x3 x1 x2 x1 | ...
    let t2 = oracle::zimin_slice(2, 64);
    assert_eq!(t2[..5], [1, 3, 1, 2, 1]);
    let mut pos = 0;
    let mut peeled = Vec::new();
    while peeled.len() < 3 {
        let m = t2[pos];
        peeled.push(m);
        pos += 1 << (m - 1);
    }
    assert_eq!(peeled, vec![1, 3, 4]);
    assert_eq!(suffix_decomposition_m(2, 3).unwrap(), peeled);
    assert_eq!(suffix_decomposition_m(1, 3).unwrap(), vec![2, 3, 4]);
    assert_eq!(suffix_decomposition_m(0, 4).unwrap(), vec![1, 2, 3, 4]);
}

#[test]
fn canonical_parse_of_x1x2x1x3x1() {
    let c = parse_factor(&Word::zimin(&[1, 2, 1, 3, 1])).unwrap();
    assert_eq!((c.a(), c.k(), c.b()), ("{1,2}".parse::<FinSet>().unwrap(), 3, "{1}".parse().unwrap()));
    assert_eq!(c.build().unwrap(), Word::zimin(&[1, 2, 1, 3, 1]));
}

#[test]
fn lifts_on_the_printed_prefix() {
    let d = FactorIndex::build(&WordSource::period_doubling(), 64).unwrap();
    let text = d.text().letters().to_vec();
    for (u, w, a) in [("01", vec![1, 2], 0), ("1", vec![2], 1), ("00", vec![1, 3], 2)] {
        let u = Word::binary(u);
        assert_eq!(oracle::first_occurrence(&text, u.letters()), Some(a));
        assert_eq!(lift_w(&u, &d).unwrap().build().unwrap(), Word::zimin(&w));
    }
}

#[test]
fn boundary_sets_of_x2x1() {
    let idx = FactorIndex::build(&z(), 255).unwrap();
    let u = Word::zimin(&[2, 1]);
    let x1: std::collections::BTreeSet<Word> = [Word::zimin(&[1])].into();
    assert_eq!(boundary_sets(&idx, &u, BoundarySet::LambdaPlus).unwrap(), x1);
    assert_eq!(boundary_sets(&idx, &u, BoundarySet::RhoPlus).unwrap(), x1);
    assert!(boundary_sets(&idx, &u, BoundarySet::LambdaMinus).unwrap().is_empty());
    assert!(boundary_sets(&idx, &u, BoundarySet::RhoMinus).unwrap().is_empty());
}
