mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use common::bar::hochschild_oracle;
use twoop::action::hochschild;
use twoop::dg_cat::corpus;

fn dims(v: &[usize]) -> BTreeMap<i64, usize> {
    v.iter().enumerate().map(|(i, &d)| (i as i64, d)).collect()
}

#[test]
fn oracle_knows_small_algebras() {
    assert_eq!(hochschild_oracle(&corpus::ground(), 3), dims(&[1, 0, 0, 0]));
    assert_eq!(hochschild_oracle(&corpus::dual_numbers(), 4), dims(&[2, 1, 1, 1, 1]));
    assert_eq!(hochschild_oracle(&corpus::truncated_polynomial(3), 4), dims(&[3, 2, 2, 2, 2]));
    assert_eq!(hochschild_oracle(&corpus::upper_triangular(), 4), dims(&[1, 0, 0, 0, 0]));
}

#[test]
fn totalization_matches_bar_complex_through_degree_four() {
    for a in [corpus::ground(), corpus::dual_numbers(), corpus::truncated_polynomial(3), corpus::upper_triangular()] {
        let t = Instant::now();
        let h = hochschild(&a, 4).unwrap();
        let got: BTreeMap<i64, usize> = h.cohomology().unwrap().into_iter().filter(|(d, _)| (0..=4).contains(d)).collect();
        let want = hochschild_oracle(&a, 4);
        let complete = h.tot.complete_degrees();
        assert!((0..=4).all(|d| complete.contains(&d)), "{complete:?}");
        let want: BTreeMap<i64, usize> = want.into_iter().filter(|&(_, v)| v > 0).collect();
        let got: BTreeMap<i64, usize> = got.into_iter().filter(|&(_, v)| v > 0).collect();
        assert_eq!(got, want);
        eprintln!("{:?} in {:?}", want, t.elapsed());
    }
}
