mod common;

use common::{rng, DiagonalCase};
use framed_hitchin::exactcore::qi;
use framed_hitchin::oriented::{classify_oriented, OrientedFHP};

#[test]
fn classification_matches_the_direct_definition() {
    let mut r = rng(11);
    let mut tally = [0usize; 4];
    for _ in 0..400 {
        let case = DiagonalCase::random(&mut r);
        let o = OrientedFHP::new(case.pair(), qi(case.delta));
        let v = classify_oriented(&o).unwrap();
        let expect = case.oriented_oracle();
        assert_eq!((v.is_semistable(), v.is_stable()), expect, "{case:?} gave {v:?}");
        tally[usize::from(expect.0) * 2 + usize::from(expect.1)] += 1;
    }
    // The sample must reach every verdict that can occur.
    assert!(tally[0] > 0 && tally[2] > 0 && tally[3] > 0, "{tally:?}");
}
