//! Trace-word invariants and GIT status of matrix tuples.
use framed_hitchin::exactcore::{qi, Mat};
use framed_hitchin::matinv::{char_vector, find_destabilizing_subgroup, git_status, r2u2_invariants, MatrixTuple};

fn m2(a: i64, b: i64, c: i64, d: i64) -> Mat<framed_hitchin::exactcore::Rational> {
    Mat::from_rows(vec![vec![qi(a), qi(b)], vec![qi(c), qi(d)]])
}

fn main() {
    let shifts = MatrixTuple::new(vec![m2(0, 1, 0, 0), m2(0, 0, 1, 0)]).unwrap();
    println!("shift pair: {}", git_status(&shifts));
    println!("(tr A, det A, tr B, det B, tr AB) = {:?}", r2u2_invariants(&shifts).unwrap().map(|x| x.to_string()));

    let upper = MatrixTuple::new(vec![m2(0, 1, 0, 0), m2(0, 2, 0, 0)]).unwrap();
    println!("strictly upper pair: {}", git_status(&upper));
    println!("characteristic vector is zero: {}", char_vector(&upper, qi(0)).unwrap().is_zero());
    if let Some(l) = find_destabilizing_subgroup(&upper) {
        println!("destabilizing weights {:?}", l.weights());
    }
}
