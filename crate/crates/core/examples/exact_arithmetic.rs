//! Polynomials, matrices and roots over Q without rounding.
use framed_hitchin::exactcore::rational::{rational_root, rational_sqrt};
use framed_hitchin::exactcore::{fmt_rational, q, qi, Mat, Poly, Ring};

fn main() {
    let t = Poly::t();
    let p = t.times(&t).minus(&Poly::constant(qi(4)));
    let (quot, rem) = p.divrem(&t.minus(&Poly::constant(qi(2))));
    println!("(t^2 - 4) / (t - 2) = {quot}, remainder {rem}");

    let m = Mat::from_rows(vec![vec![qi(2), q(1, 3)], vec![qi(0), qi(5)]]);
    let cp: Vec<String> = m.charpoly().unwrap().iter().map(fmt_rational).collect();
    println!("charpoly coefficients (ascending): {}", cp.join(", "));
    println!("det = {}", fmt_rational(&m.det().unwrap()));

    println!("sqrt(9/4) = {:?}", rational_sqrt(&q(9, 4)).map(|x| fmt_rational(&x)));
    println!("cube root of 2 in Q: {:?}", rational_root(&qi(2), 3));
}
