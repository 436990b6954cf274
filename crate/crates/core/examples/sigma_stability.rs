//! σ-stability verdicts, witnesses and the Jordan–Hölder graded object.
use framed_hitchin::exactcore::{fmt_rational, qi, Mat, Rational};
use framed_hitchin::sheafp1::BundleP1;
use framed_hitchin::stability::{invariant_candidates, jordan_holder, sigma_semistable, FramedHitchinPair, SigmaParam};

fn m(rows: &[&[i64]]) -> Mat<Rational> {
    Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
}

fn main() {
    let e = BundleP1::new(vec![0, -1]).unwrap();
    let pair = FramedHitchinPair::constant(&e, &BundleP1::line(0), 0, qi(1), &m(&[&[0, 0], &[0, 0]]), &m(&[&[1, 0]]))
        .unwrap();
    for s in [1, 2] {
        let v = sigma_semistable(&pair, &SigmaParam::new(qi(s)).unwrap(), false).unwrap();
        println!("sigma = {s}: {}", v.status);
        for w in &v.witnesses {
            println!("  {w}");
        }
    }
    let (lo, hi) = invariant_candidates(&pair).unwrap().semistable_interval(2, -1);
    let show = |x: Option<Rational>| x.map_or("unbounded".to_string(), |v| fmt_rational(&v));
    println!("semistable interval: [{}, {}]", show(lo), show(hi));
    let jh = jordan_holder(&pair, &SigmaParam::new(qi(1)).unwrap()).unwrap();
    for g in &jh.graded {
        println!("graded piece: {g}");
    }
}
