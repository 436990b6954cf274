//! Walls, chambers, oriented classification and the Hitchin map.
use framed_hitchin::exactcore::{fmt_rational, qi, Mat, Rational};
use framed_hitchin::oriented::{classify_oriented, hitchin_map, walls_for_family, OrientedFHP, TypeData};
use framed_hitchin::sheafp1::BundleP1;
use framed_hitchin::stability::FramedHitchinPair;

fn m(rows: &[&[i64]]) -> Mat<Rational> {
    Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
}

fn main() {
    let t = TypeData { d: 0, r: 2, ell: 0, h: BundleP1::line(10) };
    let dec = walls_for_family(&t, &qi(3));
    let walls: Vec<String> = dec.wall_values().iter().map(fmt_rational).collect();
    println!("sigma_inf = {}, walls {{{}}}", fmt_rational(&dec.sigma_infinity), walls.join(", "));

    let e = BundleP1::new(vec![0, 0]).unwrap();
    let pair =
        FramedHitchinPair::constant(&e, &BundleP1::line(0), 0, qi(1), &m(&[&[1, 0], &[0, 2]]), &m(&[&[1, 1]])).unwrap();
    let v = classify_oriented(&OrientedFHP::new(pair.clone(), qi(1))).unwrap();
    println!("oriented: semistable {:?}, stable {:?}", v.semistable, v.stable);
    let p = hitchin_map(&pair).unwrap();
    let coords: Vec<String> = p.normalized.point.values.iter().map(fmt_rational).collect();
    println!("Hitchin point: ({})", coords.join(", "));
}
