//! Splitting types, saturation, kernels and invariant lines on P1.
use framed_hitchin::exactcore::{qi, Mat, Poly};
use framed_hitchin::sheafp1::{
    image_and_kernel, invariant_line_subbundles, kernel_filtration, saturate_columns, BundleP1, SheafMap,
};

fn main() {
    let e = BundleP1::new(vec![1, 0]).unwrap();
    println!("E = {e}, h0(E(2)) = {}", e.h0(2));

    // The column (0, t) vanishes at t = 0; its saturation is the O(0) summand.
    let t = Poly::t();
    let sat = saturate_columns(&e, &[vec![Poly::constant(qi(0)), t.clone()]]);
    println!("saturation of (0, t): {sat}");

    let h = BundleP1::line(1);
    let psi = SheafMap::new(e.clone(), h, 0, Mat::from_rows(vec![vec![Poly::constant(qi(1)), t.clone()]])).unwrap();
    let ik = image_and_kernel(&psi).unwrap();
    println!("ker psi = {}, image degree {}", ik.kernel.unwrap(), ik.image_degree);

    let nil = SheafMap::new(
        e.clone(),
        e.clone(),
        0,
        Mat::from_rows(vec![vec![Poly::constant(qi(0)), t.clone()], vec![Poly::constant(qi(0)), Poly::constant(qi(0))]]),
    )
    .unwrap();
    for k in kernel_filtration(&nil).unwrap() {
        println!("kernel filtration step: {k}");
    }
    println!("invariant lines: {:?}", invariant_line_subbundles(&nil).unwrap().rational_lines().len());
}
