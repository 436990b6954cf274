//! Parse a JSON instance document and print the classification report.
use framed_hitchin::cli::report::{classify, render_classify};
use framed_hitchin::cli::InstanceDoc;

fn main() {
    let text = include_str!("../data/counterexample.json");
    let inst = InstanceDoc::parse(text).and_then(|d| d.validate()).expect("valid document");
    for sigma in ["1/2", "1000"] {
        let s = framed_hitchin::exactcore::parse_rational(sigma).unwrap();
        print!("{}", render_classify(&classify(&inst, Some(&s), false).unwrap()));
    }
}
