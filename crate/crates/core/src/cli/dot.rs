//! The flip diagram: chamber `i` maps down to its lower wall (the Hitchin
//! moduli space for the first chamber) and to its upper wall; the last
//! chamber carries the identity to a second copy of itself.

use std::fmt::Write as _;

use crate::exactcore::fmt_rational;
use crate::oriented::ChamberDecomposition;

pub fn flip_diagram(dec: &ChamberDecomposition) -> String {
    let mut s = String::from("digraph flips {\n  rankdir=TB;\n  node [shape=box];\n");
    let reps = &dec.representatives;
    if dec.walls.is_empty() {
        let _ = writeln!(s, "  c0 [label=\"FH^(sigma-s), sigma = {}\"];", fmt_rational(&reps[0]));
        s.push_str("}\n");
        return s;
    }
    s.push_str("  hss [label=\"H^ss\"];\n");
    for (i, rep) in reps.iter().enumerate() {
        let _ = writeln!(s, "  c{i} [label=\"FH^(sigma_{i}-s), sigma = {}\"];", fmt_rational(rep));
    }
    for (j, w) in dec.walls.iter().enumerate() {
        let _ = writeln!(s, "  w{} [label=\"FH^(sigma_{}'-ss), sigma = {}\"];", j + 1, j + 1, fmt_rational(&w.sigma));
    }
    let t = reps.len() - 1;
    let _ = writeln!(s, "  c{t}copy [label=\"FH^(sigma_{t}-s), sigma = {}\"];", fmt_rational(&reps[t]));
    for i in 0..=t {
        if i == 0 {
            s.push_str("  c0 -> hss;\n");
        } else {
            let _ = writeln!(s, "  c{i} -> w{i};");
        }
        if i < t {
            let _ = writeln!(s, "  c{i} -> w{};", i + 1);
        }
    }
    let _ = writeln!(s, "  c{t} -> c{t}copy [label=\"id\"];");
    s.push_str("}\n");
    s
}
