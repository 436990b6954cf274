use std::fmt::Write as _;

use serde::Serialize;

use crate::exactcore::{fmt_rational, Mat, Rational};
use crate::matinv::{
    char_vector, git_status, is_nilpotent_tuple, is_triangularizable, r2u2_invariants, word_list, MatInvError,
    MatrixTuple,
};

#[derive(Clone, Debug, Serialize)]
pub struct MatgitReport {
    pub rank: usize,
    pub arity: usize,
    pub epsilon: String,
    /// `(word, T_word)` in canonical word order.
    pub char_vector: Vec<(String, String)>,
    pub git_status: String,
    pub nilpotent: bool,
    pub triangularizable: bool,
    pub r2u2: Option<Vec<String>>,
}

/// Letters `A, B, C, …` for the matrices in order.
fn word_name(letters: &[usize]) -> String {
    letters.iter().map(|&k| char::from(b'A' + (k - 1) as u8)).collect()
}

pub fn matgit(epsilon: &Rational, mats: Vec<Mat<Rational>>) -> Result<MatgitReport, MatInvError> {
    if mats.len() > 26 {
        return Err(MatInvError::Shape("at most 26 matrices".into()));
    }
    let tuple = MatrixTuple::new(mats)?;
    let cv = char_vector(&tuple, epsilon.clone())?;
    let words = word_list(tuple.rank(), tuple.arity())?;
    Ok(MatgitReport {
        rank: tuple.rank(),
        arity: tuple.arity(),
        epsilon: fmt_rational(epsilon),
        char_vector: words.iter().zip(&cv.entries).map(|(w, v)| (word_name(w.letters()), fmt_rational(v))).collect(),
        git_status: git_status(&tuple).to_string(),
        nilpotent: is_nilpotent_tuple(&tuple),
        triangularizable: is_triangularizable(&tuple),
        r2u2: r2u2_invariants(&tuple).ok().map(|t| t.iter().map(fmt_rational).collect()),
    })
}

pub fn render_matgit(r: &MatgitReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "tuple: {} matrices of size {}", r.arity, r.rank);
    let _ = writeln!(s, "epsilon: {}", r.epsilon);
    let _ = writeln!(s, "git status: {}", r.git_status);
    let _ = writeln!(s, "nilpotent: {}", r.nilpotent);
    let _ = writeln!(s, "triangularizable: {}", r.triangularizable);
    if let Some(t) = &r.r2u2 {
        let _ = writeln!(s, "(tr A, det A, tr B, det B, tr AB): ({})", t.join(", "));
    }
    let _ = writeln!(s, "characteristic vector ({} words):", r.char_vector.len());
    for (w, v) in &r.char_vector {
        let _ = writeln!(s, "  tr {w} = {v}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::qi;

    fn m2(a: i64, b: i64, c: i64, d: i64) -> Mat<Rational> {
        Mat::from_rows(vec![vec![qi(a), qi(b)], vec![qi(c), qi(d)]])
    }

    #[test]
    fn shift_pair_and_zero_tuple() {
        let r = matgit(&qi(0), vec![m2(0, 1, 0, 0), m2(0, 0, 1, 0)]).unwrap();
        assert_eq!(r.git_status, "stable");
        assert_eq!(r.r2u2.unwrap(), vec!["0", "0", "0", "0", "1"]);
        let r = matgit(&qi(0), vec![m2(0, 0, 0, 0), m2(0, 0, 0, 0)]).unwrap();
        assert_eq!(r.git_status, "nullform");
        assert!(r.char_vector.iter().all(|(_, v)| v == "0"));
        assert!(r.r2u2.unwrap().iter().all(|v| v == "0"));
    }
}
