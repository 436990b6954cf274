//! JSON instance documents. Coefficients are exact `"num/den"` strings in
//! ascending order of `t`; JSON numbers are rejected for every rational field.

use serde::{Deserialize, Serialize};

use crate::exactcore::{parse_rational, fmt_rational, BoundedPoly, Mat, Poly, Rational};
use crate::oriented::OrientedFHP;
use crate::sheafp1::{BundleP1, SheafMap};
use crate::stability::{star_condition, FramedHitchinPair};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeBlock {
    pub d: i64,
    pub r: usize,
    pub ell: i64,
    #[serde(rename = "H")]
    pub h: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m0: Option<i64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub star: bool,
}

/// A matrix of polynomial entries, each an ascending coefficient list.
pub type PolyRows = Vec<Vec<Vec<String>>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub schema_version: u32,
    pub base: String,
    #[serde(rename = "type")]
    pub type_block: TypeBlock,
    #[serde(rename = "E")]
    pub e: Vec<i64>,
    pub epsilon: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    pub phi: PolyRows,
    pub psi: PolyRows,
}

#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

fn field(path: impl Into<String>, message: impl Into<String>) -> DocError {
    DocError::Field { path: path.into(), message: message.into() }
}

/// A validated document.
#[derive(Clone, Debug)]
pub struct Instance {
    pub doc: InstanceDoc,
    pub pair: FramedHitchinPair,
    pub oriented: Option<OrientedFHP>,
}

impl InstanceDoc {
    pub fn parse(text: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Builds the pair, checking shapes and degree bounds against the splitting data.
    pub fn validate(&self) -> Result<Instance, DocError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(field("schema_version", format!("expected {SCHEMA_VERSION}, got {}", self.schema_version)));
        }
        if self.base != "P1" {
            return Err(field("base", format!("only \"P1\" is supported, got {:?}", self.base)));
        }
        let t = &self.type_block;
        let e = BundleP1::new(self.e.clone()).map_err(|err| field("E", err.to_string()))?;
        let h = BundleP1::new(t.h.clone()).map_err(|err| field("type.H", err.to_string()))?;
        if e.rank() != t.r {
            return Err(field("E", format!("rank {} does not match type.r = {}", e.rank(), t.r)));
        }
        if e.degree() != t.d {
            return Err(field("E", format!("degree {} does not match type.d = {}", e.degree(), t.d)));
        }
        if t.ell < 0 {
            return Err(field("type.ell", "the twist must be non-negative"));
        }
        if let Some(m0) = t.m0 {
            if h.rank() != 1 || h.degree() != m0 {
                return Err(field("type.m0", format!("H = {h} is not O({m0})")));
            }
        }
        let epsilon = rational_field("epsilon", &self.epsilon)?;
        let phi_m = poly_matrix("phi", &self.phi, &e, &e, t.ell)?;
        let psi_m = poly_matrix("psi", &self.psi, &e, &h, 0)?;
        let phi = SheafMap::new(e.clone(), e.clone(), t.ell, phi_m).map_err(|err| field("phi", err.to_string()))?;
        let psi = SheafMap::new(e, h, 0, psi_m).map_err(|err| field("psi", err.to_string()))?;
        let pair = FramedHitchinPair::new(epsilon, phi, psi).map_err(|err| field("phi", err.to_string()))?;
        if t.star && !star_condition(&pair) {
            return Err(field("type.star", "psi . phi is not zero"));
        }
        let oriented = match &self.delta {
            Some(s) => Some(OrientedFHP::new(pair.clone(), rational_field("delta", s)?)),
            None => None,
        };
        Ok(Instance { doc: self.clone(), pair, oriented })
    }

    /// The document describing `pair`, with `delta` when given.
    pub fn from_pair(pair: &FramedHitchinPair, delta: Option<&Rational>) -> Self {
        let rows = |m: &SheafMap| -> PolyRows {
            (0..m.matrix().rows())
                .map(|i| {
                    (0..m.matrix().cols())
                        .map(|j| m.entry(i, j).coeffs().iter().map(fmt_rational).collect())
                        .collect()
                })
                .collect()
        };
        let h = pair.h();
        InstanceDoc {
            schema_version: SCHEMA_VERSION,
            base: "P1".into(),
            type_block: TypeBlock {
                d: pair.degree(),
                r: pair.rank(),
                ell: pair.ell(),
                h: h.splitting().to_vec(),
                m0: (h.rank() == 1).then(|| h.degree()),
                star: false,
            },
            e: pair.e().splitting().to_vec(),
            epsilon: fmt_rational(pair.epsilon()),
            delta: delta.map(fmt_rational),
            phi: rows(pair.phi()),
            psi: rows(pair.psi()),
        }
    }
}

pub(crate) fn rational_field(path: &str, s: &str) -> Result<Rational, DocError> {
    parse_rational(s).map_err(|err| field(path, err.to_string()))
}

/// Entry `(i, j)` of a map `source → target ⊗ O(twist)` has degree at most
/// `b_i + twist − a_j`.
fn poly_matrix(
    name: &str,
    rows: &PolyRows,
    source: &BundleP1,
    target: &BundleP1,
    twist: i64,
) -> Result<Mat<Poly<Rational>>, DocError> {
    if rows.len() != target.rank() {
        return Err(field(name, format!("expected {} rows, got {}", target.rank(), rows.len())));
    }
    let mut out = Mat::zeros(target.rank(), source.rank());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != source.rank() {
            return Err(field(format!("{name}[{i}]"), format!("expected {} entries, got {}", source.rank(), row.len())));
        }
        for (j, entry) in row.iter().enumerate() {
            let path = format!("{name}[{i}][{j}]");
            let bound = target.splitting()[i] + twist - source.splitting()[j];
            let p = BoundedPoly::from_strings(entry, bound).map_err(|err| field(&path, err.to_string()))?;
            out.set(i, j, p.poly().clone());
        }
    }
    Ok(out)
}

/// `{"epsilon": "...", "matrices": [[["a", "b"], ["c", "d"]], ...]}` for `matgit`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    #[serde(default = "zero_string")]
    pub epsilon: String,
    pub matrices: Vec<Vec<Vec<String>>>,
}

fn zero_string() -> String {
    "0".into()
}

impl MatrixDoc {
    pub fn parse(text: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn validate(&self) -> Result<(Rational, Vec<Mat<Rational>>), DocError> {
        let eps = rational_field("epsilon", &self.epsilon)?;
        let r = self.matrices.first().map_or(0, Vec::len);
        if r == 0 {
            return Err(field("matrices", "need at least one non-empty matrix"));
        }
        let mut mats = Vec::new();
        for (k, m) in self.matrices.iter().enumerate() {
            if m.len() != r || m.iter().any(|row| row.len() != r) {
                return Err(field(format!("matrices[{k}]"), format!("expected a {r}x{r} matrix")));
            }
            let mut out = Mat::zeros(r, r);
            for (i, row) in m.iter().enumerate() {
                for (j, s) in row.iter().enumerate() {
                    out.set(i, j, rational_field(&format!("matrices[{k}][{i}][{j}]"), s)?);
                }
            }
            mats.push(out);
        }
        Ok((eps, mats))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const COUNTER: &str = r#"{
        "schema_version": 1, "base": "P1",
        "type": {"d": 0, "r": 2, "ell": 0, "H": [0]},
        "E": [0, 0], "epsilon": "1",
        "phi": [[["0"], ["1"]], [["0"], ["0"]]],
        "psi": [[["1"], ["0"]]]
    }"#;

    #[test]
    fn round_trip() {
        let doc = InstanceDoc::parse(COUNTER).unwrap();
        let again = InstanceDoc::parse(&doc.to_json()).unwrap();
        assert_eq!(doc, again);
        let inst = doc.validate().unwrap();
        assert_eq!(InstanceDoc::from_pair(&inst.pair, None).validate().unwrap().pair, inst.pair);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let bad = COUNTER.replace(r#"[["0"], ["1"]]"#, r#"[["0"], ["1", "1"]]"#);
        let err = InstanceDoc::parse(&bad).unwrap().validate().unwrap_err();
        assert!(err.to_string().starts_with("phi[0][1]"), "{err}");
        let bad = COUNTER.replace(r#""epsilon": "1""#, r#""epsilon": 1.5"#);
        assert!(matches!(InstanceDoc::parse(&bad), Err(DocError::Json(_))));
        let bad = COUNTER.replace(r#""E": [0, 0]"#, r#""E": [1, 0]"#);
        assert!(InstanceDoc::parse(&bad).unwrap().validate().unwrap_err().to_string().starts_with("E:"));
    }
}
