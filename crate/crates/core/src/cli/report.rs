use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::Serialize;

use crate::exactcore::{fmt_rational, Rational, Ring};
use crate::oriented::{classify_oriented, hitchin_map, ChamberDecomposition, OrientedError};
use crate::stability::{
    brute_force_lines, invariant_candidates, recheck_witness, sigma_semistable, Completeness, Failure, SigmaParam,
    StabilityError, Witness,
};

use super::doc::Instance;

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub description: String,
    pub rank: Option<usize>,
    pub degree: Option<i64>,
    pub in_kernel: Option<bool>,
    /// `violated`, `equality` or `excluded_nilpotent`.
    pub failure: String,
    pub inequality: Option<String>,
    /// Sign of `lhs − rhs` when the witness is re-evaluated.
    pub recheck: Option<String>,
}

impl WitnessReport {
    fn of(w: &Witness, inst: &Instance, sigma: &Rational) -> Self {
        let (failure, inequality) = match &w.failure {
            Failure::Violated(i) => ("violated", Some(i.to_string())),
            Failure::Equality(i) => ("equality", Some(i.to_string())),
            Failure::ExcludedNilpotent => ("excluded_nilpotent", None),
        };
        let recheck = recheck_witness(&inst.pair, w, sigma).map(|o| {
            match o {
                Ordering::Less => "less",
                Ordering::Equal => "equal",
                Ordering::Greater => "greater",
            }
            .to_string()
        });
        WitnessReport {
            description: w.to_string(),
            rank: w.candidate.as_ref().map(|c| c.rank),
            degree: w.candidate.as_ref().map(|c| c.degree),
            in_kernel: w.candidate.as_ref().map(|c| c.in_kernel),
            failure: failure.into(),
            inequality,
            recheck,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrientedReport {
    pub semistable: Option<String>,
    pub stable: Option<String>,
    pub sigma: Option<String>,
    pub completeness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub status: Option<String>,
    /// `None` when the brute-force check does not apply to the instance.
    pub agrees: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub instance: String,
    pub sigma: String,
    pub sigma_defaulted: bool,
    pub status: String,
    pub completeness: String,
    pub witnesses: Vec<WitnessReport>,
    pub semistable_interval: (Option<String>, Option<String>),
    pub hitchin_point: Option<Vec<String>>,
    pub oriented: Option<OrientedReport>,
    pub oracle: Option<OracleReport>,
}

impl ClassifyReport {
    pub fn is_complete(&self) -> bool {
        self.completeness == Completeness::Complete.to_string()
            && self.oriented.as_ref().is_none_or(|o| o.completeness == Completeness::Complete.to_string())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error(transparent)]
    Oriented(#[from] OrientedError),
}

fn opt(x: Option<Rational>) -> Option<String> {
    x.as_ref().map(fmt_rational)
}

pub fn classify(inst: &Instance, sigma: Option<&Rational>, oracle: bool) -> Result<ClassifyReport, ReportError> {
    let pair = &inst.pair;
    let sigma_value = sigma.cloned().unwrap_or_else(Rational::one);
    let verdict = sigma_semistable(pair, &SigmaParam::new(sigma_value.clone())?, false)?;
    let cands = invariant_candidates(pair)?;
    let (lo, hi) = cands.semistable_interval(pair.rank(), pair.degree());
    let hitchin_point = hitchin_map(pair).ok().map(|p| p.normalized.point.values.iter().map(fmt_rational).collect());
    let oriented = match &inst.oriented {
        Some(o) => {
            let v = classify_oriented(o)?;
            Some(OrientedReport {
                semistable: v.semistable.map(|c| c.to_string()),
                stable: v.stable.map(|c| c.to_string()),
                sigma: opt(v.sigma),
                completeness: v.completeness.to_string(),
            })
        }
        None => None,
    };
    let oracle = oracle.then(|| {
        let brute = brute_force_lines(pair, &sigma_value, 1);
        OracleReport { status: brute.map(|s| s.to_string()), agrees: brute.map(|s| s == verdict.status) }
    });
    Ok(ClassifyReport {
        instance: pair.to_string(),
        sigma: fmt_rational(&sigma_value),
        sigma_defaulted: sigma.is_none(),
        status: verdict.status.to_string(),
        completeness: verdict.completeness.to_string(),
        witnesses: verdict.witnesses.iter().map(|w| WitnessReport::of(w, inst, &sigma_value)).collect(),
        semistable_interval: (opt(lo), opt(hi)),
        hitchin_point,
        oriented,
        oracle,
    })
}

pub fn render_classify(r: &ClassifyReport) -> String {
    let mut s = String::new();
    if !r.is_complete() {
        s.push_str("WARNING: invariant subsheaf enumeration is incomplete over Q; the verdict may be optimistic\n");
    }
    let _ = writeln!(s, "instance: {}", r.instance);
    let note = if r.sigma_defaulted { " (default; pass --sigma to choose)" } else { "" };
    let _ = writeln!(s, "sigma: {}{note}", r.sigma);
    let _ = writeln!(s, "status: {}", r.status);
    let _ = writeln!(s, "completeness: {}", r.completeness);
    for w in &r.witnesses {
        let _ = writeln!(s, "witness: {}", w.description);
    }
    let (lo, hi) = &r.semistable_interval;
    let _ = writeln!(
        s,
        "semistable for sigma in: [{}, {}]",
        lo.as_deref().unwrap_or("-inf"),
        hi.as_deref().unwrap_or("+inf")
    );
    match &r.hitchin_point {
        Some(p) => {
            let _ = writeln!(s, "hitchin point: ({})", p.join(", "));
        }
        None => s.push_str("hitchin point: undefined (epsilon = 0 and phi nilpotent)\n"),
    }
    if let Some(o) = &r.oriented {
        let tag = |c: &Option<String>| c.clone().unwrap_or_else(|| "no".into());
        let _ = writeln!(s, "oriented semistable: {}", tag(&o.semistable));
        let _ = writeln!(s, "oriented stable: {}", tag(&o.stable));
        let _ = writeln!(s, "oriented sigma: {}", o.sigma.as_deref().unwrap_or("none"));
    }
    if let Some(o) = &r.oracle {
        match (&o.status, o.agrees) {
            (Some(st), Some(a)) => {
                let _ = writeln!(s, "oracle: {st} ({})", if a { "agrees" } else { "DISAGREES" });
            }
            _ => s.push_str("oracle: not applicable (needs rank 2 with central phi)\n"),
        }
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct ChamberReport {
    pub lower: String,
    pub upper: Option<String>,
    pub representative: String,
    /// Verdict at the representative, when a concrete pair was given.
    pub status: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WallsReport {
    pub c: String,
    pub sigma_infinity: String,
    pub walls: Vec<(String, Option<String>)>,
    pub chambers: Vec<ChamberReport>,
    pub complete: bool,
}

pub fn walls_report(
    dec: &ChamberDecomposition,
    c: &Rational,
    inst: Option<&Instance>,
    complete: bool,
) -> Result<WallsReport, ReportError> {
    let mut chambers = Vec::new();
    for (iv, rep) in dec.intervals.iter().zip(&dec.representatives) {
        let status = match inst {
            Some(i) => Some(sigma_semistable(&i.pair, &SigmaParam::new(rep.clone())?, false)?.status.to_string()),
            None => None,
        };
        chambers.push(ChamberReport {
            lower: fmt_rational(&iv.lower),
            upper: iv.upper.as_ref().map(fmt_rational),
            representative: fmt_rational(rep),
            status,
        });
    }
    Ok(WallsReport {
        c: fmt_rational(c),
        sigma_infinity: fmt_rational(&dec.sigma_infinity),
        walls: dec.walls.iter().map(|w| (fmt_rational(&w.sigma), w.witness.as_ref().map(|c| c.to_string()))).collect(),
        chambers,
        complete,
    })
}

pub fn render_walls(r: &WallsReport) -> String {
    let mut s = String::new();
    if !r.complete {
        s.push_str("WARNING: invariant subsheaf enumeration is incomplete over Q; walls may be missing\n");
    }
    let _ = writeln!(s, "C: {}", r.c);
    let _ = writeln!(s, "sigma_infinity: {}", r.sigma_infinity);
    let walls: Vec<&str> = r.walls.iter().map(|(w, _)| w.as_str()).collect();
    let _ = writeln!(s, "walls: {{{}}}", walls.join(", "));
    for (w, witness) in &r.walls {
        if let Some(c) = witness {
            let _ = writeln!(s, "  wall {w}: {c}");
        }
    }
    let _ = writeln!(s, "chambers: {}", r.chambers.len());
    for ch in &r.chambers {
        let upper = ch.upper.as_deref().unwrap_or("+inf");
        let _ = write!(s, "  ({}, {upper}) rep {}", ch.lower, ch.representative);
        if let Some(st) = &ch.status {
            let _ = write!(s, ": {st}");
        }
        s.push('\n');
    }
    s
}
