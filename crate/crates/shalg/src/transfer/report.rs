use serde::{Deserialize, Serialize};

use crate::ainfty::{check_an, check_fn, AInfinityAlgebra, AInfinityMorphism};
use crate::exactlin::{format_q, GradedMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub identity: String,
    pub anchor: String,
    pub status: Status,
    pub residual_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckLine {
    /// A line from a residual map; zero means pass.
    pub fn from_residual(identity: impl Into<String>, anchor: &str, residual: &GradedMap) -> Self {
        let zero = residual.is_zero();
        CheckLine {
            identity: identity.into(),
            anchor: anchor.to_string(),
            status: if zero { Status::Pass } else { Status::Fail },
            residual_zero: zero,
            witness: first_entry(residual),
        }
    }

    pub fn from_bool(identity: impl Into<String>, anchor: &str, ok: bool, witness: Option<String>) -> Self {
        CheckLine {
            identity: identity.into(),
            anchor: anchor.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual_zero: ok,
            witness: if ok { None } else { witness },
        }
    }

    pub fn not_applicable(identity: impl Into<String>, anchor: &str, why: &str) -> Self {
        CheckLine {
            identity: identity.into(),
            anchor: anchor.to_string(),
            status: Status::NotApplicable,
            residual_zero: true,
            witness: Some(why.to_string()),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// `entry[target, source] = value` for the first nonzero entry.
pub fn first_entry(m: &GradedMap) -> Option<String> {
    m.columns().iter().enumerate().find_map(|(c, col)| {
        col.first().map(|(r, x)| {
            format!(
                "entry [{}, {}] = {}",
                m.target().label(*r),
                m.source().label(c),
                format_q(x)
            )
        })
    })
}

pub const ANCHOR_AN: &str = "stasheff identity";
pub const ANCHOR_FN: &str = "morphism identity";

pub fn verify_algebra(a: &AInfinityAlgebra, order: usize) -> Vec<CheckLine> {
    (2..=order.min(a.order()))
        .map(|n| {
            let r = check_an(a, n).expect("n within order");
            CheckLine::from_residual(format!("A{n}"), ANCHOR_AN, &r.map)
        })
        .collect()
}

pub fn verify_morphism(m: &AInfinityMorphism, order: usize) -> Vec<CheckLine> {
    (1..=order.min(m.order()))
        .map(|n| {
            let r = check_fn(m, n).expect("n within order");
            CheckLine::from_residual(format!("F{n}"), ANCHOR_FN, &r.map)
        })
        .collect()
}

/// Outcome of a move: every identity re-verified on the outputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveReport {
    pub name: String,
    pub order: usize,
    pub checks: Vec<CheckLine>,
    pub notes: Vec<String>,
}

impl MoveReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| !c.failed())
    }
}
