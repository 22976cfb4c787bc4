//! Structured verdicts for single theorem-instance checks.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ffield::FieldElem;

/// Absolute tolerance for every float comparison against a `c * sqrt(q)` bound.
pub const TOL: f64 = 1e-6;

const MAX_SAFE_INT: i128 = 1 << 53;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    PassWithAllowance,
    Empirical,
    Fail,
}

impl Verdict {
    pub fn is_failure(self) -> bool {
        self == Verdict::Fail
    }

    /// The worse of two verdicts (`Fail` dominates, then `Empirical`, ...).
    pub fn combine(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// `value <= bound` with the shared tolerance, keeping the signed slack.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundCheck {
    pub value: f64,
    pub bound: f64,
}

impl BoundCheck {
    pub fn new(value: f64, bound: f64) -> Self {
        BoundCheck { value, bound }
    }

    pub fn slack(&self) -> f64 {
        self.bound - self.value
    }

    pub fn holds(&self) -> bool {
        self.value <= self.bound + TOL
    }

    /// Writes `<prefix>value`, `<prefix>bound` and `<prefix>slack`.
    pub fn record(&self, report: &mut VerdictReport, prefix: &str) {
        report.set_result(format!("{prefix}value"), self.value);
        report.set_result(format!("{prefix}bound"), self.bound);
        report.set_result(format!("{prefix}slack"), self.slack());
    }
}

/// One checked instance: parameters, exact results, bounds and a verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub task: String,
    pub params: BTreeMap<String, Value>,
    pub result: BTreeMap<String, Value>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default)]
    pub ms: u64,
}

impl VerdictReport {
    pub fn new(task: impl Into<String>) -> Self {
        VerdictReport {
            task: task.into(),
            params: BTreeMap::new(),
            result: BTreeMap::new(),
            verdict: Verdict::Pass,
            witness: None,
            ms: 0,
        }
    }

    pub fn with_param(mut self, key: impl Into<String>, value: impl Into<Value>) -> Self {
        self.set_param(key, value);
        self
    }

    pub fn set_param(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.params.insert(key.into(), value.into());
    }

    pub fn set_result(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.result.insert(key.into(), value.into());
    }

    /// Folds a sub-check into the verdict: a failed check fails the report.
    pub fn require(&mut self, key: impl Into<String>, ok: bool) {
        self.set_result(key, ok);
        if !ok {
            self.verdict = Verdict::Fail;
        }
    }

    pub fn downgrade(&mut self, verdict: Verdict) {
        self.verdict = self.verdict.combine(verdict);
    }

    pub fn is_failure(&self) -> bool {
        self.verdict.is_failure()
    }
}

/// JSON value for an exact integer: a number when it is exactly
/// representable as a double, otherwise a decimal string.
pub fn exact_int(x: impl Into<i128>) -> Value {
    let x = x.into();
    if x.abs() <= MAX_SAFE_INT {
        Value::from(x as i64)
    } else {
        Value::from(x.to_string())
    }
}

pub fn rational(r: &Ratio<i128>) -> Value {
    if r.is_integer() {
        exact_int(*r.numer())
    } else {
        Value::from(format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn elem(x: FieldElem) -> Value {
    Value::from(x.to_string())
}

pub fn elems(xs: &[FieldElem]) -> Value {
    Value::from(xs.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

pub fn ratio_to_f64(r: &Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
