//! Language recognition by finite D-monoids and machine verification of the
//! main theorems about the Schützenberger product: the three-witness
//! recognition theorem for marked products, the middle-component sum formula,
//! the decomposition of middle-recognized languages into marked products,
//! closure of recognized languages under the variety's operations, and the
//! universal property of `M ⋄ N` among recognizers.
//!
//! Every check is exact (finite semiring arithmetic, tolerance zero) over the
//! truncated domain `Σ^{≤L}`; each [`VerificationReport`] records that bound,
//! so "pass" always means "verified up to `L`".

mod closure;
mod lmn;
mod theorems;
mod universal;

pub use closure::closure_check;
pub use lmn::{derivative_closed_atoms, lmn_set, LmnItem, LmnSet};
pub use theorems::{
    decompose_middle, reutenauer_check, schurec_witness, DecomposeOutcome, SchurecOutcome,
};
pub use universal::{universal_property_check, UniversalOutcome};

use crate::dmonoid::{eval_word, Assignment, DMonoid};
use crate::error::{Error, Result};
use crate::languages::TruncLanguage;
use crate::limits::Limits;
use crate::valuation::{enumerate_valuations, Valuation};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Outcome of one theorem verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// A size cap prevented a definite answer (POS closure fixpoint).
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// A machine-checked verification result. The JSON serialization is
/// stable-keyed; wall-clock timing is kept out of it so identical runs are
/// byte-identical.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Which statement was checked (`schurec`, `reutenauer`, `decompose`,
    /// `closure`, `universal`, ...).
    pub theorem: String,
    /// Human-readable instance description.
    pub instance: String,
    /// The truncation bound `L`: the verdict covers all words of length ≤ L.
    pub bound: usize,
    pub verdict: Verdict,
    /// Number of individual equalities checked.
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<String>,
    /// Re-evaluable witnesses (expressions, valuations) backing a pass.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<String>,
    /// Present when the check sampled rather than enumerated.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sampling: Option<String>,
    #[serde(skip, default)]
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn new(theorem: &str, instance: String, bound: usize) -> VerificationReport {
        VerificationReport {
            theorem: theorem.to_string(),
            instance,
            bound,
            verdict: Verdict::Pass,
            checks: 0,
            counterexample: None,
            witnesses: Vec::new(),
            sampling: None,
            elapsed_ms: 0,
        }
    }

    /// Records the first failure; later failures keep the first
    /// counterexample.
    pub fn fail(&mut self, counterexample: String) {
        if self.verdict != Verdict::Fail {
            self.verdict = Verdict::Fail;
            self.counterexample = Some(counterexample);
        }
    }

    pub fn inconclusive(&mut self, note: String) {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Inconclusive;
            self.counterexample = Some(note);
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Output format for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Table,
}

/// Renders a report. JSON is stable-keyed and round-trippable and excludes
/// timing; the table form is for humans and includes it.
pub fn emit_report(report: &VerificationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            serde_json::to_string_pretty(report).expect("report serialization cannot fail")
        }
        ReportFormat::Table => {
            let mut out = String::new();
            out.push_str(&format!("theorem   : {}\n", report.theorem));
            out.push_str(&format!("instance  : {}\n", report.instance));
            out.push_str(&format!(
                "bound     : {} (verified on Σ^{{≤{}}})\n",
                report.bound, report.bound
            ));
            out.push_str(&format!("verdict   : {}\n", report.verdict));
            out.push_str(&format!("checks    : {}\n", report.checks));
            if let Some(s) = &report.sampling {
                out.push_str(&format!("sampling  : {s}\n"));
            }
            if let Some(c) = &report.counterexample {
                out.push_str(&format!("counterexample: {c}\n"));
            }
            if !report.witnesses.is_empty() {
                out.push_str(&format!("witnesses ({}):\n", report.witnesses.len()));
                for w in &report.witnesses {
                    out.push_str(&format!("  {w}\n"));
                }
            }
            out.push_str(&format!("elapsed   : {} ms\n", report.elapsed_ms));
            out
        }
    }
}

/// A recognition certificate: `language(w) = valuation(eval(assignment, w))`
/// for every `|w| ≤ language.bound`.
#[derive(Debug, Clone)]
pub struct RecognitionWitness {
    /// What this witness certifies (`K`, `L`, `KaL`, ...).
    pub role: String,
    /// The monoid (or product component) the valuation reads.
    pub monoid: String,
    pub assignment: Assignment,
    pub valuation: Valuation,
    pub language: TruncLanguage,
}

/// Searches for a valuation on `m` making `f` recognize `target`; returns
/// the first one in enumeration order.
pub fn recognizes(
    m: &DMonoid,
    f: &Assignment,
    target: &TruncLanguage,
    limits: &Limits,
) -> Result<Option<Valuation>> {
    if f.alphabet != target.alphabet {
        return Err(Error::input(
            "assignment and target alphabet differ".to_string(),
        ));
    }
    if let Some(&bad) = f.images.iter().find(|&&x| x >= m.size()) {
        return Err(Error::input(format!(
            "letter image {bad} out of range for {}",
            m.name
        )));
    }
    let elems: Vec<usize> = target.words().iter().map(|w| eval_word(m, f, w)).collect();
    let valuations = enumerate_valuations(&m.object, limits)?;
    Ok(valuations.into_iter().find(|p| {
        elems
            .iter()
            .zip(&target.values)
            .all(|(&e, &v)| p.of(e) == v)
    }))
}
