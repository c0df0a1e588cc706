//! Rule engine: evaluates the sufficient numerical criteria on a degree
//! sequence and reports exactly what they certify about `W(b;a)`.
//!
//! Each rule is a list of named inequality predicates over the degree data,
//! so every verdict carries a printable hypothesis trace.  A guarantee is
//! only ever emitted when every traced condition holds.

use crate::combinatorics::{
    conjectured_dim, is_counterexample_family, lambda_c, upper_bound_status, InvariantError,
};
use crate::degrees::{CharFlag, DegreeSpec};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckerError {
    #[error("the family W(b;a) is empty")]
    EmptyFamily,
}

impl From<InvariantError> for CheckerError {
    fn from(_: InvariantError) -> Self {
        CheckerError::EmptyFamily
    }
}

/// Stable identifiers for the implemented rules; these strings are part of
/// the report format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RuleId {
    #[serde(rename = "THM-3.2")]
    DimensionTheorem,
    #[serde(rename = "RMK-2.3")]
    LowCodimRemark,
    #[serde(rename = "COR-3.6")]
    SmoothComponent,
    #[serde(rename = "CONJ-4.1")]
    DimensionConjecture,
    #[serde(rename = "CONJ-4.2")]
    ComponentConjecture,
}

impl RuleId {
    pub fn as_str(&self) -> &'static str {
        match self {
            RuleId::DimensionTheorem => "THM-3.2",
            RuleId::LowCodimRemark => "RMK-2.3",
            RuleId::SmoothComponent => "COR-3.6",
            RuleId::DimensionConjecture => "CONJ-4.1",
            RuleId::ComponentConjecture => "CONJ-4.2",
        }
    }

    /// Fixed rule order used for the sweep bitset.
    pub const ALL: [RuleId; 5] = [
        RuleId::DimensionTheorem,
        RuleId::LowCodimRemark,
        RuleId::SmoothComponent,
        RuleId::DimensionConjecture,
        RuleId::ComponentConjecture,
    ];
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a fired rule certifies.  `SmoothComponent` means the closure of
/// `W(b;a)` is a generically smooth irreducible component of the Hilbert
/// scheme; where the rule also pins the dimension this is recorded in the
/// verdict notes.  Conjecture rules never certify anything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Guarantee {
    DimEquals,
    SmoothComponent,
    Nothing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceItem {
    pub condition: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub rule: RuleId,
    pub applies: bool,
    pub guarantees: Guarantee,
    pub trace: Vec<TraceItem>,
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(rule: RuleId) -> Self {
        Verdict {
            rule,
            applies: false,
            guarantees: Guarantee::Nothing,
            trace: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn cond(&mut self, condition: String, holds: bool) -> bool {
        self.trace.push(TraceItem { condition, holds });
        holds
    }

    fn finish(mut self, guarantee_when_all_hold: Guarantee) -> Self {
        self.applies = self.trace.iter().all(|t| t.holds);
        self.guarantees = if self.applies {
            guarantee_when_all_hold
        } else {
            Guarantee::Nothing
        };
        self
    }

    /// Soundness invariant: a guarantee is only emitted when the rule
    /// applies and every traced condition holds.
    pub fn is_sound(&self) -> bool {
        self.guarantees == Guarantee::Nothing
            || (self.applies && self.trace.iter().all(|t| t.holds))
    }
}

/// Dimension rule `THM-3.2`: for a non-empty family with `a_0 > b_t` and
/// the column-gap inequality for its codimension range, the dimension of
/// `W(b;a)` equals the conjectured value `lambda_c + K_3 + ... + K_c`.
/// In codimension 2 the formula `lambda_2` is certified whenever `n > c`.
pub fn check_dimension_theorem(s: &DegreeSpec, ch: CharFlag) -> Result<Verdict, CheckerError> {
    require_nonempty(s)?;
    let mut v = Verdict::new(RuleId::DimensionTheorem);
    let t = s.t();
    let c = s.c();
    if c == 2 {
        v.cond(
            format!("n - c >= 1 ({} - {} >= 1)", s.n(), c),
            s.n() as usize > c,
        );
        let mut v = v.finish(Guarantee::DimEquals);
        if v.applies {
            v.notes.push(format!(
                "codimension 2: dim W(b;a) = lambda_2 = {}",
                lambda_c(s)
            ));
        }
        return Ok(v);
    }

    v.cond(
        format!("a_0 > b_t ({} > {})", s.a_deg(0), s.b_deg(t)),
        s.a_deg(0) > s.b_deg(t),
    );
    if (3..=5).contains(&c) {
        v.cond(
            format!(
                "a_(t+c-2) > a_(t-2) ({} > {})",
                s.a_deg(t + c - 2),
                s.a_deg(t - 2)
            ),
            s.a_deg(t + c - 2) > s.a_deg(t - 2),
        );
    } else {
        // c >= 6: the strong gap works in any characteristic, the weaker
        // one only in characteristic zero.
        let strong = s.a_deg(t + 3) > s.a_deg(t - 2);
        if ch.is_zero() {
            let weak = s.a_deg(t + 4) > s.a_deg(t - 2);
            v.cond(
                format!(
                    "a_(t+3) > a_(t-2) or a_(t+4) > a_(t-2) in char 0 ({} > {} or {} > {})",
                    s.a_deg(t + 3),
                    s.a_deg(t - 2),
                    s.a_deg(t + 4),
                    s.a_deg(t - 2)
                ),
                strong || weak,
            );
        } else {
            v.cond(
                format!("a_(t+3) > a_(t-2) ({} > {})", s.a_deg(t + 3), s.a_deg(t - 2)),
                strong,
            );
        }
    }
    let mut v = v.finish(Guarantee::DimEquals);
    if v.applies {
        v.notes.push(
            "dimension obtained by induction on the codimension via column deletion; \
             the degree-0 hom bound along the flag is an equality here"
                .to_string(),
        );
    }
    Ok(v)
}

/// Low-codimension rule `RMK-2.3`: three degree shapes where the dimension
/// formula holds with no assumption on `n - c` or the characteristic.
pub fn check_low_codim_remark(s: &DegreeSpec) -> Result<Verdict, CheckerError> {
    require_nonempty(s)?;
    let mut v = Verdict::new(RuleId::LowCodimRemark);
    let t = s.t();
    let c = s.c();
    let n = s.n() as usize;
    if c == 5 {
        let rhs = s.a_deg(t - 1) + s.a_deg(t) + s.a_deg(t + 1) - s.a_deg(0) - s.a_deg(1);
        v.cond(
            format!(
                "c = 5: a_(t+3) > a_(t-1) + a_t + a_(t+1) - a_0 - a_1 ({} > {})",
                s.a_deg(t + 3),
                rhs
            ),
            s.a_deg(t + 3) > rhs,
        );
    } else if n == 4 && c == 4 {
        let rhs = s.a_deg(t - 1) + s.a_deg(t) - s.a_deg(0);
        v.cond(
            format!("n = c = 4: a_(t+2) > a_(t-1) + a_t - a_0 ({} > {})", s.a_deg(t + 2), rhs),
            s.a_deg(t + 2) > rhs,
        );
    } else if n == 3 && c == 3 {
        v.cond(
            format!("n = c = 3: a_(t+1) > a_(t-1) ({} > {})", s.a_deg(t + 1), s.a_deg(t - 1)),
            s.a_deg(t + 1) > s.a_deg(t - 1),
        );
        // Strict inequality required here, not the weak form.
        let strict = (2..=t).all(|i| s.a_deg(i - 2) > s.b_deg(i));
        v.cond("a_(i-2) > b_i for 2 <= i <= t".to_string(), strict);
    } else {
        v.cond(
            format!("c = 5, or n = c = 4, or n = c = 3 (got n = {n}, c = {c})"),
            false,
        );
    }
    Ok(v.finish(Guarantee::DimEquals))
}

/// Smooth-component rule `COR-3.6`: numerical conditions under which the
/// closure of `W(b;a)` is a generically smooth irreducible component of the
/// Hilbert scheme.  Covers the unconditional low-codimension ranges
/// (`c = 2` with `n - c >= 1`; `3 <= c <= 4` with `n - c >= 2`), their
/// inequality variants for `n - c = 1`, and the general `c >= 5` criterion.
pub fn check_smooth_component(s: &DegreeSpec) -> Result<Verdict, CheckerError> {
    require_nonempty(s)?;
    let mut v = Verdict::new(RuleId::SmoothComponent);
    let t = s.t();
    let c = s.c();
    let n = s.n() as usize;
    match c {
        2 => {
            v.cond(format!("n - c >= 1 ({n} - {c} >= 1)"), n > c);
            let mut v = v.finish(Guarantee::SmoothComponent);
            if v.applies {
                v.notes.push(
                    "codimension 2: the Hilbert scheme is smooth at every point of the \
                     family and dim W(b;a) = lambda_2"
                        .to_string(),
                );
            }
            return Ok(v);
        }
        3 | 4 if n >= c + 2 => {
            v.cond(format!("3 <= c <= 4 and n - c >= 2 ({n} - {c} >= 2)"), true);
            let mut v = v.finish(Guarantee::SmoothComponent);
            v.notes.push(
                "unconditional in this codimension/dimension range; the dimension \
                 formula holds here as well"
                    .to_string(),
            );
            return Ok(v);
        }
        3 | 4 => {
            let offset = if c == 3 { 1 } else { 2 };
            let rhs = s.a_deg(t - 1) + s.a_deg(t) - s.b_deg(1);
            v.cond(format!("n - c >= 1 ({n} - {c} >= 1)"), n > c);
            v.cond(
                format!("a_0 > b_t ({} > {})", s.a_deg(0), s.b_deg(t)),
                s.a_deg(0) > s.b_deg(t),
            );
            v.cond(
                format!(
                    "a_(t+{offset}) > a_(t-1) + a_t - b_1 ({} > {})",
                    s.a_deg(t + offset),
                    rhs
                ),
                s.a_deg(t + offset) > rhs,
            );
        }
        _ => {
            let rhs = s.a_deg(t - 1) + s.a_deg(t) - s.b_deg(1);
            v.cond(format!("n - c >= 1 ({n} - {c} >= 1)"), n > c);
            v.cond(
                format!("a_0 > b_t ({} > {})", s.a_deg(0), s.b_deg(t)),
                s.a_deg(0) > s.b_deg(t),
            );
            v.cond(
                format!("a_(t+3) > a_(t-1) + a_t - b_1 ({} > {})", s.a_deg(t + 3), rhs),
                s.a_deg(t + 3) > rhs,
            );
        }
    }
    let mut v = v.finish(Guarantee::SmoothComponent);
    if v.applies {
        v.notes.push(format!(
            "component dimension equals the conjectured value {}",
            conjectured_dim(s).expect("non-empty by precondition")
        ));
    }
    Ok(v)
}

/// Conjecture region reports (`CONJ-4.1`, `CONJ-4.2`).  These never
/// guarantee anything; the verdicts state whether the degree data lies in
/// each conjecture's hypothesis region and what the conjecture would
/// predict there.
pub fn check_conjectures(s: &DegreeSpec) -> Result<Vec<Verdict>, CheckerError> {
    require_nonempty(s)?;
    let t = s.t();
    let c = s.c();
    let n = s.n() as usize;

    let mut dim_conj = Verdict::new(RuleId::DimensionConjecture);
    dim_conj.cond(format!("n >= c ({n} >= {c})"), n >= c);
    let q = (c / 2 + 1).min(t);
    let strict_needed = n == c;
    let region = (q..=t).all(|i| {
        if strict_needed {
            s.a_deg(i - q) > s.b_deg(i)
        } else {
            s.a_deg(i - q) >= s.b_deg(i)
        }
    });
    dim_conj.cond(
        format!(
            "a_(i-q) {} b_i for q <= i <= t, q = min(floor(c/2)+1, t) = {q}{}",
            if strict_needed { ">" } else { ">=" },
            if strict_needed { " (strict since n = c)" } else { "" }
        ),
        region,
    );
    let excluded = is_counterexample_family(s);
    dim_conj.cond(
        "not the excluded family of c+1 points in P^c".to_string(),
        !excluded,
    );
    let mut dim_conj = dim_conj.finish(Guarantee::Nothing);
    dim_conj.applies = dim_conj.trace.iter().all(|t| t.holds);
    if dim_conj.applies {
        dim_conj.notes.push(format!(
            "predicts dim W(b;a) = {}",
            conjectured_dim(s).expect("non-empty by precondition")
        ));
    } else if excluded {
        dim_conj.notes.push(
            "excluded counterexample family: the predicted value is a strict upper bound"
                .to_string(),
        );
    }

    let mut comp_conj = Verdict::new(RuleId::ComponentConjecture);
    comp_conj.cond(format!("n - c >= 2 ({n} - {c} >= 2)"), n >= c + 2);
    comp_conj.cond(format!("c >= 5 ({c} >= 5)"), c >= 5);
    comp_conj.cond(
        format!("a_0 > b_t ({} > {})", s.a_deg(0), s.b_deg(t)),
        s.a_deg(0) > s.b_deg(t),
    );
    let mut comp_conj = comp_conj.finish(Guarantee::Nothing);
    comp_conj.applies = comp_conj.trace.iter().all(|t| t.holds);
    if comp_conj.applies {
        comp_conj.notes.push(
            "predicts: the closure of W(b;a) is a generically smooth irreducible \
             component of the Hilbert scheme"
                .to_string(),
        );
    }
    Ok(vec![dim_conj, comp_conj])
}

/// Structured verdict for one degree sequence: non-emptiness, the
/// conjectured dimension and its upper-bound status, all rule verdicts, and
/// explanatory notes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub spec: DegreeSpec,
    pub characteristic: CharFlag,
    pub nonempty: bool,
    #[serde(with = "crate::bigint_serde::opt")]
    pub conjectured_dim: Option<BigInt>,
    #[serde(with = "crate::bigint_serde::opt")]
    pub upper_bound: Option<BigInt>,
    pub verdicts: Vec<Verdict>,
    pub counterexample_flag: bool,
    /// Some `a_j = b_i`: the defining matrix may carry unit entries, so the
    /// Eagon-Northcott ranks are only upper bounds for the Betti numbers.
    pub non_minimal_flag: bool,
    pub notes: Vec<String>,
}

/// Runs every rule on the degree sequence and assembles the [`Report`].
/// Pure function of `(spec, characteristic)`; empty families produce a
/// report with `nonempty = false` and no verdicts.
pub fn analyze(s: &DegreeSpec, ch: CharFlag) -> Report {
    let nonempty = s.is_nonempty();
    let non_minimal = s.has_degree_zero_entry();
    if !nonempty {
        return Report {
            spec: s.clone(),
            characteristic: ch,
            nonempty,
            conjectured_dim: None,
            upper_bound: None,
            verdicts: Vec::new(),
            counterexample_flag: false,
            non_minimal_flag: non_minimal,
            notes: vec!["empty family: the non-emptiness criterion fails".to_string()],
        };
    }

    let ub = upper_bound_status(s).expect("non-empty family");
    let mut verdicts = vec![
        check_dimension_theorem(s, ch).expect("non-empty family"),
        check_low_codim_remark(s).expect("non-empty family"),
        check_smooth_component(s).expect("non-empty family"),
    ];
    verdicts.extend(check_conjectures(s).expect("non-empty family"));

    let mut notes = vec![format!(
        "{} is an unconditional upper bound for dim W(b;a)",
        ub.value
    )];
    if let Some(n) = &ub.note {
        notes.push(n.clone());
    }
    if non_minimal {
        notes.push(
            "some a_j = b_i: the defining matrix may be non-minimal; Hilbert data is \
             unaffected but resolution ranks are upper bounds"
                .to_string(),
        );
    }
    Report {
        spec: s.clone(),
        characteristic: ch,
        nonempty,
        conjectured_dim: Some(ub.value.clone()),
        upper_bound: Some(ub.value),
        verdicts,
        counterexample_flag: is_counterexample_family(s),
        non_minimal_flag: non_minimal,
        notes,
    }
}

impl Report {
    /// Bitset of fired rules in [`RuleId::ALL`] order (bit i set iff the
    /// i-th rule applies).
    pub fn rule_bitset(&self) -> u32 {
        let mut bits = 0u32;
        for (i, rule) in RuleId::ALL.iter().enumerate() {
            if self
                .verdicts
                .iter()
                .any(|v| v.rule == *rule && v.applies)
            {
                bits |= 1 << i;
            }
        }
        bits
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "W(b;a): n={} t={} c={} b={:?} a={:?}",
            self.spec.n(),
            self.spec.t(),
            self.spec.c(),
            self.spec.b(),
            self.spec.a()
        )?;
        let ch = match self.characteristic {
            CharFlag::Zero => "0".to_string(),
            CharFlag::Prime(p) => p.to_string(),
        };
        writeln!(f, "characteristic: {ch}")?;
        writeln!(f, "nonempty: {}", self.nonempty)?;
        if let Some(d) = &self.conjectured_dim {
            writeln!(f, "conjectured dim: {d} (unconditional upper bound)")?;
        }
        if self.counterexample_flag {
            writeln!(f, "counterexample family: yes")?;
        }
        for v in &self.verdicts {
            let tag = match v.guarantees {
                Guarantee::DimEquals => "DIM_EQUALS",
                Guarantee::SmoothComponent => "SMOOTH_COMPONENT",
                Guarantee::Nothing => {
                    if v.applies {
                        "APPLIES"
                    } else {
                        "NOTHING"
                    }
                }
            };
            writeln!(f, "[{}] {}", v.rule, tag)?;
            for item in &v.trace {
                writeln!(
                    f,
                    "    {} {}",
                    if item.holds { "[ok]" } else { "[--]" },
                    item.condition
                )?;
            }
            for note in &v.notes {
                writeln!(f, "    note: {note}")?;
            }
        }
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        Ok(())
    }
}

fn require_nonempty(s: &DegreeSpec) -> Result<(), CheckerError> {
    if s.is_nonempty() {
        Ok(())
    } else {
        Err(CheckerError::EmptyFamily)
    }
}
