use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::num::Rat;

/// The inequalities the checkers know about. The string tags are the names
/// used on the command line and in JSON output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    /// Same-color probabilities in a uniform proper coloring of a bipartite graph.
    ColoringCorrelation,
    /// `ch(H+e,q) / ch(H,q) >= (q-1)/q` for a missing cross edge.
    ColoringEdgeRatio,
    /// `i(H) / i(H-e) >= 3/4`.
    IndependentEdgeRatio,
    /// `wr(H) / wr(H-e) >= 7/9`.
    WidomEdgeRatio,
    /// `hom(H,G) >= v(G)^n (hom(K_2,G)/v(G)^2)^e(H)`.
    Sidorenko,
    /// Coloring lower bound strengthened by a packing of short even cycles.
    CyclePacking,
    /// Independent-set lower bound for connected graphs.
    ConnectedIndependent,
    /// Widom-Rowlinson lower bound for connected graphs.
    ConnectedWidom,
    /// `wr(H-e | u,v red) >= wr(H-e | u red, v blue)`.
    WidomLemma,
    /// Free-energy gap against the large-girth envelope.
    FreeEnergyGap,
    /// Coloring lower bound for balanced bipartite graphs.
    BalancedBipartite,
}

impl Claim {
    pub const ALL: [Claim; 11] = [
        Claim::ColoringCorrelation,
        Claim::ColoringEdgeRatio,
        Claim::IndependentEdgeRatio,
        Claim::WidomEdgeRatio,
        Claim::Sidorenko,
        Claim::CyclePacking,
        Claim::ConnectedIndependent,
        Claim::ConnectedWidom,
        Claim::WidomLemma,
        Claim::FreeEnergyGap,
        Claim::BalancedBipartite,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Claim::ColoringCorrelation => "thm1_1",
            Claim::ColoringEdgeRatio => "eq_col",
            Claim::IndependentEdgeRatio => "eq_ind",
            Claim::WidomEdgeRatio => "eq_wr",
            Claim::Sidorenko => "sidorenko",
            Claim::CyclePacking => "cor1_2",
            Claim::ConnectedIndependent => "cor1_4",
            Claim::ConnectedWidom => "cor1_6",
            Claim::WidomLemma => "wr_lemma",
            Claim::FreeEnergyGap => "remark2_2",
            Claim::BalancedBipartite => "balanced",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Claim::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown claim {s:?}")))
    }
}

impl Serialize for Claim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
    Inapplicable,
}

/// Direction of the checked inequality, `lhs >= rhs` or `lhs <= rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "<=")]
    AtMost,
}

/// Floating-point companion values for claims whose published form involves
/// irrational constants. Never used for the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AdvisoryFloat {
    pub lhs: f64,
    pub rhs: f64,
}

impl AdvisoryFloat {
    /// `lhs >= rhs` up to a relative tolerance.
    pub fn at_least(&self, tol: f64) -> bool {
        self.lhs >= self.rhs - tol * self.rhs.abs().max(1.0)
    }

    /// `lhs <= rhs` up to a relative tolerance.
    pub fn at_most(&self, tol: f64) -> bool {
        self.lhs <= self.rhs + tol * self.rhs.abs().max(1.0)
    }
}

/// One verification record.
///
/// `margin` is oriented so that a nonnegative margin means the inequality
/// holds, whatever the relation: `lhs - rhs` for `>=`, `rhs - lhs` for `<=`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub instance: String,
    pub claim: Claim,
    pub relation: Relation,
    pub lhs: Option<Rat>,
    pub rhs: Option<Rat>,
    pub verdict: Verdict,
    pub margin: Option<Rat>,
    pub advisory_float: Option<AdvisoryFloat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Report {
    pub fn compare(
        instance: impl Into<String>,
        claim: Claim,
        lhs: Rat,
        relation: Relation,
        rhs: Rat,
    ) -> Report {
        let margin = match relation {
            Relation::AtLeast => &lhs - &rhs,
            Relation::AtMost => &rhs - &lhs,
        };
        let verdict = if margin.is_negative() {
            Verdict::Violated
        } else {
            Verdict::Holds
        };
        Report {
            instance: instance.into(),
            claim,
            relation,
            lhs: Some(lhs),
            rhs: Some(rhs),
            verdict,
            margin: Some(margin),
            advisory_float: None,
            reason: None,
        }
    }

    pub fn at_least(instance: impl Into<String>, claim: Claim, lhs: Rat, rhs: Rat) -> Report {
        Self::compare(instance, claim, lhs, Relation::AtLeast, rhs)
    }

    pub fn at_most(instance: impl Into<String>, claim: Claim, lhs: Rat, rhs: Rat) -> Report {
        Self::compare(instance, claim, lhs, Relation::AtMost, rhs)
    }

    pub fn inapplicable(
        instance: impl Into<String>,
        claim: Claim,
        reason: impl Into<String>,
    ) -> Report {
        Report {
            instance: instance.into(),
            claim,
            relation: Relation::AtLeast,
            lhs: None,
            rhs: None,
            verdict: Verdict::Inapplicable,
            margin: None,
            advisory_float: None,
            reason: Some(reason.into()),
        }
    }

    pub fn with_advisory(mut self, lhs: f64, rhs: f64) -> Report {
        self.advisory_float = Some(AdvisoryFloat { lhs, rhs });
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    /// The advisory comparison in the report's own direction.
    pub fn advisory_holds(&self, tol: f64) -> Option<bool> {
        self.advisory_float.map(|a| match self.relation {
            Relation::AtLeast => a.at_least(tol),
            Relation::AtMost => a.at_most(tol),
        })
    }
}

/// Aggregate of a stream of reports for one claim.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub claim: String,
    pub instances: u64,
    pub holds: u64,
    pub violated: u64,
    pub inapplicable: u64,
}

impl Summary {
    pub fn new(claim: Claim) -> Self {
        Summary {
            claim: claim.tag().to_string(),
            ..Default::default()
        }
    }

    pub fn add(&mut self, r: &Report) {
        self.instances += 1;
        match r.verdict {
            Verdict::Holds => self.holds += 1,
            Verdict::Violated => self.violated += 1,
            Verdict::Inapplicable => self.inapplicable += 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margin_orientation() {
        let r = Report::at_least(
            "x",
            Claim::IndependentEdgeRatio,
            Rat::new(3, 4),
            Rat::new(3, 4),
        );
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.margin.as_ref().unwrap().is_zero());
        let r = Report::at_most(
            "x",
            Claim::ColoringCorrelation,
            Rat::new(1, 2),
            Rat::new(1, 3),
        );
        assert_eq!(r.verdict, Verdict::Violated);
        assert_eq!(r.margin.unwrap(), Rat::new(-1, 6));
    }

    #[test]
    fn json_shape() {
        let r = Report::at_least(
            "g6=A_",
            Claim::WidomEdgeRatio,
            Rat::new(7, 9),
            Rat::new(7, 9),
        );
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["claim"], "eq_wr");
        assert_eq!(v["lhs"], "7/9");
        assert_eq!(v["margin"], "0/1");
        assert_eq!(v["verdict"], "holds");
        assert!(v["advisory_float"].is_null());
        assert!(v.get("reason").is_none());

        let r = Report::inapplicable("g6=Bw", Claim::ColoringCorrelation, "not bipartite");
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], "inapplicable");
        assert_eq!(v["reason"], "not bipartite");
    }

    #[test]
    fn claim_tags_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.tag().parse::<Claim>().unwrap(), c);
        }
        assert!("thm9".parse::<Claim>().is_err());
    }
}
