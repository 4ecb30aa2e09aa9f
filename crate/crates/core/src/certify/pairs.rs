//! The two numerator/denominator pairs and their monotonicity and limit
//! certificates.

use std::fmt;
use std::str::FromStr;

use rug::Float;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::identities::{check_identity, run_entries, value_of, d24_entries, d8_entries};
use super::scans::complete_positivity_scan;
use super::{combined_verdict, Certificate, Kind, Verdict};
use crate::expr::Value;
use crate::numeric::{self, real, REAL_PREC};
use crate::{Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairName {
    D8,
    D24,
}

impl fmt::Display for PairName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairName::D8 => "d8",
            PairName::D24 => "d24",
        })
    }
}

impl FromStr for PairName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d8" => Ok(PairName::D8),
            "d24" => Ok(PairName::D24),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// A quotient `F/G` whose limit at `t -> 0` is `limit / pi^2`.
#[derive(Clone, Debug)]
pub struct IneqPair {
    pub name: PairName,
    pub f: Value,
    pub g: Value,
    pub limit: Rational,
    /// Serre weight used in the Wronskian `(∂_k F) G - F (∂_k G)`.
    pub k: i64,
    /// Template of the bracket `B` with `∂_{2k+2} L = Delta B`.
    pub combo: String,
    swapped: bool,
}

const D8_COMBO: &str = "172800*X(4,2)*{G8} + 640*H2*{F8}";
const D24_COMBO: &str = "5486745600*X(8,2)*{G24}";

impl IneqPair {
    pub fn d8() -> Self {
        Self::build(PairName::D8, D8_COMBO)
    }

    pub fn d24() -> Self {
        Self::build(PairName::D24, D24_COMBO)
    }

    pub fn get(name: PairName) -> Self {
        match name {
            PairName::D8 => Self::d8(),
            PairName::D24 => Self::d24(),
        }
    }

    fn build(name: PairName, combo: &str) -> Self {
        let (f, g, limit, k) = match name {
            PairName::D8 => ("{F8}", "{G8}", 18, 10),
            PairName::D24 => ("{F24}", "{G24}", 432, 14),
        };
        Self {
            name,
            f: value_of(f).expect("pair numerator elaborates"),
            g: value_of(g).expect("pair denominator elaborates"),
            limit: Rational::from(limit),
            k,
            combo: combo.to_string(),
            swapped: false,
        }
    }

    /// Same pair with a different claimed bracket, for negative controls.
    pub fn with_combo(&self, combo: &str) -> Self {
        Self { combo: combo.to_string(), ..self.clone() }
    }

    /// The pair `(G, F)`.
    pub fn swapped(&self) -> Self {
        Self { f: self.g.clone(), g: self.f.clone(), swapped: !self.swapped, ..self.clone() }
    }

    /// `L = (∂_k F) G - F (∂_k G)`.
    pub fn wronskian(&self) -> Value {
        self.f.serre(self.k).mul(&self.g).sub(&self.f.mul(&self.g.serre(self.k)))
    }

    fn label(&self) -> String {
        if self.swapped {
            format!("{}_swapped", self.name)
        } else {
            self.name.to_string()
        }
    }
}

/// Pass iff `ord F > ord G` and both leading coefficients are positive.
pub fn vanishing_order_compare(name: &str, f: &Value, g: &Value, prec: i64) -> Result<Certificate> {
    let (sf, sg) = (f.to_qexp(prec)?, g.to_qexp(prec)?);
    let anchor = "comparison of vanishing orders at the cusp";
    let (Some((of, cf)), Some((og, cg))) = (sf.leading(), sg.leading()) else {
        return Ok(Certificate::new(
            name.to_string(),
            Kind::VanishingOrder,
            Verdict::Inconclusive,
            anchor,
            json!({ "reason": "a series is zero to working precision", "prec_index": prec }),
        ));
    };
    let ok = of > og && *cf > 0 && *cg > 0;
    Ok(Certificate::new(
        name.to_string(),
        Kind::VanishingOrder,
        ok.into(),
        anchor,
        json!({
            "order_f": Rational::from((of, 2)).to_string(),
            "order_g": Rational::from((og, 2)).to_string(),
            "leading_f": cf.to_string(),
            "leading_g": cg.to_string(),
        }),
    ))
}

/// Composes the Wronskian identity, positivity of its bracket and the
/// vanishing-order comparison; `order` is the positivity scan order in q.
pub fn monotonicity_certificate(pair: &IneqPair, order: i64) -> Result<Certificate> {
    let label = pair.label();
    let l = pair.wronskian();
    let combo = value_of(&pair.combo)?;
    let delta = value_of("Delta")?;
    let parts = vec![
        check_identity(
            &format!("{label}_wronskian_identity"),
            "Serre derivative of the Wronskian",
            &l.serre(2 * pair.k + 2),
            &delta.mul(&combo),
        ),
        complete_positivity_scan(
            &format!("{label}_bracket_positivity"),
            "the bracket is completely positive",
            &combo.to_qexp(2 * order + 1)?,
        ),
        vanishing_order_compare(&format!("{label}_vanishing_order"), &pair.f, &pair.g, 16)?,
    ];
    let verdict = combined_verdict(&parts);
    Ok(Certificate::new(
        format!("{label}_monotonicity"),
        Kind::Monotonicity,
        verdict,
        "F/G is strictly decreasing on t > 0",
        json!({
            "serre_weight": pair.k,
            "bracket": pair.combo,
            "positivity_order": order,
            "steps": parts,
        }),
    ))
}

/// Exact transformation formulas for `F(i/t)` and `G(i/t)`, then the numeric
/// value of `F(i/t)/G(i/t)` at `t_large` against `limit/pi^2`.
pub fn limit_check(pair: &IneqPair, t_large: f64, prec: i64, tol: f64) -> Result<Certificate> {
    let (entries, names) = match pair.name {
        PairName::D8 => (d8_entries(), ["d8_limit_f", "d8_limit_f_slash", "d8_limit_g"].as_slice()),
        PairName::D24 => (d24_entries(), ["d24_limit_f", "d24_limit_g", "d24_g_slash"].as_slice()),
    };
    let entries: Vec<_> = entries.into_iter().filter(|e| names.contains(&e.name)).collect();
    let exact = run_entries(&entries);

    let t = real(t_large);
    let fv = pair.f.into_rqm().flip()?.eval(&t, prec, tol)?;
    let gv = pair.g.into_rqm().flip()?.eval(&t, prec, tol)?;
    let quotient = Float::with_val(REAL_PREC, &fv.value / &gv.value);
    let pi = numeric::pi();
    let target = Float::with_val(REAL_PREC, numeric::from_rational(&pair.limit) / Float::with_val(REAL_PREC, &pi * &pi));
    let gap = Float::with_val(REAL_PREC, &quotient - &target).abs();
    let numeric_ok = gap <= tol;
    let exact_ok = exact.iter().all(Certificate::passed);
    Ok(Certificate::new(
        format!("{}_limit", pair.name),
        Kind::NumericScan,
        (exact_ok && numeric_ok).into(),
        "F(it)/G(it) tends to a multiple of 1/pi^2 as t -> 0",
        json!({
            "exact": exact,
            "t_large": t_large,
            "prec_index": prec,
            "tol": tol,
            "quotient": quotient.to_string_radix(10, Some(20)),
            "target": target.to_string_radix(10, Some(20)),
            "gap": gap.to_f64(),
        }),
    ))
}

/// All certificates of one pair: its identities, monotonicity and limit.
pub fn pair_suite(pair: &IneqPair, order: i64, t_large: f64, prec: i64, tol: f64) -> Result<Vec<Certificate>> {
    let mut out = run_entries(&match pair.name {
        PairName::D8 => d8_entries(),
        PairName::D24 => d24_entries(),
    });
    out.push(monotonicity_certificate(pair, order)?);
    out.push(limit_check(pair, t_large, prec, tol)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishing_orders() {
        let d8 = IneqPair::d8();
        let c = vanishing_order_compare("d8", &d8.f, &d8.g, 16).unwrap();
        assert!(c.passed());
        assert_eq!(c.evidence["order_f"], "2");
        assert_eq!(c.evidence["order_g"], "3/2");
        let d24 = IneqPair::d24();
        let c = vanishing_order_compare("d24", &d24.f, &d24.g, 16).unwrap();
        assert!(c.passed());
        assert_eq!(c.evidence["order_f"], "3");
        assert_eq!(c.evidence["order_g"], "5/2");
        assert!(!vanishing_order_compare("gg", &d8.g, &d8.g, 16).unwrap().passed());
    }

    #[test]
    fn monotonicity_and_controls() {
        for pair in [IneqPair::d8(), IneqPair::d24()] {
            assert!(monotonicity_certificate(&pair, 40).unwrap().passed());
            let c = monotonicity_certificate(&pair.swapped(), 40).unwrap();
            assert!(!c.passed());
            assert!(!c.evidence["steps"][2]["verdict"].eq("pass"));
        }
        let bad = IneqPair::d8().with_combo("172801*X(4,2)*{G8} + 640*H2*{F8}");
        let c = monotonicity_certificate(&bad, 40).unwrap();
        assert!(!c.passed());
        assert_eq!(c.evidence["steps"][0]["verdict"], "fail");
    }

    #[test]
    fn limits_at_moderate_t() {
        assert!(limit_check(&IneqPair::d8(), 6.0, 240, 1e-8).unwrap().passed());
        assert!(limit_check(&IneqPair::d24(), 6.0, 240, 1e-6).unwrap().passed());
    }

    #[test]
    fn limit_gap_at_t4_exceeds_tolerance() {
        let c = limit_check(&IneqPair::d8(), 4.0, 240, 1e-8).unwrap();
        let gap = c.evidence["gap"].as_f64().unwrap();
        assert!(gap > 1e-8 && gap < 1e-7, "{gap}");
    }
}
