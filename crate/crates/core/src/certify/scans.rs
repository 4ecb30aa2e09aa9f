//! Coefficient positivity scans, sampled inequality scans and special values.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::Float;
use serde_json::json;

use super::identities::value_of;
use super::{Certificate, Kind};
use crate::extremal::x;
use crate::numeric::{self, real, Real, REAL_PREC};
use crate::qseries::{delta_qexp, QSeries};
use crate::rqm::{eval_grouped, AxisEvaluator, Group, RqmEvaluation};
use crate::{rat, Error, Rational, Result};

/// Pass iff every stored coefficient is nonnegative; the scanned range is the
/// series precision.
pub fn complete_positivity_scan(name: &str, anchor: &str, s: &QSeries) -> Certificate {
    let first = s.first_negative();
    Certificate::new(
        name.to_string(),
        Kind::CoefficientPositivity,
        first.is_none().into(),
        anchor,
        json!({
            "max_index": s.prec() - 1,
            "first_negative": first.map(|(n, c)| json!({ "index": n, "q_exponent": Rational::from((n, 2)).to_string(), "coefficient": c.to_string() })),
        }),
    )
}

/// Positivity of an expression's q-coefficients up to `q^order`.
pub fn positivity_of(name: &str, anchor: &str, src: &str, order: i64) -> Result<Certificate> {
    let mut c = complete_positivity_scan(name, anchor, &value_of(src)?.to_qexp(2 * order + 1)?);
    if let serde_json::Value::Object(m) = &mut c.evidence {
        m.insert("expr".into(), json!(src));
    }
    Ok(c)
}

/// `X_{w,1}` for even `6 <= w <= w_max` and `X_{w,2}` for the listed weights,
/// each scanned up to `q^order`.
pub fn extremal_positivity(w_max: i64, depth2: &[i64], order: i64) -> Result<Vec<Certificate>> {
    let anchor = "extremal quasimodular forms are completely positive";
    let mut out = Vec::new();
    let mut failed = Vec::new();
    for w in (6..=w_max).step_by(2) {
        let c = complete_positivity_scan("", anchor, &x(w, 1).to_qexp(2 * order + 1)?);
        if !c.passed() {
            failed.push(w);
        }
    }
    out.push(Certificate::new(
        "extremal_depth1_positivity".into(),
        Kind::CoefficientPositivity,
        failed.is_empty().into(),
        anchor,
        json!({ "weights": format!("even 6..={w_max}"), "order": order, "failed_weights": failed }),
    ));
    for &w in depth2 {
        out.push(complete_positivity_scan(
            &format!("extremal_x{w}_2_positivity"),
            anchor,
            &x(w, 2).to_qexp(2 * order + 1)?,
        ));
    }
    Ok(out)
}

/// Reindexing `q -> q^N` keeps complete positivity, and a cusp form's scan
/// verdict agrees with that of its derivative.
pub fn positivity_preservation(order: i64) -> Result<Vec<Certificate>> {
    let mut out = Vec::new();
    let prec = 2 * order + 1;
    let samples = ["X(6,1)", "X(10,2)", "Delta*X(4,2)", "Delta", "E4 - E2^2"];
    let mut agree = Vec::new();
    let mut reindex_ok = true;
    for src in samples {
        let s = value_of(src)?.to_qexp(prec)?;
        let base = s.first_negative().is_none();
        for n in [2, 3] {
            let r = s.reindex(n).truncate(prec);
            if base && r.first_negative().is_some() {
                reindex_ok = false;
            }
        }
        let d = s.derivative();
        agree.push(json!({ "expr": src, "positive": base, "derivative_positive": d.first_negative().is_none() }));
    }
    out.push(Certificate::new(
        "reindex_positivity".into(),
        Kind::CoefficientPositivity,
        reindex_ok.into(),
        "substituting q -> q^N preserves complete positivity",
        json!({ "factors": [2, 3], "samples": samples, "prec_index": prec }),
    ));
    let cusp_agree = agree.iter().all(|a| a["positive"] == a["derivative_positive"]);
    out.push(Certificate::new(
        "derivative_positivity".into(),
        Kind::CoefficientPositivity,
        cusp_agree.into(),
        "differentiation preserves complete positivity of cusp forms",
        json!({ "samples": agree, "prec_index": prec }),
    ));
    Ok(out)
}

/// The sampled inequalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inequality {
    D8Ineq1,
    D8Ineq2,
    D24Ineq1,
    D24Ineq2,
    D24Ineq3,
}

impl Inequality {
    pub const ALL: [Inequality; 5] =
        [Self::D8Ineq1, Self::D8Ineq2, Self::D24Ineq1, Self::D24Ineq2, Self::D24Ineq3];

    pub fn name(self) -> &'static str {
        match self {
            Self::D8Ineq1 => "d8ineq1",
            Self::D8Ineq2 => "d8ineq2",
            Self::D24Ineq1 => "d24ineq1",
            Self::D24Ineq2 => "d24ineq2",
            Self::D24Ineq3 => "d24ineq3",
        }
    }

    /// Default grid domain.
    pub fn domain(self) -> (f64, f64) {
        match self {
            Self::D24Ineq3 => (1.0, 10.0),
            _ => (0.05, 10.0),
        }
    }

    fn anchor(self) -> &'static str {
        match self {
            Self::D8Ineq1 => "F + 18 G / pi^2 > 0 for the d=8 pair",
            Self::D8Ineq2 => "F - 18 G / pi^2 < 0 for the d=8 pair",
            Self::D24Ineq1 => "F + 432 G / pi^2 > 0 for the d=24 pair",
            Self::D24Ineq2 => "F - 432 G / pi^2 < 0 for the d=24 pair",
            Self::D24Ineq3 => "the refined lower bound for the d=24 quotient at 1/t",
        }
    }

    /// Expression that must be positive, for the four strict inequalities.
    fn positive_part(self) -> &'static str {
        match self {
            Self::D8Ineq1 => "{F8} + 18*P^2*{G8}",
            Self::D8Ineq2 => "18*P^2*{G8} - {F8}",
            Self::D24Ineq1 => "{F24} + 432*P^2*{G24}",
            Self::D24Ineq2 => "432*P^2*{G24} - {F24}",
            Self::D24Ineq3 => "T^14*flip(432*P^2*{G24} - {F24})",
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Inequality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// `LHS - RHS` of the refined bound multiplied by `Delta(it)^2`, as exact
/// groups: `t^14 M(i/t) - 725760 (t/pi - 10/(3 pi^2)) Delta^2 q^(-1)` with
/// `M = 432 G / pi^2 - F`.
fn refined_bound_groups(prec: i64) -> Result<BTreeMap<Group, QSeries>> {
    let mut groups = value_of(Inequality::D24Ineq3.positive_part())?.into_rqm().to_grouped(prec)?;
    let d = delta_qexp(prec + 2)?;
    let rhs = d.mul(&d).shift(-2)?.scale(&Rational::from(725760));
    let mut put = |g: Group, s: QSeries| {
        let cur = groups.remove(&g).unwrap_or_else(|| QSeries::zero(s.prec()));
        let next = cur.add(&s);
        if !next.is_zero() {
            groups.insert(g, next);
        }
    };
    put((1, -1), rhs.neg());
    put((2, 0), rhs.scale(&rat(10, 3)));
    Ok(groups)
}

struct Point {
    t: Real,
    eval: RqmEvaluation,
}

/// Evaluates an inequality on a grid. Strict inequalities need a value above
/// `tol * scale`; the weak one needs a value above `-tol * scale`.
pub fn inequality_scan(ineq: Inequality, grid: &[Real], prec: i64, tol: f64) -> Result<Certificate> {
    let mut points = Vec::with_capacity(grid.len());
    if ineq == Inequality::D24Ineq3 {
        let groups = refined_bound_groups(prec)?;
        for t in grid {
            if *t < 1 {
                return Err(Error::NonPositivePoint(t.to_f64()));
            }
            points.push(Point { t: t.clone(), eval: eval_grouped(&groups, t, tol)? });
        }
    } else {
        let v = AxisEvaluator::new(&value_of(ineq.positive_part())?.into_rqm(), prec, tol)?;
        for t in grid {
            points.push(Point { t: t.clone(), eval: v.eval(t)? });
        }
    }
    let strict = ineq != Inequality::D24Ineq3;
    let mut failures = Vec::new();
    let mut min_margin: Option<(f64, f64)> = None;
    for p in &points {
        let bound = Float::with_val(REAL_PREC, &p.eval.scale * tol);
        let ok = if strict { p.eval.value > bound } else { p.eval.value >= -bound };
        let rel = if p.eval.scale == 0 {
            0.0
        } else {
            Float::with_val(REAL_PREC, &p.eval.value / &p.eval.scale).to_f64()
        };
        if min_margin.is_none_or(|(m, _)| rel < m) {
            min_margin = Some((rel, p.t.to_f64()));
        }
        if !ok {
            failures.push(p.t.to_f64());
        }
    }
    let (lo, hi) = match (grid.first(), grid.last()) {
        (Some(a), Some(b)) => (a.to_f64(), b.to_f64()),
        _ => (f64::NAN, f64::NAN),
    };
    Ok(Certificate::new(
        ineq.name().to_string(),
        Kind::NumericScan,
        failures.is_empty().into(),
        ineq.anchor(),
        json!({
            "grid": { "lo": lo, "hi": hi, "points": grid.len(), "spacing": "log" },
            "tol": tol,
            "prec_index": prec,
            "strict": strict,
            "min_relative_margin": min_margin.map(|m| m.0),
            "min_margin_at": min_margin.map(|m| m.1),
            "failures": failures,
        }),
    ))
}

/// `E2(i) = 3/pi`, `E6(i) = 0`, `E4(i) = 3 Gamma(1/4)^8 / (64 pi^6)`.
pub fn special_values_check(prec: i64, tol: f64) -> Result<Certificate> {
    let one = real(1.0);
    let pi = numeric::pi();
    let at_i = |src: &str| -> Result<Real> { Ok(value_of(src)?.eval(&one, prec, 1e-60)?.value) };
    let gamma8 = Float::with_val(REAL_PREC, numeric::gamma_quarter().pow(8u32));
    let pi6 = Float::with_val(REAL_PREC, (&pi).pow(6u32));
    let targets = [
        ("E2", Float::with_val(REAL_PREC, 3u32 / &pi)),
        ("E4", Float::with_val(REAL_PREC, gamma8 * 3u32) / (pi6 * 64u32)),
        ("E6", real(0.0)),
    ];
    let mut rows = Vec::new();
    let mut ok = true;
    for (name, target) in targets {
        let v = at_i(name)?;
        let gap = Float::with_val(REAL_PREC, &v - &target).abs().to_f64();
        ok &= gap <= tol;
        rows.push(json!({
            "form": name,
            "value": v.to_string_radix(10, Some(20)),
            "target": target.to_string_radix(10, Some(20)),
            "gap": gap,
        }));
    }
    Ok(Certificate::new(
        "special_values".into(),
        Kind::NumericScan,
        ok.into(),
        "values of Eisenstein series at z = i",
        json!({ "t": 1.0, "tol": tol, "prec_index": prec, "values": rows }),
    ))
}

/// Default log-spaced grid for an inequality.
pub fn default_grid(ineq: Inequality, points: usize) -> Vec<Real> {
    let (lo, hi) = ineq.domain();
    numeric::log_grid(lo, hi, points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_is_not_completely_positive() {
        let c = positivity_of("delta", "", "Delta", 4).unwrap();
        assert!(!c.passed());
        assert_eq!(c.evidence["first_negative"]["q_exponent"], "2");
        assert_eq!(c.evidence["first_negative"]["coefficient"], "-24");
        assert!(positivity_of("x6", "", "X(6,1)", 200).unwrap().passed());
    }

    #[test]
    fn strict_inequalities_on_small_grid() {
        for ineq in Inequality::ALL {
            let c = inequality_scan(ineq, &default_grid(ineq, 9), 240, 1e-9).unwrap();
            assert!(c.passed(), "{ineq}: {}", c.evidence);
        }
    }

    #[test]
    fn reversed_d8ineq2_fails() {
        // At t = 1 the quotient F/G sits below its limit, so F - 18 G / pi^2 < 0.
        let v = value_of("{F8} - 18*P^2*{G8}").unwrap();
        let e = v.eval(&real(1.0), 240, 1e-30).unwrap();
        assert!(e.value < 0);
    }

    #[test]
    fn special_values() {
        assert!(special_values_check(240, 1e-10).unwrap().passed());
    }

    #[test]
    fn preservation_scans() {
        for c in positivity_preservation(60).unwrap() {
            assert!(c.passed(), "{}", c.name);
        }
    }
}
