//! Reduction chain for the refined d=24 inequality on `(0, 3 pi/10)`.

use rug::ops::Pow;
use rug::Float;
use serde_json::json;

use super::identities::{d24_entries, run_entries, value_of};
use super::{Certificate, Kind};
use crate::numeric::{self, real, Real, REAL_PREC};
use crate::qseries::divisor_sum;
use crate::rqm::AxisEvaluator;
use crate::{rat, Integer, Rational, Result};

/// `g(t) G(it) = 432 G/pi^2 - F - 725760 Delta (1/(pi t^3) - 10/(3 pi^2 t^2))`.
pub const G_TIMES_G: &str = "432*P^2*{G24} - {F24} - 725760*Delta*{RT}";

fn sigma(k: u32, n: i64) -> Rational {
    Rational::from(divisor_sum(k, n as u64))
}

/// The closed coefficient formulas of the auxiliary forms and the elementary
/// divisor-sum bounds, for `1 <= n <= order`.
pub fn j_coefficients(order: i64) -> Result<Vec<Certificate>> {
    type Formula = fn(i64) -> Rational;
    let forms: [(&str, &str, Formula); 3] = [
        ("j1_coefficients", "5/36*E2^2 + 1/9*E4 - 1/4*E2", |n| {
            sigma(3, n) * Rational::from(60) - sigma(1, n) * Rational::from(40 * n) + sigma(1, n) * Rational::from(6)
        }),
        ("j2_coefficients", "E2 - E6", |n| sigma(5, n) * Rational::from(504) - sigma(1, n) * Rational::from(24)),
        ("j3_coefficients", "E2*E4 - 1/10*E6 - 9/10*E4", |n| {
            sigma(3, n) * Rational::from(720 * n) - sigma(5, n) * rat(2268, 5) - sigma(3, n) * Rational::from(216)
        }),
    ];
    let mut out = Vec::new();
    for (name, src, formula) in forms {
        let s = value_of(src)?.to_qexp(2 * order + 1)?;
        let mismatch = (0..=order).find(|&n| {
            let expected = if n == 0 { Rational::new() } else { formula(n) };
            s.q_coeff(n).unwrap_or_default() != expected
        });
        out.push(Certificate::new(
            name.into(),
            Kind::ClosedFormBound,
            mismatch.is_none().into(),
            "closed formulas for the coefficients of the auxiliary forms",
            json!({ "expr": src, "order": order, "first_mismatch": mismatch }),
        ));
    }

    let mut bad = Vec::new();
    for n in 1..=order {
        let (s1, s3) = (divisor_sum(1, n as u64), divisor_sum(3, n as u64));
        let n_int = Integer::from(n);
        if s3 < n_int.clone().pow(3) {
            bad.push(json!({ "n": n, "bound": "sigma3(n) >= n^3" }));
        }
        if s1 > n_int.clone().pow(2) {
            bad.push(json!({ "n": n, "bound": "sigma1(n) <= n^2" }));
        }
        if n >= 2 && Integer::from(&s3 * n) * 16u32 > n_int.clone().pow(5) * 9u32 {
            bad.push(json!({ "n": n, "bound": "n sigma3(n) <= 9 n^5 / 16" }));
        }
    }
    out.push(Certificate::new(
        "divisor_bounds".into(),
        Kind::ClosedFormBound,
        bad.is_empty().into(),
        "elementary divisor-sum bounds",
        json!({ "range": format!("1 <= n <= {order}"), "violations": bad }),
    ));

    let j3 = value_of("E2*E4 - 1/10*E6 - 9/10*E4")?.to_qexp(2 * order + 1)?;
    let a1 = j3.q_coeff(1).unwrap_or_default();
    let positive_after: Vec<i64> = (2..=order).filter(|&n| j3.q_coeff(n).unwrap_or_default() >= 0).collect();
    out.push(Certificate::new(
        "j3_signs".into(),
        Kind::ClosedFormBound,
        (a1 == rat(252, 5) && positive_after.is_empty()).into(),
        "exp(2 pi t) J3(it) is increasing: a1 > 0 and an < 0 for n >= 2",
        json!({ "a1": a1.to_string(), "order": order, "nonnegative_after_first": positive_after }),
    ));
    Ok(out)
}

/// `J3(i) = (3/pi - 9/10) E4(i) > 0`.
pub fn j3_at_i(prec: i64, tol: f64) -> Result<Certificate> {
    let one = real(1.0);
    let j3 = value_of("E2*E4 - 1/10*E6 - 9/10*E4")?.eval(&one, prec, 1e-60)?.value;
    let e4 = value_of("E4")?.eval(&one, prec, 1e-60)?.value;
    let pi = numeric::pi();
    let factor = Float::with_val(REAL_PREC, 3u32 / &pi) - 0.9f64;
    let target = Float::with_val(REAL_PREC, &factor * &e4);
    let gap = Float::with_val(REAL_PREC, &j3 - &target).abs().to_f64();
    Ok(Certificate::new(
        "j3_at_i".into(),
        Kind::NumericScan,
        (gap <= tol && j3 > 0).into(),
        "J3 is positive at z = i",
        json!({ "value": j3.to_f64(), "target": target.to_f64(), "gap": gap, "tol": tol, "prec_index": prec }),
    ))
}

/// `Delta(it) < exp(-2 pi t)`: every factor of the product lies in (0, 1).
/// Spot checks `exp(2 pi t) Delta(it)` on a grid.
pub fn delta_bound(grid: &[Real], prec: i64, tol: f64) -> Result<Certificate> {
    let delta = AxisEvaluator::new(&value_of("Delta")?.into_rqm(), prec, tol)?;
    let two_pi = Float::with_val(REAL_PREC, numeric::pi() * 2u32);
    let mut worst = 0.0f64;
    let mut ok = true;
    for t in grid {
        let growth = Float::with_val(REAL_PREC, &two_pi * t).exp();
        let v = Float::with_val(REAL_PREC, delta.eval(t)?.value * growth);
        ok &= v > 0 && v < 1;
        worst = worst.max(v.to_f64());
    }
    Ok(Certificate::new(
        "delta_bound".into(),
        Kind::NumericScan,
        ok.into(),
        "Delta(it) < exp(-2 pi t) since Delta = q prod (1 - q^n)^24 with 0 < q < 1",
        json!({ "points": grid.len(), "max_scaled_value": worst, "tol": tol, "prec_index": prec }),
    ))
}

/// One sample of the harder inequality.
#[derive(Clone, Debug)]
pub struct HarderRow {
    pub t: Real,
    /// `432/pi^2 - F/G`.
    pub lhs: Real,
    /// `725760 Delta/G (1/(pi t^3) - 10/(3 pi^2 t^2))`.
    pub rhs: Real,
    pub g: Real,
    /// `g G` and its scale, for the margin rule.
    pub gg: Real,
    pub gg_scale: Real,
}

/// Evaluates `LHS`, `RHS` and `g` on a grid; `g G` is evaluated from exact groups.
pub fn harder_rows(grid: &[Real], prec: i64, tol: f64) -> Result<Vec<HarderRow>> {
    let axis = |src: &str| AxisEvaluator::new(&value_of(src)?.into_rqm(), prec, tol);
    let (gg, lhs_g, gv) = (axis(G_TIMES_G)?, axis("432*P^2*{G24} - {F24}")?, axis("{G24}")?);
    grid.iter()
        .map(|t| {
            let g = gv.eval(t)?.value;
            let n = gg.eval(t)?;
            let l = lhs_g.eval(t)?.value;
            let lhs = Float::with_val(REAL_PREC, &l / &g);
            let gval = Float::with_val(REAL_PREC, &n.value / &g);
            Ok(HarderRow {
                t: t.clone(),
                rhs: Float::with_val(REAL_PREC, &lhs - &gval),
                lhs,
                g: gval,
                gg: n.value,
                gg_scale: n.scale,
            })
        })
        .collect()
}

/// `3 pi / 10`, the right end of the domain of the refined inequality.
pub fn harder_endpoint() -> Real {
    Float::with_val(REAL_PREC, numeric::pi() * 3u32) / 10u32
}

/// `g > 0` with margin `tol * scale` and `g` increasing along the grid.
pub fn g_scan(grid: &[Real], prec: i64, tol: f64) -> Result<Certificate> {
    let rows = harder_rows(grid, prec, tol)?;
    let mut nonpositive = Vec::new();
    let mut decreasing = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if r.gg <= Float::with_val(REAL_PREC, &r.gg_scale * tol) {
            nonpositive.push(r.t.to_f64());
        }
        if i > 0 && r.g <= rows[i - 1].g {
            decreasing.push(r.t.to_f64());
        }
    }
    let (lo, hi) = match (grid.first(), grid.last()) {
        (Some(a), Some(b)) => (a.to_f64(), b.to_f64()),
        _ => (f64::NAN, f64::NAN),
    };
    Ok(Certificate::new(
        "harder_g_scan".into(),
        Kind::NumericScan,
        (nonpositive.is_empty() && decreasing.is_empty()).into(),
        "g is positive and increasing on (0, 3 pi/10)",
        json!({
            "grid": { "lo": lo, "hi": hi, "points": grid.len(), "spacing": "log, open interval" },
            "tol": tol,
            "prec_index": prec,
            "g_first": rows.first().map(|r| r.g.to_f64()),
            "g_last": rows.last().map(|r| r.g.to_f64()),
            "nonpositive_at": nonpositive,
            "not_increasing_at": decreasing,
        }),
    ))
}

/// At `t = 3 pi/10` the bracket `(∂12 G) RT - G RT2` equals `-G 5000/(81 pi^6)`.
pub fn boundary_value(prec: i64, tol: f64) -> Result<Certificate> {
    let t = harder_endpoint();
    let bracket = value_of("S[12]({G24})*{RT} - {G24}*{RT2}")?.into_rqm().eval_auto(&t, prec, tol)?.value;
    let g = value_of("{G24}")?.into_rqm().eval_auto(&t, prec, tol)?.value;
    let pi6 = Float::with_val(REAL_PREC, numeric::pi().square() * numeric::pi().square() * numeric::pi().square());
    let target = -Float::with_val(REAL_PREC, &g * 5000u32) / (pi6 * 81u32);
    let rel = Float::with_val(REAL_PREC, &bracket - &target).abs() / Float::with_val(REAL_PREC, target.abs_ref());
    let rel = rel.to_f64();
    Ok(Certificate::new(
        "harder_boundary".into(),
        Kind::NumericScan,
        (rel <= tol && bracket < 0).into(),
        "the correction bracket is negative at t = 3 pi/10",
        json!({ "t": t.to_f64(), "bracket": bracket.to_f64(), "target": target.to_f64(), "relative_gap": rel, "tol": tol }),
    ))
}

/// The whole reduction chain.
pub fn harder_inequality_suite(order: i64, points: usize, prec: i64, tol: f64) -> Result<Vec<Certificate>> {
    let names = ["correction_serre_factor", "harder_factor", "harder_factor_flip", "x82_closed_form", "x82_slash", "j1_expansion", "j3_expansion"];
    let entries: Vec<_> = d24_entries().into_iter().filter(|e| names.contains(&e.name)).collect();
    let mut out = run_entries(&entries);
    out.extend(j_coefficients(order)?);
    out.push(j3_at_i(prec, tol)?);
    out.push(delta_bound(&numeric::log_grid(0.05, 10.0, 16), prec, tol)?);
    let grid = numeric::open_log_grid(&real(0.01), &harder_endpoint(), points);
    out.push(g_scan(&grid, prec, tol)?);
    out.push(boundary_value(prec, tol)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_formulas() {
        for c in j_coefficients(60).unwrap() {
            assert!(c.passed(), "{}: {}", c.name, c.evidence);
        }
        let j2 = value_of("E2 - E6").unwrap().to_qexp(3).unwrap();
        assert_eq!(j2.q_coeff(1).unwrap(), 480);
    }

    #[test]
    fn numeric_parts() {
        assert!(j3_at_i(240, 1e-10).unwrap().passed());
        assert!(boundary_value(240, 1e-9).unwrap().passed());
        assert!(delta_bound(&numeric::log_grid(0.05, 10.0, 8), 240, 1e-9).unwrap().passed());
        let grid = numeric::open_log_grid(&real(0.01), &harder_endpoint(), 12);
        let c = g_scan(&grid, 240, 1e-9).unwrap();
        assert!(c.passed(), "{}", c.evidence);
    }

    #[test]
    fn g_vanishes_at_zero() {
        let rows = harder_rows(&[real(0.02)], 240, 1e-9).unwrap();
        assert!(rows[0].g.to_f64().abs() < 1e-6);
    }
}
