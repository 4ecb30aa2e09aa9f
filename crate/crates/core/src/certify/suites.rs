//! Named certificate suites, the JSON report and figure data.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rug::Float;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::harder::{harder_endpoint, harder_inequality_suite, harder_rows};
use super::identities::{
    basic_entries, generator_derivatives, l_factor_expansion, run_entries, theta_forms, thetaprod_certificate,
    value_of,
};
use super::pairs::{pair_suite, IneqPair};
use super::scans::{
    default_grid, extremal_positivity, inequality_scan, positivity_preservation, special_values_check, Inequality,
};
use super::{Certificate, Kind, Verdict};
use crate::extremal::{
    check_depth2_exceptional, check_depth1_derivative_recurrences, check_ode_depth1, check_ode_depth2, check_recurrence_chain,
    check_table,
};
use crate::numeric::{self, real, Real, REAL_PREC};
use crate::rqm::AxisEvaluator;
use crate::{Error, Result, DEFAULT_PREC};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    D8,
    D24,
    Extremal,
    Appendix,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["d8", "d24", "extremal", "appendix", "all"];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::D8 => "d8",
            Suite::D24 => "d24",
            Suite::Extremal => "extremal",
            Suite::Appendix => "appendix",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d8" => Ok(Suite::D8),
            "d24" => Ok(Suite::D24),
            "extremal" => Ok(Suite::Extremal),
            "appendix" => Ok(Suite::Appendix),
            "all" => Ok(Suite::All),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// Parameters shared by the suites.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Config {
    /// Series precision index for numeric evaluation.
    pub prec: i64,
    /// Relative tolerance of numeric scans.
    pub tol: f64,
    /// Grid points per inequality domain.
    pub points: usize,
    /// Order in q of coefficient scans.
    pub order: i64,
    /// Point at which the limit quotients are compared.
    pub t_large: f64,
}

impl Default for Config {
    fn default() -> Self {
        Self { prec: DEFAULT_PREC, tol: 1e-9, points: 128, order: 200, t_large: 6.0 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub exact_total: usize,
    pub exact_passed: usize,
    pub numeric_total: usize,
    pub numeric_passed: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub suite: Suite,
    pub config: Config,
    pub summary: Summary,
    pub certificates: Vec<Certificate>,
}

impl Report {
    pub fn new(suite: Suite, config: Config, certificates: Vec<Certificate>) -> Self {
        let mut s = Summary { total: certificates.len(), ..Summary::default() };
        for c in &certificates {
            match c.verdict {
                Verdict::Pass => s.passed += 1,
                Verdict::Fail => s.failed += 1,
                Verdict::Inconclusive => s.inconclusive += 1,
            }
            if c.is_numeric() {
                s.numeric_total += 1;
                s.numeric_passed += usize::from(c.passed());
            } else {
                s.exact_total += 1;
                s.exact_passed += usize::from(c.passed());
            }
        }
        Self { schema: 1, suite, config, summary: s, certificates }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    /// One line per certificate, then the totals.
    pub fn summary_table(&self) -> String {
        let width = self.certificates.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
        let mut out = format!("{:<width$}  {:<22}  verdict\n", "name", "kind");
        for c in &self.certificates {
            let kind = serde_json::to_value(c.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            let verdict = serde_json::to_value(c.verdict).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            out.push_str(&format!("{:<width$}  {:<22}  {}\n", c.name, kind, verdict));
            if let (false, Some(res)) = (c.passed(), c.evidence.get("residual").and_then(|v| v.as_str())) {
                out.push_str(&format!("    residual: {res}\n"));
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "exact: {}/{} passed; numeric sanity checks: {}/{} passed; total: {}/{}\n",
            s.exact_passed, s.exact_total, s.numeric_passed, s.numeric_total, s.passed, s.total
        ));
        out
    }
}

/// `F24` starts `3657830400 q^3 + 138997555200 q^4 + 2567796940800 q^5`.
pub fn f24_leading() -> Result<Certificate> {
    let s = value_of("{F24}")?.to_qexp(12)?;
    let got: Vec<String> = (0..=5).map(|m| s.q_coeff(m).unwrap_or_default().to_string()).collect();
    let expected = ["0", "0", "0", "3657830400", "138997555200", "2567796940800"];
    Ok(Certificate::new(
        "f24_leading".into(),
        Kind::ExactIdentity,
        (got == expected).into(),
        "the d=24 numerator is completely positive with these first coefficients",
        json!({ "coefficients_q0_to_q5": got }),
    ))
}

fn extremal_suite(cfg: &Config) -> Result<Vec<Certificate>> {
    let mut out = check_table()?;
    out.extend([6, 12, 18, 24].map(check_ode_depth1));
    out.extend([4, 8, 12].map(check_ode_depth2));
    out.extend(check_depth1_derivative_recurrences(120));
    out.extend(check_recurrence_chain(40));
    out.extend(check_depth2_exceptional());
    out.extend(extremal_positivity(60, &[4, 8, 10, 12, 14], cfg.order)?);
    Ok(out)
}

fn appendix_suite(cfg: &Config) -> Result<Vec<Certificate>> {
    let mut out = generator_derivatives(cfg.prec)?;
    out.extend(theta_forms(cfg.prec)?);
    out.extend(run_entries(&basic_entries()));
    out.push(thetaprod_certificate(8));
    out.push(l_factor_expansion(cfg.prec)?);
    out.extend(positivity_preservation(cfg.order)?);
    out.push(special_values_check(cfg.prec, 1e-10)?);
    Ok(out)
}

fn scans(ineqs: &[Inequality], cfg: &Config) -> Result<Vec<Certificate>> {
    ineqs.iter().map(|&i| inequality_scan(i, &default_grid(i, cfg.points), cfg.prec, cfg.tol)).collect()
}

fn d8_suite(cfg: &Config) -> Result<Vec<Certificate>> {
    let mut out = pair_suite(&IneqPair::d8(), cfg.order, cfg.t_large, cfg.prec, 1e-8)?;
    out.extend(scans(&[Inequality::D8Ineq1, Inequality::D8Ineq2], cfg)?);
    Ok(out)
}

fn d24_suite(cfg: &Config) -> Result<Vec<Certificate>> {
    let mut out = pair_suite(&IneqPair::d24(), cfg.order, cfg.t_large, cfg.prec, 1e-6)?;
    out.push(f24_leading()?);
    out.extend(scans(&[Inequality::D24Ineq1, Inequality::D24Ineq2, Inequality::D24Ineq3], cfg)?);
    out.extend(harder_inequality_suite(cfg.order, cfg.points, cfg.prec, cfg.tol)?);
    Ok(out)
}

/// Runs a suite; the report is produced even when certificates fail.
pub fn run_suite(suite: Suite, cfg: &Config) -> Result<Report> {
    let certs = match suite {
        Suite::D8 => d8_suite(cfg)?,
        Suite::D24 => d24_suite(cfg)?,
        Suite::Extremal => extremal_suite(cfg)?,
        Suite::Appendix => appendix_suite(cfg)?,
        Suite::All => {
            let mut v = extremal_suite(cfg)?;
            v.extend(appendix_suite(cfg)?);
            v.extend(d8_suite(cfg)?);
            v.extend(d24_suite(cfg)?);
            v
        }
    };
    Ok(Report::new(suite, cfg.clone(), certs))
}

/// Figure data sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    D8,
    D24,
    D24Harder,
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d8" => Ok(Figure::D8),
            "d24" => Ok(Figure::D24),
            "d24harder" => Ok(Figure::D24Harder),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// Plain decimal with 15 significant digits.
pub fn format_sig15(x: &Real) -> String {
    let v = x.to_f64();
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let decimals = (14 - v.abs().log10().floor() as i64).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Header and rows of a figure; failed evaluations are annotated in the last column.
pub fn figure_rows(fig: Figure, points: usize, prec: i64) -> Result<(Vec<&'static str>, Vec<Vec<String>>)> {
    let tol = 1e-9;
    match fig {
        Figure::D8 | Figure::D24 => {
            let pair = if fig == Figure::D8 { IneqPair::d8() } else { IneqPair::d24() };
            let f = AxisEvaluator::new(&pair.f.into_rqm(), prec, tol)?;
            let g = AxisEvaluator::new(&pair.g.into_rqm(), prec, tol)?;
            let rows = numeric::log_grid(0.05, 5.0, points)
                .iter()
                .map(|t| match (f.eval(t), g.eval(t)) {
                    (Ok(a), Ok(b)) => {
                        vec![format_sig15(t), format_sig15(&Float::with_val(REAL_PREC, &a.value / &b.value)), String::new()]
                    }
                    (Err(e), _) | (_, Err(e)) => vec![format_sig15(t), String::new(), e.to_string()],
                })
                .collect();
            Ok((vec!["t", "F/G", "note"], rows))
        }
        Figure::D24Harder => {
            let grid = numeric::open_log_grid(&real(0.01), &harder_endpoint(), points);
            let rows = grid
                .iter()
                .map(|t| match harder_rows(std::slice::from_ref(t), prec, tol) {
                    Ok(r) => vec![format_sig15(t), format_sig15(&r[0].lhs), format_sig15(&r[0].rhs), format_sig15(&r[0].g), String::new()],
                    Err(e) => vec![format_sig15(t), String::new(), String::new(), String::new(), e.to_string()],
                })
                .collect();
            Ok((vec!["t", "LHS", "RHS", "g", "note"], rows))
        }
    }
}

/// Writes a figure as CSV.
pub fn write_figure<W: Write>(fig: Figure, points: usize, prec: i64, out: W) -> Result<()> {
    let (header, rows) = figure_rows(fig, points, prec)?;
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(&header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig15_formatting() {
        assert_eq!(format_sig15(&real(1.5)), "1.50000000000000");
        assert_eq!(format_sig15(&real(43.77)), "43.7700000000000");
        assert_eq!(format_sig15(&real(0.001)), "0.00100000000000000");
    }

    #[test]
    fn report_counts_and_schema() {
        let cfg = Config { points: 8, order: 40, ..Config::default() };
        let r = run_suite(Suite::Appendix, &cfg).unwrap();
        assert!(r.all_passed(), "{}", r.summary_table());
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["suite"], "appendix");
        assert!(r.summary.numeric_total >= 1);
        for c in r.certificates.iter().filter(|c| c.is_numeric()) {
            assert!(c.evidence.get("note").is_some());
        }
    }

    #[test]
    fn figure_shapes() {
        let (h, rows) = figure_rows(Figure::D8, 6, 240).unwrap();
        assert_eq!(h.len(), 3);
        let vals: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[1] <= w[0]));
        assert!(vals.last().unwrap() < &vals[0]);
        assert!((vals[0] - 1.82378).abs() < 1e-3);
        let (_, rows) = figure_rows(Figure::D24Harder, 5, 240).unwrap();
        assert!(rows.iter().all(|r| r[3].parse::<f64>().unwrap() > 0.0));
    }

    #[test]
    fn f24_coefficients() {
        assert!(f24_leading().unwrap().passed());
    }
}
