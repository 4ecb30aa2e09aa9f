//! Exact identity checks and the catalog of identities behind the
//! inequality proofs.

use serde_json::json;

use super::{Certificate, Kind};
use crate::expr::{elaborate, parse_expr, Value};
use crate::qseries::{eisenstein_qexp, theta4_qexp, delta_qexp, divisor_sum, r4_count, QSeries};
use crate::{rat, Rational, Result};

/// Numerator of the 8-dimensional quotient.
pub const F8: &str = "(E2*E4 - E6)^2";
/// Denominator of the 8-dimensional quotient.
pub const G8: &str = "H2^3*(2*H2^2 + 5*H2*H4 + 5*H4^2)";
/// Numerator of the 24-dimensional quotient.
pub const F24: &str = "(49*E2^2*E4^3 - 25*E2^2*E6^2 - 48*E2*E4^2*E6 - 25*E4^4 + 49*E4*E6^2)";
/// Denominator of the 24-dimensional quotient.
pub const G24: &str = "H2^5*(2*H2^2 + 7*H2*H4 + 7*H4^2)";
/// `1/(pi t^3) - 10/(3 pi^2 t^2)` with `T = 1/t`.
pub const RT: &str = "(P*T^3 - 10/3*P^2*T^2)";
/// `3/(2 pi^2 t^4) - 10/(3 pi^3 t^3)`.
pub const RT2: &str = "(3/2*P^2*T^4 - 10/3*P^3*T^3)";

/// Expands the placeholders `{F8} {G8} {F24} {G24} {RT} {RT2} {H}` in a template.
pub fn expand_template(src: &str) -> String {
    src.replace("{F8}", &format!("({F8})"))
        .replace("{G8}", &format!("({G8})"))
        .replace("{F24}", F24)
        .replace("{G24}", &format!("({G24})"))
        .replace("{RT2}", RT2)
        .replace("{RT}", RT)
        .replace("{H}", H_HARDER)
}

/// The function whose positivity finishes the harder 24-dimensional inequality.
const H_HARDER: &str = "(7560*X(8,2) - (37*E4 - E2^2)/24*(P*T^3 - 10/3*P^2*T^2) \
     - E2*(3/4*P^2*T^4 - 5/3*P^3*T^3) + (3*P^3*T^5 - 5*P^4*T^4))";

/// Elaborates a template string.
pub fn value_of(src: &str) -> Result<Value> {
    elaborate(&parse_expr(&expand_template(src))?)
}

/// Pass iff `lhs - rhs` normalizes to zero; the residual is recorded.
pub fn check_identity(name: &str, anchor: &str, lhs: &Value, rhs: &Value) -> Certificate {
    let r = lhs.sub(rhs);
    Certificate::exact_identity(name.to_string(), anchor, r.is_zero(), r.to_string())
}

/// Parses, elaborates and compares two template expressions.
pub fn check_identity_src(name: &str, anchor: &str, lhs: &str, rhs: &str) -> Result<Certificate> {
    let mut c = check_identity(name, anchor, &value_of(lhs)?, &value_of(rhs)?);
    if let serde_json::Value::Object(m) = &mut c.evidence {
        m.insert("lhs".into(), json!(lhs));
        m.insert("rhs".into(), json!(rhs));
    }
    Ok(c)
}

/// Compares two series coefficientwise up to the smaller precision.
pub fn series_certificate(name: &str, anchor: &str, lhs: &QSeries, rhs: &QSeries) -> Certificate {
    let diff = lhs.sub(rhs);
    let first = diff.leading().map(|(n, c)| json!({ "index": n, "difference": c.to_string() }));
    Certificate::new(
        name.to_string(),
        Kind::ExactIdentity,
        diff.is_zero().into(),
        anchor,
        json!({ "method": "exact q-expansion comparison", "prec_index": diff.prec(), "first_mismatch": first }),
    )
}

/// Compares the q-expansions of two expressions, each through its own ring.
pub fn check_qexp_src(name: &str, anchor: &str, lhs: &str, rhs: &str, prec: i64) -> Result<Certificate> {
    let a = value_of(lhs)?.to_qexp(prec)?;
    let b = value_of(rhs)?.to_qexp(prec)?;
    Ok(series_certificate(name, anchor, &a, &b))
}

/// Ramanujan's rules and the theta rules for `D`, checked against the
/// derivatives of the defining q-series.
pub fn generator_derivatives(prec: i64) -> Result<Vec<Certificate>> {
    let anchor = "derivatives of generators agree with q d/dq of their series";
    let mut out = Vec::new();
    for (k, name, rhs) in [
        (2, "ramanujan_e2", "(E2^2 - E4)/12"),
        (4, "ramanujan_e4", "(E2*E4 - E6)/3"),
        (6, "ramanujan_e6", "(E2*E6 - E4^2)/2"),
    ] {
        let lhs = eisenstein_qexp(k, prec)?.derivative();
        out.push(series_certificate(name, anchor, &lhs, &value_of(rhs)?.to_qexp(prec)?));
    }
    for (j, name, rhs) in [
        (2, "theta_derivative_h2", "(H2^2 + 2*H2*H4)/6 + E2*H2/6"),
        (4, "theta_derivative_h4", "-(2*H2*H4 + H4^2)/6 + E2*H4/6"),
    ] {
        let lhs = theta4_qexp(j, prec)?.derivative();
        out.push(series_certificate(name, anchor, &lhs, &value_of(rhs)?.to_qexp(prec)?));
    }
    Ok(out)
}

/// Theta forms of E4, E6, Delta and the Jacobi identity, by q-expansion.
pub fn theta_forms(prec: i64) -> Result<Vec<Certificate>> {
    let anchor = "Eisenstein series and discriminant in terms of thetanull functions";
    let mut out = vec![
        check_qexp_src("e4_theta_form", anchor, "E4", "H2^2 + H2*H4 + H4^2", prec)?,
        check_qexp_src("e6_theta_form", anchor, "E6", "(H2 + 2*H4)*(2*H2 + H4)*(H4 - H2)/2", prec)?,
        check_qexp_src("delta_theta_form", anchor, "(E4^3 - E6^2)/1728", "H2^2*(H2 + H4)^2*H4^2/256", prec)?,
    ];
    let h3 = QSeries::from_coeffs((0..prec).map(|n| (n, Rational::from(r4_count(n as u64)))), prec);
    let sum = theta4_qexp(2, prec)?.add(&theta4_qexp(4, prec)?);
    out.push(series_certificate("jacobi", "Jacobi identity H3 = H2 + H4", &h3, &sum));
    out.push(series_certificate(
        "delta_product",
        "product formula of the discriminant",
        &delta_qexp(prec)?,
        &value_of("(E4^3 - E6^2)/1728")?.to_qexp(prec)?,
    ));
    Ok(out)
}

/// `H2 + 2 H4 - 2 E2 = 2 sum r4(2n) q^n + 48 sum sigma_1(n) q^n`.
pub fn l_factor_expansion(prec: i64) -> Result<Certificate> {
    let lhs = value_of("H2 + 2*H4 - 2*E2")?.to_qexp(prec)?;
    let rhs = QSeries::from_coeffs(
        (1..=(prec / 2)).map(|m| {
            let c = Rational::from(2 * r4_count(2 * m as u64)) + Rational::from(divisor_sum(1, m as u64) * 48u32);
            (2 * m as i64, c)
        }),
        prec,
    );
    Ok(series_certificate(
        "l_factor_expansion",
        "the last factor of the alternative d=8 proof has a positive remainder",
        &lhs,
        &rhs,
    ))
}

/// One entry of the exact identity catalog.
pub struct Entry {
    pub name: &'static str,
    pub anchor: &'static str,
    pub lhs: String,
    pub rhs: String,
}

fn entry(name: &'static str, anchor: &'static str, lhs: &str, rhs: &str) -> Entry {
    Entry { name, anchor, lhs: lhs.to_string(), rhs: rhs.to_string() }
}

/// Identities of the base rings: Serre derivatives of generators and the
/// product formulas.
pub fn basic_entries() -> Vec<Entry> {
    let mut v = vec![
        entry("serre_e2_generator", "Serre derivatives of Eisenstein series", "S[1](E2)", "-E4/12"),
        entry("serre_e4_generator", "Serre derivatives of Eisenstein series", "S[4](E4)", "-E6/3"),
        entry("serre_e6_generator", "Serre derivatives of Eisenstein series", "S[6](E6)", "-E4^2/2"),
        entry("serre_h2_generator", "Serre derivatives of thetanull functions", "S[2](H2)", "(H2^2 + 2*H2*H4)/6"),
        entry("serre_h3_generator", "Serre derivatives of thetanull functions", "S[2](H3)", "(H2^2 - H4^2)/6"),
        entry("serre_h4_generator", "Serre derivatives of thetanull functions", "S[2](H4)", "-(2*H2*H4 + H4^2)/6"),
        entry("serre_delta", "Serre derivative of the discriminant", "S[12](Delta)", "0"),
    ];
    for (name, lhs, rhs) in [
        ("serre_e2_x12", "S[14](E2*X(12,1))", "E2*S[13](X(12,1)) - E4*X(12,1)/12"),
        ("serre_e2_g8", "S[12](E2*{G8})", "E2*S[11]({G8}) - E4*{G8}/12"),
        ("serre_e4_x12", "S[16](E4*X(12,1))", "E4*S[12](X(12,1)) - E6*X(12,1)/3"),
        ("serre_e4_g8", "S[14](E4*{G8})", "E4*S[10]({G8}) - E6*{G8}/3"),
        ("serre_e6_x12", "S[18](E6*X(12,1))", "E6*S[12](X(12,1)) - E4^2*X(12,1)/2"),
        ("serre_e6_g8", "S[16](E6*{G8})", "E6*S[10]({G8}) - E4^2*{G8}/2"),
        ("serre_delta_product_x10", "S[22](Delta*X(10,1))", "Delta*S[10](X(10,1))"),
        ("serre_delta_product_g24", "S[26](Delta*{G24})", "Delta*S[14]({G24})"),
    ] {
        v.push(Entry {
            name,
            anchor: "Serre derivative of a product with a generator",
            lhs: lhs.into(),
            rhs: rhs.into(),
        });
    }
    v
}

/// `∂_{2a+2b}(H2^a H4^b) = H2^a H4^b ((a - 2b) H2 + (2a - b) H4)/6` for `a, b <= n`.
pub fn thetaprod_entries(n: i64) -> Vec<Entry> {
    let mut v = Vec::new();
    for a in 0..=n {
        for b in 0..=n {
            v.push(Entry {
                name: "serre_theta_monomials",
                anchor: "Serre derivative of thetanull monomials",
                lhs: format!("S[{}](H2^{a}*H4^{b})", 2 * a + 2 * b),
                rhs: format!("H2^{a}*H4^{b}*(({a} - 2*{b})*H2 + (2*{a} - {b})*H4)/6"),
            });
        }
    }
    v
}

/// Identities of the 8-dimensional argument.
pub fn d8_entries() -> Vec<Entry> {
    let a = "differential identities of the d=8 pair";
    vec![
        entry("d8_f_extremal", "F is a multiple of the square of X(6,1)", "{F8}", "720^2*X(6,1)^2"),
        entry("low_weight_x42", "low weight extremal forms as derivatives", "X(4,2)", "-D(E2)/24"),
        entry("low_weight_x61", "low weight extremal forms as derivatives", "X(6,1)", "D(E4)/240"),
        entry("low_weight_x81", "low weight extremal forms as derivatives", "X(8,1)", "-D(E6)/504"),
        entry(
            "x81_square_relation",
            "auxiliary identity for the d=8 proof",
            "49/24*X(8,1)^2 - 25/24*E4*X(6,1)^2",
            "Delta*X(4,2)",
        ),
        entry("d8_f_second_serre", a, "S[12](S[10]({F8}))", "5/6*E4*{F8} + 172800*Delta*X(4,2)"),
        entry("d8_x61_square_second_serre", a, "S[12](S[10](X(6,1)^2))", "5/6*E4*X(6,1)^2 + 1/3*Delta*X(4,2)"),
        entry("d8_g_second_serre", a, "S[12](S[10]({G8}))", "5/6*E4*{G8} - 640*Delta*H2"),
        entry(
            "d8_wronskian_serre",
            "Serre derivative of the d=8 Wronskian",
            "S[22](S[10]({F8})*{G8} - {F8}*S[10]({G8}))",
            "Delta*(172800*X(4,2)*{G8} + 640*H2*{F8})",
        ),
        entry(
            "d8_wronskian_factorization",
            "factorization of the d=8 Wronskian",
            "S[10]({F8})*{G8} - {F8}*S[10]({G8})",
            "15/2*H2^3*(H2 + H4)^2*H4^2*(E2*E4 - E6)*(E4 - E2*(H2 + 2*H4)/2)",
        ),
        entry(
            "d8_wronskian_third_factor",
            "third factor of the d=8 Wronskian",
            "(E4^2 - E2*E6)*(2*H2^2 + 5*H2*H4 + 5*H4^2) - 2*(E2*E4 - E6)*E4*(H2 + 2*H4)",
            "9*H4^2*(H2 + H4)^2*(E4 - E2*(H2 + 2*H4)/2)",
        ),
        entry(
            "l_decomposition",
            "positivity decomposition of the last factor",
            "E4 - E2*(H2 + 2*H4)/2",
            "3/4*H2^2 + (H2 + 2*H4)*(H2 + 2*H4 - 2*E2)/4",
        ),
        entry(
            "d8_limit_f",
            "transformation of F under t -> 1/t",
            "flip({F8})",
            "T^(-12)*{F8} - 12*P*T^(-11)*(E2*E4 - E6)*E4 + 36*P^2*T^(-10)*E4^2",
        ),
        entry(
            "d8_limit_f_slash",
            "S-transformation of F",
            "slashS({F8})",
            "{F8} - 12*P*T*(E2*E4 - E6)*E4 + 36*P^2*T^2*E4^2",
        ),
        entry(
            "d8_limit_g",
            "transformation of G under t -> 1/t",
            "flip({G8})",
            "T^(-10)*H4^3*(2*H4^2 + 5*H4*H2 + 5*H2^2)",
        ),
    ]
}

/// Identities of the 24-dimensional argument, including the harder inequality.
pub fn d24_entries() -> Vec<Entry> {
    let a = "differential identities of the d=24 pair";
    vec![
        entry("d24_f_extremal", "F in terms of extremal forms", "{F24}", "2*7^2*12^5*(X(8,1)^2 - Delta*X(4,2))"),
        entry("x12_1_closed_form", "weight 12 depth 1 extremal form", "X(12,1)", "(E4*X(8,1) - E6*X(6,1))/(72*11)"),
        entry("d24_f_serre", "Serre derivative of the d=24 numerator", "S[14]({F24})", "6706022400*X(6,1)*X(12,1)"),
        entry(
            "d24_f_serre_extremal",
            "Serre derivative of the d=24 numerator",
            "S[14](X(8,1)^2 - Delta*X(4,2))",
            "5^2*11*X(6,1)*X(12,1)",
        ),
        entry("d24_f_second_serre", a, "S[16](S[14]({F24}))", "14/9*E4*{F24} + 5486745600*Delta*X(8,2)"),
        entry("d24_g_second_serre", a, "S[16](S[14]({G24}))", "14/9*E4*{G24}"),
        entry(
            "d24_wronskian_serre",
            "Serre derivative of the d=24 Wronskian",
            "S[30](S[14]({F24})*{G24} - {F24}*S[14]({G24}))",
            "5486745600*Delta*X(8,2)*{G24}",
        ),
        entry(
            "d24_limit_f",
            "transformation of F under t -> 1/t",
            "flip({F24})",
            "T^(-16)*{F24} - 12*P*T^(-15)*(49*E2*E4^3 - 25*E2*E6^2 - 24*E4^2*E6) \
             + 36*P^2*T^(-14)*(49*E4^3 - 25*E6^2)",
        ),
        entry(
            "d24_limit_g",
            "transformation of G under t -> 1/t",
            "flip({G24})",
            "T^(-14)*H4^5*(2*H4^2 + 7*H4*H2 + 7*H2^2)",
        ),
        entry("d24_g_slash", "S-transformation of G", "slashS({G24})", "-H4^5*(7*H2^2 + 7*H2*H4 + 2*H4^2)"),
        entry("x82_closed_form", "closed form of 7560 X(8,2)", "7560*X(8,2)", "(-7*E2^2*E4 + 2*E2*E6 + 5*E4^2)/48"),
        entry(
            "x82_slash",
            "S-transformation of 7560 X(8,2)",
            "slashS(7560*X(8,2))",
            "7560*X(8,2) + (7*E2*E4 - E6)/4*P*T - 21/4*E4*P^2*T^2",
        ),
        entry(
            "correction_serre_factor",
            "Serre derivative of the correction term factors through G",
            "S[18](S[12]({G24})*{RT} - {G24}*{RT2})",
            "((37*E4 - E2^2)/24*{RT} + E2*(3/4*P^2*T^4 - 5/3*P^3*T^3) - (3*P^3*T^5 - 5*P^4*T^4))*{G24}",
        ),
        entry(
            "harder_factor",
            "Delta G factors out of the Serre derivative of the modified Wronskian",
            "S[30](S[14]({F24})*{G24} - {F24}*S[14]({G24}) - 725760*Delta*(S[12]({G24})*{RT} - {G24}*{RT2}))",
            "725760*Delta*{G24}*{H}",
        ),
        entry(
            "harder_factor_flip",
            "the harder inequality's remaining factor at 1/t",
            "T^8*flip({H})",
            "7560*X(8,2) + P*T*((7*E2*E4 - E6)/4 - (37*E4 - E2^2)/24) + P^2*T^2*(-(4*E4 + 5*E2^2)/36 + E2/4)",
        ),
        entry(
            "j1_expansion",
            "auxiliary form J1 via the derivative of E2",
            "5/36*E2^2 + 1/9*E4 - 1/4*E2",
            "5/3*D(E2) - 1/4*E2 + 1/4*E4",
        ),
        entry(
            "j3_expansion",
            "auxiliary form J3 via the derivative of E4",
            "E2*E4 - 1/10*E6 - 9/10*E4",
            "3*D(E4) + 9/10*E6 - 9/10*E4",
        ),
    ]
}

/// Runs a list of catalog entries.
pub fn run_entries(entries: &[Entry]) -> Vec<Certificate> {
    entries
        .iter()
        .map(|e| {
            check_identity_src(e.name, e.anchor, &e.lhs, &e.rhs).unwrap_or_else(|err| {
                Certificate::new(
                    e.name.to_string(),
                    Kind::ExactIdentity,
                    super::Verdict::Fail,
                    e.anchor,
                    json!({ "error": err.to_string() }),
                )
            })
        })
        .collect()
}

/// Every entry of [`thetaprod_entries`] collapsed into one certificate.
pub fn thetaprod_certificate(n: i64) -> Certificate {
    let parts = run_entries(&thetaprod_entries(n));
    let failed: Vec<String> = parts
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.evidence["lhs"].as_str().unwrap_or_default().to_string())
        .collect();
    Certificate::new(
        "serre_theta_monomials".into(),
        Kind::ExactIdentity,
        failed.is_empty().into(),
        "Serre derivative of thetanull monomials",
        json!({ "range": format!("0 <= a, b <= {n}"), "checked": parts.len(), "failed": failed }),
    )
}

/// Value of the constant `c` of the d=24 second Serre derivative from its factorization.
pub fn d24_constant() -> Rational {
    rat(2i64.pow(11) * 3i64.pow(7) * 25 * 49, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(v: &[Certificate]) {
        for c in v {
            assert!(c.passed(), "{} failed: {}", c.name, c.evidence);
        }
    }

    #[test]
    fn basic_identities() {
        all_pass(&run_entries(&basic_entries()));
        assert!(thetaprod_certificate(8).passed());
    }

    #[test]
    fn d8_identities() {
        all_pass(&run_entries(&d8_entries()));
    }

    #[test]
    fn d24_identities() {
        all_pass(&run_entries(&d24_entries()));
        assert_eq!(d24_constant(), rat(5486745600, 1));
    }

    #[test]
    fn qexp_identities() {
        all_pass(&generator_derivatives(120).unwrap());
        all_pass(&theta_forms(120).unwrap());
        assert!(l_factor_expansion(120).unwrap().passed());
    }

    #[test]
    fn wrong_constant_leaves_residual() {
        let c = check_identity_src("bad", "", "S[12](S[10]({F8}))", "5/6*E4*{F8} + 172801*Delta*X(4,2)").unwrap();
        assert!(!c.passed());
        assert_ne!(c.evidence["residual"], "0");
    }
}
