//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

use std::time::Instant;

use qmcert::certify::harder::{g_scan, harder_endpoint, j_coefficients};
use qmcert::certify::identities::{
    basic_entries, d24_entries, d8_entries, generator_derivatives, run_entries, theta_forms, thetaprod_certificate,
    value_of,
};
use qmcert::certify::pairs::{limit_check, monotonicity_certificate, IneqPair};
use qmcert::certify::scans::{
    default_grid, extremal_positivity, inequality_scan, positivity_preservation, special_values_check, Inequality,
};
use qmcert::certify::suites::f24_leading;
use qmcert::certify::Certificate;
use qmcert::expr::Value;
use qmcert::extremal::{
    check_depth2_exceptional, check_depth1_derivative_recurrences, check_ode_depth1, check_ode_depth2, check_recurrence_chain,
    check_table, x,
};
use qmcert::numeric::{open_log_grid, real};
use qmcert::qm2::QmPoly2;
use qmcert::qseries::{delta_qexp, r4_count};

// Reference decimals from an independent mpmath computation at 40 digits.
const LIMIT_D8: f64 = 1.823_781_305_562_079_9;
const LIMIT_D24: f64 = 43.770_751_333_489_917;

struct Outcome {
    ok: bool,
    detail: String,
}

fn failed_names(certs: &[Certificate]) -> Vec<String> {
    certs.iter().filter(|c| !c.passed()).map(|c| c.name.clone()).collect()
}

fn all_pass(certs: &[Certificate], what: &str) -> Outcome {
    let bad = failed_names(certs);
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} {what} checked", certs.len())
        } else {
            format!("failed: {}", bad.join(", "))
        },
    }
}

fn criterion1() -> Outcome {
    all_pass(&check_table().expect("table"), "tabulated forms")
}

fn criterion2() -> Outcome {
    let mut c = generator_derivatives(240).expect("derivatives");
    c.extend(theta_forms(240).expect("theta forms"));
    c.extend(run_entries(&basic_entries()));
    c.push(thetaprod_certificate(8));
    c.extend([6, 12, 18, 24].map(check_ode_depth1));
    c.extend([4, 8, 12].map(check_ode_depth2));
    c.extend(check_depth1_derivative_recurrences(120));
    c.extend(check_recurrence_chain(40));
    c.extend(check_depth2_exceptional());
    c.extend(run_entries(&d8_entries()));
    c.extend(run_entries(&d24_entries()));
    all_pass(&c, "exact identities")
}

fn criterion3() -> Outcome {
    let c = f24_leading().expect("F24");
    Outcome { ok: c.passed(), detail: format!("q^0..q^5 = {}", c.evidence["coefficients_q0_to_q5"]) }
}

fn criterion4() -> Outcome {
    let d8 = limit_check(&IneqPair::d8(), 4.0, 240, 1e-8).expect("d8 limit");
    let d24 = limit_check(&IneqPair::d24(), 4.0, 240, 1e-6).expect("d24 limit");
    let target_ok = |c: &Certificate, oracle: f64| {
        let t: f64 = c.evidence["target"].as_str().and_then(|s| s.parse().ok()).unwrap_or(f64::NAN);
        (t - oracle).abs() < 1e-14 * oracle
    };
    let targets = target_ok(&d8, LIMIT_D8) && target_ok(&d24, LIMIT_D24);
    Outcome {
        ok: d8.passed() && d24.passed() && targets,
        detail: format!(
            "gap at t=4: d8 {:.3e} (tol 1e-8), d24 {:.3e} (tol 1e-6); targets match oracle: {targets}",
            d8.evidence["gap"].as_f64().unwrap_or(f64::NAN),
            d24.evidence["gap"].as_f64().unwrap_or(f64::NAN),
        ),
    }
}

fn criterion5() -> Outcome {
    let mut c = extremal_positivity(60, &[4, 8, 10, 12, 14], 200).expect("extremal scans");
    for pair in [IneqPair::d8(), IneqPair::d24()] {
        let m = monotonicity_certificate(&pair, 200).expect("monotonicity");
        let bracket: Certificate = serde_json::from_value(m.evidence["steps"][1].clone()).expect("bracket step");
        c.push(bracket);
    }
    c.extend(j_coefficients(200).expect("J formulas"));
    all_pass(&c, "scans to q^200")
}

fn criterion6() -> Outcome {
    let c = vec![
        monotonicity_certificate(&IneqPair::d8(), 200).expect("d8"),
        monotonicity_certificate(&IneqPair::d24(), 200).expect("d24"),
    ];
    let control = IneqPair::d8().with_combo("172801*X(4,2)*{G8} + 640*H2*{F8}");
    let neg = monotonicity_certificate(&control, 50).expect("control");
    let mut out = all_pass(&c, "monotonicity certificates");
    out.ok &= !neg.passed();
    out.detail.push_str(&format!("; perturbed constant control verdict: {:?}", neg.verdict));
    out
}

fn criterion7() -> Outcome {
    let mut c: Vec<Certificate> = Inequality::ALL
        .iter()
        .map(|&i| inequality_scan(i, &default_grid(i, 128), 240, 1e-9).expect("scan"))
        .collect();
    c.push(g_scan(&open_log_grid(&real(0.01), &harder_endpoint(), 128), 240, 1e-9).expect("g scan"));
    all_pass(&c, "scans of 128 points")
}

fn criterion8() -> Outcome {
    let mut problems = Vec::new();
    let samples = ["E2*E4 - E6", "X(8,2)", "H2^3*H4 + E2*H2", "P*T^2*E4 + T^(-3)*H4", "Delta"];
    for a in samples {
        for b in samples {
            let (va, vb) = (value_of(a).unwrap(), value_of(b).unwrap());
            let lhs = va.mul(&vb).derivative();
            let rhs = va.derivative().mul(&vb).add(&va.mul(&vb.derivative()));
            if !lhs.sub(&rhs).is_zero() {
                problems.push(format!("Leibniz {a} * {b}"));
            }
        }
    }
    for (a, k, b, l) in [("X(6,1)", 5, "X(8,2)", 6), ("{G8}", 10, "E4", 4), ("H2", 2, "X(12,1)", 11)] {
        let (va, vb) = (value_of(a).unwrap(), value_of(b).unwrap());
        let lhs = va.mul(&vb).serre(k + l);
        let rhs = va.serre(k).mul(&vb).add(&va.mul(&vb.serre(l)));
        if !lhs.sub(&rhs).is_zero() {
            problems.push(format!("Serre product {a} * {b}"));
        }
    }
    for (w, s) in [(6, 1), (12, 1), (30, 1), (4, 2), (10, 2), (20, 2)] {
        if x(w, s).serre(w - s).depth() > s as u32 {
            problems.push(format!("depth of S[{}](X({w},{s}))", w - s));
        }
    }
    for src in ["H2^3*H4 + H4^4", "{G8}", "{G24}"] {
        let p = level2(src);
        if p.slash_s().unwrap().slash_s().unwrap() != p {
            problems.push(format!("S involution on {src}"));
        }
    }
    for src in ["{F8} + 18*P^2*{G8}", "T^14*flip(432*P^2*{G24} - {F24})", "E2 - 6*P*T"] {
        let r = value_of(src).unwrap().into_rqm();
        if r.flip().unwrap().flip().unwrap() != r {
            problems.push(format!("flip involution on {src}"));
        }
    }
    let mut counts = vec![0u64; 201];
    for a in -14i64..=14 {
        for b in -14i64..=14 {
            for c in -14i64..=14 {
                for d in -14i64..=14 {
                    let n = (a * a + b * b + c * c + d * d) as usize;
                    if n <= 200 {
                        counts[n] += 1;
                    }
                }
            }
        }
    }
    if (0..=200u64).any(|n| r4_count(n) != counts[n as usize]) {
        problems.push("r4 formula vs enumeration".into());
    }
    let eta = delta_qexp(401).unwrap();
    if eta != value_of("(E4^3 - E6^2)/1728").unwrap().to_qexp(401).unwrap() {
        problems.push("eta product vs Eisenstein discriminant".into());
    }
    problems.extend(failed_names(&positivity_preservation(200).unwrap()));
    Outcome {
        ok: problems.is_empty(),
        detail: if problems.is_empty() { "all property instances hold".into() } else { problems.join("; ") },
    }
}

fn level2(src: &str) -> QmPoly2 {
    match value_of(src).unwrap() {
        Value::L2(p) => p,
        other => panic!("{src} is not a level 2 form: {other}"),
    }
}

fn criterion9() -> Outcome {
    let c = special_values_check(240, 1e-10).expect("special values");
    let rows = c.evidence["values"].as_array().cloned().unwrap_or_default();
    let gaps: Vec<String> = rows.iter().map(|r| format!("{} {:.1e}", r["form"].as_str().unwrap_or("?"), r["gap"].as_f64().unwrap_or(f64::NAN))).collect();
    Outcome { ok: c.passed(), detail: format!("gaps: {}", gaps.join(", ")) }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("table of extremal forms", criterion1),
        ("exact identity suite", criterion2),
        ("d=24 numerator coefficients", criterion3),
        ("limits at t = 4", criterion4),
        ("positivity scans", criterion5),
        ("monotonicity certificates", criterion6),
        ("inequality scans", criterion7),
        ("property suites", criterion8),
        ("special values", criterion9),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        println!("criterion {} {:<30} {} ({:.2} s) {}", i + 1, name, if o.ok { "PASS" } else { "FAIL" }, secs, o.detail);
        failures += usize::from(!o.ok);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
