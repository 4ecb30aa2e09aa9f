//! Normalized extremal quasimodular forms of depth 1 and 2.
//!
//! Forms are built by the weight recurrences and memoized. Each output is
//! rescaled to leading coefficient 1; the coefficient the recurrence itself
//! produced is kept so callers can assert the recurrence constants.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::json;

use crate::certify::{Certificate, Kind};
use crate::qm1::{QmPoly1, VanishingOrder};
use crate::{rat, Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalForm {
    pub weight: i64,
    pub depth: i64,
    pub poly: QmPoly1,
    /// Leading q-coefficient of the recurrence output before rescaling.
    pub recurrence_leading: Rational,
}

impl ExtremalForm {
    /// Vanishing order at the cusp, in integral powers of q.
    pub fn expected_order(weight: i64, depth: i64) -> i64 {
        if depth == 1 {
            weight / 6
        } else {
            weight / 4
        }
    }
}

type Memo = Mutex<HashMap<(i64, i64), Arc<ExtremalForm>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `X_{w,s}` for `s` in {1, 2}.
pub fn extremal(weight: i64, depth: i64) -> Result<Arc<ExtremalForm>> {
    if let Some(f) = memo().lock().expect("memo poisoned").get(&(weight, depth)) {
        return Ok(f.clone());
    }
    let raw = match depth {
        1 => depth1_raw(weight)?,
        2 => depth2_raw(weight)?,
        _ => return Err(Error::Extremal { weight, depth, reason: "only depths 1 and 2 are supported" }),
    };
    let form = Arc::new(normalize(weight, depth, raw)?);
    memo().lock().expect("memo poisoned").insert((weight, depth), form.clone());
    Ok(form)
}

/// Shorthand for the polynomial of `X_{w,s}`; panics on unsupported input.
pub fn x(weight: i64, depth: i64) -> QmPoly1 {
    extremal(weight, depth).expect("supported extremal form").poly.clone()
}

pub fn extremal_depth1(weight: i64) -> Result<Arc<ExtremalForm>> {
    extremal(weight, 1)
}

pub fn extremal_depth2(weight: i64) -> Result<Arc<ExtremalForm>> {
    extremal(weight, 2)
}

fn depth1_raw(w: i64) -> Result<QmPoly1> {
    let err = |reason| Error::Extremal { weight: w, depth: 1, reason };
    if w % 2 != 0 {
        return Err(err("weight must be even"));
    }
    if w < 6 {
        return Err(err("weight must be at least 6"));
    }
    let base = w - w % 6;
    Ok(match w % 6 {
        0 if w == 6 => (&(&QmPoly1::e2() * &QmPoly1::e4()) - &QmPoly1::e6()).scale(&rat(1, 720)),
        0 => {
            let v = w - 6;
            let c = rat(v + 6, 864 * (v + 5));
            (&(&QmPoly1::e4() * &x(v + 2, 1)) - &(&QmPoly1::e6() * &x(v, 1))).scale(&c)
        }
        2 => x(base, 1).serre(base - 1).scale(&rat(12, base + 1)),
        _ => &QmPoly1::e4() * &x(base, 1),
    })
}

fn depth2_raw(w: i64) -> Result<QmPoly1> {
    let err = |reason| Error::Extremal { weight: w, depth: 2, reason };
    if w % 2 != 0 {
        return Err(err("weight must be even"));
    }
    if w < 4 {
        return Err(err("weight must be at least 4"));
    }
    if w == 6 {
        return Err(err("weight 6 has no depth 2 extremal form"));
    }
    Ok(if w == 4 {
        (&QmPoly1::e4() - &QmPoly1::e2().pow(2)).scale(&rat(1, 288))
    } else if w % 4 == 0 {
        let v = w - 4;
        let xv = x(v, 2);
        let c = rat(3 * (v + 4) * (v + 4), 16 * (v + 1) * (v + 2) * (v + 2) * (v + 3));
        let e4x = (&QmPoly1::e4() * &xv).scale(&rat(v * (v + 1), 36));
        (&e4x - &xv.serre_iter(v - 2, 2)).scale(&c)
    } else {
        let v = w - 2;
        x(v, 2).serre(v - 2).scale(&rat(6, v + 1))
    })
}

fn normalize(weight: i64, depth: i64, raw: QmPoly1) -> Result<ExtremalForm> {
    let err = |reason| Error::Extremal { weight, depth, reason };
    let order = ExtremalForm::expected_order(weight, depth);
    match raw.weight_depth()? {
        (crate::qm1::Weight::Homogeneous(w), s) if w as i64 == weight && s as i64 == depth => {}
        _ => return Err(err("recurrence produced the wrong weight or depth")),
    }
    let leading = match raw.vanishing_order(2 * order + 2)? {
        VanishingOrder::Order { index, leading } if index == 2 * order => leading,
        _ => return Err(err("recurrence output does not have the extremal vanishing order")),
    };
    Ok(ExtremalForm {
        weight,
        depth,
        poly: raw.scale(&Rational::from(leading.recip_ref())),
        recurrence_leading: leading,
    })
}

fn identity(name: String, anchor: &str, residual: &QmPoly1) -> Certificate {
    Certificate::exact_identity(name, anchor, residual.is_zero(), residual.to_string())
}

/// `∂_{w-1}^2 X_w = ((w^2 - 1)/144) E4 X_w` and the equivalent second-order
/// equation in `D`, for `6 | w`.
pub fn check_ode_depth1(w: i64) -> Certificate {
    assert!(w % 6 == 0 && w >= 6);
    let xw = x(w, 1);
    let serre_form = &xw.serre_iter(w - 1, 2) - &(&QmPoly1::e4() * &xw).scale(&rat(w * w - 1, 144));
    let e2 = QmPoly1::e2();
    let d1 = xw.derivative();
    let d_form = &(&d1.derivative() - &(&e2 * &d1).scale(&rat(w, 6)))
        + &(&(&e2.pow(2) - &QmPoly1::e4()) * &xw).scale(&rat(w * (w - 1), 144));
    let ok = serre_form.is_zero() && d_form.is_zero();
    Certificate::new(
        format!("depth1_ode_w{w}"),
        Kind::ExactIdentity,
        ok.into(),
        "second-order differential equation of depth 1 extremal forms",
        json!({ "serre_residual": serre_form.to_string(), "derivative_residual": d_form.to_string() }),
    )
}

/// `X''' - (w/4) E2 X'' + (w(w-1)/4) E2' X' - (w(w-1)(w-2)/24) E2'' X = 0` for `4 | w`.
pub fn check_ode_depth2(w: i64) -> Certificate {
    assert!(w % 4 == 0 && w >= 4);
    let xw = x(w, 2);
    let (d1, e2) = (xw.derivative(), QmPoly1::e2());
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let e2d = e2.derivative();
    let e2dd = e2d.derivative();
    let r = &(&(&d3 - &(&e2 * &d2).scale(&rat(w, 4))) + &(&e2d * &d1).scale(&rat(w * (w - 1), 4)))
        - &(&e2dd * &xw).scale(&rat(w * (w - 1) * (w - 2), 24));
    identity(format!("depth2_ode_w{w}"), "third-order differential equation of depth 2 extremal forms", &r)
}

/// Exact checks of the derivative recurrences between depth 1 extremal forms,
/// for every `6 | w` with `12 <= w <= w_max`, plus the Serre form of the
/// `E4` shift for `6 <= w <= w_max`.
pub fn check_depth1_derivative_recurrences(w_max: i64) -> Vec<Certificate> {
    assert!(w_max >= 12);
    let anchor = "derivative recurrence for depth 1 extremal forms";
    let mut out = Vec::new();
    for w in (6..=w_max).step_by(6) {
        let r = &x(w + 4, 1) - &x(w + 2, 1).serre(w + 1).scale(&rat(12, w - 1));
        out.push(identity(format!("depth1_e4_shift_serre_w{w}"), "E4 shift written as a Serre derivative", &r));
        if w < 12 {
            continue;
        }
        let c5 = rat(5 * w, 72);
        let c7 = rat(7 * w, 72);
        let eq1 = &x(w, 1).derivative()
            - &(&(&x(6, 1) * &x(w - 4, 1)).scale(&c5) + &(&x(8, 1) * &x(w - 6, 1)).scale(&c7));
        out.push(identity(format!("depth1_derivative_1_w{w}"), anchor, &eq1));
        let eq2 = &x(w + 2, 1).derivative()
            - &(&(&x(6, 1) * &x(w - 2, 1)).scale(&c5) + &(&x(8, 1) * &x(w - 4, 1)).scale(&c7));
        out.push(identity(format!("depth1_derivative_2_w{w}"), anchor, &eq2));
        let eq3 = &x(w + 4, 1).derivative()
            - &(&(&(&x(6, 1) * &x(w, 1)).scale(&rat(240, 1)) + &(&x(8, 1) * &x(w - 2, 1)).scale(&c7))
                + &(&x(10, 1) * &x(w - 4, 1)).scale(&c5));
        out.push(identity(format!("depth1_derivative_3_w{w}"), anchor, &eq3));
    }
    out
}

/// Checks that the recurrences produce normalized forms without rescaling
/// and that the alternative closed forms of the `w + 6` and `w + 2` steps agree.
pub fn check_recurrence_chain(w_max: i64) -> Vec<Certificate> {
    let mut out = Vec::new();
    let mut leading = Vec::new();
    for w in (6..=w_max).step_by(2) {
        let f = extremal(w, 1).expect("depth 1 form");
        leading.push((w, 1, f.recurrence_leading.clone()));
    }
    for w in (4..=w_max.min(40)).step_by(2).filter(|w| *w != 6) {
        let f = extremal(w, 2).expect("depth 2 form");
        leading.push((w, 2, f.recurrence_leading.clone()));
    }
    let bad: Vec<String> = leading.iter().filter(|(_, _, c)| *c != 1).map(|(w, s, c)| format!("X({w},{s}): {c}")).collect();
    out.push(Certificate::new(
        "recurrence_normalization".into(),
        Kind::ExactIdentity,
        bad.is_empty().into(),
        "recurrence constants yield leading coefficient 1",
        json!({ "checked": leading.len(), "off_by_scale": bad }),
    ));
    for w in (6..=w_max - 6).step_by(6) {
        let xw = x(w, 1);
        let alt = (&(&QmPoly1::e4() * &xw.serre(w - 1)) - &(&QmPoly1::e6() * &xw).scale(&rat(w + 1, 12)))
            .scale(&rat(w + 6, 72 * (w + 1) * (w + 5)));
        let r = &x(w + 6, 1) - &alt;
        out.push(identity(format!("depth1_weight6_step_forms_w{w}"), "two forms of the weight 6 step", &r));
    }
    for w in (12..=w_max.min(40)).step_by(4) {
        let prev = x(w - 2, 2);
        let c = rat(3 * w * w, 16 * (w * w - 1) * (w - 6) * (w - 6));
        let alt = (&(&QmPoly1::e4() * &prev).scale(&rat((w - 4) * (w - 5), 36)) - &prev.serre_iter(w - 4, 2)).scale(&c);
        let r = &x(w + 2, 2) - &alt;
        out.push(identity(format!("depth2_weight2_step_forms_w{w}"), "two forms of the depth 2 weight 2 step", &r));
    }
    out
}

/// Derivative identities for depth 2 extremal forms of weight 8 to 14.
pub fn check_depth2_exceptional() -> Vec<Certificate> {
    let anchor = "exceptional derivative identities for depth 2";
    let cases = [
        ("x8_2_derivative", x(8, 2).derivative(), (&x(4, 2) * &x(6, 1)).scale(&rat(2, 1))),
        (
            "x10_2_derivative",
            x(10, 2).derivative(),
            &(&x(4, 2) * &x(8, 1)).scale(&rat(8, 9)) + &x(6, 1).pow(2).scale(&rat(10, 9)),
        ),
        ("x12_2_derivative", x(12, 2).derivative(), (&x(6, 1) * &x(8, 2)).scale(&rat(3, 1))),
        ("x14_2_derivative", x(14, 2).derivative(), (&x(4, 2) * &x(12, 1)).scale(&rat(3, 1))),
    ];
    cases.iter().map(|(name, l, r)| identity(name.to_string(), anchor, &(l - r))).collect()
}

/// Closed forms and leading q-coefficients of the tabulated extremal forms:
/// `(w, s, polynomial, first coefficient exponent, coefficients)`.
pub const TABLE: [(i64, i64, &str, i64, &[&str]); 10] = [
    (6, 1, "(E2*E4 - E6)/720", 1, &["1", "18", "84", "292", "630"]),
    (8, 1, "(-E2*E6 + E4^2)/1008", 1, &["1", "66", "732", "4228", "15630"]),
    (10, 1, "(E2*E4^2 - E4*E6)/720", 1, &["1", "258", "6564", "66052", "390630"]),
    (12, 1, "(-12*E2*E4*E6 + 5*E4^3 + 7*E6^2)/3991680", 2, &["1", "56", "1002", "9296", "57708"]),
    (14, 1, "(7*E2*E4^3 + 5*E2*E6^2 - 12*E4^2*E6)/4717440", 2, &["1", "128", "4050", "58880", "525300"]),
    (4, 2, "(-E2^2 + E4)/288", 1, &["1", "6", "12", "28", "30"]),
    (8, 2, "(-7*E2^2*E4 + 2*E2*E6 + 5*E4^2)/362880", 2, &["1", "16", "102", "416", "1308"]),
    (10, 2, "(5*E2^2*E6 + 2*E2*E4^2 - 7*E4*E6)/1088640", 2, &["1", "104/3", "390", "2480", "11140"]),
    (
        12,
        2,
        "(-77*E2^2*E4^2 + 34*E2*E4*E6 + 50*E4^3 - 7*E6^2)/798336000",
        3,
        &["1", "51/2", "1422/5", "1944", "9714"],
    ),
    (
        14,
        2,
        "(13*E2^2*E4*E6 + E2*E4^3 - 3*E2*E6^2 - 11*E4^2*E6)/415134720",
        3,
        &["1", "93/2", "810", "8004", "54474"],
    ),
];

/// Compares each constructed form with its tabulated closed form and
/// q-coefficients, exactly.
pub fn check_table() -> Result<Vec<Certificate>> {
    use crate::expr::{elaborate, parse_expr, Value};
    let mut out = Vec::new();
    for (w, s, src, first, coeffs) in TABLE {
        let form = extremal(w, s)?;
        let closed = match elaborate(&parse_expr(src)?)? {
            Value::L1(p) => p,
            _ => return Err(Error::RingMismatch("tabulated form is not level 1".into())),
        };
        let series = form.poly.to_qexp(2 * (first + coeffs.len() as i64))?;
        let got: Vec<String> = (0..coeffs.len() as i64)
            .map(|i| series.q_coeff(first + i).unwrap_or_default().to_string())
            .collect();
        let below_zero = (0..first).all(|m| series.q_coeff(m).unwrap_or_default() == 0);
        let ok = closed == form.poly && below_zero && got.iter().zip(coeffs).all(|(a, b)| a == b);
        out.push(Certificate::new(
            format!("table_x{w}_{s}"),
            Kind::ExactIdentity,
            ok.into(),
            "tabulated extremal forms of depth at most 2 and weight at most 14",
            json!({
                "closed_form": src,
                "constructed": form.poly.to_string(),
                "expected_coefficients": coeffs,
                "coefficients": got,
                "from_q_exponent": first,
            }),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qm1::QmPoly1 as Q;

    fn coeffs(p: &QmPoly1, from: i64, n: i64) -> Vec<Rational> {
        let s = p.to_qexp(2 * (from + n)).unwrap();
        (from..from + n).map(|m| s.q_coeff(m).unwrap()).collect()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|n| rat(*n, 1)).collect()
    }

    #[test]
    fn low_weights() {
        assert_eq!(coeffs(&x(6, 1), 1, 5), ints(&[1, 18, 84, 292, 630]));
        let x10 = (&(&Q::e2() * &Q::e4().pow(2)) - &(&Q::e4() * &Q::e6())).scale(&rat(1, 720));
        assert_eq!(x(10, 1), x10);
        assert_eq!(coeffs(&x(12, 1), 2, 5), ints(&[1, 56, 1002, 9296, 57708]));
        assert_eq!(coeffs(&x(4, 2), 1, 5), ints(&[1, 6, 12, 28, 30]));
        assert_eq!(coeffs(&x(8, 2), 2, 3), ints(&[1, 16, 102]));
        assert_eq!(coeffs(&x(14, 2), 3, 3), vec![rat(1, 1), rat(93, 2), rat(810, 1)]);
    }

    #[test]
    fn whole_table_matches() {
        for c in check_table().unwrap() {
            assert!(c.passed(), "{}: {}", c.name, c.evidence);
        }
    }

    #[test]
    fn recurrences_are_already_normalized() {
        for w in (6..=30).step_by(2) {
            assert_eq!(extremal(w, 1).unwrap().recurrence_leading, 1, "X({w},1)");
        }
        for w in [4, 8, 10, 12, 14, 16, 18, 20] {
            assert_eq!(extremal(w, 2).unwrap().recurrence_leading, 1, "X({w},2)");
        }
    }

    #[test]
    fn invalid_weights() {
        assert!(extremal(7, 1).is_err());
        assert!(extremal(4, 1).is_err());
        assert!(extremal(6, 2).is_err());
        assert!(extremal(9, 2).is_err());
        assert!(extremal(12, 3).is_err());
    }

    #[test]
    fn odes_hold() {
        for w in [6, 12, 18, 24] {
            assert!(check_ode_depth1(w).passed(), "w = {w}");
        }
        for w in [4, 8, 12] {
            assert!(check_ode_depth2(w).passed(), "w = {w}");
        }
    }

    #[test]
    fn depth1_derivative_recurrences_hold() {
        assert!(check_depth1_derivative_recurrences(36).iter().all(Certificate::passed));
    }

    #[test]
    fn perturbed_second_recurrence_constant_fails() {
        // 7w/12 in place of 7w/72 does not give an identity
        let w = 12;
        let r = &x(w + 2, 1).derivative()
            - &(&(&x(6, 1) * &x(w - 2, 1)).scale(&rat(5 * w, 72)) + &(&x(8, 1) * &x(w - 4, 1)).scale(&rat(7 * w, 12)));
        assert!(!r.is_zero());
    }

    #[test]
    fn chain_and_exceptional() {
        assert!(check_recurrence_chain(30).iter().all(Certificate::passed));
        assert!(check_depth2_exceptional().iter().all(Certificate::passed));
    }

    #[test]
    fn low_weight_identities() {
        assert_eq!(x(4, 2), Q::e2().derivative().scale(&rat(-1, 24)));
        assert_eq!(x(6, 1), Q::e4().derivative().scale(&rat(1, 240)));
        assert_eq!(x(8, 1), Q::e6().derivative().scale(&rat(-1, 504)));
    }
}
