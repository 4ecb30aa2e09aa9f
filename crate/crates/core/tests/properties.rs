//! Randomized algebraic properties of the rings and exact series checks.

use proptest::prelude::*;
use qmcert::poly::{Monomial, Poly};
use qmcert::qm1::QmPoly1;
use qmcert::qm2::QmPoly2;
use qmcert::qseries::{delta_qexp, eisenstein_qexp, r4_count, theta4_qexp, QSeries};
use qmcert::rqm::{Level, RqmElem};
use qmcert::{rat, Rational};

/// Monomials of weight `k` for generator weights `w`.
fn monomials(k: u32, w: [u32; 3]) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=k / w[0] {
        for b in 0..=k / w[1] {
            for c in 0..=k / w[2] {
                if a * w[0] + b * w[1] + c * w[2] == k {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

fn homogeneous(k: u32, w: [u32; 3], coeffs: &[i64]) -> Poly {
    Poly::from_terms(monomials(k, w).into_iter().zip(coeffs.iter().cycle()).map(|(m, &c)| (m, rat(c, 1))))
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 1..8)
}

fn level1(k: u32, c: &[i64]) -> QmPoly1 {
    QmPoly1(homogeneous(k, [2, 4, 6], c))
}

fn level2(k: u32, c: &[i64]) -> QmPoly2 {
    QmPoly2(homogeneous(k, [2, 2, 2], c))
}

fn level2_depth0(k: u32, c: &[i64]) -> QmPoly2 {
    QmPoly2(Poly::from_terms(
        monomials(k, [2, 2, 2]).into_iter().filter(|m| m[2] == 0).zip(c.iter().cycle()).map(|(m, &c)| (m, rat(c, 1))),
    ))
}

fn mixed(k: u32, c: &[i64], p: u32, u: i64) -> RqmElem {
    RqmElem::from_level2(&level2(k, c)).mul(&RqmElem::pt(Level::Two, p, u, Rational::from(1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn leibniz_level1(k in 1u32..6, l in 1u32..6, a in coeffs(), b in coeffs()) {
        let (f, g) = (level1(2 * k, &a), level1(2 * l, &b));
        prop_assert_eq!((&f * &g).derivative(), &(&f.derivative() * &g) + &(&f * &g.derivative()));
    }

    #[test]
    fn leibniz_level2(k in 1u32..5, l in 1u32..5, a in coeffs(), b in coeffs()) {
        let (f, g) = (level2(2 * k, &a), level2(2 * l, &b));
        prop_assert_eq!((&f * &g).derivative(), &(&f.derivative() * &g) + &(&f * &g.derivative()));
    }

    #[test]
    fn leibniz_extension_ring(k in 1u32..4, l in 1u32..4, p in 0u32..3, u in -4i64..4, a in coeffs(), b in coeffs()) {
        let (f, g) = (mixed(2 * k, &a, p, u), mixed(2 * l, &b, 1, -u));
        let lhs = f.mul(&g).derivative();
        let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn serre_product_rule(k in 1u32..6, l in 1u32..6, a in coeffs(), b in coeffs()) {
        let (f, g) = (level1(2 * k, &a), level1(2 * l, &b));
        let (k, l) = (2 * k as i64, 2 * l as i64);
        prop_assert_eq!((&f * &g).serre(k + l), &(&f.serre(k) * &g) + &(&f * &g.serre(l)));
    }

    #[test]
    fn serre_preserves_depth(k in 2u32..9, a in coeffs()) {
        let f = level1(2 * k, &a);
        prop_assume!(!f.is_zero());
        let s = f.depth();
        prop_assert!(f.serre(2 * k as i64 - s as i64).depth() <= s);
    }

    #[test]
    fn slash_s_is_an_involution(k in 1u32..6, a in coeffs()) {
        let f = level2_depth0(2 * k, &a);
        prop_assert_eq!(f.slash_s().unwrap().slash_s().unwrap(), f);
    }

    #[test]
    fn flip_is_an_involution(k in 1u32..4, p in 0u32..3, u in -5i64..5, a in coeffs(), b in coeffs()) {
        let x = mixed(2 * k, &a, p, u).add(&mixed(2 * k + 2, &b, p + 1, u - 1));
        prop_assert_eq!(x.flip().unwrap().flip().unwrap(), x);
    }

    #[test]
    fn serre_commutes_with_slash(k in 1u32..6, a in coeffs()) {
        let f = level1(2 * k, &a);
        let k = 2 * k as i64;
        let lhs = RqmElem::slash_s(Level::One, &f.0).unwrap().serre(k);
        let rhs = RqmElem::slash_s(Level::One, &f.serre(k).0).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reindex_keeps_positivity(c in prop::collection::vec(0i64..50, 1..30), n in 2i64..4) {
        let len = c.len() as i64;
        let s = QSeries::from_coeffs(c.iter().enumerate().map(|(i, &v)| (i as i64, rat(v, 1))), len);
        prop_assert!(s.reindex(n).first_negative().is_none());
    }
}

#[test]
fn r4_formula_matches_enumeration() {
    let mut counts = [0u64; 201];
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
    for (n, &count) in counts.iter().enumerate() {
        assert_eq!(r4_count(n as u64), count, "n = {n}");
    }
}

#[test]
fn eta_product_matches_eisenstein_discriminant() {
    let e4 = eisenstein_qexp(4, 401).unwrap();
    let e6 = eisenstein_qexp(6, 401).unwrap();
    let disc = e4.pow(3).unwrap().sub(&e6.pow(2).unwrap()).scale(&rat(1, 1728));
    assert_eq!(delta_qexp(401).unwrap(), disc);
}

/// `sum_n sign(n) q^(f(n)/2)` over the integers `n` with `f(n) < prec`.
fn lattice_sum(prec: i64, f: impl Fn(i64) -> i64, sign: impl Fn(i64) -> i64) -> QSeries {
    let mut s = QSeries::zero(prec);
    for n in -30i64..=30 {
        let e = f(n);
        if e < prec {
            s = s.add(&QSeries::from_coeffs([(e, rat(sign(n), 1))], prec));
        }
    }
    s
}

#[test]
fn jacobi_identity_to_index_400() {
    let prec = 401;
    // theta_3^4, theta_4^4, and theta_2^4 = q^(1/2) (sum q^((n^2+n)/2))^4.
    let h3 = lattice_sum(prec, |n| n * n, |_| 1).pow(4).unwrap();
    let h4 = lattice_sum(prec, |n| n * n, |n| if n % 2 == 0 { 1 } else { -1 }).pow(4).unwrap();
    let h2 = lattice_sum(prec, |n| n * n + n, |_| 1).pow(4).unwrap().shift(1).unwrap().truncate(prec);
    assert_eq!(h3, h2.add(&h4));
    assert_eq!(h2, theta4_qexp(2, prec).unwrap());
    assert_eq!(h3, theta4_qexp(3, prec).unwrap());
    assert_eq!(h4, theta4_qexp(4, prec).unwrap());
}
