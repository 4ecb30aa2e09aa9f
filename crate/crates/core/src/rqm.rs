//! The extension ring QM[P, T] with `P = 1/pi` and `T = i/z`.
//!
//! Both new symbols carry weight 1. On the imaginary axis `z = it` we have
//! `T = 1/t`, and `T` may appear with negative exponents.

use std::collections::BTreeMap;
use std::fmt;

use rug::ops::Pow;
use rug::Float;

use crate::numeric::{self, Real, REAL_PREC};
use crate::poly::{Monomial, Poly};
use crate::qm1::QmPoly1;
use crate::qm2::QmPoly2;
use crate::qseries::QSeries;
use crate::{rat, Error, Integer, Rational, Result};

/// Base ring of an extension element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    /// Q[E2, E4, E6]
    One,
    /// Q[H2, H4, E2]
    Two,
}

impl Level {
    fn e2(self) -> Poly {
        match self {
            Level::One => Poly::var(0),
            Level::Two => Poly::var(2),
        }
    }

    fn e2_index(self) -> usize {
        match self {
            Level::One => 0,
            Level::Two => 2,
        }
    }

    fn weights(self) -> [u32; 3] {
        match self {
            Level::One => crate::qm1::WEIGHTS,
            Level::Two => crate::qm2::WEIGHTS,
        }
    }

    fn names(self) -> [&'static str; 3] {
        match self {
            Level::One => crate::qm1::NAMES,
            Level::Two => crate::qm2::NAMES,
        }
    }

    fn derivative(self, p: &Poly) -> Poly {
        match self {
            Level::One => QmPoly1(p.clone()).derivative().0,
            Level::Two => QmPoly2(p.clone()).derivative().0,
        }
    }

    fn to_qexp(self, p: &Poly, prec: i64) -> Result<QSeries> {
        match self {
            Level::One => QmPoly1(p.clone()).to_qexp(prec),
            Level::Two => QmPoly2(p.clone()).to_qexp(prec),
        }
    }
}

/// Key of a group of terms: exponents of `P` and `T`.
pub type Group = (u32, i64);

/// A finite sum of `P^p T^u B` with `B` in the base ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RqmElem {
    level: Level,
    groups: BTreeMap<Group, Poly>,
}

/// Value of an element on the imaginary axis.
#[derive(Clone, Debug)]
pub struct RqmEvaluation {
    pub value: Real,
    /// Sum of the absolute values of the group contributions.
    pub scale: Real,
}

fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

impl RqmElem {
    pub fn zero(level: Level) -> Self {
        Self { level, groups: BTreeMap::new() }
    }

    pub fn from_base(level: Level, base: Poly) -> Self {
        Self::zero(level).with_group((0, 0), base)
    }

    pub fn from_level1(p: &QmPoly1) -> Self {
        Self::from_base(Level::One, p.0.clone())
    }

    pub fn from_level2(p: &QmPoly2) -> Self {
        Self::from_base(Level::Two, p.0.clone())
    }

    /// `c P^p T^u`.
    pub fn pt(level: Level, p: u32, u: i64, c: Rational) -> Self {
        Self::zero(level).with_group((p, u), Poly::constant(c))
    }

    fn with_group(mut self, g: Group, base: Poly) -> Self {
        self.add_group(g, base);
        self
    }

    fn add_group(&mut self, g: Group, base: Poly) {
        if base.is_zero() {
            return;
        }
        let entry = self.groups.entry(g).or_default();
        *entry += base;
        if entry.is_zero() {
            self.groups.remove(&g);
        }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn groups(&self) -> impl Iterator<Item = (&Group, &Poly)> {
        self.groups.iter()
    }

    /// Rewrites a level-one element over Q[H2, H4, E2].
    pub fn to_level2(&self) -> Self {
        match self.level {
            Level::Two => self.clone(),
            Level::One => Self {
                level: Level::Two,
                groups: self
                    .groups
                    .iter()
                    .map(|(g, b)| (*g, QmPoly2::from_level1(&QmPoly1(b.clone())).0))
                    .collect(),
            },
        }
    }

    /// Brings two elements to a common level.
    pub fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if a.level == b.level {
            (a.clone(), b.clone())
        } else {
            (a.to_level2(), b.to_level2())
        }
    }

    /// The base polynomial if no `P` or `T` occurs.
    pub fn as_base(&self) -> Option<Poly> {
        match self.groups.len() {
            0 => Some(Poly::zero()),
            1 => self.groups.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.level);
        for (g, b) in &self.groups {
            out.add_group(*g, b.scale(c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = Self::unify(self, other);
        for (g, p) in b.groups {
            a.add_group(g, p);
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1, 1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::unify(self, other);
        let mut out = Self::zero(a.level);
        for ((p1, u1), b1) in &a.groups {
            for ((p2, u2), b2) in &b.groups {
                out.add_group((p1 + p2, u1 + u2), b1 * b2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let one = Self::from_base(self.level, Poly::one());
        (0..n).fold(one, |acc, _| acc.mul(self))
    }

    /// Total weight `base + p + u` of every term, if they agree.
    pub fn weight(&self) -> Option<i64> {
        let mut ws = self.groups.iter().flat_map(|((p, u), b)| {
            b.terms()
                .map(move |(m, _)| Poly::monomial_weight(m, self.level.weights()) as i64 + *p as i64 + u)
        });
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    /// Derivation extending D with `D(P) = 0` and `D(T) = P T^2 / 2`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero(self.level);
        for ((p, u), b) in &self.groups {
            out.add_group((*p, *u), self.level.derivative(b));
            if *u != 0 {
                out.add_group((p + 1, u + 1), b.scale(&rat(*u, 2)));
            }
        }
        out
    }

    /// `D x - (k/12) E2 x`.
    pub fn serre(&self, k: i64) -> Self {
        let e2x = Self::from_base(self.level, self.level.e2()).mul(self).scale(&rat(k, 12));
        self.derivative().sub(&e2x)
    }

    pub fn serre_iter(&self, k: i64, r: u32) -> Self {
        (0..r).fold(self.clone(), |acc, i| acc.serre(k + 2 * i as i64))
    }

    /// Image of one base monomial under S, as `(j, monomial, coefficient)`
    /// triples contributing `P^j T^j` times the monomial. Uses
    /// `E2 -> E2 - 6PT`, `E4, E6` fixed, `H2 -> -H4`, `H4 -> -H2`.
    fn slash_monomial(level: Level, m: &Monomial, c: &Rational) -> Vec<(u32, Monomial, Rational)> {
        let e2 = level.e2_index();
        let a = m[e2];
        let (rest, sign) = match level {
            Level::One => (*m, 1),
            Level::Two => ([m[1], m[0], m[2]], if (m[0] + m[1]) % 2 == 0 { 1 } else { -1 }),
        };
        (0..=a)
            .map(|j| {
                let mut mono = rest;
                mono[e2] = a - j;
                let k = Integer::from(binomial(a, j) * Integer::from(-6).pow(j)) * sign;
                (j, mono, Rational::from(c * Rational::from(k)))
            })
            .collect()
    }

    /// `f|S` for a homogeneous base element `f`, so that its value at `z` is
    /// `z^(-k) f(-1/z)`.
    pub fn slash_s(level: Level, f: &Poly) -> Result<Self> {
        if !f.is_zero() && f.homogeneous_weight(level.weights()).is_none() {
            return Err(Error::Inhomogeneous);
        }
        let mut out = Self::zero(level);
        for (m, c) in f.terms() {
            for (j, mono, coeff) in Self::slash_monomial(level, m, c) {
                out.add_group((j, j as i64), Poly::monomial(mono, coeff));
            }
        }
        Ok(out)
    }

    /// The element `y` with `y(t) = x(1/t)` on the imaginary axis.
    ///
    /// A term `P^p T^u B` with `B` of weight `k` maps to
    /// `(-1)^(k/2) P^p T^(-u-k) (B|S)`.
    pub fn flip(&self) -> Result<Self> {
        let mut out = Self::zero(self.level);
        for ((p, u), b) in &self.groups {
            for (m, c) in b.terms() {
                let k = Poly::monomial_weight(m, self.level.weights()) as i64;
                if k % 2 != 0 {
                    return Err(Error::OddWeight(k));
                }
                let c = if (k / 2) % 2 == 0 { c.clone() } else { Rational::from(-c) };
                for (j, mono, coeff) in Self::slash_monomial(self.level, m, &c) {
                    out.add_group((p + j, -u - k + j as i64), Poly::monomial(mono, coeff));
                }
            }
        }
        Ok(out)
    }

    /// Expands each group's base polynomial to an exact q-series.
    pub fn to_grouped(&self, prec: i64) -> Result<BTreeMap<Group, QSeries>> {
        self.groups
            .iter()
            .map(|(g, b)| Ok((*g, self.level.to_qexp(b, prec)?)))
            .collect()
    }

    /// Sums `pi^(-p) t^(-u) B(it)` over the groups.
    pub fn eval(&self, t: &Real, prec: i64, tol: f64) -> Result<RqmEvaluation> {
        eval_grouped(&self.to_grouped(prec)?, t, tol)
    }

    /// Like [`Self::eval`], but for `t < 1` evaluates the flipped element at
    /// `1/t`, where the q-expansions converge fast.
    pub fn eval_auto(&self, t: &Real, prec: i64, tol: f64) -> Result<RqmEvaluation> {
        if *t <= 0 {
            return Err(Error::NonPositivePoint(t.to_f64()));
        }
        if *t >= 1 {
            self.eval(t, prec, tol)
        } else {
            let inv = Float::with_val(REAL_PREC, t.recip_ref());
            self.flip()?.eval(&inv, prec, tol)
        }
    }
}

/// Cached q-expansions of an element and of its flip, for repeated
/// evaluation on the imaginary axis.
#[derive(Clone, Debug)]
pub struct AxisEvaluator {
    direct: BTreeMap<Group, QSeries>,
    flipped: BTreeMap<Group, QSeries>,
    tol: f64,
}

impl AxisEvaluator {
    pub fn new(x: &RqmElem, prec: i64, tol: f64) -> Result<Self> {
        Ok(Self { direct: x.to_grouped(prec)?, flipped: x.flip()?.to_grouped(prec)?, tol })
    }

    /// Same result as [`RqmElem::eval_auto`].
    pub fn eval(&self, t: &Real) -> Result<RqmEvaluation> {
        if *t <= 0 {
            return Err(Error::NonPositivePoint(t.to_f64()));
        }
        if *t >= 1 {
            eval_grouped(&self.direct, t, self.tol)
        } else {
            eval_grouped(&self.flipped, &Float::with_val(REAL_PREC, t.recip_ref()), self.tol)
        }
    }
}

/// Evaluates pre-expanded groups at `z = it`.
pub fn eval_grouped(groups: &BTreeMap<Group, QSeries>, t: &Real, tol: f64) -> Result<RqmEvaluation> {
    if *t <= 0 {
        return Err(Error::NonPositivePoint(t.to_f64()));
    }
    let inv_pi = Float::with_val(REAL_PREC, numeric::pi().recip_ref());
    let mut value = Float::new(REAL_PREC);
    let mut scale = Float::new(REAL_PREC);
    for ((p, u), s) in groups {
        let ev = s.eval(t, tol)?;
        let factor = Float::with_val(REAL_PREC, (&inv_pi).pow(*p)) / Float::with_val(REAL_PREC, t.pow(*u as i32));
        let v = ev.value * factor;
        scale += Float::with_val(REAL_PREC, v.abs_ref());
        value += v;
    }
    Ok(RqmEvaluation { value, scale })
}

impl fmt::Display for RqmElem {
    /// Sum of `P^p*T^u*(base)` groups, in the expression syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .groups
            .iter()
            .map(|((p, u), b)| {
                let mut factors = Vec::new();
                match p {
                    0 => {}
                    1 => factors.push("P".to_string()),
                    _ => factors.push(format!("P^{p}")),
                }
                match u {
                    0 => {}
                    1 => factors.push("T".to_string()),
                    _ => factors.push(format!("T^{u}")),
                }
                factors.push(format!("({})", b.display_with(self.level.names())));
                factors.join("*")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
