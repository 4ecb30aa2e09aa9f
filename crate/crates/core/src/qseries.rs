//! Exact truncated power series in q^(1/2).
//!
//! A coefficient is keyed by an integer index `n` standing for the exponent
//! `n/2`, so level-1 objects only use even indices. `prec` is the first index
//! whose coefficient is not known; every stored index is below it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::numeric::{self, Real, REAL_PREC};
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: BTreeMap<i64, Rational>,
    prec: i64,
}

/// Result of summing a series at `z = it`.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: Real,
    /// Sum of the absolute values of the included terms.
    pub scale: Real,
    /// Heuristic size of the omitted tail: the last stored term extrapolated
    /// to the truncation index. Not a rigorous bound.
    pub tail_estimate: Real,
}

impl QSeries {
    /// The zero series known up to (not including) index `prec`.
    pub fn zero(prec: i64) -> Self {
        assert!(prec >= 0, "precision must be nonnegative");
        Self { coeffs: BTreeMap::new(), prec }
    }

    pub fn constant(c: Rational, prec: i64) -> Self {
        Self::from_coeffs([(0, c)], prec)
    }

    /// Builds a series, discarding zero coefficients and indices at or above `prec`.
    pub fn from_coeffs<I: IntoIterator<Item = (i64, Rational)>>(iter: I, prec: i64) -> Self {
        let mut s = Self::zero(prec);
        for (n, c) in iter {
            if n < prec {
                s.add_coeff(n, c);
            }
        }
        s
    }

    fn add_coeff(&mut self, n: i64, c: Rational) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(n).or_default();
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&n);
        }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at index `n`, or `None` when `n` is beyond the precision.
    pub fn coeff(&self, n: i64) -> Option<Rational> {
        (n < self.prec).then(|| self.coeffs.get(&n).cloned().unwrap_or_default())
    }

    /// Coefficient of the integral power `q^m`.
    pub fn q_coeff(&self, m: i64) -> Option<Rational> {
        self.coeff(2 * m)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    /// Lowest index with a nonzero coefficient.
    pub fn order(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Leading index and coefficient.
    pub fn leading(&self) -> Option<(i64, &Rational)> {
        self.coeffs.iter().next().map(|(n, c)| (*n, c))
    }

    /// True iff all coefficients below `prec` are integral-exponent (even index).
    pub fn is_integral(&self) -> bool {
        self.coeffs.keys().all(|n| n % 2 == 0)
    }

    pub fn truncate(&self, prec: i64) -> Self {
        let prec = prec.min(self.prec).max(0);
        Self {
            coeffs: self.coeffs.range(..prec).map(|(n, c)| (*n, c.clone())).collect(),
            prec,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        let mut out = self.truncate(prec);
        for (n, c) in other.coeffs.range(..prec) {
            out.add_coeff(*n, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if *c == 0 {
            return Self::zero(self.prec);
        }
        Self {
            coeffs: self.coeffs.iter().map(|(n, v)| (*n, Rational::from(v * c))).collect(),
            prec: self.prec,
        }
    }

    /// Truncated product. The result precision is
    /// `min(prec_a + ord_b, prec_b + ord_a)`, where the order of a zero
    /// series is taken to be its precision.
    pub fn mul(&self, other: &Self) -> Self {
        let ord_a = self.order().unwrap_or(self.prec);
        let ord_b = other.order().unwrap_or(other.prec);
        let prec = (self.prec + ord_b).min(other.prec + ord_a).max(0);
        let lo = ord_a + ord_b;
        if prec <= lo {
            return Self::zero(prec);
        }
        let mut acc: Vec<Rational> = vec![Rational::new(); (prec - lo) as usize];
        let b: Vec<(i64, &Rational)> = other.coeffs().collect();
        for (na, ca) in self.coeffs() {
            for (nb, cb) in &b {
                let n = na + nb;
                if n >= prec {
                    break;
                }
                acc[(n - lo) as usize] += Rational::from(ca * *cb);
            }
        }
        Self::from_coeffs(acc.into_iter().enumerate().map(|(i, c)| (i as i64 + lo, c)), prec)
    }

    /// Integer power; negative exponents need an invertible series.
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        let mut acc = Self::constant(Rational::from(1), self.prec.max(1));
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        if n == 0 {
            acc = acc.truncate(self.prec);
        }
        Ok(acc)
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = match self.leading() {
            Some((0, c)) => c.clone(),
            _ => return Err(Error::NotInvertible),
        };
        let inv0 = Rational::from(c0.recip_ref());
        let prec = self.prec;
        let mut out: Vec<Rational> = vec![Rational::new(); prec as usize];
        out[0] = inv0.clone();
        for n in 1..prec {
            let mut s = Rational::new();
            for (k, a) in self.coeffs.range(1..=n) {
                s += Rational::from(a * &out[(n - k) as usize]);
            }
            out[n as usize] = -(s * &inv0);
        }
        Ok(Self::from_coeffs(out.into_iter().enumerate().map(|(i, c)| (i as i64, c)), prec))
    }

    /// The derivation `q d/dq`: the coefficient at exponent `e` is multiplied by `e`.
    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs.iter().map(|(n, c)| (*n, Rational::from(c * Rational::from((*n, 2))))),
            self.prec,
        )
    }

    /// Multiplies by `q^(k/2)`.
    pub fn shift(&self, k: i64) -> Result<Self> {
        if self.prec + k < 0 {
            return Err(Error::NegativePrecision(self.prec + k));
        }
        Ok(Self {
            coeffs: self.coeffs.iter().map(|(n, c)| (n + k, c.clone())).collect(),
            prec: self.prec + k,
        })
    }

    /// Substitutes `q -> q^factor`.
    pub fn reindex(&self, factor: i64) -> Self {
        assert!(factor >= 1);
        Self {
            coeffs: self.coeffs.iter().map(|(n, c)| (n * factor, c.clone())).collect(),
            prec: self.prec * factor,
        }
    }

    /// Index of the first negative coefficient, if any.
    pub fn first_negative(&self) -> Option<(i64, Rational)> {
        self.coeffs.iter().find(|(_, c)| **c < 0).map(|(n, c)| (*n, c.clone()))
    }

    /// Sums the stored terms at `z = it`, i.e. with `q^(1/2) = exp(-pi t)`.
    ///
    /// Fails when the tail estimate exceeds `tol` relative to the sum of the
    /// absolute values of the included terms.
    pub fn eval(&self, t: &Real, tol: f64) -> Result<Evaluation> {
        if *t <= 0 {
            return Err(Error::NonPositivePoint(t.to_f64()));
        }
        let x = Float::with_val(REAL_PREC, -(numeric::pi() * t)).exp();
        let mut value = Float::new(REAL_PREC);
        let mut scale = Float::new(REAL_PREC);
        for (n, c) in &self.coeffs {
            let term = Float::with_val(REAL_PREC, (&x).pow(*n as i32)) * c;
            scale += Float::with_val(REAL_PREC, term.abs_ref());
            value += term;
        }
        let tail_estimate = match self.coeffs.iter().next_back() {
            Some((_, c)) => Float::with_val(REAL_PREC, (&x).pow(self.prec as i32)) * Rational::from(c.abs_ref()),
            None => Float::new(REAL_PREC),
        };
        if tail_estimate > Float::with_val(REAL_PREC, &scale * tol) {
            return Err(Error::Truncation {
                prec: self.prec,
                t: t.to_f64(),
                tol,
                tail: tail_estimate.to_f64(),
            });
        }
        Ok(Evaluation { value, scale, tail_estimate })
    }
}

fn fmt_index(n: i64) -> String {
    if n % 2 == 0 {
        (n / 2).to_string()
    } else {
        format!("{}/2", n)
    }
}

impl fmt::Display for QSeries {
    /// `c0*q^(e0) + c1*q^(e1) + ... + O(q^(p))`, coefficients as exact rationals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in &self.coeffs {
            write!(f, "{}*q^({}) + ", c, fmt_index(*n))?;
        }
        write!(f, "O(q^({}))", fmt_index(self.prec))
    }
}

fn parse_index(s: &str) -> Result<i64> {
    let bad = || Error::SeriesText(format!("bad exponent `{s}`"));
    match s.split_once('/') {
        Some((num, "2")) => {
            let n: i64 = num.trim().parse().map_err(|_| bad())?;
            if n % 2 == 0 {
                return Err(bad());
            }
            Ok(n)
        }
        Some(_) => Err(bad()),
        None => Ok(2 * s.trim().parse::<i64>().map_err(|_| bad())?),
    }
}

fn exponent_of(piece: &str, prefix: &str) -> Result<i64> {
    let inner = piece
        .strip_prefix(prefix)
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::SeriesText(format!("malformed term `{piece}`")))?;
    parse_index(inner)
}

impl FromStr for QSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let pieces: Vec<&str> = s.trim().split(" + ").collect();
        let (last, terms) = pieces.split_last().expect("split yields at least one piece");
        let prec = last
            .strip_prefix("O(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::SeriesText("missing O(q^(p)) term".into()))
            .and_then(|inner| exponent_of(inner, "q^("))?;
        if prec < 0 {
            return Err(Error::NegativePrecision(prec));
        }
        let mut coeffs = BTreeMap::new();
        for piece in terms {
            let (c, q) = piece
                .split_once('*')
                .ok_or_else(|| Error::SeriesText(format!("malformed term `{piece}`")))?;
            let c: Rational = c.parse().map_err(|_| Error::SeriesText(format!("bad coefficient `{c}`")))?;
            let n = exponent_of(q, "q^(")?;
            if c == 0 || n >= prec || coeffs.insert(n, c).is_some() {
                return Err(Error::SeriesText(format!("non-canonical term `{piece}`")));
            }
        }
        Ok(Self { coeffs, prec })
    }
}

/// `sum_{d | n} d^k`.
pub fn divisor_sum(k: u32, n: u64) -> Integer {
    let mut s = Integer::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            s += Integer::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += Integer::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// Number of vectors in Z^4 of squared norm `n`, via Jacobi's four-square
/// formula `8 * sum_{d | n, 4 does not divide d} d`.
pub fn r4_count(n: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    8 * (1..=n).filter(|d| n % d == 0 && d % 4 != 0).sum::<u64>()
}

fn check_prec(prec: i64) -> Result<()> {
    if prec < 0 {
        Err(Error::NegativePrecision(prec))
    } else {
        Ok(())
    }
}

/// Number of integral powers `q^m` with index `2m < prec`.
fn integral_len(prec: i64) -> u64 {
    ((prec + 1) / 2) as u64
}

/// Normalized Eisenstein series `E_k`, `k` in {2, 4, 6}.
pub fn eisenstein_qexp(k: i64, prec: i64) -> Result<QSeries> {
    let c: i64 = match k {
        2 => -24,
        4 => 240,
        6 => -504,
        _ => return Err(Error::EisensteinWeight(k)),
    };
    check_prec(prec)?;
    let terms = (0..integral_len(prec)).map(|m| {
        let a = if m == 0 {
            Integer::from(1)
        } else {
            divisor_sum(k as u32 - 1, m) * c
        };
        (2 * m as i64, Rational::from(a))
    });
    Ok(QSeries::from_coeffs(terms, prec))
}

/// Fourth power `H_j` of the thetanull function, `j` in {2, 3, 4}.
pub fn theta4_qexp(j: i64, prec: i64) -> Result<QSeries> {
    if !(2..=4).contains(&j) {
        return Err(Error::ThetaIndex(j));
    }
    check_prec(prec)?;
    let terms = (0..prec.max(0) as u64).filter_map(|n| {
        let c: i64 = match j {
            2 if n % 2 == 1 => 2 * r4_count(n) as i64,
            2 => return None,
            3 => r4_count(n) as i64,
            _ => {
                let r = r4_count(n) as i64;
                if n % 2 == 1 {
                    -r
                } else {
                    r
                }
            }
        };
        Some((n as i64, Rational::from(c)))
    });
    Ok(QSeries::from_coeffs(terms, prec))
}

fn int_mul_trunc(a: &[Integer], b: &[Integer], len: usize) -> Vec<Integer> {
    let mut out = vec![Integer::new(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += Integer::from(x * y);
        }
    }
    out
}

/// The discriminant `q prod (1 - q^n)^24`, from the product formula.
pub fn delta_qexp(prec: i64) -> Result<QSeries> {
    check_prec(prec)?;
    let len = integral_len(prec) as usize;
    if len <= 1 {
        return Ok(QSeries::zero(prec));
    }
    // prod_{n >= 1} (1 - q^n) up to q^(len - 2)
    let plen = len - 1;
    let mut eta = vec![Integer::new(); plen];
    eta[0] = Integer::from(1);
    for n in 1..plen {
        for m in (n..plen).rev() {
            let v = Integer::from(&eta[m - n]);
            eta[m] -= v;
        }
    }
    let mut acc = vec![Integer::new(); plen];
    acc[0] = Integer::from(1);
    let mut base = eta;
    let mut e = 24u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = int_mul_trunc(&acc, &base, plen);
        }
        e >>= 1;
        if e > 0 {
            base = int_mul_trunc(&base, &base, plen);
        }
    }
    let terms = acc.into_iter().enumerate().map(|(m, c)| (2 * (m as i64 + 1), Rational::from(c)));
    Ok(QSeries::from_coeffs(terms, prec))
}
