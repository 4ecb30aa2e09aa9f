//! The ring Q[E2, E4, E6] of quasimodular forms for SL2(Z).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::poly::{Monomial, Poly};
use crate::qseries::{eisenstein_qexp, QSeries};
use crate::{poly_newtype_ops, rat, Error, Rational, Result};

pub const NAMES: [&str; 3] = ["E2", "E4", "E6"];
pub const WEIGHTS: [u32; 3] = [2, 4, 6];

/// Weight of an element: a common weight, or a marker for mixed weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    Homogeneous(u32),
    Inhomogeneous,
}

/// Lowest exponent of a q-expansion, or a note that nothing nonzero was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VanishingOrder {
    /// `index` is in units of q^(1/2).
    Order { index: i64, leading: Rational },
    ZeroToPrec(i64),
}

impl VanishingOrder {
    pub fn index(&self) -> Option<i64> {
        match self {
            Self::Order { index, .. } => Some(*index),
            Self::ZeroToPrec(_) => None,
        }
    }

    pub(crate) fn of(s: &QSeries) -> Self {
        match s.leading() {
            Some((index, c)) => Self::Order { index, leading: c.clone() },
            None => Self::ZeroToPrec(s.prec()),
        }
    }
}

/// Weight and depth of a polynomial with the given generator weights and
/// depth generator.
pub(crate) fn weight_depth(p: &Poly, weights: [u32; 3], depth_var: usize) -> Result<(Weight, u32)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let w = match p.homogeneous_weight(weights) {
        Some(w) => Weight::Homogeneous(w),
        None => Weight::Inhomogeneous,
    };
    Ok((w, p.degree_in(depth_var)))
}

/// Substitutes series for the three generators, truncating to `prec`.
pub(crate) fn expand(p: &Poly, gens: &[QSeries; 3], prec: i64) -> QSeries {
    let mut powers: [Vec<QSeries>; 3] = Default::default();
    for (i, pw) in powers.iter_mut().enumerate() {
        pw.push(QSeries::constant(rat(1, 1), prec));
        for k in 1..=p.degree_in(i) as usize {
            let next = pw[k - 1].mul(&gens[i]).truncate(prec);
            pw.push(next);
        }
    }
    let mut out = QSeries::zero(prec);
    for (m, c) in p.terms() {
        let mono = powers[0][m[0] as usize]
            .mul(&powers[1][m[1] as usize])
            .mul(&powers[2][m[2] as usize]);
        out = out.add(&mono.scale(c));
    }
    out.truncate(prec)
}

/// Caches generator series per precision.
pub(crate) struct GenCache(OnceLock<Mutex<HashMap<i64, Arc<[QSeries; 3]>>>>);

impl GenCache {
    pub(crate) const fn new() -> Self {
        Self(OnceLock::new())
    }

    pub(crate) fn get(&self, prec: i64, build: impl FnOnce(i64) -> [QSeries; 3]) -> Arc<[QSeries; 3]> {
        let map = self.0.get_or_init(Default::default);
        if let Some(g) = map.lock().expect("cache poisoned").get(&prec) {
            return g.clone();
        }
        let g = Arc::new(build(prec));
        map.lock().expect("cache poisoned").insert(prec, g.clone());
        g
    }
}

static GENS: GenCache = GenCache::new();

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QmPoly1(pub Poly);

poly_newtype_ops!(QmPoly1);

impl QmPoly1 {
    pub fn zero() -> Self {
        Self(Poly::zero())
    }

    pub fn constant(c: Rational) -> Self {
        Self(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from(n))
    }

    pub fn e2() -> Self {
        Self(Poly::var(0))
    }

    pub fn e4() -> Self {
        Self(Poly::var(1))
    }

    pub fn e6() -> Self {
        Self(Poly::var(2))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        Self(Poly::monomial(m, c))
    }

    /// `(E4^3 - E6^2) / 1728`.
    pub fn delta() -> Self {
        (&Self::e4().pow(3) - &Self::e6().pow(2)).scale(&rat(1, 1728))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self(self.0.scale(c))
    }

    pub fn pow(&self, n: u32) -> Self {
        Self(self.0.pow(n))
    }

    pub fn weight_depth(&self) -> Result<(Weight, u32)> {
        weight_depth(&self.0, WEIGHTS, 0)
    }

    /// The common weight, failing on zero or inhomogeneous input.
    pub fn weight(&self) -> Result<u32> {
        match self.weight_depth()?.0 {
            Weight::Homogeneous(w) => Ok(w),
            Weight::Inhomogeneous => Err(Error::Inhomogeneous),
        }
    }

    pub fn depth(&self) -> u32 {
        self.0.degree_in(0)
    }

    /// Images of E2, E4, E6 under D = q d/dq.
    pub fn derivative_images() -> [Poly; 3] {
        let (e2, e4, e6) = (Self::e2(), Self::e4(), Self::e6());
        [
            (&(&e2 * &e2) - &e4).scale(&rat(1, 12)).0,
            (&(&e2 * &e4) - &e6).scale(&rat(1, 3)).0,
            (&(&e2 * &e6) - &(&e4 * &e4)).scale(&rat(1, 2)).0,
        ]
    }

    pub fn derivative(&self) -> Self {
        static IMAGES: OnceLock<[Poly; 3]> = OnceLock::new();
        Self(self.0.derive(IMAGES.get_or_init(Self::derivative_images)))
    }

    /// `D f - (k/12) E2 f`.
    pub fn serre(&self, k: i64) -> Self {
        let e2f = (&Self::e2() * self).scale(&rat(k, 12));
        &self.derivative() - &e2f
    }

    /// `r`-fold Serre derivative starting at weight `k`.
    pub fn serre_iter(&self, k: i64, r: u32) -> Self {
        (0..r).fold(self.clone(), |acc, i| acc.serre(k + 2 * i as i64))
    }

    pub fn to_qexp(&self, prec: i64) -> Result<QSeries> {
        if prec < 0 {
            return Err(Error::NegativePrecision(prec));
        }
        let gens = GENS.get(prec, |p| {
            [2, 4, 6].map(|k| eisenstein_qexp(k, p).expect("valid weight"))
        });
        Ok(expand(&self.0, &gens, prec))
    }

    pub fn vanishing_order(&self, prec: i64) -> Result<VanishingOrder> {
        Ok(VanishingOrder::of(&self.to_qexp(prec)?))
    }
}

impl fmt::Display for QmPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.display_with(NAMES))
    }
}
