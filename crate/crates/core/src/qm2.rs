//! The ring Q[H2, H4, E2] of quasimodular forms for Gamma(2).
//!
//! `H3` is not a generator; it is always rewritten as `H2 + H4`.

use std::fmt;
use std::sync::OnceLock;

use crate::poly::{Monomial, Poly};
use crate::qm1::{expand, weight_depth, GenCache, QmPoly1, VanishingOrder, Weight};
use crate::qseries::{eisenstein_qexp, theta4_qexp, QSeries};
use crate::{poly_newtype_ops, rat, Error, Rational, Result};

pub const NAMES: [&str; 3] = ["H2", "H4", "E2"];
pub const WEIGHTS: [u32; 3] = [2, 2, 2];

static GENS: GenCache = GenCache::new();

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QmPoly2(pub Poly);

poly_newtype_ops!(QmPoly2);

impl QmPoly2 {
    pub fn zero() -> Self {
        Self(Poly::zero())
    }

    pub fn constant(c: Rational) -> Self {
        Self(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from(n))
    }

    pub fn h2() -> Self {
        Self(Poly::var(0))
    }

    pub fn h4() -> Self {
        Self(Poly::var(1))
    }

    pub fn h3() -> Self {
        &Self::h2() + &Self::h4()
    }

    pub fn e2() -> Self {
        Self(Poly::var(2))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        Self(Poly::monomial(m, c))
    }

    /// `H2^2 + H2 H4 + H4^2`.
    pub fn e4() -> Self {
        let (h2, h4) = (Self::h2(), Self::h4());
        &(&h2.pow(2) + &(&h2 * &h4)) + &h4.pow(2)
    }

    /// `(H2 + 2 H4)(2 H2 + H4)(H4 - H2) / 2`.
    pub fn e6() -> Self {
        let (h2, h4) = (Self::h2(), Self::h4());
        let a = &h2 + &h4.scale(&rat(2, 1));
        let b = &h2.scale(&rat(2, 1)) + &h4;
        (&(&a * &b) * &(&h4 - &h2)).scale(&rat(1, 2))
    }

    /// Level-lowering embedding of Q[E2, E4, E6].
    pub fn from_level1(p: &QmPoly1) -> Self {
        static IMAGES: OnceLock<[Poly; 3]> = OnceLock::new();
        let images = IMAGES.get_or_init(|| [Self::e2().0, Self::e4().0, Self::e6().0]);
        Self(p.0.substitute(images))
    }

    pub fn delta() -> Self {
        Self::from_level1(&QmPoly1::delta())
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
        weight_depth(&self.0, WEIGHTS, 2)
    }

    pub fn weight(&self) -> Result<u32> {
        match self.weight_depth()?.0 {
            Weight::Homogeneous(w) => Ok(w),
            Weight::Inhomogeneous => Err(Error::Inhomogeneous),
        }
    }

    pub fn depth(&self) -> u32 {
        self.0.degree_in(2)
    }

    pub fn derivative_images() -> [Poly; 3] {
        let (h2, h4, e2) = (Self::h2(), Self::h4(), Self::e2());
        let sixth = rat(1, 6);
        let two = rat(2, 1);
        let dh2 = &(&h2.pow(2) + &(&h2 * &h4).scale(&two)) + &(&e2 * &h2);
        let dh4 = &(&e2 * &h4) - &(&(&h2 * &h4).scale(&two) + &h4.pow(2));
        let de2 = (&e2.pow(2) - &Self::e4()).scale(&rat(1, 12));
        [dh2.scale(&sixth).0, dh4.scale(&sixth).0, de2.0]
    }

    pub fn derivative(&self) -> Self {
        static IMAGES: OnceLock<[Poly; 3]> = OnceLock::new();
        Self(self.0.derive(IMAGES.get_or_init(Self::derivative_images)))
    }

    pub fn serre(&self, k: i64) -> Self {
        let e2f = (&Self::e2() * self).scale(&rat(k, 12));
        &self.derivative() - &e2f
    }

    pub fn serre_iter(&self, k: i64, r: u32) -> Self {
        (0..r).fold(self.clone(), |acc, i| acc.serre(k + 2 * i as i64))
    }

    fn check_slashable(&self) -> Result<()> {
        if self.is_zero() {
            return Ok(());
        }
        self.weight()?;
        match self.depth() {
            0 => Ok(()),
            d => Err(Error::PositiveDepth(d)),
        }
    }

    /// `f|S` for homogeneous depth-0 `f`: `H2 -> -H4`, `H4 -> -H2`.
    pub fn slash_s(&self) -> Result<Self> {
        self.check_slashable()?;
        let images = [(-&Self::h4()).0, (-&Self::h2()).0, Self::e2().0];
        Ok(Self(self.0.substitute(&images)))
    }

    /// `f|T` for homogeneous depth-0 `f`: `H2 -> -H2`, `H4 -> H2 + H4`.
    pub fn slash_t(&self) -> Result<Self> {
        self.check_slashable()?;
        let images = [(-&Self::h2()).0, Self::h3().0, Self::e2().0];
        Ok(Self(self.0.substitute(&images)))
    }

    pub fn to_qexp(&self, prec: i64) -> Result<QSeries> {
        if prec < 0 {
            return Err(Error::NegativePrecision(prec));
        }
        let gens = GENS.get(prec, |p| {
            [
                theta4_qexp(2, p).expect("valid index"),
                theta4_qexp(4, p).expect("valid index"),
                eisenstein_qexp(2, p).expect("valid weight"),
            ]
        });
        Ok(expand(&self.0, &gens, prec))
    }

    pub fn vanishing_order(&self, prec: i64) -> Result<VanishingOrder> {
        Ok(VanishingOrder::of(&self.to_qexp(prec)?))
    }
}

impl fmt::Display for QmPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.display_with(NAMES))
    }
}
