//! Sparse polynomials in three variables over the rationals.
//!
//! Both quasimodular rings are polynomial rings on three generators, so they
//! share this representation and differ only in generator names, weights and
//! the derivation rules applied to the generators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::Rational;

/// Exponent vector of a monomial. Ordered lexicographically.
pub type Monomial = [u32; 3];

/// Canonical sparse polynomial: no stored coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::from(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    /// The generator with index `i` (0, 1 or 2).
    pub fn var(i: usize) -> Self {
        let mut m = [0; 3];
        m[i] = 1;
        Self::monomial(m, Rational::from(1))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::new()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c == 0 {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if *v == 0 {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if *c == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, Rational::from(v * c)))
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest exponent of variable `i` over all terms (0 for the zero polynomial).
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m[i]).max().unwrap_or(0)
    }

    /// Weighted degree of a single monomial.
    pub fn monomial_weight(m: &Monomial, weights: [u32; 3]) -> u32 {
        m.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    /// The weighted degree shared by every term, if there is one.
    pub fn homogeneous_weight(&self, weights: [u32; 3]) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| Self::monomial_weight(m, weights));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Applies the derivation determined by the images of the three generators.
    pub fn derive(&self, images: &[Poly; 3]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for i in 0..3 {
                if m[i] == 0 || images[i].is_zero() {
                    continue;
                }
                let mut lowered = *m;
                lowered[i] -= 1;
                let factor = Rational::from(c * m[i]);
                for (m2, c2) in &images[i].terms {
                    let prod = [lowered[0] + m2[0], lowered[1] + m2[1], lowered[2] + m2[2]];
                    out.add_term(prod, Rational::from(&factor * c2));
                }
            }
        }
        out
    }

    /// Ring morphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[Poly; 3]) -> Poly {
        let mut powers: [Vec<Poly>; 3] = [vec![Poly::one()], vec![Poly::one()], vec![Poly::one()]];
        for (i, pw) in powers.iter_mut().enumerate() {
            let d = self.degree_in(i) as usize;
            for k in 1..=d {
                let next = &pw[k - 1] * &images[i];
                pw.push(next);
            }
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let t = &(&powers[0][m[0] as usize] * &powers[1][m[1] as usize]) * &powers[2][m[2] as usize];
            out += t.scale(c);
        }
        out
    }

    /// Formats with the given generator names, e.g. `1/720*E2*E4 - 1/720*E6`.
    pub fn display_with(&self, names: [&str; 3]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = *c < 0;
            let abs = Rational::from(c.abs_ref());
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for i in 0..3 {
                match m[i] {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    e => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            if factors.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if abs != 1 {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(["x", "y", "z"]))
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, Rational::from(-c));
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]];
                out.add_term(m, Rational::from(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, Rational::from(-c))).collect(),
        }
    }
}

/// Forwards the owned/borrowed operator combinations of a newtype over [`Poly`].
#[macro_export]
#[doc(hidden)]
macro_rules! poly_newtype_ops {
    ($t:ident) => {
        impl ::std::ops::Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                $t(&self.0 + &rhs.0)
            }
        }
        impl ::std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl ::std::ops::Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                $t(&self.0 - &rhs.0)
            }
        }
        impl ::std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl ::std::ops::Mul for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                $t(&self.0 * &rhs.0)
            }
        }
        impl ::std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl ::std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t(-&self.0)
            }
        }
        impl ::std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn difference_of_squares() {
        let x = Poly::var(0);
        let one = Poly::one();
        let p = &(&one + &x) * &(&one - &x);
        assert_eq!(p, &one - &x.pow(2));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let x = Poly::var(1);
        assert!((&x - &x).is_zero());
        assert!(Poly::monomial([1, 0, 0], rat(0, 1)).is_zero());
    }

    #[test]
    fn derivation_of_power() {
        // d/dx of x^3 with dx = 1
        let images = [Poly::one(), Poly::zero(), Poly::zero()];
        let p = Poly::var(0).pow(3);
        assert_eq!(p.derive(&images), Poly::monomial([2, 0, 0], rat(3, 1)));
    }

    #[test]
    fn display_signs() {
        let p = &Poly::monomial([1, 1, 0], rat(1, 720)) - &Poly::monomial([0, 0, 1], rat(1, 720));
        assert_eq!(p.display_with(["E2", "E4", "E6"]), "-1/720*E6 + 1/720*E2*E4");
    }
}
