//! Elaboration of expressions into ring elements.
//!
//! Values are promoted along Q[E2,E4,E6] -> Q[H2,H4,E2] -> QM[P,T] when
//! operands live in different rings.

use std::fmt;

use super::{Expr, Gen};
use crate::extremal::extremal;
use crate::numeric::Real;
use crate::poly::Poly;
use crate::qm1::QmPoly1;
use crate::qm2::QmPoly2;
use crate::qseries::QSeries;
use crate::rqm::{Level, RqmElem, RqmEvaluation};
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    L1(QmPoly1),
    L2(QmPoly2),
    Rqm(RqmElem),
}

impl Value {
    fn rank(&self) -> u8 {
        match self {
            Value::L1(_) => 0,
            Value::L2(_) => 1,
            Value::Rqm(_) => 2,
        }
    }

    fn promote(&self, rank: u8) -> Value {
        match (self, rank) {
            (_, r) if r == self.rank() => self.clone(),
            (Value::L1(p), 1) => Value::L2(QmPoly2::from_level1(p)),
            (Value::L1(p), _) => Value::Rqm(RqmElem::from_level1(p)),
            (Value::L2(p), _) => Value::Rqm(RqmElem::from_level2(p)),
            (Value::Rqm(_), _) => unreachable!("cannot demote"),
        }
    }

    pub fn into_rqm(&self) -> RqmElem {
        match self.promote(2) {
            Value::Rqm(r) => r,
            _ => unreachable!(),
        }
    }

    /// The rational value if this is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self {
            Value::L1(p) => p.0.as_constant(),
            Value::L2(p) => p.0.as_constant(),
            Value::Rqm(r) => r.as_base().and_then(|b| b.as_constant()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::L1(p) => p.is_zero(),
            Value::L2(p) => p.is_zero(),
            Value::Rqm(r) => r.is_zero(),
        }
    }

    fn binop(
        a: &Value,
        b: &Value,
        f1: impl Fn(&QmPoly1, &QmPoly1) -> QmPoly1,
        f2: impl Fn(&QmPoly2, &QmPoly2) -> QmPoly2,
        fr: impl Fn(&RqmElem, &RqmElem) -> RqmElem,
    ) -> Value {
        let r = a.rank().max(b.rank());
        match (a.promote(r), b.promote(r)) {
            (Value::L1(x), Value::L1(y)) => Value::L1(f1(&x, &y)),
            (Value::L2(x), Value::L2(y)) => Value::L2(f2(&x, &y)),
            (Value::Rqm(x), Value::Rqm(y)) => Value::Rqm(fr(&x, &y)),
            _ => unreachable!("promoted to a common rank"),
        }
    }

    pub fn add(&self, other: &Value) -> Value {
        Self::binop(self, other, |a, b| a + b, |a, b| a + b, RqmElem::add)
    }

    pub fn sub(&self, other: &Value) -> Value {
        Self::binop(self, other, |a, b| a - b, |a, b| a - b, RqmElem::sub)
    }

    pub fn mul(&self, other: &Value) -> Value {
        Self::binop(self, other, |a, b| a * b, |a, b| a * b, RqmElem::mul)
    }

    pub fn scale(&self, c: &Rational) -> Value {
        match self {
            Value::L1(p) => Value::L1(p.scale(c)),
            Value::L2(p) => Value::L2(p.scale(c)),
            Value::Rqm(r) => Value::Rqm(r.scale(c)),
        }
    }

    pub fn derivative(&self) -> Value {
        match self {
            Value::L1(p) => Value::L1(p.derivative()),
            Value::L2(p) => Value::L2(p.derivative()),
            Value::Rqm(r) => Value::Rqm(r.derivative()),
        }
    }

    pub fn serre(&self, k: i64) -> Value {
        match self {
            Value::L1(p) => Value::L1(p.serre(k)),
            Value::L2(p) => Value::L2(p.serre(k)),
            Value::Rqm(r) => Value::Rqm(r.serre(k)),
        }
    }

    pub fn pow(&self, n: i64) -> Result<Value> {
        if n >= 0 {
            let n = n as u32;
            return Ok(match self {
                Value::L1(p) => Value::L1(p.pow(n)),
                Value::L2(p) => Value::L2(p.pow(n)),
                Value::Rqm(r) => Value::Rqm(r.pow(n)),
            });
        }
        // Negative powers: only monomials c P^p T^u with p = 0 are invertible here.
        if let Some(c) = self.as_constant() {
            if c == 0 {
                return Err(Error::Elaboration("division by zero".into()));
            }
            return Ok(Value::L1(QmPoly1::constant(Rational::from(c.recip_ref()))).pow(-n)?);
        }
        let r = self.into_rqm();
        let mut groups = r.groups();
        if let (Some(((0, u), base)), None) = (groups.next(), groups.next()) {
            if let Some(c) = base.as_constant() {
                let inv = RqmElem::pt(r.level(), 0, -u, Rational::from(c.recip_ref()));
                return Ok(Value::Rqm(inv.pow((-n) as u32)));
            }
        }
        Err(Error::Elaboration("negative powers need a constant or a pure power of T".into()))
    }

    /// q-expansion; only for values without `P` and `T`.
    pub fn to_qexp(&self, prec: i64) -> Result<QSeries> {
        match self {
            Value::L1(p) => p.to_qexp(prec),
            Value::L2(p) => p.to_qexp(prec),
            Value::Rqm(r) => match r.as_base() {
                Some(b) => match r.level() {
                    Level::One => QmPoly1(b).to_qexp(prec),
                    Level::Two => QmPoly2(b).to_qexp(prec),
                },
                None => Err(Error::RingMismatch("q-expansion of an element involving P or T".into())),
            },
        }
    }

    /// Value at `z = it`.
    pub fn eval(&self, t: &Real, prec: i64, tol: f64) -> Result<RqmEvaluation> {
        self.into_rqm().eval_auto(t, prec, tol)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::L1(p) => write!(f, "{p}"),
            Value::L2(p) => write!(f, "{p}"),
            Value::Rqm(r) => write!(f, "{r}"),
        }
    }
}

fn slash(v: &Value) -> Result<Value> {
    let r = match v {
        Value::L1(p) => RqmElem::slash_s(Level::One, &p.0)?,
        Value::L2(p) => RqmElem::slash_s(Level::Two, &p.0)?,
        Value::Rqm(r) => match r.as_base() {
            Some(b) => RqmElem::slash_s(r.level(), &b)?,
            None => return Err(Error::Elaboration("slashS applies to elements without P and T; use flip".into())),
        },
    };
    Ok(Value::Rqm(r))
}

/// Elaborates an expression into its canonical ring element.
pub fn elaborate(e: &Expr) -> Result<Value> {
    Ok(match e {
        Expr::Gen(g) => match g {
            Gen::E2 => Value::L1(QmPoly1::e2()),
            Gen::E4 => Value::L1(QmPoly1::e4()),
            Gen::E6 => Value::L1(QmPoly1::e6()),
            Gen::Delta => Value::L1(QmPoly1::delta()),
            Gen::H2 => Value::L2(QmPoly2::h2()),
            Gen::H3 => Value::L2(QmPoly2::h3()),
            Gen::H4 => Value::L2(QmPoly2::h4()),
            Gen::P => Value::Rqm(RqmElem::pt(Level::One, 1, 0, Rational::from(1))),
            Gen::T => Value::Rqm(RqmElem::pt(Level::One, 0, 1, Rational::from(1))),
        },
        Expr::X(w, s) => Value::L1(extremal(*w, *s)?.poly.clone()),
        Expr::Int(n) => Value::L1(QmPoly1(Poly::constant(Rational::from(n)))),
        Expr::D(a) => elaborate(a)?.derivative(),
        Expr::Serre(k, a) => elaborate(a)?.serre(*k),
        Expr::SlashS(a) => slash(&elaborate(a)?)?,
        Expr::Flip(a) => Value::Rqm(elaborate(a)?.into_rqm().flip()?),
        Expr::Neg(a) => elaborate(a)?.scale(&Rational::from(-1)),
        Expr::Add(a, b) => elaborate(a)?.add(&elaborate(b)?),
        Expr::Sub(a, b) => elaborate(a)?.sub(&elaborate(b)?),
        Expr::Mul(a, b) => elaborate(a)?.mul(&elaborate(b)?),
        Expr::Div(a, b) => {
            let d = elaborate(b)?
                .as_constant()
                .ok_or_else(|| Error::Elaboration("division only by rational constants".into()))?;
            if d == 0 {
                return Err(Error::Elaboration("division by zero".into()));
            }
            elaborate(a)?.scale(&Rational::from(d.recip_ref()))
        }
        Expr::Pow(a, n) => elaborate(a)?.pow(*n)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::rat;

    fn ev(s: &str) -> Value {
        elaborate(&parse_expr(s).unwrap()).unwrap()
    }

    #[test]
    fn derivative_of_e2() {
        assert_eq!(ev("D(E2)"), ev("(E2^2 - E4)/12"));
    }

    #[test]
    fn h3_and_delta_normalize() {
        assert_eq!(ev("H3"), ev("H2 + H4"));
        assert!(ev("Delta - (E4^3 - E6^2)/1728").is_zero());
        assert!(ev("Delta - H2^2*H3^2*H4^2/256").is_zero());
    }

    #[test]
    fn promotion_to_extension_ring() {
        let v = ev("slashS(E2) - E2 + 6*P*T");
        assert!(v.is_zero());
        assert!(ev("T^(-2)*T^2 - 1").is_zero());
    }

    #[test]
    fn elaboration_errors() {
        assert!(elaborate(&parse_expr("E2/E4").unwrap()).is_err());
        assert!(elaborate(&parse_expr("E2/0").unwrap()).is_err());
        assert!(elaborate(&parse_expr("E4^(-1)").unwrap()).is_err());
        assert!(elaborate(&parse_expr("slashS(P*E4)").unwrap()).is_err());
        assert!(elaborate(&parse_expr("X(6,2)").unwrap()).is_err());
    }

    #[test]
    fn deterministic() {
        let a = ev("S[10](X(6,1)^2)");
        let b = ev("S[10](X(6,1)^2)");
        assert_eq!(a.to_string(), b.to_string());
        assert_eq!(ev("3/6"), Value::L1(QmPoly1::constant(rat(1, 2))));
    }
}
