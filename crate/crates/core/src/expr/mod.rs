//! Expression mini-language for quasimodular forms.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' exp)?        exp := int | '-' int | '(' '-'? int ')'
//! atom  := int | generator | 'X(' int ',' int ')' | 'D(' expr ')'
//!        | 'S[' '-'? int '](' expr ')' | 'slashS(' expr ')' | 'flip(' expr ')'
//!        | '(' expr ')'
//! ```
//!
//! Generators are `E2 E4 E6 H2 H3 H4 Delta P T`, where `P = 1/pi` and `T = i/z`.

use std::fmt;

use crate::Integer;

mod elab;
mod parse;

pub use elab::{elaborate, Value};
pub use parse::parse_expr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    E2,
    E4,
    E6,
    H2,
    H3,
    H4,
    Delta,
    P,
    T,
}

impl Gen {
    pub const ALL: [Gen; 9] = [Gen::E2, Gen::E4, Gen::E6, Gen::H2, Gen::H3, Gen::H4, Gen::Delta, Gen::P, Gen::T];

    pub fn name(self) -> &'static str {
        match self {
            Gen::E2 => "E2",
            Gen::E4 => "E4",
            Gen::E6 => "E6",
            Gen::H2 => "H2",
            Gen::H3 => "H3",
            Gen::H4 => "H4",
            Gen::Delta => "Delta",
            Gen::P => "P",
            Gen::T => "T",
        }
    }

    pub fn from_name(s: &str) -> Option<Gen> {
        Self::ALL.into_iter().find(|g| g.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Gen(Gen),
    /// Extremal form `X_{w,s}`.
    X(i64, i64),
    /// Nonnegative integer literal; negative numbers parse as `Neg`.
    Int(Integer),
    D(Box<Expr>),
    /// Serre derivative of the given weight.
    Serre(i64, Box<Expr>),
    SlashS(Box<Expr>),
    Flip(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.prec() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

fn binary(f: &mut fmt::Formatter<'_>, op: &str, p: u8, a: &Expr, b: &Expr) -> fmt::Result {
    child(f, a, p)?;
    f.write_str(op)?;
    child(f, b, p + 1)
}

impl fmt::Display for Expr {
    /// Prints with the minimal parentheses that parse back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Gen(g) => f.write_str(g.name()),
            Expr::X(w, s) => write!(f, "X({w},{s})"),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::D(e) => write!(f, "D({e})"),
            Expr::Serre(k, e) => write!(f, "S[{k}]({e})"),
            Expr::SlashS(e) => write!(f, "slashS({e})"),
            Expr::Flip(e) => write!(f, "flip({e})"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                child(f, e, 3)
            }
            Expr::Add(a, b) => binary(f, " + ", 1, a, b),
            Expr::Sub(a, b) => binary(f, " - ", 1, a, b),
            Expr::Mul(a, b) => binary(f, "*", 2, a, b),
            Expr::Div(a, b) => binary(f, "/", 2, a, b),
            Expr::Pow(a, n) => {
                child(f, a, 5)?;
                if *n < 0 {
                    write!(f, "^({n})")
                } else {
                    write!(f, "^{n}")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            prop::sample::select(Gen::ALL.to_vec()).prop_map(Expr::Gen),
            (0u32..1000).prop_map(|n| Expr::Int(Integer::from(n))),
            (prop::sample::select(vec![4i64, 6, 8, 12]), 1i64..3).prop_map(|(w, s)| Expr::X(w, s)),
        ];
        leaf.prop_recursive(4, 32, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|e| Expr::D(Box::new(e))),
                (-20i64..20, inner.clone()).prop_map(|(k, e)| Expr::Serre(k, Box::new(e))),
                inner.clone().prop_map(|e| Expr::SlashS(Box::new(e))),
                inner.clone().prop_map(|e| Expr::Flip(Box::new(e))),
                inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
                (inner, -5i64..6).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(parse_expr(&text).unwrap(), e, "text: {}", text);
        }
    }

    #[test]
    fn printing_keeps_needed_parentheses() {
        let e = parse_expr("E2*(E4 - E6)").unwrap();
        assert_eq!(e.to_string(), "E2*(E4 - E6)");
        assert_eq!(parse_expr("(-E2)^2").unwrap().to_string(), "(-E2)^2");
        assert_eq!(parse_expr("a - (b - c)".replace(['a', 'b', 'c'], "E4").as_str()).unwrap().to_string(), "E4 - (E4 - E4)");
    }
}
