//! Exact coefficient arithmetic: Q, a single simple extension Q[a]/<m>,
//! and Q(t). A runtime enum rather than a type parameter, because the
//! lifting algorithms adjoin extensions mid-computation and move ideals
//! between coefficient domains.

pub mod ext;
pub mod factor;
pub mod ratfunc;
pub mod unipoly;

pub use ext::{ExtContext, ExtElement};
pub use factor::factor_univariate;
pub use ratfunc::RatFunc;
pub use unipoly::UniPoly;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    Rat(BigRational),
    Ext(ExtElement),
    Fun(RatFunc),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Apply a field operation with promotion of rationals into whichever
/// richer domain the other operand lives in. Division by zero panics, as
/// does mixing Q[a]/<m> with Q(t); both are caller bugs here.
pub fn field_ops(a: &Coeff, b: &Coeff, op: FieldOp) -> Coeff {
    match op {
        FieldOp::Add => a.add(b),
        FieldOp::Sub => a.sub(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Div => a.div(b),
    }
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Coeff::Rat(BigRational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Coeff::Rat(BigRational::from_integer(n.into()))
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        Coeff::Rat(BigRational::new(p.into(), q.into()))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rat(r) => r.is_zero(),
            Coeff::Ext(e) => e.is_zero(),
            Coeff::Fun(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rat(r) => r.is_one(),
            Coeff::Ext(e) => e.is_one(),
            Coeff::Fun(f) => f.is_one(),
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Coeff::Rat(r) => Some(r.clone()),
            Coeff::Ext(e) => e.as_rational(),
            Coeff::Fun(_) => None,
        }
    }

    /// Lift a rational into the extension so both operands share a domain.
    fn promote(a: &Coeff, b: &Coeff) -> (Coeff, Coeff) {
        match (a, b) {
            (Coeff::Rat(r), Coeff::Ext(e)) => (
                Coeff::Ext(ExtElement::from_rational(e.ctx().clone(), r.clone())),
                b.clone(),
            ),
            (Coeff::Ext(e), Coeff::Rat(r)) => (
                a.clone(),
                Coeff::Ext(ExtElement::from_rational(e.ctx().clone(), r.clone())),
            ),
            (Coeff::Rat(r), Coeff::Fun(_)) => (Coeff::Fun(RatFunc::from_rational(r.clone())), b.clone()),
            (Coeff::Fun(_), Coeff::Rat(r)) => (a.clone(), Coeff::Fun(RatFunc::from_rational(r.clone()))),
            _ => (a.clone(), b.clone()),
        }
    }

    fn binop(
        &self,
        other: &Coeff,
        rat: fn(&BigRational, &BigRational) -> BigRational,
        ext: fn(&ExtElement, &ExtElement) -> ExtElement,
        fun: fn(&RatFunc, &RatFunc) -> RatFunc,
    ) -> Coeff {
        let (a, b) = Coeff::promote(self, other);
        match (&a, &b) {
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(rat(x, y)),
            (Coeff::Ext(x), Coeff::Ext(y)) => Coeff::Ext(ext(x, y)),
            (Coeff::Fun(x), Coeff::Fun(y)) => Coeff::Fun(fun(x, y)),
            _ => panic!("mixed coefficient domains: caller bug"),
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        self.binop(other, |a, b| a + b, ExtElement::add, RatFunc::add)
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.binop(other, |a, b| a - b, ExtElement::sub, RatFunc::sub)
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        self.binop(other, |a, b| a * b, ExtElement::mul, RatFunc::mul)
    }

    pub fn div(&self, other: &Coeff) -> Coeff {
        assert!(!other.is_zero(), "division by zero");
        self.binop(other, |a, b| a / b, ExtElement::div, RatFunc::div)
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Rat(r) => Coeff::Rat(-r.clone()),
            Coeff::Ext(e) => Coeff::Ext(e.neg()),
            Coeff::Fun(f) => Coeff::Fun(f.neg()),
        }
    }

    pub fn inv(&self) -> Coeff {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Coeff::Rat(r) => Coeff::Rat(r.recip()),
            Coeff::Ext(e) => Coeff::Ext(e.inv()),
            Coeff::Fun(f) => Coeff::Fun(f.inv()),
        }
    }

    /// A deterministic total order inside one domain: rationals by value,
    /// extension elements lexicographically by padded coefficient vector.
    /// A rational compared against an extension element is viewed inside
    /// the extension first.
    pub fn canonical_cmp(&self, other: &Coeff) -> Ordering {
        let (a, b) = Coeff::promote(self, other);
        match (&a, &b) {
            (Coeff::Rat(x), Coeff::Rat(y)) => x.cmp(y),
            (Coeff::Ext(x), Coeff::Ext(y)) => x.canonical_cmp(y),
            (Coeff::Fun(x), Coeff::Fun(y)) => x.canonical_cmp(y),
            _ => panic!("mixed coefficient domains: caller bug"),
        }
    }

    /// Promote into the given extension when nontrivial.
    pub fn into_ext(self, ctx: &Arc<ExtContext>) -> Coeff {
        match self {
            Coeff::Rat(r) if !ctx.is_trivial() => {
                Coeff::Ext(ExtElement::from_rational(ctx.clone(), r))
            }
            other => other,
        }
    }
}

pub fn canonical_less(a: &Coeff, b: &Coeff) -> bool {
    a.canonical_cmp(b) == Ordering::Less
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rat(r) => write!(f, "{}", r),
            Coeff::Ext(e) => write!(f, "{}", e.display("a")),
            Coeff::Fun(r) => write!(f, "{}", r.display()),
        }
    }
}

/// True when printing this coefficient needs parentheses in a product.
pub fn needs_parens(c: &Coeff) -> bool {
    let s = c.to_string();
    s.contains(' ') || s.contains('+') || (s.matches('-').count() > 0 && !s.starts_with('-'))
}

/// Is the (promoted) value negative, for sign-aware printing. Extension
/// elements and rational functions are treated as non-negative.
pub fn display_negative(c: &Coeff) -> bool {
    matches!(c, Coeff::Rat(r) if r.is_negative())
}
