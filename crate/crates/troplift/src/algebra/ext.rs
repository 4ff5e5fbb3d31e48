//! A single simple extension Q[a]/<m>. One level only: algorithms that
//! would need a second adjunction report `ExtensionTower` instead of
//! stacking fields.

use super::factor::{factor_univariate, DEGREE_CAP};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::sync::Arc;

#[derive(Debug, PartialEq, Eq)]
pub struct ExtContext {
    minpoly: UniPoly,
}

impl ExtContext {
    /// The "no extension" context, m = a.
    pub fn trivial() -> Arc<Self> {
        Arc::new(ExtContext { minpoly: UniPoly::var() })
    }

    /// Adjoin a root of a monic irreducible polynomial of degree 2..=32.
    pub fn adjoin(minpoly: UniPoly) -> Result<Arc<Self>> {
        let deg = minpoly.degree().ok_or(Error::BadMinPoly)?;
        if deg < 2 || !minpoly.lead().is_one() {
            return Err(Error::BadMinPoly);
        }
        if deg > DEGREE_CAP {
            return Err(Error::DegreeCap(deg));
        }
        let (_, factors) = factor_univariate(&minpoly)?;
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(Error::BadMinPoly);
        }
        Ok(Arc::new(ExtContext { minpoly }))
    }

    pub fn minpoly(&self) -> &UniPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    pub fn is_trivial(&self) -> bool {
        self.degree() == 1
    }
}

/// A residue class modulo the minimal polynomial, degree < deg m.
#[derive(Clone, Debug)]
pub struct ExtElement {
    ctx: Arc<ExtContext>,
    rep: UniPoly,
}

impl PartialEq for ExtElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.minpoly == other.ctx.minpoly && self.rep == other.rep
    }
}
impl Eq for ExtElement {}

impl ExtElement {
    pub fn new(ctx: Arc<ExtContext>, rep: UniPoly) -> Self {
        let rep = rep.rem(ctx.minpoly());
        ExtElement { ctx, rep }
    }

    pub fn from_rational(ctx: Arc<ExtContext>, r: BigRational) -> Self {
        ExtElement::new(ctx, UniPoly::constant(r))
    }

    /// The adjoined root itself.
    pub fn generator(ctx: Arc<ExtContext>) -> Self {
        ExtElement::new(ctx, UniPoly::var())
    }

    pub fn ctx(&self) -> &Arc<ExtContext> {
        &self.ctx
    }

    pub fn rep(&self) -> &UniPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    /// Some(r) when the element lies in the prime field.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.rep.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(self.rep.coeff(0)),
            _ => None,
        }
    }

    fn check_same(&self, other: &ExtElement) {
        assert_eq!(
            self.ctx.minpoly, other.ctx.minpoly,
            "mixed extension contexts: caller bug"
        );
    }

    pub fn add(&self, other: &ExtElement) -> ExtElement {
        self.check_same(other);
        ExtElement::new(self.ctx.clone(), self.rep.add(&other.rep))
    }

    pub fn sub(&self, other: &ExtElement) -> ExtElement {
        self.check_same(other);
        ExtElement::new(self.ctx.clone(), self.rep.sub(&other.rep))
    }

    pub fn neg(&self) -> ExtElement {
        ExtElement::new(self.ctx.clone(), self.rep.neg())
    }

    pub fn mul(&self, other: &ExtElement) -> ExtElement {
        self.check_same(other);
        ExtElement::new(self.ctx.clone(), self.rep.mul(&other.rep))
    }

    pub fn inv(&self) -> ExtElement {
        assert!(!self.is_zero(), "inverse of zero");
        let (g, s, _) = self.rep.ext_gcd(self.ctx.minpoly());
        assert!(g.is_one(), "minimal polynomial not irreducible?");
        ExtElement::new(self.ctx.clone(), s)
    }

    pub fn div(&self, other: &ExtElement) -> ExtElement {
        self.mul(&other.inv())
    }

    /// Lexicographic on the coefficient vector padded to the extension
    /// degree, constant coefficient first.
    pub fn canonical_cmp(&self, other: &ExtElement) -> Ordering {
        self.check_same(other);
        let d = self.ctx.degree();
        for i in 0..d {
            match self.rep.coeff(i).cmp(&other.rep.coeff(i)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    pub fn display(&self, sym: &str) -> String {
        self.rep.display(sym)
    }
}
