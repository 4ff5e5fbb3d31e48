//! Rational functions in t, used as the coefficient field when an ideal
//! of K[t,x] is viewed over K(t) (for dimension counts).

use super::unipoly::UniPoly;
use num_rational::BigRational;
use std::cmp::Ordering;

/// num/den with den monic and gcd(num, den) = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: UniPoly::one() };
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g);
        let den = den.div_exact(&g);
        let lead_inv = den.lead().recip();
        RatFunc { num: num.scale(&lead_inv), den: den.monic() }
    }

    pub fn zero() -> Self {
        RatFunc { num: UniPoly::zero(), den: UniPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: UniPoly::one(), den: UniPoly::one() }
    }

    pub fn from_rational(r: BigRational) -> Self {
        RatFunc { num: UniPoly::constant(r), den: UniPoly::one() }
    }

    /// t^e with e >= 0.
    pub fn t_pow(e: i64) -> Self {
        assert!(e >= 0);
        let mut coeffs = vec![BigRational::from_integer(0.into()); e as usize + 1];
        coeffs[e as usize] = BigRational::from_integer(1.into());
        RatFunc { num: UniPoly::new(coeffs), den: UniPoly::one() }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> RatFunc {
        assert!(!self.is_zero(), "inverse of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> RatFunc {
        self.mul(&other.inv())
    }

    pub fn canonical_cmp(&self, other: &RatFunc) -> Ordering {
        self.num
            .canonical_cmp(&other.num)
            .then_with(|| self.den.canonical_cmp(&other.den))
    }

    pub fn display(&self) -> String {
        if self.den.is_one() {
            self.num.display("t")
        } else {
            format!("({})/({})", self.num.display("t"), self.den.display("t"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalises() {
        // (2t^2 + 2t) / (4t) = (t + 1)/2
        let f = RatFunc::new(UniPoly::from_i64(&[0, 2, 2]), UniPoly::from_i64(&[0, 4]));
        assert_eq!(f.num(), &UniPoly::new(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 2.into()),
        ]));
        assert!(f.den().is_one());
    }

    #[test]
    fn field_identities() {
        let f = RatFunc::new(UniPoly::from_i64(&[1, 1]), UniPoly::from_i64(&[0, 0, 1]));
        assert!(f.mul(&f.inv()).is_one());
        assert!(f.sub(&f).is_zero());
        let g = RatFunc::t_pow(3);
        assert_eq!(f.add(&g).sub(&g), f);
    }
}
