use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::cyclotomic::Cyclotomic;
use super::field::Rational;
use super::laurent::LaurentPoly;

/// Exact scalar of the algebras: a Laurent polynomial in `q` whose
/// coefficients are rational, or lie in a cyclotomic field.
///
/// Values whose coefficients are all rational are always stored in the
/// `Rational` variant, so equality does not depend on how a value was built.
#[derive(Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(LaurentPoly<Rational>),
    Cyclotomic(LaurentPoly<Cyclotomic>),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(LaurentPoly::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::Rational(LaurentPoly::constant(r))
    }

    pub fn q() -> Self {
        Scalar::Rational(LaurentPoly::q())
    }

    pub fn q_pow(k: i32) -> Self {
        Scalar::Rational(LaurentPoly::q_pow(k))
    }

    pub fn q_minus_q_inv() -> Self {
        Scalar::Rational(LaurentPoly::q_minus_q_inv())
    }

    /// ζ_d^k as a constant scalar.
    pub fn zeta_pow(d: u32, k: i64) -> Self {
        Self::from_cyclotomic(LaurentPoly::constant(Cyclotomic::zeta_pow(d, k)))
    }

    pub fn from_cyclotomic(p: LaurentPoly<Cyclotomic>) -> Self {
        match p.to_rational() {
            Some(r) => Scalar::Rational(r),
            None => Scalar::Cyclotomic(p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(p) => p.is_zero(),
            Scalar::Cyclotomic(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(p) if p.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&LaurentPoly<Rational>> {
        match self {
            Scalar::Rational(p) => Some(p),
            Scalar::Cyclotomic(_) => None,
        }
    }

    /// The value as a constant rational, if it is one.
    pub fn as_rational_constant(&self) -> Option<Rational> {
        self.as_rational().and_then(|p| p.as_constant())
    }

    /// Lossless embedding into cyclotomic coefficients.
    pub fn to_cyclotomic(&self) -> LaurentPoly<Cyclotomic> {
        match self {
            Scalar::Rational(p) => p.map_coeffs(|c| Cyclotomic::rational(c.clone())),
            Scalar::Cyclotomic(p) => p.clone(),
        }
    }

    fn combine(
        &self,
        other: &Self,
        rat: impl Fn(&LaurentPoly<Rational>, &LaurentPoly<Rational>) -> LaurentPoly<Rational>,
        cyc: impl Fn(&LaurentPoly<Cyclotomic>, &LaurentPoly<Cyclotomic>) -> LaurentPoly<Cyclotomic>,
    ) -> Self {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(rat(a, b)),
            _ => Self::from_cyclotomic(cyc(&self.to_cyclotomic(), &other.to_cyclotomic())),
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.add_ref(b), |a, b| a.add_ref(b))
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.sub_ref(b), |a, b| a.sub_ref(b))
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.mul_ref(b), |a, b| a.mul_ref(b))
    }

    pub fn neg_ref(&self) -> Self {
        match self {
            Scalar::Rational(p) => Scalar::Rational(p.neg_ref()),
            Scalar::Cyclotomic(p) => Scalar::Cyclotomic(p.neg_ref()),
        }
    }

    /// Inverse in the Laurent ring: defined for nonzero monomials only.
    pub fn inv(&self) -> Option<Self> {
        match self {
            Scalar::Rational(p) => p.inv().map(Scalar::Rational),
            Scalar::Cyclotomic(p) => p.inv().map(Self::from_cyclotomic),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        match self {
            Scalar::Rational(p) => Scalar::Rational(p.pow(k)),
            Scalar::Cyclotomic(p) => Self::from_cyclotomic(p.pow(k)),
        }
    }

    /// Integer power; negative exponents need a unit.
    pub fn powi(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        Some(base.pow(k.unsigned_abs() as u32))
    }

    /// Specialize `q` to a nonzero rational.
    pub fn eval(&self, x: &Rational) -> Result<Cyclotomic, super::CoefficientError> {
        match self {
            Scalar::Rational(p) => p.eval(x).map(Cyclotomic::rational),
            Scalar::Cyclotomic(p) => p.eval(&Cyclotomic::rational(x.clone())),
        }
    }

    /// Number of stored `q`-monomials.
    pub fn term_count(&self) -> usize {
        match self {
            Scalar::Rational(p) => p.terms().len(),
            Scalar::Cyclotomic(p) => p.terms().len(),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<LaurentPoly<Rational>> for Scalar {
    fn from(p: LaurentPoly<Rational>) -> Self {
        Scalar::Rational(p)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(p) => write!(f, "{}", p),
            Scalar::Cyclotomic(p) => write!(f, "{}", p),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$inner(rhs)
            }
        }
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roots_demote() {
        assert!(Scalar::zeta_pow(2, 1).is_rational());
        assert_eq!(Scalar::zeta_pow(2, 1), Scalar::from_int(-1));
        assert!(!Scalar::zeta_pow(3, 1).is_rational());
        let z = Scalar::zeta_pow(3, 1);
        assert_eq!(z.pow(3), Scalar::one());
    }

    #[test]
    fn mixed_arithmetic() {
        let z = Scalar::zeta_pow(4, 1);
        let x = &(&z * &Scalar::q()) * &(&z * &Scalar::q_pow(-1));
        assert_eq!(x, Scalar::from_int(-1));
        assert_eq!(z.inv().unwrap(), Scalar::zeta_pow(4, 3));
        assert!((Scalar::q() + Scalar::one()).inv().is_none());
    }
}
