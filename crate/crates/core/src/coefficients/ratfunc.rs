use std::fmt;

use super::field::{Field, Rational};
use super::laurent::LaurentPoly;
use super::poly;

/// Rational function in `q` over the rationals, `num / den` in lowest terms
/// with a monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Vec<Rational>,
    den: Vec<Rational>,
}

impl RatFunc {
    fn normalized(num: Vec<Rational>, den: Vec<Rational>) -> Self {
        let mut num = num;
        let mut den = den;
        poly::trim(&mut num);
        poly::trim(&mut den);
        assert!(!den.is_empty(), "rational function with zero denominator");
        if num.is_empty() {
            return RatFunc {
                num,
                den: vec![Rational::one()],
            };
        }
        let g = poly::gcd(&num, &den);
        if g.len() > 1 {
            num = poly::divrem(&num, &g).0;
            den = poly::divrem(&den, &g).0;
        }
        let lead = den.last().unwrap().inv().unwrap();
        RatFunc {
            num: poly::scale(&num, &lead),
            den: poly::scale(&den, &lead),
        }
    }

    pub fn from_laurent(p: &LaurentPoly<Rational>) -> Self {
        let (lo, dense) = p.to_dense();
        if lo >= 0 {
            let mut num = vec![Rational::zero(); lo as usize];
            num.extend(dense);
            Self::normalized(num, vec![Rational::one()])
        } else {
            let mut den = vec![Rational::zero(); (-lo) as usize];
            den.push(Rational::one());
            Self::normalized(dense, den)
        }
    }

    pub fn q() -> Self {
        Self::from_laurent(&LaurentPoly::q())
    }

    pub fn numerator(&self) -> &[Rational] {
        &self.num
    }

    pub fn denominator(&self) -> &[Rational] {
        &self.den
    }

    pub fn div_ref(&self, other: &Self) -> Option<Self> {
        Some(self.mul_ref(&other.inv()?))
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: Vec::new(),
            den: vec![Rational::one()],
        }
    }

    fn one() -> Self {
        RatFunc {
            num: vec![Rational::one()],
            den: vec![Rational::one()],
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::normalized(poly::add(&self.num, &other.num), self.den.clone());
        }
        Self::normalized(
            poly::add(
                &poly::mul(&self.num, &other.den),
                &poly::mul(&other.num, &self.den),
            ),
            poly::mul(&self.den, &other.den),
        )
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::normalized(
            poly::mul(&self.num, &other.num),
            poly::mul(&self.den, &other.den),
        )
    }

    fn neg_ref(&self) -> Self {
        RatFunc {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }

    fn from_rational(r: &Rational) -> Self {
        Self::normalized(vec![r.clone()], vec![Rational::one()])
    }

    fn to_rational(&self) -> Option<Rational> {
        match (self.num.len(), self.den.len()) {
            (0, _) => Some(Rational::zero()),
            (1, 1) => Some(self.num[0].clone()),
            _ => None,
        }
    }
}

fn fmt_poly(f: &mut fmt::Formatter<'_>, p: &[Rational]) -> fmt::Result {
    let lp = LaurentPoly::from_dense(0, p.to_vec());
    write!(f, "{}", lp)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.len() == 1 {
            return fmt_poly(f, &self.num);
        }
        write!(f, "(")?;
        fmt_poly(f, &self.num)?;
        write!(f, ")/(")?;
        fmt_poly(f, &self.den)?;
        write!(f, ")")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_round_trip_and_cancellation() {
        let a = RatFunc::from_laurent(&LaurentPoly::q_minus_q_inv());
        let b = RatFunc::from_laurent(&(LaurentPoly::q() + LaurentPoly::q_inv()));
        let ab = a.mul_ref(&b);
        assert_eq!(
            ab,
            RatFunc::from_laurent(&(LaurentPoly::q_pow(2) - LaurentPoly::q_pow(-2)))
        );
        assert_eq!(ab.div_ref(&b).unwrap(), a);
        assert_eq!(a.mul_ref(&a.inv().unwrap()), RatFunc::one());
    }

    #[test]
    fn sums_of_fractions() {
        let q = RatFunc::q();
        let x = q.inv().unwrap().add_ref(&q);
        let expected = RatFunc::from_laurent(&(LaurentPoly::q() + LaurentPoly::q_inv()));
        assert_eq!(x, expected);
    }
}
