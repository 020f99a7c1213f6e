use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Rational};
use super::poly;
use super::CoefficientError;

/// Laurent polynomial in `q` with coefficients in a field.
///
/// Terms are kept sorted by exponent with no zero coefficients, so equality
/// is structural.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly<C> {
    terms: Vec<(i32, C)>,
}

impl<C: Field> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: C, exp: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly {
                terms: vec![(exp, c)],
            }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(C::from_int(n))
    }

    pub fn q() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn q_inv() -> Self {
        Self::monomial(C::one(), -1)
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        Self::monomial(C::one(), k)
    }

    /// The recurring scalar `q - q^-1`.
    pub fn q_minus_q_inv() -> Self {
        LaurentPoly {
            terms: vec![(-1, C::one().neg_ref()), (1, C::one())],
        }
    }

    /// Build from arbitrary `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms(pairs: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut v: Vec<(i32, C)> = pairs.into_iter().collect();
        v.sort_by_key(|(e, _)| *e);
        let mut terms: Vec<(i32, C)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match terms.last_mut() {
                Some((le, lc)) if *le == e => *lc = lc.add_ref(&c),
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> &[(i32, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// The constant value, if the polynomial has no `q` dependence.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// `(coefficient, exponent)` if this is a single term.
    pub fn as_monomial(&self) -> Option<(&C, i32)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((c, *e)),
            _ => None,
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn coeff(&self, exp: i32) -> C {
        self.terms
            .binary_search_by_key(&exp, |(e, _)| *e)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1.add_ref(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPoly { terms: out }
    }

    pub fn neg_ref(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg_ref())).collect(),
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some((c, e)) = other.as_monomial() {
            return self.mul_monomial(c, e);
        }
        if let Some((c, e)) = self.as_monomial() {
            return other.mul_monomial(c, e);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let mut dense = vec![C::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let k = (ea + eb - lo) as usize;
                dense[k] = dense[k].add_ref(&ca.mul_ref(cb));
            }
        }
        Self::from_dense(lo, dense)
    }

    fn mul_monomial(&self, c: &C, e: i32) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(ea, ca)| (ea + e, ca.mul_ref(c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_monomial(c, 0)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; only monomials are units.
    pub fn inv(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        Some(Self::monomial(c.inv()?, -e))
    }

    /// Value at `q = x`.
    pub fn eval(&self, x: &C) -> Result<C, CoefficientError> {
        if x.is_zero() {
            return Err(CoefficientError::ZeroEvaluationPoint);
        }
        let x_inv = x.inv().expect("nonzero point is invertible");
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let base = if *e < 0 { &x_inv } else { x };
            let mut p = C::one();
            for _ in 0..e.unsigned_abs() {
                p = p.mul_ref(base);
            }
            acc = acc.add_ref(&c.mul_ref(&p));
        }
        Ok(acc)
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Dense coefficients from the lowest exponent upward, with that exponent.
    pub fn to_dense(&self) -> (i32, Vec<C>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut v = vec![C::zero(); (hi - lo + 1) as usize];
                for (e, c) in &self.terms {
                    v[(e - lo) as usize] = c.clone();
                }
                (lo, v)
            }
            _ => (0, Vec::new()),
        }
    }

    pub fn from_dense(lo: i32, dense: Vec<C>) -> Self {
        LaurentPoly {
            terms: dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (lo + k as i32, c))
                .collect(),
        }
    }

    /// Monic polynomial part of the gcd with `other`, ignoring powers of `q`
    /// (which are units). Zero only when both inputs vanish.
    pub fn gcd(&self, other: &Self) -> Self {
        let (_, a) = self.to_dense();
        let (_, b) = other.to_dense();
        Self::from_dense(0, poly::gcd(&a, &b))
    }

    /// Exact quotient, if `other` divides `self` in the Laurent ring.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (la, a) = self.to_dense();
        let (lb, b) = other.to_dense();
        let (quot, rem) = poly::divrem(&a, &b);
        if !rem.is_empty() {
            return None;
        }
        Some(Self::from_dense(la - lb, quot))
    }

    pub fn to_rational(&self) -> Option<LaurentPoly<Rational>> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            out.push((*e, c.to_rational()?));
        }
        Some(LaurentPoly { terms: out })
    }
}

impl<C: Field> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: i32) -> fmt::Result {
    match e {
        1 => write!(f, "q"),
        _ => write!(f, "q^{}", e),
    }
}

impl<C: Field> fmt::Display for LaurentPoly<C> {
    /// Signed monomial list from the highest power down, e.g. `q^2 - 2 + q^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let r = c.to_rational();
            let negative = r
                .as_ref()
                .is_some_and(|r| r < &Rational::from_integer(0.into()));
            let shown = if negative { c.neg_ref() } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let unit = shown.is_one();
            let atomic = shown
                .to_rational()
                .is_some_and(|r| super::field::rational_is_atomic(&r));
            match (*e, unit, atomic) {
                (0, _, true) => write!(f, "{}", shown)?,
                (0, _, false) => write!(f, "({})", shown)?,
                (_, true, _) => write_monomial(f, *e)?,
                (_, false, true) => {
                    write!(f, "{}*", shown)?;
                    write_monomial(f, *e)?;
                }
                (_, false, false) => {
                    write!(f, "({})*", shown)?;
                    write_monomial(f, *e)?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl<C: Field> $tr<&LaurentPoly<C>> for &LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
                self.$inner(rhs)
            }
        }
        impl<C: Field> $tr for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl<C: Field> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        self.neg_ref()
    }
}

impl<C: Field> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        self.neg_ref()
    }
}

/// Product of two Laurent polynomials.
pub fn lp_mul<C: Field>(a: &LaurentPoly<C>, b: &LaurentPoly<C>) -> LaurentPoly<C> {
    a.mul_ref(b)
}

/// Value of `a` at `q = x`; `x = 0` is rejected.
pub fn lp_eval<C: Field>(a: &LaurentPoly<C>, x: &C) -> Result<C, CoefficientError> {
    a.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::field::{rat, rat_int};

    type Lp = LaurentPoly<Rational>;

    #[test]
    fn difference_of_squares() {
        let a = Lp::q() - Lp::q_inv();
        let b = Lp::q() + Lp::q_inv();
        assert_eq!(lp_mul(&a, &b), Lp::q_pow(2) - Lp::q_pow(-2));
        assert_eq!(lp_mul(&a, &Lp::one()), a);
    }

    #[test]
    fn square_expansion_display() {
        let a = Lp::q_minus_q_inv();
        let sq = lp_mul(&a, &a);
        assert_eq!(sq, Lp::q_pow(2) - Lp::from_int(2) + Lp::q_pow(-2));
        assert_eq!(sq.to_string(), "q^2 - 2 + q^-2");
    }

    #[test]
    fn evaluation() {
        let a = Lp::q_minus_q_inv();
        assert_eq!(lp_eval(&a, &rat_int(1)).unwrap(), rat_int(0));
        let b = Lp::one() + a.mul_ref(&Lp::q());
        assert_eq!(lp_eval(&b, &rat_int(2)).unwrap(), rat_int(4));
        assert_eq!(lp_eval(&Lp::q_pow(2), &rat_int(-1)).unwrap(), rat_int(1));
        assert_eq!(
            lp_eval(&a, &rat_int(0)),
            Err(CoefficientError::ZeroEvaluationPoint)
        );
        assert_eq!(lp_eval(&Lp::q_inv(), &rat(2, 3)).unwrap(), rat(3, 2));
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = Lp::q_minus_q_inv();
        let b = Lp::q() + Lp::q_inv();
        let p = lp_mul(&a, &b);
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert!(Lp::q().add_ref(&Lp::one()).div_exact(&a).is_none());
        // gcd of q^2 - q^-2 and q - q^-1 is q^2 - 1 up to units
        assert_eq!(p.gcd(&a), Lp::q_pow(2) - Lp::one());
    }
}
