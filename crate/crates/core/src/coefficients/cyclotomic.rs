use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Signed;

use super::field::{rat_int, rational_is_atomic, Field, Rational};
use super::poly;
use super::CoefficientError;

/// The field Q(ζ) for a primitive `order`-th root of unity ζ, realised as
/// Q[x] modulo the `order`-th cyclotomic polynomial.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u32,
    /// Monic cyclotomic polynomial, low degree first.
    modulus: Vec<Rational>,
}

impl CyclotomicField {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of the extension, Euler's φ of the order.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }
}

fn cyclotomic_polynomial(d: u32) -> Vec<Rational> {
    // x^d - 1 = prod_{k | d} Φ_k
    let mut p = vec![Rational::zero(); d as usize + 1];
    p[0] = -Rational::one();
    p[d as usize] = Rational::one();
    for k in 1..d {
        if d.is_multiple_of(k) {
            let (q, r) = poly::divrem(&p, &cyclotomic_polynomial(k));
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    p
}

/// Shared handle to Q(ζ_d); fields are built once per order.
pub fn cyclotomic_field(d: u32) -> Arc<CyclotomicField> {
    assert!(d >= 1, "root-of-unity order must be positive");
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.read().expect("field cache poisoned").get(&d) {
        return f.clone();
    }
    let field = Arc::new(CyclotomicField {
        order: d,
        modulus: cyclotomic_polynomial(d),
    });
    cache
        .write()
        .expect("field cache poisoned")
        .entry(d)
        .or_insert(field)
        .clone()
}

/// Element of a cyclotomic field.
///
/// Canonical form: trailing zero coordinates are dropped, and an element with
/// at most one coordinate (a rational) forgets its field. Rationals therefore
/// combine freely with elements of any Q(ζ_d), while two irrational elements
/// must come from the same field.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Option<Arc<CyclotomicField>>,
    coords: Vec<Rational>,
}

impl Cyclotomic {
    fn normalized(field: Option<Arc<CyclotomicField>>, mut coords: Vec<Rational>) -> Self {
        poly::trim(&mut coords);
        let field = if coords.len() <= 1 { None } else { field };
        Cyclotomic { field, coords }
    }

    pub fn rational(r: Rational) -> Self {
        Self::normalized(None, vec![r])
    }

    /// ζ_d^k where ζ_d = exp(2πi/d).
    pub fn zeta_pow(d: u32, k: i64) -> Self {
        let field = cyclotomic_field(d);
        let e = k.rem_euclid(d as i64) as usize;
        let mut x = vec![Rational::zero(); e + 1];
        x[e] = Rational::one();
        let (_, r) = poly::divrem(&x, &field.modulus);
        Self::normalized(Some(field), r)
    }

    pub fn zeta(d: u32) -> Self {
        Self::zeta_pow(d, 1)
    }

    /// Coordinates in the power basis 1, ζ, ζ², … (trailing zeros omitted).
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Order of the ambient root of unity, `None` for rationals.
    pub fn order(&self) -> Option<u32> {
        self.field.as_ref().map(|f| f.order)
    }

    fn join(&self, other: &Self) -> Result<Option<Arc<CyclotomicField>>, CoefficientError> {
        match (&self.field, &other.field) {
            (Some(a), Some(b)) if a.order != b.order => Err(CoefficientError::FieldMismatch {
                left: a.order,
                right: b.order,
            }),
            (Some(a), _) => Ok(Some(a.clone())),
            (None, b) => Ok(b.clone()),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CoefficientError> {
        let field = self.join(other)?;
        Ok(Self::normalized(
            field,
            poly::add(&self.coords, &other.coords),
        ))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CoefficientError> {
        let field = self.join(other)?;
        let prod = poly::mul(&self.coords, &other.coords);
        let reduced = match &field {
            Some(f) if prod.len() >= f.modulus.len() => reduce(prod, &f.modulus),
            _ => prod,
        };
        Ok(Self::normalized(field, reduced))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }
}

/// Reduce modulo a monic polynomial (in place on a dense coefficient vector).
fn reduce(mut p: Vec<Rational>, modulus: &[Rational]) -> Vec<Rational> {
    let m = modulus.len() - 1;
    for top in (m..p.len()).rev() {
        let c = std::mem::take(&mut p[top]);
        if c.is_zero() {
            continue;
        }
        for (j, mj) in modulus.iter().enumerate().take(m) {
            if !mj.is_zero() {
                p[top - m + j] -= &c * mj;
            }
        }
    }
    p.truncate(m);
    p
}

/// Product of two cyclotomic numbers built for the same order.
pub fn cyc_mul(a: &Cyclotomic, b: &Cyclotomic) -> Result<Cyclotomic, CoefficientError> {
    a.try_mul(b)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.order() == other.order()
    }
}

impl Eq for Cyclotomic {}

impl Field for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic {
            field: None,
            coords: Vec::new(),
        }
    }

    fn one() -> Self {
        Self::rational(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.try_add(other).expect("cyclotomic field mismatch")
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.try_mul(other).expect("cyclotomic field mismatch")
    }

    fn neg_ref(&self) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    fn inv(&self) -> Option<Self> {
        match &self.field {
            None => self
                .coords
                .first()
                .and_then(|c| c.inv())
                .map(Self::rational),
            Some(f) => {
                let s = poly::inverse_mod(&self.coords, &f.modulus)?;
                Some(Self::normalized(Some(f.clone()), s))
            }
        }
    }

    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }

    fn to_rational(&self) -> Option<Rational> {
        match self.coords.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coords[0].clone()),
            _ => None,
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{:?}]({})", self.order(), self)
    }
}

impl fmt::Display for Cyclotomic {
    /// Power-basis form in `z`, e.g. `1/2 - 3*z + z^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs == rat_int(1);
            match (k, unit) {
                (0, _) => write!(f, "{}", abs)?,
                (_, true) => {}
                (_, false) => {
                    if rational_is_atomic(&abs) {
                        write!(f, "{}*", abs)?
                    } else {
                        write!(f, "({})*", abs)?
                    }
                }
            }
            match k {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{}", k)?,
            }
        }
        Ok(())
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        <Self as Field>::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_squared_for_order_four() {
        let z = Cyclotomic::zeta(4);
        assert_eq!(z.mul_ref(&z), Cyclotomic::from_int(-1));
    }

    #[test]
    fn order_two_root_is_minus_one() {
        let z = Cyclotomic::zeta(2);
        assert_eq!(z, Cyclotomic::from_int(-1));
        assert_eq!(z.mul_ref(&z), Cyclotomic::one());
    }

    #[test]
    fn order_three_product() {
        let z = Cyclotomic::zeta(3);
        assert_eq!(z.mul_ref(&z.pow(2)), Cyclotomic::one());
    }

    #[test]
    fn primitive_roots_have_exact_order() {
        for d in 1..=8u32 {
            let z = Cyclotomic::zeta(d);
            assert_eq!(z.pow(d), Cyclotomic::one(), "d = {d}");
            for m in 1..d {
                assert_ne!(z.pow(m), Cyclotomic::one(), "d = {d}, m = {m}");
            }
        }
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let err = cyc_mul(&Cyclotomic::zeta(3), &Cyclotomic::zeta(5)).unwrap_err();
        assert_eq!(err, CoefficientError::FieldMismatch { left: 3, right: 5 });
        // rationals mix with anything
        assert!(cyc_mul(&Cyclotomic::from_int(2), &Cyclotomic::zeta(5)).is_ok());
    }

    #[test]
    fn inverse_roundtrip() {
        let z = Cyclotomic::zeta(5);
        let x = z.add_ref(&Cyclotomic::from_int(3)).mul_ref(&z.pow(3));
        let inv = x.inv().unwrap();
        assert_eq!(x.mul_ref(&inv), Cyclotomic::one());
    }

    #[test]
    fn display_power_basis() {
        let z = Cyclotomic::zeta(3);
        assert_eq!(z.to_string(), "z");
        assert_eq!(z.pow(2).to_string(), "-1 - z");
    }
}
