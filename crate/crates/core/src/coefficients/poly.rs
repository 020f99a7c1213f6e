//! Dense univariate polynomials over a field, stored low degree first.
//!
//! Only the handful of operations needed by cyclotomic inversion and
//! Laurent-polynomial gcds live here.

use super::field::Field;

pub(crate) fn trim<C: Field>(p: &mut Vec<C>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn degree<C: Field>(p: &[C]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn add<C: Field>(a: &[C], b: &[C]) -> Vec<C> {
    let n = a.len().max(b.len());
    let mut out: Vec<C> = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add_ref(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => C::zero(),
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn sub<C: Field>(a: &[C], b: &[C]) -> Vec<C> {
    let neg: Vec<C> = b.iter().map(|c| c.neg_ref()).collect();
    add(a, &neg)
}

pub(crate) fn mul<C: Field>(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
            }
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn scale<C: Field>(a: &[C], c: &C) -> Vec<C> {
    let mut out: Vec<C> = a.iter().map(|x| x.mul_ref(c)).collect();
    trim(&mut out);
    out
}

/// Euclidean division; panics on a zero divisor.
pub(crate) fn divrem<C: Field>(a: &[C], b: &[C]) -> (Vec<C>, Vec<C>) {
    let db = degree(b).expect("polynomial division by zero");
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    let mut rem: Vec<C> = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![C::zero(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = rem[dr].mul_ref(&lead_inv);
        let shift = dr - db;
        for (k, bk) in b.iter().enumerate().take(db + 1) {
            rem[shift + k] = rem[shift + k].sub_ref(&c.mul_ref(bk));
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn make_monic<C: Field>(p: &[C]) -> Vec<C> {
    match degree(p) {
        None => Vec::new(),
        Some(d) => {
            let inv = p[d].inv().expect("nonzero leading coefficient");
            scale(&p[..=d], &inv)
        }
    }
}

/// Monic greatest common divisor (empty when both inputs vanish).
pub(crate) fn gcd<C: Field>(a: &[C], b: &[C]) -> Vec<C> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(&x)
}

/// Inverse of `a` modulo `m` by extended Euclid, if `gcd(a, m) = 1`.
pub(crate) fn inverse_mod<C: Field>(a: &[C], m: &[C]) -> Option<Vec<C>> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (Vec<C>, Vec<C>) = (Vec::new(), vec![C::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the gcd; invertible iff it is a nonzero constant.
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = r0[0].inv()?;
    let (_, s) = divrem(&scale(&s0, &c), m);
    Some(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::field::{rat_int, Rational};

    fn p(cs: &[i64]) -> Vec<Rational> {
        cs.iter().map(|&c| rat_int(c)).collect()
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[1, 0, 3, 2]);
        let b = p(&[1, 1]);
        let (q, r) = divrem(&a, &b);
        assert_eq!(add(&mul(&q, &b), &r), a);
        assert!(degree(&r).is_none_or(|d| d < 1));
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x+1)(x-2) and (x+1)(x+3)
        let a = mul(&p(&[1, 1]), &p(&[-2, 1]));
        let b = mul(&p(&[1, 1]), &p(&[3, 1]));
        assert_eq!(gcd(&a, &b), p(&[1, 1]));
    }

    #[test]
    fn inverse_modulo_irreducible() {
        let m = p(&[1, 0, 1]); // x^2 + 1
        let a = p(&[1, 1]);
        let inv = inverse_mod(&a, &m).unwrap();
        let (_, r) = divrem(&mul(&a, &inv), &m);
        assert_eq!(r, p(&[1]));
        assert!(inverse_mod(&p(&[1, 0, 1]), &m).is_none());
    }
}
