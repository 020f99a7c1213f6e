use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::coefficients::Scalar;
use crate::combinatorics::{Composition, Permutation, SymmetricGroup};

type Product = Arc<[(u32, Scalar)]>;

/// `T_w · T_v` in `H_m`, cached across the process.
fn basis_product(m: usize, w: usize, v: usize) -> Product {
    static CACHE: OnceLock<RwLock<HashMap<(usize, u32, u32), Product>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (m, w as u32, v as u32);
    if let Some(p) = cache.read().expect("hecke cache poisoned").get(&key) {
        return p.clone();
    }
    let sm = SymmetricGroup::get(m);
    let mut acc: Vec<(usize, Scalar)> = vec![(w, Scalar::one())];
    for &i in sm.reduced_word(v) {
        let mut next: Vec<(usize, Scalar)> = Vec::with_capacity(acc.len() * 2);
        let mut push = |u: usize, c: Scalar| match next.iter_mut().find(|(x, _)| *x == u) {
            Some(slot) => slot.1 = slot.1.add_ref(&c),
            None => next.push((u, c)),
        };
        for (u, c) in acc {
            // T_u T_i = T_{uπ_i} + [descent] (q − q⁻¹) T_u
            if sm.has_right_descent(u, i) {
                push(u, c.mul_ref(&Scalar::q_minus_q_inv()));
            }
            push(sm.right_mul_simple(u, i), c);
        }
        next.retain(|(_, c)| !c.is_zero());
        acc = next;
    }
    let product: Product = acc.into_iter().map(|(u, c)| (u as u32, c)).collect();
    cache
        .write()
        .expect("hecke cache poisoned")
        .entry(key)
        .or_insert(product)
        .clone()
}

/// Element of the Iwahori–Hecke algebra `H_m` in the basis `{T_w}`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement {
    m: usize,
    terms: BTreeMap<u32, Scalar>,
}

impl HeckeElement {
    pub fn zero(m: usize) -> Self {
        HeckeElement {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(m: usize) -> Self {
        Self::basis(m, &Permutation::identity(m))
    }

    pub fn basis(m: usize, w: &Permutation) -> Self {
        assert_eq!(w.degree(), m, "permutation degree must equal m");
        let mut terms = BTreeMap::new();
        terms.insert(w.lex_index() as u32, Scalar::one());
        HeckeElement { m, terms }
    }

    /// `T_i`, `1 ≤ i < m`.
    pub fn t(m: usize, i: usize) -> Self {
        Self::basis(m, &Permutation::simple(m, i))
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.terms.iter().map(|(&w, c)| (w as usize, c))
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "Hecke algebras of different rank");
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let e = terms.entry(*k).or_insert_with(Scalar::zero);
            *e = e.add_ref(c);
        }
        terms.retain(|_, c| !c.is_zero());
        HeckeElement { m: self.m, terms }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut terms = BTreeMap::new();
        for (k, x) in &self.terms {
            let y = x.mul_ref(c);
            if !y.is_zero() {
                terms.insert(*k, y);
            }
        }
        HeckeElement { m: self.m, terms }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "Hecke algebras of different rank");
        let mut terms: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (w, a) in &self.terms {
            for (v, b) in &other.terms {
                let ab = a.mul_ref(b);
                for (u, c) in basis_product(self.m, *w as usize, *v as usize).iter() {
                    let e = terms.entry(*u).or_insert_with(Scalar::zero);
                    *e = e.add_ref(&ab.mul_ref(c));
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        HeckeElement { m: self.m, terms }
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sm = SymmetricGroup::get(self.m);
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({})*T{}", c, sm.element(*w as usize)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}[{}]", self.m, self)
    }
}

/// `H^μ = H_{μ_1} ⊗ ⋯ ⊗ H_{μ_d}` in the basis `T_{w_1} ⊗ ⋯ ⊗ T_{w_d}`;
/// factors with `μ_a ≤ 1` are the scalars.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    mu: Arc<Composition>,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl TensorElement {
    pub fn zero(mu: &Arc<Composition>) -> Self {
        TensorElement {
            mu: mu.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(mu: &Arc<Composition>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; mu.d()], Scalar::one());
        TensorElement {
            mu: mu.clone(),
            terms,
        }
    }

    /// `1 ⊗ ⋯ ⊗ T_k ⊗ ⋯ ⊗ 1` with `T_k` in factor `a` (1-based).
    pub fn t_factor(mu: &Arc<Composition>, a: usize, k: usize) -> Self {
        let m = mu.parts()[a - 1];
        let mut key = vec![0; mu.d()];
        key[a - 1] = Permutation::simple(m, k).lex_index() as u32;
        let mut terms = BTreeMap::new();
        terms.insert(key, Scalar::one());
        TensorElement {
            mu: mu.clone(),
            terms,
        }
    }

    pub fn composition(&self) -> &Composition {
        &self.mu
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Π_a μ_a!`.
    pub fn dimension(mu: &Composition) -> usize {
        mu.parts()
            .iter()
            .map(|&m| (1..=m).product::<usize>())
            .product()
    }

    /// Mixed-radix position of a basis key, first factor most significant.
    pub fn flat_index(mu: &Composition, key: &[u32]) -> usize {
        mu.parts().iter().zip(key).fold(0, |acc, (&m, &w)| {
            acc * (1..=m).product::<usize>() + w as usize
        })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Scalar)> + '_ {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let e = terms.entry(k.clone()).or_insert_with(Scalar::zero);
            *e = e.add_ref(c);
        }
        terms.retain(|_, c| !c.is_zero());
        TensorElement {
            mu: self.mu.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut terms = BTreeMap::new();
        for (k, x) in &self.terms {
            let y = x.mul_ref(c);
            if !y.is_zero() {
                terms.insert(k.clone(), y);
            }
        }
        TensorElement {
            mu: self.mu.clone(),
            terms,
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        debug_assert_eq!(self.mu, other.mu);
        let mut terms: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
        for (ka, a) in &self.terms {
            for (kb, b) in &other.terms {
                // componentwise products, expanded over the Cartesian product
                let mut partial: Vec<(Vec<u32>, Scalar)> = vec![(Vec::new(), a.mul_ref(b))];
                for (f, &m) in self.mu.parts().iter().enumerate() {
                    let prod = basis_product(m, ka[f] as usize, kb[f] as usize);
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (key, c) in &partial {
                        for (u, s) in prod.iter() {
                            let mut k = key.clone();
                            k.push(*u);
                            next.push((k, c.mul_ref(s)));
                        }
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    let e = terms.entry(k).or_insert_with(Scalar::zero);
                    *e = e.add_ref(&c);
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TensorElement {
            mu: self.mu.clone(),
            terms,
        }
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{}{:?}", self.mu, self.terms)
    }
}
