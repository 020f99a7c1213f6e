use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use super::AlgebraError;
use crate::coefficients::Scalar;
use crate::combinatorics::{enumerate_ordered, OrderedPartition, Permutation, SymmetricGroup};

/// Which scalars an algebra admits: rational Laurent polynomials only, or
/// cyclotomic ones as well (needed for the `t_j`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Rational,
    Cyclotomic,
}

/// Largest basis size a context accepts.
pub const MAX_BASIS_SIZE: usize = 1 << 24;

/// `E_I g_w · g_v`, as pairs `(w', c)` meaning `c · E_I g_{w'}`.
pub(crate) type Product = Arc<[(u32, Scalar)]>;

/// The algebra `Y(d,n)`: parameters, index tables and the structure-constant
/// cache. Immutable apart from the cache; shared behind an `Arc`.
pub struct AlgebraContext {
    d: usize,
    n: usize,
    mode: ScalarMode,
    sn: Arc<SymmetricGroup>,
    parts: Vec<OrderedPartition>,
    /// `simple_image[i-1][I]` is the index of `π_i(I)`.
    simple_image: Vec<Vec<u32>>,
    /// `same_pos[I]` has bit `(a-1)*n + (b-1)` set when `pos_a(I) = pos_b(I)`.
    same_pos: Vec<u64>,
    cache: RwLock<HashMap<(u32, u32, u32), Product>>,
}

impl AlgebraContext {
    pub fn new(d: usize, n: usize, mode: ScalarMode) -> Result<Arc<Self>, AlgebraError> {
        if d == 0 || n == 0 {
            return Err(AlgebraError::InvalidParameters(format!("d = {d}, n = {n}")));
        }
        let size = (d as u128)
            .checked_pow(n as u32)
            .map(|x| x * (1..=n as u128).product::<u128>());
        if n > 8 || size.is_none_or(|s| s > MAX_BASIS_SIZE as u128) {
            return Err(AlgebraError::InvalidParameters(format!(
                "basis of Y({d},{n}) exceeds {MAX_BASIS_SIZE} elements"
            )));
        }
        let sn = SymmetricGroup::get(n);
        let parts = enumerate_ordered(d, n);
        let simple_image = (1..n)
            .map(|i| {
                let pi = Permutation::simple(n, i);
                parts.iter().map(|p| p.act_sn(&pi).index() as u32).collect()
            })
            .collect();
        let same_pos = parts
            .iter()
            .map(|p| {
                let mut bits = 0u64;
                for a in 1..=n {
                    for b in 1..=n {
                        if p.pos(a) == p.pos(b) {
                            bits |= 1 << ((a - 1) * n + (b - 1));
                        }
                    }
                }
                bits
            })
            .collect();
        Ok(Arc::new(AlgebraContext {
            d,
            n,
            mode,
            sn,
            parts,
            simple_image,
            same_pos,
            cache: RwLock::new(HashMap::new()),
        }))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    /// `d^n · n!`.
    pub fn dimension(&self) -> usize {
        self.parts.len() * self.sn.order()
    }

    pub fn symmetric_group(&self) -> &SymmetricGroup {
        &self.sn
    }

    pub fn ordered_partitions(&self) -> &[OrderedPartition] {
        &self.parts
    }

    pub fn partition(&self, idx: usize) -> &OrderedPartition {
        &self.parts[idx]
    }

    pub fn permutation(&self, idx: usize) -> &Permutation {
        self.sn.element(idx)
    }

    /// Row-major position of `E_I g_w` in the basis: `I` major, `w` minor.
    pub fn basis_index(&self, i: usize, w: usize) -> usize {
        i * self.sn.order() + w
    }

    pub(crate) fn simple_image(&self, i: usize, part: usize) -> usize {
        self.simple_image[i - 1][part] as usize
    }

    /// `w(I)` by index.
    pub(crate) fn act_sn_index(&self, w: usize, part: usize) -> usize {
        self.sn
            .reduced_word(w)
            .iter()
            .rev()
            .fold(part, |acc, &i| self.simple_image(i, acc))
    }

    pub(crate) fn same_pos(&self, part: usize, a: usize, b: usize) -> bool {
        self.same_pos[part] >> ((a - 1) * self.n + (b - 1)) & 1 == 1
    }

    pub(crate) fn compatible(&self, other: &Self) -> bool {
        self.d == other.d && self.n == other.n && self.mode == other.mode
    }

    pub(crate) fn check_index(&self, what: &str, i: usize, hi: usize) -> Result<(), AlgebraError> {
        if i == 0 || i > hi {
            Err(AlgebraError::IndexOutOfRange {
                what: what.to_string(),
                index: i,
                max: hi,
            })
        } else {
            Ok(())
        }
    }

    /// `E_I g_w · g_v` expanded in `{E_I g_u}`, cached.
    pub(crate) fn right_product(&self, part: usize, w: usize, v: usize) -> Product {
        let key = (part as u32, w as u32, v as u32);
        if let Some(p) = self.cache.read().expect("product cache poisoned").get(&key) {
            return p.clone();
        }
        let mut acc: Vec<(usize, Scalar)> = vec![(w, Scalar::one())];
        for &i in self.sn.reduced_word(v) {
            acc = self.right_mul_generator(part, acc, i);
        }
        let product: Product = acc.into_iter().map(|(u, c)| (u as u32, c)).collect();
        self.cache
            .write()
            .expect("product cache poisoned")
            .entry(key)
            .or_insert(product)
            .clone()
    }

    /// Right multiplication of `Σ c_u E_I g_u` by `g_i`:
    /// no descent at `i` gives `E_I g_{uπ_i}`; a descent adds
    /// `(q − q⁻¹) [pos_{u(i)} = pos_{u(i+1)}] E_I g_u`.
    pub(crate) fn right_mul_generator(
        &self,
        part: usize,
        terms: Vec<(usize, Scalar)>,
        i: usize,
    ) -> Vec<(usize, Scalar)> {
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(terms.len() * 2);
        let push = |out: &mut Vec<(usize, Scalar)>, u: usize, c: Scalar| {
            if let Some(slot) = out.iter_mut().find(|(x, _)| *x == u) {
                slot.1 = slot.1.add_ref(&c);
            } else {
                out.push((u, c));
            }
        };
        for (u, c) in terms {
            let next = self.sn.right_mul_simple(u, i);
            let perm = self.sn.element(u);
            if perm.has_right_descent(i) && self.same_pos(part, perm.apply(i), perm.apply(i + 1)) {
                push(&mut out, u, c.mul_ref(&Scalar::q_minus_q_inv()));
            }
            push(&mut out, next, c);
        }
        out.retain(|(_, c)| !c.is_zero());
        out.sort_by_key(|(u, _)| *u);
        out
    }

    /// Number of cached structure constants.
    pub fn cache_len(&self) -> usize {
        self.cache.read().expect("product cache poisoned").len()
    }
}

impl fmt::Debug for AlgebraContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y({},{}; {:?})", self.d, self.n, self.mode)
    }
}
