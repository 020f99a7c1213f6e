use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::context::{AlgebraContext, ScalarMode};
use super::AlgebraError;
use crate::coefficients::Scalar;
use crate::combinatorics::{OrderedPartition, Permutation};

/// Element of `Y(d,n)` in the basis `{E_I g_w}`, keyed by
/// `(index of I, index of w)`. No zero coefficients are stored.
#[derive(Clone)]
pub struct AlgebraElement {
    ctx: Arc<AlgebraContext>,
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl AlgebraElement {
    pub fn zero(ctx: &Arc<AlgebraContext>) -> Self {
        AlgebraElement {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `1 = Σ_I E_I`.
    pub fn one(ctx: &Arc<AlgebraContext>) -> Self {
        Self::from_raw(
            ctx,
            (0..ctx.ordered_partitions().len()).map(|i| ((i, 0), Scalar::one())),
        )
    }

    pub fn scalar(ctx: &Arc<AlgebraContext>, c: Scalar) -> Self {
        Self::one(ctx).scale(&c)
    }

    /// Sums repeated keys and drops zeros.
    pub(crate) fn from_raw(
        ctx: &Arc<AlgebraContext>,
        terms: impl IntoIterator<Item = ((usize, usize), Scalar)>,
    ) -> Self {
        let mut map: BTreeMap<(u32, u32), Scalar> = BTreeMap::new();
        for ((i, w), c) in terms {
            accumulate(&mut map, (i as u32, w as u32), c);
        }
        map.retain(|_, c| !c.is_zero());
        AlgebraElement {
            ctx: ctx.clone(),
            terms: map,
        }
    }

    /// Build from `(I, w, c)` triples.
    pub fn from_terms(
        ctx: &Arc<AlgebraContext>,
        terms: impl IntoIterator<Item = (OrderedPartition, Permutation, Scalar)>,
    ) -> Result<Self, AlgebraError> {
        let mut raw = Vec::new();
        for (i, w, c) in terms {
            if i.d() != ctx.d() || i.n() != ctx.n() || w.degree() != ctx.n() {
                return Err(AlgebraError::ShapeMismatch(format!("{} . {}", i, w)));
            }
            raw.push(((i.index(), w.lex_index()), c));
        }
        Ok(Self::from_raw(ctx, raw))
    }

    /// The basis element `E_I g_w`.
    pub fn basis(ctx: &Arc<AlgebraContext>, i: usize, w: usize) -> Self {
        Self::from_raw(ctx, [((i, w), Scalar::one())])
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(index of I, index of w, coefficient)`, in key order.
    pub fn raw_terms(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.terms
            .iter()
            .map(|(&(i, w), c)| (i as usize, w as usize, c))
    }

    /// `(I, w, coefficient)`, in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&OrderedPartition, &Permutation, &Scalar)> + '_ {
        self.raw_terms()
            .map(|(i, w, c)| (self.ctx.partition(i), self.ctx.permutation(w), c))
    }

    pub fn coefficient(&self, i: &OrderedPartition, w: &Permutation) -> Scalar {
        self.terms
            .get(&(i.index() as u32, w.lex_index() as u32))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Coefficient vector in the basis order of [`AlgebraContext::basis_index`].
    pub fn coordinates(&self) -> Vec<(usize, Scalar)> {
        self.raw_terms()
            .map(|(i, w, c)| (self.ctx.basis_index(i, w), c.clone()))
            .collect()
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ctx.compatible(&other.ctx) {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch {
                left: format!("{:?}", self.ctx),
                right: format!("{:?}", other.ctx),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            accumulate(&mut terms, *k, c.clone());
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(AlgebraElement {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        AlgebraElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            for (k, x) in &self.terms {
                let y = x.mul_ref(c);
                if !y.is_zero() {
                    terms.insert(*k, y);
                }
            }
        }
        AlgebraElement {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Bilinear extension of `E_I g_w · E_J g_v = δ_{I, w(J)} E_I g_w g_v`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let ctx = &self.ctx;
        let mut by_part: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (j, v, c) in other.raw_terms() {
            by_part.entry(j).or_default().push((v, c));
        }
        let mut out: BTreeMap<(u32, u32), Scalar> = BTreeMap::new();
        for (i, w, c) in self.raw_terms() {
            // w(J) = I  iff  J = w⁻¹(I)
            let winv = ctx.symmetric_group().element(w).inverse().lex_index();
            let j = ctx.act_sn_index(winv, i);
            let Some(right) = by_part.get(&j) else {
                continue;
            };
            for &(v, c2) in right {
                let cc = c.mul_ref(c2);
                for (u, s) in ctx.right_product(i, w, v).iter() {
                    accumulate(&mut out, (i as u32, *u), cc.mul_ref(s));
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(AlgebraElement {
            ctx: ctx.clone(),
            terms: out,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same context");
        }
        acc
    }

    /// Apply a map on keys, keeping coefficients.
    pub(crate) fn map_keys(&self, f: impl Fn(usize, usize) -> (usize, usize)) -> Self {
        Self::from_raw(
            &self.ctx,
            self.raw_terms().map(|(i, w, c)| (f(i, w), c.clone())),
        )
    }

    /// Every coefficient is a rational Laurent polynomial.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(Scalar::is_rational)
    }

    /// Text literal limited to the first `max_terms` terms.
    pub fn describe(&self, max_terms: usize) -> String {
        if self.terms.len() <= max_terms {
            return self.to_string();
        }
        let shown = AlgebraElement {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .take(max_terms)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        };
        format!(
            "{} + … ({} more terms)",
            shown,
            self.terms.len() - max_terms
        )
    }
}

fn accumulate(map: &mut BTreeMap<(u32, u32), Scalar>, key: (u32, u32), c: Scalar) {
    match map.get_mut(&key) {
        Some(x) => *x = x.add_ref(&c),
        None => {
            map.insert(key, c);
        }
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.compatible(&other.ctx) && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

impl fmt::Display for AlgebraElement {
    /// Terms `c * E{…} . g[…]` joined by `+`/`-`; unit coefficients omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, w, c)) in self.terms().enumerate() {
            let (neg, abs) = if c
                .as_rational_constant()
                .is_some_and(|r| r < num_traits::zero())
            {
                (true, c.neg_ref())
            } else {
                (false, c.clone())
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                if abs.term_count() == 1 && abs.is_rational() && !abs.to_string().contains(' ') {
                    write!(f, "{} * ", abs)?;
                } else {
                    write!(f, "({}) * ", abs)?;
                }
            }
            write!(f, "E{} . g{}", i, w)?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.ctx, self)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        /// Panics when the operands live in different algebras.
        impl $tr<&AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.$inner(rhs).expect("operands from different algebras")
            }
        }
        impl $tr for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: AlgebraElement) -> AlgebraElement {
                self.$inner(&rhs).expect("operands from different algebras")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.neg_ref()
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.neg_ref()
    }
}

/// Generators of `Y(d,n)` and related named elements.
impl AlgebraElement {
    /// `E_I`.
    pub fn gen_e_idem(
        ctx: &Arc<AlgebraContext>,
        part: &OrderedPartition,
    ) -> Result<Self, AlgebraError> {
        if part.d() != ctx.d() || part.n() != ctx.n() {
            return Err(AlgebraError::ShapeMismatch(part.to_string()));
        }
        Ok(Self::basis(ctx, part.index(), 0))
    }

    /// `g_i = Σ_I E_I g_{π_i}`.
    pub fn gen_g(ctx: &Arc<AlgebraContext>, i: usize) -> Result<Self, AlgebraError> {
        ctx.check_index("g", i, ctx.n() - 1)?;
        let pi = Permutation::simple(ctx.n(), i).lex_index();
        Ok(Self::from_raw(
            ctx,
            (0..ctx.ordered_partitions().len()).map(|p| ((p, pi), Scalar::one())),
        ))
    }

    /// `g_w = Σ_I E_I g_w`.
    pub fn gen_g_perm(ctx: &Arc<AlgebraContext>, w: &Permutation) -> Result<Self, AlgebraError> {
        if w.degree() != ctx.n() {
            return Err(AlgebraError::ShapeMismatch(w.to_string()));
        }
        let wi = w.lex_index();
        Ok(Self::from_raw(
            ctx,
            (0..ctx.ordered_partitions().len()).map(|p| ((p, wi), Scalar::one())),
        ))
    }

    /// `e_i = Σ_{pos_i(I) = pos_{i+1}(I)} E_I`.
    pub fn gen_e(ctx: &Arc<AlgebraContext>, i: usize) -> Result<Self, AlgebraError> {
        ctx.check_index("e", i, ctx.n() - 1)?;
        Self::gen_e_pair(ctx, i, i + 1)
    }

    /// `e_{i,j} = Σ_{pos_i(I) = pos_j(I)} E_I`.
    pub fn gen_e_pair(ctx: &Arc<AlgebraContext>, i: usize, j: usize) -> Result<Self, AlgebraError> {
        ctx.check_index("e", i, ctx.n())?;
        ctx.check_index("e", j, ctx.n())?;
        Ok(Self::from_raw(
            ctx,
            (0..ctx.ordered_partitions().len())
                .filter(|&p| ctx.same_pos(p, i, j))
                .map(|p| ((p, 0), Scalar::one())),
        ))
    }

    /// `t_j = Σ_I ζ^{pos_j(I)} E_I` with `ζ = exp(2πi/d)`.
    pub fn gen_t(ctx: &Arc<AlgebraContext>, j: usize) -> Result<Self, AlgebraError> {
        if ctx.mode() != ScalarMode::Cyclotomic {
            return Err(AlgebraError::NeedsCyclotomic("t"));
        }
        ctx.check_index("t", j, ctx.n())?;
        Ok(Self::from_raw(
            ctx,
            ctx.ordered_partitions()
                .iter()
                .enumerate()
                .map(|(p, part)| ((p, 0), Scalar::zeta_pow(ctx.d() as u32, part.pos(j) as i64))),
        ))
    }

    /// `g_i⁻¹ = g_i − (q − q⁻¹) e_i`.
    pub fn g_inverse(ctx: &Arc<AlgebraContext>, i: usize) -> Result<Self, AlgebraError> {
        let g = Self::gen_g(ctx, i)?;
        let e = Self::gen_e(ctx, i)?;
        g.try_sub(&e.scale(&Scalar::q_minus_q_inv()))
    }

    /// `t_j⁻¹ = t_j^{d-1}`.
    pub fn t_inverse(ctx: &Arc<AlgebraContext>, j: usize) -> Result<Self, AlgebraError> {
        if ctx.mode() != ScalarMode::Cyclotomic {
            return Err(AlgebraError::NeedsCyclotomic("t"));
        }
        ctx.check_index("t", j, ctx.n())?;
        Ok(Self::from_raw(
            ctx,
            ctx.ordered_partitions()
                .iter()
                .enumerate()
                .map(|(p, part)| {
                    (
                        (p, 0),
                        Scalar::zeta_pow(ctx.d() as u32, -(part.pos(j) as i64)),
                    )
                }),
        ))
    }
}
