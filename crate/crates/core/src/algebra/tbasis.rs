use std::collections::BTreeMap;
use std::sync::Arc;

use super::{AlgebraContext, AlgebraElement, AlgebraError, ScalarMode};
use crate::coefficients::{rat, Scalar};
use crate::combinatorics::Permutation;

/// Exponents `α_j ∈ {0..d-1}` (an exponent `d` is written as `0`) and `w`,
/// standing for `t_1^{α_1} ⋯ t_n^{α_n} g_w`.
pub type TKey = (Vec<u32>, Permutation);

/// Coordinates of `x` in the basis `{t^α g_w}`.
///
/// Uses `E_I = Π_j (1/d) Σ_s ζ^{s·pos_j(I)} t_j^{-s}`, so the coefficient of
/// `t^α` in `E_I` is `Π_j (1/d) ζ^{-α_j pos_j(I)}`.
pub fn to_t_basis(x: &AlgebraElement) -> Result<BTreeMap<TKey, Scalar>, AlgebraError> {
    let ctx = x.context();
    if ctx.mode() != ScalarMode::Cyclotomic {
        return Err(AlgebraError::NeedsCyclotomic("t-basis"));
    }
    let (d, n) = (ctx.d(), ctx.n());
    let weight = Scalar::from_rational(rat(1, d as i64)).pow(n as u32);
    let mut out: BTreeMap<TKey, Scalar> = BTreeMap::new();
    for (i, w, c) in x.raw_terms() {
        let part = ctx.partition(i);
        for alpha in exponent_vectors(d, n) {
            let e: i64 = alpha
                .iter()
                .enumerate()
                .map(|(j, &a)| a as i64 * part.pos(j + 1) as i64)
                .sum();
            let coeff = c.mul_ref(&weight).mul_ref(&Scalar::zeta_pow(d as u32, -e));
            let key = (alpha, ctx.permutation(w).clone());
            let slot = out.entry(key).or_insert_with(Scalar::zero);
            *slot = slot.add_ref(&coeff);
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Inverse of [`to_t_basis`]: `t^α g_w = Σ_I ζ^{Σ_j α_j pos_j(I)} E_I g_w`.
pub fn from_t_basis(
    ctx: &Arc<AlgebraContext>,
    coords: &BTreeMap<TKey, Scalar>,
) -> Result<AlgebraElement, AlgebraError> {
    if ctx.mode() != ScalarMode::Cyclotomic {
        return Err(AlgebraError::NeedsCyclotomic("t-basis"));
    }
    let (d, n) = (ctx.d(), ctx.n());
    let mut raw = Vec::new();
    for ((alpha, w), c) in coords {
        if alpha.len() != n || w.degree() != n {
            return Err(AlgebraError::ShapeMismatch(format!("{:?} {}", alpha, w)));
        }
        let wi = w.lex_index();
        for (p, part) in ctx.ordered_partitions().iter().enumerate() {
            let e: i64 = alpha
                .iter()
                .enumerate()
                .map(|(j, &a)| a as i64 * part.pos(j + 1) as i64)
                .sum();
            raw.push(((p, wi), c.mul_ref(&Scalar::zeta_pow(d as u32, e))));
        }
    }
    Ok(AlgebraElement::from_raw(ctx, raw))
}

/// All `α ∈ {0..d-1}^n`, lexicographic.
pub fn exponent_vectors(d: usize, n: usize) -> Vec<Vec<u32>> {
    let total = d.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut a = vec![0u32; n];
            for slot in a.iter_mut().rev() {
                *slot = (idx % d) as u32;
                idx /= d;
            }
            a
        })
        .collect()
}
