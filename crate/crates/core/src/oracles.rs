//! Independent reference computations for tests.
//!
//! Nothing here shares code with the production kernels beyond scalars and
//! permutations.

use std::collections::BTreeMap;

use crate::algebra::TKey;
use crate::coefficients::{rat, Scalar};
use crate::combinatorics::Permutation;

/// Element in the basis `{t^α g_w}`.
pub type TElement = BTreeMap<TKey, Scalar>;

fn add_term(out: &mut TElement, key: TKey, c: Scalar) {
    let slot = out.entry(key).or_insert_with(Scalar::zero);
    *slot = slot.add_ref(&c);
}

/// Product in the `t`-basis straight from the generator relations:
/// `g_w t_j = t_{w(j)} g_w`, `t_j^d = 1`, and
/// `g_i² = 1 + (q − q⁻¹)(1/d) Σ_s t_i^s t_{i+1}^{-s} g_i`.
pub fn t_mul(d: usize, a: &TElement, b: &TElement) -> TElement {
    let mut out = TElement::new();
    for ((alpha, w), c) in a {
        for ((beta, v), c2) in b {
            // t^α g_w t^β = t^α t^{w·β} g_w
            let mut gamma = alpha.clone();
            for (j, &bj) in beta.iter().enumerate() {
                let k = w.apply(j + 1) - 1;
                gamma[k] = (gamma[k] + bj) % d as u32;
            }
            let mut acc: TElement = TElement::new();
            acc.insert((gamma, w.clone()), c.mul_ref(c2));
            for i in v.reduced_word() {
                acc = right_mul_g(d, &acc, i);
            }
            for (k, x) in acc {
                add_term(&mut out, k, x);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `t^γ g_u · g_i`.
fn right_mul_g(d: usize, x: &TElement, i: usize) -> TElement {
    let mut out = TElement::new();
    let weight = Scalar::q_minus_q_inv().mul_ref(&Scalar::from_rational(rat(1, d as i64)));
    for ((gamma, u), c) in x {
        let next = u.right_mul_simple(i);
        if !u.has_right_descent(i) {
            add_term(&mut out, (gamma.clone(), next), c.clone());
            continue;
        }
        // g_u g_i = g_{u'} g_i² with u' = u π_i
        add_term(&mut out, (gamma.clone(), next.clone()), c.clone());
        let (a, b) = (next.apply(i) - 1, next.apply(i + 1) - 1);
        for s in 0..d as u32 {
            let mut g2 = gamma.clone();
            g2[a] = (g2[a] + s) % d as u32;
            g2[b] = (g2[b] + d as u32 - s) % d as u32;
            add_term(&mut out, (g2, u.clone()), c.mul_ref(&weight));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `t^α g_w` as a one-term element.
pub fn t_monomial(alpha: Vec<u32>, w: Permutation) -> TElement {
    let mut out = TElement::new();
    out.insert((alpha, w), Scalar::one());
    out
}
