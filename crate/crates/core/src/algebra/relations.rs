use std::sync::Arc;

use super::{AlgebraContext, AlgebraElement, AlgebraError, ScalarMode};
use crate::coefficients::Scalar;
use crate::combinatorics::Permutation;
use crate::report::{CheckRecord, Report};

const DIFF_TERMS: usize = 50;

fn compare(id: &str, instance: String, lhs: &AlgebraElement, rhs: &AlgebraElement) -> CheckRecord {
    let diff = lhs - rhs;
    CheckRecord::from_bool(id, instance, diff.is_zero(), || {
        format!("lhs - rhs = {}", diff.describe(DIFF_TERMS))
    })
}

/// Evaluate every instance of the defining relations of `Y(d,n)`:
/// braid and quadratic relations for the `g_i`, the `t_j` relations
/// (cyclotomic mode only), and the idempotent relations for the `E_I`.
pub fn verify_core_relations(ctx: &Arc<AlgebraContext>) -> Result<Report, AlgebraError> {
    let n = ctx.n();
    let mut report = Report::new();
    let g: Vec<AlgebraElement> = (1..n)
        .map(|i| AlgebraElement::gen_g(ctx, i))
        .collect::<Result<_, _>>()?;
    let e: Vec<AlgebraElement> = (1..n)
        .map(|i| AlgebraElement::gen_e(ctx, i))
        .collect::<Result<_, _>>()?;
    let one = AlgebraElement::one(ctx);

    for i in 1..n {
        for j in i + 2..n {
            let (a, b) = (&g[i - 1], &g[j - 1]);
            report.push(compare(
                "braid-far",
                format!("i={i}, j={j}"),
                &(a * b),
                &(b * a),
            ));
        }
    }
    for i in 1..n.saturating_sub(1) {
        let (a, b) = (&g[i - 1], &g[i]);
        report.push(compare(
            "braid",
            format!("i={i}"),
            &(&(a * b) * a),
            &(&(b * a) * b),
        ));
    }
    for i in 1..n {
        let gi = &g[i - 1];
        let rhs = &one + &(&e[i - 1] * gi).scale(&Scalar::q_minus_q_inv());
        report.push(compare("quadratic", format!("i={i}"), &(gi * gi), &rhs));
        let ginv = AlgebraElement::g_inverse(ctx, i)?;
        report.push(compare("inverse", format!("i={i}"), &(gi * &ginv), &one));
        let sq = gi * gi;
        let char_poly = &(&sq - &one) * &(&(&sq - &gi.scale(&Scalar::q_minus_q_inv())) - &one);
        report.push(CheckRecord::from_bool(
            "characteristic",
            format!("i={i}"),
            char_poly.is_zero(),
            || char_poly.describe(DIFF_TERMS),
        ));
    }

    if ctx.mode() == ScalarMode::Cyclotomic {
        let t: Vec<AlgebraElement> = (1..=n)
            .map(|j| AlgebraElement::gen_t(ctx, j))
            .collect::<Result<_, _>>()?;
        for a in 1..=n {
            for b in a + 1..=n {
                let (x, y) = (&t[a - 1], &t[b - 1]);
                report.push(compare(
                    "t-commute",
                    format!("i={a}, j={b}"),
                    &(x * y),
                    &(y * x),
                ));
            }
            report.push(compare(
                "t-order",
                format!("j={a}"),
                &t[a - 1].pow(ctx.d() as u32),
                &one,
            ));
        }
        for i in 1..n {
            let pi = Permutation::simple(n, i);
            for j in 1..=n {
                report.push(compare(
                    "g-t",
                    format!("i={i}, j={j}"),
                    &(&g[i - 1] * &t[j - 1]),
                    &(&t[pi.apply(j) - 1] * &g[i - 1]),
                ));
            }
        }
    } else {
        for id in ["t-commute", "t-order", "g-t"] {
            report.push(CheckRecord::skipped(id, "all", "needs cyclotomic scalars"));
        }
    }

    let parts = ctx.ordered_partitions();
    let idems: Vec<AlgebraElement> = parts
        .iter()
        .map(|p| AlgebraElement::gen_e_idem(ctx, p))
        .collect::<Result<_, _>>()?;
    for (a, x) in idems.iter().enumerate() {
        for (b, y) in idems.iter().enumerate() {
            let expected = if a == b {
                x.clone()
            } else {
                AlgebraElement::zero(ctx)
            };
            report.push(compare(
                "E-orthogonal",
                format!("I={}, J={}", parts[a], parts[b]),
                &(x * y),
                &expected,
            ));
        }
    }
    for i in 1..n {
        for (a, x) in idems.iter().enumerate() {
            let image = &idems[ctx.simple_image(i, a)];
            report.push(compare(
                "g-E",
                format!("i={i}, I={}", parts[a]),
                &(&g[i - 1] * x),
                &(image * &g[i - 1]),
            ));
        }
    }
    let total = idems
        .iter()
        .fold(AlgebraElement::zero(ctx), |acc, x| &acc + x);
    report.push(compare("E-sum", "all".into(), &total, &one));
    Ok(report)
}
