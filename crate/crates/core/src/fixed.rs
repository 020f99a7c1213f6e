//! The `S_d` action `(E_I g_w)^σ = E_{I^σ} g_w` and fixed-point subalgebras.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{exponent_vectors, AlgebraContext, AlgebraElement, AlgebraError, ScalarMode};
use crate::coefficients::{rat, Scalar};
use crate::combinatorics::{
    cyclic_shifts, set_partitions, OrderedPartition, Permutation, SetPartition, SymmetricGroup,
};
use crate::linalg::ScalarEchelon;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixedError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{p} does not divide {d}")]
    NotADivisor { p: usize, d: usize },
    #[error("the given permutations do not form a subgroup of S_{d}: {why}")]
    NotASubgroup { d: usize, why: String },
}

/// A subgroup of `S_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupSpec {
    Full,
    /// Generated by `σ_{d/p}: a ↦ a + d/p (mod d)`.
    Cyclic(usize),
    /// Closed under products; must contain the identity.
    Explicit(Vec<Permutation>),
}

impl SubgroupSpec {
    /// All elements, identity first.
    pub fn elements(&self, d: usize) -> Result<Vec<Permutation>, FixedError> {
        match self {
            SubgroupSpec::Full => Ok(SymmetricGroup::get(d).elements().to_vec()),
            SubgroupSpec::Cyclic(p) => {
                if *p == 0 || !d.is_multiple_of(*p) {
                    return Err(FixedError::NotADivisor { p: *p, d });
                }
                Ok(cyclic_shifts(d, *p))
            }
            SubgroupSpec::Explicit(list) => {
                let bad = |why: String| FixedError::NotASubgroup { d, why };
                if let Some(w) = list.iter().find(|w| w.degree() != d) {
                    return Err(bad(format!("{w} has degree {}", w.degree())));
                }
                let set: BTreeSet<&Permutation> = list.iter().collect();
                if !set.contains(&Permutation::identity(d)) {
                    return Err(bad("identity missing".into()));
                }
                for a in &set {
                    for b in &set {
                        let ab = a.compose(b);
                        if !set.contains(&ab) {
                            return Err(bad(format!("{a} * {b} = {ab} missing")));
                        }
                    }
                }
                let mut out: Vec<Permutation> = set.into_iter().cloned().collect();
                out.sort_by_key(|w| !w.is_identity());
                Ok(out)
            }
        }
    }

    /// A generating set.
    pub fn generators(&self, d: usize) -> Result<Vec<Permutation>, FixedError> {
        match self {
            SubgroupSpec::Full => Ok((1..d).map(|i| Permutation::simple(d, i)).collect()),
            SubgroupSpec::Cyclic(_) => {
                let els = self.elements(d)?;
                Ok(els.into_iter().skip(1).take(1).collect())
            }
            SubgroupSpec::Explicit(_) => self.elements(d),
        }
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupSpec::Full => write!(f, "sd"),
            SubgroupSpec::Cyclic(p) => write!(f, "zp({p})"),
            SubgroupSpec::Explicit(list) => {
                let xs: Vec<String> = list.iter().map(|w| w.to_string()).collect();
                write!(f, "{{{}}}", xs.join(", "))
            }
        }
    }
}

fn check_sigma(ctx: &AlgebraContext, sigma: &Permutation) -> Result<(), FixedError> {
    if sigma.degree() != ctx.d() {
        return Err(AlgebraError::ShapeMismatch(sigma.to_string()).into());
    }
    Ok(())
}

/// `x^σ`: relabel every `E_I g_w` to `E_{I^σ} g_w`.
pub fn sigma_action(x: &AlgebraElement, sigma: &Permutation) -> Result<AlgebraElement, FixedError> {
    let ctx = x.context().clone();
    check_sigma(&ctx, sigma)?;
    Ok(x.map_keys(|i, w| (ctx.partition(i).act_sd(sigma).index(), w)))
}

/// `(1/|G|) Σ_{σ∈G} x^σ`.
pub fn reynolds(x: &AlgebraElement, group: &SubgroupSpec) -> Result<AlgebraElement, FixedError> {
    let ctx = x.context();
    let els = group.elements(ctx.d())?;
    let mut acc = AlgebraElement::zero(ctx);
    for s in &els {
        acc = acc.try_add(&sigma_action(x, s)?)?;
    }
    Ok(acc.scale(&Scalar::from_rational(rat(1, els.len() as i64))))
}

/// `x^σ = x` for every generator `σ` of the group.
pub fn is_fixed(x: &AlgebraElement, group: &SubgroupSpec) -> Result<bool, FixedError> {
    for s in group.generators(x.context().d())? {
        if sigma_action(x, &s)? != *x {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Orbit of `I` under a group, each member once, sorted.
pub fn orbit(part: &OrderedPartition, group: &[Permutation]) -> Vec<OrderedPartition> {
    let set: BTreeSet<OrderedPartition> = group.iter().map(|s| part.act_sd(s)).collect();
    set.into_iter().collect()
}

/// `E_[I]`: the sum of `E_J` over the `S_d`-orbit of `I`, each `J` once.
pub fn class_idempotent(
    ctx: &Arc<AlgebraContext>,
    part: &OrderedPartition,
) -> Result<AlgebraElement, FixedError> {
    let sd = SymmetricGroup::get(ctx.d());
    let mut acc = AlgebraElement::zero(ctx);
    for j in orbit(part, sd.elements()) {
        acc = acc.try_add(&AlgebraElement::gen_e_idem(ctx, &j)?)?;
    }
    Ok(acc)
}

/// `Σ_{σ∈S_d} E_{I^σ}` summed over all of `S_d`, so each orbit member
/// appears `|Stab(I)|` times.
pub fn class_sum_with_multiplicity(
    ctx: &Arc<AlgebraContext>,
    part: &OrderedPartition,
) -> Result<AlgebraElement, FixedError> {
    let sd = SymmetricGroup::get(ctx.d());
    let mut acc = AlgebraElement::zero(ctx);
    for s in sd.elements() {
        acc = acc.try_add(&AlgebraElement::gen_e_idem(ctx, &part.act_sd(s))?)?;
    }
    Ok(acc)
}

/// `e_[I] = Π_{pos_i = pos_j} e_{i,j} · Π_{pos_i ≠ pos_j} (1 − e_{i,j})` over
/// ordered pairs `(i, j)`.
pub fn class_product(
    ctx: &Arc<AlgebraContext>,
    part: &OrderedPartition,
) -> Result<AlgebraElement, FixedError> {
    let one = AlgebraElement::one(ctx);
    let mut acc = one.clone();
    for i in 1..=ctx.n() {
        for j in 1..=ctx.n() {
            let e = AlgebraElement::gen_e_pair(ctx, i, j)?;
            let factor = if part.pos(i) == part.pos(j) {
                e
            } else {
                one.try_sub(&e)?
            };
            acc = acc.try_mul(&factor)?;
        }
    }
    Ok(acc)
}

/// What a fixed-basis element is indexed by.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FixedLabel {
    /// `E_[I] g_w`, class given as a set partition.
    Class { class: String, w: String },
    /// `t_1^{α_1} ⋯ t_n^{α_n} g_w`.
    TMonomial { alpha: Vec<u32>, w: String },
    /// `a_0^{β_0} ⋯ a_{n-1}^{β_{n-1}} g_w`.
    AMonomial { beta: Vec<u32>, w: String },
    /// Sum of `E_J g_w` over the group orbit of `I`.
    Orbit { part: String, w: String },
}

#[derive(Clone, Debug)]
pub struct FixedBasis {
    pub labels: Vec<FixedLabel>,
    pub elements: Vec<AlgebraElement>,
}

impl FixedBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Exact rank of the elements over `Q(ζ)(q)`.
    pub fn rank(&self) -> usize {
        let mut e = ScalarEchelon::new();
        for x in &self.elements {
            e.insert(&x.coordinates());
        }
        e.rank()
    }

    /// Both bases span the same subspace.
    pub fn same_span(&self, other: &FixedBasis) -> bool {
        let mut e = ScalarEchelon::new();
        for x in &self.elements {
            e.insert(&x.coordinates());
        }
        let r = e.rank();
        other.elements.iter().all(|y| e.contains(&y.coordinates())) && r == other.rank()
    }
}

fn with_permutations(
    ctx: &Arc<AlgebraContext>,
    heads: Vec<(FixedLabel, AlgebraElement)>,
) -> Result<FixedBasis, FixedError> {
    let mut labels = Vec::new();
    let mut elements = Vec::new();
    for (label, head) in heads {
        for w in ctx.symmetric_group().elements() {
            let g = AlgebraElement::gen_g_perm(ctx, w)?;
            let wl = w.to_string();
            labels.push(match &label {
                FixedLabel::Class { class, .. } => FixedLabel::Class {
                    class: class.clone(),
                    w: wl,
                },
                FixedLabel::TMonomial { alpha, .. } => FixedLabel::TMonomial {
                    alpha: alpha.clone(),
                    w: wl,
                },
                FixedLabel::AMonomial { beta, .. } => FixedLabel::AMonomial {
                    beta: beta.clone(),
                    w: wl,
                },
                FixedLabel::Orbit { part, .. } => FixedLabel::Orbit {
                    part: part.clone(),
                    w: wl,
                },
            });
            elements.push(head.try_mul(&g)?);
        }
    }
    Ok(FixedBasis { labels, elements })
}

/// Lexicographically least member of the class: parts labeled by order of
/// first appearance.
pub fn class_representative(d: usize, class: &SetPartition, n: usize) -> OrderedPartition {
    let mut pos = vec![0; n];
    for (b, block) in class.blocks().iter().enumerate() {
        for &j in block {
            pos[j - 1] = b + 1;
        }
    }
    OrderedPartition::new(d, &pos).expect("at most d blocks")
}

/// Basis `{E_[I] g_w}` of `Y^{S_d}`, classes in canonical set-partition order.
pub fn sd_basis(ctx: &Arc<AlgebraContext>) -> Result<FixedBasis, FixedError> {
    let mut heads = Vec::new();
    for class in set_partitions(ctx.n(), ctx.d()) {
        let rep = class_representative(ctx.d(), &class, ctx.n());
        heads.push((
            FixedLabel::Class {
                class: class.to_string(),
                w: String::new(),
            },
            class_idempotent(ctx, &rep)?,
        ));
    }
    with_permutations(ctx, heads)
}

fn check_p(ctx: &AlgebraContext, p: usize) -> Result<(), FixedError> {
    if p == 0 || !ctx.d().is_multiple_of(p) {
        return Err(FixedError::NotADivisor { p, d: ctx.d() });
    }
    if ctx.mode() != ScalarMode::Cyclotomic {
        return Err(AlgebraError::NeedsCyclotomic("the Z/p bases").into());
    }
    Ok(())
}

/// `Σ_I ζ^{e(I)} E_I` for an exponent function on ordered partitions.
fn diagonal(
    ctx: &Arc<AlgebraContext>,
    exponent: impl Fn(&OrderedPartition) -> i64,
) -> AlgebraElement {
    let d = ctx.d() as u32;
    let mut acc = AlgebraElement::zero(ctx);
    for part in ctx.ordered_partitions() {
        let e = AlgebraElement::gen_e_idem(ctx, part)
            .expect("partition of this context")
            .scale(&Scalar::zeta_pow(d, exponent(part)));
        acc = &acc + &e;
    }
    acc
}

/// `t^α g_w` with `α_1 + … + α_n ≡ 0 (mod p)`.
pub fn zp_t_basis(ctx: &Arc<AlgebraContext>, p: usize) -> Result<FixedBasis, FixedError> {
    check_p(ctx, p)?;
    let mut heads = Vec::new();
    for alpha in exponent_vectors(ctx.d(), ctx.n()) {
        if !(alpha.iter().sum::<u32>() as usize).is_multiple_of(p) {
            continue;
        }
        let head = diagonal(ctx, |part| {
            alpha
                .iter()
                .enumerate()
                .map(|(j, &a)| a as i64 * part.pos(j + 1) as i64)
                .sum()
        });
        heads.push((
            FixedLabel::TMonomial {
                alpha,
                w: String::new(),
            },
            head,
        ));
    }
    with_permutations(ctx, heads)
}

/// `a_0^{β_0} a_1^{β_1} ⋯ a_{n-1}^{β_{n-1}} g_w` with `a_0 = t_1^p`,
/// `a_i = t_i⁻¹ t_{i+1}`, `β_0 < d/p`, `β_i < d`; the `a`-monomial stands to
/// the left of `g_w`.
pub fn zp_a_basis(ctx: &Arc<AlgebraContext>, p: usize) -> Result<FixedBasis, FixedError> {
    check_p(ctx, p)?;
    let (d, n) = (ctx.d(), ctx.n());
    let mut heads = Vec::new();
    for rest in exponent_vectors(d, n - 1) {
        for b0 in 0..(d / p) as u32 {
            let mut beta = vec![b0];
            beta.extend(&rest);
            let head = diagonal(ctx, |part| {
                let mut e = (p as i64) * beta[0] as i64 * part.pos(1) as i64;
                for i in 1..n {
                    e += beta[i] as i64 * (part.pos(i + 1) as i64 - part.pos(i) as i64);
                }
                e
            });
            heads.push((
                FixedLabel::AMonomial {
                    beta,
                    w: String::new(),
                },
                head,
            ));
        }
    }
    heads.sort_by(|a, b| match (&a.0, &b.0) {
        (FixedLabel::AMonomial { beta: x, .. }, FixedLabel::AMonomial { beta: y, .. }) => x.cmp(y),
        _ => std::cmp::Ordering::Equal,
    });
    with_permutations(ctx, heads)
}

/// Orbit sums of `E_I` under the group, each orbit once.
fn orbit_sum_basis(
    ctx: &Arc<AlgebraContext>,
    els: &[Permutation],
) -> Result<FixedBasis, FixedError> {
    let mut seen = BTreeSet::new();
    let mut heads = Vec::new();
    for part in ctx.ordered_partitions() {
        if seen.contains(part) {
            continue;
        }
        let orb = orbit(part, els);
        let mut acc = AlgebraElement::zero(ctx);
        for j in &orb {
            acc = acc.try_add(&AlgebraElement::gen_e_idem(ctx, j)?)?;
            seen.insert(j.clone());
        }
        heads.push((
            FixedLabel::Orbit {
                part: part.to_string(),
                w: String::new(),
            },
            acc,
        ));
    }
    with_permutations(ctx, heads)
}

/// Basis of `Y^G`.
///
/// `S_d` uses `{E_[I] g_w}`; `Z/p` uses the `t`-monomial basis in cyclotomic
/// mode and orbit sums otherwise; explicit groups keep the independent
/// Reynolds images of the standard basis.
pub fn fixed_basis(
    ctx: &Arc<AlgebraContext>,
    group: &SubgroupSpec,
) -> Result<FixedBasis, FixedError> {
    match group {
        SubgroupSpec::Full => sd_basis(ctx),
        SubgroupSpec::Cyclic(p) if ctx.mode() == ScalarMode::Cyclotomic => zp_t_basis(ctx, *p),
        SubgroupSpec::Cyclic(_) => orbit_sum_basis(ctx, &group.elements(ctx.d())?),
        SubgroupSpec::Explicit(_) => {
            let els = group.elements(ctx.d())?;
            let mut echelon = ScalarEchelon::new();
            let mut labels = Vec::new();
            let mut elements = Vec::new();
            for (i, part) in ctx.ordered_partitions().iter().enumerate() {
                for w in 0..ctx.symmetric_group().order() {
                    let x = reynolds(&AlgebraElement::basis(ctx, i, w), group)?;
                    if echelon.insert(&x.coordinates()) {
                        labels.push(FixedLabel::Orbit {
                            part: part.to_string(),
                            w: ctx.permutation(w).to_string(),
                        });
                        elements.push(x);
                    }
                }
            }
            debug_assert!(!els.is_empty());
            Ok(FixedBasis { labels, elements })
        }
    }
}

/// Exact rank of the Reynolds images of the whole standard basis.
pub fn reynolds_rank(ctx: &Arc<AlgebraContext>, group: &SubgroupSpec) -> Result<usize, FixedError> {
    let mut echelon = ScalarEchelon::new();
    for i in 0..ctx.ordered_partitions().len() {
        for w in 0..ctx.symmetric_group().order() {
            let x = reynolds(&AlgebraElement::basis(ctx, i, w), group)?;
            echelon.insert(&x.coordinates());
        }
    }
    Ok(echelon.rank())
}

/// The rank formula: `B_d(n) n!` for `S_d`, `d^n n!/p` for `Z/p`.
pub fn expected_rank(d: usize, n: usize, group: &SubgroupSpec) -> Option<u64> {
    let fact: u64 = (1..=n as u64).product();
    match group {
        SubgroupSpec::Full => Some(crate::combinatorics::count_classes(d, n) * fact),
        SubgroupSpec::Cyclic(p) if *p > 0 && d.is_multiple_of(*p) => {
            Some((d as u64).pow(n as u32) * fact / *p as u64)
        }
        _ => None,
    }
}
