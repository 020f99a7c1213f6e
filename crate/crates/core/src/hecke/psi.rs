use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::algebra::TensorElement;
use super::block::{BlockLayout, BlockMatrix};
use crate::algebra::{AlgebraContext, AlgebraElement, AlgebraError};
use crate::coefficients::{rat, Rational, Scalar};
use crate::combinatorics::{compositions, OrderedPartition, Permutation};
use crate::linalg::{exact_rank, specialized_rank, SparseVec};
use crate::report::{CheckRecord, Report};

/// How the Hecke index `k` of a diagonal `Ψ(g_i)` entry is counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KConvention {
    /// `k = #{j ∈ I_a : j ≤ i}`.
    #[default]
    AsPrinted,
    /// `k = #{j ∈ I_a : j < i}` with `T_0 = 1`. Wrong; kept as a negative control.
    OffByOne,
}

/// A generator of `Y(d,n)` in the idempotent presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsiGenerator {
    Idempotent(OrderedPartition),
    G(usize),
}

/// Column and Hecke entry of row `part` of `Ψ(g_i)`: the column is `π_i(I)`,
/// the entry is `1` off the diagonal and `T_k` in factor `pos_i(I)` on it.
fn g_entry(
    ctx: &AlgebraContext,
    part: usize,
    i: usize,
    conv: KConvention,
) -> (usize, Option<(usize, usize)>) {
    let col = ctx.simple_image(i, part);
    if col != part {
        return (col, None);
    }
    let p = ctx.partition(part);
    let a = p.pos(i);
    let below = (1..=i).filter(|&j| p.pos(j) == a).count();
    let k = match conv {
        KConvention::AsPrinted => below,
        KConvention::OffByOne => below - 1,
    };
    (col, (k > 0).then_some((a, k)))
}

/// `Ψ(E_I) Ψ(g_{i_1}) ⋯ Ψ(g_{i_k})`: a single entry in row `I`.
fn psi_word(
    ctx: &AlgebraContext,
    layout: &BlockLayout,
    part: usize,
    word: &[usize],
    conv: KConvention,
) -> (usize, usize, usize, TensorElement) {
    let (b, row) = layout.locate(part);
    let mu = &layout.blocks()[b].mu;
    let mut entry = TensorElement::one(mu);
    let mut col = part;
    for &i in word {
        let (next, t) = g_entry(ctx, col, i, conv);
        if let Some((a, k)) = t {
            entry = entry.mul_ref(&TensorElement::t_factor(mu, a, k));
        }
        col = next;
    }
    (b, row, layout.locate(col).1, entry)
}

/// `Ψ` on a generator.
pub fn psi_generator(
    ctx: &Arc<AlgebraContext>,
    gen: &PsiGenerator,
    conv: KConvention,
) -> Result<BlockMatrix, AlgebraError> {
    let layout = BlockLayout::get(ctx.d(), ctx.n());
    let mut out = BlockMatrix::zero(&layout);
    match gen {
        PsiGenerator::Idempotent(p) => {
            if p.d() != ctx.d() || p.n() != ctx.n() {
                return Err(AlgebraError::ShapeMismatch(p.to_string()));
            }
            let (b, r) = layout.locate(p.index());
            out.add_entry(b, r, r, &TensorElement::one(&layout.blocks()[b].mu));
        }
        PsiGenerator::G(i) => {
            ctx.check_index("g", *i, ctx.n().saturating_sub(1))?;
            for part in 0..ctx.ordered_partitions().len() {
                let (b, r, c, x) = psi_word(ctx, &layout, part, &[*i], conv);
                out.add_entry(b, r, c, &x);
            }
        }
    }
    Ok(out)
}

/// `Ψ(x)`, extended linearly from `Ψ(E_I g_w) = Ψ(E_I) Ψ(g_{i_1}) ⋯ Ψ(g_{i_k})`
/// over the stored reduced word of `w`.
pub fn psi(x: &AlgebraElement, conv: KConvention) -> BlockMatrix {
    let ctx = x.context();
    let layout = BlockLayout::get(ctx.d(), ctx.n());
    let sn = ctx.symmetric_group();
    let mut out = BlockMatrix::zero(&layout);
    for (part, w, c) in x.raw_terms() {
        let (b, r, col, e) = psi_word(ctx, &layout, part, sn.reduced_word(w), conv);
        out.add_entry(b, r, col, &e.scale(c));
    }
    out
}

/// `Ψ(E_I g_w)` along an arbitrary word for `w`, reduced or not.
pub fn psi_along_word(
    ctx: &Arc<AlgebraContext>,
    part: &OrderedPartition,
    word: &[usize],
    conv: KConvention,
) -> BlockMatrix {
    let layout = BlockLayout::get(ctx.d(), ctx.n());
    let mut out = BlockMatrix::zero(&layout);
    let (b, r, c, x) = psi_word(ctx, &layout, part.index(), word, conv);
    out.add_entry(b, r, c, &x);
    out
}

/// `(Σ_μ m_μ² Π_a μ_a!, d^n n!)`.
pub fn dimension_identity(d: usize, n: usize) -> (u64, u64) {
    let lhs = compositions(d, n)
        .iter()
        .map(|mu| {
            let m = mu.multinomial();
            m * m * TensorElement::dimension(mu) as u64
        })
        .sum();
    let rhs = (d as u64).pow(n as u32) * (1..=n as u64).product::<u64>();
    (lhs, rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    /// Specialized ranks only.
    Quick,
    /// Specialized ranks, then exact elimination when they are full.
    Exact,
}

#[derive(Clone, Debug)]
pub struct IsoOptions {
    pub tier: Tier,
    pub seed: u64,
    pub convention: KConvention,
    /// Check `Ψ(bb') = Ψ(b)Ψ(b')` on every ordered basis pair.
    pub homomorphism: bool,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            tier: Tier::Exact,
            seed: 0,
            convention: KConvention::AsPrinted,
            homomorphism: true,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockSummary {
    pub mu: Vec<usize>,
    pub size: usize,
    pub hecke_dim: usize,
    pub linear_dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsoReport {
    pub d: usize,
    pub n: usize,
    pub convention: KConvention,
    pub row_order: String,
    pub blocks: Vec<BlockSummary>,
    pub dimension: usize,
    pub target_dimension: usize,
    pub pairs_checked: usize,
    pub pair_failures: usize,
    pub specializations: Vec<String>,
    pub quick_ranks: Vec<usize>,
    pub exact_rank: Option<usize>,
    pub elapsed_ms: u128,
    pub checks: Report,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.checks.all_passed()
    }
}

/// Random nonzero `q0` with `q0 ≠ ±1`, so `q0 − q0⁻¹ ≠ 0`.
fn sample_q0(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-97..=97);
        let den: i64 = rng.gen_range(1..=31);
        if num != 0 && num.abs() != den {
            return rat(num, den);
        }
    }
}

/// Check that `Ψ` is an algebra isomorphism onto `⊕_μ Mat_{m_μ}(H^μ)`.
pub fn verify_iso(ctx: &Arc<AlgebraContext>, opts: &IsoOptions) -> IsoReport {
    let start = Instant::now();
    let (d, n) = (ctx.d(), ctx.n());
    let instance = format!("d={d},n={n}");
    let layout = BlockLayout::get(d, n);
    let mut checks = Report::new();

    let (lhs, rhs) = dimension_identity(d, n);
    checks.push(CheckRecord::from_bool(
        "dimension-identity",
        &instance,
        lhs == rhs,
        || format!("sum over blocks {lhs} != {rhs}"),
    ));

    let dim = ctx.dimension();
    let order = ctx.symmetric_group().order();
    let basis: Vec<AlgebraElement> = (0..dim)
        .map(|k| AlgebraElement::basis(ctx, k / order, k % order))
        .collect();
    let images: Vec<BlockMatrix> = basis.par_iter().map(|b| psi(b, opts.convention)).collect();

    checks.push(CheckRecord::from_bool(
        "unit",
        &instance,
        psi(&AlgebraElement::one(ctx), opts.convention) == BlockMatrix::identity(&layout),
        || "Psi(1) is not the identity".to_string(),
    ));

    // Two reduced words of the longest element.
    if n >= 2 {
        let w0 = Permutation::from_images(&(1..=n).rev().collect::<Vec<_>>())
            .expect("reversal is a permutation");
        let word = w0.reduced_word();
        let other: Vec<usize> = word.iter().rev().copied().collect();
        let agree = ctx.ordered_partitions().iter().all(|p| {
            psi_along_word(ctx, p, &word, opts.convention)
                == psi_along_word(ctx, p, &other, opts.convention)
        });
        checks.push(CheckRecord::from_bool(
            "well-defined",
            &instance,
            agree,
            || format!("words {word:?} and {other:?} give different images"),
        ));
    }

    let mut pairs_checked = 0;
    let mut pair_failures = 0;
    if opts.homomorphism {
        let failures: Vec<(usize, usize)> = (0..dim)
            .into_par_iter()
            .flat_map_iter(|a| {
                let basis = &basis;
                let images = &images;
                (0..dim).filter_map(move |b| {
                    let lhs = psi(&(&basis[a] * &basis[b]), opts.convention);
                    let rhs = images[a].mul_ref(&images[b]);
                    (lhs != rhs).then_some((a, b))
                })
            })
            .collect();
        pairs_checked = dim * dim;
        pair_failures = failures.len();
        checks.push(CheckRecord::from_bool(
            "homomorphism",
            &instance,
            failures.is_empty(),
            || {
                let (a, b) = failures[0];
                format!(
                    "{} of {} pairs fail, first {} * {}",
                    failures.len(),
                    dim * dim,
                    basis[a],
                    basis[b]
                )
            },
        ));
    } else {
        checks.push(CheckRecord::skipped(
            "homomorphism",
            &instance,
            "not requested",
        ));
    }

    let target_dimension = layout.linear_dim();
    checks.push(CheckRecord::from_bool(
        "equal-dimension",
        &instance,
        target_dimension == dim,
        || format!("target has dimension {target_dimension}, source {dim}"),
    ));

    let vectors: Vec<SparseVec<Scalar>> = images.iter().map(BlockMatrix::flatten).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut specializations = Vec::new();
    let mut quick_ranks = Vec::new();
    for _ in 0..3 {
        let q0 = sample_q0(&mut rng);
        let r = specialized_rank(&vectors, &q0).expect("q0 is nonzero");
        specializations.push(q0.to_string());
        quick_ranks.push(r);
    }
    let quick_full = quick_ranks.contains(&dim);
    checks.push(CheckRecord::from_bool(
        "rank-quick",
        &instance,
        quick_full,
        || format!("specialized ranks {quick_ranks:?} at q0 = {specializations:?}, need {dim}"),
    ));

    let mut exact = None;
    match opts.tier {
        Tier::Exact if quick_full => {
            let r = exact_rank(&vectors);
            exact = Some(r);
            checks.push(CheckRecord::from_bool(
                "rank-exact",
                &instance,
                r == dim,
                || format!("rank {r}, need {dim}"),
            ));
        }
        Tier::Exact => checks.push(CheckRecord::skipped(
            "rank-exact",
            &instance,
            "specialized ranks already short",
        )),
        Tier::Quick => {}
    }

    IsoReport {
        d,
        n,
        convention: opts.convention,
        row_order: "lexicographic".to_string(),
        blocks: layout
            .blocks()
            .iter()
            .map(|s| BlockSummary {
                mu: s.mu.parts().to_vec(),
                size: s.size(),
                hecke_dim: s.hecke_dim,
                linear_dim: s.linear_dim(),
            })
            .collect(),
        dimension: dim,
        target_dimension,
        pairs_checked,
        pair_failures,
        specializations,
        quick_ranks,
        exact_rank: exact,
        elapsed_ms: start.elapsed().as_millis(),
        checks,
    }
}
