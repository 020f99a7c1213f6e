use serde::Serialize;

use super::RepError;
use crate::combinatorics::{
    multipartitions, Composition, MultiPartition, Partition, Permutation, QuantumChar,
    SymmetricGroup,
};

/// Simple `Y(d,n)`-module label: a `d`-multipartition of `n` with
/// `e`-regular components.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct SimpleLabel {
    pub lambda: MultiPartition,
    pub mu: Composition,
    pub e: QuantumChar,
}

impl SimpleLabel {
    pub fn new(lambda: MultiPartition, e: QuantumChar) -> Result<Self, RepError> {
        check_e(e)?;
        if let Some(bad) = lambda.components().iter().find(|p| !p.is_e_regular(e)) {
            return Err(RepError::InvalidParameters(format!(
                "{bad} is not {e}-regular"
            )));
        }
        Ok(SimpleLabel {
            mu: lambda.composition(),
            lambda,
            e,
        })
    }

    pub fn generic(lambda: MultiPartition) -> Self {
        SimpleLabel {
            mu: lambda.composition(),
            lambda,
            e: QuantumChar::Infinite,
        }
    }

    pub fn d(&self) -> usize {
        self.lambda.d()
    }

    pub fn n(&self) -> usize {
        self.lambda.size()
    }
}

fn check_e(e: QuantumChar) -> Result<(), RepError> {
    match e {
        QuantumChar::Finite(k) if k < 2 => Err(RepError::InvalidParameters(format!(
            "e must be at least 2, got {k}"
        ))),
        _ => Ok(()),
    }
}

/// All labels in the order of [`multipartitions`]: compositions
/// lexicographically, then components in partition order.
pub fn enumerate_simples(d: usize, n: usize, e: QuantumChar) -> Result<Vec<SimpleLabel>, RepError> {
    check_e(e)?;
    if d == 0 {
        return Err(RepError::InvalidParameters("d must be positive".into()));
    }
    Ok(multipartitions(d, n, e)
        .into_iter()
        .map(|lambda| SimpleLabel {
            mu: lambda.composition(),
            lambda,
            e,
        })
        .collect())
}

/// `m_μ · Π hook_dim(λ^a)`; only generic `e`.
pub fn dim_y(label: &SimpleLabel) -> Result<u64, RepError> {
    if label.e != QuantumChar::Infinite {
        return Err(RepError::FiniteE(label.e));
    }
    Ok(label.mu.multinomial()
        * label
            .lambda
            .components()
            .iter()
            .map(Partition::hook_dim)
            .product::<u64>())
}

/// Stabilizer of `𝛌` in `S_d`: the product of the symmetric groups on the
/// blocks of equal components.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InertiaSd {
    /// Blocks of `{1..d}`, each sorted, ordered by smallest element.
    pub blocks: Vec<Vec<usize>>,
    /// `Π |J_s|!`.
    pub x: u64,
}

impl InertiaSd {
    pub fn contains(&self, sigma: &Permutation) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&a| b.contains(&sigma.apply(a))))
    }

    /// All elements, in the order of [`SymmetricGroup::elements`].
    pub fn elements(&self, d: usize) -> Vec<Permutation> {
        SymmetricGroup::get(d)
            .elements()
            .iter()
            .filter(|s| self.contains(s))
            .cloned()
            .collect()
    }

    /// Cycle type of `sigma` restricted to block `s`.
    pub fn block_cycle_type(&self, s: usize, sigma: &Permutation) -> Vec<usize> {
        let block = &self.blocks[s];
        let mut seen = vec![false; block.len()];
        let mut out = Vec::new();
        for start in 0..block.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                len += 1;
                let next = sigma.apply(block[k]);
                k = block
                    .iter()
                    .position(|&a| a == next)
                    .expect("sigma preserves the block");
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

pub fn inertia_sd(lambda: &MultiPartition) -> InertiaSd {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for a in 1..=lambda.d() {
        match blocks
            .iter_mut()
            .find(|b| lambda.component(b[0]) == lambda.component(a))
        {
            Some(b) => b.push(a),
            None => blocks.push(vec![a]),
        }
    }
    let x = blocks.iter().map(|b| factorial(b.len())).product();
    InertiaSd { blocks, x }
}

/// Stabilizer of `𝛌` in the cyclic group generated by `σ_{d/p}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InertiaZp {
    pub p: usize,
    /// Smallest `s ≥ 1` with `σ_{d/p}^s · 𝛌 = 𝛌`; divides `p`.
    pub s: usize,
    /// `p / s`.
    pub order: usize,
    /// `σ_{d/p}^s`.
    #[serde(skip)]
    pub generator: Permutation,
}

impl InertiaZp {
    /// `generator^k` for `k in 0..order`.
    pub fn elements(&self) -> Vec<Permutation> {
        let d = self.generator.degree();
        let mut out = vec![Permutation::identity(d)];
        for _ in 1..self.order {
            out.push(self.generator.compose(out.last().expect("nonempty")));
        }
        out
    }
}

/// `σ_{d/p}: a ↦ a + d/p (mod d)`.
pub fn cyclic_generator(d: usize, p: usize) -> Result<Permutation, RepError> {
    if p == 0 || !d.is_multiple_of(p) {
        return Err(RepError::InvalidParameters(format!(
            "p = {p} does not divide d = {d}"
        )));
    }
    Ok(Permutation::shift(d, d / p))
}

pub fn inertia_zp(lambda: &MultiPartition, p: usize) -> Result<InertiaZp, RepError> {
    let d = lambda.d();
    let tau = cyclic_generator(d, p)?;
    let mut power = tau.clone();
    let mut s = 1;
    while lambda.act(&power) != *lambda {
        power = tau.compose(&power);
        s += 1;
    }
    Ok(InertiaZp {
        p,
        s,
        order: p / s,
        generator: power,
    })
}
