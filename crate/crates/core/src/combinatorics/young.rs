use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CombinatoricsError;

/// `d`-composition `(μ_1, …, μ_d)` of `n`; zero parts allowed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn d(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `μ^σ` with `(μ^σ)_{σ(a)} = μ_a`.
    pub fn act(&self, sigma: &super::Permutation) -> Self {
        let mut parts = vec![0; self.d()];
        for (a, &m) in self.parts.iter().enumerate() {
            parts[sigma.apply(a + 1) - 1] = m;
        }
        Composition { parts }
    }

    /// `m_μ = n! / (μ_1! ⋯ μ_d!)`.
    pub fn multinomial(&self) -> u64 {
        let mut acc = 1u64;
        let mut seen = 0u64;
        for &m in &self.parts {
            for k in 1..=m as u64 {
                seen += 1;
                acc = acc * seen / k;
            }
        }
        acc
    }
}

/// All `d`-compositions of `n` in lexicographic order.
pub fn compositions(d: usize, n: usize) -> Vec<Composition> {
    fn go(d: usize, rest: usize, acc: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if acc.len() + 1 == d {
            acc.push(rest);
            out.push(Composition::new(acc.clone()));
            acc.pop();
            return;
        }
        for m in 0..=rest {
            acc.push(m);
            go(d, rest - m, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        go(d, n, &mut Vec::new(), &mut out);
    }
    out
}

pub fn multinomial(mu: &Composition) -> u64 {
    mu.multinomial()
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", xs.join(","))
    }
}

/// Integer partition with weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..cols)
                .map(|c| self.parts.iter().filter(|&&r| r > c).count())
                .collect(),
        }
    }

    /// No part occurs `e` or more times; every partition is `∞`-regular.
    pub fn is_e_regular(&self, e: QuantumChar) -> bool {
        match e {
            QuantumChar::Infinite => true,
            QuantumChar::Finite(e) => {
                let e = e as usize;
                let mut run = 0;
                let mut prev = 0;
                for &p in &self.parts {
                    run = if p == prev { run + 1 } else { 1 };
                    prev = p;
                    if run >= e {
                        return false;
                    }
                }
                true
            }
        }
    }

    /// `n!` over the product of hook lengths.
    pub fn hook_dim(&self) -> u64 {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size());
        for (r, &row) in self.parts.iter().enumerate() {
            for c in 0..row {
                hooks.push((row - c) + (conj.parts[c] - r) - 1);
            }
        }
        let mut num = 1u128;
        for k in 1..=self.size() as u128 {
            num *= k;
        }
        let den: u128 = hooks.iter().map(|&h| h as u128).product();
        (num / den) as u64
    }

    /// Cells `(row, col)`, 0-based, in row-reading order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
            .collect()
    }
}

pub fn hook_dim(lambda: &Partition) -> u64 {
    lambda.hook_dim()
}

/// All partitions of `n`, in reverse lexicographic order (`(n)` first).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: acc.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            acc.push(p);
            go(rest - p, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` with no part repeated `e` or more times.
pub fn e_regular(n: usize, e: QuantumChar) -> Vec<Partition> {
    partitions(n)
        .into_iter()
        .filter(|p| p.is_e_regular(e))
        .collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", xs.join(","))
    }
}

impl FromStr for Partition {
    type Err = CombinatoricsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "∅" {
            return Ok(Partition::empty());
        }
        let inner = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| CombinatoricsError::Parse(s.to_string()))?;
        let parts = inner
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CombinatoricsError::Parse(s.to_string()))?;
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(CombinatoricsError::Parse(s.to_string()));
        }
        Ok(Partition { parts })
    }
}

/// `d`-tuple of partitions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct MultiPartition {
    components: Vec<Partition>,
}

impl MultiPartition {
    pub fn new(components: Vec<Partition>) -> Self {
        MultiPartition { components }
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn component(&self, a: usize) -> &Partition {
        &self.components[a - 1]
    }

    pub fn d(&self) -> usize {
        self.components.len()
    }

    pub fn size(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }

    /// `μ` with `μ_a = |λ^a|`.
    pub fn composition(&self) -> Composition {
        Composition::new(self.components.iter().map(Partition::size).collect())
    }

    /// `𝛌^σ` with `(𝛌^σ)^{σ(a)} = λ^a`.
    pub fn act(&self, sigma: &super::Permutation) -> Self {
        let mut components = vec![Partition::empty(); self.d()];
        for (a, lam) in self.components.iter().enumerate() {
            components[sigma.apply(a + 1) - 1] = lam.clone();
        }
        MultiPartition { components }
    }
}

/// All `d`-multipartitions of `n` with `e`-regular components, grouped by
/// composition in lexicographic order, components in [`partitions`] order.
pub fn multipartitions(d: usize, n: usize, e: QuantumChar) -> Vec<MultiPartition> {
    compositions(d, n)
        .iter()
        .flat_map(|mu| multipartitions_of(mu, e))
        .collect()
}

/// `Λ^e_μ`: multipartitions with `|λ^a| = μ_a` and `e`-regular components.
pub fn multipartitions_of(mu: &Composition, e: QuantumChar) -> Vec<MultiPartition> {
    let mut out = vec![Vec::new()];
    for &m in mu.parts() {
        let choices = e_regular(m, e);
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Partition>| {
                choices.iter().map(move |p| {
                    let mut next = prefix.clone();
                    next.push(p.clone());
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(MultiPartition::new).collect()
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.components.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", xs.join(","))
    }
}

impl FromStr for MultiPartition {
    type Err = CombinatoricsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CombinatoricsError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let mut components = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (k, ch) in inner.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    components.push(inner[start..k].parse::<Partition>()?);
                    start = k + 1;
                }
                _ => {}
            }
            if depth < 0 {
                return Err(bad());
            }
        }
        if depth != 0 {
            return Err(bad());
        }
        if !inner.trim().is_empty() {
            components.push(inner[start..].parse::<Partition>()?);
        }
        Ok(MultiPartition { components })
    }
}

/// The quantum characteristic `e`: a positive integer or `∞`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum QuantumChar {
    Finite(u32),
    Infinite,
}

impl fmt::Display for QuantumChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantumChar::Finite(e) => write!(f, "{}", e),
            QuantumChar::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for QuantumChar {
    type Err = CombinatoricsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(QuantumChar::Infinite),
            t => match t.parse::<u32>() {
                Ok(e) if e >= 2 => Ok(QuantumChar::Finite(e)),
                _ => Err(CombinatoricsError::Parse(s.to_string())),
            },
        }
    }
}

/// `min { i > 0 : 1 + θ² + … + θ^{2i−2} = 0 }` for a specialized value `θ`
/// of `q`, or `∞` when no such `i` exists.
pub fn quantum_characteristic(theta: &crate::coefficients::Cyclotomic) -> QuantumChar {
    use crate::coefficients::Field;
    let t2 = theta.mul_ref(theta);
    if t2.is_one() || t2.is_zero() {
        return QuantumChar::Infinite;
    }
    // A vanishing partial sum forces θ² to be a root of unity in Q(ζ_N), whose
    // order divides 2N (or 2 when θ is rational).
    let bound = 4 * theta.order().unwrap_or(2) + 4;
    let mut sum = crate::coefficients::Cyclotomic::one();
    let mut power = crate::coefficients::Cyclotomic::one();
    for i in 2..=bound {
        power = power.mul_ref(&t2);
        sum = sum.add_ref(&power);
        if sum.is_zero() {
            return QuantumChar::Finite(i);
        }
    }
    QuantumChar::Infinite
}

/// Standard Young tableau, stored as the cell of each entry `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StandardTableau {
    cells: Vec<(usize, usize)>,
}

impl StandardTableau {
    /// 0-based `(row, col)` of entry `k` in `1..=n`.
    pub fn cell(&self, k: usize) -> (usize, usize) {
        self.cells[k - 1]
    }

    pub fn row(&self, k: usize) -> usize {
        self.cells[k - 1].0
    }

    /// `col − row` of entry `k`.
    pub fn content(&self, k: usize) -> i64 {
        let (r, c) = self.cells[k - 1];
        c as i64 - r as i64
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    /// The tableau with entries `k` and `k+1` exchanged, if still standard.
    pub fn swap(&self, k: usize) -> Option<Self> {
        let (a, b) = (self.cells[k - 1], self.cells[k]);
        if a.0 == b.0 || a.1 == b.1 {
            return None;
        }
        let mut cells = self.cells.clone();
        cells.swap(k - 1, k);
        Some(StandardTableau { cells })
    }
}

/// Standard tableaux of shape `λ`, ordered by the row sequence of entries
/// `1..=n` read lexicographically.
pub fn standard_tableaux(lambda: &Partition) -> Vec<StandardTableau> {
    fn go(
        shape: &[usize],
        filled: &mut Vec<usize>,
        cells: &mut Vec<(usize, usize)>,
        out: &mut Vec<StandardTableau>,
    ) {
        if cells.len() == shape.iter().sum::<usize>() {
            out.push(StandardTableau {
                cells: cells.clone(),
            });
            return;
        }
        for r in 0..shape.len() {
            let c = filled[r];
            let fits = c < shape[r] && (r == 0 || filled[r - 1] > c);
            if fits {
                filled[r] += 1;
                cells.push((r, c));
                go(shape, filled, cells, out);
                cells.pop();
                filled[r] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    let mut filled = vec![0; lambda.parts().len()];
    go(lambda.parts(), &mut filled, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{Cyclotomic, Field};

    #[test]
    fn multinomials() {
        assert_eq!(Composition::new(vec![1, 1]).multinomial(), 2);
        assert_eq!(Composition::new(vec![4]).multinomial(), 1);
        assert_eq!(Composition::new(vec![2, 1]).multinomial(), 3);
        for d in 1..=4 {
            for n in 0..=4 {
                let total: u64 = compositions(d, n)
                    .iter()
                    .map(Composition::multinomial)
                    .sum();
                assert_eq!(total, (d as u64).pow(n as u32));
            }
        }
    }

    #[test]
    fn hook_dimensions() {
        assert_eq!(Partition::new(vec![3]).hook_dim(), 1);
        assert_eq!(Partition::new(vec![2, 1]).hook_dim(), 2);
        assert_eq!(Partition::new(vec![2, 2]).hook_dim(), 2);
        for m in 1..=6usize {
            let total: u64 = partitions(m).iter().map(|p| p.hook_dim().pow(2)).sum();
            assert_eq!(total, (1..=m as u64).product::<u64>());
            for p in partitions(m) {
                assert_eq!(standard_tableaux(&p).len() as u64, p.hook_dim());
            }
        }
    }

    #[test]
    fn regular_partitions() {
        let inf = e_regular(3, QuantumChar::Infinite);
        assert_eq!(inf.len(), 3);
        let two: Vec<String> = e_regular(3, QuantumChar::Finite(2))
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(two, vec!["(3)", "(2,1)"]);
        assert_eq!(e_regular(2, QuantumChar::Finite(2)).len(), 1);
    }

    #[test]
    fn multipartition_text() {
        let m: MultiPartition = "((2),())".parse().unwrap();
        assert_eq!(m.composition().parts(), &[2, 0]);
        assert_eq!(m.to_string(), "((2),())");
        let m: MultiPartition = "((1,1),∅,(1))".parse().unwrap();
        assert_eq!(m.d(), 3);
        assert_eq!(multipartitions(2, 2, QuantumChar::Infinite).len(), 5);
        assert_eq!(multipartitions(2, 2, QuantumChar::Finite(2)).len(), 3);
    }

    #[test]
    fn quantum_characteristics() {
        // θ = i: θ² = −1, so 1 + θ² = 0.
        assert_eq!(
            quantum_characteristic(&Cyclotomic::zeta(4)),
            QuantumChar::Finite(2)
        );
        assert_eq!(
            quantum_characteristic(&Cyclotomic::zeta(6)),
            QuantumChar::Finite(3)
        );
        assert_eq!(
            quantum_characteristic(&Cyclotomic::from_int(2)),
            QuantumChar::Infinite
        );
        assert_eq!(
            quantum_characteristic(&Cyclotomic::one()),
            QuantumChar::Infinite
        );
    }
}
