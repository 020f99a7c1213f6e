use std::fmt;
use std::str::FromStr;

use super::perm::Permutation;
use super::{CombinatoricsError, Composition};

/// Ordered partition `(I_1, …, I_d)` of `{1..n}`, stored as the label map
/// `pos(j) = a` iff `j ∈ I_a`. Labels are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    d: u8,
    pos: Vec<u8>,
}

impl OrderedPartition {
    pub fn new(d: usize, pos: &[usize]) -> Result<Self, CombinatoricsError> {
        if d == 0 || pos.iter().any(|&a| a == 0 || a > d) {
            return Err(CombinatoricsError::LabelOutOfRange {
                d,
                pos: pos.to_vec(),
            });
        }
        Ok(OrderedPartition {
            d: d as u8,
            pos: pos.iter().map(|&a| a as u8).collect(),
        })
    }

    /// Inverse of [`OrderedPartition::index`].
    pub fn from_index(d: usize, n: usize, mut idx: usize) -> Self {
        let mut pos = vec![0u8; n];
        for slot in pos.iter_mut().rev() {
            *slot = (idx % d) as u8 + 1;
            idx /= d;
        }
        OrderedPartition { d: d as u8, pos }
    }

    pub fn d(&self) -> usize {
        self.d as usize
    }

    pub fn n(&self) -> usize {
        self.pos.len()
    }

    /// `pos_j(I)` for `j` in `1..=n`.
    pub fn pos(&self, j: usize) -> usize {
        self.pos[j - 1] as usize
    }

    pub fn labels(&self) -> Vec<usize> {
        self.pos.iter().map(|&a| a as usize).collect()
    }

    /// The part `I_a`, increasing.
    pub fn part(&self, a: usize) -> Vec<usize> {
        (1..=self.n()).filter(|&j| self.pos(j) == a).collect()
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        (1..=self.d()).map(|a| self.part(a)).collect()
    }

    /// Part sizes `(|I_1|, …, |I_d|)`.
    pub fn composition(&self) -> Composition {
        let mut sizes = vec![0usize; self.d()];
        for &a in &self.pos {
            sizes[a as usize - 1] += 1;
        }
        Composition::new(sizes)
    }

    /// Position in the lexicographic order of label sequences.
    pub fn index(&self) -> usize {
        self.pos
            .iter()
            .fold(0, |acc, &a| acc * self.d() + (a as usize - 1))
    }

    /// `π(I) = (π(I_1), …, π(I_d))`, i.e. `pos'(π(j)) = pos(j)`.
    pub fn act_sn(&self, pi: &Permutation) -> Self {
        assert_eq!(pi.degree(), self.n(), "permutation degree must equal n");
        let mut pos = vec![0u8; self.n()];
        for (j, &a) in self.pos.iter().enumerate() {
            pos[pi.raw()[j] as usize] = a;
        }
        OrderedPartition { d: self.d, pos }
    }

    /// `I^σ`, relabeling parts so that `pos_j(I^σ) = σ(pos_j(I))`.
    pub fn act_sd(&self, sigma: &Permutation) -> Self {
        assert_eq!(sigma.degree(), self.d(), "permutation degree must equal d");
        OrderedPartition {
            d: self.d,
            pos: self
                .pos
                .iter()
                .map(|&a| sigma.raw()[a as usize - 1] + 1)
                .collect(),
        }
    }

    /// `s_{i,j}(I)`: swap the labels of `i` and `j`.
    pub fn swap_points(&self, i: usize, j: usize) -> Self {
        let mut pos = self.pos.clone();
        pos.swap(i - 1, j - 1);
        OrderedPartition { d: self.d, pos }
    }

    /// The unordered set partition formed by the nonempty parts.
    pub fn orbit_class(&self) -> SetPartition {
        let mut blocks: Vec<Vec<usize>> =
            self.parts().into_iter().filter(|b| !b.is_empty()).collect();
        blocks.sort();
        SetPartition { blocks }
    }
}

/// All `d^n` ordered partitions in lexicographic order of label sequences.
pub fn enumerate_ordered(d: usize, n: usize) -> Vec<OrderedPartition> {
    let count = d.pow(n as u32);
    (0..count)
        .map(|idx| OrderedPartition::from_index(d, n, idx))
        .collect()
}

/// The ordered partitions with part sizes `mu`, in lexicographic order.
pub fn ordered_with_composition(mu: &Composition) -> Vec<OrderedPartition> {
    enumerate_ordered(mu.d(), mu.n())
        .into_iter()
        .filter(|i| i.composition() == *mu)
        .collect()
}

impl fmt::Display for OrderedPartition {
    /// `{1,3|2|}`: parts in label order, empty parts allowed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for a in 1..=self.d() {
            if a > 1 {
                write!(f, "|")?;
            }
            let part: Vec<String> = self.part(a).iter().map(|j| j.to_string()).collect();
            write!(f, "{}", part.join(","))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for OrderedPartition {
    type Err = CombinatoricsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CombinatoricsError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split('|').collect();
        let d = parts.len();
        let mut labelled = Vec::new();
        for (a, part) in parts.iter().enumerate() {
            for tok in part.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let j: usize = tok.parse().map_err(|_| bad())?;
                labelled.push((j, a + 1));
            }
        }
        let n = labelled.len();
        let mut pos = vec![0usize; n];
        for (j, a) in labelled {
            if j == 0 || j > n || pos[j - 1] != 0 {
                return Err(bad());
            }
            pos[j - 1] = a;
        }
        Self::new(d, &pos)
    }
}

/// Unordered partition of `{1..n}` into nonempty blocks, each block
/// increasing and blocks ordered by least element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let xs: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", xs.join(","))
            })
            .collect();
        write!(f, "{{{}}}", blocks.join(","))
    }
}

/// All set partitions of `{1..n}` with at most `d` blocks, ordered by their
/// restricted-growth strings.
pub fn set_partitions(n: usize, d: usize) -> Vec<SetPartition> {
    fn go(j: usize, n: usize, d: usize, rgs: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
        if j == n {
            let k = rgs.iter().max().map_or(0, |m| m + 1);
            let mut blocks = vec![Vec::new(); k];
            for (x, &b) in rgs.iter().enumerate() {
                blocks[b].push(x + 1);
            }
            out.push(SetPartition { blocks });
            return;
        }
        let next = rgs.iter().max().map_or(0, |m| m + 1);
        for b in 0..=next.min(d.saturating_sub(1)) {
            rgs.push(b);
            go(j + 1, n, d, rgs, out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    go(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// `B_d(n)`: set partitions of `{1..n}` into at most `d` blocks.
pub fn count_classes(d: usize, n: usize) -> u64 {
    // Stirling numbers of the second kind, row by row.
    let mut s = vec![0u64; d + 1];
    s[0] = 1;
    for _ in 0..n {
        for k in (1..=d).rev() {
            s[k] = k as u64 * s[k] + s[k - 1];
        }
        s[0] = 0;
    }
    s.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_ordered(2, 2).len(), 4);
        let one = enumerate_ordered(1, 3);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].labels(), vec![1, 1, 1]);
        assert_eq!(enumerate_ordered(3, 2).len(), 9);
        for (k, i) in enumerate_ordered(3, 3).iter().enumerate() {
            assert_eq!(i.index(), k);
        }
    }

    #[test]
    fn actions_on_small_cases() {
        let i: OrderedPartition = "{1|2}".parse().unwrap();
        assert_eq!(i.act_sn(&Permutation::simple(2, 1)).to_string(), "{2|1}");
        let j: OrderedPartition = "{1,2|}".parse().unwrap();
        assert_eq!(j.act_sd(&Permutation::simple(2, 1)).to_string(), "{|1,2}");
        assert_eq!(j.act_sd(&Permutation::identity(2)), j);
    }

    #[test]
    fn class_counts() {
        assert_eq!(count_classes(2, 2), 2);
        assert_eq!(count_classes(2, 3), 4);
        assert_eq!(count_classes(3, 3), 5);
        for d in 1..=4 {
            for n in 1..=4 {
                assert_eq!(set_partitions(n, d).len() as u64, count_classes(d, n));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let i: OrderedPartition = "{1,3|2|}".parse().unwrap();
        assert_eq!(i.d(), 3);
        assert_eq!(i.labels(), vec![1, 2, 1]);
        assert_eq!(i.to_string(), "{1,3|2|}");
        assert!("{1|1}".parse::<OrderedPartition>().is_err());
    }
}
