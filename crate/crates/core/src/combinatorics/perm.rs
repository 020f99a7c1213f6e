use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use super::CombinatoricsError;

/// Bijection of `{1..m}` stored 0-based in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m as u8).collect(),
        }
    }

    /// From 1-based images `w(1), …, w(m)`.
    pub fn from_images(images: &[usize]) -> Result<Self, CombinatoricsError> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in images {
            if x == 0 || x > m || seen[x - 1] {
                return Err(CombinatoricsError::NotAPermutation(images.to_vec()));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&x| (x - 1) as u8).collect(),
        })
    }

    /// The adjacent transposition `π_i = (i, i+1)` of `{1..m}`.
    pub fn simple(m: usize, i: usize) -> Self {
        assert!(i >= 1 && i < m, "simple transposition index out of range");
        let mut p = Self::identity(m);
        p.images.swap(i - 1, i);
        p
    }

    /// The transposition `(a b)` of `{1..m}`.
    pub fn transposition(m: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(m);
        p.images.swap(a - 1, b - 1);
        p
    }

    /// Cyclic shift `a ↦ a + k (mod m)` on `{1..m}`.
    pub fn shift(m: usize, k: usize) -> Self {
        Permutation {
            images: (0..m).map(|a| ((a + k) % m) as u8).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `w(a)` for `a` in `1..=m`.
    pub fn apply(&self, a: usize) -> usize {
        self.images[a - 1] as usize + 1
    }

    /// 1-based one-line notation.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    /// `(self ∘ other)(a) = self(other(a))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.degree()];
        for (a, &x) in self.images.iter().enumerate() {
            inv[x as usize] = a as u8;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(a, &x)| a == x as usize)
    }

    /// Inversion count.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `ℓ(w π_i) < ℓ(w)`, i.e. `w(i) > w(i+1)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.images[i - 1] > self.images[i]
    }

    /// `w π_i`: swaps positions `i` and `i+1` of the one-line notation.
    pub fn right_mul_simple(&self, i: usize) -> Self {
        let mut p = self.clone();
        p.images.swap(i - 1, i);
        p
    }

    /// A reduced word `[i_1, …, i_k]` with `w = π_{i_1} ⋯ π_{i_k}`.
    ///
    /// Built by stripping right descents, so the last letter is the largest
    /// descent position.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while let Some(i) = (1..w.degree()).rev().find(|&i| w.has_right_descent(i)) {
            word.push(i);
            w = w.right_mul_simple(i);
        }
        word.reverse();
        word
    }

    /// Product of simple transpositions along a word.
    pub fn from_word(m: usize, word: &[usize]) -> Self {
        word.iter()
            .fold(Self::identity(m), |w, &i| w.right_mul_simple(i))
    }

    /// Lexicographic rank among all permutations of the same degree.
    pub fn lex_index(&self) -> usize {
        let m = self.degree();
        let mut idx = 0;
        for i in 0..m {
            let smaller = self.images[i + 1..]
                .iter()
                .filter(|&&x| x < self.images[i])
                .count();
            idx = idx * (m - i) + smaller;
        }
        idx
    }

    /// Lengths of the cycles, weakly decreasing.
    pub fn cycle_type(&self) -> Vec<usize> {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut cycles = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut a = start;
            while !seen[a] {
                seen[a] = true;
                a = self.images[a] as usize;
                len += 1;
            }
            cycles.push(len);
        }
        cycles.sort_unstable_by(|a, b| b.cmp(a));
        cycles
    }
}

impl fmt::Display for Permutation {
    /// One-line form `[2 1 3]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.images().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Permutation {
    type Err = CombinatoricsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| CombinatoricsError::Parse(s.to_string()))?;
        let images = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CombinatoricsError::Parse(s.to_string()))?;
        Self::from_images(&images)
    }
}

/// All permutations of `{1..m}` in lexicographic order, with the tables the
/// multiplication kernels read.
#[derive(Debug)]
pub struct SymmetricGroup {
    degree: usize,
    elements: Vec<Permutation>,
    lengths: Vec<usize>,
    words: Vec<Vec<usize>>,
    /// `right_simple[w][i-1]` is the index of `w π_i`.
    right_simple: Vec<Vec<u32>>,
}

impl SymmetricGroup {
    fn build(m: usize) -> Self {
        let mut elements = Vec::new();
        let mut current: Vec<usize> = (1..=m).collect();
        loop {
            elements.push(Permutation::from_images(&current).expect("valid permutation"));
            if !next_permutation(&mut current) {
                break;
            }
        }
        let lengths = elements.iter().map(Permutation::length).collect();
        let words = elements.iter().map(Permutation::reduced_word).collect();
        let right_simple = elements
            .iter()
            .map(|w| {
                (1..m)
                    .map(|i| w.right_mul_simple(i).lex_index() as u32)
                    .collect()
            })
            .collect();
        SymmetricGroup {
            degree: m,
            elements,
            lengths,
            words,
            right_simple,
        }
    }

    /// Shared table for `S_m`.
    pub fn get(m: usize) -> Arc<SymmetricGroup> {
        static CACHE: OnceLock<RwLock<HashMap<usize, Arc<SymmetricGroup>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(g) = cache.read().expect("group cache poisoned").get(&m) {
            return g.clone();
        }
        let g = Arc::new(Self::build(m));
        cache
            .write()
            .expect("group cache poisoned")
            .entry(m)
            .or_insert(g)
            .clone()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &Permutation {
        &self.elements[idx]
    }

    pub fn index_of(&self, w: &Permutation) -> usize {
        debug_assert_eq!(w.degree(), self.degree);
        w.lex_index()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn length(&self, idx: usize) -> usize {
        self.lengths[idx]
    }

    pub fn reduced_word(&self, idx: usize) -> &[usize] {
        &self.words[idx]
    }

    pub fn right_mul_simple(&self, idx: usize, i: usize) -> usize {
        self.right_simple[idx][i - 1] as usize
    }

    pub fn has_right_descent(&self, idx: usize, i: usize) -> bool {
        self.elements[idx].has_right_descent(i)
    }
}

/// Advance to the next permutation in lexicographic order.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A reduced word for `w` (see [`Permutation::reduced_word`]).
pub fn reduced_word(w: &Permutation) -> Vec<usize> {
    w.reduced_word()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_words() {
        assert!(Permutation::identity(3).reduced_word().is_empty());
        assert_eq!(Permutation::simple(2, 1).reduced_word(), vec![1]);
        let w0: Permutation = "[3 2 1]".parse().unwrap();
        let word = w0.reduced_word();
        assert_eq!(word.len(), 3);
        assert_eq!(Permutation::from_word(3, &word), w0);
    }

    #[test]
    fn lex_order_indices() {
        let g = SymmetricGroup::get(4);
        assert_eq!(g.order(), 24);
        for (k, w) in g.elements().iter().enumerate() {
            assert_eq!(w.lex_index(), k);
            assert_eq!(Permutation::from_word(4, g.reduced_word(k)), *w);
            assert_eq!(g.reduced_word(k).len(), g.length(k));
        }
    }

    #[test]
    fn parse_and_display() {
        let w: Permutation = "[2 1 3]".parse().unwrap();
        assert_eq!(w.to_string(), "[2 1 3]");
        assert!("[1 1]".parse::<Permutation>().is_err());
        assert_eq!(w.compose(&w.inverse()), Permutation::identity(3));
    }
}
