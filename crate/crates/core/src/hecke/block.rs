use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use super::algebra::TensorElement;
use crate::coefficients::Scalar;
use crate::combinatorics::{compositions, Composition, OrderedPartition};
use crate::linalg::SparseVec;

/// One diagonal block `Mat_{m_μ}(H^μ)`.
#[derive(Debug)]
pub struct BlockShape {
    pub mu: Arc<Composition>,
    /// Indices (into `P_d(n)`) of the rows, lexicographic.
    pub rows: Vec<usize>,
    /// `Π_a μ_a!`.
    pub hecke_dim: usize,
    offset: usize,
}

impl BlockShape {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn linear_dim(&self) -> usize {
        self.rows.len() * self.rows.len() * self.hecke_dim
    }
}

/// Block decomposition of the target of `Ψ` for fixed `(d, n)`: one block
/// per composition in lexicographic order, rows by lexicographic `P(μ)`.
#[derive(Debug)]
pub struct BlockLayout {
    d: usize,
    n: usize,
    blocks: Vec<BlockShape>,
    /// Part index → (block, row).
    locate: Vec<(u32, u32)>,
    linear_dim: usize,
}

impl BlockLayout {
    pub fn get(d: usize, n: usize) -> Arc<BlockLayout> {
        static CACHE: OnceLock<RwLock<HashMap<(usize, usize), Arc<BlockLayout>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(l) = cache.read().expect("layout cache poisoned").get(&(d, n)) {
            return l.clone();
        }
        let built = Arc::new(Self::build(d, n));
        cache
            .write()
            .expect("layout cache poisoned")
            .entry((d, n))
            .or_insert(built)
            .clone()
    }

    fn build(d: usize, n: usize) -> Self {
        let mut by_mu: BTreeMap<Composition, Vec<usize>> = compositions(d, n)
            .into_iter()
            .map(|mu| (mu, Vec::new()))
            .collect();
        let total = d.pow(n as u32);
        for idx in 0..total {
            let part = OrderedPartition::from_index(d, n, idx);
            by_mu
                .get_mut(&part.composition())
                .expect("every composition listed")
                .push(idx);
        }
        let mut locate = vec![(0, 0); total];
        let mut blocks = Vec::with_capacity(by_mu.len());
        let mut offset = 0;
        for (b, (mu, rows)) in by_mu.into_iter().enumerate() {
            for (r, &idx) in rows.iter().enumerate() {
                locate[idx] = (b as u32, r as u32);
            }
            let hecke_dim = TensorElement::dimension(&mu);
            let shape = BlockShape {
                mu: Arc::new(mu),
                rows,
                hecke_dim,
                offset,
            };
            offset += shape.linear_dim();
            blocks.push(shape);
        }
        BlockLayout {
            d,
            n,
            blocks,
            locate,
            linear_dim: offset,
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[BlockShape] {
        &self.blocks
    }

    /// `(block, row)` of the ordered partition with index `part`.
    pub fn locate(&self, part: usize) -> (usize, usize) {
        let (b, r) = self.locate[part];
        (b as usize, r as usize)
    }

    /// `Σ_μ m_μ² Π_a μ_a!`.
    pub fn linear_dim(&self) -> usize {
        self.linear_dim
    }
}

/// Element of `⊕_μ Mat_{m_μ}(H^μ)`, stored sparsely per block.
#[derive(Clone)]
pub struct BlockMatrix {
    layout: Arc<BlockLayout>,
    blocks: Vec<BTreeMap<(u32, u32), TensorElement>>,
}

impl BlockMatrix {
    pub fn zero(layout: &Arc<BlockLayout>) -> Self {
        BlockMatrix {
            layout: layout.clone(),
            blocks: vec![BTreeMap::new(); layout.blocks.len()],
        }
    }

    pub fn identity(layout: &Arc<BlockLayout>) -> Self {
        let mut out = Self::zero(layout);
        for (b, shape) in layout.blocks.iter().enumerate() {
            for r in 0..shape.size() {
                out.blocks[b].insert((r as u32, r as u32), TensorElement::one(&shape.mu));
            }
        }
        out
    }

    pub fn layout(&self) -> &Arc<BlockLayout> {
        &self.layout
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(BTreeMap::is_empty)
    }

    /// Entry `(row, col)` of block `b`; `None` when zero.
    pub fn entry(&self, b: usize, row: usize, col: usize) -> Option<&TensorElement> {
        self.blocks[b].get(&(row as u32, col as u32))
    }

    /// Nonzero entries as `(block, row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &TensorElement)> + '_ {
        self.blocks.iter().enumerate().flat_map(|(b, m)| {
            m.iter()
                .map(move |(&(r, c), x)| (b, r as usize, c as usize, x))
        })
    }

    /// Add `x` at `(row, col)` of block `b`.
    pub fn add_entry(&mut self, b: usize, row: usize, col: usize, x: &TensorElement) {
        let key = (row as u32, col as u32);
        let sum = match self.blocks[b].get(&key) {
            Some(y) => y.add_ref(x),
            None => x.clone(),
        };
        if sum.is_zero() {
            self.blocks[b].remove(&key);
        } else {
            self.blocks[b].insert(key, sum);
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, r, c, x) in other.entries() {
            out.add_entry(b, r, c, x);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero(&self.layout);
        for (b, r, c, x) in self.entries() {
            out.add_entry(b, r, c, &x.scale(s));
        }
        out
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        assert!(
            Arc::ptr_eq(&self.layout, &other.layout),
            "block matrices of different shape"
        );
        let mut out = Self::zero(&self.layout);
        for (b, (lhs, rhs)) in self.blocks.iter().zip(&other.blocks).enumerate() {
            let mut rhs_rows: BTreeMap<u32, Vec<(u32, &TensorElement)>> = BTreeMap::new();
            for (&(k, c), y) in rhs {
                rhs_rows.entry(k).or_default().push((c, y));
            }
            for (&(r, k), x) in lhs {
                for &(c, y) in rhs_rows.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
                    out.add_entry(b, r as usize, c as usize, &x.mul_ref(y));
                }
            }
        }
        out
    }

    /// Coordinates in the linear space of dimension
    /// [`BlockLayout::linear_dim`], columns increasing.
    pub fn flatten(&self) -> SparseVec<Scalar> {
        let mut out = Vec::new();
        for (b, shape) in self.layout.blocks.iter().enumerate() {
            let m = shape.size();
            for (&(r, c), x) in &self.blocks[b] {
                let cell = shape.offset + (r as usize * m + c as usize) * shape.hecke_dim;
                for (key, s) in x.terms() {
                    out.push((cell + TensorElement::flat_index(&shape.mu, key), s.clone()));
                }
            }
        }
        out.sort_by_key(|(c, _)| *c);
        out
    }
}

impl PartialEq for BlockMatrix {
    fn eq(&self, other: &Self) -> bool {
        (self.layout.d, self.layout.n) == (other.layout.d, other.layout.n)
            && self.blocks == other.blocks
    }
}

impl Eq for BlockMatrix {}

impl fmt::Debug for BlockMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (b, r, c, x) in self.entries() {
            m.entry(&(self.layout.blocks[b].mu.to_string(), r, c), x);
        }
        m.finish()
    }
}
