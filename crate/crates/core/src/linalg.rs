//! Exact rank and membership for sparse vectors over Laurent polynomials.
//!
//! Rank is taken over the fraction field of the coefficient ring. The exact
//! echelon is fraction-free; the specialized echelon substitutes a nonzero
//! rational for `q`, which can only lower the rank.

use std::collections::BTreeMap;

use crate::coefficients::{CoefficientError, Cyclotomic, Field, LaurentPoly, Rational, Scalar};

/// Sparse vector: `(column, entry)` pairs, columns strictly increasing.
pub type SparseVec<T> = Vec<(usize, T)>;

fn lookup<T>(v: &SparseVec<T>, col: usize) -> Option<&T> {
    v.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|k| &v[k].1)
}

fn simplicity<C: Field>(x: &LaurentPoly<C>) -> (usize, i32) {
    let span = x.max_exp().unwrap_or(0) - x.min_exp().unwrap_or(0);
    (x.terms().len(), span)
}

/// Incremental fraction-free row echelon over `C[q, q⁻¹]`.
#[derive(Clone, Debug)]
pub struct LaurentEchelon<C: Field> {
    rows: Vec<SparseVec<LaurentPoly<C>>>,
    pivots: Vec<usize>,
}

impl<C: Field> Default for LaurentEchelon<C> {
    fn default() -> Self {
        LaurentEchelon {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }
}

impl<C: Field> LaurentEchelon<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce against the stored rows in insertion order:
    /// `v ← P_r v − v_c r` clears pivot column `c` of row `r`.
    pub fn reduce(&self, v: SparseVec<LaurentPoly<C>>) -> SparseVec<LaurentPoly<C>> {
        let mut v = v;
        v.retain(|(_, x)| !x.is_zero());
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let Some(vc) = lookup(&v, col).cloned() else {
                continue;
            };
            let pr = lookup(row, col).expect("pivot entry present");
            v = combine(&v, pr, row, &vc);
            v = primitive(v);
            if v.is_empty() {
                break;
            }
        }
        v
    }

    pub fn contains(&self, v: SparseVec<LaurentPoly<C>>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Add `v`; returns whether it was independent of the stored rows.
    pub fn insert(&mut self, v: SparseVec<LaurentPoly<C>>) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let col = r
            .iter()
            .min_by_key(|(c, x)| (simplicity(x), *c))
            .map(|(c, _)| *c)
            .expect("nonzero row");
        self.rows.push(r);
        self.pivots.push(col);
        true
    }
}

/// `a · v − b · r`.
fn combine<C: Field>(
    v: &SparseVec<LaurentPoly<C>>,
    a: &LaurentPoly<C>,
    r: &SparseVec<LaurentPoly<C>>,
    b: &LaurentPoly<C>,
) -> SparseVec<LaurentPoly<C>> {
    let mut out = Vec::with_capacity(v.len() + r.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < r.len() {
        let take_v = j >= r.len() || (i < v.len() && v[i].0 < r[j].0);
        let take_r = i >= v.len() || (j < r.len() && r[j].0 < v[i].0);
        let (col, x) = if take_v {
            i += 1;
            (v[i - 1].0, a.mul_ref(&v[i - 1].1))
        } else if take_r {
            j += 1;
            (r[j - 1].0, b.mul_ref(&r[j - 1].1).neg_ref())
        } else {
            i += 1;
            j += 1;
            (
                v[i - 1].0,
                a.mul_ref(&v[i - 1].1).sub_ref(&b.mul_ref(&r[j - 1].1)),
            )
        };
        if !x.is_zero() {
            out.push((col, x));
        }
    }
    out
}

/// Divide by the content gcd and normalize the unit factor.
fn primitive<C: Field>(v: SparseVec<LaurentPoly<C>>) -> SparseVec<LaurentPoly<C>> {
    if v.is_empty() {
        return v;
    }
    let mut g = v[0].1.clone();
    for (_, x) in &v[1..] {
        if g.as_constant().is_some() {
            break;
        }
        g = g.gcd(x);
    }
    let lo = v.iter().filter_map(|(_, x)| x.min_exp()).min().unwrap_or(0);
    let lead = v[0]
        .1
        .terms()
        .last()
        .map(|(_, c)| c.clone())
        .expect("nonzero");
    let unit = lead.inv().expect("nonzero coefficient");
    let divide = g.terms().len() > 1;
    v.into_iter()
        .map(|(c, x)| {
            let y = if divide {
                x.div_exact(&g).expect("gcd divides every entry")
            } else {
                x
            };
            (c, y.shift(-lo).scale(&unit))
        })
        .collect()
}

/// Incremental reduced echelon over a field.
#[derive(Clone, Debug)]
pub struct FieldEchelon<C: Field> {
    rows: Vec<SparseVec<C>>,
    pivots: Vec<usize>,
}

impl<C: Field> Default for FieldEchelon<C> {
    fn default() -> Self {
        FieldEchelon {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }
}

impl<C: Field> FieldEchelon<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: SparseVec<C>) -> SparseVec<C> {
        let mut v: BTreeMap<usize, C> = v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let Some(f) = v.get(&col).cloned() else {
                continue;
            };
            for (c, x) in row {
                let e = v.entry(*c).or_insert_with(C::zero);
                *e = e.sub_ref(&f.mul_ref(x));
            }
            v.retain(|_, x| !x.is_zero());
        }
        v.into_iter().collect()
    }

    pub fn insert(&mut self, v: SparseVec<C>) -> bool {
        let r = self.reduce(v);
        let Some((col, p)) = r.first().cloned() else {
            return false;
        };
        let inv = p.inv().expect("nonzero pivot");
        let r: SparseVec<C> = r.into_iter().map(|(c, x)| (c, x.mul_ref(&inv))).collect();
        self.rows.push(r);
        self.pivots.push(col);
        true
    }
}

/// Exact echelon over scalar vectors, switching to cyclotomic coefficients
/// the first time a non-rational entry appears.
#[derive(Clone, Debug)]
pub enum ScalarEchelon {
    Rational(LaurentEchelon<Rational>),
    Cyclotomic(LaurentEchelon<Cyclotomic>),
}

impl Default for ScalarEchelon {
    fn default() -> Self {
        ScalarEchelon::Rational(LaurentEchelon::new())
    }
}

fn as_rational(v: &SparseVec<Scalar>) -> Option<SparseVec<LaurentPoly<Rational>>> {
    v.iter()
        .map(|(c, x)| x.as_rational().map(|p| (*c, p.clone())))
        .collect()
}

fn as_cyclotomic(v: &SparseVec<Scalar>) -> SparseVec<LaurentPoly<Cyclotomic>> {
    v.iter().map(|(c, x)| (*c, x.to_cyclotomic())).collect()
}

fn embed(v: &SparseVec<LaurentPoly<Rational>>) -> SparseVec<LaurentPoly<Cyclotomic>> {
    v.iter()
        .map(|(c, x)| (*c, x.map_coeffs(|r| Cyclotomic::rational(r.clone()))))
        .collect()
}

impl ScalarEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        match self {
            ScalarEchelon::Rational(e) => e.rank(),
            ScalarEchelon::Cyclotomic(e) => e.rank(),
        }
    }

    fn promote(&mut self) {
        if let ScalarEchelon::Rational(e) = self {
            let mut c = LaurentEchelon::new();
            c.rows = e.rows.iter().map(embed).collect();
            c.pivots = e.pivots.clone();
            *self = ScalarEchelon::Cyclotomic(c);
        }
    }

    pub fn insert(&mut self, v: &SparseVec<Scalar>) -> bool {
        if let ScalarEchelon::Rational(e) = self {
            if let Some(r) = as_rational(v) {
                return e.insert(r);
            }
            self.promote();
        }
        match self {
            ScalarEchelon::Cyclotomic(e) => e.insert(as_cyclotomic(v)),
            ScalarEchelon::Rational(_) => unreachable!("promoted above"),
        }
    }

    pub fn contains(&self, v: &SparseVec<Scalar>) -> bool {
        match self {
            ScalarEchelon::Rational(e) => match as_rational(v) {
                Some(r) => e.contains(r),
                None => LaurentEchelon {
                    rows: e.rows.iter().map(embed).collect(),
                    pivots: e.pivots.clone(),
                }
                .contains(as_cyclotomic(v)),
            },
            ScalarEchelon::Cyclotomic(e) => e.contains(as_cyclotomic(v)),
        }
    }
}

/// Exact rank over the fraction field.
pub fn exact_rank<'a>(vectors: impl IntoIterator<Item = &'a SparseVec<Scalar>>) -> usize {
    let mut e = ScalarEchelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Rank after substituting `q = q0`; a lower bound for [`exact_rank`].
pub fn specialized_rank<'a>(
    vectors: impl IntoIterator<Item = &'a SparseVec<Scalar>>,
    q0: &Rational,
) -> Result<usize, CoefficientError> {
    let mut e: FieldEchelon<Cyclotomic> = FieldEchelon::new();
    for v in vectors {
        let s: SparseVec<Cyclotomic> = v
            .iter()
            .map(|(c, x)| x.eval(q0).map(|y| (*c, y)))
            .collect::<Result<_, _>>()?;
        e.insert(s);
    }
    Ok(e.rank())
}
