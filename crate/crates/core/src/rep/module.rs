use std::collections::HashMap;

use rayon::prelude::*;

use super::labels::{inertia_sd, SimpleLabel};
use super::matrix::Matrix;
use super::RepError;
use crate::coefficients::{Field, LaurentPoly, RatFunc, Scalar};
use crate::combinatorics::{
    ordered_with_composition, reduced_word, standard_tableaux, OrderedPartition, Permutation,
    QuantumChar, StandardTableau,
};
use crate::presentations::{Literal, PresentationError, Target};

/// Basis `(v_{T_1} ⊗ … ⊗ v_{T_d}) ⊗ w_I` of `V^𝛌`, with `I` major in
/// lexicographic order and the tableau tuple minor (last component fastest).
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    d: usize,
    n: usize,
    parts: Vec<OrderedPartition>,
    part_index: HashMap<OrderedPartition, usize>,
    /// Standard tableaux of each component.
    tableaux: Vec<Vec<StandardTableau>>,
    tableau_index: Vec<HashMap<StandardTableau, usize>>,
    tuples: usize,
}

impl ModuleBasis {
    pub fn new(label: &SimpleLabel) -> Self {
        let parts = ordered_with_composition(&label.mu);
        let part_index = parts
            .iter()
            .enumerate()
            .map(|(k, i)| (i.clone(), k))
            .collect();
        let tableaux: Vec<Vec<StandardTableau>> = label
            .lambda
            .components()
            .iter()
            .map(standard_tableaux)
            .collect();
        let tableau_index = tableaux
            .iter()
            .map(|ts| ts.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect())
            .collect();
        let tuples = tableaux.iter().map(Vec::len).product();
        ModuleBasis {
            d: label.d(),
            n: label.n(),
            parts,
            part_index,
            tableaux,
            tableau_index,
            tuples,
        }
    }

    pub fn len(&self) -> usize {
        self.parts.len() * self.tuples
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn parts(&self) -> &[OrderedPartition] {
        &self.parts
    }

    pub fn tableaux(&self, a: usize) -> &[StandardTableau] {
        &self.tableaux[a - 1]
    }

    pub fn index(&self, part: &OrderedPartition, tuple: &[usize]) -> Option<usize> {
        let p = *self.part_index.get(part)?;
        let mut t = 0;
        for (k, &x) in tuple.iter().enumerate() {
            if x >= self.tableaux[k].len() {
                return None;
            }
            t = t * self.tableaux[k].len() + x;
        }
        Some(p * self.tuples + t)
    }

    /// `(I, tableau indices)` of basis vector `k`.
    pub fn vector(&self, k: usize) -> (&OrderedPartition, Vec<usize>) {
        let (p, mut t) = (k / self.tuples, k % self.tuples);
        let mut tuple = vec![0; self.d];
        for a in (0..self.d).rev() {
            let m = self.tableaux[a].len();
            tuple[a] = t % m;
            t /= m;
        }
        (&self.parts[p], tuple)
    }
}

/// Diagonal entry of `T_k` on `v_T` in seminormal form, `r` the content
/// difference of `k+1` and `k`: `(q − q⁻¹)/(1 − q^{−2r})`, so `q` on a row
/// and `−q⁻¹` on a column.
fn seminormal_diagonal(r: i64) -> RatFunc {
    let num = RatFunc::from_laurent(&LaurentPoly::q_minus_q_inv());
    let den =
        RatFunc::from_laurent(&LaurentPoly::one().sub_ref(&LaurentPoly::q_pow(-2 * r as i32)));
    num.div_ref(&den).expect("r is nonzero")
}

/// Explicit `V^𝛌` over `Q(q)`: matrices of `g_1..g_{n-1}`; idempotents are
/// built on demand.
#[derive(Clone, Debug)]
pub struct ModuleData {
    pub label: SimpleLabel,
    basis: ModuleBasis,
    g: Vec<Matrix<RatFunc>>,
}

impl ModuleData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &ModuleBasis {
        &self.basis
    }

    pub fn d(&self) -> usize {
        self.basis.d
    }

    pub fn n(&self) -> usize {
        self.basis.n
    }

    fn check_i(&self, i: usize) -> Result<(), RepError> {
        if i == 0 || i >= self.n() {
            return Err(RepError::InvalidParameters(format!(
                "g{i} needs 1 <= i < n = {}",
                self.n()
            )));
        }
        Ok(())
    }

    pub fn g(&self, i: usize) -> Result<&Matrix<RatFunc>, RepError> {
        self.check_i(i)?;
        Ok(&self.g[i - 1])
    }

    /// `g_i − (q − q⁻¹) e_i`.
    pub fn g_inv(&self, i: usize) -> Result<Matrix<RatFunc>, RepError> {
        let qq = RatFunc::from_laurent(&LaurentPoly::q_minus_q_inv()).neg_ref();
        Ok(self.g(i)?.add(&self.e_pair(i, i + 1)?.scale(&qq)))
    }

    /// Diagonal `0/1` matrix selecting the `w_I` with `keep(I)`.
    fn diagonal(&self, keep: impl Fn(&OrderedPartition) -> bool) -> Matrix<RatFunc> {
        let mut m = Matrix::zero(self.dim(), self.dim());
        for k in 0..self.dim() {
            if keep(self.basis.vector(k).0) {
                m.set(k, k, RatFunc::one());
            }
        }
        m
    }

    pub fn idempotent(&self, part: &OrderedPartition) -> Result<Matrix<RatFunc>, RepError> {
        if part.d() != self.d() || part.n() != self.n() {
            return Err(RepError::InvalidParameters(format!(
                "E{part} is not an idempotent of Y({},{})",
                self.d(),
                self.n()
            )));
        }
        Ok(self.diagonal(|i| i == part))
    }

    /// `e_{i,j} = Σ E_I` over `I` with `pos_i(I) = pos_j(I)`.
    pub fn e_pair(&self, i: usize, j: usize) -> Result<Matrix<RatFunc>, RepError> {
        if i == 0 || j == 0 || i > self.n() || j > self.n() {
            return Err(RepError::InvalidParameters(format!(
                "e({i},{j}) out of range for n = {}",
                self.n()
            )));
        }
        Ok(self.diagonal(|p| p.pos(i) == p.pos(j)))
    }

    /// Image of `g_w` for the reduced word of `w`.
    pub fn g_perm(&self, w: &Permutation, inverse: bool) -> Result<Matrix<RatFunc>, RepError> {
        if w.degree() != self.n() {
            return Err(RepError::InvalidParameters(format!(
                "g{w} is not in S_{}",
                self.n()
            )));
        }
        let mut out = Matrix::identity(self.dim());
        let word = reduced_word(w);
        if inverse {
            for &i in word.iter().rev() {
                out = out.mul(&self.g_inv(i)?);
            }
        } else {
            for &i in &word {
                out = out.mul(self.g(i)?);
            }
        }
        Ok(out)
    }
}

fn g_matrix(basis: &ModuleBasis, i: usize, diag: &HashMap<i64, RatFunc>) -> Matrix<RatFunc> {
    let dim = basis.len();
    let mut m = Matrix::zero(dim, dim);
    for col in 0..dim {
        let (part, tuple) = basis.vector(col);
        let a = part.pos(i);
        if a != part.pos(i + 1) {
            let row = basis
                .index(&part.swap_points(i, i + 1), &tuple)
                .expect("swapped part has the same composition");
            m.set(row, col, RatFunc::one());
            continue;
        }
        let k = part.part(a).iter().filter(|&&j| j <= i).count();
        let t = &basis.tableaux[a - 1][tuple[a - 1]];
        let r = t.content(k + 1) - t.content(k);
        let da = &diag[&r];
        m.set(col, col, da.clone());
        if let Some(t2) = t.swap(k) {
            let mut tuple2 = tuple.clone();
            tuple2[a - 1] = basis.tableau_index[a - 1][&t2];
            let row = basis
                .index(part, &tuple2)
                .expect("swapped tableau is standard");
            let coeff = if t.row(k) < t.row(k + 1) {
                RatFunc::one()
            } else {
                RatFunc::one().add_ref(&da.mul_ref(&diag[&-r]))
            };
            m.set(row, col, coeff);
        }
    }
    m
}

/// Builds `V^𝛌` at generic `q`. Hecke factors are in seminormal form on
/// standard tableaux; `T_k` has eigenvalues `q` and `−q⁻¹`.
pub fn build_module(label: &SimpleLabel) -> Result<ModuleData, RepError> {
    if label.e != QuantumChar::Infinite {
        return Err(RepError::FiniteE(label.e));
    }
    let basis = ModuleBasis::new(label);
    let n = label.n();
    let mut diag = HashMap::new();
    for r in 1..n as i64 {
        diag.insert(r, seminormal_diagonal(r));
        diag.insert(-r, seminormal_diagonal(-r));
    }
    let g = (1..n.max(1))
        .into_par_iter()
        .map(|i| g_matrix(&basis, i, &diag))
        .collect();
    Ok(ModuleData {
        label: label.clone(),
        basis,
        g,
    })
}

/// `Φ_σ: V^𝛌 → V^{𝛌^σ}`, `(v_1⊗…⊗v_d)⊗w_I ↦ (v_{σ⁻¹(1)}⊗…⊗v_{σ⁻¹(d)})⊗w_{I^σ}`,
/// stored as the image index of each basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intertwiner {
    pub sigma: Permutation,
    pub target: SimpleLabel,
    pub image: Vec<usize>,
}

impl Intertwiner {
    pub fn matrix<F: Field>(&self) -> Matrix<F> {
        Matrix::from_column_images(self.image.len(), &self.image)
    }
}

pub fn phi_sigma(v: &ModuleData, sigma: &Permutation) -> Result<Intertwiner, RepError> {
    let d = v.d();
    if sigma.degree() != d {
        return Err(RepError::InvalidParameters(format!(
            "{sigma} is not in S_{d}"
        )));
    }
    let target = SimpleLabel {
        lambda: v.label.lambda.act(sigma),
        mu: v.label.lambda.act(sigma).composition(),
        e: v.label.e,
    };
    let tb = ModuleBasis::new(&target);
    let image = (0..v.dim())
        .map(|k| {
            let (part, tuple) = v.basis.vector(k);
            let mut moved = vec![0; d];
            for a in 1..=d {
                moved[sigma.apply(a) - 1] = tuple[a - 1];
            }
            tb.index(&part.act_sd(sigma), &moved)
                .expect("image lies in the twisted module")
        })
        .collect();
    Ok(Intertwiner {
        sigma: sigma.clone(),
        target,
        image,
    })
}

/// `Φ_σ` as an endomorphism of `V^𝛌`; `σ` must fix `𝛌`.
pub fn phi_sigma_endo(v: &ModuleData, sigma: &Permutation) -> Result<Intertwiner, RepError> {
    if sigma.degree() != v.d() || !inertia_sd(&v.label.lambda).contains(sigma) {
        return Err(RepError::NotInInertia(sigma.to_string()));
    }
    phi_sigma(v, sigma)
}

/// Matrix algebra `End(V^𝛌)` as a presentation target, with builtins
/// `g(i)`, `e(i)`, `e(i,j)`, `E(k)` and the literals `E{…}`, `g[…]`.
pub struct ModuleTarget<'a> {
    module: &'a ModuleData,
}

impl<'a> ModuleTarget<'a> {
    pub fn new(module: &'a ModuleData) -> Self {
        ModuleTarget { module }
    }
}

fn eval_err(e: RepError) -> PresentationError {
    PresentationError::Eval(e.to_string())
}

impl Target for ModuleTarget<'_> {
    type Elem = Matrix<RatFunc>;

    fn d(&self) -> usize {
        self.module.d()
    }

    fn cyclotomic(&self) -> bool {
        false
    }

    fn one(&self) -> Matrix<RatFunc> {
        Matrix::identity(self.module.dim())
    }

    fn add(&self, a: &Matrix<RatFunc>, b: &Matrix<RatFunc>) -> Matrix<RatFunc> {
        a.add(b)
    }

    fn mul(&self, a: &Matrix<RatFunc>, b: &Matrix<RatFunc>) -> Matrix<RatFunc> {
        a.mul(b)
    }

    fn scale(&self, a: &Matrix<RatFunc>, s: &Scalar) -> Matrix<RatFunc> {
        // The evaluator rejects ζ before reaching a non-cyclotomic target.
        let s = s.as_rational().expect("rational scalar");
        a.scale(&RatFunc::from_laurent(s))
    }

    fn is_zero(&self, a: &Matrix<RatFunc>) -> bool {
        a.is_zero()
    }

    fn describe(&self, a: &Matrix<RatFunc>, cap: usize) -> String {
        a.describe(cap)
    }

    fn builtin(
        &self,
        name: &str,
        args: &[i64],
        inverse: bool,
    ) -> Result<Option<Matrix<RatFunc>>, PresentationError> {
        let idx = |k: i64| {
            usize::try_from(k)
                .map_err(|_| PresentationError::Eval(format!("{name}: negative index {k}")))
        };
        let m = self.module;
        let not_inv = || PresentationError::NotInvertible(format!("{name}{args:?}"));
        Ok(Some(match (name, args) {
            ("g", [i]) => {
                let i = idx(*i)?;
                if inverse {
                    m.g_inv(i).map_err(eval_err)?
                } else {
                    m.g(i).map_err(eval_err)?.clone()
                }
            }
            ("e", [i]) if !inverse => {
                let i = idx(*i)?;
                m.e_pair(i, i + 1).map_err(eval_err)?
            }
            ("e", [i, j]) if !inverse => m.e_pair(idx(*i)?, idx(*j)?).map_err(eval_err)?,
            ("E", [k]) if !inverse => {
                let k = idx(*k)?;
                let total = m.d().pow(m.n() as u32);
                if k >= total {
                    return Err(PresentationError::Eval(format!(
                        "E({k}) out of range 0..{}",
                        total - 1
                    )));
                }
                m.idempotent(&OrderedPartition::from_index(m.d(), m.n(), k))
                    .map_err(eval_err)?
            }
            ("e", [_]) | ("e", [_, _]) | ("E", [_]) => return Err(not_inv()),
            ("t", [_]) => {
                return Err(PresentationError::Eval(
                    "t(j) needs ζ; module matrices are over Q(q), use the idempotent generators"
                        .into(),
                ))
            }
            _ => return Ok(None),
        }))
    }

    fn literal(&self, lit: &Literal, inverse: bool) -> Result<Matrix<RatFunc>, PresentationError> {
        match lit {
            Literal::Idempotent(s) => {
                if inverse {
                    return Err(PresentationError::NotInvertible(format!("E{s}")));
                }
                let part = s
                    .parse::<OrderedPartition>()
                    .map_err(|e| PresentationError::Eval(format!("E{s}: {e}")))?;
                self.module.idempotent(&part).map_err(eval_err)
            }
            Literal::Permutation(s) => {
                let w = s
                    .parse::<Permutation>()
                    .map_err(|e| PresentationError::Eval(format!("g{s}: {e}")))?;
                self.module.g_perm(&w, inverse).map_err(eval_err)
            }
        }
    }
}
