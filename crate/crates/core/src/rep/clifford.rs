use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::labels::{
    cyclic_generator, dim_y, enumerate_simples, inertia_sd, inertia_zp, InertiaSd, InertiaZp,
    SimpleLabel,
};
use super::matrix::Matrix;
use super::module::{phi_sigma_endo, ModuleData};
use super::RepError;
use crate::coefficients::{rat, Cyclotomic, Field, Rational};
use crate::combinatorics::{
    partitions, sn_character, MultiPartition, Partition, Permutation, QuantumChar, SymmetricGroup,
};

fn ser_rational<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

fn canonical(lambda: &MultiPartition, group: &[Permutation]) -> MultiPartition {
    group
        .iter()
        .map(|g| lambda.act(g))
        .max()
        .expect("group is nonempty")
}

/// Orbit representatives (the greatest element of each orbit) in enumeration
/// order.
fn orbit_representatives(labels: Vec<SimpleLabel>, group: &[Permutation]) -> Vec<SimpleLabel> {
    labels
        .into_iter()
        .filter(|l| canonical(&l.lambda, group) == l.lambda)
        .collect()
}

/// Tuples `ν = (ν^1,…,ν^k)` with `ν^s ⊢ sizes[s]`.
fn partition_tuples(sizes: &[usize]) -> Vec<Vec<Partition>> {
    let mut out = vec![Vec::new()];
    for &m in sizes {
        let ps = partitions(m);
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Partition>| {
                ps.iter().map(move |p| {
                    let mut next = prefix.clone();
                    next.push(p.clone());
                    next
                })
            })
            .collect();
    }
    out
}

/// Simple `Y^{S_d}`-module `V^𝛌_{S^ν}`.
#[derive(Clone, Debug, Serialize)]
pub struct CliffordSdEntry {
    pub orbit: usize,
    pub lambda: MultiPartition,
    pub inertia: InertiaSd,
    /// One partition per inertia block.
    pub nu: Vec<Partition>,
    /// `y(𝛌)·Π hook_dim(ν^s) / x(𝛌)`.
    #[serde(serialize_with = "ser_rational")]
    pub printed_dim: Option<Rational>,
    /// `dim Hom(S^ν, V^𝛌)`. The block of empty components acts trivially,
    /// so the dimension is `0` unless its `ν` is the one-row partition, and
    /// the divisor is `x(𝛌)/|Z|!` for `Z` that block.
    pub dim: Option<u64>,
    /// `S^ν` does not occur in `V^𝛌`.
    pub vanishes: bool,
}

impl CliffordSdEntry {
    /// The printed dimension disagrees with the actual one.
    pub fn discrepancy(&self) -> bool {
        match (&self.printed_dim, self.dim) {
            (Some(p), Some(d)) => *p != rat(d as i64, 1),
            _ => self.vanishes,
        }
    }

    pub fn nu_label(&self) -> String {
        MultiPartition::new(self.nu.clone()).to_string()
    }
}

fn hooks(nu: &[Partition]) -> u64 {
    nu.iter().map(Partition::hook_dim).product()
}

/// One entry per `S_d`-orbit of labels and per `ν` over the inertia
/// blocks. Finite `e` gives labels without dimensions.
pub fn clifford_simples_sd(
    d: usize,
    n: usize,
    e: QuantumChar,
) -> Result<Vec<CliffordSdEntry>, RepError> {
    let group = SymmetricGroup::get(d).elements().to_vec();
    let reps = orbit_representatives(enumerate_simples(d, n, e)?, &group);
    let mut out = Vec::new();
    for (orbit, label) in reps.into_iter().enumerate() {
        let inertia = inertia_sd(&label.lambda);
        let sizes: Vec<usize> = inertia.blocks.iter().map(Vec::len).collect();
        let empty_block = inertia
            .blocks
            .iter()
            .position(|b| label.lambda.component(b[0]).is_empty());
        let y = dim_y(&label).ok();
        for nu in partition_tuples(&sizes) {
            let vanishes = empty_block.is_some_and(|z| nu[z].parts().len() > 1);
            let (printed_dim, dim) = match y {
                Some(y) => {
                    let num = y * hooks(&nu);
                    let printed = rat(num as i64, inertia.x as i64);
                    let x_eff = inertia.x / empty_block.map_or(1, |z| factorial(sizes[z]));
                    let dim = if vanishes { 0 } else { num / x_eff };
                    (Some(printed), Some(dim))
                }
                None => (None, None),
            };
            out.push(CliffordSdEntry {
                orbit,
                lambda: label.lambda.clone(),
                inertia: inertia.clone(),
                nu,
                printed_dim,
                dim,
                vanishes,
            });
        }
    }
    Ok(out)
}

fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

/// Simple `Y^{Z/p}`-module `V^𝛌_{χ_i}`.
#[derive(Clone, Debug, Serialize)]
pub struct CliffordZpEntry {
    pub orbit: usize,
    pub lambda: MultiPartition,
    pub inertia: InertiaZp,
    /// `i` in `1..=p/s`; `χ_i(σ^{ks}) = ζ_{p/s}^{(i−1)k}`.
    pub character: usize,
    /// `y(𝛌)·s/p`.
    pub dim: Option<u64>,
}

pub fn clifford_simples_zp(
    d: usize,
    p: usize,
    n: usize,
    e: QuantumChar,
) -> Result<Vec<CliffordZpEntry>, RepError> {
    let tau = cyclic_generator(d, p)?;
    let mut group = vec![Permutation::identity(d)];
    for _ in 1..p {
        group.push(tau.compose(group.last().expect("nonempty")));
    }
    let reps = orbit_representatives(enumerate_simples(d, n, e)?, &group);
    let mut out = Vec::new();
    for (orbit, label) in reps.into_iter().enumerate() {
        let inertia = inertia_zp(&label.lambda, p)?;
        let dim = match dim_y(&label) {
            Ok(y) => {
                let num = y * inertia.s as u64;
                if !num.is_multiple_of(p as u64) {
                    return Err(RepError::NonIntegral(format!(
                        "{}: {num}/{p}",
                        label.lambda
                    )));
                }
                Some(num / p as u64)
            }
            Err(_) => None,
        };
        for character in 1..=inertia.order {
            out.push(CliffordZpEntry {
                orbit,
                lambda: label.lambda.clone(),
                inertia: inertia.clone(),
                character,
                dim,
            });
        }
    }
    Ok(out)
}

/// Inertia group acting on `V^𝛌` through `Φ_σ`.
#[derive(Clone, Debug)]
pub enum InertiaAction {
    Sd(InertiaSd),
    Zp(InertiaZp),
}

/// `V_M` for one irreducible `M` of the inertia group.
#[derive(Clone, Debug, Serialize)]
pub struct IsotypicComponent {
    pub irrep: String,
    pub irrep_dim: u64,
    /// `dim V_M`, the multiplicity of `M`, from the rank of the projection.
    pub dim: u64,
    /// `dim V · dim M / |H|`.
    #[serde(serialize_with = "ser_rational")]
    pub formula: Option<Rational>,
}

/// Rank of `(dim M/|H|) Σ_h conj χ(h) Φ_h` divided by `dim M`.
fn projected<F: Field>(dim: usize, images: &[Vec<usize>], weights: &[F], irrep_dim: u64) -> u64 {
    let mut p: Matrix<F> = Matrix::zero(dim, dim);
    for (img, w) in images.iter().zip(weights) {
        for (j, &i) in img.iter().enumerate() {
            p.set(i, j, p.get(i, j).add_ref(w));
        }
    }
    let rank = p.rank() as u64;
    assert_eq!(
        rank % irrep_dim,
        0,
        "isotypic rank is a multiple of the irreducible dimension"
    );
    rank / irrep_dim
}

pub fn isotypic_decompose(
    v: &ModuleData,
    action: &InertiaAction,
) -> Result<Vec<IsotypicComponent>, RepError> {
    let dim = v.dim();
    let formula =
        |irrep_dim: u64, order: usize| Some(rat((dim as u64 * irrep_dim) as i64, order as i64));
    match action {
        InertiaAction::Sd(h) => {
            if *h != inertia_sd(&v.label.lambda) {
                return Err(RepError::NotInInertia(
                    "blocks differ from the label's inertia".into(),
                ));
            }
            let elements = h.elements(v.d());
            let images = elements
                .iter()
                .map(|s| phi_sigma_endo(v, s).map(|f| f.image))
                .collect::<Result<Vec<_>, _>>()?;
            let sizes: Vec<usize> = h.blocks.iter().map(Vec::len).collect();
            Ok(partition_tuples(&sizes)
                .into_iter()
                .map(|nu| {
                    let irrep_dim = hooks(&nu);
                    let weights: Vec<Rational> = elements
                        .iter()
                        .map(|s| {
                            let chi: i64 = nu
                                .iter()
                                .enumerate()
                                .map(|(b, p)| sn_character(p, &h.block_cycle_type(b, s)))
                                .product();
                            rat(chi * irrep_dim as i64, elements.len() as i64)
                        })
                        .collect();
                    IsotypicComponent {
                        irrep: MultiPartition::new(nu).to_string(),
                        irrep_dim,
                        dim: projected(dim, &images, &weights, irrep_dim),
                        formula: formula(irrep_dim, elements.len()),
                    }
                })
                .collect())
        }
        InertiaAction::Zp(h) => {
            let expected = inertia_zp(&v.label.lambda, h.p)?;
            if *h != expected {
                return Err(RepError::NotInInertia(
                    "generator differs from the label's inertia".into(),
                ));
            }
            let elements = h.elements();
            let images = elements
                .iter()
                .map(|s| phi_sigma_endo(v, s).map(|f| f.image))
                .collect::<Result<Vec<_>, _>>()?;
            let m = h.order;
            Ok((1..=m)
                .map(|i| {
                    let inv_m = Cyclotomic::rational(rat(1, m as i64));
                    let weights: Vec<Cyclotomic> = (0..m)
                        .map(|k| {
                            Cyclotomic::zeta_pow(m as u32, -(((i - 1) * k) as i64)).mul_ref(&inv_m)
                        })
                        .collect();
                    IsotypicComponent {
                        irrep: format!("χ{i}"),
                        irrep_dim: 1,
                        dim: projected(dim, &images, &weights, 1),
                        formula: formula(1, m),
                    }
                })
                .collect())
        }
    }
}

/// `Σ dim²` over the given dimensions, `None` if any is missing.
pub fn sum_of_squares(dims: impl IntoIterator<Item = Option<u64>>) -> Option<u64> {
    dims.into_iter().map(|d| d.map(|x| x * x)).sum()
}

/// `Σ printed_dim²`, exact.
pub fn printed_sum_of_squares(entries: &[CliffordSdEntry]) -> Option<Rational> {
    entries
        .iter()
        .map(|e| e.printed_dim.as_ref().map(|p| p * p))
        .try_fold(<Rational as Zero>::zero(), |acc, x| x.map(|x| acc + x))
}

/// Integer value of an exact rational, if integral.
pub fn as_integer(r: &Rational) -> Option<i64> {
    r.is_integer().then(|| r.to_integer().to_i64()).flatten()
}
