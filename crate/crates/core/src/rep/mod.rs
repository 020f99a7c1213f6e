//! Simple `Y(d,n)`-modules at generic `q`: labels, dimensions, explicit
//! matrices, the twisting action of `S_d`, inertia groups, and the simple
//! modules of the fixed-point subalgebras `Y^{S_d}` and `Y^{Z/p}`.
//!
//! `V^𝛌 = (V^{λ^1} ⊗ … ⊗ V^{λ^d}) ⊗ W_μ` where `W_μ` has basis `w_I` over the
//! ordered partitions `I` with composition `μ`; `E_J` selects `w_J`, and
//! `g_i` moves `w_I` to `w_{s_i(I)}` unless `i`, `i+1` share a part, in which
//! case it acts by a Hecke generator on that part's factor.

mod clifford;
mod labels;
mod matrix;
mod module;

pub use clifford::{
    as_integer, clifford_simples_sd, clifford_simples_zp, isotypic_decompose, printed_sum_of_squares,
    sum_of_squares, CliffordSdEntry, CliffordZpEntry, InertiaAction, IsotypicComponent,
};
pub use labels::{
    cyclic_generator, dim_y, enumerate_simples, inertia_sd, inertia_zp, InertiaSd, InertiaZp,
    SimpleLabel,
};
pub use matrix::Matrix;
pub use module::{
    build_module, phi_sigma, phi_sigma_endo, Intertwiner, ModuleBasis, ModuleData, ModuleTarget,
};

use crate::combinatorics::QuantumChar;
use crate::presentations::{
    verify_with, Library, Params, PresentationError, TargetKind, VerifyReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("dimensions at e = {0} need decomposition numbers (LLT), which are out of scope")]
    FiniteE(QuantumChar),
    #[error("{0} is not in the inertia group")]
    NotInInertia(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("non-integral dimension {0}")]
    NonIntegral(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// Checks the idempotent presentation of `Y(d,n)` on the matrices of `v`.
pub fn verify_module(v: &ModuleData) -> Result<VerifyReport, RepError> {
    let params = Params::new(v.d(), 1, v.n())?;
    let lib = Library::builtin();
    let relset = lib.relation_set("YH_E", params)?;
    let asg = lib.assignment(&["identity-e"], params)?;
    Ok(verify_with(
        &ModuleTarget::new(v),
        TargetKind::Module,
        &relset,
        &asg,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{rat, Field, LaurentPoly, RatFunc};
    use crate::combinatorics::{
        count_classes, partitions, MultiPartition, OrderedPartition, Partition, Permutation,
        SymmetricGroup,
    };
    use std::collections::BTreeSet;

    fn mp(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    fn label(s: &str) -> SimpleLabel {
        SimpleLabel::generic(mp(s))
    }

    fn factorial(m: u64) -> u64 {
        (1..=m).product()
    }

    #[test]
    fn labels_at_two_strands() {
        let all = enumerate_simples(2, 2, QuantumChar::Infinite).unwrap();
        let got: BTreeSet<MultiPartition> = all.iter().map(|l| l.lambda.clone()).collect();
        let want: BTreeSet<MultiPartition> = [
            "((2),())",
            "((1,1),())",
            "((),(2))",
            "((),(1,1))",
            "((1),(1))",
        ]
        .iter()
        .map(|s| mp(s))
        .collect();
        assert_eq!(got, want);
        assert_eq!(all.len(), 5);
        let two: BTreeSet<MultiPartition> = enumerate_simples(2, 2, QuantumChar::Finite(2))
            .unwrap()
            .into_iter()
            .map(|l| l.lambda)
            .collect();
        let want: BTreeSet<MultiPartition> = ["((2),())", "((),(2))", "((1),(1))"]
            .iter()
            .map(|s| mp(s))
            .collect();
        assert_eq!(two, want);
        for n in 0..6 {
            let d1: Vec<Partition> = enumerate_simples(1, n, QuantumChar::Infinite)
                .unwrap()
                .into_iter()
                .map(|l| l.lambda.component(1).clone())
                .collect();
            assert_eq!(d1, partitions(n));
        }
        assert!(enumerate_simples(2, 2, QuantumChar::Finite(1)).is_err());
    }

    /// Counts by brute force over all tuples of partitions of sizes up to `n`.
    fn brute_force_labels(d: usize, n: usize, e: u32) -> BTreeSet<MultiPartition> {
        let regular = |p: &Partition| {
            let parts = p.parts();
            parts
                .iter()
                .all(|x| parts.iter().filter(|y| *y == x).count() < e as usize)
        };
        let pool: Vec<Partition> = (0..=n).flat_map(partitions).filter(regular).collect();
        let mut tuples: Vec<Vec<Partition>> = vec![Vec::new()];
        for _ in 0..d {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    pool.iter().map(move |p| {
                        let mut t = t.clone();
                        t.push(p.clone());
                        t
                    })
                })
                .filter(|t| t.iter().map(Partition::size).sum::<usize>() <= n)
                .collect();
        }
        tuples
            .into_iter()
            .filter(|t| t.iter().map(Partition::size).sum::<usize>() == n)
            .map(MultiPartition::new)
            .collect()
    }

    #[test]
    fn finite_e_counts_match_direct_enumeration() {
        for (d, n, e) in [
            (2, 2, 2),
            (2, 3, 2),
            (3, 3, 2),
            (2, 4, 3),
            (3, 4, 2),
            (2, 5, 4),
        ] {
            let got: BTreeSet<MultiPartition> = enumerate_simples(d, n, QuantumChar::Finite(e))
                .unwrap()
                .into_iter()
                .map(|l| l.lambda)
                .collect();
            assert_eq!(got, brute_force_labels(d, n, e), "({d},{n},e={e})");
        }
    }

    #[test]
    fn dimensions_and_rank_identity() {
        assert_eq!(dim_y(&label("((1),(1))")).unwrap(), 2);
        assert_eq!(dim_y(&label("((2),())")).unwrap(), 1);
        let finite = SimpleLabel::new(mp("((2),())"), QuantumChar::Finite(2)).unwrap();
        assert_eq!(
            dim_y(&finite),
            Err(RepError::FiniteE(QuantumChar::Finite(2)))
        );
        for (d, n) in [(2, 2), (2, 3), (3, 2), (3, 3), (1, 4), (2, 4)] {
            let dims = enumerate_simples(d, n, QuantumChar::Infinite)
                .unwrap()
                .iter()
                .map(|l| dim_y(l).ok())
                .collect::<Vec<_>>();
            assert_eq!(
                sum_of_squares(dims),
                Some((d as u64).pow(n as u32) * factorial(n as u64))
            );
        }
    }

    #[test]
    fn inertia_examples() {
        let equal = inertia_sd(&mp("((1),(1),(1))"));
        assert_eq!(equal.x, 6);
        assert_eq!(equal.blocks, vec![vec![1, 2, 3]]);
        let distinct = inertia_sd(&mp("((2),(1),())"));
        assert_eq!(distinct.x, 1);
        assert_eq!(distinct.blocks.len(), 3);
        let mixed = inertia_sd(&mp("((1),(),(1),())"));
        assert_eq!(mixed.blocks, vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(mixed.x, 4);

        let zp = inertia_zp(&mp("((1),(1))"), 2).unwrap();
        assert_eq!((zp.s, zp.order), (1, 2));
        let zp = inertia_zp(&mp("((2),())"), 2).unwrap();
        assert_eq!((zp.s, zp.order), (2, 1));
        let zp = inertia_zp(&mp("((1),(),(1),())"), 2).unwrap();
        assert_eq!((zp.s, zp.order), (1, 2));
        let zp = inertia_zp(&mp("((1),(),(1),())"), 4).unwrap();
        assert_eq!((zp.s, zp.order), (2, 2));
        assert!(inertia_zp(&mp("((1),(1),(1))"), 2).is_err());
    }

    #[test]
    fn clifford_sd_at_two_strands() {
        let entries = clifford_simples_sd(2, 2, QuantumChar::Infinite).unwrap();
        assert_eq!(entries.len(), 4);
        assert!(entries.iter().all(|e| e.dim == Some(1) && !e.discrepancy()));
        assert_eq!(sum_of_squares(entries.iter().map(|e| e.dim)), Some(4));
        let mixed: Vec<String> = entries
            .iter()
            .filter(|e| e.lambda == mp("((1),(1))"))
            .map(|e| e.nu_label())
            .collect();
        assert_eq!(mixed, vec!["((2))", "((1,1))"]);
        // d = 1: Hecke simples with trivial ν.
        let d1 = clifford_simples_sd(1, 3, QuantumChar::Infinite).unwrap();
        assert_eq!(d1.len(), 3);
        assert!(d1
            .iter()
            .all(|e| e.nu == vec![Partition::new(vec![1])] && !e.discrepancy()));
        // Labels only at finite e.
        let f = clifford_simples_sd(2, 2, QuantumChar::Finite(2)).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.iter().all(|e| e.dim.is_none()));
    }

    #[test]
    fn clifford_sd_labels_are_unique_per_orbit() {
        for (d, n) in [(2, 3), (3, 2), (3, 3)] {
            let entries = clifford_simples_sd(d, n, QuantumChar::Infinite).unwrap();
            let mut seen = BTreeSet::new();
            for e in &entries {
                let orbit: BTreeSet<MultiPartition> = SymmetricGroup::get(d)
                    .elements()
                    .iter()
                    .map(|s| e.lambda.act(s))
                    .collect();
                let key = (orbit.iter().next().unwrap().clone(), e.nu.clone());
                assert!(seen.insert(key), "duplicate {} {}", e.lambda, e.nu_label());
            }
        }
    }

    /// The printed dimension formula divides by the full inertia order even
    /// when the block of empty components acts trivially on `V^𝛌`.
    #[test]
    fn empty_block_discrepancy_at_three_one() {
        let entries = clifford_simples_sd(3, 1, QuantumChar::Infinite).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].lambda, mp("((1),(),())"));
        let v = build_module(&label("((1),(),())")).unwrap();
        let iso = isotypic_decompose(&v, &InertiaAction::Sd(inertia_sd(&v.label.lambda))).unwrap();
        for (entry, comp) in entries.iter().zip(&iso) {
            assert_eq!(entry.nu_label(), comp.irrep);
            assert_eq!(entry.printed_dim, Some(rat(1, 2)));
            assert_eq!(entry.dim, Some(comp.dim));
            assert!(entry.discrepancy());
        }
        assert_eq!(iso.iter().map(|c| c.dim).collect::<Vec<_>>(), vec![1, 0]);
        assert_eq!(
            sum_of_squares(entries.iter().map(|e| e.dim)),
            Some(count_classes(3, 1))
        );
    }

    #[test]
    fn clifford_sd_rank_identity() {
        for (d, n) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
            let entries = clifford_simples_sd(d, n, QuantumChar::Infinite).unwrap();
            let rank = count_classes(d, n) * factorial(n as u64);
            assert_eq!(
                sum_of_squares(entries.iter().map(|e| e.dim)),
                Some(rank),
                "({d},{n})"
            );
            let printed = printed_sum_of_squares(&entries).unwrap();
            let has_empty_pair = d >= 3;
            assert_eq!(printed != rat(rank as i64, 1), has_empty_pair, "({d},{n})");
        }
    }

    #[test]
    fn clifford_zp_examples_and_rank() {
        let entries = clifford_simples_zp(2, 2, 2, QuantumChar::Infinite).unwrap();
        assert_eq!(entries.len(), 4);
        assert!(entries.iter().all(|e| e.dim == Some(1)));
        for (d, p, n) in [
            (2, 2, 2),
            (2, 2, 3),
            (4, 2, 2),
            (3, 3, 2),
            (4, 4, 2),
            (3, 1, 2),
        ] {
            let entries = clifford_simples_zp(d, p, n, QuantumChar::Infinite).unwrap();
            let rank = (d as u64).pow(n as u32) * factorial(n as u64) / p as u64;
            assert_eq!(
                sum_of_squares(entries.iter().map(|e| e.dim)),
                Some(rank),
                "({d},{p},{n})"
            );
        }
        let trivial = clifford_simples_zp(3, 1, 2, QuantumChar::Infinite).unwrap();
        let simples = enumerate_simples(3, 2, QuantumChar::Infinite).unwrap();
        assert_eq!(trivial.len(), simples.len());
        for (t, s) in trivial.iter().zip(&simples) {
            assert_eq!(t.lambda, s.lambda);
            assert_eq!(t.dim, dim_y(s).ok());
        }
    }

    #[test]
    fn module_examples() {
        let v = build_module(&label("((1),(1))")).unwrap();
        assert_eq!(v.dim(), 2);
        let swap: Matrix<RatFunc> = Matrix::from_column_images(2, &[1, 0]);
        assert_eq!(v.g(1).unwrap(), &swap);
        for part in v.basis().parts() {
            let k = v.basis().index(part, &[0, 0]).unwrap();
            let m = v.idempotent(part).unwrap();
            assert_eq!(
                m.entries().map(|(i, j, _)| (i, j)).collect::<Vec<_>>(),
                vec![(k, k)]
            );
        }
        let other: OrderedPartition = "{1,2|}".parse().unwrap();
        assert!(v.idempotent(&other).unwrap().is_zero());

        let triv = build_module(&label("((2),())")).unwrap();
        assert_eq!(triv.dim(), 1);
        assert_eq!(triv.g(1).unwrap().get(0, 0), &RatFunc::q());
        let sign = build_module(&label("((1,1),())")).unwrap();
        let minus_q_inv = RatFunc::from_laurent(&LaurentPoly::q_pow(-1)).neg_ref();
        assert_eq!(sign.g(1).unwrap().get(0, 0), &minus_q_inv);
    }

    #[test]
    fn module_dimensions() {
        for (d, n) in [(2, 3), (3, 2), (1, 4)] {
            for l in enumerate_simples(d, n, QuantumChar::Infinite).unwrap() {
                let v = build_module(&l).unwrap();
                assert_eq!(v.dim() as u64, dim_y(&l).unwrap());
            }
        }
        let finite = SimpleLabel::new(mp("((2),())"), QuantumChar::Finite(3)).unwrap();
        assert!(matches!(build_module(&finite), Err(RepError::FiniteE(_))));
    }

    #[test]
    fn modules_satisfy_idempotent_presentation() {
        for (d, n) in [(2, 2), (2, 3), (1, 4)] {
            for l in enumerate_simples(d, n, QuantumChar::Infinite).unwrap() {
                let v = build_module(&l).unwrap();
                let report = verify_module(&v).unwrap();
                assert!(
                    report.passed(),
                    "{}: {:?}",
                    l.lambda,
                    report.relations.failures().collect::<Vec<_>>()
                );
            }
        }
    }

    fn assert_intertwines(v: &ModuleData, sigma: &Permutation) {
        let phi = phi_sigma(v, sigma).unwrap();
        let w = build_module(&phi.target).unwrap();
        let p: Matrix<RatFunc> = phi.matrix();
        for i in 1..v.n() {
            assert_eq!(
                p.mul(v.g(i).unwrap()),
                w.g(i).unwrap().mul(&p),
                "g{i} under {sigma}"
            );
        }
        let inv = sigma.inverse();
        for part in crate::combinatorics::enumerate_ordered(v.d(), v.n()) {
            let lhs = p.mul(&v.idempotent(&part.act_sd(&inv)).unwrap());
            let rhs = w.idempotent(&part).unwrap().mul(&p);
            assert_eq!(lhs, rhs, "E{part} under {sigma}");
        }
    }

    #[test]
    fn twisting_intertwines_generators() {
        for (d, n) in [(2, 2), (2, 3), (3, 2)] {
            for l in enumerate_simples(d, n, QuantumChar::Infinite).unwrap() {
                let v = build_module(&l).unwrap();
                for sigma in SymmetricGroup::get(d).elements() {
                    assert_intertwines(&v, sigma);
                }
            }
        }
    }

    #[test]
    fn twisting_examples_and_composition() {
        let v = build_module(&label("((1),(1))")).unwrap();
        let id = phi_sigma(&v, &Permutation::identity(2)).unwrap();
        assert_eq!(id.image, vec![0, 1]);
        let swap = phi_sigma_endo(&v, &Permutation::simple(2, 1)).unwrap();
        assert_eq!(swap.image, vec![1, 0]);
        let w = build_module(&label("((2),())")).unwrap();
        assert!(matches!(
            phi_sigma_endo(&w, &Permutation::simple(2, 1)),
            Err(RepError::NotInInertia(_))
        ));

        let v = build_module(&label("((1),(1),(1))")).unwrap();
        let group = SymmetricGroup::get(3);
        for s in group.elements() {
            for t in group.elements() {
                let ps: Matrix<RatFunc> = phi_sigma(&v, s).unwrap().matrix();
                let pt: Matrix<RatFunc> = phi_sigma(&v, t).unwrap().matrix();
                let pst: Matrix<RatFunc> = phi_sigma(&v, &s.compose(t)).unwrap().matrix();
                assert_eq!(ps.mul(&pt), pst);
            }
        }
    }

    #[test]
    fn isotypic_dims_match_free_action_formula() {
        for l in enumerate_simples(2, 2, QuantumChar::Infinite).unwrap() {
            let v = build_module(&l).unwrap();
            let sd = isotypic_decompose(&v, &InertiaAction::Sd(inertia_sd(&l.lambda))).unwrap();
            let zp = isotypic_decompose(&v, &InertiaAction::Zp(inertia_zp(&l.lambda, 2).unwrap()))
                .unwrap();
            for c in sd.iter().chain(&zp) {
                assert_eq!(
                    Some(rat(c.dim as i64, 1)),
                    c.formula,
                    "{} {}",
                    l.lambda,
                    c.irrep
                );
            }
        }
        let v = build_module(&label("((1),(1))")).unwrap();
        let sd = isotypic_decompose(&v, &InertiaAction::Sd(inertia_sd(&v.label.lambda))).unwrap();
        assert_eq!(
            sd.iter()
                .map(|c| (c.irrep.as_str(), c.dim))
                .collect::<Vec<_>>(),
            vec![("((2))", 1), ("((1,1))", 1)]
        );
        let triv = build_module(&label("((2),())")).unwrap();
        let one =
            isotypic_decompose(&triv, &InertiaAction::Sd(inertia_sd(&triv.label.lambda))).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].dim, 1);
    }

    #[test]
    fn isotypic_dims_agree_with_clifford_tables() {
        for (d, n) in [(2, 3), (3, 2), (3, 3)] {
            let entries = clifford_simples_sd(d, n, QuantumChar::Infinite).unwrap();
            for orbit in 0..=entries.last().unwrap().orbit {
                let rows: Vec<&CliffordSdEntry> =
                    entries.iter().filter(|e| e.orbit == orbit).collect();
                let v = build_module(&SimpleLabel::generic(rows[0].lambda.clone())).unwrap();
                let iso =
                    isotypic_decompose(&v, &InertiaAction::Sd(rows[0].inertia.clone())).unwrap();
                for (row, comp) in rows.iter().zip(&iso) {
                    assert_eq!(row.nu_label(), comp.irrep);
                    assert_eq!(row.dim, Some(comp.dim), "{} {}", row.lambda, comp.irrep);
                }
            }
        }
        for (d, p, n) in [(2, 2, 3), (4, 2, 2), (3, 3, 2)] {
            let entries = clifford_simples_zp(d, p, n, QuantumChar::Infinite).unwrap();
            for e in &entries {
                let v = build_module(&SimpleLabel::generic(e.lambda.clone())).unwrap();
                let iso = isotypic_decompose(&v, &InertiaAction::Zp(e.inertia.clone())).unwrap();
                assert_eq!(e.dim, Some(iso[e.character - 1].dim));
            }
        }
    }
}
