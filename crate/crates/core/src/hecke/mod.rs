//! Iwahori–Hecke algebras `H_m`, tensor products `H^μ`, and the
//! isomorphism `Ψ: Y(d,n) → ⊕_μ Mat_{m_μ}(H^μ)`.
//!
//! Rows and columns of the `μ` block are indexed by the ordered partitions
//! with part sizes `μ`, in lexicographic order of label sequences.

mod algebra;
mod block;
mod psi;

pub use algebra::{HeckeElement, TensorElement};
pub use block::{BlockLayout, BlockMatrix, BlockShape};
pub use psi::{
    dimension_identity, psi, psi_along_word, psi_generator, verify_iso, BlockSummary, IsoOptions,
    IsoReport, KConvention, PsiGenerator, Tier,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{AlgebraContext, AlgebraElement, ScalarMode};
    use crate::coefficients::Scalar;
    use crate::combinatorics::{Composition, OrderedPartition, Permutation, SymmetricGroup};
    use crate::fixed::sd_basis;
    use crate::linalg::exact_rank;

    fn ctx(d: usize, n: usize) -> Arc<AlgebraContext> {
        AlgebraContext::new(d, n, ScalarMode::Rational).unwrap()
    }

    fn op(s: &str) -> OrderedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn quadratic_and_braid() {
        let t1 = HeckeElement::t(3, 1);
        let t2 = HeckeElement::t(3, 2);
        let expected = HeckeElement::one(3).add_ref(&t1.scale(&Scalar::q_minus_q_inv()));
        assert_eq!(t1.mul_ref(&t1), expected);
        assert_eq!(t1.mul_ref(&t2).mul_ref(&t1), t2.mul_ref(&t1).mul_ref(&t2));
        // H_0 and H_1 are the scalars.
        for m in 0..=1 {
            let one = HeckeElement::one(m);
            assert_eq!(one.mul_ref(&one), one);
            assert_eq!(one.terms().count(), 1);
        }
    }

    #[test]
    fn associative_on_basis_triples() {
        for m in 1..=3 {
            let sm = SymmetricGroup::get(m);
            let basis: Vec<HeckeElement> = sm
                .elements()
                .iter()
                .map(|w| HeckeElement::basis(m, w))
                .collect();
            for a in &basis {
                for b in &basis {
                    let ab = a.mul_ref(b);
                    for c in &basis {
                        assert_eq!(ab.mul_ref(c), a.mul_ref(&b.mul_ref(c)));
                    }
                }
            }
        }
    }

    #[test]
    fn tensor_factors_commute() {
        let mu = Arc::new(Composition::new(vec![2, 0, 2]));
        let x = TensorElement::t_factor(&mu, 1, 1);
        let y = TensorElement::t_factor(&mu, 3, 1);
        assert_eq!(x.mul_ref(&y), y.mul_ref(&x));
        assert_eq!(TensorElement::dimension(&mu), 4);
    }

    #[test]
    fn generator_images_at_2_2() {
        let c = ctx(2, 2);
        let layout = BlockLayout::get(2, 2);
        let g1 = psi_generator(&c, &PsiGenerator::G(1), KConvention::AsPrinted).unwrap();

        let i = op("{1,2|}");
        let (b, r) = layout.locate(i.index());
        let mu = &layout.blocks()[b].mu;
        assert_eq!(g1.entry(b, r, r), Some(&TensorElement::t_factor(mu, 1, 1)));

        let i = op("{1|2}");
        let j = op("{2|1}");
        let (b, r) = layout.locate(i.index());
        let (_, cj) = layout.locate(j.index());
        assert_eq!(
            g1.entry(b, r, cj),
            Some(&TensorElement::one(&layout.blocks()[b].mu))
        );

        let mut sum = BlockMatrix::zero(&layout);
        for p in c.ordered_partitions() {
            let e = psi_generator(
                &c,
                &PsiGenerator::Idempotent(p.clone()),
                KConvention::AsPrinted,
            )
            .unwrap();
            sum = sum.add_ref(&e);
        }
        assert_eq!(sum, BlockMatrix::identity(&layout));
        assert!(psi_generator(&c, &PsiGenerator::G(2), KConvention::AsPrinted).is_err());
    }

    #[test]
    fn psi_respects_square_of_g1() {
        let c = ctx(2, 2);
        let g = AlgebraElement::gen_g(&c, 1).unwrap();
        let lhs = psi(&(&g * &g), KConvention::AsPrinted);
        let pg = psi(&g, KConvention::AsPrinted);
        assert_eq!(lhs, pg.mul_ref(&pg));
        assert_eq!(
            pg,
            psi_generator(&c, &PsiGenerator::G(1), KConvention::AsPrinted).unwrap()
        );
    }

    /// Diagonal entries of `Ψ(g_i)` against the quadratic relation. Shifting
    /// `k` down turns `T_1` into `1`, which breaks it; `T_2 ↦ T_1` does not.
    #[test]
    fn hecke_index_fixture() {
        let c = ctx(2, 3);
        let layout = BlockLayout::get(2, 3);
        let cases = [
            ("{1,2|3}", 1, 1, 1),
            ("{1|2,3}", 2, 2, 1),
            ("{2,3|1}", 2, 1, 1),
            ("{1,2,3|}", 2, 1, 2),
        ];
        for (s, i, a, k) in cases {
            let p = op(s);
            let (b, r) = layout.locate(p.index());
            let mu = &layout.blocks()[b].mu;
            let g = psi_generator(&c, &PsiGenerator::G(i), KConvention::AsPrinted).unwrap();
            assert_eq!(
                g.entry(b, r, r),
                Some(&TensorElement::t_factor(mu, a, k)),
                "{s} g{i}"
            );

            let gi = AlgebraElement::gen_g(&c, i).unwrap();
            let ei = AlgebraElement::gen_e_idem(&c, &p).unwrap();
            let x = &ei * &(&gi * &gi);
            for conv in [KConvention::AsPrinted, KConvention::OffByOne] {
                let pg = psi(&gi, conv);
                let rhs = psi(&ei, conv).mul_ref(&pg).mul_ref(&pg);
                let holds = conv == KConvention::AsPrinted || k > 1;
                assert_eq!(psi(&x, conv) == rhs, holds, "{s} {conv:?}");
            }
        }
    }

    #[test]
    fn single_row_images_and_block_support() {
        let c = ctx(2, 3);
        let layout = BlockLayout::get(2, 3);
        for (k, p) in c.ordered_partitions().iter().enumerate() {
            let (b, r) = layout.locate(k);
            for w in 0..6 {
                let img = psi(&AlgebraElement::basis(&c, k, w), KConvention::AsPrinted);
                let entries: Vec<_> = img.entries().collect();
                assert_eq!(entries.len(), 1, "{p}");
                assert_eq!((entries[0].0, entries[0].1), (b, r));
            }
        }
        // Ψ(E_I x E_J) lives in row I, column J.
        let x = &AlgebraElement::gen_g(&c, 1).unwrap() * &AlgebraElement::gen_g(&c, 2).unwrap();
        for i in c.ordered_partitions() {
            for j in c.ordered_partitions() {
                let ei = AlgebraElement::gen_e_idem(&c, i).unwrap();
                let ej = AlgebraElement::gen_e_idem(&c, j).unwrap();
                let img = psi(&(&(&ei * &x) * &ej), KConvention::AsPrinted);
                let (bi, ri) = layout.locate(i.index());
                let (bj, rj) = layout.locate(j.index());
                for (b, r, col, _) in img.entries() {
                    assert_eq!((b, r), (bi, ri));
                    assert_eq!((b, col), (bj, rj));
                }
            }
        }
    }

    #[test]
    fn two_reduced_words_agree() {
        let c = ctx(2, 3);
        let w0 = Permutation::from_images(&[3, 2, 1]).unwrap();
        for p in c.ordered_partitions() {
            assert_eq!(
                psi_along_word(&c, p, &[1, 2, 1], KConvention::AsPrinted),
                psi_along_word(&c, p, &[2, 1, 2], KConvention::AsPrinted)
            );
            let x =
                AlgebraElement::from_terms(&c, [(p.clone(), w0.clone(), Scalar::one())]).unwrap();
            assert_eq!(
                psi(&x, KConvention::AsPrinted),
                psi_along_word(&c, p, &[1, 2, 1], KConvention::AsPrinted)
            );
        }
    }

    #[test]
    fn dimension_identity_small() {
        for d in 1..=4 {
            for n in 1..=4 {
                let (lhs, rhs) = dimension_identity(d, n);
                assert_eq!(lhs, rhs, "d={d} n={n}");
                assert_eq!(BlockLayout::get(d, n).linear_dim() as u64, rhs);
            }
        }
        let layout = BlockLayout::get(3, 2);
        let dims: Vec<usize> = layout.blocks().iter().map(|b| b.linear_dim()).collect();
        assert_eq!(dims.iter().filter(|&&x| x == 2).count(), 3);
        assert_eq!(dims.iter().filter(|&&x| x == 4).count(), 3);
    }

    #[test]
    fn isomorphism_small() {
        for (d, n, dim) in [(2, 2, 8), (2, 3, 48), (3, 2, 18)] {
            let report = verify_iso(&ctx(d, n), &IsoOptions::default());
            assert!(report.passed(), "{:?}", report.checks);
            assert_eq!(report.exact_rank, Some(dim));
            assert_eq!(report.pairs_checked, dim * dim);
        }
    }

    #[test]
    fn off_by_one_fails() {
        let opts = IsoOptions {
            convention: KConvention::OffByOne,
            ..IsoOptions::default()
        };
        let report = verify_iso(&ctx(2, 2), &opts);
        assert!(!report.passed());
        assert!(report.pair_failures > 0);
    }

    #[test]
    fn injective_on_sd_fixed_points() {
        let c = ctx(2, 3);
        let basis = sd_basis(&c).unwrap();
        let images: Vec<_> = basis
            .elements
            .iter()
            .map(|x| psi(x, KConvention::AsPrinted).flatten())
            .collect();
        assert_eq!(exact_rank(&images), 24);
    }
}
