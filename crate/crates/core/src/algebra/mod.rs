//! The algebra `Y(d,n)` in the basis `{E_I g_w}`.
//!
//! Multiplication folds the reduced word of the right factor through a
//! single kernel, right multiplication of `E_I g_w` by `g_i`. Products
//! `E_I g_w · g_v` are cached per context.

mod context;
mod element;
mod relations;
mod tbasis;
mod words;

pub use context::{AlgebraContext, ScalarMode, MAX_BASIS_SIZE};
pub use element::AlgebraElement;
pub use relations::verify_core_relations;
pub use tbasis::{exponent_vectors, from_t_basis, to_t_basis, TKey};
pub use words::{parse_word, word_element, Generator, Letter};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("invalid algebra parameters: {0}")]
    InvalidParameters(String),
    #[error("elements of {left} and {right} do not combine")]
    ContextMismatch { left: String, right: String },
    #[error("{what}{index} is out of range (1..={max})")]
    IndexOutOfRange {
        what: String,
        index: usize,
        max: usize,
    },
    #[error("{0} requires cyclotomic scalars")]
    NeedsCyclotomic(&'static str),
    #[error("{0} does not fit this algebra")]
    ShapeMismatch(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("{0} is not invertible")]
    NotInvertible(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{rat, Scalar};
    use crate::combinatorics::{OrderedPartition, Permutation};
    use std::collections::BTreeMap;
    use std::sync::Arc;

    fn ctx(d: usize, n: usize) -> Arc<AlgebraContext> {
        AlgebraContext::new(d, n, ScalarMode::Cyclotomic).unwrap()
    }

    fn elem(c: &Arc<AlgebraContext>, part: &str, w: &str) -> AlgebraElement {
        let p: OrderedPartition = part.parse().unwrap();
        let w: Permutation = w.parse().unwrap();
        AlgebraElement::from_terms(c, [(p, w, Scalar::one())]).unwrap()
    }

    #[test]
    fn descent_products() {
        let c = ctx(2, 2);
        let x = elem(&c, "{1,2|}", "[2 1]");
        let expected = &elem(&c, "{1,2|}", "[1 2]")
            + &elem(&c, "{1,2|}", "[2 1]").scale(&Scalar::q_minus_q_inv());
        assert_eq!(&x * &x, expected);
        let y = elem(&c, "{1|2}", "[2 1]");
        assert!((&y * &y).is_zero());
        let one = AlgebraElement::one(&c);
        assert_eq!(&x * &one, x);
        assert_eq!(&one * &x, x);
    }

    #[test]
    fn idempotent_generators() {
        let c = ctx(2, 2);
        let e1 = AlgebraElement::gen_e(&c, 1).unwrap();
        assert_eq!(
            e1,
            &elem(&c, "{1,2|}", "[1 2]") + &elem(&c, "{|1,2}", "[1 2]")
        );
        assert_eq!(
            AlgebraElement::gen_e_pair(&c, 2, 2).unwrap(),
            AlgebraElement::one(&c)
        );
        let c1 = ctx(2, 1);
        let t = AlgebraElement::gen_t(&c1, 1).unwrap();
        let expected =
            &elem(&c1, "{1|}", "[1]").scale(&Scalar::from_int(-1)) + &elem(&c1, "{|1}", "[1]");
        assert_eq!(t, expected);
    }

    #[test]
    fn inverses_and_words() {
        let c = ctx(2, 2);
        let g = AlgebraElement::gen_g(&c, 1).unwrap();
        assert_eq!(
            &g * &AlgebraElement::g_inverse(&c, 1).unwrap(),
            AlgebraElement::one(&c)
        );
        assert_eq!(word_element(&c, &[]).unwrap(), AlgebraElement::one(&c));
        assert_eq!(
            word_element(&c, &parse_word("g1 g1^-1").unwrap()).unwrap(),
            AlgebraElement::one(&c)
        );
        let c3 = ctx(2, 3);
        let w = word_element(&c3, &parse_word("g2 e1 g2^-1").unwrap()).unwrap();
        assert_eq!(w, AlgebraElement::gen_e_pair(&c3, 1, 3).unwrap());
        assert!(word_element(&c3, &parse_word("e1^-1").unwrap()).is_err());
        let d1 = AlgebraContext::new(1, 3, ScalarMode::Rational).unwrap();
        let expected = AlgebraElement::gen_g(&d1, 2).unwrap()
            - AlgebraElement::one(&d1).scale(&Scalar::q_minus_q_inv());
        assert_eq!(AlgebraElement::g_inverse(&d1, 2).unwrap(), expected);
    }

    #[test]
    fn reduced_words_give_the_same_element() {
        let c = ctx(2, 3);
        let a = word_element(&c, &parse_word("g1 g2 g1").unwrap()).unwrap();
        let b = word_element(&c, &parse_word("g2 g1 g2").unwrap()).unwrap();
        assert_eq!(a, b);
        let w0: Permutation = "[3 2 1]".parse().unwrap();
        assert_eq!(a, AlgebraElement::gen_g_perm(&c, &w0).unwrap());
    }

    #[test]
    fn t_basis_round_trip() {
        let c = ctx(2, 1);
        let x = elem(&c, "{|1}", "[1]");
        let t = to_t_basis(&x).unwrap();
        let half = Scalar::from_rational(rat(1, 2));
        let id = Permutation::identity(1);
        let mut expected = BTreeMap::new();
        expected.insert((vec![0], id.clone()), half.clone());
        expected.insert((vec![1], id), half);
        assert_eq!(t, expected);

        let c = ctx(2, 2);
        for i in 0..4 {
            for w in 0..2 {
                let x = AlgebraElement::basis(&c, i, w);
                assert_eq!(from_t_basis(&c, &to_t_basis(&x).unwrap()).unwrap(), x);
            }
        }
        let c3 = ctx(3, 2);
        let mut td = BTreeMap::new();
        td.insert((vec![0, 0], Permutation::identity(2)), Scalar::one());
        let t1 = AlgebraElement::gen_t(&c3, 1).unwrap();
        assert_eq!(t1.pow(3), from_t_basis(&c3, &td).unwrap());
    }

    #[test]
    fn core_relations_hold() {
        for (d, n, mode) in [
            (2, 3, ScalarMode::Cyclotomic),
            (3, 2, ScalarMode::Cyclotomic),
            (1, 3, ScalarMode::Rational),
            (3, 3, ScalarMode::Rational),
        ] {
            let c = AlgebraContext::new(d, n, mode).unwrap();
            let report = verify_core_relations(&c).unwrap();
            assert!(
                report.all_passed(),
                "({d},{n}): {:?}",
                report.failures().collect::<Vec<_>>()
            );
        }
        let c = ctx(3, 2);
        let report = verify_core_relations(&c).unwrap();
        assert!(report
            .records
            .iter()
            .all(|r| r.id != "braid" && r.id != "braid-far"));
    }

    #[test]
    fn mismatched_contexts_are_rejected() {
        let a = AlgebraElement::one(&ctx(2, 2));
        let b = AlgebraElement::one(&ctx(3, 2));
        assert!(matches!(
            a.try_mul(&b),
            Err(AlgebraError::ContextMismatch { .. })
        ));
        let r = AlgebraContext::new(2, 2, ScalarMode::Rational).unwrap();
        assert!(AlgebraElement::gen_t(&r, 1).is_err());
    }
}
