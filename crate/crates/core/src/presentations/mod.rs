//! Expression language, relation sets, assignments and the relation verifier.
//!
//! Relation sets and assignments are text data (see `data/*.rel`); the
//! builtin library is embedded at compile time and further files can be
//! loaded with [`Library::load`].

mod ast;
mod eval;
mod lexer;
mod library;
mod parser;
mod verify;

pub use ast::{Binder, CmpOp, Cond, Env, Expr, IntExpr, IntOp, Literal};
pub use eval::{Evaluator, HeckeTarget, Target, Value, YTarget};
pub use library::{
    letter_count, AssignTemplate, Assignment, Define, FixedSpec, GenDecl, Level, Library, MapRule,
    Params, Pattern, RelationInstance, RelationSet, RelationTemplate, RelsetTemplate, TargetKind,
    TargetSpec,
};
pub use parser::{parse_condition, parse_expression};
pub use verify::{
    compare_on_generators, evaluate_in_y, span_closure, verify, verify_with, SpanClosure,
    VerifyReport,
};

use crate::algebra::AlgebraError;
use crate::fixed::FixedError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("unknown name {0}")]
    UnknownName(String),
    #[error("cyclic abbreviation through {0}")]
    Cyclic(String),
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("evaluation failed: {0}")]
    Eval(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unknown relation set {0}")]
    UnknownRelset(String),
    #[error("unknown assignment {0}")]
    UnknownAssignment(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Fixed(#[from] FixedError),
}

impl PresentationError {
    /// Syntax error at byte offset `at` of a single-line text.
    pub(crate) fn syntax(at: usize, msg: impl Into<String>) -> Self {
        PresentationError::Syntax {
            line: 1,
            col: at + 1,
            msg: msg.into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraContext, AlgebraElement, ScalarMode};
    use crate::report::Status;

    fn run(relset: &str, assign: &[&str], d: usize, p: usize, n: usize) -> VerifyReport {
        let lib = Library::builtin();
        let params = Params::new(d, p, n).unwrap();
        let rs = lib.relation_set(relset, params).unwrap();
        let asg = lib.assignment(assign, params).unwrap();
        verify(&rs, &asg).unwrap()
    }

    fn assert_passes(relset: &str, assign: &[&str], d: usize, p: usize, n: usize) {
        let r = run(relset, assign, d, p, n);
        let bad: Vec<_> = r
            .relations
            .failures()
            .chain(r.generators.failures())
            .collect();
        assert!(
            bad.is_empty(),
            "{relset} under {assign:?} at ({d},{p},{n}): {bad:#?}"
        );
        assert!(r.relations.count(Status::Pass) > 0);
    }

    #[test]
    fn yokonuma_self_checks() {
        for (d, n) in [(2, 2), (2, 3), (3, 2)] {
            assert_passes("YH_T", &["identity"], d, 1, n);
            assert_passes("YH_E", &["identity-e"], d, 1, n);
            assert_passes("YH_B", &["yh-b"], d, 1, n);
        }
    }

    #[test]
    fn idempotent_presentation_into_hecke() {
        assert_passes("YH_E", &["psi"], 2, 1, 2);
        assert_passes("YH_E", &["psi"], 2, 1, 3);
    }

    #[test]
    fn braids_and_ties_map() {
        assert_passes("BT", &["phi"], 2, 1, 3);
        assert_passes("BT", &["phi"], 3, 1, 3);
    }

    #[test]
    fn corrupted_generator_breaks_quadratic_relation() {
        let r = run("BT", &["phi-corrupt"], 2, 1, 3);
        let quad = r
            .relations
            .records
            .iter()
            .find(|c| c.id == "quadratic" && c.instance == "i=1")
            .unwrap();
        assert_eq!(quad.status, Status::Fail);
        assert!(quad.detail.as_deref().unwrap().starts_with("difference: "));
        assert_ne!(quad.detail.as_deref(), Some("difference: 0"));
        let untouched = r
            .relations
            .records
            .iter()
            .find(|c| c.id == "quadratic" && c.instance == "i=2")
            .unwrap();
        assert_eq!(untouched.status, Status::Pass);
    }

    #[test]
    fn fixed_point_presentations_sweep() {
        for (d, p, n) in [(2, 2, 2), (4, 2, 2), (3, 3, 2), (2, 2, 3)] {
            assert_passes("R1R4", &["embed"], d, p, n);
            assert_passes("LEMMA", &["lemma-embed"], d, p, n);
            assert_passes("LEMMA_DERIVED", &["lemma-embed"], d, p, n);
            assert_passes("RPRIME", &["psi-def"], d, p, n);
            assert_passes("RPRIME", &["Psi"], d, p, n);
            assert_passes("LEMMA", &["Phi"], d, p, n);
            assert_passes("BRAID", &["theo"], d, p, n);
            assert_passes("QUOT", &["theo"], d, p, n);
            assert_passes("BRAID", &["theo-def"], d, p, n);
            assert_passes("QUOT", &["theo-def"], d, p, n);
        }
    }

    #[test]
    fn cyclic_group_one_and_type_d() {
        for (d, n) in [(2, 2), (3, 2), (2, 3)] {
            assert_passes("R1R4", &["embed"], d, 1, n);
            assert_passes("BRAID", &["theo"], d, 1, n);
            assert_passes("QUOT", &["theo"], d, 1, n);
        }
        assert_passes("QUOT_D", &["theo"], 2, 2, 2);
        assert_passes("QUOT_D", &["theo"], 2, 2, 3);
    }

    #[test]
    fn composite_maps_are_identity_on_generators() {
        let lib = Library::builtin();
        for (d, p, n) in [(2, 2, 2), (4, 2, 2), (2, 2, 3)] {
            let params = Params::new(d, p, n).unwrap();
            let rprime = lib.relation_set("RPRIME", params).unwrap();
            let r = compare_on_generators(
                &rprime,
                &lib.assignment(&["Psi", "Phi"], params).unwrap(),
                &lib.assignment(&["psi-def"], params).unwrap(),
            )
            .unwrap();
            assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
            let lemma = lib.relation_set("LEMMA", params).unwrap();
            let r = compare_on_generators(
                &lemma,
                &lib.assignment(&["Phi", "Psi"], params).unwrap(),
                &lib.assignment(&["lemma-embed"], params).unwrap(),
            )
            .unwrap();
            assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn alternating_relation_lengths() {
        let lib = Library::builtin();
        let rs = lib
            .relation_set("BRAID", Params::new(3, 1, 2).unwrap())
            .unwrap();
        let alt = rs.relations.iter().find(|r| r.id == "alternating").unwrap();
        assert_eq!((letter_count(&alt.lhs), letter_count(&alt.rhs)), (2, 2));
        assert_eq!(
            alt.to_string(),
            "alternating [-]: s(1) * al0 == al0 * bw(1)"
        );
        assert!(!rs.relations.iter().any(|r| r.id == "alpha-trivial"));
        for p in [1, 3] {
            let rs = lib
                .relation_set("BRAID", Params::new(3, p, 2).unwrap())
                .unwrap();
            let alt = rs.relations.iter().find(|r| r.id == "alternating").unwrap();
            assert_eq!(
                (letter_count(&alt.lhs), letter_count(&alt.rhs)),
                (p + 1, p + 1)
            );
            assert_eq!(rs.relations.iter().any(|r| r.id == "alpha-trivial"), p == 3);
        }
    }

    #[test]
    fn conjugation_cases_at_two_strands() {
        let lib = Library::builtin();
        let rs = lib
            .relation_set("R1R4", Params::new(2, 2, 2).unwrap())
            .unwrap();
        let conj: Vec<&str> = rs
            .relations
            .iter()
            .filter(|r| r.id.starts_with("conj-a-"))
            .map(|r| r.id.as_str())
            .collect();
        assert_eq!(conj, ["conj-a-same"]);
    }

    #[test]
    fn tie_abbreviation_expands_to_pair_idempotent() {
        let lib = Library::builtin();
        let params = Params::new(3, 1, 3).unwrap();
        let rs = lib.relation_set("BT", params).unwrap();
        let asg = lib.assignment(&["phi"], params).unwrap();
        let ctx = AlgebraContext::new(3, 3, ScalarMode::Rational).unwrap();
        let target = YTarget::new(ctx.clone());
        let ev = Evaluator::new(&target, Some(&rs), &asg);
        for (i, j) in [(1, 3), (3, 1), (2, 3)] {
            let x = ev
                .eval_source(&rs.parse_expression(&format!("etij({i}, {j})")).unwrap())
                .unwrap();
            assert_eq!(x, AlgebraElement::gen_e_pair(&ctx, i, j).unwrap());
        }
    }

    #[test]
    fn cyclic_abbreviations_are_reported() {
        let lib = Library::parse(
            "relset LOOP\ngen x\ndefine u = w * x\ndefine w = u\nrel r: u == x\nassign plain\ninto Y\n",
        )
        .unwrap();
        let params = Params::new(2, 1, 2).unwrap();
        let rs = lib.relation_set("LOOP", params).unwrap();
        let asg = lib.assignment(&["plain"], params).unwrap();
        let r = verify(&rs, &asg).unwrap();
        let detail = r.relations.records[0].detail.clone().unwrap();
        assert!(detail.starts_with("cyclic abbreviation"), "{detail}");
    }

    #[test]
    fn inverse_only_for_invertible_generators() {
        let lib = Library::builtin();
        let params = Params::new(2, 1, 2).unwrap();
        let rs = lib.relation_set("BT", params).unwrap();
        let asg = lib.assignment(&["phi"], params).unwrap();
        let target = YTarget::new(AlgebraContext::new(2, 2, ScalarMode::Rational).unwrap());
        let ev = Evaluator::new(&target, Some(&rs), &asg);
        let e = rs.parse_expression("et(1)^-1").unwrap();
        assert!(matches!(
            ev.eval_source(&e),
            Err(PresentationError::NotInvertible(_))
        ));
        let g = rs.parse_expression("gt(1)^-1 * gt(1)").unwrap();
        assert_eq!(ev.eval_source(&g).unwrap(), target.one());
    }

    #[test]
    fn span_closure_ranks() {
        for (d, n, expected) in [(2, 2, 4), (2, 3, 24), (3, 3, 30)] {
            let ctx = AlgebraContext::new(d, n, ScalarMode::Rational).unwrap();
            let mut gens = Vec::new();
            for i in 1..n {
                gens.push(AlgebraElement::gen_g(&ctx, i).unwrap());
                gens.push(AlgebraElement::gen_e(&ctx, i).unwrap());
            }
            let s = span_closure(&ctx, &gens).unwrap();
            assert_eq!(s.rank, expected, "d={d} n={n}");
            assert_eq!(s.basis.len(), expected);
        }
    }

    #[test]
    fn builtin_names_evaluate_in_y() {
        let ctx = AlgebraContext::new(2, 2, ScalarMode::Cyclotomic).unwrap();
        let x = evaluate_in_y(&ctx, "g(1) * g(1)^-1 + t(1)^2 - 1").unwrap();
        assert_eq!(x, AlgebraElement::one(&ctx));
        let e = evaluate_in_y(&ctx, "E{1|2} + E{2|1}").unwrap();
        assert_eq!(e, evaluate_in_y(&ctx, "1 - e(1)").unwrap());
    }
}
