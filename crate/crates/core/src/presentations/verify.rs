use std::collections::VecDeque;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::eval::{Evaluator, HeckeTarget, Target, YTarget};
use super::library::{Assignment, Params, RelationSet, TargetKind};
use super::parser::parse_expression;
use super::PresentationError;
use crate::algebra::{AlgebraContext, AlgebraElement, AlgebraError, ScalarMode};
use crate::fixed::is_fixed;
use crate::hecke::KConvention;
use crate::linalg::{ScalarEchelon, SparseVec};
use crate::report::{CheckRecord, Report};

/// Terms shown in a failing relation's difference.
const DIFF_CAP: usize = 50;

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub relset: String,
    pub assignment: String,
    pub d: usize,
    pub p: usize,
    pub n: usize,
    pub target: TargetKind,
    /// One record per relation instance, in instantiation order.
    pub relations: Report,
    /// `assigned`, `invertible` and `fixed` checks per generator instance.
    pub generators: Report,
    pub elapsed_ms: u128,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.relations.all_passed() && self.generators.all_passed()
    }
}

fn gen_label(name: &str, args: &[i64]) -> String {
    if args.is_empty() {
        name.to_string()
    } else {
        let a: Vec<String> = args.iter().map(i64::to_string).collect();
        format!("{name}({})", a.join(","))
    }
}

fn check_params(relset: &RelationSet, asg: &Assignment) -> Result<(), PresentationError> {
    if relset.params != asg.params {
        return Err(PresentationError::InvalidParameters(format!(
            "relation set at {} but assignment at {}",
            relset.params, asg.params
        )));
    }
    Ok(())
}

type FixedCheck<'a, E> = Option<&'a (dyn Fn(&E) -> Result<bool, PresentationError> + Sync)>;

fn run<T: Target>(
    target: &T,
    relset: &RelationSet,
    asg: &Assignment,
    fixed: FixedCheck<'_, T::Elem>,
) -> Result<(Report, Report), PresentationError> {
    let ev = Evaluator::new(target, Some(relset), asg);
    let mut generators = Report::new();
    for (name, args) in relset.generator_instances()? {
        let label = gen_label(&name, &args);
        let image = match ev.generator(&name, &args, false) {
            Ok(x) => x,
            Err(e) => {
                generators.push(CheckRecord::fail("assigned", label, e.to_string()));
                continue;
            }
        };
        generators.push(CheckRecord::pass("assigned", label.clone()));
        let decl = relset
            .generator(&name)
            .expect("instance of a declared generator");
        if decl.invertible {
            let record = match ev.generator(&name, &args, true) {
                Ok(inv) => {
                    let one = target.one();
                    let ok = target.mul(&image, &inv) == one && target.mul(&inv, &image) == one;
                    CheckRecord::from_bool("invertible", label.clone(), ok, || {
                        "image times its inverse image is not 1".into()
                    })
                }
                Err(e) => CheckRecord::fail("invertible", label.clone(), e.to_string()),
            };
            generators.push(record);
        }
        if let Some(f) = fixed {
            generators.push(match f(&image) {
                Ok(ok) => CheckRecord::from_bool("fixed", label, ok, || {
                    "image is not fixed by the subgroup".into()
                }),
                Err(e) => CheckRecord::fail("fixed", label, e.to_string()),
            });
        }
    }
    let records: Vec<CheckRecord> = relset
        .relations
        .par_iter()
        .map(|rel| {
            let sides = ev
                .eval_source(&rel.lhs)
                .and_then(|l| ev.eval_source(&rel.rhs).map(|r| (l, r)));
            match sides {
                Ok((l, r)) if l == r => CheckRecord::pass(&rel.id, &rel.instance),
                Ok((l, r)) => {
                    let diff = target.add(
                        &l,
                        &target.scale(&r, &crate::coefficients::Scalar::from_int(-1)),
                    );
                    CheckRecord::fail(
                        &rel.id,
                        &rel.instance,
                        format!("difference: {}", target.describe(&diff, DIFF_CAP)),
                    )
                }
                Err(e) => CheckRecord::fail(&rel.id, &rel.instance, e.to_string()),
            }
        })
        .collect();
    Ok((Report { records }, generators))
}

/// Checks every relation instance of `relset` under `asg`, plus the
/// generator-level conditions. Evaluation errors are reported per instance.
pub fn verify(relset: &RelationSet, asg: &Assignment) -> Result<VerifyReport, PresentationError> {
    check_params(relset, asg)?;
    let start = Instant::now();
    let Params { d, p, n } = asg.params;
    let (relations, generators) = match asg.target {
        TargetKind::Y => {
            let ctx = AlgebraContext::new(d, n, asg.mode)?;
            let target = YTarget::new(ctx);
            match asg.fixed {
                Some(spec) => {
                    let group = spec.subgroup(p);
                    let f = move |x: &AlgebraElement| Ok(is_fixed(x, &group)?);
                    run(&target, relset, asg, Some(&f))?
                }
                None => run(&target, relset, asg, None)?,
            }
        }
        TargetKind::Hecke => {
            let target = HeckeTarget::new(d, n, KConvention::AsPrinted)?;
            run(&target, relset, asg, None)?
        }
        TargetKind::Module => {
            return Err(PresentationError::InvalidParameters(
                "module targets are checked with verify_with".into(),
            ))
        }
    };
    Ok(VerifyReport {
        relset: relset.name.clone(),
        assignment: asg.name.clone(),
        d,
        p,
        n,
        target: asg.target,
        relations,
        generators,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Checks `relset` under `asg` with the final builtins supplied by `target`
/// instead of the assignment's own target algebra.
pub fn verify_with<T: Target>(
    target: &T,
    kind: TargetKind,
    relset: &RelationSet,
    asg: &Assignment,
) -> Result<VerifyReport, PresentationError> {
    check_params(relset, asg)?;
    let start = Instant::now();
    let Params { d, p, n } = asg.params;
    let (relations, generators) = run(target, relset, asg, None)?;
    Ok(VerifyReport {
        relset: relset.name.clone(),
        assignment: asg.name.clone(),
        d,
        p,
        n,
        target: kind,
        relations,
        generators,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Compares the images of every generator instance of `relset` under two
/// assignments into `Y(d,n)`.
pub fn compare_on_generators(
    relset: &RelationSet,
    a: &Assignment,
    b: &Assignment,
) -> Result<Report, PresentationError> {
    check_params(relset, a)?;
    check_params(relset, b)?;
    if a.target != TargetKind::Y || b.target != TargetKind::Y {
        return Err(PresentationError::InvalidParameters(
            "generator comparison needs assignments into Y".into(),
        ));
    }
    let mode = if a.mode == ScalarMode::Cyclotomic || b.mode == ScalarMode::Cyclotomic {
        ScalarMode::Cyclotomic
    } else {
        ScalarMode::Rational
    };
    let Params { d, n, .. } = a.params;
    let target = YTarget::new(AlgebraContext::new(d, n, mode)?);
    let (ea, eb) = (
        Evaluator::new(&target, Some(relset), a),
        Evaluator::new(&target, Some(relset), b),
    );
    let id = format!("{} = {}", a.name, b.name);
    let mut report = Report::new();
    for (name, args) in relset.generator_instances()? {
        let label = gen_label(&name, &args);
        report.push(
            match (
                ea.generator(&name, &args, false),
                eb.generator(&name, &args, false),
            ) {
                (Ok(x), Ok(y)) => CheckRecord::from_bool(&id, label, x == y, || {
                    format!("difference: {}", target.describe(&(&x - &y), DIFF_CAP))
                }),
                (Err(e), _) | (_, Err(e)) => CheckRecord::fail(&id, label, e.to_string()),
            },
        );
    }
    Ok(report)
}

/// Evaluates `text` in `Y(d,n)` using only the builtin names `g`, `t`, `e`,
/// `E` and the literals `E{…}`, `g[…]`.
pub fn evaluate_in_y(
    ctx: &Arc<AlgebraContext>,
    text: &str,
) -> Result<AlgebraElement, PresentationError> {
    let expr = parse_expression(text)?;
    let asg = Assignment {
        name: String::new(),
        params: Params::new(ctx.d(), 1, ctx.n())?,
        levels: Vec::new(),
        target: TargetKind::Y,
        mode: ctx.mode(),
        fixed: None,
    };
    let target = YTarget::new(ctx.clone());
    Evaluator::new(&target, None, &asg).eval_target(&expr)
}

/// Unital subalgebra generated by a list of elements.
#[derive(Clone, Debug)]
pub struct SpanClosure {
    pub rank: usize,
    /// Linearly independent elements spanning the subalgebra, `1` first.
    pub basis: Vec<AlgebraElement>,
}

fn sparse(x: &AlgebraElement) -> SparseVec<crate::coefficients::Scalar> {
    let mut v = x.coordinates();
    v.sort_by_key(|(c, _)| *c);
    v
}

/// Closes the span of `1` under left and right multiplication by `gens`,
/// keeping only elements that enlarge the span.
pub fn span_closure(
    ctx: &Arc<AlgebraContext>,
    gens: &[AlgebraElement],
) -> Result<SpanClosure, AlgebraError> {
    let mut echelon = ScalarEchelon::new();
    let one = AlgebraElement::one(ctx);
    echelon.insert(&sparse(&one));
    let mut basis = vec![one.clone()];
    let mut queue = VecDeque::from([one]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            for y in [x.try_mul(g)?, g.try_mul(&x)?] {
                if !y.is_zero() && echelon.insert(&sparse(&y)) {
                    basis.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(SpanClosure {
        rank: echelon.rank(),
        basis,
    })
}
