//! The acceptance matrix as one command.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use yokonuma::algebra::{
    exponent_vectors, from_t_basis, AlgebraContext, AlgebraElement, ScalarMode,
};
use yokonuma::coefficients::rat;
use yokonuma::combinatorics::{set_partitions, QuantumChar, SymmetricGroup};
use yokonuma::fixed::{class_idempotent, class_product, class_representative};
use yokonuma::hecke::{dimension_identity, KConvention, Tier};
use yokonuma::oracles::{t_monomial, t_mul, TElement};
use yokonuma::presentations::{span_closure, Library};
use yokonuma::rep::{
    build_module, enumerate_simples, inertia_sd, inertia_zp, isotypic_decompose, phi_sigma,
    verify_module, InertiaAction, Matrix,
};
use yokonuma::report::CheckRecord;

use crate::commands::{
    fixed_basis_cmd, psi_check, rank, simples, verify_relset, CmdResult, Group, UsageError,
};
use crate::output::Out;

fn timed(
    out: &mut Out,
    id: &str,
    limit: Duration,
    f: impl FnOnce(&mut Out) -> CmdResult,
) -> CmdResult {
    let start = Instant::now();
    f(out)?;
    let took = start.elapsed();
    out.check(CheckRecord::from_bool(id, "time", took <= limit, || {
        format!(
            "{} ms over the {} ms limit",
            took.as_millis(),
            limit.as_millis()
        )
    }));
    Ok(())
}

fn ctx(d: usize, n: usize, mode: ScalarMode) -> Result<Arc<AlgebraContext>, UsageError> {
    Ok(AlgebraContext::new(d, n, mode)?)
}

fn t_basis(d: usize, n: usize) -> Vec<TElement> {
    let perms = SymmetricGroup::get(n);
    exponent_vectors(d, n)
        .into_iter()
        .flat_map(|a| {
            perms
                .elements()
                .iter()
                .map(move |w| t_monomial(a.clone(), w.clone()))
        })
        .collect()
}

fn oracle_pairs(
    out: &mut Out,
    d: usize,
    n: usize,
    pairs: &[(usize, usize)],
    basis: &[TElement],
) -> CmdResult {
    let c = ctx(d, n, ScalarMode::Cyclotomic)?;
    let bad = pairs
        .par_iter()
        .filter(|&&(a, b)| {
            let lhs =
                from_t_basis(&c, &t_mul(d, &basis[a], &basis[b])).expect("cyclotomic context");
            let x = from_t_basis(&c, &basis[a]).expect("cyclotomic context");
            let y = from_t_basis(&c, &basis[b]).expect("cyclotomic context");
            lhs != x.try_mul(&y).expect("same context")
        })
        .count();
    out.expect_eq(
        "criterion-2",
        &format!("d={d},n={n},pairs={}", pairs.len()),
        bad,
        0,
    );
    Ok(())
}

fn associativity(out: &mut Out, d: usize, n: usize, triples: &[[usize; 3]]) -> CmdResult {
    let c = ctx(d, n, ScalarMode::Rational)?;
    let order = c.symmetric_group().order();
    let b = |k: usize| AlgebraElement::basis(&c, k / order, k % order);
    let bad = triples
        .par_iter()
        .filter(|[x, y, z]| {
            let (x, y, z) = (b(*x), b(*y), b(*z));
            x.try_mul(&y).unwrap().try_mul(&z).unwrap()
                != x.try_mul(&y.try_mul(&z).unwrap()).unwrap()
        })
        .count();
    out.expect_eq(
        "criterion-3",
        &format!("d={d},n={n},triples={}", triples.len()),
        bad,
        0,
    );
    Ok(())
}

pub fn sweep(out: &mut Out, seed: u64) -> CmdResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let min = |m: u64| Duration::from_secs(60 * m);

    for (d, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        timed(out, "criterion-1", Duration::from_secs(1), |o| {
            rank(o, d, n, Group::None, None)
        })?;
    }

    timed(out, "criterion-2", Duration::from_secs(30), |o| {
        let small = t_basis(2, 2);
        let all: Vec<(usize, usize)> = (0..small.len())
            .flat_map(|a| (0..small.len()).map(move |b| (a, b)))
            .collect();
        oracle_pairs(o, 2, 2, &all, &small)?;
        let big = t_basis(2, 3);
        let random: Vec<(usize, usize)> = (0..1000)
            .map(|_| (rng.gen_range(0..big.len()), rng.gen_range(0..big.len())))
            .collect();
        oracle_pairs(o, 2, 3, &random, &big)
    })?;

    timed(out, "criterion-3", min(1), |o| {
        let all: Vec<[usize; 3]> = (0..8)
            .flat_map(|x| (0..8).flat_map(move |y| (0..8).map(move |z| [x, y, z])))
            .collect();
        associativity(o, 2, 2, &all)?;
        for (d, n, dim) in [(2, 3, 48), (3, 2, 18)] {
            let random: Vec<[usize; 3]> = (0..500)
                .map(|_| {
                    [
                        rng.gen_range(0..dim),
                        rng.gen_range(0..dim),
                        rng.gen_range(0..dim),
                    ]
                })
                .collect();
            associativity(o, d, n, &random)?;
        }
        Ok(())
    })?;

    let lib = Library::builtin();
    let names = |s: &[&str]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    timed(out, "criterion-4", min(2), |o| {
        for (d, n) in [(2, 2), (2, 3), (3, 2)] {
            verify_relset(o, lib, "YH_T", &names(&["identity"]), d, 1, n)?;
            verify_relset(o, lib, "YH_E", &names(&["identity-e"]), d, 1, n)?;
        }
        for (d, n) in [(2, 3), (3, 3)] {
            verify_relset(o, lib, "BT", &names(&["phi"]), d, 1, n)?;
        }
        for (d, p, n) in [(2, 2, 2), (4, 2, 2), (2, 2, 3), (3, 3, 2)] {
            verify_relset(o, lib, "R1R4", &names(&["embed"]), d, p, n)?;
            verify_relset(o, lib, "LEMMA", &names(&["lemma-embed"]), d, p, n)?;
            verify_relset(o, lib, "RPRIME", &names(&["psi-def"]), d, p, n)?;
            verify_relset(o, lib, "BRAID", &names(&["theo-def"]), d, p, n)?;
            verify_relset(o, lib, "QUOT", &names(&["theo-def"]), d, p, n)?;
        }
        Ok(())
    })?;

    timed(out, "criterion-5", min(1), |o| {
        for (d, n, classes) in [(2, 3, 4), (3, 3, 5)] {
            let c = ctx(d, n, ScalarMode::Rational)?;
            let parts = set_partitions(n, d);
            o.expect_eq(
                "criterion-5",
                &format!("classes d={d},n={n}"),
                parts.len(),
                classes,
            );
            for class in parts {
                let rep = class_representative(d, &class, n);
                let ok = class_product(&c, &rep)? == class_idempotent(&c, &rep)?;
                o.check(CheckRecord::from_bool(
                    "criterion-5",
                    format!("d={d},n={n},{class}"),
                    ok,
                    || "product of ties differs from the orbit idempotent".into(),
                ));
            }
        }
        Ok(())
    })?;

    timed(out, "criterion-6", min(2), |o| {
        for (d, n) in [(2, 2), (2, 3), (3, 3)] {
            fixed_basis_cmd(o, d, n, Group::Sd, None)?;
        }
        for (d, p, n) in [(2, 2, 2), (4, 2, 2), (2, 2, 3)] {
            fixed_basis_cmd(o, d, n, Group::Zp, Some(p))?;
        }
        Ok(())
    })?;

    timed(out, "criterion-7", min(2), |o| {
        for (d, n, want) in [(2, 3, 24), (3, 3, 30)] {
            let c = ctx(d, n, ScalarMode::Rational)?;
            let mut gens = Vec::new();
            for i in 1..n {
                gens.push(AlgebraElement::gen_g(&c, i)?);
                gens.push(AlgebraElement::gen_e(&c, i)?);
            }
            let got = span_closure(&c, &gens)?.rank;
            o.expect_eq("criterion-7", &format!("d={d},n={n}"), got, want);
        }
        Ok(())
    })?;

    timed(out, "criterion-8", min(5), |o| {
        for (d, n) in [(2, 2), (2, 3)] {
            psi_check(o, d, n, Tier::Exact, seed, KConvention::AsPrinted)?;
        }
        for d in 1..=4 {
            for n in 1..=4 {
                let (lhs, rhs) = dimension_identity(d, n);
                o.expect_eq(
                    "criterion-8",
                    &format!("block dimensions d={d},n={n}"),
                    lhs,
                    rhs,
                );
            }
        }
        Ok(())
    })?;

    timed(out, "criterion-9", min(1), |o| {
        let inf = QuantumChar::Infinite;
        for (d, n) in [(2, 2), (2, 3), (3, 2)] {
            simples(o, d, n, inf, Group::None, None, true)?;
        }
        simples(o, 2, 2, inf, Group::Sd, None, true)?;
        simples(o, 2, 2, inf, Group::Zp, Some(2), true)?;
        simples(o, 2, 3, inf, Group::Zp, Some(2), true)?;
        let count = enumerate_simples(2, 2, QuantumChar::Finite(2))?.len();
        o.expect_eq("criterion-9", "labels d=2,n=2,e=2", count, 3);
        Ok(())
    })?;

    timed(out, "criterion-10", min(2), |o| {
        for (d, n) in [(2, 2), (2, 3)] {
            for label in enumerate_simples(d, n, QuantumChar::Infinite)? {
                let v = build_module(&label)?;
                o.checks(verify_module(&v)?.relations);
                for sigma in SymmetricGroup::get(d).elements() {
                    let phi = phi_sigma(&v, sigma)?;
                    let w = build_module(&phi.target)?;
                    let p: Matrix<_> = phi.matrix();
                    let mut ok = (1..n).all(|i| p.mul(v.g(i).unwrap()) == w.g(i).unwrap().mul(&p));
                    let inv = sigma.inverse();
                    for part in v.basis().parts() {
                        ok &= p.mul(&v.idempotent(&part.act_sd(&inv))?)
                            == w.idempotent(part)?.mul(&p);
                    }
                    o.check(CheckRecord::from_bool(
                        "criterion-10",
                        format!("eq-iso {} {sigma}", label.lambda),
                        ok,
                        || "intertwining identity fails on a generator".into(),
                    ));
                }
            }
        }
        for label in enumerate_simples(2, 2, QuantumChar::Infinite)? {
            let v = build_module(&label)?;
            let actions = [
                InertiaAction::Sd(inertia_sd(&label.lambda)),
                InertiaAction::Zp(inertia_zp(&label.lambda, 2)?),
            ];
            for action in &actions {
                for c in isotypic_decompose(&v, action)? {
                    let ok = c
                        .formula
                        .as_ref()
                        .is_some_and(|f| *f == rat(c.dim as i64, 1));
                    o.check(CheckRecord::from_bool(
                        "criterion-10",
                        format!("isotypic {} {}", label.lambda, c.irrep),
                        ok,
                        || {
                            format!(
                                "dim {} vs formula {:?}",
                                c.dim,
                                c.formula.as_ref().map(|f| f.to_string())
                            )
                        },
                    ));
                }
            }
        }
        Ok(())
    })?;

    Ok(())
}
