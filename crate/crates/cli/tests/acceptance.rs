//! Acceptance criteria 1–11. Each criterion prints one PASS/FAIL line with its
//! wall time; all arithmetic is exact, so every comparison is equality.

use std::collections::BTreeMap;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use yokonuma::algebra::{
    exponent_vectors, from_t_basis, to_t_basis, AlgebraContext, AlgebraElement, ScalarMode,
};
use yokonuma::coefficients::rat;
use yokonuma::combinatorics::{count_classes, set_partitions, QuantumChar, SymmetricGroup};
use yokonuma::fixed::{
    class_idempotent, class_product, class_representative, fixed_basis, reynolds_rank, SubgroupSpec,
};
use yokonuma::hecke::{dimension_identity, verify_iso, IsoOptions, KConvention, Tier};
use yokonuma::oracles::{t_monomial, t_mul, TElement};
use yokonuma::presentations::{span_closure, verify, Library, Params};
use yokonuma::rep::{
    build_module, clifford_simples_sd, clifford_simples_zp, dim_y, enumerate_simples, inertia_sd,
    inertia_zp, isotypic_decompose, phi_sigma, verify_module, InertiaAction, Matrix,
};

const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;

/// Number, name, time limit, check.
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ctx(d: usize, n: usize, mode: ScalarMode) -> Arc<AlgebraContext> {
    AlgebraContext::new(d, n, mode).expect("valid parameters")
}

fn fact(n: u64) -> u64 {
    (1..=n).product()
}

fn basis_element(c: &Arc<AlgebraContext>, k: usize) -> AlgebraElement {
    let order = c.symmetric_group().order();
    AlgebraElement::basis(c, k / order, k % order)
}

fn c1_core_ranks() -> Outcome {
    for (d, n, want) in [(2, 2, 8), (2, 3, 48), (3, 2, 18), (3, 3, 162)] {
        let start = Instant::now();
        let c = ctx(d, n, ScalarMode::Rational);
        let took = start.elapsed();
        ensure(c.dimension() == want, || {
            format!("({d},{n}): basis size {} != {want}", c.dimension())
        })?;
        ensure(
            want as u64 == (d as u64).pow(n as u32) * fact(n as u64),
            || "formula".into(),
        )?;
        ensure(took < Duration::from_secs(1), || {
            format!("({d},{n}) took {took:?}")
        })?;
    }
    Ok("8, 48, 18, 162".into())
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

/// Products of `t`-basis elements: the oracle's product against the E-basis
/// product read back in `t`-coordinates.
fn oracle_mismatches(d: usize, n: usize, pairs: &[(usize, usize)]) -> usize {
    let c = ctx(d, n, ScalarMode::Cyclotomic);
    let basis = t_basis(d, n);
    pairs
        .par_iter()
        .filter(|&&(a, b)| {
            let x = from_t_basis(&c, &basis[a]).unwrap();
            let y = from_t_basis(&c, &basis[b]).unwrap();
            let via_e: BTreeMap<_, _> = to_t_basis(&x.try_mul(&y).unwrap()).unwrap();
            via_e != t_mul(d, &basis[a], &basis[b])
        })
        .count()
}

fn c2_oracle() -> Outcome {
    let all: Vec<(usize, usize)> = (0..8).flat_map(|a| (0..8).map(move |b| (a, b))).collect();
    let bad = oracle_mismatches(2, 2, &all);
    ensure(bad == 0, || format!("{bad} of 64 pairs differ at (2,2)"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let random: Vec<(usize, usize)> = (0..1000)
        .map(|_| (rng.gen_range(0..48), rng.gen_range(0..48)))
        .collect();
    let bad = oracle_mismatches(2, 3, &random);
    ensure(bad == 0, || format!("{bad} of 1000 pairs differ at (2,3)"))?;
    Ok("64 pairs at (2,2), 1000 at (2,3)".into())
}

fn associativity_failures(d: usize, n: usize, triples: &[[usize; 3]]) -> usize {
    let c = ctx(d, n, ScalarMode::Rational);
    triples
        .par_iter()
        .filter(|t| {
            let [x, y, z] = t.map(|k| basis_element(&c, k));
            let left = x.try_mul(&y).unwrap().try_mul(&z).unwrap();
            let right = x.try_mul(&y.try_mul(&z).unwrap()).unwrap();
            left != right
        })
        .count()
}

fn c3_associativity() -> Outcome {
    let all: Vec<[usize; 3]> = (0..8)
        .flat_map(|x| (0..8).flat_map(move |y| (0..8).map(move |z| [x, y, z])))
        .collect();
    ensure(all.len() == 512, || "triple count".into())?;
    let bad = associativity_failures(2, 2, &all);
    ensure(bad == 0, || format!("{bad} triples fail at (2,2)"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
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
        let bad = associativity_failures(d, n, &random);
        ensure(bad == 0, || {
            format!("{bad} of 500 triples fail at ({d},{n})")
        })?;
    }
    Ok("512 + 500 + 500 triples".into())
}

fn sweep(relset: &str, assign: &str, d: usize, p: usize, n: usize) -> Result<usize, String> {
    let start = Instant::now();
    let params = Params::new(d, p, n).map_err(|e| e.to_string())?;
    let lib = Library::builtin();
    let rs = lib
        .relation_set(relset, params)
        .map_err(|e| e.to_string())?;
    let asg = lib
        .assignment(&[assign], params)
        .map_err(|e| e.to_string())?;
    let report = verify(&rs, &asg).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let where_ = format!("{relset} under {assign} at ({d},{p},{n})");
    ensure(report.passed(), || {
        let f = report
            .relations
            .failures()
            .chain(report.generators.failures())
            .next();
        format!("{where_}: {f:?}")
    })?;
    ensure(!report.relations.records.is_empty(), || {
        format!("{where_}: no relations")
    })?;
    ensure(took < Duration::from_secs(120), || {
        format!("{where_} took {took:?}")
    })?;
    Ok(report.relations.records.len())
}

fn c4_relation_sweeps() -> Outcome {
    let mut instances = 0;
    for (d, n) in [(2, 2), (2, 3), (3, 2)] {
        instances += sweep("YH_T", "identity", d, 1, n)?;
        instances += sweep("YH_E", "identity-e", d, 1, n)?;
    }
    for (d, n) in [(2, 3), (3, 3)] {
        instances += sweep("BT", "phi", d, 1, n)?;
    }
    for (d, p, n) in [(2, 2, 2), (4, 2, 2), (2, 2, 3), (3, 3, 2)] {
        instances += sweep("R1R4", "embed", d, p, n)?;
        instances += sweep("LEMMA", "lemma-embed", d, p, n)?;
        instances += sweep("RPRIME", "psi-def", d, p, n)?;
        instances += sweep("BRAID", "theo-def", d, p, n)?;
        instances += sweep("QUOT", "theo-def", d, p, n)?;
    }
    Ok(format!("{instances} relation instances"))
}

fn c5_ties_lemma() -> Outcome {
    for (d, n, classes) in [(2, 3, 4), (3, 3, 5)] {
        let c = ctx(d, n, ScalarMode::Rational);
        let parts = set_partitions(n, d);
        ensure(parts.len() == classes, || {
            format!("({d},{n}): {} classes", parts.len())
        })?;
        for class in parts {
            let rep = class_representative(d, &class, n);
            let e = class_product(&c, &rep).map_err(|e| e.to_string())?;
            let big_e = class_idempotent(&c, &rep).map_err(|e| e.to_string())?;
            ensure(e == big_e, || format!("({d},{n}) class {class}"))?;
        }
    }
    Ok("4 classes at (2,3), 5 at (3,3)".into())
}

fn c6_fixed_ranks() -> Outcome {
    let cases = [
        (2, 2, SubgroupSpec::Full, 4),
        (2, 3, SubgroupSpec::Full, 24),
        (3, 3, SubgroupSpec::Full, 30),
        (2, 2, SubgroupSpec::Cyclic(2), 4),
        (4, 2, SubgroupSpec::Cyclic(2), 16),
        (2, 3, SubgroupSpec::Cyclic(2), 24),
    ];
    for (d, n, spec, want) in cases {
        let mode = if matches!(spec, SubgroupSpec::Cyclic(_)) {
            ScalarMode::Cyclotomic
        } else {
            ScalarMode::Rational
        };
        let c = ctx(d, n, mode);
        let b = fixed_basis(&c, &spec).map_err(|e| e.to_string())?;
        ensure(b.len() == want && b.rank() == want, || {
            format!("({d},{n},{spec:?}): {} / rank {}", b.len(), b.rank())
        })?;
        let r = reynolds_rank(&c, &spec).map_err(|e| e.to_string())?;
        ensure(r == want, || {
            format!("({d},{n},{spec:?}): Reynolds rank {r}")
        })?;
        let formula = match spec {
            SubgroupSpec::Full => count_classes(d, n) * fact(n as u64),
            SubgroupSpec::Cyclic(p) => (d as u64).pow(n as u32) * fact(n as u64) / p as u64,
            SubgroupSpec::Explicit(_) => unreachable!(),
        };
        ensure(formula == want as u64, || "formula".into())?;
    }
    Ok("4, 24, 30; 4, 16, 24".into())
}

fn c7_span_closure() -> Outcome {
    for (d, n, want) in [(2, 3, 24), (3, 3, 30)] {
        let c = ctx(d, n, ScalarMode::Rational);
        let mut gens = Vec::new();
        for i in 1..n {
            gens.push(AlgebraElement::gen_g(&c, i).unwrap());
            gens.push(AlgebraElement::gen_e(&c, i).unwrap());
        }
        let rank = span_closure(&c, &gens).map_err(|e| e.to_string())?.rank;
        ensure(rank == want, || format!("({d},{n}): rank {rank} != {want}"))?;
        let full = count_classes(n, n) * fact(n as u64);
        ensure(full == 30, || {
            format!("Bell number times n! at n={n}: {full}")
        })?;
        ensure((rank as u64 == full) == (d >= n), || {
            format!("({d},{n}): rank {rank} vs {full}")
        })?;
    }
    Ok("24 < 30 at (2,3); 30 at (3,3)".into())
}

fn c8_psi() -> Outcome {
    for (d, n, dim) in [(2, 2, 8), (2, 3, 48)] {
        let c = ctx(d, n, ScalarMode::Rational);
        let r = verify_iso(&c, &IsoOptions::default());
        ensure(r.passed(), || {
            format!("({d},{n}): {:?}", r.checks.failures().next())
        })?;
        ensure(r.exact_rank == Some(dim), || {
            format!("({d},{n}): exact rank {:?}", r.exact_rank)
        })?;
        ensure(r.pairs_checked == dim * dim && r.pair_failures == 0, || {
            format!("({d},{n}): pairs {}", r.pairs_checked)
        })?;
        ensure(r.target_dimension == dim, || "target dimension".into())?;
    }
    for d in 1..=4 {
        for n in 1..=4 {
            let (lhs, rhs) = dimension_identity(d, n);
            ensure(
                lhs == rhs && rhs == (d as u64).pow(n as u32) * fact(n as u64),
                || format!("({d},{n}): {lhs} vs {rhs}"),
            )?;
        }
    }
    Ok("bijective homomorphism at (2,2), (2,3); block identity d,n <= 4".into())
}

fn c9_simples() -> Outcome {
    let inf = QuantumChar::Infinite;
    for (d, n, want) in [(2, 2, 8), (2, 3, 48), (3, 2, 18)] {
        let s: u64 = enumerate_simples(d, n, inf)
            .unwrap()
            .iter()
            .map(|l| dim_y(l).unwrap().pow(2))
            .sum();
        ensure(s == want, || format!("Y({d},{n}): {s}"))?;
    }
    let sd: u64 = clifford_simples_sd(2, 2, inf)
        .unwrap()
        .iter()
        .map(|e| e.dim.unwrap().pow(2))
        .sum();
    ensure(sd == 4, || format!("S_2 at (2,2): {sd}"))?;
    for (d, p, n, want) in [(2, 2, 2, 4), (2, 2, 3, 24)] {
        let s: u64 = clifford_simples_zp(d, p, n, inf)
            .unwrap()
            .iter()
            .map(|e| e.dim.unwrap().pow(2))
            .sum();
        ensure(s == want, || format!("Z/{p} at ({d},{n}): {s}"))?;
    }
    let labels = enumerate_simples(2, 2, QuantumChar::Finite(2))
        .unwrap()
        .len();
    ensure(labels == 3, || format!("(2,2,e=2): {labels} labels"))?;
    Ok("8, 48, 18; 4; 4, 24; 3 labels at e=2".into())
}

fn c10_modules() -> Outcome {
    let mut modules = 0;
    for (d, n) in [(2, 2), (2, 3)] {
        for label in enumerate_simples(d, n, QuantumChar::Infinite).unwrap() {
            let v = build_module(&label).map_err(|e| e.to_string())?;
            let r = verify_module(&v).map_err(|e| e.to_string())?;
            ensure(r.passed(), || {
                format!("{}: {:?}", label.lambda, r.relations.failures().next())
            })?;
            modules += 1;
            for sigma in SymmetricGroup::get(d).elements() {
                let phi = phi_sigma(&v, sigma).map_err(|e| e.to_string())?;
                let w = build_module(&phi.target).map_err(|e| e.to_string())?;
                let p: Matrix<_> = phi.matrix();
                for i in 1..n {
                    ensure(p.mul(v.g(i).unwrap()) == w.g(i).unwrap().mul(&p), || {
                        format!("eq-iso g{i} {} {sigma}", label.lambda)
                    })?;
                }
                let inv = sigma.inverse();
                for part in yokonuma::combinatorics::enumerate_ordered(d, n) {
                    let lhs = p.mul(&v.idempotent(&part.act_sd(&inv)).unwrap());
                    ensure(lhs == w.idempotent(&part).unwrap().mul(&p), || {
                        format!("eq-iso E{part} {} {sigma}", label.lambda)
                    })?;
                }
            }
        }
    }
    let mut components = 0;
    for label in enumerate_simples(2, 2, QuantumChar::Infinite).unwrap() {
        let v = build_module(&label).unwrap();
        let actions = [
            InertiaAction::Sd(inertia_sd(&label.lambda)),
            InertiaAction::Zp(inertia_zp(&label.lambda, 2).unwrap()),
        ];
        for action in &actions {
            for c in isotypic_decompose(&v, action).map_err(|e| e.to_string())? {
                ensure(c.formula == Some(rat(c.dim as i64, 1)), || {
                    format!("{} {}: {} vs {:?}", label.lambda, c.irrep, c.dim, c.formula)
                })?;
                components += 1;
            }
        }
    }
    Ok(format!(
        "{modules} modules, {components} isotypic components"
    ))
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_yokonuma"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn c11_negative_controls() -> Outcome {
    let corrupt = run_cli(&[
        "verify",
        "--relset",
        "BT",
        "--assign",
        "phi-corrupt",
        "--d",
        "2",
        "--n",
        "3",
    ]);
    ensure(corrupt.status.code() == Some(1), || {
        format!("corrupted assignment exit {:?}", corrupt.status.code())
    })?;
    let stdout = String::from_utf8_lossy(&corrupt.stdout);
    ensure(stdout.contains("\"status\":\"fail\""), || {
        "no failing record for the corrupted assignment".into()
    })?;

    let wrong_k = run_cli(&[
        "psi-check",
        "--d",
        "2",
        "--n",
        "2",
        "--k-convention",
        "off-by-one",
    ]);
    ensure(wrong_k.status.code() == Some(1), || {
        format!("wrong k exit {:?}", wrong_k.status.code())
    })?;
    let c = ctx(2, 3, ScalarMode::Rational);
    let opts = IsoOptions {
        convention: KConvention::OffByOne,
        tier: Tier::Exact,
        ..IsoOptions::default()
    };
    ensure(!verify_iso(&c, &opts).passed(), || {
        "wrong k passes at (2,3)".into()
    })?;

    let good = run_cli(&[
        "verify", "--relset", "BT", "--assign", "phi", "--d", "2", "--n", "3",
    ]);
    ensure(good.status.code() == Some(0), || {
        "control run does not pass".into()
    })?;
    Ok("both controls exit 1".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 11] = [
        (1, "core ranks", Duration::from_secs(4), c1_core_ranks),
        (
            2,
            "E-basis vs t-basis oracle",
            Duration::from_secs(30),
            c2_oracle,
        ),
        (
            3,
            "associativity",
            Duration::from_secs(60),
            c3_associativity,
        ),
        (
            4,
            "relation sweeps",
            Duration::from_secs(22 * 120),
            c4_relation_sweeps,
        ),
        (5, "ties lemma", Duration::from_secs(60), c5_ties_lemma),
        (
            6,
            "fixed-point ranks",
            Duration::from_secs(120),
            c6_fixed_ranks,
        ),
        (7, "span closure", Duration::from_secs(120), c7_span_closure),
        (8, "psi isomorphism", Duration::from_secs(300), c8_psi),
        (
            9,
            "simple-module counts",
            Duration::from_secs(60),
            c9_simples,
        ),
        (
            10,
            "explicit modules",
            Duration::from_secs(120),
            c10_modules,
        ),
        (
            11,
            "negative controls",
            Duration::from_secs(120),
            c11_negative_controls,
        ),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (k, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if took <= limit {
                Ok(msg)
            } else {
                Err(format!(
                    "{} ms over the {} ms limit",
                    took.as_millis(),
                    limit.as_millis()
                ))
            }
        });
        let line = match &outcome {
            Ok(msg) => format!(
                "criterion {k:>2} PASS {name} ({} ms): {msg}",
                took.as_millis()
            ),
            Err(msg) => format!(
                "criterion {k:>2} FAIL {name} ({} ms): {msg}",
                took.as_millis()
            ),
        };
        // Written past the test harness's capture so the lines always show.
        writeln!(err, "{line}").unwrap();
        if outcome.is_err() {
            failed.push(k);
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
