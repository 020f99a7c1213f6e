use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;

use clap::ValueEnum;
use serde_json::json;
use yokonuma::algebra::{AlgebraContext, AlgebraError, ScalarMode};
use yokonuma::combinatorics::{count_classes, QuantumChar};
use yokonuma::fixed::{
    expected_rank, fixed_basis, is_fixed, reynolds_rank, FixedError, SubgroupSpec,
};
use yokonuma::hecke::{verify_iso, IsoOptions, KConvention, Tier};
use yokonuma::presentations::{evaluate_in_y, verify, Library, Params, PresentationError};
use yokonuma::rep::{
    clifford_simples_sd, clifford_simples_zp, dim_y, enumerate_simples, sum_of_squares, RepError,
};
use yokonuma::report::CheckRecord;

use crate::output::Out;

/// Bad flags or inputs; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for UsageError {
            fn from(e: $t) -> Self {
                UsageError(e.to_string())
            }
        }
    )*};
}
usage_from!(AlgebraError, FixedError, PresentationError, RepError);

pub type CmdResult = Result<(), UsageError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Group {
    /// No group: `Y(d,n)` itself.
    None,
    /// The full symmetric group `S_d`.
    Sd,
    /// The cyclic subgroup of order `p` generated by the `d/p`-shift.
    Zp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Rational,
    Cyc,
}

impl From<Mode> for ScalarMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Rational => ScalarMode::Rational,
            Mode::Cyc => ScalarMode::Cyclotomic,
        }
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `p`, required and dividing `d` for the cyclic group.
pub fn cyclic_p(d: usize, p: Option<usize>) -> Result<usize, UsageError> {
    let p = p.ok_or_else(|| UsageError("--group zp needs --p".into()))?;
    if p == 0 || !d.is_multiple_of(p) {
        return Err(UsageError(format!("p = {p} does not divide d = {d}")));
    }
    Ok(p)
}

fn subgroup(d: usize, group: Group, p: Option<usize>) -> Result<Option<SubgroupSpec>, UsageError> {
    Ok(match group {
        Group::None => None,
        Group::Sd => Some(SubgroupSpec::Full),
        Group::Zp => Some(SubgroupSpec::Cyclic(cyclic_p(d, p)?)),
    })
}

fn context_for(
    d: usize,
    n: usize,
    spec: &Option<SubgroupSpec>,
) -> Result<Arc<AlgebraContext>, UsageError> {
    let mode = match spec {
        Some(SubgroupSpec::Cyclic(_)) => ScalarMode::Cyclotomic,
        _ => ScalarMode::Rational,
    };
    Ok(AlgebraContext::new(d, n, mode)?)
}

pub fn rank(out: &mut Out, d: usize, n: usize, group: Group, p: Option<usize>) -> CmdResult {
    let spec = subgroup(d, group, p)?;
    let ctx = context_for(d, n, &spec)?;
    let instance = format!("d={d},n={n}");
    match spec {
        None => {
            let formula = (d as u64).pow(n as u32) * factorial(n);
            let size = ctx.dimension() as u64;
            out.row(
                json!({ "formula": formula, "basis_size": size }),
                format!("{formula} (basis {size})"),
            );
            out.expect_eq("rank", &instance, size, formula);
        }
        Some(spec) => {
            let formula = expected_rank(d, n, &spec).expect("validated subgroup");
            let basis = fixed_basis(&ctx, &spec)?;
            let (size, span) = (basis.len() as u64, basis.rank() as u64);
            out.row(
                json!({ "formula": formula, "basis_size": size, "span_rank": span }),
                format!("{formula} (basis {size}, span rank {span})"),
            );
            out.expect_eq("fixed-basis-size", &instance, size, formula);
            out.expect_eq("fixed-span-rank", &instance, span, formula);
        }
    }
    Ok(())
}

/// Rewrites `g1`, `t2`, `e3` as `g(1)`, `t(2)`, `e(3)`; braces and brackets
/// are copied unchanged.
pub fn desugar(text: &str) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '{' || c == '[' {
            let close = if c == '{' { '}' } else { ']' };
            while i < chars.len() && chars[i] != close {
                out.push(chars[i]);
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let ident: String = chars[start..i].iter().collect();
            let (head, rest) = ident.split_at(1);
            if matches!(head, "g" | "t" | "e")
                && !rest.is_empty()
                && rest.chars().all(|x| x.is_ascii_digit())
            {
                out.push_str(&format!("{head}({rest})"));
            } else {
                out.push_str(&ident);
            }
            continue;
        }
        out.push(c);
        i += 1;
    }
    out
}

pub fn mul(out: &mut Out, a: &str, b: &str, d: usize, n: usize, mode: Mode) -> CmdResult {
    let ctx = AlgebraContext::new(d, n, mode.into())?;
    let x = evaluate_in_y(&ctx, &desugar(a))?;
    let y = evaluate_in_y(&ctx, &desugar(b))?;
    let product = x.try_mul(&y)?;
    let s = product.to_string();
    out.row(json!({ "product": s, "terms": product.len() }), s.clone());
    Ok(())
}

/// The builtin library extended by presentation files; later blocks replace
/// earlier ones of the same name.
pub fn library(files: &[PathBuf]) -> Result<Library, UsageError> {
    let mut lib = Library::builtin().clone();
    for f in files {
        let text =
            std::fs::read_to_string(f).map_err(|e| UsageError(format!("{}: {e}", f.display())))?;
        lib.load(&text)
            .map_err(|e| UsageError(format!("{}: {e}", f.display())))?;
    }
    Ok(lib)
}

pub fn verify_relset(
    out: &mut Out,
    lib: &Library,
    relset: &str,
    assign: &[String],
    d: usize,
    p: usize,
    n: usize,
) -> CmdResult {
    let params = Params::new(d, p, n)?;
    let rs = lib.relation_set(relset, params)?;
    let names: Vec<&str> = assign.iter().map(String::as_str).collect();
    let asg = lib.assignment(&names, params)?;
    let report = verify(&rs, &asg)?;
    out.row(
        json!({
            "relset": report.relset,
            "assignment": report.assignment,
            "d": d, "p": p, "n": n,
            "target": report.target,
            "relations": report.relations.records.len(),
            "generators": report.generators.records.len(),
            "elapsed_ms": report.elapsed_ms,
        }),
        format!(
            "{} under {} at d={d},p={p},n={n}: {} relation instances",
            report.relset,
            report.assignment,
            report.relations.records.len()
        ),
    );
    out.checks(report.generators);
    out.checks(report.relations);
    Ok(())
}

pub fn psi_check(
    out: &mut Out,
    d: usize,
    n: usize,
    tier: Tier,
    seed: u64,
    convention: KConvention,
) -> CmdResult {
    let ctx = AlgebraContext::new(d, n, ScalarMode::Rational)?;
    let opts = IsoOptions {
        tier,
        seed,
        convention,
        homomorphism: true,
    };
    let report = verify_iso(&ctx, &opts);
    out.row(
        json!({
            "d": d, "n": n,
            "convention": report.convention,
            "row_order": report.row_order,
            "blocks": report.blocks,
            "dimension": report.dimension,
            "target_dimension": report.target_dimension,
            "pairs_checked": report.pairs_checked,
            "specializations": report.specializations,
            "quick_ranks": report.quick_ranks,
            "rank": report.exact_rank,
            "elapsed_ms": report.elapsed_ms,
        }),
        format!(
            "dimension {} onto {}; exact rank {}",
            report.dimension,
            report.target_dimension,
            report
                .exact_rank
                .map_or("not computed".into(), |r| r.to_string())
        ),
    );
    if tier == Tier::Quick {
        out.note(
            "quick tier: ranks are taken at random rational values of q; full rank there certifies full \
             generic rank, but a deficient rank can come from an unlucky value and is not a proof of failure",
        );
    }
    out.checks(report.checks);
    Ok(())
}

pub fn parse_e(s: &str) -> Result<QuantumChar, UsageError> {
    s.parse::<QuantumChar>()
        .map_err(|e| UsageError(format!("--e: {e}")))
}

pub fn simples(
    out: &mut Out,
    d: usize,
    n: usize,
    e: QuantumChar,
    group: Group,
    p: Option<usize>,
    dims: bool,
) -> CmdResult {
    if dims && e != QuantumChar::Infinite {
        return Err(RepError::FiniteE(e).into());
    }
    let instance = format!("d={d},n={n},e={e}");
    match group {
        Group::None => {
            let labels = enumerate_simples(d, n, e)?;
            let mut all = Vec::new();
            for l in &labels {
                let dim = if dims { Some(dim_y(l)?) } else { None };
                all.push(dim);
                out.row(
                    json!({ "label": l.lambda.to_string(), "mu": l.mu.to_string(), "e": e.to_string(), "dim": dim }),
                    match dim {
                        Some(x) => format!("{} dim {x}", l.lambda),
                        None => l.lambda.to_string(),
                    },
                );
            }
            if dims {
                let want = (d as u64).pow(n as u32) * factorial(n);
                out.expect_eq(
                    "sum-of-squares",
                    &instance,
                    sum_of_squares(all).unwrap_or(0),
                    want,
                );
            }
        }
        Group::Sd => {
            let entries = clifford_simples_sd(d, n, e)?;
            let mut seen = std::collections::BTreeSet::new();
            for en in &entries {
                let dim = if dims { en.dim } else { None };
                let printed = if dims {
                    en.printed_dim.as_ref().map(|r| r.to_string())
                } else {
                    None
                };
                out.row(
                    json!({
                        "label": en.lambda.to_string(),
                        "orbit": en.orbit,
                        "x": en.inertia.x,
                        "blocks": en.inertia.blocks,
                        "nu": en.nu_label(),
                        "dim": dim,
                        "printed_dim": printed,
                        "vanishes": en.vanishes,
                    }),
                    match dim {
                        Some(x) => format!(
                            "{} nu {} (orbit {}, x {}) dim {x}",
                            en.lambda,
                            en.nu_label(),
                            en.orbit,
                            en.inertia.x
                        ),
                        None => format!(
                            "{} nu {} (orbit {}, x {})",
                            en.lambda,
                            en.nu_label(),
                            en.orbit,
                            en.inertia.x
                        ),
                    },
                );
                let key = (en.orbit, en.nu_label());
                out.check(CheckRecord::from_bool(
                    "label-unique",
                    format!("{} {}", en.lambda, key.1),
                    seen.insert(key),
                    || "duplicate orbit and nu".into(),
                ));
                if dims && en.discrepancy() {
                    out.check(CheckRecord::fail(
                        "printed-dimension",
                        format!("{} nu {}", en.lambda, en.nu_label()),
                        format!(
                            "y·Π y(ν)/x = {} but the dimension is {}: the empty components form a block \
                             acting trivially on V, so the action is not free",
                            printed.clone().unwrap_or_default(),
                            en.dim.unwrap_or(0)
                        ),
                    ));
                }
            }
            if dims {
                let want = count_classes(d, n) * factorial(n);
                let got = sum_of_squares(entries.iter().filter(|x| !x.vanishes).map(|x| x.dim))
                    .unwrap_or(0);
                out.expect_eq("sum-of-squares", &instance, got, want);
            }
        }
        Group::Zp => {
            let p = cyclic_p(d, p)?;
            let entries = clifford_simples_zp(d, p, n, e)?;
            for en in &entries {
                let dim = if dims { en.dim } else { None };
                out.row(
                    json!({
                        "label": en.lambda.to_string(),
                        "orbit": en.orbit,
                        "s": en.inertia.s,
                        "inertia_order": en.inertia.order,
                        "character": en.character,
                        "dim": dim,
                    }),
                    match dim {
                        Some(x) => format!(
                            "{} chi{} (orbit {}, s {}) dim {x}",
                            en.lambda, en.character, en.orbit, en.inertia.s
                        ),
                        None => format!(
                            "{} chi{} (orbit {}, s {})",
                            en.lambda, en.character, en.orbit, en.inertia.s
                        ),
                    },
                );
            }
            if dims {
                let want = (d as u64).pow(n as u32) * factorial(n) / p as u64;
                let got = sum_of_squares(entries.iter().map(|x| x.dim)).unwrap_or(0);
                out.expect_eq("sum-of-squares", &format!("{instance},p={p}"), got, want);
            }
        }
    }
    Ok(())
}

pub fn fixed_basis_cmd(
    out: &mut Out,
    d: usize,
    n: usize,
    group: Group,
    p: Option<usize>,
) -> CmdResult {
    let spec = subgroup(d, group, p)?
        .ok_or_else(|| UsageError("fixed-basis needs --group sd or zp".into()))?;
    let ctx = context_for(d, n, &Some(spec.clone()))?;
    let basis = fixed_basis(&ctx, &spec)?;
    for label in &basis.labels {
        out.row(label, format!("{label:?}"));
    }
    let instance = format!("d={d},n={n},group={group:?}");
    let want = expected_rank(d, n, &spec).expect("validated subgroup");
    out.expect_eq("fixed-basis-size", &instance, basis.len() as u64, want);
    out.expect_eq("fixed-span-rank", &instance, basis.rank() as u64, want);
    out.expect_eq(
        "reynolds-rank",
        &instance,
        reynolds_rank(&ctx, &spec)? as u64,
        want,
    );
    let mut unfixed = 0;
    for x in &basis.elements {
        if !is_fixed(x, &spec)? {
            unfixed += 1;
        }
    }
    out.expect_eq("elements-fixed", &instance, unfixed, 0);
    Ok(())
}
