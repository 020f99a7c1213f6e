use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use super::ast::{Binder, Cond, Env, Expr, IntExpr};
use super::parser::Parser;
use super::PresentationError;
use crate::algebra::ScalarMode;
use crate::fixed::SubgroupSpec;

const BUILTIN_FILES: [(&str, &str); 4] = [
    ("yokonuma.rel", include_str!("data/yokonuma.rel")),
    ("braids_ties.rel", include_str!("data/braids_ties.rel")),
    ("cyclic.rel", include_str!("data/cyclic.rel")),
    ("braid_group.rel", include_str!("data/braid_group.rel")),
];

/// `(d, p, n)`; `p` is only constrained by sets that `require` it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub d: usize,
    pub p: usize,
    pub n: usize,
}

impl Params {
    pub fn new(d: usize, p: usize, n: usize) -> Result<Self, PresentationError> {
        if d == 0 || p == 0 || n == 0 {
            return Err(PresentationError::InvalidParameters(format!(
                "d, p, n must be positive (got d={d}, p={p}, n={n})"
            )));
        }
        Ok(Params { d, p, n })
    }

    /// `d`, `p`, `n` and `P = d^n`.
    pub fn env(&self) -> Env {
        let mut env = Env::new();
        env.insert("d".into(), self.d as i64);
        env.insert("p".into(), self.p as i64);
        env.insert("n".into(), self.n as i64);
        env.insert("P".into(), (self.d as i64).pow(self.n as u32));
        env
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={}, p={}, n={}", self.d, self.p, self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenDecl {
    pub name: String,
    /// One binder per argument; later bounds may use earlier arguments.
    pub binders: Vec<Binder>,
    pub invertible: bool,
}

/// Named abbreviation; the first clause whose guard holds applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Define {
    pub name: String,
    pub params: Vec<String>,
    pub clauses: Vec<(Option<Cond>, Expr)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTemplate {
    pub id: String,
    pub binders: Vec<Binder>,
    pub cond: Option<Cond>,
    /// `a == b == c` states `a == b` and `b == c`.
    pub sides: Vec<Expr>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelsetTemplate {
    pub name: String,
    pub requires: Vec<Cond>,
    pub gens: Vec<GenDecl>,
    pub defines: BTreeMap<String, Define>,
    pub relations: Vec<RelationTemplate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetSpec {
    Y,
    Hecke,
    Assignment(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FixedSpec {
    Sd,
    Zp,
}

impl FixedSpec {
    pub fn subgroup(self, p: usize) -> SubgroupSpec {
        match self {
            FixedSpec::Sd => SubgroupSpec::Full,
            FixedSpec::Zp => SubgroupSpec::Cyclic(p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pattern {
    Lit(i64),
    Var(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapRule {
    pub name: String,
    pub patterns: Vec<Pattern>,
    pub cond: Option<Cond>,
    pub body: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignTemplate {
    pub name: String,
    pub into: TargetSpec,
    pub mode: Option<ScalarMode>,
    pub fixed: Option<FixedSpec>,
    pub defines: BTreeMap<String, Define>,
    pub maps: Vec<MapRule>,
}

/// A fully instantiated relation `lhs == rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub id: String,
    /// Binder values, e.g. `i=1, j=3`; `-` when unparameterized.
    pub instance: String,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}]: {} == {}",
            self.id, self.instance, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Debug)]
pub struct RelationSet {
    pub name: String,
    pub params: Params,
    pub gens: Vec<GenDecl>,
    pub defines: BTreeMap<String, Define>,
    pub relations: Vec<RelationInstance>,
}

impl RelationSet {
    /// Every generator with concrete arguments, in declaration order.
    pub fn generator_instances(&self) -> Result<Vec<(String, Vec<i64>)>, PresentationError> {
        let mut out = Vec::new();
        for g in &self.gens {
            for (env, args) in enumerate_binders(&g.binders, &self.params.env())? {
                let _ = env;
                out.push((g.name.clone(), args));
            }
        }
        Ok(out)
    }

    pub fn generator(&self, name: &str) -> Option<&GenDecl> {
        self.gens.iter().find(|g| g.name == name)
    }

    /// Parses `text` and checks that every name is a generator, an
    /// abbreviation or an integer variable in scope.
    pub fn parse_expression(&self, text: &str) -> Result<Expr, PresentationError> {
        let e = super::parser::parse_expression(text)?;
        let scope: Vec<String> = self.params.env().into_keys().collect();
        check_names(&e, &scope, &|name, arity| {
            self.defines
                .get(name)
                .map(|d| d.params.len() == arity)
                .unwrap_or(false)
                || self
                    .generator(name)
                    .map(|g| g.binders.len() == arity)
                    .unwrap_or(false)
        })?;
        Ok(e)
    }
}

/// Walks `e` and reports the first call that `known` rejects.
fn check_names(
    e: &Expr,
    bound: &[String],
    known: &dyn Fn(&str, usize) -> bool,
) -> Result<(), PresentationError> {
    let recurse = |x: &Expr| check_names(x, bound, known);
    match e {
        Expr::Name(v) if bound.contains(v) => Ok(()),
        Expr::Name(v) if known(v, 0) => Ok(()),
        Expr::Call(v, args) if known(v, args.len()) => Ok(()),
        Expr::Name(v) | Expr::Call(v, _) => Err(PresentationError::UnknownName(v.clone())),
        Expr::Neg(x) | Expr::Pow(x, _) => recurse(x),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            recurse(a)?;
            recurse(b)
        }
        Expr::Sum(b, _, body) | Expr::Prod(b, _, body) => {
            let mut inner = bound.to_vec();
            inner.push(b.var.clone());
            check_names(body, &inner, known)
        }
        Expr::Int(_) | Expr::Q | Expr::Zeta | Expr::Literal(_) => Ok(()),
    }
}

/// One link of an assignment chain.
#[derive(Clone, Debug)]
pub struct Level {
    pub name: String,
    pub defines: BTreeMap<String, Define>,
    pub maps: Vec<MapRule>,
}

/// Target algebra reached at the end of an assignment chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetKind {
    Y,
    Hecke,
    /// Matrices of an explicit module, supplied through [`super::verify_with`].
    Module,
}

/// Instantiated assignment: a chain of maps ending in `Y(d,n)` or the
/// matrix algebra `⊕_μ Mat(H^μ)`.
#[derive(Clone, Debug)]
pub struct Assignment {
    pub name: String,
    pub params: Params,
    pub levels: Vec<Level>,
    pub target: TargetKind,
    pub mode: ScalarMode,
    pub fixed: Option<FixedSpec>,
}

/// Nested iteration over binders; yields the extended environment and the
/// bound values in order.
pub(crate) fn enumerate_binders(
    binders: &[Binder],
    env: &Env,
) -> Result<Vec<(Env, Vec<i64>)>, PresentationError> {
    let mut acc = vec![(env.clone(), Vec::new())];
    for b in binders {
        let mut next = Vec::new();
        for (env, vals) in acc {
            let (lo, hi) = (b.lo.eval(&env)?, b.hi.eval(&env)?);
            for k in lo..=hi {
                let mut e = env.clone();
                e.insert(b.var.clone(), k);
                let mut v = vals.clone();
                v.push(k);
                next.push((e, v));
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Substitutes the bound integer variables of `env` into `k`, folding to a
/// literal when nothing free remains.
fn fold_int(k: &IntExpr, env: &Env) -> IntExpr {
    fn subst(k: &IntExpr, env: &Env) -> IntExpr {
        match k {
            IntExpr::Var(v) => env.get(v).map_or_else(|| k.clone(), |&x| IntExpr::Lit(x)),
            IntExpr::Neg(x) => IntExpr::Neg(Box::new(subst(x, env))),
            IntExpr::Bin(op, a, b) => {
                IntExpr::Bin(*op, Box::new(subst(a, env)), Box::new(subst(b, env)))
            }
            IntExpr::Call(f, args) => {
                IntExpr::Call(f.clone(), args.iter().map(|a| subst(a, env)).collect())
            }
            IntExpr::Lit(_) => k.clone(),
        }
    }
    fn closed(k: &IntExpr) -> bool {
        match k {
            IntExpr::Var(_) => false,
            IntExpr::Lit(_) => true,
            IntExpr::Neg(x) => closed(x),
            IntExpr::Bin(_, a, b) => closed(a) && closed(b),
            IntExpr::Call(_, args) => args.iter().all(closed),
        }
    }
    let s = subst(k, env);
    if closed(&s) {
        if let Ok(v) = s.eval(env) {
            return IntExpr::Lit(v);
        }
    }
    s
}

fn fold_cond(c: &Cond, env: &Env) -> Cond {
    match c {
        Cond::Cmp(op, a, b) => Cond::Cmp(*op, fold_int(a, env), fold_int(b, env)),
        Cond::And(a, b) => Cond::And(Box::new(fold_cond(a, env)), Box::new(fold_cond(b, env))),
        Cond::Or(a, b) => Cond::Or(Box::new(fold_cond(a, env)), Box::new(fold_cond(b, env))),
    }
}

fn is_one(e: &Expr) -> bool {
    matches!(e, Expr::Int(IntExpr::Lit(1)))
}

/// Substitutes bound integers into `e` and expands products with constant
/// bounds into explicit factors.
fn instantiate_expr(e: &Expr, env: &Env) -> Result<Expr, PresentationError> {
    let rec = |x: &Expr| instantiate_expr(x, env).map(Box::new);
    Ok(match e {
        Expr::Int(k) => Expr::Int(fold_int(k, env)),
        Expr::Name(v) => match env.get(v) {
            Some(&x) => Expr::Int(IntExpr::Lit(x)),
            None => e.clone(),
        },
        Expr::Call(f, args) => {
            Expr::Call(f.clone(), args.iter().map(|a| fold_int(a, env)).collect())
        }
        Expr::Q | Expr::Zeta | Expr::Literal(_) => e.clone(),
        Expr::Neg(x) => Expr::Neg(rec(x)?),
        Expr::Add(a, b) => Expr::Add(rec(a)?, rec(b)?),
        Expr::Sub(a, b) => Expr::Sub(rec(a)?, rec(b)?),
        Expr::Mul(a, b) => {
            let (a, b) = (instantiate_expr(a, env)?, instantiate_expr(b, env)?);
            if is_one(&a) {
                b
            } else if is_one(&b) {
                a
            } else {
                Expr::Mul(Box::new(a), Box::new(b))
            }
        }
        Expr::Div(a, b) => Expr::Div(rec(a)?, rec(b)?),
        Expr::Pow(x, k) => Expr::Pow(rec(x)?, fold_int(k, env)),
        Expr::Sum(b, c, body) | Expr::Prod(b, c, body) => {
            let mut inner = env.clone();
            inner.remove(&b.var);
            let binder = Binder {
                var: b.var.clone(),
                lo: fold_int(&b.lo, env),
                hi: fold_int(&b.hi, env),
            };
            if let (Expr::Prod(..), IntExpr::Lit(lo), IntExpr::Lit(hi)) =
                (e, &binder.lo, &binder.hi)
            {
                let mut acc: Option<Expr> = None;
                for k in *lo..=*hi {
                    let mut ek = env.clone();
                    ek.insert(b.var.clone(), k);
                    if let Some(c) = c {
                        if !c.eval(&ek)? {
                            continue;
                        }
                    }
                    let f = instantiate_expr(body, &ek)?;
                    acc = Some(match acc {
                        None => f,
                        Some(a) => Expr::Mul(Box::new(a), Box::new(f)),
                    });
                }
                return Ok(acc.unwrap_or(Expr::Int(IntExpr::Lit(1))));
            }
            let c = c.as_ref().map(|c| fold_cond(c, &inner));
            let body = Box::new(instantiate_expr(body, &inner)?);
            match e {
                Expr::Sum(..) => Expr::Sum(Box::new(binder), c, body),
                _ => Expr::Prod(Box::new(binder), c, body),
            }
        }
    })
}

/// Counts generator and abbreviation occurrences (letters of a word).
pub fn letter_count(e: &Expr) -> usize {
    match e {
        Expr::Name(_) | Expr::Call(..) | Expr::Literal(_) => 1,
        Expr::Neg(x) | Expr::Pow(x, _) | Expr::Sum(_, _, x) | Expr::Prod(_, _, x) => {
            letter_count(x)
        }
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            letter_count(a) + letter_count(b)
        }
        Expr::Int(_) | Expr::Q | Expr::Zeta => 0,
    }
}

/// Named relation sets and assignments.
#[derive(Clone, Debug, Default)]
pub struct Library {
    relsets: BTreeMap<String, RelsetTemplate>,
    assignments: BTreeMap<String, AssignTemplate>,
}

enum Block {
    None,
    Relset(RelsetTemplate),
    Assign(AssignTemplate),
}

fn relocate(e: PresentationError, line: usize, offset: usize) -> PresentationError {
    match e {
        PresentationError::Syntax { col, msg, .. } => PresentationError::Syntax {
            line,
            col: col + offset,
            msg,
        },
        other => other,
    }
}

/// Joins continuation lines (leading whitespace) and strips comments;
/// yields `(line number, text)`.
fn logical_lines(text: &str) -> Vec<(usize, String)> {
    let mut out: Vec<(usize, String)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let continues = line.starts_with(|c: char| c.is_whitespace());
        match out.last_mut() {
            Some(last) if continues => {
                last.1.push(' ');
                last.1.push_str(line.trim());
            }
            _ => out.push((k + 1, line.trim_end().to_string())),
        }
    }
    out
}

fn add_define(
    defines: &mut BTreeMap<String, Define>,
    p: &mut Parser,
) -> Result<(), PresentationError> {
    let name = p.ident()?;
    let mut params = Vec::new();
    if p.eat_sym("(") && !p.eat_sym(")") {
        loop {
            params.push(p.ident()?);
            if p.eat_sym(")") {
                break;
            }
            p.expect_sym(",")?;
        }
    }
    let guard = if p.eat_keyword("where") {
        Some(p.cond()?)
    } else {
        None
    };
    p.expect_sym("=")?;
    let body = p.expr()?;
    p.expect_end()?;
    let def = defines.entry(name.clone()).or_insert_with(|| Define {
        name: name.clone(),
        params: params.clone(),
        clauses: Vec::new(),
    });
    if def.params != params {
        return Err(p.err(format!("{name} redefined with different parameters")));
    }
    if def.clauses.last().is_some_and(|(g, _)| g.is_none()) {
        return Err(p.err(format!(
            "clause of {name} after an unguarded one is unreachable"
        )));
    }
    def.clauses.push((guard, body));
    Ok(())
}

fn binder_list(p: &mut Parser) -> Result<(Vec<Binder>, Option<Cond>), PresentationError> {
    let mut binders = Vec::new();
    let mut cond = None;
    if p.eat_sym(")") {
        return Ok((binders, cond));
    }
    loop {
        if p.eat_keyword("where") {
            cond = Some(p.cond()?);
            p.expect_sym(")")?;
            return Ok((binders, cond));
        }
        binders.push(p.binder()?);
        if p.eat_sym(")") {
            return Ok((binders, cond));
        }
        if !p.next_is_keyword("where") {
            p.expect_sym(",")?;
        }
    }
}

impl Library {
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut lib = Library::default();
        lib.load(text)?;
        Ok(lib)
    }

    /// The relation sets and assignments shipped with the crate.
    pub fn builtin() -> &'static Library {
        static LIB: OnceLock<Library> = OnceLock::new();
        LIB.get_or_init(|| {
            let mut lib = Library::default();
            for (file, text) in BUILTIN_FILES {
                if let Err(e) = lib.load(text) {
                    panic!("builtin presentation file {file} is malformed: {e}");
                }
            }
            lib
        })
    }

    /// Adds the blocks of `text`; later blocks replace earlier ones of the same name.
    pub fn load(&mut self, text: &str) -> Result<(), PresentationError> {
        let mut block = Block::None;
        for (line, src) in logical_lines(text) {
            let (kw, rest) = src
                .split_once(char::is_whitespace)
                .unwrap_or((src.as_str(), ""));
            let offset = src.len() - rest.len();
            let rest_trim = rest.trim();
            let fail = |msg: String| PresentationError::Syntax { line, col: 1, msg };
            match kw {
                "relset" | "assign" => {
                    if rest_trim.is_empty() || rest_trim.contains(char::is_whitespace) {
                        return Err(fail(format!("{kw} needs a single name")));
                    }
                    self.finish(std::mem::replace(&mut block, Block::None));
                    block = if kw == "relset" {
                        Block::Relset(RelsetTemplate {
                            name: rest_trim.to_string(),
                            ..Default::default()
                        })
                    } else {
                        Block::Assign(AssignTemplate {
                            name: rest_trim.to_string(),
                            into: TargetSpec::Y,
                            mode: None,
                            fixed: None,
                            defines: BTreeMap::new(),
                            maps: Vec::new(),
                        })
                    };
                    continue;
                }
                _ => {}
            }
            let parsed = match &mut block {
                Block::None => {
                    return Err(fail(format!("{kw:?} outside a relset or assign block")))
                }
                Block::Relset(r) => parse_relset_line(r, kw, rest),
                Block::Assign(a) => parse_assign_line(a, kw, rest),
            };
            parsed.map_err(|e| relocate(e, line, offset))?;
        }
        self.finish(block);
        Ok(())
    }

    fn finish(&mut self, block: Block) {
        match block {
            Block::None => {}
            Block::Relset(r) => {
                self.relsets.insert(r.name.clone(), r);
            }
            Block::Assign(a) => {
                self.assignments.insert(a.name.clone(), a);
            }
        }
    }

    pub fn relset_names(&self) -> impl Iterator<Item = &str> {
        self.relsets.keys().map(String::as_str)
    }

    pub fn assignment_names(&self) -> impl Iterator<Item = &str> {
        self.assignments.keys().map(String::as_str)
    }

    pub fn relset_template(&self, name: &str) -> Option<&RelsetTemplate> {
        self.relsets.get(name)
    }

    pub fn assignment_template(&self, name: &str) -> Option<&AssignTemplate> {
        self.assignments.get(name)
    }

    /// Instantiates relation set `name` at `params`.
    pub fn relation_set(
        &self,
        name: &str,
        params: Params,
    ) -> Result<RelationSet, PresentationError> {
        let t = self
            .relsets
            .get(name)
            .ok_or_else(|| PresentationError::UnknownRelset(name.to_string()))?;
        let env = params.env();
        for c in &t.requires {
            if !c.eval(&env)? {
                return Err(PresentationError::InvalidParameters(format!(
                    "{name} requires {c} ({params})"
                )));
            }
        }
        let mut relations = Vec::new();
        for r in &t.relations {
            for (benv, vals) in enumerate_binders(&r.binders, &env)? {
                if let Some(c) = &r.cond {
                    if !c.eval(&benv)? {
                        continue;
                    }
                }
                let label = if r.binders.is_empty() {
                    "-".to_string()
                } else {
                    r.binders
                        .iter()
                        .zip(&vals)
                        .map(|(b, v)| format!("{}={v}", b.var))
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                let sides: Vec<Expr> = r
                    .sides
                    .iter()
                    .map(|s| instantiate_expr(s, &benv))
                    .collect::<Result<_, _>>()?;
                for (k, pair) in sides.windows(2).enumerate() {
                    let instance = if sides.len() > 2 {
                        format!("{label} #{}", k + 1)
                    } else {
                        label.clone()
                    };
                    relations.push(RelationInstance {
                        id: r.id.clone(),
                        instance,
                        lhs: pair[0].clone(),
                        rhs: pair[1].clone(),
                    });
                }
            }
        }
        Ok(RelationSet {
            name: t.name.clone(),
            params,
            gens: t.gens.clone(),
            defines: t.defines.clone(),
            relations,
        })
    }

    /// Instantiates the chain `names[0] ∘ … ∘ names[k]`, continued along the
    /// `into` of the last entry until `Y` or the matrix target.
    pub fn assignment(
        &self,
        names: &[&str],
        params: Params,
    ) -> Result<Assignment, PresentationError> {
        if names.is_empty() {
            return Err(PresentationError::UnknownAssignment(String::new()));
        }
        let get = |n: &str| {
            self.assignments
                .get(n)
                .ok_or_else(|| PresentationError::UnknownAssignment(n.to_string()))
        };
        let mut chain: Vec<&AssignTemplate> =
            names.iter().map(|n| get(n)).collect::<Result<_, _>>()?;
        let mut seen: HashSet<&str> = chain.iter().map(|a| a.name.as_str()).collect();
        let target = loop {
            match &chain.last().expect("chain nonempty").into {
                TargetSpec::Y => break TargetKind::Y,
                TargetSpec::Hecke => break TargetKind::Hecke,
                TargetSpec::Assignment(next) => {
                    let a = get(next)?;
                    if !seen.insert(a.name.as_str()) {
                        return Err(PresentationError::Cyclic(format!(
                            "assignment chain through {next}"
                        )));
                    }
                    chain.push(a);
                }
            }
        };
        let mode = if chain.iter().any(|a| a.mode == Some(ScalarMode::Cyclotomic)) {
            ScalarMode::Cyclotomic
        } else {
            ScalarMode::Rational
        };
        Ok(Assignment {
            name: names.join(","),
            params,
            levels: chain
                .iter()
                .map(|a| Level {
                    name: a.name.clone(),
                    defines: a.defines.clone(),
                    maps: a.maps.clone(),
                })
                .collect(),
            target,
            mode,
            fixed: chain.iter().find_map(|a| a.fixed),
        })
    }
}

fn parse_relset_line(
    r: &mut RelsetTemplate,
    kw: &str,
    rest: &str,
) -> Result<(), PresentationError> {
    match kw {
        "require" => {
            let mut p = Parser::new(rest)?;
            r.requires.push(p.cond()?);
            p.expect_end()
        }
        "gen" => {
            let mut p = Parser::new(rest)?;
            let name = p.ident()?;
            let binders = if p.eat_sym("(") {
                let (b, c) = binder_list(&mut p)?;
                if c.is_some() {
                    return Err(p.err("generator ranges take no condition"));
                }
                b
            } else {
                Vec::new()
            };
            let invertible = p.eat_keyword("invertible");
            p.expect_end()?;
            if r.gens.iter().any(|g| g.name == name) {
                return Err(p.err(format!("generator {name} declared twice")));
            }
            r.gens.push(GenDecl {
                name,
                binders,
                invertible,
            });
            Ok(())
        }
        "define" => {
            let mut p = Parser::new(rest)?;
            add_define(&mut r.defines, &mut p)
        }
        "rel" => {
            let lead = rest.len() - rest.trim_start().len();
            let body = rest.trim_start();
            let id_len = body
                .find(|c: char| c.is_whitespace() || c == '(' || c == ':')
                .unwrap_or(body.len());
            if id_len == 0 {
                return Err(PresentationError::syntax(lead, "relation needs an id"));
            }
            let id = body[..id_len].to_string();
            let tail_at = lead + id_len;
            let mut p = Parser::new(&rest[tail_at..]).map_err(|e| shift(e, tail_at))?;
            let parsed = (|| {
                let (binders, mut cond) = if p.eat_sym("(") {
                    binder_list(&mut p)?
                } else {
                    (Vec::new(), None)
                };
                if p.eat_keyword("where") {
                    let c = p.cond()?;
                    cond = Some(match cond {
                        Some(prev) => Cond::And(Box::new(prev), Box::new(c)),
                        None => c,
                    });
                }
                p.expect_sym(":")?;
                let mut sides = vec![p.expr()?];
                while p.eat_sym("==") {
                    sides.push(p.expr()?);
                }
                p.expect_end()?;
                if sides.len() < 2 {
                    return Err(p.err("relation needs `==`"));
                }
                Ok(RelationTemplate {
                    id,
                    binders,
                    cond,
                    sides,
                })
            })()
            .map_err(|e| shift(e, tail_at))?;
            let mut scope: Vec<String> = Params { d: 1, p: 1, n: 1 }.env().into_keys().collect();
            scope.extend(parsed.binders.iter().map(|b| b.var.clone()));
            for side in &parsed.sides {
                check_names(side, &scope, &|name, arity| {
                    r.defines.get(name).is_some_and(|d| d.params.len() == arity)
                        || r.gens
                            .iter()
                            .any(|g| g.name == name && g.binders.len() == arity)
                })?;
            }
            r.relations.push(parsed);
            Ok(())
        }
        _ => Err(PresentationError::syntax(
            0,
            format!("unknown relset directive {kw:?}"),
        )),
    }
}

fn shift(e: PresentationError, by: usize) -> PresentationError {
    match e {
        PresentationError::Syntax { line, col, msg } => PresentationError::Syntax {
            line,
            col: col + by,
            msg,
        },
        other => other,
    }
}

fn parse_assign_line(
    a: &mut AssignTemplate,
    kw: &str,
    rest: &str,
) -> Result<(), PresentationError> {
    let word = rest.trim();
    match kw {
        "into" => {
            a.into = match word {
                "Y" => TargetSpec::Y,
                "hecke" => TargetSpec::Hecke,
                "" => return Err(PresentationError::syntax(0, "into needs a target")),
                other => TargetSpec::Assignment(other.to_string()),
            };
            Ok(())
        }
        "mode" => {
            a.mode = Some(match word {
                "rational" => ScalarMode::Rational,
                "cyclotomic" => ScalarMode::Cyclotomic,
                _ => {
                    return Err(PresentationError::syntax(
                        0,
                        "mode is rational or cyclotomic",
                    ))
                }
            });
            Ok(())
        }
        "fixed" => {
            a.fixed = Some(match word {
                "sd" => FixedSpec::Sd,
                "zp" => FixedSpec::Zp,
                _ => return Err(PresentationError::syntax(0, "fixed is sd or zp")),
            });
            Ok(())
        }
        "define" => {
            let mut p = Parser::new(rest)?;
            add_define(&mut a.defines, &mut p)
        }
        "map" => {
            let mut p = Parser::new(rest)?;
            let name = p.ident()?;
            let mut patterns = Vec::new();
            if p.eat_sym("(") && !p.eat_sym(")") {
                loop {
                    let neg = p.eat_sym("-");
                    let pat = match p.peek().cloned() {
                        Some(super::lexer::Tok::Int(k)) => {
                            p.eat_int();
                            Pattern::Lit(if neg { -k } else { k })
                        }
                        Some(super::lexer::Tok::Ident(v)) if !neg => {
                            p.ident()?;
                            Pattern::Var(v)
                        }
                        _ => return Err(p.err("expected an integer or a variable")),
                    };
                    patterns.push(pat);
                    if p.eat_sym(")") {
                        break;
                    }
                    p.expect_sym(",")?;
                }
            }
            let cond = if p.eat_keyword("where") {
                Some(p.cond()?)
            } else {
                None
            };
            p.expect_sym("->")?;
            let body = p.expr()?;
            p.expect_end()?;
            a.maps.push(MapRule {
                name,
                patterns,
                cond,
                body,
            });
            Ok(())
        }
        _ => Err(PresentationError::syntax(
            0,
            format!("unknown assign directive {kw:?}"),
        )),
    }
}
