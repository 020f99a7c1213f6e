use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::ast::{Env, Expr, Literal};
use super::library::{Assignment, Define, Pattern, RelationSet};
use super::PresentationError;
use crate::algebra::{AlgebraContext, AlgebraElement, AlgebraError, Generator, Letter, ScalarMode};
use crate::coefficients::Scalar;
use crate::combinatorics::{OrderedPartition, Permutation};
use crate::hecke::{psi, BlockLayout, BlockMatrix, KConvention};

/// Algebra in which assignments are finally realized.
pub trait Target: Sync {
    type Elem: Clone + PartialEq + Send + Sync;

    fn d(&self) -> usize;
    fn cyclotomic(&self) -> bool;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, s: &Scalar) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Human-readable form listing at most `cap` terms.
    fn describe(&self, a: &Self::Elem, cap: usize) -> String;
    /// Builtin generator `name(args)`, or its inverse; `Ok(None)` if `name`
    /// is not a builtin of this arity.
    fn builtin(
        &self,
        name: &str,
        args: &[i64],
        inverse: bool,
    ) -> Result<Option<Self::Elem>, PresentationError>;
    fn literal(&self, lit: &Literal, inverse: bool) -> Result<Self::Elem, PresentationError>;
}

/// `Y(d,n)` with builtins `g(i)`, `t(j)`, `e(i)`, `e(i,j)`, `E(k)` (the
/// idempotent of the ordered partition with lexicographic index `k`).
pub struct YTarget {
    ctx: Arc<AlgebraContext>,
}

impl YTarget {
    pub fn new(ctx: Arc<AlgebraContext>) -> Self {
        YTarget { ctx }
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    fn letter(&self, name: &str, args: &[i64]) -> Result<Option<Generator>, PresentationError> {
        let idx = |k: i64| {
            usize::try_from(k)
                .map_err(|_| PresentationError::Eval(format!("{name}: negative index {k}")))
        };
        Ok(Some(match (name, args) {
            ("g", [i]) => Generator::G(idx(*i)?),
            ("t", [j]) => Generator::T(idx(*j)?),
            ("e", [i]) => Generator::E(idx(*i)?),
            ("e", [i, j]) => Generator::EPair(idx(*i)?, idx(*j)?),
            ("E", [k]) => {
                let k = idx(*k)?;
                let total = self.ctx.ordered_partitions().len();
                if k >= total {
                    return Err(PresentationError::Eval(format!(
                        "E({k}) out of range 0..{}",
                        total - 1
                    )));
                }
                Generator::Idem(self.ctx.partition(k).clone())
            }
            _ => return Ok(None),
        }))
    }
}

impl Target for YTarget {
    type Elem = AlgebraElement;

    fn d(&self) -> usize {
        self.ctx.d()
    }

    fn cyclotomic(&self) -> bool {
        self.ctx.mode() == ScalarMode::Cyclotomic
    }

    fn one(&self) -> AlgebraElement {
        AlgebraElement::one(&self.ctx)
    }

    fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        a.try_add(b).expect("operands share the target context")
    }

    fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        a.try_mul(b).expect("operands share the target context")
    }

    fn scale(&self, a: &AlgebraElement, s: &Scalar) -> AlgebraElement {
        a.scale(s)
    }

    fn is_zero(&self, a: &AlgebraElement) -> bool {
        a.is_zero()
    }

    fn describe(&self, a: &AlgebraElement, cap: usize) -> String {
        a.describe(cap)
    }

    fn builtin(
        &self,
        name: &str,
        args: &[i64],
        inverse: bool,
    ) -> Result<Option<AlgebraElement>, PresentationError> {
        match self.letter(name, args)? {
            None => Ok(None),
            Some(generator) => Ok(Some(Letter { generator, inverse }.element(&self.ctx)?)),
        }
    }

    fn literal(&self, lit: &Literal, inverse: bool) -> Result<AlgebraElement, PresentationError> {
        let generator = match lit {
            Literal::Idempotent(s) => Generator::Idem(
                s.parse::<OrderedPartition>()
                    .map_err(|e| PresentationError::Eval(format!("E{s}: {e}")))?,
            ),
            Literal::Permutation(s) => Generator::GPerm(
                s.parse::<Permutation>()
                    .map_err(|e| PresentationError::Eval(format!("g{s}: {e}")))?,
            ),
        };
        Ok(Letter { generator, inverse }.element(&self.ctx)?)
    }
}

/// `⊕_μ Mat_{m_μ}(H^μ)`: builtins are built in `Y(d,n)` and sent through `Ψ`.
pub struct HeckeTarget {
    y: YTarget,
    layout: Arc<BlockLayout>,
    convention: KConvention,
}

impl HeckeTarget {
    pub fn new(d: usize, n: usize, convention: KConvention) -> Result<Self, PresentationError> {
        let ctx = AlgebraContext::new(d, n, ScalarMode::Rational)?;
        Ok(HeckeTarget {
            y: YTarget::new(ctx),
            layout: BlockLayout::get(d, n),
            convention,
        })
    }
}

impl Target for HeckeTarget {
    type Elem = BlockMatrix;

    fn d(&self) -> usize {
        self.y.d()
    }

    fn cyclotomic(&self) -> bool {
        false
    }

    fn one(&self) -> BlockMatrix {
        BlockMatrix::identity(&self.layout)
    }

    fn add(&self, a: &BlockMatrix, b: &BlockMatrix) -> BlockMatrix {
        a.add_ref(b)
    }

    fn mul(&self, a: &BlockMatrix, b: &BlockMatrix) -> BlockMatrix {
        a.mul_ref(b)
    }

    fn scale(&self, a: &BlockMatrix, s: &Scalar) -> BlockMatrix {
        a.scale(s)
    }

    fn is_zero(&self, a: &BlockMatrix) -> bool {
        a.is_zero()
    }

    fn describe(&self, a: &BlockMatrix, cap: usize) -> String {
        let entries: Vec<String> = a
            .entries()
            .take(cap)
            .map(|(b, r, c, x)| format!("[{}]({r},{c}) = {x:?}", self.layout.blocks()[b].mu))
            .collect();
        let total = a.entries().count();
        let mut s = if entries.is_empty() {
            "0".to_string()
        } else {
            entries.join("; ")
        };
        if total > cap {
            s.push_str(&format!("; … ({} more entries)", total - cap));
        }
        s
    }

    fn builtin(
        &self,
        name: &str,
        args: &[i64],
        inverse: bool,
    ) -> Result<Option<BlockMatrix>, PresentationError> {
        Ok(self
            .y
            .builtin(name, args, inverse)?
            .map(|x| psi(&x, self.convention)))
    }

    fn literal(&self, lit: &Literal, inverse: bool) -> Result<BlockMatrix, PresentationError> {
        Ok(psi(&self.y.literal(lit, inverse)?, self.convention))
    }
}

/// Result of evaluating a subexpression: a scalar, or an algebra element.
#[derive(Clone, Debug, PartialEq)]
pub enum Value<E> {
    Scalar(Scalar),
    Elem(E),
}

type CacheKey = (usize, String, Vec<i64>, bool);

const MAX_DEPTH: usize = 256;

/// Evaluates expressions of a relation set through an assignment chain.
///
/// Namespace 0 holds the relation set's abbreviations and generators;
/// namespace `k ≥ 1` holds the abbreviations of level `k-1` followed by the
/// map rules of level `k`, or the target builtins after the last level.
/// Names without a matching rule pass through to the next namespace.
pub struct Evaluator<'a, T: Target> {
    target: &'a T,
    relset: Option<&'a RelationSet>,
    asg: &'a Assignment,
    base: Env,
    cache: Mutex<HashMap<CacheKey, Value<T::Elem>>>,
}

struct Frame<'s> {
    key: (usize, &'s str, &'s [i64]),
    parent: Option<&'s Frame<'s>>,
    depth: usize,
}

impl Frame<'_> {
    fn contains(&self, key: (usize, &str, &[i64])) -> bool {
        self.key == key || self.parent.is_some_and(|p| p.contains(key))
    }
}

impl<'a, T: Target> Evaluator<'a, T> {
    pub fn new(target: &'a T, relset: Option<&'a RelationSet>, asg: &'a Assignment) -> Self {
        Evaluator {
            target,
            relset,
            asg,
            base: asg.params.env(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn target(&self) -> &T {
        self.target
    }

    /// Evaluates `e` among the relation set's names.
    pub fn eval_source(&self, e: &Expr) -> Result<T::Elem, PresentationError> {
        let v = self.eval(e, 0, &self.base, false, None)?;
        Ok(self.to_elem(v))
    }

    /// Evaluates `e` among the names of the final target.
    pub fn eval_target(&self, e: &Expr) -> Result<T::Elem, PresentationError> {
        let v = self.eval(e, self.asg.levels.len(), &self.base, false, None)?;
        Ok(self.to_elem(v))
    }

    /// Image of the relation-set generator `name(args)`, or of its inverse.
    pub fn generator(
        &self,
        name: &str,
        args: &[i64],
        inverse: bool,
    ) -> Result<T::Elem, PresentationError> {
        let v = self.resolve(0, name, args, inverse, None)?;
        Ok(self.to_elem(v))
    }

    pub fn to_elem(&self, v: Value<T::Elem>) -> T::Elem {
        match v {
            Value::Scalar(s) => self.target.scale(&self.target.one(), &s),
            Value::Elem(x) => x,
        }
    }

    fn add(&self, a: Value<T::Elem>, b: Value<T::Elem>) -> Value<T::Elem> {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.add_ref(&y)),
            (Value::Scalar(s), Value::Elem(x)) | (Value::Elem(x), Value::Scalar(s)) => Value::Elem(
                self.target
                    .add(&x, &self.target.scale(&self.target.one(), &s)),
            ),
            (Value::Elem(x), Value::Elem(y)) => Value::Elem(self.target.add(&x, &y)),
        }
    }

    fn neg(&self, a: Value<T::Elem>) -> Value<T::Elem> {
        match a {
            Value::Scalar(x) => Value::Scalar(x.neg_ref()),
            Value::Elem(x) => Value::Elem(self.target.scale(&x, &Scalar::from_int(-1))),
        }
    }

    fn mul(&self, a: Value<T::Elem>, b: Value<T::Elem>) -> Value<T::Elem> {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.mul_ref(&y)),
            (Value::Scalar(s), Value::Elem(x)) | (Value::Elem(x), Value::Scalar(s)) => {
                Value::Elem(self.target.scale(&x, &s))
            }
            (Value::Elem(x), Value::Elem(y)) => Value::Elem(self.target.mul(&x, &y)),
        }
    }

    fn pow(&self, a: Value<T::Elem>, k: u64) -> Value<T::Elem> {
        match a {
            Value::Scalar(x) => Value::Scalar(x.pow(k as u32)),
            Value::Elem(x) => {
                let mut acc = self.target.one();
                let mut base = x;
                let mut k = k;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = self.target.mul(&acc, &base);
                    }
                    k >>= 1;
                    if k > 0 {
                        base = self.target.mul(&base, &base);
                    }
                }
                Value::Elem(acc)
            }
        }
    }

    fn scalar_inverse(
        &self,
        v: Value<T::Elem>,
        what: &Expr,
    ) -> Result<Value<T::Elem>, PresentationError> {
        match v {
            Value::Scalar(s) => s
                .inv()
                .map(Value::Scalar)
                .ok_or_else(|| PresentationError::NotInvertible(what.to_string())),
            Value::Elem(_) => Err(PresentationError::NotInvertible(what.to_string())),
        }
    }

    fn eval(
        &self,
        e: &Expr,
        ns: usize,
        env: &Env,
        inv: bool,
        frame: Option<&Frame<'_>>,
    ) -> Result<Value<T::Elem>, PresentationError> {
        let int = |k: i64| -> Result<Value<T::Elem>, PresentationError> {
            let s = Scalar::from_int(k);
            if inv {
                s.inv()
                    .map(Value::Scalar)
                    .ok_or_else(|| PresentationError::NotInvertible(e.to_string()))
            } else {
                Ok(Value::Scalar(s))
            }
        };
        match e {
            Expr::Int(k) => int(k.eval(env)?),
            Expr::Name(v) if env.contains_key(v) => int(env[v]),
            Expr::Q => Ok(Value::Scalar(Scalar::q_pow(if inv { -1 } else { 1 }))),
            Expr::Zeta => {
                if !self.target.cyclotomic() {
                    return Err(AlgebraError::NeedsCyclotomic("z").into());
                }
                let d = self.target.d() as u32;
                Ok(Value::Scalar(Scalar::zeta_pow(d, if inv { -1 } else { 1 })))
            }
            Expr::Name(v) => self.resolve(ns, v, &[], inv, frame),
            Expr::Call(name, args) => {
                let args: Vec<i64> = args.iter().map(|a| a.eval(env)).collect::<Result<_, _>>()?;
                self.resolve(ns, name, &args, inv, frame)
            }
            Expr::Literal(lit) => Ok(Value::Elem(self.target.literal(lit, inv)?)),
            Expr::Neg(x) => Ok(self.neg(self.eval(x, ns, env, inv, frame)?)),
            Expr::Add(..) | Expr::Sub(..) | Expr::Sum(..) if inv => {
                let v = self.eval(e, ns, env, false, frame)?;
                self.scalar_inverse(v, e)
            }
            Expr::Add(a, b) => {
                let a = self.eval(a, ns, env, false, frame)?;
                let b = self.eval(b, ns, env, false, frame)?;
                Ok(self.add(a, b))
            }
            Expr::Sub(a, b) => {
                let a = self.eval(a, ns, env, false, frame)?;
                let b = self.eval(b, ns, env, false, frame)?;
                Ok(self.add(a, self.neg(b)))
            }
            Expr::Mul(a, b) => {
                let (first, second) = if inv { (b, a) } else { (a, b) };
                let x = self.eval(first, ns, env, inv, frame)?;
                let y = self.eval(second, ns, env, inv, frame)?;
                Ok(self.mul(x, y))
            }
            Expr::Div(a, b) => {
                let divisor = match self.eval(b, ns, env, false, frame)? {
                    Value::Scalar(s) => s,
                    Value::Elem(_) => {
                        return Err(PresentationError::Eval(format!(
                            "divisor {b} is not a scalar"
                        )))
                    }
                };
                if inv {
                    Ok(self.mul(Value::Scalar(divisor), self.eval(a, ns, env, true, frame)?))
                } else {
                    let r = divisor
                        .inv()
                        .ok_or_else(|| PresentationError::NotInvertible(b.to_string()))?;
                    Ok(self.mul(self.eval(a, ns, env, false, frame)?, Value::Scalar(r)))
                }
            }
            Expr::Pow(x, k) => {
                let k = k.eval(env)?;
                let base = self.eval(x, ns, env, inv ^ (k < 0), frame)?;
                Ok(self.pow(base, k.unsigned_abs()))
            }
            Expr::Sum(b, c, body) => {
                let mut acc = Value::Scalar(Scalar::zero());
                for k in b.lo.eval(env)?..=b.hi.eval(env)? {
                    let mut ek = env.clone();
                    ek.insert(b.var.clone(), k);
                    if c.as_ref().map_or(Ok(true), |c| c.eval(&ek))? {
                        acc = self.add(acc, self.eval(body, ns, &ek, false, frame)?);
                    }
                }
                Ok(acc)
            }
            Expr::Prod(b, c, body) => {
                let mut ks: Vec<i64> = (b.lo.eval(env)?..=b.hi.eval(env)?).collect();
                if inv {
                    ks.reverse();
                }
                let mut acc = Value::Scalar(Scalar::one());
                for k in ks {
                    let mut ek = env.clone();
                    ek.insert(b.var.clone(), k);
                    if c.as_ref().map_or(Ok(true), |c| c.eval(&ek))? {
                        acc = self.mul(acc, self.eval(body, ns, &ek, inv, frame)?);
                    }
                }
                Ok(acc)
            }
        }
    }

    /// First clause of `def` whose guard holds, with its environment.
    fn clause<'d>(
        &self,
        def: &'d Define,
        args: &[i64],
    ) -> Result<Option<(&'d Expr, Env)>, PresentationError> {
        if def.params.len() != args.len() {
            return Ok(None);
        }
        let mut env = self.base.clone();
        for (p, v) in def.params.iter().zip(args) {
            env.insert(p.clone(), *v);
        }
        for (guard, body) in &def.clauses {
            if guard.as_ref().map_or(Ok(true), |g| g.eval(&env))? {
                return Ok(Some((body, env)));
            }
        }
        Ok(None)
    }

    fn resolve(
        &self,
        ns: usize,
        name: &str,
        args: &[i64],
        inv: bool,
        frame: Option<&Frame<'_>>,
    ) -> Result<Value<T::Elem>, PresentationError> {
        let key = (ns, name.to_string(), args.to_vec(), inv);
        if let Some(v) = self
            .cache
            .lock()
            .expect("evaluation cache poisoned")
            .get(&key)
        {
            return Ok(v.clone());
        }
        let label = || {
            if args.is_empty() {
                name.to_string()
            } else {
                let a: Vec<String> = args.iter().map(i64::to_string).collect();
                format!("{name}({})", a.join(", "))
            }
        };
        if let Some(f) = frame {
            if f.contains((ns, name, args)) || f.depth >= MAX_DEPTH {
                return Err(PresentationError::Cyclic(label()));
            }
        }
        let here = Frame {
            key: (ns, name, args),
            parent: frame,
            depth: frame.map_or(0, |f| f.depth + 1),
        };
        let v = self.resolve_uncached(ns, name, args, inv, &here, &label)?;
        self.cache
            .lock()
            .expect("evaluation cache poisoned")
            .insert(key, v.clone());
        Ok(v)
    }

    fn resolve_uncached(
        &self,
        ns: usize,
        name: &str,
        args: &[i64],
        inv: bool,
        frame: &Frame<'_>,
        label: &dyn Fn() -> String,
    ) -> Result<Value<T::Elem>, PresentationError> {
        let levels = &self.asg.levels;
        if ns == 0 {
            let relset = match self.relset {
                Some(r) => r,
                None if levels.is_empty() => return self.builtin(name, args, inv, label),
                None => return self.resolve_map(0, name, args, inv, frame),
            };
            if let Some(def) = relset.defines.get(name) {
                if let Some((body, env)) = self.clause(def, args)? {
                    return self.eval(body, 0, &env, inv, Some(frame));
                }
            }
            let g = relset
                .generator(name)
                .filter(|g| g.binders.len() == args.len())
                .ok_or_else(|| PresentationError::UnknownName(label()))?;
            let mut env = self.base.clone();
            for (b, &v) in g.binders.iter().zip(args) {
                let (lo, hi) = (b.lo.eval(&env)?, b.hi.eval(&env)?);
                if v < lo || v > hi {
                    return Err(PresentationError::Eval(format!(
                        "{} outside the range {}..{} of {name}",
                        label(),
                        lo,
                        hi
                    )));
                }
                env.insert(b.var.clone(), v);
            }
            if inv && !g.invertible {
                return Err(PresentationError::NotInvertible(label()));
            }
            return self.resolve_map(0, name, args, inv, frame);
        }
        if let Some(def) = levels.get(ns - 1).and_then(|l| l.defines.get(name)) {
            if let Some((body, env)) = self.clause(def, args)? {
                return self.eval(body, ns, &env, inv, Some(frame));
            }
        }
        if ns < levels.len() {
            return self.resolve_map(ns, name, args, inv, frame);
        }
        self.builtin(name, args, inv, label)
    }

    fn builtin(
        &self,
        name: &str,
        args: &[i64],
        inv: bool,
        label: &dyn Fn() -> String,
    ) -> Result<Value<T::Elem>, PresentationError> {
        match self.target.builtin(name, args, inv)? {
            Some(x) => Ok(Value::Elem(x)),
            None => Err(PresentationError::UnknownName(label())),
        }
    }

    /// Applies the first matching map rule of level `level`, or passes
    /// `name` through to the next namespace.
    fn resolve_map(
        &self,
        level: usize,
        name: &str,
        args: &[i64],
        inv: bool,
        frame: &Frame<'_>,
    ) -> Result<Value<T::Elem>, PresentationError> {
        'rules: for rule in self.asg.levels[level].maps.iter() {
            if rule.name != name || rule.patterns.len() != args.len() {
                continue;
            }
            let mut env = self.base.clone();
            for (pat, &v) in rule.patterns.iter().zip(args) {
                match pat {
                    Pattern::Lit(k) if *k != v => continue 'rules,
                    Pattern::Lit(_) => {}
                    Pattern::Var(x) => {
                        env.insert(x.clone(), v);
                    }
                }
            }
            if rule.cond.as_ref().map_or(Ok(true), |c| c.eval(&env))? {
                return self.eval(&rule.body, level + 1, &env, inv, Some(frame));
            }
        }
        self.resolve(level + 1, name, args, inv, Some(frame))
    }
}
