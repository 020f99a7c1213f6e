use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{AlgebraContext, AlgebraElement, AlgebraError};
use crate::combinatorics::{OrderedPartition, Permutation};

/// A named generator of `Y(d,n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    G(usize),
    GPerm(Permutation),
    E(usize),
    EPair(usize, usize),
    T(usize),
    Idem(OrderedPartition),
}

/// A generator, possibly inverted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: Generator) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn inv(generator: Generator) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn element(&self, ctx: &Arc<AlgebraContext>) -> Result<AlgebraElement, AlgebraError> {
        use Generator::*;
        match (&self.generator, self.inverse) {
            (G(i), false) => AlgebraElement::gen_g(ctx, *i),
            (G(i), true) => AlgebraElement::g_inverse(ctx, *i),
            (GPerm(w), false) => AlgebraElement::gen_g_perm(ctx, w),
            (GPerm(w), true) => {
                // g_w⁻¹ = g_{i_k}⁻¹ ⋯ g_{i_1}⁻¹
                let mut acc = AlgebraElement::one(ctx);
                for &i in w.reduced_word().iter().rev() {
                    acc = acc.try_mul(&AlgebraElement::g_inverse(ctx, i)?)?;
                }
                Ok(acc)
            }
            (E(i), false) => AlgebraElement::gen_e(ctx, *i),
            (EPair(i, j), false) => AlgebraElement::gen_e_pair(ctx, *i, *j),
            (T(j), false) => AlgebraElement::gen_t(ctx, *j),
            (T(j), true) => AlgebraElement::t_inverse(ctx, *j),
            (Idem(p), false) => AlgebraElement::gen_e_idem(ctx, p),
            (g, true) => Err(AlgebraError::NotInvertible(
                Letter::new(g.clone()).to_string(),
            )),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.generator {
            Generator::G(i) => write!(f, "g{}", i)?,
            Generator::GPerm(w) => write!(f, "g{}", w)?,
            Generator::E(i) => write!(f, "e{}", i)?,
            Generator::EPair(i, j) => write!(f, "e({},{})", i, j)?,
            Generator::T(j) => write!(f, "t{}", j)?,
            Generator::Idem(p) => write!(f, "E{}", p)?,
        }
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = AlgebraError;

    /// `g2`, `g2^-1`, `g[2 1 3]`, `e1`, `e(1,3)`, `t2`, `t2^-1`, `E{1|2}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::UnknownGenerator(s.to_string());
        let s = s.trim();
        let (body, inverse) = match s.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let mut chars = body.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let index = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let generator = match head {
            'g' if rest.starts_with('[') => Generator::GPerm(rest.parse().map_err(|_| bad())?),
            'g' => Generator::G(index(rest)?),
            'e' if rest.starts_with('(') => {
                let inner = rest
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(bad)?;
                let (a, b) = inner.split_once(',').ok_or_else(bad)?;
                Generator::EPair(index(a.trim())?, index(b.trim())?)
            }
            'e' => Generator::E(index(rest)?),
            't' => Generator::T(index(rest)?),
            'E' => Generator::Idem(rest.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        Ok(Letter { generator, inverse })
    }
}

/// Left-to-right product of the letters; the empty word is `1`.
pub fn word_element(
    ctx: &Arc<AlgebraContext>,
    word: &[Letter],
) -> Result<AlgebraElement, AlgebraError> {
    let mut acc = AlgebraElement::one(ctx);
    for letter in word {
        acc = acc.try_mul(&letter.element(ctx)?)?;
    }
    Ok(acc)
}

/// Parse whitespace-separated letters, e.g. `"g2 e1 g2^-1"`.
pub fn parse_word(s: &str) -> Result<Vec<Letter>, AlgebraError> {
    // `g[2 1 3]` contains spaces, so split only outside brackets.
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' | '(' | '{' => depth += 1,
            ']' | ')' | '}' => depth -= 1,
            _ => {}
        }
        if ch.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(cur.parse()?);
                cur.clear();
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push(cur.parse()?);
    }
    Ok(out)
}
