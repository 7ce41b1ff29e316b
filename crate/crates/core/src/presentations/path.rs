use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::{qfact, LaurentPoly, RatExpr, RingContext, Unit};
use crate::error::Result;
use crate::rootdata::{RootDatum, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    E(usize),
    F(usize),
}

/// A composable word in a modified algebra, read left to right.
/// `out` is the weight on the left, `inw` the weight on the right.
/// A word without steps is the idempotent `1_out`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    out: Weight,
    inw: Weight,
    steps: Vec<Step>,
}

impl PathWord {
    pub fn idem(lambda: Weight) -> Self {
        PathWord {
            inw: lambda.clone(),
            out: lambda,
            steps: Vec::new(),
        }
    }

    /// `E_{lambda, lambda - alpha_i}`.
    pub fn e(rd: &RootDatum, i: usize, out: &Weight) -> Self {
        PathWord {
            out: out.clone(),
            inw: rd.shift(out, i, -1),
            steps: vec![Step::E(i)],
        }
    }

    /// `F_{lambda, lambda + alpha_i}`.
    pub fn f(rd: &RootDatum, i: usize, out: &Weight) -> Self {
        PathWord {
            out: out.clone(),
            inw: rd.shift(out, i, 1),
            steps: vec![Step::F(i)],
        }
    }

    pub fn out(&self) -> &Weight {
        &self.out
    }

    pub fn inw(&self) -> &Weight {
        &self.inw
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn is_idem(&self) -> bool {
        self.steps.is_empty()
    }

    /// Concatenation, or `None` when the inner weights disagree.
    pub fn compose(&self, other: &PathWord) -> Option<PathWord> {
        if self.inw != other.out {
            return None;
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Some(PathWord {
            out: self.out.clone(),
            inw: other.inw.clone(),
            steps,
        })
    }

    /// `(step, out weight, in weight)` for every step.
    pub fn walk<'a>(&'a self, rd: &'a RootDatum) -> impl Iterator<Item = (Step, Weight, Weight)> + 'a {
        let mut cur = self.out.clone();
        self.steps.iter().map(move |&s| {
            let next = match s {
                Step::E(i) => rd.shift(&cur, i, -1),
                Step::F(i) => rd.shift(&cur, i, 1),
            };
            let item = (s, cur.clone(), next.clone());
            cur = next;
            item
        })
    }

    /// Degree in `Z[I]`.
    pub fn grade(&self, n: usize) -> Vec<i64> {
        let mut g = vec![0; n];
        for s in &self.steps {
            match *s {
                Step::E(i) => g[i] += 1,
                Step::F(i) => g[i] -= 1,
            }
        }
        g
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return write!(f, "1_{}", self.out);
        }
        let names: Vec<String> = self
            .steps
            .iter()
            .map(|s| match *s {
                Step::E(i) => format!("E{}", i + 1),
                Step::F(i) => format!("F{}", i + 1),
            })
            .collect();
        write!(f, "{}[{} <- {}]", names.join(" "), self.out, self.inw)
    }
}

/// Linear combination of path words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathExpr {
    terms: BTreeMap<PathWord, RatExpr>,
}

impl PathExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: PathWord) -> Self {
        Self::term(w, RatExpr::one())
    }

    pub fn term(w: PathWord, c: RatExpr) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PathWord, &RatExpr)> {
        self.terms.iter()
    }

    /// The only term, if there is exactly one.
    pub fn single(&self) -> Option<(&PathWord, &RatExpr)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn coeff(&self, w: &PathWord) -> RatExpr {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: PathWord, c: RatExpr) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &PathExpr) -> PathExpr {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PathExpr) -> PathExpr {
        self.add(&other.scale(&RatExpr::int(-1)))
    }

    pub fn scale(&self, c: &RatExpr) -> PathExpr {
        if c.is_zero() {
            return PathExpr::zero();
        }
        PathExpr {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&PathWord, &RatExpr) -> Result<RatExpr>) -> Result<PathExpr> {
        let mut out = PathExpr::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(w, c)?);
        }
        Ok(out)
    }

    pub fn display(&self, ctx: &RingContext) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("({}) {}", c.display(ctx), w))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Product in a modified algebra: concatenation where weights chain, zero elsewhere.
pub fn path_mul(a: &PathExpr, b: &PathExpr) -> PathExpr {
    let mut out = PathExpr::zero();
    for (wa, ca) in &a.terms {
        for (wb, cb) in &b.terms {
            if let Some(w) = wa.compose(wb) {
                out.add_term(w, ca * cb);
            }
        }
    }
    out
}

pub fn path_product(factors: &[PathExpr]) -> PathExpr {
    let mut it = factors.iter();
    let Some(first) = it.next() else {
        return PathExpr::zero();
    };
    it.fold(first.clone(), |acc, f| path_mul(&acc, f))
}

/// `1 / [l]!_q`.
pub fn inv_qfact(l: i64, q: &Unit) -> Result<RatExpr> {
    RatExpr::new(LaurentPoly::one(), qfact(l, q)?)
}

/// `E^{<l>}_{lambda + l alpha_i, lambda} = E_{lambda+l alpha_i, lambda+(l-1) alpha_i} ... E_{lambda+alpha_i, lambda} / [l]!_q`.
pub fn divided_power_e(rd: &RootDatum, q: &Unit, i: usize, l: i64, source: &Weight) -> Result<PathExpr> {
    let mut w = PathWord::idem(rd.shift(source, i, l));
    for k in (1..=l).rev() {
        let step = PathWord::e(rd, i, &rd.shift(source, i, k));
        w = w.compose(&step).expect("steps chain by construction");
    }
    Ok(PathExpr::term(w, inv_qfact(l, q)?))
}

/// `F^{<l>}_{lambda, lambda + l alpha_i} = F_{lambda, lambda+alpha_i} ... F_{lambda+(l-1) alpha_i, lambda+l alpha_i} / [l]!_q`.
pub fn divided_power_f(rd: &RootDatum, q: &Unit, i: usize, l: i64, out: &Weight) -> Result<PathExpr> {
    let mut w = PathWord::idem(out.clone());
    for k in 0..l {
        let step = PathWord::f(rd, i, &rd.shift(out, i, k));
        w = w.compose(&step).expect("steps chain by construction");
    }
    Ok(PathExpr::term(w, inv_qfact(l, q)?))
}
