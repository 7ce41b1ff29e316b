use std::collections::BTreeMap;

use crate::coeffring::{RingContext, Substitution, Unit};
use crate::error::{Error, Result};
use crate::rootdata::RootDatum;

/// The parameters `q_i, s_ij, t_ij` together with `v`, as units of one ring.
#[derive(Debug, Clone)]
pub struct ParameterSet {
    ctx: RingContext,
    label: String,
    pub v: Unit,
    pub q: Vec<Unit>,
    pub s: Vec<Vec<Unit>>,
    pub t: Vec<Vec<Unit>>,
}

/// Name of a doubly indexed parameter, 1-based: `s12`, or `s1_12` past rank 9.
pub fn pname(base: &str, i: usize, j: usize, rank: usize) -> String {
    if rank < 10 {
        format!("{base}{}{}", i + 1, j + 1)
    } else {
        format!("{base}{}_{}", i + 1, j + 1)
    }
}

/// Exponent denominator declared for every parameter variable of `rd`.
pub fn var_den(rd: &RootDatum) -> u32 {
    2 * rd.coweight_den() as u32
}

impl ParameterSet {
    /// Independent indeterminates `v`, `q_i`, `s_ij`, `t_ij`.
    pub fn generic(rd: &RootDatum) -> Result<Self> {
        let n = rd.rank();
        let den = var_den(rd);
        let mut b = RingContext::builder().laurent("v", den);
        for i in 0..n {
            b = b.laurent(format!("q{}", i + 1), den * rd.d(i) as u32);
        }
        b = add_st(b, n, den);
        let ctx = b.build()?;
        let q = (0..n).map(|i| ctx.unit(&format!("q{}", i + 1))).collect::<Result<_>>()?;
        Self::assemble(ctx, "generic", q)
    }

    /// `q_i = v^{d_i}` with free `s_ij`, `t_ij`.
    pub fn twist_generic(rd: &RootDatum) -> Result<Self> {
        let ctx = add_st(RingContext::builder().laurent("v", var_den(rd)), rd.rank(), var_den(rd)).build()?;
        let v = ctx.unit("v")?;
        let q = (0..rd.rank()).map(|i| v.pow(rd.d(i))).collect();
        Self::assemble(ctx, "generic-st", q)
    }

    /// `q_i = v^{d_i}`, `s = t = 1`.
    pub fn untwisted(rd: &RootDatum) -> Result<Self> {
        let ctx = RingContext::builder().laurent("v", var_den(rd)).build()?;
        let v = ctx.unit("v")?;
        let n = rd.rank();
        Ok(ParameterSet {
            label: "untwisted".into(),
            q: (0..n).map(|i| v.pow(rd.d(i))).collect(),
            s: vec![vec![Unit::one(); n]; n],
            t: vec![vec![Unit::one(); n]; n],
            v,
            ctx,
        })
    }

    /// Pushes every parameter of `self` through `sigma`.
    pub fn specialize(&self, sigma: &Substitution, label: impl Into<String>) -> Result<Self> {
        if sigma.source() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        let map = |u: &Unit| sigma.apply_unit(u);
        Ok(ParameterSet {
            ctx: sigma.target().clone(),
            label: label.into(),
            v: map(&self.v)?,
            q: self.q.iter().map(map).collect::<Result<_>>()?,
            s: self.s.iter().map(|r| r.iter().map(map).collect()).collect::<Result<_>>()?,
            t: self.t.iter().map(|r| r.iter().map(map).collect()).collect::<Result<_>>()?,
        })
    }

    fn assemble(ctx: RingContext, label: &str, q: Vec<Unit>) -> Result<Self> {
        let n = q.len();
        let grab = |base: &str| -> Result<Vec<Vec<Unit>>> {
            (0..n)
                .map(|i| (0..n).map(|j| ctx.unit(&pname(base, i, j, n))).collect())
                .collect()
        };
        Ok(ParameterSet {
            v: ctx.unit("v")?,
            s: grab("s")?,
            t: grab("t")?,
            q,
            label: label.into(),
            ctx,
        })
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.q.len()
    }

    /// `v_i = v^{d_i}`.
    pub fn v_i(&self, rd: &RootDatum, i: usize) -> Unit {
        self.v.pow(rd.d(i))
    }

    /// Whether `q_i = v_i` holds for every `i`.
    pub fn q_is_v(&self, rd: &RootDatum) -> bool {
        (0..self.rank()).all(|i| self.q[i] == self.v_i(rd, i))
    }

    /// Whether `q_i^{a_ij} = q_j^{a_ji}` holds for every `i, j`.
    pub fn hopf_hypothesis(&self, rd: &RootDatum) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.q[i].pow(rd.a(i, j)) == self.q[j].pow(rd.a(j, i))))
    }

    /// Every parameter as `name -> unit`, for reports.
    pub fn table(&self) -> BTreeMap<String, String> {
        let n = self.rank();
        let mut out = BTreeMap::new();
        out.insert("v".to_string(), self.show(&self.v));
        for i in 0..n {
            out.insert(format!("q{}", i + 1), self.show(&self.q[i]));
            for j in 0..n {
                out.insert(pname("s", i, j, n), self.show(&self.s[i][j]));
                out.insert(pname("t", i, j, n), self.show(&self.t[i][j]));
            }
        }
        out
    }

    pub fn show(&self, u: &Unit) -> String {
        crate::coeffring::LaurentPoly::from_unit(u).display(&self.ctx)
    }
}

fn add_st(mut b: crate::coeffring::ContextBuilder, n: usize, den: u32) -> crate::coeffring::ContextBuilder {
    for base in ["s", "t"] {
        for i in 0..n {
            for j in 0..n {
                b = b.laurent(pname(base, i, j, n), den);
            }
        }
    }
    b
}
