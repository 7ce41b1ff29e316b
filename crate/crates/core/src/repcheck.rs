//! Finite-dimensional weight modules as explicit matrices, their transport
//! along the twist, and relation checks at matrix level.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::coeffring::{qint, RatExpr, RingContext, Unit};
use crate::error::{Error, Result};
use crate::ncalg::{fmt_raw, GenKind, GenSymbol};
use crate::presentations::{c_scalar, instance_keys, plain_relation, AlgebraKind, ParameterSet};
use crate::report::{CheckRecord, Status};
use crate::rootdata::{RootDatum, Weight};
use crate::specializations::{Case, Specialization};
use crate::twistmap::TwistScalars;

/// Dense square matrix over the fraction field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<RatExpr>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            data: vec![RatExpr::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag((0..n).map(|_| RatExpr::one()).collect())
    }

    pub fn diag(d: Vec<RatExpr>) -> Self {
        let mut m = Self::zero(d.len());
        for (k, x) in d.into_iter().enumerate() {
            m.set(k, k, x);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &RatExpr {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: RatExpr) {
        self.data[r * self.n + c] = x;
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let n = self.n;
        let mut out = Matrix::zero(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let acc = out.get(r, c).try_add(&a.try_mul(b)?)?;
                        out.set(r, c, acc);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(Matrix { n: self.n, data })
    }

    pub fn scale(&self, x: &RatExpr) -> Result<Matrix> {
        let data = self.data.iter().map(|a| a.try_mul(x)).collect::<Result<_>>()?;
        Ok(Matrix { n: self.n, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatExpr::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.nonzero().all(|(r, c, _)| r == c)
    }

    /// Nonzero entries in row-major order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &RatExpr)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(k, x)| (k / self.n, k % self.n, x))
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::Shape(format!("{0}x{0} vs {1}x{1}", self.n, other.n)))
        }
    }

    pub fn display(&self, ctx: &RingContext) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|r| {
                let cells: Vec<String> = (0..self.n).map(|c| self.get(r, c).display(ctx)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        rows.join("\n")
    }
}

/// A module with a weight basis; every generator is a matrix in that basis.
#[derive(Debug, Clone)]
pub struct WeightModule {
    pub name: String,
    pub weights: Vec<Weight>,
    gens: BTreeMap<GenSymbol, Matrix>,
    /// Whether `K'` acts independently (after transport).
    pub twisted: bool,
}

impl WeightModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn action(&self, g: GenSymbol) -> Result<&Matrix> {
        self.gens
            .get(&g)
            .ok_or_else(|| Error::ModuleCheck(format!("{} has no action of {g}", self.name)))
    }

    pub fn word(&self, w: &[GenSymbol]) -> Result<Matrix> {
        w.iter()
            .try_fold(Matrix::identity(self.dim()), |acc, &g| acc.mul(self.action(g)?))
    }

    /// `dim M_λ` for each weight that occurs.
    pub fn weight_dims(&self) -> BTreeMap<Weight, usize> {
        let mut out = BTreeMap::new();
        for w in &self.weights {
            *out.entry(w.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Multiplies one entry of one generator by `factor` (negative control).
    pub fn corrupt(&mut self, g: GenSymbol, factor: &RatExpr) -> Result<()> {
        let m = self
            .gens
            .get_mut(&g)
            .ok_or_else(|| Error::ModuleCheck(format!("no action of {g}")))?;
        let (r, c) = m
            .nonzero()
            .map(|(r, c, _)| (r, c))
            .next()
            .ok_or_else(|| Error::ModuleCheck(format!("{g} acts by zero")))?;
        let x = m.get(r, c).try_mul(factor)?;
        m.set(r, c, x);
        Ok(())
    }

    fn from_root_strings(
        name: String,
        rd: &RootDatum,
        p: &ParameterSet,
        weights: Vec<Weight>,
        e: Vec<Matrix>,
        f: Vec<Matrix>,
    ) -> Result<Self> {
        let mut gens = BTreeMap::new();
        for i in 0..rd.rank() {
            let vi = p.v_i(rd, i);
            let k: Vec<Unit> = weights.iter().map(|w| Ok(vi.pow(rd.lambda_i(w, i)?))).collect::<Result<_>>()?;
            let diag = |inv: bool| Matrix::diag(k.iter().map(|u| RatExpr::from(if inv { u.inv() } else { u.clone() })).collect());
            gens.insert(GenSymbol::e(i), e[i].clone());
            gens.insert(GenSymbol::f(i), f[i].clone());
            gens.insert(GenSymbol::k(i), diag(false));
            gens.insert(GenSymbol::kinv(i), diag(true));
            gens.insert(GenSymbol::kp(i), diag(true));
            gens.insert(GenSymbol::kpinv(i), diag(false));
        }
        let m = WeightModule {
            name,
            weights,
            gens,
            twisted: false,
        };
        let recs = verify_module(&m, AlgebraKind::U, rd, p)?;
        if let Some(bad) = recs.iter().find(|r| r.status != Status::Pass) {
            return Err(Error::ModuleCheck(format!("{}: {}", m.name, bad.witness.clone().unwrap_or_else(|| bad.id.clone()))));
        }
        Ok(m)
    }
}

/// A weight `μ` with `⟨α̌_i, μ⟩ = target[i]`, searched in a small box.
fn find_weight(rd: &RootDatum, target: &[i64]) -> Result<Weight> {
    let bound = target.iter().map(|x| x.abs()).max().unwrap_or(0).max(1);
    rd.window(bound)
        .into_iter()
        .find(|w| (0..rd.rank()).all(|i| rd.lambda_i(w, i).ok() == Some(target[i])))
        .ok_or_else(|| Error::ModuleCheck(format!("no weight with pairings {target:?} in {}", rd.name())))
}

/// The simple module of dimension `n + 1` for a rank-one datum.
pub fn build_sl2_module(rd: &RootDatum, p: &ParameterSet, n: usize) -> Result<WeightModule> {
    if rd.rank() != 1 {
        return Err(Error::ModuleCheck(format!("rank-one datum required, {} has rank {}", rd.name(), rd.rank())));
    }
    let top = find_weight(rd, &[n as i64])?;
    let dim = n + 1;
    let weights: Vec<Weight> = (0..dim).map(|k| top.add_scaled(rd.alpha(0), -(k as i64))).collect();
    let v = p.v_i(rd, 0);
    let mut e = Matrix::zero(dim);
    let mut f = Matrix::zero(dim);
    for k in 0..n {
        f.set(k + 1, k, RatExpr::from(qint(k as i64 + 1, &v)?));
        e.set(k, k + 1, RatExpr::from(qint((n - k) as i64, &v)?));
    }
    WeightModule::from_root_strings(format!("sl2(n={n})"), rd, p, weights, vec![e], vec![f])
}

/// The three-dimensional natural module for a datum of type A2.
pub fn build_sl3_natural(rd: &RootDatum, p: &ParameterSet) -> Result<WeightModule> {
    let cm = rd.cartan().cartan_matrix();
    if cm != vec![vec![2, -1], vec![-1, 2]] {
        return Err(Error::ModuleCheck(format!("{} is not of type A2", rd.name())));
    }
    let top = find_weight(rd, &[1, 0])?;
    let mid = top.add_scaled(rd.alpha(0), -1);
    let low = mid.add_scaled(rd.alpha(1), -1);
    let mut e = vec![Matrix::zero(3), Matrix::zero(3)];
    let mut f = vec![Matrix::zero(3), Matrix::zero(3)];
    for i in 0..2 {
        e[i].set(i, i + 1, RatExpr::one());
        f[i].set(i + 1, i, RatExpr::one());
    }
    WeightModule::from_root_strings("sl3-natural".into(), rd, p, vec![top, mid, low], e, f)
}

/// Turns a module with untwisted action into one over the twisted algebra:
/// the `E_i` block into `M_λ` is divided by `e(i, λ)`, the `F_i` block out of
/// `M_λ` by `f(i, λ)`, and `K_i, K'_i` act on `M_λ` by `c(i,λ) q_i^{±λ_i}`.
pub fn transport(m: &WeightModule, tw: &TwistScalars) -> Result<WeightModule> {
    let (rd, p) = (tw.rd, tw.params);
    if !p.q_is_v(rd) {
        return Err(Error::Hypothesis("transport needs q_i = v_i".into()));
    }
    let dim = m.dim();
    let mut gens = BTreeMap::new();
    for i in 0..rd.rank() {
        let mut e = m.action(GenSymbol::e(i))?.clone();
        let mut f = m.action(GenSymbol::f(i))?.clone();
        for c in 0..dim {
            for r in 0..dim {
                if !e.get(r, c).is_zero() {
                    let s = tw.e(i, &m.weights[r])?.inv();
                    e.set(r, c, e.get(r, c).mul_unit(&s));
                }
                if !f.get(r, c).is_zero() {
                    let s = tw.f(i, &m.weights[c])?.inv();
                    f.set(r, c, f.get(r, c).mul_unit(&s));
                }
            }
        }
        let mut k = Vec::with_capacity(dim);
        let mut kp = Vec::with_capacity(dim);
        for w in &m.weights {
            let c = tw.c(i, w)?;
            let ql = p.q[i].pow(rd.lambda_i(w, i)?);
            k.push(c.mul(&ql));
            kp.push(c.mul(&ql.inv()));
        }
        let d = |xs: &[Unit], inv: bool| Matrix::diag(xs.iter().map(|u| RatExpr::from(if inv { u.inv() } else { u.clone() })).collect());
        gens.insert(GenSymbol::e(i), e);
        gens.insert(GenSymbol::f(i), f);
        gens.insert(GenSymbol::k(i), d(&k, false));
        gens.insert(GenSymbol::kinv(i), d(&k, true));
        gens.insert(GenSymbol::kp(i), d(&kp, false));
        gens.insert(GenSymbol::kpinv(i), d(&kp, true));
    }
    Ok(WeightModule {
        name: m.name.clone(),
        weights: m.weights.clone(),
        gens,
        twisted: true,
    })
}

/// Substitutes the module's matrices into every relation of `kind`.
pub fn verify_module(m: &WeightModule, kind: AlgebraKind, rd: &RootDatum, p: &ParameterSet) -> Result<Vec<CheckRecord>> {
    if kind.is_modified() {
        return Err(Error::ModuleCheck("modules are checked against unmodified presentations".into()));
    }
    let keys = instance_keys(kind, rd, &[])?;
    keys.par_iter()
        .map(|key| {
            let rel = plain_relation(kind, rd, p, key)?;
            let mut acc = Matrix::zero(m.dim());
            for t in &rel.terms {
                acc = acc.add(&m.word(&t.body)?.scale(&t.coef)?)?;
            }
            let mut rec = CheckRecord::for_key("", key, Status::from_bool(acc.is_zero()));
            if let Some((r, c, x)) = acc.nonzero().next() {
                let words: Vec<String> = rel.terms.iter().map(|t| fmt_raw(&t.body)).collect();
                rec = rec.witness(format!(
                    "entry ({}, {}) = {} in {}",
                    r + 1,
                    c + 1,
                    x.display(p.ctx()),
                    words.join(" | ")
                ));
            }
            Ok(rec)
        })
        .collect()
}

/// Block structure of `E, F` and diagonality of the `K`-type generators.
pub fn check_structure(m: &WeightModule, rd: &RootDatum) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for i in 0..rd.rank() {
        for (g, sign) in [(GenSymbol::e(i), 1), (GenSymbol::f(i), -1)] {
            let bad = m
                .action(g)?
                .nonzero()
                .find(|&(r, c, _)| m.weights[r] != m.weights[c].add_scaled(rd.alpha(i), sign));
            let mut rec = CheckRecord::new(format!("block {g}"), Status::from_bool(bad.is_none())).family("structure");
            if let Some((r, c, _)) = bad {
                rec = rec.witness(format!("entry ({}, {}) leaves the weight string", r + 1, c + 1));
            }
            out.push(rec);
        }
        for kind in [GenKind::K, GenKind::Kinv, GenKind::Kp, GenKind::Kpinv] {
            let g = GenSymbol { kind, index: i };
            out.push(CheckRecord::new(format!("diagonal {g}"), Status::from_bool(m.action(g)?.is_diagonal())).family("structure"));
        }
    }
    Ok(out)
}

/// `K_i K'_i` acts on `M_λ` by `c(i,λ)^2`.
pub fn check_kkp(m: &WeightModule, rd: &RootDatum, p: &ParameterSet) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for i in 0..rd.rank() {
        let prod = m.action(GenSymbol::k(i))?.mul(m.action(GenSymbol::kp(i))?)?;
        let want = Matrix::diag(
            m.weights
                .iter()
                .map(|w| Ok(RatExpr::from(c_scalar(rd, p, i, w)?.pow(2))))
                .collect::<Result<_>>()?,
        );
        let ok = prod == want;
        let mut rec = CheckRecord::new(format!("kk'[{}]", i + 1), Status::from_bool(ok)).family("kk'").indices(i, i);
        if !ok {
            rec = rec.witness(format!("K K' =\n{}", prod.display(p.ctx())));
        }
        out.push(rec);
    }
    Ok(out)
}

/// Which parameters a module campaign runs under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamCase {
    /// Free `s, t` with `q_i = v_i`.
    Generic,
    Special(Case),
}

impl ParamCase {
    pub const ALL: [ParamCase; 5] = [
        ParamCase::Generic,
        ParamCase::Special(Case::TwoParam),
        ParamCase::Special(Case::MultiParam),
        ParamCase::Special(Case::SuperI),
        ParamCase::Special(Case::SuperII),
    ];

    pub fn name(self) -> &'static str {
        match self {
            ParamCase::Generic => "generic",
            ParamCase::Special(c) => c.name(),
        }
    }

    pub fn params(self, rd: &RootDatum) -> Result<ParameterSet> {
        match self {
            ParamCase::Generic => ParameterSet::twist_generic(rd),
            ParamCase::Special(c) => Ok(Specialization::build(c, rd)?.params),
        }
    }
}

/// Checks for one module under one parameter case, ids prefixed by the module and case.
pub fn module_checks(
    rd: &RootDatum,
    case: ParamCase,
    build: impl Fn(&ParameterSet) -> Result<WeightModule>,
) -> Result<Vec<CheckRecord>> {
    let p = case.params(rd)?;
    let base = build(&p)?;
    let tw = TwistScalars::new(rd, &p);
    let moved = transport(&base, &tw)?;
    let tag = format!("{} {} ", base.name, case.name());
    let mut recs = Vec::new();
    let same_dims = base.weight_dims() == moved.weight_dims();
    recs.push(CheckRecord::new("weight-dims", Status::from_bool(same_dims)).family("structure"));
    recs.extend(check_structure(&moved, rd)?);
    recs.extend(verify_module(&moved, AlgebraKind::ScrU, rd, &p)?);
    recs.extend(check_kkp(&moved, rd, &p)?);
    // F_1 when it acts nontrivially, else K_1
    let target = if moved.action(GenSymbol::f(0))?.is_zero() { GenSymbol::k(0) } else { GenSymbol::f(0) };
    let mut bad = moved.clone();
    bad.corrupt(target, &RatExpr::int(2))?;
    let caught = verify_module(&bad, AlgebraKind::ScrU, rd, &p)?;
    let fails = caught.iter().filter(|r| r.status == Status::Fail).count();
    let mut rec = CheckRecord::new(format!("negative-control {target}*2"), Status::from_bool(fails > 0)).family("negative-control");
    if let Some(w) = caught.iter().find_map(|r| r.witness.clone()) {
        rec = rec.detail(format!("{fails} relation(s) detect it; first: {w}"));
    }
    recs.push(rec);
    for r in &mut recs {
        r.id = format!("{tag}{}", r.id);
    }
    Ok(recs)
}

/// Built-in modules: `sl2(n)` for `n <= max_n` on `a1` and the natural module on `a2`.
pub fn campaign(max_n: usize, cases: &[ParamCase]) -> Result<Vec<CheckRecord>> {
    let a1 = RootDatum::builtin("a1")?;
    let a2 = RootDatum::builtin("a2")?;
    let mut jobs: Vec<(usize, ParamCase, Option<usize>)> = Vec::new();
    for (ci, &case) in cases.iter().enumerate() {
        for n in 0..=max_n {
            jobs.push((ci, case, Some(n)));
        }
        jobs.push((ci, case, None));
    }
    let parts: Vec<Result<Vec<CheckRecord>>> = jobs
        .par_iter()
        .map(|&(_, case, n)| match n {
            Some(n) => module_checks(&a1, case, |p| build_sl2_module(&a1, p, n)),
            None => module_checks(&a2, case, |p| build_sl3_natural(&a2, p)),
        })
        .collect();
    let mut out = Vec::new();
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

/// Transport convention, for reports.
pub fn convention() -> &'static str {
    "E_i: M_mu -> M_(mu+alpha_i) scaled by e(i, mu+alpha_i)^-1; F_i: M_mu -> M_(mu-alpha_i) scaled by f(i, mu)^-1; \
     K_i = c(i,mu) q_i^mu_i, K'_i = c(i,mu) q_i^-mu_i"
}

#[cfg(test)]
mod tests;
