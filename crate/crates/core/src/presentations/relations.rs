use std::fmt;

use serde::{Deserialize, Serialize};

use super::params::ParameterSet;
use super::path::{divided_power_e, divided_power_f, inv_qfact, path_product, PathExpr, PathWord};
use crate::coeffring::{qbinom, qint_signed, LaurentPoly, RatExpr, RingContext, Unit};
use crate::error::{Error, Result};
use crate::ncalg::{fmt_raw, GenSymbol, NcAlgebra, NcExpr, RawWord};
use crate::rootdata::{RootDatum, Weight};

/// Which presentation: ordinary, twisted, and their modified forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraKind {
    U,
    ScrU,
    Udot,
    ScrUdot,
}

impl AlgebraKind {
    pub fn is_modified(self) -> bool {
        matches!(self, AlgebraKind::Udot | AlgebraKind::ScrUdot)
    }

    pub fn is_twisted(self) -> bool {
        matches!(self, AlgebraKind::ScrU | AlgebraKind::ScrUdot)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelFamily {
    A,
    B,
    C,
    DE,
    DF,
}

impl RelFamily {
    pub fn tag(self) -> &'static str {
        match self {
            RelFamily::A => "a",
            RelFamily::B => "b",
            RelFamily::C => "c",
            RelFamily::DE => "d-E",
            RelFamily::DF => "d-F",
        }
    }
}

impl fmt::Display for RelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Identifies one relation instance. Ordered by family, indices, weight, variant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InstanceKey {
    pub family: RelFamily,
    pub i: usize,
    pub j: usize,
    pub lambda: Option<Weight>,
    pub variant: u8,
}

impl InstanceKey {
    pub fn id(&self) -> String {
        let mut s = format!("{}[{},{}]", self.family, self.i + 1, self.j + 1);
        if self.variant > 0 || matches!(self.family, RelFamily::A | RelFamily::B) {
            s.push_str(&format!("#{}", self.variant));
        }
        if let Some(l) = &self.lambda {
            s.push_str(&format!("@{l}"));
        }
        s
    }
}

/// `coef * body`; the body is a raw word or a path expression.
#[derive(Debug, Clone, PartialEq)]
pub struct RelTerm<B> {
    pub coef: RatExpr,
    pub body: B,
}

/// A relation `sum_k coef_k body_k = 0`, stored term by term as printed.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation<B> {
    pub key: InstanceKey,
    pub terms: Vec<RelTerm<B>>,
    /// False when some factor product of a term broke the weight chain.
    pub chain_ok: bool,
}

impl Relation<PathExpr> {
    pub fn eval(&self) -> PathExpr {
        self.terms
            .iter()
            .fold(PathExpr::zero(), |acc, t| acc.add(&t.body.scale(&t.coef)))
    }

    pub fn is_homogeneous(&self, n: usize) -> bool {
        let mut grades = self.terms.iter().flat_map(|t| t.body.terms().map(|(w, _)| w.grade(n)));
        match grades.next() {
            None => true,
            Some(g) => grades.all(|h| h == g),
        }
    }

    pub fn dump(&self, ctx: &RingContext) -> String {
        let mut s = format!("{}:\n", self.key.id());
        for t in &self.terms {
            s.push_str(&format!("  [{}] * {}\n", t.coef.display(ctx), t.body.display(ctx)));
        }
        s
    }
}

impl Relation<RawWord> {
    pub fn eval(&self, alg: &NcAlgebra) -> Result<NcExpr> {
        let mut acc = NcExpr::zero();
        for t in &self.terms {
            acc = acc.add(&alg.word(&t.body)?.scale(&t.coef));
        }
        Ok(acc)
    }

    pub fn is_homogeneous(&self, n: usize) -> bool {
        let mut grades = self.terms.iter().map(|t| crate::ncalg::grade(&t.body, n));
        match grades.next() {
            None => true,
            Some(g) => grades.all(|h| h == g),
        }
    }

    pub fn dump(&self, ctx: &RingContext) -> String {
        let mut s = format!("{}:\n", self.key.id());
        for t in &self.terms {
            s.push_str(&format!("  [{}] * {}\n", t.coef.display(ctx), fmt_raw(&t.body)));
        }
        s
    }
}

#[derive(Debug, Clone)]
pub enum RelationSet {
    Plain(Vec<Relation<RawWord>>),
    Modified(Vec<Relation<PathExpr>>),
}

impl RelationSet {
    pub fn len(&self) -> usize {
        match self {
            RelationSet::Plain(v) => v.len(),
            RelationSet::Modified(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dump(&self, ctx: &RingContext) -> String {
        match self {
            RelationSet::Plain(v) => v.iter().map(|r| r.dump(ctx)).collect(),
            RelationSet::Modified(v) => v.iter().map(|r| r.dump(ctx)).collect(),
        }
    }
}

/// `prod_j base_j^{sign * lambda(j)}`.
pub fn weight_power(rd: &RootDatum, base: &[Unit], lambda: &Weight, sign: i64) -> Result<Unit> {
    let mut acc = Unit::one();
    for (j, b) in base.iter().enumerate() {
        let e = rd.lambda_paren(lambda, j)? * sign;
        acc = acc.mul(&b.pow_ratio(e)?);
    }
    Ok(acc)
}

/// `c_{i,lambda} = prod_j (s_ij t_ij)^{-lambda(j)}`.
pub fn c_scalar(rd: &RootDatum, p: &ParameterSet, i: usize, lambda: &Weight) -> Result<Unit> {
    let st: Vec<Unit> = (0..rd.rank()).map(|j| p.s[i][j].mul(&p.t[i][j])).collect();
    weight_power(rd, &st, lambda, -1)
}

/// Every instance of every family, in enumeration order.
pub fn instance_keys(kind: AlgebraKind, rd: &RootDatum, window: &[Weight]) -> Result<Vec<InstanceKey>> {
    let n = rd.rank();
    let mut keys = Vec::new();
    let mut push = |family, i, j, lambda: Option<&Weight>, variant| {
        keys.push(InstanceKey {
            family,
            i,
            j,
            lambda: lambda.cloned(),
            variant,
        })
    };
    if kind.is_modified() {
        if window.is_empty() {
            return Err(Error::EmptyWindow);
        }
        for i in 0..n {
            for lam in window {
                if i == 0 {
                    push(RelFamily::A, i, i, Some(lam), 0);
                }
                push(RelFamily::A, i, i, Some(lam), 1);
                for v in 0..8 {
                    push(RelFamily::B, i, i, Some(lam), v);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for lam in window {
                    push(RelFamily::C, i, j, Some(lam), 0);
                    if i != j {
                        push(RelFamily::DE, i, j, Some(lam), 0);
                        push(RelFamily::DF, i, j, Some(lam), 0);
                    }
                }
            }
        }
    } else {
        let twisted = kind.is_twisted();
        for i in 0..n {
            for j in 0..n {
                let a_variants = match (twisted, i == j) {
                    (false, false) => 1,
                    (false, true) => 3,
                    (true, false) => 3,
                    (true, true) => 7,
                };
                for v in 0..a_variants {
                    push(RelFamily::A, i, j, None, v);
                }
                for v in 0..(if twisted { 4 } else { 2 }) {
                    push(RelFamily::B, i, j, None, v);
                }
                push(RelFamily::C, i, j, None, 0);
                if i != j {
                    push(RelFamily::DE, i, j, None, 0);
                    push(RelFamily::DF, i, j, None, 0);
                }
            }
        }
    }
    keys.sort();
    Ok(keys)
}

/// Scalars that distinguish the ordinary presentation from the twisted one.
struct Coefs<'a> {
    rd: &'a RootDatum,
    p: &'a ParameterSet,
    twisted: bool,
}

impl Coefs<'_> {
    fn q(&self, i: usize) -> Unit {
        if self.twisted {
            self.p.q[i].clone()
        } else {
            self.p.v_i(self.rd, i)
        }
    }

    /// `s_ij t_ji` in family (c).
    fn st(&self, i: usize, j: usize) -> Unit {
        if self.twisted {
            self.p.s[i][j].mul(&self.p.t[j][i])
        } else {
            Unit::one()
        }
    }

    /// `s_ji s_ij^{-1}` (E) or `t_ji t_ij^{-1}` (F) in family (d).
    fn serre(&self, i: usize, j: usize, fam: RelFamily) -> Unit {
        if !self.twisted {
            return Unit::one();
        }
        match fam {
            RelFamily::DE => self.p.s[j][i].div(&self.p.s[i][j]),
            _ => self.p.t[j][i].div(&self.p.t[i][j]),
        }
    }

    fn c(&self, i: usize, lambda: &Weight) -> Result<Unit> {
        if self.twisted {
            c_scalar(self.rd, self.p, i, lambda)
        } else {
            Ok(Unit::one())
        }
    }
}

fn term<B>(coef: RatExpr, body: B) -> RelTerm<B> {
    RelTerm { coef, body }
}

fn sign(l: i64) -> RatExpr {
    RatExpr::int(if l % 2 == 0 { 1 } else { -1 })
}

/// Builds one instance of a modified algebra relation.
pub fn modified_relation(
    kind: AlgebraKind,
    rd: &RootDatum,
    p: &ParameterSet,
    key: &InstanceKey,
) -> Result<Relation<PathExpr>> {
    let cf = Coefs {
        rd,
        p,
        twisted: kind.is_twisted(),
    };
    let lam = key.lambda.as_ref().ok_or(Error::EmptyWindow)?;
    let (i, j) = (key.i, key.j);
    let one = RatExpr::one;
    let minus = || RatExpr::int(-1);
    let idem = |w: &Weight| PathExpr::word(PathWord::idem(w.clone()));
    let up = rd.shift(lam, i, 1);
    let down = rd.shift(lam, i, -1);
    let terms = match key.family {
        RelFamily::A => {
            if key.variant == 0 {
                vec![term(one(), path_product(&[idem(lam), idem(lam)])), term(minus(), idem(lam))]
            } else {
                vec![term(one(), path_product(&[idem(lam), idem(&up)]))]
            }
        }
        RelFamily::B => {
            let e_in = PathExpr::word(PathWord::e(rd, i, &up)); // E_{lambda+alpha_i, lambda}
            let e_out = PathExpr::word(PathWord::e(rd, i, lam)); // E_{lambda, lambda-alpha_i}
            let f_in = PathExpr::word(PathWord::f(rd, i, &down)); // F_{lambda-alpha_i, lambda}
            let f_out = PathExpr::word(PathWord::f(rd, i, lam)); // F_{lambda, lambda+alpha_i}
            let (body, rhs) = match key.variant {
                0 => (path_product(&[e_in.clone(), idem(lam)]), Some(e_in)),
                1 => (path_product(&[idem(lam), e_out.clone()]), Some(e_out)),
                2 => (path_product(&[f_in.clone(), idem(lam)]), Some(f_in)),
                3 => (path_product(&[idem(lam), f_out.clone()]), Some(f_out)),
                4 => (path_product(&[e_in, idem(&up)]), None),
                5 => (path_product(&[idem(&up), e_out]), None),
                6 => (path_product(&[f_in, idem(&up)]), None),
                _ => (path_product(&[idem(&up), f_out]), None),
            };
            let mut t = vec![term(one(), body)];
            if let Some(r) = rhs {
                t.push(term(minus(), r));
            }
            t
        }
        RelFamily::C => {
            let lhs = path_product(&[
                PathExpr::word(PathWord::e(rd, i, lam)),
                PathExpr::word(PathWord::f(rd, j, &down)),
            ]);
            let up_j = rd.shift(lam, j, 1);
            let rhs = path_product(&[
                PathExpr::word(PathWord::f(rd, j, lam)),
                PathExpr::word(PathWord::e(rd, i, &up_j)),
            ]);
            let mut t = vec![term(one(), lhs), term(RatExpr::from(cf.st(i, j).neg()), rhs)];
            if i == j {
                let li = rd.lambda_i(lam, i)?;
                let coef = RatExpr::from(qint_signed(li, &cf.q(i))).mul_unit(&cf.c(i, lam)?.neg());
                t.push(term(coef, idem(lam)));
            }
            t
        }
        RelFamily::DE | RelFamily::DF => {
            if i == j {
                return Err(Error::SerreDiagonal(i));
            }
            let r = rd.cartan().serre_exponent(i, j);
            let q = cf.q(i);
            let ratio = cf.serre(i, j, key.family);
            let mut t = Vec::with_capacity(r as usize + 1);
            for l in 0..=r {
                let coef = sign(l).mul_unit(&ratio.pow(l));
                let body = if key.family == RelFamily::DE {
                    let mid = rd.shift(&rd.shift(lam, i, l), j, 1);
                    path_product(&[
                        divided_power_e(rd, &q, i, r - l, &mid)?,
                        PathExpr::word(PathWord::e(rd, j, &mid)),
                        divided_power_e(rd, &q, i, l, lam)?,
                    ])
                } else {
                    let at = rd.shift(lam, i, l);
                    let mid = rd.shift(&at, j, 1);
                    path_product(&[
                        divided_power_f(rd, &q, i, l, lam)?,
                        PathExpr::word(PathWord::f(rd, j, &at)),
                        divided_power_f(rd, &q, i, r - l, &mid)?,
                    ])
                };
                t.push(term(coef, body));
            }
            t
        }
    };
    let chain_ok = match key.family {
        RelFamily::C | RelFamily::DE | RelFamily::DF => terms.iter().all(|t| !t.body.is_zero()),
        _ => true,
    };
    Ok(Relation {
        key: key.clone(),
        terms,
        chain_ok,
    })
}

/// Builds one instance of an ordinary or twisted (unmodified) relation.
pub fn plain_relation(kind: AlgebraKind, rd: &RootDatum, p: &ParameterSet, key: &InstanceKey) -> Result<Relation<RawWord>> {
    use GenSymbol as G;
    let twisted = kind.is_twisted();
    let cf = Coefs { rd, p, twisted };
    let (i, j) = (key.i, key.j);
    let one = RatExpr::one;
    let minus = || RatExpr::int(-1);
    let kinv_i = if twisted { G::kp(i) } else { G::kinv(i) };
    let terms = match key.family {
        RelFamily::A => {
            let pair = |x: G, y: G| vec![term(one(), vec![x, y]), term(minus(), vec![y, x])];
            let unit = |x: G, y: G| vec![term(one(), vec![x, y]), term(minus(), vec![])];
            match (twisted, i == j, key.variant) {
                (_, _, 0) => pair(G::k(i), G::k(j)),
                (false, true, 1) => unit(G::k(i), G::kinv(i)),
                (false, true, _) => unit(G::kinv(i), G::k(i)),
                (true, _, 1) => pair(G::kp(i), G::kp(j)),
                (true, _, 2) => pair(G::k(i), G::kp(j)),
                (true, true, 3) => unit(G::k(i), G::kinv(i)),
                (true, true, 4) => unit(G::kinv(i), G::k(i)),
                (true, true, 5) => unit(G::kp(i), G::kpinv(i)),
                (true, true, _) => unit(G::kpinv(i), G::kp(i)),
                _ => return Err(Error::RulesetMismatch(key.id())),
            }
        }
        RelFamily::B => {
            let (g, x, scalar) = if twisted {
                let st = p.s[i][j].mul(&p.t[i][j]);
                let qa = p.q[i].pow(rd.a(i, j));
                match key.variant {
                    0 => (G::k(i), G::e(j), st.inv().mul(&qa)),
                    1 => (G::kp(i), G::e(j), st.inv().mul(&qa.inv())),
                    2 => (G::k(i), G::f(j), st.mul(&qa.inv())),
                    _ => (G::kp(i), G::f(j), st.mul(&qa)),
                }
            } else {
                let va = p.v_i(rd, i).pow(rd.a(i, j));
                match key.variant {
                    0 => (G::k(i), G::e(j), va),
                    _ => (G::k(i), G::f(j), va.inv()),
                }
            };
            let ginv = g.inverse().expect("K-type generator");
            vec![term(one(), vec![g, x, ginv]), term(RatExpr::from(scalar.neg()), vec![x])]
        }
        RelFamily::C => {
            let mut t = vec![
                term(one(), vec![G::e(i), G::f(j)]),
                term(RatExpr::from(cf.st(i, j).neg()), vec![G::f(j), G::e(i)]),
            ];
            if i == j {
                let q = cf.q(i);
                let den = LaurentPoly::from_unit(&q) - LaurentPoly::from_unit(&q.inv());
                let frac = RatExpr::new(LaurentPoly::one(), den)?;
                t.push(term(-frac.clone(), vec![G::k(i)]));
                t.push(term(frac, vec![kinv_i]));
            }
            t
        }
        RelFamily::DE | RelFamily::DF => {
            if i == j {
                return Err(Error::SerreDiagonal(i));
            }
            let r = rd.cartan().serre_exponent(i, j);
            let q = cf.q(i);
            let ratio = cf.serre(i, j, key.family);
            let mut t = Vec::new();
            for l in 0..=r {
                let coef = (sign(l).mul_unit(&ratio.pow(l)) * inv_qfact(r - l, &q)?) * inv_qfact(l, &q)?;
                let (left, right, x): (i64, i64, fn(usize) -> G) = if key.family == RelFamily::DE {
                    (r - l, l, G::e)
                } else {
                    (l, r - l, G::f)
                };
                let mut body = vec![x(i); left as usize];
                body.push(x(j));
                body.extend(std::iter::repeat_n(x(i), right as usize));
                t.push(term(coef, body));
            }
            t
        }
    };
    Ok(Relation {
        key: key.clone(),
        terms,
        chain_ok: true,
    })
}

/// Every relation instance of `kind` (the window is ignored for unmodified algebras).
pub fn relations_of(kind: AlgebraKind, rd: &RootDatum, p: &ParameterSet, window: &[Weight]) -> Result<RelationSet> {
    let keys = instance_keys(kind, rd, window)?;
    if kind.is_modified() {
        keys.iter()
            .map(|k| modified_relation(kind, rd, p, k))
            .collect::<Result<Vec<_>>>()
            .map(RelationSet::Modified)
    } else {
        keys.iter()
            .map(|k| plain_relation(kind, rd, p, k))
            .collect::<Result<Vec<_>>>()
            .map(RelationSet::Plain)
    }
}

/// `R_ij = sum_l (-1)^l s_ji^l s_ij^{-l} [r, l]_{q_i} E_i^{r-l} E_j E_i^l`.
pub fn serre_r(alg: &NcAlgebra, rd: &RootDatum, p: &ParameterSet, i: usize, j: usize) -> Result<NcExpr> {
    serre_r_generic(alg, rd, p, i, j, RelFamily::DE)
}

/// `sum_l (-1)^l t_ji^l t_ij^{-l} [r, l]_{q_i} F_i^l F_j F_i^{r-l}`.
pub fn serre_r_f(alg: &NcAlgebra, rd: &RootDatum, p: &ParameterSet, i: usize, j: usize) -> Result<NcExpr> {
    serre_r_generic(alg, rd, p, i, j, RelFamily::DF)
}

fn serre_r_generic(
    alg: &NcAlgebra,
    rd: &RootDatum,
    p: &ParameterSet,
    i: usize,
    j: usize,
    fam: RelFamily,
) -> Result<NcExpr> {
    if i == j {
        return Err(Error::SerreDiagonal(i));
    }
    let cf = Coefs { rd, p, twisted: true };
    let r = rd.cartan().serre_exponent(i, j);
    let ratio = cf.serre(i, j, fam);
    let mut acc = NcExpr::zero();
    for l in 0..=r {
        let coef = sign(l).mul_unit(&ratio.pow(l)) * RatExpr::from(qbinom(r, l, &p.q[i])?);
        let (left, right, x): (i64, i64, fn(usize) -> GenSymbol) = if fam == RelFamily::DE {
            (r - l, l, GenSymbol::e)
        } else {
            (l, r - l, GenSymbol::f)
        };
        let mut body = vec![x(i); left as usize];
        body.push(x(j));
        body.extend(std::iter::repeat_n(x(i), right as usize));
        acc = acc.add(&alg.word(&body)?.scale(&coef));
    }
    Ok(acc)
}

/// `E_i^{<l>}` or `F_i^{<l>}` in an unmodified algebra.
pub fn divided_power_nc(alg: &NcAlgebra, x: GenSymbol, l: i64, q: &Unit) -> Result<NcExpr> {
    let w = vec![x; l.max(0) as usize];
    Ok(alg.word(&w)?.scale(&inv_qfact(l, q)?))
}
