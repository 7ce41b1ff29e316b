//! The four standard specializations of the free parameters, as substitutions
//! out of the generic parameter ring, with their constraint sets and
//! `c_{i,λ}` tables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::coeffring::{RingContext, Substitution, Unit};
use crate::error::{Error, Result};
use crate::presentations::{c_scalar, pname, var_den, weight_power, ParameterSet};
use crate::report::{CheckRecord, Status};
use crate::rootdata::{RootDatum, Weight};
use crate::twistmap::{check_scalar_identities, verify_twist};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    TwoParam,
    MultiParam,
    SuperI,
    SuperII,
}

impl Case {
    pub const ALL: [Case; 4] = [Case::TwoParam, Case::MultiParam, Case::SuperI, Case::SuperII];

    pub fn name(self) -> &'static str {
        match self {
            Case::TwoParam => "two-param",
            Case::MultiParam => "multi-param",
            Case::SuperI => "super1",
            Case::SuperII => "super2",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Case::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown specialization case `{s}`")))
    }
}

/// Integer matrix `Ω` for the two-parameter case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaMatrix(Vec<Vec<i64>>);

impl OmegaMatrix {
    /// Validates against `rd`; the error names the failing condition and 1-based indices.
    pub fn new(rd: &RootDatum, rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rd.rank();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidOmega(format!("expected a {n}x{n} matrix")));
        }
        let bad = |cond: &str, i: usize, j: usize, what: String| {
            Err(Error::InvalidOmega(format!("condition ({cond}) fails at ({}, {}): {what}", i + 1, j + 1)))
        };
        for i in 0..n {
            if rows[i][i] <= 0 {
                return bad("a", i, i, format!("diagonal entry {} is not positive", rows[i][i]));
            }
            for j in 0..n {
                if i != j && rows[i][j] > 0 {
                    return bad("a", i, j, format!("off-diagonal entry {} is positive", rows[i][j]));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let sym = rows[i][j] + rows[j][i];
                if i != j && (sym % rows[i][i] != 0 || sym > 0) {
                    return bad("b", i, j, format!("({sym})/{} is not a non-positive integer", rows[i][i]));
                }
                let dot = rd.cartan().dot(i, j);
                if sym != dot {
                    return bad("c", i, j, format!("Omega_ij + Omega_ji = {sym} but i.j = {dot}"));
                }
            }
        }
        Ok(OmegaMatrix(rows))
    }

    /// Upper-triangular choice: `Ω_ii = d_i`, `Ω_ij = i·j` for `i < j`, zero below.
    pub fn standard(rd: &RootDatum) -> Self {
        let n = rd.rank();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Equal => rd.d(i),
                        std::cmp::Ordering::Less => rd.cartan().dot(i, j),
                        std::cmp::Ordering::Greater => 0,
                    })
                    .collect()
            })
            .collect();
        OmegaMatrix::new(rd, rows).expect("standard Omega satisfies its conditions")
    }

    /// A JSON integer matrix.
    pub fn from_json(rd: &RootDatum, text: &str) -> Result<Self> {
        let rows: Vec<Vec<i64>> =
            serde_json::from_str(text).map_err(|e| Error::InvalidOmega(format!("not an integer matrix: {e}")))?;
        Self::new(rd, rows)
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }
}

/// Total order and sign choices for the first super case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperOptions {
    /// `rank[i]` is the position of `i` in the order.
    rank: Vec<usize>,
    /// `ε_ij ∈ {1, -1}`.
    eps: Vec<Vec<i8>>,
}

impl SuperOptions {
    pub fn standard(n: usize) -> Self {
        SuperOptions {
            rank: (0..n).collect(),
            eps: vec![vec![1; n]; n],
        }
    }

    /// `order` lists the 0-based indices from smallest to largest.
    pub fn with_order(mut self, order: &[usize]) -> Result<Self> {
        let n = self.rank.len();
        let mut seen = vec![false; n];
        for &i in order {
            if i >= n || seen[i] {
                return Err(Error::InvalidSpecialization(format!("order must be a permutation of 1..{n}")));
            }
            seen[i] = true;
        }
        if order.len() != n {
            return Err(Error::InvalidSpecialization(format!("order must be a permutation of 1..{n}")));
        }
        for (pos, &i) in order.iter().enumerate() {
            self.rank[i] = pos;
        }
        Ok(self)
    }

    pub fn with_sign(mut self, i: usize, j: usize, sign: i8) -> Result<Self> {
        let n = self.rank.len();
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange { index: i.max(j), rank: n });
        }
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidSpecialization(format!("sign must be 1 or -1, got {sign}")));
        }
        self.eps[i][j] = sign;
        Ok(self)
    }

    /// Parses `"2,1"` (1-based, smallest first).
    pub fn parse_order(n: usize, text: &str) -> Result<Vec<usize>> {
        let order = text
            .split([',', '<', ' '])
            .filter(|s| !s.is_empty())
            .map(|s| match s.trim().parse::<usize>() {
                Ok(k) if (1..=n).contains(&k) => Ok(k - 1),
                _ => Err(Error::Config(format!("bad index `{s}` in order"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(order)
    }

    /// Parses `"eps12=-1,eps21=1"` (also accepts `e12=-1`).
    pub fn apply_signs(mut self, text: &str) -> Result<Self> {
        let n = self.rank.len();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, val) = item
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("sign `{item}` is not key=value")))?;
            let digits = key.trim_start_matches("eps").trim_start_matches('e');
            let (i, j) = parse_pair(digits, n).ok_or_else(|| Error::Config(format!("bad sign key `{key}`")))?;
            let sign = match val.trim() {
                "1" | "+1" | "+" => 1,
                "-1" | "-" => -1,
                other => return Err(Error::Config(format!("bad sign value `{other}`"))),
            };
            self = self.with_sign(i, j, sign)?;
        }
        Ok(self)
    }

    fn less(&self, i: usize, j: usize) -> bool {
        self.rank[i] < self.rank[j]
    }

    fn eps(&self, i: usize, j: usize) -> Unit {
        if self.eps[i][j] < 0 {
            Unit::minus_one()
        } else {
            Unit::one()
        }
    }

    fn describe(&self) -> (String, String) {
        let n = self.rank.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.rank[i]);
        let order = order.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" < ");
        let mut signs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                signs.push(format!("{}={}", pname("eps", i, j, n), self.eps[i][j]));
            }
        }
        (order, signs.join(","))
    }
}

fn parse_pair(digits: &str, n: usize) -> Option<(usize, usize)> {
    let (a, b) = match digits.split_once('_') {
        Some(p) => p,
        None if digits.len() == 2 => digits.split_at(1),
        None => return None,
    };
    let (a, b): (usize, usize) = (a.parse().ok()?, b.parse().ok()?);
    ((1..=n).contains(&a) && (1..=n).contains(&b)).then_some((a - 1, b - 1))
}

/// One identity `lhs = rhs` in the target ring.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub name: String,
    pub lhs: Unit,
    pub rhs: Unit,
}

impl Constraint {
    fn new(name: impl Into<String>, lhs: Unit, rhs: Unit) -> Self {
        Constraint { name: name.into(), lhs, rhs }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone)]
enum Table {
    TwoParam { t: Unit, omega: OmegaMatrix },
    /// `q_ij` for all `i, j` after resolution.
    MultiParam { qm: Vec<Vec<Unit>> },
    /// `τ_ij γ_ij`.
    SuperI { tg: Vec<Vec<Unit>> },
    SuperII,
}

/// A validated substitution out of the generic parameter ring.
#[derive(Debug, Clone)]
pub struct Specialization {
    pub case: Case,
    pub name: String,
    pub source: ParameterSet,
    pub sigma: Substitution,
    /// The generic parameters pushed through `sigma`.
    pub params: ParameterSet,
    pub constraints: Vec<Constraint>,
    pub aux: BTreeMap<String, String>,
    table: Table,
}

fn generic_sigma(rd: &RootDatum, target: &RingContext) -> Result<(ParameterSet, Substitution, Unit)> {
    let src = ParameterSet::generic(rd)?;
    let v = target.unit("v")?;
    let mut sigma = Substitution::new(src.ctx(), target);
    sigma.bind("v", v.clone())?;
    for i in 0..rd.rank() {
        sigma.bind(&format!("q{}", i + 1), v.pow(rd.d(i)))?;
    }
    Ok((src, sigma, v))
}

fn bind_st(sigma: &mut Substitution, n: usize, s: &[Vec<Unit>], t: &[Vec<Unit>]) -> Result<()> {
    for i in 0..n {
        for j in 0..n {
            sigma.bind(&pname("s", i, j, n), s[i][j].clone())?;
            sigma.bind(&pname("t", i, j, n), t[i][j].clone())?;
        }
    }
    Ok(())
}

impl Specialization {
    fn finish(
        case: Case,
        src: ParameterSet,
        sigma: Substitution,
        mut constraints: Vec<Constraint>,
        mut aux: BTreeMap<String, String>,
        table: Table,
        rd: &RootDatum,
    ) -> Result<Self> {
        let params = src.specialize(&sigma, case.name())?;
        for i in 0..rd.rank() {
            constraints.push(Constraint::new(
                format!("q{0} = v{0}", i + 1),
                params.q[i].clone(),
                params.v_i(rd, i),
            ));
        }
        for (k, v) in params.table() {
            aux.insert(format!("sigma({k})"), v);
        }
        Ok(Specialization {
            case,
            name: case.name().to_string(),
            source: src,
            sigma,
            params,
            constraints,
            aux,
            table,
        })
    }

    pub fn build(case: Case, rd: &RootDatum) -> Result<Self> {
        match case {
            Case::TwoParam => spec_two_param(rd, &OmegaMatrix::standard(rd)),
            Case::MultiParam => spec_multi_param(rd),
            Case::SuperI => spec_super_i(rd, &SuperOptions::standard(rd.rank())),
            Case::SuperII => spec_super_ii(rd),
        }
    }

    pub fn target(&self) -> &RingContext {
        self.sigma.target()
    }

    pub fn show(&self, u: &Unit) -> String {
        self.params.show(u)
    }

    pub fn check_constraints(&self) -> Vec<CheckRecord> {
        self.constraints
            .iter()
            .map(|c| {
                let rec = CheckRecord::new(format!("constraint {}", c.name), Status::from_bool(c.holds()))
                    .family("constraint");
                if c.holds() {
                    rec
                } else {
                    rec.witness(format!("{} != {}", self.show(&c.lhs), self.show(&c.rhs)))
                }
            })
            .collect()
    }

    /// Compares `σ(c_{i,λ})` with the closed form for this case at every window weight.
    pub fn check_c_table(&self, rd: &RootDatum, window: &[Weight]) -> Vec<CheckRecord> {
        let n = rd.rank();
        let jobs: Vec<(usize, &Weight)> = window.iter().flat_map(|l| (0..n).map(move |i| (i, l))).collect();
        let mut out: Vec<CheckRecord> = jobs
            .par_iter()
            .flat_map_iter(|&(i, l)| self.c_table_at(rd, i, l))
            .collect();
        out.sort_by(|a, b| a.id.cmp(&b.id));
        out
    }

    fn c_table_at(&self, rd: &RootDatum, i: usize, l: &Weight) -> Vec<CheckRecord> {
        let id = |what: &str| format!("{what}[{}]@{}", i + 1, fmt_weight(l));
        let base = |what: &str, st| CheckRecord::new(id(what), st).family(what.to_string()).indices(i, i).at(l);
        let computed = match c_scalar(rd, &self.params, i, l) {
            Ok(c) => c,
            Err(e) => return vec![out_of_domain(base("c-table", Status::OutOfDomain), e)],
        };
        let claimed = match self.claimed_c(rd, i, l) {
            Ok(c) => c,
            Err(e) => return vec![out_of_domain(base("c-table", Status::OutOfDomain), e)],
        };
        let mut recs = Vec::new();
        match self.case {
            Case::SuperII => {
                // the value forced by the c-scalar definition, v_i^{Σ_j a_ij λ(j)}
                let forced = (|| -> Result<Unit> {
                    let vi = self.params.v_i(rd, i);
                    let mut e = Ratio::from_integer(0);
                    for j in 0..rd.rank() {
                        e += Ratio::from_integer(rd.a(i, j)) * rd.lambda_paren(l, j)?;
                    }
                    vi.pow_ratio(e)
                })();
                let forced_ok = forced.as_ref().is_ok_and(|f| *f == computed);
                let mut r = base("c-forced", Status::from_bool(forced_ok)).scalar(self.show(&computed));
                if !forced_ok {
                    r = r.witness(match &forced {
                        Ok(f) => format!("expected {}", self.show(f)),
                        Err(e) => e.to_string(),
                    });
                }
                recs.push(r);
                let st = if computed == claimed { Status::Pass } else { Status::Discrepancy };
                let mut r = base("c-table", st).scalar(self.show(&computed));
                if st == Status::Discrepancy {
                    r = r.detail(format!(
                        "table value {} differs from computed {}",
                        self.show(&claimed),
                        self.show(&computed)
                    ));
                }
                recs.push(r);
            }
            _ => {
                let ok = computed == claimed;
                let mut r = base("c-table", Status::from_bool(ok)).scalar(self.show(&computed));
                if !ok {
                    r = r.witness(format!("expected {}", self.show(&claimed)));
                }
                recs.push(r);
            }
        }
        if self.case == Case::SuperI {
            let sq = computed.pow(2);
            let mut r = base("c-squared", Status::from_bool(sq.is_one())).scalar(self.show(&sq));
            if !sq.is_one() {
                r = r.witness(format!("c^2 = {}", self.show(&sq)));
            }
            recs.push(r);
        }
        recs
    }

    fn claimed_c(&self, rd: &RootDatum, i: usize, l: &Weight) -> Result<Unit> {
        let n = rd.rank();
        match &self.table {
            Table::TwoParam { t, omega } => {
                let mut e = Ratio::from_integer(0);
                for j in 0..n {
                    e += rd.lambda_paren(l, j)? * Ratio::from_integer(omega.get(i, j) - omega.get(j, i));
                }
                t.pow_ratio(e)
            }
            Table::MultiParam { qm } => {
                let base: Vec<Unit> = (0..n).map(|j| qm[i][j].div(&qm[j][i]).pow_ratio(Ratio::new(1, 2))).collect::<Result<_>>()?;
                weight_power(rd, &base, l, 1)
            }
            Table::SuperI { tg } => weight_power(rd, &tg[i], l, 1),
            Table::SuperII => Ok(self.params.v_i(rd, i).pow(rd.lambda_i(l, i)?)),
        }
    }

    /// Constraints, `c`-table and the full isomorphism campaign in the specialized ring.
    pub fn verify(&self, rd: &RootDatum, window: &[Weight]) -> Result<Vec<CheckRecord>> {
        let mut out = self.check_constraints();
        out.extend(self.check_c_table(rd, window));
        out.extend(apply_specialization(rd, self, window)?);
        Ok(out)
    }
}

fn out_of_domain(rec: CheckRecord, e: Error) -> CheckRecord {
    match e {
        Error::FractionalPower { .. } => rec.detail(e.to_string()),
        other => CheckRecord { status: Status::Fail, ..rec }.witness(other.to_string()),
    }
}

fn fmt_weight(l: &Weight) -> String {
    let c: Vec<String> = l.coords().iter().map(|x| x.to_string()).collect();
    format!("({})", c.join(","))
}

/// `q_i = v_i`, `s_ij = t^{-Ω_ij}`, `t_ij = t^{Ω_ji}`.
pub fn spec_two_param(rd: &RootDatum, omega: &OmegaMatrix) -> Result<Specialization> {
    let omega = OmegaMatrix::new(rd, omega.rows().to_vec())?;
    let n = rd.rank();
    let den = var_den(rd);
    let target = RingContext::builder().laurent("v", den).laurent("t", den).build()?;
    let (src, mut sigma, _) = generic_sigma(rd, &target)?;
    let t = target.unit("t")?;
    let s_img: Vec<Vec<Unit>> = (0..n).map(|i| (0..n).map(|j| t.pow(-omega.get(i, j))).collect()).collect();
    let t_img: Vec<Vec<Unit>> = (0..n).map(|i| (0..n).map(|j| t.pow(omega.get(j, i))).collect()).collect();
    bind_st(&mut sigma, n, &s_img, &t_img)?;
    let mut constraints = Vec::new();
    for i in 0..n {
        for j in 0..n {
            constraints.push(Constraint::new(
                format!("s{0}{1} t{0}{1} = t^(Omega{1}{0} - Omega{0}{1})", i + 1, j + 1),
                sigma.apply_unit(&src.s[i][j].mul(&src.t[i][j]))?,
                t.pow(omega.get(j, i) - omega.get(i, j)),
            ));
        }
    }
    let mut aux = BTreeMap::new();
    aux.insert("omega".into(), serde_json::to_string(omega.rows()).expect("matrix serializes"));
    Specialization::finish(Case::TwoParam, src, sigma, constraints, aux, Table::TwoParam { t, omega }, rd)
}

/// `s_ij = q_ji^{1/2}`, `t_ij = q_ij^{-1/2}`, with `q_ij` free for `i < j`.
pub fn spec_multi_param(rd: &RootDatum) -> Result<Specialization> {
    let n = rd.rank();
    let den = 2 * var_den(rd);
    let mut b = RingContext::builder().laurent("v", den);
    for i in 0..n {
        for j in i + 1..n {
            b = b.laurent(pname("q", i, j, n), den);
        }
    }
    let target = b.build()?;
    let (src, mut sigma, v) = generic_sigma(rd, &target)?;
    let mut qm = vec![vec![Unit::one(); n]; n];
    for i in 0..n {
        qm[i][i] = v.pow(2 * rd.d(i));
    }
    for i in 0..n {
        for j in i + 1..n {
            qm[i][j] = target.unit(&pname("q", i, j, n))?;
            qm[j][i] = qm[i][i].pow(rd.a(i, j)).div(&qm[i][j]);
        }
    }
    let half = Ratio::new(1, 2);
    let mut s_img = vec![vec![Unit::one(); n]; n];
    let mut t_img = vec![vec![Unit::one(); n]; n];
    for i in 0..n {
        for j in 0..n {
            s_img[i][j] = qm[j][i].pow_ratio(half)?;
            t_img[i][j] = qm[i][j].pow_ratio(-half)?;
        }
    }
    bind_st(&mut sigma, n, &s_img, &t_img)?;
    let mut constraints = Vec::new();
    for i in 0..n {
        constraints.push(Constraint::new(
            format!("q{0} = q{0}{0}^(1/2)", i + 1),
            sigma.apply_unit(&src.q[i])?,
            qm[i][i].pow_ratio(half)?,
        ));
        for j in 0..n {
            constraints.push(Constraint::new(
                format!("q{0}{1} q{1}{0} = q{0}{0}^a{0}{1}", i + 1, j + 1),
                qm[i][j].mul(&qm[j][i]),
                qm[i][i].pow(rd.a(i, j)),
            ));
            constraints.push(Constraint::new(
                format!("s{0}{1} t{0}{1} = (q{1}{0}/q{0}{1})^(1/2)", i + 1, j + 1),
                sigma.apply_unit(&src.s[i][j].mul(&src.t[i][j]))?,
                qm[j][i].div(&qm[i][j]).pow_ratio(half)?,
            ));
        }
    }
    let mut aux = BTreeMap::new();
    aux.insert("free".into(), "q_ij for i < j; q_ji = q_ii^a_ij / q_ij; q_ii = v_i^2".into());
    Specialization::finish(Case::MultiParam, src, sigma, constraints, aux, Table::MultiParam { qm }, rd)
}

/// First super case: sign variables `γ_i`, free `θ_ij` for `i < j` in the chosen order.
pub fn spec_super_i(rd: &RootDatum, opts: &SuperOptions) -> Result<Specialization> {
    let n = rd.rank();
    if opts.rank.len() != n {
        return Err(Error::InvalidSpecialization(format!("options are for rank {}, datum has rank {n}", opts.rank.len())));
    }
    let den = var_den(rd);
    let mut b = RingContext::builder().laurent("v", den);
    for i in 0..n {
        b = b.sign(format!("g{}", i + 1));
    }
    for i in 0..n {
        for j in 0..n {
            if opts.less(i, j) {
                b = b.laurent(pname("theta", i, j, n), den);
            }
        }
    }
    let target = b.build()?;
    let (src, mut sigma, v) = generic_sigma(rd, &target)?;
    let gamma: Vec<Unit> = (0..n).map(|i| target.unit(&format!("g{}", i + 1))).collect::<Result<_>>()?;
    let p: Vec<Unit> = (0..n).map(|i| v.pow(rd.d(i)).mul(&gamma[i])).collect();
    let pij = |i: usize, j: usize| opts.eps(i, j).mul(&p[i].pow(rd.a(i, j)));
    let gij = |i: usize, j: usize| gamma[i].pow(rd.a(i, j));
    let tau = |i: usize, j: usize| pij(i, j).div(&p[i].pow(rd.a(i, j)));
    let mut theta = vec![vec![Unit::one(); n]; n];
    for i in 0..n {
        theta[i][i] = opts.eps(i, i);
        for j in 0..n {
            if opts.less(i, j) {
                theta[i][j] = target.unit(&pname("theta", i, j, n))?;
                theta[j][i] = opts.eps(i, j).mul(&opts.eps(j, i)).mul(&gij(i, j)).mul(&gij(j, i)).div(&theta[i][j]);
            }
        }
    }
    let mut s_img = vec![vec![Unit::one(); n]; n];
    let mut t_img = vec![vec![Unit::one(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if opts.less(i, j) {
                s_img[i][j] = tau(j, i);
                t_img[i][j] = tau(i, j).mul(&tau(j, i)).mul(&gij(i, j));
            } else {
                s_img[i][j] = theta[i][j].inv().mul(&gij(i, j));
                t_img[i][j] = theta[i][j].mul(&tau(i, j));
            }
        }
    }
    bind_st(&mut sigma, n, &s_img, &t_img)?;
    let mut constraints = Vec::new();
    for i in 0..n {
        constraints.push(Constraint::new(format!("q{0} = p{0} g{0}", i + 1), sigma.apply_unit(&src.q[i])?, p[i].mul(&gamma[i])));
        constraints.push(Constraint::new(
            format!("p{0}{0} / theta{0}{0} = p{0}^2", i + 1),
            pij(i, i).div(&theta[i][i]),
            p[i].pow(2),
        ));
        for j in 0..n {
            constraints.push(Constraint::new(
                format!("p{0}{1}^2 = p{0}^(2 a{0}{1})", i + 1, j + 1),
                pij(i, j).pow(2),
                p[i].pow(2 * rd.a(i, j)),
            ));
            constraints.push(Constraint::new(
                format!("p{0}{1} p{1}{0} / (theta{0}{1} theta{1}{0}) = p{0}^(2 a{0}{1})", i + 1, j + 1),
                pij(i, j).mul(&pij(j, i)).div(&theta[i][j].mul(&theta[j][i])),
                p[i].pow(2 * rd.a(i, j)),
            ));
        }
    }
    let tg: Vec<Vec<Unit>> = (0..n).map(|i| (0..n).map(|j| tau(i, j).mul(&gij(i, j))).collect()).collect();
    let (order, signs) = opts.describe();
    let mut aux = BTreeMap::new();
    aux.insert("order".into(), order);
    aux.insert("signs".into(), signs);
    aux.insert("free".into(), "theta_ij for i < j in the order; theta_ji = eps_ij eps_ji g_i^a_ij g_j^a_ji / theta_ij".into());
    Specialization::finish(Case::SuperI, src, sigma, constraints, aux, Table::SuperI { tg }, rd)
}

/// Second super case: free `θ̃_ij` for `i < j`.
pub fn spec_super_ii(rd: &RootDatum) -> Result<Specialization> {
    let n = rd.rank();
    let den = var_den(rd);
    let mut b = RingContext::builder().laurent("v", den);
    for i in 0..n {
        for j in i + 1..n {
            b = b.laurent(pname("ttheta", i, j, n), den);
        }
    }
    let target = b.build()?;
    let (src, mut sigma, v) = generic_sigma(rd, &target)?;
    let vi: Vec<Unit> = (0..n).map(|i| v.pow(rd.d(i))).collect();
    let pt: Vec<Unit> = vi.iter().map(|x| x.pow(2)).collect();
    let mut th = vec![vec![Unit::one(); n]; n];
    for i in 0..n {
        th[i][i] = pt[i].inv();
        for j in i + 1..n {
            th[i][j] = target.unit(&pname("ttheta", i, j, n))?;
            th[j][i] = pt[i].pow(-rd.a(i, j)).div(&th[i][j]);
        }
    }
    let zeta = |i: usize, j: usize| th[i][j].mul(&vi[i].pow(rd.a(i, j)));
    let mut s_img = vec![vec![Unit::one(); n]; n];
    let mut t_img = vec![vec![Unit::one(); n]; n];
    for i in 0..n {
        for j in 0..n {
            s_img[i][j] = if i > j { zeta(j, i).mul(&vi[i].pow(-rd.a(i, j))) } else { vi[i].pow(-rd.a(i, j)) };
            t_img[i][j] = if i >= j { zeta(i, j) } else { Unit::one() };
        }
    }
    bind_st(&mut sigma, n, &s_img, &t_img)?;
    let mut constraints = Vec::new();
    for i in 0..n {
        let q = sigma.apply_unit(&src.q[i])?;
        constraints.push(Constraint::new(format!("q{0}^2 = pt{0}", i + 1), q.pow(2), pt[i].clone()));
        constraints.push(Constraint::new(format!("ttheta{0}{0} = pt{0}^-1", i + 1), th[i][i].clone(), pt[i].inv()));
        for j in 0..n {
            constraints.push(Constraint::new(
                format!("ttheta{0}{1} ttheta{1}{0} = pt{0}^-a{0}{1}", i + 1, j + 1),
                th[i][j].mul(&th[j][i]),
                pt[i].pow(-rd.a(i, j)),
            ));
            constraints.push(Constraint::new(
                format!("s{0}{1} t{0}{1} = v{0}^-a{0}{1}", i + 1, j + 1),
                sigma.apply_unit(&src.s[i][j].mul(&src.t[i][j]))?,
                vi[i].pow(-rd.a(i, j)),
            ));
        }
    }
    let mut aux = BTreeMap::new();
    aux.insert("free".into(), "ttheta_ij for i < j; ttheta_ji = pt_i^-a_ij / ttheta_ij; pt_i = v_i^2".into());
    Specialization::finish(Case::SuperII, src, sigma, constraints, aux, Table::SuperII, rd)
}

/// Scalar identities and the full relation correspondence, in the specialized ring.
pub fn apply_specialization(rd: &RootDatum, spec: &Specialization, window: &[Weight]) -> Result<Vec<CheckRecord>> {
    let mut out = check_scalar_identities(rd, &spec.params, window);
    out.extend(verify_twist(rd, &spec.params, window)?);
    Ok(out)
}

#[cfg(test)]
mod tests;
