//! Cartan data and X-regular root data in explicit coordinates.

use std::fmt;
use std::path::Path;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type Q = Ratio<i64>;

/// A weight, in the coordinates of X.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn add_scaled(&self, other: &Weight, k: i64) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Index set `I = {0..n}` with the symmetric bilinear form `i . j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    dot: Vec<Vec<i64>>,
}

impl CartanDatum {
    pub fn new(dot: Vec<Vec<i64>>) -> Self {
        CartanDatum { dot }
    }

    pub fn rank(&self) -> usize {
        self.dot.len()
    }

    pub fn dot(&self, i: usize, j: usize) -> i64 {
        self.dot[i][j]
    }

    pub fn dot_matrix(&self) -> &[Vec<i64>] {
        &self.dot
    }

    pub fn d(&self, i: usize) -> i64 {
        self.dot[i][i] / 2
    }

    /// `a_ij = 2 (i.j) / (i.i)`. Truncates if the datum is invalid; see `validate`.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        2 * self.dot[i][j] / self.dot[i][i]
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| self.a(i, j)).collect()).collect()
    }

    /// `r = 1 - a_ij`.
    pub fn serre_exponent(&self, i: usize, j: usize) -> i64 {
        1 - self.a(i, j)
    }
}

/// One line of a validation report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DatumCheck {
    pub id: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<DatumCheck>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &DatumCheck> {
        self.checks.iter().filter(|c| !c.ok)
    }

    fn push(&mut self, id: String, ok: bool, detail: String) {
        self.checks.push(DatumCheck { id, ok, detail });
    }
}

/// Root datum `(Y, X, <,>)` with simple roots, coroots and fundamental
/// coweights given in coordinates. Coweights live in `Y (x) Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    name: String,
    cartan: CartanDatum,
    x_rank: usize,
    alpha: Vec<Weight>,
    coroot: Vec<Vec<i64>>,
    coweight: Vec<Vec<Q>>,
    pairing: Vec<Vec<i64>>,
}

pub const BUILTINS: &[&str] = &["a1", "a1xa1", "a2", "b2", "g2", "gl2", "gl3"];

impl RootDatum {
    /// Assembles a datum without validating it.
    pub fn from_parts(
        name: impl Into<String>,
        dot: Vec<Vec<i64>>,
        alpha: Vec<Vec<i64>>,
        coroot: Vec<Vec<i64>>,
        coweight: Vec<Vec<Q>>,
        pairing: Option<Vec<Vec<i64>>>,
    ) -> Self {
        let x_rank = alpha.first().map_or(0, Vec::len);
        let pairing = pairing.unwrap_or_else(|| identity(x_rank));
        RootDatum {
            name: name.into(),
            cartan: CartanDatum::new(dot),
            x_rank,
            alpha: alpha.into_iter().map(Weight).collect(),
            coroot,
            coweight,
            pairing,
        }
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        let rd = match lower.as_str() {
            "a1" => simply_connected("a1", vec![vec![2]]),
            "a1xa1" | "a1×a1" => simply_connected("a1xa1", vec![vec![2, 0], vec![0, 2]]),
            "a2" => simply_connected("a2", vec![vec![2, -1], vec![-1, 2]]),
            // long root first
            "b2" => simply_connected("b2", vec![vec![4, -2], vec![-2, 2]]),
            "g2" => simply_connected("g2", vec![vec![6, -3], vec![-3, 2]]),
            "gl2" => gl("gl2", 2),
            "gl3" => gl("gl3", 3),
            _ => return Err(Error::UnknownDatum(name.to_string())),
        };
        Ok(rd)
    }

    /// Parses the JSON datum format and validates it.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawDatum = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let rd = raw.into_datum()?;
        let report = rd.validate();
        if !report.is_ok() {
            let msgs: Vec<String> = report.failures().map(|c| format!("{}: {}", c.id, c.detail)).collect();
            return Err(Error::InvalidDatum(msgs.join("; ")));
        }
        Ok(rd)
    }

    /// Parses without rejecting a datum that fails validation, returning the full report.
    pub fn check_json(text: &str) -> Result<(Self, ValidationReport)> {
        let raw: RawDatum = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let rd = raw.into_datum()?;
        let report = rd.validate();
        Ok((rd, report))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// A built-in name or a path to a JSON file.
    pub fn resolve(spec: &str) -> Result<Self> {
        match Self::builtin(spec) {
            Err(Error::UnknownDatum(_)) if Path::new(spec).exists() => Self::load(Path::new(spec)),
            other => other,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn x_rank(&self) -> usize {
        self.x_rank
    }

    pub fn d(&self, i: usize) -> i64 {
        self.cartan.d(i)
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan.a(i, j)
    }

    pub fn alpha(&self, i: usize) -> &Weight {
        &self.alpha[i]
    }

    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.coroot[i]
    }

    pub fn coweight(&self, i: usize) -> &[Q] {
        &self.coweight[i]
    }

    pub fn pairing_matrix(&self) -> &[Vec<i64>] {
        &self.pairing
    }

    /// `<y, x>` for `y` in `Y (x) Q`, `x` in X.
    pub fn pair(&self, y: &[Q], x: &[i64]) -> Q {
        let mut acc = Q::zero();
        for (a, ya) in y.iter().enumerate() {
            if ya.is_zero() {
                continue;
            }
            let row: i64 = self.pairing[a].iter().zip(x).map(|(p, xb)| p * xb).sum();
            acc += *ya * Q::from_integer(row);
        }
        acc
    }

    fn pair_int(&self, y: &[i64], x: &[i64]) -> i64 {
        let mut acc = 0;
        for (a, ya) in y.iter().enumerate() {
            acc += ya * self.pairing[a].iter().zip(x).map(|(p, xb)| p * xb).sum::<i64>();
        }
        acc
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank() });
        }
        Ok(())
    }

    fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.0.len() != self.x_rank {
            return Err(Error::Shape(format!("weight {w} has length {}, X has rank {}", w.0.len(), self.x_rank)));
        }
        Ok(())
    }

    /// `lambda_i = <coroot_i, lambda>`.
    pub fn lambda_i(&self, lambda: &Weight, i: usize) -> Result<i64> {
        self.check_index(i)?;
        self.check_weight(lambda)?;
        Ok(self.pair_int(&self.coroot[i], &lambda.0))
    }

    /// `lambda(i) = <coweight_i, lambda>`.
    pub fn lambda_paren(&self, lambda: &Weight, i: usize) -> Result<Q> {
        self.check_index(i)?;
        self.check_weight(lambda)?;
        Ok(self.pair(&self.coweight[i], &lambda.0))
    }

    /// `lambda + sign * alpha_i`.
    pub fn add_root(&self, lambda: &Weight, i: usize, sign: i64) -> Result<Weight> {
        self.check_index(i)?;
        self.check_weight(lambda)?;
        Ok(lambda.add_scaled(&self.alpha[i], sign))
    }

    /// Unchecked `lambda + k alpha_i`, for internal weight bookkeeping.
    pub(crate) fn shift(&self, lambda: &Weight, i: usize, k: i64) -> Weight {
        lambda.add_scaled(&self.alpha[i], k)
    }

    /// lcm of all coweight coordinate denominators (1 for integral coweights).
    pub fn coweight_den(&self) -> i64 {
        self.coweight
            .iter()
            .flatten()
            .fold(1i64, |acc, c| acc.lcm(c.denom()))
    }

    /// All weights with every coordinate in `[-k, k]`, in lexicographic order.
    pub fn window(&self, k: i64) -> Vec<Weight> {
        let mut out = vec![Weight(Vec::with_capacity(self.x_rank))];
        for _ in 0..self.x_rank {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (-k..=k).map(move |c| {
                        let mut v = w.0.clone();
                        v.push(c);
                        Weight(v)
                    })
                })
                .collect();
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let n = self.rank();
        let r = self.x_rank;
        let dot = self.cartan.dot_matrix();

        let square = dot.iter().all(|row| row.len() == n);
        rep.push("dot-shape".into(), square, format!("{n} x {n} expected"));
        let shapes = self.alpha.len() == n
            && self.coroot.len() == n
            && self.coweight.len() == n
            && self.alpha.iter().all(|w| w.0.len() == r)
            && self.coroot.iter().all(|w| w.len() == r)
            && self.coweight.iter().all(|w| w.len() == r)
            && self.pairing.len() == r
            && self.pairing.iter().all(|row| row.len() == r);
        rep.push("coordinate-shapes".into(), shapes, format!("alpha/coroot/coweight n x {r}, pairing {r} x {r}"));
        if !square || !shapes || n == 0 {
            return rep;
        }

        for i in 0..n {
            let ii = dot[i][i];
            rep.push(format!("diag[{}]", i + 1), ii > 0 && ii % 2 == 0, format!("i.i = {ii} must be positive and even"));
            if ii <= 0 {
                continue;
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let integral = (2 * dot[i][j]) % ii == 0;
                let a = 2 * dot[i][j] / ii;
                rep.push(
                    format!("a[{},{}]", i + 1, j + 1),
                    integral && a <= 0,
                    format!("a_ij = 2(i.j)/(i.i) = {}/{} must be a non-positive integer", 2 * dot[i][j], ii),
                );
                if j > i && dot[j][j] > 0 {
                    let lhs = (ii / 2) * a;
                    let rhs = (dot[j][j] / 2) * (2 * dot[j][i] / dot[j][j]);
                    rep.push(
                        format!("symmetrizable[{},{}]", i + 1, j + 1),
                        lhs == rhs,
                        format!("d_i a_ij = {lhs}, d_j a_ji = {rhs}"),
                    );
                }
            }
        }
        if rep.checks.iter().any(|c| !c.ok) {
            return rep;
        }

        for i in 0..n {
            for j in 0..n {
                let got = self.pair_int(&self.coroot[i], &self.alpha[j].0);
                let want = self.a(i, j);
                rep.push(
                    format!("coroot-root[{},{}]", i + 1, j + 1),
                    got == want,
                    format!("<coroot_i, alpha_j> = {got}, a_ij = {want}"),
                );
            }
        }
        for i in 0..n {
            for j in 0..n {
                let got = self.pair(&self.coweight[i], &self.alpha[j].0);
                let want = Q::from_integer((i == j) as i64);
                rep.push(
                    format!("coweight-root[{},{}]", i + 1, j + 1),
                    got == want,
                    format!("<coweight_i, alpha_j> = {got}, expected {want}"),
                );
            }
        }
        let alphas: Vec<Vec<Q>> = self
            .alpha
            .iter()
            .map(|w| w.0.iter().map(|&c| Q::from_integer(c)).collect())
            .collect();
        let rk = matrix_rank(alphas);
        rep.push("roots-independent".into(), rk == n, format!("rank of simple roots = {rk}, expected {n}"));
        let pairing: Vec<Vec<Q>> = self
            .pairing
            .iter()
            .map(|row| row.iter().map(|&c| Q::from_integer(c)).collect())
            .collect();
        let det = determinant(pairing);
        rep.push("pairing-perfect".into(), det.abs().is_one(), format!("det of pairing = {det}"));
        rep
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

fn identity(r: usize) -> Vec<Vec<i64>> {
    (0..r).map(|a| (0..r).map(|b| (a == b) as i64).collect()).collect()
}

/// X = weight lattice (fundamental weight coordinates), Y = coroot lattice.
fn simply_connected(name: &str, dot: Vec<Vec<i64>>) -> RootDatum {
    let cartan = CartanDatum::new(dot.clone());
    let a = cartan.cartan_matrix();
    let n = a.len();
    let alpha = (0..n).map(|j| (0..n).map(|k| a[k][j]).collect()).collect();
    let coroot = identity(n);
    let aq: Vec<Vec<Q>> = a.iter().map(|row| row.iter().map(|&c| Q::from_integer(c)).collect()).collect();
    let coweight = inverse(aq).expect("Cartan matrix of finite type is invertible");
    RootDatum::from_parts(name, dot, alpha, coroot, coweight, None)
}

/// `GL_n`: X = Y = Z^n, alpha_i = e_i - e_{i+1}, coweight_i = e_1 + ... + e_i.
fn gl(name: &str, n: usize) -> RootDatum {
    let m = n - 1;
    let mut dot = vec![vec![0; m]; m];
    let mut alpha = vec![vec![0; n]; m];
    let mut coweight = vec![vec![Q::zero(); n]; m];
    for i in 0..m {
        dot[i][i] = 2;
        if i + 1 < m {
            dot[i][i + 1] = -1;
            dot[i + 1][i] = -1;
        }
        alpha[i][i] = 1;
        alpha[i][i + 1] = -1;
        for c in coweight[i].iter_mut().take(i + 1) {
            *c = Q::one();
        }
    }
    RootDatum::from_parts(name, dot, alpha.clone(), alpha, coweight, None)
}

fn row_reduce(mut m: Vec<Vec<Q>>) -> (Vec<Vec<Q>>, usize, Q) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut det = Q::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            det = Q::zero();
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            det = -det;
        }
        let piv = m[rank][c];
        det *= piv;
        for x in m[rank].iter_mut() {
            *x /= piv;
        }
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c];
                for k in 0..cols {
                    let sub = f * m[rank][k];
                    m[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    (m, rank, det)
}

fn matrix_rank(m: Vec<Vec<Q>>) -> usize {
    row_reduce(m).1
}

fn determinant(m: Vec<Vec<Q>>) -> Q {
    if m.is_empty() {
        return Q::one();
    }
    let (_, rank, det) = row_reduce(m.clone());
    if rank < m.len() {
        Q::zero()
    } else {
        det
    }
}

fn inverse(m: Vec<Vec<Q>>) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let aug: Vec<Vec<Q>> = m
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| Q::from_integer((i == j) as i64)));
            row
        })
        .collect();
    let (red, _, _) = row_reduce(aug);
    for (i, row) in red.iter().enumerate() {
        if row[i] != Q::one() {
            return None;
        }
    }
    Some(red.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawQ {
    Int(i64),
    Str(String),
}

impl RawQ {
    fn parse(&self) -> Result<Q> {
        match self {
            RawQ::Int(n) => Ok(Q::from_integer(*n)),
            RawQ::Str(s) => {
                let bad = || Error::Config(format!("cannot parse coweight entry `{s}`"));
                let (p, q) = match s.split_once('/') {
                    Some((p, q)) => (p.trim(), q.trim()),
                    None => (s.trim(), "1"),
                };
                let p: i64 = p.parse().map_err(|_| bad())?;
                let q: i64 = q.parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(Q::new(p, q))
            }
        }
    }
}

#[derive(Deserialize)]
#[allow(non_snake_case)]
struct RawDatum {
    #[serde(default)]
    name: Option<String>,
    I_size: usize,
    dot: Vec<Vec<i64>>,
    X_rank: usize,
    alpha: Vec<Vec<i64>>,
    coroot: Vec<Vec<i64>>,
    coweight: Vec<Vec<RawQ>>,
    #[serde(default)]
    pairing: Option<Vec<Vec<i64>>>,
}

impl RawDatum {
    fn into_datum(self) -> Result<RootDatum> {
        if self.dot.len() != self.I_size || self.alpha.len() != self.I_size {
            return Err(Error::Config(format!("I_size = {} does not match the matrices", self.I_size)));
        }
        if self.alpha.iter().any(|row| row.len() != self.X_rank) {
            return Err(Error::Config(format!("alpha rows must have X_rank = {} entries", self.X_rank)));
        }
        let coweight = self
            .coweight
            .iter()
            .map(|row| row.iter().map(RawQ::parse).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(RootDatum::from_parts(
            self.name.unwrap_or_else(|| "custom".to_string()),
            self.dot,
            self.alpha,
            self.coroot,
            coweight,
            self.pairing,
        ))
    }
}
