//! Graded noncommutative words, K-straightening, and twisted tensor products.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::coeffring::{RatExpr, RingContext, Unit};
use crate::error::{Error, Result};
use crate::presentations::ParameterSet;
use crate::rootdata::RootDatum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    E,
    F,
    K,
    Kinv,
    Kp,
    Kpinv,
}

/// A generator `E_i, F_i, K_i^{+-1}, K'_i^{+-1}` (0-based index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSymbol {
    pub kind: GenKind,
    pub index: usize,
}

impl GenSymbol {
    pub fn e(i: usize) -> Self {
        GenSymbol { kind: GenKind::E, index: i }
    }
    pub fn f(i: usize) -> Self {
        GenSymbol { kind: GenKind::F, index: i }
    }
    pub fn k(i: usize) -> Self {
        GenSymbol { kind: GenKind::K, index: i }
    }
    pub fn kinv(i: usize) -> Self {
        GenSymbol { kind: GenKind::Kinv, index: i }
    }
    pub fn kp(i: usize) -> Self {
        GenSymbol { kind: GenKind::Kp, index: i }
    }
    pub fn kpinv(i: usize) -> Self {
        GenSymbol { kind: GenKind::Kpinv, index: i }
    }

    /// The inverse generator, for K-type symbols.
    pub fn inverse(self) -> Option<Self> {
        let kind = match self.kind {
            GenKind::K => GenKind::Kinv,
            GenKind::Kinv => GenKind::K,
            GenKind::Kp => GenKind::Kpinv,
            GenKind::Kpinv => GenKind::Kp,
            _ => return None,
        };
        Some(GenSymbol { kind, index: self.index })
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.index + 1;
        match self.kind {
            GenKind::E => write!(f, "E{i}"),
            GenKind::F => write!(f, "F{i}"),
            GenKind::K => write!(f, "K{i}"),
            GenKind::Kinv => write!(f, "K{i}^-1"),
            GenKind::Kp => write!(f, "K'{i}"),
            GenKind::Kpinv => write!(f, "K'{i}^-1"),
        }
    }
}

/// A raw (unstraightened) word.
pub type RawWord = Vec<GenSymbol>;

pub fn fmt_raw(w: &[GenSymbol]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EfLetter {
    E(usize),
    F(usize),
}

/// Element of `Z[I]`.
pub type Grade = SmallVec<[i64; 4]>;

pub fn grade_of(letters: &[EfLetter], n: usize) -> Grade {
    let mut g: Grade = SmallVec::from_elem(0, n);
    for l in letters {
        match *l {
            EfLetter::E(i) => g[i] += 1,
            EfLetter::F(i) => g[i] -= 1,
        }
    }
    g
}

/// Degree of a raw word: `deg E_i = i`, `deg F_i = -i`, K-type symbols 0.
pub fn grade(word: &[GenSymbol], n: usize) -> Grade {
    let mut g: Grade = SmallVec::from_elem(0, n);
    for s in word {
        match s.kind {
            GenKind::E => g[s.index] += 1,
            GenKind::F => g[s.index] -= 1,
            _ => {}
        }
    }
    g
}

/// Normal form `K^a K'^b w`, with `w` a free word in E/F.
/// `k` holds the exponents of `K_1..K_n` followed by those of `K'_1..K'_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcMonomial {
    pub k: SmallVec<[i32; 8]>,
    pub word: SmallVec<[EfLetter; 8]>,
}

impl NcMonomial {
    pub fn one(n: usize) -> Self {
        NcMonomial {
            k: SmallVec::from_elem(0, 2 * n),
            word: SmallVec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.k.len() / 2
    }

    pub fn grade(&self) -> Grade {
        grade_of(&self.word, self.rank())
    }

    pub fn is_k_only(&self) -> bool {
        self.word.is_empty()
    }

    /// Back to a raw word (K-part first).
    pub fn to_raw(&self) -> RawWord {
        let n = self.rank();
        let mut out = RawWord::new();
        for (g, &e) in self.k.iter().enumerate() {
            let (pos, neg) = if g < n {
                (GenSymbol::k(g), GenSymbol::kinv(g))
            } else {
                (GenSymbol::kp(g - n), GenSymbol::kpinv(g - n))
            };
            let sym = if e > 0 { pos } else { neg };
            out.extend(std::iter::repeat_n(sym, e.unsigned_abs() as usize));
        }
        out.extend(self.word.iter().map(|l| match *l {
            EfLetter::E(i) => GenSymbol::e(i),
            EfLetter::F(i) => GenSymbol::f(i),
        }));
        out
    }
}

impl fmt::Display for NcMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank();
        let mut parts = Vec::new();
        for (g, &e) in self.k.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let base = if g < n { format!("K{}", g + 1) } else { format!("K'{}", g - n + 1) };
            parts.push(if e == 1 { base } else { format!("{base}^{e}") });
        }
        let mut run: Option<(EfLetter, usize)> = None;
        let flush = |run: &mut Option<(EfLetter, usize)>, parts: &mut Vec<String>| {
            if let Some((l, c)) = run.take() {
                let base = match l {
                    EfLetter::E(i) => format!("E{}", i + 1),
                    EfLetter::F(i) => format!("F{}", i + 1),
                };
                parts.push(if c == 1 { base } else { format!("{base}^{c}") });
            }
        };
        for &l in &self.word {
            match run {
                Some((m, ref mut c)) if m == l => *c += 1,
                _ => {
                    flush(&mut run, &mut parts);
                    run = Some((l, 1));
                }
            }
        }
        flush(&mut run, &mut parts);
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Linear combination of normal-form monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NcExpr {
    terms: BTreeMap<NcMonomial, RatExpr>,
}

impl NcExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(m: NcMonomial, c: RatExpr) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
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

    pub fn terms(&self) -> impl Iterator<Item = (&NcMonomial, &RatExpr)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &NcMonomial) -> RatExpr {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: NcMonomial, c: RatExpr) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &NcExpr) -> NcExpr {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NcExpr) -> NcExpr {
        self.add(&other.scale(&RatExpr::int(-1)))
    }

    pub fn scale(&self, c: &RatExpr) -> NcExpr {
        if c.is_zero() {
            return NcExpr::zero();
        }
        NcExpr {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn scale_unit(&self, u: &Unit) -> NcExpr {
        NcExpr {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul_unit(u))).collect(),
        }
    }

    /// Every term has degree `g`.
    pub fn is_homogeneous(&self) -> Option<Grade> {
        let mut it = self.terms.keys().map(NcMonomial::grade);
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    pub fn display(&self, ctx: &RingContext) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("({}) {}", c.display(ctx), m))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    S,
    T,
}

/// Straightening rules: for every K-type generator `g` and every `j`,
/// `g E_j g^{-1} = rho(g, j) E_j` and `g F_j g^{-1} = rho(g, j)^{-1} F_j`.
#[derive(Debug, Clone)]
pub struct NcAlgebra {
    n: usize,
    primes: bool,
    rho: Vec<Vec<Unit>>,
    s: Vec<Vec<Unit>>,
    t: Vec<Vec<Unit>>,
    ctx: RingContext,
}

impl NcAlgebra {
    /// The rules of the twisted algebra: `K_i E_j K_i^{-1} = s_ij^{-1} t_ij^{-1} q_i^{a_ij} E_j`,
    /// `K'_i E_j K'_i^{-1} = s_ij^{-1} t_ij^{-1} q_i^{-a_ij} E_j`.
    pub fn twisted(rd: &RootDatum, p: &ParameterSet) -> Self {
        let n = rd.rank();
        let mut rho = vec![Vec::with_capacity(n); 2 * n];
        for i in 0..n {
            for j in 0..n {
                let st = p.s[i][j].mul(&p.t[i][j]).inv();
                rho[i].push(st.mul(&p.q[i].pow(rd.a(i, j))));
                rho[n + i].push(st.mul(&p.q[i].pow(-rd.a(i, j))));
            }
        }
        NcAlgebra {
            n,
            primes: true,
            rho,
            s: p.s.clone(),
            t: p.t.clone(),
            ctx: p.ctx().clone(),
        }
    }

    /// The ordinary algebra: `K_i E_j K_i^{-1} = v_i^{a_ij} E_j`, no `K'`, untwisted tensors.
    pub fn ordinary(rd: &RootDatum, p: &ParameterSet) -> Self {
        let n = rd.rank();
        let mut rho = vec![Vec::with_capacity(n); 2 * n];
        for i in 0..n {
            for j in 0..n {
                rho[i].push(p.v_i(rd, i).pow(rd.a(i, j)));
                rho[n + i].push(Unit::one());
            }
        }
        NcAlgebra {
            n,
            primes: false,
            rho,
            s: vec![vec![Unit::one(); n]; n],
            t: vec![vec![Unit::one(); n]; n],
            ctx: p.ctx().clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn has_kprime(&self) -> bool {
        self.primes
    }

    /// `rho(g, j)` for `g` in `0..2n` (K's then K''s).
    pub fn rho(&self, g: usize, j: usize) -> &Unit {
        &self.rho[g][j]
    }

    /// `P_{mu,nu} = prod_{i,j} P_ij^{mu_i nu_j}` for `P` in `{s, t}`.
    pub fn bichar(&self, mu: &[i64], nu: &[i64], fam: Family) -> Unit {
        let p = match fam {
            Family::S => &self.s,
            Family::T => &self.t,
        };
        let mut acc = Unit::one();
        for (i, &mi) in mu.iter().enumerate() {
            if mi == 0 {
                continue;
            }
            for (j, &nj) in nu.iter().enumerate() {
                if nj != 0 {
                    acc = acc.mul(&p[i][j].pow(mi * nj));
                }
            }
        }
        acc
    }

    pub fn one(&self) -> NcExpr {
        NcExpr::term(NcMonomial::one(self.n), RatExpr::one())
    }

    pub fn scalar(&self, c: RatExpr) -> NcExpr {
        NcExpr::term(NcMonomial::one(self.n), c)
    }

    fn check(&self, g: GenSymbol) -> Result<()> {
        if g.index >= self.n {
            return Err(Error::IndexOutOfRange { index: g.index, rank: self.n });
        }
        if !self.primes && matches!(g.kind, GenKind::Kp | GenKind::Kpinv) {
            return Err(Error::RulesetMismatch(g.to_string()));
        }
        Ok(())
    }

    pub fn gen_monomial(&self, g: GenSymbol) -> Result<NcMonomial> {
        self.check(g)?;
        let mut m = NcMonomial::one(self.n);
        match g.kind {
            GenKind::E => m.word.push(EfLetter::E(g.index)),
            GenKind::F => m.word.push(EfLetter::F(g.index)),
            GenKind::K => m.k[g.index] = 1,
            GenKind::Kinv => m.k[g.index] = -1,
            GenKind::Kp => m.k[self.n + g.index] = 1,
            GenKind::Kpinv => m.k[self.n + g.index] = -1,
        }
        Ok(m)
    }

    pub fn gen(&self, g: GenSymbol) -> Result<NcExpr> {
        Ok(NcExpr::term(self.gen_monomial(g)?, RatExpr::one()))
    }

    /// K-monomial with the given exponents on `K_1..K_n, K'_1..K'_n`.
    pub fn k_monomial(&self, k: &[i32]) -> NcMonomial {
        let mut m = NcMonomial::one(self.n);
        m.k.copy_from_slice(k);
        m
    }

    /// Scalar picked up by moving `K^b` left past the E/F word `w`:
    /// `w K^b = scalar * K^b w`.
    pub fn commute_scalar(&self, w: &[EfLetter], b: &[i32]) -> Unit {
        if w.is_empty() || b.iter().all(|&x| x == 0) {
            return Unit::one();
        }
        let mu = grade_of(w, self.n);
        let mut acc = Unit::one();
        for (g, &bg) in b.iter().enumerate() {
            if bg == 0 {
                continue;
            }
            for (j, &mj) in mu.iter().enumerate() {
                if mj != 0 {
                    acc = acc.mul(&self.rho[g][j].pow(-(bg as i64) * mj));
                }
            }
        }
        acc
    }

    pub fn mul_monomial(&self, a: &NcMonomial, b: &NcMonomial) -> (Unit, NcMonomial) {
        let scalar = self.commute_scalar(&a.word, &b.k);
        let mut m = a.clone();
        for (x, y) in m.k.iter_mut().zip(&b.k) {
            *x += y;
        }
        m.word.extend(b.word.iter().copied());
        (scalar, m)
    }

    pub fn mul(&self, a: &NcExpr, b: &NcExpr) -> NcExpr {
        let mut out = NcExpr::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let (u, m) = self.mul_monomial(ma, mb);
                out.add_term(m, (ca * cb).mul_unit(&u));
            }
        }
        out
    }

    /// Straightens a raw word into normal form.
    pub fn word(&self, w: &[GenSymbol]) -> Result<NcExpr> {
        let mut coef = Unit::one();
        let mut m = NcMonomial::one(self.n);
        for &g in w {
            let (u, next) = self.mul_monomial(&m, &self.gen_monomial(g)?);
            coef = coef.mul(&u);
            m = next;
        }
        Ok(NcExpr::term(m, RatExpr::from(coef)))
    }

    pub fn pow(&self, x: &NcExpr, k: u32) -> NcExpr {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    /// Twisted tensor product of monomials (any arity):
    /// the product picks up `prod_{a<b} t_{|x_b|,|y_a|} s_{|y_a|,|x_b|}`.
    pub fn tensor_twist(&self, xs: &[NcMonomial], ys: &[NcMonomial]) -> Unit {
        let gx: Vec<Grade> = xs.iter().map(NcMonomial::grade).collect();
        let gy: Vec<Grade> = ys.iter().map(NcMonomial::grade).collect();
        let mut acc = Unit::one();
        for a in 0..xs.len() {
            if gy[a].iter().all(|&c| c == 0) {
                continue;
            }
            for gxb in gx.iter().skip(a + 1) {
                if gxb.iter().all(|&c| c == 0) {
                    continue;
                }
                acc = acc.mul(&self.bichar(gxb, &gy[a], Family::T));
                acc = acc.mul(&self.bichar(&gy[a], gxb, Family::S));
            }
        }
        acc
    }

    pub fn tmul(&self, a: &TensorExpr, b: &TensorExpr) -> Result<TensorExpr> {
        if a.arity != b.arity {
            return Err(Error::ArityMismatch(a.arity, b.arity));
        }
        let mut out = TensorExpr::zero(a.arity);
        for (xs, cx) in &a.terms {
            for (ys, cy) in &b.terms {
                let mut u = self.tensor_twist(xs, ys);
                let mut slots = Vec::with_capacity(a.arity);
                for (x, y) in xs.iter().zip(ys) {
                    let (w, m) = self.mul_monomial(x, y);
                    u = u.mul(&w);
                    slots.push(m);
                }
                out.add_term(slots, (cx * cy).mul_unit(&u));
            }
        }
        Ok(out)
    }

    /// `a^k` in the twisted tensor algebra.
    pub fn tpow(&self, a: &TensorExpr, k: u32) -> Result<TensorExpr> {
        let mut acc = TensorExpr::pure(&vec![self.one(); a.arity]);
        for _ in 0..k {
            acc = self.tmul(&acc, a)?;
        }
        Ok(acc)
    }
}

/// Linear combination of `x_1 (x) ... (x) x_n` with normal-form slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorExpr {
    arity: usize,
    terms: BTreeMap<Vec<NcMonomial>, RatExpr>,
}

impl TensorExpr {
    pub fn zero(arity: usize) -> Self {
        TensorExpr {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// `e_1 (x) ... (x) e_n`, expanded multilinearly.
    pub fn pure(factors: &[NcExpr]) -> Self {
        let mut acc: Vec<(Vec<NcMonomial>, RatExpr)> = vec![(Vec::new(), RatExpr::one())];
        for f in factors {
            let mut next = Vec::new();
            for (slots, c) in &acc {
                for (m, d) in f.terms() {
                    let mut s = slots.clone();
                    s.push(m.clone());
                    next.push((s, c * d));
                }
            }
            acc = next;
        }
        let mut out = TensorExpr::zero(factors.len());
        for (s, c) in acc {
            out.add_term(s, c);
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<NcMonomial>, &RatExpr)> {
        self.terms.iter()
    }

    pub fn coeff(&self, slots: &[NcMonomial]) -> RatExpr {
        self.terms.get(slots).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, slots: Vec<NcMonomial>, c: RatExpr) {
        debug_assert_eq!(slots.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(slots) {
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

    pub fn add(&self, other: &TensorExpr) -> Result<TensorExpr> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorExpr) -> Result<TensorExpr> {
        self.add(&other.scale(&RatExpr::int(-1)))
    }

    pub fn scale(&self, c: &RatExpr) -> TensorExpr {
        if c.is_zero() {
            return TensorExpr::zero(self.arity);
        }
        TensorExpr {
            arity: self.arity,
            terms: self.terms.iter().map(|(s, x)| (s.clone(), x * c)).collect(),
        }
    }

    /// Total degree of every term, if they agree.
    pub fn total_grade(&self) -> Option<Grade> {
        let mut it = self.terms.keys().map(|slots| {
            let mut g = slots[0].grade();
            for m in &slots[1..] {
                for (a, b) in g.iter_mut().zip(m.grade()) {
                    *a += b;
                }
            }
            g
        });
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    pub fn display_term(slots: &[NcMonomial]) -> String {
        slots.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" (x) ")
    }

    pub fn display(&self, ctx: &RingContext) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(s, c)| format!("({}) {}", c.display(ctx), Self::display_term(s)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
