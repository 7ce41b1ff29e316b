use std::cmp::Ordering;

use num_rational::Ratio;
use smallvec::SmallVec;

use super::context::VarId;

/// A Laurent monomial with exponents stored as integer numerators over each
/// variable's declared denominator. Sign variables carry exponent 1 or are absent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: SmallVec<[(VarId, i32); 4]>,
}

fn normalize_exp(v: VarId, e: i32) -> i32 {
    if v.is_sign() {
        e.rem_euclid(2)
    } else {
        e
    }
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var_pow(v: VarId, e: i32) -> Self {
        let e = normalize_exp(v, e);
        let mut exps = SmallVec::new();
        if e != 0 {
            exps.push((v, e));
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, i32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn raw_exponent(&self, v: VarId) -> i32 {
        self.exps
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|k| self.exps[k].1)
            .unwrap_or(0)
    }

    pub fn has_sign_vars(&self) -> bool {
        self.exps.iter().any(|(v, _)| v.is_sign())
    }

    /// Context id of the variables, or `None` for the constant monomial.
    pub fn context_id(&self) -> Option<u32> {
        self.exps.first().map(|(v, _)| v.context_id())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::with_capacity(self.exps.len() + other.exps.len());
        let (a, b) = (&self.exps, &other.exps);
        let (mut x, mut y) = (0, 0);
        while x < a.len() && y < b.len() {
            match a[x].0.cmp(&b[y].0) {
                Ordering::Less => {
                    out.push(a[x]);
                    x += 1;
                }
                Ordering::Greater => {
                    out.push(b[y]);
                    y += 1;
                }
                Ordering::Equal => {
                    let v = a[x].0;
                    let e = normalize_exp(v, a[x].1 + b[y].1);
                    if e != 0 {
                        out.push((v, e));
                    }
                    x += 1;
                    y += 1;
                }
            }
        }
        out.extend_from_slice(&a[x..]);
        out.extend_from_slice(&b[y..]);
        Monomial { exps: out }
    }

    pub fn inv(&self) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|&(v, e)| (v, normalize_exp(v, -e)))
                .filter(|&(_, e)| e != 0)
                .collect(),
        }
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|&(v, e)| (v, normalize_exp(v, (e as i64 * k) as i32)))
                .filter(|&(_, e)| e != 0)
                .collect(),
        }
    }

    /// `self^p` for rational `p`; `None` when some exponent numerator would
    /// stop being an integer, or a sign variable would need an even root.
    /// Odd roots of a sign are taken real: `g^{a/b} = g^a` for odd `b`.
    pub fn pow_ratio(&self, p: Ratio<i64>) -> Option<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for &(v, e) in &self.exps {
            let mut scaled = p * Ratio::from_integer(e as i64);
            if v.is_sign() && scaled.denom() % 2 == 1 {
                scaled = Ratio::from_integer(*scaled.numer());
            }
            if !scaled.is_integer() {
                return None;
            }
            let e = normalize_exp(v, *scaled.numer() as i32);
            if e != 0 {
                exps.push((v, e));
            }
        }
        Some(Monomial { exps })
    }

    /// Componentwise minimum of exponents (gcd-like shift for Laurent polynomials).
    pub fn min_with(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        let (a, b) = (&self.exps, &other.exps);
        let (mut x, mut y) = (0, 0);
        loop {
            let next = match (a.get(x), b.get(y)) {
                (None, None) => break,
                (Some(&(v, e)), None) => {
                    x += 1;
                    (v, e.min(0))
                }
                (None, Some(&(v, e))) => {
                    y += 1;
                    (v, e.min(0))
                }
                (Some(&(v, e)), Some(&(w, f))) => match v.cmp(&w) {
                    Ordering::Less => {
                        x += 1;
                        (v, e.min(0))
                    }
                    Ordering::Greater => {
                        y += 1;
                        (w, f.min(0))
                    }
                    Ordering::Equal => {
                        x += 1;
                        y += 1;
                        (v, e.min(f))
                    }
                },
            };
            if next.1 != 0 && !next.0.is_sign() {
                out.push(next);
            }
        }
        Monomial { exps: out }
    }

    /// Per-variable comparison walk: calls `f(var, a_exp, b_exp)` for every
    /// variable present in either monomial, in variable order.
    fn zip_exps<T>(&self, other: &Monomial, mut f: impl FnMut(VarId, i32, i32) -> Option<T>) -> Option<T> {
        let (a, b) = (&self.exps, &other.exps);
        let (mut x, mut y) = (0, 0);
        while x < a.len() || y < b.len() {
            let (v, ea, eb) = match (a.get(x), b.get(y)) {
                (Some(&(v, e)), Some(&(w, g))) => match v.cmp(&w) {
                    Ordering::Less => {
                        x += 1;
                        (v, e, 0)
                    }
                    Ordering::Greater => {
                        y += 1;
                        (w, 0, g)
                    }
                    Ordering::Equal => {
                        x += 1;
                        y += 1;
                        (v, e, g)
                    }
                },
                (Some(&(v, e)), None) => {
                    x += 1;
                    (v, e, 0)
                }
                (None, Some(&(w, g))) => {
                    y += 1;
                    (w, 0, g)
                }
                (None, None) => unreachable!(),
            };
            if let Some(t) = f(v, ea, eb) {
                return Some(t);
            }
        }
        None
    }
}

/// Lexicographic order on dense exponent vectors (variables in declaration
/// order). This is a group order on the exponent lattice, so it is compatible
/// with multiplication by Laurent monomials.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.zip_exps(other, |_, a, b| match a.cmp(&b) {
            Ordering::Equal => None,
            o => Some(o),
        })
        .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<(VarId, i32)> for Monomial {
    fn from_iter<I: IntoIterator<Item = (VarId, i32)>>(iter: I) -> Self {
        iter.into_iter()
            .fold(Monomial::one(), |acc, (v, e)| acc.mul(&Monomial::var_pow(v, e)))
    }
}
