use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::context::{RingContext, VarId};
use super::monomial::Monomial;
use super::unit::Unit;
use crate::error::{Error, Result};

/// Sparse Laurent polynomial with exact rational coefficients.
///
/// Terms are kept sorted ascending in the monomial order with no zero
/// coefficients, so structural equality is ring equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, BigRational)>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, BigRational::one())
    }

    pub fn from_unit(u: &Unit) -> Self {
        let c = if u.negative { rat(-1) } else { rat(1) };
        Self::term(u.mono.clone(), c)
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigRational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn context_id(&self) -> Option<u32> {
        self.terms.iter().find_map(|(m, _)| m.context_id())
    }

    pub fn has_sign_vars(&self) -> bool {
        self.terms.iter().any(|(m, _)| m.has_sign_vars())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// `Some(±m)` when the polynomial is a single term with coefficient ±1.
    pub fn as_unit(&self) -> Option<Unit> {
        match self.terms.as_slice() {
            [(m, c)] if c.abs().is_one() => Some(Unit {
                negative: c.is_negative(),
                mono: m.clone(),
            }),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.last()
    }

    /// Value at every variable = 1 (sign variables included).
    pub fn coefficient_sum(&self) -> BigRational {
        self.terms.iter().map(|(_, c)| c.clone()).sum()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        if m.is_one() {
            return self.clone();
        }
        if m.has_sign_vars() || self.has_sign_vars() {
            return Self::from_terms(self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())));
        }
        // Multiplication by a monomial preserves the group order.
        LaurentPoly {
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul_unit(&self, u: &Unit) -> Self {
        let p = self.mul_monomial(&u.mono);
        if u.negative {
            -p
        } else {
            p
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        let sgn = |c: &BigRational| if negate_other { -c } else { c.clone() };
        while x < a.len() && y < b.len() {
            match a[x].0.cmp(&b[y].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[x].clone());
                    x += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[y].0.clone(), sgn(&b[y].1)));
                    y += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[x].1 + sgn(&b[y].1);
                    if !c.is_zero() {
                        out.push((a[x].0.clone(), c));
                    }
                    x += 1;
                    y += 1;
                }
            }
        }
        out.extend(a[x..].iter().cloned());
        out.extend(b[y..].iter().map(|(m, c)| (m.clone(), sgn(c))));
        LaurentPoly { terms: out }
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        match (self.context_id(), other.context_id()) {
            (Some(a), Some(b)) if a != b => Err(Error::ContextMismatch),
            _ => Ok(()),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m).scale(c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m).scale(c);
        }
        let mut acc: HashMap<Monomial, BigRational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                *acc.entry(m.mul(n)).or_insert_with(BigRational::zero) += c * d;
            }
        }
        Self::from_map(acc)
    }

    /// Exact quotient `self / b` in the Laurent ring, or `None` if `b` does
    /// not divide `self`.
    ///
    /// Each variable's exponent range in a quotient is confined to
    /// `[min_a - min_b, max_a - max_b]`; leading-term division stays inside
    /// that box or proves inexactness, so the loop terminates.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if b.terms.len() == 1 {
            let (m, c) = &b.terms[0];
            return Some(self.mul_monomial(&m.inv()).scale(&c.recip()));
        }
        if b.has_sign_vars() {
            // only a sign factor shared by every term of `b` can be removed
            let sign = sign_part(&b.terms[0].0);
            if sign.is_one() || b.terms.iter().any(|(m, _)| sign_part(m) != sign) {
                return None;
            }
            return self.mul_monomial(&sign).div_exact(&b.mul_monomial(&sign));
        }
        let bounds = exponent_box(self, b)?;
        let (lead_m, lead_c) = b.terms.last().unwrap();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.terms.last() {
            let m = rm.div(lead_m);
            if !bounds.iter().all(|&(v, lo, hi)| {
                let e = m.raw_exponent(v);
                lo <= e && e <= hi
            }) {
                return None;
            }
            let c = rc / lead_c;
            rem = rem.merge(&b.mul_monomial(&m).scale(&c), true);
            quot.push((m, c));
        }
        quot.reverse();
        Some(LaurentPoly { terms: quot })
    }

    /// Applies `f` to every term's monomial and re-canonicalizes.
    pub fn map_terms(&self, mut f: impl FnMut(&Monomial, &BigRational) -> Self) -> Self {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in &self.terms {
            for (n, d) in f(m, c).terms {
                *acc.entry(n).or_insert_with(BigRational::zero) += d;
            }
        }
        Self::from_map(acc)
    }

    pub fn display(&self, ctx: &RingContext) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = fmt_monomial(m, ctx);
            if mono.is_empty() {
                let _ = write!(out, "{mag}");
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                let _ = write!(out, "{mag}*{mono}");
            }
        }
        out
    }
}

fn exponent_box(a: &LaurentPoly, b: &LaurentPoly) -> Option<Vec<(VarId, i32, i32)>> {
    let mut vars: Vec<VarId> = a
        .terms
        .iter()
        .chain(b.terms.iter())
        .flat_map(|(m, _)| m.iter().map(|(v, _)| v))
        .collect();
    vars.sort();
    vars.dedup();
    let range = |p: &LaurentPoly, v: VarId| {
        p.terms.iter().fold((i32::MAX, i32::MIN), |(lo, hi), (m, _)| {
            let e = m.raw_exponent(v);
            (lo.min(e), hi.max(e))
        })
    };
    let mut out = Vec::with_capacity(vars.len());
    for v in vars {
        let (alo, ahi) = range(a, v);
        let (blo, bhi) = range(b, v);
        let (lo, hi) = (alo - blo, ahi - bhi);
        if lo > hi {
            return None;
        }
        out.push((v, lo, hi));
    }
    Some(out)
}

pub fn fmt_monomial(m: &Monomial, ctx: &RingContext) -> String {
    let mut parts = Vec::new();
    for (v, _) in m.iter() {
        let name = if ctx.contains(v) {
            ctx.info(v).name.clone()
        } else {
            format!("{v:?}")
        };
        let e = if ctx.contains(v) {
            ctx.exponent(m, v)
        } else {
            num_rational::Ratio::from_integer(m.raw_exponent(v) as i64)
        };
        if e == num_rational::Ratio::from_integer(1) {
            parts.push(name);
        } else if e.is_integer() {
            parts.push(format!("{name}^{e}"));
        } else {
            parts.push(format!("{name}^({e})"));
        }
    }
    parts.join("*")
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in &mut self.terms {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                debug_assert!(self.check_context(rhs).is_ok(), "ring context mismatch");
                $body(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

poly_binop!(Add, add, |a: &LaurentPoly, b: &LaurentPoly| a.merge(b, false));
poly_binop!(Sub, sub, |a: &LaurentPoly, b: &LaurentPoly| a.merge(b, true));
poly_binop!(Mul, mul, |a: &LaurentPoly, b: &LaurentPoly| a.mul_unchecked(b));

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

fn sign_part(m: &Monomial) -> Monomial {
    m.iter()
        .filter(|(v, _)| v.is_sign())
        .fold(Monomial::one(), |acc, (v, e)| acc.mul(&Monomial::var_pow(v, e)))
}
