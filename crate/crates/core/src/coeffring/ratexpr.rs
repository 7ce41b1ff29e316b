use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::context::RingContext;
use super::monomial::Monomial;
use super::poly::LaurentPoly;
use super::unit::Unit;
use crate::error::{Error, Result};

/// Element of the fraction field: `num / den` with `den != 0`.
///
/// No gcd is computed. After every operation the denominator is absorbed
/// when it divides the numerator exactly, otherwise it is scaled to be free
/// of monomial factors with leading coefficient 1. Equality is decided by
/// cross-multiplication.
#[derive(Debug, Clone)]
pub struct RatExpr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for RatExpr {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for RatExpr {
    fn from(num: LaurentPoly) -> Self {
        RatExpr {
            num,
            den: LaurentPoly::one(),
        }
    }
}

impl From<&Unit> for RatExpr {
    fn from(u: &Unit) -> Self {
        RatExpr::from(LaurentPoly::from_unit(u))
    }
}

impl From<Unit> for RatExpr {
    fn from(u: Unit) -> Self {
        RatExpr::from(&u)
    }
}

impl RatExpr {
    pub fn zero() -> Self {
        LaurentPoly::zero().into()
    }

    pub fn one() -> Self {
        LaurentPoly::one().into()
    }

    pub fn int(n: i64) -> Self {
        LaurentPoly::int(n).into()
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatExpr { num, den }.normalized())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// `Some(p)` when the value is a Laurent polynomial.
    pub fn as_poly(&self) -> Option<LaurentPoly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            self.num.div_exact(&self.den)
        }
    }

    /// `Some(u)` when the value is a signed unit monomial.
    pub fn as_unit(&self) -> Option<Unit> {
        self.as_poly().and_then(|p| p.as_unit())
    }

    pub fn context_id(&self) -> Option<u32> {
        self.num.context_id().or_else(|| self.den.context_id())
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return self;
        }
        if self.den.is_one() {
            return self;
        }
        // Monomial denominators are units, so this always succeeds for them.
        if let Some(q) = self.num.div_exact(&self.den) {
            return RatExpr {
                num: q,
                den: LaurentPoly::one(),
            };
        }
        // Strip the monomial content of the denominator and make it monic.
        let shift = self
            .den
            .terms()
            .iter()
            .fold(None::<Monomial>, |acc, (m, _)| {
                Some(match acc {
                    None => m.min_with(m),
                    Some(a) => a.min_with(m),
                })
            })
            .unwrap_or_default()
            .inv();
        let lead = self.den.leading().map(|(_, c)| c.recip()).unwrap_or_else(BigRational::one);
        self.num = self.num.mul_monomial(&shift).scale(&lead);
        self.den = self.den.mul_monomial(&shift).scale(&lead);
        self
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        match (self.context_id(), other.context_id()) {
            (Some(a), Some(b)) if a != b => Err(Error::ContextMismatch),
            _ => Ok(()),
        }
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            return RatExpr {
                num: &self.num + &other.num,
                den: self.den.clone(),
            }
            .normalized();
        }
        RatExpr {
            num: &self.num * &other.den + &other.num * &self.den,
            den: &self.den * &other.den,
        }
        .normalized()
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.den.is_one() && self.den.is_one() {
            return RatExpr {
                num: &self.num * &other.num,
                den: LaurentPoly::one(),
            };
        }
        RatExpr {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
        .normalized()
    }

    pub fn mul_unit(&self, u: &Unit) -> Self {
        RatExpr {
            num: self.num.mul_unit(u),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatExpr {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatExpr {
            num: self.den.clone(),
            den: self.num.clone(),
        }
        .normalized())
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_unchecked(&other.recip()?))
    }

    pub fn display(&self, ctx: &RingContext) -> String {
        if self.den.is_one() {
            return self.num.display(ctx);
        }
        format!("({}) / ({})", self.num.display(ctx), self.den.display(ctx))
    }
}

impl PartialEq for RatExpr {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatExpr {}

impl Neg for RatExpr {
    type Output = RatExpr;
    fn neg(self) -> RatExpr {
        RatExpr {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &RatExpr {
    type Output = RatExpr;
    fn neg(self) -> RatExpr {
        -self.clone()
    }
}

impl Add<&RatExpr> for &RatExpr {
    type Output = RatExpr;
    fn add(self, rhs: &RatExpr) -> RatExpr {
        self.add_unchecked(rhs)
    }
}

impl Sub<&RatExpr> for &RatExpr {
    type Output = RatExpr;
    fn sub(self, rhs: &RatExpr) -> RatExpr {
        self.add_unchecked(&-rhs)
    }
}

impl Mul<&RatExpr> for &RatExpr {
    type Output = RatExpr;
    fn mul(self, rhs: &RatExpr) -> RatExpr {
        self.mul_unchecked(rhs)
    }
}

/// Panics on division by zero; use [`RatExpr::try_div`] to handle it.
impl Div<&RatExpr> for &RatExpr {
    type Output = RatExpr;
    fn div(self, rhs: &RatExpr) -> RatExpr {
        self.try_div(rhs).expect("division by zero in RatExpr")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<RatExpr> for RatExpr {
            type Output = RatExpr;
            fn $method(self, rhs: RatExpr) -> RatExpr {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RatExpr> for RatExpr {
            type Output = RatExpr;
            fn $method(self, rhs: &RatExpr) -> RatExpr {
                (&self).$method(rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for RatExpr {
    fn sum<I: Iterator<Item = RatExpr>>(iter: I) -> Self {
        iter.fold(RatExpr::zero(), |acc, x| acc + x)
    }
}
