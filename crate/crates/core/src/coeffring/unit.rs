use num_rational::Ratio;

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// A signed unit monomial `±m`. Parameters, twist scalars and substitution
/// images all live here.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Unit {
    pub negative: bool,
    pub mono: Monomial,
}

impl From<Monomial> for Unit {
    fn from(mono: Monomial) -> Self {
        Unit {
            negative: false,
            mono,
        }
    }
}

impl Unit {
    pub fn one() -> Self {
        Unit::default()
    }

    pub fn minus_one() -> Self {
        Unit {
            negative: true,
            mono: Monomial::one(),
        }
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.mono.is_one()
    }

    pub fn mul(&self, other: &Unit) -> Unit {
        Unit {
            negative: self.negative ^ other.negative,
            mono: self.mono.mul(&other.mono),
        }
    }

    pub fn inv(&self) -> Unit {
        Unit {
            negative: self.negative,
            mono: self.mono.inv(),
        }
    }

    pub fn div(&self, other: &Unit) -> Unit {
        self.mul(&other.inv())
    }

    pub fn neg(&self) -> Unit {
        Unit {
            negative: !self.negative,
            mono: self.mono.clone(),
        }
    }

    pub fn pow(&self, k: i64) -> Unit {
        Unit {
            negative: self.negative && k.rem_euclid(2) == 1,
            mono: self.mono.pow(k),
        }
    }

    /// Rational power. Fails when a sign (or `-1`) would need an even root,
    /// or a Laurent exponent leaves its declared denominator.
    pub fn pow_ratio(&self, p: Ratio<i64>) -> Result<Unit> {
        if p.is_integer() {
            return Ok(self.pow(*p.numer()));
        }
        if self.negative && p.denom() % 2 == 0 {
            return Err(Error::FractionalPower {
                base: "-1".into(),
                exp: p.to_string(),
            });
        }
        let mono = self.mono.pow_ratio(p).ok_or_else(|| Error::FractionalPower {
            base: format!("{:?}", self.mono),
            exp: p.to_string(),
        })?;
        Ok(Unit {
            negative: self.negative && p.numer().rem_euclid(2) == 1,
            mono,
        })
    }

    pub fn product<'a>(units: impl IntoIterator<Item = &'a Unit>) -> Unit {
        units.into_iter().fold(Unit::one(), |acc, u| acc.mul(u))
    }
}
