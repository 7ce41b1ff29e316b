use std::collections::HashMap;

use num_rational::Ratio;

use super::context::{RingContext, VarId};
use super::monomial::Monomial;
use super::poly::LaurentPoly;
use super::ratexpr::RatExpr;
use super::unit::Unit;
use crate::error::{Error, Result};

/// A ring homomorphism between two contexts given by images of variables
/// as signed unit monomials.
#[derive(Debug, Clone)]
pub struct Substitution {
    source: RingContext,
    target: RingContext,
    images: HashMap<VarId, Unit>,
}

impl Substitution {
    pub fn new(source: &RingContext, target: &RingContext) -> Self {
        Substitution {
            source: source.clone(),
            target: target.clone(),
            images: HashMap::new(),
        }
    }

    pub fn identity(ctx: &RingContext) -> Self {
        let mut s = Self::new(ctx, ctx);
        for v in ctx.vars() {
            s.images.insert(v, Unit::from(Monomial::var_pow(v, ctx.info(v).den as i32)));
        }
        s
    }

    pub fn source(&self) -> &RingContext {
        &self.source
    }

    pub fn target(&self) -> &RingContext {
        &self.target
    }

    /// Binds `var` (a name in the source context) to `image`.
    pub fn bind(&mut self, var: &str, image: Unit) -> Result<&mut Self> {
        let v = self.source.expect_var(var)?;
        if image.mono.context_id().is_some_and(|c| c != self.target.id()) {
            return Err(Error::ContextMismatch);
        }
        if v.is_sign() && image.pow(2) != Unit::one() {
            return Err(Error::NotInvertible(format!(
                "sign variable `{var}` must map to an element squaring to 1"
            )));
        }
        self.images.insert(v, image);
        Ok(self)
    }

    pub fn image(&self, var: &str) -> Option<&Unit> {
        self.source.var(var).and_then(|v| self.images.get(&v))
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Result<Unit> {
        let mut acc = Unit::one();
        for (v, e) in m.iter() {
            let img = self
                .images
                .get(&v)
                .ok_or_else(|| Error::UnboundVariable(self.name_of(v)))?;
            let den = self.source.info(v).den as i64;
            acc = acc.mul(&img.pow_ratio(Ratio::new(e as i64, den))?);
        }
        Ok(acc)
    }

    pub fn apply_unit(&self, u: &Unit) -> Result<Unit> {
        let m = self.apply_monomial(&u.mono)?;
        Ok(if u.negative { m.neg() } else { m })
    }

    pub fn apply_poly(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let u = self.apply_monomial(m)?;
            let c = if u.negative { -c.clone() } else { c.clone() };
            terms.push((u.mono, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }

    pub fn apply(&self, x: &RatExpr) -> Result<RatExpr> {
        let num = self.apply_poly(x.num())?;
        let den = self.apply_poly(x.den())?;
        if den.is_zero() {
            return Err(Error::NotInvertible(format!(
                "denominator {} maps to 0",
                x.den().display(&self.source)
            )));
        }
        RatExpr::new(num, den)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Substitution) -> Result<Substitution> {
        if next.source != self.target {
            return Err(Error::ContextMismatch);
        }
        let mut out = Substitution::new(&self.source, &next.target);
        for (v, img) in &self.images {
            out.images.insert(*v, next.apply_unit(img)?);
        }
        Ok(out)
    }

    fn name_of(&self, v: VarId) -> String {
        if self.source.contains(v) {
            self.source.info(v).name.clone()
        } else {
            format!("{v:?}")
        }
    }
}
