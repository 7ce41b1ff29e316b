//! Ring contexts: read-only registries of coefficient variables.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

use num_rational::Ratio;

use super::monomial::Monomial;
use super::unit::Unit;
use crate::error::{Error, Result};

static NEXT_CONTEXT_ID: AtomicU32 = AtomicU32::new(1);

/// Whether a variable is an ordinary Laurent variable or a sign (`x^2 = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    Laurent,
    Sign,
}

/// A variable handle.
///
/// The packed layout is `ctx << 33 | index << 1 | sign`, so the derived
/// ordering groups by context and then follows declaration order, and the
/// variable kind is available without a context lookup.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(u64);

impl VarId {
    fn new(ctx: u32, index: usize, kind: VarKind) -> Self {
        let sign = matches!(kind, VarKind::Sign) as u64;
        VarId(((ctx as u64) << 33) | ((index as u64) << 1) | sign)
    }

    pub fn context_id(self) -> u32 {
        (self.0 >> 33) as u32
    }

    pub fn index(self) -> usize {
        ((self.0 >> 1) & 0xffff_ffff) as usize
    }

    pub fn is_sign(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn kind(self) -> VarKind {
        if self.is_sign() {
            VarKind::Sign
        } else {
            VarKind::Laurent
        }
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Var({}:{})", self.context_id(), self.index())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarInfo {
    pub name: String,
    pub kind: VarKind,
    /// Exponents of this variable are stored as integer numerators over `den`.
    pub den: u32,
}

#[derive(Debug)]
struct ContextInner {
    id: u32,
    vars: Vec<VarInfo>,
    by_name: HashMap<String, usize>,
}

/// A declared set of coefficient variables. Cheap to clone.
#[derive(Debug, Clone)]
pub struct RingContext {
    inner: Arc<ContextInner>,
}

impl PartialEq for RingContext {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}

impl Eq for RingContext {}

#[derive(Debug, Default)]
pub struct ContextBuilder {
    vars: Vec<VarInfo>,
}

impl ContextBuilder {
    /// Declares a Laurent variable whose exponents may have denominator `den`.
    pub fn laurent(mut self, name: impl Into<String>, den: u32) -> Self {
        self.vars.push(VarInfo {
            name: name.into(),
            kind: VarKind::Laurent,
            den: den.max(1),
        });
        self
    }

    pub fn sign(mut self, name: impl Into<String>) -> Self {
        self.vars.push(VarInfo {
            name: name.into(),
            kind: VarKind::Sign,
            den: 1,
        });
        self
    }

    pub fn build(self) -> Result<RingContext> {
        let mut by_name = HashMap::with_capacity(self.vars.len());
        for (k, info) in self.vars.iter().enumerate() {
            if by_name.insert(info.name.clone(), k).is_some() {
                return Err(Error::DuplicateVariable(info.name.clone()));
            }
        }
        let id = NEXT_CONTEXT_ID.fetch_add(1, Ordering::Relaxed) & 0x7fff_ffff;
        Ok(RingContext {
            inner: Arc::new(ContextInner {
                id,
                vars: self.vars,
                by_name,
            }),
        })
    }
}

impl RingContext {
    pub fn builder() -> ContextBuilder {
        ContextBuilder::default()
    }

    pub fn id(&self) -> u32 {
        self.inner.id
    }

    pub fn len(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.vars.is_empty()
    }

    pub fn var(&self, name: &str) -> Option<VarId> {
        self.inner
            .by_name
            .get(name)
            .map(|&k| VarId::new(self.inner.id, k, self.inner.vars[k].kind))
    }

    pub fn expect_var(&self, name: &str) -> Result<VarId> {
        self.var(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn contains(&self, v: VarId) -> bool {
        v.context_id() == self.inner.id && v.index() < self.inner.vars.len()
    }

    pub fn info(&self, v: VarId) -> &VarInfo {
        debug_assert!(self.contains(v), "variable from a foreign context");
        &self.inner.vars[v.index()]
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.inner
            .vars
            .iter()
            .enumerate()
            .map(|(k, info)| VarId::new(self.inner.id, k, info.kind))
    }

    /// `name^exp`, checking the exponent against the declared denominator.
    pub fn monomial(&self, name: &str, exp: Ratio<i64>) -> Result<Monomial> {
        let v = self.expect_var(name)?;
        let info = self.info(v);
        let scaled = exp * Ratio::from_integer(info.den as i64);
        if !scaled.is_integer() {
            return Err(Error::ExponentDenominator {
                var: info.name.clone(),
                exp: exp.to_string(),
                den: info.den,
            });
        }
        Ok(Monomial::var_pow(v, *scaled.numer() as i32))
    }

    /// The variable itself as a unit, `name^1`.
    pub fn unit(&self, name: &str) -> Result<Unit> {
        Ok(Unit::from(self.monomial(name, Ratio::from_integer(1))?))
    }

    /// Exponent of `v` in `m` as an exact rational.
    pub fn exponent(&self, m: &Monomial, v: VarId) -> Ratio<i64> {
        Ratio::new(m.raw_exponent(v) as i64, self.info(v).den as i64)
    }
}
