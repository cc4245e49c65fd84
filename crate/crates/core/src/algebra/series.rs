//! Truncated formal power series in several variables.
//!
//! Each variable has its own degree cap; every product drops exponents above
//! the caps, so all arithmetic is exact modulo (z₁^{d₁+1}, …, z_n^{d_n+1}).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::poly::{Grading, SparsePoly};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Coefficient ring of a [`ZSeries`].
///
/// `Ctx` carries whatever a zero or one needs to be built (the weight cap
/// for polynomial rings).
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    type Ctx: Clone + PartialEq + fmt::Debug;

    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn from_rational(q: Rational, ctx: &Self::Ctx) -> Self;
    fn ctx(&self) -> Self::Ctx;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, k: &Rational) -> Self;
    /// Multiplicative inverse if `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;
}

impl Coeff for Rational {
    type Ctx = ();

    fn zero_in(_: &()) -> Self {
        Rational::zero()
    }
    fn one_in(_: &()) -> Self {
        Rational::one()
    }
    fn from_rational(q: Rational, _: &()) -> Self {
        q
    }
    fn ctx(&self) {}
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, k: &Rational) -> Self {
        self * k
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl<V: Grading> Coeff for SparsePoly<V> {
    type Ctx = u32;

    fn zero_in(cap: &u32) -> Self {
        SparsePoly::zero(*cap)
    }
    fn one_in(cap: &u32) -> Self {
        SparsePoly::one(*cap)
    }
    fn from_rational(q: Rational, cap: &u32) -> Self {
        SparsePoly::constant(q, *cap)
    }
    fn ctx(&self) -> u32 {
        self.cap()
    }
    fn is_zero(&self) -> bool {
        SparsePoly::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        self.add_assign_ref(other);
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn scale(&self, k: &Rational) -> Self {
        SparsePoly::scale(self, k)
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.len() != 1 {
            return None;
        }
        let c = self.constant_term();
        (!Zero::is_zero(&c)).then(|| SparsePoly::constant(c.recip(), self.cap()))
    }
}

#[derive(Clone, PartialEq)]
pub struct ZSeries<R: Coeff> {
    caps: Vec<u32>,
    ctx: R::Ctx,
    terms: BTreeMap<Vec<u32>, R>,
}

impl<R: Coeff> ZSeries<R> {
    pub fn zero(caps: Vec<u32>, ctx: R::Ctx) -> Self {
        ZSeries { caps, ctx, terms: BTreeMap::new() }
    }

    pub fn one(caps: Vec<u32>, ctx: R::Ctx) -> Self {
        let n = caps.len();
        let one = R::one_in(&ctx);
        let mut s = Self::zero(caps, ctx);
        s.add_term(vec![0; n], one);
        s
    }

    /// Univariate series with coefficients `coeffs[i]` at `z^i`.
    pub fn univariate(cap: u32, ctx: R::Ctx, coeffs: impl IntoIterator<Item = R>) -> Self {
        let mut s = Self::zero(vec![cap], ctx);
        for (i, c) in coeffs.into_iter().enumerate() {
            s.add_term(vec![i as u32], c);
        }
        s
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    pub fn ring(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &R)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn in_caps(&self, exps: &[u32]) -> bool {
        exps.iter().zip(&self.caps).all(|(e, c)| e <= c)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: R) {
        assert_eq!(exps.len(), self.caps.len(), "exponent arity mismatch");
        if c.is_zero() || !self.in_caps(&exps) {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> R {
        self.terms.get(exps).cloned().unwrap_or_else(|| R::zero_in(&self.ctx))
    }

    pub fn constant_term(&self) -> R {
        self.coeff(&vec![0; self.caps.len()])
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.caps != other.caps || self.ctx != other.ctx {
            return Err(Error::config(format!(
                "series caps differ: {:?}/{:?} vs {:?}/{:?}",
                self.caps, self.ctx, other.caps, other.ctx
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero(self.caps.clone(), self.ctx.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.scale(k));
        }
        out
    }

    pub fn scale_by(&self, k: &R) -> Self {
        let mut out = Self::zero(self.caps.clone(), self.ctx.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.mul(k));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.caps.clone(), self.ctx.clone());
        let mut exps = vec![0; self.caps.len()];
        for (ea, ca) in &self.terms {
            'inner: for (eb, cb) in &other.terms {
                for i in 0..exps.len() {
                    exps[i] = ea[i] + eb[i];
                    if exps[i] > self.caps[i] {
                        continue 'inner;
                    }
                }
                out.add_term(exps.clone(), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.caps.clone(), self.ctx.clone());
        for _ in 0..e {
            acc = acc.mul(self).expect("same caps");
        }
        acc
    }

    /// Two-sided inverse up to the caps.
    ///
    /// Requires the constant coefficient to be a unit of the coefficient
    /// ring; otherwise this is a domain error.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.constant_term();
        let inv0 = c0.unit_inverse().ok_or_else(|| Error::domain("series reciprocal needs a unit constant term"))?;
        // s = c0 (1 - u)  =>  1/s = inv0 · Σ u^j, and u^j vanishes once j
        // exceeds the total degree bound.
        let normalised = self.scale_by(&inv0);
        let one = Self::one(self.caps.clone(), self.ctx.clone());
        let u = one.sub(&normalised)?;
        let total: u32 = self.caps.iter().sum();
        let mut acc = one.clone();
        let mut power = one;
        for _ in 0..total {
            power = power.mul(&u)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc.scale_by(&inv0))
    }

    /// Applies `f` to every coefficient (dropping those that become zero).
    pub fn map_coeffs(&self, f: impl Fn(&R) -> R) -> Self {
        let mut out = Self::zero(self.caps.clone(), self.ctx.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Product of series in disjoint variable sets: the result has the
    /// variables of `self` followed by those of `other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut caps = self.caps.clone();
        caps.extend_from_slice(&other.caps);
        let mut out = Self::zero(caps, self.ctx.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = ea.clone();
                e.extend_from_slice(eb);
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    /// Reorders variables: variable `i` of the result is variable `perm[i]`
    /// of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.caps.len());
        let caps = perm.iter().map(|&p| self.caps[p]).collect();
        let mut out = Self::zero(caps, self.ctx.clone());
        for (e, c) in &self.terms {
            out.add_term(perm.iter().map(|&p| e[p]).collect(), c.clone());
        }
        out
    }

    /// Re-truncates to smaller caps.
    pub fn truncate(&self, caps: Vec<u32>) -> Self {
        assert_eq!(caps.len(), self.caps.len());
        let mut out = Self::zero(caps, self.ctx.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<R: Coeff> fmt::Debug for ZSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ZSeries").field("caps", &self.caps).field("terms", &self.terms).finish()
    }
}
