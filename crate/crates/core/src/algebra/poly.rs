//! Sparse polynomials keyed by partitions.
//!
//! A monomial ∏ x_{j} is stored as the partition of its variable indices, so
//! `t₂²t₃` is the key `(3,2,2)`. Each variable family carries a grading; the
//! weight cap drops every monomial whose graded weight exceeds it.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::partition::Partition;
use super::rational::{format_rational, int, Rational};
use crate::error::{Error, Result};

/// Variable family of a polynomial ring.
pub trait Grading: Copy + Default + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    const SYMBOL: &'static str;
    fn weight(index: u32) -> u32;
}

/// t₂, t₃, … graded by index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TVar;

/// h₁, h₂, … graded by index + 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HVar;

impl Grading for TVar {
    const SYMBOL: &'static str = "t";
    fn weight(index: u32) -> u32 {
        index
    }
}

impl Grading for HVar {
    const SYMBOL: &'static str = "h";
    fn weight(index: u32) -> u32 {
        index + 1
    }
}

/// Cap value meaning "no truncation".
pub const UNCAPPED: u32 = u32::MAX;

#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly<V: Grading> {
    cap: u32,
    terms: BTreeMap<Partition, Rational>,
    _grading: PhantomData<V>,
}

/// Polynomial in the residue variables t₂, t₃, ….
pub type TPoly = SparsePoly<TVar>;
/// Polynomial in the hierarchy variables h₁, h₂, ….
pub type HPoly = SparsePoly<HVar>;

impl<V: Grading> SparsePoly<V> {
    pub fn zero(cap: u32) -> Self {
        SparsePoly { cap, terms: BTreeMap::new(), _grading: PhantomData }
    }

    pub fn constant(c: Rational, cap: u32) -> Self {
        Self::term(Partition::empty(), c, cap)
    }

    pub fn one(cap: u32) -> Self {
        Self::constant(Rational::one(), cap)
    }

    /// A single monomial; dropped if it exceeds the cap.
    pub fn term(monomial: Partition, c: Rational, cap: u32) -> Self {
        let mut p = Self::zero(cap);
        p.add_term(monomial, c);
        p
    }

    /// The variable with the given index.
    pub fn var(index: u32, cap: u32) -> Self {
        Self::term(Partition::single(index), Rational::one(), cap)
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn monomial_weight(m: &Partition) -> u32 {
        m.parts().iter().map(|&j| V::weight(j)).sum()
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

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, monomial: &Partition) -> Rational {
        self.terms.get(monomial).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Partition::empty())
    }

    /// Adds `c·monomial`, honouring the cap and removing cancelled terms.
    pub fn add_term(&mut self, monomial: Partition, c: Rational) {
        if c.is_zero() || Self::monomial_weight(&monomial) > self.cap {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, k: &Rational) {
        if k.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * k);
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero(self.cap);
        out.add_scaled(self, k);
        out
    }

    /// Product truncated to the common cap.
    ///
    /// Panics if the caps differ; use [`SparsePoly::checked_mul`] where the
    /// operands come from different sources.
    pub fn mul_ref(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("polynomial weight caps differ")
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cap != other.cap {
            return Err(Error::config(format!("mismatched weight caps {} and {}", self.cap, other.cap)));
        }
        let mut out = Self::zero(self.cap);
        for (ma, ca) in &self.terms {
            let wa = Self::monomial_weight(ma);
            for (mb, cb) in &other.terms {
                if wa.saturating_add(Self::monomial_weight(mb)) > self.cap {
                    continue;
                }
                out.add_term(ma.union(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.cap);
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Re-truncates to a different cap (monomials above it are dropped).
    pub fn with_cap(&self, cap: u32) -> Self {
        let mut out = Self::zero(cap);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Formal partial derivative by the variable with index `var`.
    ///
    /// The result keeps the same cap; callers that know the weight drop use
    /// [`SparsePoly::with_cap`].
    pub fn derivative(&self, var: u32) -> Self {
        let mut out = Self::zero(self.cap);
        for (m, c) in &self.terms {
            let mult = m.count(var);
            if mult == 0 {
                continue;
            }
            let rest = m.remove_one(var).expect("variable present");
            out.add_term(rest, c * int(mult as i64));
        }
        out
    }

    /// Largest variable index occurring in any monomial.
    pub fn max_index(&self) -> u32 {
        self.terms.keys().filter_map(|m| m.parts().first().copied()).max().unwrap_or(0)
    }

    /// Substitutes a polynomial for every variable (a ring morphism).
    pub fn evaluate<W: Grading>(
        &self,
        image: impl Fn(u32) -> Result<SparsePoly<W>>,
        cap: u32,
    ) -> Result<SparsePoly<W>> {
        let mut cache: BTreeMap<u32, SparsePoly<W>> = BTreeMap::new();
        let mut out = SparsePoly::<W>::zero(cap);
        for (m, c) in &self.terms {
            let mut prod = SparsePoly::<W>::constant(c.clone(), cap);
            for &j in m.parts() {
                let img = match cache.entry(j) {
                    Entry::Occupied(e) => e.into_mut(),
                    Entry::Vacant(e) => e.insert(image(j)?.with_cap(cap)),
                };
                prod = prod.mul_ref(img);
                if prod.is_zero() {
                    break;
                }
            }
            out.add_assign_ref(&prod);
        }
        Ok(out)
    }

    /// Serializable view: `[{profile, coeff}]` sorted by profile.
    pub fn to_entries(&self) -> Vec<PolyEntry> {
        self.terms.iter().map(|(m, c)| PolyEntry { profile: m.clone(), coeff: c.clone() }).collect()
    }

    pub fn from_entries(entries: &[PolyEntry], cap: u32) -> Self {
        let mut out = Self::zero(cap);
        for e in entries {
            out.add_term(e.profile.clone(), e.coeff.clone());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyEntry {
    pub profile: Partition,
    #[serde(with = "super::rational::serde_str")]
    pub coeff: Rational,
}

impl<V: Grading> fmt::Debug for SparsePoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<V: Grading> fmt::Display for SparsePoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let c = c.abs();
            let mono: Vec<String> = m
                .multiplicities()
                .iter()
                .rev()
                .map(
                    |(&j, &e)| {
                        if e == 1 {
                            format!("{}{}", V::SYMBOL, j)
                        } else {
                            format!("{}{}^{}", V::SYMBOL, j, e)
                        }
                    },
                )
                .collect();
            if mono.is_empty() {
                write!(f, "{}", format_rational(&c))?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&c), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<V: Grading> Add for &SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn add(self, rhs: Self) -> SparsePoly<V> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<V: Grading> Sub for &SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn sub(self, rhs: Self) -> SparsePoly<V> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl<V: Grading> Mul for &SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn mul(self, rhs: Self) -> SparsePoly<V> {
        self.mul_ref(rhs)
    }
}

impl<V: Grading> Neg for &SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn neg(self) -> SparsePoly<V> {
        self.scale(&-Rational::one())
    }
}
