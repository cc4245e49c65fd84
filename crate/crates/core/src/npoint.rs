//! The n-point hierarchy: strata with several zeros.
//!
//! Everything happens in the ring Q[h₁, h₂, …] first. The two-point kernel is
//!
//! ```text
//!   K(z₁, z₂) = z₁z₂·A / (1 − ½·z₁z₂·B),
//!   A = Σ_k (k+1)·h_k·s_k,   B = Σ_k h_k·s_k,   s_k = Σ_{a+b=k−1} z₁^a z₂^b,
//! ```
//!
//! and larger index sets are built by the splitting operator
//!
//! ```text
//!   D₂(f, g) = Σ_{k₁,k₂} [z₁^{k₁}z₂^{k₂}]K · ∂f/∂h_{k₁} · ∂g/∂h_{k₂},
//!   H_I = 1/(2(|I|−1)) · Σ_{I′⊔I″=I} D₂(H_{I′}, H_{I″})      (|I| > 2).
//! ```
//!
//! Finally a̲(μ) = ev([z^μ] H_{1..n}) / (2|μ|) with ev(h_k) = 2k·a̲((k)).
//! The substitution is applied only after coefficient extraction because
//! D₂ differentiates in the h variables.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::partition::Partition;
use crate::algebra::rational::{int, rat, Rational};
use crate::algebra::{HPoly, PolyEntry, TPoly, ZSeries, UNCAPPED};
use crate::error::{Error, Result};
use crate::minimal::MinimalTable;

/// Convention for the singleton series entering D₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OnePoint {
    /// H_{i} = Σ h_k z_i^{k−1}, so ∂H_{i}/∂h_k = z_i^{k−1}.
    Literal,
    /// H_{i} = ½ Σ h_k z_i^k, so ∂H_{i}/∂h_k = ½ z_i^k.
    HalfShift,
    /// H_{i} = Σ h_k z_i^k, so ∂H_{i}/∂h_k = z_i^k.
    Unit,
}

impl Default for OnePoint {
    /// The convention selected by [`calibrate`].
    fn default() -> Self {
        OnePoint::Unit
    }
}

impl OnePoint {
    pub const ALL: [OnePoint; 3] = [OnePoint::Literal, OnePoint::HalfShift, OnePoint::Unit];

    /// [z^k] of the singleton series.
    pub fn singleton_coeff(self, k: u32) -> HPoly {
        match self {
            OnePoint::Literal => HPoly::var(k + 1, UNCAPPED),
            OnePoint::HalfShift | OnePoint::Unit if k == 0 => HPoly::zero(UNCAPPED),
            OnePoint::HalfShift => HPoly::term(Partition::single(k), rat(1, 2), UNCAPPED),
            OnePoint::Unit => HPoly::var(k, UNCAPPED),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OnePoint::Literal => "literal",
            OnePoint::HalfShift => "half-shift",
            OnePoint::Unit => "unit",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        OnePoint::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown one-point convention {s:?} (literal, half-shift, unit)")))
    }
}

/// Two-point kernel truncated at z₁^{d₁} z₂^{d₂}.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel2 {
    series: ZSeries<HPoly>,
}

impl Kernel2 {
    pub fn caps(&self) -> (u32, u32) {
        (self.series.caps()[0], self.series.caps()[1])
    }

    pub fn series(&self) -> &ZSeries<HPoly> {
        &self.series
    }

    /// c_{k₁,k₂} = [z₁^{k₁} z₂^{k₂}] K. Errors if outside the caps.
    pub fn coeff(&self, k1: u32, k2: u32) -> Result<HPoly> {
        let (d1, d2) = self.caps();
        if k1 > d1 || k2 > d2 {
            return Err(Error::config(format!("kernel coefficient ({k1},{k2}) outside caps ({d1},{d2})")));
        }
        Ok(self.series.coeff(&[k1, k2]))
    }

    /// All coefficients as `{k1, k2, coeff}` records, sorted by (k1, k2).
    pub fn dump(&self) -> Vec<KernelEntry> {
        self.series.terms().map(|(e, c)| KernelEntry { k1: e[0], k2: e[1], coeff: c.to_entries() }).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelEntry {
    pub k1: u32,
    pub k2: u32,
    pub coeff: Vec<PolyEntry>,
}

pub fn two_point_kernel(d1: u32, d2: u32) -> Kernel2 {
    let caps = vec![d1, d2];
    let mut a = ZSeries::<HPoly>::zero(caps.clone(), UNCAPPED);
    let mut b = ZSeries::<HPoly>::zero(caps.clone(), UNCAPPED);
    for k in 1..(d1 + d2).max(1) {
        for i in 0..k {
            let exps = vec![i, k - 1 - i];
            a.add_term(exps.clone(), HPoly::term(Partition::single(k), int(k as i64 + 1), UNCAPPED));
            b.add_term(exps, HPoly::var(k, UNCAPPED));
        }
    }
    let mut z1z2 = ZSeries::zero(caps.clone(), UNCAPPED);
    z1z2.add_term(vec![1, 1], HPoly::one(UNCAPPED));
    let numerator = z1z2.mul(&a).expect("caps");
    let denominator = ZSeries::one(caps, UNCAPPED).sub(&z1z2.mul(&b).expect("caps").scale(&rat(1, 2))).expect("caps");
    let series = numerator.mul(&denominator.reciprocal().expect("unit constant term")).expect("caps");
    Kernel2 { series }
}

/// A series H_I over the variables z_i, i ∈ I (kept sorted).
#[derive(Clone, Debug, PartialEq)]
pub struct NPointSeries {
    indices: Vec<u32>,
    series: ZSeries<HPoly>,
}

impl NPointSeries {
    pub fn new(indices: Vec<u32>, series: ZSeries<HPoly>) -> Result<Self> {
        if indices.len() != series.nvars() {
            return Err(Error::config("index set and series arity differ"));
        }
        let mut order: Vec<usize> = (0..indices.len()).collect();
        order.sort_by_key(|&i| indices[i]);
        let sorted: Vec<u32> = order.iter().map(|&i| indices[i]).collect();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain(format!("repeated index in {indices:?}")));
        }
        Ok(NPointSeries { indices: sorted, series: series.permute(&order) })
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn series(&self) -> &ZSeries<HPoly> {
        &self.series
    }

    /// Coefficient at the exponents given per index (in sorted index order).
    pub fn coeff(&self, exps: &[u32]) -> HPoly {
        self.series.coeff(exps)
    }

    fn h_indices(&self) -> Vec<u32> {
        let mut seen = std::collections::BTreeSet::new();
        for (_, c) in self.series.terms() {
            for (m, _) in c.terms() {
                seen.extend(m.parts().iter().copied());
            }
        }
        seen.into_iter().collect()
    }
}

/// The configured singleton series H_{i} up to z_i^{cap}.
pub fn one_point_series(index: u32, cap: u32, conv: OnePoint) -> NPointSeries {
    let mut s = ZSeries::zero(vec![cap], UNCAPPED);
    for k in 0..=cap {
        s.add_term(vec![k], conv.singleton_coeff(k));
    }
    NPointSeries { indices: vec![index], series: s }
}

/// D₂(f, g) on disjoint index sets.
pub fn d2_pair(f: &NPointSeries, g: &NPointSeries, kernel: &Kernel2) -> Result<NPointSeries> {
    if f.indices.iter().any(|i| g.indices.contains(i)) {
        return Err(Error::domain(format!("index sets {:?} and {:?} overlap", f.indices, g.indices)));
    }
    let mut indices = f.indices.clone();
    indices.extend_from_slice(&g.indices);
    let mut caps = f.series.caps().to_vec();
    caps.extend_from_slice(g.series.caps());
    let mut out = ZSeries::zero(caps, UNCAPPED);
    let ks1 = f.h_indices();
    let ks2 = g.h_indices();
    let dg: BTreeMap<u32, ZSeries<HPoly>> =
        ks2.iter().map(|&k| (k, g.series.map_coeffs(|c| c.derivative(k)))).collect();
    for &k1 in &ks1 {
        let df = f.series.map_coeffs(|c| c.derivative(k1));
        for &k2 in &ks2 {
            let c = kernel.coeff(k1, k2)?;
            if c.is_zero() {
                continue;
            }
            out = out.add(&df.tensor(&dg[&k2]).scale_by(&c))?;
        }
    }
    NPointSeries::new(indices, out)
}

/// H_I as a full truncated series, with caps per index (same order as
/// `indices`). Exponential in |I|; intended for audits and small sets.
pub fn npoint_series(indices: &[u32], caps: &[u32], conv: OnePoint) -> Result<NPointSeries> {
    if indices.is_empty() || indices.len() != caps.len() {
        return Err(Error::config("npoint_series needs one cap per index"));
    }
    if indices.len() > 16 {
        return Err(Error::config("npoint_series supports at most 16 indices"));
    }
    let bound: u32 = caps.iter().sum::<u32>() + 2;
    let kernel = two_point_kernel(bound, bound);
    let n = indices.len();
    let mut memo: BTreeMap<u32, NPointSeries> = BTreeMap::new();
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let value = match members.len() {
            1 => one_point_series(indices[members[0]], caps[members[0]], conv),
            2 => {
                let (i, j) = (members[0], members[1]);
                let s = kernel.series().truncate(vec![caps[i], caps[j]]);
                NPointSeries::new(vec![indices[i], indices[j]], s)?
            }
            size => {
                let member_caps: Vec<u32> = members.iter().map(|&i| caps[i]).collect();
                let member_idx: Vec<u32> = members.iter().map(|&i| indices[i]).collect();
                let mut acc = NPointSeries::new(member_idx, ZSeries::zero(member_caps, UNCAPPED))?;
                let mut sub = (mask - 1) & mask;
                while sub > 0 {
                    let rest = mask ^ sub;
                    let term = d2_pair(&memo[&sub], &memo[&rest], &kernel)?;
                    acc.series = acc.series.add(&term.series)?;
                    sub = (sub - 1) & mask;
                }
                acc.series = acc.series.scale(&rat(1, 2 * (size as i64 - 1)));
                acc
            }
        };
        memo.insert(mask, value);
    }
    Ok(memo.remove(&((1 << n) - 1)).expect("full set computed"))
}

/// [z₁^{μ₁}⋯z_n^{μ_n}] H_{1..n}, computed on single coefficients.
///
/// D₂ acts on disjoint variables, so the top coefficient of H_S only needs
/// the top coefficients of H_{S′} and H_{S″}. Each unordered split is
/// evaluated once and doubled, which equals the ordered sum because the
/// kernel is symmetric.
pub fn npoint_coefficient(mu: &[u32], conv: OnePoint, kernel: &Kernel2) -> Result<HPoly> {
    let n = mu.len();
    if n == 0 {
        return Err(Error::domain("empty zero profile"));
    }
    if n > 20 {
        return Err(Error::config("at most 20 zeros supported"));
    }
    let full = (1u32 << n) - 1;
    let mut top: Vec<HPoly> = vec![HPoly::zero(UNCAPPED); 1 << n];
    // derivs[mask] = (h index, ∂top/∂h) for every index present.
    let mut derivs: Vec<Vec<(u32, HPoly)>> = vec![Vec::new(); 1 << n];
    for mask in 1..=full {
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let value = match members.len() {
            1 => conv.singleton_coeff(mu[members[0]]),
            2 => kernel.coeff(mu[members[0]], mu[members[1]])?,
            size => {
                let low = mask & mask.wrapping_neg();
                let mut acc = HPoly::zero(UNCAPPED);
                let mut sub = (mask - 1) & mask;
                while sub > 0 {
                    if sub & low != 0 {
                        let rest = mask ^ sub;
                        for (k1, d1) in &derivs[sub as usize] {
                            for (k2, d2) in &derivs[rest as usize] {
                                let c = kernel.coeff(*k1, *k2)?;
                                if c.is_zero() {
                                    continue;
                                }
                                acc.add_assign_ref(&(&c * &(d1 * d2)));
                            }
                        }
                    }
                    sub = (sub - 1) & mask;
                }
                // ×2 for the mirrored splits, ÷ 2(|S|−1).
                acc.scale(&rat(1, size as i64 - 1))
            }
        };
        let mut ds = Vec::new();
        for k in distinct_indices(&value) {
            ds.push((k, value.derivative(k)));
        }
        derivs[mask as usize] = ds;
        top[mask as usize] = value;
    }
    Ok(std::mem::replace(&mut top[full as usize], HPoly::zero(UNCAPPED)))
}

fn distinct_indices(p: &HPoly) -> Vec<u32> {
    let mut seen = std::collections::BTreeSet::new();
    for (m, _) in p.terms() {
        seen.extend(m.parts().iter().copied());
    }
    seen.into_iter().collect()
}

/// The substitution h_k ↦ 2k·a̲((k)).
#[derive(Clone, Debug)]
pub struct EvMap<'a> {
    table: &'a MinimalTable,
}

impl<'a> EvMap<'a> {
    pub fn new(table: &'a MinimalTable) -> Self {
        EvMap { table }
    }

    pub fn image(&self, k: u32) -> Result<TPoly> {
        let a = self.table.get(k).map_err(|_| {
            Error::config(format!("evaluating h{k} needs max_k >= {k} (table has max_k = {})", self.table.max_k()))
        })?;
        Ok(a.scale(&int(2 * k as i64)))
    }

    pub fn apply(&self, p: &HPoly) -> Result<TPoly> {
        let cap = self.table.max_weight();
        p.evaluate(|k| self.image(k), cap)
    }
}

/// Evaluates a̲(μ) for arbitrary zero profiles, caching the kernel.
pub struct NPointEngine {
    conv: OnePoint,
    kernel: Mutex<Option<Arc<Kernel2>>>,
}

impl Default for NPointEngine {
    fn default() -> Self {
        Self::new(OnePoint::default())
    }
}

impl NPointEngine {
    pub fn new(conv: OnePoint) -> Self {
        NPointEngine { conv, kernel: Mutex::new(None) }
    }

    pub fn convention(&self) -> OnePoint {
        self.conv
    }

    /// A kernel with both caps at least `d`.
    pub fn kernel(&self, d: u32) -> Arc<Kernel2> {
        let mut slot = self.kernel.lock().expect("kernel cache poisoned");
        match slot.as_ref() {
            Some(k) if k.caps().0 >= d => k.clone(),
            _ => {
                let k = Arc::new(two_point_kernel(d, d));
                *slot = Some(k.clone());
                k
            }
        }
    }

    /// [z^μ] H_{1..n} in the h-ring.
    pub fn top_coefficient(&self, mu: &[u32]) -> Result<HPoly> {
        if mu.contains(&0) {
            return Err(Error::domain(format!("zero orders must be >= 1: {mu:?}")));
        }
        let bound = mu.iter().sum::<u32>() + 2;
        npoint_coefficient(mu, self.conv, &self.kernel(bound))
    }

    /// a̲(μ) truncated to the table's weight cap.
    pub fn a_poly(&self, mu: &[u32], table: &MinimalTable) -> Result<TPoly> {
        match mu {
            [] => Err(Error::domain("empty zero profile")),
            [0, ..] | [.., 0] => Err(Error::domain(format!("zero orders must be >= 1: {mu:?}"))),
            [k] => table.get(*k).cloned(),
            _ => {
                let top = self.top_coefficient(mu)?;
                let total: u32 = mu.iter().sum();
                let ev = EvMap::new(table).apply(&top)?;
                Ok(ev.scale(&Rational::new(BigInt::one(), BigInt::from(2 * total))))
            }
        }
    }
}

/// a̲(μ) with the default engine.
pub fn a_poly(mu: &[u32], table: &MinimalTable) -> Result<TPoly> {
    NPointEngine::default().a_poly(mu, table)
}

/// Profiles on which adding a marked point is checked: a̲(μ ∪ (1)) must
/// equal |μ|·a̲(μ), since a zero of order 0 leaves the volume unchanged.
pub const MARKED_POINT_PROBES: [&[u32]; 6] = [&[1, 1], &[2, 1], &[2, 2], &[3, 2], &[2, 2, 1], &[2, 2, 2]];

#[derive(Clone, Debug, PartialEq)]
pub struct CandidateOutcome {
    pub convention: OnePoint,
    /// a̲(2,2,2) under this convention.
    pub value: TPoly,
    pub matches_target: bool,
    /// Probes (from [`MARKED_POINT_PROBES`]) that violate marked-point invariance.
    pub marked_point_failures: Vec<Vec<u32>>,
}

/// Outcome of matching the singleton convention against the reference
/// three-point relation a̲(2,2,2) = 3·a̲(3,2) + a̲((1))·a̲(2,1).
#[derive(Clone, Debug, PartialEq)]
pub struct Calibration {
    pub target: TPoly,
    pub candidates: Vec<CandidateOutcome>,
    /// Convention that reproduced the target, if any.
    pub matched: Option<OnePoint>,
    /// Convention in force afterwards: the match if there is one, else the
    /// unique candidate passing every marked-point probe, else half-shift.
    pub locked: OnePoint,
}

impl Calibration {
    pub fn candidate(&self, conv: OnePoint) -> &CandidateOutcome {
        self.candidates.iter().find(|c| c.convention == conv).expect("all conventions tried")
    }
}

fn marked_point_failures(engine: &NPointEngine, table: &MinimalTable) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for &mu in &MARKED_POINT_PROBES {
        let base = engine.a_poly(mu, table)?;
        let mut with_point = mu.to_vec();
        with_point.push(1);
        let total: u32 = mu.iter().sum();
        if engine.a_poly(&with_point, table)? != base.scale(&int(total as i64)) {
            out.push(mu.to_vec());
        }
    }
    Ok(out)
}

/// The literal convention reaches h_{|μ|}, so the table needs max_k >= 7.
pub fn calibrate(table: &MinimalTable) -> Result<Calibration> {
    // Two-point values do not depend on the singleton convention.
    let pair = NPointEngine::default();
    let a32 = pair.a_poly(&[3, 2], table)?;
    let a21 = pair.a_poly(&[2, 1], table)?;
    let target = &a32.scale(&int(3)) + &(table.get(1)? * &a21);
    let mut candidates = Vec::new();
    for conv in OnePoint::ALL {
        let engine = NPointEngine::new(conv);
        let value = engine.a_poly(&[2, 2, 2], table)?;
        candidates.push(CandidateOutcome {
            convention: conv,
            matches_target: value == target,
            value,
            marked_point_failures: marked_point_failures(&engine, table)?,
        });
    }
    let matched = candidates.iter().find(|c| c.matches_target).map(|c| c.convention);
    let consistent: Vec<OnePoint> =
        candidates.iter().filter(|c| c.marked_point_failures.is_empty()).map(|c| c.convention).collect();
    let locked = match (matched, consistent.as_slice()) {
        (Some(c), _) => c,
        (None, [only]) => *only,
        _ => OnePoint::HalfShift,
    };
    Ok(Calibration { target, candidates, matched, locked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimal::solve_minimal;

    fn h(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn hp(terms: &[(&[u32], Rational)]) -> HPoly {
        let mut p = HPoly::zero(UNCAPPED);
        for (m, c) in terms {
            p.add_term(h(m), c.clone());
        }
        p
    }

    #[test]
    fn kernel_low_coefficients() {
        let k = two_point_kernel(4, 4);
        assert_eq!(k.coeff(1, 1).unwrap(), hp(&[(&[1], int(2))]));
        assert_eq!(k.coeff(2, 1).unwrap(), hp(&[(&[2], int(3))]));
        assert_eq!(k.coeff(2, 2).unwrap(), hp(&[(&[3], int(4)), (&[1, 1], int(1))]));
        assert_eq!(k.coeff(3, 2).unwrap(), hp(&[(&[4], int(5)), (&[2, 1], rat(5, 2))]));
        assert_eq!(k.coeff(4, 2).unwrap(), hp(&[(&[5], int(6)), (&[3, 1], int(3)), (&[2, 2], rat(3, 2))]));
        assert!(k.coeff(0, 3).unwrap().is_zero());
        assert!(k.coeff(5, 1).is_err());
    }

    #[test]
    fn kernel_is_symmetric_and_graded() {
        let k = two_point_kernel(6, 6);
        for a in 0..=6 {
            for b in 0..=6 {
                let c = k.coeff(a, b).unwrap();
                assert_eq!(c, k.coeff(b, a).unwrap());
                for (m, _) in c.terms() {
                    assert_eq!(HPoly::monomial_weight(m), a + b, "({a},{b}) {m}");
                    assert!(m.parts()[0] < a + b);
                }
            }
        }
    }

    #[test]
    fn two_point_rows() {
        let t = solve_minimal(6, 6).unwrap();
        let a = |k: u32| t.get(k).unwrap().clone();
        let e = NPointEngine::default();
        let want22 = &a(3).scale(&int(3)) + &(&a(1) * &a(1)).scale(&rat(1, 2));
        assert_eq!(e.a_poly(&[2, 2], &t).unwrap(), want22);
        let want32 = &a(4).scale(&int(4)) + &(&a(2) * &a(1)).scale(&int(2));
        assert_eq!(e.a_poly(&[3, 2], &t).unwrap(), want32);
        assert_eq!(e.a_poly(&[1, 1], &t).unwrap(), a(1));
        assert_eq!(e.a_poly(&[2, 1], &t).unwrap(), a(2).scale(&int(2)));
        let want42 = &(&a(5).scale(&int(5)) + &(&a(3) * &a(1)).scale(&int(3))) + &(&a(2) * &a(2)).scale(&int(2));
        assert_eq!(e.a_poly(&[4, 2], &t).unwrap(), want42);
    }

    #[test]
    fn full_series_agrees_with_coefficient_route() {
        for conv in OnePoint::ALL {
            let s = npoint_series(&[1, 2, 3], &[2, 2, 1], conv).unwrap();
            let kernel = two_point_kernel(8, 8);
            for e in [[2, 2, 1], [1, 2, 1], [2, 1, 1], [1, 1, 1]] {
                let direct = npoint_coefficient(&e, conv, &kernel).unwrap();
                assert_eq!(s.coeff(&e), direct, "{conv:?} {e:?}");
            }
        }
    }

    #[test]
    fn d2_rejects_overlap_and_kills_constants() {
        let k = two_point_kernel(4, 4);
        let f = one_point_series(1, 2, OnePoint::HalfShift);
        assert!(matches!(d2_pair(&f, &f, &k), Err(Error::Domain(_))));
        let c = NPointSeries::new(vec![2], ZSeries::one(vec![2], UNCAPPED)).unwrap();
        assert!(d2_pair(&f, &c, &k).unwrap().series().is_zero());
    }

    #[test]
    fn d2_is_symmetric_under_swap() {
        let k = two_point_kernel(6, 6);
        let f = one_point_series(1, 2, OnePoint::HalfShift);
        let g = npoint_series(&[2, 3], &[2, 1], OnePoint::HalfShift).unwrap();
        let fg = d2_pair(&f, &g, &k).unwrap();
        let gf = d2_pair(&g, &f, &k).unwrap();
        assert_eq!(fg, gf);
    }

    #[test]
    fn series_symmetric_under_relabelling() {
        let s = npoint_series(&[1, 2, 3], &[2, 2, 2], OnePoint::HalfShift).unwrap();
        for (e, c) in s.series().terms() {
            let swapped = [e[1], e[0], e[2]];
            assert_eq!(&s.coeff(&swapped), c);
            let rotated = [e[2], e[0], e[1]];
            assert_eq!(&s.coeff(&rotated), c);
        }
    }

    #[test]
    fn marked_points_leave_volumes_unchanged() {
        // a̲(μ ∪ (1)) = |μ|·a̲(μ), so Vol H(0,0,0) = Vol H(0) and so on.
        let t = solve_minimal(6, 4).unwrap();
        let e = NPointEngine::new(OnePoint::Unit);
        assert_eq!(e.a_poly(&[1, 1, 1], &t).unwrap(), t.get(1).unwrap().scale(&int(2)));
        assert_eq!(e.a_poly(&[1, 1, 1, 1], &t).unwrap(), t.get(1).unwrap().scale(&int(6)));
        let half = NPointEngine::new(OnePoint::HalfShift).a_poly(&[1, 1, 1], &t).unwrap();
        assert_eq!(half, t.get(1).unwrap().clone());
    }

    #[test]
    fn calibration_locks_marked_point_consistent_convention() {
        let t = solve_minimal(7, 6).unwrap();
        let c = calibrate(&t).unwrap();
        assert_eq!(c.matched, None);
        assert_eq!(c.locked, OnePoint::Unit);
        assert_eq!(c.locked, OnePoint::default());
        assert!(c.candidate(OnePoint::Unit).marked_point_failures.is_empty());
        assert!(!c.candidate(OnePoint::HalfShift).marked_point_failures.is_empty());
        assert!(!c.candidate(OnePoint::Literal).marked_point_failures.is_empty());
        // a̲(2,2,2): the target has 72·t5, the candidates 60·t5 (half-shift)
        // and 120·t5 (unit).
        let t5 = Partition::single(5);
        assert_eq!(c.target.coeff(&t5), int(72));
        assert_eq!(c.candidate(OnePoint::HalfShift).value.coeff(&t5), int(60));
        assert_eq!(c.candidate(OnePoint::Unit).value.coeff(&t5), int(120));
    }

    #[test]
    fn convention_names_round_trip() {
        for c in OnePoint::ALL {
            assert_eq!(OnePoint::parse(c.name()).unwrap(), c);
        }
        assert!(OnePoint::parse("other").is_err());
    }

    #[test]
    fn ev_caps_are_reported() {
        let t = solve_minimal(3, 4).unwrap();
        let err = NPointEngine::default().a_poly(&[4, 2], &t).unwrap_err();
        assert!(err.to_string().contains("max_k >= 5"), "{err}");
    }
}
