//! Residue flows ∂/∂t_m on the minimal-strata polynomials.
//!
//! With v(x) = Σ_j j²·a̲((j))·x^{j+1} the two recursions read
//!
//! ```text
//!   ∂a̲((k))/∂t₂ = [x^{k−1}] 1/(1 − v)
//!   ∂a̲((k))/∂t_m = [x^{k−1}] (Σ_{k₀} k₀·∂a̲((k₀))/∂t_{m−1}·x^{k₀}) / (1 − v)    (m ≥ 3)
//! ```
//!
//! which is the sum over r ≥ 0 and compositions k₀ + k₁ + … + k_r = k − r − 1
//! packaged as a geometric series. Only a̲((j)) with j < k ever enters the
//! value at k, so the flows are an independent check on the genus induction.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::partition::Partition;
use crate::algebra::rational::{int, Rational};
use crate::algebra::{TPoly, ZSeries};
use crate::error::{Error, Result};
use crate::minimal::MinimalTable;

pub struct FlowContext<'a> {
    table: &'a MinimalTable,
    max_k: u32,
    max_weight: u32,
    // memo[m] = [∂a̲((k))/∂t_m for k = 1..=K], filled at most once per m.
    memo: Vec<OnceLock<Vec<TPoly>>>,
}

impl<'a> FlowContext<'a> {
    /// Context using the table's own caps.
    pub fn new(table: &'a MinimalTable) -> Self {
        Self::with_caps(table, table.max_k(), table.max_weight()).expect("table caps")
    }

    pub fn with_caps(table: &'a MinimalTable, max_k: u32, max_weight: u32) -> Result<Self> {
        if max_k > table.max_k() || max_weight > table.max_weight() {
            return Err(Error::config(format!(
                "flow caps (K={max_k}, W={max_weight}) exceed table caps (K={}, W={})",
                table.max_k(),
                table.max_weight()
            )));
        }
        if max_k == 0 {
            return Err(Error::config("flow max_k must be at least 1"));
        }
        let memo = (0..=max_weight).map(|_| OnceLock::new()).collect();
        Ok(FlowContext { table, max_k, max_weight, memo })
    }

    pub fn max_k(&self) -> u32 {
        self.max_k
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn t2_flow(&self, k: u32) -> Result<TPoly> {
        self.check_k(k)?;
        if self.max_weight < 2 {
            return Err(Error::domain(format!("t2 flow needs weight cap >= 2, have {}", self.max_weight)));
        }
        Ok(self.column(2)[k as usize - 1].clone())
    }

    pub fn tm_flow(&self, k: u32, m: u32) -> Result<TPoly> {
        self.check_k(k)?;
        if m < 3 || m > self.max_weight {
            return Err(Error::domain(format!("flow index m = {m} outside 3..={}", self.max_weight)));
        }
        Ok(self.column(m)[k as usize - 1].clone())
    }

    /// ∂a̲((k))/∂t_m via the flow recursions, for any 2 ≤ m ≤ W.
    pub fn flow(&self, k: u32, m: u32) -> Result<TPoly> {
        if m == 2 {
            self.t2_flow(k)
        } else {
            self.tm_flow(k, m)
        }
    }

    fn check_k(&self, k: u32) -> Result<()> {
        if k == 0 || k > self.max_k {
            return Err(Error::domain(format!("flow index k = {k} outside 1..={}", self.max_k)));
        }
        Ok(())
    }

    fn a(&self, k: u32, cap: u32) -> TPoly {
        self.table.get(k).expect("k within table caps").with_cap(cap)
    }

    /// 1/(1 − v) at coefficient cap `cap`, x-degree up to K − 1.
    fn geometric(&self, cap: u32) -> ZSeries<TPoly> {
        let deg = self.max_k - 1;
        let mut one_minus_v = ZSeries::one(vec![deg], cap);
        for j in 1..self.max_k {
            if j + 1 > deg {
                break;
            }
            let coeff = self.a(j, cap).scale(&-int((j * j) as i64));
            one_minus_v.add_term(vec![j + 1], coeff);
        }
        one_minus_v.reciprocal().expect("unit constant term")
    }

    fn column(&self, m: u32) -> &[TPoly] {
        self.memo[m as usize].get_or_init(|| self.compute_column(m))
    }

    fn compute_column(&self, m: u32) -> Vec<TPoly> {
        let cap = self.max_weight - m;
        let deg = self.max_k - 1;
        let g = self.geometric(cap);
        let series = if m == 2 {
            g
        } else {
            let lower = self.column(m - 1);
            let mut seed = ZSeries::zero(vec![deg], cap);
            for k0 in 1..=deg {
                let d = lower[k0 as usize - 1].with_cap(cap);
                seed.add_term(vec![k0], d.scale(&int(k0 as i64)));
            }
            seed.mul(&g).expect("same caps")
        };
        (1..=self.max_k).map(|k| series.coeff(&[k - 1])).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowMismatch {
    pub k: u32,
    pub m: u32,
    pub profile: Partition,
    #[serde(with = "crate::algebra::rational::serde_str")]
    pub expected: Rational,
    #[serde(with = "crate::algebra::rational::serde_str")]
    pub got: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowReport {
    pub status: String,
    pub mismatches: Vec<FlowMismatch>,
}

impl FlowReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares every flow value with the formal derivative of the table,
/// coefficient by coefficient, for 1 ≤ k ≤ K and 2 ≤ m ≤ W.
pub fn verify_flows(ctx: &FlowContext<'_>) -> FlowReport {
    let mut mismatches = Vec::new();
    for m in 2..=ctx.max_weight {
        let cap = ctx.max_weight - m;
        for k in 1..=ctx.max_k {
            let expected = ctx.a(k, ctx.max_weight).derivative(m).with_cap(cap);
            let got = ctx.flow(k, m).expect("indices in range");
            let diff = &expected - &got;
            for (profile, _) in diff.terms() {
                mismatches.push(FlowMismatch {
                    k,
                    m,
                    profile: profile.clone(),
                    expected: expected.coeff(profile),
                    got: got.coeff(profile),
                });
            }
        }
    }
    let status = if mismatches.is_empty() { "pass" } else { "fail" };
    FlowReport { status: status.to_string(), mismatches }
}

/// Pairs (k, m) where ∂/∂t_m of the t₂-flow differs from ∂/∂t₂ of the
/// t_m-flow (mixed partials of a̲((k))), compared at weight cap W − m − 2.
pub fn commutation_failures(ctx: &FlowContext<'_>) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for m in 3..=ctx.max_weight.saturating_sub(2) {
        let cap = ctx.max_weight - m - 2;
        for k in 1..=ctx.max_k {
            let lhs = ctx.flow(k, 2).expect("in range").derivative(m).with_cap(cap);
            let rhs = ctx.flow(k, m).expect("in range").derivative(2).with_cap(cap);
            if lhs != rhs {
                out.push((k, m));
            }
        }
    }
    out
}
