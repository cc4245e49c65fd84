//! Genus induction for minimal strata (a single zero).
//!
//! The seed is the series 1 − z²/24 + 7z⁴/5760 − …, the reciprocal of
//! Σ z^{2j}/(4^j (2j+1)!). Refining it by exp(Σ t_k z^k) gives the
//! polynomials b̲; the unknowns a̲((k)) are then fixed one at a time by
//!
//! ```text
//!     b̲_{m/2} = [z^m] 𝓕^m / m!,    𝓕 = 1 + Σ_k k·a̲((k))·z^{k+1}.
//! ```
//!
//! The coefficient f_m = (m−1)·a̲((m−1)) enters [z^m]𝓕^m linearly with
//! coefficient m, and every other contribution only involves f_j for j < m,
//! so the system is triangular.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::partition::{partitions_up_to, Partition};
use crate::algebra::rational::{factorial, int, Rational};
use crate::algebra::{TPoly, ZSeries};
use crate::error::{Error, Result};

/// Seed coefficients indexed by 2g.
#[derive(Clone, Debug, PartialEq)]
pub struct BSeed {
    coeffs: Vec<Rational>,
}

impl BSeed {
    /// The coefficient at z^{two_g}; zero beyond the computed range is never
    /// returned silently.
    pub fn get(&self, two_g: u32) -> Rational {
        self.coeffs.get(two_g as usize).cloned().unwrap_or_else(|| panic!("b-number index {two_g} beyond seed range"))
    }

    pub fn max_two_g(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.coeffs
    }

    /// b̲ at z^{two_g}, truncated to t-weight ≤ `cap`.
    ///
    /// Built partition by partition: b_{g−|ρ|/2}·∏t_{ρ_i}/|Aut ρ|.
    pub fn poly(&self, two_g: u32, cap: u32) -> TPoly {
        let mut out = TPoly::zero(cap);
        for rho in partitions_up_to(two_g.min(cap), 2) {
            let rest = two_g - rho.weight();
            if rest % 2 == 1 {
                continue;
            }
            let b = self.get(rest);
            if b.is_zero() {
                continue;
            }
            out.add_term(rho.clone(), b / Rational::from_integer(rho.automorphisms()));
        }
        out
    }
}

/// Expansion coefficients of 1/(sinh(z/2)/(z/2)) up to z^{max_2g}.
pub fn b_numbers(max_2g: u32) -> BSeed {
    let mut sinc = ZSeries::<Rational>::zero(vec![max_2g], ());
    let mut j = 0u32;
    while 2 * j <= max_2g {
        let denom = BigInt::from(4u32).pow(j) * factorial(2 * j + 1);
        sinc.add_term(vec![2 * j], Rational::new(BigInt::one(), denom));
        j += 1;
    }
    let inv = sinc.reciprocal().expect("constant term is 1");
    BSeed { coeffs: (0..=max_2g).map(|i| inv.coeff(&[i])).collect() }
}

/// b̲ polynomial at z^{two_g}, truncated to t-weight ≤ `cap`.
pub fn b_poly(two_g: u32, cap: u32) -> TPoly {
    b_numbers(two_g).poly(two_g, cap)
}

/// The polynomials a̲((k)) for 1 ≤ k ≤ K at t-weight cap W.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalTable {
    max_k: u32,
    max_weight: u32,
    polys: Vec<TPoly>,
}

impl MinimalTable {
    /// Wraps precomputed polynomials (index 0 holds a̲((1))).
    pub fn from_polys(max_k: u32, max_weight: u32, polys: Vec<TPoly>) -> Result<Self> {
        if polys.len() != max_k as usize {
            return Err(Error::config(format!("expected {max_k} polynomials, got {}", polys.len())));
        }
        if let Some(p) = polys.iter().find(|p| p.cap() != max_weight) {
            return Err(Error::config(format!("polynomial cap {} does not match table cap {max_weight}", p.cap())));
        }
        Ok(MinimalTable { max_k, max_weight, polys })
    }

    pub fn max_k(&self) -> u32 {
        self.max_k
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    /// a̲((k)), or a configuration error naming the cap that is too small.
    pub fn get(&self, k: u32) -> Result<&TPoly> {
        if k == 0 || k > self.max_k {
            return Err(Error::config(format!(
                "a((k)) for k = {k} needs max_k >= {k} (table has max_k = {})",
                self.max_k
            )));
        }
        Ok(&self.polys[k as usize - 1])
    }

    pub fn polys(&self) -> &[TPoly] {
        &self.polys
    }

    /// Formal ∂a̲((k))/∂t_m, truncated to weight W − m.
    pub fn derivative(&self, k: u32, m: u32) -> Result<TPoly> {
        let cap = self
            .max_weight
            .checked_sub(m)
            .ok_or_else(|| Error::domain(format!("derivative by t{m} exceeds weight cap {}", self.max_weight)))?;
        Ok(self.get(k)?.derivative(m).with_cap(cap))
    }

    /// 𝓕 = 1 + Σ k·a̲((k))·z^{k+1} truncated at z^{deg}, using a̲((k)) for
    /// k < `below` only.
    fn generating_series(&self, deg: u32, below: u32) -> ZSeries<TPoly> {
        generating_series(&self.polys, self.max_weight, deg, below)
    }

    /// [z^m] 𝓕^m/m! − b̲_{m/2} for every 2 ≤ m ≤ K+1; all zero on a
    /// correctly solved table. Returns `(m, residual)` for the non-zero ones.
    pub fn residuals(&self) -> Vec<(u32, TPoly)> {
        let seed = b_numbers(self.max_k + 1);
        let mut out = Vec::new();
        for m in 2..=self.max_k + 1 {
            let f = self.generating_series(m, self.max_k + 1);
            let lhs = f.pow(m).coeff(&[m]).scale(&Rational::new(BigInt::one(), factorial(m)));
            let r = &lhs - &seed.poly(m, self.max_weight);
            if !r.is_zero() {
                out.push((m, r));
            }
        }
        out
    }
}

fn generating_series(polys: &[TPoly], cap: u32, deg: u32, below: u32) -> ZSeries<TPoly> {
    let mut f = ZSeries::one(vec![deg], cap);
    for (i, a) in polys.iter().enumerate() {
        let k = i as u32 + 1;
        if k >= below || k + 1 > deg {
            break;
        }
        f.add_term(vec![k + 1], a.scale(&int(k as i64)));
    }
    f
}

/// Solves the genus induction for a̲((1)), …, a̲((K)) at weight cap W.
pub fn solve_minimal(max_k: u32, max_weight: u32) -> Result<MinimalTable> {
    if max_k == 0 {
        return Err(Error::config("max_k must be at least 1"));
    }
    let seed = b_numbers(max_k + 1);
    let mut polys: Vec<TPoly> = Vec::with_capacity(max_k as usize);
    for m in 2..=max_k + 1 {
        // Known part of 𝓕 (f_j for j < m) raised to the m-th power, at z^m.
        let known = generating_series(&polys, max_weight, m, m - 1);
        let mut power = ZSeries::one(vec![m], max_weight);
        for _ in 0..m {
            power = power.mul(&known)?;
        }
        let rest = power.coeff(&[m]);
        let target = seed.poly(m, max_weight).scale(&Rational::from_integer(factorial(m)));
        // m·f_m = m!·b̲ − rest, and a̲((m−1)) = f_m / (m−1).
        let a = (&target - &rest).scale(&Rational::new(BigInt::one(), BigInt::from(m * (m - 1))));
        polys.push(a);
    }
    MinimalTable::from_polys(max_k, max_weight, polys)
}

/// Genus of the coefficient at ρ in a̲((k)), if it is a non-negative integer.
pub fn minimal_genus(k: u32, rho: &Partition) -> Option<u32> {
    let two_g = (k + 1).checked_sub(rho.weight())?;
    (two_g % 2 == 0).then_some(two_g / 2)
}
