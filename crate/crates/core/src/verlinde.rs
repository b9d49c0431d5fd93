//! Verlinde numbers `v_{r,k}` in genus `g`, evaluated exactly.
//!
//! The sum runs over the `k`-subsets `S` of `{1, .., r+k}` with complement `T`:
//!
//! ```text
//! v_{r,k} = r^g / (r+k)^g * sum_S prod_{s in S, t in T} |2 sin(pi (s-t)/(r+k))|^(g-1)
//! ```
//!
//! Every factor lives in `Q(zeta_{4(r+k)})`. The prefactored sum is rational and
//! the result is a non-negative integer; anything else is reported as an
//! arithmetic error.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{binomial_u128, subsets_lex};
use crate::cyclotomic::{CycloElement, SineTable};
use crate::error::{Error, Result};
use crate::precise::FixedContext;

pub const DEFAULT_TERM_BUDGET: u64 = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerlindeQuery {
    pub rank: u32,
    pub level: u32,
    pub genus: u32,
}

impl VerlindeQuery {
    pub fn new(rank: u32, level: u32, genus: u32) -> Result<Self> {
        if rank < 1 || level < 1 || genus < 2 {
            return Err(Error::Range(format!(
                "need r >= 1, k >= 1, g >= 2; got r={rank}, k={level}, g={genus}"
            )));
        }
        Ok(VerlindeQuery { rank, level, genus })
    }

    /// The query with rank and level exchanged.
    pub fn swapped(&self) -> Self {
        VerlindeQuery {
            rank: self.level,
            level: self.rank,
            genus: self.genus,
        }
    }

    pub fn term_count(&self) -> u128 {
        binomial_u128((self.rank + self.level) as u64, self.level as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerlindeReport {
    pub query: VerlindeQuery,
    #[serde(serialize_with = "crate::serde_str::serialize")]
    pub value: BigInt,
    #[serde(serialize_with = "crate::serde_str::serialize")]
    pub modified: BigInt,
    #[serde(serialize_with = "crate::serde_str::serialize")]
    pub partner: BigInt,
    pub symmetry_holds: bool,
}

/// Evaluator carrying the subset-term budget.
#[derive(Debug, Clone, Copy)]
pub struct Verlinde {
    term_budget: u64,
}

impl Default for Verlinde {
    fn default() -> Self {
        Verlinde {
            term_budget: DEFAULT_TERM_BUDGET,
        }
    }
}

impl Verlinde {
    pub fn with_budget(term_budget: u64) -> Self {
        Verlinde { term_budget }
    }

    pub fn term_budget(&self) -> u64 {
        self.term_budget
    }

    fn check_budget(&self, q: &VerlindeQuery) -> Result<()> {
        let terms = q.term_count();
        if terms > self.term_budget as u128 {
            return Err(Error::TermBudget {
                terms: if terms == u128::MAX {
                    "overflow".to_string()
                } else {
                    terms.to_string()
                },
                budget: self.term_budget,
            });
        }
        Ok(())
    }

    /// The unnormalized subset sum, an element of `Q(zeta_{4(r+k)})`.
    ///
    /// Terms depend only on how often each sine `2 sin(pi e/n)`, `e <= n/2`,
    /// occurs, so subsets are first grouped by that histogram.
    pub fn subset_sum(&self, q: &VerlindeQuery) -> Result<CycloElement> {
        self.check_budget(q)?;
        let n = (q.rank + q.level) as usize;
        let table = SineTable::new(n as u64)?;
        let subsets: Vec<Vec<usize>> = subsets_lex(n, q.level as usize).collect();
        let groups = subsets
            .par_iter()
            .fold(HashMap::new, |mut acc: HashMap<Vec<u32>, u64>, s| {
                *acc.entry(sine_histogram(n, s)).or_insert(0) += 1;
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (key, c) in b {
                    *a.entry(key).or_insert(0) += c;
                }
                a
            });
        let mut groups: Vec<(Vec<u32>, u64)> = groups.into_iter().collect();
        groups.sort_unstable();
        let exp = q.genus - 1;
        let zero = CycloElement::zero(table.order());
        let sum = groups
            .par_iter()
            .map(|(hist, count)| {
                let mut term = CycloElement::one(table.order());
                for (i, &m) in hist.iter().enumerate() {
                    if m > 0 {
                        term = &term * &table.get(i as u64 + 1).pow(m * exp);
                    }
                }
                term.scale(&BigRational::from_integer(BigInt::from(*count)))
            })
            .reduce(|| zero.clone(), |a, b| &a + &b);
        Ok(sum)
    }

    pub fn number(&self, q: &VerlindeQuery) -> Result<BigInt> {
        let sum = self.subset_sum(q)?.to_rational()?;
        let n = BigInt::from(q.rank + q.level);
        let prefactor = BigRational::new(BigInt::from(q.rank).pow(q.genus), n.pow(q.genus));
        integral_non_negative(&(sum * prefactor), "v_{r,k}")
    }

    /// `((k+r)^g / r^g) * v_{r,k}`, required to be an integer.
    pub fn modified(&self, q: &VerlindeQuery) -> Result<BigInt> {
        let v = self.number(q)?;
        modified_from_value(q, &v)
    }

    pub fn check_rank_level_symmetry(&self, q: &VerlindeQuery) -> Result<VerlindeReport> {
        let value = self.number(q)?;
        let partner = if q.rank == q.level {
            value.clone()
        } else {
            self.number(&q.swapped())?
        };
        let modified = modified_from_value(q, &value)?;
        let lhs = &value * BigInt::from(q.level).pow(q.genus);
        let rhs = &partner * BigInt::from(q.rank).pow(q.genus);
        Ok(VerlindeReport {
            query: *q,
            value,
            modified,
            partner,
            symmetry_holds: lhs == rhs,
        })
    }

    /// The same sum evaluated with `digits`-digit fixed-point sines.
    pub fn float_oracle_fixed(&self, q: &VerlindeQuery, digits: u32) -> Result<String> {
        let (ctx, value) = self.float_oracle_raw(q, digits)?;
        Ok(ctx.to_decimal(&value))
    }

    pub fn float_oracle(&self, q: &VerlindeQuery, digits: u32) -> Result<f64> {
        let (ctx, value) = self.float_oracle_raw(q, digits)?;
        Ok(ctx.to_f64(&value))
    }

    fn float_oracle_raw(&self, q: &VerlindeQuery, digits: u32) -> Result<(FixedContext, BigInt)> {
        if digits < 15 {
            return Err(Error::Range(format!(
                "float oracle precision must be >= 15 digits, got {digits}"
            )));
        }
        self.check_budget(q)?;
        // guard digits absorb rounding in long products
        let guard = 12;
        let work = FixedContext::new(digits + guard);
        let n = (q.rank + q.level) as usize;
        let sines: Vec<BigInt> = (1..n as i64)
            .map(|d| work.sin_pi_ratio(d, n as i64) * 2)
            .collect();
        let mut sum = BigInt::zero();
        for s in subsets_lex(n, q.level as usize) {
            let mut prod = work.from_int(1);
            for t in complement(n, &s) {
                for &si in &s {
                    let d = si.abs_diff(t);
                    prod = work.mul(&prod, &sines[d - 1]);
                }
            }
            sum += work.pow(&prod, q.genus - 1);
        }
        let numer = BigInt::from(q.rank).pow(q.genus);
        let denom = BigInt::from(n).pow(q.genus);
        let value = crate::precise::div_round(&(sum * numer), &denom);
        let out = FixedContext::new(digits);
        let shift = BigInt::from(10u32).pow(guard);
        Ok((out, crate::precise::div_round(&value, &shift)))
    }
}

fn complement(n: usize, subset: &[usize]) -> impl Iterator<Item = usize> + '_ {
    (1..=n).filter(move |t| !subset.contains(t))
}

/// Multiplicities of `2 sin(pi e / n)`, `e = 1..=n/2`, in
/// `prod_{s in S, t not in S} 2 sin(pi |s-t| / n)`.
fn sine_histogram(n: usize, subset: &[usize]) -> Vec<u32> {
    let mut hist = vec![0u32; n / 2];
    for t in complement(n, subset) {
        for &s in subset {
            let d = s.abs_diff(t);
            hist[d.min(n - d) - 1] += 1;
        }
    }
    hist
}

fn integral_non_negative(x: &BigRational, context: &str) -> Result<BigInt> {
    if !x.is_integer() || x.is_negative() {
        return Err(Error::NotIntegral {
            context: context.to_string(),
            value: x.to_string(),
        });
    }
    Ok(x.to_integer())
}

fn modified_from_value(q: &VerlindeQuery, v: &BigInt) -> Result<BigInt> {
    let x = BigRational::new(
        BigInt::from(q.rank + q.level).pow(q.genus) * v,
        BigInt::from(q.rank).pow(q.genus),
    );
    integral_non_negative(&x, "modified v_{r,k}")
}

pub fn verlinde_number(q: &VerlindeQuery) -> Result<BigInt> {
    Verlinde::default().number(q)
}

pub fn modified_verlinde(q: &VerlindeQuery) -> Result<BigInt> {
    Verlinde::default().modified(q)
}

pub fn check_rank_level_symmetry(q: &VerlindeQuery) -> Result<VerlindeReport> {
    Verlinde::default().check_rank_level_symmetry(q)
}

pub fn float_oracle(q: &VerlindeQuery, digits: u32) -> Result<f64> {
    Verlinde::default().float_oracle(q, digits)
}

/// Level one collapses to `r^g`; computed directly.
pub fn level_one_oracle(rank: u32, genus: u32) -> BigInt {
    BigInt::from(rank).pow(genus)
}

impl VerlindeReport {
    /// `v_{r,k} * k^g == v_{k,r} * r^g` restated as equality of modified values.
    pub fn modified_partner(&self) -> Result<BigInt> {
        modified_from_value(&self.query.swapped(), &self.partner)
    }
}
