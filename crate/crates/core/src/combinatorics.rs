//! Binomials, multinomials and subset enumeration.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact binomial coefficient `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` as `u128`, saturating on overflow. Used for budget checks.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `n! / (a_1! ... a_m!)` with `n = sum a_i`.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total: i64 = 0;
    for &p in parts {
        total += p as i64;
        acc *= binomial(total, p as i64);
    }
    acc
}

/// All `k`-subsets of `{1..=n}` in lexicographic order.
pub fn subsets_lex(n: usize, k: usize) -> LexSubsets {
    LexSubsets {
        n,
        current: if k <= n {
            Some((1..=k).collect())
        } else {
            None
        },
    }
}

pub struct LexSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for LexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        // rightmost position that can still be advanced
        let pos = (0..k).rev().find(|&i| next[i] < self.n - (k - 1 - i));
        if let Some(i) = pos {
            next[i] += 1;
            for j in i + 1..k {
                next[j] = next[j - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// All `k`-subsets of `{1..=n}` in colexicographic order (compare largest
/// element first).
pub fn subsets_colex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = subsets_lex(n, k).collect();
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// Position of a strictly increasing `k`-subset of `{1..=n}` in colex order.
///
/// This is the combinatorial number system: `sum_i C(s_i - 1, i + 1)`.
pub fn colex_rank(subset: &[usize]) -> usize {
    subset
        .iter()
        .enumerate()
        .map(|(i, &s)| binomial_u128(s as u64 - 1, i as u64 + 1) as usize)
        .sum()
}

/// Exponent vectors of length `vars` summing to `degree`, in lexicographically
/// descending order (so `x^2, xy, y^2` for two variables in degree two).
pub fn monomials(vars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(vars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if vars == 1 {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=degree).rev() {
            prefix.push(first);
            rec(vars - 1, degree - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vars > 0 {
        rec(vars, degree, &mut Vec::with_capacity(vars), &mut out);
    }
    out
}
