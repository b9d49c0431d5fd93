//! Fixed-point big-integer reals: just enough for a high-precision sine.
//!
//! A value `x` is represented by the integer `round(x * 10^digits)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone)]
pub struct FixedContext {
    digits: u32,
    scale: BigInt,
    pi: BigInt,
}

impl FixedContext {
    pub fn new(digits: u32) -> Self {
        let scale = BigInt::from(10u32).pow(digits);
        let pi = machin_pi(&scale);
        FixedContext { digits, scale, pi }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn from_int(&self, n: i64) -> BigInt {
        &self.scale * n
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        div_round(&(a * b), &self.scale)
    }

    pub fn pow(&self, a: &BigInt, mut exp: u32) -> BigInt {
        let mut base = a.clone();
        let mut acc = self.scale.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `sin(pi * p / q)` for rational `p/q`.
    pub fn sin_pi_ratio(&self, p: i64, q: i64) -> BigInt {
        assert!(q > 0);
        // reduce p/q into [0, 2)
        let p = p.rem_euclid(2 * q);
        let (p, sign) = if p >= q { (p - q, -1) } else { (p, 1) };
        // sin(pi - x) = sin(x): fold into [0, pi/2]
        let p = if 2 * p > q { q - p } else { p };
        let x = div_round(&(&self.pi * p), &BigInt::from(q));
        self.sin_taylor(&x) * sign
    }

    fn sin_taylor(&self, x: &BigInt) -> BigInt {
        let x2 = self.mul(x, x);
        let mut term = x.clone();
        let mut sum = x.clone();
        let mut k: u64 = 1;
        loop {
            term = self.mul(&term, &x2);
            term = -div_round(&term, &BigInt::from((2 * k) * (2 * k + 1)));
            if term.is_zero() {
                break;
            }
            sum += &term;
            k += 1;
        }
        sum
    }

    pub fn to_f64(&self, a: &BigInt) -> f64 {
        // keep 18 significant digits before converting
        let shift = self.digits.saturating_sub(18);
        let d = BigInt::from(10u32).pow(shift);
        let head = div_round(a, &d).to_f64().unwrap_or(f64::NAN);
        head / 10f64.powi((self.digits - shift) as i32)
    }

    /// Decimal rendering with all fractional digits.
    pub fn to_decimal(&self, a: &BigInt) -> String {
        let (q, r) = a.abs().div_rem(&self.scale);
        let sign = if a.is_negative() { "-" } else { "" };
        if self.digits == 0 {
            return format!("{sign}{q}");
        }
        format!("{sign}{q}.{:0>width$}", r, width = self.digits as usize)
    }
}

/// Round-half-away-from-zero division.
pub fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if (r.abs() * 2u32) >= b.abs() {
        if a.is_negative() == b.is_negative() {
            q + BigInt::one()
        } else {
            q - BigInt::one()
        }
    } else {
        q
    }
}

fn atan_inv(n: u32, scale: &BigInt) -> BigInt {
    // atan(1/n) = sum (-1)^k / ((2k+1) n^(2k+1))
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut power = scale / &n;
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power /= &n2;
        if power.is_zero() {
            break;
        }
        let term = &power / (2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

fn machin_pi(scale: &BigInt) -> BigInt {
    // pi = 16 atan(1/5) - 4 atan(1/239), with guard digits
    let guard = BigInt::from(10u32).pow(10);
    let s = scale * &guard;
    let pi = atan_inv(5, &s) * 16 - atan_inv(239, &s) * 4;
    div_round(&pi, &guard)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let ctx = FixedContext::new(40);
        assert_eq!(
            ctx.to_decimal(&ctx.pi),
            "3.1415926535897932384626433832795028841972"
        );
    }

    #[test]
    fn sines_against_f64() {
        let ctx = FixedContext::new(30);
        for q in 1..12 {
            for p in -2 * q..=2 * q {
                let exact = ctx.to_f64(&ctx.sin_pi_ratio(p, q));
                let approx = (std::f64::consts::PI * p as f64 / q as f64).sin();
                assert!((exact - approx).abs() < 1e-14, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn sin_quarter_squared_is_half() {
        let ctx = FixedContext::new(50);
        let s = ctx.sin_pi_ratio(1, 4);
        let half: BigInt = ctx.mul(&s, &s) - ctx.scale() / 2;
        assert!(half.abs() < BigInt::from(10));
    }
}
