//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(phi(m)-1)` as a
//! vector of integer numerators over one positive common denominator. The
//! modulus `Phi_m` is computed by exact division of `x^m - 1` by the cyclotomic
//! polynomials of the proper divisors of `m`, and cached per order.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The field `Q(zeta_m)` together with its defining polynomial.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    order: u64,
    /// Monic `Phi_m`, lowest degree first.
    modulus: Vec<BigInt>,
}

impl CycloField {
    /// Returns the shared field of order `m` (cached).
    pub fn get(m: u64) -> Arc<CycloField> {
        assert!(m >= 1, "cyclotomic order must be positive");
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&m) {
            return f.clone();
        }
        let field = Arc::new(CycloField {
            order: m,
            modulus: cyclotomic_polynomial(m),
        });
        cache.lock().unwrap().entry(m).or_insert(field).clone()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Euler totient of the order, i.e. the field degree.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Reduces an integer polynomial in place modulo `x^m - 1` and then `Phi_m`.
    fn reduce(&self, mut p: Vec<BigInt>) -> Vec<BigInt> {
        let m = self.order as usize;
        if p.len() > m {
            let (low, high) = p.split_at_mut(m);
            for (i, c) in high.iter_mut().enumerate() {
                if !c.is_zero() {
                    let c = std::mem::take(c);
                    low[i % m] += c;
                }
            }
            p.truncate(m);
        }
        let deg = self.degree();
        let phi = &self.modulus;
        for top in (deg..p.len()).rev() {
            if p[top].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut p[top]);
            let base = top - deg;
            for (j, pj) in phi[..deg].iter().enumerate() {
                if !pj.is_zero() {
                    p[base + j] -= &c * pj;
                }
            }
        }
        p.resize(deg, BigInt::zero());
        p
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Exact quotient of `num` by the monic polynomial `den` (lowest degree first).
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// `Phi_m` with integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = BigInt::from(-1);
    p[m as usize] = BigInt::one();
    for d in divisors(m) {
        if d < m {
            p = exact_div_monic(&p, &cyclotomic_polynomial(d));
        }
    }
    cache.lock().unwrap().insert(m, p.clone());
    p
}

/// An element of `Q(zeta_m)`.
///
/// Arithmetic between elements is only defined for equal orders and panics
/// otherwise.
#[derive(Clone)]
pub struct CycloElement {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloElement {
    fn from_parts(field: Arc<CycloField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let num = field.reduce(num);
        let mut e = CycloElement { field, num, den };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zero(m: u64) -> Self {
        let field = CycloField::get(m);
        let deg = field.degree();
        CycloElement {
            field,
            num: vec![BigInt::zero(); deg],
            den: BigInt::one(),
        }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(m, &BigRational::one())
    }

    pub fn from_rational(m: u64, q: &BigRational) -> Self {
        let mut e = Self::zero(m);
        e.num[0] = q.numer().clone();
        e.den = q.denom().clone();
        e.normalize();
        e
    }

    /// Builds an element from power-basis coefficients; longer inputs are reduced.
    pub fn from_coeffs(m: u64, coeffs: &[BigRational]) -> Self {
        let field = CycloField::get(m);
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(field, num, den)
    }

    /// `zeta_m^e` reduced modulo `Phi_m`; the exponent is taken mod `m`.
    pub fn root_power(m: u64, e: i64) -> Self {
        let field = CycloField::get(m);
        let e = e.rem_euclid(m as i64) as usize;
        let mut p = vec![BigInt::zero(); e + 1];
        p[e] = BigInt::one();
        Self::from_parts(field, p, BigInt::one())
    }

    /// `2 sin(pi d / n)` as an element of `Q(zeta_{4n})`.
    ///
    /// Built as `-i (zeta_{2n}^d - zeta_{2n}^{-d})` with `i = zeta_{4n}^n`, that is
    /// `zeta_{4n}^{n-2d} - zeta_{4n}^{n+2d}`.
    pub fn two_sin(n: u64, d: u64) -> Result<Self> {
        if n < 2 || d < 1 || d >= n {
            return Err(Error::Range(format!(
                "two_sin needs 1 <= d <= n-1, got n={n}, d={d}"
            )));
        }
        let m = 4 * n;
        let (n, d) = (n as i64, d as i64);
        Ok(Self::root_power(m, n - 2 * d) - Self::root_power(m, n + 2 * d))
    }

    pub fn order(&self) -> u64 {
        self.field.order
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(Zero::is_zero)
    }

    /// The constant coefficient, provided every other coefficient vanishes.
    pub fn to_rational(&self) -> Result<BigRational> {
        if let Some(index) = self.num.iter().rposition(|c| !c.is_zero()) {
            if index > 0 {
                return Err(Error::NotRational { index });
            }
        }
        Ok(BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        let mut e = CycloElement {
            field: self.field.clone(),
            num,
            den: &self.den * q.denom(),
        };
        e.normalize();
        e
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.field.order, other.field.order,
            "cyclotomic orders differ"
        );
    }
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloElement {}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElement(m={}, {})", self.order(), self)
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if !self.den.is_one() {
            write!(f, " (/{})", self.den)?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycloElement> for &'a CycloElement {
    type Output = CycloElement;

    fn add(self, rhs: &'a CycloElement) -> CycloElement {
        self.check_same(rhs);
        if self.den == rhs.den {
            let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect();
            let mut e = CycloElement {
                field: self.field.clone(),
                num,
                den: self.den.clone(),
            };
            e.normalize();
            return e;
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &rhs.den + b * &self.den)
            .collect();
        let mut e = CycloElement {
            field: self.field.clone(),
            num,
            den: &self.den * &rhs.den,
        };
        e.normalize();
        e
    }
}

impl<'a> Sub<&'a CycloElement> for &'a CycloElement {
    type Output = CycloElement;

    fn sub(self, rhs: &'a CycloElement) -> CycloElement {
        self + &(-rhs)
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;

    fn neg(self) -> CycloElement {
        CycloElement {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a CycloElement> for &'a CycloElement {
    type Output = CycloElement;

    fn mul(self, rhs: &'a CycloElement) -> CycloElement {
        self.check_same(rhs);
        let deg = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * deg.max(1) - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycloElement::from_parts(self.field.clone(), prod, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<CycloElement> for CycloElement {
            type Output = CycloElement;

            fn $method(self, rhs: CycloElement) -> CycloElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloElement {
    type Output = CycloElement;

    fn neg(self) -> CycloElement {
        -&self
    }
}

impl std::iter::Sum for CycloElement {
    fn sum<I: Iterator<Item = CycloElement>>(mut iter: I) -> Self {
        let first = iter.next().expect("sum of an empty CycloElement iterator");
        iter.fold(first, |acc, x| &acc + &x)
    }
}

/// The factors `2 sin(pi d / n)` for `d = 1..n-1`, built once per `n`.
#[derive(Debug, Clone)]
pub struct SineTable {
    n: u64,
    factors: Vec<CycloElement>,
}

impl SineTable {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Range(format!("sine table needs n >= 2, got {n}")));
        }
        let factors = (1..n)
            .map(|d| CycloElement::two_sin(n, d))
            .collect::<Result<_>>()?;
        Ok(SineTable { n, factors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn order(&self) -> u64 {
        4 * self.n
    }

    /// `2 sin(pi d / n)`; panics when `d` is outside `1..n`.
    pub fn get(&self, d: u64) -> &CycloElement {
        &self.factors[(d - 1) as usize]
    }
}
