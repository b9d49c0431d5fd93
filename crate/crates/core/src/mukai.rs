//! Mukai vectors on K3 and abelian surfaces.
//!
//! A Mukai vector is a triple `(v0, v2, v4)`: rank, a Neron-Severi class and
//! the coefficient of the point class `omega`. The Mukai form is
//! `<v, w> = v2.w2 - v0 w4 - v4 w0`.
//!
//! Euler characteristics of tensor products use `chi(v (x) w) = -<v, w>`, so
//! orthogonality and vanishing of `chi` coincide.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    K3,
    Abelian,
}

/// Integral lattice with a symmetric Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSLattice {
    name: String,
    kind: SurfaceKind,
    gram: Vec<Vec<i64>>,
}

impl NSLattice {
    pub fn new(name: impl Into<String>, kind: SurfaceKind, gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::Range("lattice rank must be positive".into()));
        }
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::Range("Gram matrix must be square".into()));
        }
        if let Some((i, j)) = (0..n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .find(|&(i, j)| gram[i][j] != gram[j][i])
        {
            return Err(Error::Range(format!(
                "Gram matrix not symmetric at ({i},{j})"
            )));
        }
        Ok(NSLattice {
            name: name.into(),
            kind,
            gram,
        })
    }

    /// Section and fiber of an elliptic K3: `sigma^2 = -2`, `f^2 = 0`, `sigma.f = 1`.
    pub fn k3_elliptic() -> Self {
        Self::new(
            "k3_elliptic",
            SurfaceKind::K3,
            vec![vec![-2, 1], vec![1, 0]],
        )
        .unwrap()
    }

    /// Principally polarized abelian surface, `NS = Z H`, `H^2 = 2`.
    pub fn abelian_pp() -> Self {
        Self::new("abelian_pp", SurfaceKind::Abelian, vec![vec![2]]).unwrap()
    }

    /// Genus-5 K3, `NS = Z C`, `C^2 = 8`.
    pub fn k3_genus5() -> Self {
        Self::new("k3_genus5", SurfaceKind::K3, vec![vec![8]]).unwrap()
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "k3_elliptic" => Some(Self::k3_elliptic()),
            "abelian_pp" => Some(Self::abelian_pp()),
            "k3_genus5" => Some(Self::k3_genus5()),
            _ => None,
        }
    }

    pub const PRESETS: [&'static str; 3] = ["k3_elliptic", "abelian_pp", "k3_genus5"];

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                acc += ai * self.gram[i][j] * bj;
            }
        }
        acc
    }
}

/// A divisor class, coordinates in the lattice basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSClass {
    lattice: Arc<NSLattice>,
    coords: Vec<i64>,
}

impl NSClass {
    pub fn new(lattice: Arc<NSLattice>, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != lattice.rank() {
            return Err(Error::DimensionMismatch {
                expected: lattice.rank(),
                found: coords.len(),
            });
        }
        Ok(NSClass { lattice, coords })
    }

    pub fn zero(lattice: Arc<NSLattice>) -> Self {
        let n = lattice.rank();
        NSClass {
            lattice,
            coords: vec![0; n],
        }
    }

    pub fn lattice(&self) -> &Arc<NSLattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dot(&self, other: &NSClass) -> Result<i64> {
        same_lattice(&self.lattice, &other.lattice)?;
        Ok(self.lattice.form(&self.coords, &other.coords))
    }

    pub fn square(&self) -> i64 {
        self.lattice.form(&self.coords, &self.coords)
    }

    pub fn scaled(&self, k: i64) -> NSClass {
        NSClass {
            lattice: self.lattice.clone(),
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &NSClass) -> Result<NSClass> {
        same_lattice(&self.lattice, &other.lattice)?;
        Ok(NSClass {
            lattice: self.lattice.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Whether `self` and `other` are linearly dependent.
    pub fn proportional_to(&self, other: &NSClass) -> bool {
        let n = self.coords.len();
        (0..n).all(|i| {
            (0..n).all(|j| self.coords[i] * other.coords[j] == self.coords[j] * other.coords[i])
        })
    }
}

impl fmt::Display for NSClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

fn same_lattice(a: &NSLattice, b: &NSLattice) -> Result<()> {
    if a != b {
        return Err(Error::LatticeMismatch {
            left: a.name.clone(),
            right: b.name.clone(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MukaiVector {
    pub rank: i64,
    pub c1: NSClass,
    /// Coefficient of the point class.
    pub point: i64,
}

impl MukaiVector {
    pub fn new(rank: i64, c1: NSClass, point: i64) -> Self {
        MukaiVector { rank, c1, point }
    }

    pub fn from_coords(
        lattice: &Arc<NSLattice>,
        rank: i64,
        c1: &[i64],
        point: i64,
    ) -> Result<Self> {
        Ok(MukaiVector {
            rank,
            c1: NSClass::new(lattice.clone(), c1.to_vec())?,
            point,
        })
    }

    pub fn lattice(&self) -> &Arc<NSLattice> {
        self.c1.lattice()
    }

    pub fn scaled(&self, k: i64) -> Self {
        MukaiVector {
            rank: self.rank * k,
            c1: self.c1.scaled(k),
            point: self.point * k,
        }
    }

    /// gcd of all integer components.
    pub fn content(&self) -> i64 {
        self.c1
            .coords()
            .iter()
            .fold(self.rank.gcd(&self.point), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// The class of the dual sheaf: `c1` changes sign.
    pub fn dual(&self) -> Self {
        MukaiVector {
            rank: self.rank,
            c1: self.c1.scaled(-1),
            point: self.point,
        }
    }

    /// `chi(E) = v0 + v4` for a sheaf class on a K3 surface.
    pub fn euler_characteristic_k3(&self) -> i64 {
        self.rank + self.point
    }

    pub fn self_pairing(&self) -> i64 {
        self.c1.square() - 2 * self.rank * self.point
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.rank, self.c1, self.point)
    }
}

pub fn mukai_pairing(v: &MukaiVector, w: &MukaiVector) -> Result<i64> {
    Ok(v.c1.dot(&w.c1)? - v.rank * w.point - v.point * w.rank)
}

pub fn chi_tensor(v: &MukaiVector, w: &MukaiVector) -> Result<i64> {
    Ok(-mukai_pairing(v, w)?)
}

/// `d_v = <v,v>/2 + 1`.
pub fn dv(v: &MukaiVector) -> Result<i64> {
    let sq = v.self_pairing();
    if sq % 2 != 0 {
        return Err(Error::OddPairing(sq));
    }
    Ok(sq / 2 + 1)
}

/// First Chern class of `v (x) w`: `rk(w) c1(v) + rk(v) c1(w)`.
pub fn c1_tensor(v: &MukaiVector, w: &MukaiVector) -> Result<NSClass> {
    v.c1.scaled(w.rank).add(&w.c1.scaled(v.rank))
}

/// `chi(M_v, Theta_w) = C(d_v + d_w, d_v)` on a K3 surface.
pub fn chi_k3(v: &MukaiVector, w: &MukaiVector) -> Result<BigInt> {
    same_lattice(v.lattice(), w.lattice())?;
    let (a, b) = (dv(v)?, dv(w)?);
    if a < 0 || b < 0 {
        return Err(Error::Range(format!("need d_v, d_w >= 0; got {a}, {b}")));
    }
    Ok(binomial(a + b, a))
}

/// Which moduli space the abelian-surface Euler characteristic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbelianVariant {
    /// Fibers of `det`; uses `c1(v (x) w)^2`.
    AlbanesePlus,
    /// Fibers of `det` of the Fourier-Mukai transform; uses the hats.
    AlbaneseMinus,
    /// Generalized-Kummer fibers of the full Albanese map.
    Kummer,
}

impl AbelianVariant {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "s2" | "albanese_plus" => Some(Self::AlbanesePlus),
            "s3" | "albanese_minus" => Some(Self::AlbaneseMinus),
            "s4" | "kummer" => Some(Self::Kummer),
            _ => None,
        }
    }
}

pub fn chi_abelian(v: &MukaiVector, w: &MukaiVector, variant: AbelianVariant) -> Result<BigInt> {
    same_lattice(v.lattice(), w.lattice())?;
    require_abelian(v.lattice())?;
    let (a, b) = (dv(v)?, dv(w)?);
    if a < 1 || b < 1 || a + b < 3 {
        return Err(Error::Range(format!(
            "abelian Euler characteristics need d_v, d_w >= 1 and d_v + d_w >= 3; got {a}, {b}"
        )));
    }
    let n = a + b - 2;
    let binom = binomial(n, a - 1);
    let (numer, denom) = match variant {
        AbelianVariant::AlbanesePlus => (c1_tensor(v, w)?.square(), 2 * n),
        AbelianVariant::AlbaneseMinus => {
            let (vh, wh) = (fm_transform(v)?, fm_transform(w)?);
            (c1_tensor(&vh, &wh)?.square(), 2 * n)
        }
        AbelianVariant::Kummer => ((a - 1) * (a - 1), n),
    };
    let value = BigRational::new(BigInt::from(numer) * binom, BigInt::from(denom));
    if !value.is_integer() {
        return Err(Error::NotIntegral {
            context: format!("chi_abelian({variant:?})"),
            value: value.to_string(),
        });
    }
    Ok(value.to_integer())
}

fn require_abelian(lattice: &NSLattice) -> Result<()> {
    if lattice.kind != SurfaceKind::Abelian {
        return Err(Error::UnsupportedLattice(format!(
            "{} is not an abelian-surface lattice",
            lattice.name
        )));
    }
    Ok(())
}

/// Cohomological Fourier-Mukai transform `(v0, v2, v4) -> (v4, -v2, v0)`,
/// identifying `H^2` of the surface and its dual through the principal
/// polarization.
pub fn fm_transform(v: &MukaiVector) -> Result<MukaiVector> {
    require_abelian(v.lattice())?;
    Ok(MukaiVector {
        rank: v.point,
        c1: v.c1.scaled(-1),
        point: v.rank,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConjectureVerdict {
    pub orthogonal: bool,
    pub v_primitive: bool,
    pub w_primitive: bool,
    pub v_positive: bool,
    pub w_positive: bool,
    pub slope_condition: bool,
    pub applicable: bool,
    /// Whether `c1(v)` and `c1(w)` are proportional; the Kummer formula was
    /// derived under that assumption.
    pub c1_proportional: bool,
}

/// Positive: rank > 0, or rank 0 with effective `c1` and `<v,v>` not 0 or 4.
pub fn is_positive(v: &MukaiVector, c1_effective: bool) -> bool {
    if v.rank > 0 {
        return true;
    }
    v.rank == 0 && c1_effective && !matches!(v.self_pairing(), 0 | 4)
}

/// Hypothesis check for the theta-duality conjecture. Effectivity of `c1` for
/// rank-zero vectors is not decidable from the lattice and is passed in.
pub fn check_conjecture(
    v: &MukaiVector,
    w: &MukaiVector,
    polarization: &NSClass,
    v_effective: bool,
    w_effective: bool,
) -> Result<ConjectureVerdict> {
    same_lattice(v.lattice(), w.lattice())?;
    let orthogonal = chi_tensor(v, w)? == 0;
    let slope_condition = c1_tensor(v, w)?.dot(polarization)? > 0;
    let v_primitive = v.is_primitive();
    let w_primitive = w.is_primitive();
    let v_positive = is_positive(v, v_effective);
    let w_positive = is_positive(w, w_effective);
    Ok(ConjectureVerdict {
        orthogonal,
        v_primitive,
        w_primitive,
        v_positive,
        w_positive,
        slope_condition,
        applicable: orthogonal
            && v_primitive
            && w_primitive
            && v_positive
            && w_positive
            && slope_condition,
        c1_proportional: v.c1.proportional_to(&w.c1),
    })
}
