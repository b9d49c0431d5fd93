//! Divisor-class bookkeeping on an elliptic K3 surface with a section.
//!
//! `NS(X) = Z sigma + Z f` with `sigma^2 = -2`, `f^2 = 0`, `sigma.f = 1`.
//! Vectors with `c1.f = 1` are normalized by twisting with `O(f)` until the
//! point coefficient is `1 - r`, giving
//! `v_{r,a} = (r, sigma + (a - r(r-1)) f, (1-r) omega)` with `<v,v> = 2a - 2`.
//!
//! Classes are stored as Mukai vectors `(r, alpha sigma + beta f, gamma omega)`;
//! the Euler characteristic of a sheaf class is `v0 + v4`.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::mukai::{mukai_pairing, MukaiVector, NSClass, NSLattice};

pub fn elliptic_lattice() -> Arc<NSLattice> {
    Arc::new(NSLattice::k3_elliptic())
}

/// `m sigma + n f`.
pub fn class(lattice: &Arc<NSLattice>, sigma: i64, fiber: i64) -> NSClass {
    NSClass::new(lattice.clone(), vec![sigma, fiber]).expect("elliptic lattice has rank 2")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedVector {
    pub rank: i64,
    pub a: i64,
    pub vector: MukaiVector,
}

impl NormalizedVector {
    pub fn new(rank: i64, a: i64) -> Result<Self> {
        if rank < 1 || a < 1 {
            return Err(Error::Range(format!(
                "normalized vector needs r >= 1 and a >= 1, got r={rank}, a={a}"
            )));
        }
        let l = elliptic_lattice();
        let vector = MukaiVector::new(rank, class(&l, 1, a - rank * (rank - 1)), 1 - rank);
        let nv = NormalizedVector { rank, a, vector };
        nv.verify()?;
        Ok(nv)
    }

    fn verify(&self) -> Result<()> {
        let sq = mukai_pairing(&self.vector, &self.vector)?;
        if sq + 2 != 2 * self.a {
            return Err(Error::IdentityFailed(format!(
                "<v,v> + 2 = {} but 2a = {}",
                sq + 2,
                2 * self.a
            )));
        }
        let fiber = class(self.vector.lattice(), 0, 1);
        if self.vector.c1.dot(&fiber)? != 1 {
            return Err(Error::IdentityFailed("c1.f != 1".into()));
        }
        if self.vector.euler_characteristic_k3() != 1 {
            return Err(Error::IdentityFailed("chi(E_r) != 1".into()));
        }
        Ok(())
    }
}

/// Twists `(r, sigma + k f, p omega)` by `O(f)` until the point part is
/// `(1 - r) omega`. Each twist adds `r` to the fiber coefficient and 1 to `p`.
/// Returns the normalized vector and the (possibly negative) twist count.
pub fn normalize_vector(rank: i64, fiber: i64, point: i64) -> Result<(NormalizedVector, i64)> {
    if rank < 1 {
        return Err(Error::Range(format!("rank must be >= 1, got {rank}")));
    }
    let twists = (1 - rank) - point;
    let a = fiber + twists * rank + rank * (rank - 1);
    Ok((NormalizedVector::new(rank, a)?, twists))
}

/// Tensoring with `O(f)` once.
pub fn twist_by_fiber(v: &MukaiVector) -> Result<MukaiVector> {
    let f = class(v.lattice(), 0, 1);
    Ok(MukaiVector::new(
        v.rank,
        v.c1.add(&f.scaled(v.rank))?,
        v.point + v.c1.dot(&f)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NuInfo {
    pub nu: i64,
    pub divisible: bool,
    /// `-nu > 1`, equivalently `a + b >= (r+s)^2 + 2`.
    pub nu_strong: bool,
}

fn check_positive(r: i64, s: i64, a: i64, b: i64) -> Result<()> {
    if r < 1 || s < 1 || a < 1 || b < 1 {
        return Err(Error::Range(format!(
            "need r, s, a, b >= 1; got r={r}, s={s}, a={a}, b={b}"
        )));
    }
    Ok(())
}

/// The fiber twist making `chi(E_r (x) F_s (x) O(nu f)) = 0`:
/// `nu = (r+s-2) - (a+b-2)/(r+s)`.
pub fn compute_nu(r: i64, s: i64, a: i64, b: i64) -> Result<NuInfo> {
    check_positive(r, s, a, b)?;
    let total = r + s;
    let dividend = a + b - 2;
    if dividend % total != 0 {
        return Err(Error::Divisibility {
            divisor: total,
            dividend,
        });
    }
    let nu = (total - 2) - dividend / total;
    Ok(NuInfo {
        nu,
        divisible: true,
        nu_strong: -nu > 1,
    })
}

/// `chi(E_r (x) F_s) = a + b - 2 - (r+s)(r+s-2)`.
pub fn chi_pair(r: i64, s: i64, a: i64, b: i64) -> i64 {
    a + b - 2 - (r + s) * (r + s - 2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaClass {
    /// `L = (r+s) sigma + (2(r+s) - 2 - nu) f`.
    pub l: NSClass,
    /// Power of `M` (half the exceptional divisor) in the theta class.
    pub m_exponent: i64,
    /// The Hilbert scheme `X^[a]` the class lives on.
    pub hilb_side: i64,
    pub chi_l: i64,
    pub nu: i64,
}

/// Theta line bundle of `F_s` on `X^[a]`, which equals `L^[a]`.
pub fn theta_bundle_class(r: i64, s: i64, a: i64, b: i64) -> Result<ThetaClass> {
    if r < 2 {
        return Err(Error::Range(format!("theta class needs r >= 2, got r={r}")));
    }
    let info = compute_nu(r, s, a, b)?;
    let total = r + s;
    let l = class(&elliptic_lattice(), total, 2 * total - 2 - info.nu);
    let sq = l.square();
    // chi(L) = L^2/2 + 2 on a K3
    let chi_l = sq / 2 + 2;
    let hilb = tautological_line_bundle(1, &l, a)?;
    Ok(ThetaClass {
        l,
        m_exponent: hilb.m_exponent,
        hilb_side: a,
        chi_l,
        nu: info.nu,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityDims {
    #[serde(serialize_with = "crate::serde_str::serialize")]
    pub dim_a: BigInt,
    #[serde(serialize_with = "crate::serde_str::serialize")]
    pub dim_b: BigInt,
    pub equal: bool,
    /// `r, s >= 2`, `<v,v> + <w,w> >= 2(r+s)^2` and `nu < -1`: the range in
    /// which the dimension equality is known to come from a perfect pairing.
    pub corollary_applies: bool,
    pub chi_l: i64,
    pub nu: i64,
}

/// `h^0(X^[a], L^[a]) = C(chi(L), a)` and the same on `X^[b]`, valid when `L`
/// has no higher cohomology (`nu < -1`).
pub fn strange_duality_dims(r: i64, s: i64, a: i64, b: i64) -> Result<DualityDims> {
    let theta = theta_bundle_class(r, s, a, b)?;
    if theta.nu >= -1 {
        return Err(Error::NuTooWeak { nu: theta.nu });
    }
    if theta.chi_l != a + b {
        return Err(Error::IdentityFailed(format!(
            "chi(L) = {} but a + b = {}",
            theta.chi_l,
            a + b
        )));
    }
    let dim_a = binomial(theta.chi_l, a);
    let dim_b = binomial(theta.chi_l, b);
    let self_pairings = (2 * a - 2) + (2 * b - 2);
    Ok(DualityDims {
        equal: dim_a == dim_b,
        dim_a,
        dim_b,
        corollary_applies: r >= 2 && s >= 2 && self_pairings >= 2 * (r + s).pow(2) && theta.nu < -1,
        chi_l: theta.chi_l,
        nu: theta.nu,
    })
}

/// Class of `F^[k]` in `Pic(X^[k]) = Pic(X) + Z M`: `(det F)_(k) + rk(F) M`.
/// Depends only on rank and determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbClass {
    pub ns: NSClass,
    pub m_exponent: i64,
}

pub fn tautological_line_bundle(rank: i64, det: &NSClass, k: i64) -> Result<HilbClass> {
    if k < 1 {
        return Err(Error::Range(format!("need k >= 1, got {k}")));
    }
    Ok(HilbClass {
        ns: det.clone(),
        m_exponent: rank,
    })
}

/// Everything attached to a pair of normalized moduli spaces `M_r^a`, `M_s^b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticPair {
    pub r: i64,
    pub s: i64,
    pub a: i64,
    pub b: i64,
    pub nu: i64,
    pub l: NSClass,
    pub chi_l: i64,
    /// `None` when `nu >= -1`.
    pub predicted_dims: Option<(BigInt, BigInt)>,
}

impl EllipticPair {
    pub fn new(r: i64, s: i64, a: i64, b: i64) -> Result<Self> {
        let theta = theta_bundle_class(r, s, a, b)?;
        let predicted_dims = match strange_duality_dims(r, s, a, b) {
            Ok(d) => Some((d.dim_a, d.dim_b)),
            Err(Error::NuTooWeak { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(EllipticPair {
            r,
            s,
            a,
            b,
            nu: theta.nu,
            l: theta.l,
            chi_l: theta.chi_l,
            predicted_dims,
        })
    }
}
