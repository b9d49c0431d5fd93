//! Duality pairings on exterior and symmetric powers of a section space.
//!
//! For an `n`-dimensional space `V` with basis `e_1..e_n`, wedging
//! `Lambda^k V (x) Lambda^{n-k} V -> Lambda^n V` is a perfect pairing. In the
//! subset bases `e_S` it is a signed permutation matrix: `e_S ^ e_T` is
//! `+-e_{1..n}` when `T` is the complement of `S` and zero otherwise.
//!
//! Sections are modelled by monomials `x^a y^b` on the affine plane, and a
//! reduced zero-cycle by a list of distinct rational points. A pair `(Z, W)`
//! with `|Z| + |W| = n` lies on the theta divisor exactly when some non-zero
//! section vanishes on `Z u W`, i.e. when the `n x n` evaluation matrix is
//! singular. By Laplace expansion along the first `|Z|` rows that determinant
//! is the wedge pairing of `ev_Z` and `ev_W`.
//!
//! Subsets are ordered colexicographically; symmetric-power monomials are
//! ordered lexicographically descending.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{binomial_u128, colex_rank, monomials, multinomial, subsets_colex};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// A strictly increasing subset of `{1..=n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetIndex {
    n: usize,
    members: Vec<usize>,
}

impl SubsetIndex {
    pub fn new(n: usize, members: Vec<usize>) -> Result<Self> {
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Range(format!(
                "subset members must be strictly increasing: {members:?}"
            )));
        }
        if members.iter().any(|&m| m < 1 || m > n) {
            return Err(Error::Range(format!(
                "subset {members:?} not inside 1..={n}"
            )));
        }
        Ok(SubsetIndex { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn complement(&self) -> SubsetIndex {
        SubsetIndex {
            n: self.n,
            members: (1..=self.n).filter(|i| !self.members.contains(i)).collect(),
        }
    }

    pub fn colex_rank(&self) -> usize {
        colex_rank(&self.members)
    }
}

/// Coefficient of `e_{1..n}` in `e_S ^ e_T`: zero on overlap, otherwise the
/// sign of the permutation sorting the concatenation `S ++ T`.
pub fn wedge_basis_sign(s: &[usize], t: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for &a in s {
        for &b in t {
            if a == b {
                return 0;
            }
            if a > b {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Matrix of the wedge pairing `Lambda^k V (x) Lambda^{n-k} V -> Lambda^n V`.
///
/// Stored sparsely: row `i` has its only non-zero entry `signs[i]` in column
/// `cols[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeMatrix {
    n: usize,
    k: usize,
    rows: Vec<SubsetIndex>,
    cols: Vec<usize>,
    signs: Vec<i8>,
}

impl WedgeMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Row labels (`k`-subsets) in colex order.
    pub fn row_subsets(&self) -> &[SubsetIndex] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> i8 {
        if self.cols[row] == col {
            self.signs[row]
        } else {
            0
        }
    }

    /// Non-zero entries as `(row, col, sign)`, sorted by row.
    pub fn triplets(&self) -> Vec<(usize, usize, i8)> {
        (0..self.dim())
            .map(|i| (i, self.cols[i], self.signs[i]))
            .collect()
    }

    pub fn to_dense(&self) -> Matrix {
        let d = self.dim();
        let mut m = vec![vec![BigRational::zero(); d]; d];
        for (i, j, s) in self.triplets() {
            m[i][j] = BigRational::from_integer(BigInt::from(s));
        }
        m
    }

    /// Checks every row and column carries exactly one entry, each `+-1`.
    pub fn is_signed_permutation(&self) -> bool {
        let d = self.dim();
        if self.cols.len() != d || self.signs.len() != d {
            return false;
        }
        let mut seen = vec![false; d];
        for (&c, &s) in self.cols.iter().zip(&self.signs) {
            if c >= d || seen[c] || !(s == 1 || s == -1) {
                return false;
            }
            seen[c] = true;
        }
        true
    }

    /// Exact determinant of a signed permutation matrix: the permutation sign
    /// times the product of the entries.
    pub fn determinant(&self) -> i8 {
        assert!(self.is_signed_permutation());
        let d = self.dim();
        let mut visited = vec![false; d];
        let mut parity = 0usize;
        for start in 0..d {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.cols[i];
                len += 1;
            }
            parity += len - 1;
        }
        let negatives = self.signs.iter().filter(|&&s| s < 0).count();
        if (parity + negatives).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

pub fn wedge_duality_matrix(n: usize, k: usize) -> Result<WedgeMatrix> {
    if k > n {
        return Err(Error::Range(format!("need 0 <= k <= n, got n={n}, k={k}")));
    }
    let rows: Vec<SubsetIndex> = subsets_colex(n, k)
        .into_iter()
        .map(|members| SubsetIndex { n, members })
        .collect();
    let mut cols = Vec::with_capacity(rows.len());
    let mut signs = Vec::with_capacity(rows.len());
    for s in &rows {
        let t = s.complement();
        cols.push(t.colex_rank());
        signs.push(wedge_basis_sign(s.members(), t.members()));
    }
    Ok(WedgeMatrix {
        n,
        k,
        rows,
        cols,
        signs,
    })
}

fn subset_count(n: usize, k: usize) -> usize {
    binomial_u128(n as u64, k as u64) as usize
}

/// Coefficient of `e_{1..n}` in `alpha ^ beta`, where `alpha` is indexed by
/// `k`-subsets and `beta` by `(n-k)`-subsets, both in colex order.
pub fn pair_wedge(
    n: usize,
    k: usize,
    alpha: &[BigRational],
    beta: &[BigRational],
) -> Result<BigRational> {
    if k > n {
        return Err(Error::Range(format!("need 0 <= k <= n, got n={n}, k={k}")));
    }
    for (v, kk) in [(alpha, k), (beta, n - k)] {
        let expected = subset_count(n, kk);
        if v.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: v.len(),
            });
        }
    }
    let mut acc = BigRational::zero();
    for (i, s) in subsets_colex(n, k).into_iter().enumerate() {
        if alpha[i].is_zero() {
            continue;
        }
        let s = SubsetIndex { n, members: s };
        let t = s.complement();
        let b = &beta[t.colex_rank()];
        if b.is_zero() {
            continue;
        }
        let sign = wedge_basis_sign(s.members(), t.members());
        acc += BigRational::from_integer(BigInt::from(sign)) * &alpha[i] * b;
    }
    Ok(acc)
}

/// `v_1 ^ ... ^ v_k` in the colex basis of `Lambda^k`: the coefficient of `e_S`
/// is the minor on columns `S`.
pub fn wedge_vectors(vectors: &[Vec<BigRational>], n: usize) -> Result<Vec<BigRational>> {
    if let Some(v) = vectors.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    let k = vectors.len();
    Ok(subsets_colex(n, k)
        .into_iter()
        .map(|s| {
            let minor: Matrix = vectors
                .iter()
                .map(|v| s.iter().map(|&j| v[j - 1].clone()).collect())
                .collect();
            linalg::determinant(&minor)
        })
        .collect())
}

pub type Point = (BigRational, BigRational);

/// Basis of the section space: monomials `x^a y^b` given as `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionModel(pub Vec<(u32, u32)>);

impl SectionModel {
    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// The reduced cycles `Z` and `W` together with the section model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    pub model: SectionModel,
    pub z: Vec<Point>,
    pub w: Vec<Point>,
}

fn pow(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

pub fn evaluation_covector(p: &Point, model: &SectionModel) -> Vec<BigRational> {
    model
        .0
        .iter()
        .map(|&(a, b)| pow(&p.0, a) * pow(&p.1, b))
        .collect()
}

/// Value at `p` of the section with coefficients `t` in the model basis.
pub fn evaluate_section(t: &[BigRational], model: &SectionModel, p: &Point) -> BigRational {
    evaluation_covector(p, model)
        .iter()
        .zip(t)
        .map(|(a, b)| a * b)
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaEvaluation {
    /// Determinant of the evaluation matrix with rows `Z` then `W`.
    pub determinant: BigRational,
    /// Wedge pairing of `ev_Z` and `ev_W`.
    pub pairing: BigRational,
    pub vanishes: bool,
}

fn check_distinct(points: &[&Point]) -> Result<()> {
    for i in 0..points.len() {
        for j in 0..i {
            if points[i] == points[j] {
                return Err(Error::Degenerate(format!(
                    "coincident points ({}, {})",
                    points[i].0, points[i].1
                )));
            }
        }
    }
    Ok(())
}

pub fn theta_evaluate(z: &[Point], w: &[Point], model: &SectionModel) -> Result<ThetaEvaluation> {
    let n = model.dim();
    if z.len() + w.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: z.len() + w.len(),
        });
    }
    let all: Vec<&Point> = z.iter().chain(w).collect();
    check_distinct(&all)?;
    let ev_z: Vec<_> = z.iter().map(|p| evaluation_covector(p, model)).collect();
    let ev_w: Vec<_> = w.iter().map(|p| evaluation_covector(p, model)).collect();
    let rows: Matrix = ev_z.iter().chain(&ev_w).cloned().collect();
    let determinant = linalg::determinant(&rows);
    let pairing = pair_wedge(
        n,
        z.len(),
        &wedge_vectors(&ev_z, n)?,
        &wedge_vectors(&ev_w, n)?,
    )?;
    Ok(ThetaEvaluation {
        vanishes: determinant.is_zero(),
        determinant,
        pairing,
    })
}

/// Whether some non-zero section vanishes on `Z u W`.
pub fn theta_vanishes(z: &[Point], w: &[Point], model: &SectionModel) -> Result<bool> {
    Ok(theta_evaluate(z, w, model)?.vanishes)
}

impl PointConfig {
    pub fn evaluate(&self) -> Result<ThetaEvaluation> {
        theta_evaluate(&self.z, &self.w, &self.model)
    }
}

/// Matrix of `Sym^n(W) (x) Sym^n(W^dual) -> Q` in monomial bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPairing {
    pub w_dim: usize,
    pub n: u32,
    /// Exponent vectors, lexicographically descending.
    pub basis: Vec<Vec<u32>>,
    /// Diagonal entries: multinomial coefficients.
    pub diagonal: Vec<BigInt>,
}

impl SymPairing {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_dense(&self) -> Matrix {
        let d = self.dim();
        let mut m = vec![vec![BigRational::zero(); d]; d];
        for (i, c) in self.diagonal.iter().enumerate() {
            m[i][i] = BigRational::from_integer(c.clone());
        }
        m
    }

    /// `<form, power>` through the pairing matrix.
    pub fn pair(&self, form: &[BigRational], power: &[BigRational]) -> Result<BigRational> {
        for v in [form, power] {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: v.len(),
                });
            }
        }
        Ok(self
            .diagonal
            .iter()
            .zip(form.iter().zip(power))
            .map(|(c, (a, b))| BigRational::from_integer(c.clone()) * a * b)
            .sum())
    }
}

pub fn sym_duality_matrix(w_dim: usize, n: u32) -> Result<SymPairing> {
    if w_dim < 1 || n < 1 {
        return Err(Error::Range(format!(
            "need w_dim >= 1 and n >= 1, got w_dim={w_dim}, n={n}"
        )));
    }
    let basis = monomials(w_dim, n);
    let diagonal = basis.iter().map(|a| multinomial(a)).collect();
    Ok(SymPairing {
        w_dim,
        n,
        basis,
        diagonal,
    })
}

/// `t^n` in the monomial basis of `Sym^n(W)`: the coordinate at `alpha` is
/// `t^alpha`.
pub fn sym_power_vector(t: &[BigRational], n: u32) -> Vec<BigRational> {
    monomials(t.len(), n)
        .iter()
        .map(|alpha| {
            alpha
                .iter()
                .zip(t)
                .fold(BigRational::one(), |acc, (&e, c)| acc * pow(c, e))
        })
        .collect()
}

/// The symmetric tensor `ev_{z_1} . ... . ev_{z_n}` in `Sym^n(W^dual)`.
///
/// The coordinate at `alpha` is the coefficient of `xi^alpha` in
/// `prod_i ev_{z_i}(xi)` divided by the multinomial of `alpha`, so that pairing
/// with `t^n` returns `prod_i t(z_i)`.
pub fn incidence_form(z: &[Point], model: &SectionModel) -> Result<Vec<BigRational>> {
    let m = model.dim();
    if m == 0 || z.is_empty() {
        return Err(Error::Range(
            "incidence form needs sections and points".into(),
        ));
    }
    let mut poly: HashMap<Vec<u32>, BigRational> = HashMap::new();
    poly.insert(vec![0; m], BigRational::one());
    for p in z {
        let ev = evaluation_covector(p, model);
        let mut next: HashMap<Vec<u32>, BigRational> = HashMap::new();
        for (mono, c) in &poly {
            for (j, e) in ev.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let mut key = mono.clone();
                key[j] += 1;
                *next.entry(key).or_insert_with(BigRational::zero) += c * e;
            }
        }
        poly = next;
    }
    Ok(monomials(m, z.len() as u32)
        .into_iter()
        .map(|alpha| match poly.get(&alpha) {
            Some(c) => c / BigRational::from_integer(multinomial(&alpha)),
            None => BigRational::zero(),
        })
        .collect())
}

/// Rank of a dense rational matrix; re-exported for pairing checks.
pub fn matrix_rank(m: &Matrix) -> usize {
    linalg::rank(m)
}
