//! Dense complex matrices and the numerical primitives the rest of the crate
//! is built on.
//!
//! Index convention: Kronecker products are first-factor-major, so
//! `kron(a, b)[(i * b.rows + p, j * b.cols + q)] = a[(i, j)] * b[(p, q)]`.
//! Matrices are flattened row-major whenever they are treated as vectors of
//! the Hilbert–Schmidt space, so `vec(y)^* vec(x) = tr(x y^*)`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};
use rand_xorshift::XorShiftRng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[allow(non_camel_case_types)]
pub type c64 = Complex64;

/// Seedable generator used everywhere randomness appears: Marsaglia's
/// xorshift128 shift-register generator, seeded from a `u64` through
/// `SeedableRng::seed_from_u64`.
pub type Rng = XorShiftRng;

pub fn seeded_rng(seed: u64) -> Rng {
    XorShiftRng::seed_from_u64(seed)
}

/// Mixes a base seed with a stream number (splitmix64 finalizer), so that
/// batteries can hand every instance its own independent seed.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Absolute entrywise tolerance for identities that hold exactly in theory.
    pub abs_eps: f64,
    /// Singular values below `rank_cutoff * sigma_max` count as zero.
    pub rank_cutoff: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs_eps: 1e-9, rank_cutoff: 1e-8 }
    }
}

impl Tolerance {
    pub fn new(abs_eps: f64, rank_cutoff: f64) -> Result<Self> {
        if !(abs_eps > 0.0 && rank_cutoff > 0.0) {
            return Err(Error::Format(format!(
                "tolerances must be positive (abs_eps={abs_eps}, rank_cutoff={rank_cutoff})"
            )));
        }
        Ok(Tolerance { abs_eps, rank_cutoff })
    }
}

/// A dense complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct CMatrix(DMatrix<c64>);

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CMatrix {}x{} ", self.rows(), self.cols())?;
        f.debug_list().entries(self.row_major()).finish()
    }
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        CMatrix(DMatrix::identity(n, n))
    }

    /// The matrix unit `e_{i,j}` of `M_n` (zero-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = DMatrix::zeros(n, n);
        m[(i, j)] = c64::new(1.0, 0.0);
        CMatrix(m)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> c64) -> Self {
        CMatrix(DMatrix::from_fn(rows, cols, f))
    }

    pub fn from_row_major(rows: usize, cols: usize, entries: &[c64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Format(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Format("matrix entries must be finite".into()));
        }
        Ok(CMatrix(DMatrix::from_row_slice(rows, cols, entries)))
    }

    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        let z: Vec<c64> = entries.iter().map(|&x| c64::new(x, 0.0)).collect();
        CMatrix::from_row_major(rows, cols, &z).expect("real entries")
    }

    pub fn from_na(m: DMatrix<c64>) -> Self {
        CMatrix(m)
    }

    pub fn as_na(&self) -> &DMatrix<c64> {
        &self.0
    }

    pub fn into_na(self) -> DMatrix<c64> {
        self.0
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> c64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, z: c64) {
        self.0[(i, j)] = z;
    }

    pub fn row_major(&self) -> Vec<c64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        CMatrix(self.0.adjoint())
    }

    pub fn trace(&self) -> c64 {
        self.0.trace()
    }

    pub fn scale(&self, z: c64) -> Self {
        CMatrix(&self.0 * z)
    }

    pub fn scale_re(&self, x: f64) -> Self {
        self.scale(c64::new(x, 0.0))
    }

    /// Adds `z * other` in place.
    pub fn axpy(&mut self, z: c64, other: &CMatrix) {
        self.0.zip_apply(&other.0, |a, b| *a += z * b);
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation; infinite when shapes differ.
    pub fn max_diff(&self, other: &CMatrix) -> f64 {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return f64::INFINITY;
        }
        self.0.iter().zip(other.0.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> f64 {
        if self.rows() == 0 || self.cols() == 0 {
            return 0.0;
        }
        singular_values(self).into_iter().fold(0.0, f64::max)
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &CMatrix) -> CMatrix {
        CMatrix(&self.0 * &other.0 - &other.0 * &self.0)
    }

    /// `max |U U^* - E|`.
    pub fn unitarity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let p = &self.0 * self.0.adjoint();
        CMatrix(p).max_diff(&CMatrix::identity(self.rows()))
    }

    /// Row-major flattening into a vector of the Hilbert–Schmidt space.
    pub fn vectorize(&self) -> DVector<c64> {
        DVector::from_vec(self.row_major())
    }

    pub fn unvectorize(v: &[c64], rows: usize, cols: usize) -> Self {
        CMatrix(DMatrix::from_row_slice(rows, cols, v))
    }

    /// Sub-block `[r0, r0 + nr) x [c0, c0 + nc)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> CMatrix {
        CMatrix(self.0.view((r0, c0), (nr, nc)).into_owned())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl<'a> Mul<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &'a CMatrix) -> CMatrix {
        CMatrix(&self.0 * &rhs.0)
    }
}

impl<'a> Add<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &'a CMatrix) -> CMatrix {
        CMatrix(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &'a CMatrix) -> CMatrix {
        CMatrix(&self.0 - &rhs.0)
    }
}

#[derive(Serialize, Deserialize)]
struct CMatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CMatrixJson {
            rows: self.rows(),
            cols: self.cols(),
            entries: self.row_major().into_iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CMatrixJson::deserialize(d)?;
        if raw.rows == 0 || raw.cols == 0 {
            return Err(D::Error::custom("rows and cols must be positive"));
        }
        let z: Vec<c64> = raw.entries.iter().map(|[re, im]| c64::new(*re, *im)).collect();
        CMatrix::from_row_major(raw.rows, raw.cols, &z).map_err(D::Error::custom)
    }
}

/// Kronecker product, first-factor-major.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = DMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a.0[(i, j)];
            if aij == c64::new(0.0, 0.0) {
                continue;
            }
            for p in 0..br {
                for q in 0..bc {
                    out[(i * br + p, j * bc + q)] = aij * b.0[(p, q)];
                }
            }
        }
    }
    CMatrix(out)
}

/// Hilbert–Schmidt inner product `tr(x conj(y)^T)`.
pub fn hs_inner(x: &CMatrix, y: &CMatrix) -> Result<c64> {
    if !x.is_square() || x.rows() != y.rows() || x.cols() != y.cols() {
        return Err(Error::Dimension(format!(
            "hs_inner of {}x{} and {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    Ok(x.0.iter().zip(y.0.iter()).map(|(a, b)| a * b.conj()).sum())
}

pub(crate) fn hs_unchecked(x: &CMatrix, y: &CMatrix) -> c64 {
    x.0.iter().zip(y.0.iter()).map(|(a, b)| a * b.conj()).sum()
}

pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    a.0.clone().svd(false, false).singular_values.iter().copied().collect()
}

/// Numerical rank with the relative cutoff of `tol`.
pub fn rank(a: &CMatrix, tol: &Tolerance) -> usize {
    let sv = singular_values(a);
    let smax = sv.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s >= tol.rank_cutoff * smax).count()
}

/// Orthonormal basis of the numerical kernel, returned as column vectors.
pub fn nullspace(a: &CMatrix, tol: &Tolerance) -> Vec<CMatrix> {
    let n = a.cols();
    if n == 0 {
        return Vec::new();
    }
    // Pad to at least n rows so the SVD yields a complete right basis.
    let m = a.0.clone();
    let padded = if m.nrows() < n {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (m.nrows(), n)).copy_from(&m);
        p
    } else {
        m
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cut = tol.rank_cutoff * smax;
    let mut out = Vec::new();
    for (idx, &s) in svd.singular_values.iter().enumerate() {
        if smax == 0.0 || s < cut {
            let v = DMatrix::from_fn(n, 1, |r, _| v_t[(idx, r)].conj());
            out.push(CMatrix(v));
        }
    }
    out
}

/// Standard complex Gaussian matrix (independent real and imaginary parts of
/// variance 1/2).
pub fn complex_gaussian(rng: &mut Rng, rows: usize, cols: usize) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        c64::new(re * s, im * s)
    })
}

pub fn gaussian_re(rng: &mut Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix, with the
/// columns rephased so that `R` has a positive real diagonal.
pub fn random_unitary_with(rng: &mut Rng, n: usize) -> CMatrix {
    let g = complex_gaussian(rng, n, n);
    let qr = g.0.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { c64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    CMatrix(q)
}

pub fn random_unitary(n: usize, seed: u64) -> CMatrix {
    let mut rng = seeded_rng(seed);
    random_unitary_with(&mut rng, n)
}

/// Random unitary whose entries are dyadic Gaussian rationals: products of
/// phases in {±1, ±i}, coordinate transpositions and the 2x2 gate
/// `((1+i)/2, (1-i)/2; (1-i)/2, (1+i)/2)`. Floating-point arithmetic on such
/// matrices is exact for the short products used in the identity checks.
pub fn random_dyadic_unitary(rng: &mut Rng, n: usize, gates: usize) -> CMatrix {
    use rand::Rng as _;
    let phases = [c64::new(1.0, 0.0), c64::new(0.0, 1.0), c64::new(-1.0, 0.0), c64::new(0.0, -1.0)];
    let mut u = DMatrix::<c64>::identity(n, n);
    let a = c64::new(0.5, 0.5);
    let b = c64::new(0.5, -0.5);
    for _ in 0..gates {
        if n >= 2 {
            let p = rng.random_range(0..n);
            let mut q = rng.random_range(0..n - 1);
            if q >= p {
                q += 1;
            }
            match rng.random_range(0..2) {
                0 => u.swap_rows(p, q),
                _ => {
                    for c in 0..n {
                        let (x, y) = (u[(p, c)], u[(q, c)]);
                        u[(p, c)] = a * x + b * y;
                        u[(q, c)] = b * x + a * y;
                    }
                }
            }
        }
        let k = rng.random_range(0..n);
        let ph = phases[rng.random_range(0..4)];
        for c in 0..n {
            u[(k, c)] *= ph;
        }
    }
    CMatrix(u)
}

/// Permutation matrix `K` with `K (A ⊗ B) K^T = B ⊗ A` for `A` of size `m`
/// and `B` of size `n` (the perfect shuffle).
pub fn commutation_matrix(m: usize, n: usize) -> CMatrix {
    let mut k = DMatrix::zeros(m * n, m * n);
    for i in 0..m {
        for p in 0..n {
            k[(p * m + i, i * n + p)] = c64::new(1.0, 0.0);
        }
    }
    CMatrix(k)
}

/// Orthonormalizes a list of matrices in the Hilbert–Schmidt space by
/// twice-iterated modified Gram–Schmidt, dropping members whose residual norm
/// falls below `drop_tol` relative to their original norm.
pub fn orthonormalize(mats: &[CMatrix], drop_tol: f64) -> Vec<CMatrix> {
    let mut basis: Vec<CMatrix> = Vec::new();
    for m in mats {
        let n0 = m.frobenius();
        if n0 == 0.0 {
            continue;
        }
        if let Some(v) = orthogonalize_against(&basis, m, n0, drop_tol) {
            basis.push(v);
        }
    }
    basis
}

/// Projects `m` off `basis` (twice) and normalizes; `None` when what remains
/// is below `drop_tol * reference_norm`.
pub(crate) fn orthogonalize_against(
    basis: &[CMatrix],
    m: &CMatrix,
    reference_norm: f64,
    drop_tol: f64,
) -> Option<CMatrix> {
    let mut v = m.clone();
    for _ in 0..2 {
        for b in basis {
            let c = hs_unchecked(&v, b);
            v.axpy(-c, b);
        }
    }
    let nv = v.frobenius();
    if nv <= drop_tol * reference_norm {
        None
    } else {
        Some(v.scale_re(1.0 / nv))
    }
}

/// Basis matrices stacked as columns of the Hilbert–Schmidt space.
pub fn basis_columns(mats: &[CMatrix]) -> DMatrix<c64> {
    let dim = mats.first().map(|m| m.rows() * m.cols()).unwrap_or(0);
    let mut out = DMatrix::zeros(dim, mats.len());
    for (j, m) in mats.iter().enumerate() {
        for (r, z) in m.row_major().into_iter().enumerate() {
            out[(r, j)] = z;
        }
    }
    out
}

/// `max(‖(I-P_b) P_a‖, ‖(I-P_a) P_b‖)` for orthonormal column bases.
pub fn projection_distance(qa: &DMatrix<c64>, qb: &DMatrix<c64>) -> f64 {
    fn one_side(qa: &DMatrix<c64>, qb: &DMatrix<c64>) -> f64 {
        if qa.ncols() == 0 {
            return 0.0;
        }
        if qb.ncols() == 0 {
            return 1.0;
        }
        let r = qa - qb * (qb.adjoint() * qa);
        r.svd(false, false).singular_values.iter().copied().fold(0.0, f64::max).min(1.0)
    }
    if qa.nrows() != qb.nrows() {
        return 1.0;
    }
    one_side(qa, qb).max(one_side(qb, qa))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> c64 {
        c64::new(x, 0.0)
    }

    #[test]
    fn kron_block_examples() {
        let k = kron(&CMatrix::unit(2, 0, 0), &CMatrix::identity(3));
        let expect = CMatrix::from_real(
            6,
            6,
            &(0..36).map(|t| if t % 7 == 0 && t / 6 < 3 { 1.0 } else { 0.0 }).collect::<Vec<_>>(),
        );
        assert_eq!(k, expect);
        assert_eq!(kron(&CMatrix::identity(2), &CMatrix::identity(3)), CMatrix::identity(6));
        let k = kron(&CMatrix::unit(2, 0, 1), &CMatrix::unit(2, 0, 1));
        // brute-force index expansion: (0*2+0, 1*2+1) = (0, 3)
        for i in 0..4 {
            for j in 0..4 {
                let want = if (i, j) == (0, 3) { 1.0 } else { 0.0 };
                assert_eq!(k.get(i, j), re(want));
            }
        }
    }

    #[test]
    fn hs_inner_examples() {
        let e11 = CMatrix::unit(2, 0, 0);
        let e12 = CMatrix::unit(2, 0, 1);
        let e22 = CMatrix::unit(2, 1, 1);
        assert_eq!(hs_inner(&e11, &e11).unwrap(), re(1.0));
        assert_eq!(hs_inner(&e12, &e12).unwrap(), re(1.0));
        assert_eq!(hs_inner(&e11, &e22).unwrap(), re(0.0));
        assert!(matches!(hs_inner(&e11, &CMatrix::identity(3)), Err(Error::Dimension(_))));
    }

    #[test]
    fn nullspace_examples() {
        let tol = Tolerance::default();
        assert!(nullspace(&CMatrix::identity(3), &tol).is_empty());
        let z = nullspace(&CMatrix::zeros(4, 4), &tol);
        assert_eq!(z.len(), 4);
        // left multiplication by e11 on M_2, in row-major vec coordinates
        let e11 = CMatrix::unit(2, 0, 0);
        let op = kron(&e11, &CMatrix::identity(2));
        let ns = nullspace(&op, &tol);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!((&op * v).max_abs() < tol.abs_eps);
        }
        // wide matrix: 1x3 row has a 2-dim kernel
        let row = CMatrix::from_real(1, 3, &[1.0, 1.0, 0.0]);
        assert_eq!(nullspace(&row, &tol).len(), 2);
    }

    #[test]
    fn nullspace_is_orthonormal() {
        let tol = Tolerance::default();
        let mut rng = seeded_rng(3);
        let a = complex_gaussian(&mut rng, 3, 7);
        let ns = nullspace(&a, &tol);
        assert_eq!(ns.len(), 4);
        for (i, u) in ns.iter().enumerate() {
            for (j, v) in ns.iter().enumerate() {
                let ip: c64 = u.as_na().iter().zip(v.as_na().iter()).map(|(a, b)| a * b.conj()).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - re(want)).norm() < tol.abs_eps);
            }
            assert!((&a * u).max_abs() < tol.abs_eps);
        }
    }

    #[test]
    fn random_unitary_contract() {
        let u1 = random_unitary(1, 99);
        assert!((u1.get(0, 0).norm() - 1.0).abs() < 1e-12);
        assert_eq!(random_unitary(6, 42), random_unitary(6, 42));
        assert_ne!(random_unitary(6, 42), random_unitary(6, 43));
        assert!(random_unitary(6, 7).unitarity_residual() <= 1e-9);
    }

    #[test]
    fn dyadic_unitary_is_exactly_unitary() {
        let mut rng = seeded_rng(11);
        let u = random_dyadic_unitary(&mut rng, 6, 12);
        assert_eq!(u.unitarity_residual(), 0.0);
    }

    #[test]
    fn commutation_matrix_swaps_factors() {
        let mut rng = seeded_rng(5);
        let a = complex_gaussian(&mut rng, 2, 2);
        let b = complex_gaussian(&mut rng, 3, 3);
        let k = commutation_matrix(2, 3);
        let lhs = &(&k * &kron(&a, &b)) * &k.adjoint();
        assert_eq!(lhs.max_diff(&kron(&b, &a)), 0.0);
    }

    #[test]
    fn rank_of_rank_deficient() {
        let tol = Tolerance::default();
        let a = CMatrix::from_real(3, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 0.0, 1.0, 0.0]);
        assert_eq!(rank(&a, &tol), 2);
        assert_eq!(rank(&CMatrix::zeros(2, 5), &tol), 0);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let m = CMatrix::from_row_major(1, 2, &[c64::new(1.0, -2.0), c64::new(0.5, 0.0)]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"entries":[[1.0,-2.0],[0.5,0.0]]}"#);
        assert_eq!(serde_json::from_str::<CMatrix>(&s).unwrap(), m);
        assert!(serde_json::from_str::<CMatrix>(r#"{"rows":2,"cols":2,"entries":[[1,0]]}"#).is_err());
    }

    #[test]
    fn projection_distance_basics() {
        let a = basis_columns(&[CMatrix::unit(2, 0, 0), CMatrix::unit(2, 1, 1)]);
        let b = basis_columns(&[
            CMatrix::identity(2).scale_re(std::f64::consts::FRAC_1_SQRT_2),
            (&CMatrix::unit(2, 0, 0) - &CMatrix::unit(2, 1, 1)).scale_re(std::f64::consts::FRAC_1_SQRT_2),
        ]);
        assert!(projection_distance(&a, &b) < 1e-15);
        let c = basis_columns(&[CMatrix::unit(2, 0, 1)]);
        assert!((projection_distance(&a, &c) - 1.0).abs() < 1e-15);
    }
}
