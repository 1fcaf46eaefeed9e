//! Frames: ordered `d x d` families of matrix units inside `M_N(ℂ)`.
//!
//! A frame of degree `d` in ambient size `N` is stored as `d²` matrices,
//! row-major in the index pair `(i, j)`. Degree splits `d = d1 * d2` are
//! always first-factor-major: the pair `((i, u), (j, v))` with `i, j < d1` and
//! `u, v < d2` lives at position `(i * d2 + u, j * d2 + v)`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c64, hs_unchecked, kron, random_unitary, CMatrix, Tolerance};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Frame {
    d: usize,
    ambient: usize,
    mats: Vec<CMatrix>,
}

#[derive(Deserialize)]
struct FrameJson {
    d: usize,
    ambient: usize,
    mats: Vec<CMatrix>,
}

impl<'de> Deserialize<'de> for Frame {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = FrameJson::deserialize(de)?;
        Frame::new(raw.d, raw.ambient, raw.mats).map_err(D::Error::custom)
    }
}

/// Worst-case violation of each frame axiom.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub axiom_i_maxerr: f64,
    pub axiom_ii_maxerr: f64,
    pub axiom_iii_maxerr: f64,
    pub pass: bool,
}

impl FrameReport {
    pub fn max_err(&self) -> f64 {
        self.axiom_i_maxerr.max(self.axiom_ii_maxerr).max(self.axiom_iii_maxerr)
    }
}

impl Frame {
    /// Checks the shape invariants only; the algebraic axioms are checked by
    /// [`verify_frame`].
    pub fn new(d: usize, ambient: usize, mats: Vec<CMatrix>) -> Result<Self> {
        if d == 0 || ambient == 0 {
            return Err(Error::Format("frame degree and ambient size must be positive".into()));
        }
        if mats.len() != d * d {
            return Err(Error::Format(format!("degree {d} frame needs {} matrices, got {}", d * d, mats.len())));
        }
        if ambient % d != 0 {
            return Err(Error::Dimension(format!("degree {d} does not divide ambient size {ambient}")));
        }
        if let Some(m) = mats.iter().find(|m| m.rows() != ambient || m.cols() != ambient) {
            return Err(Error::Dimension(format!(
                "frame matrix is {}x{}, expected {ambient}x{ambient}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Frame { d, ambient, mats })
    }

    /// Infers the degree from the number of matrices.
    pub fn from_list(mats: Vec<CMatrix>) -> Result<Self> {
        let d = square_root(mats.len()).ok_or(Error::NotSquareCount(mats.len()))?;
        let ambient = mats.first().map(|m| m.rows()).unwrap_or(0);
        Frame::new(d, ambient, mats)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn mats(&self) -> &[CMatrix] {
        &self.mats
    }

    pub fn into_mats(self) -> Vec<CMatrix> {
        self.mats
    }

    pub fn get(&self, i: usize, j: usize) -> &CMatrix {
        &self.mats[i * self.d + j]
    }

    /// The degree-one frame `{E_n}`.
    pub fn trivial(n: usize) -> Self {
        matrix_unit_frame(1, n)
    }

    /// Applies `f` to every matrix, keeping the index layout.
    pub fn map(&self, ambient: usize, f: impl Fn(&CMatrix) -> CMatrix) -> Result<Frame> {
        Frame::new(self.d, ambient, self.mats.iter().map(f).collect())
    }

    /// Largest entrywise deviation between corresponding matrices.
    pub fn max_diff(&self, other: &Frame) -> f64 {
        if self.d != other.d || self.ambient != other.ambient {
            return f64::INFINITY;
        }
        self.mats.iter().zip(&other.mats).map(|(a, b)| a.max_diff(b)).fold(0.0, f64::max)
    }

    /// Relabels the frame index: `out[a][b] = self[perm[a]][perm[b]]`.
    pub fn permute_indices(&self, perm: &[usize]) -> Result<Frame> {
        if perm.len() != self.d {
            return Err(Error::Dimension(format!("permutation of length {} for degree {}", perm.len(), self.d)));
        }
        let mut mats = Vec::with_capacity(self.d * self.d);
        for &a in perm {
            for &b in perm {
                mats.push(self.get(a, b).clone());
            }
        }
        Frame::new(self.d, self.ambient, mats)
    }
}

fn square_root(n: usize) -> Option<usize> {
    if n == 0 {
        return None;
    }
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

/// `{e_{i,j} ⊗ E_cofactor}` in `M_{d * cofactor}`.
pub fn matrix_unit_frame(d: usize, cofactor: usize) -> Frame {
    let id = CMatrix::identity(cofactor);
    let mats = (0..d * d).map(|t| kron(&CMatrix::unit(d, t / d, t % d), &id)).collect();
    Frame::new(d, d * cofactor, mats).expect("matrix-unit frame shape")
}

/// Reports the worst violation of the three frame axioms. Orthonormality is
/// measured for the trace form normalized so that every member of a frame of
/// degree `d` in `M_N` has norm one, i.e. `(x, y) = (d / N) tr(x y^*)`.
pub fn verify_frame(candidate: &[CMatrix], tol: &Tolerance) -> Result<FrameReport> {
    let d = square_root(candidate.len()).ok_or(Error::NotSquareCount(candidate.len()))?;
    let n = candidate[0].rows();
    if candidate.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::Dimension("frame candidates must be square of equal size".into()));
    }
    let at = |i: usize, j: usize| &candidate[i * d + j];

    let mut err_i: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            for r in 0..d {
                for s in 0..d {
                    let prod = at(i, j) * at(r, s);
                    let e = if j == r { prod.max_diff(at(i, s)) } else { prod.max_abs() };
                    err_i = err_i.max(e);
                }
            }
        }
    }

    let mut sum = CMatrix::zeros(n, n);
    for i in 0..d {
        sum = &sum + at(i, i);
    }
    let err_ii = sum.max_diff(&CMatrix::identity(n));

    let norm = d as f64 / n as f64;
    let mut err_iii: f64 = 0.0;
    for a in 0..d * d {
        for b in a..d * d {
            let g = hs_unchecked(&candidate[a], &candidate[b]) * norm;
            let want = if a == b { c64::new(1.0, 0.0) } else { c64::new(0.0, 0.0) };
            err_iii = err_iii.max((g - want).norm());
        }
    }

    let pass = err_i <= tol.abs_eps && err_ii <= tol.abs_eps && err_iii <= tol.abs_eps;
    Ok(FrameReport { axiom_i_maxerr: err_i, axiom_ii_maxerr: err_ii, axiom_iii_maxerr: err_iii, pass })
}

fn split_of(beta: &Frame, outer: usize) -> Result<usize> {
    if outer == 0 || beta.d % outer != 0 {
        return Err(Error::Dimension(format!("{outer} does not split frame degree {}", beta.d)));
    }
    Ok(beta.d / outer)
}

/// First projection: the degree-`outer` frame
/// `α_{i,j} = Σ_t β_{(i,t),(j,t)}`.
pub fn pi1(beta: &Frame, outer: usize) -> Result<Frame> {
    let inner = split_of(beta, outer)?;
    let n = beta.ambient;
    let mut mats = Vec::with_capacity(outer * outer);
    for i in 0..outer {
        for j in 0..outer {
            let mut acc = CMatrix::zeros(n, n);
            for t in 0..inner {
                acc = &acc + beta.get(i * inner + t, j * inner + t);
            }
            mats.push(acc);
        }
    }
    Frame::new(outer, n, mats)
}

/// Second projection: the degree-`beta.d / outer` frame
/// `γ_{u,v} = Σ_t β_{(t,u),(t,v)}`.
pub fn pi2(beta: &Frame, outer: usize) -> Result<Frame> {
    let inner = split_of(beta, outer)?;
    let n = beta.ambient;
    let mut mats = Vec::with_capacity(inner * inner);
    for u in 0..inner {
        for v in 0..inner {
            let mut acc = CMatrix::zeros(n, n);
            for t in 0..outer {
                acc = &acc + beta.get(t * inner + u, t * inner + v);
            }
            mats.push(acc);
        }
    }
    Frame::new(inner, n, mats)
}

/// Largest commutator entry between members of the two frames.
pub fn commutation_residual(alpha: &Frame, gamma: &Frame) -> f64 {
    let mut worst: f64 = 0.0;
    for a in &alpha.mats {
        for g in &gamma.mats {
            worst = worst.max(a.commutator(g).max_abs());
        }
    }
    worst
}

/// Dot product of commuting frames: entry `((i,u),(j,v)) = α_{i,j} γ_{u,v}`.
pub fn dot(alpha: &Frame, gamma: &Frame, tol: &Tolerance) -> Result<Frame> {
    if alpha.ambient != gamma.ambient {
        return Err(Error::Dimension(format!(
            "dot of frames in M_{} and M_{}",
            alpha.ambient, gamma.ambient
        )));
    }
    let res = commutation_residual(alpha, gamma);
    if res > tol.abs_eps {
        return Err(Error::NonCommuting(res));
    }
    let (da, dg) = (alpha.d, gamma.d);
    let d = da * dg;
    let mut mats = Vec::with_capacity(d * d);
    for i in 0..da {
        for u in 0..dg {
            for j in 0..da {
                for v in 0..dg {
                    mats.push(alpha.get(i, j) * gamma.get(u, v));
                }
            }
        }
    }
    Frame::new(d, alpha.ambient, mats)
}

/// Tensor product of frames: entry `((i,p),(j,q)) = α_{i,j} ⊗ φ_{p,q}`.
pub fn tensor_frame(alpha: &Frame, phi: &Frame) -> Frame {
    let (da, dp) = (alpha.d, phi.d);
    let d = da * dp;
    let mut mats = Vec::with_capacity(d * d);
    for i in 0..da {
        for p in 0..dp {
            for j in 0..da {
                for q in 0..dp {
                    mats.push(kron(alpha.get(i, j), phi.get(p, q)));
                }
            }
        }
    }
    Frame::new(d, alpha.ambient * phi.ambient, mats).expect("tensor frame shape")
}

/// Index permutation taking the tensor layout `(i1, i2, j1, j2)` of two split
/// frames (degrees `b1 * b2` and `p1 * p2`) to the interleaved layout
/// `(i1, j1, i2, j2)`, so the first `b1 * p1` factor becomes the outer one.
pub fn interleave_permutation(b1: usize, b2: usize, p1: usize, p2: usize) -> Vec<usize> {
    let mut perm = Vec::with_capacity(b1 * b2 * p1 * p2);
    for i1 in 0..b1 {
        for j1 in 0..p1 {
            for i2 in 0..b2 {
                for j2 in 0..p2 {
                    perm.push((i1 * b2 + i2) * (p1 * p2) + j1 * p2 + j2);
                }
            }
        }
    }
    perm
}

/// Tensor product of split frames `β` (outer part `b_outer`) and `ψ` (outer
/// part `p_outer`), reindexed so that its first projection with split
/// `b_outer * p_outer` is `π₁(β) ⊗ π₁(ψ)` and its second is `π₂(β) ⊗ π₂(ψ)`.
pub fn split_tensor(beta: &Frame, b_outer: usize, psi: &Frame, p_outer: usize) -> Result<Frame> {
    let b_inner = split_of(beta, b_outer)?;
    let p_inner = split_of(psi, p_outer)?;
    tensor_frame(beta, psi).permute_indices(&interleave_permutation(b_outer, b_inner, p_outer, p_inner))
}

/// `u α u^*`, entrywise.
pub fn conjugate_frame(u: &CMatrix, alpha: &Frame, tol: &Tolerance) -> Result<Frame> {
    if u.rows() != alpha.ambient || !u.is_square() {
        return Err(Error::Dimension(format!(
            "conjugator is {}x{}, frame ambient is {}",
            u.rows(),
            u.cols(),
            alpha.ambient
        )));
    }
    let res = u.unitarity_residual();
    if res > tol.abs_eps {
        return Err(Error::NotUnitary(res));
    }
    Ok(conjugate_unchecked(u, alpha))
}

pub(crate) fn conjugate_unchecked(u: &CMatrix, alpha: &Frame) -> Frame {
    let ua = u.adjoint();
    alpha.map(alpha.ambient, |m| &(u * m) * &ua).expect("conjugation keeps shape")
}

/// A Haar-random frame: `matrix_unit_frame(d, cofactor)` conjugated by a
/// random unitary.
pub fn random_frame(d: usize, cofactor: usize, seed: u64) -> Frame {
    let u = random_unitary(d * cofactor, seed);
    conjugate_unchecked(&u, &matrix_unit_frame(d, cofactor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutation_matrix, random_unitary};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn matrix_unit_frames() {
        let f = matrix_unit_frame(2, 1);
        assert_eq!(f.mats(), &[CMatrix::unit(2, 0, 0), CMatrix::unit(2, 0, 1), CMatrix::unit(2, 1, 0), CMatrix::unit(2, 1, 1)]);
        assert_eq!(matrix_unit_frame(1, 4).mats(), &[CMatrix::identity(4)]);
        let f = matrix_unit_frame(2, 3);
        assert_eq!(f.mats().len(), 4);
        for m in f.mats() {
            assert_eq!(crate::linalg::rank(m, &tol()), 3);
        }
        let rep = verify_frame(f.mats(), &tol()).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.max_err(), 0.0);
    }

    #[test]
    fn verify_rejects_scaled_unit() {
        let mut mats = matrix_unit_frame(2, 1).into_mats();
        mats[1] = mats[1].scale_re(2.0);
        let rep = verify_frame(&mats, &tol()).unwrap();
        assert!(!rep.pass);
        assert!(rep.axiom_i_maxerr > 0.5);
        assert!(rep.axiom_iii_maxerr > 0.5);
        assert!(matches!(verify_frame(&mats[..3], &tol()), Err(Error::NotSquareCount(3))));
    }

    #[test]
    fn conjugated_frame_passes() {
        let f = random_frame(2, 3, 17);
        assert!(verify_frame(f.mats(), &tol()).unwrap().pass);
    }

    #[test]
    fn similarity_keeps_i_and_ii_but_breaks_iii() {
        // A non-unitary similarity preserves the multiplication table and the
        // unit sum, so axiom (iii) is not implied by (i) and (ii).
        let s = CMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let s_inv = CMatrix::from_real(2, 2, &[1.0, -1.0, 0.0, 1.0]);
        let mats: Vec<CMatrix> = matrix_unit_frame(2, 1).mats().iter().map(|m| &(&s * m) * &s_inv).collect();
        let rep = verify_frame(&mats, &tol()).unwrap();
        assert!(rep.axiom_i_maxerr < 1e-15 && rep.axiom_ii_maxerr < 1e-15);
        assert!(rep.axiom_iii_maxerr > 0.5);
    }

    #[test]
    fn projections_of_matrix_units() {
        let eps = matrix_unit_frame(4, 1);
        let a = pi1(&eps, 2).unwrap();
        assert_eq!(a, matrix_unit_frame(2, 2));
        let g = pi2(&eps, 2).unwrap();
        let want = Frame::new(
            2,
            4,
            (0..4).map(|t| kron(&CMatrix::identity(2), &CMatrix::unit(2, t / 2, t % 2))).collect(),
        )
        .unwrap();
        assert_eq!(g, want);
        // trivial splits
        assert_eq!(pi1(&eps, 4).unwrap(), eps);
        assert_eq!(pi2(&eps, 4).unwrap(), Frame::trivial(4));
        assert!(matches!(pi1(&eps, 3), Err(Error::Dimension(_))));
    }

    #[test]
    fn random_split_round_trip() {
        let beta = random_frame(4, 3, 5);
        let a = pi1(&beta, 2).unwrap();
        let g = pi2(&beta, 2).unwrap();
        assert!(verify_frame(a.mats(), &tol()).unwrap().pass);
        assert!(verify_frame(g.mats(), &tol()).unwrap().pass);
        assert!(commutation_residual(&a, &g) <= 1e-9);
        assert!(dot(&a, &g, &tol()).unwrap().max_diff(&beta) <= 1e-9);
    }

    #[test]
    fn dot_examples() {
        let a = matrix_unit_frame(2, 2);
        let g = pi2(&matrix_unit_frame(4, 1), 2).unwrap();
        assert_eq!(dot(&a, &g, &tol()).unwrap(), matrix_unit_frame(4, 1));
        assert_eq!(dot(&a, &Frame::trivial(4), &tol()).unwrap(), a);
        let b = random_frame(2, 2, 1);
        assert!(matches!(dot(&a, &b, &tol()), Err(Error::NonCommuting(_))));
    }

    #[test]
    fn tensor_examples() {
        let phi = random_frame(2, 3, 9);
        assert_eq!(tensor_frame(&Frame::trivial(1), &phi), phi);
        let t = tensor_frame(&matrix_unit_frame(2, 1), &matrix_unit_frame(3, 1));
        assert_eq!(t, matrix_unit_frame(6, 1));
        let t = tensor_frame(&random_frame(2, 2, 3), &random_frame(3, 1, 4));
        assert!(verify_frame(t.mats(), &tol()).unwrap().pass);
    }

    #[test]
    fn tensor_commutes_up_to_shuffle() {
        let a = random_frame(2, 2, 21);
        let p = random_frame(3, 1, 22);
        let k = commutation_matrix(4, 3);
        let lhs = conjugate_frame(&k, &tensor_frame(&a, &p), &tol()).unwrap();
        // index transposition (i, p) -> (p, i)
        let perm: Vec<usize> = (0..6).map(|t| (t % 2) * 3 + t / 2).collect();
        let rhs = tensor_frame(&p, &a);
        assert_eq!(lhs.permute_indices(&perm).unwrap().max_diff(&rhs), 0.0);
    }

    #[test]
    fn conjugation_examples() {
        let f = matrix_unit_frame(2, 3);
        assert_eq!(conjugate_frame(&CMatrix::identity(6), &f, &tol()).unwrap(), f);
        let v = random_unitary(3, 8);
        let u = kron(&CMatrix::identity(2), &v);
        assert!(conjugate_frame(&u, &f, &tol()).unwrap().max_diff(&f) <= 1e-12);
        // cyclic permutation of the six basis vectors
        let perm = CMatrix::from_fn(6, 6, |i, j| if (j + 1) % 6 == i { c64::new(1.0, 0.0) } else { c64::new(0.0, 0.0) });
        let g = conjugate_frame(&perm, &f, &tol()).unwrap();
        assert!(verify_frame(g.mats(), &tol()).unwrap().pass);
        assert!(matches!(conjugate_frame(&CMatrix::identity(6).scale_re(2.0), &f, &tol()), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn split_tensor_projects_factorwise() {
        let beta = random_frame(4, 1, 31);
        let psi = random_frame(2, 3, 32);
        let t = split_tensor(&beta, 2, &psi, 2).unwrap();
        let p1 = pi1(&t, 4).unwrap();
        let want = tensor_frame(&pi1(&beta, 2).unwrap(), &pi1(&psi, 2).unwrap());
        assert!(p1.max_diff(&want) <= 1e-12);
        let p2 = pi2(&t, 4).unwrap();
        let want = tensor_frame(&pi2(&beta, 2).unwrap(), &pi2(&psi, 2).unwrap());
        assert!(p2.max_diff(&want) <= 1e-12);
    }
}
