//! Unital *-homomorphisms `M_d(ℂ) → M_N(ℂ)`, stored by the image of the
//! matrix units.

use nalgebra::DMatrix;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::frames::{matrix_unit_frame, random_frame, tensor_frame, verify_frame, Frame};
use crate::linalg::{c64, kron, CMatrix, Tolerance};

/// Residual bound for the Noether–Skolem normal form `h(X) = U (X ⊗ E) U^*`.
pub const INTERTWINER_RESIDUAL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarHom {
    src: usize,
    dst: usize,
    frame: Frame,
}

#[derive(Deserialize)]
struct StarHomJson {
    src: usize,
    dst: usize,
    frame: Frame,
}

impl<'de> Deserialize<'de> for StarHom {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = StarHomJson::deserialize(de)?;
        StarHom::new(raw.src, raw.dst, raw.frame).map_err(D::Error::custom)
    }
}

impl StarHom {
    /// Shape check only; see [`hom_from_frame`] for the validated route.
    pub fn new(src: usize, dst: usize, frame: Frame) -> Result<Self> {
        if frame.d() != src || frame.ambient() != dst {
            return Err(Error::Dimension(format!(
                "hom M_{src} -> M_{dst} with a degree {} frame in M_{}",
                frame.d(),
                frame.ambient()
            )));
        }
        Ok(StarHom { src, dst, frame })
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// `dst / src`, the multiplicity of the embedding.
    pub fn ratio(&self) -> usize {
        self.dst / self.src
    }

    pub fn max_diff(&self, other: &StarHom) -> f64 {
        if self.src != other.src || self.dst != other.dst {
            return f64::INFINITY;
        }
        self.frame.max_diff(&other.frame)
    }
}

pub fn hom_from_frame(alpha: Frame, tol: &Tolerance) -> Result<StarHom> {
    let rep = verify_frame(alpha.mats(), tol)?;
    if !rep.pass {
        return Err(Error::InvalidFrame(format!("axiom residual {:.3e}", rep.max_err())));
    }
    StarHom::new(alpha.d(), alpha.ambient(), alpha)
}

pub fn frame_of_hom(h: &StarHom) -> Frame {
    h.frame.clone()
}

/// `X ↦ X ⊗ E_l`.
pub fn basepoint_hom(d: usize, l: usize) -> StarHom {
    StarHom::new(d, d * l, matrix_unit_frame(d, l)).expect("basepoint shape")
}

pub fn identity_hom(d: usize) -> StarHom {
    basepoint_hom(d, 1)
}

/// `X ↦ V (X ⊗ E_l) V^*` for a Haar-random `V`.
pub fn random_hom(d: usize, l: usize, seed: u64) -> StarHom {
    StarHom::new(d, d * l, random_frame(d, l, seed)).expect("random hom shape")
}

/// `h(T) = Σ T[i,j] h(e_{i,j})`.
pub fn ev(h: &StarHom, t: &CMatrix) -> Result<CMatrix> {
    if !t.is_square() || t.rows() != h.src {
        return Err(Error::Dimension(format!(
            "ev of a {}x{} matrix under a hom from M_{}",
            t.rows(),
            t.cols(),
            h.src
        )));
    }
    let mut out = CMatrix::zeros(h.dst, h.dst);
    let zero = c64::new(0.0, 0.0);
    for i in 0..h.src {
        for j in 0..h.src {
            let z = t.get(i, j);
            if z != zero {
                out.axpy(z, h.frame.get(i, j));
            }
        }
    }
    Ok(out)
}

/// Image frame `h_*(α)`.
pub fn pushforward(h: &StarHom, alpha: &Frame) -> Result<Frame> {
    if alpha.ambient() != h.src {
        return Err(Error::Dimension(format!(
            "frame in M_{} pushed along a hom from M_{}",
            alpha.ambient(),
            h.src
        )));
    }
    let mats = alpha.mats().iter().map(|m| ev(h, m)).collect::<Result<Vec<_>>>()?;
    Frame::new(alpha.d(), h.dst, mats)
}

/// `h ⊗ id_{M_l}`.
pub fn iota(h: &StarHom, l: usize) -> StarHom {
    StarHom::new(h.src * l, h.dst * l, tensor_frame(&h.frame, &matrix_unit_frame(l, 1))).expect("iota shape")
}

/// Plain composition `h2 ∘ h1`, requiring `h1.dst == h2.src`.
pub fn compose(h2: &StarHom, h1: &StarHom) -> Result<StarHom> {
    if h1.dst != h2.src {
        return Err(Error::Dimension(format!("cannot compose M_{} -> M_{} after M_{} -> M_{}", h2.src, h2.dst, h1.src, h1.dst)));
    }
    StarHom::new(h1.src, h2.dst, pushforward(h2, &h1.frame)?)
}

/// `ι(h2) ∘ h1`, the suspension ratio being `h1.dst / h2.src`.
pub fn compose_phi(h2: &StarHom, h1: &StarHom) -> Result<StarHom> {
    if h1.dst % h2.src != 0 {
        return Err(Error::Dimension(format!(
            "M_{} is not a multiple of the source M_{} of the outer hom",
            h1.dst, h2.src
        )));
    }
    let ratio = h1.dst / h2.src;
    if ratio == 1 {
        return compose(h2, h1);
    }
    compose(&iota(h2, ratio), h1)
}

/// `T(h1, h2) = h1 ⊗ h2`.
pub fn tensor_hom(h1: &StarHom, h2: &StarHom) -> StarHom {
    StarHom::new(h1.src * h2.src, h1.dst * h2.dst, tensor_frame(&h1.frame, &h2.frame)).expect("tensor hom shape")
}

/// Whether `h2 = M_l(h1) = h1 ⊗ id_l` for the `l` forced by the sizes.
pub fn same_stabilization(h1: &StarHom, h2: &StarHom, tol: &Tolerance) -> bool {
    if h2.src % h1.src != 0 {
        return false;
    }
    let l = h2.src / h1.src;
    h1.dst * l == h2.dst && iota(h1, l).max_diff(h2) <= tol.abs_eps
}

/// Largest deviation `‖h(e_{i,j}) - U (e_{i,j} ⊗ E_l) U^*‖_max`.
pub fn intertwiner_residual(h: &StarHom, u: &CMatrix) -> f64 {
    let l = h.ratio();
    let ua = u.adjoint();
    let id = CMatrix::identity(l);
    let mut worst: f64 = 0.0;
    for i in 0..h.src {
        for j in 0..h.src {
            let normal = kron(&CMatrix::unit(h.src, i, j), &id);
            let back = &(u * &normal) * &ua;
            worst = worst.max(back.max_diff(h.frame.get(i, j)));
        }
    }
    worst
}

/// Unitary `U` with `h(X) = U (X ⊗ E_l) U^*`.
///
/// Columns are `h(e_{i,1}) v_s` in `(i, s)` order, where `{v_s}` is an
/// orthonormal basis of the range of `h(e_{1,1})`. The global phase is fixed by
/// making the first nonzero entry of the first column real positive.
pub fn intertwiner(h: &StarHom) -> Result<CMatrix> {
    let (d, n) = (h.src, h.dst);
    if n % d != 0 {
        return Err(Error::Dimension(format!("M_{d} does not embed unitally in M_{n}")));
    }
    let l = n / d;
    let p1 = h.frame.get(0, 0);
    let range = projection_range(p1);
    if range.ncols() != l {
        return Err(Error::NotStarHom(((range.ncols() as f64) - l as f64).abs()));
    }
    let mut u = DMatrix::<c64>::zeros(n, n);
    for i in 0..d {
        let img = h.frame.get(i, 0).as_na() * &range;
        u.view_mut((0, i * l), (n, l)).copy_from(&img);
    }
    if let Some(z) = u.column(0).iter().find(|z| z.norm() > 1e-12).copied() {
        let ph = z.conj() / z.norm();
        u *= ph;
    }
    let u = CMatrix::from_na(u);
    let res = intertwiner_residual(h, &u).max(u.unitarity_residual());
    if res.is_nan() || res > INTERTWINER_RESIDUAL {
        return Err(Error::NotStarHom(res));
    }
    Ok(u)
}

/// Orthonormal basis (as columns) of the range of a near-projection.
pub(crate) fn projection_range(p: &CMatrix) -> DMatrix<c64> {
    let herm = (p.as_na() + p.as_na().adjoint()) * c64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).filter(|&k| eig.eigenvalues[k] > 0.5).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let n = p.rows();
    let mut out = DMatrix::zeros(n, idx.len());
    for (c, &k) in idx.iter().enumerate() {
        out.set_column(c, &eig.eigenvectors.column(k));
    }
    out
}

/// Deviation of `m` from the block-scalar form `E_k ⊗ W` (with `l x l`
/// blocks): the largest off-diagonal block entry or diagonal-block mismatch.
pub fn block_scalar_deviation(m: &CMatrix, k: usize, l: usize) -> f64 {
    let mut worst: f64 = 0.0;
    let first = m.block(0, 0, l, l);
    for a in 0..k {
        for b in 0..k {
            let blk = m.block(a * l, b * l, l, l);
            let e = if a == b { blk.max_diff(&first) } else { blk.max_abs() };
            worst = worst.max(e);
        }
    }
    worst
}
