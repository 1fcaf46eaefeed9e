//! Unital *-subalgebras of `M_N(ℂ)`: generated subalgebras, centralizers,
//! frame extraction, the subalgebra functor on morphisms, and the centralizer
//! tensor identity.
//!
//! Subalgebras are kept as Hilbert–Schmidt orthonormal bases in ambient
//! coordinates. Structure questions (centralizers, centers, matrix units) go
//! through a block decomposition computed from a generic hermitian element:
//! its eigenprojections are minimal projections of the algebra, and generic
//! compressions `p_c x p_{c'}` link the minimal projections belonging to the
//! same simple summand.

use nalgebra::DMatrix;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::frames::{verify_frame, Frame};
use crate::homspace::{ev, tensor_hom, StarHom};
use crate::linalg::{
    basis_columns, c64, complex_gaussian, derive_seed, gaussian_re, hs_unchecked, kron, orthogonalize_against,
    orthonormalize, projection_distance, seeded_rng, CMatrix, Tolerance,
};

/// Threshold on the projection distance for two subalgebras to count as equal.
pub const SUBSPACE_TOL: f64 = 1e-8;

const DECOMPOSITION_SEED: u64 = 0x6672_6361_6c63;
const DECOMPOSITION_ATTEMPTS: u64 = 5;
/// Cosine-of-angle threshold below which two subspaces share a direction.
const INTERSECTION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Subalgebra {
    ambient: usize,
    basis: Vec<CMatrix>,
}

#[derive(Deserialize)]
struct SubalgebraJson {
    ambient: usize,
    basis: Vec<CMatrix>,
}

impl<'de> Deserialize<'de> for Subalgebra {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = SubalgebraJson::deserialize(de)?;
        Subalgebra::from_spanning(raw.ambient, &raw.basis).map_err(D::Error::custom)
    }
}

impl Subalgebra {
    /// Orthonormalizes a spanning set. Closure is not checked here.
    pub fn from_spanning(ambient: usize, mats: &[CMatrix]) -> Result<Self> {
        if ambient == 0 {
            return Err(Error::Format("ambient size must be positive".into()));
        }
        if let Some(m) = mats.iter().find(|m| m.rows() != ambient || m.cols() != ambient) {
            return Err(Error::Dimension(format!("{}x{} matrix in M_{ambient}", m.rows(), m.cols())));
        }
        Ok(Subalgebra { ambient, basis: orthonormalize(mats, 1e-8) })
    }

    fn from_orthonormal(ambient: usize, basis: Vec<CMatrix>) -> Self {
        Subalgebra { ambient, basis }
    }

    pub fn scalars(n: usize) -> Self {
        Subalgebra::from_orthonormal(n, vec![CMatrix::identity(n).scale_re(1.0 / (n as f64).sqrt())])
    }

    pub fn full(n: usize) -> Self {
        Subalgebra::from_orthonormal(n, (0..n * n).map(|t| CMatrix::unit(n, t / n, t % n)).collect())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    fn columns(&self) -> DMatrix<c64> {
        if self.basis.is_empty() {
            return DMatrix::zeros(self.ambient * self.ambient, 0);
        }
        basis_columns(&self.basis)
    }

    /// Operator-norm distance between the orthogonal projections onto the
    /// two spans (1 when the dimensions differ).
    pub fn distance(&self, other: &Subalgebra) -> f64 {
        if self.ambient != other.ambient || self.dim() != other.dim() {
            return 1.0;
        }
        projection_distance(&self.columns(), &other.columns())
    }

    /// Relative Frobenius norm of the component of `x` orthogonal to the span.
    pub fn membership_residual(&self, x: &CMatrix) -> f64 {
        let nx = x.frobenius();
        if nx == 0.0 {
            return 0.0;
        }
        let mut r = x.clone();
        for b in &self.basis {
            let c = hs_unchecked(&r, b);
            r.axpy(-c, b);
        }
        r.frobenius() / nx
    }

    /// Largest membership residual of pairwise products and adjoints, plus
    /// the residual of the identity. Quadratic in the dimension.
    pub fn closure_residual(&self) -> f64 {
        let mut worst = self.membership_residual(&CMatrix::identity(self.ambient));
        for a in &self.basis {
            worst = worst.max(self.membership_residual(&a.adjoint()));
            for b in &self.basis {
                worst = worst.max(self.membership_residual(&(a * b)));
            }
        }
        worst
    }
}

/// The unital *-subalgebra generated by `gens`: the span of `E`, the
/// generators and their adjoints is multiplied by the generators until the
/// dimension stops growing.
pub fn span_subalgebra(gens: &[CMatrix], ambient: usize, tol: &Tolerance) -> Result<Subalgebra> {
    if let Some(m) = gens.iter().find(|m| m.rows() != ambient || m.cols() != ambient) {
        return Err(Error::Dimension(format!("{}x{} generator in M_{ambient}", m.rows(), m.cols())));
    }
    let mut seed_set = vec![CMatrix::identity(ambient)];
    for g in gens {
        seed_set.push(g.clone());
        seed_set.push(g.adjoint());
    }
    let generators = orthonormalize(&seed_set, tol.rank_cutoff);
    let mut basis = generators.clone();
    let mut frontier = generators.clone();
    let full = ambient * ambient;
    while !frontier.is_empty() && basis.len() < full {
        let mut next = Vec::new();
        for f in &frontier {
            for g in &generators {
                let p = f * g;
                let np = p.frobenius();
                if np == 0.0 {
                    continue;
                }
                if let Some(v) = orthogonalize_against(&basis, &p, np, tol.rank_cutoff) {
                    basis.push(v.clone());
                    next.push(v);
                    if basis.len() == full {
                        break;
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(Subalgebra::from_orthonormal(ambient, basis))
}

/// One simple summand `M_d ⊗ E_m` of a decomposed algebra: `d` isometries
/// `N x m` with mutually orthogonal ranges, `W_c` carrying a fixed reference
/// basis onto the range of the `c`-th minimal projection.
#[derive(Debug, Clone)]
pub(crate) struct Block {
    pub(crate) isometries: Vec<DMatrix<c64>>,
}

impl Block {
    pub(crate) fn degree(&self) -> usize {
        self.isometries.len()
    }

    pub(crate) fn multiplicity(&self) -> usize {
        self.isometries[0].ncols()
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

enum Attempt {
    Done(Vec<Block>),
    Retry(String),
}

fn decompose_once(a: &Subalgebra, seed: u64) -> Attempt {
    let n = a.ambient;
    let mut rng = seeded_rng(seed);

    let mut h = DMatrix::<c64>::zeros(n, n);
    for b in &a.basis {
        let c = c64::new(gaussian_re(&mut rng), 0.0);
        h += (b.as_na() + b.as_na().adjoint()) * c;
    }
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let scale = eig.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);

    let mut clusters: Vec<Vec<usize>> = vec![vec![order[0]]];
    for w in order.windows(2) {
        let gap = (eig.eigenvalues[w[1]] - eig.eigenvalues[w[0]]) / scale;
        if gap > 1e-4 {
            clusters.push(vec![w[1]]);
        } else if gap > 1e-9 {
            return Attempt::Retry(format!("near-degenerate spectrum (relative gap {gap:.1e})"));
        } else {
            clusters.last_mut().unwrap().push(w[1]);
        }
    }
    let vecs: Vec<DMatrix<c64>> = clusters
        .iter()
        .map(|cl| {
            let mut v = DMatrix::zeros(n, cl.len());
            for (c, &k) in cl.iter().enumerate() {
                v.set_column(c, &eig.eigenvectors.column(k));
            }
            v
        })
        .collect();

    let x = {
        let z = complex_gaussian(&mut rng, a.basis.len(), 1);
        let mut x = DMatrix::<c64>::zeros(n, n);
        for (s, b) in a.basis.iter().enumerate() {
            x += b.as_na() * z.get(s, 0);
        }
        x
    };
    let xscale = x.iter().fold(0.0f64, |m, v| m.max(v.norm())).max(f64::MIN_POSITIVE);

    let q = clusters.len();
    let mut parent: Vec<usize> = (0..q).collect();
    for c in 0..q {
        for c2 in c + 1..q {
            let m = vecs[c2].adjoint() * &x * &vecs[c];
            let size = m.iter().fold(0.0f64, |acc, v| acc.max(v.norm())) / xscale;
            if size > 1e-6 {
                let (r1, r2) = (find(&mut parent, c), find(&mut parent, c2));
                parent[r2] = r1;
            } else if size > 1e-11 {
                return Attempt::Retry(format!("ambiguous link between minimal projections ({size:.1e})"));
            }
        }
    }

    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for c in 0..q {
        let r = find(&mut parent, c);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, members)) => members.push(c),
            None => groups.push((r, vec![c])),
        }
    }

    let mut blocks = Vec::with_capacity(groups.len());
    for (_, members) in groups {
        let c0 = members[0];
        let m = vecs[c0].ncols();
        let mut isometries = Vec::with_capacity(members.len());
        for &c in &members {
            if vecs[c].ncols() != m {
                return Attempt::Retry("linked minimal projections of different rank".into());
            }
            if c == c0 {
                isometries.push(vecs[c0].clone());
                continue;
            }
            let link = vecs[c].adjoint() * &x * &vecs[c0];
            let svd = link.svd(true, true);
            let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
            let smin = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
            if smin < 0.999_999 * smax {
                return Attempt::Retry(format!("compression is not a scaled unitary ({:.1e})", 1.0 - smin / smax));
            }
            let omega = svd.u.unwrap() * svd.v_t.unwrap();
            isometries.push(&vecs[c] * omega);
        }
        blocks.push(Block { isometries });
    }

    let total: usize = blocks.iter().map(|b| b.degree() * b.degree()).sum();
    if total != a.dim() {
        return Attempt::Retry(format!("summands account for dimension {total}, algebra has {}", a.dim()));
    }
    Attempt::Done(blocks)
}

/// Block decomposition of a *-subalgebra, retrying degenerate random draws.
pub(crate) fn decompose(a: &Subalgebra) -> Result<Vec<Block>> {
    if a.basis.is_empty() {
        return Err(Error::Decomposition("empty basis".into()));
    }
    let mut last = String::new();
    for attempt in 0..DECOMPOSITION_ATTEMPTS {
        match decompose_once(a, derive_seed(DECOMPOSITION_SEED, attempt)) {
            Attempt::Done(blocks) => return Ok(blocks),
            Attempt::Retry(why) => last = why,
        }
    }
    Err(Error::Decomposition(last))
}

/// Commutant of `a` inside `M_N`: for each summand with isometries
/// `W_1..W_d` the elements `Σ_c W_c e_{s,t} W_c^* / √d`.
pub fn centralizer(a: &Subalgebra) -> Result<Subalgebra> {
    let blocks = decompose(a)?;
    let n = a.ambient;
    let mut basis = Vec::new();
    for b in &blocks {
        let (d, m) = (b.degree(), b.multiplicity());
        let norm = c64::new(1.0 / (d as f64).sqrt(), 0.0);
        // Y_s collects column s of every isometry.
        let ys: Vec<DMatrix<c64>> = (0..m)
            .map(|s| {
                let mut y = DMatrix::zeros(n, d);
                for (c, w) in b.isometries.iter().enumerate() {
                    y.set_column(c, &w.column(s));
                }
                y
            })
            .collect();
        for s in 0..m {
            for t in 0..m {
                basis.push(CMatrix::from_na(&ys[s] * ys[t].adjoint() * norm));
            }
        }
    }
    Ok(Subalgebra::from_orthonormal(n, basis))
}

/// Intersection of the spans of two subalgebras of the same ambient.
pub fn intersect(u: &Subalgebra, w: &Subalgebra) -> Result<Subalgebra> {
    if u.ambient != w.ambient {
        return Err(Error::Dimension(format!("subalgebras of M_{} and M_{}", u.ambient, w.ambient)));
    }
    let (small, big) = if u.dim() <= w.dim() { (u, w) } else { (w, u) };
    if small.dim() == 0 {
        return Ok(Subalgebra::from_orthonormal(u.ambient, Vec::new()));
    }
    let qs = small.columns();
    let qb = big.columns();
    let r = &qs - &qb * (qb.adjoint() * &qs);
    let svd = r.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut basis = Vec::new();
    for (idx, &s) in svd.singular_values.iter().enumerate() {
        if s < INTERSECTION_TOL {
            let coeff = DMatrix::from_fn(small.dim(), 1, |row, _| v_t[(idx, row)].conj());
            let v = &qs * coeff;
            basis.push(CMatrix::unvectorize(v.as_slice(), u.ambient, u.ambient));
        }
    }
    Ok(Subalgebra::from_orthonormal(u.ambient, orthonormalize(&basis, 1e-8)))
}

/// `Z_B(A)`: the ambient commutant of `a` intersected with the span of `b`.
pub fn relative_centralizer(a: &Subalgebra, b: &Subalgebra) -> Result<Subalgebra> {
    intersect(&centralizer(a)?, b)
}

pub fn center(a: &Subalgebra) -> Result<Subalgebra> {
    intersect(a, &centralizer(a)?)
}

/// Matrix units `α_{i,j} = W_i W_j^*` of a subalgebra isomorphic to `M_d`.
pub fn extract_frame(a: &Subalgebra, d: usize, tol: &Tolerance) -> Result<Frame> {
    if a.dim() != d * d {
        return Err(Error::NotKSubalgebra(d, format!("dimension {} is not {}", a.dim(), d * d)));
    }
    let blocks = decompose(a).map_err(|e| Error::NotKSubalgebra(d, e.to_string()))?;
    if blocks.len() != 1 || blocks[0].degree() != d {
        return Err(Error::NotKSubalgebra(
            d,
            format!("minimal projections fall into {} classes", blocks.len()),
        ));
    }
    let w = &blocks[0].isometries;
    let mut mats = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            mats.push(CMatrix::from_na(&w[i] * w[j].adjoint()));
        }
    }
    let frame = Frame::new(d, a.ambient, mats)?;
    let rep = verify_frame(frame.mats(), tol)?;
    if !rep.pass {
        return Err(Error::NotKSubalgebra(d, format!("extracted units fail the axioms ({:.1e})", rep.max_err())));
    }
    let dist = lambda_map(&frame).distance(a);
    if dist > SUBSPACE_TOL {
        return Err(Error::NotKSubalgebra(d, format!("extracted units span a different algebra ({dist:.1e})")));
    }
    Ok(frame)
}

/// Whether `a` is a unital *-subalgebra isomorphic to `M_d`.
pub fn is_k_subalgebra(a: &Subalgebra, d: usize, tol: &Tolerance) -> bool {
    if a.dim() != d * d {
        return false;
    }
    match center(a) {
        Ok(z) if z.dim() == 1 => {}
        _ => return false,
    }
    extract_frame(a, d, tol).is_ok()
}

/// `M(α)`: the subalgebra spanned by a frame.
pub fn lambda_map(alpha: &Frame) -> Subalgebra {
    let s = (alpha.d() as f64 / alpha.ambient() as f64).sqrt();
    let basis = alpha.mats().iter().map(|m| m.scale_re(s)).collect::<Vec<_>>();
    Subalgebra::from_orthonormal(alpha.ambient(), orthonormalize(&basis, 1e-8))
}

/// `f(A)`.
pub fn image(f: &StarHom, a: &Subalgebra) -> Result<Subalgebra> {
    if a.ambient != f.src() {
        return Err(Error::Dimension(format!("subalgebra of M_{} under a hom from M_{}", a.ambient, f.src())));
    }
    let imgs = a.basis.iter().map(|b| ev(f, b)).collect::<Result<Vec<_>>>()?;
    Ok(Subalgebra::from_orthonormal(f.dst(), orthonormalize(&imgs, 1e-8)))
}

/// `A ⊗ B` inside `M_{N_A N_B}`.
pub fn tensor_subalgebra(a: &Subalgebra, b: &Subalgebra) -> Subalgebra {
    let mut basis = Vec::with_capacity(a.dim() * b.dim());
    for x in &a.basis {
        for y in &b.basis {
            basis.push(kron(x, y));
        }
    }
    Subalgebra::from_orthonormal(a.ambient * b.ambient, basis)
}

/// Largest membership residual of `f(A)` in `B`.
pub fn d_morphism_residual(f: &StarHom, a: &Subalgebra, b: &Subalgebra) -> Result<f64> {
    if a.ambient != f.src() || b.ambient != f.dst() {
        return Err(Error::Dimension(format!(
            "hom M_{} -> M_{} between subalgebras of M_{} and M_{}",
            f.src(),
            f.dst(),
            a.ambient,
            b.ambient
        )));
    }
    let mut worst: f64 = 0.0;
    for x in &a.basis {
        worst = worst.max(b.membership_residual(&ev(f, x)?));
    }
    Ok(worst)
}

fn require_d_morphism(f: &StarHom, a: &Subalgebra, b: &Subalgebra) -> Result<()> {
    let res = d_morphism_residual(f, a, b)?;
    if res > SUBSPACE_TOL {
        return Err(Error::NotDMorphism(res));
    }
    Ok(())
}

/// `Gr(f)(A') = f(A') · C` with `C = Z_B(f(A))`.
pub fn gr_map(f: &StarHom, a_prime: &Subalgebra, a: &Subalgebra, b: &Subalgebra, tol: &Tolerance) -> Result<Subalgebra> {
    require_d_morphism(f, a, b)?;
    if a_prime.ambient != a.ambient || a_prime.dim() != a.dim() {
        return Err(Error::Dimension(format!(
            "A' has dimension {} in M_{}, A has dimension {} in M_{}",
            a_prime.dim(),
            a_prime.ambient,
            a.dim(),
            a.ambient
        )));
    }
    let c = relative_centralizer(&image(f, a)?, b)?;
    let mut gens = image(f, a_prime)?.basis;
    gens.extend(c.basis);
    span_subalgebra(&gens, f.dst(), tol)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralizerTensorReport {
    pub pass: bool,
    pub distance: f64,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
}

/// Compares `Z_{B⊗Ψ}(f(A) ⊗ g(Φ))` with `Z_B(f(A)) ⊗ Z_Ψ(g(Φ))`.
pub fn centralizer_tensor_check(
    f: &StarHom,
    g: &StarHom,
    a: &Subalgebra,
    b: &Subalgebra,
    phi: &Subalgebra,
    psi: &Subalgebra,
) -> Result<CentralizerTensorReport> {
    require_d_morphism(f, a, b)?;
    require_d_morphism(g, phi, psi)?;
    let fg = tensor_hom(f, g);
    let lhs = relative_centralizer(&image(&fg, &tensor_subalgebra(a, phi))?, &tensor_subalgebra(b, psi))?;
    let rhs = tensor_subalgebra(
        &relative_centralizer(&image(f, a)?, b)?,
        &relative_centralizer(&image(g, phi)?, psi)?,
    );
    let distance = lhs.distance(&rhs);
    Ok(CentralizerTensorReport { pass: distance <= SUBSPACE_TOL, distance, lhs_dim: lhs.dim(), rhs_dim: rhs.dim() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{conjugate_unchecked, matrix_unit_frame, random_frame};
    use crate::homspace::{identity_hom, random_hom};
    use crate::linalg::{nullspace, random_unitary};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    /// Independent route: kernel of the stacked commutator operators
    /// `X ↦ b X - X b` in row-major vec coordinates.
    fn commutant_by_nullspace(a: &Subalgebra) -> Subalgebra {
        let n = a.ambient();
        let id = CMatrix::identity(n);
        let mut stacked = DMatrix::<c64>::zeros(n * n * a.dim(), n * n);
        for (k, b) in a.basis().iter().enumerate() {
            // vec(bX) = (b ⊗ E) vec(X), vec(Xb) = (E ⊗ b^T) vec(X) for row-major vec
            let bt = CMatrix::from_na(b.as_na().transpose());
            let op = &kron(b, &id) - &kron(&id, &bt);
            stacked.view_mut((k * n * n, 0), (n * n, n * n)).copy_from(op.as_na());
        }
        let ns = nullspace(&CMatrix::from_na(stacked), &tol());
        let mats: Vec<CMatrix> = ns.iter().map(|v| CMatrix::unvectorize(v.as_na().as_slice(), n, n)).collect();
        Subalgebra::from_spanning(n, &mats).unwrap()
    }

    fn m2_tensor_e3() -> Subalgebra {
        lambda_map(&matrix_unit_frame(2, 3))
    }

    #[test]
    fn span_examples() {
        let s = span_subalgebra(matrix_unit_frame(2, 1).mats(), 2, &tol()).unwrap();
        assert_eq!(s.dim(), 4);
        let mut gens = matrix_unit_frame(2, 3).into_mats();
        gens.extend((0..9).map(|t| kron(&CMatrix::identity(2), &CMatrix::unit(3, t / 3, t % 3))));
        let s = span_subalgebra(&gens, 6, &tol()).unwrap();
        assert_eq!(s.dim(), 36);
        let s = span_subalgebra(&[], 3, &tol()).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.distance(&Subalgebra::scalars(3)) < 1e-15);
        // a single non-normal generator still yields a *-closed algebra
        let s = span_subalgebra(&[CMatrix::unit(3, 0, 1)], 3, &tol()).unwrap();
        assert!(s.closure_residual() < 1e-12);
    }

    #[test]
    fn centralizer_examples() {
        let z = centralizer(&m2_tensor_e3()).unwrap();
        assert_eq!(z.dim(), 9);
        let want = lambda_map(&crate::frames::pi2(&matrix_unit_frame(6, 1), 2).unwrap());
        assert!(z.distance(&want) <= 1e-10);
        assert_eq!(centralizer(&Subalgebra::full(4)).unwrap().dim(), 1);
        let a = lambda_map(&random_frame(2, 3, 44));
        let z = centralizer(&a).unwrap();
        assert_eq!(z.dim(), 9);
        for x in z.basis() {
            for y in a.basis() {
                assert!(x.commutator(y).max_abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn centralizer_matches_nullspace_oracle() {
        for seed in 0..5 {
            let a = lambda_map(&random_frame(2, 2, seed));
            let fast = centralizer(&a).unwrap();
            let slow = commutant_by_nullspace(&a);
            assert_eq!(fast.dim(), slow.dim());
            assert!(fast.distance(&slow) <= 1e-8);
        }
        // a non-factor: diagonal ⊕ block algebra
        let mut gens = vec![CMatrix::unit(4, 0, 0)];
        gens.extend([(1, 1), (1, 2), (2, 1), (2, 2)].map(|(i, j)| CMatrix::unit(4, i, j)));
        let a = span_subalgebra(&gens, 4, &tol()).unwrap();
        assert_eq!(a.dim(), 6);
        let fast = centralizer(&a).unwrap();
        let slow = commutant_by_nullspace(&a);
        assert_eq!(fast.dim(), slow.dim());
        assert!(fast.distance(&slow) <= 1e-8);
    }

    #[test]
    fn double_commutant() {
        let a = lambda_map(&random_frame(3, 2, 7));
        let zz = centralizer(&centralizer(&a).unwrap()).unwrap();
        assert!(zz.distance(&a) <= 1e-8);
        assert_eq!(a.dim() * centralizer(&a).unwrap().dim(), 36);
    }

    #[test]
    fn k_subalgebra_predicate() {
        assert!(is_k_subalgebra(&m2_tensor_e3(), 2, &tol()));
        let diag = Subalgebra::from_spanning(4, &(0..4).map(|i| CMatrix::unit(4, i, i)).collect::<Vec<_>>()).unwrap();
        assert!(!is_k_subalgebra(&diag, 2, &tol()));
        assert_eq!(center(&diag).unwrap().dim(), 4);
        let v = random_unitary(6, 3);
        let conj = lambda_map(&conjugate_unchecked(&v, &matrix_unit_frame(2, 3)));
        assert!(is_k_subalgebra(&conj, 2, &tol()));
        assert!(!is_k_subalgebra(&conj, 3, &tol()));
    }

    #[test]
    fn extract_frame_examples() {
        let a = m2_tensor_e3();
        let f = extract_frame(&a, 2, &tol()).unwrap();
        assert!(verify_frame(f.mats(), &tol()).unwrap().pass);
        assert!(lambda_map(&f).distance(&a) <= 1e-8);
        let f = extract_frame(&Subalgebra::scalars(3), 1, &tol()).unwrap();
        assert!(f.max_diff(&Frame::trivial(3)) <= 1e-12);
        let factor = centralizer(&a).unwrap();
        let f = extract_frame(&factor, 3, &tol()).unwrap();
        assert!(lambda_map(&f).distance(&factor) <= 1e-8);
        let diag = Subalgebra::from_spanning(4, &(0..4).map(|i| CMatrix::unit(4, i, i)).collect::<Vec<_>>()).unwrap();
        assert!(matches!(extract_frame(&diag, 2, &tol()), Err(Error::NotKSubalgebra(2, _))));
    }

    #[test]
    fn lambda_examples() {
        assert!(lambda_map(&matrix_unit_frame(2, 1)).distance(&Subalgebra::full(2)) < 1e-15);
        let alpha = random_frame(2, 3, 19);
        let m = lambda_map(&alpha);
        assert_eq!(m.dim(), 4);
        assert!(is_k_subalgebra(&m, 2, &tol()));
        let back = extract_frame(&m, 2, &tol()).unwrap();
        assert!(lambda_map(&back).distance(&m) <= 1e-8);
    }

    #[test]
    fn gr_map_examples() {
        let f = random_hom(2, 2, 5);
        let a = Subalgebra::full(2);
        let b = Subalgebra::full(4);
        let out = gr_map(&f, &a, &a, &b, &tol()).unwrap();
        assert!(out.distance(&b) <= 1e-8);
        // identity hom
        let a = lambda_map(&random_frame(2, 2, 1));
        let a2 = lambda_map(&random_frame(2, 2, 2));
        let out = gr_map(&identity_hom(4), &a2, &a, &Subalgebra::full(4), &tol()).unwrap();
        let mut gens = a2.basis().to_vec();
        gens.extend(centralizer(&a).unwrap().basis().iter().cloned());
        let want = span_subalgebra(&gens, 4, &tol()).unwrap();
        assert!(out.distance(&want) <= 1e-8);
        // precondition
        let small = lambda_map(&random_frame(2, 2, 3));
        assert!(matches!(gr_map(&identity_hom(4), &a2, &a, &small, &tol()), Err(Error::NotDMorphism(_))));
    }

    #[test]
    fn centralizer_tensor_basepoint() {
        let f = crate::homspace::basepoint_hom(2, 2);
        let g = crate::homspace::basepoint_hom(1, 3);
        let rep = centralizer_tensor_check(
            &f,
            &g,
            &Subalgebra::full(2),
            &Subalgebra::full(4),
            &Subalgebra::full(1),
            &Subalgebra::full(3),
        )
        .unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.distance <= 1e-12);
        assert_eq!(rep.lhs_dim, 4 * 9);
    }
}
