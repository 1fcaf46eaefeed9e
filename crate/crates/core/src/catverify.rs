//! Morphisms of the frame categories, the functor action `Fr(f)`, the
//! transformation `μ` with its diagrams, and nerve chains with their face and
//! degeneracy maps.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::frames::{
    dot, interleave_permutation, matrix_unit_frame, pi1, pi2, random_frame, split_tensor, tensor_frame, verify_frame,
    Frame,
};
use crate::grassmannian::{gr_map, lambda_map};
use crate::homspace::{compose, ev, identity_hom, intertwiner, pushforward, random_hom, tensor_hom, StarHom};
use crate::linalg::{commutation_matrix, kron, CMatrix, Tolerance};

/// A morphism `(f, α, β)` with `f_*(α) = π₁(β)`, where `π₁` splits off the
/// first `split_m` indices of `β` (the degree of `α`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CMorphism {
    f: StarHom,
    src_frame: Frame,
    dst_frame: Frame,
    split_m: usize,
}

#[derive(Deserialize)]
struct CMorphismJson {
    f: StarHom,
    src_frame: Frame,
    dst_frame: Frame,
    split_m: usize,
}

impl<'de> Deserialize<'de> for CMorphism {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = CMorphismJson::deserialize(de)?;
        check_shapes(&raw.f, &raw.src_frame, &raw.dst_frame, raw.split_m).map_err(D::Error::custom)?;
        Ok(CMorphism { f: raw.f, src_frame: raw.src_frame, dst_frame: raw.dst_frame, split_m: raw.split_m })
    }
}

fn check_shapes(f: &StarHom, alpha: &Frame, beta: &Frame, m: usize) -> Result<()> {
    if alpha.ambient() != f.src() || beta.ambient() != f.dst() {
        return Err(Error::Dimension(format!(
            "frames in M_{} and M_{} for a hom M_{} -> M_{}",
            alpha.ambient(),
            beta.ambient(),
            f.src(),
            f.dst()
        )));
    }
    if alpha.d() != m || m == 0 || beta.d() % m != 0 {
        return Err(Error::Dimension(format!(
            "split {m} for source degree {} and target degree {}",
            alpha.d(),
            beta.d()
        )));
    }
    Ok(())
}

impl CMorphism {
    /// Validated constructor: fails unless `f_*(α) = π₁(β)` within `abs_eps`.
    pub fn new(f: StarHom, src_frame: Frame, dst_frame: Frame, split_m: usize, tol: &Tolerance) -> Result<Self> {
        let (ok, res) = is_c_morphism(&f, &src_frame, &dst_frame, split_m, tol)?;
        if !ok {
            return Err(Error::NotCMorphism(res));
        }
        Ok(CMorphism { f, src_frame, dst_frame, split_m })
    }

    pub fn hom(&self) -> &StarHom {
        &self.f
    }

    pub fn src_frame(&self) -> &Frame {
        &self.src_frame
    }

    pub fn dst_frame(&self) -> &Frame {
        &self.dst_frame
    }

    pub fn split_m(&self) -> usize {
        self.split_m
    }

    /// `π₂(β)`, the part of the target frame not determined by `f`.
    pub fn complement(&self) -> Frame {
        pi2(&self.dst_frame, self.split_m).expect("split checked at construction")
    }
}

/// `(f_*(α) = π₁(β), max entry deviation)`.
pub fn is_c_morphism(f: &StarHom, alpha: &Frame, beta: &Frame, m: usize, tol: &Tolerance) -> Result<(bool, f64)> {
    check_shapes(f, alpha, beta, m)?;
    let res = pushforward(f, alpha)?.max_diff(&pi1(beta, m)?);
    Ok((res <= tol.abs_eps, res))
}

/// Builds a morphism over a given `f` and source frame: `β = f_*(α)·ρ` with
/// `ρ = V (E ⊗ σ) V^*`, `V` the intertwiner of `f` and `σ` a random
/// degree-`c` frame in `M_{f.ratio()}`. Such a `ρ` commutes with all of
/// `f(M_src)`, so `Fr(f)` is defined on every source frame.
pub fn c_morphism_over(f: StarHom, alpha: Frame, c: usize, seed: u64, tol: &Tolerance) -> Result<CMorphism> {
    let t = f.ratio();
    if c == 0 || t % c != 0 {
        return Err(Error::Dimension(format!("complement degree {c} does not divide the ratio {t}")));
    }
    let v = intertwiner(&f)?;
    let va = v.adjoint();
    let e = CMatrix::identity(f.src());
    let sigma = random_frame(c, t / c, seed);
    let rho = sigma.map(f.dst(), |s| &(&v * &kron(&e, s)) * &va)?;
    let beta = dot(&pushforward(&f, &alpha)?, &rho, tol)?;
    let m = alpha.d();
    CMorphism::new(f, alpha, beta, m, tol)
}

/// A random morphism from the object `(a, a·s1)` along a random hom of ratio
/// `t`, with complement degree `c`.
pub fn random_c_morphism(a: usize, s1: usize, t: usize, c: usize, seed: u64, tol: &Tolerance) -> Result<CMorphism> {
    let f = random_hom(a * s1, t, seed);
    let alpha = random_frame(a, s1, seed.wrapping_add(1));
    c_morphism_over(f, alpha, c, seed.wrapping_add(2), tol)
}

/// `X ↦ X ⊗ E_t` with standard matrix units on both sides.
pub fn basepoint_c_morphism(a: usize, s1: usize, t: usize, c: usize, tol: &Tolerance) -> Result<CMorphism> {
    if c == 0 || t % c != 0 {
        return Err(Error::Dimension(format!("complement degree {c} does not divide the ratio {t}")));
    }
    let f = StarHom::new(a * s1, a * s1 * t, matrix_unit_frame(a * s1, t))?;
    let alpha = matrix_unit_frame(a, s1);
    let e = CMatrix::identity(a * s1);
    let rho = matrix_unit_frame(c, t / c).map(f.dst(), |s| kron(&e, s))?;
    let beta = dot(&pushforward(&f, &alpha)?, &rho, tol)?;
    CMorphism::new(f, alpha, beta, a, tol)
}

/// The identity morphism of the object carrying `alpha`.
pub fn identity_c_morphism(alpha: &Frame, tol: &Tolerance) -> Result<CMorphism> {
    CMorphism::new(identity_hom(alpha.ambient()), alpha.clone(), alpha.clone(), alpha.d(), tol)
}

/// `Fr(f)(α′) = f_*(α′)·π₂(β)`.
pub fn fr_map(cm: &CMorphism, alpha_prime: &Frame, tol: &Tolerance) -> Result<Frame> {
    if alpha_prime.d() != cm.src_frame.d() || alpha_prime.ambient() != cm.src_frame.ambient() {
        return Err(Error::Dimension(format!(
            "degree {} frame in M_{} for a source object of degree {} in M_{}",
            alpha_prime.d(),
            alpha_prime.ambient(),
            cm.src_frame.d(),
            cm.src_frame.ambient()
        )));
    }
    dot(&pushforward(&cm.f, alpha_prime)?, &cm.complement(), tol)
}

/// `(g ∘ f, α, γ)` for `f: α → β` and `g: β → γ`.
pub fn compose_c(g: &CMorphism, f: &CMorphism, tol: &Tolerance) -> Result<CMorphism> {
    if g.src_frame.max_diff(&f.dst_frame) > tol.abs_eps {
        return Err(Error::Dimension("target of the first morphism is not the source of the second".into()));
    }
    CMorphism::new(compose(&g.f, &f.f)?, f.src_frame.clone(), g.dst_frame.clone(), f.split_m, tol)
}

/// `f ⊗ g` with target frame `split_tensor(β, ψ)`.
pub fn tensor_c(f: &CMorphism, g: &CMorphism, tol: &Tolerance) -> Result<CMorphism> {
    CMorphism::new(
        tensor_hom(&f.f, &g.f),
        tensor_frame(&f.src_frame, &g.src_frame),
        split_tensor(&f.dst_frame, f.split_m, &g.dst_frame, g.split_m)?,
        f.split_m * g.split_m,
        tol,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaturalityReport {
    /// `μ∘(Fr f × Fr g)` against `Fr(f⊗g)∘μ`.
    pub residual: f64,
    /// `Ξ = π₂(β ⊠ ψ)` against `π₂(β) ⊗ π₂(ψ)`.
    pub xi_residual: f64,
    pub pass: bool,
}

pub fn check_naturality(
    f: &CMorphism,
    g: &CMorphism,
    alpha_prime: &Frame,
    phi_prime: &Frame,
    tol: &Tolerance,
) -> Result<NaturalityReport> {
    let gamma = fr_map(f, alpha_prime, tol)?;
    let chi = fr_map(g, phi_prime, tol)?;
    let path1 = split_tensor(&gamma, f.split_m, &chi, g.split_m)?;

    let fg = tensor_c(f, g, tol)?;
    let path2 = fr_map(&fg, &tensor_frame(alpha_prime, phi_prime), tol)?;

    let xi = fg.complement();
    let xi_residual = xi.max_diff(&tensor_frame(&f.complement(), &g.complement()));
    let residual = path1.max_diff(&path2);
    Ok(NaturalityReport { residual, xi_residual, pass: residual <= 1e-8 && xi_residual <= 1e-8 })
}

/// `Fr(f∘g) = Fr(f)∘Fr(g)` on one frame.
pub fn functoriality_residual(g: &CMorphism, f: &CMorphism, alpha_prime: &Frame, tol: &Tolerance) -> Result<f64> {
    let gf = compose_c(g, f, tol)?;
    Ok(fr_map(&gf, alpha_prime, tol)?.max_diff(&fr_map(g, &fr_map(f, alpha_prime, tol)?, tol)?))
}

/// Distance between `M(Fr(f)(α′))` and `Gr(f)(M(α′))` with `A = M(α)`,
/// `B = M(β)`.
pub fn theta_residual(cm: &CMorphism, alpha_prime: &Frame, tol: &Tolerance) -> Result<f64> {
    let via_frames = lambda_map(&fr_map(cm, alpha_prime, tol)?);
    let via_algebras = gr_map(
        &cm.f,
        &lambda_map(alpha_prime),
        &lambda_map(&cm.src_frame),
        &lambda_map(&cm.dst_frame),
        tol,
    )?;
    Ok(via_frames.distance(&via_algebras))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub associativity: f64,
    pub left_identity: f64,
    pub right_identity: f64,
    /// Smallest ratio of output distance to input distance over the sampled
    /// pairs; positive means the sampled map was injective.
    pub injectivity_ratio: f64,
    pub tau: f64,
    pub pass: bool,
}

/// `μ(μ(α,φ),ψ)` against `μ(α,μ(φ,ψ))`; both flatten to the same index
/// layout, so the comparison is entrywise.
pub fn associativity_residual(alpha: &Frame, phi: &Frame, psi: &Frame) -> f64 {
    tensor_frame(&tensor_frame(alpha, phi), psi).max_diff(&tensor_frame(alpha, &tensor_frame(phi, psi)))
}

/// Inclusion of the unit object: `ι_A: M_1 → M_a` with `ε ↦ E_a`, as a
/// morphism onto the frame `alpha`.
fn unit_inclusion(alpha: &Frame, tol: &Tolerance) -> Result<CMorphism> {
    let f = StarHom::new(1, alpha.ambient(), Frame::trivial(alpha.ambient()))?;
    CMorphism::new(f, Frame::trivial(1), alpha.clone(), 1, tol)
}

/// `Fr(ι_A ⊗ id)(μ(ε, φ′))` against `μ(α, φ′)`; the left-hand side comes out
/// with the `φ` index outermost and is reindexed before comparing.
pub fn left_identity_residual(alpha: &Frame, phi: &Frame, phi_prime: &Frame, tol: &Tolerance) -> Result<f64> {
    let lifted = left_identity_image(alpha, phi, phi_prime, tol)?;
    let (a, p) = (alpha.d(), phi.d());
    let perm = interleave_permutation(1, a, p, 1);
    let want = tensor_frame(alpha, phi_prime);
    // perm lists, for each (q, i) slot, the (i, q) index it reads from.
    let mut inverse = vec![0; perm.len()];
    for (slot, &src) in perm.iter().enumerate() {
        inverse[src] = slot;
    }
    Ok(lifted.permute_indices(&inverse)?.max_diff(&want))
}

fn left_identity_image(alpha: &Frame, phi: &Frame, phi_prime: &Frame, tol: &Tolerance) -> Result<Frame> {
    let morph = tensor_c(&unit_inclusion(alpha, tol)?, &identity_c_morphism(phi, tol)?, tol)?;
    fr_map(&morph, &tensor_frame(&Frame::trivial(1), phi_prime), tol)
}

/// `Fr(id ⊗ ι_Φ)(μ(α′, ε))` against `μ(α′, φ)`.
pub fn right_identity_residual(alpha: &Frame, phi: &Frame, alpha_prime: &Frame, tol: &Tolerance) -> Result<f64> {
    let morph = tensor_c(&identity_c_morphism(alpha, tol)?, &unit_inclusion(phi, tol)?, tol)?;
    let lifted = fr_map(&morph, &tensor_frame(alpha_prime, &Frame::trivial(1)), tol)?;
    Ok(lifted.max_diff(&tensor_frame(alpha_prime, phi)))
}

/// `μ(τ(α′,φ′)) = K μ(α′,φ′) K^T` after swapping the two frame indices.
pub fn tau_residual(alpha: &Frame, phi: &Frame) -> f64 {
    let (a, p) = (alpha.d(), phi.d());
    let k = commutation_matrix(alpha.ambient(), phi.ambient());
    let kt = k.adjoint();
    let shuffled = tensor_frame(alpha, phi).map(k.rows(), |m| &(&k * m) * &kt).expect("same ambient");
    let perm: Vec<usize> = (0..a * p).map(|x| (x % a) * p + x / a).collect();
    shuffled.permute_indices(&perm).expect("index permutation").max_diff(&tensor_frame(phi, alpha))
}

/// Associativity, both identity diagrams, sampled injectivity of the left
/// identity arrow over `phi_samples`, and the symmetry `τ`. Reassociation is
/// exact only when entry products are exact (dyadic frames); general frames
/// are held to `abs_eps`.
pub fn check_associativity_identity_tau(
    alpha: &Frame,
    phi: &Frame,
    psi: &Frame,
    phi_samples: &[Frame],
    tol: &Tolerance,
) -> Result<DiagramReport> {
    let associativity = associativity_residual(alpha, phi, psi);
    let mut left_identity: f64 = 0.0;
    let mut images = Vec::with_capacity(phi_samples.len());
    for s in phi_samples {
        left_identity = left_identity.max(left_identity_residual(alpha, phi, s, tol)?);
        images.push(left_identity_image(alpha, phi, s, tol)?);
    }
    let mut injectivity_ratio = f64::INFINITY;
    for x in 0..phi_samples.len() {
        for y in x + 1..phi_samples.len() {
            let din = phi_samples[x].max_diff(&phi_samples[y]);
            if din > 0.0 {
                injectivity_ratio = injectivity_ratio.min(images[x].max_diff(&images[y]) / din);
            }
        }
    }
    let right_identity = right_identity_residual(alpha, phi, alpha, tol)?;
    let tau = tau_residual(alpha, phi);
    let pass = associativity <= tol.abs_eps
        && left_identity <= tol.abs_eps
        && right_identity <= tol.abs_eps
        && injectivity_ratio > 0.0
        && tau <= tol.abs_eps;
    Ok(DiagramReport { associativity, left_identity, right_identity, injectivity_ratio, tau, pass })
}

/// A chain `h_p ∘ … ∘ h_1` of composable homs starting at `M_object`;
/// `homs[0]` is applied first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NerveChain {
    object: usize,
    homs: Vec<StarHom>,
}

#[derive(Deserialize)]
struct NerveChainJson {
    object: Option<usize>,
    homs: Vec<StarHom>,
}

impl<'de> Deserialize<'de> for NerveChain {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = NerveChainJson::deserialize(de)?;
        let object = match (raw.object, raw.homs.first()) {
            (Some(o), _) => o,
            (None, Some(h)) => h.src(),
            (None, None) => return Err(D::Error::custom("empty chain needs an object size")),
        };
        NerveChain::new(object, raw.homs).map_err(D::Error::custom)
    }
}

impl NerveChain {
    pub fn new(object: usize, homs: Vec<StarHom>) -> Result<Self> {
        let mut size = object;
        for (i, h) in homs.iter().enumerate() {
            if h.src() != size {
                return Err(Error::Dimension(format!("hom {i} starts at M_{}, chain is at M_{size}", h.src())));
            }
            size = h.dst();
        }
        Ok(NerveChain { object, homs })
    }

    pub fn from_homs(homs: Vec<StarHom>) -> Result<Self> {
        let object = homs.first().map(|h| h.src()).ok_or_else(|| Error::Format("empty chain".into()))?;
        NerveChain::new(object, homs)
    }

    pub fn len(&self) -> usize {
        self.homs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.homs.is_empty()
    }

    pub fn homs(&self) -> &[StarHom] {
        &self.homs
    }

    /// Sizes of the objects along the chain, `len() + 1` of them.
    pub fn sizes(&self) -> Vec<usize> {
        std::iter::once(self.object).chain(self.homs.iter().map(|h| h.dst())).collect()
    }

    pub fn max_diff(&self, other: &NerveChain) -> f64 {
        if self.object != other.object || self.len() != other.len() {
            return f64::INFINITY;
        }
        self.homs.iter().zip(&other.homs).map(|(a, b)| a.max_diff(b)).fold(0.0, f64::max)
    }
}

/// `∂_i`: deletion of the first or last hom, composition in the middle.
pub fn nerve_face(i: usize, chain: &NerveChain) -> Result<NerveChain> {
    let p = chain.len();
    if p == 0 || i > p {
        return Err(Error::FaceIndex { index: i, len: p });
    }
    if i == 0 {
        return NerveChain::new(chain.homs[0].dst(), chain.homs[1..].to_vec());
    }
    if i == p {
        return NerveChain::new(chain.object, chain.homs[..p - 1].to_vec());
    }
    let mut homs = chain.homs[..i - 1].to_vec();
    homs.push(compose(&chain.homs[i], &chain.homs[i - 1])?);
    homs.extend_from_slice(&chain.homs[i + 1..]);
    NerveChain::new(chain.object, homs)
}

/// `s_i`: inserts the identity of the `i`-th object.
pub fn degeneracy(i: usize, chain: &NerveChain) -> Result<NerveChain> {
    let sizes = chain.sizes();
    if i >= sizes.len() {
        return Err(Error::FaceIndex { index: i, len: chain.len() });
    }
    let mut homs = chain.homs.clone();
    homs.insert(i, identity_hom(sizes[i]));
    NerveChain::new(chain.object, homs)
}

/// `∂̄_i` on `(chain, T)`: `∂̄_0` evaluates the first hom on `T`, the other
/// faces leave `T` alone.
pub fn bundle_face(i: usize, chain: &NerveChain, t: &CMatrix) -> Result<(NerveChain, CMatrix)> {
    if !t.is_square() || t.rows() != chain.object {
        return Err(Error::Dimension(format!("{}x{} fiber element over M_{}", t.rows(), t.cols(), chain.object)));
    }
    let face = nerve_face(i, chain)?;
    let t_out = if i == 0 { ev(&chain.homs[0], t)? } else { t.clone() };
    Ok((face, t_out))
}

/// `h_p(…h_1(T))`.
pub fn eval_chain(chain: &NerveChain, t: &CMatrix) -> Result<CMatrix> {
    let mut x = t.clone();
    for h in &chain.homs {
        x = ev(h, &x)?;
    }
    Ok(x)
}

/// Largest `∂_i∂_j − ∂_{j−1}∂_i` (i < j) over all index pairs.
pub fn simplicial_identity_residual(chain: &NerveChain) -> Result<f64> {
    let p = chain.len();
    let mut worst: f64 = 0.0;
    if p < 2 {
        return Ok(0.0);
    }
    for j in 1..=p {
        let dj = nerve_face(j, chain)?;
        for i in 0..j {
            let lhs = nerve_face(i, &dj)?;
            let rhs = nerve_face(j - 1, &nerve_face(i, chain)?)?;
            worst = worst.max(lhs.max_diff(&rhs));
        }
    }
    Ok(worst)
}

/// Largest deviation of `∂_i s_i` and `∂_{i+1} s_i` from the identity.
pub fn degeneracy_residual(chain: &NerveChain) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..=chain.len() {
        let s = degeneracy(i, chain)?;
        worst = worst.max(nerve_face(i, &s)?.max_diff(chain));
        worst = worst.max(nerve_face(i + 1, &s)?.max_diff(chain));
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundleFaceReport {
    /// Chain parts of `∂̄_i` against `∂_i`.
    pub hom_level: f64,
    /// Evaluation through to the end after `∂̄_i` against evaluating the full
    /// chain, for the faces that keep the last hom.
    pub matrix_level: f64,
}

pub fn bundle_face_compatibility(chain: &NerveChain, t: &CMatrix) -> Result<BundleFaceReport> {
    let p = chain.len();
    let full = eval_chain(chain, t)?;
    let mut hom_level: f64 = 0.0;
    let mut matrix_level: f64 = 0.0;
    for i in 0..=p {
        let (c, t2) = bundle_face(i, chain, t)?;
        hom_level = hom_level.max(c.max_diff(&nerve_face(i, chain)?));
        if i < p {
            matrix_level = matrix_level.max(eval_chain(&c, &t2)?.max_diff(&full));
        } else {
            matrix_level = matrix_level.max(t2.max_diff(t));
        }
    }
    Ok(BundleFaceReport { hom_level, matrix_level })
}

/// Frame check for outputs of [`fr_map`].
pub fn fr_map_axiom_residual(out: &Frame, tol: &Tolerance) -> Result<f64> {
    Ok(verify_frame(out.mats(), tol)?.max_err())
}
