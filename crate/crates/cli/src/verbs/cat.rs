use std::path::PathBuf;

use clap::Subcommand;
use frcalc_core::catverify::{
    basepoint_c_morphism, bundle_face, bundle_face_compatibility, check_associativity_identity_tau,
    check_naturality, compose_c, degeneracy, degeneracy_residual, fr_map, fr_map_axiom_residual,
    functoriality_residual, is_c_morphism, nerve_face, random_c_morphism, simplicial_identity_residual,
    tau_residual, tensor_c, theta_residual, CMorphism, NerveChain,
};
use frcalc_core::frames::{random_frame, Frame};
use frcalc_core::grassmannian::SUBSPACE_TOL;
use frcalc_core::homspace::StarHom;
use frcalc_core::linalg::{derive_seed, CMatrix};
use serde_json::json;

use super::Ctx;
use crate::io::{positive, read_json};
use crate::report::{CliResult, Outcome};

/// Bound for the naturality and functoriality comparisons.
const DIAGRAM_TOL: f64 = 1e-8;

#[derive(Debug, Subcommand)]
pub enum CatOp {
    /// Whether (f, α, β) is a morphism with α of degree m
    CheckMorphism {
        #[arg(long)]
        hom: PathBuf,
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        beta: PathBuf,
        #[arg(long, value_parser = positive)]
        m: usize,
    },
    /// Seeded random morphism out of (a, a·s1) along a ratio-t hom with complement degree c
    Random {
        #[arg(long, value_parser = positive)]
        a: usize,
        #[arg(long, value_parser = positive)]
        s1: usize,
        #[arg(long, value_parser = positive)]
        t: usize,
        #[arg(long, value_parser = positive)]
        c: usize,
    },
    /// The standard-unit morphism X ↦ X ⊗ E_t
    Basepoint {
        #[arg(long, value_parser = positive)]
        a: usize,
        #[arg(long, value_parser = positive)]
        s1: usize,
        #[arg(long, value_parser = positive)]
        t: usize,
        #[arg(long, value_parser = positive)]
        c: usize,
    },
    /// Apply the frame functor of a morphism to a source frame
    Frmap {
        #[arg(long)]
        morph: PathBuf,
        #[arg(long = "alpha-prime")]
        alpha_prime: PathBuf,
    },
    /// g ∘ f
    Compose {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        f: PathBuf,
    },
    /// f ⊗ g
    Tensor {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// Fr(g∘f) against Fr(g)∘Fr(f), and the subalgebra comparison for f
    Functor {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long = "alpha-prime")]
        alpha_prime: PathBuf,
    },
    /// Naturality of the tensor product of frames
    Naturality {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long = "alpha-prime")]
        alpha_prime: PathBuf,
        #[arg(long = "phi-prime")]
        phi_prime: PathBuf,
    },
    /// Associativity, identity and symmetry diagrams
    Assoc {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        psi: PathBuf,
        /// Frames shaped like phi for the injectivity probe; seeded ones by default
        #[arg(long)]
        samples: Option<PathBuf>,
    },
    /// Symmetry diagram alone
    Tau {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        phi: PathBuf,
    },
    NerveFace {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        i: usize,
    },
    Degeneracy {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        i: usize,
    },
    /// Face of a chain together with a fiber element over its first object
    BundleFace {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        t: PathBuf,
    },
    /// Simplicial identities over all index pairs of a chain
    Simplicial {
        #[arg(long)]
        chain: PathBuf,
    },
}

pub fn run(op: &CatOp, ctx: &Ctx) -> CliResult<Outcome> {
    let tol = &ctx.tol;
    match op {
        CatOp::CheckMorphism { hom, alpha, beta, m } => {
            let f: StarHom = read_json(hom)?;
            let (ok, r) = is_c_morphism(&f, &read_json(alpha)?, &read_json(beta)?, *m, tol)?;
            Ok(Outcome::new(json!({ "is_morphism": ok })).check("morphism", r, tol.abs_eps).verdict(ok))
        }
        CatOp::Random { a, s1, t, c } => Ok(Outcome::new(random_c_morphism(*a, *s1, *t, *c, ctx.seed, tol)?)),
        CatOp::Basepoint { a, s1, t, c } => Ok(Outcome::new(basepoint_c_morphism(*a, *s1, *t, *c, tol)?)),
        CatOp::Frmap { morph, alpha_prime } => {
            let cm: CMorphism = read_json(morph)?;
            let out = fr_map(&cm, &read_json(alpha_prime)?, tol)?;
            let r = fr_map_axiom_residual(&out, tol)?;
            Ok(Outcome::new(out).check("frame_axioms", r, tol.abs_eps))
        }
        CatOp::Compose { g, f } => {
            let (g, f): (CMorphism, CMorphism) = (read_json(g)?, read_json(f)?);
            Ok(Outcome::new(compose_c(&g, &f, tol)?))
        }
        CatOp::Tensor { f, g } => {
            let (f, g): (CMorphism, CMorphism) = (read_json(f)?, read_json(g)?);
            Ok(Outcome::new(tensor_c(&f, &g, tol)?))
        }
        CatOp::Functor { g, f, alpha_prime } => {
            let (g, f): (CMorphism, CMorphism) = (read_json(g)?, read_json(f)?);
            let ap: Frame = read_json(alpha_prime)?;
            let func = functoriality_residual(&g, &f, &ap, tol)?;
            let theta = theta_residual(&f, &ap, tol)?;
            Ok(Outcome::new(json!({ "functoriality": func, "theta": theta }))
                .check("functoriality", func, DIAGRAM_TOL)
                .check("theta", theta, SUBSPACE_TOL))
        }
        CatOp::Naturality { f, g, alpha_prime, phi_prime } => {
            let (f, g): (CMorphism, CMorphism) = (read_json(f)?, read_json(g)?);
            let rep = check_naturality(&f, &g, &read_json(alpha_prime)?, &read_json(phi_prime)?, tol)?;
            Ok(Outcome::new(&rep)
                .check("naturality", rep.residual, DIAGRAM_TOL)
                .check("xi", rep.xi_residual, DIAGRAM_TOL)
                .verdict(rep.pass))
        }
        CatOp::Assoc { alpha, phi, psi, samples } => {
            let (alpha, phi, psi): (Frame, Frame, Frame) = (read_json(alpha)?, read_json(phi)?, read_json(psi)?);
            let samples: Vec<Frame> = match samples {
                Some(p) => read_json(p)?,
                None => (0..3)
                    .map(|j| random_frame(phi.d(), phi.ambient() / phi.d(), derive_seed(ctx.seed, j)))
                    .collect(),
            };
            let rep = check_associativity_identity_tau(&alpha, &phi, &psi, &samples, tol)?;
            Ok(Outcome::new(&rep)
                .check("associativity", rep.associativity, tol.abs_eps)
                .check("left_identity", rep.left_identity, tol.abs_eps)
                .check("right_identity", rep.right_identity, tol.abs_eps)
                .check("tau", rep.tau, tol.abs_eps)
                .info("injectivity_ratio", rep.injectivity_ratio)
                .verdict(rep.pass))
        }
        CatOp::Tau { alpha, phi } => {
            let (alpha, phi): (Frame, Frame) = (read_json(alpha)?, read_json(phi)?);
            let r = tau_residual(&alpha, &phi);
            Ok(Outcome::new(json!({ "tau": r })).check("tau", r, tol.abs_eps))
        }
        CatOp::NerveFace { chain, i } => Ok(Outcome::new(nerve_face(*i, &read_json(chain)?)?)),
        CatOp::Degeneracy { chain, i } => Ok(Outcome::new(degeneracy(*i, &read_json(chain)?)?)),
        CatOp::BundleFace { chain, i, t } => {
            let (chain, t): (NerveChain, CMatrix) = (read_json(chain)?, read_json(t)?);
            let (face, t_out) = bundle_face(*i, &chain, &t)?;
            let rep = bundle_face_compatibility(&chain, &t)?;
            Ok(Outcome::new(json!({ "chain": face, "t": t_out }))
                .check("hom_level", rep.hom_level, 0.0)
                .check("matrix_level", rep.matrix_level, tol.abs_eps))
        }
        CatOp::Simplicial { chain } => {
            let chain: NerveChain = read_json(chain)?;
            let s = simplicial_identity_residual(&chain)?;
            let d = degeneracy_residual(&chain)?;
            Ok(Outcome::new(json!({ "simplicial_identity": s, "degeneracy": d }))
                .check("simplicial_identity", s, tol.abs_eps)
                .check("degeneracy", d, 0.0))
        }
    }
}
