use std::path::PathBuf;

use clap::Subcommand;
use frcalc_core::frames::Frame;
use frcalc_core::grassmannian::{
    center, centralizer, centralizer_tensor_check, extract_frame, gr_map, image, is_k_subalgebra, lambda_map,
    relative_centralizer, span_subalgebra, Subalgebra, SUBSPACE_TOL,
};
use frcalc_core::homspace::StarHom;
use frcalc_core::linalg::CMatrix;
use serde_json::json;

use super::{frame_outcome, Ctx};
use crate::io::{positive, read_json};
use crate::report::{CliError, CliResult, Outcome};

#[derive(Debug, Subcommand)]
pub enum AlgOp {
    /// *-subalgebra generated by a list of matrices
    Span {
        #[arg(long)]
        gens: PathBuf,
        /// Needed only when the list is empty
        #[arg(long, value_parser = positive)]
        ambient: Option<usize>,
    },
    /// Commutant in the full matrix algebra
    Centralizer {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Commutant of a inside b
    Relcent {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    Center {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Whether the subalgebra is a unital copy of M_d
    Isk {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = positive)]
        d: usize,
    },
    /// A system of matrix units for a unital copy of M_d
    Extract {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = positive)]
        d: usize,
    },
    /// Span of a frame
    Lambda {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Image of a subalgebra under a hom
    Image {
        #[arg(long)]
        hom: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Induced map on subalgebras of a centralizer pair
    Grmap {
        #[arg(long)]
        hom: PathBuf,
        #[arg(long = "a-prime")]
        a_prime: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Centralizer of a tensor product against the product of centralizers
    Ztensor {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        psi: PathBuf,
    },
}

pub fn run(op: &AlgOp, ctx: &Ctx) -> CliResult<Outcome> {
    let tol = &ctx.tol;
    let out = match op {
        AlgOp::Span { gens, ambient } => {
            let gens: Vec<CMatrix> = read_json(gens)?;
            let n = match (gens.first(), ambient) {
                (Some(g), _) => g.rows(),
                (None, Some(n)) => *n,
                (None, None) => return Err(CliError::Usage("empty generator list needs --ambient".into())),
            };
            span_subalgebra(&gens, n, tol)?
        }
        AlgOp::Centralizer { input } => {
            let a: Subalgebra = read_json(input)?;
            let z = centralizer(&a)?;
            let r = commutation(&a, &z);
            return Ok(subalgebra_outcome(&z).check("commutation", r, SUBSPACE_TOL));
        }
        AlgOp::Relcent { a, b } => {
            let (a, b): (Subalgebra, Subalgebra) = (read_json(a)?, read_json(b)?);
            let z = relative_centralizer(&a, &b)?;
            let r = commutation(&a, &z);
            return Ok(subalgebra_outcome(&z).check("commutation", r, SUBSPACE_TOL));
        }
        AlgOp::Center { input } => center(&read_json(input)?)?,
        AlgOp::Isk { input, d } => {
            let ok = is_k_subalgebra(&read_json(input)?, *d, tol);
            return Ok(Outcome::new(json!({ "is_k": ok })).verdict(ok));
        }
        AlgOp::Extract { input, d } => return frame_outcome(&extract_frame(&read_json(input)?, *d, tol)?, tol),
        AlgOp::Lambda { input } => {
            let f: Frame = read_json(input)?;
            lambda_map(&f)
        }
        AlgOp::Image { hom, input } => {
            let h: StarHom = read_json(hom)?;
            image(&h, &read_json(input)?)?
        }
        AlgOp::Grmap { hom, a_prime, a, b } => {
            let h: StarHom = read_json(hom)?;
            gr_map(&h, &read_json(a_prime)?, &read_json(a)?, &read_json(b)?, tol)?
        }
        AlgOp::Ztensor { f, g, a, b, phi, psi } => {
            let (f, g): (StarHom, StarHom) = (read_json(f)?, read_json(g)?);
            let rep = centralizer_tensor_check(
                &f,
                &g,
                &read_json(a)?,
                &read_json(b)?,
                &read_json(phi)?,
                &read_json(psi)?,
            )?;
            return Ok(Outcome::new(&rep).check("distance", rep.distance, SUBSPACE_TOL).verdict(rep.pass));
        }
    };
    Ok(subalgebra_outcome(&out))
}

/// The closure check is cubic in the dimension, so it is skipped above
/// `CLOSURE_CHECK_MAX_DIM`.
const CLOSURE_CHECK_MAX_DIM: usize = 64;

fn subalgebra_outcome(a: &Subalgebra) -> Outcome {
    let o = Outcome::new(a);
    if a.dim() <= CLOSURE_CHECK_MAX_DIM {
        o.check("closure", a.closure_residual(), SUBSPACE_TOL)
    } else {
        o
    }
}

/// Largest commutator entry between basis elements of `a` and `z`.
fn commutation(a: &Subalgebra, z: &Subalgebra) -> f64 {
    let mut worst: f64 = 0.0;
    for x in a.basis() {
        for y in z.basis() {
            worst = worst.max(x.commutator(y).max_abs());
        }
    }
    worst
}
