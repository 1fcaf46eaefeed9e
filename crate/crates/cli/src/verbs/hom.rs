use std::path::PathBuf;

use clap::Subcommand;
use frcalc_core::homspace::{
    basepoint_hom, compose, compose_phi, ev, frame_of_hom, hom_from_frame, intertwiner, intertwiner_residual, iota,
    pushforward, random_hom, same_stabilization, tensor_hom, StarHom, INTERTWINER_RESIDUAL,
};
use frcalc_core::linalg::CMatrix;
use serde_json::json;

use super::{frame_outcome, Ctx};
use crate::io::{positive, read_json};
use crate::report::{CliResult, Outcome};

#[derive(Debug, Subcommand)]
pub enum HomOp {
    /// The hom sending E_ij to the given frame
    FromFrame {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Image frame of the standard matrix units
    FrameOf {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Apply a hom to a matrix
    Ev {
        #[arg(long)]
        hom: PathBuf,
        #[arg(long)]
        t: PathBuf,
    },
    /// Stabilize a hom by E_l
    Iota {
        #[arg(long)]
        hom: PathBuf,
        #[arg(long, value_parser = positive)]
        l: usize,
    },
    /// Plain composition h2 ∘ h1
    Compose {
        #[arg(long)]
        h2: PathBuf,
        #[arg(long)]
        h1: PathBuf,
    },
    /// Stabilized composition of two homs of equal ratio
    Phi {
        #[arg(long)]
        h2: PathBuf,
        #[arg(long)]
        h1: PathBuf,
    },
    /// h1 ⊗ h2
    Tensor {
        #[arg(long)]
        h1: PathBuf,
        #[arg(long)]
        h2: PathBuf,
    },
    /// Unitary U with h(X) = U (X ⊗ E) U*
    Intertwiner {
        #[arg(long)]
        hom: PathBuf,
    },
    /// Image of a frame under a hom
    Pushforward {
        #[arg(long)]
        hom: PathBuf,
        #[arg(long)]
        alpha: PathBuf,
    },
    /// Seeded random hom M_d → M_{d·l}
    Random {
        #[arg(long, value_parser = positive)]
        d: usize,
        #[arg(long, value_parser = positive)]
        l: usize,
    },
    /// X ↦ X ⊗ E_l
    Basepoint {
        #[arg(long, value_parser = positive)]
        d: usize,
        #[arg(long, value_parser = positive)]
        l: usize,
    },
    /// Whether two homs agree after stabilizing to a common target
    SameStab {
        #[arg(long)]
        h1: PathBuf,
        #[arg(long)]
        h2: PathBuf,
    },
}

pub fn run(op: &HomOp, ctx: &Ctx) -> CliResult<Outcome> {
    let tol = &ctx.tol;
    let h = match op {
        HomOp::FromFrame { input } => hom_from_frame(read_json(input)?, tol)?,
        HomOp::FrameOf { input } => {
            let h: StarHom = read_json(input)?;
            return frame_outcome(&frame_of_hom(&h), tol);
        }
        HomOp::Ev { hom, t } => {
            let (h, t): (StarHom, CMatrix) = (read_json(hom)?, read_json(t)?);
            return Ok(Outcome::new(ev(&h, &t)?));
        }
        HomOp::Iota { hom, l } => iota(&read_json(hom)?, *l),
        HomOp::Compose { h2, h1 } => compose(&read_json(h2)?, &read_json(h1)?)?,
        HomOp::Phi { h2, h1 } => compose_phi(&read_json(h2)?, &read_json(h1)?)?,
        HomOp::Tensor { h1, h2 } => {
            let (a, b): (StarHom, StarHom) = (read_json(h1)?, read_json(h2)?);
            tensor_hom(&a, &b)
        }
        HomOp::Intertwiner { hom } => {
            let h: StarHom = read_json(hom)?;
            let u = intertwiner(&h)?;
            let r = intertwiner_residual(&h, &u);
            let unitarity = u.unitarity_residual();
            return Ok(Outcome::new(u)
                .check("intertwiner", r, INTERTWINER_RESIDUAL)
                .check("unitarity", unitarity, tol.abs_eps));
        }
        HomOp::Pushforward { hom, alpha } => {
            let h: StarHom = read_json(hom)?;
            return frame_outcome(&pushforward(&h, &read_json(alpha)?)?, tol);
        }
        HomOp::Random { d, l } => random_hom(*d, *l, ctx.seed),
        HomOp::Basepoint { d, l } => basepoint_hom(*d, *l),
        HomOp::SameStab { h1, h2 } => {
            let same = same_stabilization(&read_json(h1)?, &read_json(h2)?, tol);
            return Ok(Outcome::new(json!({ "same": same })).verdict(same));
        }
    };
    Ok(Outcome::new(h))
}
