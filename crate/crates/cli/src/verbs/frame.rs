use std::path::{Path, PathBuf};

use clap::Subcommand;
use frcalc_core::frames::{
    conjugate_frame, dot, matrix_unit_frame, pi1, pi2, random_frame, tensor_frame, verify_frame, Frame,
};
use frcalc_core::linalg::CMatrix;
use serde_json::Value;

use super::{frame_outcome, Ctx};
use crate::io::{positive, read_json, read_value};
use crate::report::{CliError, CliResult, Outcome};

#[derive(Debug, Subcommand)]
pub enum FrameOp {
    /// Standard matrix units E_ij ⊗ E in M_{d·cofactor}
    MakeUnits {
        #[arg(long, value_parser = positive)]
        d: usize,
        #[arg(long, value_parser = positive, default_value_t = 1)]
        cofactor: usize,
    },
    /// Check the frame axioms on a frame or a bare list of matrices
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// First tensor factor of degree m
    Pi1 {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = positive)]
        m: usize,
    },
    /// Complementary factor after splitting off degree m
    Pi2 {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = positive)]
        m: usize,
    },
    /// Product frame of two commuting frames
    Dot {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        gamma: PathBuf,
    },
    /// Kronecker product of frames
    Tensor {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        phi: PathBuf,
    },
    /// u α u*
    Conj {
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        alpha: PathBuf,
    },
    /// Seeded random frame
    Random {
        #[arg(long, value_parser = positive)]
        d: usize,
        #[arg(long, value_parser = positive, default_value_t = 1)]
        cofactor: usize,
    },
}

pub fn run(op: &FrameOp, ctx: &Ctx) -> CliResult<Outcome> {
    let tol = &ctx.tol;
    let frame = match op {
        FrameOp::MakeUnits { d, cofactor } => matrix_unit_frame(*d, *cofactor),
        FrameOp::Verify { input } => return verify(input, ctx),
        FrameOp::Pi1 { input, m } => pi1(&read_json(input)?, *m)?,
        FrameOp::Pi2 { input, m } => pi2(&read_json(input)?, *m)?,
        FrameOp::Dot { alpha, gamma } => dot(&read_json(alpha)?, &read_json(gamma)?, tol)?,
        FrameOp::Tensor { alpha, phi } => {
            let (a, p): (Frame, Frame) = (read_json(alpha)?, read_json(phi)?);
            tensor_frame(&a, &p)
        }
        FrameOp::Conj { u, alpha } => conjugate_frame(&read_json(u)?, &read_json(alpha)?, tol)?,
        FrameOp::Random { d, cofactor } => random_frame(*d, *cofactor, ctx.seed),
    };
    frame_outcome(&frame, tol)
}

fn verify(input: &Path, ctx: &Ctx) -> CliResult<Outcome> {
    let mats = match read_value(input)? {
        Value::Object(mut o) => o
            .remove("mats")
            .ok_or_else(|| CliError::Usage(format!("{}: no \"mats\" field", input.display())))?,
        v => v,
    };
    let mats: Vec<CMatrix> =
        serde_json::from_value(mats).map_err(|e| CliError::Usage(format!("{}: {e}", input.display())))?;
    let rep = verify_frame(&mats, &ctx.tol)?;
    let eps = ctx.tol.abs_eps;
    Ok(Outcome::new(rep)
        .check("axiom_i", rep.axiom_i_maxerr, eps)
        .check("axiom_ii", rep.axiom_ii_maxerr, eps)
        .check("axiom_iii", rep.axiom_iii_maxerr, eps)
        .verdict(rep.pass))
}
