use std::path::PathBuf;

use clap::Subcommand;
use frcalc_core::linalg::{commutation_matrix, hs_inner, kron, nullspace, random_unitary, rank, singular_values, CMatrix};
use serde_json::json;

use super::Ctx;
use crate::io::{positive, read_json};
use crate::report::{CliResult, Outcome};

#[derive(Debug, Subcommand)]
pub enum MatOp {
    /// Kronecker product a ⊗ b
    Kron {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Hilbert-Schmidt inner product tr(x y*)
    Hs {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
    },
    /// Orthonormal basis of the numerical kernel
    Nullspace {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Numerical rank under the relative cutoff
    Rank {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Seeded Haar unitary
    RandomUnitary {
        #[arg(long, value_parser = positive)]
        n: usize,
    },
    /// Permutation K with K (a ⊗ b) K^T = b ⊗ a for a: m×m, b: n×n
    Commutation {
        #[arg(long, value_parser = positive)]
        m: usize,
        #[arg(long, value_parser = positive)]
        n: usize,
    },
}

pub fn run(op: &MatOp, ctx: &Ctx) -> CliResult<Outcome> {
    let tol = &ctx.tol;
    match op {
        MatOp::Kron { a, b } => {
            let (a, b): (CMatrix, CMatrix) = (read_json(a)?, read_json(b)?);
            Ok(Outcome::new(kron(&a, &b)))
        }
        MatOp::Hs { x, y } => {
            let z = hs_inner(&read_json(x)?, &read_json(y)?)?;
            Ok(Outcome::new(json!({ "re": z.re, "im": z.im })))
        }
        MatOp::Nullspace { input } => {
            let a: CMatrix = read_json(input)?;
            let basis = nullspace(&a, tol);
            let smax = singular_values(&a).into_iter().fold(0.0, f64::max);
            let image = basis.iter().map(|v| (&a * v).max_abs()).fold(0.0, f64::max);
            let mut ortho: f64 = 0.0;
            for (i, v) in basis.iter().enumerate() {
                for (j, w) in basis.iter().enumerate() {
                    let g = (&v.adjoint() * w).get(0, 0);
                    let want = if i == j { 1.0 } else { 0.0 };
                    ortho = ortho.max((g.re - want).abs().max(g.im.abs()));
                }
            }
            Ok(Outcome::new(&basis)
                .check("image", image, tol.abs_eps.max(tol.rank_cutoff * smax))
                .check("orthonormality", ortho, tol.abs_eps))
        }
        MatOp::Rank { input } => {
            let a: CMatrix = read_json(input)?;
            Ok(Outcome::new(json!({ "rank": rank(&a, tol), "singular_values": singular_values(&a) })))
        }
        MatOp::RandomUnitary { n } => {
            let u = random_unitary(*n, ctx.seed);
            let r = u.unitarity_residual();
            Ok(Outcome::new(u).check("unitarity", r, tol.abs_eps))
        }
        MatOp::Commutation { m, n } => Ok(Outcome::new(commutation_matrix(*m, *n))),
    }
}
