use std::path::PathBuf;

use clap::Subcommand;
use frcalc_core::fredholm::{
    amplify, conjugate, index_report, localize_index, random_fredholm, DeskFredholm, LocalizationChain,
};
use frcalc_core::homspace::StarHom;
use frcalc_core::linalg::CMatrix;
use serde_json::json;

use super::Ctx;
use crate::io::{positive, read_json};
use crate::report::{CliResult, Outcome};

#[derive(Debug, Subcommand)]
pub enum FredOp {
    /// dim ker − dim coker, checked against the window count
    Index {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// g T g* for a unitary g acting on each block
    Conj {
        #[arg(long)]
        g: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Push T through a hom; the index is multiplied by the hom's ratio
    Amplify {
        #[arg(long)]
        hom: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Rational index of a chain of amplification stages
    Localize {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Seeded operator with block size n and the given windows
    Random {
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        dom: usize,
        #[arg(long, default_value_t = 0)]
        cod: usize,
        /// Extra rank drop of the finite part, balanced in kernel and cokernel
        #[arg(long, default_value_t = 0)]
        deficiency: usize,
    },
}

fn mismatch(a: i64, b: i64) -> f64 {
    (a - b).unsigned_abs() as f64
}

pub fn run(op: &FredOp, ctx: &Ctx) -> CliResult<Outcome> {
    let tol = &ctx.tol;
    match op {
        FredOp::Index { input } => {
            let t: DeskFredholm = read_json(input)?;
            let rep = index_report(&t, tol)?;
            Ok(Outcome::new(rep).check("closed_form", mismatch(rep.index, t.closed_form_index()), 0.0))
        }
        FredOp::Conj { g, input } => {
            let (g, t): (CMatrix, DeskFredholm) = (read_json(g)?, read_json(input)?);
            let out = conjugate(&g, &t, tol)?;
            let r = mismatch(index_report(&out, tol)?.index, index_report(&t, tol)?.index);
            Ok(Outcome::new(out).check("index_change", r, 0.0))
        }
        FredOp::Amplify { hom, input } => {
            let (h, t): (StarHom, DeskFredholm) = (read_json(hom)?, read_json(input)?);
            let out = amplify(&h, &t)?;
            let want = h.ratio() as i64 * index_report(&t, tol)?.index;
            let r = mismatch(index_report(&out, tol)?.index, want);
            Ok(Outcome::new(out).check("index_scaling", r, 0.0))
        }
        FredOp::Localize { input } => {
            let chain: LocalizationChain = read_json(input)?;
            let v = localize_index(&chain, tol)?;
            Ok(Outcome::new(json!({ "value": v.to_fraction_string(), "stage_indices": v.stage_indices })))
        }
        FredOp::Random { n, dom, cod, deficiency } => {
            Ok(Outcome::new(random_fredholm(*n, *dom, *cod, *deficiency, ctx.seed)))
        }
    }
}
