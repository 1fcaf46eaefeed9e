pub mod ab;
pub mod alg;
pub mod cat;
pub mod frame;
pub mod fred;
pub mod hom;
pub mod mat;
pub mod suite;

use frcalc_core::frames::{verify_frame, Frame};
use frcalc_core::linalg::Tolerance;

use crate::report::{CliResult, Outcome};

pub struct Ctx {
    pub tol: Tolerance,
    pub seed: u64,
}

/// Reports `frame` together with its three axiom residuals.
pub fn frame_outcome(frame: &Frame, tol: &Tolerance) -> CliResult<Outcome> {
    let rep = verify_frame(frame.mats(), tol)?;
    Ok(Outcome::new(frame)
        .check("axiom_i", rep.axiom_i_maxerr, tol.abs_eps)
        .check("axiom_ii", rep.axiom_ii_maxerr, tol.abs_eps)
        .check("axiom_iii", rep.axiom_iii_maxerr, tol.abs_eps))
}
