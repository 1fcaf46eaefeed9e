use std::path::PathBuf;

use clap::Subcommand;
use frcalc_core::abgroup::{
    cokernel, kernel, localize, sequential_colimit, smith_normal_form, AbGroupPresentation, GroupHom, IntMatrix,
};
use serde::Deserialize;
use serde_json::{json, Value};

use super::Ctx;
use crate::io::read_json;
use crate::report::{CliError, CliResult, Outcome};

#[derive(Debug, Subcommand)]
pub enum AbOp {
    /// U m V = D with unimodular U, V
    Snf {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Canonical form of a presentation
    Canon {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Coker {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Ker {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Invert l; torsion at the primes of l vanishes
    Localize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        l: u64,
    },
    /// Colimit of a chain of maps after inverting l
    Colim {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        invert: u64,
    },
}

/// `{"maps": [...]}` with optional `"groups"`; the groups default to the
/// sources of the maps followed by the last target.
#[derive(Deserialize)]
struct ChainFile {
    #[serde(default)]
    groups: Option<Vec<AbGroupPresentation>>,
    maps: Vec<GroupHom>,
}

fn group_outcome(g: &AbGroupPresentation) -> Outcome {
    let c = g.canonical();
    Outcome::new(json!({
        "group": g,
        "canonical": c,
        "display": c.to_string(),
        "order": g.order().as_ref().map(int_value),
    }))
}

pub fn run(op: &AbOp, _ctx: &Ctx) -> CliResult<Outcome> {
    match op {
        AbOp::Snf { input } => {
            let m: IntMatrix = read_json(input)?;
            let sf = smith_normal_form(&m)?;
            let exact = sf.u.mul(&m).mul(&sf.v) == sf.d;
            let factors: Vec<Value> = sf.invariant_factors().iter().map(int_value).collect();
            Ok(Outcome::new(json!({
                "u": sf.u,
                "d": sf.d,
                "v": sf.v,
                "invariant_factors": factors,
                "rank": sf.rank(),
            }))
            .check("product_mismatch", if exact { 0.0 } else { 1.0 }, 0.0))
        }
        AbOp::Canon { input } => Ok(group_outcome(&read_json(input)?)),
        AbOp::Coker { input } => Ok(group_outcome(&cokernel(&read_json(input)?)?)),
        AbOp::Ker { input } => Ok(group_outcome(&kernel(&read_json(input)?)?)),
        AbOp::Localize { input, l } => {
            let g: AbGroupPresentation = read_json(input)?;
            Ok(group_outcome(&localize(&g, positive_u64(*l)?)?))
        }
        AbOp::Colim { file, invert } => {
            let chain: ChainFile = read_json(file)?;
            let groups = match chain.groups {
                Some(g) => g,
                None => {
                    let mut g: Vec<_> = chain.maps.iter().map(|f| f.src.clone()).collect();
                    g.extend(chain.maps.last().map(|f| f.dst.clone()));
                    g
                }
            };
            let out = sequential_colimit(&groups, &chain.maps, positive_u64(*invert)?)?;
            let factors: Vec<Value> = out.canonical.torsion.iter().map(int_value).collect();
            Ok(Outcome::new(json!({
                "group": out.group,
                "canonical": out.canonical,
                "display": out.canonical.to_string(),
                "invariant_factors": factors,
                "free_rank": out.canonical.free_rank,
                "stabilized_at": out.stabilized_at,
            })))
        }
    }
}

fn positive_u64(l: u64) -> CliResult<u64> {
    if l == 0 {
        Err(CliError::Usage("l must be at least 1".into()))
    } else {
        Ok(l)
    }
}

/// Integers that fit in `i64` as numbers, others as decimal strings.
fn int_value<T: ToString>(x: &T) -> Value
where
    for<'a> i64: TryFrom<&'a T>,
{
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}
