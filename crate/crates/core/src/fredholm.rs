//! Finite-window model of Fredholm elements of `M_n(B(H))`: a finite block
//! `F` between `n·win_dom` and `n·win_cod` dimensional windows, extended by the
//! identity on the rest of the space. Only the index is observable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::homspace::{ev, intertwiner, StarHom};
use crate::linalg::{c64, complex_gaussian, kron, seeded_rng, singular_values, CMatrix, Tolerance};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeskFredholm {
    n: usize,
    win_dom: usize,
    win_cod: usize,
    finite_part: CMatrix,
}

#[derive(Deserialize)]
struct DeskFredholmJson {
    n: usize,
    win_dom: usize,
    win_cod: usize,
    finite_part: CMatrix,
}

impl<'de> Deserialize<'de> for DeskFredholm {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = DeskFredholmJson::deserialize(de)?;
        DeskFredholm::new(raw.n, raw.win_dom, raw.win_cod, raw.finite_part).map_err(D::Error::custom)
    }
}

impl DeskFredholm {
    pub fn new(n: usize, win_dom: usize, win_cod: usize, finite_part: CMatrix) -> Result<Self> {
        if n == 0 {
            return Err(Error::Format("matrix size n must be positive".into()));
        }
        if finite_part.rows() != n * win_cod || finite_part.cols() != n * win_dom {
            return Err(Error::Dimension(format!(
                "finite part is {}x{}, expected {}x{}",
                finite_part.rows(),
                finite_part.cols(),
                n * win_cod,
                n * win_dom
            )));
        }
        Ok(DeskFredholm { n, win_dom, win_cod, finite_part })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn win_dom(&self) -> usize {
        self.win_dom
    }

    pub fn win_cod(&self) -> usize {
        self.win_cod
    }

    pub fn finite_part(&self) -> &CMatrix {
        &self.finite_part
    }

    /// `n·(win_dom − win_cod)`.
    pub fn closed_form_index(&self) -> i64 {
        self.n as i64 * (self.win_dom as i64 - self.win_cod as i64)
    }

    /// The identity: empty windows.
    pub fn identity(n: usize) -> Self {
        DeskFredholm { n, win_dom: 0, win_cod: 0, finite_part: CMatrix::zeros(0, 0) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexReport {
    pub kernel: usize,
    pub cokernel: usize,
    pub index: i64,
}

/// `dim ker − dim coker` of the finite part from its numerical rank.
pub fn index_report(t: &DeskFredholm, tol: &Tolerance) -> Result<IndexReport> {
    let f = &t.finite_part;
    let (rows, cols) = (f.rows(), f.cols());
    let rank = if rows == 0 || cols == 0 {
        0
    } else {
        let sv = singular_values(f);
        let smax = sv.iter().copied().fold(0.0, f64::max);
        if smax == 0.0 {
            0
        } else {
            let cutoff = tol.rank_cutoff * smax;
            if let Some(&s) = sv.iter().find(|&&s| s > cutoff / 10.0 && s < cutoff * 10.0) {
                return Err(Error::IllConditioned { sigma: s, cutoff });
            }
            sv.iter().filter(|&&s| s >= cutoff).count()
        }
    };
    let kernel = cols - rank;
    let cokernel = rows - rank;
    let index = kernel as i64 - cokernel as i64;
    assert_eq!(index, t.closed_form_index(), "rank-based index disagrees with the window dimensions");
    Ok(IndexReport { kernel, cokernel, index })
}

pub fn index(t: &DeskFredholm, tol: &Tolerance) -> Result<i64> {
    Ok(index_report(t, tol)?.index)
}

/// `γ(g, T) = g T g^{-1}` for a unitary `g ∈ U(n)` acting as `g ⊗ Id`.
pub fn conjugate(g: &CMatrix, t: &DeskFredholm, tol: &Tolerance) -> Result<DeskFredholm> {
    if !g.is_square() || g.rows() != t.n {
        return Err(Error::Dimension(format!("{}x{} conjugator for n = {}", g.rows(), g.cols(), t.n)));
    }
    let res = g.unitarity_residual();
    if res > tol.abs_eps {
        return Err(Error::NotUnitary(res));
    }
    let left = kron(g, &CMatrix::identity(t.win_cod));
    let right = kron(&g.adjoint(), &CMatrix::identity(t.win_dom));
    DeskFredholm::new(t.n, t.win_dom, t.win_cod, &(&left * &t.finite_part) * &right)
}

/// `(h ⊗ id)(T)`: with `U` the intertwiner of `h`, the finite part becomes
/// `(U ⊗ E)(F ⊗ E_l, reindexed)(U^* ⊗ E)` and `n` becomes `h.dst`.
pub fn amplify(h: &StarHom, t: &DeskFredholm) -> Result<DeskFredholm> {
    if h.src() != t.n {
        return Err(Error::Dimension(format!("hom from M_{} applied to an element of M_{}", h.src(), t.n)));
    }
    let l = h.ratio();
    let (n, cod, dom) = (t.n, t.win_cod, t.win_dom);
    let u = intertwiner(h)?;
    // R[(a,s,w),(b,s',w')] = δ_{s,s'} F[(a,w),(b,w')]
    let f = &t.finite_part;
    let r = CMatrix::from_fn(n * l * cod, n * l * dom, |row, col| {
        let (a, s, w) = (row / (l * cod), (row / cod) % l, row % cod);
        let (b, s2, w2) = (col / (l * dom), (col / dom) % l, col % dom);
        if s == s2 {
            f.get(a * cod + w, b * dom + w2)
        } else {
            c64::new(0.0, 0.0)
        }
    });
    let left = kron(&u, &CMatrix::identity(cod));
    let right = kron(&u.adjoint(), &CMatrix::identity(dom));
    DeskFredholm::new(h.dst(), dom, cod, &(&left * &r) * &right)
}

/// `Σ_{a,b} h(e_{a,b}) ⊗ F_{a,b}`, the entrywise application of `h` written
/// without the intertwiner.
pub fn amplify_direct(h: &StarHom, t: &DeskFredholm) -> Result<DeskFredholm> {
    if h.src() != t.n {
        return Err(Error::Dimension(format!("hom from M_{} applied to an element of M_{}", h.src(), t.n)));
    }
    let (n, cod, dom) = (t.n, t.win_cod, t.win_dom);
    let mut out = CMatrix::zeros(h.dst() * cod, h.dst() * dom);
    for a in 0..n {
        for b in 0..n {
            let block = t.finite_part.block(a * cod, b * dom, cod, dom);
            if block.max_abs() == 0.0 {
                continue;
            }
            let img = ev(h, &CMatrix::unit(n, a, b))?;
            out = &out + &kron(&img, &block);
        }
    }
    DeskFredholm::new(h.dst(), dom, cod, out)
}

/// Stages `T_m, T_{m+1}, …` of one element under repeated amplification by
/// ratio-`l` homs. `homs`, when present, are the amplifications themselves
/// and are checked entrywise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalizationChain {
    pub l: usize,
    pub start_level: u32,
    pub stages: Vec<DeskFredholm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homs: Option<Vec<StarHom>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalizedIndex {
    pub value: BigRational,
    pub stage_indices: Vec<i64>,
}

impl LocalizedIndex {
    /// `"p/q"`, or `"p"` for integers.
    pub fn to_fraction_string(&self) -> String {
        if self.value.denom().is_one() {
            self.value.numer().to_string()
        } else {
            format!("{}/{}", self.value.numer(), self.value.denom())
        }
    }
}

/// `index(T_m) / l^m`, after checking that each stage has `l` times the size
/// and `l` times the index of the previous one.
pub fn localize_index(chain: &LocalizationChain, tol: &Tolerance) -> Result<LocalizedIndex> {
    let l = chain.l;
    if l == 0 {
        return Err(Error::Format("l must be positive".into()));
    }
    if chain.stages.is_empty() {
        return Err(Error::Format("no stages".into()));
    }
    let stage_indices = chain.stages.iter().map(|s| index(s, tol)).collect::<Result<Vec<_>>>()?;
    for j in 1..chain.stages.len() {
        let (prev, next) = (&chain.stages[j - 1], &chain.stages[j]);
        if next.n != l * prev.n {
            return Err(Error::InconsistentStages(format!("stage {j} has n = {}, expected {}", next.n, l * prev.n)));
        }
        if stage_indices[j] != l as i64 * stage_indices[j - 1] {
            return Err(Error::InconsistentStages(format!(
                "stage {j} has index {}, expected {}",
                stage_indices[j],
                l as i64 * stage_indices[j - 1]
            )));
        }
    }
    if let Some(homs) = &chain.homs {
        if homs.len() + 1 != chain.stages.len() {
            return Err(Error::InconsistentStages(format!(
                "{} homs for {} stages",
                homs.len(),
                chain.stages.len()
            )));
        }
        for (j, h) in homs.iter().enumerate() {
            if h.ratio() != l {
                return Err(Error::InconsistentStages(format!("hom {j} has ratio {}, expected {l}", h.ratio())));
            }
            let want = amplify(h, &chain.stages[j])?;
            let got = &chain.stages[j + 1];
            let scale = want.finite_part.max_abs().max(1.0);
            let dev = if (got.win_dom, got.win_cod) == (want.win_dom, want.win_cod) {
                got.finite_part.max_diff(&want.finite_part) / scale
            } else {
                f64::INFINITY
            };
            if dev > 1e-8 {
                return Err(Error::InconsistentStages(format!(
                    "stage {} is not the amplification of stage {j} (deviation {dev:.1e})",
                    j + 1
                )));
            }
        }
    }
    let denom = num_traits::pow(BigInt::from(l), chain.start_level as usize);
    let value = BigRational::new(BigInt::from(stage_indices[0]), denom);
    Ok(LocalizedIndex { value, stage_indices })
}

/// A random element with windows `win_dom`, `win_cod` whose finite part has
/// rank `min(rows, cols) − deficiency`.
pub fn random_fredholm(n: usize, win_dom: usize, win_cod: usize, deficiency: usize, seed: u64) -> DeskFredholm {
    let (rows, cols) = (n * win_cod, n * win_dom);
    let rank = rows.min(cols).saturating_sub(deficiency);
    let mut rng = seeded_rng(seed);
    let f = if rank == 0 {
        CMatrix::zeros(rows, cols)
    } else {
        &complex_gaussian(&mut rng, rows, rank) * &complex_gaussian(&mut rng, rank, cols)
    };
    DeskFredholm::new(n, win_dom, win_cod, f).expect("generated shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homspace::{basepoint_hom, compose_phi, random_hom};
    use crate::linalg::random_unitary;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn index_examples() {
        assert_eq!(index(&random_fredholm(1, 3, 2, 0, 1), &tol()).unwrap(), 1);
        let t = random_fredholm(2, 3, 2, 2, 2);
        let rep = index_report(&t, &tol()).unwrap();
        assert_eq!(rep.index, 2);
        assert_eq!((rep.kernel, rep.cokernel), (4, 2));
        assert_eq!(index(&DeskFredholm::identity(3), &tol()).unwrap(), 0);
    }

    #[test]
    fn ill_conditioned_detected() {
        let mut f = CMatrix::identity(2);
        f.set(1, 1, c64::new(1e-8, 0.0));
        let t = DeskFredholm::new(1, 2, 2, f).unwrap();
        assert!(matches!(index(&t, &tol()), Err(Error::IllConditioned { .. })));
    }

    #[test]
    fn conjugation() {
        let t = random_fredholm(2, 3, 1, 1, 5);
        assert!(conjugate(&CMatrix::identity(2), &t, &tol()).unwrap().finite_part().max_diff(t.finite_part()) == 0.0);
        let (g1, g2) = (random_unitary(2, 1), random_unitary(2, 2));
        let once = conjugate(&(&g2 * &g1), &t, &tol()).unwrap();
        let twice = conjugate(&g2, &conjugate(&g1, &t, &tol()).unwrap(), &tol()).unwrap();
        assert!(once.finite_part().max_diff(twice.finite_part()) <= 1e-12);
        assert_eq!(index(&once, &tol()).unwrap(), index(&t, &tol()).unwrap());
        assert!(matches!(conjugate(&CMatrix::unit(2, 0, 0), &t, &tol()), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn amplification() {
        let t = random_fredholm(2, 2, 1, 0, 3);
        let a = amplify(&basepoint_hom(2, 3), &t).unwrap();
        assert_eq!(index(&a, &tol()).unwrap(), 6);
        let h = random_hom(2, 1, 4);
        assert_eq!(index(&amplify(&h, &t).unwrap(), &tol()).unwrap(), 2);
        let h = random_hom(2, 3, 9);
        let direct = amplify_direct(&h, &t).unwrap();
        assert!(amplify(&h, &t).unwrap().finite_part().max_diff(direct.finite_part()) <= 1e-12);
        let (h1, h2) = (random_hom(2, 3, 11), random_hom(2, 3, 12));
        let composite = amplify(&compose_phi(&h2, &h1).unwrap(), &t).unwrap();
        assert_eq!(index(&composite, &tol()).unwrap(), 18);
    }

    #[test]
    fn localization() {
        let t = random_fredholm(2, 2, 1, 0, 1);
        let h1 = basepoint_hom(2, 3);
        let t1 = amplify(&h1, &t).unwrap();
        let h2 = random_hom(6, 3, 2);
        let t2 = amplify(&h2, &t1).unwrap();
        let chain = LocalizationChain { l: 3, start_level: 0, stages: vec![t, t1.clone(), t2.clone()], homs: Some(vec![h1, h2.clone()]) };
        let out = localize_index(&chain, &tol()).unwrap();
        assert_eq!(out.to_fraction_string(), "2");
        assert_eq!(out.stage_indices, vec![2, 6, 18]);

        let single = LocalizationChain { l: 3, start_level: 1, stages: vec![random_fredholm(1, 1, 0, 0, 4)], homs: None };
        assert_eq!(localize_index(&single, &tol()).unwrap().to_fraction_string(), "1/3");

        let mut bad = t2.finite_part().clone();
        bad.set(0, 0, bad.get(0, 0) + c64::new(0.5, 0.0));
        let t2_bad = DeskFredholm::new(18, 2, 1, bad).unwrap();
        let chain = LocalizationChain { l: 3, start_level: 1, stages: vec![t1, t2_bad], homs: Some(vec![h2]) };
        assert!(matches!(localize_index(&chain, &tol()), Err(Error::InconsistentStages(_))));
    }
}
