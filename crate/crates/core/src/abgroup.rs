//! Finitely generated abelian groups with exact integer arithmetic.
//!
//! Vectors are rows. A presentation `⟨gens | rels⟩` is the quotient of
//! `Z^gens` by the row lattice of `rels`; a homomorphism sends source
//! generator `i` to row `i` of its matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!("row of length {} in a matrix with {cols} columns", r.len())));
        }
        let n = rows.len();
        Ok(IntMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        IntMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn diagonal(cols: usize, diag: &[BigInt]) -> Self {
        let mut m = IntMatrix::zeros(diag.len(), cols);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * cols + i] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows, "vector length");
        (0..self.cols).map(|j| v.iter().enumerate().map(|(i, x)| x * self.get(i, j)).sum()).collect()
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column counts");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.data[a * cols.len() + b] = self.get(i, j).clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] += v;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * q;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Int(i64),
    Str(String),
}

fn parse_int(r: IntRepr) -> std::result::Result<BigInt, String> {
    match r {
        IntRepr::Int(x) => Ok(BigInt::from(x)),
        IntRepr::Str(s) => s.trim().parse::<BigInt>().map_err(|e| format!("bad integer {s:?}: {e}")),
    }
}

struct BigIntJson<'a>(&'a BigInt);

impl Serialize for BigIntJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct RowJson<'a>(&'a [BigInt]);

impl Serialize for RowJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in self.0 {
            seq.serialize_element(&BigIntJson(x))?;
        }
        seq.end()
    }
}

/// Rows as JSON arrays; integers beyond `i64` are written as strings.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&RowJson(self.row(i)))?;
        }
        seq.end()
    }
}

fn parse_rows(raw: Vec<Vec<IntRepr>>) -> std::result::Result<Vec<Vec<BigInt>>, String> {
    raw.into_iter().map(|r| r.into_iter().map(parse_int).collect()).collect()
}

/// Serialized as a list of rows; a matrix with no rows reads back with zero
/// columns unless a caller supplies the width.
impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let rows = parse_rows(Vec::<Vec<IntRepr>>::deserialize(de)?).map_err(D::Error::custom)?;
        let cols = rows.first().map_or(0, Vec::len);
        IntMatrix::from_rows(cols, rows).map_err(D::Error::custom)
    }
}

/// `U · m · V = D` with `U`, `V` unimodular and `D` diagonal, `d_i | d_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries up to the rank (all positive).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form by pivoting on the entry of least absolute value.
/// The result is checked exactly before it is returned.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm> {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = a.get(i, j);
                    if !x.is_zero() && pivot.is_none_or(|(pi, pj)| x.abs() < a.get(pi, pj).abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(m, a, u, v);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                let q = -nearest_quotient(a.get(i, t), &p);
                if !q.is_zero() {
                    a.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..c {
                let q = -nearest_quotient(a.get(t, j), &p);
                if !q.is_zero() {
                    a.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                }
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(m, a, u, v)
}

/// `round(x / p)`, keeping remainders no larger than `|p| / 2`.
fn nearest_quotient(x: &BigInt, p: &BigInt) -> BigInt {
    let (q, rem) = x.div_mod_floor(p);
    // the floor remainder has the sign of p, so stepping q up by one moves
    // it across zero in either case
    let twice: BigInt = rem.abs() * 2;
    if twice > p.abs() {
        q + 1
    } else {
        q
    }
}

fn finish(m: &IntMatrix, mut a: IntMatrix, mut u: IntMatrix, v: IntMatrix) -> Result<SmithForm> {
    for t in 0..a.rows.min(a.cols) {
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    if u.mul(m).mul(&v) != a {
        return Err(Error::Decomposition("U m V differs from the diagonal form".into()));
    }
    for (name, w) in [("U", &u), ("V", &v)] {
        if !determinant(w).abs().is_one() {
            return Err(Error::Decomposition(format!("{name} is not unimodular")));
        }
    }
    for i in 0..a.rows {
        for j in 0..a.cols {
            if i != j && !a.get(i, j).is_zero() {
                return Err(Error::Decomposition("off-diagonal entry survived".into()));
            }
        }
    }
    let sf = SmithForm { u, d: a, v };
    let f = sf.invariant_factors();
    let n = sf.d.rows.min(sf.d.cols);
    if (f.len()..n).any(|i| !sf.d.get(i, i).is_zero()) || f.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
        return Err(Error::Decomposition("diagonal is not a divisibility chain".into()));
    }
    Ok(sf)
}

/// Whether the row vector `y` lies in the row lattice of the matrix whose
/// Smith form is `sf`.
fn in_row_lattice(sf: &SmithForm, y: &[BigInt]) -> bool {
    let yv = sf.v.apply_row(y);
    let f = sf.invariant_factors();
    yv.iter().enumerate().all(|(i, x)| match f.get(i) {
        Some(d) => x.is_multiple_of(d),
        None => x.is_zero(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbGroupPresentation {
    gens: usize,
    rels: IntMatrix,
}

#[derive(Deserialize)]
struct PresentationJson {
    gens: usize,
    #[serde(default)]
    rels: Vec<Vec<IntRepr>>,
}

impl Serialize for AbGroupPresentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            gens: usize,
            rels: &'a IntMatrix,
        }
        Out { gens: self.gens, rels: &self.rels }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbGroupPresentation {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = PresentationJson::deserialize(de)?;
        let rows = parse_rows(raw.rels).map_err(D::Error::custom)?;
        let rels = IntMatrix::from_rows(raw.gens, rows).map_err(D::Error::custom)?;
        Ok(AbGroupPresentation { gens: raw.gens, rels })
    }
}

/// `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_t` with `1 < d_1 | d_2 | …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Canonical {
    #[serde(serialize_with = "ser_factors")]
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

fn ser_factors<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    RowJson(v).serialize(s)
}

impl fmt::Display for Canonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl AbGroupPresentation {
    pub fn new(gens: usize, rels: IntMatrix) -> Result<Self> {
        if rels.cols != gens && rels.rows > 0 {
            return Err(Error::Dimension(format!("relations have {} columns for {gens} generators", rels.cols)));
        }
        let rels = if rels.rows == 0 { IntMatrix::zeros(0, gens) } else { rels };
        Ok(AbGroupPresentation { gens, rels })
    }

    /// `Z/n` (with `Z/0 = Z`).
    pub fn cyclic(n: i64) -> Self {
        if n == 0 {
            return AbGroupPresentation::free(1);
        }
        AbGroupPresentation { gens: 1, rels: IntMatrix::from_i64(1, &[vec![n]]).expect("1x1") }
    }

    pub fn free(rank: usize) -> Self {
        AbGroupPresentation { gens: rank, rels: IntMatrix::zeros(0, rank) }
    }

    /// `⊕ Z/n_i`.
    pub fn product_of_cyclics(orders: &[i64]) -> Self {
        let diag: Vec<BigInt> = orders.iter().map(|&n| BigInt::from(n)).collect();
        AbGroupPresentation { gens: orders.len(), rels: IntMatrix::diagonal(orders.len(), &diag) }
    }

    pub fn from_canonical(c: &Canonical) -> Self {
        let gens = c.torsion.len() + c.free_rank;
        AbGroupPresentation { gens, rels: IntMatrix::diagonal(gens, &c.torsion) }
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn rels(&self) -> &IntMatrix {
        &self.rels
    }

    pub fn canonical(&self) -> Canonical {
        let sf = smith_normal_form(&self.rels).expect("Smith form of a relation matrix");
        let f = sf.invariant_factors();
        Canonical {
            free_rank: self.gens - f.len(),
            torsion: f.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    /// The canonical presentation `diag(d_1, …, d_t, 0, …)`.
    pub fn canonicalize(&self) -> Self {
        AbGroupPresentation::from_canonical(&self.canonical())
    }

    pub fn is_trivial(&self) -> bool {
        let c = self.canonical();
        c.free_rank == 0 && c.torsion.is_empty()
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        let c = self.canonical();
        (c.free_rank == 0).then(|| c.torsion.iter().product())
    }

    /// Same group up to isomorphism.
    pub fn isomorphic(&self, other: &AbGroupPresentation) -> bool {
        self.canonical() == other.canonical()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupHom {
    pub src: AbGroupPresentation,
    pub dst: AbGroupPresentation,
    /// `src.gens x dst.gens`; row `i` is the image of generator `i`.
    pub matrix: IntMatrix,
}

impl GroupHom {
    /// Checks that every relation of `src` maps into the relations of `dst`.
    pub fn new(src: AbGroupPresentation, dst: AbGroupPresentation, matrix: IntMatrix) -> Result<Self> {
        let matrix = if matrix.rows == 0 { IntMatrix::zeros(0, dst.gens) } else { matrix };
        if matrix.rows != src.gens || matrix.cols != dst.gens {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for a map from {} to {} generators",
                matrix.rows, matrix.cols, src.gens, dst.gens
            )));
        }
        let hom = GroupHom { src, dst, matrix };
        hom.check()?;
        Ok(hom)
    }

    fn check(&self) -> Result<()> {
        let sf = smith_normal_form(&self.dst.rels)?;
        for i in 0..self.src.rels.rows {
            let img = self.matrix.apply_row(self.src.rels.row(i));
            if !in_row_lattice(&sf, &img) {
                return Err(Error::IllDefinedHom(format!("relation {i} does not map to zero")));
            }
        }
        Ok(())
    }

    /// Multiplication by `k` on a group.
    pub fn scalar(g: &AbGroupPresentation, k: i64) -> Self {
        let mut m = IntMatrix::identity(g.gens);
        for i in 0..g.gens {
            m.set(i, i, BigInt::from(k));
        }
        GroupHom { src: g.clone(), dst: g.clone(), matrix: m }
    }

    /// Generator-to-generator map `Z/a → Z/b`, `1 ↦ k`.
    pub fn cyclic(a: i64, b: i64, k: i64) -> Result<Self> {
        GroupHom::new(
            AbGroupPresentation::cyclic(a),
            AbGroupPresentation::cyclic(b),
            IntMatrix::from_i64(1, &[vec![k]])?,
        )
    }
}

#[derive(Deserialize)]
struct GroupHomJson {
    src: AbGroupPresentation,
    dst: AbGroupPresentation,
    matrix: Vec<Vec<IntRepr>>,
}

impl<'de> Deserialize<'de> for GroupHom {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = GroupHomJson::deserialize(de)?;
        let rows = parse_rows(raw.matrix).map_err(D::Error::custom)?;
        let cols = rows.first().map_or(raw.dst.gens, Vec::len);
        let matrix = IntMatrix::from_rows(cols, rows).map_err(D::Error::custom)?;
        GroupHom::new(raw.src, raw.dst, matrix).map_err(D::Error::custom)
    }
}

/// `dst / image`, canonicalized.
pub fn cokernel(f: &GroupHom) -> Result<AbGroupPresentation> {
    f.check()?;
    let rels = f.dst.rels.vstack(&f.matrix);
    Ok(AbGroupPresentation::new(f.dst.gens, rels)?.canonicalize())
}

/// `{x : f(x) = 0}`, canonicalized.
pub fn kernel(f: &GroupHom) -> Result<AbGroupPresentation> {
    f.check()?;
    let n = f.src.gens;
    if n == 0 {
        return Ok(AbGroupPresentation::free(0));
    }
    // Left kernel of [M; R_dst]: pairs (x, y) with x M + y R = 0.
    let stacked = f.matrix.vstack(&f.dst.rels);
    let sf = smith_normal_form(&stacked)?;
    let rank = sf.rank();
    let x_rows: Vec<Vec<BigInt>> = (rank..stacked.rows).map(|i| sf.u.row(i)[..n].to_vec()).collect();
    let x = IntMatrix::from_rows(n, x_rows)?;
    // Z-basis of the preimage lattice L = row lattice of x.
    let lf = smith_normal_form(&x)?;
    let factors = lf.invariant_factors();
    let dim = factors.len();
    // Coordinates of the source relations in that basis.
    let mut rel_rows = Vec::with_capacity(f.src.rels.rows);
    for i in 0..f.src.rels.rows {
        let yv = lf.v.apply_row(f.src.rels.row(i));
        let mut coords = Vec::with_capacity(dim);
        for (k, d) in factors.iter().enumerate() {
            let (q, r) = yv[k].div_rem(d);
            if !r.is_zero() {
                return Err(Error::IllDefinedHom("source relation outside the preimage lattice".into()));
            }
            coords.push(q);
        }
        rel_rows.push(coords);
    }
    Ok(AbGroupPresentation::new(dim, IntMatrix::from_rows(dim, rel_rows)?)?.canonicalize())
}

/// `d` with every prime factor of `l` removed.
fn strip(d: &BigInt, l: &BigInt) -> BigInt {
    let mut d = d.clone();
    loop {
        let g = d.gcd(l);
        if g.is_one() {
            return d;
        }
        d /= g;
    }
}

/// The finitely generated part of `g ⊗ Z[1/l]`: free rank kept, the
/// `l`-primary torsion removed.
pub fn localize(g: &AbGroupPresentation, l: u64) -> Result<AbGroupPresentation> {
    if l == 0 {
        return Err(Error::Format("cannot invert 0".into()));
    }
    let c = g.canonical();
    let lb = BigInt::from(l);
    let mut torsion: Vec<BigInt> = c.torsion.iter().map(|d| strip(d, &lb)).filter(|d| !d.is_one()).collect();
    torsion.sort();
    // Stripping keeps the divisibility chain, but canonicalizing guards it.
    Ok(AbGroupPresentation::from_canonical(&Canonical { torsion, free_rank: c.free_rank }).canonicalize())
}

/// Whether `f` becomes an isomorphism after inverting `l`.
pub fn is_local_iso(f: &GroupHom, l: u64) -> Result<bool> {
    Ok(localize(&kernel(f)?, l)?.is_trivial() && localize(&cokernel(f)?, l)?.is_trivial())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColimitResult {
    pub group: AbGroupPresentation,
    pub canonical: Canonical,
    pub stabilized_at: usize,
}

/// Colimit of `groups[0] → groups[1] → …` after inverting `l`: the first
/// stage `s` from which every listed map is a local isomorphism. At least one
/// map past `s` must exist to witness stabilization.
pub fn sequential_colimit(groups: &[AbGroupPresentation], maps: &[GroupHom], l: u64) -> Result<ColimitResult> {
    if groups.len() != maps.len() + 1 {
        return Err(Error::Dimension(format!("{} groups for {} maps", groups.len(), maps.len())));
    }
    for (i, f) in maps.iter().enumerate() {
        if f.src != groups[i] || f.dst != groups[i + 1] {
            return Err(Error::Dimension(format!("map {i} does not run from group {i} to group {}", i + 1)));
        }
        f.check()?;
    }
    let iso = maps.iter().map(|f| is_local_iso(f, l)).collect::<Result<Vec<_>>>()?;
    let first_bad_from_end = iso.iter().rposition(|ok| !ok);
    let s = first_bad_from_end.map_or(0, |i| i + 1);
    if s >= maps.len() {
        return Err(Error::NotStabilized);
    }
    let group = localize(&groups[s], l)?;
    Ok(ColimitResult { canonical: group.canonical(), group, stabilized_at: s })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        let m = IntMatrix::from_i64(2, &[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(smith_normal_form(&m).unwrap().invariant_factors(), big(&[1, 6]));
        let z = IntMatrix::zeros(3, 2);
        let sf = smith_normal_form(&z).unwrap();
        assert!(sf.d.is_zero());
        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).unwrap().d, id);
        let m = IntMatrix::from_i64(3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        assert_eq!(smith_normal_form(&m).unwrap().invariant_factors(), big(&[2, 6, 12]));
    }

    #[test]
    fn negative_pivots() {
        let m = IntMatrix::from_i64(2, &[vec![-3, 7], vec![5, -8]]).unwrap();
        assert_eq!(smith_normal_form(&m).unwrap().invariant_factors(), big(&[1, 11]));
        let m = IntMatrix::from_i64(3, &[vec![-4, -9, 6], vec![-6, 3, -9], vec![8, -2, -5]]).unwrap();
        let sf = smith_normal_form(&m).unwrap();
        assert_eq!(sf.invariant_factors().iter().product::<BigInt>(), determinant(&m).abs());
    }

    #[test]
    fn determinant_examples() {
        let m = IntMatrix::from_i64(3, &[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 9]]).unwrap();
        assert_eq!(determinant(&m), BigInt::from(-3));
    }

    #[test]
    fn kernel_cokernel_examples() {
        for k in [2, 5, 12] {
            let f = GroupHom::new(
                AbGroupPresentation::free(1),
                AbGroupPresentation::free(1),
                IntMatrix::from_i64(1, &[vec![k]]).unwrap(),
            )
            .unwrap();
            assert!(cokernel(&f).unwrap().isomorphic(&AbGroupPresentation::cyclic(k)));
            assert!(kernel(&f).unwrap().is_trivial());
        }
        let f = GroupHom::scalar(&AbGroupPresentation::cyclic(12), 6);
        assert!(cokernel(&f).unwrap().isomorphic(&AbGroupPresentation::cyclic(6)));
        assert!(kernel(&f).unwrap().isomorphic(&AbGroupPresentation::cyclic(6)));
        // Z/4 -> Z/2, 1 -> 1
        let f = GroupHom::cyclic(4, 2, 1).unwrap();
        assert!(kernel(&f).unwrap().isomorphic(&AbGroupPresentation::cyclic(2)));
        assert!(cokernel(&f).unwrap().is_trivial());
    }

    #[test]
    fn ill_defined_hom_rejected() {
        assert!(matches!(GroupHom::cyclic(2, 3, 1), Err(Error::IllDefinedHom(_))));
    }

    #[test]
    fn localization_examples() {
        let g = localize(&AbGroupPresentation::cyclic(12), 2).unwrap();
        assert!(g.isomorphic(&AbGroupPresentation::cyclic(3)));
        let g = localize(&AbGroupPresentation::cyclic(2 * 27), 3).unwrap();
        assert!(g.isomorphic(&AbGroupPresentation::cyclic(2)));
        let g = localize(&AbGroupPresentation::free(1), 5).unwrap();
        assert_eq!(g.canonical(), Canonical { torsion: vec![], free_rank: 1 });
        let g = AbGroupPresentation::product_of_cyclics(&[4, 6, 45]);
        assert_eq!(localize(&localize(&g, 6).unwrap(), 6).unwrap(), localize(&g, 6).unwrap());
    }

    #[test]
    fn colimit_examples() {
        let groups: Vec<_> = (0..4).map(|n| AbGroupPresentation::cyclic(2 * 3i64.pow(n))).collect();
        let maps: Vec<_> = (0..3).map(|n| GroupHom::cyclic(2 * 3i64.pow(n), 2 * 3i64.pow(n + 1), 3).unwrap()).collect();
        let out = sequential_colimit(&groups, &maps, 3).unwrap();
        assert_eq!(out.stabilized_at, 0);
        assert_eq!(out.canonical.torsion, big(&[2]));

        let z = AbGroupPresentation::free(1);
        let groups = vec![z.clone(); 3];
        let maps = vec![GroupHom::new(z.clone(), z.clone(), IntMatrix::from_i64(1, &[vec![3]]).unwrap()).unwrap(); 2];
        let out = sequential_colimit(&groups, &maps, 3).unwrap();
        assert_eq!(out.canonical, Canonical { torsion: vec![], free_rank: 1 });

        let groups: Vec<_> = (1..5).map(|n| AbGroupPresentation::cyclic(2i64.pow(n))).collect();
        let maps: Vec<_> = (1..4).map(|n| GroupHom::cyclic(2i64.pow(n), 2i64.pow(n + 1), 2).unwrap()).collect();
        assert_eq!(sequential_colimit(&groups, &maps, 3), Err(Error::NotStabilized));
    }

    #[test]
    fn json_round_trip() {
        let g: AbGroupPresentation = serde_json::from_str(r#"{"gens":2,"rels":[[2,0],[0,"123456789012345678901234567890"]]}"#).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.contains("\"123456789012345678901234567890\""));
        let back: AbGroupPresentation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        let free: AbGroupPresentation = serde_json::from_str(r#"{"gens":3}"#).unwrap();
        assert_eq!(free.canonical().free_rank, 3);
    }
}
