//! Annular modules built from Temperley-Lieb diagrams, Hochschild and cyclic
//! homology of their two cyclic restrictions, and the identities that guard
//! the sign conventions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::HomologyError;
use crate::functors::{presentation_instances, Embedding, RelationCheck, Status};
use crate::linalg::{homology_at, AbGroup, ChainComplex, IntMatrix};
use crate::object::BoundaryObject;
use crate::tangle::{AtlMorphism, AtlTangle, Endpoint, RawTangle};
use crate::functors::{GeneratorTable, Tangles};
use crate::word::{Letter, Word};

/// Largest degree accepted by the homology tables.
pub const MAX_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Ring {
    Integers,
    Rationals,
}

impl FromStr for Ring {
    type Err = HomologyError;
    fn from_str(s: &str) -> Result<Ring, HomologyError> {
        match s {
            "Z" | "z" => Ok(Ring::Integers),
            "Q" | "q" => Ok(Ring::Rationals),
            _ => Err(HomologyError::BadScalar(s.into())),
        }
    }
}

/// Parse an exact rational `p` or `p/q`.
pub fn parse_scalar(s: &str) -> Result<BigRational, HomologyError> {
    let bad = || HomologyError::BadScalar(s.into());
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// How the rotation acts: with the cyclic sign `(-1)^{n-1}` at `[n]`, or
/// without it (only useful as a negative control).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TauSign {
    Cyclic,
    Unsigned,
}

/// The module `TL_•(R, δ±)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnularModuleSpec {
    pub ring: Ring,
    pub delta_plus: BigRational,
    pub delta_minus: BigRational,
    pub tau_sign: TauSign,
}

impl AnnularModuleSpec {
    pub fn tl(ring: Ring, delta_plus: BigRational, delta_minus: BigRational) -> Result<Self, HomologyError> {
        if ring == Ring::Integers {
            for d in [&delta_plus, &delta_minus] {
                if !d.is_integer() {
                    return Err(HomologyError::NonIntegralScalar(d.to_string()));
                }
            }
        }
        Ok(AnnularModuleSpec {
            ring,
            delta_plus,
            delta_minus,
            tau_sign: TauSign::Cyclic,
        })
    }

    /// `TL_•(Z, 0)`.
    pub fn tl_integral_zero() -> Self {
        AnnularModuleSpec::tl(Ring::Integers, BigRational::zero(), BigRational::zero())
            .expect("integral")
    }
}

/// A non-crossing perfect matching of the `2n` points of a disk.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLDiagram {
    pub object: BoundaryObject,
    pub matching: Vec<(u32, u32)>,
}

fn matchings(lo: u32, hi: u32) -> Vec<Vec<(u32, u32)>> {
    if lo > hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut partner = lo + 1;
    while partner <= hi {
        for inside in matchings(lo + 1, partner - 1) {
            for outside in matchings(partner + 1, hi) {
                let mut m = vec![(lo, partner)];
                m.extend(inside.iter().copied());
                m.extend(outside.iter().copied());
                m.sort();
                out.push(m);
            }
        }
        partner += 2;
    }
    out
}

/// All diagrams at an object, lexicographic on sorted matchings.
pub fn tl_basis(object: BoundaryObject) -> Vec<TLDiagram> {
    let mut ms = matchings(1, object.points());
    ms.sort();
    ms.into_iter()
        .map(|matching| TLDiagram { object, matching })
        .collect()
}

/// Sparse matrix over the rationals, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<BTreeMap<usize, BigRational>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            columns: vec![BTreeMap::new(); cols],
        }
    }

    pub fn identity(k: usize) -> Self {
        Self::scalar(k, BigRational::one())
    }

    pub fn scalar(k: usize, c: BigRational) -> Self {
        let mut m = Self::zeros(k, k);
        if !c.is_zero() {
            for (i, col) in m.columns.iter_mut().enumerate() {
                col.insert(i, c.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.columns[c].get(&r).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_to(col: &mut BTreeMap<usize, BigRational>, r: usize, v: BigRational) {
        if v.is_zero() {
            return;
        }
        let e = col.entry(r).or_insert_with(BigRational::zero);
        *e += v;
        if e.is_zero() {
            col.remove(&r);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(BTreeMap::is_empty)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols());
        }
        SparseMatrix {
            rows: self.rows,
            columns: self
                .columns
                .iter()
                .map(|col| col.iter().map(|(&r, v)| (r, v * c)).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()), "shape");
        let mut out = self.clone();
        for (c, col) in other.columns.iter().enumerate() {
            for (&r, v) in col {
                Self::add_to(&mut out.columns[c], r, v.clone());
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// `self ∘ inner`.
    pub fn mul(&self, inner: &Self) -> Self {
        assert_eq!(self.cols(), inner.rows, "shape");
        let columns = inner
            .columns
            .iter()
            .map(|icol| {
                let mut col = BTreeMap::new();
                for (&k, v) in icol {
                    for (&r, w) in &self.columns[k] {
                        Self::add_to(&mut col, r, v * w);
                    }
                }
                col
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            columns,
        }
    }

    /// An integer matrix with the same row and column spaces over the
    /// rationals: the matrix scaled by the common denominator.
    pub fn to_scaled_int(&self) -> IntMatrix {
        let mut den = BigInt::one();
        for col in &self.columns {
            for v in col.values() {
                den = den.lcm(v.denom());
            }
        }
        let mut m = IntMatrix::zeros(self.rows, self.cols());
        for (c, col) in self.columns.iter().enumerate() {
            for (&r, v) in col {
                m.set(r, c, (v * &den).to_integer());
            }
        }
        m
    }

    /// Exact conversion; `None` if some entry is not an integer.
    pub fn to_int(&self) -> Option<IntMatrix> {
        let mut m = IntMatrix::zeros(self.rows, self.cols());
        for (c, col) in self.columns.iter().enumerate() {
            for (&r, v) in col {
                if !v.is_integer() {
                    return None;
                }
                m.set(r, c, v.to_integer());
            }
        }
        Some(m)
    }

    /// Stack blocks; `blocks[(i, j)]` maps column block `j` to row block `i`.
    pub fn from_blocks(row_sizes: &[usize], col_sizes: &[usize], blocks: &[(usize, usize, SparseMatrix)]) -> Self {
        let row_off: Vec<usize> = row_sizes.iter().scan(0, |acc, &s| { let o = *acc; *acc += s; Some(o) }).collect();
        let col_off: Vec<usize> = col_sizes.iter().scan(0, |acc, &s| { let o = *acc; *acc += s; Some(o) }).collect();
        let mut out = Self::zeros(row_sizes.iter().sum(), col_sizes.iter().sum());
        for (bi, bj, m) in blocks {
            assert_eq!((m.rows, m.cols()), (row_sizes[*bi], col_sizes[*bj]), "block shape");
            for (c, col) in m.columns.iter().enumerate() {
                for (&r, v) in col {
                    Self::add_to(&mut out.columns[col_off[*bj] + c], row_off[*bi] + r, v.clone());
                }
            }
        }
        out
    }
}

struct Basis {
    diagrams: Vec<TLDiagram>,
    tangles: Vec<AtlMorphism>,
    index: HashMap<Vec<(u32, u32)>, usize>,
}

impl Basis {
    fn new(object: BoundaryObject) -> Basis {
        let diagrams = tl_basis(object);
        let tangles = diagrams.iter().map(disk_tangle).collect();
        let index = diagrams
            .iter()
            .enumerate()
            .map(|(i, d)| (d.matching.clone(), i))
            .collect();
        Basis {
            diagrams,
            tangles,
            index,
        }
    }
}

/// A disk diagram as an annular tangle punctured in the region of the `*`
/// interval; at the zero objects it is the identity.
fn disk_tangle(d: &TLDiagram) -> AtlMorphism {
    if d.object.is_zero() {
        return AtlMorphism::identity(d.object);
    }
    let raw = RawTangle {
        inner: BoundaryObject::ZeroPlus,
        outer: d.object,
        pairs: d
            .matching
            .iter()
            .map(|&(a, b)| (Endpoint::outer(a), Endpoint::outer(b)))
            .collect(),
        loops: 0,
    };
    AtlMorphism::new(crate::tangle::validate_tangle(&raw).expect("disk diagrams are annular tangles"))
}

/// Read a composite back as a disk diagram with its loop scalar.
fn read_disk(m: &AtlMorphism, spec: &AnnularModuleSpec) -> (Vec<(u32, u32)>, BigRational) {
    let t: &AtlTangle = &m.tangle;
    let mut matching: Vec<(u32, u32)> = t.cups().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    matching.sort();
    // Essential loops close up around the filled-in core: interiors alternate
    // starting from the shading of the core.
    let mut shaded = t.inner().zero_shaded().unwrap_or(false);
    let (mut plus, mut minus) = (m.c_plus, m.c_minus);
    for _ in 0..t.loops() {
        if shaded {
            plus += 1;
        } else {
            minus += 1;
        }
        shaded = !shaded;
    }
    let scalar = num_traits::pow(spec.delta_plus.clone(), plus as usize)
        * num_traits::pow(spec.delta_minus.clone(), minus as usize);
    (matching, scalar)
}

type ActionKey = (Letter, BoundaryObject);

/// The annular module `TL_•(R, δ±)` with cached bases and generator matrices.
pub struct TlModule {
    spec: AnnularModuleSpec,
    bases: Mutex<HashMap<BoundaryObject, Arc<Basis>>>,
    actions: Mutex<HashMap<ActionKey, Arc<SparseMatrix>>>,
}

fn offset(sign: Embedding) -> u32 {
    match sign {
        Embedding::Plus => 0,
        Embedding::Minus => 1,
    }
}

fn signed(k: usize) -> BigRational {
    if k % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

impl TlModule {
    pub fn new(spec: AnnularModuleSpec) -> TlModule {
        TlModule {
            spec,
            bases: Mutex::new(HashMap::new()),
            actions: Mutex::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> &AnnularModuleSpec {
        &self.spec
    }

    fn basis(&self, obj: BoundaryObject) -> Arc<Basis> {
        if let Some(b) = self.bases.lock().expect("lock").get(&obj) {
            return b.clone();
        }
        let b = Arc::new(Basis::new(obj));
        self.bases.lock().expect("lock").entry(obj).or_insert(b).clone()
    }

    pub fn rank(&self, obj: BoundaryObject) -> usize {
        self.basis(obj).diagrams.len()
    }

    pub fn basis_diagrams(&self, obj: BoundaryObject) -> Vec<TLDiagram> {
        self.basis(obj).diagrams.clone()
    }

    /// Matrix of one generator at its source, with the cyclic sign on `τ`.
    pub fn action(&self, letter: Letter, source: BoundaryObject) -> Arc<SparseMatrix> {
        let key = (letter, source);
        if let Some(m) = self.actions.lock().expect("lock").get(&key) {
            return m.clone();
        }
        let target = letter.target(source).expect("generator defined at source");
        let from = self.basis(source);
        let to = self.basis(target);
        let mut sign = BigRational::one();
        if let (Letter::Tau, BoundaryObject::N(n), TauSign::Cyclic) = (letter, source, self.spec.tau_sign) {
            sign = signed(n as usize - 1);
        }
        let m = match letter {
            Letter::DeltaPlus => SparseMatrix::scalar(from.diagrams.len(), self.spec.delta_plus.clone()),
            Letter::DeltaMinus => SparseMatrix::scalar(from.diagrams.len(), self.spec.delta_minus.clone()),
            _ => {
                let image = Tangles.image(letter, source);
                let columns = from
                    .tangles
                    .par_iter()
                    .map(|s| {
                        let composite = image.compose(s).expect("typed composition");
                        let (matching, scalar) = read_disk(&composite, &self.spec);
                        let mut col = BTreeMap::new();
                        let v = scalar * &sign;
                        if !v.is_zero() {
                            col.insert(to.index[&matching], v);
                        }
                        col
                    })
                    .collect();
                SparseMatrix {
                    rows: to.diagrams.len(),
                    columns,
                }
            }
        };
        let m = Arc::new(m);
        self.actions.lock().expect("lock").entry(key).or_insert(m).clone()
    }

    /// Matrix of a word, composed right to left.
    pub fn word_action(&self, w: &Word) -> SparseMatrix {
        let mut acc = SparseMatrix::identity(self.rank(w.source()));
        for g in w.generators().into_iter().rev() {
            acc = self.action(g.letter, g.source).mul(&acc);
        }
        acc
    }

    fn letter(&self, l: Letter, n: u32) -> SparseMatrix {
        self.action(l, BoundaryObject::N(n)).as_ref().clone()
    }

    /// Face `d_i` of the cyclic restriction, on `X_n`.
    pub fn face(&self, sign: Embedding, n: u32, i: u32) -> SparseMatrix {
        self.letter(Letter::Alpha(2 * i + 1 + offset(sign)), n)
    }

    /// Degeneracy `s_i` of the cyclic restriction, on `X_n`.
    pub fn degeneracy(&self, sign: Embedding, n: u32, i: u32) -> SparseMatrix {
        self.letter(Letter::Beta(2 * i + 2 + offset(sign)), n)
    }

    /// Signed rotation on `X_n`.
    pub fn rotation(&self, n: u32) -> SparseMatrix {
        self.letter(Letter::Tau, n)
    }

    fn alternating_faces(&self, sign: Embedding, n: u32, count: u32) -> SparseMatrix {
        let mut acc = SparseMatrix::zeros(self.rank(BoundaryObject::N(n - 1)), self.rank(BoundaryObject::N(n)));
        for i in 0..count {
            acc = acc.add(&self.face(sign, n, i).scale(&signed(i as usize)));
        }
        acc
    }

    /// Hochschild boundary `X_n → X_{n-1}` for `n ≥ 2`.
    pub fn hochschild_b(&self, sign: Embedding, n: u32) -> SparseMatrix {
        assert!(n >= 2, "boundary out of X_1 is the augmentation");
        self.alternating_faces(sign, n, n)
    }

    /// The augmentation `X_1 → X_±`.
    pub fn augmentation(&self, sign: Embedding) -> SparseMatrix {
        self.letter(Letter::Alpha(1 + offset(sign)), 1)
    }

    /// `b'` on `X_n`, omitting the last face; for `n = 1` the zero map.
    pub fn b_prime(&self, sign: Embedding, n: u32) -> SparseMatrix {
        if n == 1 {
            return SparseMatrix::zeros(0, self.rank(BoundaryObject::N(1)));
        }
        self.alternating_faces(sign, n, n - 1)
    }

    /// Extra degeneracy `s_{-1} = (-1)^{k+1} t s_k` on `X_n`, `k = n - 1`.
    pub fn extra_degeneracy(&self, sign: Embedding, n: u32) -> SparseMatrix {
        self.rotation(n + 1)
            .mul(&self.degeneracy(sign, n, n - 1))
            .scale(&signed(n as usize))
    }

    /// `N = Σ t^i` on `X_n`.
    pub fn norm(&self, n: u32) -> SparseMatrix {
        let k = self.rank(BoundaryObject::N(n));
        let t = self.rotation(n);
        let mut power = SparseMatrix::identity(k);
        let mut acc = SparseMatrix::zeros(k, k);
        for _ in 0..n {
            acc = acc.add(&power);
            power = t.mul(&power);
        }
        acc
    }

    /// Connes' boundary `(1 - t) s_{-1} N: X_n → X_{n+1}`.
    pub fn connes_b(&self, sign: Embedding, n: u32) -> SparseMatrix {
        let up = self.rank(BoundaryObject::N(n + 1));
        let one_minus_t = SparseMatrix::identity(up).sub(&self.rotation(n + 1));
        one_minus_t.mul(&self.extra_degeneracy(sign, n)).mul(&self.norm(n))
    }

    fn to_int(&self, m: &SparseMatrix) -> IntMatrix {
        match self.spec.ring {
            Ring::Integers => m.to_int().expect("integral scalars give integral matrices"),
            Ring::Rationals => m.to_scaled_int(),
        }
    }

    fn finish(&self, g: AbGroup) -> AbGroup {
        match self.spec.ring {
            Ring::Integers => g,
            Ring::Rationals => g.rationalize(),
        }
    }

    /// Cyclic-degree complex `C_k = X_{k+1}` for `0 ≤ k ≤ top`.
    pub fn hochschild_complex(&self, sign: Embedding, top: usize) -> Result<ChainComplex, HomologyError> {
        let ranks = (0..=top).map(|k| self.rank(BoundaryObject::N(k as u32 + 1))).collect();
        let boundaries = (1..=top)
            .into_par_iter()
            .map(|k| self.to_int(&self.hochschild_b(sign, k as u32 + 1)))
            .collect();
        Ok(ChainComplex::new(ranks, boundaries)?)
    }

    fn hh_group(&self, sign: Embedding, n: u32) -> Result<AbGroup, HomologyError> {
        let incoming = self.to_int(&self.hochschild_b(sign, n + 1));
        let outgoing = if n == 1 {
            IntMatrix::zeros(0, self.rank(BoundaryObject::N(1)))
        } else {
            self.to_int(&self.hochschild_b(sign, n))
        };
        Ok(self.finish(homology_at(&incoming, &outgoing)?))
    }

    fn reduced_low(&self, sign: Embedding, n: u32) -> Result<AbGroup, HomologyError> {
        let aug = self.to_int(&self.augmentation(sign));
        let g = if n == 0 {
            homology_at(&aug, &IntMatrix::zeros(0, aug.rows()))?
        } else {
            homology_at(&self.to_int(&self.hochschild_b(sign, 2)), &aug)?
        };
        Ok(self.finish(g))
    }

    fn total_sizes(&self, m: usize) -> Vec<usize> {
        (0..=m / 2)
            .map(|i| self.rank(BoundaryObject::N((m - 2 * i) as u32 + 1)))
            .collect()
    }

    /// Differential of the total complex from cyclic degree `m ≥ 1` to `m - 1`.
    pub fn total_differential(&self, sign: Embedding, m: usize) -> SparseMatrix {
        let cols = self.total_sizes(m);
        let rows = self.total_sizes(m - 1);
        let mut blocks = Vec::new();
        for i in 0..=m / 2 {
            let k = m - 2 * i;
            if k >= 1 {
                blocks.push((i, i, self.hochschild_b(sign, k as u32 + 1)));
            }
            if i >= 1 {
                blocks.push((i - 1, i, self.connes_b(sign, k as u32 + 1)));
            }
        }
        SparseMatrix::from_blocks(&rows, &cols, &blocks)
    }

    fn hc_group(&self, sign: Embedding, n: u32) -> Result<AbGroup, HomologyError> {
        let m = n as usize - 1;
        let incoming = self.to_int(&self.total_differential(sign, m + 1));
        let outgoing = if m == 0 {
            IntMatrix::zeros(0, incoming.rows())
        } else {
            self.to_int(&self.total_differential(sign, m))
        };
        Ok(self.finish(homology_at(&incoming, &outgoing)?))
    }

    /// A homology table in degrees from the kind's minimum to `max_degree`.
    pub fn homology(&self, kind: HomologyKind, max_degree: usize) -> Result<HomologyTable, HomologyError> {
        if max_degree == 0 || max_degree > MAX_DEGREE {
            return Err(HomologyError::BadDegree(max_degree));
        }
        let degrees: Vec<u32> = (kind.min_degree()..=max_degree as u32).collect();
        let groups: Result<Vec<AbGroup>, HomologyError> = degrees
            .par_iter()
            .map(|&n| match kind {
                HomologyKind::Hochschild(s) => self.hh_group(s, n),
                HomologyKind::ReducedHochschild(s) if n <= 1 => self.reduced_low(s, n),
                HomologyKind::ReducedHochschild(s) => self.hh_group(s, n),
                HomologyKind::Cyclic(s) => self.hc_group(s, n),
            })
            .collect();
        Ok(HomologyTable {
            kind,
            ring: self.spec.ring,
            entries: degrees.into_iter().zip(groups?).collect(),
        })
    }

    /// The sign and homotopy identities in degrees `1..=max_degree`.
    pub fn verify_identities(&self, max_degree: u32) -> Vec<IdentityCheck> {
        let mut out = Vec::new();
        let mut push = |identity: &str, sign: Embedding, degree: String, holds: bool| {
            out.push(IdentityCheck {
                identity: identity.into(),
                sign,
                degree,
                holds,
            })
        };
        for sign in [Embedding::Plus, Embedding::Minus] {
            let zero_obj = match sign {
                Embedding::Plus => BoundaryObject::ZeroPlus,
                Embedding::Minus => BoundaryObject::ZeroMinus,
            };
            let (homotopy, delta) = match sign {
                Embedding::Plus => (Letter::Beta(1), self.spec.delta_plus.clone()),
                Embedding::Minus => (Letter::Beta(2), self.spec.delta_minus.clone()),
            };
            let b_out = |n: u32| {
                if n == 1 {
                    self.augmentation(sign)
                } else {
                    self.hochschild_b(sign, n)
                }
            };
            for n in 1..=max_degree {
                let rank = self.rank(BoundaryObject::N(n));
                if n >= 2 {
                    let bb = self.hochschild_b(sign, n).mul(&self.hochschild_b(sign, n + 1));
                    push("b b = 0", sign, n.to_string(), bb.is_zero());
                }
                let big = self.connes_b(sign, n + 1).mul(&self.connes_b(sign, n));
                push("B B = 0", sign, n.to_string(), big.is_zero());
                let mut anti = self.hochschild_b(sign, n + 1).mul(&self.connes_b(sign, n));
                if n >= 2 {
                    anti = anti.add(&self.connes_b(sign, n - 1).mul(&self.hochschild_b(sign, n)));
                }
                push("b B + B b = 0", sign, n.to_string(), anti.is_zero());
                let mut contraction = self.b_prime(sign, n + 1).mul(&self.extra_degeneracy(sign, n));
                if n >= 2 {
                    contraction =
                        contraction.add(&self.extra_degeneracy(sign, n - 1).mul(&self.b_prime(sign, n)));
                }
                push("b' s_-1 + s_-1 b' = id", sign, n.to_string(), contraction == SparseMatrix::identity(rank));
                let below = BoundaryObject::N(n - 1);
                let source_below = if n == 1 { zero_obj } else { below };
                let h_low = self.action(homotopy, source_below).as_ref().clone();
                let h_here = self.action(homotopy, BoundaryObject::N(n)).as_ref().clone();
                let lhs = h_low.mul(&b_out(n)).add(&b_out(n + 1).mul(&h_here));
                push(
                    "homotopy h b + b h = delta id",
                    sign,
                    n.to_string(),
                    lhs == SparseMatrix::scalar(rank, delta.clone()),
                );
            }
            let h = self.action(homotopy, zero_obj).as_ref().clone();
            let lhs = self.augmentation(sign).mul(&h);
            push(
                "homotopy b h = delta id",
                sign,
                zero_obj.to_string(),
                lhs == SparseMatrix::scalar(1, delta.clone()),
            );
        }
        out
    }

    /// The defining and additional relations as signed matrix identities.
    pub fn verify_signed_relations(&self, max_n: u32) -> Vec<RelationCheck> {
        presentation_instances(max_n)
            .into_par_iter()
            .map(|inst| {
                let l = Word::new(inst.at, inst.lhs.clone()).expect("typed");
                let r = Word::new(inst.at, inst.rhs.clone()).expect("typed");
                let c = signed_relation_sign(&inst.relation, inst.at, &inst.rhs);
                let ok = self.word_action(&l) == self.word_action(&r).scale(&c);
                RelationCheck {
                    relation: inst.relation.clone(),
                    instance: format!("{l} = {}{r} at {}", if c.is_negative() { "-" } else { "" }, inst.at),
                    status: if ok { Status::Pass } else { Status::Fail },
                }
            })
            .collect()
    }
}

/// The scalar by which a relation changes once the rotation carries its
/// cyclic sign.
fn signed_relation_sign(relation: &str, at: BoundaryObject, rhs: &[Letter]) -> BigRational {
    let n = at.rank() as usize;
    match relation {
        "(4)" | "(5)" => -BigRational::one(),
        "(6)" if rhs.contains(&Letter::Tau) => signed(n + 1),
        "additional (1)" | "additional (3)" => signed(n + 1),
        "additional (2)" => signed(n),
        _ => BigRational::one(),
    }
}

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub sign: Embedding,
    pub degree: String,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HomologyKind {
    Hochschild(Embedding),
    ReducedHochschild(Embedding),
    Cyclic(Embedding),
}

impl HomologyKind {
    pub fn min_degree(self) -> u32 {
        match self {
            HomologyKind::ReducedHochschild(_) => 0,
            _ => 1,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            HomologyKind::Hochschild(_) | HomologyKind::ReducedHochschild(_) => "HH",
            HomologyKind::Cyclic(_) => "HC",
        }
    }

    fn sign(self) -> Embedding {
        match self {
            HomologyKind::Hochschild(s) | HomologyKind::ReducedHochschild(s) | HomologyKind::Cyclic(s) => s,
        }
    }
}

impl fmt::Display for HomologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign() {
            Embedding::Plus => "+",
            Embedding::Minus => "-",
        };
        match self {
            HomologyKind::Hochschild(_) => write!(f, "hh{s}"),
            HomologyKind::ReducedHochschild(_) => write!(f, "hhred{s}"),
            HomologyKind::Cyclic(_) => write!(f, "hc{s}"),
        }
    }
}

impl FromStr for HomologyKind {
    type Err = HomologyError;
    fn from_str(s: &str) -> Result<Self, HomologyError> {
        use Embedding::{Minus, Plus};
        Ok(match s {
            "hh+" => HomologyKind::Hochschild(Plus),
            "hh-" => HomologyKind::Hochschild(Minus),
            "hhred+" => HomologyKind::ReducedHochschild(Plus),
            "hhred-" => HomologyKind::ReducedHochschild(Minus),
            "hc+" => HomologyKind::Cyclic(Plus),
            "hc-" => HomologyKind::Cyclic(Minus),
            _ => return Err(HomologyError::BadScalar(s.into())),
        })
    }
}

/// Homology groups by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub kind: HomologyKind,
    pub ring: Ring,
    pub entries: BTreeMap<u32, AbGroup>,
}

impl HomologyTable {
    pub fn get(&self, degree: u32) -> Option<&AbGroup> {
        self.entries.get(&degree)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

impl Serialize for HomologyTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: BTreeMap<String, &AbGroup> =
            self.entries.iter().map(|(k, v)| (k.to_string(), v)).collect();
        // Keep numeric order for keys of different lengths.
        let ordered: Vec<(String, &AbGroup)> = {
            let mut v: Vec<_> = entries.into_iter().collect();
            v.sort_by_key(|(k, _)| k.parse::<u32>().unwrap_or(0));
            v
        };
        struct Entries<'a>(Vec<(String, &'a AbGroup)>);
        impl Serialize for Entries<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                use serde::ser::SerializeMap;
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in &self.0 {
                    m.serialize_entry(k, v)?;
                }
                m.end()
            }
        }
        let mut st = s.serialize_struct("HomologyTable", 2)?;
        st.serialize_field("kind", &self.kind.to_string())?;
        st.serialize_field("entries", &Entries(ordered))?;
        st.end()
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.kind.sign() {
            Embedding::Plus => "+",
            Embedding::Minus => "-",
        };
        let tilde = if matches!(self.kind, HomologyKind::ReducedHochschild(_)) {
            "~"
        } else {
            ""
        };
        for (d, g) in &self.entries {
            let mut text = g.to_string();
            if self.ring == Ring::Rationals {
                text = text.replace('Z', "Q");
            }
            writeln!(f, "{tilde}{}{sign}_{d} = {text}", self.kind.symbol())?;
        }
        Ok(())
    }
}
