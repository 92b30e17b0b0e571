//! Exact integer linear algebra: Smith normal form and homology of chain
//! complexes of finitely generated free abelian groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::LinAlgError;

/// Dense integer matrix; columns index the source basis, rows the target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(k: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(k, k);
        for i in 0..k {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<IntMatrix, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinAlgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            entries: rows.iter().flatten().cloned().map(Into::into).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Entry arithmetic used by the elimination; `None` signals overflow.
trait Entry: Clone + PartialEq {
    fn is_nil(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn is_unit(&self) -> bool;
    fn quot(&self, pivot: &Self) -> Self;
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn is_unit(&self) -> bool {
        self.unsigned_abs() == 1
    }
    fn quot(&self, pivot: &Self) -> Self {
        self / pivot
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn quot(&self, pivot: &Self) -> Self {
        self / pivot
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Diagonalize by unimodular row and column operations; returns the nonzero
/// diagonal entries in the order found, or `None` on overflow.
fn diagonalize<E: Entry>(mut a: Vec<Vec<E>>, cols: usize) -> Option<Vec<BigInt>> {
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot of minimal absolute value, stopping early at a unit.
        let mut best: Option<(usize, usize)> = None;
        'scan: for (r, row) in a.iter().enumerate().skip(t) {
            for (c, v) in row.iter().enumerate().skip(t) {
                if v.is_nil() {
                    continue;
                }
                if v.is_unit() {
                    best = Some((r, c));
                    break 'scan;
                }
                if best.is_none_or(|(br, bc)| v.abs_lt(&a[br][bc])) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let pivot = a[t][t].clone();
            let mut dirty = false;
            // Clear the pivot column.
            let (head, tail) = a.split_at_mut(t + 1);
            let prow = &head[t];
            for row in tail.iter_mut() {
                if row[t].is_nil() {
                    continue;
                }
                let q = row[t].quot(&pivot);
                if !q.is_nil() {
                    for c in t..cols {
                        if !prow[c].is_nil() {
                            row[c] = row[c].sub_mul(&q, &prow[c])?;
                        }
                    }
                }
                dirty |= !row[t].is_nil();
            }
            // Clear the pivot row; the column below the pivot is already zero.
            if !dirty {
                for c in t + 1..cols {
                    if a[t][c].is_nil() {
                        continue;
                    }
                    let q = a[t][c].quot(&pivot);
                    a[t][c] = a[t][c].sub_mul(&q, &pivot)?;
                    if !a[t][c].is_nil() {
                        dirty = true;
                        break;
                    }
                }
            }
            if !dirty {
                break;
            }
            // A remainder is smaller than the pivot: move the smallest entry
            // of the pivot row or column into place and repeat.
            let mut best = (t, t);
            for r in t + 1..rows {
                if !a[r][t].is_nil() && a[r][t].abs_lt(&a[best.0][best.1]) {
                    best = (r, t);
                }
            }
            for c in t + 1..cols {
                if !a[t][c].is_nil() && a[t][c].abs_lt(&a[best.0][best.1]) {
                    best = (t, c);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].to_big().abs());
        t += 1;
    }
    Some(diag)
}

/// Turn a list of nonzero diagonal entries into invariant factors.
fn normalize_diagonal(mut d: Vec<BigInt>) -> Vec<BigInt> {
    d.sort();
    let k = d.len();
    for i in 0..k {
        for j in i + 1..k {
            let g = d[i].gcd(&d[j]);
            if g != d[i] {
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d.sort();
    d
}

/// Invariant factors `d_1 | d_2 | …` (units included) and the rank.
pub fn smith_normal_form(m: &IntMatrix) -> (Vec<BigInt>, usize) {
    let small: Option<Vec<Vec<i64>>> = (0..m.rows)
        .map(|r| (0..m.cols).map(|c| m.get(r, c).to_i64()).collect())
        .collect();
    let diag = small
        .and_then(|a| diagonalize(a, m.cols))
        .unwrap_or_else(|| {
            let a = (0..m.rows)
                .map(|r| (0..m.cols).map(|c| m.get(r, c).clone()).collect())
                .collect();
            diagonalize::<BigInt>(a, m.cols).expect("big integers do not overflow")
        });
    let factors = normalize_diagonal(diag);
    let rank = factors.len();
    (factors, rank)
}

/// A finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ …` with `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbGroup {
    pub fn trivial() -> AbGroup {
        AbGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> AbGroup {
        AbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn new(free_rank: usize, torsion: &[u64]) -> AbGroup {
        AbGroup {
            free_rank,
            torsion: torsion.iter().map(|&d| BigInt::from(d)).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// The same group after tensoring with the rationals.
    pub fn rationalize(&self) -> AbGroup {
        AbGroup::free(self.free_rank)
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

struct BigList<'a>(&'a [BigInt]);

impl Serialize for BigList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for d in self.0 {
            match d.to_u64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&d.to_string())?,
            }
        }
        seq.end()
    }
}

impl Serialize for AbGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AbGroup", 2)?;
        st.serialize_field("rank", &self.free_rank)?;
        st.serialize_field("torsion", &BigList(&self.torsion))?;
        st.end()
    }
}

/// Homology at the middle of `· --a--> M --b--> ·`, i.e. `ker b / im a`.
///
/// The kernel of an integer matrix is a direct summand, so the torsion of the
/// quotient is the torsion of the cokernel of `a`.
pub fn homology_at(a: &IntMatrix, b: &IntMatrix) -> Result<AbGroup, LinAlgError> {
    if a.rows != b.cols {
        return Err(LinAlgError::DimensionMismatch(format!(
            "incoming has {} rows, outgoing has {} columns",
            a.rows, b.cols
        )));
    }
    if !b.mul(a)?.is_zero() {
        return Err(LinAlgError::NotAComplex);
    }
    let (fa, rank_a) = smith_normal_form(a);
    let (_, rank_b) = smith_normal_form(b);
    Ok(AbGroup {
        free_rank: a.rows - rank_a - rank_b,
        torsion: fa.into_iter().filter(|d| !d.is_one()).collect(),
    })
}

/// Degrees `0..ranks.len()`; `boundaries[k]` maps degree `k+1` to degree `k`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<ChainComplex, LinAlgError> {
        if boundaries.len() + 1 != ranks.len() {
            return Err(LinAlgError::DimensionMismatch(
                "need one boundary between consecutive degrees".into(),
            ));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.rows != ranks[k] || d.cols != ranks[k + 1] {
                return Err(LinAlgError::DimensionMismatch(format!("boundary out of degree {}", k + 1)));
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k])?.is_zero() {
                return Err(LinAlgError::NotAComplex);
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, from_degree: usize) -> IntMatrix {
        match from_degree {
            0 => IntMatrix::zeros(0, self.ranks[0]),
            k => self.boundaries[k - 1].clone(),
        }
    }

    /// Homology in `degree`; the top degree is treated as having no incoming map.
    pub fn homology(&self, degree: usize) -> Result<AbGroup, LinAlgError> {
        let incoming = if degree + 1 < self.ranks.len() {
            self.boundaries[degree].clone()
        } else {
            IntMatrix::zeros(self.ranks[degree], 0)
        };
        homology_at(&incoming, &self.boundary(degree))
    }
}

/// Rank over the rationals by exact Gaussian elimination.
pub fn rational_rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> = (0..m.rows)
        .map(|r| (0..m.cols).map(|c| BigRational::from_integer(m.get(r, c).clone())).collect())
        .collect();
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(p) = (rank..m.rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for r in rank + 1..m.rows {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for k in c..m.cols {
                let v = &a[rank][k] * &f;
                a[r][k] -= v;
            }
        }
        rank += 1;
    }
    rank
}
