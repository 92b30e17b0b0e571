//! Annular tangles: canonical encoding, validation, composition and involution.
//!
//! Points on a circle carrying `[n]` are numbered `1..=2n` clockwise, starting
//! just after the `*` interval `(2n, 1)`. The simple interval `(p, p+1)` is
//! shaded iff `p` is odd; the `*` interval is unshaded.
//!
//! A cap (cup) is stored as a directed pair `(index, other)`: its boundary
//! interval runs clockwise from the index point to the other endpoint. When a
//! tangle has through strings this direction is forced; without them it is
//! extra data that the matching alone does not determine.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::TangleError;
use crate::object::BoundaryObject;

type Turns = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Inner,
    Outer,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Inner => Side::Outer,
            Side::Outer => Side::Inner,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Side::Inner => "i",
            Side::Outer => "o",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub side: Side,
    pub index: u32,
}

impl Endpoint {
    pub fn inner(index: u32) -> Self {
        Endpoint { side: Side::Inner, index }
    }

    pub fn outer(index: u32) -> Self {
        Endpoint { side: Side::Outer, index }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side.tag(), self.index)
    }
}

/// Unvalidated tangle data. For caps and cups the first endpoint of a pair is
/// read as the index when the tangle has no through strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTangle {
    pub inner: BoundaryObject,
    pub outer: BoundaryObject,
    pub pairs: Vec<(Endpoint, Endpoint)>,
    pub loops: u32,
}

/// A validated annular tangle in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtlTangle {
    inner: BoundaryObject,
    outer: BoundaryObject,
    pairs: Vec<(Endpoint, Endpoint)>,
    loops: u32,
}

/// A morphism of the annular category: a tangle plus the counts of removed
/// contractible loops with shaded (`c_plus`) and unshaded (`c_minus`) interior.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtlMorphism {
    pub tangle: AtlTangle,
    pub c_plus: u64,
    pub c_minus: u64,
}

/// Partner lookup for every point, plus whether a cap/cup point is its index.
pub(crate) struct Links {
    pub inner: Vec<Endpoint>,
    pub outer: Vec<Endpoint>,
    pub inner_is_index: Vec<bool>,
    pub outer_is_index: Vec<bool>,
}

/// Outcome of gluing two tangles along the middle circle.
#[derive(Clone, Debug)]
pub struct Glued {
    pub tangle: AtlTangle,
    pub new_plus: u64,
    pub new_minus: u64,
    /// Winding number of every closed cycle formed in the middle.
    pub windings: Vec<i64>,
}

fn next_point(p: u32, total: u32) -> u32 {
    p % total + 1
}

/// Points strictly inside the clockwise run from `a` to `b`.
fn interior(a: u32, b: u32, total: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = next_point(a, total);
    while p != b {
        out.push(p);
        p = next_point(p, total);
    }
    out
}

/// Number of clockwise steps from `a` to `b`.
fn steps(a: u32, b: u32, total: u32) -> u32 {
    (b + total - a) % total
}

fn chords_cross(a: (u32, u32), b: (u32, u32)) -> bool {
    let (a0, a1) = (a.0.min(a.1), a.0.max(a.1));
    let (b0, b1) = (b.0.min(b.1), b.0.max(b.1));
    (a0 < b0 && b0 < a1 && a1 < b1) || (b0 < a0 && a0 < b1 && b1 < a1)
}

/// Shading of the core face seen from one circle, given its directed arcs.
pub(crate) fn core_shaded(obj: BoundaryObject, arcs: &[(u32, u32)]) -> bool {
    let total = obj.points();
    if total == 0 {
        return obj.zero_shaded().unwrap_or(false);
    }
    let mut covered = vec![false; total as usize + 1];
    for &(a, b) in arcs {
        let mut p = a;
        while p != b {
            covered[p as usize] = true;
            p = next_point(p, total);
        }
    }
    let free = (1..=total)
        .find(|&p| !covered[p as usize])
        .expect("arcs never cover every simple interval");
    free % 2 == 1
}

/// Orient arcs on one circle: forced by through strings when present,
/// otherwise taken from the input order and checked for consistency.
fn orient_arcs(
    arcs: &[(u32, u32)],
    through_points: &[bool],
    total: u32,
    side: Side,
) -> Result<Vec<(u32, u32)>, TangleError> {
    for (i, &x) in arcs.iter().enumerate() {
        for &y in &arcs[i + 1..] {
            if chords_cross(x, y) {
                return Err(TangleError::CrossingStrings(format!(
                    "{} arcs {:?} and {:?}",
                    side.tag(),
                    x,
                    y
                )));
            }
        }
    }
    let has_through = through_points.iter().any(|&b| b);
    let mut out = Vec::with_capacity(arcs.len());
    if has_through {
        for &(a, b) in arcs {
            let fwd = interior(a, b, total)
                .iter()
                .all(|&p| !through_points[p as usize]);
            let bwd = interior(b, a, total)
                .iter()
                .all(|&p| !through_points[p as usize]);
            match (fwd, bwd) {
                (true, false) => out.push((a, b)),
                (false, true) => out.push((b, a)),
                _ => {
                    return Err(TangleError::CrossingStrings(format!(
                        "{} arc ({a},{b}) separates through strings",
                        side.tag()
                    )))
                }
            }
        }
    } else {
        let sets: Vec<Vec<bool>> = arcs
            .iter()
            .map(|&(a, b)| {
                let mut s = vec![false; total as usize + 1];
                s[a as usize] = true;
                s[b as usize] = true;
                for p in interior(a, b, total) {
                    s[p as usize] = true;
                }
                s
            })
            .collect();
        for i in 0..arcs.len() {
            for j in i + 1..arcs.len() {
                let (x, y) = (&sets[i], &sets[j]);
                let both = (1..=total as usize).filter(|&p| x[p] && y[p]).count();
                let cx = x.iter().filter(|&&b| b).count();
                let cy = y.iter().filter(|&&b| b).count();
                if both != 0 && both != cx && both != cy {
                    return Err(TangleError::CrossingStrings(format!(
                        "{} arcs {:?} and {:?} enclose the core from both sides",
                        side.tag(),
                        arcs[i],
                        arcs[j]
                    )));
                }
            }
        }
        out.extend_from_slice(arcs);
    }
    Ok(out)
}

/// Check every invariant and return the canonical tangle.
pub fn validate_tangle(raw: &RawTangle) -> Result<AtlTangle, TangleError> {
    let m = raw.inner.points();
    let n = raw.outer.points();
    let mut seen_in = vec![false; m as usize + 1];
    let mut seen_out = vec![false; n as usize + 1];
    let mut caps = Vec::new();
    let mut cups = Vec::new();
    let mut through = Vec::new();
    for &(x, y) in &raw.pairs {
        for e in [x, y] {
            let (total, seen) = match e.side {
                Side::Inner => (m, &mut seen_in),
                Side::Outer => (n, &mut seen_out),
            };
            if e.index == 0 || e.index > total {
                return Err(TangleError::NotPerfectMatching(format!(
                    "endpoint {e} does not exist"
                )));
            }
            if seen[e.index as usize] {
                return Err(TangleError::NotPerfectMatching(format!(
                    "endpoint {e} used twice"
                )));
            }
            seen[e.index as usize] = true;
        }
        let same_parity = x.index % 2 == y.index % 2;
        match (x.side, y.side) {
            (Side::Inner, Side::Inner) | (Side::Outer, Side::Outer) => {
                if same_parity {
                    return Err(TangleError::ParityViolation(format!(
                        "arc {x}-{y} joins points of equal parity"
                    )));
                }
                if x.side == Side::Inner {
                    caps.push((x.index, y.index));
                } else {
                    cups.push((x.index, y.index));
                }
            }
            _ => {
                if !same_parity {
                    return Err(TangleError::ParityViolation(format!(
                        "through string {x}-{y} joins points of different parity"
                    )));
                }
                let (i, o) = if x.side == Side::Inner { (x, y) } else { (y, x) };
                through.push((i.index, o.index));
            }
        }
    }
    if let Some(p) = (1..=m).find(|&p| !seen_in[p as usize]) {
        return Err(TangleError::NotPerfectMatching(format!("i{p} unmatched")));
    }
    if let Some(p) = (1..=n).find(|&p| !seen_out[p as usize]) {
        return Err(TangleError::NotPerfectMatching(format!("o{p} unmatched")));
    }
    if raw.loops > 0 && !through.is_empty() {
        return Err(TangleError::LoopsWithThroughStrings);
    }
    through.sort_unstable();
    if through.len() >= 2 {
        let k = through.len();
        let descents = (0..k)
            .filter(|&i| through[(i + 1) % k].1 < through[i].1)
            .count();
        if descents != 1 {
            return Err(TangleError::CrossingStrings(
                "through strings out of cyclic order".into(),
            ));
        }
    }
    let mut through_in = vec![false; m as usize + 1];
    let mut through_out = vec![false; n as usize + 1];
    for &(i, o) in &through {
        through_in[i as usize] = true;
        through_out[o as usize] = true;
    }
    let caps = orient_arcs(&caps, &through_in, m, Side::Inner)?;
    let cups = orient_arcs(&cups, &through_out, n, Side::Outer)?;
    if through.is_empty() {
        let inner_shade = core_shaded(raw.inner, &caps);
        let outer_shade = core_shaded(raw.outer, &cups);
        if inner_shade ^ (raw.loops % 2 == 1) != outer_shade {
            return Err(TangleError::ShadingMismatch);
        }
    }
    let mut pairs: Vec<(Endpoint, Endpoint)> = Vec::with_capacity(raw.pairs.len());
    pairs.extend(
        through
            .iter()
            .map(|&(i, o)| (Endpoint::inner(i), Endpoint::outer(o))),
    );
    pairs.extend(caps.iter().map(|&(a, b)| (Endpoint::inner(a), Endpoint::inner(b))));
    pairs.extend(cups.iter().map(|&(a, b)| (Endpoint::outer(a), Endpoint::outer(b))));
    pairs.sort_unstable();
    Ok(AtlTangle {
        inner: raw.inner,
        outer: raw.outer,
        pairs,
        loops: raw.loops,
    })
}

impl AtlTangle {
    pub fn inner(&self) -> BoundaryObject {
        self.inner
    }

    pub fn outer(&self) -> BoundaryObject {
        self.outer
    }

    pub fn pairs(&self) -> &[(Endpoint, Endpoint)] {
        &self.pairs
    }

    pub fn loops(&self) -> u32 {
        self.loops
    }

    pub fn to_raw(&self) -> RawTangle {
        RawTangle {
            inner: self.inner,
            outer: self.outer,
            pairs: self.pairs.clone(),
            loops: self.loops,
        }
    }

    /// The identity tangle on an object.
    pub fn identity(obj: BoundaryObject) -> Self {
        let pairs = (1..=obj.points())
            .map(|i| (Endpoint::inner(i), Endpoint::outer(i)))
            .collect();
        AtlTangle {
            inner: obj,
            outer: obj,
            pairs,
            loops: 0,
        }
    }

    /// Directed caps `(index, other)`, sorted by index.
    pub fn caps(&self) -> Vec<(u32, u32)> {
        self.pairs
            .iter()
            .filter(|(a, b)| a.side == Side::Inner && b.side == Side::Inner)
            .map(|(a, b)| (a.index, b.index))
            .collect()
    }

    /// Directed cups `(index, other)`, sorted by index.
    pub fn cups(&self) -> Vec<(u32, u32)> {
        self.pairs
            .iter()
            .filter(|(a, b)| a.side == Side::Outer && b.side == Side::Outer)
            .map(|(a, b)| (a.index, b.index))
            .collect()
    }

    /// Through strings `(inner, outer)`, sorted by inner index.
    pub fn through(&self) -> Vec<(u32, u32)> {
        self.pairs
            .iter()
            .filter(|(a, b)| a.side != b.side)
            .map(|(a, b)| (a.index, b.index))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == AtlTangle::identity(self.inner)
    }

    pub(crate) fn links(&self) -> Links {
        let m = self.inner.points() as usize;
        let n = self.outer.points() as usize;
        let dummy = Endpoint::inner(0);
        let mut links = Links {
            inner: vec![dummy; m + 1],
            outer: vec![dummy; n + 1],
            inner_is_index: vec![false; m + 1],
            outer_is_index: vec![false; n + 1],
        };
        for &(a, b) in &self.pairs {
            for (x, y, first) in [(a, b, true), (b, a, false)] {
                match x.side {
                    Side::Inner => {
                        links.inner[x.index as usize] = y;
                        links.inner_is_index[x.index as usize] = first && y.side == Side::Inner;
                    }
                    Side::Outer => {
                        links.outer[x.index as usize] = y;
                        links.outer_is_index[x.index as usize] = first && y.side == Side::Outer;
                    }
                }
            }
        }
        links
    }

    /// Angular displacement of each through string, in turns, indexed by its
    /// inner point. Determined up to one common additive constant.
    fn through_displacement(&self) -> Vec<Option<Turns>> {
        let pin = self.inner.points() as i64;
        let pout = self.outer.points() as i64;
        let mut disp = vec![None; pin as usize + 1];
        let mut prev: Option<Turns> = None;
        for (p, r) in self.through() {
            let base = Turns::new(2 * r as i64 - 1, 2 * pout);
            let lift = match prev {
                None => base,
                Some(pv) => {
                    let mut v = base;
                    while v <= pv {
                        v += 1;
                    }
                    v
                }
            };
            prev = Some(lift);
            disp[p as usize] = Some(lift - Turns::new(2 * p as i64 - 1, 2 * pin));
        }
        disp
    }

    /// The mirror image across the circle: inner and outer swap, indices kept.
    pub fn involute(&self) -> AtlTangle {
        let flip = |e: Endpoint| Endpoint {
            side: e.side.flip(),
            index: e.index,
        };
        let pairs = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (flip(a), flip(b));
                if a.side != b.side && a.side == Side::Outer {
                    (b, a)
                } else {
                    (a, b)
                }
            })
            .collect();
        let raw = RawTangle {
            inner: self.outer,
            outer: self.inner,
            pairs,
            loops: self.loops,
        };
        validate_tangle(&raw).expect("mirror image of a valid tangle is valid")
    }
}

fn signed_arc(is_index: bool, from: u32, to: u32, total: u32) -> Turns {
    if is_index {
        Turns::new(steps(from, to, total) as i64, total as i64)
    } else {
        -Turns::new(steps(to, from, total) as i64, total as i64)
    }
}

/// Glue `outer` on top of `inner` along their common circle.
pub fn glue(outer: &AtlTangle, inner: &AtlTangle) -> Result<Glued, TangleError> {
    if outer.inner != inner.outer {
        return Err(TangleError::ObjectMismatch {
            expected: outer.inner,
            found: inner.outer,
        });
    }
    let mid = outer.inner;
    let total = mid.points();
    let loops = outer.loops + inner.loops;
    if total == 0 {
        let mut pairs: Vec<_> = inner
            .pairs
            .iter()
            .copied()
            .chain(outer.pairs.iter().copied())
            .collect();
        pairs.sort_unstable();
        let raw = RawTangle {
            inner: inner.inner,
            outer: outer.outer,
            pairs,
            loops,
        };
        return Ok(Glued {
            tangle: validate_tangle(&raw)?,
            new_plus: 0,
            new_minus: 0,
            windings: Vec::new(),
        });
    }
    let xl = outer.links();
    let yl = inner.links();
    let xd = outer.through_displacement();
    let yd = inner.through_displacement();
    let mut x_seen = vec![false; total as usize + 1];
    let mut pairs = Vec::new();

    // Walk from middle point `j` into the outer tangle, alternating sides
    // until a boundary endpoint of the result is reached.
    let walk_up = |mut j: u32, mut acc: Turns, x_seen: &mut Vec<bool>| -> (Endpoint, Turns) {
        loop {
            x_seen[j as usize] = true;
            let e = xl.inner[j as usize];
            match e.side {
                Side::Outer => return (e, acc + xd[j as usize].expect("through string")),
                Side::Inner => {
                    acc += signed_arc(xl.inner_is_index[j as usize], j, e.index, total);
                    x_seen[e.index as usize] = true;
                    let f = yl.outer[e.index as usize];
                    match f.side {
                        Side::Inner => {
                            return (f, acc - yd[f.index as usize].expect("through string"))
                        }
                        Side::Outer => {
                            acc += signed_arc(
                                yl.outer_is_index[e.index as usize],
                                e.index,
                                f.index,
                                total,
                            );
                            j = f.index;
                        }
                    }
                }
            }
        }
    };

    for p in 1..=inner.inner.points() {
        let e = yl.inner[p as usize];
        match e.side {
            Side::Inner => {
                if yl.inner_is_index[p as usize] {
                    pairs.push((Endpoint::inner(p), e));
                }
            }
            Side::Outer => {
                let start = yd[p as usize].expect("through string");
                let (end, d) = walk_up(e.index, start, &mut x_seen);
                match end.side {
                    Side::Outer => pairs.push((Endpoint::inner(p), end)),
                    Side::Inner => {
                        if end.index > p {
                            let cap = if d > Turns::from_integer(0) {
                                (Endpoint::inner(p), end)
                            } else {
                                (end, Endpoint::inner(p))
                            };
                            pairs.push(cap);
                        }
                    }
                }
            }
        }
    }

    for r in 1..=outer.outer.points() {
        let e = xl.outer[r as usize];
        match e.side {
            Side::Outer => {
                if xl.outer_is_index[r as usize] {
                    pairs.push((Endpoint::outer(r), e));
                }
            }
            Side::Inner => {
                if x_seen[e.index as usize] {
                    continue;
                }
                // Walk down: reverse of walking up from the far end.
                let start = -xd[e.index as usize].expect("through string");
                let (end, d) = walk_down(&xl, &yl, &xd, total, e.index, start, &mut x_seen);
                if end.side == Side::Outer && end.index > r {
                    let cup = if d > Turns::from_integer(0) {
                        (Endpoint::outer(r), end)
                    } else {
                        (end, Endpoint::outer(r))
                    };
                    pairs.push(cup);
                }
            }
        }
    }

    let mut new_loops = 0u32;
    let mut new_plus = 0u64;
    let mut new_minus = 0u64;
    let mut windings = Vec::new();
    for j0 in 1..=total {
        if x_seen[j0 as usize] {
            continue;
        }
        let mut acc = Turns::from_integer(0);
        let mut longest: Option<(u32, u32)> = None;
        let mut j = j0;
        loop {
            x_seen[j as usize] = true;
            let e = xl.inner[j as usize];
            debug_assert_eq!(e.side, Side::Inner);
            let is_index = xl.inner_is_index[j as usize];
            acc += signed_arc(is_index, j, e.index, total);
            let (idx, len) = if is_index {
                (j, steps(j, e.index, total))
            } else {
                (e.index, steps(e.index, j, total))
            };
            if longest.is_none_or(|(_, l)| len > l) {
                longest = Some((idx, len));
            }
            x_seen[e.index as usize] = true;
            let f = yl.outer[e.index as usize];
            debug_assert_eq!(f.side, Side::Outer);
            acc += signed_arc(yl.outer_is_index[e.index as usize], e.index, f.index, total);
            j = f.index;
            if j == j0 {
                break;
            }
        }
        assert!(acc.is_integer(), "closed cycle with fractional winding");
        let w = acc.to_integer();
        windings.push(w);
        if w != 0 {
            new_loops += 1;
        } else if longest.expect("cycle has a cap").0 % 2 == 1 {
            new_plus += 1;
        } else {
            new_minus += 1;
        }
    }

    let raw = RawTangle {
        inner: inner.inner,
        outer: outer.outer,
        pairs,
        loops: loops + new_loops,
    };
    let tangle = validate_tangle(&raw)?;
    Ok(Glued {
        tangle,
        new_plus,
        new_minus,
        windings,
    })
}

fn walk_down(
    xl: &Links,
    yl: &Links,
    xd: &[Option<Turns>],
    total: u32,
    mut j: u32,
    mut acc: Turns,
    x_seen: &mut [bool],
) -> (Endpoint, Turns) {
    loop {
        x_seen[j as usize] = true;
        let f = yl.outer[j as usize];
        match f.side {
            Side::Inner => return (f, acc),
            Side::Outer => {
                acc += signed_arc(yl.outer_is_index[j as usize], j, f.index, total);
                let e = xl.inner[f.index as usize];
                x_seen[f.index as usize] = true;
                match e.side {
                    Side::Outer => return (e, acc + xd[f.index as usize].expect("through string")),
                    Side::Inner => {
                        acc += signed_arc(xl.inner_is_index[f.index as usize], f.index, e.index, total);
                        j = e.index;
                    }
                }
            }
        }
    }
}

impl AtlMorphism {
    pub fn new(tangle: AtlTangle) -> Self {
        AtlMorphism {
            tangle,
            c_plus: 0,
            c_minus: 0,
        }
    }

    pub fn with_counters(tangle: AtlTangle, c_plus: u64, c_minus: u64) -> Self {
        AtlMorphism {
            tangle,
            c_plus,
            c_minus,
        }
    }

    pub fn identity(obj: BoundaryObject) -> Self {
        AtlMorphism::new(AtlTangle::identity(obj))
    }

    pub fn source(&self) -> BoundaryObject {
        self.tangle.inner
    }

    pub fn target(&self) -> BoundaryObject {
        self.tangle.outer
    }

    /// `self ∘ inner`: `inner` is applied first.
    pub fn compose(&self, inner: &AtlMorphism) -> Result<AtlMorphism, TangleError> {
        let g = glue(&self.tangle, &inner.tangle)?;
        Ok(AtlMorphism {
            tangle: g.tangle,
            c_plus: self.c_plus + inner.c_plus + g.new_plus,
            c_minus: self.c_minus + inner.c_minus + g.new_minus,
        })
    }

    pub fn involute(&self) -> AtlMorphism {
        AtlMorphism {
            tangle: self.tangle.involute(),
            c_plus: self.c_plus,
            c_minus: self.c_minus,
        }
    }
}

/// Generator kinds of the annular category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    A,
    B,
    T,
    DeltaPlus,
    DeltaMinus,
}

/// Construct a distinguished generator tangle.
pub fn generator(
    kind: GeneratorKind,
    index: i64,
    at: BoundaryObject,
) -> Result<AtlMorphism, TangleError> {
    match kind {
        GeneratorKind::A => cap_generator(index, at).map(AtlMorphism::new),
        GeneratorKind::B => {
            let target = match at {
                BoundaryObject::N(n) => BoundaryObject::N(n + 1),
                _ => BoundaryObject::N(1),
            };
            let sign_err = TangleError::WrongObjectForSign {
                generator: 'b',
                index,
                object: at,
            };
            match at {
                BoundaryObject::ZeroPlus if index != 1 => return Err(sign_err),
                BoundaryObject::ZeroMinus if index != 2 => return Err(sign_err),
                BoundaryObject::N(n) if index < 1 || index > 2 * n as i64 + 2 => {
                    return Err(TangleError::IndexOutOfRange {
                        generator: 'b',
                        index,
                        object: at,
                    })
                }
                _ => {}
            }
            let a = cap_generator(index, target).map_err(|_| TangleError::IndexOutOfRange {
                generator: 'b',
                index,
                object: at,
            })?;
            debug_assert_eq!(a.outer, at);
            Ok(AtlMorphism::new(a.involute()))
        }
        GeneratorKind::T => match at {
            BoundaryObject::N(n) => {
                let total = 2 * n;
                let pairs = (1..=total)
                    .map(|i| (Endpoint::inner(i), Endpoint::outer((i + 1) % total + 1)))
                    .collect();
                let raw = RawTangle {
                    inner: at,
                    outer: at,
                    pairs,
                    loops: 0,
                };
                Ok(AtlMorphism::new(validate_tangle(&raw)?))
            }
            _ => Err(TangleError::IndexOutOfRange {
                generator: 't',
                index,
                object: at,
            }),
        },
        GeneratorKind::DeltaPlus => Ok(AtlMorphism::with_counters(AtlTangle::identity(at), 1, 0)),
        GeneratorKind::DeltaMinus => Ok(AtlMorphism::with_counters(AtlTangle::identity(at), 0, 1)),
    }
}

fn cap_generator(index: i64, at: BoundaryObject) -> Result<AtlTangle, TangleError> {
    let out_of_range = TangleError::IndexOutOfRange {
        generator: 'a',
        index,
        object: at,
    };
    let n = match at {
        BoundaryObject::N(n) => n,
        _ => return Err(out_of_range),
    };
    let total = 2 * n;
    if index < 1 || index > total as i64 {
        return Err(out_of_range);
    }
    let i = index as u32;
    let partner = next_point(i, total);
    if n == 1 {
        let outer = if i == 1 {
            BoundaryObject::ZeroPlus
        } else {
            BoundaryObject::ZeroMinus
        };
        let raw = RawTangle {
            inner: at,
            outer,
            pairs: vec![(Endpoint::inner(i), Endpoint::inner(partner))],
            loops: 0,
        };
        return validate_tangle(&raw);
    }
    let start = if i == 1 {
        3
    } else if i == total {
        total - 1
    } else {
        1
    };
    let mut pairs = vec![(Endpoint::inner(i), Endpoint::inner(partner))];
    let mut p = start;
    for r in 1..=total - 2 {
        while p == i || p == partner {
            p = next_point(p, total);
        }
        pairs.push((Endpoint::inner(p), Endpoint::outer(r)));
        p = next_point(p, total);
    }
    let raw = RawTangle {
        inner: at,
        outer: BoundaryObject::N(n - 1),
        pairs,
        loops: 0,
    };
    validate_tangle(&raw)
}

/// JSON shape of a morphism.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TangleJson {
    pub inner: BoundaryObject,
    pub outer: BoundaryObject,
    pub pairs: Vec<[(String, u32); 2]>,
    #[serde(default)]
    pub loops: u32,
    #[serde(default)]
    pub c_plus: u64,
    #[serde(default)]
    pub c_minus: u64,
}

fn endpoint_from_json(tag: &str, index: u32) -> Result<Endpoint, TangleError> {
    match tag {
        "i" => Ok(Endpoint::inner(index)),
        "o" => Ok(Endpoint::outer(index)),
        other => Err(TangleError::Json(format!("unknown endpoint tag {other:?}"))),
    }
}

impl TangleJson {
    pub fn to_morphism(&self) -> Result<AtlMorphism, TangleError> {
        let pairs = self
            .pairs
            .iter()
            .map(|[(ta, ia), (tb, ib)]| Ok((endpoint_from_json(ta, *ia)?, endpoint_from_json(tb, *ib)?)))
            .collect::<Result<Vec<_>, TangleError>>()?;
        let raw = RawTangle {
            inner: self.inner,
            outer: self.outer,
            pairs,
            loops: self.loops,
        };
        Ok(AtlMorphism::with_counters(
            validate_tangle(&raw)?,
            self.c_plus,
            self.c_minus,
        ))
    }

    pub fn from_morphism(m: &AtlMorphism) -> Self {
        let ep = |e: Endpoint| (e.side.tag().to_string(), e.index);
        TangleJson {
            inner: m.tangle.inner,
            outer: m.tangle.outer,
            pairs: m.tangle.pairs.iter().map(|&(a, b)| [ep(a), ep(b)]).collect(),
            loops: m.tangle.loops,
            c_plus: m.c_plus,
            c_minus: m.c_minus,
        }
    }
}

impl AtlMorphism {
    pub fn from_json(text: &str) -> Result<AtlMorphism, TangleError> {
        let j: TangleJson =
            serde_json::from_str(text).map_err(|e| TangleError::Json(e.to_string()))?;
        j.to_morphism()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TangleJson::from_morphism(self)).expect("serializable")
    }
}
