//! Diagram statistics, tangle types, Type I factorization and the
//! `III ∘ II ∘ I` decomposition.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::TangleError;
use crate::object::BoundaryObject;
use crate::tangle::{core_shaded, validate_tangle, AtlMorphism, AtlTangle, Endpoint, RawTangle};

/// Relative position of the two `*` intervals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RelStar {
    /// Through strings present; offset is below half their count.
    Through(u32),
    /// No through strings: shading of the region meeting the inner circle,
    /// number of essential loops, and whether the loops flip the shading.
    Loops {
        region_unshaded: bool,
        k: u32,
        switches_shading: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TangleType {
    TypeI,
    TypeII,
    TypeIII,
}

/// Indices of the caps, increasing.
pub fn cap_indices(t: &AtlTangle) -> Vec<u32> {
    t.caps().into_iter().map(|(i, _)| i).collect()
}

/// Indices of the cups, increasing.
pub fn cup_indices(t: &AtlTangle) -> Vec<u32> {
    t.cups().into_iter().map(|(i, _)| i).collect()
}

pub fn rel_star(t: &AtlTangle) -> RelStar {
    let ts = t.through();
    if ts.is_empty() {
        let k = t.loops();
        let shaded = core_shaded(t.inner(), &t.caps());
        return RelStar::Loops {
            region_unshaded: !shaded,
            k,
            switches_shading: k % 2 == 1,
        };
    }
    let half = ts.len() as u32 / 2;
    if is_type2(t) {
        let (_, outer_of_last) = *ts.last().expect("non-empty");
        let number = ts.iter().filter(|&&(_, r)| r <= outer_of_last).count() as u32;
        return RelStar::Through((number / 2) % half);
    }
    let mid = BoundaryObject::N(half);
    let (first, third) = outer_factors(t, mid, mid);
    let first = AtlMorphism::new(first);
    let third = AtlMorphism::new(third);
    (0..half)
        .find(|&r| {
            let second = type2_from_relstar(RelStar::Through(r), mid, mid)
                .expect("rotations exist");
            let whole = third
                .compose(&AtlMorphism::new(second).compose(&first).expect("typed"))
                .expect("typed");
            whole.tangle == *t
        })
        .map(RelStar::Through)
        .expect("some rotation recovers the tangle")
}

fn outer_factors(t: &AtlTangle, low: BoundaryObject, high: BoundaryObject) -> (AtlTangle, AtlTangle) {
    let first = build_type1_from_capind(t.inner(), &cap_indices(t), low)
        .expect("cap indices of a tangle are realizable");
    let third = build_type1_from_capind(t.outer(), &cup_indices(t), high)
        .expect("cup indices of a tangle are realizable")
        .involute();
    (first, third)
}

/// The through string leaving the largest inner point must land just after
/// the outer `*` interval.
fn star_condition(t: &AtlTangle) -> bool {
    match t.through().last() {
        None => true,
        Some(&(_, r)) => {
            let total = t.outer().points();
            if r % 2 == 0 {
                r == total
            } else {
                r == 1
            }
        }
    }
}

pub fn is_type1(t: &AtlTangle) -> bool {
    t.is_identity()
        || (t.cups().is_empty() && !t.caps().is_empty() && t.loops() == 0 && star_condition(t))
}

pub fn is_type3(t: &AtlTangle) -> bool {
    is_type1(&t.involute())
}

pub fn is_type2(t: &AtlTangle) -> bool {
    t.caps().is_empty() && t.cups().is_empty()
}

/// All types that apply; empty when the tangle has none.
pub fn classify(t: &AtlTangle) -> BTreeSet<TangleType> {
    let mut out = BTreeSet::new();
    if is_type1(t) {
        out.insert(TangleType::TypeI);
    }
    if is_type2(t) {
        out.insert(TangleType::TypeII);
    }
    if is_type3(t) {
        out.insert(TangleType::TypeIII);
    }
    out
}

/// Pair up cap indices into nested caps. Returns the directed caps and the
/// points left over for through strings.
pub(crate) fn realize_caps(total: u32, caps: &[u32]) -> Result<(Vec<(u32, u32)>, Vec<u32>), TangleError> {
    for w in caps.windows(2) {
        if w[0] >= w[1] {
            return Err(TangleError::UnrealizableIndexSet(
                "indices must be strictly increasing".into(),
            ));
        }
    }
    if let Some(&bad) = caps.iter().find(|&&i| i == 0 || i > total) {
        return Err(TangleError::UnrealizableIndexSet(format!(
            "index {bad} outside 1..={total}"
        )));
    }
    let mut remaining: Vec<u32> = (1..=total).collect();
    let mut open: BTreeSet<u32> = caps.iter().copied().collect();
    let mut out = Vec::new();
    while !open.is_empty() {
        let len = remaining.len();
        let found = (0..len).find(|&pos| {
            open.contains(&remaining[pos]) && !open.contains(&remaining[(pos + 1) % len])
        });
        let pos = match found {
            Some(pos) if len >= 2 => pos,
            _ => {
                return Err(TangleError::UnrealizableIndexSet(format!(
                    "indices {:?} cannot all start nested caps",
                    open
                )))
            }
        };
        let p = remaining[pos];
        let q = remaining[(pos + 1) % len];
        out.push((p, q));
        open.remove(&p);
        remaining.retain(|&x| x != p && x != q);
    }
    out.sort_unstable();
    Ok((out, remaining))
}

/// The unique Type I tangle at `m` with the given cap indices; its target is
/// inferred from the number of leftover points and the core shading.
pub fn type1_from_capind(m: BoundaryObject, caps: &[u32]) -> Result<AtlTangle, TangleError> {
    if m.is_zero() {
        if caps.is_empty() {
            return Ok(AtlTangle::identity(m));
        }
        return Err(TangleError::UnrealizableIndexSet(format!("no caps exist at {m}")));
    }
    let total = m.points();
    let (arcs, free) = realize_caps(total, caps)?;
    let mut pairs: Vec<(Endpoint, Endpoint)> = arcs
        .iter()
        .map(|&(a, b)| (Endpoint::inner(a), Endpoint::inner(b)))
        .collect();
    let target = if free.is_empty() {
        BoundaryObject::zero_with_shading(core_shaded(m, &arcs))
    } else {
        let j = free.len() as u32;
        let last = *free.last().expect("non-empty");
        let first_outer = if last % 2 == 0 { j } else { 1 };
        let start = free.len() - 1;
        for step in 0..free.len() {
            let p = free[(start + step) % free.len()];
            let r = (first_outer - 1 + step as u32) % j + 1;
            pairs.push((Endpoint::inner(p), Endpoint::outer(r)));
        }
        BoundaryObject::N(j / 2)
    };
    validate_tangle(&RawTangle {
        inner: m,
        outer: target,
        pairs,
        loops: 0,
    })
}

/// The unique Type I tangle from `m` to `target` with the given cap indices.
pub fn build_type1_from_capind(
    m: BoundaryObject,
    caps: &[u32],
    target: BoundaryObject,
) -> Result<AtlTangle, TangleError> {
    let t = type1_from_capind(m, caps)?;
    if t.outer() != target {
        return Err(TangleError::UnrealizableIndexSet(format!(
            "indices {caps:?} at {m} lead to {}, not {target}",
            t.outer()
        )));
    }
    Ok(t)
}

/// Remove the caps of the Type I tangle `head` (whose source is the source of
/// `t`) from `t`, renumbering the remaining inner points through `head`.
fn peel(t: &AtlTangle, head: &AtlTangle) -> AtlTangle {
    let mut rename = vec![0u32; t.inner().points() as usize + 1];
    for (inner, outer) in head.through() {
        rename[inner as usize] = outer;
    }
    let pairs = t
        .pairs()
        .iter()
        .filter_map(|&(a, b)| {
            let map = |e: Endpoint| match e.side {
                crate::tangle::Side::Inner => {
                    let r = rename[e.index as usize];
                    (r != 0).then_some(Endpoint::inner(r))
                }
                crate::tangle::Side::Outer => Some(e),
            };
            Some((map(a)?, map(b)?))
        })
        .collect();
    validate_tangle(&RawTangle {
        inner: head.outer(),
        outer: t.outer(),
        pairs,
        loops: t.loops(),
    })
    .expect("peeling a Type I factor leaves a valid tangle")
}

/// Split a Type I tangle into irreducible factors. Each factor is a list of
/// generator indices in written order (leftmost applied last); the factors are
/// returned in written order as well, so concatenation gives a word for `t`.
pub fn irreducible_factorization(t: &AtlTangle) -> Result<Vec<Vec<u32>>, TangleError> {
    if !is_type1(t) {
        return Err(TangleError::NotTypeI);
    }
    let mut cur = t.clone();
    let mut factors: Vec<Vec<u32>> = Vec::new();
    loop {
        let caps = cur.caps();
        if caps.is_empty() {
            break;
        }
        let total = cur.inner().points();
        let star_even = caps
            .iter()
            .filter(|&&(p, q)| q < p && p % 2 == 0)
            .max_by_key(|&&(p, _)| p)
            .copied();
        let Some((p, q)) = star_even else {
            factors.push(caps.iter().map(|&(i, _)| i).collect());
            break;
        };
        let inside = |x: u32| x >= p || x <= q;
        let bounded: Vec<u32> = caps
            .iter()
            .filter(|&&(a, b)| (a, b) != (p, q) && inside(a) && inside(b))
            .map(|&(a, _)| a)
            .collect();
        let mut head_caps: Vec<u32> = bounded.clone();
        head_caps.push(p);
        head_caps.sort_unstable();
        let head = type1_from_capind(cur.inner(), &head_caps)?;
        let top = 2 * head.outer().rank() + 2;
        debug_assert!(top <= total);
        let mut word = vec![top];
        word.extend(bounded.iter().copied());
        factors.push(word);
        cur = peel(&cur, &head);
    }
    factors.reverse();
    Ok(factors)
}

/// Type II tangle realizing a relative star position between two objects.
pub fn type2_from_relstar(
    rel: RelStar,
    source: BoundaryObject,
    target: BoundaryObject,
) -> Result<AtlTangle, TangleError> {
    match rel {
        RelStar::Through(r) => {
            let n = source.rank();
            if source != target || source.is_zero() || (r > 0 && r >= n) {
                return Err(TangleError::UnrealizableIndexSet(format!(
                    "offset {r} between {source} and {target}"
                )));
            }
            let total = 2 * n;
            let pairs = (1..=total)
                .map(|i| (Endpoint::inner(i), Endpoint::outer((i - 1 + 2 * r) % total + 1)))
                .collect();
            validate_tangle(&RawTangle {
                inner: source,
                outer: target,
                pairs,
                loops: 0,
            })
        }
        RelStar::Loops { k, .. } => validate_tangle(&RawTangle {
            inner: source,
            outer: target,
            pairs: Vec::new(),
            loops: k,
        }),
    }
}

/// The three factors `(T_I, T_II, T_III)` with `T = T_III ∘ T_II ∘ T_I`.
/// Counters of `m` are not part of the factors.
pub fn decompose(m: &AtlMorphism) -> (AtlTangle, AtlTangle, AtlTangle) {
    let t = &m.tangle;
    let ts = t.through().len() as u32;
    let (low, high) = if ts > 0 {
        (BoundaryObject::N(ts / 2), BoundaryObject::N(ts / 2))
    } else {
        (
            BoundaryObject::zero_with_shading(core_shaded(t.inner(), &t.caps())),
            BoundaryObject::zero_with_shading(core_shaded(t.outer(), &t.cups())),
        )
    };
    let (first, third) = outer_factors(t, low, high);
    let second =
        type2_from_relstar(rel_star(t), low, high).expect("relative star position is realizable");
    (first, second, third)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::{generator, GeneratorKind};
    use BoundaryObject::{ZeroMinus, ZeroPlus, N};

    fn a(i: i64, at: BoundaryObject) -> AtlMorphism {
        generator(GeneratorKind::A, i, at).unwrap()
    }

    fn b(i: i64, at: BoundaryObject) -> AtlMorphism {
        generator(GeneratorKind::B, i, at).unwrap()
    }

    fn t(at: BoundaryObject) -> AtlMorphism {
        generator(GeneratorKind::T, 0, at).unwrap()
    }

    fn recompose(m: &AtlMorphism) -> AtlTangle {
        let (x, y, z) = decompose(m);
        let r = AtlMorphism::new(z)
            .compose(&AtlMorphism::new(y).compose(&AtlMorphism::new(x)).unwrap())
            .unwrap();
        assert_eq!((r.c_plus, r.c_minus), (0, 0));
        r.tangle
    }

    #[test]
    fn cap_indices_of_ordered_words() {
        assert_eq!(cap_indices(&a(3, N(3)).tangle), vec![3]);
        let w = a(2, N(2)).compose(&a(5, N(3))).unwrap();
        assert_eq!(cap_indices(&w.tangle), vec![2, 5]);
        assert_eq!(cup_indices(&b(3, N(2)).tangle), vec![3]);
        assert!(cap_indices(&AtlTangle::identity(N(2))).is_empty());
    }

    #[test]
    fn rel_star_of_rotations() {
        for n in 1..=6u32 {
            let mut acc = AtlMorphism::identity(N(n));
            for k in 0..n {
                assert_eq!(rel_star(&acc.tangle), RelStar::Through(k));
                acc = t(N(n)).compose(&acc).unwrap();
            }
        }
    }

    #[test]
    fn rel_star_of_sigma() {
        let s = a(2, N(1)).compose(&b(1, ZeroPlus)).unwrap();
        assert_eq!(
            rel_star(&s.tangle),
            RelStar::Loops {
                region_unshaded: true,
                k: 1,
                switches_shading: true
            }
        );
    }

    #[test]
    fn generator_types() {
        for n in 1..=4u32 {
            for i in 1..=2 * n as i64 {
                assert!(classify(&a(i, N(n)).tangle).contains(&TangleType::TypeI), "a{i} at {n}");
            }
            for i in 1..=2 * n as i64 + 2 {
                assert!(classify(&b(i, N(n)).tangle).contains(&TangleType::TypeIII));
            }
        }
        assert_eq!(classify(&AtlTangle::identity(N(2))).len(), 3);
        assert_eq!(
            classify(&t(N(3)).tangle),
            [TangleType::TypeII].into_iter().collect()
        );
    }

    #[test]
    fn build_type1_round_trips() {
        assert_eq!(build_type1_from_capind(N(3), &[3], N(2)).unwrap(), a(3, N(3)).tangle);
        let w = a(2, N(2)).compose(&a(5, N(3))).unwrap();
        assert_eq!(build_type1_from_capind(N(3), &[2, 5], N(1)).unwrap(), w.tangle);
        assert_eq!(build_type1_from_capind(N(2), &[], N(2)).unwrap(), AtlTangle::identity(N(2)));
        assert!(build_type1_from_capind(N(2), &[1, 2], N(1)).is_err());
        assert!(build_type1_from_capind(N(2), &[1], N(2)).is_err());
        assert_eq!(
            build_type1_from_capind(N(1), &[2], ZeroMinus).unwrap(),
            a(2, N(1)).tangle
        );
    }

    #[test]
    fn factorization_of_nested_star_cap() {
        let w = a(2, N(1)).compose(&a(3, N(2))).unwrap().compose(&a(4, N(3))).unwrap();
        let f = irreducible_factorization(&w.tangle).unwrap();
        assert_eq!(f, vec![vec![2, 3, 4]]);
        let w = a(1, N(1)).compose(&a(4, N(2))).unwrap();
        assert_eq!(irreducible_factorization(&w.tangle).unwrap(), vec![vec![1], vec![4]]);
        assert!(irreducible_factorization(&b(1, N(1)).tangle).is_err());
    }

    #[test]
    fn decomposition_recomposes() {
        let m = b(2, N(2)).compose(&a(3, N(3))).unwrap();
        let (x, y, z) = decompose(&m);
        assert_eq!(x, a(3, N(3)).tangle);
        assert!(y.is_identity());
        assert_eq!(z, b(2, N(2)).tangle);
        let s = a(2, N(1)).compose(&b(1, ZeroPlus)).unwrap();
        assert_eq!(recompose(&s), s.tangle);
        let m = t(N(3)).compose(&b(5, N(2))).unwrap().compose(&a(1, N(3))).unwrap();
        assert_eq!(recompose(&m), m.tangle);
        assert_eq!(recompose(&AtlMorphism::identity(ZeroMinus)), AtlTangle::identity(ZeroMinus));
    }
}
