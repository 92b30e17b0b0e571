#![allow(dead_code)]

use anntl::word::{Letter, Word};
use anntl::BoundaryObject;

pub fn objects(max_n: u32) -> Vec<BoundaryObject> {
    let mut v = vec![BoundaryObject::ZeroPlus, BoundaryObject::ZeroMinus];
    v.extend((1..=max_n).map(BoundaryObject::N));
    v
}

/// Letters applicable at `at` whose target stays within rank `max_n`.
pub fn letters_at(at: BoundaryObject, max_n: u32, with_deltas: bool) -> Vec<Letter> {
    let mut out = Vec::new();
    let n = at.rank();
    for i in 1..=2 * n + 2 {
        out.push(Letter::Alpha(i));
        out.push(Letter::Beta(i));
    }
    out.push(Letter::Tau);
    if with_deltas {
        out.push(Letter::DeltaPlus);
        out.push(Letter::DeltaMinus);
    }
    out.retain(|l| matches!(l.target(at), Some(t) if t.rank() <= max_n));
    out
}

/// Every composable word of length at most `len` starting at `at`.
pub fn words_from(at: BoundaryObject, len: usize, max_n: u32, with_deltas: bool) -> Vec<Word> {
    let mut out = vec![Word::identity(at)];
    let mut frontier = vec![(at, Vec::<Letter>::new())];
    for _ in 0..len {
        let mut next = Vec::new();
        for (cur, letters) in &frontier {
            for l in letters_at(*cur, max_n, with_deltas) {
                let mut w = vec![l];
                w.extend_from_slice(letters);
                let t = l.target(*cur).unwrap();
                out.push(Word::new(at, w.clone()).unwrap());
                next.push((t, w));
            }
        }
        frontier = next;
    }
    out
}
