//! Words in the presented category and their standard forms.
//!
//! Words are written as in composition: the leftmost letter is applied last.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::analysis;
use crate::error::WordError;
use crate::object::BoundaryObject;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Alpha(u32),
    Beta(u32),
    Tau,
    DeltaPlus,
    DeltaMinus,
}

/// A letter together with its source and target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub letter: Letter,
    pub source: BoundaryObject,
    pub target: BoundaryObject,
}

impl Letter {
    /// Target of the letter applied at `source`, if it is defined there.
    pub fn target(self, source: BoundaryObject) -> Option<BoundaryObject> {
        use BoundaryObject::{ZeroMinus, ZeroPlus, N};
        match (self, source) {
            (Letter::Alpha(i), N(1)) => match i {
                1 => Some(ZeroPlus),
                2 => Some(ZeroMinus),
                _ => None,
            },
            (Letter::Alpha(i), N(n)) => (1..=2 * n).contains(&i).then_some(N(n - 1)),
            (Letter::Alpha(_), _) => None,
            (Letter::Beta(1), ZeroPlus) | (Letter::Beta(2), ZeroMinus) => Some(N(1)),
            (Letter::Beta(_), ZeroPlus | ZeroMinus) => None,
            (Letter::Beta(i), N(n)) => (1..=2 * n + 2).contains(&i).then_some(N(n + 1)),
            (Letter::Tau, N(_)) => Some(source),
            (Letter::Tau, _) => None,
            (Letter::DeltaPlus | Letter::DeltaMinus, _) => Some(source),
        }
    }

    pub fn involute(self) -> Letter {
        match self {
            Letter::Alpha(i) => Letter::Beta(i),
            Letter::Beta(i) => Letter::Alpha(i),
            other => other,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Alpha(i) => write!(f, "a{i}"),
            Letter::Beta(i) => write!(f, "b{i}"),
            Letter::Tau => write!(f, "t"),
            Letter::DeltaPlus => write!(f, "d+"),
            Letter::DeltaMinus => write!(f, "d-"),
        }
    }
}

/// A composable sequence of letters, leftmost applied last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    source: BoundaryObject,
    letters: Vec<Letter>,
}

/// Source object of every letter of `letters`, in written order.
fn letter_sources(source: BoundaryObject, letters: &[Letter]) -> Option<Vec<BoundaryObject>> {
    let mut out = vec![source; letters.len()];
    let mut cur = source;
    for (i, l) in letters.iter().enumerate().rev() {
        out[i] = cur;
        cur = l.target(cur)?;
    }
    Some(out)
}

fn letters_target(source: BoundaryObject, letters: &[Letter]) -> Option<BoundaryObject> {
    letters.iter().rev().try_fold(source, |o, l| l.target(o))
}

impl Word {
    pub fn new(source: BoundaryObject, letters: Vec<Letter>) -> Result<Word, WordError> {
        if letters_target(source, &letters).is_none() {
            return Err(WordError::PreconditionViolated(format!(
                "letters do not compose from {source}"
            )));
        }
        Ok(Word { source, letters })
    }

    pub fn identity(obj: BoundaryObject) -> Word {
        Word {
            source: obj,
            letters: Vec::new(),
        }
    }

    pub fn source(&self) -> BoundaryObject {
        self.source
    }

    pub fn target(&self) -> BoundaryObject {
        letters_target(self.source, &self.letters).expect("word composes")
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Typed view of the letters in written order.
    pub fn generators(&self) -> Vec<Generator> {
        let srcs = letter_sources(self.source, &self.letters).expect("word composes");
        self.letters
            .iter()
            .zip(srcs)
            .map(|(&letter, source)| Generator {
                letter,
                source,
                target: letter.target(source).expect("word composes"),
            })
            .collect()
    }

    /// `later ∘ self`.
    pub fn then(&self, later: &Word) -> Result<Word, WordError> {
        if later.source != self.target() {
            return Err(WordError::ObjectMismatch(
                later.source.to_string(),
                self.target().to_string(),
            ));
        }
        let mut letters = later.letters.clone();
        letters.extend_from_slice(&self.letters);
        Ok(Word {
            source: self.source,
            letters,
        })
    }

    /// Reverse the word, swap `α` and `β`, invert `τ`.
    pub fn involute(&self) -> Word {
        let mut letters = Vec::new();
        for g in self.generators() {
            match g.letter {
                Letter::Tau => {
                    let n = g.source.rank();
                    letters.extend(std::iter::repeat_n(Letter::Tau, (n - 1) as usize));
                }
                other => letters.push(other.involute()),
            }
        }
        letters.reverse();
        Word {
            source: self.target(),
            letters,
        }
    }

    pub fn parse(text: &str, at: BoundaryObject) -> Result<Word, WordError> {
        enum Term {
            One(Letter),
            TauPow(i64),
            Id,
        }
        let mut terms = Vec::new();
        let mut pos = 0usize;
        for piece in text.split(' ') {
            let start = pos;
            pos += piece.len() + 1;
            let tok = piece.trim();
            if tok.is_empty() {
                continue;
            }
            let syntax = || WordError::SyntaxError {
                position: start,
                token: tok.to_string(),
            };
            let num = |s: &str| -> Result<i64, WordError> {
                if s.is_empty() || !s.trim_start_matches('-').chars().all(|c| c.is_ascii_digit()) {
                    return Err(syntax());
                }
                s.parse().map_err(|_| syntax())
            };
            let term = match tok {
                "t" => Term::One(Letter::Tau),
                "d+" => Term::One(Letter::DeltaPlus),
                "d-" => Term::One(Letter::DeltaMinus),
                "id" => Term::Id,
                _ if tok.starts_with("t^") => Term::TauPow(num(&tok[2..])?),
                _ if tok.starts_with('a') || tok.starts_with('b') => {
                    let i = num(&tok[1..])?;
                    if i < 0 || i > u32::MAX as i64 {
                        return Err(syntax());
                    }
                    if tok.starts_with('a') {
                        Term::One(Letter::Alpha(i as u32))
                    } else {
                        Term::One(Letter::Beta(i as u32))
                    }
                }
                _ => return Err(syntax()),
            };
            terms.push((start, tok.to_string(), term));
        }
        let mut letters = Vec::new();
        let mut cur = at;
        for (position, token, term) in terms.into_iter().rev() {
            let err = || WordError::IndexOutOfRange {
                position,
                token: token.clone(),
                object: cur,
            };
            match term {
                Term::Id => {}
                Term::One(l) => {
                    cur = l.target(cur).ok_or_else(err)?;
                    letters.push(l);
                }
                Term::TauPow(k) => {
                    let n = match cur {
                        BoundaryObject::N(n) => n as i64,
                        _ => return Err(err()),
                    };
                    letters.extend(std::iter::repeat_n(Letter::Tau, k.rem_euclid(n) as usize));
                }
            }
        }
        letters.reverse();
        Ok(Word { source: at, letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `δ+^{c+} δ−^{c−} w3 w2 w1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardForm {
    pub c_plus: u64,
    pub c_minus: u64,
    pub w3: Word,
    pub w2: Word,
    pub w1: Word,
}

/// Serialized shape of a standard form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardFormJson {
    pub c_plus: u64,
    pub c_minus: u64,
    pub w3: String,
    pub w2: String,
    pub w1: String,
}

impl StandardForm {
    pub fn to_word(&self) -> Word {
        let mut w = self.w1.then(&self.w2).expect("parts compose");
        w = w.then(&self.w3).expect("parts compose");
        let mut letters = vec![Letter::DeltaPlus; self.c_plus as usize];
        letters.extend(std::iter::repeat_n(Letter::DeltaMinus, self.c_minus as usize));
        letters.extend_from_slice(&w.letters);
        Word {
            source: w.source,
            letters,
        }
    }

    pub fn to_json(&self) -> StandardFormJson {
        StandardFormJson {
            c_plus: self.c_plus,
            c_minus: self.c_minus,
            w3: self.w3.to_string(),
            w2: self.w2.to_string(),
            w1: self.w1.to_string(),
        }
    }
}

impl fmt::Display for StandardForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "c+ = {}, c- = {}, w3 = {}, w2 = {}, w1 = {}",
            self.c_plus, self.c_minus, self.w3, self.w2, self.w1
        )
    }
}

fn alpha_indices(letters: &[Letter]) -> Result<Vec<u32>, WordError> {
    letters
        .iter()
        .map(|l| match l {
            Letter::Alpha(i) => Ok(*i),
            _ => Err(WordError::NotTypeI),
        })
        .collect()
}

fn alphas(indices: &[u32]) -> Vec<Letter> {
    indices.iter().map(|&i| Letter::Alpha(i)).collect()
}

/// Is `α_i` at `source` the wrap-around cap `α_{2n}` at `[n]`.
fn is_top(i: u32, source: BoundaryObject) -> bool {
    i == 2 * source.rank()
}

/// Strictly increasing indices and no wrap-around letter.
fn is_ordered(source: BoundaryObject, indices: &[u32]) -> bool {
    let srcs = letter_sources(source, &alphas(indices)).expect("composable");
    indices.windows(2).all(|w| w[0] < w[1])
        && indices.iter().zip(&srcs).all(|(&i, &s)| !is_top(i, s))
}

/// Rewrite with `α_j α_i → α_i α_{j+2}` (`j ≥ i`, except a wrap-around `α_j`
/// over `α_1`) until no rule applies.
fn sort_alphas(source: BoundaryObject, mut idx: Vec<u32>) -> Vec<u32> {
    loop {
        let srcs = letter_sources(source, &alphas(&idx)).expect("composable");
        let hit = (0..idx.len().saturating_sub(1)).find(|&k| {
            let (j, i) = (idx[k], idx[k + 1]);
            j >= i && !(is_top(j, srcs[k]) && i == 1)
        });
        match hit {
            None => return idx,
            Some(k) => {
                let (j, i) = (idx[k], idx[k + 1]);
                idx[k] = i;
                idx[k + 1] = j + 2;
            }
        }
    }
}

/// Turn `α_{2n} ∘ w` (with `w` ordered, starting at `source`) into `u2 ∘ u1`
/// with `u1` irreducible. Returns `(u1, u2)` as index lists in written order.
fn irredalg_indices(source: BoundaryObject, top: u32, w: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let total = source.points();
    let mut top = top;
    let mut rest: Vec<u32> = w.to_vec();
    let mut u2 = Vec::new();
    loop {
        let mut sorted = rest.clone();
        sorted.sort_unstable();
        let (arcs, free) =
            analysis::realize_caps(total, &sorted).expect("ordered words have realizable caps");
        let first = free[0];
        let last = *free.last().expect("non-empty");
        let middle = arcs
            .iter()
            .filter(|&&(a, _)| first < a && a < last)
            .map(|&(a, _)| a)
            .min();
        let Some(m) = middle else {
            let mut u1 = vec![top];
            u1.extend(rest);
            return (u1, u2);
        };
        let pos = rest.iter().position(|&x| x == m).expect("present");
        let moved = m - 2 * pos as u32;
        debug_assert!(moved >= 2 && moved <= top);
        rest.remove(pos);
        u2.push(moved);
        top += 2;
    }
}

/// Reduce `α_{2n} ∘ w` to `u2 ∘ u1` with `u1` irreducible.
pub fn reduce_irredalg(top: &Word, w: &Word) -> Result<(Word, Word), WordError> {
    let top_idx = match top.letters() {
        [Letter::Alpha(i)] if is_top(*i, top.source()) => *i,
        _ => {
            return Err(WordError::PreconditionViolated(
                "prefix must be the wrap-around letter".into(),
            ))
        }
    };
    let idx = alpha_indices(w.letters())?;
    if w.target() != top.source() || !is_ordered(w.source(), &idx) {
        return Err(WordError::PreconditionViolated("word must be ordered".into()));
    }
    let (u1, u2) = irredalg_indices(w.source(), top_idx, &idx);
    let u1 = Word::new(w.source(), alphas(&u1))?;
    let u2 = Word::new(u1.target(), alphas(&u2))?;
    Ok((u1, u2))
}

fn standardize_indices(source: BoundaryObject, idx: Vec<u32>) -> Vec<Vec<u32>> {
    if idx.is_empty() {
        return Vec::new();
    }
    let w = sort_alphas(source, idx);
    let srcs = letter_sources(source, &alphas(&w)).expect("composable");
    let top = (0..w.len()).rev().find(|&k| is_top(w[k], srcs[k]));
    let Some(k) = top else {
        return vec![w];
    };
    let right = &w[k + 1..];
    let (u1, u2) = irredalg_indices(source, w[k], right);
    let after = letters_target(source, &alphas(&u1)).expect("composable");
    let mut left = w[..k].to_vec();
    left.extend(u2);
    let mut pieces = standardize_indices(after, left);
    pieces.push(u1);
    pieces
}

/// Split a word of `α`'s into irreducible pieces (written order).
pub fn standardize_type1(w: &Word) -> Result<Vec<Word>, WordError> {
    let idx = alpha_indices(w.letters())?;
    let pieces = standardize_indices(w.source(), idx);
    let mut cur = w.source();
    let mut out = Vec::with_capacity(pieces.len());
    for p in pieces.iter().rev() {
        let piece = Word::new(cur, alphas(p))?;
        cur = piece.target();
        out.push(piece);
    }
    out.reverse();
    Ok(out)
}

fn flatten(source: BoundaryObject, pieces: &[Word]) -> Word {
    let mut letters = Vec::new();
    for p in pieces {
        letters.extend_from_slice(p.letters());
    }
    Word { source, letters }
}

/// Push one `τ` (applied after the `β`'s of `betas`, which start at `source`)
/// rightwards. Returns true if it survives past all of them.
fn push_tau(betas: &mut [Letter], source: BoundaryObject) -> bool {
    let srcs = letter_sources(source, betas).expect("composable");
    for (k, s) in srcs.into_iter().enumerate() {
        let Letter::Beta(j) = betas[k] else {
            unreachable!("only β letters here")
        };
        let n = match s {
            BoundaryObject::N(n) => n,
            _ => return false,
        };
        if j <= 2 * n {
            betas[k] = Letter::Beta(j + 2);
        } else {
            betas[k] = Letter::Beta(j - 2 * n);
            return false;
        }
    }
    true
}

struct Normalizer {
    source: BoundaryObject,
    c_plus: u64,
    c_minus: u64,
    u1: Vec<Letter>,
    rotation: u32,
    sigma: Vec<Letter>,
    u3: Vec<Letter>,
}

impl Normalizer {
    fn obj1(&self) -> BoundaryObject {
        letters_target(self.source, &self.u1).expect("composable")
    }

    fn obj2(&self) -> BoundaryObject {
        letters_target(self.obj1(), &self.sigma).expect("composable")
    }

    fn add_rotation(&mut self) {
        let n = self.obj1().rank();
        if n >= 1 {
            self.rotation = (self.rotation + 1) % n;
        }
    }

    fn push_taus(&mut self, rest: &mut [Letter], count: u32) {
        let src = self.obj2();
        for _ in 0..count {
            if push_tau(rest, src) {
                self.add_rotation();
            }
        }
    }

    fn apply(&mut self, letter: Letter) {
        match letter {
            Letter::DeltaPlus => self.c_plus += 1,
            Letter::DeltaMinus => self.c_minus += 1,
            Letter::Beta(_) => self.u3.insert(0, letter),
            Letter::Tau => {
                let mut u3 = std::mem::take(&mut self.u3);
                self.push_taus(&mut u3, 1);
                self.u3 = u3;
            }
            Letter::Alpha(q) => self.apply_alpha(q),
        }
    }

    fn apply_alpha(&mut self, q: u32) {
        use BoundaryObject::{ZeroMinus, ZeroPlus, N};
        let src3 = self.obj2();
        let srcs = letter_sources(src3, &self.u3).expect("composable");
        let mut a = q;
        let mut passed: Vec<Letter> = Vec::new();
        for k in 0..self.u3.len() {
            let Letter::Beta(j) = self.u3[k] else {
                unreachable!("only β letters here")
            };
            let mut rest: Vec<Letter> = self.u3[k + 1..].to_vec();
            match srcs[k] {
                N(n) => {
                    let taus = if a == 1 && j == 2 * n + 2 {
                        Some(n - 1)
                    } else if a == 2 * n + 2 && j == 1 {
                        Some(1)
                    } else {
                        None
                    };
                    if let Some(count) = taus {
                        self.push_taus(&mut rest, count);
                    } else if a + 1 < j {
                        passed.push(Letter::Beta(j - 2));
                        continue;
                    } else if a > j + 1 {
                        passed.push(Letter::Beta(j));
                        a -= 2;
                        continue;
                    } else if a == j {
                        if j % 2 == 1 {
                            self.c_plus += 1;
                        } else {
                            self.c_minus += 1;
                        }
                    }
                }
                ZeroPlus | ZeroMinus => match (a, j) {
                    (1, 1) => self.c_plus += 1,
                    (2, 2) => self.c_minus += 1,
                    (2, 1) => self.sigma.splice(0..0, [Letter::Alpha(2), Letter::Beta(1)]).for_each(drop),
                    (1, 2) => self.sigma.splice(0..0, [Letter::Alpha(1), Letter::Beta(2)]).for_each(drop),
                    _ => unreachable!("α at [1] has index 1 or 2"),
                },
            }
            passed.extend(rest);
            self.u3 = passed;
            return;
        }
        self.u3 = passed;
        // Past every β: move through τ^rotation, then join u1.
        let n = self.obj1().rank();
        let mut survivors = 0u32;
        for _ in 0..self.rotation {
            if a >= 3 {
                a -= 2;
                survivors += 1;
            } else {
                a += 2 * n - 2;
            }
        }
        self.u1.insert(0, Letter::Alpha(a));
        let m = self.obj1().rank();
        self.rotation = if m >= 1 { survivors % m } else { 0 };
    }
}

/// The standard form of a word.
pub fn standard_form(w: &Word) -> StandardForm {
    let mut st = Normalizer {
        source: w.source(),
        c_plus: 0,
        c_minus: 0,
        u1: Vec::new(),
        rotation: 0,
        sigma: Vec::new(),
        u3: Vec::new(),
    };
    for &l in w.letters().iter().rev() {
        st.apply(l);
    }
    let u1 = Word::new(st.source, st.u1.clone()).expect("composable");
    let w1 = flatten(u1.source(), &standardize_type1(&u1).expect("only α letters"));
    let obj1 = w1.target();
    let mut mid = st.sigma.clone();
    mid.extend(std::iter::repeat_n(Letter::Tau, st.rotation as usize));
    let w2 = Word::new(obj1, mid).expect("composable");
    let u3 = Word::new(w2.target(), st.u3.clone()).expect("composable");
    let dual = u3.involute();
    let w3 = flatten(dual.source(), &standardize_type1(&dual).expect("only α letters")).involute();
    StandardForm {
        c_plus: st.c_plus,
        c_minus: st.c_minus,
        w3,
        w2,
        w1,
    }
}

/// Equality in the presented category.
pub fn words_equal(v: &Word, w: &Word) -> Result<bool, WordError> {
    if v.source() != w.source() || v.target() != w.target() {
        return Err(WordError::ObjectMismatch(
            format!("{} -> {}", v.source(), v.target()),
            format!("{} -> {}", w.source(), w.target()),
        ));
    }
    Ok(standard_form(v) == standard_form(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use BoundaryObject::{ZeroPlus, N};

    fn word(s: &str, at: BoundaryObject) -> Word {
        Word::parse(s, at).unwrap()
    }

    #[test]
    fn parse_infers_objects() {
        let w = word("a2 a5", N(3));
        assert_eq!(w.target(), N(1));
        assert!(matches!(
            Word::parse("a3", N(1)),
            Err(WordError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            Word::parse("t", ZeroPlus),
            Err(WordError::IndexOutOfRange { .. })
        ));
        assert!(matches!(Word::parse("a2 x", N(2)), Err(WordError::SyntaxError { position: 3, .. })));
        assert_eq!(word("t^5", N(3)).to_string(), "t t");
        assert_eq!(word("id", N(3)).to_string(), "id");
    }

    #[test]
    fn involution_of_words() {
        assert_eq!(word("a3", N(3)).involute().to_string(), "b3");
        assert_eq!(word("t", N(4)).involute().to_string(), "t t t");
        let w = word("a1 t b4 d+ a2", N(2));
        assert_eq!(w.involute().involute(), w);
    }

    #[test]
    fn standard_forms_of_relation_instances() {
        let s = standard_form(&word("a1 b1", ZeroPlus));
        assert_eq!((s.c_plus, s.c_minus), (1, 0));
        assert!(s.w1.is_empty() && s.w2.is_empty() && s.w3.is_empty());
        let s = standard_form(&word("a6 b1", N(2)));
        assert_eq!(s.w2.to_string(), "t");
        assert!(s.w1.is_empty() && s.w3.is_empty());
        let s = standard_form(&word("b1 a1", N(1)));
        assert_eq!((s.w3.to_string(), s.w1.to_string()), ("b1".into(), "a1".into()));
    }

    #[test]
    fn words_equal_examples() {
        assert!(words_equal(&word("a2 a5", N(3)), &word("a3 a2", N(3))).unwrap());
        assert!(words_equal(&word("t t", N(2)), &word("", N(2))).unwrap());
        assert!(words_equal(&word("a1", N(1)), &word("a2", N(1))).is_err());
    }

    #[test]
    fn irredalg_on_irreducible_input_is_immediate() {
        let (u1, u2) = reduce_irredalg(&word("a2", N(1)), &word("a3 a4", N(3))).unwrap();
        assert_eq!(u1.to_string(), "a2 a3 a4");
        assert!(u2.is_empty());
        assert!(reduce_irredalg(&word("a1", N(1)), &word("a3", N(2))).is_err());
    }

    #[test]
    fn nested_reordering_reaches_canonical_pieces() {
        let pieces = standardize_type1(&word("a2 a1 a4", N(3))).unwrap();
        let s: Vec<String> = pieces.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, vec!["a2", "a4 a1"]);
    }
}
