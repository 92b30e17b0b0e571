//! Functors between words and tangles, the cyclic category with its two
//! embeddings, the pushout relabeling, and the relation suite.

use std::fmt;

use serde::Serialize;

use crate::analysis::{decompose, irreducible_factorization, rel_star, RelStar};
use crate::object::BoundaryObject;
use crate::tangle::{generator, AtlMorphism, GeneratorKind};
use crate::word::{standard_form, Letter, StandardForm, Word};

/// Source of tangle images for single generators.
pub trait GeneratorTable {
    fn image(&self, letter: Letter, source: BoundaryObject) -> AtlMorphism;
}

/// The genuine generator tangles.
#[derive(Clone, Copy, Debug, Default)]
pub struct Tangles;

impl GeneratorTable for Tangles {
    fn image(&self, letter: Letter, source: BoundaryObject) -> AtlMorphism {
        let (kind, index) = match letter {
            Letter::Alpha(i) => (GeneratorKind::A, i as i64),
            Letter::Beta(i) => (GeneratorKind::B, i as i64),
            Letter::Tau => (GeneratorKind::T, 0),
            Letter::DeltaPlus => (GeneratorKind::DeltaPlus, 0),
            Letter::DeltaMinus => (GeneratorKind::DeltaMinus, 0),
        };
        generator(kind, index, source).expect("typed letters have tangle images")
    }
}

/// Evaluate a word with a given generator table.
pub fn eval_with<G: GeneratorTable + ?Sized>(table: &G, w: &Word) -> AtlMorphism {
    let mut acc = AtlMorphism::identity(w.source());
    for g in w.generators().into_iter().rev() {
        acc = table
            .image(g.letter, g.source)
            .compose(&acc)
            .expect("typed words compose");
    }
    acc
}

/// The functor from words to tangles.
pub fn eval_f(w: &Word) -> AtlMorphism {
    eval_with(&Tangles, w)
}

fn alpha_word(source: BoundaryObject, pieces: &[Vec<u32>]) -> Word {
    let letters = pieces
        .iter()
        .flatten()
        .map(|&i| Letter::Alpha(i))
        .collect();
    Word::new(source, letters).expect("factorization yields a composable word")
}

/// The functor from tangles to words, landing in standard form.
pub fn read_g(m: &AtlMorphism) -> StandardForm {
    let (first, second, third) = decompose(m);
    let w1 = alpha_word(
        first.inner(),
        &irreducible_factorization(&first).expect("first factor is Type I"),
    );
    let w2 = match rel_star(&second) {
        RelStar::Through(r) => {
            Word::new(second.inner(), vec![Letter::Tau; r as usize]).expect("rotation")
        }
        RelStar::Loops { k, .. } => {
            let mut letters = Vec::new();
            let mut cur = second.inner();
            for _ in 0..k {
                let sigma = match cur {
                    BoundaryObject::ZeroPlus => [Letter::Alpha(2), Letter::Beta(1)],
                    _ => [Letter::Alpha(1), Letter::Beta(2)],
                };
                letters.splice(0..0, sigma);
                cur = if cur == BoundaryObject::ZeroPlus {
                    BoundaryObject::ZeroMinus
                } else {
                    BoundaryObject::ZeroPlus
                };
            }
            Word::new(second.inner(), letters).expect("loop chain")
        }
    };
    let dual = third.involute();
    let w3 = alpha_word(
        dual.inner(),
        &irreducible_factorization(&dual).expect("dual of third factor is Type I"),
    )
    .involute();
    StandardForm {
        c_plus: m.c_plus,
        c_minus: m.c_minus,
        w3,
        w2,
        w1,
    }
}

// ---------------------------------------------------------------------------
// Cyclic category.

/// Letters of the cyclic category: faces, degeneracies (with `S(-1)` the
/// extra degeneracy) and the cyclic operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CyclicLetter {
    D(u32),
    S(i32),
    T,
}

impl CyclicLetter {
    pub fn target(self, degree: u32) -> Option<u32> {
        match self {
            CyclicLetter::D(i) => (degree >= 1 && i <= degree).then(|| degree - 1),
            CyclicLetter::S(i) => (i >= -1 && i <= degree as i32).then_some(degree + 1),
            CyclicLetter::T => Some(degree),
        }
    }
}

impl fmt::Display for CyclicLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclicLetter::D(i) => write!(f, "d{i}"),
            CyclicLetter::S(i) => write!(f, "s{i}"),
            CyclicLetter::T => write!(f, "t"),
        }
    }
}

/// A composable cyclic word, leftmost applied last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    source: u32,
    letters: Vec<CyclicLetter>,
}

fn cyclic_sources(source: u32, letters: &[CyclicLetter]) -> Option<Vec<u32>> {
    let mut out = vec![source; letters.len()];
    let mut cur = source;
    for (k, l) in letters.iter().enumerate().rev() {
        out[k] = cur;
        cur = l.target(cur)?;
    }
    Some(out)
}

impl CyclicWord {
    pub fn new(source: u32, letters: Vec<CyclicLetter>) -> Option<CyclicWord> {
        cyclic_sources(source, &letters)?;
        Some(CyclicWord { source, letters })
    }

    pub fn source(&self) -> u32 {
        self.source
    }

    pub fn target(&self) -> u32 {
        self.letters
            .iter()
            .rev()
            .try_fold(self.source, |d, l| l.target(d))
            .expect("composable")
    }

    pub fn letters(&self) -> &[CyclicLetter] {
        &self.letters
    }

    pub fn sources(&self) -> Vec<u32> {
        cyclic_sources(self.source, &self.letters).expect("composable")
    }

    pub fn then(&self, later: &CyclicWord) -> Option<CyclicWord> {
        if later.source != self.target() {
            return None;
        }
        let mut letters = later.letters.clone();
        letters.extend_from_slice(&self.letters);
        Some(CyclicWord {
            source: self.source,
            letters,
        })
    }

    /// Parse terms `dN`, `sN` (`N ≥ -1`), `t`, `id`.
    pub fn parse(text: &str, degree: u32) -> Option<CyclicWord> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let l = match tok {
                "t" => CyclicLetter::T,
                "id" => continue,
                _ if tok.starts_with('d') => CyclicLetter::D(tok[1..].parse().ok()?),
                _ if tok.starts_with('s') => CyclicLetter::S(tok[1..].parse().ok()?),
                _ => return None,
            };
            letters.push(l);
        }
        CyclicWord::new(degree, letters)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `w3 ∘ t^rotation ∘ w1` with `w1` faces increasing left to right and `w3`
/// degeneracies decreasing left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicStandardForm {
    pub w3: CyclicWord,
    pub w2: CyclicWord,
    pub w1: CyclicWord,
}

impl CyclicStandardForm {
    pub fn to_word(&self) -> CyclicWord {
        self.w1
            .then(&self.w2)
            .and_then(|w| w.then(&self.w3))
            .expect("parts compose")
    }
}

fn sort_degeneracies(s: &mut [i32]) {
    loop {
        let hit = (0..s.len().saturating_sub(1)).find(|&k| s[k] <= s[k + 1]);
        match hit {
            None => return,
            Some(k) => {
                let (i, j) = (s[k], s[k + 1]);
                s[k] = j + 1;
                s[k + 1] = i;
            }
        }
    }
}

fn sort_faces(d: &mut [u32]) {
    loop {
        let hit = (0..d.len().saturating_sub(1)).find(|&k| d[k] >= d[k + 1]);
        match hit {
            None => return,
            Some(k) => {
                let (a, b) = (d[k], d[k + 1]);
                d[k] = b;
                d[k + 1] = a + 1;
            }
        }
    }
}

struct CyclicNormalizer {
    source: u32,
    faces: Vec<u32>,
    rotation: u32,
    degens: Vec<i32>,
}

impl CyclicNormalizer {
    fn mid(&self) -> u32 {
        self.source - self.faces.len() as u32
    }

    fn degen_sources(&self) -> Vec<u32> {
        let mut out = vec![0; self.degens.len()];
        let mut cur = self.mid();
        for k in (0..self.degens.len()).rev() {
            out[k] = cur;
            cur += 1;
        }
        out
    }

    /// Push a `t` sitting just left of `degens[from..]` to the right.
    fn push_t(&mut self, from: usize) {
        let srcs = self.degen_sources();
        for k in from..self.degens.len() {
            let p = srcs[k] as i32;
            let j = self.degens[k];
            if j == p {
                self.degens[k] = -1;
                sort_degeneracies(&mut self.degens);
                return;
            }
            self.degens[k] = j + 1;
        }
        self.rotation = (self.rotation + 1) % (self.mid() + 1);
    }

    fn apply(&mut self, l: CyclicLetter) {
        match l {
            CyclicLetter::S(i) => {
                self.degens.insert(0, i);
                sort_degeneracies(&mut self.degens);
            }
            CyclicLetter::T => self.push_t(0),
            CyclicLetter::D(i) => self.apply_face(i),
        }
    }

    fn apply_face(&mut self, mut i: u32) {
        let srcs = self.degen_sources();
        let mut passed = Vec::new();
        for k in 0..self.degens.len() {
            let j = self.degens[k];
            let p = srcs[k];
            let rest: Vec<i32> = self.degens[k + 1..].to_vec();
            if j >= 0 {
                let ju = j as u32;
                if i < ju {
                    passed.push(j - 1);
                    continue;
                } else if i > ju + 1 {
                    passed.push(j);
                    i -= 1;
                    continue;
                }
                passed.extend(rest);
                self.degens = passed;
                return;
            }
            if i == 0 {
                passed.extend(rest);
                self.degens = passed;
                return;
            } else if i <= p {
                passed.push(-1);
                i -= 1;
                continue;
            }
            let at = passed.len();
            passed.extend(rest);
            self.degens = passed;
            self.push_t(at);
            return;
        }
        self.degens = passed;
        let p = self.mid();
        let mut survivors = 0;
        for _ in 0..self.rotation {
            if i >= 1 {
                i -= 1;
                survivors += 1;
            } else {
                i = p;
            }
        }
        self.faces.insert(0, i);
        sort_faces(&mut self.faces);
        self.rotation = survivors % p;
    }
}

/// Standard form in the cyclic category.
pub fn cyclic_standard_form(w: &CyclicWord) -> CyclicStandardForm {
    let mut st = CyclicNormalizer {
        source: w.source(),
        faces: Vec::new(),
        rotation: 0,
        degens: Vec::new(),
    };
    for &l in w.letters().iter().rev() {
        st.apply(l);
    }
    let mid = st.mid();
    let w1 = CyclicWord::new(st.source, st.faces.iter().map(|&i| CyclicLetter::D(i)).collect())
        .expect("faces compose");
    let w2 = CyclicWord::new(mid, vec![CyclicLetter::T; st.rotation as usize]).expect("rotation");
    let w3 = CyclicWord::new(mid, st.degens.iter().map(|&i| CyclicLetter::S(i)).collect())
        .expect("degeneracies compose");
    CyclicStandardForm { w3, w2, w1 }
}

/// Which of the two embeddings of the cyclic category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Embedding {
    Plus,
    Minus,
}

/// Image of a cyclic word under one of the embeddings; `[n] ↦ [n+1]`.
pub fn embed(which: Embedding, w: &CyclicWord) -> Word {
    let off = match which {
        Embedding::Plus => 0,
        Embedding::Minus => 1,
    };
    let mut letters = Vec::new();
    for (l, d) in w.letters().iter().zip(w.sources()) {
        match *l {
            CyclicLetter::D(j) => letters.push(Letter::Alpha(2 * j + 1 + off)),
            CyclicLetter::S(-1) => {
                letters.push(Letter::Tau);
                letters.push(Letter::Beta(2 * d + 2 + off));
            }
            CyclicLetter::S(j) => letters.push(Letter::Beta(2 * j as u32 + 2 + off)),
            CyclicLetter::T => letters.push(Letter::Tau),
        }
    }
    Word::new(BoundaryObject::N(w.source() + 1), letters).expect("embedding preserves typing")
}

pub fn embed_hplus(w: &CyclicWord) -> Word {
    embed(Embedding::Plus, w)
}

pub fn embed_hminus(w: &CyclicWord) -> Word {
    embed(Embedding::Minus, w)
}

// ---------------------------------------------------------------------------
// Pushout presentation.

/// Objects of the pushout presentation: `[+]`, `[−]` and `[p]`, `p ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QObject {
    Plus,
    Minus,
    Deg(u32),
}

impl QObject {
    pub fn from_object(o: BoundaryObject) -> QObject {
        match o {
            BoundaryObject::ZeroPlus => QObject::Plus,
            BoundaryObject::ZeroMinus => QObject::Minus,
            BoundaryObject::N(n) => QObject::Deg(n - 1),
        }
    }

    pub fn to_object(self) -> BoundaryObject {
        match self {
            QObject::Plus => BoundaryObject::ZeroPlus,
            QObject::Minus => BoundaryObject::ZeroMinus,
            QObject::Deg(p) => BoundaryObject::N(p + 1),
        }
    }
}

impl fmt::Display for QObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QObject::Plus => write!(f, "+"),
            QObject::Minus => write!(f, "-"),
            QObject::Deg(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QLetter {
    D(i32),
    SStar(i32),
    DStar(i32),
    S(i32),
    T,
    DeltaPlus,
    DeltaMinus,
}

impl fmt::Display for QLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QLetter::D(i) => write!(f, "d{i}"),
            QLetter::SStar(i) => write!(f, "s*{i}"),
            QLetter::DStar(i) => write!(f, "d*{i}"),
            QLetter::S(i) => write!(f, "s{i}"),
            QLetter::T => write!(f, "t"),
            QLetter::DeltaPlus => write!(f, "d+"),
            QLetter::DeltaMinus => write!(f, "d-"),
        }
    }
}

/// A word of the pushout presentation with its source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QWord {
    pub source: QObject,
    pub letters: Vec<QLetter>,
}

impl fmt::Display for QWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn psi_letter(l: Letter, source: BoundaryObject) -> QLetter {
    use BoundaryObject::{ZeroMinus, ZeroPlus, N};
    match (l, source) {
        (Letter::Alpha(1), N(1)) => QLetter::D(0),
        (Letter::Alpha(2), N(1)) => QLetter::SStar(-1),
        (Letter::Alpha(i), _) if i % 2 == 1 => QLetter::SStar((i as i32 - 3) / 2),
        (Letter::Alpha(i), _) => QLetter::D((i as i32 - 2) / 2),
        (Letter::Beta(1), ZeroPlus) => QLetter::S(-1),
        (Letter::Beta(2), ZeroMinus) => QLetter::DStar(0),
        (Letter::Beta(i), _) if i % 2 == 1 => QLetter::S((i as i32 - 3) / 2),
        (Letter::Beta(i), _) => QLetter::DStar((i as i32 - 2) / 2),
        (Letter::Tau, _) => QLetter::T,
        (Letter::DeltaPlus, _) => QLetter::DeltaPlus,
        (Letter::DeltaMinus, _) => QLetter::DeltaMinus,
    }
}

fn psi_inverse_letter(l: QLetter, source: QObject) -> Option<Letter> {
    let at_bottom = source == QObject::Deg(0);
    let idx = |x: i32| u32::try_from(x).ok();
    Some(match l {
        QLetter::D(0) if at_bottom => Letter::Alpha(1),
        QLetter::SStar(-1) if at_bottom => Letter::Alpha(2),
        QLetter::D(i) => Letter::Alpha(idx(2 * i + 2)?),
        QLetter::SStar(i) => Letter::Alpha(idx(2 * i + 3)?),
        QLetter::S(-1) if source == QObject::Plus => Letter::Beta(1),
        QLetter::DStar(0) if source == QObject::Minus => Letter::Beta(2),
        QLetter::S(i) => Letter::Beta(idx(2 * i + 3)?),
        QLetter::DStar(i) => Letter::Beta(idx(2 * i + 2)?),
        QLetter::T => Letter::Tau,
        QLetter::DeltaPlus => Letter::DeltaPlus,
        QLetter::DeltaMinus => Letter::DeltaMinus,
    })
}

/// Relabel a word into the pushout presentation.
pub fn to_pushout_presentation(w: &Word) -> QWord {
    QWord {
        source: QObject::from_object(w.source()),
        letters: w
            .generators()
            .iter()
            .map(|g| psi_letter(g.letter, g.source))
            .collect(),
    }
}

/// Inverse relabeling; `None` if the letters are not typed.
pub fn from_pushout_presentation(q: &QWord) -> Option<Word> {
    let mut out = Vec::with_capacity(q.letters.len());
    let mut cur = q.source.to_object();
    for &l in q.letters.iter().rev() {
        let letter = psi_inverse_letter(l, QObject::from_object(cur))?;
        cur = letter.target(cur)?;
        out.push(letter);
    }
    out.reverse();
    Word::new(q.source.to_object(), out).ok()
}

// ---------------------------------------------------------------------------
// Relation suite.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub instance: String,
    pub status: Status,
}

/// One instance of a relation between words in the presented category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub relation: String,
    pub at: BoundaryObject,
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
}

struct Suite<'a, G: GeneratorTable + ?Sized> {
    table: &'a G,
    evaluate: bool,
    instances: Vec<RelationInstance>,
    out: Vec<RelationCheck>,
}

impl<G: GeneratorTable + ?Sized> Suite<'_, G> {
    fn check(&mut self, relation: &str, at: BoundaryObject, lhs: &[Letter], rhs: &[Letter]) {
        let (Ok(l), Ok(r)) = (Word::new(at, lhs.to_vec()), Word::new(at, rhs.to_vec())) else {
            self.out.push(RelationCheck {
                relation: relation.into(),
                instance: format!("ill-typed instance at {at}"),
                status: Status::Fail,
            });
            return;
        };
        self.instances.push(RelationInstance {
            relation: relation.into(),
            at,
            lhs: lhs.to_vec(),
            rhs: rhs.to_vec(),
        });
        if !self.evaluate {
            return;
        }
        let ok = l.target() == r.target() && eval_with(self.table, &l) == eval_with(self.table, &r);
        self.out.push(RelationCheck {
            relation: relation.into(),
            instance: format!("{l} = {r} at {at}"),
            status: if ok { Status::Pass } else { Status::Fail },
        });
    }

    fn check_words(&mut self, relation: &str, l: &Word, r: &Word, label: String) {
        let ok = l.source() == r.source()
            && l.target() == r.target()
            && eval_with(self.table, l) == eval_with(self.table, r);
        self.out.push(RelationCheck {
            relation: relation.into(),
            instance: label,
            status: if ok { Status::Pass } else { Status::Fail },
        });
    }
}

fn objects_up_to(max_n: u32) -> Vec<BoundaryObject> {
    let mut v = vec![BoundaryObject::ZeroPlus, BoundaryObject::ZeroMinus];
    v.extend((1..=max_n).map(BoundaryObject::N));
    v
}

fn alpha_range(at: BoundaryObject) -> Vec<u32> {
    match at {
        BoundaryObject::N(n) => (1..=2 * n).collect(),
        _ => Vec::new(),
    }
}

fn beta_range(at: BoundaryObject) -> Vec<u32> {
    match at {
        BoundaryObject::ZeroPlus => vec![1],
        BoundaryObject::ZeroMinus => vec![2],
        BoundaryObject::N(n) => (1..=2 * n + 2).collect(),
    }
}

use Letter::{Alpha as A, Beta as B, DeltaMinus as DM, DeltaPlus as DP, Tau as T};

fn presentation_relations<G: GeneratorTable + ?Sized>(s: &mut Suite<'_, G>, max_n: u32) {
    use BoundaryObject::N;
    for n in 2..=max_n {
        let at = N(n);
        for j in 1..=2 * n {
            for i in alpha_range(N(n - 1)) {
                if i + 1 < j && (i, j) != (1, 2 * n) {
                    s.check("(1)", at, &[A(i), A(j)], &[A(j - 2), A(i)]);
                }
            }
        }
    }
    for n in 1..max_n {
        let at = N(n + 1);
        for i in 1..=2 * n + 2 {
            for j in alpha_range(N(n)) {
                if j >= i && !(j == 2 * n && i == 1) {
                    s.check("(1')", at, &[A(j), A(i)], &[A(i), A(j + 2)]);
                }
            }
        }
    }
    for at in objects_up_to(max_n.saturating_sub(1)) {
        for j in beta_range(at) {
            let mid = N(at.rank() + 1);
            for i in beta_range(mid) {
                let excluded = matches!(at, N(n) if (i, j) == (1, 2 * n + 2));
                if i <= j && !excluded && B(i).target(at).is_some() {
                    s.check("(2)", at, &[B(i), B(j)], &[B(j + 2), B(i)]);
                }
            }
        }
    }
    for n in 1..=max_n {
        s.check("(3)", N(n), &vec![T; n as usize], &[]);
    }
    for n in 2..=max_n {
        for i in 3..=2 * n {
            s.check("(4)", N(n), &[A(i), T], &[T, A(i - 2)]);
        }
    }
    for n in 1..max_n {
        for i in 3..=2 * n + 2 {
            s.check("(5)", N(n), &[B(i), T], &[T, B(i - 2)]);
        }
    }
    for at in objects_up_to(max_n.saturating_sub(1)) {
        let mid = N(at.rank() + 1);
        for j in beta_range(at) {
            for i in alpha_range(mid) {
                let lhs = [A(i), B(j)];
                let rhs: Vec<Letter> = match at {
                    N(n) => {
                        if (i, j) == (1, 2 * n + 2) {
                            vec![T; (n - 1) as usize]
                        } else if (i, j) == (2 * n + 2, 1) {
                            vec![T]
                        } else if i + 1 < j {
                            vec![B(j - 2), A(i)]
                        } else if i == j {
                            vec![if i % 2 == 1 { DP } else { DM }]
                        } else if i == j + 1 || i + 1 == j {
                            vec![]
                        } else {
                            vec![B(j), A(i - 2)]
                        }
                    }
                    _ => match (i, j) {
                        (1, 1) => vec![DP],
                        (2, 2) => vec![DM],
                        _ => continue,
                    },
                };
                s.check("(6)", at, &lhs, &rhs);
            }
        }
    }
    for at in objects_up_to(max_n) {
        let mut gens: Vec<Letter> = alpha_range(at).into_iter().map(A).collect();
        if at.rank() < max_n {
            gens.extend(beta_range(at).into_iter().map(B));
        }
        if !at.is_zero() {
            gens.push(T);
        }
        for g in gens {
            for d in [DP, DM] {
                s.check("(7)", at, &[d, g], &[g, d]);
            }
        }
    }
}

fn additional_relations<G: GeneratorTable + ?Sized>(s: &mut Suite<'_, G>, max_n: u32) {
    use BoundaryObject::N;
    for n in 2..=max_n {
        s.check("additional (1)", N(n), &[A(1), T], &[A(2 * n - 1)]);
        s.check("additional (1)", N(n), &[A(2), T], &[A(2 * n)]);
    }
    for n in 1..max_n {
        s.check("additional (2)", N(n), &[T, B(2 * n + 1)], &[B(1)]);
        s.check("additional (2)", N(n), &[T, B(2 * n + 2)], &[B(2)]);
        s.check("additional (3)", N(n), &[B(1), T], &[T, T, B(2 * n - 1)]);
        s.check("additional (3)", N(n), &[B(2), T], &[T, T, B(2 * n)]);
    }
}

fn cyc(degree: u32, letters: &[CyclicLetter]) -> Option<CyclicWord> {
    CyclicWord::new(degree, letters.to_vec())
}

fn cyclic_relations<G: GeneratorTable + ?Sized>(s: &mut Suite<'_, G>, max_n: u32) {
    use CyclicLetter::{D, S};
    let tt = CyclicLetter::T;
    let mut rels: Vec<(&str, CyclicWord, CyclicWord)> = Vec::new();
    let mut add = |name: &'static str, deg: u32, l: &[CyclicLetter], r: &[CyclicLetter]| {
        if let (Some(a), Some(b)) = (cyc(deg, l), cyc(deg, r)) {
            rels.push((name, a, b));
        } else {
            panic!("ill-typed cyclic relation {name} at {deg}: {l:?} {r:?}");
        }
    };
    // Degrees whose images stay within objects up to max_n.
    let top = max_n.saturating_sub(1);
    for n in 0..=top {
        for j in (0..=n).filter(|_| n >= 2) {
            for i in 0..j {
                add("cyclic (1)", n, &[D(i), D(j)], &[D(j - 1), D(i)]);
            }
        }
        if n + 2 <= max_n {
            for j in 0..=n as i32 {
                for i in 0..=j {
                    add("cyclic (2)", n, &[S(i), S(j)], &[S(j + 1), S(i)]);
                }
            }
        }
        if n + 2 <= max_n {
            for j in 0..=n as i32 {
                for i in 0..=n + 1 {
                    let ii = i as i32;
                    let r: Vec<CyclicLetter> = if ii < j {
                        vec![S(j - 1), D(i)]
                    } else if ii == j || ii == j + 1 {
                        vec![]
                    } else {
                        vec![S(j), D(i - 1)]
                    };
                    add("cyclic (3)", n, &[D(i), S(j)], &r);
                }
            }
        }
        add("cyclic (4)", n, &vec![tt; n as usize + 1], &[]);
        for i in 1..=n {
            add("cyclic (5)", n, &[D(i), tt], &[tt, D(i - 1)]);
        }
        if n >= 1 {
            add("cyclic (5) wrap", n, &[D(0), tt], &[D(n)]);
        }
        if n + 2 <= max_n {
            for i in 1..=n as i32 {
                add("cyclic (6)", n, &[S(i), tt], &[tt, S(i - 1)]);
            }
            add("cyclic (6) wrap", n, &[S(0), tt], &[tt, tt, S(n as i32)]);
            add("extra degeneracy", n, &[S(-1)], &[tt, S(n as i32)]);
            add("extra degeneracy (3')", n, &[S(0), tt], &[tt, S(-1)]);
            for i in 0..=n {
                let r: Vec<CyclicLetter> = if i == 0 {
                    vec![]
                } else {
                    vec![S(-1), D(i - 1)]
                };
                if n >= 1 || i == 0 {
                    add("extra degeneracy (2)", n, &[D(i), S(-1)], &r);
                }
            }
            add("extra degeneracy (2)", n, &[D(n + 1), S(-1)], &[tt]);
        }
        if n + 3 <= max_n {
            for i in -1..=n as i32 {
                add("extra degeneracy (1)", n, &[S(-1), S(i)], &[S(i + 1), S(-1)]);
            }
        }
    }
    for (name, l, r) in rels {
        for which in [Embedding::Plus, Embedding::Minus] {
            let tag = match which {
                Embedding::Plus => "H+",
                Embedding::Minus => "H-",
            };
            let (el, er) = (embed(which, &l), embed(which, &r));
            s.check_words(
                &format!("{name} under {tag}"),
                &el,
                &er,
                format!("{l} = {r} at degree {}", l.source()),
            );
        }
    }
}

fn pushout_relations<G: GeneratorTable + ?Sized>(s: &mut Suite<'_, G>, max_n: u32) {
    // Coupling relations between the two cyclic families, away from the
    // augmented bottom objects.
    let mut rels: Vec<(&str, QWord, QWord)> = Vec::new();
    let q = |p: u32, letters: Vec<QLetter>| QWord {
        source: QObject::Deg(p),
        letters,
    };
    for p in 2..max_n {
        // d_i s*_j: s*_j at degree p, d_i at degree p-1.
        for j in -1..p as i32 {
            for i in 0..p as i32 {
                if i < j {
                    rels.push(("coupling (1)", q(p, vec![QLetter::D(i), QLetter::SStar(j)]), q(p, vec![QLetter::SStar(j - 1), QLetter::D(i)])));
                } else if i > j && !(i == p as i32 - 1 && j == -1) {
                    rels.push(("coupling (1)", q(p, vec![QLetter::D(i), QLetter::SStar(j)]), q(p, vec![QLetter::SStar(j), QLetter::D(i + 1)])));
                }
            }
        }
    }
    for p in 1..max_n.saturating_sub(1) {
        // d_i d*_j: d*_j at degree p, d_i at degree p+1.
        for j in 0..=p as i32 + 1 {
            for i in 0..=p as i32 + 1 {
                let rhs = if i < j {
                    vec![QLetter::DStar(j - 1), QLetter::D(i)]
                } else if i == j {
                    vec![QLetter::DeltaMinus]
                } else {
                    vec![QLetter::DStar(j), QLetter::D(i - 1)]
                };
                rels.push(("coupling (2)", q(p, vec![QLetter::D(i), QLetter::DStar(j)]), q(p, rhs)));
            }
        }
        // s*_i s_j: s_j at degree p, s*_i at degree p+1.
        for j in -1..=p as i32 {
            for i in -1..=p as i32 {
                if i == -1 && j == p as i32 {
                    continue;
                }
                let rhs = if i < j {
                    vec![QLetter::S(j - 1), QLetter::SStar(i)]
                } else if i == j {
                    vec![QLetter::DeltaPlus]
                } else {
                    vec![QLetter::S(j), QLetter::SStar(i - 1)]
                };
                rels.push(("coupling (3)", q(p, vec![QLetter::SStar(i), QLetter::S(j)]), q(p, rhs)));
            }
        }
    }
    for (name, l, r) in rels {
        let label = format!("{l} = {r} at degree {}", l.source);
        match (from_pushout_presentation(&l), from_pushout_presentation(&r)) {
            (Some(a), Some(b)) => s.check_words(name, &a, &b, label),
            _ => s.out.push(RelationCheck {
                relation: name.into(),
                instance: format!("ill-typed: {label}"),
                status: Status::Fail,
            }),
        }
    }
}

/// Check every relation family on objects up to `[max_n]` with a given table.
pub fn verify_relations_with<G: GeneratorTable + ?Sized>(table: &G, max_n: u32) -> Vec<RelationCheck> {
    let mut s = Suite {
        table,
        evaluate: true,
        instances: Vec::new(),
        out: Vec::new(),
    };
    presentation_relations(&mut s, max_n);
    additional_relations(&mut s, max_n);
    cyclic_relations(&mut s, max_n);
    pushout_relations(&mut s, max_n);
    s.out
}

/// Instances of the defining and additional relations on objects up to `[max_n]`.
pub fn presentation_instances(max_n: u32) -> Vec<RelationInstance> {
    let mut s = Suite {
        table: &Tangles,
        evaluate: false,
        instances: Vec::new(),
        out: Vec::new(),
    };
    presentation_relations(&mut s, max_n);
    additional_relations(&mut s, max_n);
    s.instances
}

/// Check every relation family on objects up to `[max_n]`.
pub fn verify_relations(max_n: u32) -> Vec<RelationCheck> {
    verify_relations_with(&Tangles, max_n)
}

/// Normalizing through the tangle category: `G ∘ F`.
pub fn normalize_via_tangles(w: &Word) -> StandardForm {
    read_g(&eval_f(w))
}

/// Check that the rewriting normalizer agrees with `G ∘ F` on `w`.
pub fn normalizers_agree(w: &Word) -> bool {
    standard_form(w) == normalize_via_tangles(w)
}
