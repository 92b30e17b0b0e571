mod common;

use anntl::functors::{
    cyclic_standard_form, embed, eval_f, from_pushout_presentation, read_g,
    to_pushout_presentation, verify_relations, verify_relations_with, CyclicLetter, CyclicWord,
    Embedding, GeneratorTable, Status, Tangles,
};
use anntl::word::{standard_form, Letter, Word};
use anntl::{AtlMorphism, BoundaryObject};
use rayon::prelude::*;
use std::collections::{HashMap, HashSet};

#[test]
fn tangle_readback_agrees_with_rewriting() {
    let words: Vec<Word> = common::objects(3)
        .into_iter()
        .flat_map(|o| common::words_from(o, 5, 3, false))
        .collect();
    let bad: Vec<String> = words
        .par_iter()
        .filter(|w| read_g(&eval_f(w)) != standard_form(w))
        .map(|w| format!("{w} at {}", w.source()))
        .collect();
    assert!(bad.is_empty(), "{} mismatches, e.g. {:?}", bad.len(), &bad[..bad.len().min(5)]);
}

#[test]
fn readback_is_a_section() {
    let words: Vec<Word> = common::objects(3)
        .into_iter()
        .flat_map(|o| common::words_from(o, 4, 3, true))
        .collect();
    for w in &words {
        let m = eval_f(w);
        assert_eq!(eval_f(&read_g(&m).to_word()), m, "{w}");
    }
}

#[test]
fn standard_forms_are_fixed_points() {
    for o in common::objects(3) {
        for w in common::words_from(o, 4, 3, true) {
            let s = standard_form(&w);
            assert_eq!(standard_form(&s.to_word()), s, "{w}");
        }
    }
}

#[test]
fn relations_hold_up_to_rank_five() {
    let report = verify_relations(5);
    assert!(report.len() > 500);
    let failed: Vec<_> = report.iter().filter(|c| c.status == Status::Fail).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

struct SwappedTau;

impl GeneratorTable for SwappedTau {
    fn image(&self, letter: Letter, source: BoundaryObject) -> AtlMorphism {
        let l = match (letter, source) {
            (Letter::Alpha(1), BoundaryObject::N(n)) if n >= 2 => Letter::Alpha(3),
            (Letter::Alpha(3), BoundaryObject::N(n)) if n >= 2 => Letter::Alpha(1),
            _ => letter,
        };
        Tangles.image(l, source)
    }
}

#[test]
fn corrupted_generator_table_is_caught() {
    let report = verify_relations_with(&SwappedTau, 3);
    assert!(report.iter().any(|c| c.status == Status::Fail));
}

fn cyclic_words(degree: u32, len: usize, max_deg: u32) -> Vec<CyclicWord> {
    let mut out = vec![CyclicWord::new(degree, vec![]).unwrap()];
    let mut frontier = vec![(degree, Vec::<CyclicLetter>::new())];
    for _ in 0..len {
        let mut next = Vec::new();
        for (d, letters) in &frontier {
            let mut cands: Vec<CyclicLetter> = (0..=*d).map(CyclicLetter::D).collect();
            cands.extend((-1..=*d as i32).map(CyclicLetter::S));
            cands.push(CyclicLetter::T);
            for l in cands {
                let Some(t) = l.target(*d) else { continue };
                if t > max_deg {
                    continue;
                }
                let mut w = vec![l];
                w.extend_from_slice(letters);
                out.push(CyclicWord::new(degree, w.clone()).unwrap());
                next.push((t, w));
            }
        }
        frontier = next;
    }
    out
}

#[test]
fn cyclic_standard_form_detects_equality_through_both_embeddings() {
    for which in [Embedding::Plus, Embedding::Minus] {
        for d in 0..=2 {
            let mut by_form: HashMap<_, AtlMorphism> = HashMap::new();
            let mut by_tangle: HashMap<(u32, AtlMorphism), _> = HashMap::new();
            for w in cyclic_words(d, 4, 3) {
                let form = cyclic_standard_form(&w);
                let m = eval_f(&embed(which, &w));
                assert_eq!(eval_f(&embed(which, &form.to_word())), m, "{w}");
                if let Some(prev) = by_form.insert(form.clone(), m.clone()) {
                    assert_eq!(prev, m, "{w}");
                }
                if let Some(prev) = by_tangle.insert((w.target(), m), form.clone()) {
                    assert_eq!(prev, form, "{w}");
                }
            }
        }
    }
}

#[test]
fn cyclic_forms_biject_with_tangle_images() {
    for p in 0..=2u32 {
        let words = cyclic_words(p, 4, 3);
        let forms: HashSet<_> = words.iter().map(cyclic_standard_form).collect();
        let tangles: HashSet<_> = words
            .iter()
            .map(|w| eval_f(&embed(Embedding::Plus, w)))
            .collect();
        assert_eq!(forms.len(), tangles.len(), "degree {p}");
    }
}

#[test]
fn pushout_relabeling_round_trips() {
    for o in common::objects(3) {
        for w in common::words_from(o, 3, 3, true) {
            let q = to_pushout_presentation(&w);
            assert_eq!(from_pushout_presentation(&q).as_ref(), Some(&w));
        }
    }
}
