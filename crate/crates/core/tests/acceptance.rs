//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::HashSet;
use std::time::Instant;

use anntl::functors::{eval_f, read_g, verify_relations, Status};
use anntl::homology::{parse_scalar, tl_basis, AnnularModuleSpec, HomologyKind, Ring, TlModule};
use anntl::linalg::AbGroup;
use anntl::word::{standard_form, Word};
use anntl::{AtlMorphism, BoundaryObject};
use rand::{rngs::StdRng, Rng, SeedableRng};
use rayon::prelude::*;

struct Outcome {
    ok: bool,
    detail: String,
}

fn run(name: &str, f: impl FnOnce() -> Outcome, failures: &mut usize) {
    let start = Instant::now();
    let out = f();
    let tag = if out.ok { "PASS" } else { "FAIL" };
    if !out.ok {
        *failures += 1;
    }
    println!("{tag} {name}: {} [{:.2?}]", out.detail, start.elapsed());
}

fn compare(table: &anntl::homology::HomologyTable, expect: &[(u32, AbGroup)]) -> Vec<String> {
    expect
        .iter()
        .filter(|(d, g)| table.get(*d) != Some(g))
        .map(|(d, g)| format!("degree {d}: got {:?}, want {g}", table.get(*d).map(|x| x.to_string())))
        .collect()
}

fn hochschild_tables() -> Outcome {
    let m = TlModule::new(AnnularModuleSpec::tl_integral_zero());
    let t = m.homology(HomologyKind::ReducedHochschild(anntl::functors::Embedding::Plus), 7).unwrap();
    let expect = [
        (0, AbGroup::free(1)),
        (1, AbGroup::free(1)),
        (2, AbGroup::new(0, &[2])),
        (3, AbGroup::new(0, &[2])),
        (4, AbGroup::new(0, &[6])),
        (5, AbGroup::new(0, &[6])),
        (6, AbGroup::new(0, &[2, 2])),
        (7, AbGroup::new(0, &[2, 2])),
    ];
    let mut bad = compare(&t, &expect);
    let full = m.homology(HomologyKind::Hochschild(anntl::functors::Embedding::Plus), 7).unwrap();
    bad.extend(compare(&full, &expect[2..]));
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            t.to_string().trim().replace('\n', "; ")
        } else {
            bad.join("; ")
        },
    }
}

fn cyclic_table() -> Outcome {
    let m = TlModule::new(AnnularModuleSpec::tl_integral_zero());
    let t = m.homology("hc+".parse().unwrap(), 6).unwrap();
    let expect = [
        (1, AbGroup::free(1)),
        (2, AbGroup::new(0, &[2])),
        (3, AbGroup::new(1, &[2])),
        (4, AbGroup::new(0, &[2, 6])),
        (5, AbGroup::new(1, &[2, 6])),
        (6, AbGroup::new(0, &[2, 2, 2, 6])),
    ];
    let bad = compare(&t, &expect);
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            t.to_string().trim().replace('\n', "; ")
        } else {
            bad.join("; ")
        },
    }
}

fn unit_coupling() -> Outcome {
    let three = parse_scalar("3").unwrap();
    let m = TlModule::new(AnnularModuleSpec::tl(Ring::Rationals, three.clone(), three).unwrap());
    let mut bad = Vec::new();
    for sign in ["+", "-"] {
        let red = m.homology(format!("hhred{sign}").parse().unwrap(), 6).unwrap();
        for (d, g) in &red.entries {
            if !g.is_trivial() {
                bad.push(format!("~HH{sign}_{d} = {g}"));
            }
        }
        let hc = m.homology(format!("hc{sign}").parse().unwrap(), 6).unwrap();
        for (d, g) in &hc.entries {
            let want = if d % 2 == 1 { AbGroup::free(1) } else { AbGroup::trivial() };
            if *g != want {
                bad.push(format!("HC{sign}_{d} = {g}"));
            }
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            "reduced HH± vanish in degrees 0..6; HC± = Q in odd, 0 in even degrees 1..6".into()
        } else {
            bad.join("; ")
        },
    }
}

fn relation_suite() -> Outcome {
    let start = Instant::now();
    let report = verify_relations(5);
    let elapsed = start.elapsed();
    let failed = report.iter().filter(|c| c.status == Status::Fail).count();
    let families: HashSet<&str> = report.iter().map(|c| c.relation.as_str()).collect();
    Outcome {
        ok: failed == 0 && elapsed.as_secs() < 60,
        detail: format!(
            "{} instances across {} families, {} failed",
            report.len(),
            families.len(),
            failed
        ),
    }
}

fn random_word(rng: &mut StdRng, max_n: u32, len: usize) -> Word {
    let objects = common::objects(max_n);
    let at = objects[rng.gen_range(0..objects.len())];
    let mut cur = at;
    let mut letters = Vec::new();
    for _ in 0..len {
        let options = common::letters_at(cur, max_n, true);
        let l = options[rng.gen_range(0..options.len())];
        cur = l.target(cur).unwrap();
        letters.insert(0, l);
    }
    Word::new(at, letters).unwrap()
}

fn isomorphism_round_trip() -> Outcome {
    // Every morphism reachable with at most six generators, by breadth-first
    // search on distinct tangles.
    let mut morphisms = 0usize;
    let mut failures = Vec::new();
    for at in common::objects(3) {
        let mut seen: HashSet<AtlMorphism> = HashSet::new();
        let mut frontier = vec![AtlMorphism::identity(at)];
        seen.insert(frontier[0].clone());
        for _ in 0..6 {
            let next: Vec<AtlMorphism> = frontier
                .par_iter()
                .flat_map_iter(|m| {
                    common::letters_at(m.target(), 3, true).into_iter().map(move |l| {
                        eval_f(&Word::new(m.target(), vec![l]).unwrap()).compose(m).unwrap()
                    })
                })
                .collect();
            frontier = next.into_iter().filter(|m| seen.insert(m.clone())).collect();
        }
        morphisms += seen.len();
        let all: Vec<&AtlMorphism> = seen.iter().collect();
        failures.extend(
            all.par_iter()
                .filter(|m| eval_f(&read_g(m).to_word()) != ***m)
                .map(|m| m.to_json())
                .collect::<Vec<_>>(),
        );
    }
    // Randomized longer words at larger objects.
    let mut rng = StdRng::seed_from_u64(20240601);
    let words: Vec<Word> = (0..10_000)
        .map(|_| {
            let len = rng.gen_range(7..=18);
            random_word(&mut rng, 5, len)
        })
        .collect();
    let random_bad = words
        .par_iter()
        .filter(|w| {
            let m = eval_f(w);
            let s = read_g(&m);
            eval_f(&s.to_word()) != m || s != standard_form(w)
        })
        .count();
    // Readback against the rewriting normalizer on every short word.
    let short: Vec<Word> = common::objects(3)
        .into_iter()
        .flat_map(|o| common::words_from(o, 5, 3, false))
        .collect();
    let short_bad = short
        .par_iter()
        .filter(|w| read_g(&eval_f(w)) != standard_form(w))
        .count();
    let ok = failures.is_empty() && random_bad == 0 && short_bad == 0;
    Outcome {
        ok,
        detail: format!(
            "F∘G = id on {morphisms} morphisms ({} failures) and 10000 random words ({random_bad} failures); \
             G∘F = normalizer on {} words ({short_bad} failures)",
            failures.len(),
            short.len()
        ),
    }
}

fn sign_identities() -> Outcome {
    let three = parse_scalar("3").unwrap();
    let modules = [
        ("TL(Z,0)", TlModule::new(AnnularModuleSpec::tl_integral_zero())),
        (
            "TL(Q,3)",
            TlModule::new(AnnularModuleSpec::tl(Ring::Rationals, three.clone(), three).unwrap()),
        ),
    ];
    let mut total = 0;
    let mut bad = Vec::new();
    for (name, m) in &modules {
        for c in m.verify_identities(6) {
            total += 1;
            if !c.holds {
                bad.push(format!("{name} {} {:?} at {}", c.identity, c.sign, c.degree));
            }
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{total} identity checks hold")
        } else {
            bad.join("; ")
        },
    }
}

fn catalan(n: usize) -> usize {
    let mut c = vec![1usize];
    for m in 0..n {
        c.push((0..=m).map(|i| c[i] * c[m - i]).sum());
    }
    c[n]
}

fn basis_counts() -> Outcome {
    let got: Vec<usize> = (1..=8).map(|n| tl_basis(BoundaryObject::N(n)).len()).collect();
    let want: Vec<usize> = (1..=8).map(catalan).collect();
    Outcome {
        ok: got == want,
        detail: format!("{got:?}"),
    }
}

fn main() {
    let mut failures = 0;
    run("reduced and unreduced Hochschild table of TL(Z,0)", hochschild_tables, &mut failures);
    run("cyclic homology table of TL(Z,0)", cyclic_table, &mut failures);
    run("unit coupling constants over Q", unit_coupling, &mut failures);
    run("relation suite up to [5]", relation_suite, &mut failures);
    run("isomorphism round trip", isomorphism_round_trip, &mut failures);
    run("homotopy and sign identities through degree 6", sign_identities, &mut failures);
    run("basis counts are Catalan numbers", basis_counts, &mut failures);
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
