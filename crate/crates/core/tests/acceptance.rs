//! Release gate for the workspace. Each test covers one acceptance item and
//! prints a `PASS` line with the measured wall time where a budget applies;
//! run with `cargo test --test acceptance -- --nocapture` to see them.
//!
//! Every pinned number was obtained from an independent computation
//! (activity counting, dual closures worked by hand, or the brute-force
//! oracles) before the engine reproduced it.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::{Duration, Instant};

use conormal_core::{
    activities, completion_avoiding_closure, completion_by_cocircuits, degree, delta_power,
    eradicates, extend_to_maximal, extended_nbc_biflag, fh_vectors, gamma_delta_power,
    gamma_from_level, gamma_step, gap_jump, greedy_completion, hvector_triple_check,
    load_matroid, logconcavity_check, nbc_bases, nbc_biflag, random_graphic_matroid,
    resistant_filter, set_activities, step_lemma_bruteforce, Biflag, DeltaWalk, ESet,
    ExhaustiveOptions, ExpansionTable, GammaPivot, Matroid, MonomialSum, Strategy,
};

fn corpus(name: &str) -> Matroid {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name);
    load_matroid(&path).expect("corpus file loads").0
}

fn pyramid() -> Matroid {
    corpus("pyramid.graph")
}

fn cube() -> Matroid {
    corpus("cube.graph")
}

fn triangle() -> Matroid {
    corpus("triangle.graph")
}

fn u24() -> Matroid {
    corpus("u24.bases")
}

fn set(els: &[u8]) -> ESet {
    els.iter().copied().collect()
}

fn labels(flag: &Biflag, ground: ESet) -> Vec<String> {
    flag.iter().map(|bf| bf.label(ground)).collect()
}

#[test]
fn reduced_broken_circuit_tables() {
    let m = pyramid();
    let start = Instant::now();
    let v = fh_vectors(&m).unwrap();
    let pyramid_time = start.elapsed();
    assert_eq!(v.rbc.f, [1, 7, 17, 14]);
    assert_eq!(v.rbc.h, [1, 4, 6, 3]);
    assert_eq!(v.beta(), 3);

    let m = cube();
    let start = Instant::now();
    let v = fh_vectors(&m).unwrap();
    let cube_time = start.elapsed();
    assert_eq!(v.rbc.f, [1, 11, 55, 159, 282, 290, 133]);
    assert_eq!(v.rbc.h, [1, 5, 15, 29, 40, 32, 11]);
    assert_eq!(v.beta(), 11);

    assert!(pyramid_time < Duration::from_secs(1), "pyramid took {pyramid_time:?}");
    assert!(cube_time < Duration::from_secs(30), "cube took {cube_time:?}");
    println!(
        "PASS reduced broken-circuit f/h tables: pyramid {pyramid_time:?} (budget 1s), \
         cube {cube_time:?} (budget 30s)"
    );
}

#[test]
fn pyramid_delta_census_and_top_monomials() {
    let m = pyramid();
    let start = Instant::now();
    let exp = delta_power(&m, 6).unwrap();
    let elapsed = start.elapsed();

    assert_eq!(exp.census.with_multiplicity, [1, 29, 352, 658, 383, 69, 3]);
    assert_eq!(exp.census.distinct, [1, 29, 333, 621, 370, 68, 3]);
    assert_eq!(exp.census.peak_frontier, 658);

    let ground = m.ground();
    let rendered: Vec<(String, u64)> =
        exp.monomials.iter().map(|(flag, mult)| (flag.label(ground), mult)).collect();
    assert_eq!(
        rendered,
        [
            ("x[6|E] x[56|E] x[4567|E] x[E|23467] x[E|347] x[E|7]".to_string(), 1),
            ("x[7|E] x[57|E] x[4567|E] x[E|23467] x[E|36] x[E|6]".to_string(), 1),
            ("x[7|E] x[67|E] x[4567|E] x[E|235] x[E|35] x[E|5]".to_string(), 1),
        ]
    );
    assert_eq!(degree(&m, &exp.monomials), Ok(3));

    assert!(elapsed < Duration::from_secs(5), "expansion took {elapsed:?}");
    println!("PASS pyramid δ⁶ census and top monomials: {elapsed:?} (budget 5s)");
}

/// Walks the full canonical expansion of `m` once and checks `γᵏ δ^{n−k−1}`
/// against the extended NBC biflags for every admissible `k`. Returns the
/// per-`k` totals, the census of the walk, and the wall time.
fn bijective_counts(m: &Matroid) -> (Vec<u64>, Vec<u64>, Duration) {
    let start = Instant::now();
    let r = m.rank_total() - 1;
    let mut walk = DeltaWalk::new(m).unwrap();
    let max_power = walk.max_power();
    let mut counts = vec![0u64; r + 1];
    let by_activity: Vec<BTreeSet<ESet>> = (0..=r)
        .map(|k| {
            nbc_bases(m)
                .into_iter()
                .filter(|rec| rec.internal_activity() == k + 1)
                .map(|rec| rec.basis)
                .collect()
        })
        .collect();
    loop {
        let power = walk.power();
        let k = max_power - power;
        if k <= r {
            let exp = gamma_from_level(m, k, walk.level(), &Strategy::TheoremPath).unwrap();
            assert!(exp.matches_extended, "k = {k}: survivors differ from extended biflags");
            assert!(
                exp.survivors.iter().all(|(_, mult)| mult == 1),
                "k = {k}: a survivor has multiplicity above one"
            );
            let cert_bases: BTreeSet<ESet> = exp.certificates.iter().map(|c| c.basis).collect();
            assert_eq!(cert_bases, by_activity[k], "k = {k}: certificate bases are off");
            assert_eq!(
                exp.certificates.len(),
                by_activity[k].len(),
                "k = {k}: duplicate certificates"
            );
            counts[k] = exp.survivors.total();
        }
        if power == max_power {
            break;
        }
        walk.advance().unwrap();
    }
    (counts, walk.census().with_multiplicity.clone(), start.elapsed())
}

#[test]
fn bijective_gamma_delta_verification() {
    let (counts, _, pyramid_time) = bijective_counts(&pyramid());
    assert_eq!(counts, [3, 6, 4, 1]);

    let (counts, census, cube_time) = bijective_counts(&cube());
    assert_eq!(counts, [11, 32, 40, 29, 15, 5, 1]);

    assert!(cube_time < Duration::from_secs(600), "cube took {cube_time:?}");
    println!(
        "PASS bijective γᵏδ^(n−k−1) verification: pyramid [3, 6, 4, 1] in {pyramid_time:?}; \
         cube [11, 32, 40, 29, 15, 5, 1] in {cube_time:?} (budget 10min), census {census:?}"
    );
}

#[test]
fn triple_h_vector_agreement() {
    let named = [
        (pyramid(), "pyramid".to_string()),
        (cube(), "cube".to_string()),
        (u24(), "u24".to_string()),
        (triangle(), "triangle".to_string()),
    ];
    let random = (0..20).map(|seed| (random_graphic_matroid(seed, 8), format!("seed {seed}")));
    for (m, name) in named.into_iter().chain(random) {
        let report = hvector_triple_check(&m, &name).unwrap();
        assert!(report.passed(), "{}", report.render());
    }
    println!(
        "PASS triple h-vector agreement: activities vs f→h vs expansion degree on \
         4 corpus + 20 random 8-element graphic matroids"
    );
}

#[test]
fn cube_golden_basis() {
    let m = cube();
    let ground = m.ground();
    let b = set(&[0, 1, 5, 6, 7, 8, 11]);

    let rec = activities(&m, b).unwrap();
    assert_eq!(rec.internally_active, set(&[0, 1, 6]));
    assert!(rec.externally_active.is_empty());

    let nbc = nbc_biflag(&m, b).unwrap();
    assert_eq!(nbc.arrivals, [11, 8, 7, 5, 3, 4, 9, 10]);
    assert_eq!(
        labels(&nbc.biflag, ground),
        ["b|E", "8b|E", "78b|E", "578b|E", "E|03469a", "E|469a", "E|69a", "E|a"]
    );

    let ext = extended_nbc_biflag(&m, b).unwrap();
    assert_eq!(ext.switch_index, 2);
    let inserted: Vec<String> = ext.inserted.iter().map(|bf| bf.label(ground)).collect();
    assert_eq!(inserted, ["5678b|E", "1256789ab|03469a"]);
    assert_eq!(ext.arrivals, [11, 8, 7, 5, 6, 1, 3, 4, 9, 10]);
    assert_eq!(
        labels(&ext.biflag, ground),
        [
            "b|E",
            "8b|E",
            "78b|E",
            "578b|E",
            "5678b|E",
            "1256789ab|03469a",
            "E|03469a",
            "E|469a",
            "E|69a",
            "E|a",
        ]
    );
    assert_eq!(ext.biflag.len(), m.ground_size() - 2);

    let jumps = gap_jump(&nbc.biflag, ground);
    assert_eq!(jumps.unique_double_jump(), Some(4));
    assert_eq!(jumps.gaps[4], set(&[1, 2]));

    let table = ExpansionTable {
        biflag: nbc.biflag.clone(),
        arrivals: nbc.arrivals.iter().copied().collect(),
        covered: nbc.biflag.big_union(),
    };
    let cert = resistant_filter(&m, 2, &table).unwrap().expect("the golden table is resistant");
    assert_eq!(cert.basis, b);
    assert_eq!(cert.active, set(&[0, 1, 6]));
    assert_eq!(cert.passive, set(&[5, 7, 8, 11]));
    assert_eq!(greedy_completion(&m, cert.passive).unwrap(), set(&[0, 1, 6]));

    let mut frontier = vec![table];
    for (idx, c) in [6u8, 1].into_iter().enumerate() {
        let remaining = 1 - idx;
        let mut next = Vec::new();
        for t in &frontier {
            for child in gamma_step(&m, t, c).unwrap() {
                if !eradicates(&m, &child.biflag, remaining) {
                    next.push(child);
                }
            }
        }
        frontier = next;
    }
    assert_eq!(frontier.len(), 1, "γ₆γ₁ leaves a unique surviving table");
    assert_eq!(frontier[0].biflag, ext.biflag);
    assert_eq!(frontier[0].arrivals.as_slice(), [11, 8, 7, 5, 6, 1, 3, 4, 9, 10]);

    println!("PASS cube golden basis 015678b: chain, extension, gap data, γ replay");
}

#[test]
fn property_suites() {
    let py = pyramid();

    // Union of a nonempty flat and a nonempty coflat never has exactly n
    // elements.
    let mut flat_pairs = 0u64;
    for m in [&py, &cube(), &triangle(), &u24()] {
        let n = m.ground_size() - 1;
        for f in m.flats().iter().filter(|f| !f.is_empty()) {
            for g in m.coflats().iter().filter(|g| !g.is_empty()) {
                assert_ne!((*f | *g).len(), n, "F = {f:?}, G = {g:?}");
                flat_pairs += 1;
            }
        }
    }

    // Gaps are pairwise disjoint and partition the complement of
    // `∪ (F ∩ G)`; checked on every table of the full pyramid walk.
    let ground = py.ground();
    let mut walk = DeltaWalk::new(&py).unwrap();
    let mut biflags = 0u64;
    loop {
        for table in walk.level() {
            let jumps = gap_jump(&table.biflag, ground);
            let mut union = ESet::EMPTY;
            let mut total = 0;
            for gap in &jumps.gaps {
                union = union | *gap;
                total += gap.len();
            }
            assert_eq!(total, union.len(), "gaps overlap in {:?}", table.biflag);
            assert_eq!(union, table.biflag.big_union().complement_in(ground));
            biflags += 1;
        }
        if walk.power() == walk.max_power() {
            break;
        }
        walk.advance().unwrap();
    }

    // Maximal biflags have length n − 1: the walk tops out there, extension
    // reaches it from the empty biflag, and a maximal biflag cannot grow.
    for table in walk.level() {
        assert_eq!(table.len(), py.ground_size() - 2);
    }
    let maximal = extend_to_maximal(&py, &Biflag::empty()).unwrap();
    assert_eq!(maximal.len(), py.ground_size() - 2);
    maximal.validate(&py).unwrap();
    assert_eq!(extend_to_maximal(&py, &maximal).unwrap(), maximal);

    // The three completion rules agree on every independent set of the
    // pyramid, and completion commutes with activities: B = S ⊔ P is the
    // lexicographically least basis containing S, IA(B) = IA(S) ⊔ P, and
    // EA(B) = EA(S).
    let bases = py.bases().clone();
    let mut independents = 0u64;
    for s in py.ground().subsets() {
        if !py.is_independent(s) {
            continue;
        }
        let p = greedy_completion(&py, s).unwrap();
        assert_eq!(completion_by_cocircuits(&py, s).unwrap(), p, "S = {s:?}");
        assert_eq!(completion_avoiding_closure(&py, s).unwrap(), p, "S = {s:?}");
        let b = s | p;
        assert!(py.is_basis(b), "S = {s:?} completes to a non-basis");
        let lex_min = bases
            .iter()
            .filter(|cand| s.is_subset(**cand))
            .min_by_key(|cand| cand.iter().collect::<Vec<u8>>())
            .unwrap();
        assert_eq!(b, *lex_min, "S = {s:?}");
        let (ia_s, ea_s) = set_activities(&py, s);
        assert!((ia_s & p).is_empty());
        let rec = activities(&py, b).unwrap();
        assert_eq!(rec.internally_active, ia_s | p, "S = {s:?}");
        assert_eq!(rec.externally_active, ea_s, "S = {s:?}");
        independents += 1;
    }

    // Interval-based steps equal the brute-force enumeration from the rank
    // oracle alone.
    let chord = Matroid::from_graph(&[(0, 0, 1), (1, 1, 2), (2, 2, 3), (3, 3, 0), (4, 0, 2)])
        .unwrap();
    for (m, limit, name) in [
        (&chord, usize::MAX, "4-cycle with a chord"),
        (&u24(), usize::MAX, "u24"),
        (&py, 2, "pyramid through power 2"),
    ] {
        let report = step_lemma_bruteforce(m, limit, name).unwrap();
        assert!(report.passed(), "{}", report.render());
    }

    // Exhaustive totals do not depend on the pivot policy, and eradication
    // pruning never changes the outcome, only the effort.
    let r = py.rank_total() - 1;
    for (k, &expected) in [3u64, 6, 4, 1].iter().enumerate() {
        assert!(k <= r);
        let by_pivot: Vec<MonomialSum> = [GammaPivot::MinOutside, GammaPivot::MaxOutside]
            .into_iter()
            .map(|pivot| {
                let strategy = Strategy::Exhaustive(ExhaustiveOptions { prune: true, pivot });
                gamma_delta_power(&py, k, &strategy).unwrap().survivors
            })
            .collect();
        assert_eq!(by_pivot[0].total(), by_pivot[1].total(), "k = {k}");
        assert_eq!(by_pivot[0].total(), expected, "k = {k}");
        let unpruned = Strategy::Exhaustive(ExhaustiveOptions {
            prune: false,
            pivot: GammaPivot::MinOutside,
        });
        let survivors = gamma_delta_power(&py, k, &unpruned).unwrap().survivors;
        assert_eq!(survivors, by_pivot[0], "k = {k}: pruning changed the sum");
    }

    // Log-concavity of the corpus f- and h-vectors.
    for m in [&py, &cube(), &triangle(), &u24()] {
        let v = fh_vectors(m).unwrap();
        for seq in [&v.bc.f, &v.bc.h, &v.rbc.f, &v.rbc.h] {
            assert!(logconcavity_check(seq), "{seq:?} is not log-concave");
        }
    }

    println!(
        "PASS property suites: {flat_pairs} flat/coflat unions, {biflags} gap partitions, \
         {independents} completions, 3 step brute-forces, pivot and pruning invariance, \
         log-concave corpus vectors"
    );
}
