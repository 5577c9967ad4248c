//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any failed.

use std::collections::{HashMap, HashSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

use adian::bs_family::{detect_bs, sc_neg_block, sc_pos_block, sc_positive_word};
use adian::complex::Complex;
use adian::oracle::{neighbors, oracle_equal_positive};
use adian::presentation::{
    build_bisided, check_star, classify, is_adian, parse_presentation, BsEdgeKind, DecidabilityClass, GenId, Letter,
    Presentation,
};
use adian::stephen::{
    close_observed, equal_from_closures, equal_words, is_idempotent, schutzenberger, Budget, ClosureOutcome,
    ClosureStatus, TriBool,
};
use adian::{Word, WordGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pres_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../presentations")
}

fn load(name: &str) -> Presentation {
    let text = std::fs::read_to_string(pres_dir().join(name)).unwrap();
    parse_presentation(&text).unwrap()
}

fn all_positive_words(alphabet: &[GenId], max_len: usize) -> Vec<Vec<GenId>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &g in alphabet {
                let mut x: Vec<GenId> = w.clone();
                x.push(g);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn random_positive(rng: &mut ChaCha8Rng, gens: usize, min: usize, max: usize) -> Vec<GenId> {
    let len = rng.random_range(min..=max);
    (0..len).map(|_| rng.random_range(0..gens) as GenId).collect()
}

/// One closure of a positive word, with per-round acyclicity.
struct Record {
    presentation: String,
    word: Vec<GenId>,
    outcome: ClosureOutcome,
    acyclic_every_round: bool,
    adian: bool,
}

fn observed_closure(name: &str, p: &Presentation, w: &[GenId]) -> Record {
    let mut acyclic = true;
    let outcome = close_observed(Complex::from_word(p, &Word::positive(w)), Budget::default(), |_, c| {
        if c.skeleton().find_positive_cycle().is_some() {
            acyclic = false;
        }
    });
    Record { presentation: name.into(), word: w.to_vec(), outcome, acyclic_every_round: acyclic, adian: is_adian(p) }
}

const BS_FAMILY: [(&str, usize, usize); 3] = [("bs21.pres", 2, 1), ("bs31.pres", 3, 1), ("bs32.pres", 3, 2)];
const FOLD_CORPUS: [&str; 6] = ["bs21.pres", "bs31.pres", "bs32.pres", "bs12.pres", "thirteen.pres", "abcd.pres"];

/// Closures shared by criteria 2–6, keyed by suite.
struct Suites {
    classification: Vec<Record>,
    bs_words: Vec<Record>,
    random: Vec<Record>,
}

fn suites() -> &'static Suites {
    static S: OnceLock<Suites> = OnceLock::new();
    S.get_or_init(|| {
        let mut classification = Vec::new();
        for name in ["thirteen.pres", "eleven.pres"] {
            let p = load(name);
            for w in p.r_words() {
                classification.push(observed_closure(name, &p, &w));
            }
        }
        let mut bs_words = Vec::new();
        for (name, _, _) in BS_FAMILY {
            let p = load(name);
            for w in all_positive_words(&[0, 1], 8) {
                bs_words.push(observed_closure(name, &p, &w));
            }
        }
        let mut random = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for name in FOLD_CORPUS {
            let p = load(name);
            for _ in 0..200 {
                let w = random_positive(&mut rng, p.num_generators(), 1, 8);
                random.push(observed_closure(name, &p, &w));
            }
        }
        Suites { classification, bs_words, random }
    })
}

fn criterion_1() {
    let p = load("aba_b.pres");
    assert!(is_adian(&p));
    assert!(check_star(&p).is_some());
    let bs = build_bisided(&p);
    let b = bs.vertices.iter().position(|v| v == &vec![1]).unwrap();
    assert!(bs.edges.iter().any(|e| e.src == b
        && e.dst == b
        && e.x == vec![0]
        && e.y == vec![0]
        && e.kind == BsEdgeKind::Rel));
    assert!(!bs.is_forest());

    let p = load("eleven.pres");
    assert!(is_adian(&p));
    assert!(check_star(&p).is_none());
    assert!(build_bisided(&p).find_cycle().is_some());

    let p = load("thirteen.pres");
    assert!(is_adian(&p));
    assert!(check_star(&p).is_none());
    assert!(build_bisided(&p).is_forest());
    assert_eq!(classify(&p), DecidabilityClass::AdianStarForest);
}

fn same_complex(a: &Complex, b: &Complex) -> bool {
    a.skeleton().birooted_isomorphic(b.skeleton()) && a.face_count() == b.face_count()
}

fn criterion_2() {
    let s = suites();
    for (name, m, n) in BS_FAMILY {
        let p = load(name);
        let bp = detect_bs(&p).unwrap();
        assert_eq!((bp.m, bp.n), (m, n));
        for k in 0..=4 {
            for t in 0..=4 {
                let pos = [vec![0; k], vec![1; t]].concat();
                let g = schutzenberger(&p, &Word::positive(&pos), Budget::default());
                assert!(g.is_closed());
                assert!(same_complex(&sc_pos_block(&bp, k, t), &g.complex), "{name} a^{k} b^{t}");
                let neg = [vec![1; t], vec![0; k]].concat();
                let g = schutzenberger(&p, &Word::positive(&neg), Budget::default());
                assert!(g.is_closed());
                assert!(same_complex(&sc_neg_block(&bp, t, k), &g.complex), "{name} b^{t} a^{k}");
            }
        }
        for r in s.bs_words.iter().filter(|r| r.presentation == name) {
            assert!(r.outcome.is_closed(), "{name} {:?} not closed", r.word);
            let direct = sc_positive_word(&bp, &Word::positive(&r.word)).unwrap();
            assert!(same_complex(&direct.complex, &r.outcome.complex), "{name} {:?}", r.word);
            assert_eq!(direct.fold_merges, 0);
            let l = r.word.windows(2).filter(|x| x[0] != x[1]).count() + 1;
            assert!(direct.waves <= 2 * l + 2, "{name} {:?}: {} waves", r.word, direct.waves);
        }
        let abm = Word::positive(&[vec![0], vec![1; m]].concat());
        let bna = Word::positive(&[vec![1; n], vec![0]].concat());
        assert_eq!(equal_words(&p, &abm, &bna, Budget::default()), TriBool::True);
    }
}

fn criterion_3() {
    let s = suites();
    let names: HashSet<&str> = s.random.iter().map(|r| r.presentation.as_str()).collect();
    assert!(names.len() >= 5);
    assert!(s.random.len() >= 200);
    for r in s.random.iter().chain(&s.bs_words) {
        assert!(r.adian);
        assert!(r.word.len() <= 8);
        assert!(r.outcome.is_closed(), "{} {:?}", r.presentation, r.word);
        assert_eq!(r.outcome.fold_merges, 0, "{} {:?}", r.presentation, r.word);
    }
}

fn criterion_4() {
    let s = suites();
    for r in s.classification.iter().chain(&s.bs_words).chain(&s.random) {
        assert!(r.adian);
        assert!(r.acyclic_every_round, "{} {:?}", r.presentation, r.word);
    }
}

fn criterion_5() {
    let s = suites();
    let mut checked = 0;
    for r in s.classification.iter().chain(&s.bs_words).chain(&s.random) {
        if r.outcome.status == ClosureStatus::Closed {
            let b = r.outcome.complex.betti_check().unwrap();
            assert!(b.pass, "{} {:?}: {b:?}", r.presentation, r.word);
            checked += 1;
        }
    }
    assert!(checked > 0);
}

fn transversal_structure(g: &WordGraph) -> bool {
    let (alpha, beta) = (g.alpha(), g.beta());
    if g.positive_sources() != vec![alpha] || g.positive_sinks() != vec![beta] {
        return false;
    }
    let reach = |start: usize, forward: bool| {
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let next = if forward { g.out_edges(v) } else { g.in_edges(v) };
            for &(_, t) in next {
                if seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        seen
    };
    let from_alpha = reach(alpha, true);
    let to_beta = reach(beta, false);
    g.positive_edges().iter().all(|(u, _, v)| from_alpha.contains(u) && to_beta.contains(v))
}

fn criterion_6() {
    let s = suites();
    for r in s.classification.iter().chain(&s.bs_words).chain(&s.random) {
        if r.outcome.is_closed() {
            assert!(transversal_structure(r.outcome.complex.skeleton()), "{} {:?}", r.presentation, r.word);
        }
    }
}

/// Words reachable from `w` in at most `depth` derivation steps.
fn neighborhood(p: &Presentation, w: &[GenId], depth: usize) -> Vec<Vec<GenId>> {
    let mut seen: HashSet<Vec<GenId>> = HashSet::from([w.to_vec()]);
    let mut order = vec![w.to_vec()];
    let mut layer = vec![w.to_vec()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for x in &layer {
            for (y, _) in neighbors(p, x) {
                if seen.insert(y.clone()) {
                    order.push(y.clone());
                    next.push(y);
                }
            }
        }
        layer = next;
    }
    order
}

fn criterion_7() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["thirteen.pres", "bs21.pres"] {
        let p = load(name);
        let mut cache: HashMap<Vec<GenId>, ClosureOutcome> = HashMap::new();
        let mut closure = |w: &[GenId]| -> ClosureOutcome {
            cache.entry(w.to_vec()).or_insert_with(|| schutzenberger(&p, &Word::positive(w), Budget::default())).clone()
        };
        let seeds: Vec<Vec<GenId>> = (0..50).map(|_| random_positive(&mut rng, p.num_generators(), 1, 5)).collect();
        let mut pairs = 0;
        for (i, seed) in seeds.iter().enumerate() {
            let near = neighborhood(&p, seed, 3);
            let mut controls: Vec<Vec<GenId>> =
                (0..4).map(|_| random_positive(&mut rng, p.num_generators(), 1, 5)).collect();
            controls.push(seeds[(i + 1) % seeds.len()].clone());
            let cs = closure(seed);
            let seed_word = Word::positive(seed);
            for (x, is_near) in near.iter().map(|x| (x, true)).chain(controls.iter().map(|x| (x, false))) {
                let xw = Word::positive(x);
                let cx = closure(x);
                let eq = equal_from_closures(&cs, &seed_word, &cx, &xw);
                assert!(!eq.is_unknown(), "{name}: undecided {seed:?} {x:?}");
                let oracle = oracle_equal_positive(&p, &seed_word, &xw, 3).unwrap();
                if is_near {
                    assert_eq!(oracle, TriBool::True);
                }
                if oracle.is_true() {
                    assert!(eq.is_true(), "{name}: oracle true, engine {eq} for {seed:?} {x:?}");
                }
                if eq.is_true() && !oracle.is_true() {
                    // equal but further apart: the oracle must find it with more depth
                    let found = (4..=12).any(|d| oracle_equal_positive(&p, &seed_word, &xw, d).unwrap().is_true());
                    assert!(found, "{name}: engine true, no derivation for {seed:?} {x:?}");
                }
                for (a, ca, b) in [(&seed_word, &cs, &xw), (&xw, &cx, &seed_word)] {
                    if ca.accepts(b) {
                        assert!(eq.is_true(), "{name}: {a:?} <= {b:?} but not equal");
                    }
                }
                pairs += 1;
            }
            let first = &near[near.len() - 1];
            assert_eq!(
                equal_words(&p, &seed_word, &Word::positive(first), Budget::default()),
                TriBool::True,
                "{name}: direct equal_words"
            );
        }
        assert!(pairs >= 50);
    }
}

fn criterion_8() {
    let p = Presentation::new(["a", "b"], vec![]);
    let letters = [Letter::pos(0), Letter::neg(0), Letter::pos(1), Letter::neg(1)];
    let mut words = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..6 {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                let mut x = w.letters().to_vec();
                x.push(l);
                next.push(Word(x));
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    assert_eq!(words.len(), 5461);
    let closures: Vec<ClosureOutcome> = words.iter().map(|w| schutzenberger(&p, w, Budget::default())).collect();
    let mut class_of: HashMap<_, usize> = HashMap::new();
    let classes: Vec<usize> = words
        .iter()
        .map(|w| {
            let next = class_of.len();
            *class_of.entry(WordGraph::munn_tree(w).canonical_form()).or_insert(next)
        })
        .collect();
    for (i, ci) in closures.iter().enumerate() {
        assert!(ci.is_closed() && ci.rounds_used == 0);
        for (j, cj) in closures.iter().enumerate() {
            let eq = equal_from_closures(ci, &words[i], cj, &words[j]);
            assert_eq!(eq.is_true(), classes[i] == classes[j], "{:?} {:?}", words[i], words[j]);
            assert!(!eq.is_unknown());
        }
    }
    let b = Budget::default();
    let a = Word(vec![Letter::pos(0)]);
    let aia = Word(vec![Letter::pos(0), Letter::neg(0), Letter::pos(0)]);
    assert_eq!(equal_words(&p, &aia, &a, b), TriBool::True);
    for w in words.iter().filter(|w| w.len() <= 4) {
        assert_eq!(is_idempotent(&p, &w.concat(&w.inverse()), b), TriBool::True, "{w:?}");
    }
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_adian")
}

fn criterion_9() {
    let p = load("aba_b.pres");
    let b = Budget::vertices(200);
    let bw = Word::positive(&[1]);
    let out = schutzenberger(&p, &bw, b);
    assert_eq!(out.status, ClosureStatus::Exhausted);
    assert!(out.vertices <= 200);
    assert_eq!(equal_words(&p, &bw, &Word::positive(&[0, 1, 0]), b), TriBool::True);
    let path = pres_dir().join("aba_b.pres");
    let path = path.to_str().unwrap();
    let r = adian::cli::run(["adian", "graph", path, "b", "--max-vertices", "200"]);
    assert_eq!(r.code, 2, "{}", r.stderr);
    assert!(r.stdout.contains("status=Exhausted"));
    let status = Command::new(bin()).args(["graph", path, "b", "--max-vertices", "200"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
    let r = adian::cli::run(["adian", "eq", path, "b", "a b a", "--max-vertices", "200"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

/// The golden invocations: arguments after the program name, with `{P}` for
/// the presentations directory and `{T}` for a scratch directory.
const GOLDEN: &[&[&str]] = &[
    &["check", "{P}/bs21.pres"],
    &["check", "{P}/aba_b.pres", "--json"],
    &["check", "{P}/eleven.pres"],
    &["check", "{P}/thirteen.pres"],
    &["check", "{P}/idempotent.pres"],
    &["eq", "{P}/bs21.pres", "a b b", "b a"],
    &["eq", "{P}/bs21.pres", "a", "b"],
    &["eq", "{P}/bs32.pres", "abbbb", "bbab", "--json"],
    &["eq", "{P}/thirteen.pres", "a", "f d e g"],
    &["eq", "{P}/aba_b.pres", "b", "a b a", "--max-vertices", "200"],
    &["eq", "{P}/free2.pres", "a a' a", "a"],
    &["leq", "{P}/aba_b.pres", "b", "a", "--max-vertices", "200"],
    &["leq", "{P}/bs21.pres", "a b b a'", "a a'"],
    &["idem", "{P}/bs21.pres", "a b b a' b'"],
    &["idem", "{P}/bs21.pres", "a"],
    &["group-id", "{P}/bs21.pres", "a b b a' b'"],
    &["group-id", "{P}/idempotent.pres", "a"],
    &["graph", "{P}/bs21.pres", "abbb", "--dot", "{T}/g.dot", "--complex"],
    &["graph", "{P}/aba_b.pres", "b", "--max-vertices", "200", "--dot", "{T}/e.dot"],
    &["munn", "{P}/free2.pres", "a b' a' b b", "--dot", "{T}/m.dot"],
    &["oracle-eq", "{P}/thirteen.pres", "a", "f d e g", "--depth", "3"],
    &["oracle-eq", "{P}/bs21.pres", "a", "a a", "--depth", "6"],
    &["eq", "{P}/missing.pres", "a", "b"],
    &["eq", "{P}/bs21.pres", "a c", "b"],
    &["frobnicate"],
];

fn criterion_10() {
    let scratch = tempfile::tempdir().unwrap();
    let p = pres_dir();
    let (p, t) = (p.to_str().unwrap(), scratch.path().to_str().unwrap());
    for args in GOLDEN {
        let args: Vec<String> = args.iter().map(|a| a.replace("{P}", p).replace("{T}", t)).collect();
        let dots = |args: &[String]| -> Vec<Vec<u8>> {
            args.iter().filter(|a| a.ends_with(".dot")).map(|a| std::fs::read(a).unwrap()).collect()
        };
        let lib = |a: &[String]| adian::cli::run(std::iter::once("adian".to_string()).chain(a.iter().cloned()));
        let r1 = lib(&args);
        let d1 = dots(&args);
        let r2 = lib(&args);
        let d2 = dots(&args);
        assert_eq!(r1, r2, "{args:?}");
        assert_eq!(d1, d2, "{args:?}");
        let b1 = Command::new(bin()).args(&args).output().unwrap();
        let d3 = dots(&args);
        let b2 = Command::new(bin()).args(&args).output().unwrap();
        assert_eq!(b1, b2, "{args:?}");
        assert_eq!(d1, d3, "{args:?}");
        assert_eq!(b1.stdout, r1.stdout.as_bytes(), "{args:?}");
        assert_eq!(b1.status.code(), Some(r1.code), "{args:?}");
    }
}

fn main() {
    let criteria: [(usize, &str, fn()); 10] = [
        (1, "worked example classifications", criterion_1),
        (2, "BS-family cross-engine equivalence", criterion_2),
        (3, "fold-free positive closure", criterion_3),
        (4, "positive acyclicity every round", criterion_4),
        (5, "betti check on closed complexes", criterion_5),
        (6, "unique source, sink and transversal edges", criterion_6),
        (7, "oracle agreement", criterion_7),
        (8, "free inverse monoid fragment", criterion_8),
        (9, "budget robustness", criterion_9),
        (10, "CLI determinism", criterion_10),
    ];
    let filter: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = Vec::new();
    for (n, what, f) in criteria {
        if filter.is_some_and(|k| k != n) {
            continue;
        }
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        let secs = start.elapsed().as_secs_f64();
        println!("criterion {n}: {} ({what}, {secs:.2}s)", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed.push(n);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
