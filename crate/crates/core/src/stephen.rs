//! Stephen's procedure: P-expansions, budgeted closure and the decision
//! procedures built on it.
//!
//! A round enumerates every site `(relation, v1, v2)` of the graph as it
//! stands at the start of the round, sews every missing relation side, then
//! folds. Sites that only appear during the round wait for the next one.
//! Faces are recorded for every relation instance readable at a site, so a
//! closed complex carries one face per readable instance.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::complex::Complex;
use crate::presentation::{is_adian, GenId, Presentation, RelSide, Word};
use crate::wordgraph::{PathTrace, VertexId, WordGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_vertices: usize,
    pub max_rounds: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_vertices: 100_000, max_rounds: 10_000 }
    }
}

impl Budget {
    pub fn new(max_vertices: usize, max_rounds: usize) -> Self {
        assert!(max_vertices > 0 && max_rounds > 0, "budget limits must be positive");
        Budget { max_vertices, max_rounds }
    }

    pub fn vertices(max_vertices: usize) -> Self {
        Budget::new(max_vertices, Budget::default().max_rounds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureStatus {
    Closed,
    Exhausted,
}

impl fmt::Display for ClosureStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureStatus::Closed => write!(f, "Closed"),
            ClosureStatus::Exhausted => write!(f, "Exhausted"),
        }
    }
}

/// Result of a closure. When `status` is `Exhausted`, `complex` is the last
/// approximation reached; every word it accepts is still `≥` the input word.
#[derive(Debug, Clone)]
pub struct ClosureOutcome {
    pub status: ClosureStatus,
    pub complex: Complex,
    /// Rounds that sewed at least one path.
    pub rounds_used: usize,
    pub vertices: usize,
    /// Vertex merges performed by folding during the rounds (the initial
    /// Munn-tree fold is not counted).
    pub fold_merges: usize,
}

impl ClosureOutcome {
    pub fn is_closed(&self) -> bool {
        self.status == ClosureStatus::Closed
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.complex.skeleton().accepts(w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriBool {
    True,
    False,
    Unknown(String),
}

impl TriBool {
    pub fn is_true(&self) -> bool {
        matches!(self, TriBool::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self, TriBool::False)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, TriBool::Unknown(_))
    }
}

impl fmt::Display for TriBool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriBool::True => write!(f, "True"),
            TriBool::False => write!(f, "False"),
            TriBool::Unknown(_) => write!(f, "Unknown"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StephenError {
    #[error("no elementary expansion of relation {relation} applies from {v1} to {v2}")]
    NotApplicable { relation: usize, v1: VertexId, v2: VertexId },
    #[error("presentation is not Adian")]
    NotAdian,
}

/// Sews the missing side of `relation` between `v1` and `v2`. Exactly one
/// side must be readable. No folding.
pub fn elementary_expansion(c: &mut Complex, relation: usize, v1: VertexId, v2: VertexId) -> Result<(), StephenError> {
    let l = c.read_side(relation, RelSide::Lhs, v1, v2).is_some();
    let r = c.read_side(relation, RelSide::Rhs, v1, v2).is_some();
    if l == r {
        return Err(StephenError::NotApplicable { relation, v1, v2 });
    }
    c.attach_face(relation, v1, v2).map(|_| ()).map_err(|_| StephenError::NotApplicable { relation, v1, v2 })
}

/// What one round would do or did.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RoundReport {
    pub glued: usize,
    pub new_faces: usize,
    pub fold_merges: usize,
}

/// A site with the traces read in the snapshot. Later sewing in the same
/// round can add parallel edges, so traces are never re-read.
#[derive(Debug, Clone)]
struct Site {
    relation: usize,
    v2: VertexId,
    lhs: Option<PathTrace>,
    rhs: Option<PathTrace>,
}

impl Site {
    fn missing(&self) -> Option<RelSide> {
        match (&self.lhs, &self.rhs) {
            (Some(_), None) => Some(RelSide::Rhs),
            (None, Some(_)) => Some(RelSide::Lhs),
            _ => None,
        }
    }
}

/// Sites of the current graph in `(relation, v1, v2)` order. A site with
/// both traces has both sides readable.
fn sites(c: &Complex) -> Vec<Site> {
    let sk = c.skeleton();
    let mut out = Vec::new();
    for relation in 0..c.relation_count() {
        let lhs = c.relation_side(relation, RelSide::Lhs);
        let rhs = c.relation_side(relation, RelSide::Rhs);
        for v1 in sk.vertices() {
            let tl = sk.read_gens(v1, lhs);
            let tr = sk.read_gens(v1, rhs);
            let el = tl.as_ref().map(|t| *t.last().unwrap());
            let er = tr.as_ref().map(|t| *t.last().unwrap());
            let mut here: Vec<Site> = Vec::with_capacity(2);
            match (el, er) {
                (Some(x), Some(y)) if x == y => here.push(Site { relation, v2: x, lhs: tl, rhs: tr }),
                _ => {
                    if let Some(x) = el {
                        here.push(Site { relation, v2: x, lhs: tl, rhs: None });
                    }
                    if let Some(y) = er {
                        here.push(Site { relation, v2: y, lhs: None, rhs: tr });
                    }
                }
            }
            here.sort_by_key(|s| s.v2);
            out.extend(here);
        }
    }
    out
}

fn projected_growth(c: &Complex, sites: &[Site]) -> usize {
    sites.iter().filter_map(|s| s.missing().map(|side| c.relation_side(s.relation, side).len().saturating_sub(1))).sum()
}

fn apply_sites(c: &mut Complex, sites: &[Site]) -> RoundReport {
    let mut report = RoundReport::default();
    let before = c.face_count();
    for s in sites {
        let base = match (&s.lhs, &s.rhs) {
            (Some(t), _) | (_, Some(t)) => t[0],
            _ => unreachable!("site has a readable side"),
        };
        let lhs = s.lhs.clone().unwrap_or_else(|| c.glue_side(s.relation, RelSide::Lhs, base, s.v2));
        let rhs = s.rhs.clone().unwrap_or_else(|| c.glue_side(s.relation, RelSide::Rhs, base, s.v2));
        if s.missing().is_some() {
            report.glued += 1;
        }
        c.record_face(s.relation, lhs, rhs);
    }
    report.fold_merges = c.fold();
    report.new_faces = c.face_count().saturating_sub(before);
    report
}

/// One full P-expansion: every site of the current graph is expanded, then
/// the result is folded and its faces canonicalized.
pub fn full_p_expansion(c: &mut Complex) -> RoundReport {
    let s = sites(c);
    apply_sites(c, &s)
}

/// Iterates full P-expansions until nothing needs sewing or the budget is
/// hit. A round whose projected vertex count would exceed the budget is not
/// performed.
pub fn close(c: Complex, b: Budget) -> ClosureOutcome {
    close_observed(c, b, |_, _| {})
}

/// [`close`], calling `observe(round, complex)` on the starting complex
/// (round 0) and after every round.
pub fn close_observed(mut c: Complex, b: Budget, mut observe: impl FnMut(usize, &Complex)) -> ClosureOutcome {
    let mut rounds = 0;
    let mut merges = 0;
    observe(0, &c);
    let status = loop {
        if c.skeleton().vertex_count() > b.max_vertices {
            break ClosureStatus::Exhausted;
        }
        let s = sites(&c);
        let growth = projected_growth(&c, &s);
        let needs_glue = s.iter().any(|s| s.missing().is_some());
        if !needs_glue {
            // record faces for sites that are already complete
            let r = apply_sites(&mut c, &s);
            merges += r.fold_merges;
            break ClosureStatus::Closed;
        }
        if rounds >= b.max_rounds || c.skeleton().vertex_count() + growth > b.max_vertices {
            break ClosureStatus::Exhausted;
        }
        let r = apply_sites(&mut c, &s);
        merges += r.fold_merges;
        rounds += 1;
        observe(rounds, &c);
    };
    let vertices = c.skeleton().vertex_count();
    ClosureOutcome { status, complex: c, rounds_used: rounds, vertices, fold_merges: merges }
}

/// Closure of the Munn tree of `w`.
pub fn schutzenberger(p: &Presentation, w: &Word, b: Budget) -> ClosureOutcome {
    close(Complex::from_word(p, w), b)
}

/// Decides whether `v` is accepted by the complex of `u`, i.e. `v ≥ u` in
/// the natural partial order.
pub fn natural_leq(p: &Presentation, u: &Word, v: &Word, b: Budget) -> TriBool {
    leq_from_closure(&schutzenberger(p, u, b), v)
}

fn leq_from_closure(cu: &ClosureOutcome, v: &Word) -> TriBool {
    if cu.accepts(v) {
        TriBool::True
    } else if cu.is_closed() {
        TriBool::False
    } else {
        TriBool::Unknown(format!("closure exhausted at {} vertices after {} rounds", cu.vertices, cu.rounds_used))
    }
}

/// Equality of `u` and `v` given closures of both: mutual acceptance.
pub fn equal_from_closures(cu: &ClosureOutcome, u: &Word, cv: &ClosureOutcome, v: &Word) -> TriBool {
    let uv = leq_from_closure(cu, v);
    let vu = leq_from_closure(cv, u);
    let answer = match (&uv, &vu) {
        (TriBool::True, TriBool::True) => TriBool::True,
        (TriBool::False, _) | (_, TriBool::False) => TriBool::False,
        (TriBool::Unknown(r), _) | (_, TriBool::Unknown(r)) => TriBool::Unknown(r.clone()),
    };
    if cfg!(debug_assertions) && cu.is_closed() && cv.is_closed() {
        let (gu, gv) = (cu.complex.skeleton(), cv.complex.skeleton());
        let same_size = gu.vertex_count() == gv.vertex_count() && gu.edge_count() == gv.edge_count();
        assert_eq!(answer.is_true(), same_size && gu.birooted_isomorphic(gv), "acceptance and isomorphism disagree");
    }
    answer
}

/// Both closures run concurrently.
pub fn equal_words(p: &Presentation, u: &Word, v: &Word, b: Budget) -> TriBool {
    let (cu, cv) = std::thread::scope(|s| {
        let hu = s.spawn(|| schutzenberger(p, u, b));
        let cv = schutzenberger(p, v, b);
        (hu.join().expect("closure thread panicked"), cv)
    });
    equal_from_closures(&cu, u, &cv, v)
}

pub fn is_idempotent(p: &Presentation, w: &Word, b: Budget) -> TriBool {
    equal_words(p, w, &w.concat(w), b)
}

/// For Adian presentations the monoid is E-unitary, so `w` maps to the
/// group identity exactly when it is idempotent.
pub fn equals_identity_in_group(p: &Presentation, w: &Word, b: Budget) -> Result<TriBool, StephenError> {
    if !is_adian(p) {
        return Err(StephenError::NotAdian);
    }
    Ok(is_idempotent(p, w, b))
}

/// Closure that grows the Munn tree one edge at a time and, after each edge,
/// glues the closed complex of every maximal positive path label along that
/// path until no glue changes anything. A final generic round confirms the
/// result; should a site remain, generic rounds take over.
pub fn close_by_positive_saturation(p: &Presentation, w: &Word, b: Budget) -> Result<ClosureOutcome, StephenError> {
    if !is_adian(p) {
        return Err(StephenError::NotAdian);
    }
    let mt = WordGraph::munn_tree(w);
    let mut c = Complex::new(p, WordGraph::single());
    let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    map.insert(mt.alpha(), c.skeleton().alpha());

    let mut sat = Saturator { p, b, cache: BTreeMap::new(), done: HashSet::new(), rounds: 0, merges: 0 };
    let mut queue = VecDeque::from([mt.alpha()]);
    while let Some(x) = queue.pop_front() {
        for (l, y) in mt.steps(x) {
            if map.contains_key(&y) {
                continue;
            }
            let sk = c.skeleton_mut();
            let fresh = sk.add_vertex();
            sk.add_letter_edge(map[&x], l, fresh);
            map.insert(y, fresh);
            queue.push_back(y);
            if !sat.saturate(&mut c) {
                return Ok(sat.finish(c, ClosureStatus::Exhausted, map[&mt.beta()]));
            }
        }
    }
    let beta = map[&mt.beta()];
    let alpha = c.skeleton().alpha();
    c.skeleton_mut().set_roots(alpha, beta);

    let generic = close(c, Budget::new(b.max_vertices, b.max_rounds.saturating_sub(sat.rounds).max(1)));
    sat.rounds += generic.rounds_used;
    sat.merges += generic.fold_merges;
    let status = generic.status;
    let beta = generic.complex.skeleton().beta();
    Ok(sat.finish(generic.complex, status, beta))
}

struct Saturator<'a> {
    p: &'a Presentation,
    b: Budget,
    cache: BTreeMap<Vec<GenId>, Option<Complex>>,
    done: HashSet<(VertexId, VertexId, Vec<GenId>)>,
    rounds: usize,
    merges: usize,
}

impl Saturator<'_> {
    /// Glues closed positive-word complexes along maximal positive paths
    /// until a pass changes nothing. Returns false on budget breach.
    fn saturate(&mut self, c: &mut Complex) -> bool {
        loop {
            let sk = c.skeleton();
            if sk.vertex_count() > self.b.max_vertices || self.rounds >= self.b.max_rounds {
                return false;
            }
            let mut paths = Vec::new();
            for s in sk.positive_sources() {
                let Ok(ps) = sk.maximal_positive_paths(s) else { return false };
                for (label, end) in ps {
                    let gens = label.gens().expect("positive path");
                    if !gens.is_empty() && self.done.insert((sk.find(s), sk.find(end), gens.clone())) {
                        paths.push((s, gens));
                    }
                }
            }
            let shape = (c.skeleton().vertex_count(), c.skeleton().edge_count(), c.face_count());
            for (s, gens) in paths {
                let Some(piece) = self.closed_piece(&gens) else { return false };
                let trace = c.skeleton().read_gens(s, &gens).expect("path still readable");
                let ptrace =
                    piece.skeleton().read_gens(piece.skeleton().alpha(), &gens).expect("word readable in its complex");
                let anchors: Vec<(VertexId, VertexId)> = ptrace.into_iter().zip(trace).collect();
                c.glue(piece, &anchors);
                self.merges += c.fold();
                if c.skeleton().vertex_count() > self.b.max_vertices {
                    return false;
                }
            }
            if (c.skeleton().vertex_count(), c.skeleton().edge_count(), c.face_count()) == shape {
                return true;
            }
            self.rounds += 1;
        }
    }

    fn closed_piece(&mut self, gens: &[GenId]) -> Option<&Complex> {
        if !self.cache.contains_key(gens) {
            let out = schutzenberger(self.p, &Word::positive(gens), self.b);
            self.cache.insert(gens.to_vec(), out.is_closed().then_some(out.complex));
        }
        self.cache[gens].as_ref()
    }

    fn finish(self, mut c: Complex, status: ClosureStatus, beta: VertexId) -> ClosureOutcome {
        let alpha = c.skeleton().alpha();
        c.skeleton_mut().set_roots(alpha, beta);
        let vertices = c.skeleton().vertex_count();
        ClosureOutcome { status, complex: c, rounds_used: self.rounds, vertices, fold_merges: self.merges }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::fixtures::*;
    use crate::presentation::{parse_word, Letter};

    fn w(p: &Presentation, s: &str) -> Word {
        parse_word(p, s).unwrap()
    }

    #[test]
    fn elementary_expansion_on_abb() {
        let p = bs(2, 1);
        let mut c = Complex::new(&p, WordGraph::linear(&w(&p, "abb")));
        let (a, b) = (c.skeleton().alpha(), c.skeleton().beta());
        elementary_expansion(&mut c, 0, a, b).unwrap();
        assert_eq!(c.face_count(), 1);
        assert!(c.skeleton().read_gens(a, &[1, 0]).is_some());
        assert_eq!(
            elementary_expansion(&mut c, 0, a, b),
            Err(StephenError::NotApplicable { relation: 0, v1: a, v2: b })
        );
    }

    #[test]
    fn linear_a_has_no_site() {
        let p = bs(2, 1);
        let c = Complex::from_word(&p, &w(&p, "a"));
        assert!(sites(&c).is_empty());
        let out = schutzenberger(&p, &w(&p, "a"), Budget::default());
        assert!(out.is_closed());
        assert_eq!(out.rounds_used, 0);
        assert_eq!(out.vertices, 2);
    }

    #[test]
    fn abb_closes_in_one_round() {
        let p = bs(2, 1);
        let out = schutzenberger(&p, &w(&p, "abb"), Budget::default());
        assert!(out.is_closed());
        assert_eq!(out.rounds_used, 1);
        let c = &out.complex;
        assert_eq!((c.skeleton().vertex_count(), c.skeleton().edge_count(), c.face_count()), (5, 5, 1));
        assert!(out.accepts(&w(&p, "ba")));
        assert_eq!(out.fold_merges, 0);
        let mut again = out.complex.clone();
        assert_eq!(full_p_expansion(&mut again).glued, 0);
        assert_eq!(again.skeleton().canonical_form(), out.complex.skeleton().canonical_form());
        assert_eq!(again.faces(), out.complex.faces());
    }

    #[test]
    fn aba_b_first_round_and_exhaustion() {
        let p = aba_b();
        let mut c = Complex::from_word(&p, &w(&p, "b"));
        let r = full_p_expansion(&mut c);
        assert_eq!(r.glued, 1);
        assert_eq!(c.skeleton().vertex_count(), 4);
        assert!(c.skeleton().accepts(&w(&p, "aba")));
        let out = schutzenberger(&p, &w(&p, "b"), Budget::vertices(200));
        assert_eq!(out.status, ClosureStatus::Exhausted);
        assert!(out.vertices <= 200);
    }

    #[test]
    fn free_monoid_closes_immediately() {
        let p = Presentation::new(["a", "b"], vec![]);
        let word = w(&p, "a a' b");
        let out = schutzenberger(&p, &word, Budget::default());
        assert!(out.is_closed());
        assert_eq!(out.rounds_used, 0);
        assert_eq!(out.complex.face_count(), 0);
        assert!(out.complex.skeleton().birooted_isomorphic(&WordGraph::munn_tree(&word)));
        assert_eq!(out.vertices, 3);
    }

    #[test]
    fn empty_word_is_single_vertex() {
        let p = thirteen();
        let out = schutzenberger(&p, &Word::empty(), Budget::default());
        assert!(out.is_closed());
        assert_eq!(out.vertices, 1);
    }

    #[test]
    fn order_and_equality_examples() {
        let p = bs(2, 1);
        let b = Budget::default();
        assert_eq!(natural_leq(&p, &w(&p, "abb"), &w(&p, "ba"), b), TriBool::True);
        assert_eq!(equal_words(&p, &w(&p, "abb"), &w(&p, "ba"), b), TriBool::True);
        let free = Presentation::new(["a", "b"], vec![]);
        assert_eq!(natural_leq(&free, &w(&free, "a a'"), &Word::empty(), b), TriBool::True);
        assert_eq!(natural_leq(&free, &w(&free, "a"), &w(&free, "b"), b), TriBool::False);
        assert_eq!(equal_words(&free, &w(&free, "a"), &w(&free, "a a' a"), b), TriBool::True);
    }

    #[test]
    fn equality_survives_tiny_budgets() {
        let p = aba_b();
        for max in [10, 50, 200] {
            assert_eq!(equal_words(&p, &w(&p, "b"), &w(&p, "aba"), Budget::vertices(max)), TriBool::True);
        }
        assert!(natural_leq(&p, &w(&p, "b"), &w(&p, "a"), Budget::vertices(50)).is_unknown());
    }

    #[test]
    fn idempotents() {
        let b = Budget::default();
        let free = Presentation::new(["a"], vec![]);
        assert_eq!(is_idempotent(&free, &w(&free, "a a'"), b), TriBool::True);
        let p = bs(2, 1);
        assert_eq!(is_idempotent(&p, &w(&p, "a"), b), TriBool::False);
        let loop_word = w(&p, "a b b a' b'");
        assert_eq!(is_idempotent(&p, &loop_word, b), TriBool::True);
        assert_eq!(equals_identity_in_group(&p, &loop_word, b), Ok(TriBool::True));
        assert_eq!(equals_identity_in_group(&p, &w(&p, "a"), b), Ok(TriBool::False));
        let non = Presentation::from_strs("a", &[("aa", "a")]);
        assert_eq!(equals_identity_in_group(&non, &w(&non, "a"), b), Err(StephenError::NotAdian));
    }

    #[test]
    fn positive_saturation_matches_generic() {
        let p = bs(2, 1);
        for s in ["abb", "a b b a'", "abbb", "aabbbb", "b a b", "a' b a b b"] {
            let word = w(&p, s);
            let g = schutzenberger(&p, &word, Budget::default());
            let sat = close_by_positive_saturation(&p, &word, Budget::default()).unwrap();
            assert!(g.is_closed() && sat.is_closed(), "{s}");
            assert!(g.complex.skeleton().birooted_isomorphic(sat.complex.skeleton()), "{s}");
            assert_eq!(g.complex.face_count(), sat.complex.face_count(), "{s}");
        }
        let free = Presentation::new(["a", "b"], vec![]);
        let word = w(&free, "a b' a' b b");
        let sat = close_by_positive_saturation(&free, &word, Budget::default()).unwrap();
        assert_eq!(sat.rounds_used, 0);
        assert!(sat.complex.skeleton().birooted_isomorphic(&WordGraph::munn_tree(&word)));
        assert_eq!(
            close_by_positive_saturation(&aba_b().with_relations(vec![]), &word_of(&[0]), Budget::default())
                .map(|o| o.is_closed()),
            Ok(true)
        );
        assert_eq!(
            close_by_positive_saturation(
                &Presentation::from_strs("a", &[("aa", "a")]),
                &word_of(&[0]),
                Budget::default()
            )
            .map(|o| o.is_closed()),
            Err(StephenError::NotAdian)
        );
    }

    fn word_of(g: &[GenId]) -> Word {
        Word(g.iter().map(|&x| Letter::pos(x)).collect())
    }
}
