//! Schützenberger complexes: a word graph plus 2-cells.
//!
//! A face is one instance of a relation `(r, s)` whose two sides are read
//! from a common base vertex to a common end vertex. Faces are stored with
//! both full vertex traces and deduplicated on the canonicalized traces, so
//! two faces are identified exactly when folding identifies their entire
//! boundaries.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::presentation::{GenId, Presentation, RelSide, Word};
use crate::wordgraph::{PathTrace, VertexId, WordGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("neither side of relation {relation} is readable from {base} to {end}")]
    SideNotReadable { relation: usize, base: VertexId, end: VertexId },
    #[error("skeleton is not connected from α")]
    NotConnected,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub relation: usize,
    pub lhs: PathTrace,
    pub rhs: PathTrace,
}

impl Face {
    pub fn base(&self) -> VertexId {
        self.lhs[0]
    }

    pub fn end(&self) -> VertexId {
        *self.lhs.last().expect("non-empty trace")
    }
}

#[derive(Debug, Clone)]
pub struct Complex {
    relations: Vec<(Vec<GenId>, Vec<GenId>)>,
    skeleton: WordGraph,
    faces: BTreeSet<Face>,
}

/// Result of [`Complex::betti_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BettiReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub cycle_rank: i64,
    pub boundary_rank: usize,
    pub pass: bool,
}

impl Complex {
    pub fn new(p: &Presentation, skeleton: WordGraph) -> Self {
        let relations =
            p.relations().iter().map(|r| (r.lhs.gens().expect("positive"), r.rhs.gens().expect("positive"))).collect();
        Complex { relations, skeleton, faces: BTreeSet::new() }
    }

    pub(crate) fn from_parts(
        relations: Vec<(Vec<GenId>, Vec<GenId>)>,
        skeleton: WordGraph,
        faces: impl IntoIterator<Item = Face>,
    ) -> Self {
        Complex { relations, skeleton, faces: faces.into_iter().collect() }
    }

    /// Face-free complex on the Munn tree of `w`.
    pub fn from_word(p: &Presentation, w: &Word) -> Self {
        Complex::new(p, WordGraph::munn_tree(w))
    }

    pub fn skeleton(&self) -> &WordGraph {
        &self.skeleton
    }

    pub(crate) fn skeleton_mut(&mut self) -> &mut WordGraph {
        &mut self.skeleton
    }

    pub fn faces(&self) -> &BTreeSet<Face> {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    pub fn relation_side(&self, relation: usize, side: RelSide) -> &[GenId] {
        let (l, r) = &self.relations[relation];
        match side {
            RelSide::Lhs => l,
            RelSide::Rhs => r,
        }
    }

    /// Longest relation side.
    pub fn max_side_len(&self) -> usize {
        self.relations.iter().map(|(l, r)| l.len().max(r.len())).max().unwrap_or(0)
    }

    pub fn remove_face(&mut self, face: &Face) -> bool {
        self.faces.remove(face)
    }

    /// Reads `side` of `relation` from `base`, returning the trace only if it
    /// ends at `end`.
    pub fn read_side(&self, relation: usize, side: RelSide, base: VertexId, end: VertexId) -> Option<PathTrace> {
        let trace = self.skeleton.read_gens(base, self.relation_side(relation, side))?;
        (*trace.last().unwrap() == self.skeleton.find(end)).then_some(trace)
    }

    /// Sews a fresh path labeled by `side` of `relation` from `base` to
    /// `end` and returns its trace. No folding.
    pub(crate) fn glue_side(&mut self, relation: usize, side: RelSide, base: VertexId, end: VertexId) -> PathTrace {
        let gens = self.relation_side(relation, side).to_vec();
        let mut trace = Vec::with_capacity(gens.len() + 1);
        let mut cur = self.skeleton.find(base);
        trace.push(cur);
        for (i, &g) in gens.iter().enumerate() {
            let next = if i + 1 == gens.len() { self.skeleton.find(end) } else { self.skeleton.add_vertex() };
            self.skeleton.add_edge(cur, g, next);
            trace.push(next);
            cur = next;
        }
        trace
    }

    pub(crate) fn record_face(&mut self, relation: usize, lhs: PathTrace, rhs: PathTrace) -> bool {
        self.faces.insert(Face { relation, lhs, rhs })
    }

    /// Attaches a 2-cell for `relation` between `base` and `end`. If only one
    /// side is readable the other side is sewn on; if both are readable only
    /// the face is recorded. Returns whether a path was sewn.
    pub fn attach_face(&mut self, relation: usize, base: VertexId, end: VertexId) -> Result<bool, ComplexError> {
        let lhs = self.read_side(relation, RelSide::Lhs, base, end);
        let rhs = self.read_side(relation, RelSide::Rhs, base, end);
        let (lhs, rhs, sewn) = match (lhs, rhs) {
            (Some(l), Some(r)) => (l, r, false),
            (Some(l), None) => {
                let r = self.glue_side(relation, RelSide::Rhs, base, end);
                (l, r, true)
            }
            (None, Some(r)) => {
                let l = self.glue_side(relation, RelSide::Lhs, base, end);
                (l, r, true)
            }
            (None, None) => return Err(ComplexError::SideNotReadable { relation, base, end }),
        };
        self.record_face(relation, lhs, rhs);
        Ok(sewn)
    }

    /// Rewrites every face through the skeleton's union-find and drops
    /// duplicates.
    pub fn canonicalize_faces(&mut self) {
        let sk = &self.skeleton;
        let canon = |t: &PathTrace| t.iter().map(|&v| sk.find(v)).collect::<Vec<_>>();
        self.faces =
            self.faces.iter().map(|f| Face { relation: f.relation, lhs: canon(&f.lhs), rhs: canon(&f.rhs) }).collect();
    }

    /// Folds the skeleton and canonicalizes faces. Returns vertex merges.
    pub fn fold(&mut self) -> usize {
        let merged = self.skeleton.fold();
        self.canonicalize_faces();
        merged
    }

    /// Every face's traces are readable in the skeleton with the labels of
    /// its relation.
    pub fn faces_consistent(&self) -> bool {
        self.faces.iter().all(|f| {
            let base = f.base();
            self.skeleton.read_gens(base, self.relation_side(f.relation, RelSide::Lhs)).as_ref() == Some(&f.lhs)
                && self.skeleton.read_gens(base, self.relation_side(f.relation, RelSide::Rhs)).as_ref() == Some(&f.rhs)
                && f.lhs.last() == f.rhs.last()
        })
    }

    /// Glues a copy of `piece` into `self`, identifying each anchored piece
    /// vertex with the given vertex of `self`. Piece vertices reachable from
    /// an anchor along edges already present in `self` are mapped onto the
    /// existing vertices; the rest are created fresh. Leaves the skeleton
    /// possibly non-deterministic; call [`fold`](Self::fold) afterwards.
    pub fn glue(&mut self, piece: &Complex, anchors: &[(VertexId, VertexId)]) {
        const UNSET: VertexId = VertexId::MAX;
        let psk = &piece.skeleton;
        let mut map = vec![UNSET; psk.id_bound()];
        let mut queue = VecDeque::new();
        for &(pv, sv) in anchors {
            let (pv, sv) = (psk.find(pv), self.skeleton.find(sv));
            if map[pv] != UNSET {
                debug_assert_eq!(self.skeleton.find(map[pv]), sv, "conflicting anchors");
                continue;
            }
            map[pv] = sv;
            queue.push_back(pv);
        }
        while let Some(pv) = queue.pop_front() {
            let sv = map[pv];
            for (l, pt) in psk.steps(pv) {
                if map[pt] != UNSET {
                    continue;
                }
                if let Some(st) = self.skeleton.step(sv, l) {
                    map[pt] = st;
                    queue.push_back(pt);
                }
            }
        }
        for pv in psk.vertices() {
            if map[pv] == UNSET {
                map[pv] = self.skeleton.add_vertex();
            }
        }
        for (u, g, v) in psk.positive_edges() {
            self.skeleton.add_edge(map[u], g, map[v]);
        }
        for f in &piece.faces {
            let m = |t: &PathTrace| t.iter().map(|v| map[psk.find(*v)]).collect::<Vec<_>>();
            self.faces.insert(Face { relation: f.relation, lhs: m(&f.lhs), rhs: m(&f.rhs) });
        }
    }

    /// Compares `V − E + 1`-style cycle rank of the 1-skeleton with the
    /// rational rank of the face boundaries. Equality means every cycle of
    /// the skeleton is rationally a sum of face boundaries.
    pub fn betti_check(&self) -> Result<BettiReport, ComplexError> {
        let sk = &self.skeleton;
        if !sk.is_alpha_connected() {
            return Err(ComplexError::NotConnected);
        }
        let edges = sk.positive_edges();
        let index: HashMap<(VertexId, GenId, VertexId), usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut rows: Vec<Vec<(usize, i64)>> = Vec::with_capacity(self.faces.len());
        for f in &self.faces {
            let mut row: HashMap<usize, i64> = HashMap::new();
            for (side, trace, sign) in [(RelSide::Lhs, &f.lhs, 1i64), (RelSide::Rhs, &f.rhs, -1)] {
                for (i, &g) in self.relation_side(f.relation, side).iter().enumerate() {
                    let e = (sk.find(trace[i]), g, sk.find(trace[i + 1]));
                    *row.entry(index[&e]).or_insert(0) += sign;
                }
            }
            let mut row: Vec<(usize, i64)> = row.into_iter().filter(|&(_, c)| c != 0).collect();
            row.sort_unstable();
            rows.push(row);
        }
        let boundary_rank = rational_rank(rows, edges.len());
        let (v, e) = (sk.vertex_count(), edges.len());
        let cycle_rank = e as i64 - v as i64 + 1;
        Ok(BettiReport {
            vertices: v,
            edges: e,
            faces: self.faces.len(),
            cycle_rank,
            boundary_rank,
            pass: cycle_rank == boundary_rank as i64,
        })
    }

    /// DOT rendering of the skeleton with one comment line per face.
    pub fn to_dot(&self, p: &Presentation) -> String {
        let num = self.skeleton.canonical_numbering();
        let mut s = String::new();
        self.skeleton.write_dot_body(p, &num, &mut s);
        let mut faces: Vec<(usize, Vec<usize>, Vec<usize>)> = self
            .faces
            .iter()
            .map(|f| {
                let m = |t: &PathTrace| t.iter().map(|v| num[&self.skeleton.find(*v)]).collect::<Vec<_>>();
                (f.relation, m(&f.lhs), m(&f.rhs))
            })
            .collect();
        faces.sort();
        for (r, l, rh) in faces {
            let _ = writeln!(s, "  // face relation={r} lhs={l:?} rhs={rh:?}");
        }
        s.push_str("}\n");
        s
    }
}

/// Rank over ℚ of a sparse integer matrix given by rows of
/// `(column, coefficient)`.
///
/// Rows with a column that no other live row touches are peeled off first
/// (each contributes exactly one to the rank); the remaining core is reduced
/// by fraction-free elimination, dividing each row by the gcd of its
/// entries to keep coefficients small.
pub fn rational_rank(rows: Vec<Vec<(usize, i64)>>, ncols: usize) -> usize {
    let mut alive: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    let mut col_count = vec![0usize; ncols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r {
            col_rows[c].push(i);
            col_count[c] += 1;
        }
    }
    let mut rank = 0;
    let mut queue: Vec<usize> = (0..ncols).filter(|&c| col_count[c] == 1).collect();
    while let Some(c) = queue.pop() {
        if col_count[c] != 1 {
            continue;
        }
        let Some(&r) = col_rows[c].iter().find(|&&r| alive[r]) else { continue };
        alive[r] = false;
        rank += 1;
        for &(cc, _) in &rows[r] {
            col_count[cc] -= 1;
            if col_count[cc] == 1 {
                queue.push(cc);
            }
        }
    }

    let core: Vec<&Vec<(usize, i64)>> = rows.iter().enumerate().filter(|&(i, _)| alive[i]).map(|(_, r)| r).collect();
    if core.is_empty() {
        return rank;
    }
    let mut cols: Vec<usize> = core.iter().flat_map(|r| r.iter().map(|&(c, _)| c)).collect();
    cols.sort_unstable();
    cols.dedup();
    let col_pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut m: Vec<Vec<i128>> = core
        .iter()
        .map(|r| {
            let mut dense = vec![0i128; cols.len()];
            for &(c, v) in r.iter() {
                dense[col_pos[&c]] = v as i128;
            }
            dense
        })
        .collect();
    rank + integer_rank(&mut m)
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn integer_rank(m: &mut [Vec<i128>]) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).filter(|&r| m[r][col] != 0).min_by_key(|&r| m[r][col].abs()) else {
            continue;
        };
        m.swap(rank, piv);
        let (top, below) = m.split_at_mut(rank + 1);
        let pivot = &top[rank][col..];
        let p = pivot[0];
        for row in below.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let g = gcd(p, f);
            let (mp, mf) = (p / g, f / g);
            let mut content = 0i128;
            for (x, &y) in row[col..].iter_mut().zip(pivot) {
                *x = x
                    .checked_mul(mp)
                    .and_then(|x| y.checked_mul(mf).and_then(|y| x.checked_sub(y)))
                    .expect("coefficient overflow in rank computation");
                content = gcd(content, *x);
            }
            if content > 1 {
                row[col..].iter_mut().for_each(|x| *x /= content);
            }
        }
        rank += 1;
    }
    rank
}
