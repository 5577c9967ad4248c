//! Birooted inverse word graphs.
//!
//! Only positive edges are stored. Each vertex keeps a sorted list of
//! outgoing `(generator, target)` pairs and a mirror list of incoming
//! `(generator, source)` pairs; an `x⁻¹` step out of `v` reads the incoming
//! list. The involution is therefore structural.
//!
//! Vertices live in a union-find forest. Ids are never reused; the
//! canonical id of a vertex is its union-find root. Between public calls
//! every root's adjacency lists hold canonical ids only, sorted and free of
//! duplicates.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::presentation::{GenId, Letter, Presentation, Word};

pub type VertexId = usize;

/// Vertices visited while reading a word; `len = |w| + 1`.
pub type PathTrace = Vec<VertexId>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("positive cycle through vertices {0:?}")]
    PositiveCycle(Vec<VertexId>),
}

#[derive(Debug, Clone, Copy)]
enum Dir {
    Out,
    In,
}

#[derive(Debug, Clone)]
pub struct WordGraph {
    parent: Vec<VertexId>,
    size: Vec<u32>,
    out: Vec<Vec<(GenId, VertexId)>>,
    inc: Vec<Vec<(GenId, VertexId)>>,
    alpha: VertexId,
    beta: VertexId,
    live: usize,
    fold_count: usize,
}

impl Default for WordGraph {
    fn default() -> Self {
        WordGraph::single()
    }
}

impl WordGraph {
    /// One vertex, `α = β`, no edges.
    pub fn single() -> Self {
        WordGraph {
            parent: vec![0],
            size: vec![1],
            out: vec![Vec::new()],
            inc: vec![Vec::new()],
            alpha: 0,
            beta: 0,
            live: 1,
            fold_count: 0,
        }
    }

    /// The linear graph of `w`: a path `α = γ₀ → γ₁ → … → γ_|w| = β`.
    /// Not folded.
    pub fn linear(w: &Word) -> Self {
        let mut g = WordGraph::single();
        let mut cur = g.alpha;
        for &l in w.letters() {
            let next = g.add_vertex();
            g.add_letter_edge(cur, l, next);
            cur = next;
        }
        g.beta = cur;
        g
    }

    /// `MT(w)`: the folded linear graph.
    pub fn munn_tree(w: &Word) -> Self {
        let mut g = WordGraph::linear(w);
        g.fold();
        g
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = self.parent.len();
        self.parent.push(id);
        self.size.push(1);
        self.out.push(Vec::new());
        self.inc.push(Vec::new());
        self.live += 1;
        id
    }

    /// Adds the positive edge `from --gen--> to` (and implicitly its inverse).
    /// Exact duplicates are ignored. May leave the graph non-deterministic.
    pub fn add_edge(&mut self, from: VertexId, gen: GenId, to: VertexId) {
        let (from, to) = (self.find(from), self.find(to));
        if let Err(pos) = self.out[from].binary_search(&(gen, to)) {
            self.out[from].insert(pos, (gen, to));
            let pos = self.inc[to].binary_search(&(gen, from)).unwrap_err();
            self.inc[to].insert(pos, (gen, from));
        }
    }

    /// Adds an edge labeled by `l` from `from` to `to`; an inverse letter is
    /// stored as the reversed positive edge.
    pub fn add_letter_edge(&mut self, from: VertexId, l: Letter, to: VertexId) {
        if l.is_positive() {
            self.add_edge(from, l.gen, to);
        } else {
            self.add_edge(to, l.gen, from);
        }
    }

    pub fn find(&self, mut v: VertexId) -> VertexId {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn find_mut(&mut self, v: VertexId) -> VertexId {
        let root = self.find(v);
        let mut cur = v;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn alpha(&self) -> VertexId {
        self.find(self.alpha)
    }

    pub fn beta(&self) -> VertexId {
        self.find(self.beta)
    }

    pub fn set_roots(&mut self, alpha: VertexId, beta: VertexId) {
        self.alpha = self.find(alpha);
        self.beta = self.find(beta);
    }

    /// Number of vertex merges performed by folding so far.
    pub fn fold_count(&self) -> usize {
        self.fold_count
    }

    pub fn vertex_count(&self) -> usize {
        self.live
    }

    /// Number of positive edges.
    pub fn edge_count(&self) -> usize {
        self.vertices().map(|v| self.out[v].len()).sum()
    }

    /// Upper bound (exclusive) on vertex ids ever issued.
    pub fn id_bound(&self) -> usize {
        self.parent.len()
    }

    pub fn is_canonical(&self, v: VertexId) -> bool {
        self.parent[v] == v
    }

    /// Canonical vertices in increasing id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.parent.len()).filter(move |&v| self.parent[v] == v)
    }

    pub fn out_edges(&self, v: VertexId) -> &[(GenId, VertexId)] {
        &self.out[self.find(v)]
    }

    pub fn in_edges(&self, v: VertexId) -> &[(GenId, VertexId)] {
        &self.inc[self.find(v)]
    }

    /// All positive edges `(source, generator, target)`, sorted.
    pub fn positive_edges(&self) -> Vec<(VertexId, GenId, VertexId)> {
        self.vertices().flat_map(|v| self.out[v].iter().map(move |&(g, t)| (v, g, t))).collect()
    }

    /// The vertex reached from `v` by one `l`-edge (the first one, if the
    /// graph is not deterministic).
    pub fn step(&self, v: VertexId, l: Letter) -> Option<VertexId> {
        let v = self.find(v);
        let list = if l.is_positive() { &self.out[v] } else { &self.inc[v] };
        let pos = list.partition_point(|&(g, _)| g < l.gen);
        list.get(pos).filter(|&&(g, _)| g == l.gen).map(|&(_, t)| self.find(t))
    }

    pub fn has_edge(&self, from: VertexId, gen: GenId, to: VertexId) -> bool {
        let (from, to) = (self.find(from), self.find(to));
        self.out[from].binary_search(&(gen, to)).is_ok()
    }

    pub fn is_deterministic(&self) -> bool {
        self.vertices().all(|v| {
            self.out[v].windows(2).all(|w| w[0].0 != w[1].0) && self.inc[v].windows(2).all(|w| w[0].0 != w[1].0)
        })
    }

    /// Checks that the incoming lists mirror the outgoing lists exactly.
    pub fn involution_holds(&self) -> bool {
        let mut fwd: Vec<(VertexId, GenId, VertexId)> = self.positive_edges();
        let mut back: Vec<(VertexId, GenId, VertexId)> =
            self.vertices().flat_map(|v| self.inc[v].iter().map(move |&(g, s)| (s, g, v))).collect();
        fwd.sort_unstable();
        back.sort_unstable();
        fwd == back
    }

    fn adj_mut(&mut self, dir: Dir) -> &mut Vec<Vec<(GenId, VertexId)>> {
        match dir {
            Dir::Out => &mut self.out,
            Dir::In => &mut self.inc,
        }
    }

    fn union(&mut self, a: VertexId, b: VertexId) -> VertexId {
        let (ra, rb) = (self.find_mut(a), self.find_mut(b));
        if ra == rb {
            return ra;
        }
        let (win, lose) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[lose] = win;
        self.size[win] += self.size[lose];
        let out = std::mem::take(&mut self.out[lose]);
        self.out[win].extend(out);
        let inc = std::mem::take(&mut self.inc[lose]);
        self.inc[win].extend(inc);
        self.live -= 1;
        self.fold_count += 1;
        win
    }

    /// Canonicalizes `v`'s list in direction `dir` and returns the first pair
    /// of distinct targets sharing a label.
    fn conflict(&mut self, v: VertexId, dir: Dir) -> Option<(VertexId, VertexId)> {
        let mut list = std::mem::take(&mut self.adj_mut(dir)[v]);
        for e in list.iter_mut() {
            e.1 = self.find_mut(e.1);
        }
        list.sort_unstable();
        list.dedup();
        let found = list.windows(2).find(|w| w[0].0 == w[1].0).map(|w| (w[0].1, w[1].1));
        self.adj_mut(dir)[v] = list;
        found
    }

    /// Folds equally labeled edges out of (and into) each vertex until the
    /// graph is deterministic. Returns the number of vertex merges.
    pub fn fold(&mut self) -> usize {
        let before = self.fold_count;
        let mut work: Vec<VertexId> = self.vertices().collect();
        work.reverse();
        while let Some(v) = work.pop() {
            let v = self.find_mut(v);
            let hit = match self.conflict(v, Dir::Out) {
                Some(pair) => Some(pair),
                None => self.conflict(v, Dir::In),
            };
            if let Some((a, b)) = hit {
                let r = self.union(a, b);
                work.push(r);
                work.push(v);
            }
        }
        self.normalize();
        self.fold_count - before
    }

    /// Consumes the graph and returns its folded form.
    pub fn fold_to_deterministic(mut self) -> Self {
        self.fold();
        self
    }

    fn normalize(&mut self) {
        for v in 0..self.parent.len() {
            self.find_mut(v);
        }
        for v in 0..self.parent.len() {
            if self.parent[v] != v {
                self.out[v].clear();
                self.inc[v].clear();
                continue;
            }
            for dir in [Dir::Out, Dir::In] {
                let mut list = std::mem::take(&mut self.adj_mut(dir)[v]);
                for e in list.iter_mut() {
                    e.1 = self.parent[e.1];
                }
                list.sort_unstable();
                list.dedup();
                self.adj_mut(dir)[v] = list;
            }
        }
        self.alpha = self.parent[self.alpha];
        self.beta = self.parent[self.beta];
    }

    /// Reads `w` from `start`. `None` if some step is missing.
    pub fn read_word(&self, start: VertexId, w: &Word) -> Option<PathTrace> {
        let mut trace = Vec::with_capacity(w.len() + 1);
        let mut cur = self.find(start);
        trace.push(cur);
        for &l in w.letters() {
            cur = self.step(cur, l)?;
            trace.push(cur);
        }
        Some(trace)
    }

    /// Reads a positive word given as generator ids.
    pub fn read_gens(&self, start: VertexId, gens: &[GenId]) -> Option<PathTrace> {
        let mut trace = Vec::with_capacity(gens.len() + 1);
        let mut cur = self.find(start);
        trace.push(cur);
        for &g in gens {
            cur = self.step(cur, Letter::pos(g))?;
            trace.push(cur);
        }
        Some(trace)
    }

    /// End vertex of reading `w` from `start`, without recording the trace.
    pub fn end_of(&self, start: VertexId, w: &Word) -> Option<VertexId> {
        w.letters().iter().try_fold(self.find(start), |v, &l| self.step(v, l))
    }

    /// `w` labels a path from `α` to `β`.
    pub fn accepts(&self, w: &Word) -> bool {
        self.end_of(self.alpha(), w) == Some(self.beta())
    }

    /// Letters leaving `v`, in `(generator, +1 before -1)` order.
    pub fn steps(&self, v: VertexId) -> Vec<(Letter, VertexId)> {
        let v = self.find(v);
        let mut steps: Vec<(Letter, VertexId)> = self.out[v]
            .iter()
            .map(|&(g, t)| (Letter::pos(g), t))
            .chain(self.inc[v].iter().map(|&(g, s)| (Letter::neg(g), s)))
            .collect();
        steps.sort_unstable();
        steps
    }

    /// Breadth-first numbering from `α`, exploring letters in a fixed order;
    /// vertices not reachable from `α` follow in id order.
    pub fn canonical_numbering(&self) -> HashMap<VertexId, usize> {
        let mut num: HashMap<VertexId, usize> = HashMap::with_capacity(self.live);
        let mut queue = VecDeque::new();
        num.insert(self.alpha(), 0);
        queue.push_back(self.alpha());
        while let Some(v) = queue.pop_front() {
            for (_, t) in self.steps(v) {
                if !num.contains_key(&t) {
                    num.insert(t, num.len());
                    queue.push_back(t);
                }
            }
        }
        for v in self.vertices() {
            if !num.contains_key(&v) {
                num.insert(v, num.len());
            }
        }
        num
    }

    pub fn is_alpha_connected(&self) -> bool {
        let mut seen = vec![false; self.parent.len()];
        let mut stack = vec![self.alpha()];
        seen[self.alpha()] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for (_, t) in self.steps(v) {
                if !seen[t] {
                    seen[t] = true;
                    count += 1;
                    stack.push(t);
                }
            }
        }
        count == self.live
    }

    /// Canonical form of a deterministic graph: renumbering by
    /// [`canonical_numbering`](Self::canonical_numbering) plus the sorted
    /// relabeled positive edge list.
    pub fn canonical_form(&self) -> CanonicalForm {
        let num = self.canonical_numbering();
        let mut edges: Vec<(usize, GenId, usize)> =
            self.positive_edges().into_iter().map(|(s, g, t)| (num[&s], g, num[&t])).collect();
        edges.sort_unstable();
        CanonicalForm { vertices: self.live, beta: num[&self.beta()], edges }
    }

    /// Label- and root-preserving isomorphism of deterministic,
    /// `α`-connected graphs.
    pub fn birooted_isomorphic(&self, other: &WordGraph) -> bool {
        if self.live != other.live || self.edge_count() != other.edge_count() {
            return false;
        }
        if self.is_deterministic() && other.is_deterministic() {
            return self.forced_isomorphism(other);
        }
        self.is_alpha_connected() && other.is_alpha_connected() && self.canonical_form() == other.canonical_form()
    }

    /// For deterministic graphs an isomorphism fixing `α` is determined by
    /// walking both graphs in parallel from `α`.
    fn forced_isomorphism(&self, other: &WordGraph) -> bool {
        let mut map = vec![usize::MAX; self.parent.len()];
        let mut back = vec![usize::MAX; other.parent.len()];
        let (a, b) = (self.alpha(), other.alpha());
        map[a] = b;
        back[b] = a;
        let mut queue = VecDeque::from([a]);
        let mut seen = 1;
        while let Some(v) = queue.pop_front() {
            let w = map[v];
            for (mine, theirs) in [(&self.out[v], &other.out[w]), (&self.inc[v], &other.inc[w])] {
                if mine.len() != theirs.len() {
                    return false;
                }
                for (&(g, t), &(h, u)) in mine.iter().zip(theirs.iter()) {
                    if g != h {
                        return false;
                    }
                    match (map[t], back[u]) {
                        (usize::MAX, usize::MAX) => {
                            map[t] = u;
                            back[u] = t;
                            seen += 1;
                            queue.push_back(t);
                        }
                        (x, _) if x == u => {}
                        _ => return false,
                    }
                }
            }
        }
        seen == self.live && map[self.beta()] == other.beta()
    }

    /// A directed cycle of positive edges, as the vertex sequence around it.
    pub fn find_positive_cycle(&self) -> Option<Vec<VertexId>> {
        const WHITE: u8 = 0;
        const GRAY: u8 = 1;
        const BLACK: u8 = 2;
        let mut color = vec![WHITE; self.parent.len()];
        for root in self.vertices() {
            if color[root] != WHITE {
                continue;
            }
            let mut stack: Vec<(VertexId, usize)> = vec![(root, 0)];
            color[root] = GRAY;
            while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
                if let Some(&(_, t)) = self.out[v].get(*idx) {
                    *idx += 1;
                    match color[t] {
                        WHITE => {
                            color[t] = GRAY;
                            stack.push((t, 0));
                        }
                        GRAY => {
                            let pos = stack.iter().position(|&(u, _)| u == t).unwrap();
                            return Some(stack[pos..].iter().map(|&(u, _)| u).collect());
                        }
                        _ => {}
                    }
                } else {
                    color[v] = BLACK;
                    stack.pop();
                }
            }
        }
        None
    }

    /// Every positive path from `start` that no positive edge extends, as
    /// `(label, end)`, in lexicographic order of generator ids.
    pub fn maximal_positive_paths(&self, start: VertexId) -> Result<Vec<(Word, VertexId)>, GraphError> {
        if let Some(cycle) = self.find_positive_cycle() {
            return Err(GraphError::PositiveCycle(cycle));
        }
        let mut out = Vec::new();
        let mut label: Vec<GenId> = Vec::new();
        let mut stack: Vec<(VertexId, usize)> = vec![(self.find(start), 0)];
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            if self.out[v].is_empty() {
                out.push((Word::positive(&label), v));
                stack.pop();
                label.pop();
                continue;
            }
            if let Some(&(g, t)) = self.out[v].get(*idx) {
                *idx += 1;
                label.push(g);
                stack.push((t, 0));
            } else {
                stack.pop();
                label.pop();
            }
        }
        Ok(out)
    }

    /// Vertices with no incoming positive edge.
    pub fn positive_sources(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.inc[v].is_empty()).collect()
    }

    /// Vertices with no outgoing positive edge.
    pub fn positive_sinks(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.out[v].is_empty()).collect()
    }

    /// The same graph with every edge reversed and the roots swapped.
    pub fn reversed(&self) -> WordGraph {
        let mut g = self.clone();
        std::mem::swap(&mut g.out, &mut g.inc);
        std::mem::swap(&mut g.alpha, &mut g.beta);
        g
    }

    /// Graphviz rendering. `α` is drawn as a double circle, `β` in bold.
    pub fn to_dot(&self, p: &Presentation) -> String {
        let mut s = String::new();
        self.write_dot_body(p, &self.canonical_numbering(), &mut s);
        s.push_str("}\n");
        s
    }

    pub(crate) fn write_dot_body(&self, p: &Presentation, num: &HashMap<VertexId, usize>, s: &mut String) {
        s.push_str("digraph schutzenberger {\n  rankdir=LR;\n  node [shape=circle];\n");
        let (a, b) = (num[&self.alpha()], num[&self.beta()]);
        if a == b {
            let _ = writeln!(s, "  {a} [shape=doublecircle, style=bold];");
        } else {
            let _ = writeln!(s, "  {a} [shape=doublecircle];");
            let _ = writeln!(s, "  {b} [style=bold];");
        }
        let mut order: Vec<(usize, VertexId)> = self.vertices().map(|v| (num[&v], v)).collect();
        order.sort_unstable();
        for &(n, _) in &order {
            if n != a && n != b {
                let _ = writeln!(s, "  {n};");
            }
        }
        let mut edges: Vec<(usize, GenId, usize)> =
            self.positive_edges().into_iter().map(|(u, g, v)| (num[&u], g, num[&v])).collect();
        edges.sort_unstable();
        for (u, g, v) in edges {
            let _ = writeln!(s, "  {u} -> {v} [label=\"{}\"];", p.name(g));
        }
    }
}

/// See [`WordGraph::canonical_form`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub vertices: usize,
    pub beta: usize,
    pub edges: Vec<(usize, GenId, usize)>,
}
