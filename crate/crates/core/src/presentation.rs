//! Positive presentations: parsing, words, side graphs, and the structural
//! tests used to route a presentation to a decision procedure.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Dense generator index, `0..presentation.generators().len()`.
pub type GenId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: duplicate generator `{name}`")]
    DuplicateGenerator { line: usize, name: String },
    #[error("line {line}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, name: String },
    #[error("line {line}: empty relation side")]
    EmptyRelationSide { line: usize },
    #[error("line {line}: inverse letter `{token}` inside a relation")]
    InverseInRelation { line: usize, token: String },
    #[error("line {line}: invalid generator name `{name}`")]
    InvalidGeneratorName { line: usize, name: String },
    #[error("line {line}: malformed line: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("missing `generators:` line")]
    MissingGenerators,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("stray `'` in `{0}`")]
    StrayPrime(String),
}

/// A generator or its formal inverse. Ordered by `(gen, inverse)`, so the
/// positive letter sorts before its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: GenId,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(gen: GenId) -> Self {
        Letter { gen, inverse: false }
    }

    pub const fn neg(gen: GenId) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn is_positive(self) -> bool {
        !self.inverse
    }

    /// +1 or -1.
    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A word over `X ∪ X⁻¹`. The empty word is the monoid identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn positive(gens: &[GenId]) -> Self {
        Word(gens.iter().map(|&g| Letter::pos(g)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| l.is_positive())
    }

    /// Generator ids of a positive word; `None` if any letter is inverse.
    pub fn gens(&self) -> Option<Vec<GenId>> {
        self.0.iter().map(|l| l.is_positive().then_some(l.gen)).collect()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Free reduction: cancel adjacent `x x⁻¹` pairs.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn side(&self, side: RelSide) -> &Word {
        match side {
            RelSide::Lhs => &self.lhs,
            RelSide::Rhs => &self.rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelSide {
    Lhs,
    Rhs,
}

impl RelSide {
    pub fn other(self) -> Self {
        match self {
            RelSide::Lhs => RelSide::Rhs,
            RelSide::Rhs => RelSide::Lhs,
        }
    }
}

/// A positive presentation `⟨X | R⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    index: HashMap<String, GenId>,
    relations: Vec<Relation>,
}

impl Presentation {
    /// Builds a presentation from generator names and relations given as
    /// pairs of generator-id sequences. Panics on invalid input; intended for
    /// programmatic construction where the input is known to be well formed.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, relations: Vec<(Vec<GenId>, Vec<GenId>)>) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let index: HashMap<String, GenId> = names.iter().enumerate().map(|(i, n)| (n.clone(), i as GenId)).collect();
        assert_eq!(index.len(), names.len(), "duplicate generator name");
        let relations = relations
            .into_iter()
            .map(|(l, r)| {
                assert!(!l.is_empty() && !r.is_empty(), "empty relation side");
                assert!(l.iter().chain(&r).all(|&g| (g as usize) < names.len()), "unknown generator");
                Relation { lhs: Word::positive(&l), rhs: Word::positive(&r) }
            })
            .collect();
        Presentation { names, index, relations }
    }

    /// Convenience constructor for single-character generator names:
    /// `Presentation::from_strs("ab", &[("abb", "ba")])`.
    pub fn from_strs(gens: &str, relations: &[(&str, &str)]) -> Self {
        let names: Vec<String> = gens.chars().map(|c| c.to_string()).collect();
        let id = |c: char| gens.chars().position(|g| g == c).expect("unknown generator") as GenId;
        let rels = relations.iter().map(|(l, r)| (l.chars().map(id).collect(), r.chars().map(id).collect())).collect();
        Presentation::new(names, rels)
    }

    pub fn generators(&self) -> &[String] {
        &self.names
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn gen_id(&self, name: &str) -> Option<GenId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, gen: GenId) -> &str {
        &self.names[gen as usize]
    }

    /// Same generators, relations replaced.
    pub fn with_relations(&self, relations: Vec<Relation>) -> Self {
        Presentation { names: self.names.clone(), index: self.index.clone(), relations }
    }

    /// True when every generator name is a single character, which enables
    /// the compact word syntax.
    pub fn compact_names(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// The distinct R-words in order of first appearance.
    pub fn r_words(&self) -> Vec<Vec<GenId>> {
        let mut out: Vec<Vec<GenId>> = Vec::new();
        for rel in &self.relations {
            for side in [&rel.lhs, &rel.rhs] {
                let g = side.gens().expect("relations are positive");
                if !out.contains(&g) {
                    out.push(g);
                }
            }
        }
        out
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        w.letters()
            .iter()
            .map(|l| if l.inverse { format!("{}'", self.name(l.gen)) } else { self.name(l.gen).to_string() })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn format_gens(&self, g: &[GenId]) -> String {
        if g.is_empty() {
            return "ε".to_string();
        }
        g.iter().map(|&x| self.name(x)).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{} |", self.names.join(","))?;
        for (i, rel) in self.relations.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{} = {}", self.format_word(&rel.lhs), self.format_word(&rel.rhs))?;
        }
        write!(f, "⟩")
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name.chars().all(|c| !c.is_whitespace() && !c.is_control() && !matches!(c, '\'' | '=' | '#' | '.'))
}

/// Parses the line-oriented presentation format:
///
/// ```text
/// # comment
/// generators: a b
/// relation: a b b = b a
/// ```
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut names: Option<(Vec<String>, HashMap<String, GenId>)> = None;
    let mut relations = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(':')
            .ok_or_else(|| ParseError::Malformed { line, reason: "expected `generators:` or `relation:`".into() })?;
        match key.trim() {
            "generators" => {
                if names.is_some() {
                    return Err(ParseError::Malformed { line, reason: "second `generators:` line".into() });
                }
                let mut list = Vec::new();
                let mut index = HashMap::new();
                for tok in rest.split_whitespace() {
                    if !valid_name(tok) {
                        return Err(ParseError::InvalidGeneratorName { line, name: tok.into() });
                    }
                    if index.insert(tok.to_string(), list.len() as GenId).is_some() {
                        return Err(ParseError::DuplicateGenerator { line, name: tok.into() });
                    }
                    list.push(tok.to_string());
                }
                if list.is_empty() {
                    return Err(ParseError::Malformed { line, reason: "no generators declared".into() });
                }
                names = Some((list, index));
            }
            "relation" => {
                let (list, index) = names
                    .as_ref()
                    .ok_or_else(|| ParseError::Malformed { line, reason: "relation before `generators:`".into() })?;
                let mut sides = rest.split('=');
                let (l, r) = match (sides.next(), sides.next(), sides.next()) {
                    (Some(l), Some(r), None) => (l, r),
                    _ => return Err(ParseError::Malformed { line, reason: "relation needs exactly one `=`".into() }),
                };
                let compact = list.iter().all(|n| n.chars().count() == 1);
                let lhs = parse_relation_side(l, index, compact, line)?;
                let rhs = parse_relation_side(r, index, compact, line)?;
                relations.push(Relation { lhs, rhs });
            }
            other => {
                return Err(ParseError::Malformed { line, reason: format!("unknown key `{other}`") });
            }
        }
    }

    let (names, index) = names.ok_or(ParseError::MissingGenerators)?;
    Ok(Presentation { names, index, relations })
}

fn parse_relation_side(
    text: &str,
    index: &HashMap<String, GenId>,
    compact: bool,
    line: usize,
) -> Result<Word, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::EmptyRelationSide { line });
    }
    let w = parse_tokens(text, index, compact).map_err(|e| match e {
        WordError::UnknownGenerator(name) => ParseError::UnknownGenerator { line, name },
        WordError::StrayPrime(token) => ParseError::InverseInRelation { line, token },
    })?;
    if let Some(l) = w.letters().iter().find(|l| l.inverse) {
        let name = index.iter().find(|(_, &g)| g == l.gen).map(|(n, _)| n.clone()).unwrap_or_default();
        return Err(ParseError::InverseInRelation { line, token: format!("{name}'") });
    }
    Ok(w)
}

/// Parses a word: whitespace- or `.`-separated tokens, `tok'` for the
/// inverse; with single-character generator names an unseparated string
/// such as `ab'b` is also accepted.
pub fn parse_word(p: &Presentation, text: &str) -> Result<Word, WordError> {
    if text.trim() == "ε" && p.gen_id("ε").is_none() {
        return Ok(Word::empty());
    }
    parse_tokens(text, &p.index, p.compact_names())
}

fn parse_tokens(text: &str, index: &HashMap<String, GenId>, compact: bool) -> Result<Word, WordError> {
    let mut letters = Vec::new();
    for tok in text.split(|c: char| c.is_whitespace() || c == '.').filter(|t| !t.is_empty()) {
        let (base, inverse) = match tok.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (tok, false),
        };
        if let Some(&g) = index.get(base) {
            letters.push(Letter { gen: g, inverse });
            continue;
        }
        if !compact {
            if base.is_empty() || base.contains('\'') {
                return Err(WordError::StrayPrime(tok.into()));
            }
            return Err(WordError::UnknownGenerator(base.into()));
        }
        let mut pending: Vec<Letter> = Vec::new();
        for c in tok.chars() {
            if c == '\'' {
                match pending.last_mut() {
                    Some(l) if !l.inverse => l.inverse = true,
                    _ => return Err(WordError::StrayPrime(tok.into())),
                }
            } else {
                let g = index.get(c.to_string().as_str()).ok_or_else(|| WordError::UnknownGenerator(c.to_string()))?;
                pending.push(Letter::pos(*g));
            }
        }
        letters.extend(pending);
    }
    Ok(Word(letters))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `LG⟨X|R⟩` or `RG⟨X|R⟩`: one unordered edge per relation joining the
/// first (resp. last) letters of its two sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideGraph {
    pub vertices: usize,
    pub edges: Vec<(GenId, GenId)>,
}

impl SideGraph {
    /// A closed path, if any: a self-loop, a parallel pair, or a longer cycle.
    /// Returned as the sequence of vertices around the cycle.
    pub fn find_cycle(&self) -> Option<Vec<GenId>> {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b)| (a as usize, b as usize)).collect();
        undirected_cycle(self.vertices, &pairs).map(|(path, _)| path.into_iter().map(|v| v as GenId).collect())
    }

    pub fn is_forest(&self) -> bool {
        self.find_cycle().is_none()
    }
}

pub fn side_graph(p: &Presentation, side: Side) -> SideGraph {
    let pick = |w: &Word| -> GenId {
        let l = match side {
            Side::Left => w.letters().first(),
            Side::Right => w.letters().last(),
        };
        l.expect("relation sides are non-empty").gen
    };
    SideGraph {
        vertices: p.num_generators(),
        edges: p.relations().iter().map(|r| (pick(&r.lhs), pick(&r.rhs))).collect(),
    }
}

pub fn is_adian(p: &Presentation) -> bool {
    side_graph(p, Side::Left).is_forest() && side_graph(p, Side::Right).is_forest()
}

/// Finds a closed path in an undirected multigraph given by an edge list.
/// Returns the vertex cycle (first vertex not repeated) and the index of the
/// edge that closed it.
pub(crate) fn undirected_cycle(n: usize, edges: &[(usize, usize)]) -> Option<(Vec<usize>, usize)> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            // Path a ~> b in the forest built so far, closed by edge i.
            let path = forest_path(&adj, a, b);
            return Some((path, i));
        }
        parent[ra] = rb;
        adj[a].push(b);
        adj[b].push(a);
    }
    None
}

fn forest_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    if from == to {
        return vec![from];
    }
    let mut prev = vec![usize::MAX; adj.len()];
    let mut queue = std::collections::VecDeque::from([from]);
    prev[from] = from;
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &w in &adj[v] {
            if prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Which half of condition (★) a witness violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarKind {
    /// A proper prefix of `word` is a suffix of `other`.
    PrefixIsSuffix,
    /// A proper suffix of `word` is a prefix of `other`.
    SuffixIsPrefix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarWitness {
    pub kind: StarKind,
    pub factor: Vec<GenId>,
    pub word: Vec<GenId>,
    pub other: Vec<GenId>,
}

/// Condition (★): no proper prefix of an R-word is a suffix of any R-word
/// (itself included), and no proper suffix is a prefix of any R-word.
/// Returns the first violation found, or `None` if the condition holds.
pub fn check_star(p: &Presentation) -> Option<StarWitness> {
    let words = p.r_words();
    for word in &words {
        for len in 1..word.len() {
            let prefix = &word[..len];
            if let Some(other) = words.iter().find(|o| o.ends_with(prefix)) {
                return Some(StarWitness {
                    kind: StarKind::PrefixIsSuffix,
                    factor: prefix.to_vec(),
                    word: word.clone(),
                    other: other.clone(),
                });
            }
        }
    }
    for word in &words {
        for len in 1..word.len() {
            let suffix = &word[word.len() - len..];
            if let Some(other) = words.iter().find(|o| o.starts_with(suffix)) {
                return Some(StarWitness {
                    kind: StarKind::SuffixIsPrefix,
                    factor: suffix.to_vec(),
                    word: word.clone(),
                    other: other.clone(),
                });
            }
        }
    }
    None
}

pub fn satisfies_star(p: &Presentation) -> bool {
    check_star(p).is_none()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BsEdgeKind {
    /// `(u, x v y) ∈ R`.
    Rel,
    /// `u ≡ x v y` with `u ≠ v`.
    Subword,
    /// A relation whose sides contain no R-word properly; undirected.
    Sym,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsEdge {
    pub src: usize,
    pub dst: usize,
    pub x: Vec<GenId>,
    pub y: Vec<GenId>,
    pub kind: BsEdgeKind,
}

/// The bi-sided graph: vertices are the distinct R-words, edges record how
/// one R-word sits inside another (or inside the other side of a relation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSidedGraph {
    pub vertices: Vec<Vec<GenId>>,
    pub edges: Vec<BsEdge>,
}

fn occurrences<'a>(hay: &'a [GenId], needle: &'a [GenId]) -> impl Iterator<Item = usize> + 'a {
    let needle = needle.to_vec();
    (0..=hay.len().saturating_sub(needle.len()))
        .filter(move |&i| hay.len() >= needle.len() && hay[i..i + needle.len()] == needle[..])
}

fn contains_proper(hay: &[GenId], needle: &[GenId]) -> bool {
    needle.len() < hay.len() && occurrences(hay, needle).next().is_some()
}

pub fn build_bisided(p: &Presentation) -> BiSidedGraph {
    let vertices = p.r_words();
    let vid = |w: &[GenId]| vertices.iter().position(|v| v == w).expect("R-word");
    let mut edges = Vec::new();

    // Rel edges, both orientations of each relation.
    for rel in p.relations() {
        let (l, r) = (rel.lhs.gens().unwrap(), rel.rhs.gens().unwrap());
        for (u, w) in [(&l, &r), (&r, &l)] {
            for (vi, v) in vertices.iter().enumerate() {
                for pos in occurrences(w, v) {
                    let (x, y) = (&w[..pos], &w[pos + v.len()..]);
                    if !x.is_empty() && !y.is_empty() {
                        edges.push(BsEdge {
                            src: vid(u),
                            dst: vi,
                            x: x.to_vec(),
                            y: y.to_vec(),
                            kind: BsEdgeKind::Rel,
                        });
                    }
                }
            }
        }
    }

    for (ui, u) in vertices.iter().enumerate() {
        for (vi, v) in vertices.iter().enumerate() {
            if ui == vi {
                continue;
            }
            for pos in occurrences(u, v) {
                let (x, y) = (&u[..pos], &u[pos + v.len()..]);
                if !x.is_empty() && !y.is_empty() {
                    edges.push(BsEdge { src: ui, dst: vi, x: x.to_vec(), y: y.to_vec(), kind: BsEdgeKind::Subword });
                }
            }
        }
    }

    for rel in p.relations() {
        let (l, r) = (rel.lhs.gens().unwrap(), rel.rhs.gens().unwrap());
        let minimal = |s: &[GenId]| !vertices.iter().any(|v| contains_proper(s, v));
        if minimal(&l) && minimal(&r) {
            edges.push(BsEdge { src: vid(&l), dst: vid(&r), x: vec![], y: vec![], kind: BsEdgeKind::Sym });
        }
    }

    BiSidedGraph { vertices, edges }
}

impl BiSidedGraph {
    /// A closed path in the underlying undirected multigraph, as a vertex
    /// sequence. Parallel edges and loops count as closed paths.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.src, e.dst)).collect();
        undirected_cycle(self.vertices.len(), &pairs).map(|(path, _)| path)
    }

    pub fn is_forest(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.src].push(e.dst);
            adj[e.dst].push(e.src);
        }
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut members = vec![s];
            comp[s] = out.len();
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = out.len();
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

pub fn is_forest(bs: &BiSidedGraph) -> bool {
    bs.is_forest()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecidabilityClass {
    NonAdian,
    AdianStarForest,
    AdianBsFamily { m: usize, n: usize },
    AdianGeneric,
}

impl fmt::Display for DecidabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecidabilityClass::NonAdian => write!(f, "NonAdian"),
            DecidabilityClass::AdianStarForest => write!(f, "AdianStarForest"),
            DecidabilityClass::AdianBsFamily { m, n } => write!(f, "AdianBsFamily({m},{n})"),
            DecidabilityClass::AdianGeneric => write!(f, "AdianGeneric"),
        }
    }
}

pub fn classify(p: &Presentation) -> DecidabilityClass {
    if !is_adian(p) {
        return DecidabilityClass::NonAdian;
    }
    if let Some(bs) = crate::bs_family::detect_bs(p) {
        return DecidabilityClass::AdianBsFamily { m: bs.m, n: bs.n };
    }
    if satisfies_star(p) && build_bisided(p).is_forest() {
        DecidabilityClass::AdianStarForest
    } else {
        DecidabilityClass::AdianGeneric
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn bs(m: usize, n: usize) -> Presentation {
        let lhs = format!("a{}", "b".repeat(m));
        let rhs = format!("{}a", "b".repeat(n));
        Presentation::from_strs("ab", &[(&lhs, &rhs)])
    }

    pub fn aba_b() -> Presentation {
        Presentation::from_strs("ab", &[("aba", "b")])
    }

    pub fn eleven() -> Presentation {
        Presentation::from_strs("abcdefghijk", &[("a", "fbg"), ("a", "jck"), ("b", "hci"), ("c", "de")])
    }

    pub fn thirteen() -> Presentation {
        Presentation::from_strs("abcdefghijklm", &[("a", "fcg"), ("b", "hci"), ("c", "de"), ("l", "jmmk")])
    }
}
