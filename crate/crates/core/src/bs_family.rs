//! Direct constructions of Schützenberger complexes over
//! `⟨a,b | a bᵐ = bⁿ a⟩`.
//!
//! Drawing `a`-edges horizontally and `b`-edges vertically, the complex of
//! `aᵏbᵗ` is a staircase of columns of cells built leftwards from the
//! `bᵗ` segment, and the complex of `bᵗaᵏ` one built rightwards from it.
//! The complex of an arbitrary positive word is obtained by gluing such
//! blocks along its maximal `aᵏbᵗ` and `bᵗaᵏ` paths until nothing new
//! appears.
//!
//! The column constructions assume `m > n`. For `m < n` everything is
//! computed for the reversed word over `⟨a,b | a bⁿ = bᵐ a⟩` and reversed
//! back.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::complex::{Complex, Face};
use crate::presentation::{GenId, Letter, Presentation, Word};
use crate::wordgraph::{PathTrace, VertexId, WordGraph};

/// Parameters of a presentation `⟨a,b | a bᵐ = bⁿ a⟩` after normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BsParams {
    pub m: usize,
    pub n: usize,
    pub a_gen: GenId,
    pub b_gen: GenId,
    /// The relation is stored as `bⁿ a = a bᵐ`.
    pub sides_swapped: bool,
}

/// Recognizes `a bᵐ = bⁿ a` up to renaming the generators and swapping the
/// two sides of the relation.
pub fn detect_bs(p: &Presentation) -> Option<BsParams> {
    if p.num_generators() != 2 || p.relations().len() != 1 {
        return None;
    }
    let rel = &p.relations()[0];
    let (l, r) = (rel.lhs.gens()?, rel.rhs.gens()?);
    for (a, b) in [(0, 1), (1, 0)] {
        for (swapped, (abm, bna)) in [(false, (&l, &r)), (true, (&r, &l))] {
            let m = abm.len().wrapping_sub(1);
            let n = bna.len().wrapping_sub(1);
            let abm_ok = abm.len() >= 2 && abm[0] == a && abm[1..].iter().all(|&g| g == b);
            let bna_ok = bna.len() >= 2 && *bna.last().unwrap() == a && bna[..n].iter().all(|&g| g == b);
            if abm_ok && bna_ok {
                return Some(BsParams { m, n, a_gen: a, b_gen: b, sides_swapped: swapped });
            }
        }
    }
    None
}

impl BsParams {
    /// `(a bᵐ, bⁿ a)` as generator ids.
    fn normal_relation(&self) -> (Vec<GenId>, Vec<GenId>) {
        let mut abm = vec![self.a_gen];
        abm.extend(std::iter::repeat_n(self.b_gen, self.m));
        let mut bna = vec![self.b_gen; self.n];
        bna.push(self.a_gen);
        (abm, bna)
    }

    /// The relation as it is stored in the presentation.
    fn stored_relation(&self) -> (Vec<GenId>, Vec<GenId>) {
        let (abm, bna) = self.normal_relation();
        if self.sides_swapped {
            (bna, abm)
        } else {
            (abm, bna)
        }
    }

    fn mirrored(&self) -> BsParams {
        BsParams { m: self.n, n: self.m, sides_swapped: false, ..*self }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BsError {
    #[error("word is not positive")]
    NotPositive,
    #[error("word uses generator {0}, which is neither a nor b")]
    WrongAlphabet(GenId),
    #[error("m = n is not handled by the column constructions")]
    EqualExponents,
}

/// A complex with faces stored as `(a bᵐ trace, bⁿ a trace)`.
struct Raw {
    g: WordGraph,
    faces: Vec<(PathTrace, PathTrace)>,
    segments: Vec<usize>,
}

impl Raw {
    /// Path `α = x₀ –a→ … –a→ x_len`; returns the vertices.
    fn a_path(g: &mut WordGraph, from: VertexId, gen: GenId, len: usize) -> Vec<VertexId> {
        let mut xs = vec![from];
        for _ in 0..len {
            let v = g.add_vertex();
            g.add_edge(*xs.last().unwrap(), gen, v);
            xs.push(v);
        }
        xs
    }

    fn into_complex(self, bp: &BsParams) -> Complex {
        let faces = self.faces.into_iter().map(|(abm, bna)| {
            if bp.sides_swapped {
                Face { relation: 0, lhs: bna, rhs: abm }
            } else {
                Face { relation: 0, lhs: abm, rhs: bna }
            }
        });
        let mut c = Complex::from_parts(vec![bp.stored_relation()], self.g, faces);
        c.canonicalize_faces();
        c
    }
}

/// Columns for `aᵏbᵗ`, any `m, n ≥ 1`.
fn pos_raw(bp: &BsParams, k: usize, t: usize) -> Raw {
    let (a, b, m, n) = (bp.a_gen, bp.b_gen, bp.m, bp.n);
    let mut g = WordGraph::single();
    let xs = Raw::a_path(&mut g, 0, a, k);
    let mut right = Raw::a_path(&mut g, xs[k], b, t);
    g.set_roots(xs[0], *right.last().unwrap());
    let mut faces = Vec::new();
    let mut segments = vec![t];
    if k == 0 {
        return Raw { g, faces, segments };
    }
    for c in (0..k).rev() {
        let q = (right.len() - 1) / m;
        if q == 0 {
            break;
        }
        let left = Raw::a_path(&mut g, xs[c], b, n * q);
        for j in 1..=q {
            g.add_edge(left[j * n], a, right[j * m]);
        }
        for i in 0..q {
            let mut abm = vec![left[i * n]];
            abm.extend_from_slice(&right[i * m..=(i + 1) * m]);
            let mut bna = left[i * n..=(i + 1) * n].to_vec();
            bna.push(right[(i + 1) * m]);
            faces.push((abm, bna));
        }
        segments.push(n * q);
        right = left;
    }
    Raw { g, faces, segments }
}

/// Columns for `bᵗaᵏ`, any `m, n ≥ 1`. Cells hang from the top of each
/// column so that the bottom cell ends at the `a`-path.
fn neg_raw(bp: &BsParams, t: usize, k: usize) -> Raw {
    let (a, b, m, n) = (bp.a_gen, bp.b_gen, bp.m, bp.n);
    let mut g = WordGraph::single();
    let mut left = Raw::a_path(&mut g, 0, b, t);
    let ys = Raw::a_path(&mut g, *left.last().unwrap(), a, k);
    g.set_roots(left[0], ys[k]);
    let mut faces = Vec::new();
    let mut segments = vec![t];
    for &y in &ys[1..] {
        let s = left.len() - 1;
        let q = s / n;
        if q == 0 {
            break;
        }
        let top = s - q * n;
        let mut right: Vec<VertexId> = (0..m * q).map(|_| g.add_vertex()).collect();
        right.push(y);
        for w in right.windows(2) {
            g.add_edge(w[0], b, w[1]);
        }
        for i in 0..q {
            g.add_edge(left[top + i * n], a, right[i * m]);
        }
        for i in 0..q {
            let mut abm = vec![left[top + i * n]];
            abm.extend_from_slice(&right[i * m..=(i + 1) * m]);
            let mut bna = left[top + i * n..=top + (i + 1) * n].to_vec();
            bna.push(right[(i + 1) * m]);
            faces.push((abm, bna));
        }
        segments.push(m * q);
        left = right;
    }
    Raw { g, faces, segments }
}

/// Reverses every edge and swaps the roots. A face of the mirrored relation
/// `a bⁿ = bᵐ a` read backwards is a face of `a bᵐ = bⁿ a` with the sides
/// exchanged.
fn reverse_raw(r: Raw) -> Raw {
    let rev = |t: PathTrace| t.into_iter().rev().collect::<Vec<_>>();
    Raw {
        g: r.g.reversed(),
        faces: r.faces.into_iter().map(|(abn, bma)| (rev(bma), rev(abn))).collect(),
        segments: r.segments,
    }
}

/// Vertical segment lengths of `SC(aᵏbᵗ)`, starting with `t`, one entry per
/// column of cells. For `m > n` the sequence strictly decreases.
pub fn pos_block_segments(bp: &BsParams, k: usize, t: usize) -> Vec<usize> {
    pos_raw(bp, k, t).segments
}

/// Vertical segment lengths of `SC(bᵗaᵏ)`, starting with `t`.
pub fn neg_block_segments(bp: &BsParams, t: usize, k: usize) -> Vec<usize> {
    neg_raw(bp, t, k).segments
}

/// `SC(aᵏbᵗ)`.
pub fn sc_pos_block(bp: &BsParams, k: usize, t: usize) -> Complex {
    if bp.m < bp.n {
        reverse_raw(neg_raw(&bp.mirrored(), t, k)).into_complex(bp)
    } else {
        pos_raw(bp, k, t).into_complex(bp)
    }
}

/// `SC(bᵗaᵏ)`.
pub fn sc_neg_block(bp: &BsParams, t: usize, k: usize) -> Complex {
    if bp.m < bp.n {
        reverse_raw(pos_raw(&bp.mirrored(), k, t)).into_complex(bp)
    } else {
        neg_raw(bp, t, k).into_complex(bp)
    }
}

#[derive(Debug, Clone)]
pub struct BsOutcome {
    pub complex: Complex,
    /// Block-gluing passes that changed the complex.
    pub waves: usize,
    pub fold_merges: usize,
}

/// Number of maximal `aᵏbᵗ` factors (`k, t ≥ 1`) of `w`.
pub fn alternations(bp: &BsParams, w: &[GenId]) -> usize {
    w.windows(2).filter(|x| x[0] == bp.a_gen && x[1] == bp.b_gen).count()
}

fn check_word(bp: &BsParams, w: &Word) -> Result<Vec<GenId>, BsError> {
    let gens = w.gens().ok_or(BsError::NotPositive)?;
    if let Some(&g) = gens.iter().find(|&&g| g != bp.a_gen && g != bp.b_gen) {
        return Err(BsError::WrongAlphabet(g));
    }
    Ok(gens)
}

/// Cached closed block: `(positive side, first exponent, second exponent)`.
type BlockKey = (bool, usize, usize);

/// `SC(w)` for a positive word `w`, by alternating waves of `aᵏbᵗ` blocks
/// and `bᵗaᵏ` blocks until neither kind adds anything.
pub fn sc_positive_word(bp: &BsParams, w: &Word) -> Result<BsOutcome, BsError> {
    let gens = check_word(bp, w)?;
    if bp.m == bp.n {
        return Err(BsError::EqualExponents);
    }
    if bp.m > bp.n {
        let (g, faces, waves, merges) = waves_normal(bp, &gens);
        let raw = Raw { g, faces, segments: Vec::new() };
        return Ok(BsOutcome { complex: raw.into_complex(bp), waves, fold_merges: merges });
    }
    let mirror = bp.mirrored();
    let rev: Vec<GenId> = gens.iter().rev().copied().collect();
    let (g, faces, waves, merges) = waves_normal(&mirror, &rev);
    let raw = reverse_raw(Raw { g, faces, segments: Vec::new() });
    Ok(BsOutcome { complex: raw.into_complex(bp), waves, fold_merges: merges })
}

type FaceList = Vec<(PathTrace, PathTrace)>;

/// Wave loop for `m > n`, with faces in `(a bᵐ, bⁿ a)` orientation.
fn waves_normal(bp: &BsParams, gens: &[GenId]) -> (WordGraph, FaceList, usize, usize) {
    let relation = bp.normal_relation();
    let plain = BsParams { sides_swapped: false, ..*bp };
    let mut c = Complex::from_parts(vec![relation], WordGraph::linear(&Word::positive(gens)), []);
    let (a, b) = (bp.a_gen, bp.b_gen);
    let mut seen: HashSet<(bool, VertexId, usize, usize)> = HashSet::new();
    let mut blocks: HashMap<BlockKey, Complex> = HashMap::new();
    let mut waves = 0;
    let mut merges = 0;
    let mut idle = 0;
    let mut pos_side = true;
    while idle < 2 {
        let (first, second) = if pos_side { (a, b) } else { (b, a) };
        let sk = c.skeleton();
        let mut jobs = Vec::new();
        for v in sk.vertices() {
            if sk.step(v, Letter::neg(first)).is_none() || sk.step(v, Letter::pos(second)).is_none() {
                continue;
            }
            let mut start = v;
            let mut back = 0;
            while let Some(u) = sk.step(start, Letter::neg(first)) {
                start = u;
                back += 1;
            }
            let mut fwd = 0;
            let mut end = v;
            while let Some(u) = sk.step(end, Letter::pos(second)) {
                end = u;
                fwd += 1;
            }
            if seen.insert((pos_side, start, back, fwd)) {
                jobs.push((start, back, fwd));
            }
        }
        let shape = (c.skeleton().vertex_count(), c.skeleton().edge_count(), c.face_count());
        let glued: Vec<(BlockKey, Vec<(VertexId, VertexId)>)> = jobs
            .into_iter()
            .map(|(start, back, fwd)| {
                let block = blocks.entry((pos_side, back, fwd)).or_insert_with(|| {
                    if pos_side {
                        sc_pos_block(&plain, back, fwd)
                    } else {
                        sc_neg_block(&plain, back, fwd)
                    }
                });
                let label = if pos_side {
                    [vec![a; back], vec![b; fwd]].concat()
                } else {
                    [vec![b; back], vec![a; fwd]].concat()
                };
                let here = c.skeleton().read_gens(start, &label).expect("corner path readable");
                let there = block.skeleton().read_gens(block.skeleton().alpha(), &label).expect("block reads its word");
                let anchors = there.into_iter().zip(here).collect();
                ((pos_side, back, fwd), anchors)
            })
            .collect();
        for (key, anchors) in &glued {
            c.glue(&blocks[key], anchors);
        }
        merges += c.fold();
        if (c.skeleton().vertex_count(), c.skeleton().edge_count(), c.face_count()) == shape {
            idle += 1;
        } else {
            idle = 0;
            waves += 1;
        }
        pos_side = !pos_side;
    }
    let faces = c.faces().iter().map(|f| (f.lhs.clone(), f.rhs.clone())).collect();
    let g = c.skeleton().clone();
    (g, faces, waves, merges)
}
