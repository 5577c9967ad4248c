//! Bounded breadth-first search over derivation sequences of positive words.
//!
//! Each step replaces one occurrence of a relation side by the other side.
//! For Adian presentations the semigroup embeds in the inverse monoid, so a
//! derivation between positive words proves equality there. The search is
//! bounded and never answers `False`.

use std::collections::HashMap;
use std::collections::VecDeque;

use thiserror::Error;

use crate::presentation::{is_adian, GenId, Presentation, RelSide, Word};
use crate::stephen::TriBool;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    LhsToRhs,
    RhsToLhs,
}

impl Direction {
    fn sides(self) -> (RelSide, RelSide) {
        match self {
            Direction::LhsToRhs => (RelSide::Lhs, RelSide::Rhs),
            Direction::RhsToLhs => (RelSide::Rhs, RelSide::Lhs),
        }
    }
}

/// Replace the `from` side of relation `relation_index` occurring at
/// `position` by the other side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DerivationStep {
    pub position: usize,
    pub relation_index: usize,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationResult {
    pub found: bool,
    /// Number of steps, when found.
    pub length: Option<usize>,
    /// `(word after the step, step)` for each step from `u` to `v`.
    pub path: Vec<(Word, DerivationStep)>,
    /// Distinct words visited.
    pub explored: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("word is not positive")]
    NotPositive,
    #[error("presentation is not Adian")]
    NotAdian,
}

/// Applies `step` to `w`, or returns `None` if the named side does not occur
/// at the given position.
pub fn apply_step(p: &Presentation, w: &[GenId], step: DerivationStep) -> Option<Vec<GenId>> {
    let rel = p.relations().get(step.relation_index)?;
    let (from, to) = step.direction.sides();
    let from = rel.side(from).gens()?;
    let to = rel.side(to).gens()?;
    let end = step.position.checked_add(from.len())?;
    if end > w.len() || w[step.position..end] != from[..] {
        return None;
    }
    let mut out = Vec::with_capacity(w.len() - from.len() + to.len());
    out.extend_from_slice(&w[..step.position]);
    out.extend_from_slice(&to);
    out.extend_from_slice(&w[end..]);
    Some(out)
}

/// All one-step rewrites of `w`, by position, then relation, then direction.
pub fn neighbors(p: &Presentation, w: &[GenId]) -> Vec<(Vec<GenId>, DerivationStep)> {
    let mut out = Vec::new();
    for position in 0..w.len() {
        for relation_index in 0..p.relations().len() {
            for direction in [Direction::LhsToRhs, Direction::RhsToLhs] {
                let step = DerivationStep { position, relation_index, direction };
                if let Some(next) = apply_step(p, w, step) {
                    out.push((next, step));
                }
            }
        }
    }
    out
}

/// Shortest derivation of `v` from `u` using at most `max_depth` steps.
pub fn derivation_bfs(p: &Presentation, u: &Word, v: &Word, max_depth: usize) -> Result<DerivationResult, OracleError> {
    let u = u.gens().ok_or(OracleError::NotPositive)?;
    let v = v.gens().ok_or(OracleError::NotPositive)?;
    let mut parent: HashMap<Vec<GenId>, Option<(Vec<GenId>, DerivationStep)>> = HashMap::new();
    parent.insert(u.clone(), None);
    let mut layer = VecDeque::from([u.clone()]);
    let mut depth = 0;
    let mut hit = u == v;
    while !hit && depth < max_depth && !layer.is_empty() {
        depth += 1;
        let mut next = VecDeque::new();
        'layer: for w in layer {
            for (x, step) in neighbors(p, &w) {
                if parent.contains_key(&x) {
                    continue;
                }
                parent.insert(x.clone(), Some((w.clone(), step)));
                if x == v {
                    hit = true;
                    break 'layer;
                }
                next.push_back(x);
            }
        }
        layer = next;
    }
    let explored = parent.len();
    if !hit {
        return Ok(DerivationResult { found: false, length: None, path: Vec::new(), explored });
    }
    let mut path = Vec::new();
    let mut cur = v;
    while let Some(Some((prev, step))) = parent.get(&cur) {
        path.push((Word::positive(&cur), *step));
        cur = prev.clone();
    }
    path.reverse();
    Ok(DerivationResult { found: true, length: Some(path.len()), path, explored })
}

/// `True` if a derivation of length at most `max_depth` exists, `Unknown`
/// otherwise.
pub fn oracle_equal_positive(p: &Presentation, u: &Word, v: &Word, max_depth: usize) -> Result<TriBool, OracleError> {
    if !is_adian(p) {
        return Err(OracleError::NotAdian);
    }
    let r = derivation_bfs(p, u, v, max_depth)?;
    Ok(if r.found { TriBool::True } else { TriBool::Unknown(format!("no derivation within {max_depth} steps")) })
}
