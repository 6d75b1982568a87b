//! Enveloping groups of finite quandles as presentations, and a bounded
//! search for checkable derivations of `a = b`.
//!
//! The word problem is undecidable in general and enveloping groups are
//! usually infinite, so the search is a certifier: a returned certificate is a
//! proof, a missing one proves nothing.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::group::FiniteGroup;
use crate::quandle::FiniteQuandle;
use crate::word::{evaluate, Alphabet, Letter, Mode, ReducedWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGroup {
    alphabet: Alphabet,
    relators: Vec<ReducedWord>,
}

impl PresentedGroup {
    pub fn new(alphabet: Alphabet, relators: Vec<ReducedWord>) -> Result<Self> {
        for r in &relators {
            if r.mode() != Mode::Free {
                return Err(Error::ModeMismatch);
            }
            if r.rank() != alphabet.len() {
                return Err(Error::RankMismatch {
                    left: r.rank(),
                    right: alphabet.len(),
                });
            }
        }
        Ok(PresentedGroup { alphabet, relators })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[ReducedWord] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.len()
    }

    /// Lines `gen <name>` followed by `rel <word>`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for name in self.alphabet.names() {
            s.push_str(&format!("gen {name}\n"));
        }
        for r in &self.relators {
            s.push_str(&format!("rel {}\n", self.alphabet.format_word(r)));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut rel_lines: Vec<(usize, &str)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let indent = line.len() - line.trim_start().len();
            if let Some(name) = t.strip_prefix("gen ") {
                if !rel_lines.is_empty() {
                    return Err(ParseError::new(ln, indent + 1, "`gen` after `rel`").into());
                }
                names.push(name.trim().to_string());
            } else if let Some(word) = t.strip_prefix("rel ") {
                rel_lines.push((ln, word));
            } else {
                return Err(ParseError::new(
                    ln,
                    indent + 1,
                    "expected `gen <name>` or `rel <word>`",
                )
                .into());
            }
        }
        let alphabet = Alphabet::new(names)?;
        let mut relators = Vec::with_capacity(rel_lines.len());
        for (ln, word) in rel_lines {
            let w = alphabet.parse_word(word, Mode::Free).map_err(|e| match e {
                Error::Parse(p) => Error::Parse(ParseError::new(ln, p.column + 4, p.message)),
                other => other,
            })?;
            relators.push(w);
        }
        Self::new(alphabet, relators)
    }

    /// Whether `generator i ↦ assignment[i]` kills every relator in `group`.
    pub fn satisfied_by(&self, group: &FiniteGroup, assignment: &[usize]) -> Result<bool> {
        for r in &self.relators {
            if evaluate(r, group, assignment)? != group.identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Generators `g₀ … g₍ₙ₋₁₎` and relators `g_x g_y g_x⁻¹ g_{x▷y}⁻¹` for every
/// pair, in row-major order. Relators that reduce to the empty word are kept.
pub fn enveloping_presentation(q: &FiniteQuandle) -> Result<PresentedGroup> {
    let names: Vec<String> = (0..q.len()).map(|i| format!("g{i}")).collect();
    enveloping_presentation_named(q, Alphabet::new(names)?)
}

pub fn enveloping_presentation_named(
    q: &FiniteQuandle,
    alphabet: Alphabet,
) -> Result<PresentedGroup> {
    q.require_rack()?;
    let n = q.len();
    if alphabet.len() != n {
        return Err(Error::InvalidParameter(format!(
            "{} labels for a quandle of order {n}",
            alphabet.len()
        )));
    }
    let mut relators = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let letters = [
                Letter::new(x),
                Letter::new(y),
                Letter::inv(x),
                Letter::inv(q.op(x, y)),
            ];
            relators.push(ReducedWord::reduce(&letters, Mode::Free, n)?);
        }
    }
    PresentedGroup::new(alphabet, relators)
}

/// Insert a cyclic rotation of relator `relator` (inverted when `inverse`) at
/// `position`, then freely reduce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub position: usize,
    pub relator: usize,
    pub rotation: usize,
    pub inverse: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationCertificate {
    pub start: Vec<Letter>,
    pub end: Vec<Letter>,
    pub steps: Vec<Step>,
}

impl DerivationCertificate {
    /// Whether this certificate is about `a · b⁻¹ = e`.
    pub fn proves_equal(&self, a: usize, b: usize) -> bool {
        let start = splice(&[Letter::new(a)], 1, &[Letter::inv(b)]);
        self.start == start && self.end.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| ParseError::new(e.line().max(1), e.column().max(1), e.to_string()).into())
    }
}

/// `reduce(word[..pos] ++ insert ++ word[pos..])`, assuming `word` and
/// `insert` are each reduced.
fn splice(word: &[Letter], pos: usize, insert: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len() + insert.len());
    out.extend_from_slice(&word[..pos]);
    for &l in insert.iter().chain(&word[pos..]) {
        match out.last() {
            Some(&last) if last == l.inverted() => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

fn variant(relator: &ReducedWord, rotation: usize, inverse: bool) -> Vec<Letter> {
    let l = relator.letters();
    let mut v: Vec<Letter> = l[rotation..]
        .iter()
        .chain(&l[..rotation])
        .copied()
        .collect();
    if inverse {
        v = v.into_iter().rev().map(Letter::inverted).collect();
    }
    // a rotation of a reduced word may cancel across the seam
    ReducedWord::reduce_unchecked(&v, Mode::Free, relator.rank())
        .letters()
        .to_vec()
}

fn apply_step(
    p: &PresentedGroup,
    word: &[Letter],
    step: &Step,
    index: usize,
) -> Result<Vec<Letter>> {
    let invalid = |reason: String| Error::InvalidStep {
        step: index,
        reason,
    };
    let r = p
        .relators
        .get(step.relator)
        .ok_or_else(|| invalid(format!("unknown relator {}", step.relator)))?;
    if step.rotation >= r.len().max(1) {
        return Err(invalid(format!(
            "rotation {} out of range for a relator of length {}",
            step.rotation,
            r.len()
        )));
    }
    if step.position > word.len() {
        return Err(invalid(format!(
            "position {} beyond word of length {}",
            step.position,
            word.len()
        )));
    }
    Ok(splice(
        word,
        step.position,
        &variant(r, step.rotation, step.inverse),
    ))
}

/// The words visited by `cert`, starting with the reduced start word.
pub fn replay(p: &PresentedGroup, cert: &DerivationCertificate) -> Result<Vec<ReducedWord>> {
    let n = p.generator_count();
    let mut word = ReducedWord::reduce(&cert.start, Mode::Free, n)?
        .letters()
        .to_vec();
    let mut trace = vec![ReducedWord::reduce_unchecked(&word, Mode::Free, n)];
    for (i, step) in cert.steps.iter().enumerate() {
        word = apply_step(p, &word, step, i)?;
        trace.push(ReducedWord::reduce_unchecked(&word, Mode::Free, n));
    }
    Ok(trace)
}

/// Replays `cert`; `Ok(true)` iff the steps turn `start` into `end`.
pub fn verify_certificate(p: &PresentedGroup, cert: &DerivationCertificate) -> Result<bool> {
    let end = ReducedWord::reduce(&cert.end, Mode::Free, p.generator_count())?;
    let trace = replay(p, cert)?;
    Ok(trace.last() == Some(&end))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeriveBounds {
    /// Maximum number of steps.
    pub depth: usize,
    /// Longest intermediate word.
    pub max_len: usize,
    /// Maximum number of distinct words visited.
    pub max_states: usize,
}

impl Default for DeriveBounds {
    fn default() -> Self {
        DeriveBounds {
            depth: 8,
            max_len: 24,
            max_states: 1 << 20,
        }
    }
}

impl DeriveBounds {
    pub fn with_depth(depth: usize) -> Self {
        DeriveBounds {
            depth,
            ..Self::default()
        }
    }
}

/// Breadth-first search from `a · b⁻¹` to the empty word.
///
/// Each step inserts a cyclic rotation of a relator or its inverse at some
/// position; visited words are deduplicated. Levels are expanded in parallel
/// and merged in frontier order, so the result is deterministic.
pub fn derive_equal(
    p: &PresentedGroup,
    a: usize,
    b: usize,
    bounds: &DeriveBounds,
) -> Result<Option<DerivationCertificate>> {
    if bounds.depth == 0 {
        return Err(Error::InvalidParameter(
            "depth bound must be positive".into(),
        ));
    }
    let n = p.generator_count();
    for g in [a, b] {
        if g >= n {
            return Err(Error::GeneratorOutOfRange { index: g, rank: n });
        }
    }
    let start = splice(&[Letter::new(a)], 1, &[Letter::inv(b)]);
    if start.is_empty() {
        return Ok(Some(DerivationCertificate {
            start,
            end: Vec::new(),
            steps: Vec::new(),
        }));
    }

    let mut variants: Vec<(Vec<Letter>, Step)> = Vec::new();
    for (ri, r) in p.relators.iter().enumerate() {
        for rotation in 0..r.len() {
            for inverse in [false, true] {
                let v = variant(r, rotation, inverse);
                if !v.is_empty() && !variants.iter().any(|(w, _)| *w == v) {
                    variants.push((
                        v,
                        Step {
                            position: 0,
                            relator: ri,
                            rotation,
                            inverse,
                        },
                    ));
                }
            }
        }
    }

    let codes: Vec<(Vec<u32>, Step)> = variants.iter().map(|(v, s)| (encode(v), *s)).collect();
    let start_code = encode(&start);
    // node id -> (parent id, step taken from the parent)
    let mut nodes: Vec<(usize, Step)> = vec![(
        0,
        Step {
            position: 0,
            relator: 0,
            rotation: 0,
            inverse: false,
        },
    )];
    let mut seen: HashMap<Box<[u32]>, usize> = HashMap::new();
    seen.insert(start_code.clone().into_boxed_slice(), 0);
    let mut frontier: Vec<(Vec<u32>, usize)> = vec![(start_code, 0)];
    for _ in 0..bounds.depth {
        let mut next_frontier = Vec::new();
        for chunk in frontier.chunks(FRONTIER_CHUNK) {
            let expansions: Vec<Vec<(Vec<u32>, Step)>> = chunk
                .par_iter()
                .map(|(w, _)| successors(w, &codes, bounds.max_len))
                .collect();
            for ((_, id), succs) in chunk.iter().zip(expansions) {
                for (next, step) in succs {
                    if seen.contains_key(next.as_slice()) {
                        continue;
                    }
                    let nid = nodes.len();
                    nodes.push((*id, step));
                    if next.is_empty() {
                        return Ok(Some(rebuild(&nodes, start, nid)));
                    }
                    if nodes.len() >= bounds.max_states {
                        return Ok(None);
                    }
                    seen.insert(next.clone().into_boxed_slice(), nid);
                    next_frontier.push((next, nid));
                }
            }
        }
        if next_frontier.is_empty() {
            break;
        }
        frontier = next_frontier;
    }
    Ok(None)
}

const FRONTIER_CHUNK: usize = 512;

fn encode(w: &[Letter]) -> Vec<u32> {
    w.iter()
        .map(|l| (l.gen as u32) << 1 | l.inverse as u32)
        .collect()
}

/// Every word one step away from `w`, in position-then-variant order.
fn successors(w: &[u32], variants: &[(Vec<u32>, Step)], max_len: usize) -> Vec<(Vec<u32>, Step)> {
    let mut out = Vec::new();
    let mut local: HashSet<Vec<u32>> = HashSet::new();
    for pos in 0..=w.len() {
        for (v, step) in variants {
            let mut next: Vec<u32> = Vec::with_capacity(w.len() + v.len());
            next.extend_from_slice(&w[..pos]);
            for &c in v.iter().chain(&w[pos..]) {
                match next.last() {
                    Some(&last) if last == c ^ 1 => {
                        next.pop();
                    }
                    _ => next.push(c),
                }
            }
            if next.len() <= max_len && local.insert(next.clone()) {
                out.push((
                    next,
                    Step {
                        position: pos,
                        ..*step
                    },
                ));
            }
        }
    }
    out
}

fn rebuild(nodes: &[(usize, Step)], start: Vec<Letter>, mut id: usize) -> DerivationCertificate {
    let mut steps = Vec::new();
    while id != 0 {
        let (parent, step) = nodes[id];
        steps.push(step);
        id = parent;
    }
    steps.reverse();
    DerivationCertificate {
        start,
        end: Vec::new(),
        steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> PresentedGroup {
        enveloping_presentation_named(
            &FiniteQuandle::swap_example(),
            Alphabet::new(["x", "y", "z"]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn presentation_shapes() {
        let p = enveloping_presentation(&FiniteQuandle::singleton()).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relators().len(), 1);
        assert!(p.relators()[0].is_empty());
        let p = enveloping_presentation(&FiniteQuandle::dihedral(3).unwrap()).unwrap();
        assert_eq!((p.generator_count(), p.relators().len()), (3, 9));
    }

    #[test]
    fn swap_example_relators() {
        let p = xyz();
        let shown: Vec<String> = p
            .relators()
            .iter()
            .map(|r| p.alphabet().format_word(r))
            .collect();
        assert!(shown.contains(&"x y x^-1 z^-1".to_string()));
        assert!(shown.contains(&"y x y^-1 x^-1".to_string()));
    }

    #[test]
    fn derives_y_equals_z() {
        let p = xyz();
        let cert = derive_equal(&p, 1, 2, &DeriveBounds::with_depth(4))
            .unwrap()
            .unwrap();
        assert!(cert.steps.len() <= 4);
        assert!(cert.proves_equal(1, 2));
        assert!(verify_certificate(&p, &cert).unwrap());
        let back = DerivationCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn trivial_and_tampered_certificates() {
        let p = xyz();
        let cert = derive_equal(&p, 0, 0, &DeriveBounds::default())
            .unwrap()
            .unwrap();
        assert!(cert.steps.is_empty() && cert.start.is_empty());
        assert!(verify_certificate(&p, &cert).unwrap());

        let mut cert = derive_equal(&p, 1, 2, &DeriveBounds::with_depth(4))
            .unwrap()
            .unwrap();
        cert.steps[0].inverse = !cert.steps[0].inverse;
        assert!(!verify_certificate(&p, &cert).unwrap());
        cert.steps[0].relator = 99;
        assert!(matches!(
            verify_certificate(&p, &cert),
            Err(Error::InvalidStep { step: 0, .. })
        ));
        cert.steps[0].relator = 1;
        cert.steps[0].position = 50;
        assert!(matches!(
            verify_certificate(&p, &cert),
            Err(Error::InvalidStep { .. })
        ));
    }

    #[test]
    fn dihedral3_generators_stay_distinct() {
        let p = enveloping_presentation(&FiniteQuandle::dihedral(3).unwrap()).unwrap();
        let bounds = DeriveBounds {
            depth: 6,
            max_len: 6,
            ..DeriveBounds::default()
        };
        assert_eq!(derive_equal(&p, 0, 1, &bounds).unwrap(), None);
    }

    #[test]
    fn rejects_zero_depth() {
        let bounds = DeriveBounds {
            depth: 0,
            ..DeriveBounds::default()
        };
        assert!(derive_equal(&xyz(), 1, 2, &bounds).is_err());
    }

    #[test]
    fn text_round_trip_and_errors() {
        let p = xyz();
        assert_eq!(PresentedGroup::parse(&p.to_text()).unwrap(), p);
        let err = PresentedGroup::parse("gen a\nrel a b\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse(ParseError::new(2, 7, "unknown generator `b`"))
        );
        assert!(PresentedGroup::parse("gen a\nfoo\n").is_err());
        assert!(PresentedGroup::parse("rel e\ngen a\n").is_err());
    }

    #[test]
    fn tautological_assignment_satisfies_relators() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let q = FiniteQuandle::conjugation(&g);
        let p = enveloping_presentation(&q).unwrap();
        let assignment: Vec<usize> = (0..g.order()).collect();
        assert!(p.satisfied_by(&g, &assignment).unwrap());
    }
}
