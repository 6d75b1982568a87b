//! Quandle morphisms: backtracking enumeration and isomorphism search.

use std::sync::Arc;

use crate::error::Result;
use crate::orbit::orbits;
use crate::quandle::FiniteQuandle;

const UNSET: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandleMorphism {
    pub source: Arc<FiniteQuandle>,
    pub target: Arc<FiniteQuandle>,
    pub map: Vec<usize>,
}

impl QuandleMorphism {
    pub fn new(source: Arc<FiniteQuandle>, target: Arc<FiniteQuandle>, map: Vec<usize>) -> Self {
        QuandleMorphism {
            source,
            target,
            map,
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// First pair `(x, y)` with `f(x ▷ y) ≠ f(x) ▷ f(y)`, if any.
    pub fn first_violation(&self) -> Option<(usize, usize)> {
        let (s, t) = (&self.source, &self.target);
        if self.map.len() != s.len() || self.map.iter().any(|&v| v >= t.len()) {
            return Some((0, 0));
        }
        let n = s.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.map[s.op(x, y)] != t.op(self.map[x], self.map[y]))
    }

    pub fn is_morphism(&self) -> bool {
        self.first_violation().is_none()
    }

    pub fn is_bijective(&self) -> bool {
        self.map.len() == self.target.len() && crate::quandle::is_permutation(&self.map)
    }
}

/// Backtracking search over partial maps with closure propagation: whenever
/// `f(x)` and `f(y)` are known, `f(x ▷ y)` is forced.
struct Search<'a> {
    src: &'a FiniteQuandle,
    tgt: &'a FiniteQuandle,
    allowed: Vec<Vec<bool>>,
    injective: bool,
    map: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(
        src: &'a FiniteQuandle,
        tgt: &'a FiniteQuandle,
        allowed: Vec<Vec<bool>>,
        injective: bool,
    ) -> Self {
        Search {
            src,
            tgt,
            allowed,
            injective,
            map: vec![UNSET; src.len()],
            used: vec![false; tgt.len()],
            trail: Vec::with_capacity(src.len()),
        }
    }

    fn set(&mut self, x: usize, v: usize) -> bool {
        if !self.allowed[x][v] || (self.injective && self.used[v]) {
            return false;
        }
        self.map[x] = v;
        self.used[v] = true;
        self.trail.push(x);
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.used[self.map[x]] = false;
            self.map[x] = UNSET;
        }
    }

    /// Assigns `f(x) = v` and everything it forces. On conflict the partial map
    /// is left unchanged and `false` is returned.
    fn assign(&mut self, x: usize, v: usize) -> bool {
        let mark = self.trail.len();
        if !self.set(x, v) {
            return false;
        }
        let mut next = mark;
        while next < self.trail.len() {
            let a = self.trail[next];
            next += 1;
            let mut i = 0;
            while i < self.trail.len() {
                let b = self.trail[i];
                i += 1;
                for (p, q) in [(a, b), (b, a)] {
                    let r = self.src.op(p, q);
                    let val = self.tgt.op(self.map[p], self.map[q]);
                    if self.map[r] == UNSET {
                        if !self.set(r, val) {
                            self.undo_to(mark);
                            return false;
                        }
                    } else if self.map[r] != val {
                        self.undo_to(mark);
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Calls `visit` on every complete map; stops when it returns `false`.
    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let Some(x) = self.map.iter().position(|&v| v == UNSET) else {
            return visit(&self.map);
        };
        for v in 0..self.tgt.len() {
            let mark = self.trail.len();
            if self.assign(x, v) {
                let go_on = self.run(visit);
                self.undo_to(mark);
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}

/// All morphisms `src → tgt`, at most `limit` of them when given.
pub fn enumerate_homs(
    src: &FiniteQuandle,
    tgt: &FiniteQuandle,
    limit: Option<usize>,
) -> Result<Vec<QuandleMorphism>> {
    src.require_rack()?;
    tgt.require_rack()?;
    let source = Arc::new(src.clone());
    let target = Arc::new(tgt.clone());
    let mut out = Vec::new();
    if limit == Some(0) {
        return Ok(out);
    }
    let allowed = vec![vec![true; tgt.len()]; src.len()];
    Search::new(src, tgt, allowed, false).run(&mut |m| {
        out.push(QuandleMorphism::new(
            source.clone(),
            target.clone(),
            m.to_vec(),
        ));
        limit.is_none_or(|l| out.len() < l)
    });
    Ok(out)
}

/// Exact number of morphisms `src → tgt`.
pub fn hom_count(src: &FiniteQuandle, tgt: &FiniteQuandle) -> Result<u64> {
    src.require_rack()?;
    tgt.require_rack()?;
    let mut count = 0u64;
    let allowed = vec![vec![true; tgt.len()]; src.len()];
    Search::new(src, tgt, allowed, false).run(&mut |_| {
        count += 1;
        true
    });
    Ok(count)
}

/// Isomorphism-invariant data attached to one element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Profile {
    idempotent: bool,
    orbit_size: usize,
    cycle_type: Vec<usize>,
    stabilizers: usize,
    column_image: usize,
}

fn profiles(q: &FiniteQuandle) -> Result<Vec<Profile>> {
    let n = q.len();
    let orbit_sizes = {
        let part = orbits(q)?;
        let class = part.class_of();
        let sizes = part.sizes();
        (0..n).map(|x| sizes[class[x]]).collect::<Vec<_>>()
    };
    Ok((0..n)
        .map(|x| {
            let row = q.row(x);
            let mut seen = vec![false; n];
            let mut cycle_type = Vec::new();
            for start in 0..n {
                let mut len = 0;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    i = row[i];
                    len += 1;
                }
                if len > 0 {
                    cycle_type.push(len);
                }
            }
            cycle_type.sort_unstable();
            let mut column: Vec<usize> = (0..n).map(|y| q.op(y, x)).collect();
            let stabilizers = column.iter().filter(|&&v| v == x).count();
            column.sort_unstable();
            column.dedup();
            Profile {
                idempotent: q.op(x, x) == x,
                orbit_size: orbit_sizes[x],
                cycle_type,
                stabilizers,
                column_image: column.len(),
            }
        })
        .collect())
}

/// A witness isomorphism `q1 → q2`, or `None`.
///
/// Elements are only matched to elements with the same invariant profile
/// before the backtracking search runs.
pub fn are_isomorphic(q1: &FiniteQuandle, q2: &FiniteQuandle) -> Result<Option<QuandleMorphism>> {
    q1.require_rack()?;
    q2.require_rack()?;
    if q1.len() != q2.len() {
        return Ok(None);
    }
    let (p1, p2) = (profiles(q1)?, profiles(q2)?);
    let (mut s1, mut s2) = (p1.clone(), p2.clone());
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(None);
    }
    let allowed = p1
        .iter()
        .map(|a| p2.iter().map(|b| a == b).collect())
        .collect();
    let mut found = None;
    Search::new(q1, q2, allowed, true).run(&mut |m| {
        found = Some(m.to_vec());
        false
    });
    Ok(found.map(|m| QuandleMorphism::new(Arc::new(q1.clone()), Arc::new(q2.clone()), m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    /// Every map `src → tgt`, filtered by the morphism condition.
    fn brute_force_homs(src: &FiniteQuandle, tgt: &FiniteQuandle) -> Vec<Vec<usize>> {
        let (n, m) = (src.len(), tgt.len());
        let total = m.pow(n as u32);
        (0..total)
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let v = code % m;
                        code /= m;
                        v
                    })
                    .collect::<Vec<_>>()
            })
            .filter(|f| (0..n).all(|x| (0..n).all(|y| f[src.op(x, y)] == tgt.op(f[x], f[y]))))
            .collect()
    }

    #[test]
    fn singleton_source_hits_every_element() {
        let d5 = FiniteQuandle::dihedral(5).unwrap();
        assert_eq!(hom_count(&FiniteQuandle::singleton(), &d5).unwrap(), 5);
    }

    #[test]
    fn endomorphisms_of_dihedral3_match_brute_force() {
        let d3 = FiniteQuandle::dihedral(3).unwrap();
        let oracle = brute_force_homs(&d3, &d3);
        assert_eq!(oracle.len(), 9);
        let mut found: Vec<Vec<usize>> = enumerate_homs(&d3, &d3, None)
            .unwrap()
            .into_iter()
            .map(|f| f.map)
            .collect();
        found.sort();
        let mut oracle = oracle;
        oracle.sort();
        assert_eq!(found, oracle);
    }

    #[test]
    fn trivial_quandle_maps() {
        let t = FiniteQuandle::dihedral(2).unwrap();
        assert_eq!(hom_count(&t, &t).unwrap(), 4);
        assert_eq!(enumerate_homs(&t, &t, Some(3)).unwrap().len(), 3);
        assert!(enumerate_homs(&t, &t, Some(0)).unwrap().is_empty());
    }

    #[test]
    fn counts_agree_with_brute_force_on_small_pairs() {
        let qs = [
            FiniteQuandle::dihedral(3).unwrap(),
            FiniteQuandle::dihedral(4).unwrap(),
            FiniteQuandle::trivial(2),
            FiniteQuandle::swap_example(),
            FiniteQuandle::involutions(&FiniteGroup::symmetric(3).unwrap()).0,
            FiniteQuandle::from_rows(vec![vec![1, 0], vec![1, 0]]).unwrap(),
        ];
        for a in &qs {
            for b in &qs {
                assert_eq!(
                    hom_count(a, b).unwrap() as usize,
                    brute_force_homs(a, b).len(),
                    "{a:?} -> {b:?}"
                );
            }
        }
    }

    #[test]
    fn dihedral3_is_the_reflection_quandle_of_d3() {
        let (refl, _) = FiniteQuandle::involutions(&FiniteGroup::dihedral(3).unwrap());
        let d3 = FiniteQuandle::dihedral(3).unwrap();
        let iso = are_isomorphic(&d3, &refl).unwrap().expect("isomorphic");
        assert!(iso.is_morphism() && iso.is_bijective());
    }

    #[test]
    fn dihedral4_is_not_the_trivial_four_element_quandle() {
        let d4 = FiniteQuandle::dihedral(4).unwrap();
        let t = FiniteQuandle::dihedral(2).unwrap();
        let p = t.product(&t);
        // oracle: every bijection of four points
        let mut any = false;
        for f in brute_force_homs(&d4, &p) {
            let mut s = f.clone();
            s.sort();
            any |= s == vec![0, 1, 2, 3];
        }
        assert!(!any);
        assert!(are_isomorphic(&d4, &p).unwrap().is_none());
    }

    #[test]
    fn self_isomorphism_exists() {
        let q = FiniteQuandle::conjugation(&FiniteGroup::symmetric(3).unwrap());
        let iso = are_isomorphic(&q, &q).unwrap().unwrap();
        assert!(iso.is_morphism() && iso.is_bijective());
    }
}
