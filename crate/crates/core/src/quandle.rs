//! Finite racks and quandles as dense operation tables.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{flatten, FiniteGroup};
use crate::limits::Limits;

/// A finite magma on `{0..n-1}`; entry `(x, y)` of the table is `x ▷ y`.
///
/// Construction only checks that entries are in range. The rack, quandle and
/// involutory axioms are checked on demand; the rack check is cached.
#[derive(Clone)]
pub struct FiniteQuandle {
    n: usize,
    table: Vec<usize>,
    rack: OnceLock<RackReport>,
}

impl PartialEq for FiniteQuandle {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.table == other.table
    }
}

impl Eq for FiniteQuandle {}

impl fmt::Debug for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteQuandle")
            .field("n", &self.n)
            .field("table", &self.rows())
            .finish()
    }
}

/// The first rack-axiom failure in lexicographic order.
///
/// Rows are scanned before triples, so a non-bijective left multiplication is
/// reported even when self-distributivity also fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RackViolation {
    NonBijectiveRow { row: usize },
    SelfDistributivity { x: usize, y: usize, z: usize },
}

impl fmt::Display for RackViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RackViolation::NonBijectiveRow { row } => {
                write!(f, "row {row} is not a permutation")
            }
            RackViolation::SelfDistributivity { x, y, z } => {
                write!(f, "{x} ▷ ({y} ▷ {z}) ≠ ({x} ▷ {y}) ▷ ({x} ▷ {z})")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RackReport {
    pub is_rack: bool,
    pub witness: Option<RackViolation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuandleReport {
    pub is_quandle: bool,
    pub witness: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutoryReport {
    pub is_involutory: bool,
    pub witness: Option<(usize, usize)>,
}

impl FiniteQuandle {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_rows_with_limits(rows, &Limits::default())
    }

    pub fn from_rows_with_limits(rows: Vec<Vec<usize>>, limits: &Limits) -> Result<Self> {
        let n = rows.len();
        if n > limits.max_order {
            return Err(Error::OrderCap {
                order: n,
                cap: limits.max_order,
            });
        }
        Ok(Self::from_flat(n, flatten(rows)?))
    }

    pub(crate) fn from_flat(n: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), n * n);
        debug_assert!(table.iter().all(|&v| v < n));
        FiniteQuandle {
            n,
            table,
            rack: OnceLock::new(),
        }
    }

    pub(crate) fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| op(x, y));
        Self::from_flat(n, table.collect())
    }

    pub fn empty() -> Self {
        Self::from_flat(0, Vec::new())
    }

    pub fn singleton() -> Self {
        Self::from_flat(1, vec![0])
    }

    /// The trivial quandle `x ▷ y = y` on `n` elements.
    pub fn trivial(n: usize) -> Self {
        Self::from_fn(n, |_, y| y)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    /// Left multiplication `λ_x` as a slice.
    pub fn row(&self, x: usize) -> &[usize] {
        &self.table[x * self.n..(x + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| self.row(x).to_vec()).collect()
    }

    pub fn check_rack(&self) -> RackReport {
        *self.rack.get_or_init(|| self.compute_rack())
    }

    fn compute_rack(&self) -> RackReport {
        let n = self.n;
        for x in 0..n {
            if !is_permutation(self.row(x)) {
                return RackReport {
                    is_rack: false,
                    witness: Some(RackViolation::NonBijectiveRow { row: x }),
                };
            }
        }
        // Partitioned by x; find_map_first keeps the least witness.
        let witness = (0..n).into_par_iter().find_map_first(|x| {
            for y in 0..n {
                let xy = self.op(x, y);
                for z in 0..n {
                    if self.op(x, self.op(y, z)) != self.op(xy, self.op(x, z)) {
                        return Some(RackViolation::SelfDistributivity { x, y, z });
                    }
                }
            }
            None
        });
        RackReport {
            is_rack: witness.is_none(),
            witness,
        }
    }

    pub fn is_rack(&self) -> bool {
        self.check_rack().is_rack
    }

    pub(crate) fn require_rack(&self) -> Result<()> {
        match self.check_rack().witness {
            None => Ok(()),
            Some(v) => Err(Error::NotARack(v)),
        }
    }

    pub(crate) fn require_involutory_quandle(&self) -> Result<()> {
        if let Some(witness) = self.check_quandle()?.witness {
            return Err(Error::NotAQuandle { witness });
        }
        if let Some((x, y)) = self.check_involutory()?.witness {
            return Err(Error::NotInvolutory { x, y });
        }
        Ok(())
    }

    /// Idempotency `x ▷ x = x`; requires a rack.
    pub fn check_quandle(&self) -> Result<QuandleReport> {
        self.require_rack()?;
        let witness = (0..self.n).find(|&x| self.op(x, x) != x);
        Ok(QuandleReport {
            is_quandle: witness.is_none(),
            witness,
        })
    }

    /// `x ▷ (x ▷ y) = y` for all pairs; requires a rack.
    pub fn check_involutory(&self) -> Result<InvolutoryReport> {
        self.require_rack()?;
        let witness = (0..self.n)
            .flat_map(|x| (0..self.n).map(move |y| (x, y)))
            .find(|&(x, y)| self.op(x, self.op(x, y)) != y);
        Ok(InvolutoryReport {
            is_involutory: witness.is_none(),
            witness,
        })
    }

    pub fn is_quandle(&self) -> bool {
        self.check_quandle().is_ok_and(|r| r.is_quandle)
    }

    pub fn is_involutory(&self) -> bool {
        self.check_involutory().is_ok_and(|r| r.is_involutory)
    }

    /// The natural automorphism `x ↦ x ▷ x`.
    ///
    /// It is a bijection for every rack and the identity exactly for quandles.
    pub fn nat_automorphism(&self) -> Result<Vec<usize>> {
        self.require_rack()?;
        Ok((0..self.n).map(|x| self.op(x, x)).collect())
    }

    /// Pairs `x ≠ y` with `x ▷ y = y`, in lexicographic order.
    ///
    /// Empty exactly when `x ▷ y = y` forces `x = y`.
    pub fn fixed_pair_report(&self) -> Result<Vec<(usize, usize)>> {
        self.require_rack()?;
        Ok((0..self.n)
            .flat_map(|x| (0..self.n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && self.op(x, y) == y)
            .collect())
    }

    /// Conjugation quandle `x ▷ y = x y x⁻¹` on the whole group.
    pub fn conjugation(g: &FiniteGroup) -> Self {
        Self::from_fn(g.order(), |x, y| g.conjugate(x, y))
    }

    /// Core quandle `x ▷ y = x y⁻¹ x`; for abelian groups this is `2x − y`.
    pub fn core(g: &FiniteGroup) -> Self {
        Self::from_fn(g.order(), |x, y| g.mul(g.mul(x, g.inv(y)), x))
    }

    /// The involutions of `g` under conjugation, with their indices in `g`.
    pub fn involutions(g: &FiniteGroup) -> (Self, Vec<usize>) {
        let inv = g.involutions();
        let pos = |e: usize| inv.binary_search(&e).expect("conjugate of an involution");
        let q = Self::from_fn(inv.len(), |i, j| pos(g.conjugate(inv[i], inv[j])));
        (q, inv)
    }

    /// The dihedral quandle `a ▷ b = 2a − b mod n`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "dihedral quandle needs n ≥ 1".into(),
            ));
        }
        Ok(Self::from_fn(n, |a, b| (2 * a + n - b) % n))
    }

    /// Componentwise product; pair `(a, b)` sits at index `a · |other| + b`.
    pub fn product(&self, other: &FiniteQuandle) -> Self {
        let m = other.n;
        Self::from_fn(self.n * other.n, |x, y| {
            self.op(x / m, y / m) * m + other.op(x % m, y % m)
        })
    }

    /// The three-element quandle `{x, y, z}` where `λ_x` swaps `y` and `z`
    /// and `λ_y = λ_z = id`.
    pub fn swap_example() -> Self {
        Self::from_flat(3, vec![0, 2, 1, 0, 1, 2, 0, 1, 2])
    }

    /// Resolves a builtin quandle name.
    ///
    /// Accepted forms: `dihedral<n>` (or `r<n>`), `trivial<n>`, `singleton`,
    /// `empty`, `swap3`, and `conj-<g>`, `core-<g>`, `inv-<g>` for any builtin
    /// group name understood by [`FiniteGroup::builtin`].
    pub fn builtin(name: &str) -> Result<Self> {
        let name = name.trim().to_ascii_lowercase();
        let unknown = || Error::InvalidParameter(format!("unknown quandle `{name}`"));
        match name.as_str() {
            "singleton" => return Ok(Self::singleton()),
            "empty" => return Ok(Self::empty()),
            "swap3" | "xyz" => return Ok(Self::swap_example()),
            _ => {}
        }
        if let Some(g) = name.strip_prefix("conj-") {
            return Ok(Self::conjugation(&FiniteGroup::builtin(g)?));
        }
        if let Some(g) = name.strip_prefix("core-") {
            return Ok(Self::core(&FiniteGroup::builtin(g)?));
        }
        if let Some(g) = name.strip_prefix("inv-") {
            return Ok(Self::involutions(&FiniteGroup::builtin(g)?).0);
        }
        if let Some(n) = name.strip_prefix("trivial") {
            return Ok(Self::trivial(n.parse().map_err(|_| unknown())?));
        }
        let n = name
            .strip_prefix("dihedral")
            .or_else(|| name.strip_prefix('r'))
            .ok_or_else(unknown)?;
        Self::dihedral(n.parse().map_err(|_| unknown())?)
    }
}

pub(crate) fn is_permutation(row: &[usize]) -> bool {
    let mut seen = vec![false; row.len()];
    row.iter()
        .all(|&v| v < row.len() && !std::mem::replace(&mut seen[v], true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3).unwrap()
    }

    #[test]
    fn rack_check_examples() {
        let d5 = FiniteQuandle::dihedral(5).unwrap();
        assert_eq!(
            d5.check_rack(),
            RackReport {
                is_rack: true,
                witness: None
            }
        );

        let proj = FiniteQuandle::from_rows(vec![vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(
            proj.check_rack().witness,
            Some(RackViolation::NonBijectiveRow { row: 0 })
        );

        let shift = FiniteQuandle::from_rows(vec![vec![1, 0], vec![1, 0]]).unwrap();
        assert!(shift.is_rack());
        assert_eq!(
            shift.check_quandle().unwrap(),
            QuandleReport {
                is_quandle: false,
                witness: Some(0)
            }
        );
        assert_eq!(shift.nat_automorphism().unwrap(), vec![1, 0]);
    }

    #[test]
    fn self_distributivity_witness_is_least() {
        // Rows are permutations but x ▷ y = y + x + 1 mod 3 is not self-distributive.
        let q = FiniteQuandle::from_fn(3, |x, y| (x + y + 1) % 3);
        let w = q.check_rack().witness.unwrap();
        // brute-force least triple
        let expected = (0..3)
            .flat_map(|x| (0..3).flat_map(move |y| (0..3).map(move |z| (x, y, z))))
            .find(|&(x, y, z)| q.op(x, q.op(y, z)) != q.op(q.op(x, y), q.op(x, z)))
            .unwrap();
        assert_eq!(
            w,
            RackViolation::SelfDistributivity {
                x: expected.0,
                y: expected.1,
                z: expected.2
            }
        );
        assert!(matches!(q.check_quandle(), Err(Error::NotARack(_))));
        assert!(q.nat_automorphism().is_err());
    }

    #[test]
    fn out_of_range_entry_names_the_cell() {
        let err = FiniteQuandle::from_rows(vec![vec![0, 1], vec![5, 1]]).unwrap_err();
        assert_eq!(
            err,
            Error::EntryOutOfRange {
                row: 1,
                col: 0,
                value: 5,
                order: 2
            }
        );
    }

    #[test]
    fn empty_and_singleton_are_vacuous() {
        let e = FiniteQuandle::empty();
        assert!(e.is_rack() && e.is_quandle() && e.is_involutory());
        assert!(e.fixed_pair_report().unwrap().is_empty());
        let s = FiniteQuandle::singleton();
        assert!(s.is_involutory());
        assert_eq!(s.nat_automorphism().unwrap(), vec![0]);
    }

    #[test]
    fn conjugation_quandles() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(FiniteQuandle::conjugation(&z4), FiniteQuandle::trivial(4));
        let g = s3();
        let q = FiniteQuandle::conjugation(&g);
        let (a, b, c) = (
            g.index_of_label("(12)").unwrap(),
            g.index_of_label("(13)").unwrap(),
            g.index_of_label("(23)").unwrap(),
        );
        assert_eq!(q.op(a, b), c);
        assert!(q.is_quandle());
        let trivial = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(
            FiniteQuandle::conjugation(&trivial),
            FiniteQuandle::singleton()
        );
    }

    #[test]
    fn conjugation_of_s4_is_not_involutory() {
        let g = FiniteGroup::symmetric(4).unwrap();
        let q = FiniteQuandle::conjugation(&g);
        let report = q.check_involutory().unwrap();
        assert!(!report.is_involutory);
        let (x, y) = report.witness.unwrap();
        // x must have order > 2 and the pair is the least one
        assert!(g.element_order(x) > 2);
        assert!((0..24)
            .flat_map(|a| (0..24).map(move |b| (a, b)))
            .take_while(|&p| p < (x, y))
            .all(|(a, b)| q.op(a, q.op(a, b)) == b));
    }

    #[test]
    fn involution_quandles() {
        let (q, idx) = FiniteQuandle::involutions(&FiniteGroup::cyclic(2).unwrap());
        assert_eq!((q.len(), idx), (1, vec![1]));
        assert!(FiniteQuandle::involutions(&FiniteGroup::cyclic(3).unwrap())
            .0
            .is_empty());

        let g = s3();
        let (q, idx) = FiniteQuandle::involutions(&g);
        assert_eq!(q.len(), 3);
        for a in 0..3 {
            for b in 0..3 {
                let expected = if a == b { b } else { 3 - a - b };
                assert_eq!(
                    q.op(a, b),
                    expected,
                    "{} ▷ {}",
                    g.label(idx[a]),
                    g.label(idx[b])
                );
            }
        }
        assert!(q.is_involutory());
    }

    #[test]
    fn core_quandles() {
        let z5 = FiniteGroup::cyclic(5).unwrap();
        let q = FiniteQuandle::core(&z5);
        assert_eq!(q.op(1, 2), 0);
        assert_eq!(q, FiniteQuandle::dihedral(5).unwrap());
        assert_eq!(
            FiniteQuandle::core(&FiniteGroup::klein()),
            FiniteQuandle::trivial(4)
        );
        let s4 = FiniteQuandle::core(&FiniteGroup::symmetric(4).unwrap());
        assert!(s4.is_quandle() && s4.is_involutory());
    }

    #[test]
    fn dihedral_quandles() {
        let d5 = FiniteQuandle::dihedral(5).unwrap();
        assert_eq!(d5.op(1, 2), 0);
        assert_eq!(d5.op(3, 1), 0);
        assert_eq!(
            FiniteQuandle::dihedral(1).unwrap(),
            FiniteQuandle::singleton()
        );
        assert_eq!(
            FiniteQuandle::dihedral(2).unwrap(),
            FiniteQuandle::trivial(2)
        );
        assert!(FiniteQuandle::dihedral(0).is_err());
        assert!(FiniteQuandle::dihedral(7).unwrap().is_involutory());
    }

    #[test]
    fn products() {
        let d3 = FiniteQuandle::dihedral(3).unwrap();
        let p = d3.product(&d3);
        // (1,0) ▷ (2,2) = (0,1)
        assert_eq!(p.op(3, 2 * 3 + 2), 1);
        assert_eq!(FiniteQuandle::singleton().product(&d3), d3);
        assert!(FiniteQuandle::empty().product(&d3).is_empty());
        assert!(p.is_involutory());
    }

    #[test]
    fn fixed_pairs() {
        assert_eq!(
            FiniteQuandle::trivial(2).fixed_pair_report().unwrap(),
            vec![(0, 1), (1, 0)]
        );
        let (d5, _) = FiniteQuandle::involutions(&FiniteGroup::dihedral(5).unwrap());
        assert!(d5.fixed_pair_report().unwrap().is_empty());
        let (k, _) = FiniteQuandle::involutions(&FiniteGroup::klein());
        assert!(!k.fixed_pair_report().unwrap().is_empty());
    }

    #[test]
    fn swap_example_is_an_involutory_quandle() {
        let q = FiniteQuandle::swap_example();
        assert!(q.is_quandle() && q.is_involutory());
        assert_eq!(q.op(0, 1), 2);
        assert_eq!(q.op(1, 0), 0);
    }

    #[test]
    fn builtin_names() {
        assert_eq!(FiniteQuandle::builtin("dihedral5").unwrap().len(), 5);
        assert_eq!(FiniteQuandle::builtin("r4").unwrap().len(), 4);
        assert_eq!(FiniteQuandle::builtin("inv-s3").unwrap().len(), 3);
        assert_eq!(FiniteQuandle::builtin("conj-d5").unwrap().len(), 10);
        assert!(FiniteQuandle::builtin("nonsense").is_err());
    }
}
