//! Finite groups given by their multiplication tables.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// A finite group on `{0..n-1}` with a dense row-major multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates a multiplication table and an identity index.
    ///
    /// Checks shape, range, the two-sided identity, two-sided inverses and
    /// associativity on every triple.
    pub fn from_table(rows: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        Self::from_table_with_limits(rows, identity, &Limits::default())
    }

    pub fn from_table_with_limits(
        rows: Vec<Vec<usize>>,
        identity: usize,
        limits: &Limits,
    ) -> Result<Self> {
        let order = rows.len();
        if order > limits.max_order {
            return Err(Error::OrderCap {
                order,
                cap: limits.max_order,
            });
        }
        let mul = flatten(rows)?;
        Self::from_flat(order, mul, identity)
    }

    /// For tables that are groups by construction; associativity is not
    /// re-checked.
    pub(crate) fn from_table_trusted(rows: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let order = rows.len();
        Self::build(order, flatten(rows)?, identity, false)
    }

    fn from_flat(order: usize, mul: Vec<usize>, identity: usize) -> Result<Self> {
        Self::build(order, mul, identity, true)
    }

    fn build(order: usize, mul: Vec<usize>, identity: usize, check_assoc: bool) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup(
                "a group needs at least one element".into(),
            ));
        }
        if identity >= order {
            return Err(Error::InvalidGroup(format!(
                "identity index {identity} out of range for order {order}"
            )));
        }
        for g in 0..order {
            if mul[identity * order + g] != g || mul[g * order + identity] != g {
                return Err(Error::InvalidGroup(format!(
                    "element {identity} is not a two-sided identity (fails at {g})"
                )));
            }
        }
        let mut inverse = Vec::with_capacity(order);
        for g in 0..order {
            let inv = (0..order).find(|&h| mul[g * order + h] == identity);
            match inv {
                Some(h) if mul[h * order + g] == identity => inverse.push(h),
                _ => {
                    return Err(Error::InvalidGroup(format!("element {g} has no inverse")));
                }
            }
        }
        let bad = (0..order)
            .into_par_iter()
            .filter(|_| check_assoc)
            .find_map_first(|a| {
                for b in 0..order {
                    let ab = mul[a * order + b];
                    for c in 0..order {
                        let lhs = mul[ab * order + c];
                        let rhs = mul[a * order + mul[b * order + c]];
                        if lhs != rhs {
                            return Some((a, b, c));
                        }
                    }
                }
                None
            });
        if let Some((a, b, c)) = bad {
            return Err(Error::InvalidGroup(format!(
                "associativity fails at ({a}, {b}, {c})"
            )));
        }
        Ok(FiniteGroup {
            order,
            mul,
            identity,
            inverse,
            labels: (0..order).map(|g| g.to_string()).collect(),
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::InvalidGroup(format!(
                "{} labels given for a group of order {}",
                labels.len(),
                self.order
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a · b · a⁻¹`
    #[inline]
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements with `s² = e` and `s ≠ e`, in index order.
    pub fn involutions(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&s| s != self.identity && self.mul(s, s) == self.identity)
            .collect()
    }

    pub fn is_involution(&self, s: usize) -> bool {
        s != self.identity && self.mul(s, s) == self.identity
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The cyclic group `Z/n`, written additively.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("cyclic group of order 0".into()));
        }
        let mul = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a + b) % n))
            .collect();
        Self::from_flat(n, mul, 0)
    }

    /// The dihedral group of order `2n`.
    ///
    /// Element `e·n + i` is `rⁱ sᵉ`, multiplied by
    /// `rⁱ sᵉ · rʲ sᶠ = r^(i + (-1)ᵉ j) s^(e+f)`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("dihedral group with n = 0".into()));
        }
        let order = 2 * n;
        let mut mul = vec![0; order * order];
        for x in 0..order {
            let (e, i) = (x / n, x % n);
            for y in 0..order {
                let (f, j) = (y / n, y % n);
                let k = if e == 0 { (i + j) % n } else { (i + n - j) % n };
                mul[x * order + y] = ((e + f) % 2) * n + k;
            }
        }
        let labels = (0..order)
            .map(|x| {
                let (e, i) = (x / n, x % n);
                match (i, e) {
                    (0, 0) => "e".to_string(),
                    (0, _) => "s".to_string(),
                    (_, 0) => format!("r{i}"),
                    _ => format!("r{i}s"),
                }
            })
            .collect();
        Self::from_flat(order, mul, 0)?.with_labels(labels)
    }

    /// The symmetric group on `k` points, elements in lexicographic order of
    /// their one-line notation, composed right to left: `(p·q)(i) = p(q(i))`.
    pub fn symmetric(k: usize) -> Result<Self> {
        if k == 0 || k > 6 {
            return Err(Error::InvalidParameter(format!(
                "symmetric group on {k} points is outside the supported range 1..=6"
            )));
        }
        let perms = permutations(k);
        Self::from_permutations_list(&perms)
    }

    /// Builds the group of the given permutations, which must be closed under
    /// composition and contain the identity.
    fn from_permutations_list(perms: &[Vec<usize>]) -> Result<Self> {
        let order = perms.len();
        let index = |p: &[usize]| perms.iter().position(|q| q == p);
        let mut mul = Vec::with_capacity(order * order);
        for p in perms {
            for q in perms {
                let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                let idx = index(&pq)
                    .ok_or_else(|| Error::InvalidGroup("permutation list is not closed".into()))?;
                mul.push(idx);
            }
        }
        let k = perms.first().map_or(0, Vec::len);
        let id: Vec<usize> = (0..k).collect();
        let identity =
            index(&id).ok_or_else(|| Error::InvalidGroup("identity permutation missing".into()))?;
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        Self::from_flat(order, mul, identity)?.with_labels(labels)
    }

    /// The subgroup of `Sym(k)` generated by the given permutations.
    pub fn from_generators(k: usize, gens: &[Vec<usize>]) -> Result<Self> {
        for g in gens {
            let mut seen = vec![false; k];
            if g.len() != k
                || g.iter()
                    .any(|&i| i >= k || std::mem::replace(&mut seen[i], true))
            {
                return Err(Error::InvalidParameter(format!(
                    "{g:?} is not a permutation of {k} points"
                )));
            }
        }
        let id: Vec<usize> = (0..k).collect();
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let gp: Vec<usize> = p.iter().map(|&i| g[i]).collect();
                if !elements.contains(&gp) {
                    elements.push(gp.clone());
                    queue.push_back(gp);
                }
            }
        }
        elements.sort();
        Self::from_permutations_list(&elements)
    }

    /// `self × other`, with element `(a, b)` at index `a · |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<Self> {
        let (n, m) = (self.order, other.order);
        let order = n * m;
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let a = self.mul(x / m, y / m);
                let b = other.mul(x % m, y % m);
                mul.push(a * m + b);
            }
        }
        let labels = (0..order)
            .map(|x| format!("({},{})", self.label(x / m), other.label(x % m)))
            .collect();
        Self::from_flat(order, mul, self.identity * m + other.identity)?.with_labels(labels)
    }

    /// The Klein four-group `Z/2 × Z/2`.
    pub fn klein() -> Self {
        let z2 = Self::cyclic(2).expect("Z/2");
        z2.direct_product(&z2).expect("Z/2 x Z/2")
    }

    /// Resolves a builtin name: `z<n>`, `d<n>` (order `2n`), `s<k>`, `klein`.
    pub fn builtin(name: &str) -> Result<Self> {
        let name = name.trim().to_ascii_lowercase();
        if name == "klein" || name == "v4" || name == "z2xz2" {
            return Ok(Self::klein());
        }
        let (head, tail) = name.split_at(name.len().min(1));
        let param: Option<usize> = tail.parse().ok();
        match (head, param) {
            ("z", Some(n)) => Self::cyclic(n),
            ("d", Some(n)) => Self::dihedral(n),
            ("s", Some(k)) => Self::symmetric(k),
            _ => Err(Error::InvalidParameter(format!("unknown group `{name}`"))),
        }
    }

    /// All homomorphisms to `{+1, -1}`, each given as a vector of signs.
    ///
    /// Values on a greedy generating set are enumerated and extended along a
    /// breadth-first search; inconsistent extensions are discarded.
    pub fn sign_characters(&self) -> Vec<Vec<i8>> {
        let gens = self.generating_set();
        let mut out = Vec::new();
        for mask in 0..(1u64 << gens.len()) {
            let mut chi = vec![0i8; self.order];
            chi[self.identity] = 1;
            let mut queue = VecDeque::from([self.identity]);
            let mut ok = true;
            'bfs: while let Some(x) = queue.pop_front() {
                for (bit, &g) in gens.iter().enumerate() {
                    let sign = if mask >> bit & 1 == 1 { -1 } else { 1 };
                    let y = self.mul(x, g);
                    let v = chi[x] * sign;
                    if chi[y] == 0 {
                        chi[y] = v;
                        queue.push_back(y);
                    } else if chi[y] != v {
                        ok = false;
                        break 'bfs;
                    }
                }
            }
            if ok && self.is_sign_character(&chi) {
                out.push(chi);
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn is_sign_character(&self, chi: &[i8]) -> bool {
        chi.len() == self.order
            && chi.iter().all(|&v| v == 1 || v == -1)
            && (0..self.order)
                .all(|a| (0..self.order).all(|b| chi[self.mul(a, b)] == chi[a] * chi[b]))
    }

    fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[self.identity] = true;
        for g in 0..self.order {
            if span[g] {
                continue;
            }
            gens.push(g);
            let mut queue: VecDeque<usize> = (0..self.order).filter(|&x| span[x]).collect();
            while let Some(x) = queue.pop_front() {
                for &h in &gens {
                    let y = self.mul(x, h);
                    if !span[y] {
                        span[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        gens
    }
}

pub(crate) fn flatten(rows: Vec<Vec<usize>>) -> Result<Vec<usize>> {
    let order = rows.len();
    let mut flat = Vec::with_capacity(order * order);
    for (r, row) in rows.into_iter().enumerate() {
        if row.len() != order {
            return Err(Error::RaggedTable {
                row: r,
                expected: order,
                found: row.len(),
            });
        }
        for (c, &v) in row.iter().enumerate() {
            if v >= order {
                return Err(Error::EntryOutOfRange {
                    row: r,
                    col: c,
                    value: v,
                    order,
                });
            }
        }
        flat.extend(row);
    }
    Ok(flat)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(k, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// 1-based cycle notation, e.g. `(12)(34)`; the identity prints as `()`.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        s.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            s.push_str(&(i + 1).to_string());
            i = p[i];
        }
        s.push(')');
    }
    if s.is_empty() {
        s.push_str("()");
    }
    s
}
