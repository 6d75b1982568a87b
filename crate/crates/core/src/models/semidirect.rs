//! `Z/n ⋊ G` for odd `n`, with `G` acting on `Z/n` through a sign character.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::morphism::QuandleMorphism;
use crate::quandle::FiniteQuandle;

/// A group `G` with a character `χ: G → {±1}` that is `-1` on every
/// involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedAction {
    base: FiniteGroup,
    character: Vec<i8>,
}

impl SignedAction {
    pub fn new(base: FiniteGroup, character: Vec<i8>) -> Result<Self> {
        if !base.is_sign_character(&character) {
            return Err(Error::InvalidCharacter(
                "values must be ±1 and multiplicative on the group table".into(),
            ));
        }
        if let Some(s) = base.involutions().into_iter().find(|&s| character[s] != -1) {
            return Err(Error::InvalidCharacter(format!(
                "involution {} must act as -1",
                base.label(s)
            )));
        }
        Ok(SignedAction { base, character })
    }

    /// Reads a character from a `+`/`-` string indexed by element.
    pub fn from_signs(base: FiniteGroup, signs: &str) -> Result<Self> {
        let character = signs
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::InvalidCharacter(format!("unexpected `{other}`"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        if character.len() != base.order() {
            return Err(Error::InvalidCharacter(format!(
                "{} signs for a group of order {}",
                character.len(),
                base.order()
            )));
        }
        Self::new(base, character)
    }

    /// Characters of `g` that are `-1` on every involution.
    pub fn admissible_characters(g: &FiniteGroup) -> Vec<Vec<i8>> {
        let inv = g.involutions();
        g.sign_characters()
            .into_iter()
            .filter(|chi| inv.iter().all(|&s| chi[s] == -1))
            .collect()
    }

    /// The admissible character of `g`, when there is exactly one.
    pub fn unique(g: FiniteGroup) -> Result<Self> {
        let mut chars = Self::admissible_characters(&g);
        match chars.len() {
            1 => Self::new(g, chars.pop().unwrap()),
            k => Err(Error::InvalidCharacter(format!(
                "group has {k} characters that are -1 on all involutions; pick one explicitly"
            ))),
        }
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn character(&self) -> &[i8] {
        &self.character
    }

    pub fn signs(&self) -> String {
        self.character
            .iter()
            .map(|&c| if c > 0 { '+' } else { '-' })
            .collect()
    }
}

/// `Z/n ⋊ G` with `(a, g)(b, h) = (a + χ(g) b, g h)`.
///
/// Element `(a, g)` has index `a · |G| + g`.
#[derive(Clone, Debug)]
pub struct SemidirectGroup {
    n: usize,
    action: SignedAction,
    group: FiniteGroup,
}

impl SemidirectGroup {
    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn action(&self) -> &SignedAction {
        &self.action
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn index(&self, a: usize, g: usize) -> usize {
        a * self.action.base.order() + g
    }

    pub fn split(&self, x: usize) -> (usize, usize) {
        let m = self.action.base.order();
        (x / m, x % m)
    }
}

pub fn check_odd(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("modulus must be positive".into()));
    }
    if n.is_multiple_of(2) {
        return Err(Error::EvenModulus { n });
    }
    Ok(())
}

pub fn build_semidirect(n: usize, action: SignedAction) -> Result<SemidirectGroup> {
    check_odd(n)?;
    let g = &action.base;
    let m = g.order();
    let order = n * m;
    let mut rows = vec![vec![0; order]; order];
    for (x, row) in rows.iter_mut().enumerate() {
        let (a, gx) = (x / m, x % m);
        for (y, cell) in row.iter_mut().enumerate() {
            let (b, hy) = (y / m, y % m);
            let twisted = if action.character[gx] > 0 {
                b
            } else {
                (n - b) % n
            };
            *cell = ((a + twisted) % n) * m + g.mul(gx, hy);
        }
    }
    let labels = (0..order)
        .map(|x| format!("({},{})", x / m, g.label(x % m)))
        .collect();
    let group = FiniteGroup::from_table_trusted(rows, g.identity())?.with_labels(labels)?;
    Ok(SemidirectGroup { n, action, group })
}

/// The involution quandle of a semidirect product, found by brute force in
/// the group, with each element labelled `(a, s)`.
#[derive(Clone, Debug)]
pub struct SemidirectInvolutions {
    pub quandle: FiniteQuandle,
    pub labels: Vec<(usize, usize)>,
    pub group_index: Vec<usize>,
}

impl SemidirectInvolutions {
    pub fn position(&self, a: usize, s: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == (a, s))
    }

    /// Pairs where `(a,s) ▷ (b,t)` differs from `(2a − b, s t s)`.
    pub fn formula_mismatches(&self, sd: &SemidirectGroup) -> Vec<(usize, usize)> {
        let n = sd.n;
        let g = &sd.action.base;
        let m = self.labels.len();
        (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                let ((a, s), (b, t)) = (self.labels[i], self.labels[j]);
                let expected = ((2 * a + n - b) % n, g.mul(g.mul(s, t), s));
                self.labels[self.quandle.op(i, j)] != expected
            })
            .collect()
    }
}

pub fn semidirect_involutions(sd: &SemidirectGroup) -> SemidirectInvolutions {
    let (quandle, group_index) = FiniteQuandle::involutions(&sd.group);
    let labels = group_index.iter().map(|&x| sd.split(x)).collect();
    SemidirectInvolutions {
        quandle,
        labels,
        group_index,
    }
}

#[derive(Clone, Debug)]
pub struct LaurentReport {
    pub n: usize,
    pub group_order: usize,
    /// Number of involutions in the semidirect product.
    pub involutions: usize,
    /// `(a, s)` for each source element of `iso`.
    pub labels: Vec<(usize, usize)>,
    pub pairs_checked: usize,
    pub iso_verified: bool,
    pub formula_verified: bool,
    /// First pair where the map fails to be a morphism, or the first element
    /// that is missing or doubly hit.
    pub first_violation: Option<(usize, usize)>,
    /// `(a, s) ↦ (s, a)` onto `Inv(G) × R_n`.
    pub iso: QuandleMorphism,
}

/// Checks that `(a, s) ↦ (s, a)` is an isomorphism from the involutions of
/// `Z/n ⋊ G` onto `Inv(G) × R_n` by comparing full tables.
pub fn verify_laurent(n: usize, action: SignedAction) -> Result<LaurentReport> {
    let (inv_g, inv_idx) = FiniteQuandle::involutions(&action.base);
    if inv_g.is_empty() {
        return Err(Error::InvalidParameter("group has no involutions".into()));
    }
    let group_order = action.base.order();
    let sd = build_semidirect(n, action)?;
    let invs = semidirect_involutions(&sd);
    let target = inv_g.product(&FiniteQuandle::dihedral(n)?);
    let m = invs.labels.len();

    let mut first_violation = None;
    let mut map = Vec::with_capacity(m);
    for (i, &(a, s)) in invs.labels.iter().enumerate() {
        match inv_idx.binary_search(&s) {
            Ok(pos) => map.push(pos * n + a),
            Err(_) => {
                first_violation.get_or_insert((i, i));
                map.push(0);
            }
        }
    }
    if first_violation.is_none() && (m != target.len() || !crate::quandle::is_permutation(&map)) {
        first_violation = Some((m, m));
    }
    let source = &invs.quandle;
    let bad = (0..m).into_par_iter().find_map_first(|x| {
        (0..m)
            .find(|&y| map[source.op(x, y)] != target.op(map[x], map[y]))
            .map(|y| (x, y))
    });
    if first_violation.is_none() {
        first_violation = bad;
    }
    let formula_verified = invs.formula_mismatches(&sd).is_empty();
    let iso = QuandleMorphism::new(Arc::new(invs.quandle.clone()), Arc::new(target), map);
    Ok(LaurentReport {
        n,
        group_order,
        involutions: m,
        labels: invs.labels.clone(),
        pairs_checked: m * m,
        iso_verified: first_violation.is_none(),
        formula_verified,
        first_violation,
        iso,
    })
}

/// `Inv(G) × R_{n₁} × R_{n₂}`, the two-step iterate.
pub fn iterated_laurent(n1: usize, n2: usize, g: &FiniteGroup) -> Result<FiniteQuandle> {
    check_odd(n1)?;
    check_odd(n2)?;
    let (inv, _) = FiniteQuandle::involutions(g);
    Ok(inv
        .product(&FiniteQuandle::dihedral(n1)?)
        .product(&FiniteQuandle::dihedral(n2)?))
}
