//! The free involutory quandle `FQ₂(S)` on a finite alphabet.
//!
//! Elements are the involutions of the universal Coxeter group `F₂(S)`, i.e.
//! reduced odd palindromes. Each is stored canonically as `(prefix, center)`
//! with expansion `prefix · center · prefix⁻¹`, where the prefix never ends
//! with the center letter.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::quandle::FiniteQuandle;
use crate::word::{ball_enumerate, Alphabet, InvolutionWitness, Letter, Mode, ReducedWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiqElement {
    prefix: ReducedWord,
    center: usize,
}

impl FiqElement {
    /// A basis element.
    pub fn embed(rank: usize, gen: usize) -> Result<Self> {
        if gen >= rank {
            return Err(Error::GeneratorOutOfRange { index: gen, rank });
        }
        Ok(FiqElement {
            prefix: ReducedWord::identity(Mode::Coxeter, rank),
            center: gen,
        })
    }

    /// Canonical form of an involution of `F₂(S)`.
    pub fn from_word(w: &ReducedWord) -> Result<Self> {
        let InvolutionWitness { conjugator, center } = w.kurosh_witness()?;
        Ok(FiqElement {
            prefix: conjugator,
            center,
        })
    }

    /// Reads a palindrome in word syntax, e.g. `s t s`.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        Self::from_word(&alphabet.parse_word(text, Mode::Coxeter)?)
    }

    pub fn rank(&self) -> usize {
        self.prefix.rank()
    }

    pub fn prefix(&self) -> &ReducedWord {
        &self.prefix
    }

    pub fn center(&self) -> usize {
        self.center
    }

    /// Length of the prefix; the expansion has length `2 · depth + 1`.
    pub fn depth(&self) -> usize {
        self.prefix.len()
    }

    pub fn expansion(&self) -> ReducedWord {
        InvolutionWitness {
            conjugator: self.prefix.clone(),
            center: self.center,
        }
        .recompose()
    }

    /// Right-nested operation form, e.g. `ρ▷σ` or `s▷(t▷s)`.
    pub fn expression(&self, alphabet: &Alphabet) -> String {
        let mut s = alphabet.name(self.center).to_string();
        for (i, l) in self.prefix.letters().iter().enumerate().rev() {
            s = if i + 1 == self.prefix.len() {
                format!("{}▷{s}", alphabet.name(l.gen))
            } else {
                format!("{}▷({s})", alphabet.name(l.gen))
            };
        }
        s
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        struct D<'a>(&'a FiqElement, &'a Alphabet);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.1.format_word(&self.0.expansion()))
            }
        }
        D(self, alphabet)
    }
}

/// `x ▷ y`: conjugation of `y` by `x` in `F₂(S)`, kept in canonical form.
///
/// Only the new prefix is computed: `x · prefix(y)`, with a trailing center
/// letter dropped since the center commutes with itself.
pub fn fiq_op(x: &FiqElement, y: &FiqElement) -> Result<FiqElement> {
    if x.rank() != y.rank() {
        return Err(Error::RankMismatch {
            left: x.rank(),
            right: y.rank(),
        });
    }
    let mut prefix = x.expansion().multiply(&y.prefix)?;
    if prefix.last_gen() == Some(y.center) {
        let letters = &prefix.letters()[..prefix.len() - 1];
        prefix = ReducedWord::reduce(letters, Mode::Coxeter, y.rank())?;
    }
    Ok(FiqElement {
        prefix,
        center: y.center,
    })
}

/// All elements with expansion length at most `radius`, ordered by length and
/// then lexicographically.
pub fn fiq_ball(rank: usize, radius: usize, limits: &Limits) -> Result<Vec<FiqElement>> {
    if radius == 0 || rank == 0 {
        return Ok(Vec::new());
    }
    let prefixes = ball_enumerate(rank, Mode::Coxeter, (radius - 1) / 2, limits)?;
    let mut out = Vec::new();
    for p in prefixes {
        for center in 0..rank {
            if p.last_gen() != Some(center) {
                out.push(FiqElement {
                    prefix: p.clone(),
                    center,
                });
            }
        }
    }
    Ok(out)
}

/// A binary operation the universal extension can land in.
pub trait QuandleOp {
    type Element: Clone + Eq + Hash + fmt::Debug;

    fn act(&self, x: &Self::Element, y: &Self::Element) -> Self::Element;
}

impl QuandleOp for FiniteQuandle {
    type Element = usize;

    fn act(&self, x: &usize, y: &usize) -> usize {
        self.op(*x, *y)
    }
}

/// The unique quandle morphism `FQ₂(S) → T` extending a generator assignment.
///
/// `g s g⁻¹` goes to `λ_{φ(g₁)} ∘ … ∘ λ_{φ(gₘ)} (φ(s))`.
#[derive(Clone, Debug)]
pub struct Evaluator<'a, T: QuandleOp> {
    target: &'a T,
    images: Vec<T::Element>,
}

impl<'a, T: QuandleOp> Evaluator<'a, T> {
    /// Caller guarantees that `target` is an involutory quandle.
    pub(crate) fn from_parts(target: &'a T, images: Vec<T::Element>) -> Self {
        Evaluator { target, images }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[T::Element] {
        &self.images
    }

    pub fn target(&self) -> &T {
        self.target
    }

    pub fn evaluate(&self, e: &FiqElement) -> Result<T::Element> {
        if e.rank() != self.rank() {
            return Err(Error::RankMismatch {
                left: e.rank(),
                right: self.rank(),
            });
        }
        let mut v = self.images[e.center].clone();
        for &Letter { gen, .. } in e.prefix.letters().iter().rev() {
            v = self.target.act(&self.images[gen], &v);
        }
        Ok(v)
    }
}

/// Extends `assignment` (generator `i` ↦ element `assignment[i]` of `target`)
/// to a morphism. Refuses targets that are not involutory quandles, where the
/// two conjugators `g` and `g s` of the same element could disagree.
pub fn universal_extend<'a>(
    target: &'a FiniteQuandle,
    assignment: &[usize],
) -> Result<Evaluator<'a, FiniteQuandle>> {
    target.require_involutory_quandle()?;
    if let Some(&v) = assignment.iter().find(|&&v| v >= target.len()) {
        return Err(Error::InvalidParameter(format!(
            "assigned element {v} is not in the target of order {}",
            target.len()
        )));
    }
    Ok(Evaluator::from_parts(target, assignment.to_vec()))
}

/// Two distinct canonical forms with the same image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: FiqElement,
    pub rhs: FiqElement,
}

impl Relation {
    pub fn depth(&self) -> usize {
        self.lhs.depth().max(self.rhs.depth())
    }

    /// `lhs = rhs` in operation form, e.g. `ρ▷σ = τ`.
    pub fn expression(&self, alphabet: &Alphabet) -> String {
        format!(
            "{} = {}",
            self.lhs.expression(alphabet),
            self.rhs.expression(alphabet)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub depth: usize,
    pub elements_checked: usize,
    pub relation: Option<Relation>,
}

/// Evaluates canonical forms of depth at most `depth` in order and reports the
/// first one whose value was already taken by an earlier form.
///
/// Finding nothing only means the generated subquandle looks free up to the
/// bound.
pub fn freeness_probe<T: QuandleOp>(
    evaluator: &Evaluator<'_, T>,
    depth: usize,
    limits: &Limits,
) -> Result<ProbeReport> {
    let ball = fiq_ball(evaluator.rank(), 2 * depth + 1, limits)?;
    let mut seen: HashMap<T::Element, usize> = HashMap::with_capacity(ball.len());
    for (i, e) in ball.iter().enumerate() {
        let v = evaluator.evaluate(e)?;
        if let Some(&j) = seen.get(&v) {
            return Ok(ProbeReport {
                depth,
                elements_checked: i + 1,
                relation: Some(Relation {
                    lhs: e.clone(),
                    rhs: ball[j].clone(),
                }),
            });
        }
        seen.insert(v, i);
    }
    Ok(ProbeReport {
        depth,
        elements_checked: ball.len(),
        relation: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha() -> Alphabet {
        Alphabet::new(["σ", "τ"]).unwrap()
    }

    fn el(text: &str) -> FiqElement {
        FiqElement::parse(&alpha(), text).unwrap()
    }

    #[test]
    fn embedding() {
        let s = FiqElement::embed(2, 0).unwrap();
        assert!(s.prefix().is_empty());
        assert_eq!(s.center(), 0);
        assert_eq!(FiqElement::embed(2, 1).unwrap().center(), 1);
        assert!(FiqElement::embed(2, 2).is_err());
    }

    #[test]
    fn operation_examples() {
        let (s, t) = (el("σ"), el("τ"));
        let st = fiq_op(&s, &t).unwrap();
        assert_eq!(st, el("σ τ σ"));
        assert_eq!(st.prefix().len(), 1);
        assert_eq!(fiq_op(&s, &s).unwrap(), s);
        let r = fiq_op(&st, &s).unwrap();
        assert_eq!(r.display(&alpha()).to_string(), "σ τ σ τ σ");
        assert_eq!(alpha().format_word(r.prefix()), "σ τ");
        assert_eq!(r.center(), 0);
        let other = FiqElement::embed(3, 0).unwrap();
        assert!(matches!(
            fiq_op(&s, &other),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn parse_rejects_non_involutions() {
        assert!(FiqElement::parse(&alpha(), "σ τ").is_err());
        assert!(FiqElement::parse(&alpha(), "e").is_err());
        assert_eq!(el("σ σ τ σ σ"), el("τ"));
    }

    #[test]
    fn expressions() {
        let a = alpha();
        assert_eq!(el("σ").expression(&a), "σ");
        assert_eq!(el("σ τ σ").expression(&a), "σ▷τ");
        assert_eq!(el("σ τ σ τ σ").expression(&a), "σ▷(τ▷σ)");
    }

    #[test]
    fn ball_examples() {
        let limits = Limits::default();
        let a = alpha();
        let show = |b: Vec<FiqElement>| {
            b.iter()
                .map(|e| e.display(&a).to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(show(fiq_ball(2, 1, &limits).unwrap()), ["σ", "τ"]);
        assert_eq!(
            show(fiq_ball(2, 3, &limits).unwrap()),
            ["σ", "τ", "σ τ σ", "τ σ τ"]
        );
        assert_eq!(fiq_ball(1, 5, &limits).unwrap().len(), 1);
        for r in [1, 3, 5, 7, 9] {
            assert_eq!(fiq_ball(2, r, &limits).unwrap().len(), r + 1);
        }
        // k = 3: 3 · 2^m palindromes of length 2m + 1
        assert_eq!(fiq_ball(3, 7, &limits).unwrap().len(), 3 + 6 + 12 + 24);
    }

    #[test]
    fn universal_extension_into_dihedral3() {
        let t = FiniteQuandle::dihedral(3).unwrap();
        let ev = universal_extend(&t, &[0, 1]).unwrap();
        assert_eq!(ev.evaluate(&el("σ τ σ")).unwrap(), 2);
        assert_eq!(ev.evaluate(&el("σ")).unwrap(), 0);
        assert_eq!(ev.evaluate(&el("τ")).unwrap(), 1);
    }

    #[test]
    fn universal_extension_refuses_bad_targets() {
        let conj_s4 = FiniteQuandle::builtin("conj-s4").unwrap();
        assert!(matches!(
            universal_extend(&conj_s4, &[0, 1]),
            Err(Error::NotInvolutory { .. })
        ));
        let shift = FiniteQuandle::from_rows(vec![vec![1, 0], vec![1, 0]]).unwrap();
        assert!(matches!(
            universal_extend(&shift, &[0, 1]),
            Err(Error::NotAQuandle { .. })
        ));
        let d3 = FiniteQuandle::dihedral(3).unwrap();
        assert!(universal_extend(&d3, &[0, 3]).is_err());
    }

    #[test]
    fn probe_examples() {
        let limits = Limits::default();
        let d3 = FiniteQuandle::dihedral(3).unwrap();
        let ev = universal_extend(&d3, &[0, 1]).unwrap();
        let report = freeness_probe(&ev, 3, &limits).unwrap();
        let rel = report.relation.expect("finite target has relations");
        assert_ne!(rel.lhs, rel.rhs);
        assert_eq!(
            ev.evaluate(&rel.lhs).unwrap(),
            ev.evaluate(&rel.rhs).unwrap()
        );
        assert_eq!(rel.expression(&alpha()), "τ▷σ = σ▷τ");

        let single = universal_extend(&d3, &[1]).unwrap();
        let report = freeness_probe(&single, 0, &limits).unwrap();
        assert_eq!(report.relation, None);
        assert_eq!(report.elements_checked, 1);
    }
}
