//! The word group `F₂{ρ} ⋉ F₂{σ, τ}`, where `ρ` conjugates `σ` and `τ` into
//! each other.
//!
//! An element `(ε, w)` stands for `w · ρ^ε`, so
//! `(ε, w)(δ, v) = (ε + δ, w · α^ε(v))` with `α` the letter swap `σ ↔ τ`.
//! All arithmetic is exact on reduced Coxeter words.

use std::fmt;

use crate::error::{Error, Result};
use crate::fiq::{Evaluator, QuandleOp};
use crate::limits::Limits;
use crate::word::{ball_enumerate, Alphabet, Letter, Mode, ReducedWord};

pub const SIGMA: usize = 0;
pub const TAU: usize = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvElement {
    eps: bool,
    word: ReducedWord,
}

fn swap(w: &ReducedWord) -> ReducedWord {
    let letters: Vec<Letter> = w.letters().iter().map(|l| Letter::new(1 - l.gen)).collect();
    ReducedWord::reduce(&letters, Mode::Coxeter, 2).expect("rank 2")
}

impl EvElement {
    /// `w · ρ^ε` for a word over `{σ, τ}`.
    pub fn new(eps: bool, word: ReducedWord) -> Result<Self> {
        if word.mode() != Mode::Coxeter {
            return Err(Error::ModeMismatch);
        }
        if word.rank() != 2 {
            return Err(Error::RankMismatch {
                left: word.rank(),
                right: 2,
            });
        }
        Ok(EvElement { eps, word })
    }

    pub fn identity() -> Self {
        EvElement {
            eps: false,
            word: ReducedWord::identity(Mode::Coxeter, 2),
        }
    }

    pub fn rho() -> Self {
        EvElement {
            eps: true,
            word: ReducedWord::identity(Mode::Coxeter, 2),
        }
    }

    pub fn sigma() -> Self {
        Self::letter(SIGMA)
    }

    pub fn tau() -> Self {
        Self::letter(TAU)
    }

    fn letter(gen: usize) -> Self {
        EvElement {
            eps: false,
            word: ReducedWord::generator(Mode::Coxeter, 2, gen).expect("rank 2"),
        }
    }

    pub fn eps(&self) -> bool {
        self.eps
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        !self.eps && self.word.is_empty()
    }

    /// Reads `w` or `w ρ` with `w` a word in `σ`, `τ`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (body, eps) = match text.strip_suffix('ρ') {
            Some(rest) => (rest.trim_end(), true),
            None => (text, false),
        };
        let word = if body.is_empty() {
            ReducedWord::identity(Mode::Coxeter, 2)
        } else {
            Alphabet::new(["σ", "τ"])?.parse_word(body, Mode::Coxeter)?
        };
        Self::new(eps, word)
    }
}

impl fmt::Display for EvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = Alphabet::new(["σ", "τ"]).expect("labels");
        match (self.word.is_empty(), self.eps) {
            (true, true) => f.write_str("ρ"),
            (_, false) => f.write_str(&a.format_word(&self.word)),
            (false, true) => write!(f, "{} ρ", a.format_word(&self.word)),
        }
    }
}

pub fn ev_multiply(x: &EvElement, y: &EvElement) -> EvElement {
    let twisted = if x.eps { swap(&y.word) } else { y.word.clone() };
    EvElement {
        eps: x.eps ^ y.eps,
        word: x.word.multiply(&twisted).expect("same rank"),
    }
}

/// `(ε, w)⁻¹ = (ε, α^ε(w⁻¹))`
pub fn ev_inverse(x: &EvElement) -> EvElement {
    let inv = x.word.invert();
    EvElement {
        eps: x.eps,
        word: if x.eps { swap(&inv) } else { inv },
    }
}

pub fn ev_conjugate(x: &EvElement, y: &EvElement) -> EvElement {
    ev_multiply(&ev_multiply(x, y), &ev_inverse(x))
}

/// `x ≠ e` and `x² = e`.
pub fn ev_is_involution(x: &EvElement) -> bool {
    !x.is_identity() && ev_multiply(x, x).is_identity()
}

/// All involutions whose word part has length at most `max_len`, by brute
/// force over the word ball.
pub fn ev_involutions(max_len: usize, limits: &Limits) -> Result<Vec<EvElement>> {
    let ball = ball_enumerate(2, Mode::Coxeter, max_len, limits)?;
    let mut out = Vec::new();
    for eps in [false, true] {
        for w in &ball {
            let x = EvElement {
                eps,
                word: w.clone(),
            };
            if ev_is_involution(&x) {
                out.push(x);
            }
        }
    }
    Ok(out)
}

/// Involutions of the word group under conjugation.
#[derive(Clone, Copy, Debug, Default)]
pub struct EvModel;

pub static EV_MODEL: EvModel = EvModel;

impl QuandleOp for EvModel {
    type Element = EvElement;

    fn act(&self, x: &EvElement, y: &EvElement) -> EvElement {
        ev_conjugate(x, y)
    }
}

/// Universal extension into the involution quandle of the word group.
pub fn ev_evaluator(images: Vec<EvElement>) -> Result<Evaluator<'static, EvModel>> {
    if let Some(pos) = images.iter().position(|x| !ev_is_involution(x)) {
        return Err(Error::InvalidParameter(format!(
            "image of generator {pos} ({}) is not an involution",
            images[pos]
        )));
    }
    Ok(Evaluator::from_parts(&EV_MODEL, images))
}

/// Generators `ρ, σ, τ` sent to themselves.
pub fn ev_standard_evaluator() -> Evaluator<'static, EvModel> {
    ev_evaluator(vec![EvElement::rho(), EvElement::sigma(), EvElement::tau()])
        .expect("ρ, σ, τ are involutions")
}

pub fn ev_alphabet() -> Alphabet {
    Alphabet::new(["ρ", "σ", "τ"]).expect("labels")
}
