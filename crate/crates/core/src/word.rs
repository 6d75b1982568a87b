//! Reduced words in free groups `F(S)` and universal Coxeter groups `F₂(S)`.
//!
//! One word engine serves both: in [`Mode::Free`] letters carry an inverse
//! flag and `g g⁻¹` cancels, in [`Mode::Coxeter`] every generator is its own
//! inverse and `s s` cancels. Words are reduced on construction, so equality
//! of group elements is equality of letter sequences.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::group::FiniteGroup;
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Free,
    Coxeter,
}

/// A generator or its inverse. Ordered `s < s⁻¹ < t < t⁻¹ < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(gen: usize) -> Self {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub const fn inv(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub const fn inverted(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

/// A reduced word over `rank` generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    mode: Mode,
    rank: usize,
    letters: Vec<Letter>,
}

/// Shortlex: shorter words first, then lexicographic by letter.
impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.mode, self.rank, self.letters.len(), &self.letters).cmp(&(
            other.mode,
            other.rank,
            other.letters.len(),
            &other.letters,
        ))
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `conjugator · center · conjugator⁻¹`, the canonical conjugate-of-a-generator
/// form of an involution in `F₂(S)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvolutionWitness {
    pub conjugator: ReducedWord,
    pub center: usize,
}

impl InvolutionWitness {
    pub fn recompose(&self) -> ReducedWord {
        let c = &self.conjugator;
        let mut letters = c.letters.clone();
        letters.push(Letter::new(self.center));
        letters.extend(c.invert().letters);
        ReducedWord::reduce_unchecked(&letters, c.mode, c.rank)
    }
}

fn cancels(mode: Mode, a: Letter, b: Letter) -> bool {
    match mode {
        Mode::Free => a.gen == b.gen && a.inverse != b.inverse,
        Mode::Coxeter => a.gen == b.gen,
    }
}

fn normalize(mode: Mode, l: Letter) -> Letter {
    match mode {
        Mode::Free => l,
        Mode::Coxeter => Letter::new(l.gen),
    }
}

impl ReducedWord {
    pub fn identity(mode: Mode, rank: usize) -> Self {
        ReducedWord {
            mode,
            rank,
            letters: Vec::new(),
        }
    }

    pub fn generator(mode: Mode, rank: usize, gen: usize) -> Result<Self> {
        Self::reduce(&[Letter::new(gen)], mode, rank)
    }

    /// Freely cancels a raw letter sequence.
    pub fn reduce(letters: &[Letter], mode: Mode, rank: usize) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.gen >= rank) {
            return Err(Error::GeneratorOutOfRange { index: l.gen, rank });
        }
        Ok(Self::reduce_unchecked(letters, mode, rank))
    }

    /// Positive letters only; convenient in Coxeter mode.
    pub fn from_gens(mode: Mode, rank: usize, gens: &[usize]) -> Result<Self> {
        let letters: Vec<Letter> = gens.iter().map(|&g| Letter::new(g)).collect();
        Self::reduce(&letters, mode, rank)
    }

    pub(crate) fn reduce_unchecked(letters: &[Letter], mode: Mode, rank: usize) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
        for &l in letters {
            let l = normalize(mode, l);
            match out.last() {
                Some(&last) if cancels(mode, last, l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        ReducedWord {
            mode,
            rank,
            letters: out,
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn last_gen(&self) -> Option<usize> {
        self.letters.last().map(|l| l.gen)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch);
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        // both operands are reduced, so cancellation only happens at the seam
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            match letters.last() {
                Some(&last) if cancels(self.mode, last, l) => {
                    letters.pop();
                }
                _ => letters.push(l),
            }
        }
        Ok(ReducedWord {
            mode: self.mode,
            rank: self.rank,
            letters,
        })
    }

    pub fn invert(&self) -> Self {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|&l| normalize(self.mode, l.inverted()))
            .collect();
        ReducedWord {
            mode: self.mode,
            rank: self.rank,
            letters,
        }
    }

    /// `self · other · self⁻¹`
    pub fn conjugate(&self, other: &Self) -> Result<Self> {
        self.multiply(other)?.multiply(&self.invert())
    }

    /// `w ≠ e` and `w² = e`, decided by reducing the square.
    pub fn is_involution(&self) -> bool {
        !self.is_empty() && self.multiply(self).is_ok_and(|sq| sq.is_empty())
    }

    /// Odd length and equal to its reversal (Coxeter words only).
    pub fn is_odd_palindrome(&self) -> bool {
        self.mode == Mode::Coxeter
            && self.len() % 2 == 1
            && self.letters.iter().eq(self.letters.iter().rev())
    }

    /// Splits an odd reduced word `w` of length `2m + 1` into its first `m`
    /// letters and the middle letter, and checks that they recompose to `w`.
    pub fn kurosh_witness(&self) -> Result<InvolutionWitness> {
        if self.mode != Mode::Coxeter || self.len().is_multiple_of(2) {
            return Err(Error::NotAnInvolution);
        }
        let m = self.len() / 2;
        let witness = InvolutionWitness {
            conjugator: ReducedWord {
                mode: self.mode,
                rank: self.rank,
                letters: self.letters[..m].to_vec(),
            },
            center: self.letters[m].gen,
        };
        if witness.conjugator.last_gen() == Some(witness.center) || witness.recompose() != *self {
            return Err(Error::NotAnInvolution);
        }
        Ok(witness)
    }

    /// For a free-group word of the form `w s w⁻¹` with `s` a positive
    /// generator, returns `s`.
    pub fn generator_conjugate_center(&self) -> Option<usize> {
        if self.mode != Mode::Free || self.len().is_multiple_of(2) {
            return None;
        }
        let m = self.len() / 2;
        let center = self.letters[m];
        if center.inverse {
            return None;
        }
        let symmetric =
            (0..m).all(|i| self.letters[m + 1 + i] == self.letters[m - 1 - i].inverted());
        symmetric.then_some(center.gen)
    }
}

/// Number of reduced words of length at most `radius`, or `None` on overflow.
pub fn ball_size(rank: usize, mode: Mode, radius: usize) -> Option<usize> {
    let (first, branch) = match mode {
        Mode::Free => (2 * rank, (2 * rank).saturating_sub(1)),
        Mode::Coxeter => (rank, rank.saturating_sub(1)),
    };
    let mut total: usize = 1;
    let mut level = first;
    for _ in 0..radius {
        total = total.checked_add(level)?;
        level = level.checked_mul(branch)?;
    }
    Some(total)
}

fn check_ball(rank: usize, mode: Mode, radius: usize, limits: &Limits) -> Result<()> {
    if radius > limits.max_word_len {
        return Err(Error::CapExceeded {
            what: "word length",
            requested: radius,
            cap: limits.max_word_len,
        });
    }
    let size = ball_size(rank, mode, radius).unwrap_or(usize::MAX);
    if size > limits.max_ball_size {
        return Err(Error::CapExceeded {
            what: "ball size",
            requested: size,
            cap: limits.max_ball_size,
        });
    }
    Ok(())
}

/// All reduced words of length at most `radius`, in shortlex order.
pub fn ball_enumerate(
    rank: usize,
    mode: Mode,
    radius: usize,
    limits: &Limits,
) -> Result<Vec<ReducedWord>> {
    check_ball(rank, mode, radius, limits)?;
    let alphabet: Vec<Letter> = (0..rank)
        .flat_map(|g| match mode {
            Mode::Free => vec![Letter::new(g), Letter::inv(g)],
            Mode::Coxeter => vec![Letter::new(g)],
        })
        .collect();
    let mut out = vec![ReducedWord::identity(mode, rank)];
    let mut level_start = 0;
    for _ in 0..radius {
        let level_end = out.len();
        for i in level_start..level_end {
            for &l in &alphabet {
                let w = &out[i];
                if w.letters.last().is_some_and(|&last| cancels(mode, last, l)) {
                    continue;
                }
                let mut letters = w.letters.clone();
                letters.push(l);
                out.push(ReducedWord {
                    mode,
                    rank,
                    letters,
                });
            }
        }
        level_start = level_end;
    }
    Ok(out)
}

/// Image of `w` under the homomorphism sending generator `i` to
/// `assignment[i]`. In Coxeter mode every image must square to the identity.
pub fn evaluate(w: &ReducedWord, group: &FiniteGroup, assignment: &[usize]) -> Result<usize> {
    if assignment.len() != w.rank {
        return Err(Error::InvalidParameter(format!(
            "assignment has {} images for {} generators",
            assignment.len(),
            w.rank
        )));
    }
    for (gen, &e) in assignment.iter().enumerate() {
        if e >= group.order() {
            return Err(Error::InvalidParameter(format!(
                "image {e} of generator {gen} is not a group element"
            )));
        }
        if w.mode == Mode::Coxeter && group.mul(e, e) != group.identity() {
            return Err(Error::NonInvolutiveImage {
                generator: gen,
                element: e,
            });
        }
    }
    Ok(w.letters.iter().fold(group.identity(), |acc, l| {
        let img = assignment[l.gen];
        let img = if l.inverse { group.inv(img) } else { img };
        group.mul(acc, img)
    }))
}

/// Conjugation `x · y · x⁻¹` in the free quandle inside `F(S)`.
///
/// Both arguments must be reduced words `w s w⁻¹` with `s` a generator.
pub fn free_quandle_op(x: &ReducedWord, y: &ReducedWord) -> Result<ReducedWord> {
    if x.mode != Mode::Free || y.mode != Mode::Free {
        return Err(Error::ModeMismatch);
    }
    if x.generator_conjugate_center().is_none() || y.generator_conjugate_center().is_none() {
        return Err(Error::NotGeneratorConjugate);
    }
    x.conjugate(y)
}

/// Generator labels used to read and print words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    names: Vec<String>,
}

const STANDARD_NAMES: [&str; 8] = ["s", "t", "u", "v", "w", "x", "y", "z"];

impl Alphabet {
    /// Labels must be nonempty, distinct, free of whitespace and `^`, and not
    /// `e`, which denotes the identity.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n == "e" || n.contains('^') || n.chars().any(char::is_whitespace) {
                return Err(Error::InvalidParameter(format!(
                    "invalid generator label `{n}`"
                )));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate generator label `{n}`"
                )));
            }
        }
        Ok(Alphabet { names })
    }

    /// `s, t, u, …`, then `g8, g9, …` past eight generators.
    pub fn standard(k: usize) -> Self {
        let names = (0..k)
            .map(|i| {
                STANDARD_NAMES
                    .get(i)
                    .map_or_else(|| format!("g{i}"), |s| s.to_string())
            })
            .collect();
        Alphabet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, gen: usize) -> &str {
        &self.names[gen]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Reads whitespace-separated labels with an optional `^-1` suffix. A lone
    /// `e` (or empty input) is the identity. In Coxeter mode `^-1` is accepted
    /// and ignored.
    pub fn parse_word(&self, text: &str, mode: Mode) -> Result<ReducedWord> {
        let mut letters = Vec::new();
        let toks: Vec<(usize, &str)> = text
            .split_whitespace()
            .map(|t| {
                let byte = t.as_ptr() as usize - text.as_ptr() as usize;
                (text[..byte].chars().count() + 1, t)
            })
            .collect();
        if let [(_, "e")] = toks.as_slice() {
            return Ok(ReducedWord::identity(mode, self.len()));
        }
        for (col, tok) in toks {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(base) => (base, true),
                None => (tok, false),
            };
            let gen = self
                .index_of(name)
                .ok_or_else(|| ParseError::new(1, col, format!("unknown generator `{name}`")))?;
            letters.push(Letter { gen, inverse });
        }
        ReducedWord::reduce(&letters, mode, self.len())
    }

    pub fn format_word(&self, w: &ReducedWord) -> String {
        if w.is_empty() {
            return "e".to_string();
        }
        w.letters
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", self.names[l.gen])
                } else {
                    self.names[l.gen].clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn display<'a>(&'a self, w: &'a ReducedWord) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Alphabet, &'a ReducedWord);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format_word(self.1))
            }
        }
        D(self, w)
    }
}
