//! Words in the orbifold group of the sphere with four cone points of order
//! two and one puncture (letters `g0 g1 gt glambda ginf`), and in the group
//! of the twice-punctured torus (letters `alpha beta delta1 delta2`).
//!
//! Reduction works projectively: besides free cancellation, the involutive
//! letters satisfy `x x = 1`. Evaluation works on unimodular lifts, where the
//! same letters square to `-I`. [`reduce_with_sign`] tracks the difference.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{ParseError, WordError};
use crate::mat2::Mat2;
use crate::reps::{FivePuncturedRep, TorusTwoRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    G0,
    G1,
    Gt,
    Glambda,
    Ginf,
    Alpha,
    Beta,
    Delta1,
    Delta2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    /// The orbifold group of the sphere.
    Orbifold,
    /// The twice-punctured torus group.
    Torus,
}

impl Letter {
    pub const ORBIFOLD: [Letter; 5] = [Letter::G0, Letter::G1, Letter::Gt, Letter::Glambda, Letter::Ginf];
    pub const TORUS: [Letter; 4] = [Letter::Alpha, Letter::Beta, Letter::Delta1, Letter::Delta2];

    pub fn name(self) -> &'static str {
        match self {
            Letter::G0 => "g0",
            Letter::G1 => "g1",
            Letter::Gt => "gt",
            Letter::Glambda => "glambda",
            Letter::Ginf => "ginf",
            Letter::Alpha => "alpha",
            Letter::Beta => "beta",
            Letter::Delta1 => "delta1",
            Letter::Delta2 => "delta2",
        }
    }

    pub fn group(self) -> Group {
        if Letter::ORBIFOLD.contains(&self) {
            Group::Orbifold
        } else {
            Group::Torus
        }
    }

    /// Cone points of order two: every letter of the orbifold group but `gt`.
    pub fn is_involutive(self) -> bool {
        self.group() == Group::Orbifold && self != Letter::Gt
    }
}

impl FromStr for Letter {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Letter::ORBIFOLD
            .iter()
            .chain(&Letter::TORUS)
            .copied()
            .find(|l| l.name() == s)
            .ok_or_else(|| ParseError::Generator(s.to_string()))
    }
}

/// A letter with exponent `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub letter: Letter,
    pub inverse: bool,
}

impl Generator {
    pub fn new(letter: Letter) -> Self {
        Generator { letter, inverse: false }
    }

    pub fn inv(self) -> Self {
        Generator { inverse: !self.inverse, ..self }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter.name())?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

impl FromStr for Generator {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, inverse) = match s.split_once('^') {
            None => (s, false),
            Some((name, "-1")) => (name, true),
            Some((name, "1")) => (name, false),
            Some(_) => return Err(ParseError::Generator(s.to_string())),
        };
        Ok(Generator { letter: name.parse()?, inverse })
    }
}

/// A word as a flat list of generators. Words built by hand or by
/// [`phi_star`] are not reduced; call [`reduce`] when a normal form is needed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(letters: &[Letter]) -> Self {
        Word(letters.iter().map(|&l| Generator::new(l)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The group of the letters, `None` for the empty word.
    pub fn group(&self) -> Option<Group> {
        self.0.first().map(|g| g.letter.group())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|g| g.inv()).collect())
    }

    /// Number of letters among `g0 g1 glambda ginf`; even exactly on the
    /// index-two subgroup that lifts to the torus.
    pub fn involutive_count(&self) -> usize {
        self.0.iter().filter(|g| g.letter.is_involutive()).count()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let gens = s.split_whitespace().map(str::parse).collect::<Result<Vec<Generator>, _>>()?;
        let word = Word(gens);
        if let Some(group) = word.group() {
            if word.0.iter().any(|g| g.letter.group() != group) {
                return Err(ParseError::MixedAlphabet);
            }
        }
        Ok(word)
    }
}

/// Reduced form together with the sign picked up on unimodular lifts, where
/// each involutive letter `x` has `x^-1 = -x` and `x x = -I`.
///
/// For any assignment giving the involutive letters traceless unimodular
/// matrices, `eval(w) = sign * eval(reduced)`.
pub fn reduce_with_sign(w: &Word) -> (Word, i32) {
    let mut out: Vec<Generator> = Vec::with_capacity(w.len());
    let mut sign = 1;
    for &g in &w.0 {
        let g = if g.letter.is_involutive() && g.inverse {
            sign = -sign;
            g.inv()
        } else {
            g
        };
        match out.last() {
            Some(&top) if top == g.inv() => {
                out.pop();
            }
            Some(&top) if top == g && g.letter.is_involutive() => {
                out.pop();
                sign = -sign;
            }
            _ => out.push(g),
        }
    }
    (Word(out), sign)
}

/// Free reduction plus `x x = 1` for the involutive letters. The result is
/// the unique reduced word of the free product, so independent of the order
/// in which the rules are applied.
pub fn reduce(w: &Word) -> Word {
    reduce_with_sign(w).0
}

fn image(letter: Letter) -> Word {
    use Letter::*;
    match letter {
        Alpha => Word::letters(&[G1, Gt, Glambda]),
        Beta => Word::letters(&[Glambda, Ginf]),
        Delta1 => Word::letters(&[Gt]),
        Delta2 => Word(vec![Generator::new(Ginf), Generator::new(Gt), Generator::new(Ginf).inv()]),
        _ => unreachable!("only torus letters have images"),
    }
}

/// The inclusion of the torus group into the orbifold group, letter by
/// letter and without any rewriting.
pub fn phi_star(w: &Word) -> Result<Word, WordError> {
    let mut out = Vec::new();
    for g in &w.0 {
        if g.letter.group() != Group::Torus {
            return Err(WordError::WrongGroup);
        }
        let img = image(g.letter);
        out.extend(if g.inverse { img.inverse() } else { img }.0);
    }
    Ok(Word(out))
}

/// The elliptic involution on the torus group: `alpha, beta` go to their
/// inverses, `delta1` and `delta2` are swapped.
pub fn involution(w: &Word) -> Result<Word, WordError> {
    w.0.iter()
        .map(|&g| {
            let letter = match g.letter {
                Letter::Alpha | Letter::Beta => return Ok(g.inv()),
                Letter::Delta1 => Letter::Delta2,
                Letter::Delta2 => Letter::Delta1,
                _ => return Err(WordError::WrongGroup),
            };
            Ok(Generator { letter, ..g })
        })
        .collect::<Result<_, _>>()
        .map(Word)
}

/// `g0 g1 gt glambda ginf`.
pub fn orbifold_relation() -> Word {
    Word::letters(&Letter::ORBIFOLD)
}

/// `alpha beta (delta1 beta alpha delta2)^-1`.
pub fn torus_relation() -> Word {
    use Letter::*;
    Word::letters(&[Alpha, Beta]).concat(&Word::letters(&[Delta1, Beta, Alpha, Delta2]).inverse())
}

/// Matrices for the letters of a word.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Assignment(pub BTreeMap<Letter, Mat2>);

impl From<&FivePuncturedRep> for Assignment {
    fn from(r: &FivePuncturedRep) -> Self {
        let ms = [&r.m0, &r.m1, &r.mt, &r.mlambda, &r.minf];
        Assignment(Letter::ORBIFOLD.iter().copied().zip(ms.into_iter().cloned()).collect())
    }
}

impl From<&TorusTwoRep> for Assignment {
    fn from(r: &TorusTwoRep) -> Self {
        let ms = [&r.a, &r.b, &r.d1, &r.d2];
        Assignment(Letter::TORUS.iter().copied().zip(ms.into_iter().cloned()).collect())
    }
}

/// Product of the assigned matrices; inverses are adjugates, so the
/// assignment is assumed unimodular.
pub fn eval_word(w: &Word, assignment: &Assignment) -> Result<Mat2, WordError> {
    let mut acc = Mat2::identity();
    for g in &w.0 {
        let m = assignment
            .0
            .get(&g.letter)
            .ok_or_else(|| WordError::MissingGenerator(g.letter.name().to_string()))?;
        acc = if g.inverse { acc * m.adjugate() } else { acc * m };
    }
    Ok(acc)
}

/// Uniformly random word of the given length in one alphabet.
pub fn random_word(rng: &mut impl Rng, group: Group, len: usize) -> Word {
    let alphabet: &[Letter] = match group {
        Group::Orbifold => &Letter::ORBIFOLD,
        Group::Torus => &Letter::TORUS,
    };
    Word(
        (0..len)
            .map(|_| Generator {
                letter: alphabet[rng.gen_range(0..alphabet.len())],
                inverse: rng.gen_bool(0.5),
            })
            .collect(),
    )
}
