//! Freely reduced words over indexed generators.
//!
//! A generator name is a single lowercase ASCII letter followed by a decimal
//! index (`a1`, `x12`, `y3`, …). A [`Word`] is a sequence of signed letters
//! kept freely reduced by every constructor and operation, so two words are
//! equal in the free group iff they are equal as values.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors produced by word construction and parsing.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid generator name `{0}`: expected one lowercase letter followed by digits")]
    BadName(String),
    #[error("invalid word syntax near `{0}`")]
    Syntax(String),
    #[error("invalid exponent in `{0}`: exponents are nonzero integers")]
    BadExponent(String),
    #[error("need at least {need} letters, got {got}")]
    Arity { need: usize, got: usize },
    #[error("twist parameter t={t} out of range for n={n}: need 1 <= t <= n-2")]
    TwistRange { t: usize, n: usize },
}

/// An abstract generator: one lowercase base letter plus a numeric index.
///
/// Ordering is by base letter, then numerically by index (so `a2 < a10`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    base: u8,
    index: u32,
}

impl Gen {
    /// Create a generator. Panics if `base` is not a lowercase ASCII letter;
    /// use [`Gen::parse`] for fallible construction from text.
    pub fn new(base: char, index: u32) -> Gen {
        assert!(
            base.is_ascii_lowercase(),
            "generator base must be a lowercase ASCII letter, got {base:?}"
        );
        Gen {
            base: base as u8,
            index,
        }
    }

    pub fn base(&self) -> char {
        self.base as char
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Parse a name of the form `[a-z][0-9]+`.
    pub fn parse(s: &str) -> Result<Gen, WordError> {
        let bad = || WordError::BadName(s.to_string());
        let mut chars = s.chars();
        let base = chars.next().ok_or_else(bad)?;
        if !base.is_ascii_lowercase() {
            return Err(bad());
        }
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let index: u32 = digits.parse().map_err(|_| bad())?;
        Ok(Gen::new(base, index))
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.base(), self.index)
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A signed occurrence of a generator within a word.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Gen,
    /// Always `+1` or `-1`.
    pub sign: i8,
}

impl Letter {
    pub fn new(gen: Gen, sign: i8) -> Letter {
        assert!(sign == 1 || sign == -1, "letter sign must be +1 or -1");
        Letter { gen, sign }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            sign: -self.sign,
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 1 {
            write!(f, "{}", self.gen)
        } else {
            write!(f, "{}^-1", self.gen)
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    match out.last() {
        Some(last) if last.gen == l.gen && last.sign == -l.sign => {
            out.pop();
        }
        _ => out.push(l),
    }
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    /// The one-letter word for a generator.
    pub fn generator(g: Gen) -> Word {
        Word {
            letters: vec![Letter::new(g, 1)],
        }
    }

    /// A single signed letter.
    pub fn letter(g: Gen, sign: i8) -> Word {
        Word {
            letters: vec![Letter::new(g, sign)],
        }
    }

    /// Build a word from letters, freely reducing.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut out = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
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

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self · other`, reduced at the seam.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    /// Product of many words, left to right.
    pub fn product<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Word {
        let mut out = Vec::new();
        for w in words {
            for &l in &w.letters {
                push_reduced(&mut out, l);
            }
        }
        Word { letters: out }
    }

    /// `self^e` (negative exponents invert).
    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..e.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Conjugate `self^h = h⁻¹·self·h`.
    pub fn conjugate_by(&self, h: &Word) -> Word {
        Word::product([&h.inverse(), self, h])
    }

    /// Net exponent of `g` in the word.
    pub fn exponent_sum(&self, g: Gen) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == g)
            .map(|l| l.sign as i64)
            .sum()
    }

    /// The set of generators that occur in the word.
    pub fn support(&self) -> BTreeSet<Gen> {
        self.letters.iter().map(|l| l.gen).collect()
    }
}

/// Commutator `[g,h] = g⁻¹·h⁻¹·g·h`.
pub fn commutator(g: &Word, h: &Word) -> Word {
    Word::product([&g.inverse(), &h.inverse(), g, h])
}

/// Cycle commutator of `y_1..y_n` (`n >= 3`):
/// `[y_1, y_2 ⋯ y_{n−1} · y_n · y_{n−1}⁻¹ ⋯ y_2⁻¹]`.
pub fn cycle_commutator(ys: &[Word]) -> Result<Word, WordError> {
    if ys.len() < 3 {
        return Err(WordError::Arity {
            need: 3,
            got: ys.len(),
        });
    }
    let n = ys.len();
    let mid = Word::product(&ys[1..n - 1]);
    let c = Word::product([&mid, &ys[n - 1], &mid.inverse()]);
    Ok(commutator(&ys[0], &c))
}

/// `t`-twisted cycle commutator of `y_1..y_n` (`n >= 4`, `1 <= t <= n−2`):
/// `[y_1, v · y_n · v⁻¹]` with `v = y_2⁻¹ ⋯ y_{t+1}⁻¹ · y_{t+2} ⋯ y_{n−1}`.
pub fn twisted_cycle_commutator(ys: &[Word], t: usize) -> Result<Word, WordError> {
    let n = ys.len();
    if n < 4 {
        return Err(WordError::Arity { need: 4, got: n });
    }
    if t < 1 || t > n - 2 {
        return Err(WordError::TwistRange { t, n });
    }
    let head = Word::product(ys[1..=t].iter().map(|y| y.inverse()).collect::<Vec<_>>().iter());
    let mid = Word::product(&ys[t + 1..n - 1]);
    let v = head.concat(&mid);
    let c = Word::product([&v, &ys[n - 1], &v.inverse()]);
    Ok(commutator(&ys[0], &c))
}

/// Parse the word grammar:
///
/// ```text
/// word := term ('*' term)* | '1' | <empty>
/// term := name | name '^' int      (int nonzero, optionally negative)
/// name := [a-z][0-9]+
/// ```
pub fn parse_word(text: &str) -> Result<Word, WordError> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "1" {
        return Ok(Word::empty());
    }
    let mut out = Vec::new();
    for raw in trimmed.split('*') {
        let term = raw.trim();
        if term.is_empty() {
            return Err(WordError::Syntax(raw.to_string()));
        }
        let (name, exp) = match term.split_once('^') {
            None => (term, 1i64),
            Some((name, e)) => {
                let e = e.trim();
                let val: i64 = e
                    .parse()
                    .map_err(|_| WordError::BadExponent(term.to_string()))?;
                if val == 0 {
                    return Err(WordError::BadExponent(term.to_string()));
                }
                (name.trim(), val)
            }
        };
        let g = Gen::parse(name)?;
        let sign = if exp < 0 { -1 } else { 1 };
        for _ in 0..exp.unsigned_abs() {
            push_reduced(&mut out, Letter::new(g, sign));
        }
    }
    Ok(Word { letters: out })
}

impl fmt::Display for Word {
    /// Formats in the same grammar `parse_word` accepts; runs of a repeated
    /// letter are collapsed into exponents (`a1^3`, `a2^-2`). The empty word
    /// prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1usize;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let e = l.sign as i64 * run as i64;
            if e == 1 {
                parts.push(format!("{}", l.gen));
            } else {
                parts.push(format!("{}^{}", l.gen, e));
            }
            i += run;
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Word {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Word, WordError> {
        parse_word(s)
    }
}
