//! Free-group words in run-length form.
//!
//! A [`Word`] is a list of syllables `g^k` with `k ≠ 0` and no two adjacent
//! syllables on the same generator, so every value is freely reduced. Words
//! carry generator indices only; an [`Alphabet`] names them for parsing and
//! printing.
//!
//! Text grammar: a word is a whitespace-separated sequence of factors, each
//! a generator name or a parenthesised word, optionally followed by
//! `^` and a signed integer. `1` is the empty word.

use std::fmt;

use serde::Serialize;

use crate::error::WordError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, WordError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(WordError::InvalidGeneratorName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(WordError::DuplicateGenerator(name.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.names[generator]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn lookup(&self, name: &str) -> Result<usize, WordError> {
        self.index_of(name)
            .ok_or_else(|| WordError::UnknownGenerator {
                name: name.to_string(),
                position: 0,
            })
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `generator^exponent`, exponent nonzero inside a [`Word`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    runs: Vec<Syllable>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(generator: usize) -> Self {
        Word::power_of(generator, 1)
    }

    pub fn power_of(generator: usize, exponent: i64) -> Self {
        let mut w = Word::empty();
        w.push(generator, exponent);
        w
    }

    /// Reduces an arbitrary syllable sequence.
    pub fn from_syllables(syllables: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut w = Word::empty();
        for (g, e) in syllables {
            w.push(g, e);
        }
        w
    }

    /// Appends `g^e` and cancels against the tail.
    fn push(&mut self, generator: usize, exponent: i64) {
        if exponent == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some(last) if last.generator == generator => {
                last.exponent += exponent;
                if last.exponent == 0 {
                    self.runs.pop();
                }
            }
            _ => self.runs.push(Syllable {
                generator,
                exponent,
            }),
        }
    }

    pub fn runs(&self) -> &[Syllable] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Length in letters, `Σ |k|`.
    pub fn letter_len(&self) -> u64 {
        self.runs.iter().map(|s| s.exponent.unsigned_abs()).sum()
    }

    /// The word spelled out one letter per entry, each exponent `±1`.
    pub fn letters(&self) -> Vec<Syllable> {
        self.runs
            .iter()
            .flat_map(|s| {
                let letter = Syllable {
                    generator: s.generator,
                    exponent: s.exponent.signum(),
                };
                std::iter::repeat_n(letter, s.exponent.unsigned_abs() as usize)
            })
            .collect()
    }

    pub fn largest_generator(&self) -> Option<usize> {
        self.runs.iter().map(|s| s.generator).max()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for s in &other.runs {
            out.push(s.generator, s.exponent);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word {
            runs: self
                .runs
                .iter()
                .rev()
                .map(|s| Syllable {
                    generator: s.generator,
                    exponent: -s.exponent,
                })
                .collect(),
        }
    }

    /// `g · self · g⁻¹`
    pub fn conjugate(&self, g: &Word) -> Word {
        g.multiply(self).multiply(&g.inverse())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let (core, conj) = base.cyclic_reduce();
        let out = match core.runs[..] {
            [] => Word::empty(),
            [only] => Word::power_of(only.generator, only.exponent * k.abs()),
            _ => {
                let mut out = Word::empty();
                for _ in 0..k.unsigned_abs() {
                    for s in &core.runs {
                        out.push(s.generator, s.exponent);
                    }
                }
                out
            }
        };
        out.conjugate(&conj)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.runs.first(), self.runs.last()) {
            (Some(a), Some(b)) if self.runs.len() > 1 => {
                a.generator != b.generator || a.exponent.signum() == b.exponent.signum()
            }
            _ => true,
        }
    }

    /// `(core, conjugator)` with `self = conjugator · core · conjugator⁻¹`
    /// and `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut core = self.runs.clone();
        let mut conj = Word::empty();
        while core.len() > 1 {
            let first = core[0];
            let last = core[core.len() - 1];
            if first.generator != last.generator
                || first.exponent.signum() == last.exponent.signum()
            {
                break;
            }
            let k = first.exponent.abs().min(last.exponent.abs()) * first.exponent.signum();
            conj.push(first.generator, k);
            core[0].exponent -= k;
            let end = core.len() - 1;
            core[end].exponent += k;
            core.retain(|s| s.exponent != 0);
        }
        (Word { runs: core }, conj)
    }

    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.runs
            .iter()
            .filter(|s| s.generator == generator)
            .map(|s| s.exponent)
            .sum()
    }

    pub fn exponent_sum_of(&self, alphabet: &Alphabet, name: &str) -> Result<i64, WordError> {
        Ok(self.exponent_sum(alphabet.lookup(name)?))
    }

    /// `(root, m)` with `self = root^m` and `m` maximal, so `root` is not
    /// itself a proper power. `m = 1` means `self` is not a proper power.
    ///
    /// The period is found on the cyclically reduced core letter by letter;
    /// the root is then conjugated back.
    pub fn proper_power(&self) -> Result<(Word, u64), WordError> {
        if self.is_empty() {
            return Err(WordError::EmptyWord);
        }
        let (core, conj) = self.cyclic_reduce();
        if let [only] = core.runs[..] {
            let root = Word::power_of(only.generator, only.exponent.signum());
            return Ok((root.conjugate(&conj), only.exponent.unsigned_abs()));
        }
        let letters = core.letters();
        let len = letters.len();
        let period = (1..=len)
            .filter(|p| len % p == 0)
            .find(|&p| (p..len).all(|i| letters[i] == letters[i - p]))
            .expect("the full length is always a period");
        let root =
            Word::from_syllables(letters[..period].iter().map(|s| (s.generator, s.exponent)));
        Ok((root.conjugate(&conj), (len / period) as u64))
    }

    /// The image under the endomorphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Result<Word, WordError> {
        let mut out = Word::empty();
        for s in &self.runs {
            let image = images.get(s.generator).ok_or(WordError::AlphabetMismatch {
                index: s.generator,
                size: images.len(),
            })?;
            out = out.multiply(&image.pow(s.exponent));
        }
        Ok(out)
    }

    /// Rejects words that mention generators outside the alphabet.
    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<(), WordError> {
        match self.largest_generator() {
            Some(g) if g >= alphabet.len() => Err(WordError::AlphabetMismatch {
                index: g,
                size: alphabet.len(),
            }),
            _ => Ok(()),
        }
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Word, WordError> {
        let mut p = WordParser {
            text,
            pos: 0,
            base: 0,
            alphabet,
        };
        let w = p.word()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(w)
    }

    /// Parses `text` reporting positions relative to an enclosing string in
    /// which `text` starts at byte `base`.
    pub(crate) fn parse_at(
        alphabet: &Alphabet,
        text: &str,
        base: usize,
    ) -> Result<Word, WordError> {
        Word::parse(alphabet, text).map_err(|e| match e {
            WordError::Syntax { position, message } => WordError::Syntax {
                position: position + base,
                message,
            },
            WordError::UnknownGenerator { name, position } => WordError::UnknownGenerator {
                name,
                position: position + base,
            },
            other => other,
        })
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> DisplayWord<'a> {
        DisplayWord {
            word: self,
            alphabet,
        }
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        self.display(alphabet).to_string()
    }
}

pub struct DisplayWord<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.word.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.alphabet.name(s.generator))?;
            if s.exponent != 1 {
                write!(f, "^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}

struct WordParser<'a> {
    text: &'a str,
    pos: usize,
    base: usize,
    alphabet: &'a Alphabet,
}

impl WordParser<'_> {
    fn error(&self, message: &str) -> WordError {
        WordError::Syntax {
            position: self.base + self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<Word, WordError> {
        let mut w = Word::empty();
        let mut factors = 0;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == b'_' || c == b'(' || c == b'1' => {
                    let f = self.factor()?;
                    w = w.multiply(&f);
                    factors += 1;
                }
                _ => break,
            }
        }
        if factors == 0 {
            return Err(self.error("expected a word"));
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, WordError> {
        let start = self.pos;
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.word()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            Some(b'1') => {
                self.pos += 1;
                if matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                    self.pos = start;
                    return Err(self.error("a generator name cannot start with a digit"));
                }
                Word::empty()
            }
            _ => {
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = &self.text[start..self.pos];
                let g =
                    self.alphabet
                        .index_of(name)
                        .ok_or_else(|| WordError::UnknownGenerator {
                            name: name.to_string(),
                            position: self.base + start,
                        })?;
                Word::generator(g)
            }
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp_start = self.pos;
            if matches!(self.peek(), Some(b'-' | b'+')) {
                self.pos += 1;
            }
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            let k: i64 = self.text[exp_start..self.pos].parse().map_err(|_| {
                self.pos = exp_start;
                self.error("expected an integer exponent")
            })?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }
}

/// One automorphism of the free group on two generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NielsenMove {
    /// Exchange the two generators.
    Swap,
    /// `target ↦ target · by^power`, the other generator fixed. Power `k`
    /// is the composite of `|k|` elementary moves `target ↦ target · by^±1`.
    Transvection {
        target: usize,
        by: usize,
        power: i64,
    },
}

impl NielsenMove {
    /// Images of generators 0 and 1.
    pub fn images(&self) -> [Word; 2] {
        match *self {
            NielsenMove::Swap => [Word::generator(1), Word::generator(0)],
            NielsenMove::Transvection { target, by, power } => {
                let mut images = [Word::generator(0), Word::generator(1)];
                images[target] = Word::generator(target).multiply(&Word::power_of(by, power));
                images
            }
        }
    }

    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        w.substitute(&self.images())
    }

    /// The induced map on `(σ₀, σ₁)`.
    pub fn apply_to_sums(&self, sums: (i64, i64)) -> (i64, i64) {
        match *self {
            NielsenMove::Swap => (sums.1, sums.0),
            NielsenMove::Transvection { target, by, power } => {
                let mut s = [sums.0, sums.1];
                s[by] += power * s[target];
                (s[0], s[1])
            }
        }
    }

    pub fn describe(&self, alphabet: &Alphabet) -> String {
        match *self {
            NielsenMove::Swap => format!("{0} <-> {1}", alphabet.name(0), alphabet.name(1)),
            NielsenMove::Transvection { target, by, power } => format!(
                "{0} -> {0} {1}",
                alphabet.name(target),
                Word::power_of(by, power).to_text(alphabet)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NielsenDescent {
    pub moves: Vec<NielsenMove>,
    pub result: Word,
    /// Generator whose exponent sum is 0 in `result`.
    pub zeroed: usize,
}

/// Rewrites a word over a 2-letter alphabet by free-group automorphisms until
/// one generator has exponent sum 0.
///
/// Euclidean descent on `(σ_t, σ_u)` for generators `t = 0`, `u = 1`: swap
/// whenever `|σ_u| > |σ_t|`, then replace `σ_t` by its truncated remainder
/// modulo `σ_u` with one transvection `u ↦ u·t^(-q)`. The gcd of the sums is
/// preserved. Unless `σ_u` starts at 0, the zeroed generator is `t`.
pub fn nielsen_zero_exponent(w: &Word, alphabet: &Alphabet) -> Result<NielsenDescent, WordError> {
    if alphabet.len() != 2 {
        return Err(WordError::AlphabetArity {
            expected: 2,
            found: alphabet.len(),
        });
    }
    w.check_alphabet(alphabet)?;
    let mut moves = Vec::new();
    let mut current = w.clone();
    let mut sums = (w.exponent_sum(0), w.exponent_sum(1));
    let mut step = |mv: NielsenMove, current: &mut Word, sums: &mut (i64, i64)| {
        *current = mv.apply(current)?;
        *sums = mv.apply_to_sums(*sums);
        debug_assert_eq!(*sums, (current.exponent_sum(0), current.exponent_sum(1)));
        moves.push(mv);
        Ok::<_, WordError>(())
    };
    while sums.0 != 0 && sums.1 != 0 {
        if sums.1.abs() > sums.0.abs() {
            step(NielsenMove::Swap, &mut current, &mut sums)?;
        }
        let q = sums.0 / sums.1;
        let mv = NielsenMove::Transvection {
            target: 1,
            by: 0,
            power: -q,
        };
        step(mv, &mut current, &mut sums)?;
    }
    let zeroed = if sums.0 == 0 { 0 } else { 1 };
    Ok(NielsenDescent {
        moves,
        result: current,
        zeroed,
    })
}

/// Applies moves left to right.
pub fn apply_moves(w: &Word, moves: &[NielsenMove]) -> Result<Word, WordError> {
    moves.iter().try_fold(w.clone(), |acc, mv| mv.apply(&acc))
}
