//! Finite presentations, abelianization and the one-relator verdict engine.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{PresentationError, WordError};
use crate::snf::{smith_normal_form, IntMatrix};
use crate::words::{nielsen_zero_exponent, Alphabet, NielsenMove, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for r in &relators {
            r.check_alphabet(&alphabet)?;
        }
        Ok(Presentation { alphabet, relators })
    }

    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        parse_presentation(text)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Entry `(i, j)` is the exponent sum of generator `j` in relator `i`.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| {
                (0..self.alphabet.len())
                    .map(|g| r.exponent_sum(g))
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(&rows, self.alphabet.len())
    }

    pub fn abelianization(&self) -> AbelianInvariants {
        let snf = smith_normal_form(&self.exponent_matrix());
        AbelianInvariants {
            torsion: snf.invariants.iter().copied().filter(|&d| d > 1).collect(),
            free_rank: self.alphabet.len() - snf.rank(),
        }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Canonical form: `< t, u | t u t^-1 u^-2 >`, `< t | >`.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        if !self.alphabet.is_empty() {
            write!(f, " {}", self.alphabet.names().join(", "))?;
        }
        f.write_str(" |")?;
        for (i, r) in self.relators.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{}", r.display(&self.alphabet))?;
        }
        f.write_str(" >")
    }
}

impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let syntax = |position: usize, message: &str| PresentationError::Syntax {
        position,
        message: message.to_string(),
    };
    let open = text
        .find(|c: char| !c.is_whitespace())
        .filter(|&i| text[i..].starts_with('<'))
        .ok_or_else(|| syntax(0, "expected '<'"))?;
    let bar = text[open..]
        .find('|')
        .map(|i| i + open)
        .ok_or_else(|| syntax(text.len(), "expected '|'"))?;
    let close = text[bar..]
        .find('>')
        .map(|i| i + bar)
        .ok_or_else(|| syntax(text.len(), "expected '>'"))?;
    if let Some(extra) = text[close + 1..].find(|c: char| !c.is_whitespace()) {
        return Err(syntax(close + 1 + extra, "unexpected text after '>'"));
    }

    let mut names = Vec::new();
    for (start, piece) in segments(text, open + 1, bar) {
        let name = piece.trim();
        if name.is_empty() {
            return Err(syntax(start, "empty generator name"));
        }
        names.push(name.to_string());
    }
    let alphabet = Alphabet::new(names.iter().cloned()).map_err(|e| match e {
        WordError::InvalidGeneratorName(name) => {
            let at = names.iter().position(|n| *n == name).unwrap_or(0);
            let offset = segments(text, open + 1, bar)
                .nth(at)
                .map_or(open + 1, |(s, p)| s + (p.len() - p.trim_start().len()));
            syntax(offset, &format!("invalid generator name {name:?}"))
        }
        other => other.into(),
    })?;

    let mut relators = Vec::new();
    for (start, piece) in segments(text, bar + 1, close) {
        if piece.trim().is_empty() {
            return Err(syntax(start, "empty relator"));
        }
        let w = Word::parse_at(&alphabet, piece, start).map_err(|e| match e {
            WordError::Syntax { position, message } => {
                PresentationError::Syntax { position, message }
            }
            other => other.into(),
        })?;
        relators.push(w);
    }
    Ok(Presentation { alphabet, relators })
}

/// Comma-separated pieces of `text[from..to]` with their absolute offsets.
/// A blank range has no pieces.
fn segments(text: &str, from: usize, to: usize) -> impl Iterator<Item = (usize, &str)> {
    let body = &text[from..to];
    let blank = body.trim().is_empty();
    let mut offset = from;
    body.split(',').filter(move |_| !blank).map(move |piece| {
        let start = offset;
        offset += piece.len() + 1;
        (start, piece)
    })
}

/// `Z^free_rank × Z_d1 × ... × Z_dk` with `d1 | d2 | ...`, every `di ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub torsion: Vec<i64>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn is_cyclic(&self) -> bool {
        is_cyclic_abelianization(self)
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = vec!["Z".to_string(); self.free_rank];
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

pub fn exponent_matrix(p: &Presentation) -> IntMatrix {
    p.exponent_matrix()
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    p.abelianization()
}

pub fn is_cyclic_abelianization(inv: &AbelianInvariants) -> bool {
    match inv.free_rank {
        0 => inv.torsion.len() <= 1,
        1 => inv.torsion.is_empty(),
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    pub presentation: Presentation,
    pub moves: Vec<NielsenMove>,
    /// Generator with exponent sum 0 in the new relator.
    pub zeroed: usize,
}

/// Rewrites a two-generator one-relator presentation by free-group
/// automorphisms so that one generator has exponent sum zero in the relator.
pub fn zero_exponent_rewrite(p: &Presentation) -> Result<Rewrite, PresentationError> {
    if p.generator_count() != 2 || p.relators.len() != 1 {
        return Err(PresentationError::Arity {
            generators: 2,
            relators: 1,
            found_generators: p.generator_count(),
            found_relators: p.relators.len(),
        });
    }
    let descent = nielsen_zero_exponent(&p.relators[0], &p.alphabet)?;
    Ok(Rewrite {
        presentation: Presentation {
            alphabet: p.alphabet.clone(),
            relators: vec![descent.result],
        },
        moves: descent.moves,
        zeroed: descent.zeroed,
    })
}

/// Every classification except `NotAlmostCyclic` and the one-generator
/// cases is conditional: it says what the group must be *if* it is almost
/// cyclic, and decides nothing otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    NotAlmostCyclic,
    CyclicCertified,
    FiniteCyclicIfAlmostCyclic,
    CyclicIfAlmostCyclic,
    SingleGenerator,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JustificationStep {
    /// The operation whose output this step records.
    pub rule: String,
    pub citation: String,
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OneRelatorVerdict {
    pub classification: Classification,
    pub justification: Vec<JustificationStep>,
    pub transformed: Option<Presentation>,
}

fn step(rule: &str, citation: &str, data: Value) -> JustificationStep {
    JustificationStep {
        rule: rule.to_string(),
        citation: citation.to_string(),
        data,
    }
}

/// Runs the decision ladder on a presentation with at most one relator.
///
/// Rungs, first match wins: at most one generator; no relator; relator a
/// proper power; noncyclic abelianization; zero exponent sum (after
/// rewriting if needed).
pub fn analyze_one_relator(p: &Presentation) -> Result<OneRelatorVerdict, PresentationError> {
    if p.relators.len() > 1 {
        return Err(PresentationError::TooManyRelators(p.relators.len()));
    }
    let alphabet = &p.alphabet;
    let n = alphabet.len();
    let mut steps = Vec::new();
    let done = |classification, justification, transformed| {
        Ok(OneRelatorVerdict {
            classification,
            justification,
            transformed,
        })
    };

    if n <= 1 {
        steps.push(step(
            "generator_count",
            "a group generated by a single element is cyclic",
            json!({ "generators": n }),
        ));
        return done(Classification::SingleGenerator, steps, None);
    }

    let Some(relator) = p.relators.first() else {
        steps.push(step(
            "abelianization",
            "a free group of rank at least two is not almost cyclic: \
             its abelianization is free abelian of rank at least two",
            json!({ "free_rank": n, "torsion": [] }),
        ));
        return done(Classification::NotAlmostCyclic, steps, None);
    };

    // a trivial relator is no relator at all; the abelianization rung decides
    if !relator.is_empty() {
        let (root, m) = relator.proper_power()?;
        steps.push(step(
            "proper_power",
            "if the relator is a proper power, every power of a conjugate \
             generator has finite order, so the group is periodic; one-relator \
             groups are virtually torsion-free, so it is finite, hence cyclic",
            json!({ "root": root.to_text(alphabet), "multiplicity": m }),
        ));
        if m > 1 {
            return done(Classification::FiniteCyclicIfAlmostCyclic, steps, None);
        }
    }

    let ab = p.abelianization();
    let cyclic = ab.is_cyclic();
    steps.push(step(
        "abelianization",
        "quotients of almost cyclic groups are almost cyclic, and an abelian \
         almost cyclic group is cyclic; so the abelianization must be cyclic",
        json!({
            "free_rank": ab.free_rank,
            "torsion": ab.torsion,
            "cyclic": cyclic,
            "group": ab.to_string(),
        }),
    ));
    if !cyclic {
        return done(Classification::NotAlmostCyclic, steps, None);
    }

    // A cyclic abelianization forces n - rank ≤ 1, so n = 2 here.
    debug_assert_eq!(n, 2);
    let sums: Vec<i64> = (0..n).map(|g| relator.exponent_sum(g)).collect();
    let sigma: serde_json::Map<String, Value> = alphabet
        .names()
        .iter()
        .zip(&sums)
        .map(|(name, s)| (name.clone(), json!(s)))
        .collect();
    steps.push(step(
        "exponent_sum",
        "an almost cyclic two-generator one-relator group in which some \
         generator has exponent sum zero in the relator is cyclic",
        Value::Object(sigma),
    ));
    let rewrite = zero_exponent_rewrite(p)?;
    if sums.iter().all(|&s| s != 0) {
        steps.push(step(
            "zero_exponent_rewrite",
            "Nielsen automorphisms of the free group give an isomorphic \
             one-relator presentation with a zero exponent sum",
            json!({
                "moves": rewrite.moves.iter().map(|mv| mv.describe(alphabet)).collect::<Vec<_>>(),
                "relator": rewrite.presentation.relators[0].to_text(alphabet),
                "zeroed": alphabet.name(rewrite.zeroed),
            }),
        ));
    }
    done(
        Classification::CyclicIfAlmostCyclic,
        steps,
        Some(rewrite.presentation),
    )
}
