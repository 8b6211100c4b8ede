//! Permutations on `{0, ..., n-1}` and the cycle-notation input format.
//!
//! Cycle notation is 0-based with whitespace-separated points, e.g.
//! `"(0 1 2)(3 4)"`. The identity is written `"()"`.

use std::fmt;

use crate::error::PermutationError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image list; `images[i]` is the image of `i`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermutationError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (point, &image) in images.iter().enumerate() {
            if image >= n {
                return Err(PermutationError::PointOutOfRange {
                    point: image,
                    degree: n,
                });
            }
            if seen[image] {
                return Err(PermutationError::NotBijective { point, image });
            }
            seen[image] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation. Without an explicit degree the degree is one more
    /// than the largest point mentioned.
    pub fn parse_cycles(text: &str, degree: Option<usize>) -> Result<Self, PermutationError> {
        let cycles = parse_cycle_list(text)?;
        let largest = cycles.iter().flatten().copied().max();
        let degree = match (degree, largest) {
            (Some(d), Some(p)) if p >= d => {
                return Err(PermutationError::PointOutOfRange {
                    point: p,
                    degree: d,
                })
            }
            (Some(d), _) => d,
            (None, Some(p)) => p + 1,
            (None, None) => 0,
        };
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in &cycles {
            for &p in cycle {
                if used[p] {
                    return Err(PermutationError::RepeatedPoint(p));
                }
                used[p] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Order as a group element: lcm of the cycle lengths.
    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len()))
    }

    /// Nontrivial cycles, each starting at its smallest point, in order of that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>, PermutationError> {
    let bytes = text.as_bytes();
    let mut cycles = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == bytes.len() {
        return Err(PermutationError::Syntax {
            position: i,
            message: "empty permutation; write \"()\" for the identity".into(),
        });
    }
    while i < bytes.len() {
        if bytes[i] != b'(' {
            return Err(PermutationError::Syntax {
                position: i,
                message: "expected '('".into(),
            });
        }
        i += 1;
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut i);
            match bytes.get(i) {
                Some(b')') => {
                    i += 1;
                    break;
                }
                Some(c) if c.is_ascii_digit() => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let point = text[start..i]
                        .parse()
                        .map_err(|_| PermutationError::Syntax {
                            position: start,
                            message: "point out of range".into(),
                        })?;
                    cycle.push(point);
                }
                Some(_) => {
                    return Err(PermutationError::Syntax {
                        position: i,
                        message: "expected a point or ')'".into(),
                    })
                }
                None => {
                    return Err(PermutationError::Syntax {
                        position: i,
                        message: "unterminated cycle".into(),
                    })
                }
            }
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        skip_ws(&mut i);
    }
    Ok(cycles)
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
