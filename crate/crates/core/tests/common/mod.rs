//! Brute-force oracles. They work on raw Cayley tables, letter vectors and
//! nested `Vec` matrices and share no code with the library algorithms.
#![allow(dead_code)]

use conjgen_core::words::Word;
use conjgen_core::FiniteGroup;

/// A Cayley table with its identity and inverses found by search.
pub struct Table {
    pub t: Vec<Vec<usize>>,
    pub e: usize,
    pub inv: Vec<usize>,
}

impl Table {
    pub fn of(g: &FiniteGroup) -> Self {
        Table::new(g.table_rows())
    }

    pub fn new(t: Vec<Vec<usize>>) -> Self {
        let n = t.len();
        let e = (0..n)
            .find(|&e| (0..n).all(|x| t[e][x] == x && t[x][e] == x))
            .expect("identity");
        let inv = (0..n)
            .map(|x| (0..n).find(|&y| t[x][y] == e).expect("inverse"))
            .collect();
        Table { t, e, inv }
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.t[a][b]
    }

    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv[g])
    }

    /// `[e, a, a², ...]` up to the first repeat.
    pub fn powers(&self, a: usize) -> Vec<usize> {
        let mut out = vec![self.e];
        let mut x = a;
        while x != self.e {
            out.push(x);
            x = self.mul(x, a);
        }
        out
    }

    pub fn order_of(&self, a: usize) -> usize {
        self.powers(a).len()
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.n()).any(|a| self.order_of(a) == self.n())
    }

    /// Every `x` whose powers meet every conjugacy class.
    pub fn conjugate_generators(&self) -> Vec<usize> {
        let n = self.n();
        (0..n)
            .filter(|&x| {
                let mut hit = vec![false; n];
                for p in self.powers(x) {
                    for g in 0..n {
                        hit[self.conj(g, p)] = true;
                    }
                }
                hit.iter().all(|&h| h)
            })
            .collect()
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&z| (0..self.n()).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        (0..self.n()).all(|g| h.iter().all(|&x| h.contains(&self.conj(g, x))))
    }

    /// Smallest member of the coset `a·H`.
    pub fn coset_id(&self, a: usize, h: &[usize]) -> usize {
        h.iter().map(|&x| self.mul(a, x)).min().unwrap()
    }

    pub fn quotient_is_cyclic(&self, h: &[usize]) -> bool {
        let index = self.n() / h.len();
        (0..self.n()).any(|g| {
            let mut ids: Vec<usize> = self
                .powers(g)
                .iter()
                .map(|&p| self.coset_id(p, h))
                .collect();
            ids.sort_unstable();
            ids.dedup();
            ids.len() == index
        })
    }

    pub fn has_nontrivial_proper_normal(&self, subgroups: &[Vec<usize>]) -> bool {
        subgroups
            .iter()
            .any(|h| h.len() > 1 && h.len() < self.n() && self.is_normal(h))
    }
}

// ---- integer matrices ----

pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    // Laplace expansion along the first row
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Determinantal divisors `d_k = gcd of all k×k minors`, `k = 1..`, stopping
/// at the first zero.
pub fn determinantal_divisors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut d = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect())
                    .collect();
                d = gcd(d, det(&minor));
            }
        }
        if d == 0 {
            break;
        }
        out.push(d);
    }
    out
}

/// Invariant factors `d_k / d_{k-1}`.
pub fn invariant_factors(m: &[Vec<i64>]) -> Vec<i64> {
    let d = determinantal_divisors(m);
    (0..d.len())
        .map(|k| (if k == 0 { d[0] } else { d[k] / d[k - 1] }) as i64)
        .collect()
}

// ---- words as letter lists: +(g+1) for a generator, -(g+1) for its inverse ----

pub fn reduce(letters: &[i8]) -> Vec<i8> {
    let mut out: Vec<i8> = Vec::new();
    for &l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn cyclic_core(letters: &[i8]) -> Vec<i8> {
    let mut w = reduce(letters);
    while w.len() > 1 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

/// Largest `m` such that the cyclic core is a block repeated `m` times.
pub fn power_multiplicity(letters: &[i8]) -> usize {
    let core = cyclic_core(letters);
    let len = core.len();
    (1..=len)
        .rev()
        .find(|&m| {
            len.is_multiple_of(m)
                && core
                    .iter()
                    .enumerate()
                    .all(|(i, &l)| l == core[i % (len / m)])
        })
        .unwrap_or(0)
}

pub fn exponent_sum(letters: &[i8], g: usize) -> i64 {
    letters
        .iter()
        .map(|&l| {
            if l.unsigned_abs() as usize == g + 1 {
                l.signum() as i64
            } else {
                0
            }
        })
        .sum()
}

pub fn to_word(letters: &[i8]) -> Word {
    Word::from_syllables(
        letters
            .iter()
            .map(|&l| (l.unsigned_abs() as usize - 1, l.signum() as i64)),
    )
}

pub fn from_word(w: &Word) -> Vec<i8> {
    w.letters()
        .iter()
        .map(|s| (s.generator as i8 + 1) * s.exponent.signum() as i8)
        .collect()
}

/// All freely reduced words of exactly `len` letters over `k` generators.
pub fn reduced_words(k: usize, len: usize) -> Vec<Vec<i8>> {
    let alphabet: Vec<i8> = (1..=k as i8).flat_map(|g| [g, -g]).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * 3);
        for w in &out {
            for &l in &alphabet {
                if w.last() != Some(&-l) {
                    let mut v: Vec<i8> = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out
}
