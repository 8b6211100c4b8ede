//! Integer matrices and Smith normal form.

use std::fmt;

use serde::Serialize;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// All rows must have `cols` entries.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    /// Product, accumulated in `i128`; panics if an entry of the result does
    /// not fit in `i64`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        self.checked_mul(other)
            .expect("matrix product overflows i64")
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let v: i128 = (0..self.cols)
                    .map(|k| self.get(i, k) as i128 * other.get(k, j) as i128)
                    .sum();
                out.data[i * other.cols + j] = i64::try_from(v).ok()?;
            }
        }
        Some(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) {
        for j in 0..self.cols {
            let v = self.get(src, j);
            self.data[dst * self.cols + j] = checked_axpy(self.data[dst * self.cols + j], k, v);
        }
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) {
        for i in 0..self.rows {
            let v = self.get(i, src);
            self.data[i * self.cols + dst] = checked_axpy(self.data[i * self.cols + dst], k, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self.data[i * self.cols + j] *= -1;
        }
    }
}

/// `a + k·v`. Transform entries can grow far beyond the input entries, so
/// overflow is checked in release builds too.
fn checked_axpy(a: i64, k: i64, v: i64) -> i64 {
    k.checked_mul(v)
        .and_then(|kv| a.checked_add(kv))
        .expect("Smith normal form entry overflows i64")
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

/// `left · M · right = diagonal`, with `left` and `right` unimodular and the
/// nonzero diagonal entries `d1 | d2 | ...` positive.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// Nonzero diagonal entries in order, units included.
    pub invariants: Vec<i64>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

/// Elimination with the smallest nonzero entry (by absolute value) of the
/// remaining block as pivot.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let mut left = IntMatrix::identity(m.rows);
    let mut right = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    let mut invariants = Vec::new();
    for t in 0..n {
        let mut settled = false;
        while !settled {
            let pivot = (t..a.rows)
                .flat_map(|i| (t..a.cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a.get(i, j) != 0)
                .min_by_key(|&(i, j)| a.get(i, j).abs());
            let Some((pi, pj)) = pivot else {
                break;
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);
            let p = a.get(t, t);

            let mut clean = true;
            for i in t + 1..a.rows {
                let q = a.get(i, t) / p;
                if q != 0 {
                    a.add_row(i, t, -q);
                    left.add_row(i, t, -q);
                }
                clean &= a.get(i, t) == 0;
            }
            for j in t + 1..a.cols {
                let q = a.get(t, j) / p;
                if q != 0 {
                    a.add_col(j, t, -q);
                    right.add_col(j, t, -q);
                }
                clean &= a.get(t, j) == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let offender = (t + 1..a.rows).find(|&i| (t + 1..a.cols).any(|j| a.get(i, j) % p != 0));
            match offender {
                Some(i) => {
                    a.add_row(t, i, 1);
                    left.add_row(t, i, 1);
                }
                None => settled = true,
            }
        }
        if !settled {
            break;
        }
        if a.get(t, t) < 0 {
            a.negate_row(t);
            left.negate_row(t);
        }
        invariants.push(a.get(t, t));
    }
    SmithForm {
        diagonal: a,
        left,
        right,
        invariants,
    }
}
