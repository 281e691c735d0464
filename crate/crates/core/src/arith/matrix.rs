use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{primitive_rational, Rational};
use crate::error::{Error, Result};

/// Number of deterministic parameters `t = 1..=WITNESS_SCAN_LIMIT` tried by
/// [`RatMatrix::all_nonzero_kernel_vector`] before switching to random ones.
pub const WITNESS_SCAN_LIMIT: u64 = 64;

const ESCALATION_SEED: u64 = 0x5eed_4ada_3a4d;

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Reduced row echelon form: only the nonzero rows are kept, and row `k`
/// has its leading one in column `pivots[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub reduced: RatMatrix,
    pub pivots: Vec<usize>,
}

/// Result of the all-nonzero kernel search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonzeroKernelVector {
    /// Primitive integer vector (first entry positive) in the kernel, with
    /// no zero coordinate.
    pub vector: Vec<Rational>,
    /// The parameter `t` of the combination `sum_i t^i * basis_i` that
    /// produced the vector.
    pub parameter: Rational,
    /// True when the deterministic scan was exhausted and a random
    /// parameter was used.
    pub escalated: bool,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows of length `cols`. Taking `cols` explicitly
    /// lets an empty row list still describe a shape.
    pub fn from_rows<R, I>(cols: usize, rows: I) -> Result<Self>
    where
        R: AsRef<[Rational]>,
        I: IntoIterator<Item = R>,
    {
        let mut entries = Vec::new();
        let mut count = 0;
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
            count += 1;
        }
        Ok(Self {
            rows: count,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        self.row_iter().map(|row| super::dot(row, v)).collect()
    }

    pub fn annihilates(&self, v: &[Rational]) -> bool {
        self.mul_vec(v).iter().all(Zero::is_zero)
    }

    /// Gauss-Jordan elimination. The pivot in each column is the first
    /// nonzero entry at or below the current pivot row, so the result is
    /// fully deterministic.
    pub fn rref(&self) -> Echelon {
        let mut rows: Vec<Vec<Rational>> = self.row_iter().map(<[_]>::to_vec).collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(next, found);
            let inv = rows[next][col].recip();
            for x in rows[next].iter_mut().skip(col) {
                *x *= &inv;
            }
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == next || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &factor * p;
                }
            }
            pivots.push(col);
            next += 1;
        }
        rows.truncate(next);
        let reduced = Self::from_rows(self.cols, rows).expect("row lengths preserved");
        Echelon { reduced, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : Mx = 0}`, one vector per free column in ascending
    /// order. Each vector has a one in its free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let Echelon { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(k, f).clone();
                }
                v
            })
            .collect()
    }

    /// One exact solution of `Mx = b` (free variables set to zero), or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length must equal row count");
        let augmented = Self::from_rows(
            self.cols + 1,
            self.row_iter().zip(b).map(|(row, bi)| {
                let mut r = row.to_vec();
                r.push(bi.clone());
                r
            }),
        )
        .expect("augmented rows have cols + 1 entries");
        let Echelon { reduced, pivots } = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(k, self.cols).clone();
        }
        Some(x)
    }

    /// Determinant via elimination; `None` for non-square matrices.
    pub fn determinant(&self) -> Option<Rational> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = self.row_iter().map(<[_]>::to_vec).collect();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Some(Rational::zero());
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            det *= &a[col][col];
            let pivot_row = a[col].clone();
            for row in a.iter_mut().skip(col + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let factor = &row[col] / &pivot_row[col];
                for (x, q) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &factor * q;
                }
            }
        }
        Some(det)
    }

    /// A kernel vector with every coordinate nonzero, if one exists.
    ///
    /// Such a vector exists iff no coordinate vanishes on the whole kernel:
    /// a vector space over an infinite field is never a finite union of
    /// proper subspaces. The witness is found by walking the moment curve
    /// `v(t) = sum_i t^i b_i` over the kernel basis; each coordinate of
    /// `v(t)` is a nonzero polynomial in `t`, so only finitely many `t` fail.
    pub fn all_nonzero_kernel_vector(&self) -> Option<NonzeroKernelVector> {
        let basis = self.kernel_basis();
        if basis.is_empty() {
            return None;
        }
        if (0..self.cols).any(|j| basis.iter().all(|b| b[j].is_zero())) {
            return None;
        }
        let try_param = |t: &Rational| -> Option<Vec<Rational>> {
            let mut v = vec![Rational::zero(); self.cols];
            let mut power = Rational::one();
            for b in &basis {
                for (x, bj) in v.iter_mut().zip(b) {
                    *x += &power * bj;
                }
                power *= t;
            }
            v.iter().all(|x| !x.is_zero()).then_some(v)
        };
        for t in 1..=WITNESS_SCAN_LIMIT {
            let t = Rational::from_integer(t.into());
            if let Some(v) = try_param(&t) {
                return Some(NonzeroKernelVector {
                    vector: primitive_rational(&v),
                    parameter: t,
                    escalated: false,
                });
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(ESCALATION_SEED);
        loop {
            let num: i64 = rng.gen_range(1..=i64::from(u32::MAX));
            let den: i64 = rng.gen_range(1..=i64::from(u32::MAX));
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let t = super::ratio(sign * num, den);
            if let Some(v) = try_param(&t) {
                return Some(NonzeroKernelVector {
                    vector: primitive_rational(&v),
                    parameter: t,
                    escalated: true,
                });
            }
        }
    }
}
