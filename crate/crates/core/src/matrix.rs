//! Dense exact matrices: rank, right kernel, affine solve.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{common_denominator, Field};

/// Row-major dense matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
    ctx: F::Ctx,
}

/// Full solution set of `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolution<F: Field> {
    NoSolution,
    Solutions {
        particular: Vec<F>,
        kernel: Vec<Vec<F>>,
    },
}

impl<F: Field> AffineSolution<F> {
    pub fn particular(&self) -> Option<&[F]> {
        match self {
            AffineSolution::NoSolution => None,
            AffineSolution::Solutions { particular, .. } => Some(particular),
        }
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over {}",
            self.rows,
            self.cols,
            F::tag(&self.ctx)
        )?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(ctx: F::Ctx, rows: usize, cols: usize, entries: Vec<F>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.ctx() != ctx) {
            return Err(Error::InvalidInput(
                "matrix entries from different fields".into(),
            ));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
            ctx,
        })
    }

    pub fn zeros(ctx: F::Ctx, rows: usize, cols: usize) -> Self {
        let entries = vec![F::zero_in(&ctx); rows * cols];
        Matrix {
            rows,
            cols,
            entries,
            ctx,
        }
    }

    pub fn identity(ctx: F::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx.clone(), n, n);
        for i in 0..n {
            m.set(i, i, F::one_in(&ctx));
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(ctx: F::Ctx, cols: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::InvalidInput(format!(
                    "ragged matrix row: expected {cols} entries, got {}",
                    r.len()
                )));
            }
            entries.extend(r);
        }
        Self::new(ctx, n, cols, entries)
    }

    pub fn from_i64_rows(ctx: F::Ctx, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| F::from_i64_in(&ctx, v)).collect())
            .collect();
        Self::from_rows(ctx, cols, data).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ctx.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(F::zero_in(&self.ctx), |acc, (a, b)| {
                        acc + a.clone() * b.clone()
                    })
            })
            .collect()
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        F::matrix_rank(self)
    }

    /// Rank by plain Gaussian elimination over the field.
    pub fn rank_by_elimination(&self) -> usize {
        let mut work = self.clone();
        work.reduce_in_place(self.cols).len()
    }

    /// Basis of `{ v : A v = 0 }`, one vector per free column of the reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let mut work = self.clone();
        let pivots = work.reduce_in_place(self.cols);
        work.kernel_from_rref(&pivots, self.cols)
    }

    /// Solves `A x = rhs`, returning a particular solution and the kernel, or `NoSolution`.
    pub fn solve_affine(&self, rhs: &[F]) -> Result<AffineSolution<F>> {
        if rhs.len() != self.rows {
            return Err(Error::InvalidInput(format!(
                "right-hand side has length {}, matrix has {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let n = self.cols;
        let mut aug = Self::zeros(self.ctx.clone(), self.rows, n + 1);
        for r in 0..self.rows {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n, rhs[r].clone());
        }
        let pivots = aug.reduce_in_place(n);
        // inconsistent iff some zero row of A has nonzero rhs
        for r in pivots.len()..self.rows {
            if !aug.get(r, n).is_zero() {
                return Ok(AffineSolution::NoSolution);
            }
        }
        let mut particular = vec![F::zero_in(&self.ctx); n];
        for (r, &c) in pivots.iter().enumerate() {
            particular[c] = aug.get(r, n).clone();
        }
        let kernel = aug.kernel_from_rref(&pivots, n);
        Ok(AffineSolution::Solutions { particular, kernel })
    }

    /// Gauss-Jordan on the first `ncols` columns; returns pivot columns.
    /// Pivot choice: first nonzero entry, scanning rows top-down.
    fn reduce_in_place(&mut self, ncols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..ncols {
            if prow == self.rows {
                break;
            }
            let Some(r) = (prow..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, prow);
            let inv = self.get(prow, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(prow, j).clone() * inv.clone();
                self.set(prow, j, v);
            }
            for i in 0..self.rows {
                if i == prow || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j).clone() - factor.clone() * self.get(prow, j).clone();
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    fn kernel_from_rref(&self, pivots: &[usize], ncols: usize) -> Vec<Vec<F>> {
        let mut is_pivot = vec![false; ncols];
        for &c in pivots {
            is_pivot[c] = true;
        }
        (0..ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero_in(&self.ctx); ncols];
                v[free] = F::one_in(&self.ctx);
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -self.get(r, free).clone();
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Applies `f` to every entry, producing a matrix over another field.
    pub fn try_map<G: Field>(
        &self,
        ctx: G::Ctx,
        mut f: impl FnMut(&F) -> Option<G>,
    ) -> Option<Matrix<G>> {
        let entries = self
            .entries
            .iter()
            .map(&mut f)
            .collect::<Option<Vec<_>>>()?;
        Matrix::new(ctx, self.rows, self.cols, entries).ok()
    }
}

/// Rank over `Q` by fraction-free (Bareiss) elimination on an integer copy.
///
/// Each row is first scaled by the lcm of its denominators, which leaves the
/// rank unchanged. Pivot choice is the first nonzero entry in the column.
pub(crate) fn bareiss_rank(m: &crate::matrix::Matrix<BigRational>) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| {
            let row = m.row(r);
            let den = common_denominator(row);
            row.iter().map(|q| q.numer() * (&den / q.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let num = &pivot * &row[j] - &lead * &pivot_row[j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}
