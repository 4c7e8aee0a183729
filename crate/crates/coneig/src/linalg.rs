//! Dense interval matrices and vectors: arithmetic, the row-sum sup norm,
//! submatrix extraction, and rigorous interval Gauss–Jordan inversion.
//!
//! The inversion contract is inherited enclosure: for every point matrix `Q`
//! inside the interval input, `Q^{-1}` lies entrywise inside the result.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::complex::CInterval;
use crate::interval::Interval;
use crate::round;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range for dimension {bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    /// Every remaining pivot candidate interval contains zero: the interval
    /// matrix may contain a singular point matrix (or elimination widened too
    /// far). Callers must treat this as verification failure, never a crash.
    #[error("interval elimination found no pivot excluding zero")]
    SingularPivot,
}

/// Dense point matrix of complex floating-point numbers, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        CMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn mat_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self[(i, j)] * v[j])
                    .sum::<Complex64>()
            })
            .collect()
    }

    /// Maximum row sum of entry moduli (point arithmetic, not rigorous).
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense interval matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct IMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CInterval>,
}

impl IMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMatrix {
            rows,
            cols,
            data: vec![CInterval::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = CInterval::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CInterval) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IMatrix { rows, cols, data }
    }

    /// Entrywise point hull of a complex floating-point matrix.
    pub fn hull_of(m: &CMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| CInterval::point(m[(i, j)]))
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        Self::hull_of(&CMatrix::from_real_rows(rows))
    }

    /// Entrywise hull of decimal strings, parsed exactly.
    pub fn from_decimal_rows(rows: &[Vec<&str>]) -> Result<Self, crate::interval::IntervalError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for s in row {
                data.push(CInterval::new(
                    Interval::from_decimal_str(s)?,
                    Interval::ZERO,
                ));
            }
        }
        Ok(IMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn midpoint(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].midpoint();
            }
        }
        m
    }

    pub fn contains_point(&self, m: &CMatrix) -> bool {
        self.rows == m.rows()
            && self.cols == m.cols()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self[(i, j)].contains(m[(i, j)])))
    }

    pub fn contains_matrix(&self, m: &IMatrix) -> bool {
        self.rows == m.rows()
            && self.cols == m.cols()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self[(i, j)].contains_rect(&m[(i, j)])))
    }

    fn check_same_shape(&self, rhs: &IMatrix) -> Result<(), LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &IMatrix) -> Result<IMatrix, LinalgError> {
        self.check_same_shape(rhs)?;
        Ok(IMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| *a + *b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &IMatrix) -> Result<IMatrix, LinalgError> {
        self.check_same_shape(rhs)?;
        Ok(IMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| *a - *b)
                .collect(),
        })
    }

    pub fn scalar_mul(&self, s: CInterval) -> IMatrix {
        IMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| *a * s).collect(),
        }
    }

    /// Entrywise enclosure of the matrix product, computed by interval dot
    /// products in index order (deterministic, no reassociation).
    pub fn mul(&self, rhs: &IMatrix) -> Result<IMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(IMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = CInterval::ZERO;
            for k in 0..self.cols {
                acc = acc + self[(i, k)] * rhs[(k, j)];
            }
            acc
        }))
    }

    pub fn mat_vec(&self, v: &IVector) -> Result<IVector, LinalgError> {
        if self.cols != v.dim() {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times vector of dim {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        Ok(IVector::from_fn(self.rows, |i| {
            let mut acc = CInterval::ZERO;
            for k in 0..self.cols {
                acc = acc + self[(i, k)] * v[k];
            }
            acc
        }))
    }

    /// Rigorous upper bound on the maximum row sum of entry moduli.
    pub fn sup_norm(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.rows {
            let mut sum = 0.0f64;
            for j in 0..self.cols {
                sum = round::add_up(sum, self[(i, j)].mag());
            }
            best = best.max(sum);
        }
        best
    }

    /// Rows `k` and columns `j` in the order given.
    pub fn submatrix(&self, row_set: &[usize], col_set: &[usize]) -> Result<IMatrix, LinalgError> {
        for &i in row_set {
            if i >= self.rows {
                return Err(LinalgError::IndexOutOfRange {
                    index: i,
                    bound: self.rows,
                });
            }
        }
        for &j in col_set {
            if j >= self.cols {
                return Err(LinalgError::IndexOutOfRange {
                    index: j,
                    bound: self.cols,
                });
            }
        }
        Ok(IMatrix::from_fn(row_set.len(), col_set.len(), |i, j| {
            self[(row_set[i], col_set[j])]
        }))
    }

    pub fn column(&self, j: usize) -> IVector {
        IVector::from_fn(self.rows, |i| self[(i, j)])
    }

    /// Interval Gauss–Jordan elimination on `[self | I]`.
    ///
    /// Column partial pivoting chooses the candidate of maximal mignitude
    /// (distance of the interval from zero), because pivot quality for
    /// interval elimination is governed by origin exclusion, not magnitude.
    /// On success every point inverse `Q^{-1}`, `Q` in `self`, lies entrywise
    /// in the result.
    ///
    /// Plain elimination, no midpoint-inverse preconditioning: the inputs
    /// this crate inverts are numerically computed bases with thin entries.
    /// Callers with wide inputs can precondition before inverting.
    pub fn gj_inverse(&self) -> Result<IMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::DimensionMismatch(format!(
                "gj_inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        // Augmented working matrix [A | I].
        let mut w = IMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)]
            } else if j - n == i {
                CInterval::ONE
            } else {
                CInterval::ZERO
            }
        });
        let mut row_of = (0..n).collect::<Vec<_>>(); // row_of[c] = physical row holding pivot c

        for c in 0..n {
            // Pick the remaining row whose column-c entry is farthest from 0.
            let mut best: Option<(usize, f64)> = None;
            for (slot, &r) in row_of.iter().enumerate().skip(c) {
                let q = w[(r, c)].mig_sq();
                if q > 0.0 && best.is_none_or(|(_, bq)| q > bq) {
                    best = Some((slot, q));
                }
            }
            let Some((slot, _)) = best else {
                return Err(LinalgError::SingularPivot);
            };
            row_of.swap(c, slot);
            let pr = row_of[c];

            // Scale the pivot row; the pivot itself becomes exactly one
            // (every exact-arithmetic path yields exactly 1 there).
            let pivot = w[(pr, c)];
            for j in (c + 1)..(2 * n) {
                let v = w[(pr, j)];
                w[(pr, j)] = v.div(pivot).map_err(|_| LinalgError::SingularPivot)?;
            }
            w[(pr, c)] = CInterval::ONE;

            // Eliminate column c from every other row. The eliminated entry is
            // exactly zero on every exact-arithmetic path, so it is hard-set.
            for &r in &row_of {
                if r == pr {
                    continue;
                }
                let factor = w[(r, c)];
                if factor == CInterval::ZERO {
                    continue;
                }
                for j in (c + 1)..(2 * n) {
                    let v = w[(r, j)];
                    w[(r, j)] = v - factor * w[(pr, j)];
                }
                w[(r, c)] = CInterval::ZERO;
            }
        }

        // Undo the row permutation: logical row c of the reduced system is
        // physical row row_of[c], and holds row c of the inverse.
        Ok(IMatrix::from_fn(n, n, |i, j| w[(row_of[i], n + j)]))
    }
}

impl std::ops::Index<(usize, usize)> for IMatrix {
    type Output = CInterval;
    fn index(&self, (i, j): (usize, usize)) -> &CInterval {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CInterval {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Dense interval vector.
#[derive(Debug, Clone, PartialEq)]
pub struct IVector {
    data: Vec<CInterval>,
}

impl IVector {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize) -> CInterval) -> Self {
        IVector {
            data: (0..dim).map(&mut f).collect(),
        }
    }

    pub fn from_entries(data: Vec<CInterval>) -> Self {
        IVector { data }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn entries(&self) -> &[CInterval] {
        &self.data
    }

    pub fn sub(&self, rhs: &IVector) -> Result<IVector, LinalgError> {
        if self.dim() != rhs.dim() {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector dims {} vs {}",
                self.dim(),
                rhs.dim()
            )));
        }
        Ok(IVector {
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| *a - *b)
                .collect(),
        })
    }

    pub fn scalar_mul(&self, s: CInterval) -> IVector {
        IVector {
            data: self.data.iter().map(|a| *a * s).collect(),
        }
    }

    /// `sum_i self_i * conj(rhs_i)` with conjugation in the second slot.
    pub fn dot_conj(&self, rhs: &IVector) -> Result<CInterval, LinalgError> {
        if self.dim() != rhs.dim() {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector dims {} vs {}",
                self.dim(),
                rhs.dim()
            )));
        }
        let mut acc = CInterval::ZERO;
        for (a, b) in self.data.iter().zip(&rhs.data) {
            acc = acc + *a * b.conj();
        }
        Ok(acc)
    }

    pub fn contains_point(&self, v: &[Complex64]) -> bool {
        self.dim() == v.len() && self.data.iter().zip(v).all(|(a, z)| a.contains(*z))
    }

    pub fn contains_zero(&self) -> bool {
        self.data.iter().all(CInterval::contains_zero)
    }
}

impl std::ops::Index<usize> for IVector {
    type Output = CInterval;
    fn index(&self, i: usize) -> &CInterval {
        &self.data[i]
    }
}

/// The index set `{0, .., n-1} \ {k}` in increasing order.
pub fn indices_excluding(n: usize, k: usize) -> Vec<usize> {
    (0..n).filter(|&i| i != k).collect()
}
