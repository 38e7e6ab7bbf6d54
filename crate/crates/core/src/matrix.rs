//! Exact matrices over Q or F_p.
//!
//! Storage is a sparse triplet map above `DENSE_LIMIT` entries and a dense
//! row-major vector below it; structure-constant tensors are sparse while the
//! small blocks produced by resolutions are dense. Row reduction always works
//! on a dense copy. All values are immutable after construction.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{CoreError, Result};
use crate::scalar::{ExactScalar, FieldMode};

const DENSE_LIMIT: usize = 64 * 64;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Storage {
    Dense(Vec<ExactScalar>),
    Sparse(BTreeMap<(usize, usize), ExactScalar>),
}

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    mode: FieldMode,
    data: Storage,
    zero: ExactScalar,
}

impl ExactMatrix {
    pub fn zeros(mode: FieldMode, rows: usize, cols: usize) -> Self {
        let data = if rows * cols > DENSE_LIMIT {
            Storage::Sparse(BTreeMap::new())
        } else {
            Storage::Dense(vec![ExactScalar::zero(mode); rows * cols])
        };
        ExactMatrix { rows, cols, mode, data, zero: ExactScalar::zero(mode) }
    }

    pub fn identity(mode: FieldMode, n: usize) -> Self {
        let mut m = Self::zeros(mode, n, n);
        for i in 0..n {
            m.set(i, i, ExactScalar::one(mode));
        }
        m
    }

    pub fn from_rows(mode: FieldMode, rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(mode, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(CoreError::ShapeMismatch("ragged rows".into()));
            }
            for (j, v) in row.into_iter().enumerate() {
                if v.mode() != mode {
                    return Err(CoreError::MixedFieldModes);
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn from_triplets(
        mode: FieldMode,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, ExactScalar)>,
    ) -> Result<Self> {
        let mut m = Self::zeros(mode, rows, cols);
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(CoreError::ShapeMismatch(format!("triplet ({i},{j}) out of bounds")));
            }
            if v.mode() != mode {
                return Err(CoreError::MixedFieldModes);
            }
            let cur = m.get(i, j).add(&v);
            m.set(i, j, cur);
        }
        Ok(m)
    }

    pub fn row_vector(mode: FieldMode, v: Vec<ExactScalar>) -> Self {
        let n = v.len();
        Self::from_rows(mode, vec![v]).unwrap_or_else(|_| Self::zeros(mode, 1, n))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        debug_assert!(i < self.rows && j < self.cols);
        match &self.data {
            Storage::Dense(d) => &d[i * self.cols + j],
            Storage::Sparse(map) => map.get(&(i, j)).unwrap_or(&self.zero),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactScalar) {
        debug_assert!(i < self.rows && j < self.cols);
        debug_assert!(v.mode() == self.mode);
        match &mut self.data {
            Storage::Dense(d) => d[i * self.cols + j] = v,
            Storage::Sparse(map) => {
                if v.is_zero() {
                    map.remove(&(i, j));
                } else {
                    map.insert((i, j), v);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Storage::Dense(d) => d.iter().all(|v| v.is_zero()),
            Storage::Sparse(map) => map.values().all(|v| v.is_zero()),
        }
    }

    pub fn row(&self, i: usize) -> Vec<ExactScalar> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    /// Iterates the nonzero entries as (row, col, value).
    pub fn nonzero(&self) -> Vec<(usize, usize, &ExactScalar)> {
        match &self.data {
            Storage::Dense(d) => d
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (k / self.cols, k % self.cols, v))
                .collect(),
            Storage::Sparse(map) => {
                map.iter().filter(|(_, v)| !v.is_zero()).map(|(&(i, j), v)| (i, j, v)).collect()
            }
        }
    }

    fn check_mode(&self, other: &Self) -> Result<()> {
        if self.mode != other.mode {
            return Err(CoreError::MixedFieldModes);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CoreError::ShapeMismatch("add: dimension mismatch".into()));
        }
        let mut out = Self::zeros(self.mode, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).add(other.get(i, j)));
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CoreError::ShapeMismatch("sub: dimension mismatch".into()));
        }
        let mut out = Self::zeros(self.mode, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).sub(other.get(i, j)));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zeros(self.mode, self.rows, self.cols);
        for (i, j, v) in self.nonzero() {
            out.set(i, j, v.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        if self.cols != other.rows {
            return Err(CoreError::ShapeMismatch(format!(
                "mul: {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // index other's nonzeros by row, then walk self's nonzeros once
        let mut by_row: Vec<Vec<(usize, &ExactScalar)>> = vec![Vec::new(); other.rows];
        for (k, j, w) in other.nonzero() {
            by_row[k].push((j, w));
        }
        let mut out = Self::zeros(self.mode, self.rows, other.cols);
        for (i, k, v) in self.nonzero() {
            for &(j, w) in &by_row[k] {
                let cur = out.get(i, j).add(&v.mul(w));
                out.set(i, j, cur);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.mode, self.cols, self.rows);
        for (i, j, v) in self.nonzero() {
            out.set(j, i, v.clone());
        }
        out
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        if self.cols != other.cols && self.rows != 0 && other.rows != 0 {
            return Err(CoreError::ShapeMismatch("vstack: column mismatch".into()));
        }
        let cols = if self.rows == 0 { other.cols } else { self.cols };
        let mut out = Self::zeros(self.mode, self.rows + other.rows, cols);
        for (i, j, v) in self.nonzero() {
            out.set(i, j, v.clone());
        }
        for (i, j, v) in other.nonzero() {
            out.set(self.rows + i, j, v.clone());
        }
        Ok(out)
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        if self.rows != other.rows {
            return Err(CoreError::ShapeMismatch("hstack: row mismatch".into()));
        }
        let mut out = Self::zeros(self.mode, self.rows, self.cols + other.cols);
        for (i, j, v) in self.nonzero() {
            out.set(i, j, v.clone());
        }
        for (i, j, v) in other.nonzero() {
            out.set(i, self.cols + j, v.clone());
        }
        Ok(out)
    }

    pub fn submatrix_rows(&self, rows: &[usize]) -> Self {
        let mut out = Self::zeros(self.mode, rows.len(), self.cols);
        for (ri, &r) in rows.iter().enumerate() {
            for j in 0..self.cols {
                let v = self.get(r, j);
                if !v.is_zero() {
                    out.set(ri, j, v.clone());
                }
            }
        }
        out
    }

    fn dense_rows(&self) -> Vec<Vec<ExactScalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Reduced row echelon form. Returns (rref, rank, pivot columns).
    pub fn rref(&self) -> (Self, usize, Vec<usize>) {
        let mut rows = self.dense_rows();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = rows[r][col].inv();
            for j in col..self.cols {
                rows[r][j] = rows[r][j].mul(&inv);
            }
            for i in 0..self.rows {
                if i != r && !rows[i][col].is_zero() {
                    let c = rows[i][col].clone();
                    for j in col..self.cols {
                        let t = rows[r][j].mul(&c);
                        rows[i][j] = rows[i][j].sub(&t);
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        let rank = pivots.len();
        let mut m = Self::zeros(self.mode, self.rows, self.cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        (m, rank, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of the row span in rref form, zero rows dropped. Canonical for a
    /// given span, which makes subspace equality a matrix equality.
    pub fn row_basis(&self) -> Self {
        let (r, rank, _) = self.rref();
        r.submatrix_rows(&(0..rank).collect::<Vec<_>>())
    }

    /// Rows spanning the kernel of `self` acting on row vectors from the left,
    /// i.e. all v with v * self = 0.
    pub fn left_nullspace(&self) -> Self {
        self.transpose().right_nullspace_cols()
    }

    /// Rows spanning { x : self * x^T = 0 }, one basis vector per row.
    pub fn right_nullspace_cols(&self) -> Self {
        let (red, _rank, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![ExactScalar::zero(self.mode); self.cols];
            v[f] = ExactScalar::one(self.mode);
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = red.get(pi, f).neg();
            }
            rows.push(v);
        }
        let mut out = Self::zeros(self.mode, rows.len(), self.cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                if !v.is_zero() {
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Solves x * self = rhs for each row of rhs; returns the stacked solutions
    /// or None when some row is not in the row span.
    pub fn solve_left(&self, rhs: &Self) -> Result<Option<Self>> {
        self.check_mode(rhs)?;
        if rhs.cols != self.cols {
            return Err(CoreError::ShapeMismatch("solve: rhs column mismatch".into()));
        }
        // Solve via rref of [self^T | rhs^T] columns: x * A = b  <=>  A^T x^T = b^T.
        let at = self.transpose();
        let bt = rhs.transpose();
        let aug = at.hstack(&bt)?;
        let (red, _, pivots) = aug.rref();
        // consistency: no pivot in the rhs block
        if pivots.iter().any(|&c| c >= self.rows) {
            return Ok(None);
        }
        let mut sol = Self::zeros(self.mode, rhs.rows, self.rows);
        for (pi, &pc) in pivots.iter().enumerate() {
            for k in 0..rhs.rows {
                let v = red.get(pi, self.rows + k);
                if !v.is_zero() {
                    sol.set(k, pc, v.clone());
                }
            }
        }
        Ok(Some(sol))
    }

    /// True when every row of `other` lies in the row span of `self`.
    pub fn row_span_contains(&self, other: &Self) -> bool {
        match self.solve_left(other) {
            Ok(opt) => opt.is_some(),
            Err(_) => false,
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} ({})", self.rows, self.cols, self.mode)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// rref with the interface named in the toolkit's linear-algebra layer.
pub fn rref(m: &ExactMatrix) -> (ExactMatrix, usize, Vec<usize>) {
    m.rref()
}

/// Particular solution of m * x = rhs (column convention) together with a
/// basis of ker(m) as rows. `rhs` has one column per system.
pub fn solve_and_nullspace(
    m: &ExactMatrix,
    rhs: Option<&ExactMatrix>,
) -> Result<(Option<ExactMatrix>, ExactMatrix)> {
    let nullspace = m.right_nullspace_cols();
    let particular = match rhs {
        None => None,
        Some(b) => {
            if b.rows() != m.rows() {
                return Err(CoreError::ShapeMismatch("solve: rhs row mismatch".into()));
            }
            // m x = b  <=>  x^T m^T = b^T: reuse the left solver.
            m.transpose().solve_left(&b.transpose())?.map(|s| s.transpose())
        }
    };
    Ok((particular, nullspace))
}
