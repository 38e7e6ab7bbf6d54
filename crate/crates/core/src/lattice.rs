//! Integer matrices, row Hermite normal form, and lattices.
//!
//! Lattices are stored via their unique row-HNF basis, so lattice equality is
//! matrix equality. The intersection with a rational subspace is computed via
//! an exact integer kernel and is automatically saturated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CoreError, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::{ExactScalar, FieldMode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(CoreError::ShapeMismatch("ragged integer rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_concat() })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
            .expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.data[i * self.cols..(i + 1) * self.cols].iter().all(|v| v.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(CoreError::ShapeMismatch("integer mul mismatch".into()));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_exact(&self, mode: FieldMode) -> ExactMatrix {
        let rows = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| ExactScalar::from_bigint(mode, self.get(i, j))).collect())
            .collect();
        ExactMatrix::from_rows(mode, rows).expect("rectangular")
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(dst, j) - q * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// Row Hermite normal form restricted to the first `active_cols` columns;
    /// trailing columns follow the same unimodular row operations. Returns the
    /// pivot columns (within the active block).
    fn hnf_in_place(&mut self, active_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..active_cols {
            if r == self.rows {
                break;
            }
            loop {
                // smallest nonzero |entry| in column c at rows >= r
                let mut best: Option<usize> = None;
                for i in r..self.rows {
                    if !self.get(i, c).is_zero()
                        && best.is_none_or(|b| self.get(i, c).abs() < self.get(b, c).abs())
                    {
                        best = Some(i);
                    }
                }
                let Some(b) = best else { break };
                self.swap_rows(r, b);
                if self.get(r, c).is_negative() {
                    self.negate_row(r);
                }
                let mut done = true;
                let pivot = self.get(r, c).clone();
                for i in r + 1..self.rows {
                    if !self.get(i, c).is_zero() {
                        let q = self.get(i, c).div_floor(&pivot);
                        self.row_axpy(i, r, &q);
                        if !self.get(i, c).is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if !self.get(r, c).is_zero() {
                // reduce entries above the pivot into [0, pivot)
                let pivot = self.get(r, c).clone();
                for i in 0..r {
                    let q = self.get(i, c).div_floor(&pivot);
                    self.row_axpy(i, r, &q);
                }
                pivots.push(c);
                r += 1;
            }
        }
        pivots
    }

    /// Canonical row HNF of the row span, zero rows dropped.
    pub fn hnf(&self) -> IntMatrix {
        let mut m = self.clone();
        let pivots = m.hnf_in_place(self.cols);
        let rank = pivots.len();
        let mut out = IntMatrix::zeros(rank, self.cols);
        for i in 0..rank {
            for j in 0..self.cols {
                out.set(i, j, m.get(i, j).clone());
            }
        }
        out
    }

    /// Basis of the left integer kernel { t : t * self = 0 } as HNF rows.
    ///
    /// Computed from the unimodular transform of the HNF of [self | I]; the
    /// kernel of an integer matrix is saturated, and this recovers all of it.
    pub fn left_kernel(&self) -> IntMatrix {
        let mut aug = Self::zeros(self.rows, self.cols + self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols + i, BigInt::one());
        }
        let pivots = aug.hnf_in_place(self.cols);
        let rank = pivots.len();
        let mut out = IntMatrix::zeros(self.rows - rank, self.rows);
        for i in rank..self.rows {
            debug_assert!((0..self.cols).all(|j| aug.get(i, j).is_zero()));
            for j in 0..self.rows {
                out.set(i - rank, j, aug.get(i, self.cols + j).clone());
            }
        }
        out.hnf()
    }
}

trait IntoConcat {
    fn into_concat(self) -> Vec<BigInt>;
}

impl IntoConcat for Vec<Vec<BigInt>> {
    fn into_concat(self) -> Vec<BigInt> {
        self.into_iter().flatten().collect()
    }
}

/// A sublattice of Z^n given by its canonical HNF basis (rows).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    ambient: usize,
    basis: IntMatrix,
}

impl IntegerLattice {
    /// Lattice spanned by the given integer rows.
    pub fn from_rows(ambient: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != ambient) {
            return Err(CoreError::ShapeMismatch("lattice generator length".into()));
        }
        let m = if rows.is_empty() {
            IntMatrix::zeros(0, ambient)
        } else {
            IntMatrix::from_rows(rows)?
        };
        Ok(IntegerLattice { ambient, basis: m.hnf() })
    }

    pub fn standard(n: usize) -> Self {
        IntegerLattice { ambient: n, basis: IntMatrix::identity(n) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Membership of an integer vector, by HNF back-substitution.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coords_of(v).is_some()
    }

    /// Integer coordinates of v in the HNF basis, if v lies in the lattice.
    pub fn coords_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient {
            return None;
        }
        let mut rem: Vec<BigInt> = v.to_vec();
        let mut coords = vec![BigInt::zero(); self.basis.rows()];
        for i in 0..self.basis.rows() {
            let pivot_col = (0..self.ambient).find(|&j| !self.basis.get(i, j).is_zero())?;
            let p = self.basis.get(i, pivot_col);
            if (&rem[pivot_col] % p).is_zero() {
                let q = &rem[pivot_col] / p;
                for j in 0..self.ambient {
                    rem[j] -= &q * self.basis.get(i, j);
                }
                coords[i] = q;
            }
        }
        if rem.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// The sublattice of points lying in the Q-row-span of `subspace`.
    ///
    /// The result is saturated: its Q-span is span(subspace) ∩ Q-span(self).
    pub fn intersect_subspace(&self, subspace: &ExactMatrix) -> Result<IntegerLattice> {
        if subspace.cols() != self.ambient {
            return Err(CoreError::ShapeMismatch("subspace ambient dimension".into()));
        }
        if subspace.mode() != FieldMode::Q {
            return Err(CoreError::MixedFieldModes);
        }
        // equations cutting out span(V): rows e with V e^T = 0
        let equations = subspace.right_nullspace_cols();
        // point t*B lies in span(V)  <=>  t * (B * E^T) = 0
        let b_rat = self.basis.to_exact(FieldMode::Q);
        let m = b_rat.mul(&equations.transpose())?;
        let m_int = clear_denominators(&m);
        let kernel = m_int.left_kernel();
        let new_basis = kernel.mul(&self.basis)?;
        IntegerLattice::from_rows(self.ambient, (0..new_basis.rows()).map(|i| new_basis.row(i)).collect())
    }
}

/// HNF entry point in the shape used by the rest of the toolkit.
pub fn hnf(ambient: usize, generators: Vec<Vec<BigInt>>) -> Result<IntegerLattice> {
    IntegerLattice::from_rows(ambient, generators)
}

/// Scales each row of a rational matrix to integers by its common denominator.
fn clear_denominators(m: &ExactMatrix) -> IntMatrix {
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut lcm = BigInt::one();
        for j in 0..m.cols() {
            if let Some(r) = m.get(i, j).as_rational() {
                lcm = lcm.lcm(r.denom());
            }
        }
        let lcm_r = BigRational::from(lcm);
        rows.push(
            (0..m.cols())
                .map(|j| {
                    let v = m.get(i, j).as_rational().expect("mode Q") * &lcm_r;
                    debug_assert!(v.denom().is_one());
                    v.numer().clone()
                })
                .collect(),
        );
    }
    IntMatrix::from_rows(rows).expect("rectangular")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn hnf_already_canonical() {
        let l = hnf(2, vec![vec![bi(2), bi(0)], vec![bi(0), bi(2)]]).unwrap();
        assert_eq!(l.basis(), &IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 2]]));
    }

    #[test]
    fn hnf_reduction() {
        let l = hnf(2, vec![vec![bi(1), bi(1)], vec![bi(1), bi(-1)]]).unwrap();
        assert_eq!(l.basis(), &IntMatrix::from_i64_rows(&[vec![1, 1], vec![0, 2]]));
    }

    #[test]
    fn hnf_zero_row() {
        let l = hnf(2, vec![vec![bi(0), bi(0)]]).unwrap();
        assert_eq!(l.rank(), 0);
    }

    #[test]
    fn hnf_idempotent() {
        let gens = vec![vec![bi(4), bi(6), bi(2)], vec![bi(2), bi(2), bi(2)], vec![bi(6), bi(8), bi(4)]];
        let l1 = hnf(3, gens).unwrap();
        let l2 = hnf(3, (0..l1.rank()).map(|i| l1.basis().row(i)).collect()).unwrap();
        assert_eq!(l1, l2);
    }

    #[test]
    fn intersect_axis() {
        let l = IntegerLattice::standard(2);
        let v = ExactMatrix::from_rows(
            FieldMode::Q,
            vec![vec![ExactScalar::from_i64(FieldMode::Q, 1), ExactScalar::from_i64(FieldMode::Q, 0)]],
        )
        .unwrap();
        let li = l.intersect_subspace(&v).unwrap();
        assert_eq!(li.basis(), &IntMatrix::from_i64_rows(&[vec![1, 0]]));
    }

    #[test]
    fn intersect_diagonal_saturates() {
        let l = IntegerLattice::standard(2);
        let half = ExactScalar::parse(FieldMode::Q, "1/2").unwrap();
        let v = ExactMatrix::from_rows(FieldMode::Q, vec![vec![half.clone(), half]]).unwrap();
        let li = l.intersect_subspace(&v).unwrap();
        assert_eq!(li.basis(), &IntMatrix::from_i64_rows(&[vec![1, 1]]));
    }

    #[test]
    fn intersect_zero_subspace() {
        let l = IntegerLattice::standard(2);
        let v = ExactMatrix::zeros(FieldMode::Q, 0, 2);
        let li = l.intersect_subspace(&v).unwrap();
        assert_eq!(li.rank(), 0);
    }

    #[test]
    fn intersection_brute_force_small() {
        // lattice points with small coefficients, ambient dim <= 3
        let gens = vec![vec![bi(2), bi(1), bi(0)], vec![bi(0), bi(3), bi(1)]];
        let l = hnf(3, gens).unwrap();
        let q = |v: i64| ExactScalar::from_i64(FieldMode::Q, v);
        let v = ExactMatrix::from_rows(FieldMode::Q, vec![vec![q(2), q(4), q(1)]]).unwrap();
        let li = l.intersect_subspace(&v).unwrap();
        // brute force: enumerate a*g1 + b*g2 with small coefficients; keep those in span(V)
        let mut found = Vec::new();
        for a in -9i64..=9 {
            for b in -9i64..=9 {
                let pt = vec![bi(2 * a), bi(a + 3 * b), bi(b)];
                // in span{(2,4,1)} iff pt = t*(2,4,1) for rational t
                let in_span = if pt[2].is_zero() {
                    pt.iter().all(|x| x.is_zero())
                } else {
                    &pt[0] == &(&pt[2] * 2) && &pt[1] == &(&pt[2] * 4)
                };
                if in_span {
                    found.push(pt);
                }
            }
        }
        for pt in &found {
            assert!(li.contains(pt), "brute-force point missing from intersection");
            assert!(l.contains(pt));
        }
        // saturation: Q-span of result equals span(V) ∩ Q-span(L)
        let nonzero_found = found.iter().filter(|p| p.iter().any(|x| !x.is_zero())).count();
        if nonzero_found > 0 {
            assert_eq!(li.rank(), 1);
        }
    }
}
