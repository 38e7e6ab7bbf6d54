//! Finite-dimensional positively graded algebras given by structure constants.
//!
//! Conventions used throughout the crate:
//! - elements are **row** coefficient vectors in the chosen basis;
//! - every basis vector is homogeneous, so the grading is a function on basis
//!   indices and all graded computations are block computations;
//! - for a left module with action matrices `act_i`, the action of `b_i` on a
//!   row vector `v` is `v * act_i`, and compatibility with multiplication
//!   reads `sum_k c[i][j][k] act_k = act_j * act_i`.
//!
//! All invariants are verified at construction; [`build_algebra`] fails (not
//! warns) on any violation and names a witnessing basis triple.

use std::sync::{Arc, OnceLock};

use crate::error::{CoreError, Result};
use crate::matrix::ExactMatrix;
use crate::radical::RadicalSeries;
use crate::scalar::{ExactScalar, FieldMode};
use crate::simples::SimplesData;

/// Sparse coefficient vector, sorted by basis index.
pub type SparseVec = Vec<(usize, ExactScalar)>;

pub fn sparse_from_dense(v: &[ExactScalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

pub fn dense_from_sparse(mode: FieldMode, dim: usize, v: &SparseVec) -> Vec<ExactScalar> {
    let mut out = vec![ExactScalar::zero(mode); dim];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// Input to [`build_algebra`].
#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    pub mode: FieldMode,
    pub dim: usize,
    pub labels: Vec<String>,
    /// mult[i][j] = coefficient vector of b_i * b_j
    pub mult: Vec<Vec<SparseVec>>,
    pub unit: Vec<ExactScalar>,
    pub grades: Vec<usize>,
    pub idempotents: Option<Vec<Vec<ExactScalar>>>,
    /// Optional radical basis known by construction (e.g. the arrow ideal of a
    /// quiver presentation), as rows.
    pub radical_basis: Option<ExactMatrix>,
}

pub struct GradedAlgebra {
    mode: FieldMode,
    dim: usize,
    labels: Vec<String>,
    mult: Vec<Vec<SparseVec>>,
    unit: Vec<ExactScalar>,
    grades: Vec<usize>,
    idempotents: Option<Vec<Vec<ExactScalar>>>,
    supplied_radical: Option<ExactMatrix>,
    radical_cache: OnceLock<std::result::Result<RadicalSeries, CoreError>>,
    simples_cache: OnceLock<std::result::Result<SimplesData, CoreError>>,
}

impl std::fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GradedAlgebra(dim={}, mode={}, grades={:?})", self.dim, self.mode, self.grades)
    }
}

/// Builds and validates a graded algebra. Verifies associativity, unit laws,
/// grading multiplicativity, positivity, grade-0 unit, and (when supplied)
/// that the idempotents form a complete orthogonal set.
pub fn build_algebra(spec: AlgebraSpec) -> Result<Arc<GradedAlgebra>> {
    let AlgebraSpec { mode, dim, labels, mult, unit, grades, idempotents, radical_basis } = spec;
    if mult.len() != dim
        || mult.iter().any(|r| r.len() != dim)
        || unit.len() != dim
        || grades.len() != dim
        || labels.len() != dim
    {
        return Err(CoreError::ShapeMismatch("algebra spec dimensions".into()));
    }
    for row in &mult {
        for entry in row {
            for (k, c) in entry {
                if *k >= dim {
                    return Err(CoreError::ShapeMismatch("structure constant index".into()));
                }
                if c.mode() != mode {
                    return Err(CoreError::MixedFieldModes);
                }
            }
        }
    }
    if unit.iter().any(|c| c.mode() != mode) {
        return Err(CoreError::MixedFieldModes);
    }

    let alg = GradedAlgebra {
        mode,
        dim,
        labels,
        mult,
        unit,
        grades,
        idempotents,
        supplied_radical: radical_basis,
        radical_cache: OnceLock::new(),
        simples_cache: OnceLock::new(),
    };

    // grading multiplicativity (basis vectors are homogeneous, so this is the
    // full A_i A_j ⊆ A_{i+j} check)
    for i in 0..dim {
        for j in 0..dim {
            for (k, c) in &alg.mult[i][j] {
                if !c.is_zero() && alg.grades[*k] != alg.grades[i] + alg.grades[j] {
                    return Err(CoreError::GradingViolation { i, j, k: *k });
                }
            }
        }
    }

    // unit laws and grade-0 unit
    for (k, c) in sparse_from_dense(&alg.unit) {
        if !c.is_zero() && alg.grades[k] != 0 {
            return Err(CoreError::BadUnit);
        }
    }
    for i in 0..dim {
        let b = alg.basis_vector(i);
        if alg.product(&alg.unit, &b) != b || alg.product(&b, &alg.unit) != b {
            return Err(CoreError::BadUnit);
        }
    }

    // associativity, exhaustively on basis triples
    for i in 0..dim {
        for j in 0..dim {
            let ij = alg.mult[i][j].clone();
            for k in 0..dim {
                // (b_i b_j) b_k
                let left = alg.product_sparse_basis(&ij, k);
                // b_i (b_j b_k)
                let jk = &alg.mult[j][k];
                let mut right = vec![ExactScalar::zero(mode); dim];
                for (l, c) in jk {
                    for (m, d) in &alg.mult[i][*l] {
                        right[*m] = right[*m].add(&c.mul(d));
                    }
                }
                if left != right {
                    return Err(CoreError::NonAssociative { i, j, k });
                }
            }
        }
    }

    // idempotent family
    if let Some(es) = &alg.idempotents {
        let mut total = vec![ExactScalar::zero(mode); dim];
        for (a, e) in es.iter().enumerate() {
            if e.len() != dim {
                return Err(CoreError::BadIdempotents("wrong length".into()));
            }
            for (b, f) in es.iter().enumerate() {
                let prod = alg.product(e, f);
                let expect = if a == b { e.clone() } else { vec![ExactScalar::zero(mode); dim] };
                if prod != expect {
                    return Err(CoreError::BadIdempotents(format!(
                        "e{a} * e{b} is not {}",
                        if a == b { "e" } else { "0" }
                    )));
                }
            }
            for (i, c) in e.iter().enumerate() {
                total[i] = total[i].add(c);
            }
        }
        if total != alg.unit {
            return Err(CoreError::BadIdempotents("sum is not 1".into()));
        }
    }

    Ok(Arc::new(alg))
}

impl GradedAlgebra {
    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn grades(&self) -> &[usize] {
        &self.grades
    }

    pub fn unit(&self) -> &[ExactScalar] {
        &self.unit
    }

    pub fn idempotents(&self) -> Option<&[Vec<ExactScalar>]> {
        self.idempotents.as_deref()
    }

    pub fn supplied_radical(&self) -> Option<&ExactMatrix> {
        self.supplied_radical.as_ref()
    }

    pub fn structure_constant(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<ExactScalar> {
        let mut v = vec![ExactScalar::zero(self.mode); self.dim];
        v[i] = ExactScalar::one(self.mode);
        v
    }

    pub fn zero_vector(&self) -> Vec<ExactScalar> {
        vec![ExactScalar::zero(self.mode); self.dim]
    }

    /// Product of two elements given as dense row vectors.
    pub fn product(&self, u: &[ExactScalar], v: &[ExactScalar]) -> Vec<ExactScalar> {
        let mut out = self.zero_vector();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul(b);
                for (k, c) in &self.mult[i][j] {
                    out[*k] = out[*k].add(&ab.mul(c));
                }
            }
        }
        out
    }

    /// (sparse element) * b_k
    fn product_sparse_basis(&self, u: &SparseVec, k: usize) -> Vec<ExactScalar> {
        let mut out = self.zero_vector();
        for (i, a) in u {
            for (m, c) in &self.mult[*i][k] {
                out[*m] = out[*m].add(&a.mul(c));
            }
        }
        out
    }

    /// Matrix of left multiplication by `elem` in the row convention:
    /// (elem * x) = x * L for row vectors x.
    pub fn left_mult_matrix(&self, elem: &[ExactScalar]) -> ExactMatrix {
        let mut triplets = Vec::new();
        for (i, a) in elem.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in &self.mult[i][j] {
                    triplets.push((j, *k, a.mul(c)));
                }
            }
        }
        ExactMatrix::from_triplets(self.mode, self.dim, self.dim, triplets).expect("well formed")
    }

    /// Matrix of right multiplication by `elem`: (x * elem) = x * R.
    pub fn right_mult_matrix(&self, elem: &[ExactScalar]) -> ExactMatrix {
        let mut triplets = Vec::new();
        for i in 0..self.dim {
            for (j, a) in elem.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, c) in &self.mult[i][j] {
                    triplets.push((i, *k, a.mul(c)));
                }
            }
        }
        ExactMatrix::from_triplets(self.mode, self.dim, self.dim, triplets).expect("well formed")
    }

    pub fn top_grade(&self) -> usize {
        self.grades.iter().copied().max().unwrap_or(0)
    }

    pub fn component_indices(&self, g: usize) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.grades[i] == g).collect()
    }

    /// Basis of the homogeneous component A_i as rows; empty for i outside
    /// the grade range (the grading is positive).
    pub fn grade_component(&self, i: i64) -> ExactMatrix {
        if i < 0 {
            return ExactMatrix::zeros(self.mode, 0, self.dim);
        }
        let idx = self.component_indices(i as usize);
        let mut m = ExactMatrix::zeros(self.mode, idx.len(), self.dim);
        for (r, &k) in idx.iter().enumerate() {
            m.set(r, k, ExactScalar::one(self.mode));
        }
        m
    }

    /// The grade-0 subalgebra as a standalone (trivially graded) algebra,
    /// together with the embedding indices into this algebra.
    pub fn grade_zero_subalgebra(&self) -> Result<(Arc<GradedAlgebra>, Vec<usize>)> {
        let idx = self.component_indices(0);
        let pos: std::collections::HashMap<usize, usize> =
            idx.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let n = idx.len();
        let mut mult = vec![vec![SparseVec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                for (k, c) in &self.mult[idx[a]][idx[b]] {
                    let kk = pos.get(k).ok_or_else(|| {
                        CoreError::Invalid("grade-0 product leaves grade 0".into())
                    })?;
                    mult[a][b].push((*kk, c.clone()));
                }
            }
        }
        let unit = idx.iter().map(|&i| self.unit[i].clone()).collect();
        let idempotents = self
            .idempotents
            .as_ref()
            .map(|es| es.iter().map(|e| idx.iter().map(|&i| e[i].clone()).collect()).collect());
        let alg = build_algebra(AlgebraSpec {
            mode: self.mode,
            dim: n,
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            mult,
            unit,
            grades: vec![0; n],
            idempotents,
            radical_basis: None,
        })?;
        Ok((alg, idx))
    }

    /// Opposite algebra: same basis and grading, c^op[i][j] = c[j][i].
    pub fn opposite(&self) -> Result<Arc<GradedAlgebra>> {
        let mut mult = vec![vec![SparseVec::new(); self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                mult[i][j] = self.mult[j][i].clone();
            }
        }
        build_algebra(AlgebraSpec {
            mode: self.mode,
            dim: self.dim,
            labels: self.labels.clone(),
            mult,
            unit: self.unit.clone(),
            grades: self.grades.clone(),
            idempotents: self.idempotents.clone(),
            radical_basis: self.supplied_radical.clone(),
        })
    }

    /// Grade-g homogeneous component of an element.
    pub fn homogeneous_part(&self, v: &[ExactScalar], g: usize) -> Vec<ExactScalar> {
        let mut out = self.zero_vector();
        for (i, c) in v.iter().enumerate() {
            if self.grades[i] == g {
                out[i] = c.clone();
            }
        }
        out
    }

    pub fn is_idempotent(&self, e: &[ExactScalar]) -> bool {
        self.product(e, e) == e
    }

    pub(crate) fn radical_cache(&self) -> &OnceLock<std::result::Result<RadicalSeries, CoreError>> {
        &self.radical_cache
    }

    pub(crate) fn simples_cache(&self) -> &OnceLock<std::result::Result<SimplesData, CoreError>> {
        &self.simples_cache
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn semisimple_product_of_fields() {
        let a = corpus::product_of_fields(FieldMode::Q, 2);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.grades(), &[0, 0]);
    }

    #[test]
    fn dual_numbers_graded() {
        let a = corpus::truncated_polynomial(FieldMode::Q, 2, 1);
        assert_eq!(a.grade_component(0).rows(), 1);
        assert_eq!(a.grade_component(1).rows(), 1);
        assert_eq!(a.grade_component(-1).rows(), 0);
        assert_eq!(a.grade_component(2).rows(), 0);
    }

    #[test]
    fn grading_violation_detected() {
        // x*x = x with x in grade 1 forces a grade-2 component equal to x
        let mode = FieldMode::Q;
        let one = ExactScalar::one(mode);
        let spec = AlgebraSpec {
            mode,
            dim: 2,
            labels: vec!["1".into(), "x".into()],
            mult: vec![
                vec![vec![(0, one.clone())], vec![(1, one.clone())]],
                vec![vec![(1, one.clone())], vec![(1, one.clone())]],
            ],
            unit: vec![one.clone(), ExactScalar::zero(mode)],
            grades: vec![0, 1],
            idempotents: None,
            radical_basis: None,
        };
        assert_eq!(
            build_algebra(spec).unwrap_err(),
            CoreError::GradingViolation { i: 1, j: 1, k: 1 }
        );
    }

    #[test]
    fn non_associative_detected() {
        let mode = FieldMode::Q;
        let one = ExactScalar::one(mode);
        let zero = ExactScalar::zero(mode);
        // x*x = y, x*y = x, all other products of x,y zero:
        // (x x) x = y x = 0 but x (x x) = x y = x.
        let spec = AlgebraSpec {
            mode,
            dim: 3,
            labels: vec!["1".into(), "x".into(), "y".into()],
            mult: vec![
                vec![vec![(0, one.clone())], vec![(1, one.clone())], vec![(2, one.clone())]],
                vec![vec![(1, one.clone())], vec![(2, one.clone())], vec![(1, one.clone())]],
                vec![vec![(2, one.clone())], vec![], vec![]],
            ],
            unit: vec![one.clone(), zero.clone(), zero.clone()],
            grades: vec![0, 0, 0],
            idempotents: None,
            radical_basis: None,
        };
        let err = build_algebra(spec).unwrap_err();
        assert!(matches!(err, CoreError::NonAssociative { .. }), "{err:?}");
    }

    #[test]
    fn component_dimensions_sum_to_dim() {
        for a in [
            corpus::truncated_polynomial(FieldMode::Q, 3, 1),
            corpus::path_algebra_a2(FieldMode::Q, 1),
            corpus::product_of_fields(FieldMode::Fp(5), 3),
        ] {
            let total: usize =
                (0..=a.top_grade()).map(|g| a.grade_component(g as i64).rows()).sum();
            assert_eq!(total, a.dim());
        }
    }

    #[test]
    fn grade_zero_subalgebra_matches_quotient() {
        // A/A_{>0} ≅ A_0: with a homogeneous basis both have the same structure
        // constants through the canonical projection/inclusion.
        let a = corpus::path_algebra_a2(FieldMode::Q, 1);
        let (a0, idx) = a.grade_zero_subalgebra().unwrap();
        assert_eq!(a0.dim(), 2);
        for i in 0..a0.dim() {
            for j in 0..a0.dim() {
                let amb = a.structure_constant(idx[i], idx[j]);
                let sub = a0.structure_constant(i, j);
                let projected: Vec<(usize, ExactScalar)> = amb
                    .iter()
                    .filter(|(k, _)| a.grades()[*k] == 0)
                    .map(|(k, c)| (idx.iter().position(|&t| t == *k).unwrap(), c.clone()))
                    .collect();
                assert_eq!(&projected, sub);
            }
        }
    }
}
