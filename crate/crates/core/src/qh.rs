//! Quasi-hereditary structure: weight posets, standard and costandard
//! modules, grade-0 truncations, and the heredity-chain audit.
//!
//! Δ(λ) is P(λ) modulo the trace of every P(μ) with μ not below λ; ∇(λ) is
//! the graded dual of the standard module of the opposite algebra, so it
//! lives in non-positive grades with socle in grade 0. Quasi-heredity is
//! accepted on the fast criterion dim A = Σ dim Δ(λ)·dim ∇(λ) plus
//! one-dimensional End(Δ(λ)); the `deep` path additionally builds a heredity
//! chain and cross-checks it against the fast verdict.

use std::sync::Arc;

use crate::algebra::{build_algebra, AlgebraSpec, GradedAlgebra, SparseVec};
use crate::error::{CoreError, Result};
use crate::matrix::ExactMatrix;
use crate::module::GradedModule;
use crate::radical::radical_series;
use crate::resolution::minimal_graded_resolution;
use crate::scalar::ExactScalar;
use crate::simples::{quotient_algebra, simples_and_projectives, SimplesData};

/// Strict partial order on the simple indices. Stored as the full reflexive
/// closure, so `le(a, b)` means a = b or a < b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightPoset {
    n: usize,
    le: Vec<bool>,
}

impl WeightPoset {
    /// Builds from strict relations (a, b) meaning a < b. The relation is
    /// closed transitively; a cycle is rejected as non-antisymmetric.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(CoreError::BadPoset("relation index out of range".into()));
            }
            le[a * n + b] = true;
        }
        // Floyd-Warshall closure
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i * n + j] && le[j * n + i] {
                    return Err(CoreError::BadPoset(format!("cycle through {i} and {j}")));
                }
            }
        }
        Ok(WeightPoset { n, le })
    }

    pub fn total(n: usize) -> Self {
        Self::from_relations(n, &(0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>())
            .expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_relations(n, &[]).expect("antichain")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.n + b]
    }

    /// Strict relation pairs (a < b), for serialization.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a != b && self.le(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Maximal elements among `active`.
    fn maximal_among(&self, active: &[usize]) -> Vec<usize> {
        active
            .iter()
            .copied()
            .filter(|&a| active.iter().all(|&b| b == a || !self.le(a, b)))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct QHStructure {
    pub algebra: Arc<GradedAlgebra>,
    pub poset: WeightPoset,
    pub data: SimplesData,
    /// Δ(λ), head in grade 0.
    pub standards: Vec<GradedModule>,
    /// ∇(λ), socle in grade 0, concentrated in non-positive grades.
    pub costandards: Vec<GradedModule>,
    /// Δ⁰(λ): grade-0 truncation of Δ(λ) as a pure grade-0 module.
    pub grade0_standards: Vec<GradedModule>,
    /// ∇₀(λ): grade-0 truncation of ∇(λ).
    pub grade0_costandards: Vec<GradedModule>,
    /// Opposite algebra with the same primitive idempotents, and its
    /// standard modules (used for colinearity of costandards).
    pub op_algebra: Arc<GradedAlgebra>,
    pub op_data: SimplesData,
    pub op_standards: Vec<GradedModule>,
    pub verified: bool,
}

/// Builds the opposite algebra carrying the refined primitive idempotents,
/// so its simple classes align index-by-index with the original.
fn opposite_with_idempotents(
    a: &GradedAlgebra,
    data: &SimplesData,
) -> Result<Arc<GradedAlgebra>> {
    let dim = a.dim();
    let mut mult = vec![vec![SparseVec::new(); dim]; dim];
    for (i, row) in mult.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = a.structure_constant(j, i).clone();
        }
    }
    build_algebra(AlgebraSpec {
        mode: a.mode(),
        dim,
        labels: a.labels().to_vec(),
        mult,
        unit: a.unit().to_vec(),
        grades: a.grades().to_vec(),
        idempotents: Some(data.idempotents.clone()),
        // the Jacobson radical is the same subspace on both sides
        radical_basis: radical_series(a).ok().map(|rs| rs.radical()),
    })
}

/// Trace of all P(μ), μ not ≤ λ, inside P(λ), as a row span.
fn standard_kernel(
    data: &SimplesData,
    poset: &WeightPoset,
    lam: usize,
) -> Result<ExactMatrix> {
    let p = &data.projectives[lam];
    let mode = p.mode();
    let mut rows = ExactMatrix::zeros(mode, 0, p.dim);
    for mu in 0..data.count {
        if poset.le(mu, lam) {
            continue;
        }
        let e_mu = &data.idempotents[data.reps[mu]];
        let hom = p.action_of_element(e_mu); // rows span e_mu · P(λ)
        let gens = hom.row_basis();
        for g in 0..gens.rows() {
            let v = ExactMatrix::from_rows(mode, vec![gens.row(g)])?;
            // A·v: apply every basis action
            for i in 0..p.algebra.dim() {
                rows = rows.vstack(&v.mul(&p.action[i])?)?;
            }
        }
    }
    Ok(rows.row_basis())
}

/// dim End_A(Δ(λ)) via Hom(P(λ), Δ) = e_λ·Δ restricted to maps killing the
/// standard kernel.
fn end_dim_of_standard(
    data: &SimplesData,
    lam: usize,
    kernel: &ExactMatrix,
    standard: &GradedModule,
) -> Result<usize> {
    let mode = standard.mode();
    let e = &data.idempotents[data.reps[lam]];
    let fixed = standard.action_of_element(e).row_basis(); // e·Δ
    if fixed.rows() == 0 {
        return Ok(0);
    }
    // condition rows: for each kernel generator u (in P coords), the algebra
    // element elem(u) must kill the image vector
    let mut conditions: Vec<ExactMatrix> = Vec::new();
    for u in 0..kernel.rows() {
        let mut elem = vec![ExactScalar::zero(mode); standard.algebra.dim()];
        for (l, c) in kernel.row(u).iter().enumerate() {
            if !c.is_zero() {
                for (k, x) in data.proj_elements[lam][l].iter().enumerate() {
                    if !x.is_zero() {
                        elem[k] = elem[k].add(&c.mul(x));
                    }
                }
            }
        }
        conditions.push(standard.action_of_element(&elem));
    }
    // solve for coefficient vectors c over the rows of `fixed`
    let mut eq_rows: Vec<Vec<ExactScalar>> = Vec::new();
    for cond in &conditions {
        let img = fixed.mul(cond)?; // row r = fixed_r · cond
        for col in 0..img.cols() {
            let row: Vec<ExactScalar> = (0..fixed.rows()).map(|r| img.get(r, col).clone()).collect();
            if row.iter().any(|c| !c.is_zero()) {
                eq_rows.push(row);
            }
        }
    }
    if eq_rows.is_empty() {
        return Ok(fixed.rows());
    }
    let eqs = ExactMatrix::from_rows(mode, eq_rows)?;
    Ok(fixed.rows() - eqs.transpose().rank())
}

/// Pure grade-0 truncation of a graded module: the grade-0 block with A_0
/// acting through restriction and A_{>0} acting by zero.
pub fn grade_zero_truncation(m: &GradedModule) -> GradedModule {
    let idx = m.grade_indices(0);
    let mode = m.mode();
    let a = &m.algebra;
    let mut action = Vec::with_capacity(a.dim());
    for i in 0..a.dim() {
        let mut act = ExactMatrix::zeros(mode, idx.len(), idx.len());
        if a.grades()[i] == 0 {
            for (r, &mr) in idx.iter().enumerate() {
                for (c, &mc) in idx.iter().enumerate() {
                    let v = m.action[i].get(mr, mc);
                    if !v.is_zero() {
                        act.set(r, c, v.clone());
                    }
                }
            }
        }
        action.push(act);
    }
    GradedModule::new_unchecked(Arc::clone(a), action, vec![0; idx.len()])
}

pub fn build_qh(a: &Arc<GradedAlgebra>, poset: &WeightPoset) -> Result<QHStructure> {
    let data = simples_and_projectives(a)?;
    if poset.len() != data.count {
        return Err(CoreError::BadPoset(format!(
            "poset covers {} elements but the algebra has {} simple classes",
            poset.len(),
            data.count
        )));
    }

    let mut standards = Vec::with_capacity(data.count);
    let mut kernels = Vec::with_capacity(data.count);
    for lam in 0..data.count {
        let kernel = standard_kernel(&data, poset, lam)?;
        let (delta, _, _) = data.projectives[lam].quotient(&kernel)?;
        kernels.push(kernel);
        standards.push(delta);
    }

    let op_algebra = opposite_with_idempotents(a, &data)?;
    let op_data = simples_and_projectives(&op_algebra)?;
    if op_data.count != data.count {
        return Err(CoreError::Invalid("opposite algebra has a different simple count".into()));
    }
    let mut op_standards = Vec::with_capacity(data.count);
    for lam in 0..data.count {
        let kernel = standard_kernel(&op_data, poset, lam)?;
        let (delta, _, _) = op_data.projectives[lam].quotient(&kernel)?;
        op_standards.push(delta);
    }
    let costandards: Vec<GradedModule> =
        op_standards.iter().map(|d| d.dual(a)).collect();

    // fast quasi-heredity criterion
    let total: usize =
        standards.iter().zip(&costandards).map(|(d, n)| d.dim * n.dim).sum();
    if total != a.dim() {
        return Err(CoreError::NotQuasiHereditary(format!(
            "dimension identity fails: sum dim Δ(λ)·dim ∇(λ) = {total} but dim A = {}",
            a.dim()
        )));
    }
    for lam in 0..data.count {
        let d = end_dim_of_standard(&data, lam, &kernels[lam], &standards[lam])?;
        if d != 1 {
            return Err(CoreError::NotQuasiHereditary(format!(
                "End(Δ({lam})) has dimension {d}"
            )));
        }
    }

    let grade0_standards = standards.iter().map(grade_zero_truncation).collect();
    let grade0_costandards = costandards.iter().map(grade_zero_truncation).collect();

    Ok(QHStructure {
        algebra: Arc::clone(a),
        poset: poset.clone(),
        data,
        standards,
        costandards,
        grade0_standards,
        grade0_costandards,
        op_algebra,
        op_data,
        op_standards,
        verified: true,
    })
}

/// Exhaustive heredity-chain verification: strips heredity ideals along
/// maximal classes of the poset. Returns an error naming the failing layer;
/// agreement with the fast criterion is asserted by callers.
pub fn verify_heredity_chain(a: &Arc<GradedAlgebra>, poset: &WeightPoset) -> Result<()> {
    let data = simples_and_projectives(a)?;
    if poset.len() != data.count {
        return Err(CoreError::BadPoset("poset size mismatch".into()));
    }
    // class idempotent sums, in the coordinates of the current quotient
    let mut class_idems: Vec<Vec<ExactScalar>> = (0..data.count)
        .map(|lam| {
            let mut v = a.zero_vector();
            for (i, e) in data.idempotents.iter().enumerate() {
                if data.class_of[i] == lam {
                    for (k, c) in e.iter().enumerate() {
                        v[k] = v[k].add(c);
                    }
                }
            }
            v
        })
        .collect();
    let mut current: Arc<GradedAlgebra> = Arc::clone(a);
    let mut rad_rows: ExactMatrix = radical_series(a)?.radical();
    let mut active: Vec<usize> = (0..data.count).collect();

    while !active.is_empty() {
        let mode = current.mode();
        let lam = *poset
            .maximal_among(&active)
            .first()
            .ok_or_else(|| CoreError::BadPoset("no maximal class".into()))?;
        let e = class_idems[lam].clone();
        // J = span of B e B
        let mut j_rows = Vec::new();
        for i in 0..current.dim() {
            let bi_e = current.product(&current.basis_vector(i), &e);
            for jj in 0..current.dim() {
                j_rows.push(current.product(&bi_e, &current.basis_vector(jj)));
            }
        }
        let j = ExactMatrix::from_rows(mode, j_rows)?.row_basis();
        // J must be idempotent: J·J = J
        let jj = span_product(&current, &j, &j)?;
        if jj.row_basis() != j {
            return Err(CoreError::NotQuasiHereditary(format!(
                "heredity layer {lam}: J^2 != J"
            )));
        }
        // J rad J = 0
        let jr = span_product(&current, &j, &rad_rows)?;
        let jrj = span_product(&current, &jr, &j)?;
        if jrj.rows() > 0 {
            return Err(CoreError::NotQuasiHereditary(format!(
                "heredity layer {lam}: J rad J != 0"
            )));
        }
        // J projective as a left module
        let regular = GradedModule::regular(&current);
        let (j_mod, _) = regular.submodule(&j)?;
        let cur_data = simples_and_projectives(&current)?;
        let res = minimal_graded_resolution(&cur_data, &j_mod, 1)?;
        if !(res.terminated && res.terms.len() == 1) {
            return Err(CoreError::NotQuasiHereditary(format!(
                "heredity layer {lam}: J is not projective"
            )));
        }
        // descend to B/J
        let (next, proj, _) = quotient_algebra(&current, &j)?;
        let project = |v: &[ExactScalar]| -> Vec<ExactScalar> {
            ExactMatrix::from_rows(mode, vec![v.to_vec()])
                .expect("row")
                .mul(&proj)
                .expect("shape")
                .row(0)
        };
        rad_rows = {
            // rad(B/J) = (rad B + J)/J
            let mut rows = Vec::new();
            for i in 0..rad_rows.rows() {
                rows.push(project(&rad_rows.row(i)));
            }
            if rows.is_empty() {
                ExactMatrix::zeros(next.mode(), 0, next.dim())
            } else {
                ExactMatrix::from_rows(next.mode(), rows)?.row_basis()
            }
        };
        class_idems = class_idems.iter().map(|v| project(v)).collect();
        active.retain(|&x| x != lam);
        current = next;
    }
    Ok(())
}

/// Row span of all pairwise products of two row spans.
fn span_product(a: &GradedAlgebra, left: &ExactMatrix, right: &ExactMatrix) -> Result<ExactMatrix> {
    let mode = a.mode();
    let mut rows = Vec::new();
    for i in 0..left.rows() {
        for j in 0..right.rows() {
            rows.push(a.product(&left.row(i), &right.row(j)));
        }
    }
    if rows.is_empty() {
        Ok(ExactMatrix::zeros(mode, 0, a.dim()))
    } else {
        Ok(ExactMatrix::from_rows(mode, rows)?.row_basis())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::FieldMode;

    #[test]
    fn poset_closure_and_cycles() {
        let p = WeightPoset::from_relations(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.le(0, 2));
        assert!(!p.le(2, 0));
        assert!(WeightPoset::from_relations(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn a2_path_algebra_is_quasi_hereditary() {
        // poset 2 < 1: Δ(1) = P(1) (dim 2), Δ(2) = L(2); ∇(1) = L(1), ∇(2) dim 1
        let a = corpus::path_algebra_a2(FieldMode::Q, 1);
        let poset = WeightPoset::from_relations(2, &[(1, 0)]).unwrap();
        let q = build_qh(&a, &poset).unwrap();
        assert!(q.verified);
        assert_eq!(q.standards[0].dim, 2);
        assert_eq!(q.standards[1].dim, 1);
        assert_eq!(q.costandards[0].dim, 1);
        assert_eq!(q.costandards[1].dim, 1);
        // 2·1 + 1·1 = 3 = dim A
        verify_heredity_chain(&a, &poset).unwrap();
    }

    #[test]
    fn semisimple_any_order() {
        let a = corpus::product_of_fields(FieldMode::Q, 2);
        for poset in [
            WeightPoset::antichain(2),
            WeightPoset::from_relations(2, &[(0, 1)]).unwrap(),
        ] {
            let q = build_qh(&a, &poset).unwrap();
            for lam in 0..2 {
                assert_eq!(q.standards[lam].dim, 1);
                assert_eq!(q.costandards[lam].dim, 1);
            }
            verify_heredity_chain(&a, &poset).unwrap();
        }
    }

    #[test]
    fn local_algebra_is_not_quasi_hereditary() {
        let a = corpus::truncated_polynomial(FieldMode::Q, 2, 1);
        let poset = WeightPoset::antichain(1);
        let err = build_qh(&a, &poset).unwrap_err();
        assert!(matches!(err, CoreError::NotQuasiHereditary(_)), "{err}");
        assert!(verify_heredity_chain(&a, &poset).is_err());
    }

    #[test]
    fn zigzag_is_not_quasi_hereditary() {
        let a = corpus::zigzag(FieldMode::Q);
        for poset in [
            WeightPoset::from_relations(2, &[(0, 1)]).unwrap(),
            WeightPoset::from_relations(2, &[(1, 0)]).unwrap(),
        ] {
            assert!(build_qh(&a, &poset).is_err());
            assert!(verify_heredity_chain(&a, &poset).is_err());
        }
    }

    #[test]
    fn costandards_live_in_nonpositive_grades() {
        let a = corpus::linear_quiver(FieldMode::Q, 3, false);
        let poset = WeightPoset::from_relations(3, &[(2, 1), (1, 0)]).unwrap();
        let q = build_qh(&a, &poset).unwrap();
        for nabla in &q.costandards {
            assert!(nabla.max_grade().unwrap_or(0) <= 0);
            // socle in grade 0: the grade-0 part is nonzero
            assert!(nabla.grade_indices(0).len() > 0);
        }
    }

    #[test]
    fn grade0_truncations_match_a0_standards() {
        // the standard modules of A_0 are the grade-0 components of the
        // standard modules of A
        let a = corpus::path_algebra_a2(FieldMode::Q, 1);
        let poset = WeightPoset::from_relations(2, &[(1, 0)]).unwrap();
        let q = build_qh(&a, &poset).unwrap();
        for lam in 0..2 {
            assert!(q.grade0_standards[lam].is_pure_grade(0));
            assert_eq!(q.grade0_standards[lam].dim, q.standards[lam].grade_indices(0).len());
        }
    }

    #[test]
    fn commuting_square_quasi_hereditary() {
        let a = corpus::commuting_square(FieldMode::Q);
        // dominance-like order: 0 above everything, 3 at the bottom
        let poset =
            WeightPoset::from_relations(4, &[(3, 1), (3, 2), (1, 0), (2, 0)]).unwrap();
        let q = build_qh(&a, &poset).unwrap();
        assert!(q.verified);
        verify_heredity_chain(&a, &poset).unwrap();
    }
}
