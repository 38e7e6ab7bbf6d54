//! Graded left modules over a [`GradedAlgebra`].
//!
//! Row conventions follow the algebra layer: module elements are row vectors,
//! `b_i` acts as `v -> v * action[i]`, and compatibility with multiplication
//! reads `sum_k c[i][j][k] action[k] = action[j] * action[i]`.

use std::sync::Arc;

use crate::algebra::GradedAlgebra;
use crate::error::{CoreError, Result};
use crate::matrix::ExactMatrix;
use crate::radical::radical_series;
use crate::scalar::{ExactScalar, FieldMode};

#[derive(Clone)]
pub struct GradedModule {
    pub algebra: Arc<GradedAlgebra>,
    pub dim: usize,
    /// One action matrix per algebra basis element.
    pub action: Vec<ExactMatrix>,
    /// Grade of each module basis vector (may be negative).
    pub grades: Vec<i64>,
}

impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GradedModule(dim={}, grades={:?})", self.dim, self.grades)
    }
}

impl GradedModule {
    pub fn new_unchecked(
        algebra: Arc<GradedAlgebra>,
        action: Vec<ExactMatrix>,
        grades: Vec<i64>,
    ) -> Self {
        GradedModule { dim: grades.len(), algebra, action, grades }
    }

    /// Builds a module and verifies the module axioms and grading
    /// compatibility exhaustively.
    pub fn new(
        algebra: Arc<GradedAlgebra>,
        action: Vec<ExactMatrix>,
        grades: Vec<i64>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(algebra, action, grades);
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        if self.action.len() != a.dim() {
            return Err(CoreError::ShapeMismatch("one action matrix per basis element".into()));
        }
        for act in &self.action {
            if act.rows() != self.dim || act.cols() != self.dim {
                return Err(CoreError::ShapeMismatch("action matrix size".into()));
            }
        }
        // unit acts as identity
        let u = self.action_of_element(a.unit());
        if u != ExactMatrix::identity(a.mode(), self.dim) {
            return Err(CoreError::Invalid("unit does not act as identity".into()));
        }
        // compatibility with multiplication
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let mut lhs = ExactMatrix::zeros(a.mode(), self.dim, self.dim);
                for (k, c) in a.structure_constant(i, j) {
                    lhs = lhs.add(&self.action[*k].scale(c))?;
                }
                let rhs = self.action[j].mul(&self.action[i])?;
                if lhs != rhs {
                    return Err(CoreError::Invalid(format!(
                        "module action incompatible with multiplication at ({i}, {j})"
                    )));
                }
            }
        }
        // grading: b of grade g maps M_j into M_{j+g}
        for i in 0..a.dim() {
            let g = a.grades()[i] as i64;
            for (r, s, v) in self.action[i].nonzero() {
                if !v.is_zero() && self.grades[s] != self.grades[r] + g {
                    return Err(CoreError::Invalid(format!(
                        "action of b{i} violates the grading at ({r}, {s})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn mode(&self) -> FieldMode {
        self.algebra.mode()
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn action_of_element(&self, elem: &[ExactScalar]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.mode(), self.dim, self.dim);
        for (i, c) in elem.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.action[i].scale(c)).expect("same shape");
            }
        }
        out
    }

    /// Grade shift: M<r> places the old M_i in degree i + r.
    pub fn shift(&self, r: i64) -> Self {
        GradedModule {
            algebra: Arc::clone(&self.algebra),
            dim: self.dim,
            action: self.action.clone(),
            grades: self.grades.iter().map(|g| g + r).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn min_grade(&self) -> Option<i64> {
        self.grades.iter().copied().min()
    }

    pub fn max_grade(&self) -> Option<i64> {
        self.grades.iter().copied().max()
    }

    pub fn is_pure_grade(&self, g: i64) -> bool {
        self.grades.iter().all(|&x| x == g)
    }

    /// Dimension of each occurring grade, as sorted (grade, dim) pairs.
    pub fn grade_dimensions(&self) -> Vec<(i64, usize)> {
        let mut map = std::collections::BTreeMap::new();
        for &g in &self.grades {
            *map.entry(g).or_insert(0) += 1;
        }
        map.into_iter().collect()
    }

    pub fn grade_indices(&self, g: i64) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.grades[i] == g).collect()
    }

    pub fn zero_module(algebra: &Arc<GradedAlgebra>) -> Self {
        let mode = algebra.mode();
        GradedModule {
            algebra: Arc::clone(algebra),
            dim: 0,
            action: (0..algebra.dim()).map(|_| ExactMatrix::zeros(mode, 0, 0)).collect(),
            grades: vec![],
        }
    }

    /// The algebra as a left module over itself, graded by its own grading.
    pub fn regular(algebra: &Arc<GradedAlgebra>) -> Self {
        let action =
            (0..algebra.dim()).map(|i| algebra.left_mult_matrix(&algebra.basis_vector(i))).collect();
        GradedModule {
            algebra: Arc::clone(algebra),
            dim: algebra.dim(),
            action,
            grades: algebra.grades().iter().map(|&g| g as i64).collect(),
        }
    }

    /// Submodule spanned by the given rows (must be action-invariant and
    /// graded). Returns the module and its inclusion as rows in M-coordinates.
    pub fn submodule(&self, span: &ExactMatrix) -> Result<(GradedModule, ExactMatrix)> {
        let (basis, grades, _) = graded_row_basis(span, &self.grades)?;
        let mut action = Vec::with_capacity(self.action.len());
        for act in &self.action {
            let images = basis.mul(act)?;
            let coords = basis
                .solve_left(&images)?
                .ok_or_else(|| CoreError::Invalid("span is not action-invariant".into()))?;
            action.push(coords);
        }
        Ok((
            GradedModule {
                algebra: Arc::clone(&self.algebra),
                dim: basis.rows(),
                action,
                grades,
            },
            basis,
        ))
    }

    /// Quotient by a graded invariant subspace. Returns the module, the
    /// projection (dim x qdim) and the representatives (qdim x dim).
    pub fn quotient(&self, sub: &ExactMatrix) -> Result<(GradedModule, ExactMatrix, ExactMatrix)> {
        let mode = self.mode();
        let (basis, _grades, pivots) = graded_row_basis(sub, &self.grades)?;
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.dim).filter(|i| !pivot_set.contains(i)).collect();
        let qdim = free.len();
        let free_pos: std::collections::HashMap<usize, usize> =
            free.iter().enumerate().map(|(a, &b)| (b, a)).collect();

        let mut projection = ExactMatrix::zeros(mode, self.dim, qdim);
        for t in 0..self.dim {
            if let Some(&fp) = free_pos.get(&t) {
                projection.set(t, fp, ExactScalar::one(mode));
            } else {
                // t is the pivot of exactly one basis row; that row reads
                // e_t + sum over free columns, so e_t = -(free part) mod sub
                let r = (0..basis.rows())
                    .find(|&r| {
                        pivots[r] == t
                    })
                    .expect("pivot row exists");
                for &f in &free {
                    let v = basis.get(r, f);
                    if !v.is_zero() {
                        projection.set(t, free_pos[&f], v.neg());
                    }
                }
            }
        }
        let mut reps = ExactMatrix::zeros(mode, qdim, self.dim);
        for (fp, &f) in free.iter().enumerate() {
            reps.set(fp, f, ExactScalar::one(mode));
        }
        let action = self
            .action
            .iter()
            .map(|act| reps.mul(act).and_then(|m| m.mul(&projection)))
            .collect::<Result<Vec<_>>>()?;
        let grades = free.iter().map(|&f| self.grades[f]).collect();
        Ok((
            GradedModule { algebra: Arc::clone(&self.algebra), dim: qdim, action, grades },
            projection,
            reps,
        ))
    }

    /// rad(A) . M as a row span in M-coordinates.
    pub fn radical_submodule(&self) -> Result<ExactMatrix> {
        let rs = radical_series(&self.algebra)?;
        let rad = rs.radical();
        let mut rows = ExactMatrix::zeros(self.mode(), 0, self.dim);
        for i in 0..rad.rows() {
            let act = self.action_of_element(&rad.row(i));
            rows = rows.vstack(&act)?;
        }
        Ok(rows.row_basis())
    }

    /// M / rad(A) M with the projection.
    pub fn head(&self) -> Result<(GradedModule, ExactMatrix)> {
        let rad = self.radical_submodule()?;
        let (h, proj, _) = self.quotient(&rad)?;
        Ok((h, proj))
    }

    /// Graded dual of a module over `self.algebra`, as a module over the
    /// opposite algebra: actions transpose and grades negate.
    pub fn dual(&self, opposite: &Arc<GradedAlgebra>) -> GradedModule {
        GradedModule {
            algebra: Arc::clone(opposite),
            dim: self.dim,
            action: self.action.iter().map(|m| m.transpose()).collect(),
            grades: self.grades.iter().map(|&g| -g).collect(),
        }
    }

    pub fn direct_sum(parts: &[&GradedModule]) -> Result<GradedModule> {
        let first = parts.first().ok_or_else(|| CoreError::Invalid("empty direct sum".into()))?;
        let algebra = Arc::clone(&first.algebra);
        if parts.iter().any(|p| !Arc::ptr_eq(&p.algebra, &algebra)) {
            return Err(CoreError::AlgebraMismatch);
        }
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let mode = algebra.mode();
        let mut action = Vec::with_capacity(algebra.dim());
        for i in 0..algebra.dim() {
            let mut act = ExactMatrix::zeros(mode, dim, dim);
            let mut off = 0;
            for p in parts {
                for (r, c, v) in p.action[i].nonzero() {
                    act.set(off + r, off + c, v.clone());
                }
                off += p.dim;
            }
            action.push(act);
        }
        let grades = parts.iter().flat_map(|p| p.grades.iter().copied()).collect();
        Ok(GradedModule { algebra, dim, action, grades })
    }
}

/// Canonical homogeneous basis of a graded row span: per-grade rref blocks
/// stacked by ascending grade. Returns (basis rows, row grades, pivot columns
/// aligned with rows). Errors if the span is not graded.
pub fn graded_row_basis(
    span: &ExactMatrix,
    col_grades: &[i64],
) -> Result<(ExactMatrix, Vec<i64>, Vec<usize>)> {
    let mode = span.mode();
    let n = col_grades.len();
    if span.cols() != n {
        return Err(CoreError::ShapeMismatch(format!("span columns {} vs grades {}", span.cols(), n)));
    }
    let total_rank = span.rank();
    let mut distinct: Vec<i64> = col_grades.to_vec();
    distinct.sort_unstable();
    distinct.dedup();

    let mut out = ExactMatrix::zeros(mode, 0, n);
    let mut grades = Vec::new();
    let mut pivot_cols = Vec::new();
    for &g in &distinct {
        let mut rows = Vec::new();
        for i in 0..span.rows() {
            let mut v = vec![ExactScalar::zero(mode); n];
            let mut nonzero = false;
            for j in 0..n {
                if col_grades[j] == g {
                    let c = span.get(i, j);
                    if !c.is_zero() {
                        nonzero = true;
                        v[j] = c.clone();
                    }
                }
            }
            if nonzero {
                rows.push(v);
            }
        }
        if rows.is_empty() {
            continue;
        }
        let block = ExactMatrix::from_rows(mode, rows)?;
        let (red, rank, pivots) = block.rref();
        out = out.vstack(&red.submatrix_rows(&(0..rank).collect::<Vec<_>>()))?;
        grades.extend(std::iter::repeat(g).take(rank));
        pivot_cols.extend(pivots);
    }
    if out.rows() != total_rank {
        return Err(CoreError::Invalid("subspace is not graded".into()));
    }
    Ok((out, grades, pivot_cols))
}

/// Finds a small generating set of the algebra (as a unital algebra), as
/// basis indices. Hom computations only need constraints at generators.
pub fn algebra_generators(a: &GradedAlgebra) -> Vec<usize> {
    let mode = a.mode();
    let dim = a.dim();
    let mut gens = Vec::new();
    let mut span = ExactMatrix::from_rows(mode, vec![a.unit().to_vec()])
        .expect("unit row")
        .row_basis();
    while span.rows() < dim {
        let next = (0..dim)
            .find(|&t| {
                let mut e = vec![ExactScalar::zero(mode); dim];
                e[t] = ExactScalar::one(mode);
                let em = ExactMatrix::from_rows(mode, vec![e]).expect("row");
                !span.row_span_contains(&em)
            })
            .expect("span is proper, a missing basis vector exists");
        gens.push(next);
        // close under multiplication
        let mut e = vec![ExactScalar::zero(mode); dim];
        e[next] = ExactScalar::one(mode);
        span = span
            .vstack(&ExactMatrix::from_rows(mode, vec![e]).expect("row"))
            .expect("same width")
            .row_basis();
        loop {
            let mut new_rows = Vec::new();
            for i in 0..span.rows() {
                for j in 0..span.rows() {
                    let p = a.product(&span.row(i), &span.row(j));
                    let pm = ExactMatrix::from_rows(mode, vec![p]).expect("row");
                    if !span.row_span_contains(&pm) {
                        new_rows.push(pm.row(0));
                    }
                }
            }
            if new_rows.is_empty() {
                break;
            }
            span = span
                .vstack(&ExactMatrix::from_rows(mode, new_rows).expect("rows"))
                .expect("same width")
                .row_basis();
        }
    }
    gens
}

/// Space of module maps M -> N as matrices h with v . h the image of v.
/// With `graded` set, only degree-0 maps (grade-matched entries) are allowed.
pub fn hom_space(m: &GradedModule, n: &GradedModule, graded: bool) -> Result<Vec<ExactMatrix>> {
    if !m.same_algebra(n) {
        return Err(CoreError::AlgebraMismatch);
    }
    let mode = m.mode();
    let vars: Vec<(usize, usize)> = (0..m.dim)
        .flat_map(|r| (0..n.dim).map(move |s| (r, s)))
        .filter(|&(r, s)| !graded || m.grades[r] == n.grades[s])
        .collect();
    if vars.is_empty() {
        return Ok(vec![]);
    }
    let var_pos: std::collections::HashMap<(usize, usize), usize> =
        vars.iter().enumerate().map(|(a, &b)| (b, a)).collect();
    let gens = algebra_generators(&m.algebra);
    let mut rows = Vec::new();
    for &g in &gens {
        let am = &m.action[g];
        let an = &n.action[g];
        // act_M(g) h - h act_N(g) = 0, entry (i, j)
        for i in 0..m.dim {
            for j in 0..n.dim {
                let mut row = vec![ExactScalar::zero(mode); vars.len()];
                let mut nonzero = false;
                for r in 0..m.dim {
                    let c = am.get(i, r);
                    if !c.is_zero() {
                        if let Some(&v) = var_pos.get(&(r, j)) {
                            row[v] = row[v].add(c);
                            nonzero = true;
                        }
                    }
                }
                for s in 0..n.dim {
                    let c = an.get(s, j);
                    if !c.is_zero() {
                        if let Some(&v) = var_pos.get(&(i, s)) {
                            row[v] = row[v].sub(c);
                            nonzero = true;
                        }
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        ExactMatrix::identity(mode, vars.len())
    } else {
        ExactMatrix::from_rows(mode, rows)?.right_nullspace_cols()
    };
    let mut out = Vec::new();
    for i in 0..basis.rows() {
        let mut h = ExactMatrix::zeros(mode, m.dim, n.dim);
        for (v, &(r, s)) in vars.iter().enumerate() {
            let c = basis.get(i, v);
            if !c.is_zero() {
                h.set(r, s, c.clone());
            }
        }
        out.push(h);
    }
    Ok(out)
}

/// Searches for a graded module isomorphism; cheap necessary conditions, the
/// hom-space basis elements, then seeded random combinations.
pub fn iso_search(m: &GradedModule, n: &GradedModule, seed: u64) -> Result<Option<ExactMatrix>> {
    if !m.same_algebra(n) {
        return Err(CoreError::AlgebraMismatch);
    }
    if m.dim != n.dim || m.grade_dimensions() != n.grade_dimensions() {
        return Ok(None);
    }
    if m.dim == 0 {
        return Ok(Some(ExactMatrix::zeros(m.mode(), 0, 0)));
    }
    let homs = hom_space(m, n, true)?;
    if homs.is_empty() {
        return Ok(None);
    }
    let invertible = |h: &ExactMatrix| h.rank() == m.dim;
    for h in &homs {
        if invertible(h) {
            return Ok(Some(h.clone()));
        }
    }
    // seeded combinations
    let mode = m.mode();
    let mut state = seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        state >> 33
    };
    for _ in 0..64 {
        let mut h = ExactMatrix::zeros(mode, m.dim, n.dim);
        for base in &homs {
            let c = match mode {
                FieldMode::Q => ExactScalar::from_i64(mode, (next() % 7) as i64 - 3),
                FieldMode::Fp(p) => ExactScalar::from_i64(mode, (next() % p) as i64),
            };
            h = h.add(&base.scale(&c))?;
        }
        if invertible(&h) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn regular_module_satisfies_axioms() {
        for a in [
            corpus::truncated_polynomial(FieldMode::Q, 3, 1),
            corpus::path_algebra_a2(FieldMode::Q, 1),
            corpus::zigzag(FieldMode::Fp(5)),
        ] {
            GradedModule::regular(&a).validate().unwrap();
        }
    }

    #[test]
    fn shift_is_a_group_action() {
        let a = corpus::truncated_polynomial(FieldMode::Q, 2, 1);
        let m = GradedModule::regular(&a);
        assert_eq!(m.shift(0).grades, m.grades);
        assert_eq!(m.shift(2).shift(-2).grades, m.grades);
        assert_eq!(m.shift(3).grades, vec![3, 4]);
    }

    #[test]
    fn pure_module_shifts_purely() {
        let a = corpus::product_of_fields(FieldMode::Q, 2);
        let m = GradedModule::regular(&a);
        assert!(m.is_pure_grade(0));
        assert!(m.shift(3).is_pure_grade(3));
    }

    #[test]
    fn head_of_regular_module() {
        let a = corpus::truncated_polynomial(FieldMode::Q, 3, 1);
        let m = GradedModule::regular(&a);
        let (h, _) = m.head().unwrap();
        assert_eq!(h.dim, 1);
        assert!(h.is_pure_grade(0));
    }

    #[test]
    fn submodule_and_quotient_dims() {
        let a = corpus::truncated_polynomial(FieldMode::Q, 3, 1);
        let m = GradedModule::regular(&a);
        let rad = m.radical_submodule().unwrap();
        assert_eq!(rad.rows(), 2);
        let (sub, _) = m.submodule(&rad).unwrap();
        sub.validate().unwrap();
        let (q, _, _) = m.quotient(&rad).unwrap();
        q.validate().unwrap();
        assert_eq!(sub.dim + q.dim, m.dim);
    }

    #[test]
    fn generators_of_matrix_algebra_are_few() {
        let a = corpus::matrix_algebra(FieldMode::Q, 2);
        let gens = algebra_generators(&a);
        assert!(gens.len() <= 3, "got {gens:?}");
    }

    #[test]
    fn endomorphisms_of_regular_module() {
        // End_A(A) = A^op, so its dimension is dim A
        let a = corpus::path_algebra_a2(FieldMode::Q, 1);
        let m = GradedModule::regular(&a);
        let h = hom_space(&m, &m, false).unwrap();
        assert_eq!(h.len(), 3);
    }

    #[test]
    fn iso_search_finds_identity_like_maps() {
        let a = corpus::zigzag(FieldMode::Q);
        let m = GradedModule::regular(&a);
        let iso = iso_search(&m, &m, 0).unwrap();
        assert!(iso.is_some());
        assert!(iso_search(&m, &m.shift(1), 0).unwrap().is_none());
    }
}
