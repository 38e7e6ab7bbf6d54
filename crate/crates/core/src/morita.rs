//! Constructive graded Morita calculus: matrix inflation, full idempotents,
//! grade-0 idempotent extraction, corner algebras, and the explicit
//! grade-preserving equivalence pair (F, F†).
//!
//! F sends a graded B-module N to e₀N with the inherited grading. F† sends a
//! graded module Y over the corner A = e₀Be₀ to (Be₀ ⊗ Y)/R where R is
//! spanned by the relators st ⊗ y − s ⊗ ty, graded by total degree. The
//! functors are materialized as explicit modules so graded isomorphism can be
//! checked by matrices.

use std::sync::Arc;

use crate::algebra::{build_algebra, AlgebraSpec, GradedAlgebra, SparseVec};
use crate::error::{CoreError, Result};
use crate::matrix::ExactMatrix;
use crate::module::{graded_row_basis, iso_search, GradedModule};
use crate::scalar::ExactScalar;

/// M_n(B) with grade(e_ij ⊗ x) = grade(x). Basis order: (i, j, x) with the
/// B-basis index x fastest. Inherits B's idempotents as e_jj ⊗ f.
pub fn inflate(b: &Arc<GradedAlgebra>, n: usize) -> Result<Arc<GradedAlgebra>> {
    if n == 0 {
        return Err(CoreError::Invalid("inflation size must be at least 1".into()));
    }
    let mode = b.mode();
    let d = b.dim();
    let dim = n * n * d;
    let idx = |i: usize, j: usize, x: usize| (i * n + j) * d + x;
    let mut mult = vec![vec![SparseVec::new(); dim]; dim];
    for i in 0..n {
        for j in 0..n {
            for x in 0..d {
                for k in 0..n {
                    for l in 0..n {
                        if j != k {
                            continue;
                        }
                        for y in 0..d {
                            // (e_ij ⊗ x)(e_kl ⊗ y) = e_il ⊗ xy
                            mult[idx(i, j, x)][idx(k, l, y)] = b
                                .structure_constant(x, y)
                                .iter()
                                .map(|(z, c)| (idx(i, l, *z), c.clone()))
                                .collect();
                        }
                    }
                }
            }
        }
    }
    let mut unit = vec![ExactScalar::zero(mode); dim];
    for i in 0..n {
        for (x, c) in b.unit().iter().enumerate() {
            unit[idx(i, i, x)] = c.clone();
        }
    }
    let grades: Vec<usize> = (0..dim).map(|t| b.grades()[t % d]).collect();
    let labels: Vec<String> = (0..n)
        .flat_map(|i| {
            let lb = b.labels().to_vec();
            (0..n).flat_map(move |j| {
                let lb = lb.clone();
                lb.into_iter()
                    .map(move |s| format!("E{}{}({s})", i + 1, j + 1))
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    // idempotents: e_jj ⊗ f over B's family (or its unit)
    let base_idems: Vec<Vec<ExactScalar>> = match b.idempotents() {
        Some(es) => es.to_vec(),
        None => vec![b.unit().to_vec()],
    };
    let mut idempotents = Vec::new();
    for i in 0..n {
        for f in &base_idems {
            let mut e = vec![ExactScalar::zero(mode); dim];
            for (x, c) in f.iter().enumerate() {
                e[idx(i, i, x)] = c.clone();
            }
            idempotents.push(e);
        }
    }
    // radical of M_n(B) is M_n(rad B)
    let radical = b.supplied_radical().map(|r| {
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for t in 0..r.rows() {
                    let mut v = vec![ExactScalar::zero(mode); dim];
                    for (x, c) in r.row(t).iter().enumerate() {
                        if !c.is_zero() {
                            v[idx(i, j, x)] = c.clone();
                        }
                    }
                    rows.push(v);
                }
            }
        }
        if rows.is_empty() {
            ExactMatrix::zeros(mode, 0, dim)
        } else {
            ExactMatrix::from_rows(mode, rows).expect("rows")
        }
    });
    build_algebra(AlgebraSpec {
        mode,
        dim,
        labels,
        mult,
        unit,
        grades,
        idempotents: Some(idempotents),
        radical_basis: radical,
    })
}

/// Fullness: span{x e y} over all basis x, y equals B. The element must be
/// idempotent.
pub fn is_full_idempotent(b: &Arc<GradedAlgebra>, e: &[ExactScalar]) -> Result<bool> {
    if !b.is_idempotent(e) {
        return Err(CoreError::NotIdempotent);
    }
    Ok(span_beb(b, e)?.rows() == b.dim())
}

fn span_beb(b: &GradedAlgebra, e: &[ExactScalar]) -> Result<ExactMatrix> {
    let mode = b.mode();
    let mut rows = Vec::new();
    for i in 0..b.dim() {
        let xe = b.product(&b.basis_vector(i), e);
        for j in 0..b.dim() {
            rows.push(b.product(&xe, &b.basis_vector(j)));
        }
    }
    Ok(ExactMatrix::from_rows(mode, rows)?.row_basis())
}

/// The grade-0 homogeneous part of an idempotent is again idempotent with the
/// same projection modulo B_{>0}; verified, along with dim Be₀ = dim Be and
/// equal heads.
pub fn grade0_idempotent(b: &Arc<GradedAlgebra>, e: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
    if !b.is_idempotent(e) {
        return Err(CoreError::NotIdempotent);
    }
    let e0 = b.homogeneous_part(e, 0);
    if !b.is_idempotent(&e0) {
        return Err(CoreError::Invalid(
            "grade-0 part of an idempotent failed to be idempotent".into(),
        ));
    }
    // Be and Be0 have equal dimension and the same head (their difference
    // e - e0 sits in the nilpotent ideal B_{>0})
    let dim_be = left_ideal_span(b, e)?.rows();
    let dim_be0 = left_ideal_span(b, &e0)?.rows();
    if dim_be != dim_be0 {
        return Err(CoreError::Invalid(format!(
            "dim Be = {dim_be} but dim Be0 = {dim_be0}"
        )));
    }
    Ok(e0)
}

fn left_ideal_span(b: &GradedAlgebra, e: &[ExactScalar]) -> Result<ExactMatrix> {
    let mode = b.mode();
    let rows: Vec<Vec<ExactScalar>> =
        (0..b.dim()).map(|i| b.product(&b.basis_vector(i), e)).collect();
    Ok(ExactMatrix::from_rows(mode, rows)?.row_basis())
}

/// Corner data: the algebra A = e₀Be₀ with its inherited grading plus the
/// bases needed to apply F and F†.
#[derive(Debug)]
pub struct CornerData {
    pub b: Arc<GradedAlgebra>,
    pub e0: Vec<ExactScalar>,
    pub corner: Arc<GradedAlgebra>,
    /// Basis of e₀Be₀ as rows in B-coordinates (aligned with `corner`).
    pub corner_basis: ExactMatrix,
    pub corner_grades: Vec<usize>,
    /// Basis of Be₀ as rows in B-coordinates.
    pub be0_basis: ExactMatrix,
    pub be0_grades: Vec<usize>,
}

/// Builds the corner algebra behind a full grade-0 idempotent.
pub fn corner(b: &Arc<GradedAlgebra>, e0: &[ExactScalar]) -> Result<CornerData> {
    let mode = b.mode();
    if !b.is_idempotent(e0) {
        return Err(CoreError::NotIdempotent);
    }
    if b.homogeneous_part(e0, 0) != e0 {
        return Err(CoreError::NotGradeZero);
    }
    if span_beb(b, e0)?.rows() != b.dim() {
        return Err(CoreError::NotFull { got: span_beb(b, e0)?.rows(), dim: b.dim() });
    }
    let col_grades: Vec<i64> = b.grades().iter().map(|&g| g as i64).collect();

    // e0 B e0
    let mut rows = Vec::new();
    for i in 0..b.dim() {
        rows.push(b.product(e0, &b.product(&b.basis_vector(i), e0)));
    }
    let (corner_basis, cg, _) =
        graded_row_basis(&ExactMatrix::from_rows(mode, rows)?, &col_grades)?;
    let corner_grades: Vec<usize> = cg.iter().map(|&g| g as usize).collect();
    let cdim = corner_basis.rows();
    let mut mult = vec![vec![SparseVec::new(); cdim]; cdim];
    for i in 0..cdim {
        for j in 0..cdim {
            let p = b.product(&corner_basis.row(i), &corner_basis.row(j));
            let coords = corner_basis
                .solve_left(&ExactMatrix::from_rows(mode, vec![p])?)?
                .ok_or_else(|| CoreError::Invalid("corner not closed under products".into()))?;
            mult[i][j] = (0..cdim)
                .filter(|&k| !coords.get(0, k).is_zero())
                .map(|k| (k, coords.get(0, k).clone()))
                .collect();
        }
    }
    let unit_coords = corner_basis
        .solve_left(&ExactMatrix::from_rows(mode, vec![e0.to_vec()])?)?
        .ok_or_else(|| CoreError::Invalid("e0 outside its corner".into()))?
        .row(0);
    // transported idempotents: e0 f e0 when they form a complete orthogonal
    // family inside the corner; otherwise just the corner unit
    let transported: Option<Vec<Vec<ExactScalar>>> = b.idempotents().and_then(|es| {
        let cands: Vec<Vec<ExactScalar>> = es
            .iter()
            .map(|f| b.product(e0, &b.product(f, e0)))
            .filter(|v| v.iter().any(|c| !c.is_zero()))
            .collect();
        let ok = cands.iter().enumerate().all(|(x, u)| {
            cands.iter().enumerate().all(|(y, v)| {
                let p = b.product(u, v);
                if x == y {
                    p == *u
                } else {
                    p.iter().all(|c| c.is_zero())
                }
            })
        }) && {
            let mut sum = vec![ExactScalar::zero(mode); b.dim()];
            for u in &cands {
                for (k, c) in u.iter().enumerate() {
                    sum[k] = sum[k].add(c);
                }
            }
            sum == e0
        };
        if !ok {
            return None;
        }
        // express in corner coordinates
        let mut out = Vec::new();
        for u in &cands {
            let coords = corner_basis
                .solve_left(&ExactMatrix::from_rows(mode, vec![u.clone()]).ok()?)
                .ok()??;
            out.push(coords.row(0));
        }
        Some(out)
    });
    // radical of the corner: e0 (rad B) e0
    let radical = b
        .supplied_radical()
        .map(|r| -> Result<ExactMatrix> {
            let mut rows = Vec::new();
            for t in 0..r.rows() {
                let v = b.product(e0, &b.product(&r.row(t), e0));
                let coords = corner_basis
                    .solve_left(&ExactMatrix::from_rows(mode, vec![v])?)?
                    .ok_or_else(|| CoreError::Invalid("corner radical escapes".into()))?;
                rows.push(coords.row(0));
            }
            if rows.is_empty() {
                Ok(ExactMatrix::zeros(mode, 0, cdim))
            } else {
                Ok(ExactMatrix::from_rows(mode, rows)?)
            }
        })
        .transpose()?;
    let corner_alg = build_algebra(AlgebraSpec {
        mode,
        dim: cdim,
        labels: (0..cdim).map(|t| format!("c{t}")).collect(),
        mult,
        unit: unit_coords,
        grades: corner_grades.clone(),
        idempotents: transported,
        radical_basis: radical,
    })?;

    let (be0_basis, bg, _) =
        graded_row_basis(&left_ideal_span(b, e0)?, &col_grades)?;
    Ok(CornerData {
        b: Arc::clone(b),
        e0: e0.to_vec(),
        corner: corner_alg,
        corner_basis,
        corner_grades,
        be0_basis,
        be0_grades: bg.iter().map(|&g| g as usize).collect(),
    })
}

impl CornerData {
    /// F: N ↦ e₀N with the inherited grading.
    pub fn apply(&self, n: &GradedModule) -> Result<GradedModule> {
        if !Arc::ptr_eq(&n.algebra, &self.b) {
            return Err(CoreError::AlgebraMismatch);
        }
        let fixed = n.action_of_element(&self.e0);
        let (basis, grades, _) = graded_row_basis(&fixed, &n.grades)?;
        let mut action = Vec::with_capacity(self.corner.dim());
        for i in 0..self.corner.dim() {
            let act = n.action_of_element(&self.corner_basis.row(i));
            let images = basis.mul(&act)?;
            let coords = basis
                .solve_left(&images)?
                .ok_or_else(|| CoreError::Invalid("e0N not invariant under the corner".into()))?;
            action.push(coords);
        }
        Ok(GradedModule::new_unchecked(Arc::clone(&self.corner), action, grades))
    }

    /// F on a module map φ: N -> N' (row convention): the restriction of φ
    /// to the e₀-fixed subspaces, in the bases chosen by [`Self::apply`].
    pub fn apply_map(
        &self,
        n: &GradedModule,
        n2: &GradedModule,
        phi: &ExactMatrix,
    ) -> Result<ExactMatrix> {
        let col_grades: Vec<i64> = n.grades.clone();
        let (basis_n, _, _) = graded_row_basis(&n.action_of_element(&self.e0), &col_grades)?;
        let (basis_n2, _, _) =
            graded_row_basis(&n2.action_of_element(&self.e0), &n2.grades)?;
        let images = basis_n.mul(phi)?;
        basis_n2
            .solve_left(&images)?
            .ok_or_else(|| CoreError::Invalid("map does not restrict to the corners".into()))
    }

    /// F†: Y ↦ (Be₀ ⊗ Y) / span{st ⊗ y − s ⊗ ty}, graded by total degree.
    pub fn apply_inverse(&self, y: &GradedModule) -> Result<GradedModule> {
        if !Arc::ptr_eq(&y.algebra, &self.corner) {
            return Err(CoreError::AlgebraMismatch);
        }
        let mode = y.mode();
        let nb = self.be0_basis.rows();
        let dim_v = nb * y.dim;
        let vidx = |s: usize, t: usize| s * y.dim + t;
        let vgrades: Vec<i64> = (0..dim_v)
            .map(|v| self.be0_grades[v / y.dim] as i64 + y.grades[v % y.dim])
            .collect();

        // relators st ⊗ y - s ⊗ ty for s in Be0, t in e0Be0, y in Y (basis)
        let mut rel_rows = Vec::new();
        for s in 0..nb {
            for t in 0..self.corner.dim() {
                // st in Be0 coordinates
                let st = self.b.product(&self.be0_basis.row(s), &self.corner_basis.row(t));
                let st_coords = self
                    .be0_basis
                    .solve_left(&ExactMatrix::from_rows(mode, vec![st])?)?
                    .ok_or_else(|| CoreError::Invalid("Be0 not right-stable".into()))?
                    .row(0);
                let ty = &y.action[..]; // action over corner basis
                for yy in 0..y.dim {
                    let mut row = vec![ExactScalar::zero(mode); dim_v];
                    let mut nonzero = false;
                    for (s2, c) in st_coords.iter().enumerate() {
                        if !c.is_zero() {
                            row[vidx(s2, yy)] = row[vidx(s2, yy)].add(c);
                            nonzero = true;
                        }
                    }
                    // - s ⊗ (t·y): t acts through the corner action matrix
                    for y2 in 0..y.dim {
                        let c = ty[t].get(yy, y2);
                        if !c.is_zero() {
                            row[vidx(s, y2)] = row[vidx(s, y2)].sub(c);
                            nonzero = true;
                        }
                    }
                    if nonzero {
                        rel_rows.push(row);
                    }
                }
            }
        }
        let relators = if rel_rows.is_empty() {
            ExactMatrix::zeros(mode, 0, dim_v)
        } else {
            ExactMatrix::from_rows(mode, rel_rows)?
        };

        // B-action on V: b · (s ⊗ y) = (b s) ⊗ y
        let mut v_action = Vec::with_capacity(self.b.dim());
        for i in 0..self.b.dim() {
            let mut act = ExactMatrix::zeros(mode, dim_v, dim_v);
            // images of the Be0 basis under left multiplication
            let lm = self.b.left_mult_matrix(&self.b.basis_vector(i));
            let images = self.be0_basis.mul(&lm)?;
            let coords = self.be0_basis.solve_left(&images)?.ok_or_else(|| {
                CoreError::Invalid("Be0 not stable under left multiplication".into())
            })?;
            for s in 0..nb {
                for s2 in 0..nb {
                    let c = coords.get(s, s2);
                    if !c.is_zero() {
                        for t in 0..y.dim {
                            act.set(vidx(s, t), vidx(s2, t), c.clone());
                        }
                    }
                }
            }
            v_action.push(act);
        }
        let v_module = GradedModule::new_unchecked(Arc::clone(&self.b), v_action, vgrades);
        let (z, _, _) = v_module.quotient(&relators)?;
        Ok(z)
    }
}

/// Round-trip report for the equivalence pair on a list of test modules.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    /// Per test module over B: F†(F(N)) ≅ N as graded modules.
    pub b_side: Vec<bool>,
    /// Per test module over the corner: F(F†(Y)) ≅ Y.
    pub corner_side: Vec<bool>,
    /// Grade purity preserved in both directions.
    pub purity: bool,
}

impl EquivalenceReport {
    pub fn all_pass(&self) -> bool {
        self.purity && self.b_side.iter().all(|&x| x) && self.corner_side.iter().all(|&x| x)
    }
}

pub fn verify_equivalence_pair(
    data: &CornerData,
    b_modules: &[GradedModule],
    corner_modules: &[GradedModule],
    seed: u64,
) -> Result<EquivalenceReport> {
    let mut b_side = Vec::new();
    for n in b_modules {
        let round = data.apply_inverse(&data.apply(n)?)?;
        b_side.push(iso_search(&round, n, seed)?.is_some());
    }
    let mut corner_side = Vec::new();
    for y in corner_modules {
        let round = data.apply(&data.apply_inverse(y)?)?;
        corner_side.push(iso_search(&round, y, seed)?.is_some());
    }
    // purity: a pure module maps to a pure module of the same grade
    let mut purity = true;
    for n in b_modules {
        if let Some(g) = pure_grade(n) {
            let f = data.apply(n)?;
            if f.dim > 0 && pure_grade(&f) != Some(g) {
                purity = false;
            }
        }
    }
    for y in corner_modules {
        if let Some(g) = pure_grade(y) {
            let f = data.apply_inverse(y)?;
            if f.dim > 0 && pure_grade(&f) != Some(g) {
                purity = false;
            }
        }
    }
    Ok(EquivalenceReport { b_side, corner_side, purity })
}

fn pure_grade(m: &GradedModule) -> Option<i64> {
    let g = *m.grades.first()?;
    m.is_pure_grade(g).then_some(g)
}

/// λ-class correspondence through F: simple L of B maps to the corner simple
/// F(L); returns `map[b_class] = corner_class`.
pub fn simple_correspondence(data: &CornerData, seed: u64) -> Result<Vec<usize>> {
    let b_data = crate::simples::simples_and_projectives(&data.b)?;
    let c_data = crate::simples::simples_and_projectives(&data.corner)?;
    if b_data.count != c_data.count {
        return Err(CoreError::Invalid(
            "corner has a different number of simple classes".into(),
        ));
    }
    let mut map = Vec::with_capacity(b_data.count);
    for l in &b_data.simples {
        let fl = data.apply(l)?;
        let mut found = None;
        for (c, lc) in c_data.simples.iter().enumerate() {
            if iso_search(&fl, lc, seed)?.is_some() {
                found = Some(c);
                break;
            }
        }
        map.push(found.ok_or_else(|| {
            CoreError::Invalid("image of a simple matches no corner simple".into())
        })?);
    }
    Ok(map)
}
