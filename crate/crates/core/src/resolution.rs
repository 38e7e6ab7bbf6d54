//! Minimal graded projective resolutions.
//!
//! Every step is a projective cover: the head of the current syzygy is lifted
//! summand by summand, so differentials land in the radical of the next term
//! and linearity/Koszulity read directly off the recorded (λ, shift) data.

use crate::error::{CoreError, Result};
use crate::matrix::ExactMatrix;
use crate::module::GradedModule;
use crate::scalar::ExactScalar;
use crate::simples::SimplesData;

/// One term of a resolution: a finite direct sum of shifted projectives
/// P(λ)<r>, realized as an explicit module.
#[derive(Debug, Clone)]
pub struct ResolutionTerm {
    /// (λ, shift) per summand, in block order.
    pub summands: Vec<(usize, i64)>,
    pub module: GradedModule,
    /// Start of each summand block in the module coordinates.
    pub block_offsets: Vec<usize>,
}

impl ResolutionTerm {
    /// Coordinates of the generator of summand `s` inside the realized module.
    pub fn generator_row(&self, data: &SimplesData, s: usize) -> Vec<ExactScalar> {
        let mode = self.module.mode();
        let (lam, _) = self.summands[s];
        let mut v = vec![ExactScalar::zero(mode); self.module.dim];
        for (l, c) in data.gen_coords[lam].iter().enumerate() {
            v[self.block_offsets[s] + l] = c.clone();
        }
        v
    }
}

#[derive(Debug, Clone)]
pub struct GradedResolution {
    /// terms[0] covers the module; terms[i] covers the i-th syzygy.
    pub terms: Vec<ResolutionTerm>,
    /// differentials[i]: terms[i+1] -> terms[i], as a (dim x dim) row-map.
    pub differentials: Vec<ExactMatrix>,
    /// terms[0] -> M.
    pub augmentation: ExactMatrix,
    /// True when the resolution reached a zero syzygy within the bound.
    pub terminated: bool,
}

impl GradedResolution {
    pub fn length(&self) -> usize {
        self.terms.len()
    }

    pub fn term(&self, i: usize) -> Option<&ResolutionTerm> {
        self.terms.get(i)
    }
}

/// Builds the projective cover of `m`: a sum of P(λ)<r> matching the graded
/// head of `m`, together with the covering map (term -> m, row convention).
fn projective_cover(
    data: &SimplesData,
    m: &GradedModule,
) -> Result<(ResolutionTerm, ExactMatrix)> {
    let a = &m.algebra;
    let mode = m.mode();
    if m.dim == 0 {
        let term = ResolutionTerm {
            summands: vec![],
            module: GradedModule::zero_module(a),
            block_offsets: vec![],
        };
        return Ok((term, ExactMatrix::zeros(mode, 0, 0)));
    }
    let rad_m = m.radical_submodule()?;
    let (head, _proj, reps) = m.quotient(&rad_m)?;

    // summands: for each head grade r and class λ, dim e_λ H_r copies of P(λ)<r>,
    // with generator targets lifted to m
    let mut summands = Vec::new();
    let mut targets: Vec<Vec<ExactScalar>> = Vec::new();
    let mut grades_seen: Vec<i64> = head.grades.clone();
    grades_seen.sort_unstable();
    grades_seen.dedup();
    for &r in &grades_seen {
        for lam in 0..data.count {
            let e = &data.idempotents[data.reps[lam]];
            let act_e = head.action_of_element(e);
            // rows of e·H restricted to grade r
            let rows: Vec<Vec<ExactScalar>> = head
                .grade_indices(r)
                .iter()
                .map(|&i| act_e.row(i))
                .collect();
            if rows.is_empty() {
                continue;
            }
            let span = ExactMatrix::from_rows(mode, rows)?.row_basis();
            for i in 0..span.rows() {
                // lift the head vector to m and force e·v = v
                let h = span.row(i);
                let v = ExactMatrix::from_rows(mode, vec![h])?.mul(&reps)?.row(0);
                let v = {
                    let av = m.action_of_element(e);
                    ExactMatrix::from_rows(mode, vec![v])?.mul(&av)?.row(0)
                };
                summands.push((lam, r));
                targets.push(v);
            }
        }
    }

    let parts: Vec<GradedModule> =
        summands.iter().map(|&(lam, r)| data.projectives[lam].shift(r)).collect();
    let refs: Vec<&GradedModule> = parts.iter().collect();
    let module = if refs.is_empty() {
        GradedModule::zero_module(a)
    } else {
        GradedModule::direct_sum(&refs)?
    };
    let mut block_offsets = Vec::with_capacity(summands.len());
    let mut off = 0;
    for &(lam, _) in &summands {
        block_offsets.push(off);
        off += data.projectives[lam].dim;
    }

    // covering map: basis vector x of P(λ) block s goes to x · target_s
    let mut cover = ExactMatrix::zeros(mode, module.dim, m.dim);
    for (s, &(lam, _)) in summands.iter().enumerate() {
        for (l, x) in data.proj_elements[lam].iter().enumerate() {
            let img = ExactMatrix::from_rows(mode, vec![targets[s].clone()])?
                .mul(&m.action_of_element(x))?;
            for j in 0..m.dim {
                let v = img.get(0, j);
                if !v.is_zero() {
                    cover.set(block_offsets[s] + l, j, v.clone());
                }
            }
        }
    }
    if cover.rank() != m.dim {
        return Err(CoreError::Invalid("projective cover is not surjective".into()));
    }
    Ok((ResolutionTerm { summands, module, block_offsets }, cover))
}

/// Incremental resolution: one projective-cover step at a time, so callers
/// scanning for a violation can stop before the terms grow.
pub struct ResolutionBuilder<'a> {
    data: &'a SimplesData,
    terms: Vec<ResolutionTerm>,
    differentials: Vec<ExactMatrix>,
    augmentation: ExactMatrix,
    current_map: ExactMatrix,
    terminated: bool,
}

impl<'a> ResolutionBuilder<'a> {
    pub fn new(data: &'a SimplesData, m: &GradedModule) -> Result<Self> {
        let (term0, augmentation) = projective_cover(data, m)?;
        Ok(ResolutionBuilder {
            data,
            terms: vec![term0],
            differentials: Vec::new(),
            current_map: augmentation.clone(),
            augmentation,
            terminated: false,
        })
    }

    pub fn terminated(&mut self) -> bool {
        if !self.terminated && self.current_map.left_nullspace().rows() == 0 {
            self.terminated = true;
        }
        self.terminated
    }

    pub fn last_term(&self) -> &ResolutionTerm {
        self.terms.last().expect("at least the cover")
    }

    /// Adds the next term; returns false when the resolution has terminated.
    pub fn step(&mut self) -> Result<bool> {
        let kernel_span = self.current_map.left_nullspace();
        if kernel_span.rows() == 0 {
            self.terminated = true;
            return Ok(false);
        }
        let last = self.terms.last().expect("cover");
        let (syzygy, inclusion) = last.module.submodule(&kernel_span.row_basis())?;
        let (next_term, cover) = projective_cover(self.data, &syzygy)?;
        let d = cover.mul(&inclusion)?;
        self.current_map = cover;
        self.differentials.push(d);
        self.terms.push(next_term);
        Ok(true)
    }

    pub fn finish(mut self) -> GradedResolution {
        let terminated = self.terminated();
        GradedResolution {
            terms: self.terms,
            differentials: self.differentials,
            augmentation: self.augmentation,
            terminated,
        }
    }
}

/// Minimal graded projective resolution of `m`, to `max_length` syzygy steps
/// or to termination, whichever comes first.
pub fn minimal_graded_resolution(
    data: &SimplesData,
    m: &GradedModule,
    max_length: usize,
) -> Result<GradedResolution> {
    let mut builder = ResolutionBuilder::new(data, m)?;
    for _ in 0..max_length {
        if !builder.step()? {
            break;
        }
    }
    Ok(builder.finish())
}

/// Linearity of a module with head in grade 0: every resolution term i must
/// be a sum of P(λ)<i> only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearityReport {
    pub linear: bool,
    /// On failure: (homological degree, offending shift).
    pub failure: Option<(usize, i64)>,
    /// True when the verdict holds only up to truncation.
    pub truncated: bool,
}

pub fn is_linear(
    data: &SimplesData,
    m: &GradedModule,
    max_length: usize,
) -> Result<LinearityReport> {
    let (head, _) = m.head()?;
    if !head.is_pure_grade(0) {
        return Err(CoreError::HeadNotPure);
    }
    // step incrementally and stop at the first offending shift; wild
    // resolutions grow exponentially and must not be expanded past a failure
    let mut builder = ResolutionBuilder::new(data, m)?;
    let mut degree = 0usize;
    loop {
        for &(_, r) in &builder.last_term().summands {
            if r != degree as i64 {
                return Ok(LinearityReport {
                    linear: false,
                    failure: Some((degree, r)),
                    truncated: false,
                });
            }
        }
        if degree == max_length || !builder.step()? {
            break;
        }
        degree += 1;
    }
    Ok(LinearityReport { linear: true, failure: None, truncated: !builder.terminated() })
}

/// Checks minimality: differentials must vanish after passing to heads,
/// i.e. no projective summand splits off. Used by the test suites.
pub fn differentials_vanish_on_heads(res: &GradedResolution) -> Result<bool> {
    for (i, d) in res.differentials.iter().enumerate() {
        let src = &res.terms[i + 1].module;
        let dst = &res.terms[i].module;
        let rad = dst.radical_submodule()?;
        // image rows must lie inside rad·(dst)
        let img = ExactMatrix::from_rows(
            src.mode(),
            (0..src.dim).map(|r| d.row(r)).collect::<Vec<_>>(),
        )?;
        if img.rows() > 0 && !rad.row_span_contains(&img) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::FieldMode;
    use crate::simples::simples_and_projectives;

    #[test]
    fn projective_resolves_in_zero_steps() {
        let a = corpus::path_algebra_a2(FieldMode::Q, 1);
        let data = simples_and_projectives(&a).unwrap();
        let p = data.projectives[0].clone();
        let res = minimal_graded_resolution(&data, &p, 10).unwrap();
        assert!(res.terminated);
        assert_eq!(res.terms.len(), 1);
        assert_eq!(res.terms[0].summands, vec![(0, 0)]);
    }

    #[test]
    fn koszul_pattern_for_dual_numbers() {
        // k over k[x]/(x^2): one P shifted by n at each step n
        let a = corpus::truncated_polynomial(FieldMode::Q, 2, 1);
        let data = simples_and_projectives(&a).unwrap();
        let k = data.simples[0].clone();
        let res = minimal_graded_resolution(&data, &k, 5).unwrap();
        assert!(!res.terminated);
        assert_eq!(res.terms.len(), 6);
        for (i, t) in res.terms.iter().enumerate() {
            assert_eq!(t.summands, vec![(0, i as i64)]);
        }
        assert!(differentials_vanish_on_heads(&res).unwrap());
        assert!(is_linear(&data, &k, 5).unwrap().linear);
    }

    #[test]
    fn simple_over_a2_path_algebra() {
        // 0 -> P(2)<1> -> P(1) -> L(1) -> 0
        let a = corpus::path_algebra_a2(FieldMode::Q, 1);
        let data = simples_and_projectives(&a).unwrap();
        let l1 = data.simples[0].clone();
        let res = minimal_graded_resolution(&data, &l1, 10).unwrap();
        assert!(res.terminated);
        assert_eq!(res.terms.len(), 2);
        assert_eq!(res.terms[0].summands, vec![(0, 0)]);
        assert_eq!(res.terms[1].summands, vec![(1, 1)]);
        assert!(is_linear(&data, &l1, 10).unwrap().linear);
    }

    #[test]
    fn cube_zero_breaks_linearity() {
        // k over k[x]/(x^3): second syzygy generated in grade 3, not 2
        let a = corpus::truncated_polynomial(FieldMode::Q, 3, 1);
        let data = simples_and_projectives(&a).unwrap();
        let k = data.simples[0].clone();
        let rep = is_linear(&data, &k, 6).unwrap();
        assert!(!rep.linear);
        assert_eq!(rep.failure, Some((2, 3)));
    }

    #[test]
    fn head_purity_precondition() {
        let a = corpus::truncated_polynomial(FieldMode::Q, 2, 1);
        let data = simples_and_projectives(&a).unwrap();
        let shifted = data.simples[0].shift(2);
        assert_eq!(is_linear(&data, &shifted, 4).unwrap_err(), CoreError::HeadNotPure);
    }

    #[test]
    fn exactness_spot_check() {
        // image of d equals kernel of the previous map for the zigzag simple
        let a = corpus::zigzag(FieldMode::Q);
        let data = simples_and_projectives(&a).unwrap();
        let l = data.simples[0].clone();
        let res = minimal_graded_resolution(&data, &l, 4).unwrap();
        for i in 0..res.differentials.len() {
            let prev = if i == 0 { &res.augmentation } else { &res.differentials[i - 1] };
            let ker = prev.left_nullspace();
            let d = &res.differentials[i];
            let img = ExactMatrix::from_rows(
                d.mode(),
                (0..d.rows()).map(|r| d.row(r)).collect::<Vec<_>>(),
            )
            .unwrap();
            assert_eq!(ker.rank(), img.rank(), "homology at spot {i}");
            assert!(ker.row_basis().row_span_contains(&img));
        }
    }
}
