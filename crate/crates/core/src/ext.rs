//! Graded ext groups via minimal resolutions.
//!
//! Hom out of a shifted projective is a corner slice of the target:
//! Hom_gr(P(λ)<r>, N<j>) = (e_λ N)_{r-j}, so the graded Hom complex splits
//! into internal-degree blocks and ext^i(M, N<j>) is the cohomology of the
//! j-block. The ungraded dimensions are computed separately on the full Hom
//! complex, which gives an independent check of the decomposition identity
//! Ext^n = ⊕_r ext^n(-, -<r>).

use std::collections::BTreeMap;

use crate::error::Result;
use crate::matrix::ExactMatrix;
use crate::module::{graded_row_basis, GradedModule};
use crate::resolution::{minimal_graded_resolution, GradedResolution};
use crate::scalar::ExactScalar;
use crate::simples::SimplesData;

/// Dimensions of ext^i(M, N<j>), indexed by (homological degree, shift).
#[derive(Debug, Clone)]
pub struct ExtTable {
    pub entries: BTreeMap<(usize, i64), usize>,
    pub max_degree: usize,
    /// True when the resolution was truncated before terminating, so entries
    /// at the top degree may be incomplete for larger homological degrees.
    pub truncated: bool,
}

impl ExtTable {
    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Ungraded dimension at homological degree i, as the row sum.
    pub fn row_sum(&self, i: usize) -> usize {
        self.entries.iter().filter(|((d, _), _)| *d == i).map(|(_, v)| v).sum()
    }

    /// Shifts j with a nonzero entry at degree i.
    pub fn nonzero_shifts(&self, i: usize) -> Vec<i64> {
        self.entries
            .iter()
            .filter(|((d, _), v)| *d == i && **v > 0)
            .map(|((_, j), _)| *j)
            .collect()
    }
}

/// Basis data for Hom_gr(term_i, N): one generator target slice per summand.
struct HomBasis {
    /// (summand, row vector in N, internal shift j) per basis element.
    elements: Vec<(usize, Vec<ExactScalar>, i64)>,
}

fn hom_basis(
    data: &SimplesData,
    res: &GradedResolution,
    i: usize,
    n: &GradedModule,
) -> Result<HomBasis> {
    let mut elements = Vec::new();
    let Some(term) = res.term(i) else {
        return Ok(HomBasis { elements });
    };
    let mode = n.mode();
    for (s, &(lam, r)) in term.summands.iter().enumerate() {
        let e = &data.idempotents[data.reps[lam]];
        let fixed = n.action_of_element(e); // rows span e·N
        let (basis, grades, _) = graded_row_basis(&fixed, &n.grades)?;
        for b in 0..basis.rows() {
            let w = basis.row(b);
            let j = r - grades[b];
            let _ = mode;
            elements.push((s, w, j));
        }
    }
    Ok(HomBasis { elements })
}

/// Matrix of precomposition with d_{i+1}: Hom(term_i, N) -> Hom(term_{i+1}, N).
fn hom_differential(
    data: &SimplesData,
    res: &GradedResolution,
    i: usize,
    n: &GradedModule,
    src: &HomBasis,
    dst: &HomBasis,
) -> Result<ExactMatrix> {
    let mode = n.mode();
    let out_rows = src.elements.len();
    let out_cols = dst.elements.len();
    let mut out = ExactMatrix::zeros(mode, out_rows, out_cols);
    if out_rows == 0 || out_cols == 0 {
        return Ok(out);
    }
    let term_lo = res.term(i).unwrap();
    let term_hi = res.term(i + 1).unwrap();
    let Some(d) = res.differentials.get(i) else {
        return Ok(out); // resolution terminated: the next term is zero
    };

    // images of the generators of term_{i+1} inside term_i
    let gen_images: Vec<Vec<ExactScalar>> = (0..term_hi.summands.len())
        .map(|t| {
            let g = term_hi.generator_row(data, t);
            ExactMatrix::from_rows(mode, vec![g]).and_then(|m| m.mul(d)).map(|m| m.row(0))
        })
        .collect::<Result<Vec<_>>>()?;

    // algebra element carried by each (generator t, source summand s) block
    let combine = |img: &[ExactScalar], s: usize| -> Vec<ExactScalar> {
        let (lam, _) = term_lo.summands[s];
        let off = term_lo.block_offsets[s];
        let pdim = data.projectives[lam].dim;
        let mut elem = vec![ExactScalar::zero(mode); n.algebra.dim()];
        for l in 0..pdim {
            let c = &img[off + l];
            if !c.is_zero() {
                for (k, x) in data.proj_elements[lam][l].iter().enumerate() {
                    if !x.is_zero() {
                        elem[k] = elem[k].add(&c.mul(x));
                    }
                }
            }
        }
        elem
    };

    // coordinates of a value inside the slice basis of a target summand
    // group destination elements by summand for coordinate solving
    let mut dst_by_summand: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (idx, (t, _, _)) in dst.elements.iter().enumerate() {
        dst_by_summand.entry(*t).or_default().push(idx);
    }

    for (row, (s, w, _j)) in src.elements.iter().enumerate() {
        for (&t, dst_idxs) in &dst_by_summand {
            let elem = combine(&gen_images[t], *s);
            if elem.iter().all(|c| c.is_zero()) {
                continue;
            }
            let value = ExactMatrix::from_rows(mode, vec![w.clone()])?
                .mul(&n.action_of_element(&elem))?
                .row(0);
            if value.iter().all(|c| c.is_zero()) {
                continue;
            }
            // express value in the basis rows of this summand's slice
            let slice_rows: Vec<Vec<ExactScalar>> =
                dst_idxs.iter().map(|&idx| dst.elements[idx].1.clone()).collect();
            let slice = ExactMatrix::from_rows(mode, slice_rows)?;
            let coords = slice
                .solve_left(&ExactMatrix::from_rows(mode, vec![value])?)?
                .expect("hom value lies in the e·N slice");
            for (pos, &idx) in dst_idxs.iter().enumerate() {
                let c = coords.get(0, pos);
                if !c.is_zero() {
                    out.set(row, idx, c.clone());
                }
            }
        }
    }
    Ok(out)
}

/// ext^i(M, N<j>) for 0 <= i <= max_degree, all shifts j in the finite window
/// where entries can be nonzero.
pub fn graded_ext(
    data: &SimplesData,
    m: &GradedModule,
    n: &GradedModule,
    max_degree: usize,
) -> Result<ExtTable> {
    let res = minimal_graded_resolution(data, m, max_degree + 1)?;
    let bases: Vec<HomBasis> =
        (0..=max_degree + 1).map(|i| hom_basis(data, &res, i, n)).collect::<Result<Vec<_>>>()?;
    let diffs: Vec<ExactMatrix> = (0..=max_degree)
        .map(|i| hom_differential(data, &res, i, n, &bases[i], &bases[i + 1]))
        .collect::<Result<Vec<_>>>()?;

    let mut entries = BTreeMap::new();
    let shifts: std::collections::BTreeSet<i64> = bases
        .iter()
        .flat_map(|b| b.elements.iter().map(|(_, _, j)| *j))
        .collect();
    for &j in &shifts {
        for i in 0..=max_degree {
            let pick = |b: &HomBasis| -> Vec<usize> {
                b.elements
                    .iter()
                    .enumerate()
                    .filter(|(_, (_, _, jj))| *jj == j)
                    .map(|(idx, _)| idx)
                    .collect()
            };
            let rows_here = pick(&bases[i]);
            if rows_here.is_empty() {
                continue;
            }
            let cols_next = pick(&bases[i + 1]);
            let block = submatrix(&diffs[i], &rows_here, &cols_next);
            let kernel_dim = rows_here.len() - block.rank();
            let image_dim = if i == 0 {
                0
            } else {
                let rows_prev = pick(&bases[i - 1]);
                submatrix(&diffs[i - 1], &rows_prev, &rows_here).rank()
            };
            let dim = kernel_dim - image_dim;
            if dim > 0 {
                entries.insert((i, j), dim);
            }
        }
    }
    Ok(ExtTable { entries, max_degree, truncated: !res.terminated })
}

/// Ungraded Ext dimensions, computed on the full (not shift-split) Hom
/// complex of the same minimal resolution.
pub fn ungraded_ext_dims(
    data: &SimplesData,
    m: &GradedModule,
    n: &GradedModule,
    max_degree: usize,
) -> Result<(Vec<usize>, bool)> {
    let res = minimal_graded_resolution(data, m, max_degree + 1)?;
    let bases: Vec<HomBasis> =
        (0..=max_degree + 1).map(|i| hom_basis(data, &res, i, n)).collect::<Result<Vec<_>>>()?;
    let diffs: Vec<ExactMatrix> = (0..=max_degree)
        .map(|i| hom_differential(data, &res, i, n, &bases[i], &bases[i + 1]))
        .collect::<Result<Vec<_>>>()?;
    let mut dims = Vec::with_capacity(max_degree + 1);
    for i in 0..=max_degree {
        let kernel = bases[i].elements.len() - diffs[i].rank();
        let image = if i == 0 { 0 } else { diffs[i - 1].rank() };
        dims.push(kernel - image);
    }
    Ok((dims, !res.terminated))
}

fn submatrix(m: &ExactMatrix, rows: &[usize], cols: &[usize]) -> ExactMatrix {
    let mut out = ExactMatrix::zeros(m.mode(), rows.len(), cols.len());
    for (ri, &r) in rows.iter().enumerate() {
        for (ci, &c) in cols.iter().enumerate() {
            let v = m.get(r, c);
            if !v.is_zero() {
                out.set(ri, ci, v.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::FieldMode;
    use crate::simples::simples_and_projectives;

    #[test]
    fn schur_for_simples() {
        let a = corpus::path_algebra_a2(FieldMode::Q, 1);
        let data = simples_and_projectives(&a).unwrap();
        let l = &data.simples[0];
        let t = graded_ext(&data, l, l, 3).unwrap();
        assert_eq!(t.get(0, 0), 1);
        assert_eq!(t.row_sum(0), 1);
    }

    #[test]
    fn koszul_pattern_dual_numbers() {
        // ext^i(k, k<j>) = 1 iff j = i over k[x]/(x^2)
        let a = corpus::truncated_polynomial(FieldMode::Q, 2, 1);
        let data = simples_and_projectives(&a).unwrap();
        let k = &data.simples[0];
        let t = graded_ext(&data, k, k, 4).unwrap();
        for i in 0..=4 {
            for j in -1..=6 {
                let expect = if j == i as i64 { 1 } else { 0 };
                assert_eq!(t.get(i, j), expect, "ext^{i} at shift {j}");
            }
        }
    }

    #[test]
    fn ext_one_of_a2_simple() {
        // ext^1(L(1), L(2)<1>) = 1 and vanishes at other shifts
        let a = corpus::path_algebra_a2(FieldMode::Q, 1);
        let data = simples_and_projectives(&a).unwrap();
        let l1 = &data.simples[0];
        let l2 = &data.simples[1];
        let t = graded_ext(&data, l1, l2, 3).unwrap();
        assert_eq!(t.get(1, 1), 1);
        for j in [-2i64, -1, 0, 2, 3] {
            assert_eq!(t.get(1, j), 0);
        }
        assert_eq!(t.row_sum(0), 0);
        assert_eq!(t.row_sum(2), 0);
    }

    #[test]
    fn decomposition_identity_matches_ungraded() {
        let a = corpus::zigzag(FieldMode::Q);
        let data = simples_and_projectives(&a).unwrap();
        for m in &data.simples {
            for n in &data.simples {
                let t = graded_ext(&data, m, n, 4).unwrap();
                let (dims, _) = ungraded_ext_dims(&data, m, n, 4).unwrap();
                for i in 0..=4 {
                    assert_eq!(t.row_sum(i), dims[i], "degree {i}");
                }
            }
        }
    }

    #[test]
    fn ext_against_shifted_target() {
        let a = corpus::truncated_polynomial(FieldMode::Q, 2, 1);
        let data = simples_and_projectives(&a).unwrap();
        let k = &data.simples[0];
        let shifted = k.shift(2);
        let t = graded_ext(&data, k, &shifted, 3).unwrap();
        // ext^i(k, k<2><j>) = ext^i(k, k<j+2>): nonzero iff i = j + 2
        for i in 0..=3usize {
            assert_eq!(t.get(i, i as i64 - 2), 1);
        }
    }
}
