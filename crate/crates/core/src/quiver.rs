//! Path algebras of quivers modulo admissible relations.
//!
//! Paths compose like functions: the product p * q traverses q first, and is
//! zero unless q ends where p starts. The basis of the quotient is the set of
//! paths not reducible modulo the relation ideal, computed grade by grade via
//! linear algebra; arrow grades are >= 1, so a path of grade g has length <= g
//! and expanding up to the truncation grade captures every ideal element of
//! grade <= truncation.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{build_algebra, AlgebraSpec, GradedAlgebra, SparseVec};
use crate::error::{CoreError, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::{ExactScalar, FieldMode};

#[derive(Debug, Clone)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
    pub grade: usize,
}

/// A linear combination of parallel paths, each path a list of arrow indices
/// in traversal order.
pub type Relation = Vec<(ExactScalar, Vec<usize>)>;

#[derive(Debug, Clone)]
pub struct QuiverPresentation {
    pub mode: FieldMode,
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    /// Maximal path grade (= length when all arrows have grade 1) to expand.
    pub truncation_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
    grade: usize,
}

const PATH_LIMIT: usize = 200_000;

fn path_label(q: &QuiverPresentation, p: &Path) -> String {
    if p.arrows.is_empty() {
        format!("e{}", p.source + 1)
    } else {
        // composition order: last-traversed arrow printed first
        p.arrows.iter().rev().map(|&a| q.arrows[a].label.clone()).collect::<Vec<_>>().join("*")
    }
}

pub fn from_quiver(q: &QuiverPresentation) -> Result<Arc<GradedAlgebra>> {
    let mode = q.mode;
    for a in &q.arrows {
        if a.source >= q.vertex_count || a.target >= q.vertex_count {
            return Err(CoreError::Invalid(format!("arrow {} has out-of-range vertex", a.label)));
        }
        if a.grade == 0 {
            return Err(CoreError::Invalid(format!("arrow {} must have grade >= 1", a.label)));
        }
    }
    let max_arrow_grade = q.arrows.iter().map(|a| a.grade).max().unwrap_or(1);
    let trunc = q.truncation_degree.max(1);

    // paths of grade <= trunc, grouped by grade, in BFS order
    let mut paths: Vec<Path> = (0..q.vertex_count)
        .map(|v| Path { source: v, target: v, arrows: vec![], grade: 0 })
        .collect();
    let mut frontier: Vec<usize> = (0..paths.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &pi in &frontier {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == paths[pi].target && paths[pi].grade + a.grade <= trunc {
                    let mut arrows = paths[pi].arrows.clone();
                    arrows.push(ai);
                    let p = Path {
                        source: paths[pi].source,
                        target: a.target,
                        arrows,
                        grade: paths[pi].grade + a.grade,
                    };
                    next.push(paths.len());
                    paths.push(p);
                    if paths.len() > PATH_LIMIT {
                        return Err(CoreError::Invalid(
                            "path expansion exceeds limit; lower the truncation degree".into(),
                        ));
                    }
                }
            }
        }
        frontier = next;
    }
    // keyed by (source, arrows): the source disambiguates the vertex paths
    let index_of: HashMap<(usize, Vec<usize>), usize> =
        paths.iter().enumerate().map(|(i, p)| ((p.source, p.arrows.clone()), i)).collect();
    let by_grade: Vec<Vec<usize>> = {
        let mut v = vec![Vec::new(); trunc + 1];
        for (i, p) in paths.iter().enumerate() {
            v[p.grade].push(i);
        }
        v
    };

    // validate relations: paths of length >= 2, composable, common endpoints,
    // homogeneous grade (needed for the path-grade function to descend)
    let mut checked_relations: Vec<(usize, usize, usize, Vec<(ExactScalar, Vec<usize>)>)> =
        Vec::new();
    for (ri, rel) in q.relations.iter().enumerate() {
        if rel.is_empty() {
            return Err(CoreError::BadRelation(ri, "empty relation".into()));
        }
        let mut sig: Option<(usize, usize, usize)> = None;
        let mut terms = Vec::new();
        for (c, word) in rel {
            if c.mode() != mode {
                return Err(CoreError::MixedFieldModes);
            }
            if word.len() < 2 {
                return Err(CoreError::BadRelation(ri, "path of length < 2".into()));
            }
            let mut grade = 0;
            for &a in word {
                if a >= q.arrows.len() {
                    return Err(CoreError::BadRelation(ri, "arrow index out of range".into()));
                }
                grade += q.arrows[a].grade;
            }
            for win in word.windows(2) {
                if q.arrows[win[0]].target != q.arrows[win[1]].source {
                    return Err(CoreError::BadRelation(ri, "arrows do not compose".into()));
                }
            }
            if grade > trunc {
                return Err(CoreError::BadRelation(
                    ri,
                    "relation grade exceeds truncation degree".into(),
                ));
            }
            let src = q.arrows[word[0]].source;
            let tgt = q.arrows[*word.last().unwrap()].target;
            match sig {
                None => sig = Some((src, tgt, grade)),
                Some(s) => {
                    if s != (src, tgt, grade) {
                        return Err(CoreError::BadRelation(
                            ri,
                            "terms differ in source, target, or grade".into(),
                        ));
                    }
                }
            }
            terms.push((c.clone(), word.clone()));
        }
        let (src, tgt, grade) = sig.unwrap();
        checked_relations.push((src, tgt, grade, terms));
    }

    // ideal spanning set per grade: p * r * q with matching endpoints
    let mut ideal_rows: Vec<Vec<Vec<ExactScalar>>> = vec![Vec::new(); trunc + 1];
    for (src, tgt, g_r, terms) in &checked_relations {
        for left in &paths {
            if left.source != *tgt || left.grade + g_r > trunc {
                continue;
            }
            for right in &paths {
                let g = right.grade + g_r + left.grade;
                if right.target != *src || g > trunc {
                    continue;
                }
                let mut row = vec![ExactScalar::zero(mode); paths.len()];
                for (c, word) in terms {
                    let mut arrows = right.arrows.clone();
                    arrows.extend_from_slice(word);
                    arrows.extend_from_slice(&left.arrows);
                    let idx = index_of[&(right.source, arrows)];
                    row[idx] = row[idx].add(c);
                }
                ideal_rows[g].push(row);
            }
        }
    }

    // per grade: rref of the ideal block; non-pivot paths survive as basis
    // cosets and pivot paths get a reduction rule
    let mut surviving: Vec<usize> = Vec::new();
    let mut reduction: HashMap<usize, Vec<(usize, ExactScalar)>> = HashMap::new();
    for g in 0..=trunc {
        if by_grade[g].is_empty() {
            continue;
        }
        let cols = &by_grade[g];
        if ideal_rows[g].is_empty() {
            surviving.extend(cols.iter().copied());
            continue;
        }
        let block = ExactMatrix::from_rows(
            mode,
            ideal_rows[g]
                .iter()
                .map(|row| cols.iter().map(|&p| row[p].clone()).collect())
            .collect(),
        )?;
        let (red, rank, pivots) = block.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..cols.len()).filter(|c| !pivot_set.contains(c)).collect();
        for &f in &free {
            surviving.push(cols[f]);
        }
        for (r, &pc) in pivots.iter().enumerate().take(rank) {
            let rule: Vec<(usize, ExactScalar)> = free
                .iter()
                .filter(|&&f| !red.get(r, f).is_zero())
                .map(|&f| (cols[f], red.get(r, f).neg()))
                .collect();
            reduction.insert(cols[pc], rule);
        }
    }

    // Finite-dimensionality: if no basis path has grade in the top window
    // [trunc - maxgrade + 1, trunc], every path of higher grade contains a
    // prefix whose grade lands in that window, hence lies in the ideal.
    let window_lo = trunc.saturating_sub(max_arrow_grade - 1).max(1);
    if surviving.iter().any(|&p| paths[p].grade >= window_lo) {
        return Err(CoreError::NotFiniteDimensional { truncation: trunc });
    }
    let top_nonempty = surviving.iter().map(|&p| paths[p].grade).max().unwrap_or(0);

    surviving.sort_by_key(|&p| (paths[p].grade, p));
    let dim = surviving.len();
    let new_index: HashMap<usize, usize> =
        surviving.iter().enumerate().map(|(a, &b)| (b, a)).collect();

    // coset of an arbitrary enumerated path in the surviving basis
    let coset = |p: usize| -> SparseVec {
        if let Some(&n) = new_index.get(&p) {
            vec![(n, ExactScalar::one(mode))]
        } else if let Some(rule) = reduction.get(&p) {
            rule.iter().map(|(q, c)| (new_index[q], c.clone())).collect()
        } else {
            Vec::new()
        }
    };

    let mut mult = vec![vec![SparseVec::new(); dim]; dim];
    for (i, &pi) in surviving.iter().enumerate() {
        for (j, &pj) in surviving.iter().enumerate() {
            let (p, qq) = (&paths[pi], &paths[pj]);
            // p * q: traverse q then p
            if qq.target != p.source {
                continue;
            }
            let g = p.grade + qq.grade;
            if g > top_nonempty {
                continue; // zero: every class above the top surviving grade vanishes
            }
            let mut arrows = qq.arrows.clone();
            arrows.extend_from_slice(&p.arrows);
            let idx = index_of
                .get(&(qq.source, arrows))
                .copied()
                .ok_or_else(|| CoreError::Invalid("product path not enumerated".into()))?;
            mult[i][j] = coset(idx);
        }
    }

    // vertex paths survive (relations live in path length >= 2)
    let mut unit = vec![ExactScalar::zero(mode); dim];
    let mut idempotents = Vec::new();
    for v in 0..q.vertex_count {
        let p = surviving
            .iter()
            .position(|&pidx| paths[pidx].arrows.is_empty() && paths[pidx].source == v)
            .ok_or_else(|| CoreError::Invalid("vertex idempotent reduced to zero".into()))?;
        unit[p] = ExactScalar::one(mode);
        let mut e = vec![ExactScalar::zero(mode); dim];
        e[p] = ExactScalar::one(mode);
        idempotents.push(e);
    }

    let labels = surviving.iter().map(|&p| path_label(q, &paths[p])).collect();
    let grades: Vec<usize> = surviving.iter().map(|&p| paths[p].grade).collect();

    // arrow ideal: the non-vertex basis paths
    let arrow_rows: Vec<Vec<ExactScalar>> = (0..dim)
        .filter(|&i| grades[i] >= 1)
        .map(|i| {
            let mut v = vec![ExactScalar::zero(mode); dim];
            v[i] = ExactScalar::one(mode);
            v
        })
        .collect();
    let radical = if arrow_rows.is_empty() {
        ExactMatrix::zeros(mode, 0, dim)
    } else {
        ExactMatrix::from_rows(mode, arrow_rows)?
    };

    build_algebra(AlgebraSpec {
        mode,
        dim,
        labels,
        mult,
        unit,
        grades,
        idempotents: Some(idempotents),
        radical_basis: Some(radical),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(mode: FieldMode) -> ExactScalar {
        ExactScalar::one(mode)
    }

    #[test]
    fn single_arrow_quiver() {
        let mode = FieldMode::Q;
        let q = QuiverPresentation {
            mode,
            vertex_count: 2,
            arrows: vec![Arrow { source: 0, target: 1, label: "a".into(), grade: 1 }],
            relations: vec![],
            truncation_degree: 4,
        };
        let a = from_quiver(&q).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.grades(), &[0, 0, 1]);
        assert_eq!(a.labels(), &["e1", "e2", "a"]);
    }

    #[test]
    fn loop_with_square_relation() {
        let mode = FieldMode::Q;
        let q = QuiverPresentation {
            mode,
            vertex_count: 1,
            arrows: vec![Arrow { source: 0, target: 0, label: "x".into(), grade: 1 }],
            relations: vec![vec![(one(mode), vec![0, 0])]],
            truncation_degree: 5,
        };
        let a = from_quiver(&q).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.grades(), &[0, 1]);
        // x * x = 0
        assert!(a.structure_constant(1, 1).is_empty());
    }

    #[test]
    fn free_loop_is_infinite_dimensional() {
        let mode = FieldMode::Q;
        let q = QuiverPresentation {
            mode,
            vertex_count: 1,
            arrows: vec![Arrow { source: 0, target: 0, label: "x".into(), grade: 1 }],
            relations: vec![],
            truncation_degree: 5,
        };
        assert_eq!(
            from_quiver(&q).unwrap_err(),
            CoreError::NotFiniteDimensional { truncation: 5 }
        );
    }

    #[test]
    fn commuting_square_has_dim_nine() {
        let mode = FieldMode::Q;
        // 0 -a-> 1 -c-> 3, 0 -b-> 2 -d-> 3, with c a = d b
        let q = QuiverPresentation {
            mode,
            vertex_count: 4,
            arrows: vec![
                Arrow { source: 0, target: 1, label: "a".into(), grade: 1 },
                Arrow { source: 0, target: 2, label: "b".into(), grade: 1 },
                Arrow { source: 1, target: 3, label: "c".into(), grade: 1 },
                Arrow { source: 2, target: 3, label: "d".into(), grade: 1 },
            ],
            relations: vec![vec![(one(mode), vec![0, 2]), (one(mode).neg(), vec![1, 3])]],
            truncation_degree: 4,
        };
        let a = from_quiver(&q).unwrap();
        assert_eq!(a.dim(), 9);
    }

    #[test]
    fn inadmissible_relation_rejected() {
        let mode = FieldMode::Q;
        let q = QuiverPresentation {
            mode,
            vertex_count: 2,
            arrows: vec![
                Arrow { source: 0, target: 1, label: "a".into(), grade: 1 },
                Arrow { source: 1, target: 0, label: "b".into(), grade: 1 },
            ],
            relations: vec![vec![(one(mode), vec![0])]],
            truncation_degree: 3,
        };
        assert!(matches!(from_quiver(&q).unwrap_err(), CoreError::BadRelation(0, _)));
    }
}
