//! Slow reference implementations used by the test and acceptance suites to
//! cross-check the fast paths. These stay independent of the resolution/ext
//! machinery: extensions are classified directly from upper-triangular module
//! structures on N ⊕ M.

use crate::error::{CoreError, Result};
use crate::matrix::ExactMatrix;
use crate::module::GradedModule;
use crate::scalar::ExactScalar;

/// dim Ext^1(M, N), ungraded, by classifying module structures
/// [[act_N, 0], [γ, act_M]] modulo the coboundaries of maps h: M -> N.
pub fn ext1_dimension_bruteforce(m: &GradedModule, n: &GradedModule) -> Result<usize> {
    if !m.same_algebra(n) {
        return Err(CoreError::AlgebraMismatch);
    }
    let a = &m.algebra;
    let mode = m.mode();
    let d = a.dim();
    let (dm, dn) = (m.dim, n.dim);
    if dm == 0 || dn == 0 {
        return Ok(0);
    }
    let nvars = d * dm * dn;
    let var = |i: usize, r: usize, s: usize| i * dm * dn + r * dn + s;

    // cocycle conditions: sum_k c[i][j][k] γ_k = γ_j act_N(i) + act_M(j) γ_i
    let mut rows: Vec<Vec<ExactScalar>> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for r in 0..dm {
                for s in 0..dn {
                    let mut row = vec![ExactScalar::zero(mode); nvars];
                    let mut nonzero = false;
                    for (k, c) in a.structure_constant(i, j) {
                        row[var(*k, r, s)] = row[var(*k, r, s)].add(c);
                        nonzero = true;
                    }
                    // -(γ_j act_N(i))[r][s] = -sum_t γ_j[r][t] act_N(i)[t][s]
                    for t in 0..dn {
                        let c = n.action[i].get(t, s);
                        if !c.is_zero() {
                            row[var(j, r, t)] = row[var(j, r, t)].sub(c);
                            nonzero = true;
                        }
                    }
                    // -(act_M(j) γ_i)[r][s] = -sum_t act_M(j)[r][t] γ_i[t][s]
                    for t in 0..dm {
                        let c = m.action[j].get(r, t);
                        if !c.is_zero() {
                            row[var(i, t, s)] = row[var(i, t, s)].sub(c);
                            nonzero = true;
                        }
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
        }
    }
    // unit acts by the identity on the extension: sum_i unit_i γ_i = 0
    for r in 0..dm {
        for s in 0..dn {
            let mut row = vec![ExactScalar::zero(mode); nvars];
            let mut nonzero = false;
            for (i, c) in a.unit().iter().enumerate() {
                if !c.is_zero() {
                    row[var(i, r, s)] = row[var(i, r, s)].add(c);
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    let cocycles = if rows.is_empty() {
        nvars
    } else {
        let eqs = ExactMatrix::from_rows(mode, rows)?;
        nvars - eqs.transpose().rank()
    };

    // coboundaries: γ_i(h) = act_M(i) h - h act_N(i), h free
    let hvars = dm * dn;
    let mut cob = ExactMatrix::zeros(mode, hvars, nvars);
    for hr in 0..dm {
        for hs in 0..dn {
            let hv = hr * dn + hs;
            for i in 0..d {
                // (act_M(i) h)[r][s] = act_M(i)[r][hr] when s = hs
                for r in 0..dm {
                    let c = m.action[i].get(r, hr);
                    if !c.is_zero() {
                        let cur = cob.get(hv, var(i, r, hs)).add(c);
                        cob.set(hv, var(i, r, hs), cur);
                    }
                }
                // -(h act_N(i))[r][s] = -act_N(i)[hs][s] when r = hr
                for s in 0..dn {
                    let c = n.action[i].get(hs, s);
                    if !c.is_zero() {
                        let cur = cob.get(hv, var(i, hr, s)).sub(c);
                        cob.set(hv, var(i, hr, s), cur);
                    }
                }
            }
        }
    }
    let coboundaries = cob.rank();
    Ok(cocycles - coboundaries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::ext::graded_ext;
    use crate::scalar::FieldMode;
    use crate::simples::simples_and_projectives;

    #[test]
    fn agrees_with_resolution_ext_on_small_algebras() {
        for a in [
            corpus::truncated_polynomial(FieldMode::Q, 2, 1),
            corpus::truncated_polynomial(FieldMode::Q, 3, 1),
            corpus::path_algebra_a2(FieldMode::Q, 1),
            corpus::kronecker(FieldMode::Q),
            corpus::zigzag(FieldMode::Q),
            corpus::commuting_square(FieldMode::Q),
            corpus::zigzag(FieldMode::Fp(3)),
        ] {
            let data = simples_and_projectives(&a).unwrap();
            for m in &data.simples {
                for n in &data.simples {
                    let fast = graded_ext(&data, m, n, 1).unwrap().row_sum(1);
                    let slow = ext1_dimension_bruteforce(m, n).unwrap();
                    assert_eq!(fast, slow, "{a:?}");
                }
            }
        }
    }

    #[test]
    fn kronecker_has_two_dimensional_ext1() {
        let a = corpus::kronecker(FieldMode::Q);
        let data = simples_and_projectives(&a).unwrap();
        let l1 = &data.simples[0];
        let l2 = &data.simples[1];
        assert_eq!(ext1_dimension_bruteforce(l1, l2).unwrap(), 2);
        assert_eq!(ext1_dimension_bruteforce(l2, l1).unwrap(), 0);
    }
}
