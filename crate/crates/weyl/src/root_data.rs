//! Root system data in simple-root coordinates.
//!
//! Roots carry two integer coordinate vectors: over the simple roots and, for
//! the corresponding coroot, over the simple coroots. The orbit algorithm
//! generates both in parallel, which keeps every pairing <x, alpha^vee> an
//! integer computation.

use std::collections::HashMap;

use crate::error::Result;
use crate::types::CartanType;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coordinates over the simple roots.
    pub rc: Vec<i64>,
    /// Coordinates of the coroot over the simple coroots.
    pub cc: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.rc.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.height() > 0
    }
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    pub cartan_type: CartanType,
    pub rank: usize,
    /// cartan[i][j] = <alpha_j, alpha_i^vee>.
    pub cartan: Vec<Vec<i64>>,
    /// All roots, positive first (by height, then lex), then their negatives
    /// in matching order.
    pub roots: Vec<Root>,
    pub positive_count: usize,
    /// Index lookup by root coordinates.
    pub index: HashMap<Vec<i64>, usize>,
    /// Index of the highest root.
    pub highest: usize,
    /// Index of the highest short root (the root whose coroot is highest in
    /// the dual system); equals `highest` in simply-laced types.
    pub highest_short: usize,
    /// Coxeter number h = (maximal root height) + 1.
    pub coxeter_number: i64,
    /// pairing_row[r][j] = <alpha_j, beta_r^vee> for root index r.
    pub pairing: Vec<Vec<i64>>,
}

impl RootDatum {
    pub fn new(t: CartanType) -> Result<RootDatum> {
        t.validate()?;
        let n = t.rank();
        let cartan = t.cartan_matrix();

        // orbit of the simple roots under the simple reflections, tracking
        // root and coroot coordinates together
        let mut roots: Vec<Root> = Vec::new();
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        for i in 0..n {
            let mut rc = vec![0i64; n];
            rc[i] = 1;
            let mut cc = vec![0i64; n];
            cc[i] = 1;
            seen.insert(rc.clone(), roots.len());
            roots.push(Root { rc, cc });
        }
        let mut frontier: Vec<usize> = (0..roots.len()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &r in &frontier {
                for i in 0..n {
                    let root = roots[r].clone();
                    // s_i(alpha) = alpha - <alpha, alpha_i^vee> alpha_i
                    let pair: i64 = (0..n).map(|j| cartan[i][j] * root.rc[j]).sum();
                    let mut rc = root.rc.clone();
                    rc[i] -= pair;
                    // dual side: s_i(alpha^vee) with the transposed Cartan
                    let pair_dual: i64 = (0..n).map(|j| cartan[j][i] * root.cc[j]).sum();
                    let mut cc = root.cc.clone();
                    cc[i] -= pair_dual;
                    if !seen.contains_key(&rc) {
                        seen.insert(rc.clone(), roots.len());
                        next.push(roots.len());
                        roots.push(Root { rc, cc });
                    }
                }
            }
            frontier = next;
        }

        // sort: positive by (height, lex), then negatives in matching order
        let mut positives: Vec<Root> =
            roots.iter().filter(|r| r.is_positive()).cloned().collect();
        positives.sort_by(|a, b| (a.height(), &a.rc).cmp(&(b.height(), &b.rc)));
        let positive_count = positives.len();
        let mut ordered = positives.clone();
        ordered.extend(positives.iter().map(|r| Root {
            rc: r.rc.iter().map(|x| -x).collect(),
            cc: r.cc.iter().map(|x| -x).collect(),
        }));
        let index: HashMap<Vec<i64>, usize> =
            ordered.iter().enumerate().map(|(i, r)| (r.rc.clone(), i)).collect();

        let highest = (0..positive_count)
            .max_by_key(|&i| (ordered[i].height(), ordered[i].rc.clone()))
            .expect("nonempty root system");
        let highest_short = (0..positive_count)
            .max_by_key(|&i| {
                (ordered[i].cc.iter().sum::<i64>(), ordered[i].cc.clone())
            })
            .expect("nonempty root system");
        let coxeter_number = ordered[highest].height() + 1;

        let pairing: Vec<Vec<i64>> = ordered
            .iter()
            .map(|r| (0..n).map(|j| (0..n).map(|i| r.cc[i] * cartan[i][j]).sum()).collect())
            .collect();

        Ok(RootDatum {
            cartan_type: t,
            rank: n,
            cartan,
            roots: ordered,
            positive_count,
            index,
            highest,
            highest_short,
            coxeter_number,
            pairing,
        })
    }

    pub fn root_index(&self, rc: &[i64]) -> Option<usize> {
        self.index.get(rc).copied()
    }

    pub fn is_positive_index(&self, i: usize) -> bool {
        i < self.positive_count
    }

    /// <x, beta^vee> for x in root coordinates and a root index beta.
    pub fn pair_with_coroot(&self, x: &[i64], beta: usize) -> i64 {
        (0..self.rank).map(|j| x[j] * self.pairing[beta][j]).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coxeter_numbers() {
        for (t, h) in [
            (CartanType::A(1), 2),
            (CartanType::A(2), 3),
            (CartanType::A(3), 4),
            (CartanType::B(2), 4),
            (CartanType::G2, 6),
            (CartanType::D(4), 6),
            (CartanType::F4, 12),
        ] {
            let d = RootDatum::new(t).unwrap();
            assert_eq!(d.coxeter_number, h, "{t:?}");
        }
    }

    #[test]
    fn positive_root_counts_match_h() {
        // |Phi+| = h * rank / 2 in irreducible finite types
        for t in [
            CartanType::A(2),
            CartanType::A(3),
            CartanType::B(2),
            CartanType::G2,
            CartanType::D(4),
        ] {
            let d = RootDatum::new(t).unwrap();
            assert_eq!(
                2 * d.positive_count as i64,
                d.coxeter_number * d.rank as i64,
                "{t:?}"
            );
        }
    }

    #[test]
    fn pairings_are_cartan_on_simples() {
        let d = RootDatum::new(CartanType::B(2)).unwrap();
        for i in 0..2 {
            let mut rc = vec![0i64; 2];
            rc[i] = 1;
            let ri = d.root_index(&rc).unwrap();
            for j in 0..2 {
                let mut x = vec![0i64; 2];
                x[j] = 1;
                assert_eq!(d.pair_with_coroot(&x, ri), d.cartan[i][j]);
            }
        }
    }

    #[test]
    fn highest_short_root_in_b2() {
        let d = RootDatum::new(CartanType::B(2)).unwrap();
        // B2: highest root a1 + a2... actually 2-coordinates: long (1,1)? the
        // highest root has height 3: alpha1 + 2 alpha2? With alpha2 short:
        // highest = alpha1 + 2 alpha2 wait: B2 positive roots: a1, a2,
        // a1+a2, a1+2a2. Highest: a1+2a2 (long); highest short: a1+a2.
        assert_eq!(d.roots[d.highest].rc, vec![1, 2]);
        assert_eq!(d.roots[d.highest_short].rc, vec![1, 1]);
    }
}
