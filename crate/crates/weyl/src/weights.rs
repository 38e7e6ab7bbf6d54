//! Weight-lattice predicates: Coxeter number, p-regularity, the Jantzen
//! region, the restricted-regular poset ideal under the dominance order, and
//! the root-of-unity order attached to a prime.
//!
//! Weights are integer vectors in fundamental-weight coordinates, so every
//! pairing (λ+ρ, α^∨) is the integer sum Σ (λ_i + 1) c_i over the coroot
//! coordinates c of α^∨, and dominance is decided by solving the Cartan
//! system exactly over the rationals.

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Result, WeylError};
use crate::root_data::RootDatum;
use crate::types::CartanType;

pub struct WeightPredicates {
    pub datum: RootDatum,
    pub prime: u64,
}

impl WeightPredicates {
    pub fn new(t: CartanType, prime: u64) -> Result<Self> {
        if prime < 2 {
            return Err(WeylError::Invalid(format!("{prime} is not a prime")));
        }
        Ok(WeightPredicates { datum: RootDatum::new(t)?, prime })
    }

    pub fn coxeter_number(&self) -> i64 {
        self.datum.coxeter_number
    }

    fn check_rank(&self, lambda: &[i64]) -> Result<()> {
        if lambda.len() != self.datum.rank {
            return Err(WeylError::Invalid(format!(
                "weight has {} coordinates, rank is {}",
                lambda.len(),
                self.datum.rank
            )));
        }
        Ok(())
    }

    /// (λ+ρ, α^∨) for the positive root with index `beta`.
    fn rho_shifted_pairing(&self, lambda: &[i64], beta: usize) -> i64 {
        self.datum.roots[beta].cc.iter().zip(lambda).map(|(c, l)| c * (l + 1)).sum()
    }

    /// (λ+ρ, α^∨) ≢ 0 mod p for all roots α.
    pub fn is_p_regular(&self, lambda: &[i64]) -> Result<bool> {
        self.check_rank(lambda)?;
        let p = self.prime as i64;
        Ok((0..self.datum.positive_count)
            .all(|beta| self.rho_shifted_pairing(lambda, beta).rem_euclid(p) != 0))
    }

    /// (λ+ρ, α₀^∨) ≤ p(p−h+2) with α₀ the maximal short root.
    pub fn in_jantzen_region(&self, lambda: &[i64]) -> Result<bool> {
        self.check_rank(lambda)?;
        let p = self.prime as i64;
        let h = self.datum.coxeter_number;
        Ok(self.rho_shifted_pairing(lambda, self.datum.highest_short) <= p * (p - h + 2))
    }

    pub fn is_dominant(&self, lambda: &[i64]) -> bool {
        lambda.iter().all(|&x| x >= 0)
    }

    pub fn is_restricted(&self, lambda: &[i64]) -> bool {
        let p = self.prime as i64;
        lambda.iter().all(|&x| (0..p).contains(&x))
    }

    /// Dominance order: λ ≤ μ iff μ − λ is a nonnegative integer combination
    /// of simple roots, decided exactly by solving the Cartan system.
    pub fn dominance_le(&self, lambda: &[i64], mu: &[i64]) -> Result<bool> {
        self.check_rank(lambda)?;
        self.check_rank(mu)?;
        let n = self.datum.rank;
        // weight coords of mu - lambda equal A · c with c the root coords
        let mut a: Vec<Vec<Rational64>> = (0..n)
            .map(|i| (0..n).map(|j| Rational64::from(self.datum.cartan[j][i])).collect())
            .collect();
        let mut rhs: Vec<Rational64> =
            (0..n).map(|i| Rational64::from(mu[i] - lambda[i])).collect();
        // gaussian elimination; the Cartan matrix is invertible
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .expect("Cartan matrix invertible");
            a.swap(col, pivot);
            rhs.swap(col, pivot);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= inv;
            }
            rhs[col] *= inv;
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col];
                    for c2 in 0..n {
                        let t = a[col][c2] * f;
                        a[r][c2] -= t;
                    }
                    let t = rhs[col] * f;
                    rhs[r] -= t;
                }
            }
        }
        Ok(rhs.iter().all(|c| c.is_integer() && *c >= Rational64::zero()))
    }

    /// Members, within a per-coordinate bound, of the poset ideal in the
    /// p-regular dominant weights generated by the p-restricted p-regular
    /// weights under the dominance order.
    pub fn gamma_res_reg_members(&self, bound: i64) -> Result<Vec<Vec<i64>>> {
        let n = self.datum.rank;
        let p = self.prime as i64;
        // generators: restricted regular dominant weights
        let mut generators = Vec::new();
        let mut stack = vec![vec![]];
        while let Some(partial) = stack.pop() {
            if partial.len() == n {
                if self.is_p_regular(&partial)? {
                    generators.push(partial);
                }
                continue;
            }
            for v in 0..p {
                let mut next = partial.clone();
                next.push(v);
                stack.push(next);
            }
        }
        // candidates within the bound
        let mut out = Vec::new();
        let mut stack = vec![vec![]];
        while let Some(partial) = stack.pop() {
            if partial.len() == n {
                if self.is_p_regular(&partial)? {
                    let below = generators
                        .iter()
                        .map(|g| self.dominance_le(&partial, g))
                        .collect::<Result<Vec<bool>>>()?;
                    if below.into_iter().any(|b| b) {
                        out.push(partial);
                    }
                }
                continue;
            }
            for v in 0..=bound {
                let mut next = partial.clone();
                next.push(v);
                stack.push(next);
            }
        }
        out.sort();
        Ok(out)
    }
}

/// The root-of-unity order attached to p: 4 when p = 2, otherwise p.
pub fn ell_of_p(p: u64) -> u64 {
    if p == 2 {
        4
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ell_values() {
        assert_eq!(ell_of_p(2), 4);
        assert_eq!(ell_of_p(7), 7);
        assert_eq!(ell_of_p(5), 5);
    }

    #[test]
    fn a1_regularity() {
        let w = WeightPredicates::new(CartanType::A(1), 3).unwrap();
        assert_eq!(w.coxeter_number(), 2);
        // λ = 2: (λ+ρ, α^∨) = 3 ≡ 0 mod 3
        assert!(!w.is_p_regular(&[2]).unwrap());
        assert!(w.is_p_regular(&[1]).unwrap());
    }

    #[test]
    fn a1_jantzen_boundary() {
        // p = 5, h = 2: region is λ + 1 ≤ 25
        let w = WeightPredicates::new(CartanType::A(1), 5).unwrap();
        assert!(w.in_jantzen_region(&[24]).unwrap());
        assert!(!w.in_jantzen_region(&[25]).unwrap());
    }

    #[test]
    fn g2_coxeter_number() {
        let w = WeightPredicates::new(CartanType::G2, 7).unwrap();
        assert_eq!(w.coxeter_number(), 6);
    }

    #[test]
    fn dominance_in_a2() {
        let w = WeightPredicates::new(CartanType::A(2), 5).unwrap();
        // μ − λ = α1 + α2 has weight coordinates (1, 1)
        assert!(w.dominance_le(&[0, 0], &[1, 1]).unwrap());
        // (2, -1) equals α1: also a positive root combination
        assert!(w.dominance_le(&[0, 0], &[2, -1]).unwrap());
        assert!(!w.dominance_le(&[0, 0], &[1, 0]).unwrap());
        assert!(!w.dominance_le(&[1, 1], &[0, 0]).unwrap());
        assert!(w.dominance_le(&[1, 1], &[1, 1]).unwrap());
    }

    #[test]
    fn gamma_res_reg_a1() {
        // p = 3 in type A1: regular restricted weights are {0, 1}; the ideal
        // they generate under dominance (steps of α = 2ω) from below
        let w = WeightPredicates::new(CartanType::A(1), 3).unwrap();
        let members = w.gamma_res_reg_members(6).unwrap();
        // λ ≤ 1 regular: {0, 1}; λ = 3, 4 are above the generators, not below
        assert!(members.contains(&vec![0]));
        assert!(members.contains(&vec![1]));
        assert!(!members.contains(&vec![3]));
        // 2 is singular ((2+1) ≡ 0), excluded
        assert!(!members.contains(&vec![2]));
    }
}
