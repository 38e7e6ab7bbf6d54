use std::fmt;

use crate::error::{Result, WeylError};

/// Finite Cartan types in the Bourbaki numbering, plus the untwisted affine
/// extension (marked with a trailing `~` in text form, e.g. `A2~`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl CartanType {
    pub fn rank(&self) -> usize {
        match *self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) => n,
            CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    /// Cartan matrix A[i][j] = <alpha_j, alpha_i^vee>.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        fn link(a: &mut [Vec<i64>], i: usize, j: usize, aij: i64, aji: i64) {
            a[i][j] = aij;
            a[j][i] = aji;
        }
        match *self {
            CartanType::A(_) => {
                for i in 0..n - 1 {
                    link(&mut a, i, i + 1, -1, -1);
                }
            }
            CartanType::B(_) => {
                // alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
                for i in 0..n - 1 {
                    link(&mut a, i, i + 1, -1, -1);
                }
                a[n - 2][n - 1] = -1;
                a[n - 1][n - 2] = -2;
            }
            CartanType::C(_) => {
                // alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2
                for i in 0..n - 1 {
                    link(&mut a, i, i + 1, -1, -1);
                }
                a[n - 2][n - 1] = -2;
                a[n - 1][n - 2] = -1;
            }
            CartanType::D(_) => {
                for i in 0..n - 2 {
                    link(&mut a, i, i + 1, -1, -1);
                }
                link(&mut a, n - 3, n - 1, -1, -1);
            }
            CartanType::E(k) => {
                // Bourbaki: node 2 hangs off node 4 (1-indexed)
                let chain: &[usize] = &[0, 2, 3, 4, 5, 6, 7];
                for w in chain[..k - 1].windows(2) {
                    link(&mut a, w[0], w[1], -1, -1);
                }
                link(&mut a, 1, 3, -1, -1);
            }
            CartanType::F4 => {
                // alpha_1, alpha_2 long; alpha_3, alpha_4 short
                link(&mut a, 0, 1, -1, -1);
                a[1][2] = -1;
                a[2][1] = -2;
                link(&mut a, 2, 3, -1, -1);
            }
            CartanType::G2 => {
                a[0][1] = -3;
                a[1][0] = -1;
            }
        }
        a
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            CartanType::A(n) => n >= 1,
            CartanType::B(n) => n >= 2,
            CartanType::C(n) => n >= 2,
            CartanType::D(n) => n >= 3,
            CartanType::E(n) => (6..=8).contains(&n),
            CartanType::F4 | CartanType::G2 => true,
        };
        if ok {
            Ok(())
        } else {
            Err(WeylError::BadRank {
                family: match *self {
                    CartanType::A(_) => 'A',
                    CartanType::B(_) => 'B',
                    CartanType::C(_) => 'C',
                    CartanType::D(_) => 'D',
                    CartanType::E(_) => 'E',
                    CartanType::F4 => 'F',
                    CartanType::G2 => 'G',
                },
                rank: self.rank(),
            })
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

/// Parses "A2", "G2", or affine "A2~". Returns (type, affine).
pub fn parse_type(s: &str) -> Result<(CartanType, bool)> {
    let s = s.trim();
    let (base, affine) = match s.strip_suffix('~') {
        Some(b) => (b, true),
        None => (s, false),
    };
    let err = || WeylError::UnknownType(s.to_string());
    let (fam, num) = base.split_at(1);
    let n: usize = num.parse().map_err(|_| err())?;
    let t = match fam {
        "A" | "a" => CartanType::A(n),
        "B" | "b" => CartanType::B(n),
        "C" | "c" => CartanType::C(n),
        "D" | "d" => CartanType::D(n),
        "E" | "e" => CartanType::E(n),
        "F" | "f" if n == 4 => CartanType::F4,
        "G" | "g" if n == 2 => CartanType::G2,
        _ => return Err(err()),
    };
    t.validate()?;
    if affine && t == CartanType::A(1) {
        // fine: the infinite dihedral group
    }
    Ok((t, affine))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_type("A2").unwrap(), (CartanType::A(2), false));
        assert_eq!(parse_type("A1~").unwrap(), (CartanType::A(1), true));
        assert_eq!(parse_type("G2").unwrap(), (CartanType::G2, false));
        assert!(parse_type("H3").is_err());
        assert!(parse_type("E9").is_err());
    }

    #[test]
    fn cartan_matrices_are_generalized_cartan() {
        for t in [
            CartanType::A(3),
            CartanType::B(2),
            CartanType::C(3),
            CartanType::D(4),
            CartanType::E(6),
            CartanType::F4,
            CartanType::G2,
        ] {
            let a = t.cartan_matrix();
            let n = t.rank();
            for i in 0..n {
                assert_eq!(a[i][i], 2);
                for j in 0..n {
                    if i != j {
                        assert!(a[i][j] <= 0);
                        assert_eq!(a[i][j] == 0, a[j][i] == 0);
                    }
                }
            }
        }
    }
}
