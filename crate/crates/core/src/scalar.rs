//! Exact field scalars: arbitrary-precision rationals and prime-field residues.
//!
//! The two modes are never mixed inside one matrix; matrix-level operations
//! check mode compatibility before any scalar arithmetic happens, so mixing
//! modes at the scalar level is a programming error and panics.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldMode {
    Q,
    Fp(u64),
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Q => write!(f, "Q"),
            FieldMode::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// A scalar in `Q` (stored in lowest terms, positive denominator — the
/// normal form `BigRational` maintains) or in `F_p` (residue in `[0, p)`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExactScalar {
    Rat(BigRational),
    Fp { p: u64, val: u64 },
}

fn fp_mul(p: u64, a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn fp_inv(p: u64, a: u64) -> u64 {
    assert!(a % p != 0, "division by zero in F_{p}");
    // extended Euclid
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "p must be prime");
    (s0.rem_euclid(p as i128)) as u64
}

impl ExactScalar {
    pub fn zero(mode: FieldMode) -> Self {
        match mode {
            FieldMode::Q => ExactScalar::Rat(BigRational::zero()),
            FieldMode::Fp(p) => ExactScalar::Fp { p, val: 0 },
        }
    }

    pub fn one(mode: FieldMode) -> Self {
        match mode {
            FieldMode::Q => ExactScalar::Rat(BigRational::one()),
            FieldMode::Fp(p) => ExactScalar::Fp { p, val: 1 },
        }
    }

    pub fn from_i64(mode: FieldMode, v: i64) -> Self {
        match mode {
            FieldMode::Q => ExactScalar::Rat(BigRational::from(BigInt::from(v))),
            FieldMode::Fp(p) => ExactScalar::Fp {
                p,
                val: (v as i128).rem_euclid(p as i128) as u64,
            },
        }
    }

    pub fn from_bigint(mode: FieldMode, v: &BigInt) -> Self {
        match mode {
            FieldMode::Q => ExactScalar::Rat(BigRational::from(v.clone())),
            FieldMode::Fp(p) => {
                let m = v.mod_floor_u64(p);
                ExactScalar::Fp { p, val: m }
            }
        }
    }

    /// Parses "a/b" or "a" into a scalar of the given mode.
    pub fn parse(mode: FieldMode, s: &str) -> Option<Self> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
            None => (s.parse::<BigInt>().ok()?, BigInt::one()),
        };
        if den.is_zero() {
            return None;
        }
        match mode {
            FieldMode::Q => Some(ExactScalar::Rat(BigRational::new(num, den))),
            FieldMode::Fp(p) => {
                let d = den.mod_floor_u64(p);
                if d == 0 {
                    return None;
                }
                let n = num.mod_floor_u64(p);
                Some(ExactScalar::Fp { p, val: fp_mul(p, n, fp_inv(p, d)) })
            }
        }
    }

    pub fn mode(&self) -> FieldMode {
        match self {
            ExactScalar::Rat(_) => FieldMode::Q,
            ExactScalar::Fp { p, .. } => FieldMode::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rat(r) => r.is_zero(),
            ExactScalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ExactScalar::Rat(r) => r.is_one(),
            ExactScalar::Fp { val, .. } => *val == 1,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (ExactScalar::Rat(a), ExactScalar::Rat(b)) => ExactScalar::Rat(a + b),
            (ExactScalar::Fp { p, val: a }, ExactScalar::Fp { p: q, val: b }) => {
                assert_eq!(p, q, "mixed primes");
                ExactScalar::Fp { p: *p, val: (a + b) % p }
            }
            _ => panic!("mixed field modes in scalar arithmetic"),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            ExactScalar::Rat(a) => ExactScalar::Rat(-a),
            ExactScalar::Fp { p, val } => ExactScalar::Fp { p: *p, val: (p - val) % p },
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (ExactScalar::Rat(a), ExactScalar::Rat(b)) => ExactScalar::Rat(a * b),
            (ExactScalar::Fp { p, val: a }, ExactScalar::Fp { p: q, val: b }) => {
                assert_eq!(p, q, "mixed primes");
                ExactScalar::Fp { p: *p, val: fp_mul(*p, *a, *b) }
            }
            _ => panic!("mixed field modes in scalar arithmetic"),
        }
    }

    pub fn inv(&self) -> Self {
        match self {
            ExactScalar::Rat(a) => {
                assert!(!a.is_zero(), "division by zero");
                ExactScalar::Rat(a.recip())
            }
            ExactScalar::Fp { p, val } => ExactScalar::Fp { p: *p, val: fp_inv(*p, *val) },
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    /// Canonical text form: `a` when the denominator is 1, else `a/b`.
    pub fn canonical_string(&self) -> String {
        match self {
            ExactScalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            ExactScalar::Fp { val, .. } => val.to_string(),
        }
    }

    /// The rational value, if in mode Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactScalar::Rat(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        let m = self.mod_floor(&BigInt::from(p));
        let (_, digits) = m.to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0],
            _ => unreachable!("mod_floor result below u64 modulus"),
        }
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
