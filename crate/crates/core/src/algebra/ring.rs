use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::int::Int;
use crate::error::Error;

/// Coefficient ring of a computation.
///
/// Rational computations run on integer matrices: every complex in this crate
/// is defined over ℤ and the constructions used (kernels of integer matrices,
/// projections) commute with `⊗ ℚ`. Torsion is dropped when summarising.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficients {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl Coefficients {
    pub fn prime_field(p: u64) -> Result<Self, Error> {
        if is_prime(p) {
            Ok(Coefficients::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Coefficients::Integers)
    }

    pub fn scalars(self) -> Scalars {
        match self {
            Coefficients::Integers | Coefficients::Rationals => Scalars::Integers,
            Coefficients::PrimeField(p) => Scalars::Mod(p),
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "z"),
            Coefficients::Rationals => write!(f, "q"),
            Coefficients::PrimeField(p) => write!(f, "zp:{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "z" | "int" | "integers" => Ok(Coefficients::Integers),
            "q" | "rat" | "rationals" => Ok(Coefficients::Rationals),
            other => {
                let digits = other
                    .strip_prefix("zp:")
                    .or_else(|| other.strip_prefix("z/"))
                    .or_else(|| other.strip_prefix('f'))
                    .ok_or_else(|| Error::Parse(format!("unknown coefficients '{s}'")))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime in '{s}'")))?;
                Coefficients::prime_field(p)
            }
        }
    }
}

impl Serialize for Coefficients {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic actually carried out on matrix entries: ℤ or ℤ/p.
///
/// Entries over ℤ/p are kept as canonical residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scalars {
    Integers,
    Mod(u64),
}

impl Scalars {
    pub fn is_field(self) -> bool {
        matches!(self, Scalars::Mod(_))
    }

    pub fn reduce(self, a: Int) -> Int {
        match self {
            Scalars::Integers => a,
            Scalars::Mod(p) => Int::Small(a.rem_u64(p) as i64),
        }
    }

    pub fn from_i64(self, a: i64) -> Int {
        self.reduce(Int::Small(a))
    }

    pub fn add(self, a: &Int, b: &Int) -> Int {
        match self {
            Scalars::Integers => a + b,
            Scalars::Mod(p) => {
                let s = (small(a) as u128 + small(b) as u128) % p as u128;
                Int::Small(s as i64)
            }
        }
    }

    pub fn sub(self, a: &Int, b: &Int) -> Int {
        match self {
            Scalars::Integers => a - b,
            Scalars::Mod(p) => {
                let s = (small(a) as u128 + p as u128 - small(b) as u128) % p as u128;
                Int::Small(s as i64)
            }
        }
    }

    pub fn mul(self, a: &Int, b: &Int) -> Int {
        match self {
            Scalars::Integers => a * b,
            Scalars::Mod(p) => {
                let s = (small(a) as u128 * small(b) as u128) % p as u128;
                Int::Small(s as i64)
            }
        }
    }

    pub fn neg(self, a: &Int) -> Int {
        match self {
            Scalars::Integers => -a,
            Scalars::Mod(p) => {
                let v = small(a);
                Int::Small(if v == 0 { 0 } else { (p - v) as i64 })
            }
        }
    }

    pub fn is_unit(self, a: &Int) -> bool {
        match self {
            Scalars::Integers => matches!(a, Int::Small(1) | Int::Small(-1)),
            Scalars::Mod(_) => !a.is_zero(),
        }
    }

    pub fn inverse(self, a: &Int) -> Option<Int> {
        match self {
            Scalars::Integers => match a {
                Int::Small(1) | Int::Small(-1) => Some(a.clone()),
                _ => None,
            },
            Scalars::Mod(p) => {
                if a.is_zero() {
                    return None;
                }
                let (_, s, _) = Int::gcd_ext(a, &Int::Small(p as i64));
                Some(Int::Small(s.rem_u64(p) as i64))
            }
        }
    }

    /// `a / b` if `b` divides `a` in the ring.
    pub fn div_exact(self, a: &Int, b: &Int) -> Option<Int> {
        match self {
            Scalars::Integers => a.div_exact(b),
            Scalars::Mod(_) => {
                let inv = self.inverse(b)?;
                Some(self.mul(a, &inv))
            }
        }
    }

    /// `(g, s, t)` with `g = s*a + t*b` generating the ideal `(a, b)`.
    pub fn gcd_ext(self, a: &Int, b: &Int) -> (Int, Int, Int) {
        match self {
            Scalars::Integers => Int::gcd_ext(a, b),
            Scalars::Mod(_) => {
                if let Some(inv) = self.inverse(a) {
                    (Int::ONE, inv, Int::ZERO)
                } else if let Some(inv) = self.inverse(b) {
                    (Int::ONE, Int::ZERO, inv)
                } else {
                    (Int::ZERO, Int::ONE, Int::ZERO)
                }
            }
        }
    }

    /// Canonical associate of `a` (absolute value over ℤ, 1 over a field).
    pub fn normalize(self, a: &Int) -> Int {
        match self {
            Scalars::Integers => a.abs(),
            Scalars::Mod(_) => {
                if a.is_zero() {
                    Int::ZERO
                } else {
                    Int::ONE
                }
            }
        }
    }

    /// Euclidean size used for pivot selection.
    pub fn size(self, a: &Int) -> Int {
        match self {
            Scalars::Integers => a.abs(),
            Scalars::Mod(_) => {
                if a.is_zero() {
                    Int::ZERO
                } else {
                    Int::ONE
                }
            }
        }
    }
}

fn small(a: &Int) -> u64 {
    match a {
        Int::Small(v) if *v >= 0 => *v as u64,
        _ => panic!("residue {a} is not canonical"),
    }
}
