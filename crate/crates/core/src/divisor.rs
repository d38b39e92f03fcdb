//! Divisor classes as exact rational coordinate vectors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// A rational class in a fixed Néron–Severi basis.
///
/// Stored as integer numerators over one common positive denominator, reduced so
/// that the gcd of all numerators and the denominator is 1. Equality and hashing
/// are therefore exact equality of classes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivClass {
    num: Vec<BigInt>,
    den: BigInt,
}

impl DivClass {
    pub fn zero(rank: usize) -> Self {
        Self {
            num: vec![BigInt::zero(); rank],
            den: BigInt::one(),
        }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self {
            num: coords.iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    pub fn from_rats(coords: &[Rat]) -> Self {
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::normalized(num, den)
    }

    /// `e_i` in a basis of size `rank`.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.num[i] = BigInt::one();
        v
    }

    fn normalized(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for n in num.iter_mut() {
                *n = -&*n;
            }
        }
        let g = num.iter().fold(den.clone(), |g, n| g.gcd(n));
        if !g.is_one() && !g.is_zero() {
            for n in num.iter_mut() {
                *n = &*n / &g;
            }
            den /= &g;
        }
        Self { num, den }
    }

    pub fn rank(&self) -> usize {
        self.num.len()
    }

    pub fn coord(&self, i: usize) -> Rat {
        Rat::new(self.num[i].clone(), self.den.clone())
    }

    pub fn coords(&self) -> Vec<Rat> {
        (0..self.rank()).map(|i| self.coord(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Integer coordinates, if the class is integral and fits in `i64`.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        if !self.is_integral() {
            return None;
        }
        self.num.iter().map(ToPrimitive::to_i64).collect()
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Numerators as `i128`, when they fit.
    pub(crate) fn small_numerators(&self) -> Option<Vec<i128>> {
        self.num.iter().map(ToPrimitive::to_i128).collect()
    }

    /// Standard (not intersection) pairing with an integer functional.
    pub fn eval(&self, functional: &[i64]) -> Rat {
        debug_assert_eq!(functional.len(), self.rank());
        let s: BigInt = self
            .num
            .iter()
            .zip(functional)
            .filter(|(_, &f)| f != 0)
            .map(|(n, &f)| n * f)
            .sum();
        Rat::new(s, self.den.clone())
    }

    /// `eval(functional) * den` for small numerators; `None` on overflow.
    pub(crate) fn small_eval(num: &[i128], functional: &[i64]) -> Option<i128> {
        num.iter().zip(functional).try_fold(0i128, |acc, (&n, &f)| {
            acc.checked_add(n.checked_mul(f as i128)?)
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let num = self.num.iter().map(|n| n * c.numer()).collect();
        Self::normalized(num, &self.den * c.denom())
    }

    /// The positive multiple with coprime integer coordinates.
    pub fn primitive_integral(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Input(
                "primitive representative of the zero class".into(),
            ));
        }
        let g = self.num.iter().fold(BigInt::zero(), |g, n| g.gcd(n));
        Ok(Self {
            num: self.num.iter().map(|n| n / &g).collect(),
            den: BigInt::one(),
        })
    }

    /// Returns `c` with `self = c * other`, if `self` is a multiple of `other`.
    pub fn ratio_to(&self, other: &Self) -> Option<Rat> {
        let pivot = other.num.iter().position(|n| !n.is_zero())?;
        let c = self.coord(pivot) / other.coord(pivot);
        if &other.scale(&c) == self {
            Some(c)
        } else {
            None
        }
    }

    fn check_rank(&self, other: &Self) {
        assert_eq!(
            self.rank(),
            other.rank(),
            "divisor classes of different rank combined"
        );
    }

    /// Formats as a signed sum over the given basis labels, e.g. `7H-2E1-E2`.
    pub fn display_with(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for (i, label) in labels.iter().enumerate().take(self.rank()) {
            let c = self.coord(i);
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(label);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Debug for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.rank() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.coord(i))?;
        }
        write!(f, ")")
    }
}

impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, rhs: &DivClass) -> DivClass {
        self.check_rank(rhs);
        if self.den == rhs.den {
            let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect();
            return DivClass::normalized(num, self.den.clone());
        }
        let den = self.den.lcm(&rhs.den);
        let fa = &den / &self.den;
        let fb = &den / &rhs.den;
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &fa + b * &fb)
            .collect();
        DivClass::normalized(num, den)
    }
}

impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, rhs: &DivClass) -> DivClass {
        self + &(-rhs)
    }
}

impl Neg for &DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        DivClass {
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }
}

impl Mul<&DivClass> for &Rat {
    type Output = DivClass;
    fn mul(self, rhs: &DivClass) -> DivClass {
        rhs.scale(self)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for DivClass {
            type Output = DivClass;
            fn $m(self, rhs: DivClass) -> DivClass {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&DivClass> for DivClass {
            type Output = DivClass;
            fn $m(self, rhs: &DivClass) -> DivClass {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);

impl Neg for DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        -&self
    }
}

impl std::iter::Sum for DivClass {
    /// Panics on an empty iterator (the rank is unknown).
    fn sum<I: Iterator<Item = DivClass>>(mut iter: I) -> DivClass {
        let first = iter.next().expect("sum of no divisor classes");
        iter.fold(first, |acc, d| acc + d)
    }
}
