//! Dense univariate polynomials over the integers, in the variable `q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficients are stored constant term first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = Poly<BigInt>;

impl<T> Poly<T>
where
    T: Clone + Zero + One + PartialEq,
{
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![T::one()],
        }
    }

    /// `c q^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn eval(&self, x: &T) -> T
    where
        T: for<'a> Mul<&'a T, Output = T> + for<'a> Add<&'a T, Output = T>,
    {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x + c)
    }
}

impl<T> Poly<T>
where
    T: Clone + Zero + One + PartialEq + Neg<Output = T>,
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    /// Exact division by `q^k - 1`; fails if the remainder is nonzero.
    pub fn div_q_power_minus_one(&self, k: usize) -> Result<Self> {
        assert!(k > 0);
        let Some(deg) = self.degree() else {
            return Ok(self.clone());
        };
        if deg < k {
            return Err(Error::InexactDivision);
        }
        // self = (q^k - 1) * quot, so quot[j] = self[j + k] + quot[j + k], from the top down
        let mut quot = vec![T::zero(); deg + 1 - k];
        for j in (0..quot.len()).rev() {
            let above = quot.get(j + k).cloned().unwrap_or_else(T::zero);
            quot[j] = &self.coeffs[j + k] - &(-above);
        }
        // low coefficients: self[j] = quot[j - k] - quot[j]
        for j in 0..=deg {
            let lo = if j >= k { quot.get(j - k).cloned() } else { None }.unwrap_or_else(T::zero);
            let hi = quot.get(j).cloned().unwrap_or_else(T::zero);
            if self.coeffs[j] != &lo - &hi {
                return Err(Error::InexactDivision);
            }
        }
        Ok(Poly::new(quot))
    }
}

impl<T> Add for &Poly<T>
where
    T: Clone + Zero + One + PartialEq,
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    type Output = Poly<T>;

    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = T::zero();
        Poly::new(
            (0..len)
                .map(|k| {
                    self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

impl<T> Sub for &Poly<T>
where
    T: Clone + Zero + One + PartialEq,
    for<'a> &'a T: Sub<&'a T, Output = T>,
{
    type Output = Poly<T>;

    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = T::zero();
        Poly::new(
            (0..len)
                .map(|k| {
                    self.coeffs.get(k).unwrap_or(&zero) - rhs.coeffs.get(k).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

impl<T> Mul for &Poly<T>
where
    T: Clone + Zero + One + PartialEq,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    type Output = Poly<T>;

    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a * b;
            }
        }
        Poly::new(out)
    }
}

impl<T> fmt::Display for Poly<T>
where
    T: Clone + Zero + One + PartialEq + fmt::Display,
{
    /// Ascending powers, e.g. `1 + 2q + q^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, abs) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            if k == 0 {
                f.write_str(&abs)?;
            } else if abs == "1" {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}{mono}")?;
            }
        }
        Ok(())
    }
}

/// `[n]_q! = prod_{i=1..n} (1 + q + ... + q^{i-1})`.
pub fn q_factorial(n: usize) -> IntPoly {
    (1..=n).fold(IntPoly::one(), |acc, i| {
        &acc * &IntPoly::new(vec![BigInt::one(); i])
    })
}
