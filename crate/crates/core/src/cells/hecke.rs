//! The Iwahori-Hecke algebra of `S_n` over `Z[v, v^-1]`.
//!
//! Standard basis `H_w = v^{-l(w)} T_w` with `H_s^2 = 1 + (v^-1 - v) H_s`;
//! the Kazhdan-Lusztig basis element `C'_w` is the unique bar-invariant
//! element in `H_w + sum_{x<w} v Z[v] H_x`, and `C'_s = H_s + v`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::group::GroupTable;
use crate::weyl::Permutation;

/// Laurent polynomial in `v` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    low: i32,
    coeffs: Vec<i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(1, 0)
    }

    /// `c v^k`.
    pub fn monomial(c: i64, k: i32) -> Self {
        Laurent::from_coeffs(k, vec![c])
    }

    /// Coefficients of `v^low, v^{low+1}, ...`.
    pub fn from_coeffs(low: i32, coeffs: Vec<i64>) -> Self {
        let mut l = Laurent { low, coeffs };
        l.trim();
        l
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i32) -> i64 {
        let i = k - self.low;
        if i < 0 {
            0
        } else {
            self.coeffs.get(i as usize).copied().unwrap_or(0)
        }
    }

    /// Highest exponent, `None` for zero.
    pub fn degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn valuation(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    /// `v -> v^-1`.
    pub fn bar(&self) -> Laurent {
        match self.degree() {
            None => Laurent::zero(),
            Some(d) => Laurent::from_coeffs(-d, self.coeffs.iter().rev().copied().collect()),
        }
    }

    /// The part with strictly positive exponents.
    pub fn positive_part(&self) -> Laurent {
        Laurent::from_coeffs(
            1,
            (1..=self.degree().unwrap_or(0).max(0)).map(|k| self.coeff(k)).collect(),
        )
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.low + i as i32, c))
    }

    fn combine(&self, other: &Laurent, sign: i64) -> Laurent {
        if self.is_zero() {
            return if sign == 1 { other.clone() } else { -other };
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.degree().unwrap().max(other.degree().unwrap());
        Laurent::from_coeffs(
            low,
            (low..=high).map(|k| self.coeff(k) + sign * other.coeff(k)).collect(),
        )
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        self.combine(rhs, 1)
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self.combine(rhs, -1)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Laurent::from_coeffs(self.low + rhs.low, out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if k == 1 {
                        f.write_str("v")?;
                    } else {
                        write!(f, "v^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finitely supported map from permutations to Laurent polynomials;
/// the basis it refers to is fixed by context.
pub type HeckeElement = BTreeMap<Permutation, Laurent>;

/// Dense element of the Hecke algebra over a [`GroupTable`].
pub(crate) type Dense = Vec<Laurent>;

pub(crate) fn dense_zero(g: &GroupTable) -> Dense {
    vec![Laurent::zero(); g.size()]
}

pub(crate) fn to_sparse(g: &GroupTable, d: &Dense) -> HeckeElement {
    d.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (g.elems[k].clone(), c.clone()))
        .collect()
}

/// `H_s * a` in the standard basis.
pub(crate) fn left_mul_generator(g: &GroupTable, s: usize, a: &Dense) -> Dense {
    let q_minus = Laurent::from_coeffs(-1, vec![1, 0, -1]); // v^-1 - v
    let mut out = dense_zero(g);
    for (w, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sw = g.lmul[s][w];
        out[sw] = &out[sw] + c;
        if g.len[sw] < g.len[w] {
            out[w] = &out[w] + &(&q_minus * c);
        }
    }
    out
}

/// `H_x * b` for every `x`, built along `H_x = H_s H_{sx}`.
pub(crate) fn left_multiples(g: &GroupTable, b: &Dense) -> Vec<Dense> {
    let mut out: Vec<Dense> = Vec::with_capacity(g.size());
    for x in 0..g.size() {
        let value = match g.first_left_descent(x) {
            None => b.clone(),
            Some(s) => left_mul_generator(g, s, &out[g.lmul[s][x]]),
        };
        out.push(value);
    }
    out
}

pub(crate) fn multiply(g: &GroupTable, a: &Dense, b: &Dense) -> Dense {
    let mut out = dense_zero(g);
    if a.iter().all(Laurent::is_zero) {
        return out;
    }
    let multiples = left_multiples(g, b);
    for (x, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (z, d) in multiples[x].iter().enumerate() {
            if !d.is_zero() {
                out[z] = &out[z] + &(c * d);
            }
        }
    }
    out
}

/// `bar(H_x)` in the standard basis for every `x`, via `bar(H_s) = H_s^-1 = H_s + v - v^-1`.
pub(crate) fn bar_of_standard_basis(g: &GroupTable) -> Vec<Dense> {
    let shift = Laurent::from_coeffs(-1, vec![-1, 0, 1]); // v - v^-1
    let mut out: Vec<Dense> = Vec::with_capacity(g.size());
    for x in 0..g.size() {
        let value = match g.first_left_descent(x) {
            None => {
                let mut e = dense_zero(g);
                e[0] = Laurent::one();
                e
            }
            Some(s) => {
                let prev = &out[g.lmul[s][x]];
                let mut v = left_mul_generator(g, s, prev);
                for (k, c) in prev.iter().enumerate() {
                    if !c.is_zero() {
                        v[k] = &v[k] + &(&shift * c);
                    }
                }
                v
            }
        };
        out.push(value);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_ops() {
        let a = Laurent::from_coeffs(-1, vec![1, 0, 1]); // v^-1 + v
        assert_eq!(a.bar(), a);
        assert_eq!(a.degree(), Some(1));
        assert_eq!((&a * &a).to_string(), "v^-2 + 2 + v^2");
        assert!((&a - &a).is_zero());
        assert_eq!(Laurent::from_coeffs(-2, vec![3, 0, 1, 5]).positive_part(), Laurent::monomial(5, 1));
    }

    #[test]
    fn quadratic_relation() {
        let g = GroupTable::new(2).unwrap();
        let s = g.idx(&Permutation::simple(2, 1).unwrap());
        let mut hs = dense_zero(&g);
        hs[s] = Laurent::one();
        let sq = multiply(&g, &hs, &hs);
        assert_eq!(sq[0], Laurent::one());
        assert_eq!(sq[s], Laurent::from_coeffs(-1, vec![1, 0, -1]));
    }

    #[test]
    fn multiplication_is_associative() {
        let g = GroupTable::new(3).unwrap();
        let elem = |seed: i64| -> Dense {
            (0..g.size())
                .map(|k| Laurent::from_coeffs(-1, vec![(seed + k as i64) % 3 - 1, 1, (k as i64 * seed) % 2]))
                .collect()
        };
        let (a, b, c) = (elem(1), elem(2), elem(5));
        assert_eq!(
            multiply(&g, &multiply(&g, &a, &b), &c),
            multiply(&g, &a, &multiply(&g, &b, &c))
        );
    }

    #[test]
    fn bar_is_an_involution_on_the_basis() {
        let g = GroupTable::new(3).unwrap();
        let bars = bar_of_standard_basis(&g);
        for x in 0..g.size() {
            // bar(bar(H_x)) = sum_y bar(r_{y,x}) bar(H_y)
            let mut back = dense_zero(&g);
            for (y, r) in bars[x].iter().enumerate() {
                for (z, t) in bars[y].iter().enumerate() {
                    back[z] = &back[z] + &(&r.bar() * t);
                }
            }
            let mut expected = dense_zero(&g);
            expected[x] = Laurent::one();
            assert_eq!(back, expected);
        }
    }
}
