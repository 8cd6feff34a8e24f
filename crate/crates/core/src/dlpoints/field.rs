//! Small finite fields `GF(p^k)` with table arithmetic.
//!
//! An element is stored as the index `sum_i c_i p^i` of its coordinate vector
//! `(c_0, ..., c_{k-1})` in the basis `1, t, ..., t^{k-1}` modulo the modulus.

use std::fmt;

use crate::error::{Error, Result};

pub type Elem = u8;

pub const MAX_FIELD_SIZE: usize = 64;
pub const ALLOWED_CHARACTERISTICS: [u32; 3] = [2, 3, 5];

#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    p: u32,
    k: u32,
    size: usize,
    /// Coefficients of the monic modulus below the leading term, constant first.
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    frob: Vec<Elem>,
}

fn digits(x: usize, p: u32, k: u32) -> Vec<u32> {
    let mut x = x as u32;
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn index(d: &[u32], p: u32) -> Elem {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c) as Elem
}

/// Product of two coordinate vectors modulo `t^k - sum(-modulus_i t^i)`.
fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len();
    let mut prod = vec![0u32; 2 * k];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (k..2 * k).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        // t^top = t^{top-k} t^k = -t^{top-k} sum modulus_i t^i
        for (i, m) in modulus.iter().enumerate() {
            prod[top - k + i] = (prod[top - k + i] + (p - c) * m) % p;
        }
    }
    prod.truncate(k);
    prod
}

impl Field {
    /// `GF(p^k)` modulo the first monic irreducible of degree `k` in lexicographic
    /// order of coefficient tuples, constant term first.
    pub fn new(p: u32, k: u32) -> Result<Field> {
        if !ALLOWED_CHARACTERISTICS.contains(&p) {
            return Err(Error::Field(format!("characteristic {p} not in {{2, 3, 5}}")));
        }
        if k == 0 {
            return Err(Error::Field("extension degree must be positive".into()));
        }
        let size = (p as usize).checked_pow(k).filter(|&s| s <= MAX_FIELD_SIZE);
        let Some(size) = size else {
            return Err(Error::Field(format!("{p}^{k} exceeds the field size cap {MAX_FIELD_SIZE}")));
        };
        let elems: Vec<Vec<u32>> = (0..size).map(|x| digits(x, p, k)).collect();
        let mut candidates: Vec<&Vec<u32>> = elems.iter().collect();
        candidates.sort();
        for modulus in candidates {
            let mut mul = vec![0 as Elem; size * size];
            let mut zero_divisor = false;
            for a in 1..size {
                for b in 1..size {
                    let c = index(&mul_mod(&elems[a], &elems[b], modulus, p), p);
                    zero_divisor |= c == 0;
                    mul[a * size + b] = c;
                }
            }
            if zero_divisor {
                continue;
            }
            let add: Vec<Elem> = (0..size * size)
                .map(|ab| {
                    let (a, b) = (ab / size, ab % size);
                    let s: Vec<u32> = elems[a].iter().zip(&elems[b]).map(|(x, y)| (x + y) % p).collect();
                    index(&s, p)
                })
                .collect();
            let neg: Vec<Elem> = (0..size)
                .map(|a| index(&elems[a].iter().map(|x| (p - x) % p).collect::<Vec<_>>(), p))
                .collect();
            let mut inv = vec![0 as Elem; size];
            for a in 1..size {
                inv[a] = (1..size).find(|&b| mul[a * size + b] == 1).unwrap() as Elem;
            }
            let mut field = Field {
                p,
                k,
                size,
                modulus: modulus.clone(),
                add,
                mul,
                neg,
                inv,
                frob: Vec::new(),
            };
            field.frob = (0..size).map(|x| field.pow(x as Elem, p as u64)).collect();
            return Ok(field);
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Coefficients `(c_0, ..., c_{k-1})` of the modulus `t^k + sum c_i t^i`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(|x| x as Elem)
    }

    /// The class of `t`; for `k = 1` this is `-c_0`.
    pub fn generator(&self) -> Elem {
        if self.k == 1 {
            self.neg[self.modulus[0] as usize]
        } else {
            self.p as Elem
        }
    }

    /// The element with coordinates `c_0, c_1, ...`.
    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem> {
        if coords.len() != self.k as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::Field(format!("bad coordinates {coords:?}")));
        }
        Ok(index(coords, self.p))
    }

    pub fn coords(&self, x: Elem) -> Vec<u32> {
        digits(x as usize, self.p, self.k)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.size + b as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc: Elem = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x -> x^p` applied `e` times.
    pub fn frobenius(&self, x: Elem, e: u32) -> Elem {
        (0..e % self.k).fold(x, |y, _| self.frob[y as usize])
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod t^{}", self.p, self.k, self.k)?;
        for (i, c) in self.modulus.iter().enumerate().rev() {
            match (i, c) {
                (_, 0) => {}
                (0, c) => write!(f, " + {c}")?,
                (1, 1) => write!(f, " + t")?,
                (1, c) => write!(f, " + {c}t")?,
                (i, 1) => write!(f, " + t^{i}")?,
                (i, c) => write!(f, " + {c}t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<Field> {
        let mut out = Vec::new();
        for p in [2u32, 3, 5] {
            let mut k = 1;
            while (p as usize).pow(k) <= MAX_FIELD_SIZE {
                out.push(Field::new(p, k).unwrap());
                k += 1;
            }
        }
        out
    }

    #[test]
    fn moduli() {
        assert_eq!(Field::new(2, 2).unwrap().modulus(), &[1, 1]);
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0]);
        assert_eq!(Field::new(2, 1).unwrap().modulus(), &[0]);
        assert_eq!(format!("{:?}", Field::new(2, 3).unwrap()), "GF(2^3) mod t^3 + t^2 + 1");
    }

    #[test]
    fn f4_frobenius() {
        let f = Field::new(2, 2).unwrap();
        let alpha = f.generator();
        let alpha_plus_one = f.add(alpha, 1);
        assert_eq!(f.frobenius(alpha, 1), alpha_plus_one);
        assert_eq!(f.mul(alpha, alpha), alpha_plus_one);
    }

    #[test]
    fn f2_is_xor_and() {
        let f = Field::new(2, 1).unwrap();
        for a in 0..2u8 {
            for b in 0..2u8 {
                assert_eq!(f.add(a, b), a ^ b);
                assert_eq!(f.mul(a, b), a & b);
            }
        }
    }

    #[test]
    fn field_axioms() {
        for f in all_fields() {
            let q = f.size() as u64;
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.pow(a, q), a);
                assert_eq!(f.frobenius(a, f.degree()), a);
                if let Some(b) = f.inv(a) {
                    assert_eq!(f.mul(a, b), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // Frobenius is additive and multiplicative
                    assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
                    assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
            // Frobenius is a bijection fixing exactly the prime field
            let images: std::collections::HashSet<_> = f.elements().map(|a| f.frobenius(a, 1)).collect();
            assert_eq!(images.len(), f.size());
            let fixed = f.elements().filter(|&a| f.frobenius(a, 1) == a).count();
            assert_eq!(fixed, f.characteristic() as usize);
        }
    }

    #[test]
    fn modulus_is_lexicographically_first_irreducible() {
        // independent check: no root and, for degree <= 3, that suffices
        for f in all_fields().into_iter().filter(|f| (2..=3).contains(&f.degree())) {
            let (p, k) = (f.characteristic(), f.degree());
            let has_root = |m: &[u32]| {
                (0..p).any(|x| {
                    let v = (0..k as usize).fold(0, |acc, i| (acc + m[i] * x.pow(i as u32)) % p);
                    (v + x.pow(k)) % p == 0
                })
            };
            assert!(!has_root(f.modulus()));
            let mut earlier = vec![0u32; k as usize];
            loop {
                if earlier == f.modulus() {
                    break;
                }
                assert!(has_root(&earlier), "{earlier:?} precedes {:?}", f.modulus());
                // increment with c_{k-1} least significant
                let mut i = k as usize;
                loop {
                    i -= 1;
                    earlier[i] += 1;
                    if earlier[i] < p {
                        break;
                    }
                    earlier[i] = 0;
                }
            }
        }
    }

    #[test]
    fn caps() {
        assert!(Field::new(7, 1).is_err());
        assert!(Field::new(2, 7).is_err());
        assert!(Field::new(5, 3).is_err());
        assert!(Field::new(3, 0).is_err());
        assert!(Field::new(2, 6).is_ok());
        assert!(Field::new(5, 2).is_ok());
    }
}
