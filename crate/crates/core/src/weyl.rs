//! The symmetric group `S_n`, viewed as the Weyl group of `GL_n`.
//!
//! Permutations are stored in one-line notation `w(1),...,w(n)` and compose
//! as functions: `(u * v)(i) = u(v(i))`. Every other module inherits this
//! convention. The simple reflection `s_i` swaps `i` and `i+1`, so `w * s_i`
//! swaps the entries in positions `i, i+1` while `s_i * w` swaps the values.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{check_rank, Error, Result};

/// Largest rank for which operations enumerate the whole group.
pub const MAX_EXHAUSTIVE_RANK: usize = 10;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Permutation {
    /// Builds a permutation from its one-line notation (1-based images).
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty one-line notation".into()));
        }
        if n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("rank {n} too large")));
        }
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u8).collect(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(images.iter().map(|&x| x as usize).collect()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).collect(),
        }
    }

    /// The simple reflection `s_i`, `1 <= i < n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::GeneratorOutOfRange { index: i, n });
        }
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    /// `w0(i) = n + 1 - i`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).rev().collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x as usize == k + 1)
    }

    pub fn multiply(&self, other: &Permutation) -> Result<Permutation> {
        check_rank(self.rank(), other.rank())?;
        Ok(self.compose(other))
    }

    pub(crate) fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&j| self.images[j as usize - 1])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.rank()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x as usize - 1] = (k + 1) as u8;
        }
        Permutation { images: inv }
    }

    /// Inversion count.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Bitmask of right descents: bit `i` set iff `w(i) > w(i+1)`.
    pub fn right_descent_mask(&self) -> u64 {
        let mut mask = 0;
        for i in 1..self.rank() {
            if self.images[i - 1] > self.images[i] {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Bitmask of left descents: bit `i` set iff `i+1` occurs before `i` in `w`.
    pub fn left_descent_mask(&self) -> u64 {
        let n = self.rank();
        let mut pos = vec![0usize; n + 1];
        for (k, &x) in self.images.iter().enumerate() {
            pos[x as usize] = k;
        }
        let mut mask = 0;
        for i in 1..n {
            if pos[i] > pos[i + 1] {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn descents(&self, side: Side) -> Vec<usize> {
        let mask = match side {
            Side::Left => self.left_descent_mask(),
            Side::Right => self.right_descent_mask(),
        };
        (1..self.rank()).filter(|i| mask & (1 << i) != 0).collect()
    }

    /// `w * s_i`: swaps positions `i` and `i+1`.
    pub fn mul_simple_right(&self, i: usize) -> Permutation {
        let mut p = self.clone();
        p.images.swap(i - 1, i);
        p
    }

    /// `s_i * w`: swaps the values `i` and `i+1`.
    pub fn mul_simple_left(&self, i: usize) -> Permutation {
        let (a, b) = (i as u8, i as u8 + 1);
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| if x == a { b } else if x == b { a } else { x })
                .collect(),
        }
    }

    /// Bruhat order via the rank-matrix criterion.
    pub fn bruhat_leq(&self, other: &Permutation) -> Result<bool> {
        check_rank(self.rank(), other.rank())?;
        Ok(self.bruhat_leq_unchecked(other))
    }

    pub(crate) fn bruhat_leq_unchecked(&self, w: &Permutation) -> bool {
        let n = self.rank();
        // counts[j] = |{k <= i : x(k) <= j}| - |{k <= i : w(k) <= j}|, updated row by row
        let mut diff = vec![0i32; n + 1];
        for i in 0..n {
            let a = self.images[i] as usize;
            let b = w.images[i] as usize;
            for (j, d) in diff.iter_mut().enumerate().skip(1) {
                if a <= j {
                    *d += 1;
                }
                if b <= j {
                    *d -= 1;
                }
                if *d < 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Lexicographically smallest reduced word, built by peeling right descents.
    pub fn reduced_word(&self) -> CoxeterWord {
        let mut letters = Vec::with_capacity(self.length());
        let mut w = self.clone();
        loop {
            let mask = w.right_descent_mask();
            if mask == 0 {
                break;
            }
            let i = mask.trailing_zeros() as usize;
            letters.push(i);
            w = w.mul_simple_right(i);
        }
        letters.reverse();
        CoxeterWord {
            n: self.rank(),
            letters,
        }
    }

    /// The image under conjugation by `w0`, i.e. `s_i -> s_{n-i}`.
    pub fn flip(&self) -> Permutation {
        let n = self.rank() as u8;
        Permutation {
            images: self.images.iter().rev().map(|&x| n + 1 - x).collect(),
        }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on rank mismatch; use [`Permutation::multiply`] for a checked product.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        self.compose(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let images = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(format!("bad entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

/// A word in the simple reflections `s_1, ..., s_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterWord {
    pub n: usize,
    pub letters: Vec<usize>,
}

impl CoxeterWord {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        if let Some(&index) = letters.iter().find(|&&i| i == 0 || i >= n) {
            return Err(Error::GeneratorOutOfRange { index, n });
        }
        Ok(CoxeterWord { n, letters })
    }

    /// Parses whitespace-separated tokens `s1 s2 s1`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for tok in s.split_whitespace() {
            let pos = s[offset..].find(tok).map_or(offset, |p| p + offset);
            offset = pos + tok.len();
            let index = tok
                .strip_prefix('s')
                .and_then(|d| d.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse {
                    pos,
                    msg: format!("expected a generator like s1, found {tok:?}"),
                })?;
            letters.push(index);
        }
        Self::new(n, letters)
    }

    pub fn evaluate(&self) -> Permutation {
        self.letters
            .iter()
            .fold(Permutation::identity(self.n), |w, &i| w.mul_simple_right(i))
    }

    pub fn is_reduced(&self) -> bool {
        self.evaluate().length() == self.letters.len()
    }
}

impl fmt::Display for CoxeterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

pub fn longest_element(n: usize) -> Permutation {
    Permutation::longest(n)
}

/// `N = n(n-1)/2`, the length of `w0` and the dimension of the flag variety.
pub fn num_positive_roots(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// All elements of `S_n` in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 || n > MAX_EXHAUSTIVE_RANK {
        return Err(Error::RankCap {
            what: "exhaustive enumeration of S_n",
            n,
            cap: MAX_EXHAUSTIVE_RANK,
        });
    }
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=n as u8).collect();
    loop {
        out.push(Permutation {
            images: cur.clone(),
        });
        // next permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    Ok(out)
}
