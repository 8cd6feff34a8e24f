//! Complete flags in `F^n` as canonical bases.
//!
//! The flag spanned by columns `v_1, ..., v_n` is stored as the matrix whose
//! column `j` is `v_j` reduced against the pivots of columns `1..j` (taken in
//! increasing order) and scaled so that its pivot, the bottom-most nonzero
//! entry, is 1. Equal flags give equal matrices.

use std::fmt;

use super::field::{Elem, Field};
use crate::error::{Error, Result};
use crate::poly::q_factorial;
use crate::weyl::{all_permutations, Permutation};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub const DEFAULT_FLAG_CAP: usize = 1_000_000;

/// Column-major `n x n` matrix over a [`Field`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    n: usize,
    entries: Vec<Elem>,
}

impl Flag {
    /// The flag spanned by the columns of an invertible matrix given column by column.
    pub fn from_columns(field: &Field, columns: &[Vec<Elem>]) -> Result<Flag> {
        let n = columns.len();
        if n == 0 || columns.iter().any(|c| c.len() != n) {
            return Err(Error::Domain("a flag needs n columns of length n".into()));
        }
        if columns.iter().flatten().any(|&x| x as usize >= field.size()) {
            return Err(Error::Field("matrix entry outside the field".into()));
        }
        let entries: Vec<Elem> = columns.iter().flatten().copied().collect();
        canonicalize(field, n, entries).ok_or_else(|| Error::Domain("columns are linearly dependent".into()))
    }

    /// The standard flag `<e_1> < <e_1, e_2> < ...`.
    pub fn standard(n: usize) -> Flag {
        Flag::permutation(&Permutation::identity(n))
    }

    /// The flag of the permutation matrix of `w`: column `j` is `e_{w(j)}`.
    pub fn permutation(w: &Permutation) -> Flag {
        let n = w.rank();
        let mut entries = vec![0; n * n];
        for j in 0..n {
            entries[j * n + w.apply(j + 1) - 1] = 1;
        }
        Flag { n, entries }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn column(&self, j: usize) -> &[Elem] {
        &self.entries[j * self.n..(j + 1) * self.n]
    }

    pub fn entry(&self, row: usize, col: usize) -> Elem {
        self.entries[col * self.n + row]
    }

    pub fn as_bytes(&self) -> &[Elem] {
        &self.entries
    }

    /// The permutation sending `j` to the pivot row of column `j`: the Bruhat
    /// cell of the flag relative to the standard one.
    pub fn pivots(&self) -> Permutation {
        let images = (0..self.n)
            .map(|j| self.column(j).iter().rposition(|&x| x != 0).unwrap() as u8 + 1)
            .collect();
        Permutation::from_images_unchecked(images)
    }

    /// `g F` where `g` has the columns of `self`, applied to the flag `other`.
    pub fn translate(&self, field: &Field, other: &Flag) -> Flag {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for j in 0..n {
            let col = other.column(j);
            for (k, &c) in col.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for i in 0..n {
                    let t = field.mul(self.entry(i, k), c);
                    entries[j * n + i] = field.add(entries[j * n + i], t);
                }
            }
        }
        canonicalize(field, n, entries).expect("product of invertible matrices")
    }

    /// Entrywise `x -> x^{p^e}`; the canonical form is preserved.
    pub fn frobenius(&self, field: &Field, e: u32) -> Flag {
        Flag {
            n: self.n,
            entries: self.entries.iter().map(|&x| field.frobenius(x, e)).collect(),
        }
    }
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for j in 0..self.n {
            if j > 0 {
                f.write_str(" | ")?;
            }
            for (i, x) in self.column(j).iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        f.write_str("]")
    }
}

fn canonicalize(field: &Field, n: usize, mut entries: Vec<Elem>) -> Option<Flag> {
    let mut pivot_rows: Vec<usize> = Vec::with_capacity(n);
    for j in 0..n {
        for (i, &r) in pivot_rows.iter().enumerate() {
            let c = entries[j * n + r];
            if c == 0 {
                continue;
            }
            for row in 0..n {
                let t = field.mul(c, entries[i * n + row]);
                entries[j * n + row] = field.sub(entries[j * n + row], t);
            }
        }
        let col = &mut entries[j * n..(j + 1) * n];
        let r = col.iter().rposition(|&x| x != 0)?;
        let s = field.inv(col[r]).unwrap();
        for x in col.iter_mut() {
            *x = field.mul(*x, s);
        }
        pivot_rows.push(r);
    }
    Some(Flag { n, entries })
}

/// `[n]_q!` as a machine integer, if it fits.
pub fn flag_count(n: usize, q: usize) -> Option<u64> {
    q_factorial(n).eval(&BigInt::from(q)).to_u64()
}

/// All complete flags of `F^n`, in a fixed order.
pub fn enumerate_flags(n: usize, field: &Field, cap: usize) -> Result<Vec<Flag>> {
    if n == 0 {
        return Err(Error::Domain("rank must be positive".into()));
    }
    let total = flag_count(n, field.size()).filter(|&c| c <= cap as u64);
    let Some(total) = total else {
        return Err(Error::ResourceCap {
            what: "number of flags",
            cap,
        });
    };
    let mut out = Vec::with_capacity(total as usize);
    for sigma in all_permutations(n)? {
        // free positions: above the pivot, outside earlier pivot rows
        let mut free: Vec<(usize, usize)> = Vec::new();
        let mut used = vec![false; n];
        for j in 0..n {
            let r = sigma.apply(j + 1) - 1;
            for (row, &u) in used.iter().enumerate().take(r) {
                if !u {
                    free.push((j, row));
                }
            }
            used[r] = true;
        }
        let base = Flag::permutation(&sigma);
        let q = field.size();
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut f = base.clone();
            for (&(j, row), &d) in free.iter().zip(&digits) {
                f.entries[j * n + row] = d as Elem;
            }
            out.push(f);
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < q {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }
    debug_assert_eq!(out.len() as u64, total);
    Ok(out)
}

/// Row-echelon rank tracker for growing a spanning set one vector at a time.
struct Span<'a> {
    field: &'a Field,
    rows: Vec<(usize, Vec<Elem>)>,
}

impl<'a> Span<'a> {
    fn new(field: &'a Field) -> Self {
        Span { field, rows: Vec::new() }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn push(&mut self, v: &[Elem]) {
        let f = self.field;
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        if let Some(p) = v.iter().position(|&x| x != 0) {
            let s = f.inv(v[p]).unwrap();
            for x in v.iter_mut() {
                *x = f.mul(*x, s);
            }
            self.rows.push((p, v));
        }
    }
}

/// `d[i][j] = dim(V_i cap W_j)` for `0 <= i, j <= n`.
pub fn intersection_dims(field: &Field, a: &Flag, b: &Flag) -> Vec<Vec<usize>> {
    let n = a.n;
    let mut d = vec![vec![0; n + 1]; n + 1];
    for (i, row) in d.iter_mut().enumerate().skip(1) {
        let mut span = Span::new(field);
        for k in 0..i {
            span.push(a.column(k));
        }
        for j in 1..=n {
            span.push(b.column(j - 1));
            row[j] = i + j - span.dim();
        }
    }
    d
}

/// The `w` with `d_{i,j} - d_{i-1,j} - d_{i,j-1} + d_{i-1,j-1} = [j = w(i)]`.
pub fn relative_position(field: &Field, a: &Flag, b: &Flag) -> Result<Permutation> {
    if a.n != b.n {
        return Err(Error::RankMismatch { left: a.n, right: b.n });
    }
    let n = a.n;
    let d = intersection_dims(field, a, b);
    let mut images = Vec::with_capacity(n);
    for i in 1..=n {
        let j = (1..=n)
            .find(|&j| d[i][j] + d[i - 1][j - 1] == d[i - 1][j] + d[i][j - 1] + 1)
            .ok_or_else(|| Error::Field("flag entries outside the field".into()))?;
        images.push(j as u8);
    }
    Ok(Permutation::from_images_unchecked(images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn f(p: u32, k: u32) -> Field {
        Field::new(p, k).unwrap()
    }

    /// All vectors of the span of some columns, as a set.
    fn span_set(field: &Field, n: usize, cols: &[&[Elem]]) -> HashSet<Vec<Elem>> {
        let q = field.size();
        let mut out = HashSet::new();
        let total = q.pow(cols.len() as u32);
        for mut code in 0..total {
            let mut v = vec![0; n];
            for c in cols {
                let a = (code % q) as Elem;
                code /= q;
                for (x, &y) in v.iter_mut().zip(c.iter()) {
                    *x = field.add(*x, field.mul(a, y));
                }
            }
            out.insert(v);
        }
        out
    }

    fn subspaces(field: &Field, fl: &Flag) -> Vec<HashSet<Vec<Elem>>> {
        let cols: Vec<&[Elem]> = (0..fl.rank()).map(|j| fl.column(j)).collect();
        (0..=fl.rank()).map(|i| span_set(field, fl.rank(), &cols[..i])).collect()
    }

    /// Relative position from intersection sizes counted vector by vector.
    fn relpos_oracle(field: &Field, a: &Flag, b: &Flag) -> Permutation {
        let n = a.rank();
        let (va, vb) = (subspaces(field, a), subspaces(field, b));
        let q = field.size();
        let dim = |i: usize, j: usize| {
            let common = va[i].intersection(&vb[j]).count();
            (0..=n).find(|&d| q.pow(d as u32) == common).unwrap() as i64
        };
        let mut images = vec![0; n];
        for i in 1..=n {
            for j in 1..=n {
                if dim(i, j) - dim(i - 1, j) - dim(i, j - 1) + dim(i - 1, j - 1) == 1 {
                    images[i - 1] = j;
                }
            }
        }
        Permutation::new(images).unwrap()
    }

    #[test]
    fn flag_counts() {
        assert_eq!(enumerate_flags(2, &f(2, 1), DEFAULT_FLAG_CAP).unwrap().len(), 3);
        assert_eq!(enumerate_flags(3, &f(2, 1), DEFAULT_FLAG_CAP).unwrap().len(), 21);
        assert_eq!(enumerate_flags(2, &f(2, 2), DEFAULT_FLAG_CAP).unwrap().len(), 5);
        for (n, p, k) in [(3, 3, 1), (3, 2, 2), (4, 2, 1), (2, 5, 2), (3, 3, 2)] {
            let field = f(p, k);
            let flags = enumerate_flags(n, &field, DEFAULT_FLAG_CAP).unwrap();
            assert_eq!(flags.len() as u64, flag_count(n, field.size()).unwrap());
            let distinct: HashSet<_> = flags.iter().collect();
            assert_eq!(distinct.len(), flags.len());
            for fl in &flags {
                // already canonical
                let cols: Vec<Vec<Elem>> = (0..n).map(|j| fl.column(j).to_vec()).collect();
                assert_eq!(&Flag::from_columns(&field, &cols).unwrap(), fl);
            }
        }
        assert!(matches!(
            enumerate_flags(3, &f(2, 1), 20),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn canonical_form_is_a_flag_invariant() {
        // every basis of every flag of F_3^2 and some of F_2^3 canonicalize the same way
        let field = f(3, 1);
        let flags = enumerate_flags(2, &field, DEFAULT_FLAG_CAP).unwrap();
        for fl in &flags {
            let (v1, v2) = (fl.column(0), fl.column(1));
            for a in 1..3u8 {
                for b in 0..3u8 {
                    for c in 1..3u8 {
                        let c1: Vec<Elem> = v1.iter().map(|&x| field.mul(a, x)).collect();
                        let c2: Vec<Elem> = v1
                            .iter()
                            .zip(v2)
                            .map(|(&x, &y)| field.add(field.mul(b, x), field.mul(c, y)))
                            .collect();
                        assert_eq!(&Flag::from_columns(&field, &[c1, c2]).unwrap(), fl);
                    }
                }
            }
        }
        assert!(Flag::from_columns(&field, &[vec![1, 1], vec![2, 2]]).is_err());
    }

    #[test]
    fn relative_position_examples() {
        let field = f(2, 1);
        for n in 1..=4 {
            let e = Flag::standard(n);
            assert!(relative_position(&field, &e, &e).unwrap().is_identity());
            let w0 = Permutation::longest(n);
            assert_eq!(relative_position(&field, &e, &Flag::permutation(&w0)).unwrap(), w0);
            for w in all_permutations(n).unwrap() {
                assert_eq!(relative_position(&field, &e, &Flag::permutation(&w)).unwrap(), w.inverse());
                // the pivots of a flag give its cell relative to the standard flag
                assert_eq!(Flag::permutation(&w).pivots(), w);
            }
        }
    }

    #[test]
    fn relative_position_matches_oracle_and_inverts() {
        for (n, field) in [(3, f(2, 1)), (2, f(2, 2)), (2, f(3, 1))] {
            let flags = enumerate_flags(n, &field, DEFAULT_FLAG_CAP).unwrap();
            for a in &flags {
                for b in &flags {
                    let w = relative_position(&field, a, b).unwrap();
                    assert_eq!(w, relpos_oracle(&field, a, b));
                    assert_eq!(relative_position(&field, b, a).unwrap(), w.inverse());
                }
                assert_eq!(relative_position(&field, &Flag::standard(n), a).unwrap(), a.pivots().inverse());
            }
        }
    }

    #[test]
    fn translation_preserves_relative_position() {
        let field = f(2, 1);
        let flags = enumerate_flags(3, &field, DEFAULT_FLAG_CAP).unwrap();
        for g in flags.iter().step_by(4) {
            for a in flags.iter().step_by(3) {
                for b in &flags {
                    assert_eq!(
                        relative_position(&field, &g.translate(&field, a), &g.translate(&field, b)).unwrap(),
                        relative_position(&field, a, b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn frobenius_of_flags() {
        let field = f(2, 2);
        let flags = enumerate_flags(2, &field, DEFAULT_FLAG_CAP).unwrap();
        let fixed = flags.iter().filter(|fl| fl.frobenius(&field, 1) == **fl).count();
        assert_eq!(fixed, 3);
        for fl in &flags {
            let cols: Vec<Vec<Elem>> = (0..2).map(|j| fl.frobenius(&field, 1).column(j).to_vec()).collect();
            assert_eq!(Flag::from_columns(&field, &cols).unwrap(), fl.frobenius(&field, 1));
            assert_eq!(&fl.frobenius(&field, 2), fl);
        }
    }
}
