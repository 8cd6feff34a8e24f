//! Kazhdan-Lusztig polynomials.
//!
//! [`KlTable`] runs the classical recursion: for a left descent `s` of `w`
//! with `v = sw`,
//!
//! ```text
//! P_{x,w} = q^{1-c} P_{sx,v} + q^c P_{x,v}
//!           - sum_{z < v, sz < z} mu(z,v) q^{(l(w)-l(z))/2} P_{x,z}
//! ```
//!
//! where `c = 1` if `sx < x` and `0` otherwise. [`bar_solve_table`] is an
//! independent route: it builds each `C'_w` by solving the bar-invariance
//! condition against the action of the bar involution on the standard basis.

use std::cell::RefCell;
use std::collections::HashMap;

use super::group::GroupTable;
use super::hecke::{bar_of_standard_basis, Laurent};
use crate::error::{check_rank, Error, Result};
use crate::poly::Poly;
use crate::weyl::Permutation;

/// KL polynomial in `q`, non-negative integer coefficients.
pub type KlPolynomial = Poly<i64>;

/// Rank cap for KL polynomial queries.
pub const MAX_KL_RANK: usize = 7;

/// Rank cap for the bar-invariance oracle.
pub const MAX_BAR_SOLVE_RANK: usize = 5;

/// Memoized KL polynomials for one rank; columns are filled on demand.
#[derive(Debug)]
pub struct KlTable {
    g: GroupTable,
    /// `columns[w]` maps `x <= w` to `P_{x,w}` (zero entries omitted).
    columns: Vec<Option<HashMap<usize, KlPolynomial>>>,
}

impl KlTable {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_KL_RANK {
            return Err(Error::RankCap {
                what: "Kazhdan-Lusztig polynomials",
                n,
                cap: MAX_KL_RANK,
            });
        }
        let g = GroupTable::new(n)?;
        let columns = vec![None; g.size()];
        Ok(KlTable { g, columns })
    }

    pub fn rank(&self) -> usize {
        self.g.n
    }

    pub(crate) fn group(&self) -> &GroupTable {
        &self.g
    }

    pub fn polynomial(&mut self, x: &Permutation, w: &Permutation) -> Result<KlPolynomial> {
        check_rank(self.rank(), x.rank())?;
        check_rank(self.rank(), w.rank())?;
        let (xi, wi) = (self.g.idx(x), self.g.idx(w));
        Ok(self.poly_idx(xi, wi))
    }

    /// `mu(x, w)`: the coefficient of `q^{(l(w)-l(x)-1)/2}` in `P_{x,w}`; `0` unless `x < w`.
    pub fn mu(&mut self, x: &Permutation, w: &Permutation) -> Result<i64> {
        check_rank(self.rank(), x.rank())?;
        check_rank(self.rank(), w.rank())?;
        let (xi, wi) = (self.g.idx(x), self.g.idx(w));
        Ok(self.mu_idx(xi, wi))
    }

    pub(crate) fn poly_idx(&mut self, x: usize, w: usize) -> KlPolynomial {
        self.ensure(w);
        self.columns[w].as_ref().unwrap().get(&x).cloned().unwrap_or_else(Poly::zero)
    }

    pub(crate) fn mu_idx(&mut self, x: usize, w: usize) -> i64 {
        let (lx, lw) = (self.g.len[x], self.g.len[w]);
        if lx >= lw || (lw - lx) % 2 == 0 {
            return 0;
        }
        self.poly_idx(x, w).coeff((lw - lx - 1) / 2)
    }

    /// The column of `w`: all `x <= w` with `P_{x,w}`.
    pub(crate) fn column(&mut self, w: usize) -> &HashMap<usize, KlPolynomial> {
        self.ensure(w);
        self.columns[w].as_ref().unwrap()
    }

    fn ensure(&mut self, w: usize) {
        if self.columns[w].is_some() {
            return;
        }
        let Some(s) = self.g.first_left_descent(w) else {
            self.columns[w] = Some(HashMap::from([(w, Poly::one())]));
            return;
        };
        let v = self.g.lmul[s][w];
        self.ensure(v);

        // mu-correction terms: z < v with sz < z and mu(z, v) != 0
        let lv = self.g.len[v];
        let mut corrections: Vec<(usize, i64)> = Vec::new();
        for (&z, p) in self.columns[v].as_ref().unwrap() {
            let lz = self.g.len[z];
            if z == v || (lv - lz).is_multiple_of(2) || !self.g.is_left_descent(s, z) {
                continue;
            }
            let m = p.coeff((lv - lz - 1) / 2);
            if m != 0 {
                corrections.push((z, m));
            }
        }
        for &(z, _) in &corrections {
            self.ensure(z);
        }

        let lw = self.g.len[w];
        let mut col = HashMap::new();
        for x in 0..self.g.size() {
            if !self.g.leq(x, w) {
                continue;
            }
            let sx = self.g.lmul[s][x];
            let c = usize::from(self.g.len[sx] < self.g.len[x]);
            let vcol = self.columns[v].as_ref().unwrap();
            let zero = Poly::zero();
            let p_sx_v = vcol.get(&sx).unwrap_or(&zero);
            let p_x_v = vcol.get(&x).unwrap_or(&zero);
            let mut p = &p_sx_v.shift(1 - c) + &p_x_v.shift(c);
            for &(z, m) in &corrections {
                if let Some(pxz) = self.columns[z].as_ref().unwrap().get(&x) {
                    let lz = self.g.len[z];
                    let term = Poly::new(pxz.coeffs().iter().map(|a| a * m).collect())
                        .shift((lw - lz) / 2);
                    p = &p - &term;
                }
            }
            if !p.is_zero() {
                col.insert(x, p);
            }
        }
        self.columns[w] = Some(col);
    }
}

thread_local! {
    static TABLES: RefCell<HashMap<usize, KlTable>> = RefCell::new(HashMap::new());
}

/// Runs `f` against the per-thread memo table for rank `n`.
pub(crate) fn with_table<T>(n: usize, f: impl FnOnce(&mut KlTable) -> T) -> Result<T> {
    TABLES.with(|cell| {
        let mut tables = cell.borrow_mut();
        if let std::collections::hash_map::Entry::Vacant(e) = tables.entry(n) {
            e.insert(KlTable::new(n)?);
        }
        Ok(f(tables.get_mut(&n).unwrap()))
    })
}

pub fn kl_polynomial(x: &Permutation, w: &Permutation) -> Result<KlPolynomial> {
    check_rank(x.rank(), w.rank())?;
    with_table(x.rank(), |t| t.polynomial(x, w))?
}

pub fn mu(x: &Permutation, w: &Permutation) -> Result<i64> {
    check_rank(x.rank(), w.rank())?;
    with_table(x.rank(), |t| t.mu(x, w))?
}

/// All `P_{x,w}` for `S_n` by the bar-invariance solve, keyed by `(x, w)` with `x <= w`.
///
/// Writing `C'_w = sum_y h_{y,w} H_y` with `h_{w,w} = 1`, `h_{y,w} in v Z[v]`,
/// bar invariance gives `h_{y,w} - bar(h_{y,w}) = sum_{y<x<=w} bar(h_{x,w}) r_{y,x}`
/// where `bar(H_x) = sum_y r_{y,x} H_y`; `h_{y,w}` is the positive part of the
/// right-hand side. Then `P_{y,w}(q)` has `q^k` coefficient `[v^{l(w)-l(y)-2k}] h_{y,w}`.
pub fn bar_solve_table(n: usize) -> Result<HashMap<(Permutation, Permutation), KlPolynomial>> {
    if n > MAX_BAR_SOLVE_RANK {
        return Err(Error::RankCap {
            what: "bar-invariance KL oracle",
            n,
            cap: MAX_BAR_SOLVE_RANK,
        });
    }
    let g = GroupTable::new(n)?;
    let bars = bar_of_standard_basis(&g);
    let mut out = HashMap::new();
    for w in 0..g.size() {
        let mut h: Vec<Laurent> = vec![Laurent::zero(); g.size()];
        h[w] = Laurent::one();
        for y in (0..w).rev() {
            if !g.leq(y, w) {
                continue;
            }
            let mut rhs = Laurent::zero();
            for x in y + 1..=w {
                if h[x].is_zero() {
                    continue;
                }
                let r = &bars[x][y];
                if !r.is_zero() {
                    rhs = &rhs + &(&h[x].bar() * r);
                }
            }
            debug_assert_eq!(rhs.coeff(0), 0);
            h[y] = rhs.positive_part();
        }
        let lw = g.len[w] as i32;
        for (y, hy) in h.iter().enumerate() {
            if !g.leq(y, w) {
                continue;
            }
            let d = lw - g.len[y] as i32;
            let coeffs: Vec<i64> = (0..=d.max(0) / 2).map(|k| hy.coeff(d - 2 * k)).collect();
            out.insert((g.elems[y].clone(), g.elems[w].clone()), Poly::new(coeffs));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::all_permutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn base_cases() {
        for w in all_permutations(4).unwrap() {
            assert_eq!(kl_polynomial(&w, &w).unwrap(), Poly::one());
        }
        assert_eq!(kl_polynomial(&p("2,1,3"), &p("1,3,2")).unwrap(), Poly::zero());
    }

    #[test]
    fn singular_3412() {
        let e = Permutation::identity(4);
        assert_eq!(kl_polynomial(&e, &p("3,4,1,2")).unwrap(), Poly::new(vec![1, 1]));
        assert_eq!(kl_polynomial(&e, &p("4,2,3,1")).unwrap(), Poly::new(vec![1, 1]));
        let oracle = bar_solve_table(4).unwrap();
        assert_eq!(oracle[&(e.clone(), p("3,4,1,2"))], Poly::new(vec![1, 1]));
        // l(3412) = 4 is even, so the top slot is empty for x = 1
        assert_eq!(mu(&e, &p("3,4,1,2")).unwrap(), 0);
        assert_eq!(kl_polynomial(&p("1,3,2,4"), &p("3,4,1,2")).unwrap(), Poly::new(vec![1, 1]));
        assert_eq!(mu(&p("1,3,2,4"), &p("3,4,1,2")).unwrap(), 1);
    }

    #[test]
    fn all_smooth_in_s3() {
        let oracle = bar_solve_table(3).unwrap();
        for ((x, w), poly) in &oracle {
            assert_eq!(*poly, Poly::one(), "{x} {w}");
        }
        assert_eq!(oracle.len(), 19);
        assert_eq!(mu(&Permutation::identity(3), &Permutation::longest(3)).unwrap(), 0);
    }

    #[test]
    fn recursion_matches_bar_solve() {
        for n in 1..=5 {
            let oracle = bar_solve_table(n).unwrap();
            let all = all_permutations(n).unwrap();
            for x in &all {
                for w in &all {
                    let expected = oracle.get(&(x.clone(), w.clone())).cloned().unwrap_or_else(Poly::zero);
                    assert_eq!(kl_polynomial(x, w).unwrap(), expected, "{x} {w}");
                }
            }
        }
    }

    #[test]
    fn degree_bound_and_positivity() {
        let all = all_permutations(5).unwrap();
        for w in &all {
            for x in &all {
                let poly = kl_polynomial(x, w).unwrap();
                if x.bruhat_leq(w).unwrap() {
                    assert_eq!(poly.coeff(0), 1);
                    if x != w {
                        let bound = (w.length() - x.length() - 1) / 2;
                        assert!(poly.degree().unwrap() <= bound);
                    }
                    assert!(poly.coeffs().iter().all(|&c| c >= 0));
                } else {
                    assert!(poly.is_zero());
                }
            }
        }
    }

    #[test]
    fn mu_of_covering_pairs() {
        let all = all_permutations(4).unwrap();
        for x in &all {
            for w in &all {
                if w.length() == x.length() + 1 && x.bruhat_leq(w).unwrap() {
                    assert_eq!(mu(x, w).unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn rank_caps() {
        assert!(KlTable::new(8).is_err());
        assert!(bar_solve_table(6).is_err());
        assert!(kl_polynomial(&Permutation::identity(3), &Permutation::identity(4)).is_err());
    }
}
