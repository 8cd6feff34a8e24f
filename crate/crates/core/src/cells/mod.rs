//! Kazhdan-Lusztig cells and Lusztig's a-function for `S_n`.
//!
//! Two independent routes produce the two-sided cells: the KL preorder
//! generated from multiplication by `C'_s` (slow, small ranks), and the RSK
//! shape map with dominance order (fast). Likewise the a-function is available
//! from structure constants of the `C'` basis and from the shape statistic.
//!
//! Preorder convention: `x <= y` when `C'_x` occurs in `h C'_y` for some `h`,
//! so `{1}` is the largest cell and `{w0}` the smallest.

mod group;
pub mod hecke;
pub mod kl;
pub mod rsk;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{check_rank, Error, Result};
use crate::partition::Partition;
use crate::weyl::{all_permutations, Permutation};

use hecke::{dense_zero, multiply, to_sparse, Dense, Laurent};

pub use hecke::HeckeElement;
pub use kl::{bar_solve_table, kl_polynomial, mu, KlPolynomial, KlTable};
pub use rsk::{rsk, shape, Tableau};

pub const MAX_FAST_CELLS_RANK: usize = 10;
pub const MAX_ORACLE_CELLS_RANK: usize = 5;
pub const MAX_PRODUCT_RANK: usize = 5;
pub const MAX_A_ORACLE_RANK: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellMethod {
    /// RSK shapes and dominance order.
    Fast,
    /// Transitive closure of the KL left and right preorders.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: usize,
    pub shape: Partition,
    pub members: Vec<Permutation>,
}

/// Two-sided cells of `S_n` with their partial order.
///
/// Cells are listed by decreasing lexicographic order of shape, so cell `0`
/// is `{1}` and the last cell is `{w0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDecomposition {
    pub n: usize,
    pub cells: Vec<Cell>,
    /// `order[i][j]` iff cell `i` precedes or equals cell `j`.
    pub order: Vec<Vec<bool>>,
}

impl CellDecomposition {
    pub fn cell_of(&self, w: &Permutation) -> Option<usize> {
        self.cells.iter().position(|c| c.members.binary_search(w).is_ok())
    }

    pub fn cell_with_shape(&self, shape: &Partition) -> Option<usize> {
        self.cells.iter().position(|c| c.shape == *shape)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order[i][j]
    }

    pub fn a_value_of_cell(&self, i: usize) -> usize {
        self.cells[i].shape.n_statistic()
    }

    /// Hasse diagram of the cell order as a DOT digraph, edges pointing down.
    pub fn to_dot(&self) -> String {
        let k = self.cells.len();
        let mut out = String::from("digraph cells {\n");
        for c in &self.cells {
            let _ = writeln!(
                out,
                "  c{} [label=\"{} a={} size={}\"];",
                c.id,
                c.shape,
                c.shape.n_statistic(),
                c.members.len()
            );
        }
        for hi in 0..k {
            for lo in 0..k {
                if hi == lo || !self.order[lo][hi] {
                    continue;
                }
                let covered = (0..k).all(|m| {
                    m == hi || m == lo || !(self.order[lo][m] && self.order[m][hi])
                });
                if covered {
                    let _ = writeln!(out, "  c{hi} -> c{lo};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

pub fn two_sided_cells(n: usize, method: CellMethod) -> Result<CellDecomposition> {
    match method {
        CellMethod::Fast => fast_cells(n),
        CellMethod::Oracle => oracle_cells(n),
    }
}

fn assemble(n: usize, groups: BTreeMap<Partition, Vec<Permutation>>, order: impl Fn(&Cell, &Cell) -> bool) -> CellDecomposition {
    let cells: Vec<Cell> = groups
        .into_iter()
        .rev()
        .enumerate()
        .map(|(id, (shape, mut members))| {
            members.sort();
            Cell { id, shape, members }
        })
        .collect();
    let order = cells
        .iter()
        .map(|a| cells.iter().map(|b| order(a, b)).collect())
        .collect();
    CellDecomposition { n, cells, order }
}

fn fast_cells(n: usize) -> Result<CellDecomposition> {
    if n > MAX_FAST_CELLS_RANK {
        return Err(Error::RankCap {
            what: "RSK cell decomposition",
            n,
            cap: MAX_FAST_CELLS_RANK,
        });
    }
    let perms = all_permutations(n)?;
    let shapes: Vec<Partition> = perms.par_iter().map(shape).collect();
    let mut groups: BTreeMap<Partition, Vec<Permutation>> = BTreeMap::new();
    for (w, lam) in perms.into_iter().zip(shapes) {
        groups.entry(lam).or_default().push(w);
    }
    Ok(assemble(n, groups, |a, b| b.shape.dominates(&a.shape)))
}

fn oracle_cells(n: usize) -> Result<CellDecomposition> {
    if n > MAX_ORACLE_CELLS_RANK {
        return Err(Error::RankCap {
            what: "KL preorder cell oracle",
            n,
            cap: MAX_ORACLE_CELLS_RANK,
        });
    }
    kl::with_table(n, |table| {
        let size = table.group().size();
        // below[w] lists x with x <=_L w or x <=_R w (generating relations)
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); size];
        for w in 0..size {
            for s in 1..n {
                let g = table.group();
                let sw = g.lmul[s][w];
                if g.len[sw] < g.len[w] {
                    continue;
                }
                below[w].push(sw);
                let col: Vec<usize> = table.column(w).keys().copied().collect();
                for z in col {
                    if z != w && table.group().is_left_descent(s, z) && table.mu_idx(z, w) != 0 {
                        below[w].push(z);
                    }
                }
            }
        }
        let g = table.group();
        let mut gens: Vec<Vec<usize>> = below.clone();
        for (w, xs) in below.iter().enumerate() {
            for &x in xs {
                gens[g.inv[w]].push(g.inv[x]);
            }
        }
        // reach[w][x]: x <= w in the two-sided preorder
        let reach: Vec<Vec<bool>> = (0..size)
            .map(|w| {
                let mut seen = vec![false; size];
                seen[w] = true;
                let mut queue = VecDeque::from([w]);
                while let Some(u) = queue.pop_front() {
                    for &x in &gens[u] {
                        if !seen[x] {
                            seen[x] = true;
                            queue.push_back(x);
                        }
                    }
                }
                seen
            })
            .collect();

        let mut class_of = vec![usize::MAX; size];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for w in 0..size {
            if class_of[w] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = (0..size).filter(|&x| reach[w][x] && reach[x][w]).collect();
            for &x in &members {
                class_of[x] = classes.len();
            }
            classes.push(members);
        }
        let mut groups: BTreeMap<Partition, Vec<Permutation>> = BTreeMap::new();
        for members in &classes {
            let label = shape(&g.elems[members[0]]);
            if members.iter().any(|&x| shape(&g.elems[x]) != label) || groups.contains_key(&label) {
                return Err(Error::Domain(format!(
                    "KL preorder classes are not RSK-shape fibers at shape {label}"
                )));
            }
            groups.insert(label, members.iter().map(|&x| g.elems[x].clone()).collect());
        }
        let index = &g.index;
        Ok(assemble(n, groups, |a, b| {
            let ra = index[&a.members[0]];
            let rb = index[&b.members[0]];
            reach[rb][ra]
        }))
    })?
}

/// `a(w) = n(shape(w))`.
pub fn a_value(w: &Permutation) -> usize {
    shape(w).n_statistic()
}

/// Kazhdan-Lusztig basis element `C'_w` in the standard basis.
fn kl_basis_element(table: &mut KlTable, w: usize) -> Dense {
    let g = table.group();
    let lw = g.len[w] as i32;
    let lens = g.len.clone();
    let mut out = dense_zero(table.group());
    let col: Vec<(usize, KlPolynomial)> = table.column(w).iter().map(|(&x, p)| (x, p.clone())).collect();
    for (x, p) in col {
        // h_{x,w}(v) = v^{l(w)-l(x)} P_{x,w}(v^-2)
        let d = lw - lens[x] as i32;
        let mut h = Laurent::zero();
        for (k, &c) in p.coeffs().iter().enumerate() {
            h = &h + &Laurent::monomial(c, d - 2 * k as i32);
        }
        out[x] = h;
    }
    out
}

/// Rewrites an element of the standard basis in the `C'` basis by peeling off top terms.
fn to_kl_basis(table: &mut KlTable, mut a: Dense, basis: &mut HashMap<usize, Dense>) -> Dense {
    let size = a.len();
    let mut out = dense_zero(table.group());
    for z in (0..size).rev() {
        if a[z].is_zero() {
            continue;
        }
        let c = a[z].clone();
        let cz = basis.entry(z).or_insert_with(|| kl_basis_element(table, z));
        for (x, h) in cz.iter().enumerate() {
            if !h.is_zero() {
                a[x] = &a[x] - &(&c * h);
            }
        }
        out[z] = c;
    }
    out
}

/// Structure constants `h_{x,y,z}` with `C'_x C'_y = sum_z h_{x,y,z} C'_z`.
pub fn kl_basis_product(x: &Permutation, y: &Permutation) -> Result<HeckeElement> {
    check_rank(x.rank(), y.rank())?;
    let n = x.rank();
    if n > MAX_PRODUCT_RANK {
        return Err(Error::RankCap {
            what: "KL basis products",
            n,
            cap: MAX_PRODUCT_RANK,
        });
    }
    kl::with_table(n, |table| {
        let (xi, yi) = (table.group().idx(x), table.group().idx(y));
        let cx = kl_basis_element(table, xi);
        let cy = kl_basis_element(table, yi);
        let prod = multiply(table.group(), &cx, &cy);
        let mut basis = HashMap::new();
        let coeffs = to_kl_basis(table, prod, &mut basis);
        to_sparse(table.group(), &coeffs)
    })
}

thread_local! {
    static A_ORACLE: std::cell::RefCell<HashMap<usize, HashMap<Permutation, usize>>> =
        std::cell::RefCell::new(HashMap::new());
}

/// All a-values of `S_n` as `max_{x,y} deg_v h_{x,y,z}`.
pub fn a_values_by_structure_constants(n: usize) -> Result<HashMap<Permutation, usize>> {
    if n > MAX_A_ORACLE_RANK {
        return Err(Error::RankCap {
            what: "structure-constant a-function",
            n,
            cap: MAX_A_ORACLE_RANK,
        });
    }
    if let Some(hit) = A_ORACLE.with(|c| c.borrow().get(&n).cloned()) {
        return Ok(hit);
    }
    let values = kl::with_table(n, |table| {
        let size = table.group().size();
        let basis_elems: Vec<Dense> = (0..size).map(|w| kl_basis_element(table, w)).collect();
        let mut basis: HashMap<usize, Dense> = basis_elems.iter().cloned().enumerate().collect();
        let mut a = vec![0i32; size];
        for cy in &basis_elems {
            let multiples = hecke::left_multiples(table.group(), cy);
            for cx in &basis_elems {
                let mut prod = dense_zero(table.group());
                for (u, c) in cx.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (z, d) in multiples[u].iter().enumerate() {
                        if !d.is_zero() {
                            prod[z] = &prod[z] + &(c * d);
                        }
                    }
                }
                let h = to_kl_basis(table, prod, &mut basis);
                for (z, hz) in h.iter().enumerate() {
                    if let Some(d) = hz.degree() {
                        a[z] = a[z].max(d);
                    }
                }
            }
        }
        let g = table.group();
        (0..size)
            .map(|z| (g.elems[z].clone(), a[z].max(0) as usize))
            .collect::<HashMap<_, _>>()
    })?;
    A_ORACLE.with(|c| c.borrow_mut().insert(n, values.clone()));
    Ok(values)
}

pub fn a_value_oracle(z: &Permutation) -> Result<usize> {
    Ok(a_values_by_structure_constants(z.rank())?[z])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::num_positive_roots;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn quadratic_relation_in_kl_basis() {
        let s = p("2,1");
        let prod = kl_basis_product(&s, &s).unwrap();
        assert_eq!(prod.len(), 1);
        assert_eq!(prod[&s], Laurent::from_coeffs(-1, vec![1, 0, 1]));
        let e = Permutation::identity(3);
        for y in all_permutations(3).unwrap() {
            let prod = kl_basis_product(&e, &y).unwrap();
            assert_eq!(prod, HeckeElement::from([(y.clone(), Laurent::one())]));
        }
    }

    #[test]
    fn longest_element_squared() {
        let w0 = Permutation::longest(3);
        let prod = kl_basis_product(&w0, &w0).unwrap();
        // v^-3 [3]_{v^2}! = v^-3 + 2v^-1 + 2v + v^3
        assert_eq!(prod, HeckeElement::from([(w0, Laurent::from_coeffs(-3, vec![1, 0, 2, 0, 2, 0, 1]))]));
    }

    #[test]
    fn structure_constants_are_bar_invariant() {
        let all = all_permutations(3).unwrap();
        for x in &all {
            for y in &all {
                for h in kl_basis_product(x, y).unwrap().values() {
                    assert_eq!(h.bar(), *h);
                    assert!(h.terms().all(|(_, c)| c >= 0));
                }
            }
        }
    }

    #[test]
    fn a_oracle_examples() {
        assert_eq!(a_value_oracle(&Permutation::identity(3)).unwrap(), 0);
        assert_eq!(a_value_oracle(&Permutation::longest(3)).unwrap(), 3);
        assert_eq!(a_value_oracle(&p("2,1,3")).unwrap(), 1);
        for n in 1..=4 {
            for (w, a) in a_values_by_structure_constants(n).unwrap() {
                assert_eq!(a, a_value(&w), "{w}");
            }
            assert_eq!(a_value(&Permutation::longest(n)), num_positive_roots(n));
        }
        assert!(a_value_oracle(&Permutation::identity(5)).is_err());
    }

    #[test]
    fn small_cells() {
        for method in [CellMethod::Fast, CellMethod::Oracle] {
            let c2 = two_sided_cells(2, method).unwrap();
            assert_eq!(c2.cells.len(), 2);
            assert_eq!(c2.cells[0].members, vec![Permutation::identity(2)]);
            assert!(c2.leq(1, 0) && !c2.leq(0, 1));

            let c3 = two_sided_cells(3, method).unwrap();
            let sizes: Vec<usize> = c3.cells.iter().map(|c| c.members.len()).collect();
            assert_eq!(sizes, vec![1, 4, 1]);
            let shapes: Vec<String> = c3.cells.iter().map(|c| c.shape.to_string()).collect();
            assert_eq!(shapes, vec!["[3]", "[2,1]", "[1,1,1]"]);
            for w in &c3.cells[1].members {
                assert_eq!(a_value(w), 1);
            }
            assert_eq!(two_sided_cells(4, method).unwrap().cells.len(), 5);
        }
    }

    #[test]
    fn oracle_matches_fast_path() {
        for n in 1..=5 {
            let fast = two_sided_cells(n, CellMethod::Fast).unwrap();
            let oracle = two_sided_cells(n, CellMethod::Oracle).unwrap();
            assert_eq!(fast, oracle, "n = {n}");
        }
    }

    #[test]
    fn a_reverses_cell_order() {
        for n in 1..=5 {
            let cells = two_sided_cells(n, CellMethod::Oracle).unwrap();
            let k = cells.cells.len();
            assert_eq!(cells.cell_of(&Permutation::identity(n)), Some(0));
            assert_eq!(cells.cell_of(&Permutation::longest(n)), Some(k - 1));
            for i in 0..k {
                assert!(cells.leq(k - 1, i) && cells.leq(i, 0));
                for j in 0..k {
                    if cells.leq(i, j) {
                        assert!(cells.a_value_of_cell(j) <= cells.a_value_of_cell(i));
                    }
                }
            }
        }
    }

    #[test]
    fn dot_output() {
        let dot = two_sided_cells(3, CellMethod::Fast).unwrap().to_dot();
        assert!(dot.starts_with("digraph cells {"));
        assert!(dot.contains("c0 -> c1;") && dot.contains("c1 -> c2;"));
        assert!(!dot.contains("c0 -> c2;"));
    }

    #[test]
    fn rank_caps() {
        assert!(two_sided_cells(6, CellMethod::Oracle).is_err());
        assert!(two_sided_cells(11, CellMethod::Fast).is_err());
        assert!(kl_basis_product(&Permutation::identity(6), &Permutation::identity(6)).is_err());
    }
}
