//! Unipotent characters of `GL_n(q)`, labeled by partitions of `n`.
//!
//! The generic degree of `rho_lambda` is
//! `q^{n(lambda)} prod_{i=1..n} (q^i - 1) / prod_{boxes} (q^{hook} - 1)`,
//! computed by exact division. Its valuation is `a_rho`, its degree `A_rho`.
//! The Frobenius is split, so no fractional powers of `q` occur.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::cells::CellDecomposition;
use crate::error::{check_rank, Error, Result};
use crate::poly::{q_factorial, IntPoly};

pub use crate::partition::{partitions, Partition};

pub const MAX_UNIPOTENT_RANK: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentCharData {
    pub label: Partition,
    pub generic_degree: IntPoly,
    pub a: usize,
    pub big_a: usize,
    pub chi_dim: u64,
}

fn check_size(lambda: &Partition) -> Result<()> {
    let n = lambda.size();
    if n == 0 || n > MAX_UNIPOTENT_RANK {
        return Err(Error::RankCap {
            what: "unipotent characters",
            n,
            cap: MAX_UNIPOTENT_RANK,
        });
    }
    Ok(())
}

pub fn generic_degree(lambda: &Partition) -> Result<IntPoly> {
    check_size(lambda)?;
    let n = lambda.size();
    let minus_one = IntPoly::new(vec![BigInt::from(-1)]);
    let mut num = IntPoly::one();
    for i in 1..=n {
        let factor = &IntPoly::monomial(BigInt::one(), i) + &minus_one;
        num = &num * &factor;
    }
    for h in lambda.hooks() {
        num = num.div_q_power_minus_one(h)?;
    }
    Ok(num.shift(lambda.n_statistic()))
}

/// `(a_rho, A_rho)`: valuation and degree of the generic degree.
pub fn a_and_big_a(lambda: &Partition) -> Result<(usize, usize)> {
    let d = generic_degree(lambda)?;
    Ok((d.valuation().unwrap_or(0), d.degree().unwrap_or(0)))
}

/// `chi(1) = n! / prod hooks`, the degree of the corresponding character of `S_n`.
pub fn chi_dim(lambda: &Partition) -> Result<u64> {
    check_size(lambda)?;
    let n = lambda.size();
    let fact: BigUint = (1..=n as u64).map(BigUint::from).product();
    let hooks: BigUint = lambda.hooks().into_iter().map(|h| BigUint::from(h as u64)).product();
    let q = &fact / &hooks;
    debug_assert_eq!(&q * &hooks, fact);
    Ok(q.to_u64().expect("chi(1) <= sqrt(30!) fits in u64"))
}

pub fn unipotent_data(lambda: &Partition) -> Result<UnipotentCharData> {
    let generic_degree = generic_degree(lambda)?;
    Ok(UnipotentCharData {
        label: lambda.clone(),
        a: generic_degree.valuation().unwrap_or(0),
        big_a: generic_degree.degree().unwrap_or(0),
        chi_dim: chi_dim(lambda)?,
        generic_degree,
    })
}

/// All unipotent characters of `GL_n(q)`, trivial character first.
pub fn unipotent_characters(n: usize) -> Result<Vec<UnipotentCharData>> {
    partitions(n).iter().map(unipotent_data).collect()
}

/// The two-sided cell attached to `rho_lambda`: the cell of RSK shape `lambda^T`.
///
/// The trivial character goes to `{w0}`, the lowest cell, and the Steinberg
/// character to `{1}`. The cell of shape `lambda` is the translate by `w0`,
/// whose a-value is `a_rho`.
pub fn family_cell(lambda: &Partition, cells: &CellDecomposition) -> Result<usize> {
    check_rank(lambda.size(), cells.n)?;
    cells
        .cell_with_shape(&lambda.transpose())
        .ok_or_else(|| Error::Domain(format!("no cell with shape {}", lambda.transpose())))
}

/// `[n]_q!`, the number of `F_q`-rational complete flags.
pub fn flag_count_poly(n: usize) -> Result<IntPoly> {
    if n > MAX_UNIPOTENT_RANK {
        return Err(Error::RankCap {
            what: "flag count polynomial",
            n,
            cap: MAX_UNIPOTENT_RANK,
        });
    }
    Ok(q_factorial(n))
}
