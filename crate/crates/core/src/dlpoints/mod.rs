//! Rational points of Deligne-Lusztig varieties of `GL_n` by enumeration.
//!
//! For a gallery condition `x = (x_1, ..., x_r)` the variety `X(xF)` consists
//! of chains of flags `B_0, ..., B_r` with `B_{i-1}` and `B_i` in relative
//! position `x_i` (or at most `x_i` for an underlined letter) and
//! `B_r = F(B_0)`, where `F` raises matrix entries to the `q`-th power. Its
//! points over `F_{q^m}` are counted by walking the chain one letter at a time.

pub mod field;
pub mod flag;

use std::collections::HashMap;

use rayon::prelude::*;

use crate::braid::EnrichedWord;
use crate::error::{Error, Result};
use crate::weyl::{all_permutations, Permutation};

pub use field::{Elem, Field, MAX_FIELD_SIZE};
pub use flag::{enumerate_flags, flag_count, relative_position, Flag, DEFAULT_FLAG_CAP};

/// Default bound on the number of chains the search may visit.
pub const DEFAULT_SEARCH_CAP: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountOptions {
    pub flag_cap: usize,
    pub search_cap: u64,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            flag_cap: DEFAULT_FLAG_CAP,
            search_cap: DEFAULT_SEARCH_CAP,
            jobs: 0,
        }
    }
}

/// The field `F_{q^m}` with `q` prime.
pub fn point_field(q: u32, m: u32) -> Result<Field> {
    Field::new(q, m)
}

/// Flags and the cells `{M : relpos(E, M) = w}` around the standard flag `E`.
pub struct FlagSpace {
    pub n: usize,
    pub field: Field,
    pub flags: Vec<Flag>,
    cells: HashMap<Permutation, Vec<Flag>>,
}

impl FlagSpace {
    pub fn new(n: usize, field: Field, flag_cap: usize) -> Result<FlagSpace> {
        let flags = enumerate_flags(n, &field, flag_cap)?;
        let e = Flag::standard(n);
        let mut cells: HashMap<Permutation, Vec<Flag>> = HashMap::new();
        for fl in &flags {
            cells
                .entry(relative_position(&field, &e, fl)?)
                .or_default()
                .push(fl.clone());
        }
        Ok(FlagSpace { n, field, flags, cells })
    }

    /// The flags `M` with `relpos(E, M) = w`.
    pub fn cell(&self, w: &Permutation) -> &[Flag] {
        self.cells.get(w).map_or(&[], Vec::as_slice)
    }

    /// All flags in relative position `w` to `b`.
    pub fn neighbors(&self, b: &Flag, w: &Permutation) -> Vec<Flag> {
        self.cell(w).iter().map(|m| b.translate(&self.field, m)).collect()
    }
}

/// Relative positions allowed by one letter.
fn allowed(letter_perm: &Permutation, underlined: bool) -> Result<Vec<Permutation>> {
    if !underlined {
        return Ok(vec![letter_perm.clone()]);
    }
    let mut out = Vec::new();
    for v in all_permutations(letter_perm.rank())? {
        if v.bruhat_leq(letter_perm)? {
            out.push(v);
        }
    }
    Ok(out)
}

/// `|X(xF)(F_{q^m})|`. The empty word counts the `F`-stable flags.
pub fn count_points(word: &EnrichedWord, q: u32, m: u32) -> Result<u64> {
    count_points_with(word, q, m, &CountOptions::default())
}

pub fn count_points_with(word: &EnrichedWord, q: u32, m: u32, opts: &CountOptions) -> Result<u64> {
    let space = FlagSpace::new(word.n, point_field(q, m)?, opts.flag_cap)?;
    count_in_space(&space, word, opts)
}

/// [`count_points_with`] over a prepared [`FlagSpace`]; the Frobenius is `x -> x^p`.
pub fn count_in_space(space: &FlagSpace, word: &EnrichedWord, opts: &CountOptions) -> Result<u64> {
    if word.n != space.n {
        return Err(Error::RankMismatch {
            left: word.n,
            right: space.n,
        });
    }
    let identity = [Permutation::identity(space.n)];
    let letters: Vec<Vec<Permutation>> = if word.letters.is_empty() {
        vec![identity.to_vec()]
    } else {
        word.letters
            .iter()
            .map(|l| allowed(&l.perm, l.underlined))
            .collect::<Result<_>>()?
    };
    let (last, inner) = letters.split_last().unwrap();
    let mut work = space.flags.len() as u64;
    for allowed in inner {
        let size: u64 = allowed.iter().map(|w| space.cell(w).len() as u64).sum();
        work = work.saturating_mul(size.max(1));
    }
    if work > opts.search_cap {
        return Err(Error::ResourceCap {
            what: "gallery search size",
            cap: opts.search_cap.min(usize::MAX as u64) as usize,
        });
    }
    let count_from = |b0: &Flag| -> Result<u64> {
        let target = b0.frobenius(&space.field, 1);
        let mut total = 0u64;
        let mut stack: Vec<(usize, Flag)> = vec![(0, b0.clone())];
        while let Some((depth, b)) = stack.pop() {
            if depth == inner.len() {
                let w = relative_position(&space.field, &b, &target)?;
                if last.contains(&w) {
                    total += 1;
                }
                continue;
            }
            for w in &inner[depth] {
                for next in space.neighbors(&b, w) {
                    stack.push((depth + 1, next));
                }
            }
        }
        Ok(total)
    };
    let run = || -> Result<u64> {
        space
            .flags
            .par_iter()
            .map(count_from)
            .try_reduce(|| 0, |a, b| Ok(a + b))
    };
    if opts.jobs == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Domain(format!("thread pool: {e}")))?
            .install(run)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftComparison {
    pub xy: u64,
    pub yx: u64,
}

impl ShiftComparison {
    pub fn equal(&self) -> bool {
        self.xy == self.yx
    }
}

/// Counts for `xy` and `yx`.
pub fn cyclic_shift_equal(x: &EnrichedWord, y: &EnrichedWord, q: u32, m: u32) -> Result<ShiftComparison> {
    cyclic_shift_equal_with(x, y, q, m, &CountOptions::default())
}

pub fn cyclic_shift_equal_with(
    x: &EnrichedWord,
    y: &EnrichedWord,
    q: u32,
    m: u32,
    opts: &CountOptions,
) -> Result<ShiftComparison> {
    if !x.is_exact() || !y.is_exact() {
        return Err(Error::Domain("cyclic shifts take exact letters only".into()));
    }
    let space = FlagSpace::new(x.n, point_field(q, m)?, opts.flag_cap)?;
    Ok(ShiftComparison {
        xy: count_in_space(&space, &x.concat(y)?, opts)?,
        yx: count_in_space(&space, &y.concat(x)?, opts)?,
    })
}
