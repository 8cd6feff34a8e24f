use std::collections::HashMap;

use crate::error::Result;
use crate::weyl::{all_permutations, Permutation};

/// `S_n` with elements indexed in order of increasing length, plus
/// multiplication tables for the simple reflections.
#[derive(Debug)]
pub(crate) struct GroupTable {
    pub n: usize,
    pub elems: Vec<Permutation>,
    pub index: HashMap<Permutation, usize>,
    pub len: Vec<usize>,
    /// `lmul[s][w]` is the index of `s_s * w` (row 0 unused).
    pub lmul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
}

impl GroupTable {
    pub fn new(n: usize) -> Result<Self> {
        let mut elems = all_permutations(n)?;
        elems.sort_by_key(|w| w.length());
        let index: HashMap<_, _> = elems.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        let len = elems.iter().map(|w| w.length()).collect();
        let mut lmul = vec![Vec::new(); n];
        for (s, row) in lmul.iter_mut().enumerate().skip(1) {
            *row = elems.iter().map(|w| index[&w.mul_simple_left(s)]).collect();
        }
        let inv = elems.iter().map(|w| index[&w.inverse()]).collect();
        Ok(GroupTable {
            n,
            elems,
            index,
            len,
            lmul,
            inv,
        })
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn idx(&self, w: &Permutation) -> usize {
        self.index[w]
    }

    /// Smallest `s` with `s w < w`, if any.
    pub fn first_left_descent(&self, w: usize) -> Option<usize> {
        let mask = self.elems[w].left_descent_mask();
        (mask != 0).then(|| mask.trailing_zeros() as usize)
    }

    pub fn is_left_descent(&self, s: usize, w: usize) -> bool {
        self.len[self.lmul[s][w]] < self.len[w]
    }

    pub fn leq(&self, x: usize, w: usize) -> bool {
        self.len[x] <= self.len[w] && self.elems[x].bruhat_leq_unchecked(&self.elems[w])
    }
}
