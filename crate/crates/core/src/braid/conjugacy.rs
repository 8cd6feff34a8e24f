//! Conjugacy via super summit sets.
//!
//! Cycling and decycling move an element to the super summit set (maximal
//! infimum, minimal supremum within its conjugacy class); the set itself is
//! closed under conjugation by permutation braids that stay inside it, so a
//! breadth-first search from one summit element visits all of it.

use std::collections::{BTreeMap, HashSet, VecDeque};

use super::{GarsideElement, Token};
use crate::error::{check_rank, Error, Result};
use crate::weyl::{all_permutations, Permutation};

/// Default cap on the number of elements a super summit set search may visit.
pub const DEFAULT_SSS_CAP: usize = 100_000;

/// Practical rank limit for conjugacy searches (`n!` conjugators per element).
const MAX_CONJUGACY_RANK: usize = 7;

/// A super summit set with, for each element `y`, a conjugator `c` such that
/// `y = c^-1 x c` where `x` is the element the set was computed from.
#[derive(Clone, Debug)]
pub struct SummitSet {
    pub inf: i64,
    pub sup: i64,
    pub elements: BTreeMap<GarsideElement, GarsideElement>,
}

impl SummitSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, b: &GarsideElement) -> bool {
        self.elements.contains_key(b)
    }
}

impl GarsideElement {
    /// `tau^p(x_1)^-1 * self * tau^p(x_1)`, i.e. `Delta^p x_2 ... x_r tau^p(x_1)`.
    pub fn cycling(&self) -> GarsideElement {
        self.cycling_with_conjugator().0
    }

    pub fn decycling(&self) -> GarsideElement {
        self.decycling_with_conjugator().0
    }

    /// Returns `(c(b), y)` with `c(b) = y^-1 b y`.
    fn cycling_with_conjugator(&self) -> (GarsideElement, Permutation) {
        let Some(first) = self.factors.first() else {
            return (self.clone(), Permutation::identity(self.n));
        };
        let y = if self.inf % 2 != 0 { first.flip() } else { first.clone() };
        let toks = std::iter::once(Token::Delta(self.inf))
            .chain(self.factors[1..].iter().cloned().map(Token::Simple))
            .chain(std::iter::once(Token::Simple(y.clone())));
        (GarsideElement::normalize(self.n, toks), y)
    }

    /// Returns `(d(b), y)` with `d(b) = x_r b x_r^-1 = y^-1 b y` for `y = x_r^-1`.
    fn decycling_with_conjugator(&self) -> (GarsideElement, GarsideElement) {
        let Some(last) = self.factors.last() else {
            return (self.clone(), GarsideElement::identity(self.n));
        };
        let toks = [Token::Simple(last.clone()), Token::Delta(self.inf)]
            .into_iter()
            .chain(self.factors[..self.factors.len() - 1].iter().cloned().map(Token::Simple));
        let y = GarsideElement::lift(last).inverse();
        (GarsideElement::normalize(self.n, toks), y)
    }

    /// Some element of the super summit set, and `c` with `summit = c^-1 self c`.
    pub fn summit(&self) -> (GarsideElement, GarsideElement) {
        let mut cur = self.clone();
        let mut conj = GarsideElement::identity(self.n);

        // raise the infimum; once the cycling orbit repeats it is maximal
        let mut seen = HashSet::new();
        loop {
            if !seen.insert(cur.clone()) {
                break;
            }
            let (next, y) = cur.cycling_with_conjugator();
            conj = conj.mul_unchecked(&GarsideElement::lift(&y));
            if next.inf > cur.inf {
                seen.clear();
            }
            cur = next;
        }
        let mut seen = HashSet::new();
        loop {
            if !seen.insert(cur.clone()) {
                break;
            }
            let (next, y) = cur.decycling_with_conjugator();
            conj = conj.mul_unchecked(&y);
            if next.sup() < cur.sup() {
                seen.clear();
            }
            cur = next;
        }
        debug_assert_eq!(self.conjugate_by(&conj).unwrap(), cur);
        (cur, conj)
    }

    pub fn super_summit_set(&self) -> Result<SummitSet> {
        self.super_summit_set_capped(DEFAULT_SSS_CAP)
    }

    pub fn super_summit_set_capped(&self, cap: usize) -> Result<SummitSet> {
        self.sss_search(cap, None).map(|(set, _)| set)
    }

    /// Breadth-first search of the super summit set. Stops early when `target` is found.
    fn sss_search(
        &self,
        cap: usize,
        target: Option<&GarsideElement>,
    ) -> Result<(SummitSet, Option<GarsideElement>)> {
        if self.n > MAX_CONJUGACY_RANK {
            return Err(Error::RankCap {
                what: "super summit set",
                n: self.n,
                cap: MAX_CONJUGACY_RANK,
            });
        }
        let (start, start_conj) = self.summit();
        let (inf, sup) = (start.inf, start.sup());
        let simples: Vec<Permutation> = all_permutations(self.n)?
            .into_iter()
            .filter(|p| !p.is_identity())
            .collect();

        let mut elements = BTreeMap::new();
        elements.insert(start.clone(), start_conj);
        let mut queue = VecDeque::from([start]);
        let mut found = None;
        while let Some(x) = queue.pop_front() {
            if let Some(t) = target {
                if *t == x {
                    found = Some(elements[&x].clone());
                    break;
                }
            }
            for s in &simples {
                let y = x.conjugate_by_simple(s);
                if y.inf != inf || y.sup() != sup || elements.contains_key(&y) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::ResourceCap {
                        what: "super summit set size",
                        cap,
                    });
                }
                let c = elements[&x].mul_unchecked(&GarsideElement::lift(s));
                elements.insert(y.clone(), c);
                queue.push_back(y);
            }
        }
        Ok((SummitSet { inf, sup, elements }, found))
    }

    /// Decides conjugacy. On success returns `c` with `self = c other c^-1`.
    pub fn conjugating_element(&self, other: &GarsideElement) -> Result<Option<GarsideElement>> {
        self.conjugating_element_capped(other, DEFAULT_SSS_CAP)
    }

    pub fn conjugating_element_capped(
        &self,
        other: &GarsideElement,
        cap: usize,
    ) -> Result<Option<GarsideElement>> {
        check_rank(self.n, other.n)?;
        if self.length() != other.length() {
            return Ok(None);
        }
        let (b_summit, b_conj) = other.summit();
        let (a_summit, _) = self.summit();
        if a_summit.inf != b_summit.inf || a_summit.sup() != b_summit.sup() {
            return Ok(None);
        }
        let (_, found) = self.sss_search(cap, Some(&b_summit))?;
        let Some(g) = found else {
            return Ok(None);
        };
        // b_summit = g^-1 self g and b_summit = b_conj^-1 other b_conj
        let c = g.mul_unchecked(&b_conj.inverse());
        debug_assert_eq!(
            c.mul_unchecked(other).mul_unchecked(&c.inverse()),
            *self
        );
        Ok(Some(c))
    }

    pub fn are_conjugate(&self, other: &GarsideElement) -> Result<bool> {
        Ok(self.conjugating_element(other)?.is_some())
    }
}
