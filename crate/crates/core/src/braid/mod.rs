//! The braid group on `n` strands as the Artin-Tits group of `S_n`.
//!
//! Elements are kept in left-greedy Garside normal form `Delta^p x_1 ... x_r`
//! where each `x_i` is a permutation braid (the positive lift of a permutation
//! other than `1` and `w0`) and every consecutive pair is left-weighted.

mod conjugacy;
pub mod expr;

use std::fmt;

pub use conjugacy::{SummitSet, DEFAULT_SSS_CAP};
pub use expr::{BraidWord, EnrichedLetter, EnrichedWord, Syllable};

use crate::error::{check_rank, Error, Result};
use crate::weyl::{num_positive_roots, Permutation};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GarsideElement {
    n: usize,
    inf: i64,
    factors: Vec<Permutation>,
}

enum Token {
    Delta(i64),
    Simple(Permutation),
}

/// Rewrites `(a, b)` as `(a t, t^-1 b)` with `t` maximal, so the pair is left-weighted.
fn left_weight(mut a: Permutation, mut b: Permutation) -> (Permutation, Permutation) {
    loop {
        let movable = b.left_descent_mask() & !a.right_descent_mask();
        if movable == 0 {
            return (a, b);
        }
        let i = movable.trailing_zeros() as usize;
        a = a.mul_simple_right(i);
        b = b.mul_simple_left(i);
    }
}

fn is_left_weighted(a: &Permutation, b: &Permutation) -> bool {
    b.left_descent_mask() & !a.right_descent_mask() == 0
}

impl GarsideElement {
    fn normalize(n: usize, tokens: impl IntoIterator<Item = Token>) -> GarsideElement {
        let w0 = Permutation::longest(n);
        let mut inf = 0i64;
        let mut factors: Vec<Permutation> = Vec::new();
        for tok in tokens {
            match tok {
                Token::Delta(k) => {
                    // factors * Delta^k = Delta^k * flip^k(factors)
                    inf += k;
                    if k % 2 != 0 {
                        for f in factors.iter_mut() {
                            *f = f.flip();
                        }
                    }
                }
                Token::Simple(x) => {
                    if x.is_identity() {
                        continue;
                    }
                    factors.push(x);
                    let mut changed = true;
                    while changed {
                        changed = false;
                        for j in (0..factors.len() - 1).rev() {
                            if is_left_weighted(&factors[j], &factors[j + 1]) {
                                continue;
                            }
                            let a = std::mem::replace(&mut factors[j], w0.clone());
                            let b = std::mem::replace(&mut factors[j + 1], w0.clone());
                            let (a, b) = left_weight(a, b);
                            factors[j] = a;
                            factors[j + 1] = b;
                            changed = true;
                        }
                    }
                    while factors.last().is_some_and(|f| f.is_identity()) {
                        factors.pop();
                    }
                    let lead = factors.iter().take_while(|f| **f == w0).count();
                    if lead > 0 {
                        factors.drain(..lead);
                        inf += lead as i64;
                    }
                }
            }
        }
        debug_assert!(factors.windows(2).all(|p| is_left_weighted(&p[0], &p[1])));
        GarsideElement { n, inf, factors }
    }

    fn tokens(&self) -> impl Iterator<Item = Token> + '_ {
        std::iter::once(Token::Delta(self.inf))
            .chain(self.factors.iter().cloned().map(Token::Simple))
    }

    /// Tokens for the inverse: `(Delta^p x_1 ... x_r)^-1 = x_r^-1 ... x_1^-1 Delta^-p`,
    /// using `x^-1 = (x^-1 w0) Delta^-1` for a simple `x`.
    fn inverse_tokens(&self) -> Vec<Token> {
        let w0 = Permutation::longest(self.n);
        let mut toks = Vec::with_capacity(2 * self.factors.len() + 1);
        for x in self.factors.iter().rev() {
            toks.push(Token::Simple(&x.inverse() * &w0));
            toks.push(Token::Delta(-1));
        }
        toks.push(Token::Delta(-self.inf));
        toks
    }

    pub fn identity(n: usize) -> Self {
        GarsideElement {
            n,
            inf: 0,
            factors: Vec::new(),
        }
    }

    /// The half twist `Delta`, the positive lift of `w0`.
    pub fn delta(n: usize) -> Self {
        GarsideElement {
            n,
            inf: 1,
            factors: Vec::new(),
        }
    }

    /// The full twist `pi = Delta^2`, central in the braid group.
    pub fn full_twist(n: usize) -> Self {
        GarsideElement {
            n,
            inf: 2,
            factors: Vec::new(),
        }
    }

    /// The positive lift of `w`.
    pub fn lift(w: &Permutation) -> Self {
        Self::normalize(w.rank(), [Token::Simple(w.clone())])
    }

    pub fn generator(n: usize, index: usize, inverse: bool) -> Result<Self> {
        let s = GarsideElement::lift(&Permutation::simple(n, index)?);
        Ok(if inverse { s.inverse() } else { s })
    }

    pub fn from_word(word: &BraidWord) -> Result<Self> {
        let n = word.n;
        let w0 = Permutation::longest(n);
        let mut toks = Vec::with_capacity(word.syllables.len());
        for syl in &word.syllables {
            match *syl {
                Syllable::Gen { index, inverse } => {
                    let s = Permutation::simple(n, index)?;
                    if inverse {
                        // s^-1 = (s w0) Delta^-1
                        toks.push(Token::Simple(&s * &w0));
                        toks.push(Token::Delta(-1));
                    } else {
                        toks.push(Token::Simple(s));
                    }
                }
                Syllable::Delta { inverse } => toks.push(Token::Delta(if inverse { -1 } else { 1 })),
                Syllable::Pi { inverse } => toks.push(Token::Delta(if inverse { -2 } else { 2 })),
            }
        }
        Ok(Self::normalize(n, toks))
    }

    /// Parses an expression in the braid grammar and brings it to normal form.
    pub fn parse(n: usize, src: &str) -> Result<Self> {
        Self::from_word(&BraidWord::parse(n, src)?)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// The power of `Delta` in the normal form.
    pub fn inf(&self) -> i64 {
        self.inf
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    /// The abelianization `pN + sum l(x_i)`, a group morphism to the integers.
    pub fn length(&self) -> i64 {
        self.inf * num_positive_roots(self.n) as i64
            + self.factors.iter().map(|f| f.length() as i64).sum::<i64>()
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.inf >= 0
    }

    pub fn multiply(&self, other: &GarsideElement) -> Result<GarsideElement> {
        check_rank(self.n, other.n)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &GarsideElement) -> GarsideElement {
        Self::normalize(self.n, self.tokens().chain(other.tokens()))
    }

    pub fn inverse(&self) -> GarsideElement {
        Self::normalize(self.n, self.inverse_tokens())
    }

    pub fn power(&self, k: i64) -> GarsideElement {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut result = GarsideElement::identity(self.n);
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_unchecked(&sq);
            }
        }
        result
    }

    /// `c^-1 self c`.
    pub fn conjugate_by(&self, c: &GarsideElement) -> Result<GarsideElement> {
        check_rank(self.n, c.n)?;
        Ok(Self::normalize(
            self.n,
            c.inverse_tokens()
                .into_iter()
                .chain(self.tokens())
                .chain(c.tokens()),
        ))
    }

    /// `s^-1 self s` for a permutation braid `s`.
    pub(crate) fn conjugate_by_simple(&self, s: &Permutation) -> GarsideElement {
        let w0 = Permutation::longest(self.n);
        Self::normalize(
            self.n,
            [Token::Simple(&s.inverse() * &w0), Token::Delta(-1)]
                .into_iter()
                .chain(self.tokens())
                .chain(std::iter::once(Token::Simple(s.clone()))),
        )
    }

    /// The anti-involution fixing every generator: reverses all words.
    pub fn star(&self) -> GarsideElement {
        // x* is the lift of x^-1 for a permutation braid; Delta* = Delta
        let toks: Vec<Token> = self
            .factors
            .iter()
            .rev()
            .map(|x| Token::Simple(x.inverse()))
            .chain(std::iter::once(Token::Delta(self.inf)))
            .collect();
        Self::normalize(self.n, toks)
    }

    /// Image under the diagram automorphism `s_i -> s_{n-i}`, equal to conjugation by `Delta`.
    pub fn flip(&self) -> GarsideElement {
        GarsideElement {
            n: self.n,
            inf: self.inf,
            factors: self.factors.iter().map(Permutation::flip).collect(),
        }
    }

    pub fn is_dth_root_of_pi(&self, d: u32) -> bool {
        d > 0 && self.power(d as i64) == GarsideElement::full_twist(self.n)
    }

    /// A braid word for the normal form, `D^p` followed by reduced words of the factors.
    pub fn to_word(&self) -> BraidWord {
        let mut syllables = Vec::new();
        let inverse = self.inf < 0;
        for _ in 0..self.inf.unsigned_abs() {
            syllables.push(Syllable::Delta { inverse });
        }
        for f in &self.factors {
            syllables.extend(f.reduced_word().letters.into_iter().map(|index| Syllable::Gen {
                index,
                inverse: false,
            }));
        }
        BraidWord {
            n: self.n,
            syllables,
        }
    }
}

impl fmt::Display for GarsideElement {
    /// Prints in the expression grammar, e.g. `D^-1 (s1 s2) (s1)`; parses back to `self`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.inf != 0 || self.factors.is_empty() {
            parts.push(format!("D^{}", self.inf));
        }
        for x in &self.factors {
            parts.push(format!("({})", x.reduced_word()));
        }
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for GarsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GarsideElement(n={}, {self})", self.n)
    }
}

/// Positive braids of the given length that are `d`-th roots of `pi`, up to equality.
pub fn positive_roots_of_pi(n: usize, d: u32) -> Result<Vec<GarsideElement>> {
    let big_n = num_positive_roots(n);
    if d == 0 || !(2 * big_n).is_multiple_of(d as usize) {
        return Ok(Vec::new());
    }
    let len = 2 * big_n / d as usize;
    let gens = n - 1;
    let total = (gens as u64).checked_pow(len as u32).unwrap_or(u64::MAX);
    if total > 10_000_000 {
        return Err(Error::ResourceCap {
            what: "positive words searched for roots of pi",
            cap: 10_000_000,
        });
    }
    let mut found = std::collections::BTreeSet::new();
    let mut letters = vec![0usize; len];
    for code in 0..total {
        let mut c = code;
        for l in letters.iter_mut() {
            *l = (c % gens as u64) as usize + 1;
            c /= gens as u64;
        }
        let word = BraidWord::from_generators(n, &letters.iter().map(|&i| (i, false)).collect::<Vec<_>>())?;
        let b = GarsideElement::from_word(&word)?;
        if b.is_dth_root_of_pi(d) {
            found.insert(b);
        }
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn nf(n: usize, s: &str) -> GarsideElement {
        GarsideElement::parse(n, s).unwrap()
    }

    pub(crate) fn random_braid(rng: &mut impl Rng, n: usize, max_len: usize) -> GarsideElement {
        let len = rng.gen_range(0..=max_len);
        let letters: Vec<(usize, bool)> = (0..len)
            .map(|_| (rng.gen_range(1..n), rng.gen_bool(0.5)))
            .collect();
        GarsideElement::from_word(&BraidWord::from_generators(n, &letters).unwrap()).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let d = nf(3, "s1 s2 s1");
        assert_eq!((d.inf(), d.factors().len()), (1, 0));
        let b = nf(3, "s1 s2 s1 s1");
        assert_eq!(b.inf(), 1);
        assert_eq!(b.factors(), &[Permutation::simple(3, 1).unwrap()]);
        let c = nf(2, "s1 s1 s1");
        assert_eq!((c.inf(), c.factors().len()), (3, 0));
    }

    #[test]
    fn group_laws() {
        let a = nf(3, "s1 s2");
        assert_eq!(a.power(3), GarsideElement::full_twist(3));
        assert!(a.multiply(&a.inverse()).unwrap().is_identity());
        assert!(a.multiply(&GarsideElement::identity(4)).is_err());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(2..=5);
            let a = random_braid(&mut rng, n, 12);
            let b = random_braid(&mut rng, n, 12);
            assert_eq!(a.multiply(&b).unwrap().length(), a.length() + b.length());
            assert!(a.multiply(&a.inverse()).unwrap().is_identity());
            assert!(a.inverse().multiply(&a).unwrap().is_identity());
            assert_eq!(a.power(-2), a.inverse().power(2));
        }
    }

    #[test]
    fn full_twist_is_central() {
        assert_eq!(GarsideElement::full_twist(2).inf(), 2);
        assert_eq!(GarsideElement::full_twist(4).length(), 12);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.gen_range(2..=5);
            let pi = GarsideElement::full_twist(n);
            let g = random_braid(&mut rng, n, 10);
            assert_eq!(pi.multiply(&g).unwrap(), g.multiply(&pi).unwrap());
        }
    }

    #[test]
    fn lifts() {
        assert!(GarsideElement::lift(&Permutation::identity(4)).is_identity());
        for n in 2..=6 {
            let d = GarsideElement::lift(&Permutation::longest(n));
            assert_eq!(d.power(2), GarsideElement::full_twist(n));
        }
        let s1 = GarsideElement::generator(3, 1, false).unwrap();
        let s2 = GarsideElement::generator(3, 2, false).unwrap();
        assert_eq!(s1.multiply(&s2).unwrap(), nf(3, "s1 s2"));
        let all = crate::weyl::all_permutations(4).unwrap();
        for u in &all {
            assert_eq!(GarsideElement::lift(u).length(), u.length() as i64);
            for v in &all {
                let uv = u * v;
                if uv.length() == u.length() + v.length() {
                    assert_eq!(
                        GarsideElement::lift(u).multiply(&GarsideElement::lift(v)).unwrap(),
                        GarsideElement::lift(&uv)
                    );
                }
            }
        }
    }

    #[test]
    fn star_is_anti_involution() {
        assert_eq!(GarsideElement::delta(4).star(), GarsideElement::delta(4));
        assert_eq!(nf(3, "s1 s2").star(), nf(3, "s2 s1"));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.gen_range(2..=5);
            let a = random_braid(&mut rng, n, 10);
            let b = random_braid(&mut rng, n, 10);
            assert_eq!(a.star().star(), a);
            assert_eq!(
                a.multiply(&b).unwrap().star(),
                b.star().multiply(&a.star()).unwrap()
            );
        }
    }

    #[test]
    fn braid_relations() {
        for n in 2..=6 {
            for i in 1..n {
                if i + 1 < n {
                    assert_eq!(
                        nf(n, &format!("s{i} s{} s{i}", i + 1)),
                        nf(n, &format!("s{} s{i} s{}", i + 1, i + 1))
                    );
                }
                for j in i + 2..n {
                    assert_eq!(nf(n, &format!("s{i} s{j}")), nf(n, &format!("s{j} s{i}")));
                }
            }
        }
    }

    #[test]
    fn delta_conjugation_is_flip() {
        for n in 2..=6 {
            let d = GarsideElement::delta(n);
            for i in 1..n {
                for inverse in [false, true] {
                    let s = GarsideElement::generator(n, i, inverse).unwrap();
                    let conj = d.multiply(&s).unwrap().multiply(&d.inverse()).unwrap();
                    assert_eq!(conj, GarsideElement::generator(n, n - i, inverse).unwrap());
                    assert_eq!(conj, s.flip());
                }
            }
        }
    }

    #[test]
    fn print_parse_roundtrip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..500 {
            let n = rng.gen_range(2..=5);
            let a = random_braid(&mut rng, n, 20);
            assert_eq!(nf(n, &a.to_string()), a, "{a}");
            assert_eq!(GarsideElement::from_word(&a.to_word()).unwrap(), a);
        }
    }

    #[test]
    fn dth_roots() {
        assert!(nf(3, "s1 s2").is_dth_root_of_pi(3));
        assert!(GarsideElement::delta(5).is_dth_root_of_pi(2));
        assert!(!nf(3, "s1").is_dth_root_of_pi(2));
        let roots = positive_roots_of_pi(3, 3).unwrap();
        assert_eq!(roots, vec![nf(3, "s1 s2"), nf(3, "s2 s1")].into_iter().collect::<std::collections::BTreeSet<_>>().into_iter().collect::<Vec<_>>());
    }

    proptest::proptest! {
        #[test]
        fn normal_form_is_left_weighted(letters in proptest::collection::vec((1usize..5, proptest::bool::ANY), 0..20)) {
            let b = GarsideElement::from_word(&BraidWord::from_generators(5, &letters).unwrap()).unwrap();
            let w0 = Permutation::longest(5);
            for f in b.factors() {
                proptest::prop_assert!(!f.is_identity() && *f != w0);
            }
            for pair in b.factors().windows(2) {
                proptest::prop_assert!(is_left_weighted(&pair[0], &pair[1]));
            }
            let signed: i64 = letters.iter().map(|&(_, inv)| if inv { -1 } else { 1 }).sum();
            proptest::prop_assert_eq!(b.length(), signed);
        }
    }
}
