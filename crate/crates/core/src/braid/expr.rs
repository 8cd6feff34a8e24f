//! Braid expression grammar.
//!
//! ```text
//! expr  := term*                      juxtaposition is the product
//! term  := atom ('^' integer)?
//! atom  := ('s' digits | 'D' | 'pi' | '(' expr ')' | perm) '\''?
//!        | '_' ('s' digits | 'D' | perm)     underlined letter, enriched words only
//! perm  := digits (',' digits)*          one-line notation, the positive lift
//! ```
//!
//! Positions in errors are byte offsets into the expression.

use std::fmt;

use crate::error::{Error, Result};
use crate::weyl::Permutation;

/// Hard cap on the number of syllables or letters an expression may expand to.
pub const MAX_EXPANDED_LEN: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Syllable {
    /// `sigma_index` or its inverse.
    Gen { index: usize, inverse: bool },
    /// The half twist, the positive lift of `w0`.
    Delta { inverse: bool },
    /// The full twist `Delta^2`.
    Pi { inverse: bool },
}

impl Syllable {
    fn inverted(self) -> Syllable {
        match self {
            Syllable::Gen { index, inverse } => Syllable::Gen {
                index,
                inverse: !inverse,
            },
            Syllable::Delta { inverse } => Syllable::Delta { inverse: !inverse },
            Syllable::Pi { inverse } => Syllable::Pi { inverse: !inverse },
        }
    }
}

/// A flat word in the braid generators, `Delta` and `pi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub n: usize,
    pub syllables: Vec<Syllable>,
}

impl BraidWord {
    pub fn parse(n: usize, src: &str) -> Result<Self> {
        let nodes = Parser::new(src).parse_all()?;
        let mut syllables = Vec::new();
        for node in &nodes {
            expand_braid(node, n, &mut syllables)?;
        }
        Ok(BraidWord { n, syllables })
    }

    pub fn from_generators(n: usize, letters: &[(usize, bool)]) -> Result<Self> {
        let mut syllables = Vec::with_capacity(letters.len());
        for &(index, inverse) in letters {
            if index == 0 || index >= n {
                return Err(Error::GeneratorOutOfRange { index, n });
            }
            syllables.push(Syllable::Gen { index, inverse });
        }
        Ok(BraidWord { n, syllables })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.syllables.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            let (name, inverse) = match *s {
                Syllable::Gen { index, inverse } => (format!("s{index}"), inverse),
                Syllable::Delta { inverse } => ("D".to_string(), inverse),
                Syllable::Pi { inverse } => ("pi".to_string(), inverse),
            };
            f.write_str(&name)?;
            if inverse {
                f.write_str("'")?;
            }
        }
        Ok(())
    }
}

/// One letter of a word in the enriched monoid: `w` or its underlined version.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnrichedLetter {
    pub perm: Permutation,
    pub underlined: bool,
}

/// A formal word in plain and underlined letters.
///
/// In the enriched monoid the underlined letters satisfy
/// `_w _w' = _(ww')` and are tied to the plain ones through the closure of
/// orbits, but no rewriting or equality test is attempted here: the word is a
/// label format read by the point counter, where an underlined letter becomes
/// the closed condition "relative position <= w" in the Bruhat order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnrichedWord {
    pub n: usize,
    pub letters: Vec<EnrichedLetter>,
}

impl EnrichedWord {
    pub fn parse(n: usize, src: &str) -> Result<Self> {
        let nodes = Parser::new(src).parse_all()?;
        let mut letters = Vec::new();
        for node in &nodes {
            expand_enriched(node, n, &mut letters)?;
        }
        Ok(EnrichedWord { n, letters })
    }

    pub fn exact(n: usize, perms: Vec<Permutation>) -> Result<Self> {
        Self::from_letters(n, perms.into_iter().map(|p| (p, false)).collect())
    }

    pub fn from_letters(n: usize, letters: Vec<(Permutation, bool)>) -> Result<Self> {
        let letters = letters
            .into_iter()
            .map(|(perm, underlined)| {
                crate::error::check_rank(n, perm.rank())?;
                Ok(EnrichedLetter { perm, underlined })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EnrichedWord { n, letters })
    }

    pub fn is_exact(&self) -> bool {
        self.letters.iter().all(|l| !l.underlined)
    }

    pub fn concat(&self, other: &EnrichedWord) -> Result<EnrichedWord> {
        crate::error::check_rank(self.n, other.n)?;
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(EnrichedWord { n: self.n, letters })
    }
}

impl fmt::Display for EnrichedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if l.underlined {
                f.write_str("_")?;
            }
            let word = l.perm.reduced_word();
            if word.letters.len() == 1 {
                write!(f, "s{}", word.letters[0])?;
            } else {
                write!(f, "{}", l.perm)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
enum Atom {
    Gen(usize),
    Delta,
    Pi,
    Perm(Vec<usize>),
    Group(Vec<Node>),
}

#[derive(Clone, Debug)]
struct Node {
    pos: usize,
    atom: Atom,
    inverse: bool,
    underlined: bool,
    power: i64,
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<Vec<Node>> {
        let nodes = self.parse_seq()?;
        self.skip_ws();
        if self.pos < self.bytes.len() {
            return self.err(self.pos, format!("unexpected {:?}", self.src[self.pos..].chars().next().unwrap()));
        }
        Ok(nodes)
    }

    fn parse_seq(&mut self) -> Result<Vec<Node>> {
        let mut nodes = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(b')') => return Ok(nodes),
                _ => nodes.push(self.parse_term()?),
            }
        }
    }

    fn parse_digits(&mut self) -> Option<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().ok()
    }

    fn parse_term(&mut self) -> Result<Node> {
        let pos = self.pos;
        let underlined = self.peek() == Some(b'_');
        if underlined {
            self.pos += 1;
        }
        let atom = match self.peek() {
            Some(b's') => {
                self.pos += 1;
                match self.parse_digits() {
                    Some(i) => Atom::Gen(i),
                    None => return self.err(self.pos, "expected generator index after 's'"),
                }
            }
            Some(b'D') => {
                self.pos += 1;
                Atom::Delta
            }
            Some(b'p') if self.src[self.pos..].starts_with("pi") => {
                self.pos += 2;
                Atom::Pi
            }
            Some(b'(') if !underlined => {
                self.pos += 1;
                let inner = self.parse_seq()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return self.err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Atom::Group(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut images = vec![self.parse_digits().unwrap()];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    match self.parse_digits() {
                        Some(x) => images.push(x),
                        None => return self.err(self.pos, "expected digit in permutation"),
                    }
                }
                Atom::Perm(images)
            }
            Some(_) => {
                let c = self.src[self.pos..].chars().next().unwrap();
                return self.err(self.pos, format!("unexpected {c:?}"));
            }
            None => return self.err(self.pos, "unexpected end of expression"),
        };
        if underlined && matches!(atom, Atom::Pi) {
            return self.err(pos, "pi cannot be underlined");
        }
        let inverse = self.peek() == Some(b'\'');
        if inverse {
            self.pos += 1;
        }
        let mut power = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = self.peek() == Some(b'-');
            if neg {
                self.pos += 1;
            }
            let at = self.pos;
            match self.parse_digits() {
                Some(k) if k <= MAX_EXPANDED_LEN => power = if neg { -(k as i64) } else { k as i64 },
                Some(_) => return self.err(at, "exponent too large"),
                None => return self.err(at, "expected integer exponent"),
            }
        }
        Ok(Node {
            pos,
            atom,
            inverse,
            underlined,
            power,
        })
    }
}

fn push_capped<T: Clone>(out: &mut Vec<T>, items: &[T], times: usize, pos: usize) -> Result<()> {
    if out.len().saturating_add(items.len().saturating_mul(times)) > MAX_EXPANDED_LEN {
        return Err(Error::Parse {
            pos,
            msg: format!("expression expands beyond {MAX_EXPANDED_LEN} letters"),
        });
    }
    for _ in 0..times {
        out.extend_from_slice(items);
    }
    Ok(())
}

fn check_perm(n: usize, images: &[usize], pos: usize) -> Result<Permutation> {
    let perm = Permutation::new(images.to_vec()).map_err(|e| Error::Parse {
        pos,
        msg: e.to_string(),
    })?;
    if perm.rank() != n {
        return Err(Error::Parse {
            pos,
            msg: format!("permutation {perm} has rank {}, expected {n}", perm.rank()),
        });
    }
    Ok(perm)
}

fn expand_braid(node: &Node, n: usize, out: &mut Vec<Syllable>) -> Result<()> {
    if node.underlined {
        return Err(Error::Parse {
            pos: node.pos,
            msg: "underlined letters are only allowed in enriched words".into(),
        });
    }
    let mut base = Vec::new();
    match &node.atom {
        Atom::Gen(i) => {
            if *i == 0 || *i >= n {
                return Err(Error::GeneratorOutOfRange { index: *i, n });
            }
            base.push(Syllable::Gen {
                index: *i,
                inverse: false,
            });
        }
        Atom::Delta => base.push(Syllable::Delta { inverse: false }),
        Atom::Pi => base.push(Syllable::Pi { inverse: false }),
        Atom::Perm(images) => {
            let perm = check_perm(n, images, node.pos)?;
            base.extend(perm.reduced_word().letters.into_iter().map(|index| Syllable::Gen {
                index,
                inverse: false,
            }));
        }
        Atom::Group(inner) => {
            for child in inner {
                expand_braid(child, n, &mut base)?;
            }
        }
    }
    if node.inverse {
        base = base.into_iter().rev().map(Syllable::inverted).collect();
    }
    if node.power < 0 {
        base = base.into_iter().rev().map(Syllable::inverted).collect();
    }
    push_capped(out, &base, node.power.unsigned_abs() as usize, node.pos)
}

fn expand_enriched(node: &Node, n: usize, out: &mut Vec<EnrichedLetter>) -> Result<()> {
    if node.inverse || node.power < 0 {
        return Err(Error::Parse {
            pos: node.pos,
            msg: "inverses are not allowed in enriched (positive) words".into(),
        });
    }
    let letter = |perm: Permutation| EnrichedLetter {
        perm,
        underlined: node.underlined,
    };
    let mut base = Vec::new();
    match &node.atom {
        Atom::Gen(i) => {
            base.push(letter(Permutation::simple(n, *i)?));
        }
        Atom::Delta => base.push(letter(Permutation::longest(n))),
        Atom::Pi => {
            base.push(letter(Permutation::longest(n)));
            base.push(letter(Permutation::longest(n)));
        }
        Atom::Perm(images) => base.push(letter(check_perm(n, images, node.pos)?)),
        Atom::Group(inner) => {
            for child in inner {
                expand_enriched(child, n, &mut base)?;
            }
        }
    }
    push_capped(out, &base, node.power as usize, node.pos)
}
