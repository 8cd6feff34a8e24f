//! Tables of multiplicities `<rho_lambda, H^i_c(X(bF))>` for Deligne-Lusztig
//! varieties of `GL_n`, and the algebra the full twist acts by.
//!
//! Multiplying `b` by the full twist `pi` moves the `rho_lambda`-isotypic part
//! of the cohomology up by `4N - 2A_lambda`. Starting from the finite set of
//! rational flags this gives every `X(pi^k F)` in closed form. Tables for other
//! braids can only be imported.
//!
//! A complex shifted by `[k]` contributes in degree `-k`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, EnrichedWord, GarsideElement};
use crate::error::{check_rank, Error, Result};
use crate::partition::{partitions, Partition};
use crate::unipotent::{a_and_big_a, chi_dim, generic_degree, MAX_UNIPOTENT_RANK};
use crate::weyl::num_positive_roots;

/// Largest power of the full twist accepted by [`table_pi_power`].
pub const MAX_PI_POWER: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohTable {
    pub n: usize,
    pub braid: String,
    entries: BTreeMap<(i64, Partition), u64>,
}

impl CohTable {
    pub fn new(n: usize, braid: impl Into<String>) -> Self {
        CohTable {
            n,
            braid: braid.into(),
            entries: BTreeMap::new(),
        }
    }

    /// Adds `mult` copies of `rho_lambda` in degree `degree`.
    pub fn add(&mut self, degree: i64, lambda: Partition, mult: u64) -> Result<()> {
        if lambda.size() != self.n {
            return Err(Error::InvalidPartition(format!("{lambda} is not a partition of {}", self.n)));
        }
        if mult == 0 {
            return Ok(());
        }
        let slot = self.entries.entry((degree, lambda)).or_insert(0);
        *slot = slot
            .checked_add(mult)
            .ok_or_else(|| Error::Domain("multiplicity overflow".into()))?;
        Ok(())
    }

    pub fn mult(&self, degree: i64, lambda: &Partition) -> u64 {
        self.entries.get(&(degree, lambda.clone())).copied().unwrap_or(0)
    }

    /// Entries in increasing `(degree, lambda)` order.
    pub fn entries(&self) -> impl Iterator<Item = (i64, &Partition, u64)> + '_ {
        self.entries.iter().map(|((d, l), m)| (*d, l, *m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.entries.keys().map(|(d, _)| *d).collect()
    }

    /// Smallest and largest supported degree.
    pub fn support_range(&self) -> Option<(i64, i64)> {
        let first = self.entries.keys().next()?.0;
        let last = self.entries.keys().next_back()?.0;
        Some((first, last))
    }

    pub fn total_multiplicity(&self) -> u128 {
        self.entries.values().map(|&m| m as u128).sum()
    }

    /// Degrees in which `rho_lambda` occurs.
    pub fn degrees_of(&self, lambda: &Partition) -> Vec<i64> {
        self.entries
            .keys()
            .filter(|(_, l)| l == lambda)
            .map(|(d, _)| *d)
            .collect()
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_UNIPOTENT_RANK {
        return Err(Error::RankCap {
            what: "cohomology tables",
            n,
            cap: MAX_UNIPOTENT_RANK,
        });
    }
    Ok(())
}

/// The label of `pi^k`: empty for `k = 0`.
pub fn pi_power_label(k: u64) -> String {
    match k {
        0 => String::new(),
        1 => "pi".into(),
        _ => format!("pi^{k}"),
    }
}

fn pi_exponent(label: &str) -> Option<u64> {
    let label = label.trim();
    match label {
        "" => Some(0),
        "pi" => Some(1),
        _ => label.strip_prefix("pi^")?.parse().ok(),
    }
}

fn translated_label(label: &str) -> String {
    match pi_exponent(label) {
        Some(k) => pi_power_label(k + 1),
        None => format!("pi ({})", label.trim()),
    }
}

/// `X(1 F)`: the rational flags, a finite set; `H^0` is the permutation module.
pub fn table_trivial_braid(n: usize) -> Result<CohTable> {
    table_pi_power(n, 0)
}

/// The shift `4N - 2A_lambda` by which the full twist moves `rho_lambda`.
pub fn full_twist_shift(lambda: &Partition) -> Result<i64> {
    let n = lambda.size();
    let (_, big_a) = a_and_big_a(lambda)?;
    Ok(4 * num_positive_roots(n) as i64 - 2 * big_a as i64)
}

/// The table of `X(pi b F)` from that of `X(bF)`.
pub fn translate_full_twist(t: &CohTable) -> Result<CohTable> {
    check_n(t.n)?;
    let mut shifts: BTreeMap<&Partition, i64> = BTreeMap::new();
    let mut out = CohTable::new(t.n, translated_label(&t.braid));
    for ((d, l), m) in &t.entries {
        let shift = match shifts.get(l) {
            Some(&s) => s,
            None => {
                let s = full_twist_shift(l)?;
                shifts.insert(l, s);
                s
            }
        };
        let degree = d
            .checked_add(shift)
            .ok_or_else(|| Error::Domain("degree overflow".into()))?;
        out.entries.insert((degree, l.clone()), *m);
    }
    Ok(out)
}

/// Applies [`translate_full_twist`] `times` times.
pub fn translate_full_twist_times(t: &CohTable, times: u64) -> Result<CohTable> {
    let mut out = t.clone();
    for _ in 0..times {
        out = translate_full_twist(&out)?;
    }
    Ok(out)
}

/// `X(pi^k F)`: `rho_lambda` with multiplicity `chi_lambda(1)` in degree `k(4N - 2A_lambda)`.
pub fn table_pi_power(n: usize, k: u64) -> Result<CohTable> {
    check_n(n)?;
    if k > MAX_PI_POWER {
        return Err(Error::Domain(format!("power of pi {k} exceeds {MAX_PI_POWER}")));
    }
    let mut t = CohTable::new(n, pi_power_label(k));
    for l in partitions(n) {
        let degree = k as i64 * full_twist_shift(&l)?;
        let m = chi_dim(&l)?;
        t.add(degree, l, m)?;
    }
    Ok(t)
}

/// `sum_lambda mult_1(i, lambda) mult_2(j, lambda)`.
pub fn inner_product(t1: &CohTable, t2: &CohTable, i: i64, j: i64) -> Result<u128> {
    check_rank(t1.n, t2.n)?;
    Ok(t1
        .entries
        .iter()
        .filter(|((d, _), _)| *d == i)
        .map(|((_, l), m)| *m as u128 * t2.mult(j, l) as u128)
        .sum())
}

/// No unipotent character occurs in two different degrees.
pub fn disjointness_check(t: &CohTable) -> bool {
    let mut seen: BTreeMap<&Partition, i64> = BTreeMap::new();
    for (d, l) in t.entries.keys() {
        if let Some(prev) = seen.insert(l, *d) {
            if prev != *d {
                return false;
            }
        }
    }
    true
}

/// All supported degrees are even.
pub fn parity_check(t: &CohTable) -> bool {
    t.entries.keys().all(|(d, _)| d % 2 == 0)
}

/// `sum_i (-1)^i sum_lambda mult(i, lambda) D_lambda(q)`, a graded dimension count.
pub fn euler_dim(t: &CohTable, q: &BigInt) -> Result<BigInt> {
    let mut degrees: BTreeMap<&Partition, BigInt> = BTreeMap::new();
    let mut total = BigInt::from(0);
    for ((d, l), m) in &t.entries {
        if !degrees.contains_key(l) {
            degrees.insert(l, generic_degree(l)?.eval(q));
        }
        let term = &degrees[l] * BigInt::from(*m);
        if d % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// Length of the braid named by the label, when it parses as a positive word.
pub fn label_length(t: &CohTable) -> Option<i64> {
    if let Ok(w) = EnrichedWord::parse(t.n, &t.braid) {
        return Some(w.letters.iter().map(|l| l.perm.length() as i64).sum());
    }
    let b = GarsideElement::parse(t.n, &t.braid).ok()?;
    b.is_positive().then(|| b.length())
}

/// Every degree lies in `[l(b), 2 l(b)]`; `None` if the label has no length.
pub fn dimension_window_check(t: &CohTable) -> Option<bool> {
    let len = label_length(t)?;
    Some(t.entries.keys().all(|(d, _)| (len..=2 * len).contains(d)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub conjugate: bool,
    /// Both braids are central, so the check says nothing.
    pub vacuous: bool,
    pub tables_equal: bool,
    pub witness: Option<GarsideElement>,
}

impl InvarianceReport {
    /// Conjugate braids must carry equal tables.
    pub fn consistent(&self) -> bool {
        !self.conjugate || self.tables_equal
    }
}

fn is_central(b: &GarsideElement) -> Result<bool> {
    for i in 1..b.rank() {
        let s = GarsideElement::generator(b.rank(), i, false)?;
        if b.multiply(&s)? != s.multiply(b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compares the tables of two braids whose labels parse; tables of conjugate
/// braids must agree.
pub fn conjugacy_invariance_check(t1: &CohTable, t2: &CohTable) -> Result<InvarianceReport> {
    check_rank(t1.n, t2.n)?;
    let b1 = GarsideElement::parse(t1.n, &t1.braid)?;
    let b2 = GarsideElement::parse(t2.n, &t2.braid)?;
    let witness = b1.conjugating_element(&b2)?;
    Ok(InvarianceReport {
        conjugate: witness.is_some(),
        vacuous: is_central(&b1)? && is_central(&b2)?,
        tables_equal: t1.entries == t2.entries,
        witness,
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    n: usize,
    braid: String,
    entries: Vec<Record>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    degree: i64,
    lambda: Vec<usize>,
    mult: i64,
}

/// The JSON document, entries sorted by `(degree, lambda)`, with a trailing newline.
pub fn to_document(t: &CohTable) -> String {
    let doc = Document {
        n: t.n,
        braid: t.braid.clone(),
        entries: t
            .entries()
            .map(|(degree, l, m)| Record {
                degree,
                lambda: l.parts().to_vec(),
                mult: m as i64,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("table documents serialize");
    s.push('\n');
    s
}

pub fn from_document(src: &str) -> Result<CohTable> {
    let doc: Document = serde_json::from_str(src).map_err(|e| Error::Document(e.to_string()))?;
    if doc.n == 0 {
        return Err(Error::Document("rank must be positive".into()));
    }
    if BraidWord::parse(doc.n, &doc.braid).is_err() && EnrichedWord::parse(doc.n, &doc.braid).is_err() {
        return Err(Error::Document(format!("unparsable braid {:?}", doc.braid)));
    }
    let mut t = CohTable::new(doc.n, doc.braid);
    for r in doc.entries {
        if r.mult <= 0 {
            return Err(Error::Document(format!(
                "multiplicity {} at degree {} must be positive",
                r.mult, r.degree
            )));
        }
        let lambda = Partition::new(r.lambda.clone())
            .map_err(|_| Error::Document(format!("{:?} is not a partition", r.lambda)))?;
        if lambda.size() != t.n {
            return Err(Error::Document(format!("{lambda} is not a partition of {}", t.n)));
        }
        if t.mult(r.degree, &lambda) != 0 {
            return Err(Error::Document(format!("duplicate entry ({}, {lambda})", r.degree)));
        }
        t.add(r.degree, lambda, r.mult as u64)?;
    }
    Ok(t)
}

pub fn export_table(t: &CohTable, path: &Path) -> Result<()> {
    std::fs::write(path, to_document(t))?;
    Ok(())
}

pub fn import_table(path: &Path) -> Result<CohTable> {
    from_document(&std::fs::read_to_string(path)?)
}

/// Tab-separated rows `degree lambda mult` under a header line.
pub fn to_tsv(t: &CohTable) -> String {
    let mut s = String::from("degree\tlambda\tmult\n");
    for (d, l, m) in t.entries() {
        writeln!(s, "{d}\t{l}\t{m}").unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_factorial;
    use proptest::prelude::*;

    fn lam(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn table(n: usize, entries: &[(i64, &str, u64)]) -> CohTable {
        let mut t = CohTable::new(n, "");
        for &(d, l, m) in entries {
            t.add(d, lam(l), m).unwrap();
        }
        t
    }

    #[test]
    fn trivial_braid() {
        let t = table_trivial_braid(2).unwrap();
        assert_eq!(t.entries, table(2, &[(0, "[2]", 1), (0, "[1,1]", 1)]).entries);
        let t = table_trivial_braid(3).unwrap();
        assert_eq!(t.entries, table(3, &[(0, "[3]", 1), (0, "[2,1]", 2), (0, "[1,1,1]", 1)]).entries);
        assert_eq!(euler_dim(&t, &BigInt::from(2)).unwrap(), BigInt::from(21));
        for n in 1..=6 {
            for q in 2..=5 {
                let q = BigInt::from(q);
                assert_eq!(
                    euler_dim(&table_trivial_braid(n).unwrap(), &q).unwrap(),
                    q_factorial(n).eval(&q)
                );
            }
        }
        assert!(table_trivial_braid(0).is_err());
    }

    #[test]
    fn translation_examples() {
        let t = translate_full_twist(&table_trivial_braid(2).unwrap()).unwrap();
        assert_eq!(t.entries, table(2, &[(2, "[1,1]", 1), (4, "[2]", 1)]).entries);
        assert_eq!(t.braid, "pi");
        let t = translate_full_twist(&table_trivial_braid(3).unwrap()).unwrap();
        assert_eq!(
            t.entries,
            table(3, &[(6, "[1,1,1]", 1), (8, "[2,1]", 2), (12, "[3]", 1)]).entries
        );
        assert_eq!(t, table_pi_power(3, 1).unwrap());
        assert!(translate_full_twist(&CohTable::new(3, "")).unwrap().is_empty());
        let other = translate_full_twist(&CohTable::new(3, "s1 s2")).unwrap();
        assert_eq!(other.braid, "pi (s1 s2)");
        assert_eq!(translate_full_twist(&other).unwrap().braid, "pi (pi (s1 s2))");
    }

    #[test]
    fn pi_powers() {
        assert_eq!(table_pi_power(4, 0).unwrap(), table_trivial_braid(4).unwrap());
        assert_eq!(
            table_pi_power(2, 2).unwrap().entries,
            table(2, &[(4, "[1,1]", 1), (8, "[2]", 1)]).entries
        );
        assert_eq!(table_pi_power(2, 2).unwrap().braid, "pi^2");
        for n in 1..=6 {
            let big_n = num_positive_roots(n) as i64;
            let mut iterated = table_trivial_braid(n).unwrap();
            for k in 0..=3u64 {
                let t = table_pi_power(n, k).unwrap();
                assert_eq!(t, iterated);
                let kk = k as i64;
                assert_eq!(t.support_range(), Some((2 * big_n * kk, 4 * big_n * kk)));
                assert_eq!(t.degrees_of(&Partition::column(n)), vec![2 * big_n * kk]);
                assert_eq!(t.degrees_of(&Partition::row(n)), vec![4 * big_n * kk]);
                assert!(parity_check(&t));
                assert!(disjointness_check(&t));
                assert_eq!(dimension_window_check(&t), Some(true));
                iterated = translate_full_twist(&iterated).unwrap();
            }
        }
        assert!(table_pi_power(2, MAX_PI_POWER + 1).is_err());
    }

    #[test]
    fn inner_products() {
        let t = table_pi_power(3, 1).unwrap();
        assert_eq!(inner_product(&t, &t, 8, 8).unwrap(), 4);
        assert_eq!(inner_product(&t, &t, 6, 8).unwrap(), 0);
        assert_eq!(inner_product(&t, &t, 6, 6).unwrap(), 1);
        assert_eq!(inner_product(&t, &CohTable::new(3, ""), 8, 8).unwrap(), 0);
        assert!(inner_product(&t, &CohTable::new(2, ""), 8, 8).is_err());
    }

    #[test]
    fn checks() {
        let bad = table(2, &[(0, "[2]", 1), (1, "[2]", 1)]);
        assert!(!disjointness_check(&bad));
        assert!(!parity_check(&bad));
        assert!(disjointness_check(&CohTable::new(2, "")));
        assert!(parity_check(&CohTable::new(2, "")));
        // D_(1,1) = q, D_(2) = 1
        assert_eq!(euler_dim(&table_pi_power(2, 1).unwrap(), &BigInt::from(2)).unwrap(), BigInt::from(3));
        assert_eq!(euler_dim(&bad, &BigInt::from(2)).unwrap(), BigInt::from(0));
        let mut window = table(2, &[(3, "[2]", 1)]);
        window.braid = "s1".into();
        assert_eq!(dimension_window_check(&window), Some(false));
        window.braid = "s1'".into();
        assert_eq!(dimension_window_check(&window), None);
    }

    #[test]
    fn conjugacy_invariance() {
        let mut a = table(3, &[(1, "[3]", 1)]);
        a.braid = "s1 s2".into();
        let mut b = a.clone();
        b.braid = "s2 s1".into();
        let r = conjugacy_invariance_check(&a, &b).unwrap();
        assert!(r.conjugate && !r.vacuous && r.tables_equal && r.consistent());
        b.add(2, lam("[2,1]"), 1).unwrap();
        assert!(!conjugacy_invariance_check(&a, &b).unwrap().consistent());
        let mut c = a.clone();
        c.braid = "s1 s1".into();
        assert!(!conjugacy_invariance_check(&a, &c).unwrap().conjugate);
        let p = table_pi_power(3, 1).unwrap();
        let mut p2 = p.clone();
        p2.braid = "D^2".into();
        let r = conjugacy_invariance_check(&p, &p2).unwrap();
        assert!(r.conjugate && r.vacuous && r.consistent());
    }

    #[test]
    fn document_examples() {
        let doc = to_document(&table_pi_power(3, 1).unwrap());
        let expected = r#"{
  "n": 3,
  "braid": "pi",
  "entries": [
    {
      "degree": 6,
      "lambda": [
        1,
        1,
        1
      ],
      "mult": 1
    },
    {
      "degree": 8,
      "lambda": [
        2,
        1
      ],
      "mult": 2
    },
    {
      "degree": 12,
      "lambda": [
        3
      ],
      "mult": 1
    }
  ]
}
"#;
        assert_eq!(doc, expected);
        assert_eq!(from_document(&doc).unwrap(), table_pi_power(3, 1).unwrap());
        assert_eq!(
            to_tsv(&table_pi_power(3, 1).unwrap()),
            "degree\tlambda\tmult\n6\t[1,1,1]\t1\n8\t[2,1]\t2\n12\t[3]\t1\n"
        );
        assert_eq!(to_tsv(&CohTable::new(3, "")), "degree\tlambda\tmult\n");
    }

    #[test]
    fn malformed_documents() {
        let bad = [
            r#"{"n":2,"braid":"","entries":[{"degree":0,"lambda":[2],"mult":0}]}"#,
            r#"{"n":2,"braid":"","entries":[{"degree":0,"lambda":[2],"mult":-1}]}"#,
            r#"{"n":2,"braid":"","entries":[{"degree":0,"lambda":[1,2],"mult":1}]}"#,
            r#"{"n":2,"braid":"","entries":[{"degree":0,"lambda":[3],"mult":1}]}"#,
            r#"{"n":2,"braid":"","entries":[{"degree":0,"lambda":[2],"mult":1},{"degree":0,"lambda":[2],"mult":1}]}"#,
            r#"{"n":2,"braid":"s5","entries":[]}"#,
            r#"{"n":0,"braid":"","entries":[]}"#,
            r#"{"n":2,"braid":"","entries":[],"extra":1}"#,
            r#"{"n":2,"entries":[]}"#,
            "not json",
        ];
        for src in bad {
            assert!(matches!(from_document(src), Err(Error::Document(_))), "{src}");
        }
        let ok = from_document(r#"{"n":2,"braid":"_s1 s1","entries":[{"degree":1,"lambda":[1,1],"mult":3}]}"#)
            .unwrap();
        assert_eq!(ok.mult(1, &lam("[1,1]")), 3);
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join(format!("dltk-dlcoh-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("gl4.json");
        let t = table_pi_power(4, 2).unwrap();
        export_table(&t, &path).unwrap();
        assert_eq!(import_table(&path).unwrap(), t);
        assert!(import_table(&dir.join("missing.json")).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    fn arb_table() -> impl Strategy<Value = CohTable> {
        (1usize..=5).prop_flat_map(|n| {
            let labels = partitions(n);
            let k = labels.len();
            (
                Just(n),
                Just(labels),
                prop::collection::vec((-20i64..40, 0..k, 1u64..1000), 0..12),
            )
                .prop_map(|(n, labels, raw)| {
                    let mut t = CohTable::new(n, "s1^2 D");
                    if n == 1 {
                        t.braid = "D".into();
                    }
                    for (d, l, m) in raw {
                        t.add(d, labels[l].clone(), m).unwrap();
                    }
                    t
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn document_round_trip(t in arb_table()) {
            let doc = to_document(&t);
            prop_assert_eq!(from_document(&doc).unwrap(), t.clone());
            prop_assert_eq!(to_tsv(&t).lines().count(), t.len() + 1);
        }

        #[test]
        fn translation_laws(t in arb_table()) {
            let once = translate_full_twist(&t).unwrap();
            let twice = translate_full_twist(&once).unwrap();
            prop_assert_eq!(once.total_multiplicity(), t.total_multiplicity());
            prop_assert_eq!(once.len(), t.len());
            for (d, l, m) in t.entries() {
                let s = full_twist_shift(l).unwrap();
                prop_assert_eq!(once.mult(d + s, l), m);
                prop_assert_eq!(twice.mult(d + 2 * s, l), m);
            }
            prop_assert_eq!(disjointness_check(&once), disjointness_check(&t));
            prop_assert_eq!(parity_check(&once), parity_check(&t));
        }

        #[test]
        fn translation_is_injective(a in arb_table(), b in arb_table()) {
            if a.n == b.n {
                let ta = translate_full_twist(&a).unwrap();
                let tb = translate_full_twist(&b).unwrap();
                prop_assert_eq!(ta.entries == tb.entries, a.entries == b.entries);
            }
        }
    }
}
