use std::fmt;
use std::io::{self, Write};

use dltk_core::braid::{EnrichedWord, GarsideElement};
use dltk_core::cells::{two_sided_cells, CellMethod};
use dltk_core::dlcoh::{self, CohTable};
use dltk_core::dlpoints::{count_points_with, CountOptions};
use dltk_core::unipotent::unipotent_characters;
use dltk_core::verify::{run_suite, SUITES};
use dltk_core::weyl::Permutation;
use dltk_core::Error;

use crate::{BraidCommand, Caps, CellsArgs, Command, DlCommand, Format, EXIT_OK, EXIT_VERIFY};

#[derive(Debug)]
pub struct Failure(String);

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(format!("write failed: {e}"))
    }
}

type Outcome = Result<i32, Failure>;

/// Renders an error against the expression it came from, with a caret under
/// the offending position for parse errors.
fn in_expr(src: &str, e: Error) -> Failure {
    match e {
        Error::Parse { pos, ref msg } => {
            let col = src.get(..pos).map_or(pos, |p| p.chars().count());
            Failure(format!("{msg} at position {pos}\n  {src}\n  {}^", " ".repeat(col)))
        }
        e => Failure(format!("{e} (in {src:?})")),
    }
}

fn braid(n: usize, src: &str) -> Result<GarsideElement, Failure> {
    check_rank(n)?;
    GarsideElement::parse(n, src).map_err(|e| in_expr(src, e))
}

fn check_rank(n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure("rank must be at least 1".into()));
    }
    Ok(())
}

pub fn dispatch(cmd: &Command, caps: &Caps, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Braid(b) => braid_command(b, caps, out),
        Command::Cells(args) => cells(args, out),
        Command::Unipotent { rank } => unipotent(*rank, out),
        Command::Dl(d) => dl_command(d, caps, out),
        Command::Verify { suites } => verify(suites, out),
    }
}

fn braid_command(cmd: &BraidCommand, caps: &Caps, out: &mut dyn Write) -> Outcome {
    match cmd {
        BraidCommand::Nf { rank, braid: src } => {
            writeln!(out, "{}", braid(*rank, src)?)?;
        }
        BraidCommand::Conj { rank, braid: a, other } => {
            let a = braid(*rank, a)?;
            let b = braid(*rank, other)?;
            match a.conjugating_element_capped(&b, caps.sss)? {
                Some(c) => {
                    writeln!(out, "true")?;
                    writeln!(out, "witness\t{c}")?;
                }
                None => writeln!(out, "false")?,
            }
        }
        BraidCommand::RootCheck { rank, braid: src, d } => {
            if *d == 0 {
                return Err(Failure("d must be positive".into()));
            }
            writeln!(out, "{}", braid(*rank, src)?.is_dth_root_of_pi(*d))?;
        }
    }
    Ok(EXIT_OK)
}

fn cells(args: &CellsArgs, out: &mut dyn Write) -> Outcome {
    check_rank(args.rank)?;
    let method = if args.oracle { CellMethod::Oracle } else { CellMethod::Fast };
    let dec = two_sided_cells(args.rank, method)?;
    if args.dot {
        out.write_all(dec.to_dot().as_bytes())?;
        return Ok(EXIT_OK);
    }
    let mut rows: Vec<(&Permutation, usize)> = dec
        .cells
        .iter()
        .flat_map(|c| c.members.iter().map(move |w| (w, c.id)))
        .collect();
    rows.sort();
    let mut s = String::from("permutation\tshape\ta\tcell\n");
    for (w, id) in rows {
        let shape = &dec.cells[id].shape;
        s.push_str(&format!("{w}\t{shape}\t{}\t{id}\n", shape.n_statistic()));
    }
    out.write_all(s.as_bytes())?;
    Ok(EXIT_OK)
}

fn unipotent(n: usize, out: &mut dyn Write) -> Outcome {
    check_rank(n)?;
    let mut s = String::from("lambda\tgeneric_degree\ta\tA\tchi_dim\n");
    for c in unipotent_characters(n)? {
        s.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            c.label, c.generic_degree, c.a, c.big_a, c.chi_dim
        ));
    }
    out.write_all(s.as_bytes())?;
    Ok(EXIT_OK)
}

fn emit(t: &CohTable, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Tsv => out.write_all(dlcoh::to_tsv(t).as_bytes()),
        Format::Doc => out.write_all(dlcoh::to_document(t).as_bytes()),
    }
}

fn import(path: &std::path::Path) -> Result<CohTable, Failure> {
    dlcoh::import_table(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn dl_command(cmd: &DlCommand, caps: &Caps, out: &mut dyn Write) -> Outcome {
    match cmd {
        DlCommand::Cohomology { rank, braid: src, format } => {
            let b = braid(*rank, src)?;
            let k = match (b.factors().is_empty(), b.inf()) {
                (true, p) if p >= 0 && p % 2 == 0 => (p / 2) as u64,
                _ => {
                    return Err(Failure(format!(
                        "{src:?} normalizes to {b}, which is not pi^k with k >= 0; only tables of powers of pi are computed"
                    )))
                }
            };
            emit(&dlcoh::table_pi_power(*rank, k)?, *format, out)?;
        }
        DlCommand::Count { rank, word, q, m, jobs } => {
            check_rank(*rank)?;
            let w = EnrichedWord::parse(*rank, word).map_err(|e| in_expr(word, e))?;
            let opts = CountOptions {
                flag_cap: caps.flags,
                search_cap: caps.search,
                jobs: *jobs,
            };
            let count = count_points_with(&w, *q, *m, &opts)?;
            let record = serde_json::json!({
                "n": rank,
                "word": word,
                "q": q,
                "m": m,
                "count": count,
            });
            writeln!(out, "{count}")?;
            writeln!(out, "{record}")?;
        }
        DlCommand::Disjoint { input } => {
            let ok = dlcoh::disjointness_check(&import(input)?);
            writeln!(out, "{ok}")?;
            return Ok(if ok { EXIT_OK } else { EXIT_VERIFY });
        }
        DlCommand::Translate { input, times, format } => {
            let t = dlcoh::translate_full_twist_times(&import(input)?, *times)?;
            emit(&t, *format, out)?;
        }
    }
    Ok(EXIT_OK)
}

fn verify(suites: &[String], out: &mut dyn Write) -> Outcome {
    if let Some(bad) = suites.iter().find(|s| !SUITES.contains(&s.as_str())) {
        return Err(Failure(format!(
            "unknown suite {bad:?}; expected one of {}",
            SUITES.join(", ")
        )));
    }
    let names: Vec<&str> = if suites.is_empty() {
        SUITES.to_vec()
    } else {
        suites.iter().map(String::as_str).collect()
    };
    let (mut passed, mut failed) = (0usize, 0usize);
    for name in names {
        for r in run_suite(name)? {
            if r.passed {
                passed += 1;
                writeln!(out, "PASS\t{}\t{}", r.suite, r.name)?;
            } else {
                failed += 1;
                writeln!(out, "FAIL\t{}\t{}\t{}", r.suite, r.name, r.detail)?;
            }
        }
        out.flush()?;
    }
    writeln!(out, "{passed} passed, {failed} failed")?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY })
}
