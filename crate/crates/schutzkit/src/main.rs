//! The `schutzkit` command line: parse monoid documents, build `M ∗ N` and
//! the Schützenberger product `M ⋄ N`, list recognized languages, compute
//! marked products, and run the theorem verifiers.
//!
//! Exit codes: 0 when every verdict passes, 1 when a verification fails or
//! stays inconclusive, 2 on malformed input, 3 when a size guard trips.

use clap::{Args, Parser, Subcommand, ValueEnum};
use schutzkit::dmonoid::{eval_word, Assignment, DMonoid};
use schutzkit::document::parse_monoid_spec;
use schutzkit::error::Error;
use schutzkit::languages::format_word;
use schutzkit::limits::Limits;
use schutzkit::products::{schutzenberger, star_product, SchutzElem, SchutzProduct};
use schutzkit::recognition::{
    closure_check, decompose_middle, emit_report, reutenauer_check, schurec_witness,
    universal_property_check, ReportFormat, Verdict, VerificationReport,
};
use schutzkit::valuation::enumerate_valuations;
use schutzkit::variety::Semiring;
use schutzkit::{Result, TruncLanguage};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

/// Constructions and verifiers for Schützenberger products of finite
/// monoids in four varieties (set, pos, jsl, vect).
#[derive(Parser)]
#[command(name = "schutzkit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a monoid document and check every algebra law.
    Validate {
        /// Path to the JSON monoid document.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Build the product M ∗ N and report its carrier and valuation family.
    Star {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Build M ⋄ N and emit its carrier sizes (and tables, when small).
    Schutzenberger {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// List the languages a monoid recognizes under a letter assignment.
    Recognize {
        /// Path to the JSON monoid document.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Compute the marked product K mark L of two projection languages.
    MarkedProduct {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        word: WordArgs,
        /// Index of the valuation on M, in enumeration order.
        #[arg(long, default_value_t = 0)]
        left_valuation: usize,
        /// Index of the valuation on N, in enumeration order.
        #[arg(long, default_value_t = 0)]
        right_valuation: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Verify a product theorem and emit a verification report.
    Verify {
        #[arg(value_enum)]
        theorem: Theorem,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        word: WordArgs,
        /// Closure mode: also close the atom family under derivatives.
        #[arg(long, value_enum, default_value_t = Mode::Without)]
        mode: Mode,
        /// Seed for sampled checks; fixed seeds give byte-identical reports.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Args)]
struct PairArgs {
    /// Path to the left monoid document (M).
    #[arg(long)]
    left: PathBuf,
    /// Path to the right monoid document (N).
    #[arg(long)]
    right: PathBuf,
}

#[derive(Args)]
struct WordArgs {
    /// Comma-separated single-character alphabet.
    #[arg(long, default_value = "a,b")]
    alphabet: String,
    /// Letter images by element name or id, e.g. "a=g,b=1" for one monoid
    /// or "a=g,b=1;a=1,b=0" for a left;right pair. Unlisted letters map to
    /// the unit, as does every letter when the flag is omitted.
    #[arg(long)]
    images: Option<String>,
    /// The marked letter; defaults to the first alphabet letter.
    #[arg(long)]
    mark: Option<char>,
    /// Truncation bound L: every word of length ≤ L is checked.
    #[arg(long, default_value_t = 8)]
    max_len: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    WithDerivatives,
    Without,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Schurec,
    Reutenauer,
    Decompose,
    Closure,
    Universal,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(match e {
                Error::Input(_) => 2,
                Error::Guard(_) => 3,
            })
        }
    }
}

/// Dispatches one command; `Ok(false)` means a verification did not pass.
fn run(command: Command) -> Result<bool> {
    let limits = Limits::default();
    match command {
        Command::Validate { input, format } => {
            let m = load_monoid(&input)?;
            emit(&monoid_summary(&m), format);
            Ok(true)
        }
        Command::Star { pair, format } => {
            let (m, n) = load_pair(&pair)?;
            let star = star_product(&m, &n, &limits)?;
            let elements = (star.size() <= ELEMENT_CAP).then(|| star.monoid.element_names.clone());
            emit(
                &StarSummary {
                    name: star.monoid.name.clone(),
                    variety: m.object.variety.to_string(),
                    size: star.size(),
                    generator_pairs: star.left_size * star.right_size,
                    left_valuations: star.left_valuations.len(),
                    right_valuations: star.right_valuations.len(),
                    elements,
                },
                format,
            );
            Ok(true)
        }
        Command::Schutzenberger { pair, format } => {
            let (m, n) = load_pair(&pair)?;
            let sp = schutzenberger(&m, &n, &limits)?;
            emit(&schutz_summary(&sp), format);
            Ok(true)
        }
        Command::Recognize {
            input,
            word,
            format,
        } => {
            let m = load_monoid(&input)?;
            let (alphabet, _, bound) = word.resolve()?;
            let f = parse_single_images(&word.images, &m, &alphabet)?;
            emit(&recognize_summary(&m, &f, bound, &limits)?, format);
            Ok(true)
        }
        Command::MarkedProduct {
            pair,
            word,
            left_valuation,
            right_valuation,
            format,
        } => {
            let (m, n) = load_pair(&pair)?;
            if m.object.variety.semiring() != n.object.variety.semiring() {
                return Err(Error::input(format!(
                    "the two monoids must share an output semiring, got {} and {}",
                    m.object.variety, n.object.variety
                )));
            }
            let (alphabet, mark, bound) = word.resolve()?;
            let (g, h) = parse_pair_images(&word.images, &m, &n, &alphabet)?;
            let s = m.object.variety.semiring();
            let ps = enumerate_valuations(&m.object, &limits)?;
            let qs = enumerate_valuations(&n.object, &limits)?;
            let p = ps.get(left_valuation).ok_or_else(|| {
                Error::input(format!(
                    "left valuation index {left_valuation} out of range ({} valuations)",
                    ps.len()
                ))
            })?;
            let q = qs.get(right_valuation).ok_or_else(|| {
                Error::input(format!(
                    "right valuation index {right_valuation} out of range ({} valuations)",
                    qs.len()
                ))
            })?;
            let k = TruncLanguage::from_fn(s, &alphabet, bound, |w| p.of(eval_word(&m, &g, w)))?;
            let l = TruncLanguage::from_fn(s, &alphabet, bound, |w| q.of(eval_word(&n, &h, w)))?;
            let product = k.marked_product(mark, &l)?;
            emit(
                &MarkedSummary {
                    alphabet: alphabet.iter().collect(),
                    bound,
                    mark,
                    left_valuation: p.digits(),
                    right_valuation: q.digits(),
                    k: describe_language(&k).0,
                    l: describe_language(&l).0,
                    product: describe_language(&product).0,
                },
                format,
            );
            Ok(true)
        }
        Command::Verify {
            theorem,
            pair,
            word,
            mode,
            seed,
            format,
        } => {
            let (m, n) = load_pair(&pair)?;
            let (alphabet, mark, bound) = word.resolve()?;
            let (g, h) = parse_pair_images(&word.images, &m, &n, &alphabet)?;
            let report = match theorem {
                Theorem::Schurec => verify_schurec(&m, &n, &g, &h, mark, bound, &limits)?,
                Theorem::Decompose => verify_decompose(&m, &n, &g, &h, mark, bound, &limits)?,
                Theorem::Reutenauer => {
                    let sp = schutzenberger(&m, &n, &limits)?;
                    let f = product_assignment(&sp, &g, &h, mark)?;
                    reutenauer_check(&sp, &f, bound, &limits)?
                }
                Theorem::Closure => {
                    let sp = schutzenberger(&m, &n, &limits)?;
                    let f = product_assignment(&sp, &g, &h, mark)?;
                    closure_check(&sp, &f, mode == Mode::WithDerivatives, bound, &limits, seed)?
                }
                Theorem::Universal => {
                    let sp = schutzenberger(&m, &n, &limits)?;
                    let f = product_assignment(&sp, &g, &h, mark)?;
                    let fi = sp.image_of_free_morphism(&f, &limits)?;
                    universal_property_check(&sp, &f, &fi.letters, &fi.monoid, bound, &limits)?
                        .report
                }
            };
            println!("{}", emit_report(&report, report_format(format)));
            Ok(report.passed())
        }
    }
}

/// Runs the recognition theorem over every valuation pair and merges the
/// per-pair reports into one.
fn verify_schurec(
    m: &DMonoid,
    n: &DMonoid,
    g: &Assignment,
    h: &Assignment,
    mark: char,
    bound: usize,
    limits: &Limits,
) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let ps = enumerate_valuations(&m.object, limits)?;
    let qs = enumerate_valuations(&n.object, limits)?;
    let mut merged = VerificationReport::new(
        "schurec",
        format!(
            "{}⋄{}, mark {mark}, all {}×{} valuation pairs",
            m.name,
            n.name,
            ps.len(),
            qs.len()
        ),
        bound,
    );
    for (i, p) in ps.iter().enumerate() {
        for (j, q) in qs.iter().enumerate() {
            let out = schurec_witness(m, n, g, h, p, q, mark, bound, limits)?;
            merge_piece(
                &mut merged,
                &out.report,
                &format!("p{i} q{j}"),
                Some(format!("K, L, and the {mark}-marked product certified")),
            );
        }
    }
    merged.elapsed_ms = t0.elapsed().as_millis();
    Ok(merged)
}

/// Runs the decomposition theorem over every valuation pair and merges the
/// per-pair reports; each witness line carries that pair's expression.
fn verify_decompose(
    m: &DMonoid,
    n: &DMonoid,
    g: &Assignment,
    h: &Assignment,
    mark: char,
    bound: usize,
    limits: &Limits,
) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let sp = schutzenberger(m, n, limits)?;
    let f = product_assignment(&sp, g, h, mark)?;
    let ps = enumerate_valuations(&m.object, limits)?;
    let qs = enumerate_valuations(&n.object, limits)?;
    let mut merged = VerificationReport::new(
        "decompose",
        format!("{}, all {}×{} valuation pairs", sp.name, ps.len(), qs.len()),
        bound,
    );
    for (i, p) in ps.iter().enumerate() {
        for (j, q) in qs.iter().enumerate() {
            let out = decompose_middle(&sp, &f, p, q, bound, limits)?;
            let expr = out.report.witnesses.first().cloned().unwrap_or_default();
            merge_piece(&mut merged, &out.report, &format!("p{i} q{j}"), Some(expr));
        }
    }
    merged.elapsed_ms = t0.elapsed().as_millis();
    Ok(merged)
}

/// Folds one per-instance report into an aggregate: checks add up, the first
/// failure wins, and each instance contributes one witness line.
fn merge_piece(
    acc: &mut VerificationReport,
    piece: &VerificationReport,
    label: &str,
    witness: Option<String>,
) {
    acc.checks += piece.checks;
    let detail = || {
        piece
            .counterexample
            .clone()
            .unwrap_or_else(|| "no counterexample recorded".to_string())
    };
    match piece.verdict {
        Verdict::Pass => {}
        Verdict::Fail => acc.fail(format!("{label}: {}", detail())),
        Verdict::Inconclusive => acc.inconclusive(format!("{label}: {}", detail())),
    }
    if let Some(w) = witness {
        acc.witnesses.push(shorten(&format!("{label}: {w}"), 160));
    }
}

/// The marked-letter morphism into `M ⋄ N`: the mark goes to
/// `(g(a), 1, h(a))`, every other letter to `(g(b), 0, h(b))`.
fn product_assignment(
    sp: &SchutzProduct,
    g: &Assignment,
    h: &Assignment,
    mark: char,
) -> Result<Assignment> {
    let images = g
        .alphabet
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let a = if c == mark {
                sp.middle.one
            } else {
                sp.middle.zero
            };
            sp.id_of(&SchutzElem {
                m: g.images[i],
                a,
                n: h.images[i],
            })
        })
        .collect();
    Assignment::new(g.alphabet.clone(), images)
}

fn load_monoid(path: &Path) -> Result<DMonoid> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    parse_monoid_spec(&text)
}

fn load_pair(pair: &PairArgs) -> Result<(DMonoid, DMonoid)> {
    Ok((load_monoid(&pair.left)?, load_monoid(&pair.right)?))
}

impl WordArgs {
    /// Resolves the alphabet, the marked letter, and the truncation bound.
    fn resolve(&self) -> Result<(Vec<char>, char, usize)> {
        let alphabet = parse_alphabet(&self.alphabet)?;
        let mark = match self.mark {
            Some(c) if alphabet.contains(&c) => c,
            Some(c) => {
                return Err(Error::input(format!(
                    "marked letter '{c}' is not in the alphabet"
                )))
            }
            None => alphabet[0],
        };
        if self.max_len == 0 {
            return Err(Error::input(
                "max word length must be at least 1".to_string(),
            ));
        }
        Ok((alphabet, mark, self.max_len))
    }
}

fn parse_alphabet(s: &str) -> Result<Vec<char>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let mut chars = part.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => out.push(c),
            _ => {
                return Err(Error::input(format!(
                    "alphabet entries must be single characters, got '{part}'"
                )))
            }
        }
    }
    for (i, &c) in out.iter().enumerate() {
        if out[..i].contains(&c) {
            return Err(Error::input(format!("duplicate alphabet letter '{c}'")));
        }
    }
    Ok(out)
}

/// Looks an element up by document name first, then by numeric id (the only
/// option for vect carriers, whose coordinate names contain commas).
fn parse_element(m: &DMonoid, token: &str) -> Result<usize> {
    if let Some(id) = m.element_names.iter().position(|n| n == token) {
        return Ok(id);
    }
    if let Ok(id) = token.parse::<usize>() {
        if id < m.size() {
            return Ok(id);
        }
    }
    Err(Error::input(format!(
        "unknown element '{token}' in {}",
        m.name
    )))
}

fn parse_side(spec: &str, m: &DMonoid, alphabet: &[char]) -> Result<Assignment> {
    let mut images = vec![m.unit; alphabet.len()];
    for entry in spec.split(',') {
        let (letter, element) = entry.split_once('=').ok_or_else(|| {
            Error::input(format!(
                "image entry '{entry}' is not of the form letter=element"
            ))
        })?;
        let mut chars = letter.chars();
        let c = match (chars.next(), chars.next()) {
            (Some(c), None) => c,
            _ => {
                return Err(Error::input(format!(
                    "image entry '{entry}' must name a single letter"
                )))
            }
        };
        let i = alphabet
            .iter()
            .position(|&a| a == c)
            .ok_or_else(|| Error::input(format!("letter '{c}' is not in the alphabet")))?;
        images[i] = parse_element(m, element)?;
    }
    Assignment::new(alphabet.to_vec(), images)
}

fn parse_pair_images(
    spec: &Option<String>,
    m: &DMonoid,
    n: &DMonoid,
    alphabet: &[char],
) -> Result<(Assignment, Assignment)> {
    match spec {
        None => Ok((
            Assignment::new(alphabet.to_vec(), vec![m.unit; alphabet.len()])?,
            Assignment::new(alphabet.to_vec(), vec![n.unit; alphabet.len()])?,
        )),
        Some(s) => {
            let parts: Vec<&str> = s.split(';').collect();
            if parts.len() != 2 {
                return Err(Error::input(
                    "expected two ';'-separated image lists: left;right".to_string(),
                ));
            }
            Ok((
                parse_side(parts[0], m, alphabet)?,
                parse_side(parts[1], n, alphabet)?,
            ))
        }
    }
}

fn parse_single_images(
    spec: &Option<String>,
    m: &DMonoid,
    alphabet: &[char],
) -> Result<Assignment> {
    match spec {
        None => Assignment::new(alphabet.to_vec(), vec![m.unit; alphabet.len()]),
        Some(s) if s.contains(';') => Err(Error::input(
            "this command takes a single image list".to_string(),
        )),
        Some(s) => parse_side(s, m, alphabet),
    }
}

/// Largest carrier for which element lists and tables are printed.
const ELEMENT_CAP: usize = 32;
/// How many nonzero words a language description shows.
const SHOW_CAP: usize = 12;
/// How many valuations `recognize` lists.
const VALUATION_CAP: usize = 64;

/// Renders a language as its nonzero words (with coefficients outside the
/// Boolean case); returns the description and the support size.
fn describe_language(l: &TruncLanguage) -> (String, usize) {
    let words = l.words();
    let mut shown = Vec::new();
    let mut support = 0usize;
    for (w, &v) in words.iter().zip(&l.values) {
        if v == 0 {
            continue;
        }
        support += 1;
        if shown.len() < SHOW_CAP {
            let s = format_word(&l.alphabet, w);
            shown.push(if l.semiring == Semiring::Bool {
                s
            } else {
                format!("{s}:{v}")
            });
        }
    }
    let mut out = if shown.is_empty() {
        "(zero)".to_string()
    } else {
        shown.join(" ")
    };
    if support > SHOW_CAP {
        let _ = write!(out, " … (+{} more)", support - SHOW_CAP);
    }
    (out, support)
}

fn shorten(s: &str, max: usize) -> String {
    if s.chars().count() <= max {
        s.to_string()
    } else {
        let t: String = s.chars().take(max).collect();
        format!("{t}…")
    }
}

fn report_format(format: Format) -> ReportFormat {
    match format {
        Format::Json => ReportFormat::Json,
        Format::Table => ReportFormat::Table,
    }
}

/// Anything the non-verify commands print: JSON via serde, tables via a
/// key-value rendering. Both are deterministic for a fixed configuration.
trait Summary: Serialize {
    fn table(&self) -> String;
}

fn emit<S: Summary>(summary: &S, format: Format) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(summary).expect("summary serialization cannot fail")
        ),
        Format::Table => print!("{}", summary.table()),
    }
}

fn kv(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key:<16}: {value}");
}

#[derive(Serialize)]
struct MonoidSummary {
    name: String,
    variety: String,
    size: usize,
    unit: String,
    status: &'static str,
}

fn monoid_summary(m: &DMonoid) -> MonoidSummary {
    MonoidSummary {
        name: m.name.clone(),
        variety: m.object.variety.to_string(),
        size: m.size(),
        unit: m.element_name(m.unit),
        status: "valid",
    }
}

impl Summary for MonoidSummary {
    fn table(&self) -> String {
        let mut out = String::new();
        kv(&mut out, "monoid", &self.name);
        kv(&mut out, "variety", &self.variety);
        kv(&mut out, "size", self.size);
        kv(&mut out, "unit", &self.unit);
        kv(&mut out, "status", self.status);
        out
    }
}

#[derive(Serialize)]
struct StarSummary {
    name: String,
    variety: String,
    size: usize,
    generator_pairs: usize,
    left_valuations: usize,
    right_valuations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    elements: Option<Vec<String>>,
}

impl Summary for StarSummary {
    fn table(&self) -> String {
        let mut out = String::new();
        kv(&mut out, "product", &self.name);
        kv(&mut out, "variety", &self.variety);
        kv(&mut out, "size", self.size);
        kv(&mut out, "generator pairs", self.generator_pairs);
        kv(
            &mut out,
            "valuations",
            format!(
                "{} left × {} right ({} coordinates per element)",
                self.left_valuations,
                self.right_valuations,
                self.left_valuations * self.right_valuations
            ),
        );
        if let Some(elements) = &self.elements {
            kv(&mut out, "elements", elements.join(" "));
        }
        out
    }
}

#[derive(Serialize)]
struct SchutzSummary {
    name: String,
    variety: String,
    left_size: usize,
    middle_size: usize,
    right_size: usize,
    size: usize,
    unit: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    elements: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<Vec<Vec<usize>>>,
}

fn schutz_summary(sp: &SchutzProduct) -> SchutzSummary {
    let name_of = |id: usize| {
        let e = sp.elem_of(id);
        format!(
            "({},{},{})",
            sp.left.element_name(e.m),
            sp.middle.describe(e.a),
            sp.right.element_name(e.n)
        )
    };
    let small = sp.size() <= ELEMENT_CAP;
    let elements = small.then(|| (0..sp.size()).map(name_of).collect());
    let table = small.then(|| {
        (0..sp.size())
            .map(|x| {
                let ex = sp.elem_of(x);
                (0..sp.size())
                    .map(|y| sp.id_of(&sp.mul(&ex, &sp.elem_of(y))))
                    .collect()
            })
            .collect()
    });
    SchutzSummary {
        name: sp.name.clone(),
        variety: sp.left.object.variety.to_string(),
        left_size: sp.left.size(),
        middle_size: sp.middle.size,
        right_size: sp.right.size(),
        size: sp.size(),
        unit: name_of(sp.id_of(&sp.unit())),
        elements,
        table,
    }
}

impl Summary for SchutzSummary {
    fn table(&self) -> String {
        let mut out = String::new();
        kv(&mut out, "product", &self.name);
        kv(&mut out, "variety", &self.variety);
        kv(&mut out, "left size", self.left_size);
        kv(&mut out, "middle size", self.middle_size);
        kv(&mut out, "right size", self.right_size);
        kv(&mut out, "size", self.size);
        kv(&mut out, "unit", &self.unit);
        match (&self.elements, &self.table) {
            (Some(elements), Some(table)) => {
                let _ = writeln!(out, "elements:");
                for (i, e) in elements.iter().enumerate() {
                    let _ = writeln!(out, "  {i}: {e}");
                }
                let _ = writeln!(out, "multiplication table (ids):");
                for (i, row) in table.iter().enumerate() {
                    let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                    let _ = writeln!(out, "  {i}: {}", cells.join(" "));
                }
            }
            _ => {
                kv(
                    &mut out,
                    "table",
                    format!("omitted ({} elements)", self.size),
                );
            }
        }
        out
    }
}

#[derive(Serialize)]
struct ValuationSummary {
    index: usize,
    digits: String,
    support: usize,
    language: String,
}

#[derive(Serialize)]
struct RecognizeSummary {
    monoid: String,
    variety: String,
    alphabet: String,
    bound: usize,
    images: String,
    total_valuations: usize,
    valuations: Vec<ValuationSummary>,
}

fn recognize_summary(
    m: &DMonoid,
    f: &Assignment,
    bound: usize,
    limits: &Limits,
) -> Result<RecognizeSummary> {
    let s = m.object.variety.semiring();
    let vals = enumerate_valuations(&m.object, limits)?;
    let mut rows = Vec::new();
    for (index, v) in vals.iter().take(VALUATION_CAP).enumerate() {
        let lang = TruncLanguage::from_fn(s, &f.alphabet, bound, |w| v.of(eval_word(m, f, w)))?;
        let (language, support) = describe_language(&lang);
        rows.push(ValuationSummary {
            index,
            digits: v.digits(),
            support,
            language,
        });
    }
    let images = f
        .alphabet
        .iter()
        .zip(&f.images)
        .map(|(c, &x)| format!("{c}={}", m.element_name(x)))
        .collect::<Vec<_>>()
        .join(",");
    Ok(RecognizeSummary {
        monoid: m.name.clone(),
        variety: m.object.variety.to_string(),
        alphabet: f.alphabet.iter().collect(),
        bound,
        images,
        total_valuations: vals.len(),
        valuations: rows,
    })
}

impl Summary for RecognizeSummary {
    fn table(&self) -> String {
        let mut out = String::new();
        kv(&mut out, "monoid", &self.monoid);
        kv(&mut out, "variety", &self.variety);
        kv(&mut out, "alphabet", &self.alphabet);
        kv(&mut out, "bound", self.bound);
        kv(&mut out, "images", &self.images);
        kv(&mut out, "valuations", self.total_valuations);
        for v in &self.valuations {
            let _ = writeln!(out, "  #{} ({}): {}", v.index, v.digits, v.language);
        }
        if self.total_valuations > self.valuations.len() {
            let _ = writeln!(
                out,
                "  … (+{} more)",
                self.total_valuations - self.valuations.len()
            );
        }
        out
    }
}

#[derive(Serialize)]
struct MarkedSummary {
    alphabet: String,
    bound: usize,
    mark: char,
    left_valuation: String,
    right_valuation: String,
    k: String,
    l: String,
    product: String,
}

impl Summary for MarkedSummary {
    fn table(&self) -> String {
        let mut out = String::new();
        kv(&mut out, "alphabet", &self.alphabet);
        kv(&mut out, "bound", self.bound);
        kv(&mut out, "mark", self.mark);
        kv(&mut out, "p", &self.left_valuation);
        kv(&mut out, "q", &self.right_valuation);
        kv(&mut out, "K", &self.k);
        kv(&mut out, "L", &self.l);
        kv(
            &mut out,
            format!("K {} L", self.mark).as_str(),
            &self.product,
        );
        out
    }
}
