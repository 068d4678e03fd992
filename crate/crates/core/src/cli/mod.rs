//! The `igband` command-line front end.
//!
//! Exit codes: 0 when a verdict or result was reached, 1 when the outcome
//! is inconclusive or negative (budget exhausted, witness rejected, no
//! witness found, demo failure), 2 on usage or input errors.

mod demo;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::analysis::Analysis;
use crate::band::{build_strong_semilattice, Band, ClassId, Property, StrongSemilatticeSpec};
use crate::bundled;
use crate::decide::{equal, Verdict};
use crate::greens::{
    condition_p_search, regularity_witness, search_nonabundance, verify_nonabundance,
    NonAbundanceWitness,
};
use crate::igword::{anf, significant_indices, y_projection, ScanDirection};
use crate::rewrite::{check_local_confluence, normal_form, Budget, GenWord, RewriteCertificate};

#[derive(Debug, Parser)]
#[command(
    name = "igband",
    version,
    about = "Free idempotent generated semigroups over finite bands"
)]
pub struct Cli {
    /// Band file (`.band` Cayley table or `.ssl` strong semilattice) or a
    /// bundled band: y3, band4, normal5, nonnormal5, normal10, rect1.
    #[arg(long, global = true)]
    pub band: Option<String>,
    /// Longest word the equality search may visit (default: longest input
    /// plus 4). For witness-search and condition-p: the longest candidate.
    #[arg(long, global = true)]
    pub max_len: Option<usize>,
    /// Number of distinct words the equality search may visit.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub max_states: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print `key=value` lines instead of prose.
    #[arg(long, global = true)]
    pub machine: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the band file is a valid band.
    Validate,
    /// Print the D-classes and structural properties of the band.
    Classify,
    /// Draw each D-class as an R-row by L-column grid.
    Eggbox,
    /// Normal form reached by leftmost contraction.
    Nf { word: String },
    /// Almost normal form, blocks separated by `|`.
    Anf { word: String },
    /// Significant indices in both directions.
    Indices { word: String },
    /// Image of the word in IG(Y).
    ProjectY { word: String },
    /// Decide equality of two words in IG(B).
    Equal { left: String, right: String },
    /// Check a non-abundance witness file.
    WitnessVerify { file: PathBuf },
    /// Search for a non-abundance witness for a target word.
    WitnessSearch { target: String },
    /// Inverse of a word whose letters lie in one D-class.
    Regularity { word: String },
    /// Check local confluence of the contraction rules.
    Confluence,
    /// Search for a violation of Condition (P).
    ConditionP,
    /// Replay a bundled example: y3-nonregular, normal5-nonunique,
    /// normal5-derivation, band4-nonabundant, nonnormal5-projection,
    /// normal10-nonabundant, congruence, all.
    Demo { name: String },
}

/// Human text plus machine fields and an exit code.
#[derive(Debug, Default)]
pub(crate) struct Report {
    text: String,
    fields: Vec<(String, String)>,
    code: u8,
}

impl Report {
    pub(crate) fn say(&mut self, line: impl AsRef<str>) {
        self.text.push_str(line.as_ref());
        if !line.as_ref().ends_with('\n') {
            self.text.push('\n');
        }
    }

    pub(crate) fn field(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    pub(crate) fn certificate(&mut self, b: &Band, c: &RewriteCertificate) {
        self.say(c.to_text(b));
        self.field("certificate-start", c.start.render(b));
        self.field("certificate-steps", c.len());
        for s in &c.steps {
            self.field("certificate-step", s.to_line(b));
        }
        self.field("certificate-end", c.end.render(b));
    }

    pub(crate) fn absorb(&mut self, other: Report) {
        self.text.push_str(&other.text);
        self.fields.extend(other.fields);
        self.code = self.code.max(other.code);
    }
}

#[derive(Debug)]
pub(crate) struct CliError(pub(crate) String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Loads a bundled band by name, or a file (`.ssl` files are strong
/// semilattice descriptions, anything else a Cayley table).
pub fn load_band(spec: &str) -> crate::Result<Band, String> {
    if let Some(b) = bundled::band(spec) {
        return Ok(b);
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {spec}: {e}"))?;
    if path.extension().is_some_and(|x| x == "ssl") {
        let spec = StrongSemilatticeSpec::parse(&text).map_err(|e| e.to_string())?;
        build_strong_semilattice(&spec).map_err(|e| e.to_string())
    } else {
        Band::parse(&text).map_err(|e| e.to_string())
    }
}

impl Cli {
    fn budget(&self) -> Budget {
        Budget {
            max_len: self.max_len,
            max_states: self.max_states,
        }
    }

    fn analysis(&self) -> CliResult<Analysis> {
        let spec = self
            .band
            .as_deref()
            .ok_or_else(|| CliError("this command needs --band".into()))?;
        let b = load_band(spec).map_err(CliError)?;
        Ok(Analysis::new(b)?)
    }
}

fn word(a: &Analysis, text: &str) -> CliResult<GenWord> {
    Ok(a.word(text)?)
}

fn class_names(a: &Analysis, cs: &[ClassId]) -> String {
    cs.iter()
        .map(|&c| a.decomposition().label(a.band(), c))
        .collect::<Vec<_>>()
        .join(" ")
}

fn yes_no(v: bool) -> &'static str {
    if v {
        "yes"
    } else {
        "no"
    }
}

/// Runs the command line `args` (program name first), writing the report
/// to `out` and errors to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(r) => {
            if cli.machine {
                for (k, v) in &r.fields {
                    let _ = writeln!(out, "{k}={v}");
                }
            } else {
                let _ = write!(out, "{}", r.text);
            }
            r.code
        }
        Err(CliError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

pub(crate) fn execute(cli: &Cli) -> CliResult<Report> {
    let budget = cli.budget();
    let mut r = Report::default();
    match &cli.command {
        Command::Demo { name } => return demo::run(name, cli.seed),
        Command::Validate => {
            let a = cli.analysis()?;
            let d = a.decomposition();
            r.say(format!(
                "valid band: {} elements, {} D-classes",
                a.band().len(),
                d.num_classes()
            ));
            r.field("valid", "yes");
            r.field("elements", a.band().len());
            r.field("classes", d.num_classes());
        }
        Command::Classify => classify(&cli.analysis()?, &mut r),
        Command::Eggbox => {
            let a = cli.analysis()?;
            let is_y3 = bundled::band("y3").is_some_and(|y| y.to_text() == a.band().to_text());
            eggbox(&a, is_y3, &mut r);
        }
        Command::Nf { word: w } => {
            let a = cli.analysis()?;
            let (nf, c) = normal_form(a.band(), &word(&a, w)?);
            r.say(format!("normal form: {}", nf.render(a.band())));
            r.field("nf", nf.render(a.band()));
            r.certificate(a.band(), &c);
        }
        Command::Anf { word: w } => {
            let a = cli.analysis()?;
            let (f, c) = anf(&a, &word(&a, w)?);
            r.say(format!("almost normal form: {}", f.render(&a)));
            r.say(format!("y-components: {}", class_names(&a, f.components())));
            r.field("anf", f.render(&a));
            r.field("y-length", f.y_length());
            r.certificate(a.band(), &c);
        }
        Command::Indices { word: w } => {
            let a = cli.analysis()?;
            let w = word(&a, w)?;
            for (dir, tag) in [
                (ScanDirection::LeftToRight, "ltr"),
                (ScanDirection::RightToLeft, "rtl"),
            ] {
                let p = significant_indices(a.decomposition(), &w, dir);
                let list = |v: &[usize]| {
                    v.iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                r.say(format!(
                    "{tag}: indices {} stops {} components {}",
                    list(&p.indices),
                    list(&p.stops),
                    class_names(&a, &p.components)
                ));
                r.field(&format!("{tag}-indices"), list(&p.indices));
                r.field(&format!("{tag}-stops"), list(&p.stops));
            }
        }
        Command::ProjectY { word: w } => {
            let a = cli.analysis()?;
            let p = y_projection(&a, &word(&a, w)?);
            r.say(format!("projection: {}", class_names(&a, &p.word)));
            r.say(format!(
                "normal form in IG(Y): {}",
                class_names(&a, &p.normal_form)
            ));
            r.field("y-length", p.normal_form.len());
            r.field("y-nf", class_names(&a, &p.normal_form));
        }
        Command::Equal { left, right } => {
            let a = cli.analysis()?;
            let v = equal(&a, &word(&a, left)?, &word(&a, right)?, budget);
            r.say(v.render(a.band()));
            r.field("verdict", v.verdict);
            r.field("method", v.method);
            if let Some(c) = v.certificate() {
                r.field("certificate-steps", c.len());
                for s in &c.steps {
                    r.field("certificate-step", s.to_line(a.band()));
                }
            }
            if v.verdict == Verdict::Inconclusive {
                r.code = 1;
            }
        }
        Command::WitnessVerify { file } => {
            let a = cli.analysis()?;
            let text = std::fs::read_to_string(file)
                .map_err(|e| CliError(format!("cannot read {}: {e}", file.display())))?;
            let w = NonAbundanceWitness::parse(&a, &text, budget)?;
            match verify_nonabundance(&a, &w, budget) {
                Ok(()) => {
                    r.say("witness verified");
                    r.field("verified", "yes");
                }
                Err(reason) => {
                    r.say(format!("witness rejected: {reason}"));
                    r.field("verified", "no");
                    r.field("reason", reason);
                    r.code = 1;
                }
            }
        }
        Command::WitnessSearch { target } => {
            let a = cli.analysis()?;
            let len = cli.max_len.unwrap_or(2);
            let t = word(&a, target)?;
            let search_budget = Budget {
                max_len: None,
                ..budget
            };
            match search_nonabundance(&a, &t, len, search_budget) {
                Some(w) => {
                    r.say(w.to_text(&a));
                    r.field("found", "yes");
                    r.field("x", w.x.render(a.band()));
                    if let Some(y) = &w.y {
                        r.field("y", y.render(a.band()));
                    }
                }
                None => {
                    r.say(format!("no witness up to length {len}"));
                    r.field("found", "no");
                    r.code = 1;
                }
            }
        }
        Command::Regularity { word: w } => {
            let a = cli.analysis()?;
            let (z, c) = regularity_witness(&a, &word(&a, w)?)?;
            r.say(format!("inverse: {}", z.render(a.band())));
            r.field("z", z.render(a.band()));
            r.certificate(a.band(), &c);
        }
        Command::Confluence => {
            let a = cli.analysis()?;
            let b = a.band();
            let rep = check_local_confluence(b);
            r.say(format!(
                "locally confluent: {} ({} critical words)",
                yes_no(rep.is_locally_confluent()),
                rep.critical_words
            ));
            r.field("locally-confluent", yes_no(rep.is_locally_confluent()));
            for p in &rep.all_counterexamples {
                let line = format!(
                    "{} -> {{{}, {}}}",
                    p.word.render(b),
                    p.left.render(b),
                    p.right.render(b)
                );
                r.say(format!("  {line}"));
                r.field("counterexample", line);
            }
        }
        Command::ConditionP => {
            let a = cli.analysis()?;
            let len = cli.max_len.unwrap_or(6);
            let search_budget = Budget {
                max_len: None,
                ..budget
            };
            let rep = condition_p_search(&a, len, search_budget);
            match &rep.violation {
                Some(v) => {
                    r.say("Condition (P) fails:");
                    r.say(v.render(&a));
                    r.field("violation", "yes");
                    r.field("u", v.u.render(&a));
                    r.field("v", v.v.render(&a));
                }
                None => {
                    r.say(format!(
                        "no violation among {} almost normal forms up to length {len} ({} inconclusive decisions)",
                        rep.words, rep.inconclusive
                    ));
                    r.field("violation", "no");
                    r.field("inconclusive", rep.inconclusive);
                    if rep.inconclusive > 0 {
                        r.code = 1;
                    }
                }
            }
        }
    }
    Ok(r)
}

fn classify(a: &Analysis, r: &mut Report) {
    let b = a.band();
    let d = a.decomposition();
    let c = a.classification();
    r.say(format!("D-classes ({}):", d.num_classes()));
    for i in 0..d.num_classes() {
        let below: Vec<String> = (0..d.num_classes())
            .filter(|&j| d.lt(j, i))
            .map(|j| d.label(b, j))
            .collect();
        let mut line = format!("  {}", d.label(b, i));
        if !below.is_empty() {
            let _ = write!(line, " > {}", below.join(" "));
        }
        r.say(line);
    }
    for p in [
        Property::Semilattice,
        Property::Rectangular,
        Property::Chain,
        Property::Normal,
        Property::RegularBand,
        Property::LocallyLarge,
        Property::YBasic,
        Property::Pliant,
    ] {
        let value = match c.flag(p) {
            Some(v) => yes_no(v),
            None => "n/a",
        };
        let mut line = format!("{p}: {value}");
        if let Some(w) = c.refutation(p) {
            let _ = write!(line, "  [{}]", w.render(b));
        }
        r.say(line);
        r.field(&p.to_string(), value);
    }
}

fn grid_text(cells: &[Vec<String>]) -> String {
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|j| {
            cells
                .iter()
                .map(|row| row[j].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let rule: String = widths
        .iter()
        .map(|w| format!("+{}", "-".repeat(w + 2)))
        .collect::<String>()
        + "+\n";
    let mut out = rule.clone();
    for row in cells {
        for (j, cell) in row.iter().enumerate() {
            let pad = widths[j] - cell.chars().count();
            let _ = write!(out, "| {cell}{} ", " ".repeat(pad));
        }
        out.push_str("|\n");
        out.push_str(&rule);
    }
    out
}

fn eggbox(a: &Analysis, with_literature: bool, r: &mut Report) {
    let b = a.band();
    let d = a.decomposition();
    for c in 0..d.num_classes() {
        let grid = d.eggbox(b, c);
        let cells: Vec<Vec<String>> = grid
            .iter()
            .map(|row| row.iter().map(|&e| b.name(e).to_string()).collect())
            .collect();
        r.say(format!(
            "{} ({}x{})",
            d.label(b, c),
            grid.len(),
            grid[0].len()
        ));
        r.say(grid_text(&cells));
        r.field("box", format!("{}x{}", grid.len(), grid[0].len()));
    }
    if with_literature {
        r.say("IG(Y) without g: egg-box of the non-trivial D*-class (literature data, hard-coded; n >= 1)");
        let cells = vec![
            vec!["e, (e f)^n e".to_string(), "(e f)^n".to_string()],
            vec!["(f e)^n".to_string(), "f, (f e)^n f".to_string()],
        ];
        r.say(grid_text(&cells));
        r.field("literature-box", "2x2");
        let ok = literature_box_consistent(a);
        r.say(format!(
            "rows share the R-tilde idempotent and columns the L-tilde idempotent for n <= 3: {}",
            yes_no(ok)
        ));
        r.field("literature-box-consistent", yes_no(ok));
    }
}

/// Cells of the hard-coded `IG(Y)` egg-box instantiated for `n ≤ 3`: rows
/// must agree on the R-side tilde idempotent, columns on the L-side one.
fn literature_box_consistent(a: &Analysis) -> bool {
    use crate::greens::{tilde_idempotent, Side};
    let w = |s: String| a.word(&s).ok();
    let cell = |row: usize, col: usize| -> Vec<GenWord> {
        let mut out = Vec::new();
        match (row, col) {
            (0, 0) => out.push(w("e".into())),
            (1, 1) => out.push(w("f".into())),
            _ => {}
        }
        for n in 1..=3 {
            let s = match (row, col) {
                (0, 0) => format!("{} e", vec!["e f"; n].join(" ")),
                (0, 1) => vec!["e f"; n].join(" "),
                (1, 0) => vec!["f e"; n].join(" "),
                _ => format!("{} f", vec!["f e"; n].join(" ")),
            };
            out.push(w(s));
        }
        out.into_iter().flatten().collect()
    };
    let same = |words: Vec<GenWord>, side| {
        let ids: Vec<_> = words.iter().map(|x| tilde_idempotent(a, x, side)).collect();
        !ids.is_empty() && ids.windows(2).all(|p| p[0] == p[1])
    };
    (0..2).all(|i| same([cell(i, 0), cell(i, 1)].concat(), Side::R))
        && (0..2).all(|j| same([cell(0, j), cell(1, j)].concat(), Side::L))
}

/// Entry point for the binary.
pub fn main() -> std::process::ExitCode {
    let code = run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::ExitCode::from(code)
}
