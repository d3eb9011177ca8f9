//! The `surfsym` command line.
//!
//! [`run`] takes the full argument vector and returns the exit code and the
//! text to print, so the binary and the tests share one entry point.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::{crosscheck, Catalog, CrosscheckReport};
use crate::classifier::{classify, classify_all, max_order, ActionClass};
use crate::epimorphism::{CyclicEpimorphism, Mode};
use crate::extend::{decide_with, Bracket, ExtensionType, ObstructionEngine, Sources};
use crate::oracle::{CombinatorialCover, OracleReport};
use crate::orbifold::{enumerate_quotient_signatures, orbifold_euler_characteristic, Character};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "surfsym", version, about = "Cyclic actions on closed orientable surfaces and their extendability over S^3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List quotient orbifold signatures allowed by Riemann–Hurwitz.
    Enumerate(Scan),
    /// List conjugacy classes of actions.
    Classify(Scan),
    /// Decide extendability over S^3.
    Extend(ExtendArgs),
    /// Largest order of a periodic map.
    MaxOrder(Scan),
    /// Rebuild covers combinatorially and report their invariants.
    Oracle(OracleArgs),
    /// Crosscheck the genus-2 enumeration against the catalog.
    Verify(Common),
    /// Classify genus 2, decide every class and crosscheck the result.
    #[command(name = "reproduce-theorem-1.1")]
    Reproduce(Common),
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, default_value_t = 2)]
    genus: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct Scan {
    #[command(flatten)]
    common: Common,
    /// A single order `N` or an inclusive range `A..B`.
    #[arg(long, value_parser = parse_order)]
    order: Option<OrderRange>,
    #[arg(long, conflicts_with_all = ["reversing", "both"])]
    preserving: bool,
    #[arg(long, conflicts_with_all = ["preserving", "both"])]
    reversing: bool,
    #[arg(long, conflicts_with_all = ["preserving", "reversing"])]
    both: bool,
}

#[derive(Args, Debug, Clone)]
struct ExtendArgs {
    #[command(flatten)]
    scan: Scan,
    /// Catalog name of the class, e.g. `tau_{6,2}`.
    #[arg(long)]
    class: Option<String>,
    /// Use the obstruction rules only.
    #[arg(long)]
    rules_only: bool,
}

#[derive(Args, Debug, Clone)]
struct OracleArgs {
    #[command(flatten)]
    scan: Scan,
    /// Examine one epimorphism given in text form instead of a scan.
    #[arg(long)]
    epi: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Strict,
    Paper,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Paper => Mode::Paper,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Debug)]
struct OrderRange(RangeInclusive<u32>);

fn parse_order(s: &str) -> std::result::Result<OrderRange, String> {
    let bad = || format!("expected N or A..B, got `{s}`");
    match s.split_once("..") {
        Some((a, b)) => {
            let a = u32::from_str(a).map_err(|_| bad())?;
            let b = u32::from_str(b).map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok(OrderRange(a..=b))
        }
        None => u32::from_str(s).map(|n| OrderRange(n..=n)).map_err(|_| bad()),
    }
}

impl Scan {
    fn characters(&self) -> Vec<Character> {
        if self.preserving {
            vec![Character::Preserving]
        } else if self.reversing {
            vec![Character::Reversing]
        } else {
            Character::ALL.to_vec()
        }
    }

    fn character_filter(&self) -> Option<Character> {
        match self.characters()[..] {
            [c] => Some(c),
            _ => None,
        }
    }

    fn orders(&self) -> RangeInclusive<u32> {
        self.order
            .as_ref()
            .map(|o| o.0.clone())
            .unwrap_or(2..=4 * self.common.genus + 4)
    }

    /// `(order, character)` pairs that the engine accepts.
    fn cases(&self) -> Vec<(u32, Character)> {
        let mut out = Vec::new();
        for n in self.orders().filter(|&n| n >= 2) {
            for c in self.characters() {
                if c == Character::Reversing && n % 2 == 1 {
                    continue;
                }
                out.push((n, c));
            }
        }
        out
    }

    fn classes(&self) -> Result<Vec<ActionClass>> {
        let mut out = Vec::new();
        for (n, c) in self.cases() {
            out.extend(classify(self.common.genus, n, c, self.common.mode.into())?);
        }
        Ok(out)
    }
}

/// Column-oriented report rendered as an aligned table or CSV.
struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(headers: Vec<&'static str>) -> Self {
        Table { headers, rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn text(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |cells: Vec<&str>, out: &mut String| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            out.push_str(padded.join("  ").trim_end());
            out.push('\n');
        };
        line(self.headers.clone(), &mut out);
        line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect(), &mut out);
        for row in &self.rows {
            line(row.iter().map(String::as_str).collect(), &mut out);
        }
        out
    }

    fn csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
        writer.write_record(&self.headers).map_err(io)?;
        for row in &self.rows {
            writer.write_record(row).map_err(io)?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn render(format: Format, table: &Table, json: &impl Serialize) -> Result<String> {
    match format {
        Format::Table => Ok(table.text()),
        Format::Csv => table.csv(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(json).map_err(|e| Error::InvalidArgument(format!("json: {e}")))?;
            s.push('\n');
            Ok(s)
        }
    }
}

fn list(values: &[u32]) -> String {
    values.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct SignatureRecord {
    genus: u32,
    order: u32,
    character: Character,
    signature: String,
    orbifold_euler_characteristic: String,
}

fn enumerate(scan: &Scan) -> Result<String> {
    let g = scan.common.genus;
    let mut records = Vec::new();
    for (n, c) in scan.cases() {
        for sig in enumerate_quotient_signatures(g, n, c)? {
            records.push(SignatureRecord {
                genus: g,
                order: n,
                character: c,
                orbifold_euler_characteristic: orbifold_euler_characteristic(&sig).to_string(),
                signature: sig.to_string(),
            });
        }
    }
    let mut table = Table::new(vec!["order", "character", "signature", "chi_orb"]);
    for r in &records {
        table.push(vec![
            r.order.to_string(),
            r.character.sign().to_string(),
            r.signature.clone(),
            r.orbifold_euler_characteristic.clone(),
        ]);
    }
    render(scan.common.format, &table, &records)
}

fn class_table(classes: &[ActionClass]) -> Table {
    let mut table = Table::new(vec![
        "name",
        "order",
        "character",
        "signature",
        "cone_images",
        "crosscap_images",
        "mirror_value",
        "mode_provenance",
        "fixed_points",
    ]);
    for c in classes {
        let r = c.record();
        let fixed: Vec<String> = r
            .fixed_data
            .powers
            .iter()
            .map(|p| format!("{}:{}", p.power, p.fixed_points))
            .collect();
        table.push(vec![
            r.name.clone().unwrap_or_else(|| "-".into()),
            r.order.to_string(),
            r.character.sign().to_string(),
            r.signature.clone(),
            list(&r.cone_images),
            list(&r.crosscap_images),
            r.mirror_value.map_or_else(|| "-".into(), |m| m.to_string()),
            r.mode_provenance.to_string(),
            fixed.join(" "),
        ]);
    }
    table
}

fn classify_cmd(scan: &Scan) -> Result<String> {
    let classes = scan.classes()?;
    let records: Vec<_> = classes.iter().map(ActionClass::record).collect();
    render(scan.common.format, &class_table(&classes), &records)
}

fn extend_cmd(args: &ExtendArgs) -> Result<String> {
    let scan = &args.scan;
    let classes = match &args.class {
        Some(name) => {
            let entry = Catalog::genus2()
                .entry(name)
                .ok_or_else(|| Error::InvalidArgument(format!("no catalog class named `{name}`")))?;
            let class = ActionClass::new(Catalog::GENUS, &entry.epimorphism).with_name(entry.name.clone());
            vec![class]
        }
        None => scan.classes()?,
    };
    let sources = if args.rules_only { Sources::RULES_ONLY } else { Sources::ALL };
    let mut engine = ObstructionEngine::new();
    let mut verdicts = Vec::new();
    for class in &classes {
        verdicts.push(decide_with(&mut engine, class, sources)?);
    }
    let mut table = Table::new(vec!["class", "pp", "pm", "mp", "mm", "summary"]);
    for v in &verdicts {
        let mut row = vec![v.class().to_string()];
        row.extend(ExtensionType::ALL.iter().map(|&t| v.status(t).label().to_string()));
        row.push(v.summary().to_string());
        table.push(row);
    }
    let records: Vec<_> = verdicts.iter().map(|v| v.record()).collect();
    if args.class.is_some() && scan.common.format == Format::Json {
        return render(Format::Json, &table, &records[0]);
    }
    render(scan.common.format, &table, &records)
}

#[derive(Serialize)]
struct MaxOrderRecord {
    genus: u32,
    character: String,
    max_order: u32,
}

fn max_order_cmd(scan: &Scan) -> Result<String> {
    let filter = scan.character_filter();
    let value = max_order(scan.common.genus, filter, scan.common.mode.into())?;
    let record = MaxOrderRecord {
        genus: scan.common.genus,
        character: filter.map_or_else(|| "any".into(), |c| c.to_string()),
        max_order: value,
    };
    match scan.common.format {
        Format::Table => Ok(format!("{value}\n")),
        format => {
            let mut table = Table::new(vec!["genus", "character", "max_order"]);
            table.push(vec![record.genus.to_string(), record.character.clone(), value.to_string()]);
            render(format, &table, &record)
        }
    }
}

#[derive(Serialize)]
struct OracleRecord {
    label: String,
    expected_chi: i64,
    #[serde(flatten)]
    report: OracleReport,
    /// Fixed-point counts agree with the closed formula.
    formula_agrees: Option<bool>,
}

fn oracle_cmd(args: &OracleArgs) -> Result<String> {
    let g = args.scan.common.genus;
    let mut records = Vec::new();
    match &args.epi {
        Some(text) => {
            let epi = CyclicEpimorphism::parse(text, Mode::Paper)?;
            let cover = CombinatorialCover::build_unchecked(&epi.realize())?;
            records.push(OracleRecord {
                label: epi.to_string(),
                expected_chi: 2 - 2 * g as i64,
                report: cover.report(),
                formula_agrees: None,
            });
        }
        None => {
            for class in args.scan.classes()? {
                let cover = CombinatorialCover::build_unchecked(&class.epimorphism().realize())?;
                let report = cover.report();
                let agrees = report
                    .fixed_counts
                    .iter()
                    .all(|f| class.fixed_points(f.power).ok() == Some(f.fixed_points));
                records.push(OracleRecord {
                    label: class.label(),
                    expected_chi: 2 - 2 * g as i64,
                    report,
                    formula_agrees: Some(agrees),
                });
            }
        }
    }
    let mut table = Table::new(vec!["class", "chi", "expected", "orientable", "connected", "fixed_points", "formula"]);
    for r in &records {
        let fixed: Vec<String> = r
            .report
            .fixed_counts
            .iter()
            .map(|f| format!("{}:{}", f.power, f.fixed_points))
            .collect();
        table.push(vec![
            r.label.clone(),
            r.report.chi.to_string(),
            r.expected_chi.to_string(),
            r.report.orientable.to_string(),
            r.report.connected.to_string(),
            fixed.join(" "),
            r.formula_agrees.map_or_else(|| "-".into(), |b| if b { "ok".into() } else { "MISMATCH".into() }),
        ]);
    }
    render(args.scan.common.format, &table, &records)
}

fn report_text(report: &CrosscheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "matched: {}", report.matched.len());
    for (name, epi) in &report.matched {
        let _ = writeln!(out, "  {name:10} {epi}");
    }
    let _ = writeln!(out, "missing in enumeration: {}", report.missing_in_enumeration.len());
    for name in &report.missing_in_enumeration {
        let _ = writeln!(out, "  {name}");
    }
    let _ = writeln!(out, "missing in catalog: {}", report.missing_in_catalog.len());
    for epi in &report.missing_in_catalog {
        let _ = writeln!(out, "  {epi}");
    }
    let _ = writeln!(out, "verdict mismatches: {}", report.verdict_mismatches.len());
    for m in &report.verdict_mismatches {
        let _ = writeln!(out, "  {}: catalog {}, decided {}", m.name, m.expected, m.found);
    }
    for a in &report.adjudications {
        let _ = writeln!(
            out,
            "oracle on {} ({}): chi = {}, {}, {}",
            a.name,
            a.epimorphism,
            a.chi,
            if a.orientable { "orientable" } else { "non-orientable" },
            if a.connected { "connected" } else { "disconnected" },
        );
        if let Some(v) = &a.violation {
            let _ = writeln!(out, "  orientation character violated: {v}");
        }
    }
    out
}

fn require_genus_two(common: &Common) -> Result<()> {
    if common.genus != Catalog::GENUS {
        return Err(Error::InvalidArgument(format!(
            "the catalog covers genus {} only",
            Catalog::GENUS
        )));
    }
    Ok(())
}

fn verify_cmd(common: &Common) -> Result<(i32, String)> {
    require_genus_two(common)?;
    let mode: Mode = common.mode.into();
    let catalog = Catalog::genus2();
    let classes = classify_all(Catalog::GENUS, mode)?;
    let report = crosscheck(catalog, &classes, None);
    let code = report.exit_code(mode, catalog);
    let text = match common.format {
        Format::Json => render(Format::Json, &Table::new(vec![]), &report)?,
        _ => report_text(&report),
    };
    Ok((code, text))
}

#[derive(Serialize)]
struct ReproductionRow {
    name: String,
    order: u32,
    character: Character,
    signature: String,
    bracket: String,
    catalog_bracket: Option<String>,
}

#[derive(Serialize)]
struct ReproductionReport {
    mode: Mode,
    classes: usize,
    rows: Vec<ReproductionRow>,
    crosscheck: CrosscheckReport,
}

fn reproduce_cmd(common: &Common) -> Result<(i32, String)> {
    require_genus_two(common)?;
    let mode: Mode = common.mode.into();
    let catalog = Catalog::genus2();
    let mut classes = classify_all(Catalog::GENUS, mode)?;
    let position = |c: &ActionClass| {
        c.name()
            .and_then(|n| catalog.entries().iter().position(|e| e.name == n))
            .unwrap_or(usize::MAX)
    };
    classes.sort_by_key(|c| position(c));
    let mut engine = ObstructionEngine::new();
    let mut rows = Vec::new();
    let mut brackets: Vec<(String, Bracket)> = Vec::new();
    for class in &classes {
        let verdict = decide_with(&mut engine, class, Sources::ALL)?;
        let name = class.label();
        brackets.push((name.clone(), verdict.summary()));
        rows.push(ReproductionRow {
            catalog_bracket: catalog.entry(&name).map(|e| e.bracket.to_string()),
            name,
            order: class.order(),
            character: class.character(),
            signature: class.signature().to_string(),
            bracket: verdict.summary().to_string(),
        });
    }
    let report = crosscheck(catalog, &classes, Some(&brackets));
    let code = report.exit_code(mode, catalog);
    let mut table = Table::new(vec!["class", "order", "character", "signature", "bracket", "catalog"]);
    for r in &rows {
        table.push(vec![
            r.name.clone(),
            r.order.to_string(),
            r.character.sign().to_string(),
            r.signature.clone(),
            r.bracket.clone(),
            r.catalog_bracket.clone().unwrap_or_else(|| "-".into()),
        ]);
    }
    let text = match common.format {
        Format::Table => {
            let mut s = format!("{} classes of periodic maps on the genus-2 surface ({mode} mode)\n\n", rows.len());
            s.push_str(&table.text());
            s.push('\n');
            s.push_str(&report_text(&report));
            s
        }
        format => render(
            format,
            &table,
            &ReproductionReport {
                mode,
                classes: rows.len(),
                rows,
                crosscheck: report,
            },
        )?,
    };
    Ok((code, text))
}

fn dispatch(cli: &Cli) -> Result<(i32, String, Option<String>)> {
    let (code, text, out) = match &cli.command {
        Command::Enumerate(s) => (0, enumerate(s)?, &s.common.out),
        Command::Classify(s) => (0, classify_cmd(s)?, &s.common.out),
        Command::Extend(a) => (0, extend_cmd(a)?, &a.scan.common.out),
        Command::MaxOrder(s) => (0, max_order_cmd(s)?, &s.common.out),
        Command::Oracle(a) => (0, oracle_cmd(a)?, &a.scan.common.out),
        Command::Verify(c) => {
            let (code, text) = verify_cmd(c)?;
            (code, text, &c.out)
        }
        Command::Reproduce(c) => {
            let (code, text) = reproduce_cmd(c)?;
            (code, text, &c.out)
        }
    };
    Ok((code, text, out.clone()))
}

/// Runs the command line `argv` (program name first). Returns the exit code
/// and the text destined for standard output.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match dispatch(&cli) {
        Ok((code, text, None)) => (code, text),
        Ok((code, text, Some(path))) => match std::fs::write(&path, text) {
            Ok(()) => (code, String::new()),
            Err(e) => (2, format!("error: cannot write {path}: {e}\n")),
        },
        Err(e @ (Error::InvalidArgument(_) | Error::Parse { .. } | Error::InvalidSignature(_))) => {
            (2, format!("error: {e}\n"))
        }
        Err(e) => (1, format!("error: {e}\n")),
    }
}
