//! Command-line front-end for the polyform enclosure engine.

pub mod replay;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polyform::{
    accounting_row, audit, check_enclosure, enumerate_face_types, enumerate_vertex_types,
    external_bounds, face_combo_restricted_bound, face_combo_upper_bound, flatness_series,
    heuristic_prune, internal_ranges, m_bounds, partition_count, restricted_partition_count,
    salt_ladder, AccountingMode, AccountingRow, Consistency, HighValencyCap, PolygonMultiset,
    RealizabilityFilters, TetComplex,
};

use crate::replay::{fixture_dir, ReplayReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Parser)]
#[command(
    name = "polyform",
    version,
    about = "Combinatorial enclosure checks for polyhedra and tetrahedral decompositions"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Enable heuristic pruning and realizability filters.
    #[arg(long, global = true, value_enum, default_value_t = Switch::Off)]
    pub heuristics: Switch,

    /// Cap face degree in face-type output (needs --heuristics on).
    #[arg(long, global = true, value_name = "K")]
    pub max_face_degree: Option<u32>,

    /// Allow at most N vertices of valency >= D in vertex-type output, as D:N (needs --heuristics on).
    #[arg(long, global = true, value_name = "D:N", value_parser = parse_high_valency)]
    pub high_valency: Option<HighValencyCap>,

    /// Enumerate face types even when 2E = 3F + S fails.
    #[arg(long, global = true)]
    pub override_consistency: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the enclosure worksheet on a polygon multiset (file path or inline JSON).
    Check { input: String },
    /// Edge, face and flatness bounds for V vertices.
    ExternalRange { v: u64 },
    /// Tetrahedron, gluing-triangle and segment ranges for V vertices.
    InternalRange { v: u64 },
    /// Internal configuration ladder for V vertices.
    Ladder {
        v: u64,
        /// Prune by external flatness S (needs --heuristics on).
        #[arg(long)]
        flatness: Option<u64>,
    },
    /// Face-type distributions for (V, S, E, F).
    FaceTypes { v: u64, s: u64, e: u64, f: u64 },
    /// Vertex-valency distributions for (V, E).
    VertexTypes { v: u64, e: u64 },
    /// Pair counts and face-combination bounds over a range of vertex counts.
    Census {
        #[arg(long, default_value_t = 4)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Also report the bound restricted to faces of degree at most K.
        #[arg(long, value_name = "K")]
        max_degree: Option<u64>,
    },
    /// Integer partition counts p(n), or partitions with parts at most M.
    Partitions {
        n: u64,
        #[arg(long, value_name = "M")]
        max_part: Option<u64>,
    },
    /// Audit a tetrahedral complex given as JSON.
    Audit {
        complex: PathBuf,
        /// Report only this accounting mode.
        #[arg(long)]
        mode: Option<AccountingMode>,
    },
    /// Replay a shipped fixture table against the library.
    Replay {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(replay::SETS))]
        set: String,
    },
}

fn parse_high_valency(s: &str) -> std::result::Result<HighValencyCap, String> {
    let (d, n) = s
        .split_once(':')
        .ok_or_else(|| format!("expected D:N, got `{s}`"))?;
    let min_valency = d
        .trim()
        .parse()
        .map_err(|e| format!("valency `{d}`: {e}"))?;
    let max_vertices = n.trim().parse().map_err(|e| format!("count `{n}`: {e}"))?;
    if min_valency < 3 {
        return Err("valency must be at least 3".into());
    }
    Ok(HighValencyCap {
        min_valency,
        max_vertices,
    })
}

/// A CSV-shaped table.
#[derive(Debug, Default)]
struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new<S: ToString>(headers: &[S]) -> Self {
        Self {
            headers: headers.iter().map(ToString::to_string).collect(),
            rows: Vec::new(),
        }
    }

    fn push<S: ToString>(&mut self, row: &[S]) {
        self.rows
            .push(row.iter().map(ToString::to_string).collect());
    }

    fn render_text(&self, out: &mut String) {
        let mut widths: Vec<usize> = self.headers.iter().map(String::len).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: &[String], out: &mut String| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&self.headers, out);
        for row in &self.rows {
            line(row, out);
        }
    }
}

/// Everything a command produces; the chosen format picks one view.
struct Output {
    json: Value,
    tables: Vec<Table>,
    /// Lines printed above the tables in text mode.
    notes: Vec<String>,
    /// Whether text mode prints the tables after the notes.
    text_tables: bool,
    code: i32,
}

impl Output {
    fn new(json: Value, table: Table) -> Self {
        Self {
            json,
            tables: vec![table],
            notes: Vec::new(),
            text_tables: true,
            code: 0,
        }
    }

    fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(format!("{}\n", serde_json::to_string(&self.json)?)),
            Format::Csv => {
                let mut parts = Vec::new();
                for table in &self.tables {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(&table.headers)?;
                    for row in &table.rows {
                        w.write_record(row)?;
                    }
                    parts.push(String::from_utf8(w.into_inner()?)?);
                }
                Ok(parts.join("\n"))
            }
            Format::Text => {
                let mut out = String::new();
                for note in &self.notes {
                    let _ = writeln!(out, "{note}");
                }
                let tables = if self.text_tables {
                    self.tables.as_slice()
                } else {
                    &[]
                };
                for (i, table) in tables.iter().enumerate() {
                    if i > 0 || !self.notes.is_empty() {
                        out.push('\n');
                    }
                    table.render_text(&mut out);
                }
                Ok(out)
            }
        }
    }
}

/// Parses `argv` (including the program name), runs the command and returns the exit code:
/// 0 on success, 1 for an infeasible verdict or failed replay, 2 for usage or input errors.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = execute(&cli).and_then(|out| Ok((out.render(cli.format)?, out.code)));
    match result {
        Ok((text, code)) => {
            let _ = stdout.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<Output> {
    let heuristics = cli.heuristics == Switch::On;
    let filters = RealizabilityFilters {
        max_face_degree: cli.max_face_degree,
        high_valency: cli.high_valency,
    };
    if filters.is_active() && !heuristics {
        bail!("realizability filters are heuristic; pass --heuristics on to use them");
    }
    match &cli.command {
        Command::Check { input } => check(input),
        Command::ExternalRange { v } => external_range(*v),
        Command::InternalRange { v } => internal_range(*v),
        Command::Ladder { v, flatness } => ladder(*v, *flatness, heuristics),
        Command::FaceTypes { v, s, e, f } => {
            let consistency = if cli.override_consistency {
                Consistency::Override
            } else {
                Consistency::Enforce
            };
            face_types(*v, *s, *e, *f, consistency, &filters)
        }
        Command::VertexTypes { v, e } => vertex_types(*v, *e, &filters),
        Command::Census {
            from,
            to,
            max_degree,
        } => census(*from, *to, *max_degree),
        Command::Partitions { n, max_part } => partitions(*n, *max_part),
        Command::Audit { complex, mode } => audit_complex(complex, *mode),
        Command::Replay { set } => replay_set(set, &fixture_dir()),
    }
}

fn read_multiset(input: &str) -> Result<PolygonMultiset> {
    let text = if input.trim_start().starts_with('{') {
        input.to_string()
    } else {
        fs::read_to_string(input).with_context(|| format!("reading {input}"))?
    };
    PolygonMultiset::from_json(&text).context("invalid polygon multiset")
}

fn opt<T: ToString>(value: Option<T>) -> String {
    value.map_or_else(|| "NA".to_string(), |v| v.to_string())
}

fn check(input: &str) -> Result<Output> {
    let report = check_enclosure(&read_multiset(input)?);
    let s = &report.steps;
    let mut table = Table::new(&[
        "N",
        "V",
        "S",
        "F",
        "E",
        "M",
        "Euler",
        "S_max",
        "S_difference",
        "verdict",
    ]);
    table.push(&[
        s.n.to_string(),
        opt(s.v),
        s.s.to_string(),
        s.f.to_string(),
        opt(s.e),
        s.m.to_string(),
        opt(report.euler),
        opt(report.s_max),
        opt(report.s_difference),
        report.verdict.to_string(),
    ]);
    let mut out = Output::new(serde_json::from_str(&report.to_json())?, table);
    out.notes.push(format!("input: {}", report.input.to_json()));
    out.notes.push(format!("verdict: {}", report.verdict));
    out.notes
        .extend(report.caveats.iter().map(|c| format!("caveat: {c}")));
    for (name, ok) in &report.cross_checks {
        out.notes.push(format!(
            "cross-check {name}: {}",
            if *ok { "ok" } else { "FAILED" }
        ));
    }
    out.code = if report.verdict.is_feasible() { 0 } else { 1 };
    Ok(out)
}

fn external_range(v: u64) -> Result<Output> {
    let bounds = external_bounds(v)?;
    let (m_min, m_max) = m_bounds(v)?;
    let series = flatness_series(v)?;
    let mut table = Table::new(&["S", "E", "F"]);
    for step in &series {
        table.push(&[step.s, step.e, step.f]);
    }
    let mut out = Output::new(
        json!({ "bounds": bounds, "m_min": m_min, "m_max": m_max, "series": series }),
        table,
    );
    out.notes.push(format!(
        "V={v}: E in {}..={}, F in {}..={}, S in 0..={}, M in {m_min}..={m_max}, {} (F, E) pairs",
        bounds.e_min, bounds.e_max, bounds.f_min, bounds.f_max, bounds.s_max, bounds.combo_count
    ));
    Ok(out)
}

fn internal_range(v: u64) -> Result<Output> {
    let r = internal_ranges(v)?;
    let mut table = Table::new(&[
        "V",
        "T_min",
        "T_max",
        "N_i_min",
        "N_i_max",
        "S_i_max",
        "configurations",
    ]);
    table.push(&[
        r.v,
        r.t_min,
        r.t_max,
        r.n_i_min,
        r.n_i_max,
        r.s_i_max,
        r.config_count,
    ]);
    Ok(Output::new(serde_json::to_value(r)?, table))
}

fn ladder(v: u64, flatness: Option<u64>, heuristics: bool) -> Result<Output> {
    match flatness {
        None => {
            let configs = salt_ladder(v)?;
            let mut table = Table::new(&["T", "N_i", "S_i"]);
            for c in &configs {
                table.push(&[c.t, c.n_i, c.s_i]);
            }
            Ok(Output::new(json!({ "v": v, "configs": configs }), table))
        }
        Some(s) => {
            if !heuristics {
                bail!("flatness pruning is heuristic; pass --heuristics on to use --flatness");
            }
            let pruned = heuristic_prune(v, s)?;
            let mut table = Table::new(&["S", "T", "N_i", "S_i"]);
            for c in &pruned.configs {
                table.push(&[s, c.t, c.n_i, c.s_i]);
            }
            let mut out = Output::new(serde_json::to_value(&pruned)?, table);
            out.notes.push(pruned.caveat.to_string());
            Ok(out)
        }
    }
}

/// Degree columns 3..=max(6, V-1); degrees above V-1 are impossible and shown as NA.
fn degree_table<'a, I>(v: u64, rows: I) -> Table
where
    I: IntoIterator<Item = &'a Vec<u64>>,
{
    let last = (v.saturating_sub(1)).max(6);
    let headers: Vec<String> = (3..=last).map(|d| d.to_string()).collect();
    let mut table = Table::new(&headers);
    for counts in rows {
        let row: Vec<String> = (0..headers.len())
            .map(|i| {
                counts
                    .get(i)
                    .map_or_else(|| "NA".to_string(), u64::to_string)
            })
            .collect();
        table.push(&row);
    }
    table
}

fn face_types(
    v: u64,
    s: u64,
    e: u64,
    f: u64,
    consistency: Consistency,
    filters: &RealizabilityFilters,
) -> Result<Output> {
    let all = enumerate_face_types(v, s, e, f, consistency)?;
    let kept: Vec<_> = all.iter().filter(|sol| filters.keep_face(sol)).collect();
    let mut out = Output::new(
        json!({ "v": v, "s": s, "e": e, "f": f, "count": kept.len(), "filtered": all.len() - kept.len(), "solutions": kept }),
        degree_table(v, kept.iter().map(|sol| &sol.counts)),
    );
    out.notes.push(format!(
        "{} face-type solutions (columns are face degrees)",
        kept.len()
    ));
    if 2 * e != 3 * f + s {
        out.notes.push(format!(
            "warning: 2E = {} but 3F + S = {}",
            2 * e,
            3 * f + s
        ));
    }
    Ok(out)
}

fn vertex_types(v: u64, e: u64, filters: &RealizabilityFilters) -> Result<Output> {
    let all = enumerate_vertex_types(v, e)?;
    let kept: Vec<_> = all.iter().filter(|sol| filters.keep_vertex(sol)).collect();
    let mut out = Output::new(
        json!({ "v": v, "e": e, "count": kept.len(), "filtered": all.len() - kept.len(), "solutions": kept }),
        degree_table(v, kept.iter().map(|sol| &sol.counts)),
    );
    out.notes.push(format!(
        "{} vertex-type solutions (columns are valencies)",
        kept.len()
    ));
    Ok(out)
}

fn census(from: u64, to: u64, max_degree: Option<u64>) -> Result<Output> {
    if from > to {
        bail!("--from {from} exceeds --to {to}");
    }
    let rows = (from..=to)
        .map(|v| match max_degree {
            Some(k) => face_combo_restricted_bound(v, k),
            None => face_combo_upper_bound(v),
        })
        .collect::<polyform::Result<Vec<_>>>()?;
    let mut headers = vec!["V", "S_min", "S_max", "pairs", "face_combo_upper"];
    if max_degree.is_some() {
        headers.push("face_combo_restricted");
    }
    let mut table = Table::new(&headers);
    for r in &rows {
        let mut row = vec![
            r.v.to_string(),
            "0".into(),
            r.s_max.to_string(),
            r.pair_count.to_string(),
            r.face_combo_upper.to_string(),
        ];
        if let Some(restricted) = &r.face_combo_restricted {
            row.push(restricted.to_string());
        }
        table.push(&row);
    }
    let mut out = Output::new(serde_json::to_value(&rows)?, table);
    out.notes
        .push("face-combination counts are upper bounds, not realizable-polyhedron counts".into());
    Ok(out)
}

fn partitions(n: u64, max_part: Option<u64>) -> Result<Output> {
    let count = match max_part {
        Some(m) => restricted_partition_count(n, m),
        None => partition_count(n),
    };
    let mut table = Table::new(&["n", "max_part", "count"]);
    table.push(&[n.to_string(), opt(max_part), count.to_string()]);
    Ok(Output::new(
        json!({ "n": n, "max_part": max_part, "count": count.to_string() }),
        table,
    ))
}

fn accounting_table(rows: &[AccountingRow]) -> Table {
    let mut table = Table::new(&[
        "mode",
        "V",
        "E",
        "F",
        "T",
        "N_i",
        "S_i",
        "E-F",
        "2T-N_i",
        "V-E+F",
        "T-N_i+S_i",
    ]);
    for r in rows {
        table.push(&[
            r.mode.to_string(),
            r.v.to_string(),
            r.e.to_string(),
            r.f.to_string(),
            r.t.to_string(),
            r.n_i.to_string(),
            r.s_i.to_string(),
            r.e_minus_f.to_string(),
            r.two_t_minus_n_i.to_string(),
            r.euler.to_string(),
            r.link.to_string(),
        ]);
    }
    table
}

fn audit_complex(path: &Path, mode: Option<AccountingMode>) -> Result<Output> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let complex = TetComplex::from_json(&text).context("invalid tetrahedral complex")?;
    let report = audit(&complex)?;
    let mut out = match mode {
        Some(m) => {
            let row = accounting_row(&report, m);
            Output::new(serde_json::to_value(row)?, accounting_table(&[row]))
        }
        None => Output::new(
            serde_json::to_value(&report)?,
            accounting_table(&report.accounting_modes),
        ),
    };
    let c = &report.counts;
    out.notes.push(format!(
        "T={} N_i={} E_i={} V_i={} Vb={} Eb={} Fb={}",
        c.t, c.n_i, c.e_i, c.v_i, c.vb, c.eb, c.fb
    ));
    out.notes.push(format!(
        "T-N_i+E_i-V_i = {}, Vb-Eb+Fb = {}, 3-ball: {}, normal form: {}",
        report.exact_link_value,
        report.boundary_euler,
        report.is_three_ball(),
        report.normal_form
    ));
    out.code = if report.is_three_ball() { 0 } else { 1 };
    Ok(out)
}

fn replay_set(set: &str, dir: &Path) -> Result<Output> {
    let report = replay::replay(set, dir)?;
    let mut out = Output {
        json: serde_json::to_value(&report)?,
        tables: replay_tables(&report),
        notes: Vec::new(),
        text_tables: true,
        code: if report.all_pass() { 0 } else { 1 },
    };
    for table in &report.tables {
        for row in &table.rows {
            let status = if row.pass { "PASS" } else { "FAIL" };
            let mut line = format!("{status} {} row {}: {}", table.file, row.row, row.label);
            if !row.mismatches.is_empty() {
                let _ = write!(line, " ({})", row.mismatches.join("; "));
            }
            out.notes.push(line);
        }
    }
    out.notes.push(format!(
        "{}: {}/{} rows pass",
        report.set, report.passed, report.total
    ));
    out.text_tables = false;
    Ok(out)
}

/// Fixture columns plus a `status` column.
fn replay_tables(report: &ReplayReport) -> Vec<Table> {
    report
        .tables
        .iter()
        .map(|t| {
            let mut headers: Vec<String> = t.headers.iter().map(str::to_string).collect();
            headers.push("status".into());
            let mut table = Table {
                headers,
                rows: Vec::new(),
            };
            for (i, row) in t.rows.iter().enumerate() {
                let mut cells: Vec<String> = match t.records.get(i) {
                    Some(record) => record.iter().map(str::to_string).collect(),
                    None => vec![String::new(); t.headers.len()],
                };
                cells.push(if row.pass { "PASS" } else { "FAIL" }.into());
                table.rows.push(cells);
            }
            table
        })
        .collect()
}
