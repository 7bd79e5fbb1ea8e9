//! Replays the shipped fixture tables against the library and reports each row.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use csv::StringRecord;
use serde::Serialize;

use polyform::{
    accounting_row, audit, check_enclosure, enumerate_face_types, enumerate_vertex_types,
    external_profile, face_combo_upper_bound, heuristic_prune, ni_from_t, pair_combination_count,
    Consistency, InternalConfig, PolygonMultiset, TetComplex,
};

pub const FIXTURE_ENV: &str = "POLYFORM_FIXTURES";

pub const SETS: &[&str] = &[
    "appendix-a",
    "appendix-b",
    "appendix-d",
    "census-tables",
    "ladder-v8",
];

/// Fixture directory: `$POLYFORM_FIXTURES` or the `data/` directory shipped with the repo.
pub fn fixture_dir() -> PathBuf {
    match std::env::var_os(FIXTURE_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RowResult {
    pub row: usize,
    pub label: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
}

/// One replayed fixture file.
#[derive(Debug, Clone, Serialize)]
pub struct ReplayTable {
    pub file: String,
    #[serde(skip)]
    pub headers: StringRecord,
    #[serde(skip)]
    pub records: Vec<StringRecord>,
    pub rows: Vec<RowResult>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReplayReport {
    pub set: String,
    pub passed: usize,
    pub total: usize,
    pub tables: Vec<ReplayTable>,
}

impl ReplayReport {
    pub fn all_pass(&self) -> bool {
        self.passed == self.total
    }
}

/// Collects mismatches for one row.
struct RowCheck {
    mismatches: Vec<String>,
}

impl RowCheck {
    fn new() -> Self {
        Self {
            mismatches: Vec::new(),
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.mismatches
                .push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    }

    fn holds(&mut self, what: &str, ok: bool) {
        if !ok {
            self.mismatches.push(format!("{what} does not hold"));
        }
    }
}

fn read_table(dir: &Path, file: &str) -> Result<(StringRecord, Vec<StringRecord>)> {
    let path = dir.join(file);
    let mut reader =
        csv::Reader::from_path(&path).with_context(|| format!("reading {}", path.display()))?;
    let headers = reader.headers()?.clone();
    let records = reader
        .records()
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok((headers, records))
}

fn field<'a>(headers: &StringRecord, record: &'a StringRecord, name: &str) -> Result<&'a str> {
    let idx = headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| anyhow!("missing column `{name}`"))?;
    record
        .get(idx)
        .map(str::trim)
        .ok_or_else(|| anyhow!("short row for `{name}`"))
}

fn int<T: std::str::FromStr>(headers: &StringRecord, record: &StringRecord, name: &str) -> Result<T>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    let raw = field(headers, record, name)?;
    raw.parse()
        .with_context(|| format!("column `{name}`: `{raw}`"))
}

/// `NA` or a count.
fn maybe(headers: &StringRecord, record: &StringRecord, name: &str) -> Result<Option<u64>> {
    match field(headers, record, name)? {
        "NA" => Ok(None),
        _ => int(headers, record, name).map(Some),
    }
}

/// Parses `4:1;3:4` into a multiset.
pub fn parse_polygon_list(text: &str) -> Result<PolygonMultiset> {
    let mut pairs = Vec::new();
    for part in text.split(';').filter(|p| !p.trim().is_empty()) {
        let (k, c) = part
            .split_once(':')
            .ok_or_else(|| anyhow!("expected degree:count, got `{part}`"))?;
        pairs.push((k.trim().parse()?, c.trim().parse()?));
    }
    Ok(PolygonMultiset::from_pairs(pairs)?)
}

fn replay_file<F>(dir: &Path, file: &str, mut check: F) -> Result<ReplayTable>
where
    F: FnMut(&StringRecord, &StringRecord, &mut RowCheck) -> Result<String>,
{
    let (headers, records) = read_table(dir, file)?;
    let mut rows = Vec::with_capacity(records.len());
    for (i, record) in records.iter().enumerate() {
        let mut rc = RowCheck::new();
        let label =
            check(&headers, record, &mut rc).with_context(|| format!("{file} row {}", i + 1))?;
        rows.push(RowResult {
            row: i + 1,
            label,
            pass: rc.mismatches.is_empty(),
            mismatches: rc.mismatches,
        });
    }
    Ok(ReplayTable {
        file: file.to_string(),
        headers,
        records,
        rows,
    })
}

fn dense(v: u64, cols: [Option<u64>; 4]) -> Option<Vec<u64>> {
    let width = (v - 3) as usize;
    if cols
        .iter()
        .enumerate()
        .any(|(i, c)| c.is_some() != (i < width))
    {
        return None;
    }
    Some(cols.iter().flatten().copied().collect())
}

fn appendix_a(dir: &Path) -> Result<Vec<ReplayTable>> {
    let table = replay_file(dir, "appendix_a.csv", |h, r, rc| {
        let v: u64 = int(h, r, "V")?;
        let s: u64 = int(h, r, "S")?;
        let (n, f, e): (u64, u64, u64) = (int(h, r, "N")?, int(h, r, "F")?, int(h, r, "E")?);
        let (t, n_i, s_i): (u64, u64, u64) =
            (int(h, r, "T")?, int(h, r, "N_i")?, int(h, r, "S_i")?);
        let p = external_profile(v, s)?;
        rc.eq("E", p.e, e);
        rc.eq("F", p.f, f);
        rc.eq("N", p.n, n);
        rc.eq("V-E+F", p.euler_characteristic(), int(h, r, "V-E+F")?);
        let link = InternalConfig::new(t, n_i, s_i).link_value();
        rc.eq("T-N_i+S_i", link, int(h, r, "T-N_i+S_i")?);
        rc.eq("T-N_i+S_i", link, 1);
        rc.eq("N_i = 2T-V+2", ni_from_t(t, v).ok(), Some(n_i));

        let faces = [
            maybe(h, r, "a")?,
            maybe(h, r, "b")?,
            maybe(h, r, "c")?,
            maybe(h, r, "d")?,
        ];
        let face = dense(v, faces);
        let face_sols = enumerate_face_types(v, s, e, f, Consistency::Enforce)?;
        rc.holds(
            &format!("face vector {faces:?} among face-type solutions"),
            face.is_some_and(|fv| face_sols.iter().any(|sol| sol.counts == fv)),
        );
        let vals = [
            maybe(h, r, "a'")?,
            maybe(h, r, "b'")?,
            maybe(h, r, "c'")?,
            maybe(h, r, "d'")?,
        ];
        let valency = dense(v, vals);
        let vertex_sols = enumerate_vertex_types(v, e)?;
        rc.holds(
            &format!("valency vector {vals:?} among vertex-type solutions"),
            valency.is_some_and(|vv| vertex_sols.iter().any(|sol| sol.counts == vv)),
        );
        Ok(format!("V={v} S={s} T={t}"))
    })?;
    Ok(vec![table])
}

fn appendix_b(dir: &Path) -> Result<Vec<ReplayTable>> {
    let table = replay_file(dir, "appendix_b.csv", |h, r, rc| {
        let file = field(h, r, "complex")?;
        let path = dir.join("complexes").join(file);
        let text =
            fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let complex = TetComplex::from_json(&text)?;
        let report = audit(&complex)?;
        let row = accounting_row(&report, field(h, r, "mode")?.parse()?);
        let got = [
            ("V", row.v),
            ("E", row.e),
            ("F", row.f),
            ("T", row.t),
            ("N_i", row.n_i),
            ("S_i", row.s_i),
            ("E-F", row.e_minus_f),
            ("2T-N_i", row.two_t_minus_n_i),
            ("V-E+F", row.euler),
            ("T-N_i+S_i", row.link),
        ];
        for (name, value) in got {
            rc.eq(name, value, int(h, r, name)?);
        }
        Ok(field(h, r, "Configuration")?.to_string())
    })?;
    Ok(vec![table])
}

fn appendix_d(dir: &Path) -> Result<Vec<ReplayTable>> {
    let table = replay_file(dir, "appendix_d.csv", |h, r, rc| {
        let report = check_enclosure(&parse_polygon_list(field(h, r, "polygons")?)?);
        rc.eq("N", report.steps.n, int(h, r, "N")?);
        rc.eq("V", report.steps.v, Some(int(h, r, "V")?));
        rc.eq("S", report.steps.s, int(h, r, "S")?);
        rc.eq("F", report.steps.f, int(h, r, "F")?);
        rc.eq("E", report.steps.e, Some(int(h, r, "E")?));
        rc.eq("Euler", report.euler, Some(int(h, r, "Euler")?));
        rc.eq("S_max", report.s_max, Some(int(h, r, "S_max")?));
        rc.eq(
            "S_difference",
            report.s_difference,
            Some(int(h, r, "S_difference")?),
        );
        rc.eq(
            "verdict",
            report.verdict.to_string().as_str(),
            field(h, r, "verdict")?,
        );
        Ok(field(h, r, "Example")?.to_string())
    })?;
    Ok(vec![table])
}

fn census_tables(dir: &Path) -> Result<Vec<ReplayTable>> {
    let pairs = replay_file(dir, "pair_counts.csv", |h, r, rc| {
        let v: u64 = int(h, r, "V (Vertices)")?;
        rc.eq(
            "pairs",
            pair_combination_count(v)?,
            int(
                h,
                r,
                "Estimate Total External and Internal Configuration Sets",
            )?,
        );
        Ok(format!("V={v}"))
    })?;
    let combos = replay_file(dir, "face_combos.csv", |h, r, rc| {
        let v: u64 = int(h, r, "Vertices")?;
        let row = face_combo_upper_bound(v)?;
        rc.eq("S_min", 0u64, int(h, r, "S_min")?);
        rc.eq("S_max", row.s_max, int(h, r, "S_max")?);
        rc.eq(
            "upper bound",
            row.face_combo_upper.to_string().as_str(),
            field(h, r, "Face Type Combinations (Upper Bound)")?,
        );
        Ok(format!("V={v}"))
    })?;
    Ok(vec![pairs, combos])
}

fn ladder_v8(dir: &Path) -> Result<Vec<ReplayTable>> {
    let (headers, records) = read_table(dir, "ladder_v8.csv")?;
    // expected rows for each S, in table order
    let mut produced = Vec::new();
    for s in 0..=polyform::external_bounds(8)?.s_max {
        for c in heuristic_prune(8, s)?.configs {
            produced.push((s, c));
        }
    }
    let mut rows = Vec::new();
    for (i, record) in records.iter().enumerate() {
        let mut rc = RowCheck::new();
        let s: u64 = int(&headers, record, "S (External)")?;
        let want = InternalConfig::new(
            int(&headers, record, "T (Tetrahedra)")?,
            int(&headers, record, "N_i (Triangles)")?,
            int(&headers, record, "S_i (Segments)")?,
        );
        rc.eq(
            "(S, T, N_i, S_i)",
            produced.get(i).copied(),
            Some((s, want)),
        );
        rows.push(RowResult {
            row: i + 1,
            label: format!("S={s} T={}", want.t),
            pass: rc.mismatches.is_empty(),
            mismatches: rc.mismatches,
        });
    }
    if produced.len() != records.len() {
        rows.push(RowResult {
            row: records.len() + 1,
            label: "row count".into(),
            pass: false,
            mismatches: vec![format!(
                "pruning produced {} rows, table has {}",
                produced.len(),
                records.len()
            )],
        });
    }
    Ok(vec![ReplayTable {
        file: "ladder_v8.csv".into(),
        headers,
        records,
        rows,
    }])
}

pub fn replay(set: &str, dir: &Path) -> Result<ReplayReport> {
    let tables = match set {
        "appendix-a" => appendix_a(dir)?,
        "appendix-b" => appendix_b(dir)?,
        "appendix-d" => appendix_d(dir)?,
        "census-tables" => census_tables(dir)?,
        "ladder-v8" => ladder_v8(dir)?,
        other => bail!(
            "unknown fixture set `{other}` (expected one of {})",
            SETS.join(", ")
        ),
    };
    let total = tables.iter().map(|t| t.rows.len()).sum();
    let passed = tables
        .iter()
        .flat_map(|t| &t.rows)
        .filter(|r| r.pass)
        .count();
    Ok(ReplayReport {
        set: set.to_string(),
        passed,
        total,
        tables,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygon_list_parsing() {
        let m = parse_polygon_list("4:1;3:4").unwrap();
        assert_eq!((m.count(3), m.count(4)), (4, 1));
        assert!(parse_polygon_list("4-1").is_err());
        assert!(parse_polygon_list("2:1").is_err());
    }

    #[test]
    fn shipped_sets_replay() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
        for set in ["appendix-a", "appendix-b", "census-tables", "ladder-v8"] {
            let report = replay(set, &dir).unwrap();
            assert!(report.all_pass(), "{set}: {report:?}");
        }
        let a = replay("appendix-a", &dir).unwrap();
        assert_eq!((a.passed, a.total), (24, 24));
    }

    #[test]
    fn worked_examples_replay_flags_pyramid_threshold() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
        let report = replay("appendix-d", &dir).unwrap();
        assert_eq!((report.passed, report.total), (4, 5));
        let failed: Vec<_> = report.tables[0].rows.iter().filter(|r| !r.pass).collect();
        assert_eq!(failed.len(), 1);
        assert!(failed[0].label.contains("Square Pyramid"));
        assert!(failed[0]
            .mismatches
            .iter()
            .all(|m| m.starts_with("S_max") || m.starts_with("S_difference")));
    }

    #[test]
    fn unknown_set_is_an_error() {
        assert!(replay("appendix-z", &fixture_dir()).is_err());
    }
}
