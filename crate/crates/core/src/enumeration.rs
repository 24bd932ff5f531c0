//! Walks the cosets `{nA}` and `{nA + D}`, reads off triangles, checks the
//! appendix table and printed factorizations, and writes a resumable catalog.

use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Integer;
use serde_json::{json, Value};

use crate::curve::{
    from_triple, point_a, point_d, to_form, weierstrass_to_cubic, weierstrass_to_minimal,
    CoordinateForm, ProjectiveTriple, WeierstrassCurve, WeierstrassPoint,
};
use crate::error::{Error, Result};
use crate::primes::is_prime_u64;
use crate::triangle::{is_sharygin, point_to_triangle, TriangleTriple};

pub const APPENDIX_TABLE: &str = include_str!("../data/appendix_table.txt");
pub const APPENDIX_ERRATA: &str = include_str!("../data/appendix_errata.txt");
pub const CATALOG_FACTORIZATIONS: &str = include_str!("../data/catalog_factorizations.txt");
pub const CATALOG_ERRATA: &str = include_str!("../data/catalog_errata.txt");

/// Incremental sums are compared with double-and-add at this interval.
pub const CROSS_CHECK_INTERVAL: u32 = 16;

/// `"nA"` or `"nA+D"`, with `"A"` for `n = 1` and `"O"`/`"D"` for `n = 0`.
pub fn label(n: u32, with_d: bool) -> String {
    let base = match n {
        0 => return if with_d { "D".into() } else { "O".into() },
        1 => "A".to_string(),
        _ => format!("{n}A"),
    };
    if with_d {
        format!("{base}+D")
    } else {
        base
    }
}

/// Inverse of [`label`].
pub fn parse_label(s: &str) -> Result<(u32, bool)> {
    let s = s.trim();
    match s {
        "O" => return Ok((0, false)),
        "D" => return Ok((0, true)),
        _ => {}
    }
    let (base, with_d) = match s.strip_suffix("+D") {
        Some(b) => (b, true),
        None => (s, false),
    };
    let digits = base
        .strip_suffix('A')
        .ok_or_else(|| Error::Parse(format!("bad point label `{s}`")))?;
    let n = if digits.is_empty() {
        1
    } else {
        digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad point label `{s}`")))?
    };
    Ok((n, with_d))
}

/// `nA + eD` by double-and-add.
pub fn point_for(n: u32, with_d: bool) -> WeierstrassPoint {
    let e = WeierstrassCurve::sharygin();
    let p = e.scalar_mul(n as i64, &point_a());
    if with_d {
        e.add(&p, &point_d())
    } else {
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointRecord {
    pub n: u32,
    pub with_d: bool,
    pub weierstrass: WeierstrassPoint,
    pub cubic: ProjectiveTriple,
    pub minimal: ProjectiveTriple,
    /// Sides in curve-coordinate order.
    pub triangle: Option<TriangleTriple>,
    pub sharygin: bool,
}

impl PointRecord {
    pub fn new(n: u32, with_d: bool, weierstrass: WeierstrassPoint) -> Self {
        let cubic = weierstrass_to_cubic(&weierstrass);
        let minimal = weierstrass_to_minimal(&weierstrass);
        let triangle = point_to_triangle(&cubic).expect("image of a curve point is on the cubic");
        let sharygin = triangle.as_ref().is_some_and(is_sharygin);
        Self {
            n,
            with_d,
            weierstrass,
            cubic,
            minimal,
            triangle,
            sharygin,
        }
    }

    pub fn label(&self) -> String {
        label(self.n, self.with_d)
    }

    pub fn to_json(&self) -> Value {
        let (x, y) = match &self.weierstrass {
            WeierstrassPoint::Infinity => (Value::Null, Value::Null),
            WeierstrassPoint::Affine { x, y } => (json!(x.to_string()), json!(y.to_string())),
        };
        json!({
            "label": self.label(),
            "n": self.n,
            "withD": self.with_d,
            "weierstrass": {"x": x, "y": y},
            "cubic": int_array(self.cubic.coords()),
            "minimal": int_array(self.minimal.coords()),
            "triangle": self.triangle.as_ref().map(|t| int_array(&t.primitive_integers())),
            "sortedTriangle": self.triangle.as_ref().map(|t| int_array(&t.sorted_primitive())),
            "sharygin": self.sharygin,
        })
    }

    pub fn csv_record(&self) -> Vec<String> {
        let (x, y) = match &self.weierstrass {
            WeierstrassPoint::Infinity => (String::new(), String::new()),
            WeierstrassPoint::Affine { x, y } => (x.to_string(), y.to_string()),
        };
        let mut row = vec![
            self.label(),
            self.n.to_string(),
            self.with_d.to_string(),
            x,
            y,
        ];
        row.extend(self.cubic.coords().iter().map(|c| c.to_string()));
        row.extend(self.minimal.coords().iter().map(|c| c.to_string()));
        match &self.triangle {
            Some(t) => row.extend(t.primitive_integers().iter().map(|c| c.to_string())),
            None => row.extend([String::new(), String::new(), String::new()]),
        }
        row.push(self.sharygin.to_string());
        row
    }
}

pub const CSV_HEADER: [&str; 15] = [
    "label",
    "n",
    "withD",
    "weierstrass_x",
    "weierstrass_y",
    "cubic_a",
    "cubic_b",
    "cubic_c",
    "minimal_x",
    "minimal_y",
    "minimal_z",
    "triangle_a",
    "triangle_b",
    "triangle_c",
    "sharygin",
];

/// Exact integers as JSON numbers of arbitrary length.
fn int_array(v: &[Integer; 3]) -> Value {
    Value::Array(
        v.iter()
            .map(|c| Value::Number(c.to_string().parse().expect("decimal integer")))
            .collect(),
    )
}

/// Position of the walk: the last `n` reached and `nA`, `nA + D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkState {
    pub n: u32,
    pub plain: WeierstrassPoint,
    pub with_d: WeierstrassPoint,
}

impl WalkState {
    pub fn start() -> Self {
        Self {
            n: 0,
            plain: WeierstrassPoint::Infinity,
            with_d: point_d(),
        }
    }
}

/// Advances one coset from `start` (the point for `from`) to `to`, returning the
/// points for `from + 1 ..= to`.
fn advance(start: &WeierstrassPoint, from: u32, to: u32, with_d: bool) -> Vec<WeierstrassPoint> {
    let e = WeierstrassCurve::sharygin();
    let a = point_a();
    let mut p = start.clone();
    let mut out = Vec::with_capacity(to.saturating_sub(from) as usize);
    for n in from + 1..=to {
        p = e.add(&p, &a);
        if n % CROSS_CHECK_INTERVAL == 0 {
            assert_eq!(
                p,
                point_for(n, with_d),
                "incremental sum diverged at {}",
                label(n, with_d)
            );
        }
        out.push(p.clone());
    }
    out
}

/// Records for `state.n + 1 ..= n_max` in order `1A, 1A+D, 2A, ...`, and the final state.
pub fn walk_from(state: &WalkState, n_max: u32) -> (Vec<PointRecord>, WalkState) {
    if n_max <= state.n {
        return (Vec::new(), state.clone());
    }
    let (plain, with_d) = rayon::join(
        || advance(&state.plain, state.n, n_max, false),
        || advance(&state.with_d, state.n, n_max, true),
    );
    let next = WalkState {
        n: n_max,
        plain: plain.last().cloned().unwrap(),
        with_d: with_d.last().cloned().unwrap(),
    };
    let jobs: Vec<(u32, bool, WeierstrassPoint)> = plain
        .into_iter()
        .zip(with_d)
        .enumerate()
        .flat_map(|(i, (p, q))| {
            let n = state.n + 1 + i as u32;
            [(n, false, p), (n, true, q)]
        })
        .collect();
    let records = jobs
        .into_par_iter()
        .map(|(n, d, p)| PointRecord::new(n, d, p))
        .collect();
    (records, next)
}

pub fn walk(n_max: u32) -> Vec<PointRecord> {
    walk_from(&WalkState::start(), n_max).0
}

/// `(n, withD)` of the records that are triangles.
pub fn triangle_indices(n_max: u32) -> Vec<(u32, bool)> {
    walk(n_max)
        .into_iter()
        .filter(|r| r.triangle.is_some())
        .map(|r| (r.n, r.with_d))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppendixRow {
    pub label: String,
    /// Forms 1, 2, 3.
    pub cells: [ProjectiveTriple; 3],
}

fn parse_triple(form: CoordinateForm, s: &str) -> Result<ProjectiveTriple> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("bad triple `{s}`")))?;
    let parts: Vec<Integer> = inner
        .split(':')
        .map(|p| {
            p.trim()
                .parse::<Integer>()
                .map_err(|e| Error::Parse(format!("`{p}`: {e}")))
        })
        .collect::<Result<_>>()?;
    let coords: [Integer; 3] = parts
        .try_into()
        .map_err(|_| Error::Parse(format!("bad triple `{s}`")))?;
    ProjectiveTriple::from_integers(form, coords)
}

fn data_lines(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split('|').map(str::trim).collect())
}

pub fn parse_appendix(text: &str) -> Result<Vec<AppendixRow>> {
    data_lines(text)
        .map(|f| {
            if f.len() != 4 {
                return Err(Error::Parse(format!("appendix row needs 4 fields: {f:?}")));
            }
            Ok(AppendixRow {
                label: f[0].to_string(),
                cells: [
                    parse_triple(CoordinateForm::Minimal, f[1])?,
                    parse_triple(CoordinateForm::Weierstrass, f[2])?,
                    parse_triple(CoordinateForm::Cubic, f[3])?,
                ],
            })
        })
        .collect()
}

/// An audited discrepancy in the printed appendix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub kind: String,
    pub location: String,
    pub note: String,
}

pub fn parse_errata(text: &str) -> Result<Vec<Erratum>> {
    data_lines(text)
        .map(|f| match f.as_slice() {
            [kind, location, note] => Ok(Erratum {
                kind: kind.to_string(),
                location: location.to_string(),
                note: note.to_string(),
            }),
            _ => Err(Error::Parse(format!("erratum needs 3 fields: {f:?}"))),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellStatus {
    Match,
    /// Mismatch covered by the errata list.
    Erratum(String),
    Mismatch,
}

#[derive(Clone, Debug)]
pub struct CellCheck {
    pub label: String,
    pub form: CoordinateForm,
    pub printed: ProjectiveTriple,
    pub computed: ProjectiveTriple,
    pub status: CellStatus,
}

#[derive(Clone, Debug)]
pub struct AppendixReport {
    pub cells: Vec<CellCheck>,
    /// Printed points whose three forms do not describe the same point.
    pub inconsistent_rows: Vec<String>,
    pub errata: Vec<Erratum>,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        self.inconsistent_rows.is_empty()
            && self.cells.iter().all(|c| c.status != CellStatus::Mismatch)
    }

    pub fn rows(&self) -> usize {
        self.cells.len() / 3
    }
}

impl fmt::Display for AppendixReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            let status = match &c.status {
                CellStatus::Match => "match".to_string(),
                CellStatus::Erratum(n) => format!("erratum: {n}"),
                CellStatus::Mismatch => format!("MISMATCH, computed {}", c.computed),
            };
            writeln!(
                f,
                "{:<6} form {}  {:<34} {}",
                c.label,
                c.form.column(),
                c.printed.to_string(),
                status
            )?;
        }
        for r in &self.inconsistent_rows {
            writeln!(f, "{r}: printed forms disagree with each other")?;
        }
        for e in &self.errata {
            writeln!(f, "note [{}] {}: {}", e.kind, e.location, e.note)?;
        }
        Ok(())
    }
}

/// Recomputes every appendix cell from its label and compares canonical representatives.
pub fn verify_appendix() -> Result<AppendixReport> {
    verify_appendix_with(APPENDIX_TABLE, APPENDIX_ERRATA)
}

pub fn verify_appendix_with(table: &str, errata: &str) -> Result<AppendixReport> {
    let rows = parse_appendix(table)?;
    let errata = parse_errata(errata)?;
    let mut cells = Vec::new();
    let mut inconsistent_rows = Vec::new();
    for row in &rows {
        let (n, with_d) = parse_label(&row.label)?;
        let point = point_for(n, with_d);
        let mut printed_points = Vec::new();
        for (form, printed) in CoordinateForm::ALL.iter().zip(&row.cells) {
            let computed = to_form(&point, *form);
            let status = if computed == *printed {
                CellStatus::Match
            } else if let Some(e) = errata.iter().find(|e| {
                e.kind == "cell" && e.location == format!("{} {}", row.label, form.column())
            }) {
                CellStatus::Erratum(e.note.clone())
            } else {
                CellStatus::Mismatch
            };
            printed_points.push(from_triple(printed).ok());
            cells.push(CellCheck {
                label: row.label.clone(),
                form: *form,
                printed: printed.clone(),
                computed,
                status,
            });
        }
        if printed_points
            .iter()
            .any(|p| p.as_ref() != printed_points[0].as_ref())
        {
            inconsistent_rows.push(row.label.clone());
        }
    }
    Ok(AppendixReport {
        cells,
        inconsistent_rows,
        errata,
    })
}

/// A printed catalog entry: side lengths as lists of `(prime, exponent)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    pub factor_groups: [Vec<(Integer, u32)>; 3],
}

impl CatalogEntry {
    pub fn sides(&self) -> [Integer; 3] {
        std::array::from_fn(|i| factor_product(&self.factor_groups[i]))
    }
}

fn parse_factor_group(s: &str) -> Result<Vec<(Integer, u32)>> {
    s.split('*')
        .map(|f| {
            let (b, e) = f.trim().split_once('^').unwrap_or((f.trim(), "1"));
            let b = b
                .parse::<Integer>()
                .map_err(|e| Error::Parse(format!("factor `{f}`: {e}")))?;
            let e = e
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("exponent in `{f}`: {e}")))?;
            Ok((b, e))
        })
        .collect()
}

fn factor_product(g: &[(Integer, u32)]) -> Integer {
    g.iter().fold(Integer::from(1), |acc, (p, e)| {
        acc * Integer::from(p.pow(*e))
    })
}

pub fn parse_factorizations(text: &str) -> Result<Vec<CatalogEntry>> {
    data_lines(text)
        .map(|f| {
            if f.len() != 4 {
                return Err(Error::Parse(format!("catalog entry needs 4 fields: {f:?}")));
            }
            Ok(CatalogEntry {
                label: f[0].to_string(),
                factor_groups: [
                    parse_factor_group(f[1])?,
                    parse_factor_group(f[2])?,
                    parse_factor_group(f[3])?,
                ],
            })
        })
        .collect()
}

/// A corrected factorization for one printed side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorErratum {
    pub label: String,
    /// 1-based position in the printed triple.
    pub side: usize,
    pub corrected: Vec<(Integer, u32)>,
    pub note: String,
}

pub fn parse_factor_errata(text: &str) -> Result<Vec<FactorErratum>> {
    data_lines(text)
        .map(|f| {
            if f.len() != 4 {
                return Err(Error::Parse(format!(
                    "catalog erratum needs 4 fields: {f:?}"
                )));
            }
            let side = f[1]
                .parse()
                .ok()
                .filter(|s| (1..=3).contains(s))
                .ok_or_else(|| Error::Parse(format!("bad side index `{}`", f[1])))?;
            Ok(FactorErratum {
                label: f[0].to_string(),
                side,
                corrected: parse_factor_group(f[2])?,
                note: f[3].to_string(),
            })
        })
        .collect()
}

/// Largest factor checked for primality by trial division.
pub const SMALL_FACTOR_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SideStatus {
    /// The printed product is one of the computed sides.
    Match,
    /// The printed product is not, but the audited correction multiplies out to one.
    Erratum(String),
    Mismatch,
}

#[derive(Clone, Debug)]
pub struct FactorizationCheck {
    pub label: String,
    pub printed: [Integer; 3],
    pub computed: Option<[Integer; 3]>,
    pub sides: [SideStatus; 3],
    /// Printed sides are in curve-coordinate order.
    pub same_order: bool,
    /// Printed factors below the limit that are not prime.
    pub composite_small_factors: Vec<Integer>,
}

impl FactorizationCheck {
    pub fn passed(&self) -> bool {
        self.computed.is_some()
            && self.sides.iter().all(|s| *s != SideStatus::Mismatch)
            && self.composite_small_factors.is_empty()
    }

    pub fn exact(&self) -> bool {
        self.passed() && self.sides.iter().all(|s| *s == SideStatus::Match)
    }
}

/// Multiplies out the printed factorizations and matches them against the
/// computed primitive sides (as a multiset; the printed order varies).
pub fn verify_factorizations() -> Result<Vec<FactorizationCheck>> {
    verify_factorizations_with(CATALOG_FACTORIZATIONS, CATALOG_ERRATA)
}

pub fn verify_factorizations_with(table: &str, errata: &str) -> Result<Vec<FactorizationCheck>> {
    let errata = parse_factor_errata(errata)?;
    parse_factorizations(table)?
        .par_iter()
        .map(|entry| {
            let (n, with_d) = parse_label(&entry.label)?;
            let printed = entry.sides();
            let record = PointRecord::new(n, with_d, point_for(n, with_d));
            let computed = record.triangle.as_ref().map(|t| t.primitive_integers());
            let mut unused: Vec<Integer> = computed.iter().flatten().cloned().collect();
            let mut take = |v: &Integer| match unused.iter().position(|c| c == v) {
                Some(i) => {
                    unused.remove(i);
                    true
                }
                None => false,
            };
            let mut sides = [
                SideStatus::Mismatch,
                SideStatus::Mismatch,
                SideStatus::Mismatch,
            ];
            for (i, side) in printed.iter().enumerate() {
                if take(side) {
                    sides[i] = SideStatus::Match;
                }
            }
            for (i, status) in sides.iter_mut().enumerate() {
                if *status != SideStatus::Mismatch {
                    continue;
                }
                if let Some(e) = errata
                    .iter()
                    .find(|e| e.label == entry.label && e.side == i + 1)
                {
                    if take(&factor_product(&e.corrected)) {
                        *status = SideStatus::Erratum(e.note.clone());
                    }
                }
            }
            let composite_small_factors = entry
                .factor_groups
                .iter()
                .flatten()
                .filter_map(|(p, _)| p.to_u64().filter(|&v| v < SMALL_FACTOR_LIMIT))
                .filter(|&v| !is_prime_u64(v))
                .map(Integer::from)
                .collect();
            Ok(FactorizationCheck {
                label: entry.label.clone(),
                same_order: computed.as_ref() == Some(&printed),
                printed,
                computed,
                sides,
                composite_small_factors,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogFormat {
    Json,
    Csv,
}

const CHECKPOINT_MAGIC: &str = "sharygin-checkpoint v1";

/// Steps between checkpoint writes.
pub const CHECKPOINT_INTERVAL: u32 = 16;

pub fn write_checkpoint(path: &Path, state: &WalkState, format: CatalogFormat) -> Result<()> {
    let point = |p: &WeierstrassPoint| match p {
        WeierstrassPoint::Infinity => "O".to_string(),
        WeierstrassPoint::Affine { x, y } => format!("{x},{y}"),
    };
    let fmt = match format {
        CatalogFormat::Json => "json",
        CatalogFormat::Csv => "csv",
    };
    let body = format!(
        "{CHECKPOINT_MAGIC}\nformat {fmt}\nn {}\nplain {}\nwithD {}\n",
        state.n,
        point(&state.plain),
        point(&state.with_d)
    );
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, body)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_checkpoint(path: &Path) -> Result<(WalkState, CatalogFormat)> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    if lines.next() != Some(CHECKPOINT_MAGIC) {
        return Err(Error::Checkpoint(format!(
            "{}: unknown header",
            path.display()
        )));
    }
    let mut field = |key: &str| -> Result<String> {
        lines
            .next()
            .and_then(|l| l.strip_prefix(key))
            .map(|v| v.trim().to_string())
            .ok_or_else(|| Error::Checkpoint(format!("{}: missing `{key}`", path.display())))
    };
    let format = match field("format")?.as_str() {
        "json" => CatalogFormat::Json,
        "csv" => CatalogFormat::Csv,
        other => return Err(Error::Checkpoint(format!("unknown format `{other}`"))),
    };
    let n = field("n")?
        .parse()
        .map_err(|e| Error::Checkpoint(format!("bad n: {e}")))?;
    let plain = WeierstrassPoint::parse(&field("plain")?)?;
    let with_d = WeierstrassPoint::parse(&field("withD")?)?;
    let state = WalkState { n, plain, with_d };
    let e = WeierstrassCurve::sharygin();
    if !e.contains(&state.plain) || !e.contains(&state.with_d) {
        return Err(Error::Checkpoint(
            "checkpoint points are not on the curve".into(),
        ));
    }
    Ok((state, format))
}

#[derive(Clone, Debug)]
pub struct CatalogOptions {
    pub n_max: u32,
    pub format: CatalogFormat,
    pub output: PathBuf,
    /// Resume from and update this checkpoint when given.
    pub checkpoint: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogSummary {
    pub resumed_from: Option<u32>,
    pub records_written: usize,
    pub triangles: Vec<(u32, bool)>,
}

/// Keeps the header (CSV) and the first `records` data lines.
fn truncate_records(path: &Path, format: CatalogFormat, records: usize) -> Result<()> {
    let keep = records + usize::from(format == CatalogFormat::Csv);
    let file = File::open(path)?;
    let lines: Vec<String> = BufReader::new(file)
        .lines()
        .take(keep)
        .collect::<std::io::Result<_>>()?;
    if lines.len() != keep {
        return Err(Error::Checkpoint(format!(
            "{} has {} lines, checkpoint expects {keep}",
            path.display(),
            lines.len()
        )));
    }
    let mut body = lines.join("\n");
    if !body.is_empty() {
        body.push('\n');
    }
    let tmp = path.with_extension("truncate.tmp");
    fs::write(&tmp, body)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn append_records(
    path: &Path,
    format: CatalogFormat,
    records: &[PointRecord],
    header: bool,
) -> Result<()> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut w = BufWriter::new(file);
    match format {
        CatalogFormat::Json => {
            for r in records {
                serde_json::to_writer(&mut w, &r.to_json())?;
                w.write_all(b"\n")?;
            }
            w.flush()?;
        }
        CatalogFormat::Csv => {
            let mut c = csv::Writer::from_writer(w);
            if header {
                c.write_record(CSV_HEADER)?;
            }
            for r in records {
                c.write_record(r.csv_record())?;
            }
            c.flush()?;
        }
    }
    Ok(())
}

/// Writes the records for `n = 1..=n_max` (both cosets) as JSON lines or CSV.
///
/// With a checkpoint, an existing catalog is cut back to the checkpointed
/// `n` and extended from there; the checkpoint is rewritten only after the
/// records it covers are on disk.
pub fn emit_catalog(opts: &CatalogOptions) -> Result<CatalogSummary> {
    let resume = match &opts.checkpoint {
        Some(cp) if cp.exists() && opts.output.exists() => {
            let (state, format) = read_checkpoint(cp)?;
            if format != opts.format {
                return Err(Error::Checkpoint(format!(
                    "checkpoint was written for {format:?} output"
                )));
            }
            Some(state)
        }
        _ => None,
    };
    let mut state = match &resume {
        Some(s) => {
            let n = s.n.min(opts.n_max);
            truncate_records(&opts.output, opts.format, 2 * n as usize)?;
            if n < s.n {
                // the catalog is being shortened: recompute the state at n
                WalkState {
                    n,
                    plain: point_for(n, false),
                    with_d: point_for(n, true),
                }
            } else {
                s.clone()
            }
        }
        None => {
            fs::write(&opts.output, "")?;
            WalkState::start()
        }
    };
    let resumed_from = resume.map(|_| state.n);
    let mut header = resumed_from.is_none();
    let mut records_written = 0;
    let mut triangles = Vec::new();
    if header && opts.n_max == 0 {
        append_records(&opts.output, opts.format, &[], true)?;
    }
    while state.n < opts.n_max {
        let target = (state.n + CHECKPOINT_INTERVAL).min(opts.n_max);
        let (records, next) = walk_from(&state, target);
        append_records(&opts.output, opts.format, &records, header)?;
        header = false;
        records_written += records.len();
        triangles.extend(
            records
                .iter()
                .filter(|r| r.triangle.is_some())
                .map(|r| (r.n, r.with_d)),
        );
        if let Some(cp) = &opts.checkpoint {
            write_checkpoint(cp, &next, opts.format)?;
        }
        state = next;
    }
    if let Some(cp) = &opts.checkpoint {
        write_checkpoint(cp, &state, opts.format)?;
    }
    Ok(CatalogSummary {
        resumed_from,
        records_written,
        triangles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for (n, d) in [
            (0, false),
            (0, true),
            (1, false),
            (1, true),
            (9, true),
            (132, false),
        ] {
            assert_eq!(parse_label(&label(n, d)).unwrap(), (n, d));
        }
        assert_eq!(label(9, true), "9A+D");
        assert!(parse_label("9B").is_err());
    }

    #[test]
    fn walk_small() {
        let recs = walk(9);
        assert_eq!(recs.len(), 18);
        let four = recs.iter().find(|r| r.n == 4 && !r.with_d).unwrap();
        assert_eq!(
            four.cubic,
            ProjectiveTriple::from_i64(CoordinateForm::Cubic, [25, -32, 17]).unwrap()
        );
        assert!(recs[0].triangle.is_none());
        let tri: Vec<_> = recs.iter().filter(|r| r.triangle.is_some()).collect();
        assert_eq!(tri.len(), 1);
        assert_eq!(tri[0].label(), "9A+D");
        assert!(tri[0].sharygin);
    }

    #[test]
    fn walk_resumes_consistently() {
        let (first, state) = walk_from(&WalkState::start(), 10);
        let (second, _) = walk_from(&state, 20);
        let whole = walk(20);
        assert_eq!([first, second].concat(), whole);
    }

    #[test]
    fn indices_to_thirty() {
        assert_eq!(
            triangle_indices(30),
            vec![(9, true), (16, false), (23, true), (30, false)]
        );
        assert!(triangle_indices(8).is_empty());
    }

    #[test]
    fn appendix_matches() {
        let report = verify_appendix().unwrap();
        assert_eq!(report.rows(), 20);
        assert!(report.passed(), "{report}");
        assert!(report.cells.iter().all(|c| c.status == CellStatus::Match));
    }

    #[test]
    fn appendix_detects_a_bad_cell() {
        let table = APPENDIX_TABLE.replace("(25:-32:17)", "(25:-32:18)");
        let report = verify_appendix_with(&table, APPENDIX_ERRATA).unwrap();
        assert!(!report.passed());
        let errata = format!("{APPENDIX_ERRATA}\ncell | 4A 3 | test entry\n");
        let whitelisted = verify_appendix_with(&table, &errata).unwrap();
        assert_eq!(whitelisted.inconsistent_rows, vec!["4A".to_string()]);
    }

    #[test]
    fn factorizations() {
        let checks = verify_factorizations().unwrap();
        assert_eq!(checks.len(), 5);
        for c in &checks {
            assert!(c.passed(), "{c:?}");
        }
        assert_eq!(checks[0].printed[0], 18_800_081);
        assert!(!checks[0].same_order);
        let inexact: Vec<_> = checks
            .iter()
            .filter(|c| !c.exact())
            .map(|c| c.label.as_str())
            .collect();
        assert_eq!(inexact, ["37A+D"]);
        assert!(matches!(checks[4].sides[2], SideStatus::Erratum(_)));
        // without the audited correction the printed side is a mismatch
        let bare = verify_factorizations_with(CATALOG_FACTORIZATIONS, "").unwrap();
        assert_eq!(bare[4].sides[2], SideStatus::Mismatch);
        assert!(!bare[4].passed());
    }

    #[test]
    fn json_record_shape() {
        let rec = PointRecord::new(9, true, point_for(9, true));
        let v = rec.to_json();
        assert_eq!(v["label"], "9A+D");
        assert_eq!(v["triangle"].to_string(), "[1481089,18800081,19214131]");
        assert_eq!(v["sharygin"], true);
        assert_eq!(v["weierstrass"]["x"], "600608/152881");
    }
}
