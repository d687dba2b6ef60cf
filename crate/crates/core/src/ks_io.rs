//! Kreuzer–Skarke / PALP matrix files: parsing, zero-based ids and lookup by
//! normal form.

use std::collections::HashMap;
use std::io::BufRead;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal_form::{normal_form, Mode, NormalFormKey};
use crate::polytope::{Point, Polytope};

/// Environment variable naming the reflexive 3-tope file.
pub const KS3_ENV: &str = "CRACKTOPE_KS3";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Orientation {
    /// `r < c`: rows are coordinates; otherwise rows are points.
    #[default]
    Auto,
    RowsAreCoordinates,
    RowsArePoints,
}

#[derive(Clone, Debug)]
pub struct KSRecord {
    pub id: usize,
    pub polytope: Polytope,
    pub key: NormalFormKey,
}

#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    pub strict: bool,
    pub orientation: Orientation,
}

#[derive(Debug, Default)]
pub struct ParseOutcome {
    pub records: Vec<KSRecord>,
    /// Malformed blocks skipped in lenient mode.
    pub skipped: Vec<Error>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn ints(s: &str, line: usize) -> Result<Vec<i64>> {
    s.split_whitespace().map(|t| t.parse::<i64>().map_err(|_| parse_err(line, format!("non-integer token {t:?}")))).collect()
}

struct Block {
    line: usize,
    points: Vec<Point>,
}

/// Reads one block; `Ok(None)` at end of input. On a malformed block the
/// reader is left after the offending line.
fn next_block(lines: &mut impl Iterator<Item = (usize, String)>, orient: Orientation) -> Option<Result<Block>> {
    let (hline, header) = loop {
        match lines.next() {
            None => return None,
            Some((_, l)) if l.trim().is_empty() => continue,
            Some(x) => break x,
        }
    };
    let mut it = header.split_whitespace();
    let (r, c) = match (it.next().map(str::parse::<usize>), it.next().map(str::parse::<usize>)) {
        (Some(Ok(r)), Some(Ok(c))) if r > 0 && c > 0 => (r, c),
        _ => return Some(Err(parse_err(hline, format!("expected header \"r c\", found {header:?}")))),
    };
    let mut rows = Vec::with_capacity(r);
    for _ in 0..r {
        let Some((ln, l)) = lines.next() else {
            return Some(Err(parse_err(hline, format!("block ends after {} of {r} rows", rows.len()))));
        };
        let row = match ints(&l, ln) {
            Ok(v) => v,
            Err(e) => return Some(Err(e)),
        };
        if row.len() != c {
            return Some(Err(parse_err(ln, format!("expected {c} entries, found {}", row.len()))));
        }
        rows.push(row);
    }
    let rows_are_coords = match orient {
        Orientation::Auto => r < c,
        Orientation::RowsAreCoordinates => true,
        Orientation::RowsArePoints => false,
    };
    let points = if rows_are_coords { (0..c).map(|j| rows.iter().map(|row| row[j]).collect()).collect() } else { rows };
    Some(Ok(Block { line: hline, points }))
}

pub fn parse_palp(reader: impl BufRead, opts: &ParseOptions) -> Result<ParseOutcome> {
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l.unwrap_or_default()));
    let mut blocks = Vec::new();
    let mut skipped = Vec::new();
    while let Some(b) = next_block(&mut lines, opts.orientation) {
        match b {
            Ok(b) => blocks.push(b),
            Err(e) if opts.strict => return Err(e),
            Err(e) => skipped.push(e),
        }
    }
    let built: Vec<Result<(Polytope, NormalFormKey)>> = blocks
        .par_iter()
        .map(|b| {
            let p = Polytope::from_vertices(&b.points).map_err(|e| parse_err(b.line, e.to_string()))?;
            let k = normal_form(&p, Mode::Linear).map_err(|e| parse_err(b.line, e.to_string()))?;
            Ok((p, k))
        })
        .collect();
    let mut records = Vec::new();
    for r in built {
        match r {
            Ok((polytope, key)) => records.push(KSRecord { id: records.len(), polytope, key }),
            Err(e) if opts.strict => return Err(e),
            Err(e) => skipped.push(e),
        }
    }
    Ok(ParseOutcome { records, skipped })
}

pub fn parse_palp_file(path: &std::path::Path, opts: &ParseOptions) -> Result<ParseOutcome> {
    let f = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_palp(std::io::BufReader::new(f), opts)
}

pub struct KsIndex {
    records: Vec<KSRecord>,
    by_key: HashMap<NormalFormKey, usize>,
}

pub fn build_index(records: Vec<KSRecord>) -> KsIndex {
    let mut by_key = HashMap::new();
    for r in &records {
        by_key.entry(r.key.clone()).or_insert(r.id);
    }
    KsIndex { records, by_key }
}

impl KsIndex {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[KSRecord] {
        &self.records
    }

    pub fn id_of(&self, p: &Polytope) -> Option<usize> {
        let k = normal_form(p, Mode::Linear).ok()?;
        self.by_key.get(&k).copied()
    }

    pub fn lookup(&self, id: usize) -> Result<&Polytope> {
        self.records.get(id).map(|r| &r.polytope).ok_or(Error::IdOutOfRange(id))
    }

    pub fn cache(&self, file_hash: u64) -> IndexCache {
        IndexCache {
            schema_version: 1,
            file_hash: format!("{file_hash:016x}"),
            entries: self
                .records
                .iter()
                .map(|r| CacheEntry { id: r.id, normal_form: r.key.to_string(), vertices: r.polytope.vertices().to_vec() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub id: usize,
    pub normal_form: String,
    pub vertices: Vec<Point>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IndexCache {
    pub schema_version: u32,
    pub file_hash: String,
    pub entries: Vec<CacheEntry>,
}

/// 64-bit FNV-1a; a stable content hash for cache keys.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf29ce484222325u64, |h, &b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

/// The KS 3-tope file named by [`KS3_ENV`], if set and present.
pub fn ks3_path_from_env() -> Option<std::path::PathBuf> {
    let p = std::path::PathBuf::from(std::env::var_os(KS3_ENV)?);
    p.exists().then_some(p)
}
