//! Particle-pair cooccurrence: lexical licensing versus attested counts.
//!
//! A pair (L, R) is licensed when some entry of R subcategorizes for a
//! category that a phrase headed by some entry of L satisfies. The empirical
//! table counts adjacent pairs in dialogue data; [`reconcile`] lines the two
//! up at a count threshold.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::TypeLattice;
use crate::lexicon::{Category, Lexicon, Pos};

pub const BUNDLED_TABLE1: &str = include_str!("../data/table1.csv");

pub const LEFT_LABELS: [&str; 14] = [
    "ga",
    "wo",
    "ni",
    "de",
    "e",
    "kara",
    "made",
    "no",
    "wa",
    "mo",
    "naNka",
    "to",
    "toshite",
    "toshimashite",
];
pub const RIGHT_LABELS: [&str; 12] = [
    "ga", "wo", "ni", "de", "e", "kara", "made", "no", "wa", "mo", "naNka", "to",
];

pub const DEFAULT_THRESHOLD: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoocError {
    #[error("row {row}: expected {expected} fields, found {found}")]
    DimensionMismatch { row: usize, expected: usize, found: usize },
    #[error("row {row}, column `{column}`: `{value}` is not a count")]
    NotACount { row: usize, column: String, value: String },
    #[error("label mismatch: expected `{expected}`, found `{found}`")]
    LabelMismatch { expected: String, found: String },
    #[error("no particle entry for `{0}`")]
    UnknownParticle(String),
    #[error("csv: {0}")]
    Csv(String),
}

/// Left-particle × right-particle table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoocMatrix<T> {
    rows: Vec<String>,
    cols: Vec<String>,
    cells: Vec<T>,
}

impl<T: Copy> CoocMatrix<T> {
    pub fn from_fn(rows: &[&str], cols: &[&str], mut f: impl FnMut(&str, &str) -> T) -> Self {
        let cells = rows
            .iter()
            .flat_map(|r| cols.iter().map(|c| (*r, *c)).collect::<Vec<_>>())
            .map(|(r, c)| f(r, c))
            .collect();
        CoocMatrix {
            rows: rows.iter().map(|s| s.to_string()).collect(),
            cols: cols.iter().map(|s| s.to_string()).collect(),
            cells,
        }
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    pub fn cols(&self) -> &[String] {
        &self.cols
    }

    pub fn get(&self, left: &str, right: &str) -> Option<T> {
        let r = self.rows.iter().position(|x| x == left)?;
        let c = self.cols.iter().position(|x| x == right)?;
        Some(self.cells[r * self.cols.len() + c])
    }

    pub fn row(&self, left: &str) -> Option<&[T]> {
        let r = self.rows.iter().position(|x| x == left)?;
        let w = self.cols.len();
        Some(&self.cells[r * w..(r + 1) * w])
    }

    /// `(left, right, value)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &str, T)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(r, rl)| {
            self.cols
                .iter()
                .enumerate()
                .map(move |(c, cl)| (rl.as_str(), cl.as_str(), self.cells[r * self.cols.len() + c]))
        })
    }
}

impl<T: Copy + fmt::Display> CoocMatrix<T> {
    /// CSV with the same header shape as the empirical table.
    pub fn to_csv(&self) -> String {
        let mut out = format!("left,{}\n", self.cols.join(","));
        for r in &self.rows {
            out.push_str(r);
            for v in self.row(r).unwrap_or(&[]) {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

impl CoocMatrix<bool> {
    pub fn to_csv_01(&self) -> String {
        let ints = CoocMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            cells: self.cells.iter().map(|&b| u8::from(b)).collect(),
        };
        ints.to_csv()
    }
}

/// Read the empirical cooccurrence table. Row and column labels are fixed.
pub fn load_table1(content: &str) -> Result<CoocMatrix<u32>, CoocError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(content.as_bytes());
    let mut records = Vec::new();
    for rec in reader.records() {
        records.push(rec.map_err(|e| CoocError::Csv(e.to_string()))?);
    }
    let expected = RIGHT_LABELS.len() + 1;
    let Some(header) = records.first() else {
        return Err(CoocError::DimensionMismatch {
            row: 0,
            expected,
            found: 0,
        });
    };
    if header.len() != expected {
        return Err(CoocError::DimensionMismatch {
            row: 0,
            expected,
            found: header.len(),
        });
    }
    for (want, got) in std::iter::once("left").chain(RIGHT_LABELS).zip(header.iter()) {
        if want != got.trim() {
            return Err(CoocError::LabelMismatch {
                expected: want.into(),
                found: got.trim().into(),
            });
        }
    }
    let data = &records[1..];
    if data.len() != LEFT_LABELS.len() {
        return Err(CoocError::DimensionMismatch {
            row: data.len(),
            expected: LEFT_LABELS.len(),
            found: data.len(),
        });
    }
    let mut cells = Vec::with_capacity(LEFT_LABELS.len() * RIGHT_LABELS.len());
    for (i, (rec, label)) in data.iter().zip(LEFT_LABELS).enumerate() {
        if rec.len() != expected {
            return Err(CoocError::DimensionMismatch {
                row: i + 1,
                expected,
                found: rec.len(),
            });
        }
        if rec[0].trim() != label {
            return Err(CoocError::LabelMismatch {
                expected: label.into(),
                found: rec[0].trim().into(),
            });
        }
        for (col, v) in RIGHT_LABELS.iter().zip(rec.iter().skip(1)) {
            cells.push(v.trim().parse::<u32>().map_err(|_| CoocError::NotACount {
                row: i + 1,
                column: col.to_string(),
                value: v.to_string(),
            })?);
        }
    }
    Ok(CoocMatrix {
        rows: LEFT_LABELS.iter().map(|s| s.to_string()).collect(),
        cols: RIGHT_LABELS.iter().map(|s| s.to_string()).collect(),
        cells,
    })
}

/// Derive the boolean licensing matrix over the empirical table's labels.
pub fn derive_licensing(lexicon: &Lexicon, lattice: &TypeLattice) -> Result<CoocMatrix<bool>, CoocError> {
    let ptypes = |label: &str| -> Result<Vec<_>, CoocError> {
        let ts: Vec<_> = lexicon
            .entries_for(label)
            .filter(|e| e.head.pos == Pos::Particle)
            .filter_map(|e| e.head.ptype)
            .collect();
        if ts.is_empty() {
            Err(CoocError::UnknownParticle(label.to_string()))
        } else {
            Ok(ts)
        }
    };
    let takes = |label: &str| -> Vec<Category> {
        lexicon
            .entries_for(label)
            .filter(|e| e.head.pos == Pos::Particle)
            .filter_map(|e| e.subcat.as_ref())
            .flat_map(|sc| sc.takes.iter().copied())
            .collect()
    };
    let left: Vec<_> = LEFT_LABELS.iter().map(|l| ptypes(l)).collect::<Result<_, _>>()?;
    for r in RIGHT_LABELS {
        ptypes(r)?;
    }
    let right: Vec<_> = RIGHT_LABELS.iter().map(|r| takes(r)).collect();

    let mut li = 0;
    let mut m = CoocMatrix::from_fn(&LEFT_LABELS, &RIGHT_LABELS, |_, _| false);
    for (r, left_types) in left.iter().enumerate() {
        for (c, cats) in right.iter().enumerate() {
            m.cells[li] = cats.iter().any(|cat| match cat {
                Category::Particle(want) => left_types.iter().any(|&t| lattice.subsumes_id(*want, t)),
                _ => false,
            });
            debug_assert_eq!(li, r * RIGHT_LABELS.len() + c);
            li += 1;
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PairCount {
    pub left: &'static str,
    pub right: &'static str,
    pub count: u32,
}

impl fmt::Display for PairCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.left, self.right, self.count)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReconciliationReport {
    pub threshold: u32,
    pub licensed_and_attested: BTreeSet<PairCount>,
    pub attested_unlicensed: BTreeSet<PairCount>,
    pub licensed_unattested: BTreeSet<PairCount>,
}

impl ReconciliationReport {
    pub fn pairs(set: &BTreeSet<PairCount>) -> BTreeSet<(&'static str, &'static str)> {
        set.iter().map(|p| (p.left, p.right)).collect()
    }
}

fn intern(label: &str) -> Option<&'static str> {
    LEFT_LABELS
        .iter()
        .chain(RIGHT_LABELS.iter())
        .copied()
        .find(|l| *l == label)
}

/// Classify every licensed or sufficiently attested pair.
pub fn reconcile(
    derived: &CoocMatrix<bool>,
    empirical: &CoocMatrix<u32>,
    threshold: u32,
) -> Result<ReconciliationReport, CoocError> {
    for (a, b) in derived
        .rows
        .iter()
        .zip(&empirical.rows)
        .chain(derived.cols.iter().zip(&empirical.cols))
    {
        if a != b {
            return Err(CoocError::LabelMismatch {
                expected: a.clone(),
                found: b.clone(),
            });
        }
    }
    if derived.rows.len() != empirical.rows.len() || derived.cols.len() != empirical.cols.len() {
        return Err(CoocError::DimensionMismatch {
            row: 0,
            expected: derived.cells.len(),
            found: empirical.cells.len(),
        });
    }
    let mut report = ReconciliationReport {
        threshold,
        licensed_and_attested: BTreeSet::new(),
        attested_unlicensed: BTreeSet::new(),
        licensed_unattested: BTreeSet::new(),
    };
    for ((l, r, licensed), (_, _, count)) in derived.iter().zip(empirical.iter()) {
        let attested = count >= threshold;
        let pair = PairCount {
            left: intern(l).ok_or_else(|| CoocError::UnknownParticle(l.to_string()))?,
            right: intern(r).ok_or_else(|| CoocError::UnknownParticle(r.to_string()))?,
            count,
        };
        match (licensed, attested) {
            (true, true) => report.licensed_and_attested.insert(pair),
            (false, true) => report.attested_unlicensed.insert(pair),
            (true, false) => report.licensed_unattested.insert(pair),
            (false, false) => false,
        };
    }
    Ok(report)
}

impl fmt::Display for ReconciliationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let section = |f: &mut fmt::Formatter<'_>, title: &str, set: &BTreeSet<PairCount>| -> fmt::Result {
            writeln!(f, "{title} ({}):", set.len())?;
            for p in set {
                writeln!(f, "  {:<13} {:<6} {:>5}", p.left, p.right, p.count)?;
            }
            Ok(())
        };
        writeln!(f, "threshold: {}", self.threshold)?;
        section(f, "licensed and attested", &self.licensed_and_attested)?;
        section(f, "attested but unlicensed", &self.attested_unlicensed)?;
        section(f, "licensed but unattested", &self.licensed_unattested)
    }
}
