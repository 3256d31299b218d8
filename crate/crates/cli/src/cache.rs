//! On-disk cache of complex columns.
//!
//! One manifest per `(complex, parity of d, complexity, code version)` lists
//! the levels; each level is its own entry holding the basis labels and the
//! outgoing differential as triplets. Matrices depend on `d` only through its
//! parity, so both entries are keyed by parity; degrees are recomputed on load.
//! Writes go to a temporary file first and are renamed into place.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use graphcx::bigraded::{Column, ComplexId, Level};
use graphcx::diagrams::Config;
use graphcx::{QBigradedComplex, QMatrix, Rational, CODE_VERSION};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct ColumnEntry {
    complex: String,
    parity: String,
    i: usize,
    version: String,
    levels: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct LevelEntry {
    complex: String,
    parity: String,
    i: usize,
    level: usize,
    version: String,
    basis: Vec<String>,
    differential: String,
}

pub struct Cache {
    dir: PathBuf,
}

fn parity(d: u32) -> &'static str {
    if d.is_multiple_of(2) {
        "even"
    } else {
        "odd"
    }
}

impl Cache {
    pub fn open(dir: &Path) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn column_path(&self, id: ComplexId, d: u32, i: usize) -> PathBuf {
        self.dir.join(format!("{id}-{}-i{i}-{CODE_VERSION}.json", parity(d)))
    }

    fn level_path(&self, id: ComplexId, d: u32, i: usize, level: usize) -> PathBuf {
        self.dir
            .join(format!("{id}-{}-i{i}-l{level}-{CODE_VERSION}.json", parity(d)))
    }

    fn read<T: for<'de> Deserialize<'de>>(path: &Path) -> Option<T> {
        let text = fs::read_to_string(path).ok()?;
        serde_json::from_str(&text).ok()
    }

    fn write<T: Serialize>(path: &Path, value: &T) -> io::Result<()> {
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(value)?)?;
        fs::rename(&tmp, path)
    }

    pub fn load_column(&self, id: ComplexId, d: u32, i: usize) -> Option<Column<Rational>> {
        let entry: ColumnEntry = Self::read(&self.column_path(id, d, i))?;
        if entry.version != CODE_VERSION {
            return None;
        }
        let mut col = if id.homological() {
            Column::new_homological(i)
        } else {
            Column::new(i)
        };
        for level in entry.levels {
            let e: LevelEntry = Self::read(&self.level_path(id, d, i, level))?;
            let differential = QMatrix::from_triplet_str(&e.differential).ok()?;
            col.pieces.insert(
                id.degree(d, i, level),
                Level {
                    level,
                    basis: e.basis,
                    differential,
                },
            );
        }
        Some(col)
    }

    pub fn store_column(&self, id: ComplexId, d: u32, col: &Column<Rational>) -> io::Result<()> {
        let i = col.complexity;
        for piece in col.pieces.values() {
            let entry = LevelEntry {
                complex: id.to_string(),
                parity: parity(d).into(),
                i,
                level: piece.level,
                version: CODE_VERSION.into(),
                basis: piece.basis.clone(),
                differential: piece.differential.to_triplet_string(),
            };
            Self::write(&self.level_path(id, d, i, piece.level), &entry)?;
        }
        let manifest = ColumnEntry {
            complex: id.to_string(),
            parity: parity(d).into(),
            i,
            version: CODE_VERSION.into(),
            levels: col.pieces.values().map(|p| p.level).collect(),
        };
        Self::write(&self.column_path(id, d, i), &manifest)
    }

    /// The complex truncated at `cfg.max_complexity`, if every column is cached.
    pub fn load(&self, id: ComplexId, cfg: &Config) -> Option<QBigradedComplex> {
        let mut c = QBigradedComplex::new(id, cfg.d);
        for i in 0..=cfg.max_complexity {
            c.columns.insert(i, self.load_column(id, cfg.d, i)?);
        }
        Some(c)
    }

    pub fn store(&self, c: &QBigradedComplex) -> io::Result<()> {
        for col in c.columns.values() {
            self.store_column(c.id, c.d, col)?;
        }
        Ok(())
    }
}
