//! Export and import of bases, matrices, Betti tables and cycle representatives.

use std::fs;
use std::path::{Path, PathBuf};

use graphcx::bigraded::ComplexId;
use graphcx::diagrams::{canonicalize, format_diagram, parse_diagram, Config};
use graphcx::sseq::{representative, BettiRow, BettiTable, CycleRepresentative};
use graphcx::{QBigradedComplex, Sign};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct BasisRecord {
    pub i: usize,
    pub level: usize,
    pub degree: i64,
    pub index: usize,
    pub element: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BasisFile {
    pub complex: String,
    pub d: u32,
    pub records: Vec<BasisRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub i: usize,
    pub level: usize,
    pub degree: i64,
    /// `rows cols nnz` header, then `row col num/den` lines.
    pub triplets: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub complex: String,
    pub d: u32,
    pub matrices: Vec<MatrixRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CycleFile {
    pub complex: String,
    pub d: u32,
    pub representatives: Vec<CycleRepresentative>,
}

fn write_json<T: Serialize>(path: PathBuf, value: &T) -> Result<PathBuf, String> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    text.push('\n');
    fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(path)
}

/// Write the four export files for one complex; returns their paths.
pub fn export(c: &QBigradedComplex, out: &Path) -> Result<Vec<PathBuf>, String> {
    fs::create_dir_all(out).map_err(|e| format!("{}: {e}", out.display()))?;
    let stem = format!("{}-d{}", c.id, c.d);
    let table = BettiTable::from_complex(c).map_err(|e| e.to_string())?;

    let mut records = Vec::new();
    let mut matrices = Vec::new();
    let mut reps = Vec::new();
    for (&i, col) in &c.columns {
        for (&degree, piece) in &col.pieces {
            records.extend(piece.basis.iter().enumerate().map(|(index, e)| BasisRecord {
                i,
                level: piece.level,
                degree,
                index,
                element: e.clone(),
            }));
            matrices.push(MatrixRecord {
                i,
                level: piece.level,
                degree,
                triplets: piece.differential.to_triplet_string(),
            });
        }
    }
    for cell in table.nonzero() {
        reps.extend(representative(c, c.id, cell.i, cell.degree));
    }

    let rows: Vec<BettiRow> = table.rows();
    let complex = c.id.to_string();
    Ok(vec![
        write_json(out.join(format!("betti-{stem}.json")), &rows)?,
        write_json(
            out.join(format!("basis-{stem}.json")),
            &BasisFile {
                complex: complex.clone(),
                d: c.d,
                records,
            },
        )?,
        write_json(
            out.join(format!("matrices-{stem}.json")),
            &MatrixFile {
                complex: complex.clone(),
                d: c.d,
                matrices,
            },
        )?,
        write_json(
            out.join(format!("cycles-{stem}.json")),
            &CycleFile {
                complex,
                d: c.d,
                representatives: reps,
            },
        )?,
    ])
}

/// Re-parse an exported diagram basis and re-canonicalize every element;
/// returns `(records, mismatches)`.
pub fn import(path: &Path) -> Result<(usize, Vec<String>), String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: BasisFile = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let id: ComplexId = file.complex.parse().map_err(|e: graphcx::Error| e.to_string())?;
    if !matches!(
        id,
        ComplexId::TotD | ComplexId::TotP | ComplexId::Dn(_) | ComplexId::Pn(_)
    ) {
        return Err(format!("{}: import reads diagram bases only, not {id}", path.display()));
    }
    let max_i = file.records.iter().map(|r| r.i).max().unwrap_or(1).max(1);
    let cfg = Config::new(file.d, max_i).map_err(|e| e.to_string())?;
    let mut mismatches = Vec::new();
    for r in &file.records {
        let (g, sign) = parse_diagram(&r.element, &cfg).map_err(|e| format!("record {}: {e}", r.index))?;
        match canonicalize(&g, &cfg).map_err(|e| e.to_string())? {
            Some((h, s)) if format_diagram(&h) == r.element && sign * s == Sign::Plus => {}
            _ => mismatches.push(r.element.clone()),
        }
    }
    Ok((file.records.len(), mismatches))
}
