//! Dense CSV, Matrix Market and factor-bundle files.
//!
//! CSV has no header, one matrix row per line, and every value written with
//! 17 significant digits so that reading back is bitwise exact.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::decomp::SvdFactors;
use crate::error::{Error, Result};
use crate::matrix::{DataMatrix, DenseMatrix, LinearOperator, SparseMatrix};

const MTX_BANNER: &str = "%%MatrixMarket matrix coordinate real general";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Mtx,
}

impl Format {
    /// `.mtx` means Matrix Market, anything else CSV.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("mtx") => Format::Mtx,
            _ => Format::Csv,
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" | "dense" => Ok(Format::Csv),
            "mtx" | "sparse" => Ok(Format::Mtx),
            _ => Err(Error::param(format!("unknown format '{s}', expected csv or mtx"))),
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

fn push_value(out: &mut String, v: f64) {
    write!(out, "{v:.16e}").expect("writing to a String");
}

fn parse_value(tok: &str, path: &Path, line: usize, col: usize) -> Result<f64> {
    let tok = tok.trim();
    match tok.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(parse_err(path, line, format!("column {col}: non-finite value '{tok}'"))),
        Err(_) => Err(parse_err(path, line, format!("column {col}: cannot parse '{tok}'"))),
    }
}

pub fn format_csv(m: &DenseMatrix) -> String {
    let mut out = String::with_capacity(m.rows() * m.cols() * 24);
    for i in 0..m.rows() {
        for (j, &v) in m.row(i).iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            push_value(&mut out, v);
        }
        out.push('\n');
    }
    out
}

/// Parses CSV text; `path` is only used in error messages.
pub fn parse_csv(text: &str, path: &Path) -> Result<DenseMatrix> {
    let lines: Vec<&str> = text.lines().collect();
    let used = lines.iter().rposition(|l| !l.trim().is_empty()).map_or(0, |p| p + 1);
    if used == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut data = Vec::new();
    let mut cols = 0;
    for (i, line) in lines[..used].iter().enumerate() {
        let lineno = i + 1;
        if line.trim().is_empty() {
            return Err(parse_err(path, lineno, "blank line inside matrix"));
        }
        let before = data.len();
        for (j, tok) in line.split(',').enumerate() {
            data.push(parse_value(tok, path, lineno, j + 1)?);
        }
        let width = data.len() - before;
        if i == 0 {
            cols = width;
        } else if width != cols {
            return Err(parse_err(path, lineno, format!("expected {cols} values, found {width}")));
        }
    }
    DenseMatrix::new(used, cols, data)
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<DenseMatrix> {
    let path = path.as_ref();
    parse_csv(&read_text(path)?, path)
}

pub fn write_csv(path: impl AsRef<Path>, m: &DenseMatrix) -> Result<()> {
    write_text(path.as_ref(), &format_csv(m))
}

/// Single-column CSV.
pub fn write_vector_csv(path: impl AsRef<Path>, v: &[f64]) -> Result<()> {
    let mut out = String::with_capacity(v.len() * 24);
    for &x in v {
        push_value(&mut out, x);
        out.push('\n');
    }
    write_text(path.as_ref(), &out)
}

pub fn read_vector_csv(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    let m = read_csv(path)?;
    if m.cols() != 1 {
        return Err(parse_err(path, 1, format!("expected one column, found {}", m.cols())));
    }
    Ok(m.into_data())
}

pub fn format_mtx(m: &SparseMatrix) -> String {
    let mut out = String::with_capacity(64 + m.nnz() * 32);
    writeln!(out, "{MTX_BANNER}").unwrap();
    writeln!(out, "{} {} {}", m.rows(), m.cols(), m.nnz()).unwrap();
    for (i, j, v) in m.iter() {
        write!(out, "{} {} ", i + 1, j + 1).unwrap();
        push_value(&mut out, v);
        out.push('\n');
    }
    out
}

/// Parses `coordinate real general` (or `integer`) Matrix Market text.
/// Duplicate coordinates are summed and explicit zeros dropped.
pub fn parse_mtx(text: &str, path: &Path) -> Result<SparseMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, banner) = lines.next().ok_or(Error::EmptyMatrix)?;
    let words: Vec<String> = banner.split_whitespace().map(str::to_ascii_lowercase).collect();
    let ok = words.len() == 5
        && words[0] == "%%matrixmarket"
        && words[1] == "matrix"
        && words[2] == "coordinate"
        && (words[3] == "real" || words[3] == "integer")
        && words[4] == "general";
    if !ok {
        return Err(parse_err(path, 1, format!("unsupported header, expected '{MTX_BANNER}'")));
    }
    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let (size_line, size) = body.next().ok_or_else(|| parse_err(path, 1, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| parse_err(path, size_line, "size line must be three nonnegative integers"))?;
    let [rows, cols, nnz] = dims[..] else {
        return Err(parse_err(path, size_line, "size line must be three nonnegative integers"));
    };
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut trip = Vec::with_capacity(nnz);
    for (lineno, line) in body {
        if trip.len() == nnz {
            return Err(parse_err(path, lineno, format!("more than {nnz} entries")));
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(parse_err(path, lineno, format!("expected 'row col value', found {} fields", toks.len())));
        }
        let index = |t: &str, bound: usize, what: &str| -> Result<usize> {
            match t.parse::<usize>() {
                Ok(k) if (1..=bound).contains(&k) => Ok(k - 1),
                _ => Err(parse_err(path, lineno, format!("{what} index '{t}' outside 1..={bound}"))),
            }
        };
        let i = index(toks[0], rows, "row")?;
        let j = index(toks[1], cols, "column")?;
        let v = parse_value(toks[2], path, lineno, 3)?;
        trip.push((i, j, v));
    }
    if trip.len() != nnz {
        return Err(parse_err(path, text.lines().count(), format!("expected {nnz} entries, found {}", trip.len())));
    }
    SparseMatrix::from_triplets(rows, cols, trip)
}

pub fn read_mtx(path: impl AsRef<Path>) -> Result<SparseMatrix> {
    let path = path.as_ref();
    parse_mtx(&read_text(path)?, path)
}

pub fn write_mtx(path: impl AsRef<Path>, m: &SparseMatrix) -> Result<()> {
    write_text(path.as_ref(), &format_mtx(m))
}

/// Loads CSV as dense or Matrix Market as sparse; `format` overrides the
/// extension.
pub fn load_matrix(path: impl AsRef<Path>, format: Option<Format>) -> Result<DataMatrix> {
    let path = path.as_ref();
    match format.unwrap_or_else(|| Format::from_path(path)) {
        Format::Csv => read_csv(path).map(DataMatrix::Dense),
        Format::Mtx => read_mtx(path).map(DataMatrix::Sparse),
    }
}

/// Factors of `X − mean·1ᵀ` as stored on disk: `U.csv`, `S.csv`, `V.csv`,
/// optional `mean.csv` and a `meta.txt` of `key=value` lines.
#[derive(Debug, Clone, PartialEq)]
pub struct Bundle {
    pub factors: SvdFactors,
    pub mean: Option<Vec<f64>>,
    pub meta: Vec<(String, String)>,
}

impl Bundle {
    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn save(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        write_csv(dir.join("U.csv"), &self.factors.u)?;
        write_vector_csv(dir.join("S.csv"), &self.factors.sigma)?;
        write_csv(dir.join("V.csv"), &self.factors.v)?;
        let mean_path = dir.join("mean.csv");
        match &self.mean {
            Some(mu) => write_vector_csv(&mean_path, mu)?,
            None if mean_path.exists() => fs::remove_file(&mean_path).map_err(|e| Error::io(&mean_path, e))?,
            None => {}
        }
        let mut meta = String::new();
        for (k, v) in &self.meta {
            if k.contains('=') || k.contains('\n') || v.contains('\n') {
                return Err(Error::param(format!("meta entry '{k}' is not a single key=value line")));
            }
            writeln!(meta, "{k}={v}").unwrap();
        }
        write_text(&dir.join("meta.txt"), &meta)
    }

    pub fn load(dir: impl AsRef<Path>) -> Result<Bundle> {
        let dir = dir.as_ref();
        let u = read_csv(dir.join("U.csv"))?;
        let sigma = read_vector_csv(dir.join("S.csv"))?;
        let v = read_csv(dir.join("V.csv"))?;
        if u.cols() != sigma.len() || v.cols() != sigma.len() {
            return Err(Error::InvalidMatrix(format!(
                "bundle {}: U has {} columns, S has {} values, V has {} columns",
                dir.display(),
                u.cols(),
                sigma.len(),
                v.cols()
            )));
        }
        let mean_path = dir.join("mean.csv");
        let mean = if mean_path.exists() {
            let mu = read_vector_csv(&mean_path)?;
            if mu.len() != u.rows() {
                return Err(parse_err(&mean_path, 1, format!("expected {} entries, found {}", u.rows(), mu.len())));
            }
            Some(mu)
        } else {
            None
        };
        let meta_path: PathBuf = dir.join("meta.txt");
        let mut meta = Vec::new();
        for (i, line) in read_text(&meta_path)?.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| parse_err(&meta_path, i + 1, "expected key=value"))?;
            meta.push((k.to_string(), v.to_string()));
        }
        Ok(Bundle {
            factors: SvdFactors { u, sigma, v },
            mean,
            meta,
        })
    }
}
