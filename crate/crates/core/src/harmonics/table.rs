//! Dense tables of branching coefficients and their CSV/JSON forms.
//!
//! CSV layout:
//!
//! ```text
//! # branch-table n=5 i=0 mmax=3 lmax=3 provenance=internal-float
//! m,l,value
//! 0,0,1.0000000000000000e0
//! ...
//! ```
//!
//! Extra `#` comment lines may follow the header. Values are written with
//! 17 significant digits; missing cells read back as zero.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::coeff::{branch_coeff_exact, rational_to_f64, FastCoeff};
use crate::error::{Error, Result};

/// Where the entries of a table came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    InternalExact,
    InternalFloat,
    ExternalFile,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::InternalExact => "internal-exact",
            Provenance::InternalFloat => "internal-float",
            Provenance::ExternalFile => "external-file",
        })
    }
}

impl FromStr for Provenance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "internal-exact" => Ok(Provenance::InternalExact),
            "internal-float" => Ok(Provenance::InternalFloat),
            "external-file" => Ok(Provenance::ExternalFile),
            other => Err(Error::Parse(format!("unknown provenance '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum BuildMode {
    Exact,
    Fast,
}

/// Resource caps for table construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableLimits {
    /// Largest `mmax` accepted in exact mode.
    pub exact_mmax_cap: usize,
    /// Largest number of cells `(mmax+1)(lmax+1)`.
    pub max_cells: usize,
}

impl Default for TableLimits {
    fn default() -> Self {
        Self {
            exact_mmax_cap: 60,
            max_cells: 100_000_000,
        }
    }
}

/// Branching coefficients `C(m, l, i)` on the grid `0..=mmax` x `0..=lmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchTable {
    n: u32,
    i: u32,
    mmax: usize,
    lmax: usize,
    entries: Vec<f64>,
    provenance: Provenance,
}

impl BranchTable {
    /// Build a table from row-major entries after checking its invariants.
    pub fn from_entries(
        n: u32,
        i: u32,
        mmax: usize,
        lmax: usize,
        entries: Vec<f64>,
        provenance: Provenance,
    ) -> Result<Self> {
        if lmax > mmax {
            return Err(Error::Shape(format!("lmax={lmax} exceeds mmax={mmax}")));
        }
        if entries.len() != (mmax + 1) * (lmax + 1) {
            return Err(Error::Shape(format!(
                "expected {} entries, got {}",
                (mmax + 1) * (lmax + 1),
                entries.len()
            )));
        }
        for m in 0..=mmax {
            for l in 0..=lmax {
                let v = entries[m * (lmax + 1) + l];
                if !(v.is_finite() && v >= 0.0) {
                    return Err(Error::Domain(format!(
                        "entry ({m}, {l}) = {v} is not a finite nonnegative number"
                    )));
                }
                if l > m && v != 0.0 {
                    return Err(Error::Domain(format!("entry ({m}, {l}) must vanish since l > m")));
                }
            }
        }
        Ok(Self {
            n,
            i,
            mmax,
            lmax,
            entries,
            provenance,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn i(&self) -> u32 {
        self.i
    }
    pub fn mmax(&self) -> usize {
        self.mmax
    }
    pub fn lmax(&self) -> usize {
        self.lmax
    }
    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, m: usize, l: usize) -> Result<f64> {
        if m > self.mmax || l > self.lmax {
            return Err(Error::OutOfRange {
                m,
                l,
                mmax: self.mmax,
                lmax: self.lmax,
            });
        }
        Ok(self.entries[m * (self.lmax + 1) + l])
    }

    /// Column `l` for `m = 0..=mmax`.
    pub fn column(&self, l: usize) -> impl Iterator<Item = f64> + '_ {
        (0..=self.mmax).map(move |m| self.entries[m * (self.lmax + 1) + l])
    }

    /// Every entry multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let entries = self.entries.iter().map(|v| v * factor).collect();
        Self::from_entries(self.n, self.i, self.mmax, self.lmax, entries, self.provenance)
    }

    /// Relabel the table, e.g. as external data of a given degree `i`.
    pub fn with_labels(mut self, i: u32, provenance: Provenance) -> Self {
        self.i = i;
        self.provenance = provenance;
        self
    }

    pub fn header_line(&self) -> String {
        format!(
            "# branch-table n={} i={} mmax={} lmax={} provenance={}",
            self.n, self.i, self.mmax, self.lmax, self.provenance
        )
    }

    /// Write the CSV form; `comments` are emitted as extra `#` lines after
    /// the header.
    pub fn write_csv<W: Write>(&self, mut w: W, comments: &[String]) -> Result<()> {
        writeln!(w, "{}", self.header_line())?;
        for c in comments {
            writeln!(w, "# {c}")?;
        }
        writeln!(w, "m,l,value")?;
        for m in 0..=self.mmax {
            for l in 0..=self.lmax {
                writeln!(w, "{m},{l},{}", fmt_sci(self.entries[m * (self.lmax + 1) + l]))?;
            }
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = loop {
            match lines.next() {
                Some(line) => {
                    let line = line?;
                    if !line.trim().is_empty() {
                        break line;
                    }
                }
                None => return Err(Error::Parse("empty table file".into())),
            }
        };
        let meta = parse_header(&header)?;
        let mut entries = vec![0.0; (meta.mmax + 1) * (meta.lmax + 1)];
        let mut seen = vec![false; entries.len()];
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') || t == "m,l,value" {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: malformed row '{t}'", lineno + 2));
            let mut parts = t.split(',');
            let m: usize = parts.next().and_then(|s| s.trim().parse().ok()).ok_or_else(bad)?;
            let l: usize = parts.next().and_then(|s| s.trim().parse().ok()).ok_or_else(bad)?;
            let v: f64 = parts.next().and_then(|s| s.trim().parse().ok()).ok_or_else(bad)?;
            if parts.next().is_some() {
                return Err(bad());
            }
            if m > meta.mmax || l > meta.lmax {
                return Err(Error::Parse(format!(
                    "line {}: cell ({m}, {l}) outside the declared grid",
                    lineno + 2
                )));
            }
            let idx = m * (meta.lmax + 1) + l;
            if seen[idx] {
                return Err(Error::Parse(format!("line {}: duplicate cell ({m}, {l})", lineno + 2)));
            }
            seen[idx] = true;
            entries[idx] = v;
        }
        Self::from_entries(meta.n, meta.i, meta.mmax, meta.lmax, entries, meta.provenance)
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            n: self.n,
            i: self.i,
            mmax: self.mmax,
            lmax: self.lmax,
            provenance: self.provenance,
            entries: self.entries.chunks(self.lmax + 1).map(<[f64]>::to_vec).collect(),
        }
    }

    pub fn from_json(t: TableJson) -> Result<Self> {
        if t.entries.len() != t.mmax + 1 || t.entries.iter().any(|r| r.len() != t.lmax + 1) {
            return Err(Error::Shape("JSON entries do not match mmax/lmax".into()));
        }
        let flat = t.entries.into_iter().flatten().collect();
        Self::from_entries(t.n, t.i, t.mmax, t.lmax, flat, t.provenance)
    }

    /// Read either form, choosing JSON when the first non-blank byte is `{`.
    pub fn read_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            let t: TableJson = serde_json::from_str(text)?;
            Self::from_json(t)
        } else {
            Self::read_csv(text.as_bytes())
        }
    }
}

/// JSON form of a [`BranchTable`]; `entries[m][l]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableJson {
    pub n: u32,
    pub i: u32,
    pub mmax: usize,
    pub lmax: usize,
    pub provenance: Provenance,
    pub entries: Vec<Vec<f64>>,
}

struct HeaderMeta {
    n: u32,
    i: u32,
    mmax: usize,
    lmax: usize,
    provenance: Provenance,
}

fn parse_header(line: &str) -> Result<HeaderMeta> {
    let rest = line
        .trim()
        .strip_prefix("# branch-table")
        .ok_or_else(|| Error::Parse(format!("missing '# branch-table' header, got '{line}'")))?;
    let (mut n, mut i, mut mmax, mut lmax, mut prov) = (None, None, None, None, None);
    for field in rest.split_whitespace() {
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad header field '{field}'")))?;
        let num = |v: &str| -> Result<usize> {
            v.parse()
                .map_err(|_| Error::Parse(format!("bad value '{v}' for header field '{k}'")))
        };
        match k {
            "n" => n = Some(num(v)? as u32),
            "i" => i = Some(num(v)? as u32),
            "mmax" => mmax = Some(num(v)?),
            "lmax" => lmax = Some(num(v)?),
            "provenance" => prov = Some(v.parse()?),
            other => return Err(Error::Parse(format!("unknown header field '{other}'"))),
        }
    }
    let missing = |f: &str| Error::Parse(format!("header lacks '{f}'"));
    Ok(HeaderMeta {
        n: n.ok_or_else(|| missing("n"))?,
        i: i.ok_or_else(|| missing("i"))?,
        mmax: mmax.ok_or_else(|| missing("mmax"))?,
        lmax: lmax.ok_or_else(|| missing("lmax"))?,
        provenance: prov.ok_or_else(|| missing("provenance"))?,
    })
}

/// 17 significant digits in scientific notation.
pub fn fmt_sci(v: f64) -> String {
    format!("{v:.16e}")
}

/// Internally computed `C(m, l, 0)` table.
pub fn build_branch_table(n: u32, mmax: usize, lmax: usize, mode: BuildMode) -> Result<BranchTable> {
    build_branch_table_with(n, mmax, lmax, mode, &TableLimits::default())
}

pub fn build_branch_table_with(
    n: u32,
    mmax: usize,
    lmax: usize,
    mode: BuildMode,
    limits: &TableLimits,
) -> Result<BranchTable> {
    if n < 3 {
        return Err(Error::Domain(format!("n={n} must be at least 3")));
    }
    if lmax > mmax {
        return Err(Error::Domain(format!("lmax={lmax} exceeds mmax={mmax}")));
    }
    let cells = (mmax + 1).saturating_mul(lmax + 1);
    if cells > limits.max_cells {
        return Err(Error::Resource(format!(
            "{cells} cells exceed the cap of {}",
            limits.max_cells
        )));
    }
    if mode == BuildMode::Exact && mmax > limits.exact_mmax_cap {
        return Err(Error::Resource(format!(
            "exact mode supports mmax <= {}, requested {mmax}",
            limits.exact_mmax_cap
        )));
    }
    let fast = FastCoeff::new(n);
    let rows: Vec<Vec<f64>> = (0..=mmax)
        .into_par_iter()
        .map(|m| {
            (0..=lmax)
                .map(|l| {
                    if l > m {
                        return 0.0;
                    }
                    let (m, l) = (m as u32, l as u32);
                    match mode {
                        BuildMode::Exact => {
                            rational_to_f64(&branch_coeff_exact(n, m, l).expect("valid slot"))
                        }
                        BuildMode::Fast => fast.eval(m, l),
                    }
                })
                .collect()
        })
        .collect();
    let provenance = match mode {
        BuildMode::Exact => Provenance::InternalExact,
        BuildMode::Fast => Provenance::InternalFloat,
    };
    BranchTable::from_entries(n, 0, mmax, lmax, rows.concat(), provenance)
}
