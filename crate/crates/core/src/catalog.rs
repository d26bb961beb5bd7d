//! A directory of design files with a tab-separated index.
//!
//! Layout under the root:
//!
//! ```text
//! index.tsv                      N m es2 hash provenance path
//! designs/N{N}_m{m}_{hash}.ssd   design file
//! ```
//!
//! The hash is the SHA-256 of the design file text. Entries are appended and
//! deduplicated by hash. Every write goes to a temporary file first and is
//! then renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::design::{e_s2, DesignMatrix};
use crate::error::{Error, Result};
use crate::formats::{parse_design, print_design};
use crate::rational::{fraction, parse_fraction, Rational};

pub const CATALOG_ENV: &str = "SSD_CATALOG";
pub const DEFAULT_ROOT: &str = "ssd-catalog";
const HEADER: &str = "N\tm\tes2\thash\tprovenance\tpath";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub runs: usize,
    pub factors: usize,
    pub es2: Rational,
    pub hash: String,
    /// A construction spec or a search summary line.
    pub provenance: String,
    /// Relative to the catalog root.
    pub path: PathBuf,
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some(other) => out.push(other),
            None => out.push('\\'),
        }
    }
    out
}

impl CatalogEntry {
    fn to_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.runs,
            self.factors,
            fraction(self.es2),
            self.hash,
            escape(&self.provenance),
            self.path.display()
        )
    }

    fn from_line(line_no: usize, line: &str) -> Result<Self> {
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 6 {
            return Err(Error::parse(line_no, format!("expected 6 fields, got {}", f.len())));
        }
        let int = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(line_no, format!("bad integer {s:?}")));
        Ok(CatalogEntry {
            runs: int(f[0])?,
            factors: int(f[1])?,
            es2: parse_fraction(f[2]).ok_or_else(|| Error::parse(line_no, format!("bad fraction {:?}", f[2])))?,
            hash: f[3].to_string(),
            provenance: unescape(f[4]),
            path: PathBuf::from(f[5]),
        })
    }
}

pub fn content_hash(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("file");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

#[derive(Debug, Clone)]
pub struct Catalog {
    root: PathBuf,
}

impl Catalog {
    /// Opens the catalog at `root`, creating it if needed.
    pub fn open(root: impl Into<PathBuf>) -> Result<Self> {
        let root = root.into();
        fs::create_dir_all(root.join("designs"))?;
        let cat = Catalog { root };
        if !cat.index_path().exists() {
            write_atomic(&cat.index_path(), &format!("{HEADER}\n"))?;
        }
        Ok(cat)
    }

    /// `$SSD_CATALOG`, or `./ssd-catalog` when unset.
    pub fn default_root() -> PathBuf {
        std::env::var_os(CATALOG_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_ROOT))
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn index_path(&self) -> PathBuf {
        self.root.join("index.tsv")
    }

    fn read_index(&self) -> Result<Vec<CatalogEntry>> {
        let text = fs::read_to_string(self.index_path())?;
        text.lines()
            .enumerate()
            .skip(1)
            .filter(|(_, l)| !l.is_empty())
            .map(|(i, l)| CatalogEntry::from_line(i + 1, l))
            .collect()
    }

    /// Validates `x` and stores it. Returns the entry and whether it was new.
    pub fn add(&self, x: &DesignMatrix, provenance: &str) -> Result<(CatalogEntry, bool)> {
        let report = x.validate();
        if !report.passed() {
            return Err(Error::InvalidDesign(report.to_string()));
        }
        let es2 = e_s2(x)?;
        let text = print_design(x);
        let hash = content_hash(&text);
        let mut entries = self.read_index()?;
        if let Some(e) = entries.iter().find(|e| e.hash == hash) {
            return Ok((e.clone(), false));
        }
        let path = PathBuf::from("designs").join(format!("N{}_m{}_{}.ssd", x.runs(), x.factors(), &hash[..16]));
        write_atomic(&self.root.join(&path), &text)?;
        let entry = CatalogEntry {
            runs: x.runs(),
            factors: x.factors(),
            es2,
            hash,
            provenance: provenance.to_string(),
            path,
        };
        entries.push(entry.clone());
        let mut index = format!("{HEADER}\n");
        for e in &entries {
            index.push_str(&e.to_line());
            index.push('\n');
        }
        write_atomic(&self.index_path(), &index)?;
        Ok((entry, true))
    }

    /// All entries, sorted by (N, m, hash).
    pub fn list(&self) -> Result<Vec<CatalogEntry>> {
        let mut entries = self.read_index()?;
        entries.sort_by(|a, b| (a.runs, a.factors, &a.hash).cmp(&(b.runs, b.factors, &b.hash)));
        Ok(entries)
    }

    /// Looks up an entry by hash or unique hash prefix and checks the stored file.
    ///
    /// Returns the entry, the file text, and the parsed design.
    pub fn get(&self, key: &str) -> Result<(CatalogEntry, String, DesignMatrix)> {
        let entries = self.read_index()?;
        let mut hits = entries.iter().filter(|e| !key.is_empty() && e.hash.starts_with(key));
        let entry = match (hits.next(), hits.next()) {
            (Some(e), None) => e.clone(),
            (Some(_), Some(_)) => return Err(Error::NotInCatalog(format!("{key} is ambiguous"))),
            _ => return Err(Error::NotInCatalog(key.to_string())),
        };
        let full = self.root.join(&entry.path);
        let text = fs::read_to_string(&full)?;
        let actual = content_hash(&text);
        if actual != entry.hash {
            return Err(Error::HashMismatch {
                path: full,
                expected: entry.hash.clone(),
                actual,
            });
        }
        let x = parse_design(&text)?;
        let report = x.validate();
        if !report.passed() {
            return Err(Error::InvalidDesign(report.to_string()));
        }
        let es2 = e_s2(&x)?;
        if es2 != entry.es2 {
            return Err(Error::InvalidDesign(format!(
                "stored E(s^2) {} but file evaluates to {}",
                fraction(entry.es2),
                fraction(es2)
            )));
        }
        Ok((entry, text, x))
    }
}
