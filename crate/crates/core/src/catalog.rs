//! JSON Lines catalog of verified sets with tags and provenance.
//!
//! Each line holds one record with keys `entries`, `n`, `sum`, `cube_sum`,
//! `tags` and `source`. Integers are written as decimal strings. Records are
//! deduplicated on their canonical entries; adding a known set merges tags.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiset::{CsSet, Multiset};

/// Environment variable naming the catalog file.
pub const CATALOG_ENV: &str = "CUBESUM_CATALOG";
pub const DEFAULT_CATALOG: &str = "catalog.jsonl";

/// `$CUBESUM_CATALOG`, or `catalog.jsonl` in the working directory.
pub fn default_path() -> PathBuf {
    std::env::var_os(CATALOG_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CATALOG))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogRecord {
    set: CsSet,
    tags: BTreeSet<String>,
    source: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    entries: Vec<String>,
    n: usize,
    sum: String,
    cube_sum: String,
    tags: Vec<String>,
    source: String,
}

impl CatalogRecord {
    pub fn new<I, S>(set: CsSet, tags: I, source: impl Into<String>) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        CatalogRecord {
            set,
            tags: tags.into_iter().map(Into::into).collect(),
            source: source.into(),
        }
    }

    pub fn set(&self) -> &CsSet {
        &self.set
    }

    pub fn entries(&self) -> &Multiset {
        self.set.elements()
    }

    pub fn n(&self) -> usize {
        self.set.len()
    }

    pub fn sum(&self) -> &BigInt {
        self.set.sum()
    }

    pub fn cube_sum(&self) -> &BigInt {
        self.set.cube_sum()
    }

    /// Sorted, without repeats.
    pub fn tags(&self) -> impl Iterator<Item = &str> {
        self.tags.iter().map(String::as_str)
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.contains(tag)
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    fn to_raw(&self) -> RawRecord {
        RawRecord {
            entries: self.entries().entries().iter().map(ToString::to_string).collect(),
            n: self.n(),
            sum: self.sum().to_string(),
            cube_sum: self.cube_sum().to_string(),
            tags: self.tags.iter().cloned().collect(),
            source: self.source.clone(),
        }
    }

    /// One JSON object without a trailing newline.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("record serializes")
    }

    /// Parses and re-verifies one line. `line` is only used in errors.
    pub fn from_json_line(text: &str, line: usize) -> Result<Self> {
        let fail = |reason: String| Error::VerificationFailed { line, reason };
        let raw: RawRecord = serde_json::from_str(text).map_err(|e| fail(e.to_string()))?;
        let values = raw
            .entries
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| fail(format!("entry {s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(fail("entries are not in canonical order".into()));
        }
        let multiset = Multiset::canonicalize(values).map_err(|e| fail(e.to_string()))?;
        let set = multiset.verify_cs().map_err(|e| fail(e.to_string()))?;
        if raw.n != set.len() {
            return Err(fail(format!("n is {} but there are {} entries", raw.n, set.len())));
        }
        if raw.sum != set.sum().to_string() {
            return Err(fail(format!("stored sum {} differs from {}", raw.sum, set.sum())));
        }
        if raw.cube_sum != set.cube_sum().to_string() {
            return Err(fail(format!(
                "stored cube_sum {} differs from {}",
                raw.cube_sum,
                set.cube_sum()
            )));
        }
        let tags: BTreeSet<String> = raw.tags.iter().cloned().collect();
        if tags.len() != raw.tags.len() || !raw.tags.iter().eq(tags.iter()) {
            return Err(fail("tags are not sorted and unique".into()));
        }
        Ok(CatalogRecord {
            set,
            tags,
            source: raw.source,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AddOutcome {
    Added,
    Duplicate,
}

/// Records must match every given field; all listed tags must be present.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Filter {
    pub n: Option<usize>,
    pub tags: Vec<String>,
    pub sum: Option<BigInt>,
}

impl Filter {
    pub fn zero_sum() -> Self {
        Filter {
            sum: Some(BigInt::from(0)),
            ..Filter::default()
        }
    }

    pub fn matches(&self, record: &CatalogRecord) -> bool {
        self.n.is_none_or(|n| record.n() == n)
            && self.tags.iter().all(|t| record.has_tag(t))
            && self.sum.as_ref().is_none_or(|s| record.sum() == s)
    }
}

/// Records in insertion order, indexed by canonical entries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    records: Vec<CatalogRecord>,
    index: HashMap<Multiset, usize>,
}

impl Catalog {
    pub fn new() -> Self {
        Catalog::default()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[CatalogRecord] {
        &self.records
    }

    pub fn get(&self, entries: &Multiset) -> Option<&CatalogRecord> {
        self.index.get(entries).map(|&i| &self.records[i])
    }

    /// Appends `record`, or merges its tags into the existing record with
    /// the same entries. The existing source is kept.
    pub fn add_record(&mut self, record: CatalogRecord) -> AddOutcome {
        if let Some(&i) = self.index.get(record.entries()) {
            self.records[i].tags.extend(record.tags);
            return AddOutcome::Duplicate;
        }
        self.index.insert(record.entries().clone(), self.records.len());
        self.records.push(record);
        AddOutcome::Added
    }

    /// Verifies `entries` and adds them. A failure names the line the record
    /// would have occupied.
    pub fn add<I, S>(&mut self, entries: &Multiset, tags: I, source: impl Into<String>) -> Result<AddOutcome>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set = entries.verify_cs().map_err(|e| Error::VerificationFailed {
            line: self.records.len() + 1,
            reason: e.to_string(),
        })?;
        Ok(self.add_record(CatalogRecord::new(set, tags, source)))
    }

    /// Matching records in lexicographic order of their entries.
    pub fn query(&self, filter: &Filter) -> Vec<&CatalogRecord> {
        let mut out: Vec<&CatalogRecord> = self.records.iter().filter(|r| filter.matches(r)).collect();
        out.sort_by(|a, b| a.entries().cmp(b.entries()));
        out
    }

    /// Reads JSON Lines, skipping blank lines. The first bad line aborts the
    /// load with its 1-based line number; a repeated set counts as bad.
    pub fn from_reader<R: Read>(reader: R) -> Result<Self> {
        let mut catalog = Catalog::new();
        for (i, line) in BufReader::new(reader).lines().enumerate() {
            let line_no = i + 1;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let record = CatalogRecord::from_json_line(&line, line_no)?;
            if catalog.index.contains_key(record.entries()) {
                return Err(Error::VerificationFailed {
                    line: line_no,
                    reason: format!("duplicate set {}", record.entries()),
                });
            }
            catalog.add_record(record);
        }
        Ok(catalog)
    }

    pub fn to_writer<W: Write>(&self, mut writer: W) -> Result<()> {
        for record in &self.records {
            writeln!(writer, "{}", record.to_json_line())?;
        }
        writer.flush()?;
        Ok(())
    }

    /// A missing file loads as an empty catalog.
    pub fn load(path: &Path) -> Result<Self> {
        match fs::File::open(path) {
            Ok(file) => Catalog::from_reader(file),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Catalog::new()),
            Err(e) => Err(e.into()),
        }
    }

    /// Writes to a sibling temporary file, then renames it over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        self.to_writer(std::io::BufWriter::new(fs::File::create(&tmp)?))?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

impl Extend<CatalogRecord> for Catalog {
    fn extend<T: IntoIterator<Item = CatalogRecord>>(&mut self, iter: T) {
        for record in iter {
            self.add_record(record);
        }
    }
}
