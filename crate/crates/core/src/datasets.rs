//! Catalog, download cache and loaders for the supervised Marathi corpora.
//!
//! Cached files live at `<home>/datasets/<name>/<split>.<ext>` and are
//! verified against their SHA-256 digest on every load. A file that fails
//! verification is renamed with a `.corrupt` suffix and reported; the next
//! load fetches it again.

use std::fmt;
use std::fs::{self, File};
use std::io::{self, BufWriter, Cursor, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use calamine::{Data, Reader, Xlsx};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fetch::Fetcher;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DatasetName {
    MahaSent,
    MahaHate,
    MahaNer,
}

impl DatasetName {
    pub const ALL: [DatasetName; 3] = [
        DatasetName::MahaSent,
        DatasetName::MahaHate,
        DatasetName::MahaNer,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DatasetName::MahaSent => "mahasent",
            DatasetName::MahaHate => "mahahate",
            DatasetName::MahaNer => "mahaner",
        }
    }
}

impl fmt::Display for DatasetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DatasetName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        DatasetName::ALL
            .into_iter()
            .find(|n| n.as_str() == lower)
            .ok_or_else(|| Error::Catalog {
                kind: "dataset",
                name: s.to_string(),
                valid: DatasetName::ALL
                    .iter()
                    .map(|n| n.as_str().to_string())
                    .collect(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
    Validation,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Test, Split::Validation];

    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "test",
            Split::Validation => "validation",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Split {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "train" => Ok(Split::Train),
            "test" => Ok(Split::Test),
            "validation" | "valid" | "dev" => Ok(Split::Validation),
            _ => Err(Error::Catalog {
                kind: "split",
                name: s.to_string(),
                valid: Split::ALL.iter().map(|s| s.as_str().to_string()).collect(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnKind {
    Text,
    Label,
    Tokens,
    Tags,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub kind: ColumnKind,
}

impl Column {
    fn new(name: &str, kind: ColumnKind) -> Self {
        Column {
            name: name.to_string(),
            kind,
        }
    }
}

/// How the fetched bytes are laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceFormat {
    /// Tab-separated with a header row.
    Tsv,
    /// Comma-separated with a header row.
    Csv,
    /// First worksheet of an Excel workbook, header in the first row.
    Xlsx,
    /// One `token tag` pair per line, blank lines between sentences.
    Conll,
}

impl SourceFormat {
    pub fn extension(self) -> &'static str {
        match self {
            SourceFormat::Tsv => "tsv",
            SourceFormat::Csv => "csv",
            SourceFormat::Xlsx => "xlsx",
            SourceFormat::Conll => "conll",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum Checksum {
    /// Lowercase hex SHA-256 known ahead of time.
    Sha256(String),
    /// The digest of the first successful download is recorded next to the
    /// cached file and enforced from then on.
    PinOnFirstFetch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSource {
    pub split: Split,
    pub url: String,
    pub checksum: Checksum,
    pub format: SourceFormat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetDescriptor {
    pub name: DatasetName,
    pub splits: Vec<SplitSource>,
    pub schema: Vec<Column>,
    /// Canonical label (or tag) set.
    pub labels: Vec<String>,
    /// Raw values found in source files and the canonical label they mean.
    pub label_aliases: Vec<(String, String)>,
}

impl DatasetDescriptor {
    pub fn source(&self, split: Split) -> Result<&SplitSource> {
        self.splits
            .iter()
            .find(|s| s.split == split)
            .ok_or_else(|| Error::Catalog {
                kind: "split",
                name: split.to_string(),
                valid: self.splits.iter().map(|s| s.split.to_string()).collect(),
            })
    }

    /// Maps a raw label to its canonical form. Case-insensitive; IOB
    /// prefixes (`B-`, `I-`) are dropped for tag columns.
    pub fn canonical_label(&self, raw: &str) -> Option<&str> {
        let raw = raw.trim();
        let is_tagged = self.schema.iter().any(|c| c.kind == ColumnKind::Tags);
        let raw = if is_tagged {
            raw.strip_prefix("B-")
                .or_else(|| raw.strip_prefix("I-"))
                .unwrap_or(raw)
        } else {
            raw
        };
        if let Some(l) = self.labels.iter().find(|l| l.eq_ignore_ascii_case(raw)) {
            return Some(l);
        }
        let target = self
            .label_aliases
            .iter()
            .find(|(alias, _)| alias.eq_ignore_ascii_case(raw))
            .map(|(_, target)| target)?;
        self.labels
            .iter()
            .find(|l| *l == target)
            .map(String::as_str)
    }

    fn is_sequence(&self) -> bool {
        self.schema.iter().any(|c| c.kind == ColumnKind::Tokens)
    }
}

/// A set of dataset descriptors with unique names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetCatalog {
    entries: Vec<DatasetDescriptor>,
}

const GITHUB_RAW: &str = "https://raw.githubusercontent.com/l3cube-pune/MarathiNLP/main";

impl DatasetCatalog {
    pub fn new(entries: Vec<DatasetDescriptor>) -> Result<Self> {
        for (i, d) in entries.iter().enumerate() {
            let invalid =
                |reason: &str| Error::Input(format!("catalog entry `{}`: {reason}", d.name));
            if entries[..i].iter().any(|e| e.name == d.name) {
                return Err(invalid("duplicate name"));
            }
            if d.splits.is_empty() {
                return Err(invalid("no splits"));
            }
            if d.schema.is_empty() {
                return Err(invalid("empty schema"));
            }
            if d.splits.iter().any(|s| s.url.is_empty()) {
                return Err(invalid("split without URL"));
            }
            if d.splits
                .iter()
                .any(|s| matches!(&s.checksum, Checksum::Sha256(h) if h.len() != 64))
            {
                return Err(invalid("malformed SHA-256 digest"));
            }
        }
        Ok(DatasetCatalog { entries })
    }

    /// The three bundled corpora.
    ///
    /// Upstream digests are not published, so every split is pinned on its
    /// first download.
    pub fn builtin() -> Self {
        fn splits(format: SourceFormat, urls: [String; 3]) -> Vec<SplitSource> {
            Split::ALL
                .into_iter()
                .zip(urls)
                .map(|(split, url)| SplitSource {
                    split,
                    url,
                    checksum: Checksum::PinOnFirstFetch,
                    format,
                })
                .collect()
        }
        let strings = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let aliases = |xs: &[(&str, &str)]| {
            xs.iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect::<Vec<_>>()
        };
        let classification = vec![
            Column::new("text", ColumnKind::Text),
            Column::new("label", ColumnKind::Label),
        ];
        let sent = format!("{GITHUB_RAW}/L3CubeMahaSent%20Dataset");
        let hate = format!("{GITHUB_RAW}/L3Cube-MahaHate/2-class");
        let ner = format!("{GITHUB_RAW}/L3Cube-MahaNER/NON_IOB");
        let entries = vec![
            DatasetDescriptor {
                name: DatasetName::MahaSent,
                splits: splits(
                    SourceFormat::Csv,
                    [
                        format!("{sent}/tweets-train.csv"),
                        format!("{sent}/tweets-test.csv"),
                        format!("{sent}/tweets-valid.csv"),
                    ],
                ),
                schema: classification.clone(),
                labels: strings(&crate::tasks::SENTIMENT_LABELS),
                label_aliases: aliases(&[("1", "positive"), ("-1", "negative"), ("0", "neutral")]),
            },
            DatasetDescriptor {
                name: DatasetName::MahaHate,
                splits: splits(
                    SourceFormat::Xlsx,
                    [
                        format!("{hate}/hate_bin_train.xlsx"),
                        format!("{hate}/hate_bin_test.xlsx"),
                        format!("{hate}/hate_bin_valid.xlsx"),
                    ],
                ),
                schema: classification,
                labels: strings(&crate::tasks::HATE_LABELS),
                label_aliases: aliases(&[
                    ("1", "hate"),
                    ("0", "non-hate"),
                    ("not", "non-hate"),
                    ("non_hate", "non-hate"),
                    ("nonhate", "non-hate"),
                ]),
            },
            DatasetDescriptor {
                name: DatasetName::MahaNer,
                splits: splits(
                    SourceFormat::Conll,
                    [
                        format!("{ner}/train_noniob.txt"),
                        format!("{ner}/test_noniob.txt"),
                        format!("{ner}/valid_noniob.txt"),
                    ],
                ),
                schema: vec![
                    Column::new("tokens", ColumnKind::Tokens),
                    Column::new("tags", ColumnKind::Tags),
                ],
                labels: strings(&crate::tasks::NER_TAGS),
                label_aliases: Vec::new(),
            },
        ];
        DatasetCatalog::new(entries).expect("builtin catalog is valid")
    }

    pub fn entries(&self) -> &[DatasetDescriptor] {
        &self.entries
    }

    pub fn get(&self, name: DatasetName) -> Result<&DatasetDescriptor> {
        self.entries
            .iter()
            .find(|d| d.name == name)
            .ok_or_else(|| Error::Catalog {
                kind: "dataset",
                name: name.to_string(),
                valid: self.entries.iter().map(|d| d.name.to_string()).collect(),
            })
    }
}

/// The bundled catalog entries, in a stable order.
pub fn list_datasets() -> Vec<DatasetDescriptor> {
    DatasetCatalog::builtin().entries
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Text(String),
    Sequence(Vec<String>),
}

impl Value {
    pub fn as_text(&self) -> Option<&str> {
        match self {
            Value::Text(s) => Some(s),
            Value::Sequence(_) => None,
        }
    }

    pub fn as_sequence(&self) -> Option<&[String]> {
        match self {
            Value::Sequence(v) => Some(v),
            Value::Text(_) => None,
        }
    }
}

/// One corpus split in memory: rows of values aligned with the schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DatasetTable {
    descriptor: DatasetDescriptor,
    split: Split,
    rows: Vec<Vec<Value>>,
}

impl DatasetTable {
    pub fn descriptor(&self) -> &DatasetDescriptor {
        &self.descriptor
    }

    pub fn split(&self) -> Split {
        self.split
    }

    pub fn columns(&self) -> &[Column] {
        &self.descriptor.schema
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    /// Values of one column, top to bottom.
    pub fn column(&self, name: &str) -> Option<impl Iterator<Item = &Value>> {
        let idx = self.descriptor.schema.iter().position(|c| c.name == name)?;
        Some(self.rows.iter().map(move |r| &r[idx]))
    }

    /// Every row as a JSON object keyed by column name.
    pub fn records(&self) -> impl Iterator<Item = serde_json::Map<String, serde_json::Value>> + '_ {
        self.rows.iter().map(|row| {
            self.descriptor
                .schema
                .iter()
                .zip(row)
                .map(|(c, v)| (c.name.clone(), serde_json::to_value(v).expect("plain data")))
                .collect()
        })
    }
}

/// Downloads, verifies and caches corpus files under `<home>/datasets`.
#[derive(Clone)]
pub struct DatasetStore {
    root: PathBuf,
    fetcher: Arc<dyn Fetcher>,
    catalog: DatasetCatalog,
}

impl fmt::Debug for DatasetStore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DatasetStore")
            .field("root", &self.root)
            .finish_non_exhaustive()
    }
}

impl DatasetStore {
    pub fn new(home: impl AsRef<Path>, fetcher: Arc<dyn Fetcher>) -> Self {
        DatasetStore {
            root: home.as_ref().join("datasets"),
            fetcher,
            catalog: DatasetCatalog::builtin(),
        }
    }

    pub fn with_catalog(mut self, catalog: DatasetCatalog) -> Self {
        self.catalog = catalog;
        self
    }

    pub fn catalog(&self) -> &DatasetCatalog {
        &self.catalog
    }

    pub fn cache_path(&self, name: DatasetName, split: Split) -> Result<PathBuf> {
        let source = self.catalog.get(name)?.source(split)?;
        Ok(self.root.join(name.as_str()).join(format!(
            "{}.{}",
            split.as_str(),
            source.format.extension()
        )))
    }

    /// String-keyed [`load`](Self::load) for user-supplied names.
    pub fn load_dataset(&self, name: &str, split: &str) -> Result<DatasetTable> {
        self.load(name.parse()?, split.parse()?)
    }

    /// Returns the split, fetching it only when no verified copy is cached.
    pub fn load(&self, name: DatasetName, split: Split) -> Result<DatasetTable> {
        let descriptor = self.catalog.get(name)?;
        let source = descriptor.source(split)?;
        let path = self.cache_path(name, split)?;

        // verified cache reads take no lock
        if path.exists() {
            self.verify_cached(&path, source)?;
            return parse_file(&path, descriptor, source.format, split);
        }

        let dir = path.parent().expect("cache path has a parent");
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let lock_path = suffixed(&path, ".lock");
        let lock = File::create(&lock_path).map_err(|e| Error::io(&lock_path, e))?;
        lock.lock().map_err(|e| Error::io(&lock_path, e))?;

        if path.exists() {
            // another loader finished while we waited
            self.verify_cached(&path, source)?;
        } else {
            self.fetch_into_cache(&path, source)?;
        }
        parse_file(&path, descriptor, source.format, split)
    }

    /// Removes cached files for `name`, or for every dataset. Returns the
    /// number of files removed; lock files are not counted.
    pub fn clear_cache(&self, name: Option<DatasetName>) -> Result<usize> {
        let dirs: Vec<PathBuf> = match name {
            Some(n) => vec![self.root.join(n.as_str())],
            None => DatasetName::ALL
                .iter()
                .map(|n| self.root.join(n.as_str()))
                .collect(),
        };
        let mut removed = 0;
        for dir in dirs {
            let entries = match fs::read_dir(&dir) {
                Ok(entries) => entries,
                Err(e) if e.kind() == io::ErrorKind::NotFound => continue,
                Err(e) => return Err(Error::io(&dir, e)),
            };
            for entry in entries {
                let entry = entry.map_err(|e| Error::io(&dir, e))?;
                let path = entry.path();
                if !path.is_file() {
                    continue;
                }
                fs::remove_file(&path).map_err(|e| Error::io(&path, e))?;
                if path.extension().is_none_or(|ext| ext != "lock") {
                    removed += 1;
                }
            }
            let _ = fs::remove_dir(&dir);
        }
        Ok(removed)
    }

    fn verify_cached(&self, path: &Path, source: &SplitSource) -> Result<()> {
        let actual = sha256_file(path)?;
        let expected = match &source.checksum {
            Checksum::Sha256(hex) => hex.to_ascii_lowercase(),
            Checksum::PinOnFirstFetch => {
                let pin = suffixed(path, ".sha256");
                match fs::read_to_string(&pin) {
                    Ok(s) => s.trim().to_ascii_lowercase(),
                    Err(e) if e.kind() == io::ErrorKind::NotFound => {
                        write_atomic(&pin, actual.as_bytes())?;
                        return Ok(());
                    }
                    Err(e) => return Err(Error::io(&pin, e)),
                }
            }
        };
        if actual == expected {
            return Ok(());
        }
        let quarantined = suffixed(path, ".corrupt");
        fs::rename(path, &quarantined).map_err(|e| Error::io(path, e))?;
        Err(Error::Integrity {
            path: path.to_path_buf(),
            expected,
            actual,
        })
    }

    fn fetch_into_cache(&self, path: &Path, source: &SplitSource) -> Result<()> {
        let dir = path.parent().expect("cache path has a parent");
        let tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
        let mut sink = HashingWriter {
            inner: BufWriter::new(tmp),
            hasher: Sha256::new(),
        };
        self.fetcher
            .fetch(&source.url, &mut sink)
            .map_err(|e| Error::Fetch {
                url: source.url.clone(),
                reason: e.to_string(),
            })?;
        let actual = hex::encode(sink.hasher.finalize());
        let tmp = sink
            .inner
            .into_inner()
            .map_err(|e| Error::io(path, e.into_error()))?;
        tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;

        match &source.checksum {
            Checksum::Sha256(expected) if !expected.eq_ignore_ascii_case(&actual) => {
                let quarantined = suffixed(path, ".corrupt");
                tmp.persist(&quarantined)
                    .map_err(|e| Error::io(&quarantined, e.error))?;
                return Err(Error::Integrity {
                    path: path.to_path_buf(),
                    expected: expected.to_ascii_lowercase(),
                    actual,
                });
            }
            Checksum::Sha256(_) => {}
            Checksum::PinOnFirstFetch => {
                let pin = suffixed(path, ".sha256");
                match fs::read_to_string(&pin) {
                    Ok(pinned) if pinned.trim() != actual => {
                        let quarantined = suffixed(path, ".corrupt");
                        tmp.persist(&quarantined)
                            .map_err(|e| Error::io(&quarantined, e.error))?;
                        return Err(Error::Integrity {
                            path: path.to_path_buf(),
                            expected: pinned.trim().to_string(),
                            actual,
                        });
                    }
                    Ok(_) => {}
                    Err(_) => write_atomic(&pin, actual.as_bytes())?,
                }
            }
        }
        tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
        Ok(())
    }
}

struct HashingWriter<W> {
    inner: W,
    hasher: Sha256,
}

impl<W: Write> Write for HashingWriter<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.hasher.update(&buf[..n]);
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

fn suffixed(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().expect("path has a parent");
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// Lowercase hex SHA-256 of a file's contents.
pub fn sha256_file(path: &Path) -> Result<String> {
    let mut file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 64 * 1024];
    loop {
        let n = file.read(&mut buf).map_err(|e| Error::io(path, e))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hex::encode(hasher.finalize()))
}

const TEXT_HEADERS: [&str; 5] = ["text", "tweet", "sentence", "sentences", "comment"];
const LABEL_HEADERS: [&str; 5] = ["label", "labels", "class", "target", "sentiment"];

fn parse_file(
    path: &Path,
    descriptor: &DatasetDescriptor,
    format: SourceFormat,
    split: Split,
) -> Result<DatasetTable> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let bad = |reason: String| Error::Resource {
        path: path.to_path_buf(),
        reason,
    };
    let rows = match format {
        SourceFormat::Conll => parse_conll(&bytes, descriptor).map_err(bad)?,
        SourceFormat::Csv | SourceFormat::Tsv | SourceFormat::Xlsx => {
            if descriptor.is_sequence() {
                return Err(bad(format!("{format:?} cannot hold token/tag sequences")));
            }
            let table = match format {
                SourceFormat::Xlsx => read_xlsx(&bytes).map_err(bad)?,
                SourceFormat::Tsv => read_delimited(&bytes, b'\t').map_err(bad)?,
                _ => read_delimited(&bytes, b',').map_err(bad)?,
            };
            classification_rows(table, descriptor).map_err(bad)?
        }
    };
    if rows.is_empty() {
        return Err(bad("no rows".into()));
    }
    Ok(DatasetTable {
        descriptor: descriptor.clone(),
        split,
        rows,
    })
}

fn strip_bom(bytes: &[u8]) -> &[u8] {
    bytes.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(bytes)
}

/// Header plus records, all as strings.
type RawTable = (Vec<String>, Vec<Vec<String>>);

fn read_delimited(bytes: &[u8], delimiter: u8) -> Result<RawTable, String> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(true)
        .from_reader(strip_bom(bytes));
    let header = reader
        .headers()
        .map_err(|e| e.to_string())?
        .iter()
        .map(str::to_string)
        .collect();
    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        records.push(rec.iter().map(str::to_string).collect());
    }
    Ok((header, records))
}

fn read_xlsx(bytes: &[u8]) -> Result<RawTable, String> {
    let mut workbook: Xlsx<_> =
        Xlsx::new(Cursor::new(bytes)).map_err(|e| format!("not a readable workbook: {e}"))?;
    let range = workbook
        .worksheet_range_at(0)
        .ok_or("workbook has no sheets")?
        .map_err(|e| e.to_string())?;
    let mut rows = range
        .rows()
        .map(|r| r.iter().map(cell_to_string).collect::<Vec<_>>());
    let header = rows.next().ok_or("empty worksheet")?;
    Ok((header, rows.collect()))
}

fn cell_to_string(cell: &Data) -> String {
    match cell {
        Data::Float(f) if f.fract() == 0.0 && f.abs() < 1e15 => format!("{}", *f as i64),
        Data::Empty => String::new(),
        other => other.to_string(),
    }
}

fn find_column(header: &[String], names: &[&str]) -> Option<usize> {
    names.iter().find_map(|want| {
        header
            .iter()
            .position(|h| h.trim().eq_ignore_ascii_case(want))
    })
}

fn classification_rows(
    (header, records): RawTable,
    descriptor: &DatasetDescriptor,
) -> Result<Vec<Vec<Value>>, String> {
    let text_idx = find_column(&header, &TEXT_HEADERS)
        .ok_or_else(|| format!("no text column among {header:?}"))?;
    let label_idx = find_column(&header, &LABEL_HEADERS)
        .ok_or_else(|| format!("no label column among {header:?}"))?;
    let mut rows = Vec::with_capacity(records.len());
    for (i, rec) in records.iter().enumerate() {
        if rec.iter().all(|c| c.trim().is_empty()) {
            continue;
        }
        let line = i + 2;
        let text = rec.get(text_idx).map(|s| s.trim()).unwrap_or_default();
        let raw_label = rec.get(label_idx).map(String::as_str).unwrap_or_default();
        let label = descriptor.canonical_label(raw_label).ok_or_else(|| {
            format!(
                "row {line}: label `{raw_label}` not in {:?}",
                descriptor.labels
            )
        })?;
        rows.push(vec![
            Value::Text(text.to_string()),
            Value::Text(label.to_string()),
        ]);
    }
    Ok(rows)
}

fn parse_conll(bytes: &[u8], descriptor: &DatasetDescriptor) -> Result<Vec<Vec<Value>>, String> {
    let text = std::str::from_utf8(strip_bom(bytes)).map_err(|_| "not valid UTF-8".to_string())?;
    let mut rows = Vec::new();
    let mut tokens = Vec::new();
    let mut tags = Vec::new();
    let mut flush = |tokens: &mut Vec<String>, tags: &mut Vec<String>| {
        if !tokens.is_empty() {
            rows.push(vec![
                Value::Sequence(std::mem::take(tokens)),
                Value::Sequence(std::mem::take(tags)),
            ]);
        }
    };
    let mut seen_content = false;
    for (i, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            flush(&mut tokens, &mut tags);
            continue;
        }
        let first_content = !seen_content;
        seen_content = true;
        if fields.len() < 2 {
            return Err(format!("line {}: expected `token tag`", i + 1));
        }
        let (token, raw_tag) = (fields[fields.len() - 2], fields[fields.len() - 1]);
        match descriptor.canonical_label(raw_tag) {
            Some(tag) => {
                tokens.push(token.to_string());
                tags.push(tag.to_string());
            }
            // a column header such as `words labels`
            None if first_content => {}
            None => {
                return Err(format!(
                    "line {}: tag `{raw_tag}` not in {:?}",
                    i + 1,
                    descriptor.labels
                ))
            }
        }
    }
    flush(&mut tokens, &mut tags);
    Ok(rows)
}
