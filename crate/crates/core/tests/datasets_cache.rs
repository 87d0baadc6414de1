mod common;

use std::fs;
use std::sync::Arc;
use std::time::Duration;

use common::{fixture_bytes, MapFetcher};
use mahanlp::datasets::{
    sha256_file, Checksum, DatasetCatalog, DatasetName, DatasetStore, Split, Value,
};
use mahanlp::Error;

fn url(name: DatasetName, split: Split) -> String {
    DatasetCatalog::builtin()
        .get(name)
        .unwrap()
        .source(split)
        .unwrap()
        .url
        .clone()
}

fn sha256_hex(bytes: &[u8]) -> String {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("blob");
    fs::write(&p, bytes).unwrap();
    sha256_file(&p).unwrap()
}

/// Builtin catalog with every MahaSent split pinned to `digest`.
fn pinned_catalog(digest: &str) -> DatasetCatalog {
    let mut entries = DatasetCatalog::builtin().entries().to_vec();
    for d in &mut entries {
        if d.name == DatasetName::MahaSent {
            for s in &mut d.splits {
                s.checksum = Checksum::Sha256(digest.to_string());
            }
        }
    }
    DatasetCatalog::new(entries).unwrap()
}

fn sent_fetcher() -> Arc<MapFetcher> {
    let f = Arc::new(MapFetcher::new());
    f.serve(
        &url(DatasetName::MahaSent, Split::Train),
        fixture_bytes("mahasent_sample.csv"),
    );
    f
}

#[test]
fn first_load_fetches_once_second_load_not_at_all() {
    let home = tempfile::tempdir().unwrap();
    let fetcher = sent_fetcher();
    let store = DatasetStore::new(home.path(), fetcher.clone());

    let first = store.load(DatasetName::MahaSent, Split::Train).unwrap();
    assert_eq!(fetcher.calls(), 1);
    let second = store.load(DatasetName::MahaSent, Split::Train).unwrap();
    assert_eq!(fetcher.calls(), 1);
    assert_eq!(first, second);

    let path = store
        .cache_path(DatasetName::MahaSent, Split::Train)
        .unwrap();
    assert_eq!(path, home.path().join("datasets/mahasent/train.csv"));
    assert!(path.exists());
}

#[test]
fn fresh_store_on_same_home_reuses_cache() {
    let home = tempfile::tempdir().unwrap();
    let fetcher = sent_fetcher();
    DatasetStore::new(home.path(), fetcher.clone())
        .load(DatasetName::MahaSent, Split::Train)
        .unwrap();
    DatasetStore::new(home.path(), fetcher.clone())
        .load_dataset("MahaSent", "train")
        .unwrap();
    assert_eq!(fetcher.calls(), 1);
}

#[test]
fn mahasent_rows_and_labels() {
    let home = tempfile::tempdir().unwrap();
    let table = DatasetStore::new(home.path(), sent_fetcher())
        .load(DatasetName::MahaSent, Split::Train)
        .unwrap();
    assert_eq!(table.len(), 4);
    let names: Vec<_> = table.columns().iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["text", "label"]);
    let labels: Vec<_> = table
        .column("label")
        .unwrap()
        .map(|v| v.as_text().unwrap().to_string())
        .collect();
    assert_eq!(labels, ["positive", "negative", "neutral", "positive"]);
    assert!(table
        .column("text")
        .unwrap()
        .any(|v| v.as_text().unwrap().contains(',')));
}

#[test]
fn mahahate_xlsx_is_parsed() {
    let home = tempfile::tempdir().unwrap();
    let fetcher = Arc::new(MapFetcher::new());
    fetcher.serve(
        &url(DatasetName::MahaHate, Split::Test),
        fixture_bytes("mahahate_sample.xlsx"),
    );
    let table = DatasetStore::new(home.path(), fetcher)
        .load(DatasetName::MahaHate, Split::Test)
        .unwrap();
    let labels: Vec<_> = table
        .column("label")
        .unwrap()
        .map(|v| v.as_text().unwrap().to_string())
        .collect();
    assert_eq!(labels, ["hate", "non-hate", "hate", "non-hate"]);
}

#[test]
fn mahaner_conll_is_parsed() {
    let home = tempfile::tempdir().unwrap();
    let fetcher = Arc::new(MapFetcher::new());
    fetcher.serve(
        &url(DatasetName::MahaNer, Split::Validation),
        fixture_bytes("mahaner_sample.conll"),
    );
    let table = DatasetStore::new(home.path(), fetcher)
        .load_dataset("mahaner", "valid")
        .unwrap();
    assert_eq!(table.len(), 3);
    for row in table.rows() {
        let (Value::Sequence(tokens), Value::Sequence(tags)) = (&row[0], &row[1]) else {
            panic!("expected sequences, got {row:?}");
        };
        assert_eq!(tokens.len(), tags.len());
        for t in tags {
            assert!(mahanlp::tasks::NER_TAGS.contains(&t.as_str()), "{t}");
        }
    }
}

#[test]
fn tampered_cache_is_quarantined_and_refetched() {
    let home = tempfile::tempdir().unwrap();
    let body = fixture_bytes("mahasent_sample.csv");
    let fetcher = sent_fetcher();
    let store = DatasetStore::new(home.path(), fetcher.clone())
        .with_catalog(pinned_catalog(&sha256_hex(&body)));
    store.load(DatasetName::MahaSent, Split::Train).unwrap();

    let path = store
        .cache_path(DatasetName::MahaSent, Split::Train)
        .unwrap();
    let mut tampered = fs::read(&path).unwrap();
    tampered.extend_from_slice("1,नवीन ओळ\n".as_bytes());
    fs::write(&path, &tampered).unwrap();

    let err = store.load(DatasetName::MahaSent, Split::Train).unwrap_err();
    assert!(matches!(err, Error::Integrity { .. }), "{err:?}");
    assert!(!path.exists());
    let corrupt = path.with_extension("csv.corrupt");
    assert_eq!(fs::read(&corrupt).unwrap(), tampered);

    store.load(DatasetName::MahaSent, Split::Train).unwrap();
    assert_eq!(fetcher.calls(), 2);
    assert_eq!(fs::read(&path).unwrap(), body);
}

#[test]
fn pinned_on_first_fetch_detects_later_tampering() {
    let home = tempfile::tempdir().unwrap();
    let store = DatasetStore::new(home.path(), sent_fetcher());
    store.load(DatasetName::MahaSent, Split::Train).unwrap();
    let path = store
        .cache_path(DatasetName::MahaSent, Split::Train)
        .unwrap();
    let pin = home.path().join("datasets/mahasent/train.csv.sha256");
    assert_eq!(
        fs::read_to_string(&pin).unwrap(),
        sha256_file(&path).unwrap()
    );

    fs::write(&path, "label,tweet\n1,बदल\n").unwrap();
    let err = store.load(DatasetName::MahaSent, Split::Train).unwrap_err();
    assert!(matches!(err, Error::Integrity { .. }), "{err:?}");
}

#[test]
fn upstream_mismatch_never_reaches_cache() {
    let home = tempfile::tempdir().unwrap();
    let fetcher = sent_fetcher();
    let store =
        DatasetStore::new(home.path(), fetcher).with_catalog(pinned_catalog(&"0".repeat(64)));
    let err = store.load(DatasetName::MahaSent, Split::Train).unwrap_err();
    match err {
        Error::Integrity {
            expected, actual, ..
        } => {
            assert_eq!(expected, "0".repeat(64));
            assert_eq!(actual, sha256_hex(&fixture_bytes("mahasent_sample.csv")));
        }
        other => panic!("{other:?}"),
    }
    let path = store
        .cache_path(DatasetName::MahaSent, Split::Train)
        .unwrap();
    assert!(!path.exists());
    assert!(path.with_extension("csv.corrupt").exists());
}

fn data_files(dir: &std::path::Path) -> Vec<String> {
    let Ok(rd) = fs::read_dir(dir) else {
        return Vec::new();
    };
    let mut names: Vec<String> = rd
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| !n.ends_with(".lock"))
        .collect();
    names.sort();
    names
}

#[test]
fn interrupted_fetch_leaves_no_partial_file() {
    let home = tempfile::tempdir().unwrap();
    let fetcher = sent_fetcher();
    let u = url(DatasetName::MahaSent, Split::Train);
    fetcher.fail_midway(&u, 20);
    let store = DatasetStore::new(home.path(), fetcher.clone());

    let err = store.load(DatasetName::MahaSent, Split::Train).unwrap_err();
    match &err {
        Error::Fetch { url, .. } => assert_eq!(url, &u),
        other => panic!("{other:?}"),
    }
    assert!(data_files(&home.path().join("datasets/mahasent")).is_empty());

    fetcher.heal(&u);
    assert_eq!(
        store
            .load(DatasetName::MahaSent, Split::Train)
            .unwrap()
            .len(),
        4
    );
}

/// Writes half the body, then panics, as a crash mid-download would.
struct PanickingFetcher(Vec<u8>);

impl mahanlp::fetch::Fetcher for PanickingFetcher {
    fn fetch(
        &self,
        _url: &str,
        sink: &mut dyn std::io::Write,
    ) -> Result<u64, mahanlp::fetch::FetchError> {
        sink.write_all(&self.0[..self.0.len() / 2]).unwrap();
        sink.flush().unwrap();
        panic!("simulated crash");
    }
}

#[test]
fn crash_during_fetch_leaves_no_final_file() {
    let home = tempfile::tempdir().unwrap();
    let store = DatasetStore::new(
        home.path(),
        Arc::new(PanickingFetcher(fixture_bytes("mahasent_sample.csv"))),
    );
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
        store.load(DatasetName::MahaSent, Split::Train)
    }));
    assert!(result.is_err());
    let path = store
        .cache_path(DatasetName::MahaSent, Split::Train)
        .unwrap();
    assert!(!path.exists());
    assert!(data_files(path.parent().unwrap()).is_empty());
}

#[test]
fn missing_upstream_file_reports_url() {
    let home = tempfile::tempdir().unwrap();
    let store = DatasetStore::new(home.path(), Arc::new(MapFetcher::new()));
    let err = store.load(DatasetName::MahaNer, Split::Test).unwrap_err();
    assert!(!err.is_input_error());
    assert!(err.to_string().contains("test_noniob.txt"), "{err}");
}

#[test]
fn clear_cache_counts_and_forces_refetch() {
    let home = tempfile::tempdir().unwrap();
    let fetcher = sent_fetcher();
    fetcher.serve(
        &url(DatasetName::MahaNer, Split::Train),
        fixture_bytes("mahaner_sample.conll"),
    );
    let store = DatasetStore::new(home.path(), fetcher.clone());
    store.load(DatasetName::MahaSent, Split::Train).unwrap();
    store.load(DatasetName::MahaNer, Split::Train).unwrap();

    // data file plus its pin sidecar
    assert_eq!(store.clear_cache(Some(DatasetName::MahaSent)).unwrap(), 2);
    assert_eq!(store.clear_cache(Some(DatasetName::MahaSent)).unwrap(), 0);
    store.load(DatasetName::MahaNer, Split::Train).unwrap();
    assert_eq!(fetcher.calls(), 2);

    store.load(DatasetName::MahaSent, Split::Train).unwrap();
    assert_eq!(fetcher.calls(), 3);
    assert_eq!(store.clear_cache(None).unwrap(), 4);
    assert!(data_files(&home.path().join("datasets/mahaner")).is_empty());
}

#[test]
fn concurrent_loads_fetch_once() {
    let home = tempfile::tempdir().unwrap();
    let fetcher = Arc::new(MapFetcher::with_delay(Duration::from_millis(50)));
    fetcher.serve(
        &url(DatasetName::MahaSent, Split::Train),
        fixture_bytes("mahasent_sample.csv"),
    );
    let store = Arc::new(DatasetStore::new(home.path(), fetcher.clone()));

    let handles: Vec<_> = (0..8)
        .map(|_| {
            let store = store.clone();
            std::thread::spawn(move || store.load(DatasetName::MahaSent, Split::Train).unwrap())
        })
        .collect();
    let tables: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert_eq!(fetcher.calls(), 1);
    assert!(tables.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn unknown_names_are_catalog_errors() {
    let home = tempfile::tempdir().unwrap();
    let store = DatasetStore::new(home.path(), Arc::new(MapFetcher::new()));
    let err = store.load_dataset("mahaqa", "train").unwrap_err();
    assert!(err.is_input_error());
    let msg = err.to_string();
    for valid in ["mahasent", "mahahate", "mahaner"] {
        assert!(msg.contains(valid), "{msg}");
    }
    assert!(store
        .load_dataset("mahasent", "holdout")
        .unwrap_err()
        .is_input_error());
}

#[test]
fn builtin_catalog_covers_three_splits_each() {
    let datasets = mahanlp::datasets::list_datasets();
    let names: Vec<_> = datasets.iter().map(|d| d.name).collect();
    assert_eq!(names, DatasetName::ALL);
    for d in &datasets {
        let splits: Vec<_> = d.splits.iter().map(|s| s.split).collect();
        assert_eq!(splits, Split::ALL);
    }
}
