#![allow(dead_code)]

use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use mahanlp::fetch::{FetchError, Fetcher};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn fixture_bytes(name: &str) -> Vec<u8> {
    std::fs::read(fixture_path(name)).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

/// Serves canned bodies by URL and counts every call.
#[derive(Default)]
pub struct MapFetcher {
    files: Mutex<HashMap<String, Vec<u8>>>,
    calls: AtomicUsize,
    log: Mutex<Vec<String>>,
    delay: Option<Duration>,
    /// Number of body bytes to write before failing, per URL.
    fail_after: Mutex<HashMap<String, usize>>,
}

impl MapFetcher {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_delay(delay: Duration) -> Self {
        MapFetcher {
            delay: Some(delay),
            ..Self::default()
        }
    }

    pub fn serve(&self, url: &str, body: impl Into<Vec<u8>>) -> &Self {
        self.files
            .lock()
            .unwrap()
            .insert(url.to_string(), body.into());
        self
    }

    pub fn fail_midway(&self, url: &str, after: usize) {
        self.fail_after
            .lock()
            .unwrap()
            .insert(url.to_string(), after);
    }

    pub fn heal(&self, url: &str) {
        self.fail_after.lock().unwrap().remove(url);
    }

    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::SeqCst)
    }

    pub fn urls(&self) -> Vec<String> {
        self.log.lock().unwrap().clone()
    }
}

impl Fetcher for MapFetcher {
    fn fetch(&self, url: &str, sink: &mut dyn Write) -> Result<u64, FetchError> {
        self.calls.fetch_add(1, Ordering::SeqCst);
        self.log.lock().unwrap().push(url.to_string());
        if let Some(d) = self.delay {
            std::thread::sleep(d);
        }
        let body = self
            .files
            .lock()
            .unwrap()
            .get(url)
            .cloned()
            .ok_or_else(|| FetchError(format!("404 Not Found: {url}")))?;
        if let Some(&n) = self.fail_after.lock().unwrap().get(url) {
            let n = n.min(body.len());
            sink.write_all(&body[..n])
                .map_err(|e| FetchError(e.to_string()))?;
            return Err(FetchError("connection reset".into()));
        }
        sink.write_all(&body)
            .map_err(|e| FetchError(e.to_string()))?;
        Ok(body.len() as u64)
    }
}

/// Building blocks for mixed-script fuzz strings: Devanagari words (some of
/// them stopwords), Latin, digits, punctuation, URLs, odd whitespace, emoji.
pub const FRAGMENTS: &[&str] = &[
    "मी",
    "घरी",
    "जातो",
    "आहे",
    "आणि",
    "तो",
    "पुणे",
    "शाळेत",
    "क़लम",
    "र्‍या",
    "ज्ञ",
    "१२३",
    "हा",
    "चित्रपट",
    "छान",
    "।",
    "॥",
    ".",
    ",",
    "?",
    "!",
    "'",
    "\"",
    "(",
    ")",
    "-",
    ":",
    ";",
    "hello",
    "World",
    "abc123",
    "42",
    "é",
    "naïve",
    "😀",
    "✓",
    "\u{200c}",
    "\u{200d}",
    "\u{a8f2}",
    "\u{093c}",
    "http://x.in/a?b=1",
    "https://ex.com",
    "www.site.org/p",
    "ftp://f",
    " ",
    " ",
    " ",
    "  ",
    "\t",
    "\n",
    "\u{a0}",
    "\u{3000}",
];

pub fn fuzz_string<R: rand::Rng>(rng: &mut R, max_parts: usize) -> String {
    let n = rng.gen_range(0..=max_parts);
    (0..n)
        .map(|_| FRAGMENTS[rng.gen_range(0..FRAGMENTS.len())])
        .collect()
}

pub fn mixed_script() -> impl proptest::strategy::Strategy<Value = String> {
    use proptest::prelude::*;
    prop_oneof![
        4 => proptest::collection::vec(proptest::sample::select(FRAGMENTS), 0..24)
            .prop_map(|v| v.concat()),
        1 => any::<String>(),
    ]
}
