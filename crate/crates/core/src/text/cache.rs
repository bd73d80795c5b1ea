use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::sync::Mutex;

use sha2::{Digest, Sha256};

use super::{Annotation, AnnotationProvider, Capabilities, RawText};
use crate::error::Result;
use crate::hash::hex;

/// Memoizing wrapper keyed by provider id, language and content hash.
///
/// Optionally persists entries as JSON files under a directory. Calls to a
/// provider that does not admit concurrency are serialized.
pub struct CachedAnnotator<P> {
    inner: P,
    memory: Mutex<HashMap<String, Annotation>>,
    dir: Option<PathBuf>,
    gate: Mutex<()>,
}

impl<P: AnnotationProvider> CachedAnnotator<P> {
    pub fn new(inner: P) -> Self {
        CachedAnnotator {
            inner,
            memory: Mutex::new(HashMap::new()),
            dir: None,
            gate: Mutex::new(()),
        }
    }

    pub fn with_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.dir = Some(dir.into());
        self
    }

    pub fn inner(&self) -> &P {
        &self.inner
    }

    pub fn len(&self) -> usize {
        self.memory.lock().expect("cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn key(&self, raw: &RawText) -> String {
        let mut h = Sha256::new();
        for part in [self.inner.id(), raw.language.as_str(), raw.content.as_str()] {
            h.update((part.len() as u64).to_le_bytes());
            h.update(part.as_bytes());
        }
        hex(&h.finalize())
    }
}

impl<P: AnnotationProvider> AnnotationProvider for CachedAnnotator<P> {
    fn id(&self) -> &str {
        self.inner.id()
    }

    fn capabilities(&self) -> Capabilities {
        self.inner.capabilities()
    }

    fn annotate(&self, raw: &RawText) -> Result<Annotation> {
        let key = self.key(raw);
        if let Some(hit) = self.memory.lock().expect("cache poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let path = self.dir.as_ref().map(|d| d.join(format!("{key}.json")));
        if let Some(path) = &path {
            if let Ok(bytes) = fs::read(path) {
                if let Ok(annotation) = serde_json::from_slice::<Annotation>(&bytes) {
                    self.memory
                        .lock()
                        .expect("cache poisoned")
                        .insert(key, annotation.clone());
                    return Ok(annotation);
                }
                log::warn!("ignoring unreadable cache entry {}", path.display());
            }
        }
        let annotation = if self.inner.concurrent() {
            self.inner.annotate(raw)?
        } else {
            let _guard = self.gate.lock().expect("gate poisoned");
            self.inner.annotate(raw)?
        };
        if let Some(path) = &path {
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent)?;
            }
            fs::write(path, serde_json::to_vec(&annotation)?)?;
        }
        self.memory
            .lock()
            .expect("cache poisoned")
            .insert(key, annotation.clone());
        Ok(annotation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::HeuristicAnnotator;
    use std::sync::atomic::{AtomicUsize, Ordering};

    struct Counting(HeuristicAnnotator, AtomicUsize);

    impl AnnotationProvider for Counting {
        fn id(&self) -> &str {
            "counting"
        }
        fn capabilities(&self) -> Capabilities {
            self.0.capabilities()
        }
        fn annotate(&self, raw: &RawText) -> Result<Annotation> {
            self.1.fetch_add(1, Ordering::SeqCst);
            self.0.annotate(raw)
        }
    }

    #[test]
    fn repeated_input_hits_cache() {
        let cached = CachedAnnotator::new(Counting(HeuristicAnnotator::new(), AtomicUsize::new(0)));
        let raw = RawText::new("a", "Der Hund bellt.");
        let first = cached.annotate(&raw).unwrap();
        let second = cached
            .annotate(&RawText::new("other-id", "Der Hund bellt."))
            .unwrap();
        assert_eq!(first, second);
        assert_eq!(cached.inner().1.load(Ordering::SeqCst), 1);
        cached
            .annotate(&RawText::new("a", "Die Katze schläft."))
            .unwrap();
        assert_eq!(cached.inner().1.load(Ordering::SeqCst), 2);
    }

    #[test]
    fn language_is_part_of_key() {
        let cached = CachedAnnotator::new(Counting(HeuristicAnnotator::new(), AtomicUsize::new(0)));
        cached.annotate(&RawText::new("a", "Hallo.")).unwrap();
        cached
            .annotate(&RawText::new("a", "Hallo.").with_language("en"))
            .unwrap();
        assert_eq!(cached.len(), 2);
    }
}
