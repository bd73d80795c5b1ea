use std::collections::HashMap;
use std::sync::Mutex;

use super::{EmbeddingProvider, NliJudgment, NliProvider};
use crate::error::Result;
use crate::hash::sha256_hex;
use crate::limit::Limiter;

/// Memoizes judgments by model id, premise hash and hypothesis hash, and
/// caps in-flight batches at the provider's limit.
pub struct CachedNli<P> {
    inner: P,
    memory: Mutex<HashMap<(String, String), NliJudgment>>,
    limiter: Limiter,
}

impl<P: NliProvider> CachedNli<P> {
    pub fn new(inner: P) -> Self {
        let limiter = Limiter::new(inner.max_concurrency());
        CachedNli {
            inner,
            memory: Mutex::new(HashMap::new()),
            limiter,
        }
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
}

impl<P: NliProvider> NliProvider for CachedNli<P> {
    fn model_id(&self) -> &str {
        self.inner.model_id()
    }

    fn max_batch(&self) -> usize {
        usize::MAX
    }

    fn max_length(&self) -> usize {
        self.inner.max_length()
    }

    fn max_concurrency(&self) -> usize {
        usize::MAX
    }

    fn judge(&self, pairs: &[(String, String)]) -> Result<Vec<NliJudgment>> {
        let keys: Vec<(String, String)> = pairs
            .iter()
            .map(|(p, h)| (sha256_hex(p), sha256_hex(h)))
            .collect();
        let mut out: Vec<Option<NliJudgment>> = {
            let memory = self.memory.lock().expect("cache poisoned");
            keys.iter().map(|k| memory.get(k).copied()).collect()
        };
        let missing: Vec<usize> = (0..pairs.len()).filter(|&i| out[i].is_none()).collect();
        for chunk in missing.chunks(self.inner.max_batch().max(1)) {
            let batch: Vec<(String, String)> = chunk.iter().map(|&i| pairs[i].clone()).collect();
            let judgments = self.limiter.run(|| self.inner.judge(&batch))?;
            let mut memory = self.memory.lock().expect("cache poisoned");
            for (&i, j) in chunk.iter().zip(judgments) {
                memory.insert(keys[i].clone(), j);
                out[i] = Some(j);
            }
        }
        // Short provider replies leave gaps that the caller reports.
        Ok(out.into_iter().flatten().collect())
    }
}

/// Memoizes embeddings by text hash.
pub struct CachedEmbedding<P> {
    inner: P,
    memory: Mutex<HashMap<String, Vec<f64>>>,
    limiter: Limiter,
}

impl<P: EmbeddingProvider> CachedEmbedding<P> {
    pub fn new(inner: P) -> Self {
        let limiter = Limiter::new(inner.max_concurrency());
        CachedEmbedding {
            inner,
            memory: Mutex::new(HashMap::new()),
            limiter,
        }
    }

    pub fn inner(&self) -> &P {
        &self.inner
    }
}

impl<P: EmbeddingProvider> EmbeddingProvider for CachedEmbedding<P> {
    fn model_id(&self) -> &str {
        self.inner.model_id()
    }

    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn max_batch(&self) -> usize {
        usize::MAX
    }

    fn max_concurrency(&self) -> usize {
        usize::MAX
    }

    fn embed(&self, texts: &[String]) -> Result<Vec<Vec<f64>>> {
        let keys: Vec<String> = texts.iter().map(sha256_hex).collect();
        let mut out: Vec<Option<Vec<f64>>> = {
            let memory = self.memory.lock().expect("cache poisoned");
            keys.iter().map(|k| memory.get(k).cloned()).collect()
        };
        let missing: Vec<usize> = (0..texts.len()).filter(|&i| out[i].is_none()).collect();
        for chunk in missing.chunks(self.inner.max_batch().max(1)) {
            let batch: Vec<String> = chunk.iter().map(|&i| texts[i].clone()).collect();
            let vectors = self.limiter.run(|| self.inner.embed(&batch))?;
            let mut memory = self.memory.lock().expect("cache poisoned");
            for (&i, v) in chunk.iter().zip(vectors) {
                memory.insert(keys[i].clone(), v.clone());
                out[i] = Some(v);
            }
        }
        Ok(out.into_iter().flatten().collect())
    }
}
