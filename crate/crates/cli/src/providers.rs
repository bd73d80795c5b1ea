//! Builds provider instances from the run configuration.

use std::sync::Arc;

use simprof::fidelity::mock::{HashingEmbedding, LexicalNli};
use simprof::fidelity::{CachedEmbedding, CachedNli, EmbeddingProvider, NliProvider};
use simprof::generation::mock::MockGenerator;
use simprof::generation::{GenerationProvider, ProviderMap};
use simprof::http::{HttpAnnotator, HttpChecker, HttpEmbedding, HttpGenerator, HttpNli};
use simprof::label::ModelSize;
use simprof::rules::checker::GrammarChecker;
use simprof::text::{AnnotationProvider, CachedAnnotator, HeuristicAnnotator};

use crate::config::{
    AnnotationConfig, EmbeddingConfig, GenerationProviderConfig, NliConfig, RunConfig,
};

pub fn annotator(cfg: &RunConfig) -> Arc<dyn AnnotationProvider> {
    let inner: Arc<dyn AnnotationProvider> = match &cfg.annotation {
        AnnotationConfig::Heuristic => Arc::new(HeuristicAnnotator::new()),
        AnnotationConfig::Http {
            id,
            endpoint,
            offset_unit,
            capabilities,
        } => Arc::new(HttpAnnotator::new(
            id,
            endpoint.clone(),
            &cfg.language,
            capabilities.iter().copied().collect(),
            *offset_unit,
        )),
    };
    let cached = CachedAnnotator::new(inner);
    match &cfg.cache_dir {
        Some(dir) => Arc::new(cached.with_dir(dir.join("annotations"))),
        None => Arc::new(cached),
    }
}

pub fn nli(cfg: &RunConfig) -> Arc<dyn NliProvider> {
    let inner: Arc<dyn NliProvider> = match &cfg.nli {
        NliConfig::Lexical => Arc::new(LexicalNli),
        NliConfig::Http {
            model,
            endpoint,
            limits,
        } => Arc::new(HttpNli::new(model, endpoint.clone(), limits.clone())),
    };
    Arc::new(CachedNli::new(inner))
}

pub fn embedding(cfg: &RunConfig) -> Arc<dyn EmbeddingProvider> {
    let inner: Arc<dyn EmbeddingProvider> = match &cfg.embedding {
        EmbeddingConfig::Hashing { dimension } => {
            Arc::new(HashingEmbedding::new((*dimension).max(2)))
        }
        EmbeddingConfig::Http {
            model,
            dimension,
            endpoint,
            limits,
        } => Arc::new(HttpEmbedding::new(
            model,
            endpoint.clone(),
            *dimension,
            limits.clone(),
        )),
    };
    Arc::new(CachedEmbedding::new(inner))
}

pub fn checker(cfg: &RunConfig) -> Option<Arc<dyn GrammarChecker>> {
    cfg.checker.as_ref().map(|c| {
        Arc::new(HttpChecker::new(
            &c.id,
            c.endpoint.clone(),
            c.offset_unit,
            c.max_concurrency,
        )) as Arc<dyn GrammarChecker>
    })
}

pub fn generators(cfg: &RunConfig) -> ProviderMap {
    match &cfg.generation.provider {
        GenerationProviderConfig::Mock { fail_on, empty_on } => {
            let mock: Arc<dyn GenerationProvider> = Arc::new(
                MockGenerator::new()
                    .failing_on(fail_on.iter().map(String::as_str))
                    .empty_on(empty_on.iter().map(String::as_str)),
            );
            ModelSize::ALL.iter().map(|s| (*s, mock.clone())).collect()
        }
        GenerationProviderConfig::Http { models } => models
            .iter()
            .map(|(size, m)| {
                let p: Arc<dyn GenerationProvider> = Arc::new(HttpGenerator::new(
                    &m.model,
                    m.endpoint.clone(),
                    cfg.generation.decoding.clone(),
                    m.max_concurrency,
                ));
                (*size, p)
            })
            .collect(),
    }
}
