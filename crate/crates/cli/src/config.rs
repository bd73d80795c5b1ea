//! Run configuration: one TOML file plus environment overrides for
//! provider endpoints and credentials.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use simprof::fingerprint::spider::SpiderConfig;
use simprof::generation::{load_examples, DecodingParams, PromptTemplate, TemplateSet};
use simprof::hash::sha256_hex;
use simprof::http::{BatchLimits, Endpoint};
use simprof::label::{ConfigurationLabel, ModelSize, PromptStrategy};
use simprof::readability::ReadabilityConfig;
use simprof::rules::{builtin_ruleset, RuleCategory, RuleSet};
use simprof::text::offsets::OffsetUnit;
use simprof::text::Capability;
use simprof::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_language")]
    pub language: String,
    #[serde(default)]
    pub annotation: AnnotationConfig,
    #[serde(default)]
    pub nli: NliConfig,
    #[serde(default)]
    pub embedding: EmbeddingConfig,
    #[serde(default)]
    pub checker: Option<CheckerConfig>,
    #[serde(default)]
    pub generation: GenerationConfig,
    #[serde(default)]
    pub readability: ReadabilityConfig,
    #[serde(default)]
    pub rules: RulesConfig,
    #[serde(default)]
    pub sampler: SamplerConfig,
    #[serde(default)]
    pub validation: ValidationConfig,
    #[serde(default)]
    pub report: ReportConfig,
    /// Directory for persistent annotation caches.
    #[serde(default)]
    pub cache_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::parse("").expect("empty config is valid")
    }
}

fn default_language() -> String {
    "de".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[derive(Default)]
pub enum AnnotationConfig {
    #[default]
    Heuristic,
    Http {
        #[serde(default = "default_annotator_id")]
        id: String,
        #[serde(flatten)]
        endpoint: Endpoint,
        #[serde(default)]
        offset_unit: OffsetUnit,
        capabilities: Vec<Capability>,
    },
}

fn default_annotator_id() -> String {
    "remote-annotator".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[derive(Default)]
pub enum NliConfig {
    #[default]
    Lexical,
    Http {
        model: String,
        #[serde(flatten)]
        endpoint: Endpoint,
        #[serde(default)]
        limits: BatchLimits,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EmbeddingConfig {
    Hashing {
        #[serde(default = "default_dimension")]
        dimension: usize,
    },
    Http {
        model: String,
        dimension: usize,
        #[serde(flatten)]
        endpoint: Endpoint,
        #[serde(default)]
        limits: BatchLimits,
    },
}

fn default_dimension() -> usize {
    256
}

impl Default for EmbeddingConfig {
    fn default() -> Self {
        EmbeddingConfig::Hashing {
            dimension: default_dimension(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckerConfig {
    #[serde(default = "default_checker_id")]
    pub id: String,
    #[serde(flatten)]
    pub endpoint: Endpoint,
    /// LanguageTool counts UTF-16 code units.
    #[serde(default = "default_checker_unit")]
    pub offset_unit: OffsetUnit,
    #[serde(default = "one")]
    pub max_concurrency: usize,
}

fn default_checker_id() -> String {
    "languagetool".into()
}

fn default_checker_unit() -> OffsetUnit {
    OffsetUnit::Utf16
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[derive(Default)]
pub struct GenerationConfig {
    #[serde(default)]
    pub provider: GenerationProviderConfig,
    #[serde(default)]
    pub decoding: DecodingParams,
    /// Subset of configurations, e.g. `["plain/1B", "rules-fs/4B"]`.
    /// Empty means all 18.
    #[serde(default)]
    pub labels: Vec<String>,
    /// Directory with `plain.txt`, `target.txt`, `rules.txt`, `content.txt`.
    #[serde(default)]
    pub templates_dir: Option<PathBuf>,
    #[serde(default)]
    pub few_shot_file: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GenerationProviderConfig {
    Mock {
        /// Excerpt ids whose requests fail, for exercising failure handling.
        #[serde(default)]
        fail_on: Vec<String>,
        #[serde(default)]
        empty_on: Vec<String>,
    },
    Http {
        /// One model per size, keyed `1B`, `4B`, `12B`.
        models: BTreeMap<ModelSize, HttpModel>,
    },
}

impl Default for GenerationProviderConfig {
    fn default() -> Self {
        GenerationProviderConfig::Mock {
            fail_on: Vec::new(),
            empty_on: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HttpModel {
    pub model: String,
    #[serde(flatten)]
    pub endpoint: Endpoint,
    #[serde(default = "one")]
    pub max_concurrency: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RulesConfig {
    /// Rule set files replacing the built-in sets.
    #[serde(default)]
    pub simplicity: Option<PathBuf>,
    #[serde(default)]
    pub correctness: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerConfig {
    #[serde(default = "default_window")]
    pub window: usize,
    #[serde(default = "default_budget")]
    pub budget: usize,
    /// Per-rule quotas; rules not listed get the default quota.
    #[serde(default)]
    pub quotas: BTreeMap<String, usize>,
}

fn default_window() -> usize {
    5
}

fn default_budget() -> usize {
    simprof::sampler::DEFAULT_BUDGET
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            window: default_window(),
            budget: default_budget(),
            quotas: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationConfig {
    #[serde(default = "five")]
    pub folds: usize,
    #[serde(default = "five")]
    pub repeats: usize,
    #[serde(default = "default_c")]
    pub c: f64,
    #[serde(default = "default_trials")]
    pub random_trials: usize,
    /// Task groups; empty means the standard suite.
    #[serde(default)]
    pub groups: Vec<TaskGroup>,
    #[serde(default = "default_ablations")]
    pub ablations: Vec<AblationConfig>,
}

fn five() -> usize {
    5
}

fn default_c() -> f64 {
    1.0
}

fn default_trials() -> usize {
    1000
}

fn default_ablations() -> Vec<AblationConfig> {
    vec![AblationConfig {
        title: "Ablation of average sentence length".into(),
        feature: "ASL".into(),
        tasks: PromptStrategy::ALL
            .iter()
            .map(|s| format!("strategy={s}"))
            .collect(),
    }]
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            folds: 5,
            repeats: 5,
            c: 1.0,
            random_trials: default_trials(),
            groups: Vec::new(),
            ablations: default_ablations(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskGroup {
    pub title: String,
    /// Task strings such as `strategy=target` or `size_pair=1B,4B`.
    pub tasks: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AblationConfig {
    pub title: String,
    pub feature: String,
    pub tasks: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportConfig {
    #[serde(default)]
    pub spider: Option<SpiderConfig>,
}

/// Environment variables that override endpoint settings.
pub const ENV_OVERRIDES: [&str; 6] = [
    "SIMPROF_ANNOTATION_URL",
    "SIMPROF_NLI_URL",
    "SIMPROF_EMBEDDING_URL",
    "SIMPROF_CHECKER_URL",
    "SIMPROF_GENERATION_URL",
    "SIMPROF_API_KEY",
];

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))
    }

    /// Reads `path`; relative paths inside are resolved against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::ConfigInvalid(format!("cannot read config {}: {e}", path.display()))
        })?;
        let mut cfg = RunConfig::parse(&text)?;
        if let Some(base) = path.parent() {
            cfg.resolve_paths(base);
        }
        Ok(cfg)
    }

    fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut Option<PathBuf>| {
            if let Some(path) = p {
                if path.is_relative() {
                    *path = base.join(&*path);
                }
            }
        };
        fix(&mut self.rules.simplicity);
        fix(&mut self.rules.correctness);
        fix(&mut self.generation.templates_dir);
        fix(&mut self.generation.few_shot_file);
        fix(&mut self.cache_dir);
    }

    /// Applies `SIMPROF_*` overrides from `env`. A URL override only
    /// applies to providers already configured as HTTP.
    pub fn apply_env(&mut self, env: impl Fn(&str) -> Option<String>) {
        let key = env("SIMPROF_API_KEY");
        let set = |ep: &mut Endpoint, var: &str| {
            if let Some(url) = env(var) {
                ep.url = url;
            }
            if ep.api_key.is_none() {
                ep.api_key = key.clone();
            }
        };
        if let AnnotationConfig::Http { endpoint, .. } = &mut self.annotation {
            set(endpoint, "SIMPROF_ANNOTATION_URL");
        }
        if let NliConfig::Http { endpoint, .. } = &mut self.nli {
            set(endpoint, "SIMPROF_NLI_URL");
        }
        if let EmbeddingConfig::Http { endpoint, .. } = &mut self.embedding {
            set(endpoint, "SIMPROF_EMBEDDING_URL");
        }
        if let Some(c) = &mut self.checker {
            set(&mut c.endpoint, "SIMPROF_CHECKER_URL");
        }
        if let GenerationProviderConfig::Http { models } = &mut self.generation.provider {
            for (size, m) in models.iter_mut() {
                let var = format!("SIMPROF_GENERATION_URL_{size}");
                if env(&var).is_some() {
                    set(&mut m.endpoint, &var);
                } else {
                    set(&mut m.endpoint, "SIMPROF_GENERATION_URL");
                }
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.readability.validate()?;
        if self.sampler.window == 0 {
            return Err(Error::ConfigInvalid(
                "sampler.window must be at least 1".into(),
            ));
        }
        if self.sampler.budget == 0 {
            return Err(Error::ConfigInvalid(
                "sampler.budget must be at least 1".into(),
            ));
        }
        let v = &self.validation;
        if v.folds < 2 || v.repeats < 1 || !(v.c > 0.0) || v.random_trials == 0 {
            return Err(Error::ConfigInvalid(
                "validation needs folds >= 2, repeats >= 1, c > 0 and random_trials >= 1".into(),
            ));
        }
        if let Some(spider) = &self.report.spider {
            spider.validate()?;
        }
        if let GenerationProviderConfig::Http { models } = &self.generation.provider {
            for label in self.labels()? {
                if !models.contains_key(&label.size) {
                    return Err(Error::ConfigInvalid(format!(
                        "no generation model configured for {}",
                        label.size
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn labels(&self) -> Result<Vec<ConfigurationLabel>> {
        if self.generation.labels.is_empty() {
            return Ok(ConfigurationLabel::all());
        }
        let mut out: Vec<ConfigurationLabel> = self
            .generation
            .labels
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn rule_set(&self, category: RuleCategory) -> Result<RuleSet> {
        let path = match category {
            RuleCategory::Simplicity => &self.rules.simplicity,
            RuleCategory::Correctness => &self.rules.correctness,
        };
        match path {
            Some(p) => RuleSet::load(p).map_err(|e| match e {
                Error::Io(io) => Error::ConfigInvalid(format!("rule set {}: {io}", p.display())),
                other => other,
            }),
            None => Ok(builtin_ruleset(category)),
        }
    }

    pub fn templates(&self) -> Result<TemplateSet> {
        let mut set = TemplateSet::default();
        if let Some(dir) = &self.generation.templates_dir {
            set.templates = PromptStrategy::ALL
                .iter()
                .map(|s| {
                    let path = dir.join(format!("{s}.txt"));
                    if !path.exists() {
                        return Err(Error::ConfigInvalid(format!(
                            "missing template {}",
                            path.display()
                        )));
                    }
                    PromptTemplate::load(*s, &path)
                })
                .collect::<Result<_>>()?;
        }
        if let Some(file) = &self.generation.few_shot_file {
            set.examples = load_examples(file).map_err(|e| {
                Error::ConfigInvalid(format!("few-shot file {}: {e}", file.display()))
            })?;
        }
        Ok(set)
    }

    pub fn spider(&self) -> SpiderConfig {
        self.report.spider.clone().unwrap_or_default()
    }

    /// Hash of everything that shapes outputs: the settings without
    /// credentials, seed and local paths, plus the resolved rule sets and
    /// prompt templates.
    pub fn hash(&self) -> Result<String> {
        let mut clean = self.clone();
        clean.seed = 0;
        clean.cache_dir = None;
        clean.rules = RulesConfig::default();
        clean.generation.templates_dir = None;
        clean.generation.few_shot_file = None;
        clean.strip_secrets();
        let mut material = serde_json::to_string(&clean)?;
        for category in [RuleCategory::Simplicity, RuleCategory::Correctness] {
            material.push('\n');
            material.push_str(&self.rule_set(category)?.to_toml());
        }
        let templates = self.templates()?;
        for t in &templates.templates {
            material.push('\n');
            material.push_str(&t.body);
        }
        material.push('\n');
        material.push_str(&serde_json::to_string(&templates.examples)?);
        Ok(sha256_hex(material.as_bytes())[..16].to_string())
    }

    fn strip_secrets(&mut self) {
        let strip = |ep: &mut Endpoint| ep.api_key = None;
        if let AnnotationConfig::Http { endpoint, .. } = &mut self.annotation {
            strip(endpoint);
        }
        if let NliConfig::Http { endpoint, .. } = &mut self.nli {
            strip(endpoint);
        }
        if let EmbeddingConfig::Http { endpoint, .. } = &mut self.embedding {
            strip(endpoint);
        }
        if let Some(c) = &mut self.checker {
            strip(&mut c.endpoint);
        }
        if let GenerationProviderConfig::Http { models } = &mut self.generation.provider {
            models.values_mut().for_each(|m| strip(&mut m.endpoint));
        }
    }
}
