//! HTTP adapters for the external providers.
//!
//! Every adapter POSTs one request per call and maps transport errors,
//! non-2xx statuses and malformed bodies to provider failures.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fidelity::{EmbeddingProvider, NliJudgment, NliProvider};
use crate::generation::{DecodingParams, GenerationOutput, GenerationProvider, GenerationRequest};
use crate::rules::checker::{parse_check_response, CheckerMatch, GrammarChecker};
use crate::text::offsets::OffsetUnit;
use crate::text::{
    AnnotatedEntity, AnnotatedToken, Annotation, AnnotationProvider, Capabilities, Capability,
    Morph, Pos, RawText, Span,
};

/// Where and how to reach a service.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Endpoint {
    pub url: String,
    /// Sent as a bearer token when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub api_key: Option<String>,
    #[serde(default = "default_timeout")]
    pub timeout_secs: u64,
}

fn default_timeout() -> u64 {
    120
}

impl Endpoint {
    pub fn new(url: impl Into<String>) -> Self {
        Endpoint {
            url: url.into(),
            api_key: None,
            timeout_secs: default_timeout(),
        }
    }
}

struct Client {
    provider: String,
    endpoint: Endpoint,
    agent: ureq::Agent,
}

impl Client {
    fn new(provider: &str, endpoint: Endpoint) -> Self {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(endpoint.timeout_secs.max(1))))
            .http_status_as_error(false)
            .build()
            .into();
        Client {
            provider: provider.to_string(),
            endpoint,
            agent,
        }
    }

    fn fail(&self, message: impl Into<String>) -> Error {
        Error::provider(&self.provider, message)
    }

    fn finish(
        &self,
        result: std::result::Result<ureq::http::Response<ureq::Body>, ureq::Error>,
    ) -> Result<String> {
        let mut resp = result.map_err(|e| self.fail(format!("{}: {e}", self.endpoint.url)))?;
        let status = resp.status();
        let body = resp
            .body_mut()
            .read_to_string()
            .map_err(|e| self.fail(format!("reading response: {e}")))?;
        if !status.is_success() {
            let snippet: String = body.chars().take(200).collect();
            return Err(self.fail(format!("HTTP {status}: {snippet}")));
        }
        Ok(body)
    }

    fn request(&self) -> ureq::RequestBuilder<ureq::typestate::WithBody> {
        let mut req = self.agent.post(&self.endpoint.url);
        if let Some(key) = &self.endpoint.api_key {
            req = req.header("Authorization", &format!("Bearer {key}"));
        }
        req
    }

    /// Returns the response body verbatim.
    fn post_json(&self, body: &str) -> Result<String> {
        let sent = self
            .request()
            .header("Content-Type", "application/json")
            .send(body);
        self.finish(sent)
    }

    fn post_form(&self, fields: &[(&str, &str)]) -> Result<String> {
        let sent = self.request().send_form(fields.iter().copied());
        self.finish(sent)
    }

    fn parse<T: for<'de> Deserialize<'de>>(&self, body: &str) -> Result<T> {
        serde_json::from_str(body).map_err(|e| self.fail(format!("malformed response: {e}")))
    }
}

#[derive(Deserialize)]
struct WireSpan {
    start: usize,
    end: usize,
}

#[derive(Deserialize)]
struct WireToken {
    start: usize,
    end: usize,
    #[serde(default)]
    pos: Option<String>,
    #[serde(default)]
    morph: Morph,
    /// Document-level token index.
    #[serde(default)]
    head: Option<usize>,
}

#[derive(Deserialize)]
struct WireEntity {
    start: usize,
    end: usize,
    #[serde(alias = "kind")]
    label: String,
}

#[derive(Deserialize)]
struct WireAnnotation {
    sentences: Vec<WireSpan>,
    #[serde(default)]
    tokens: Vec<WireToken>,
    #[serde(default)]
    entities: Vec<WireEntity>,
}

/// Annotation service: `{text, language}` in, sentence, token and entity
/// records with offsets in `offset_unit` out.
pub struct HttpAnnotator {
    client: Client,
    id: String,
    language: String,
    capabilities: Capabilities,
    offset_unit: OffsetUnit,
}

impl HttpAnnotator {
    pub fn new(
        id: &str,
        endpoint: Endpoint,
        language: &str,
        capabilities: Capabilities,
        offset_unit: OffsetUnit,
    ) -> Self {
        HttpAnnotator {
            client: Client::new(id, endpoint),
            id: id.to_string(),
            language: language.to_string(),
            capabilities,
            offset_unit,
        }
    }

    fn span(&self, text: &str, start: usize, end: usize) -> Result<Span> {
        let conv = |o| self.offset_unit.to_byte(text, o);
        match (conv(start), conv(end)) {
            (Some(s), Some(e)) if s <= e => Ok(Span::new(s, e)),
            _ => Err(crate::text::annotation_error(
                &self.id,
                format!(
                    "span {start}..{end} is not a valid {:?} range of the text",
                    self.offset_unit
                ),
            )),
        }
    }
}

impl AnnotationProvider for HttpAnnotator {
    fn id(&self) -> &str {
        &self.id
    }

    fn capabilities(&self) -> Capabilities {
        self.capabilities.clone()
    }

    fn annotate(&self, raw: &RawText) -> Result<Annotation> {
        let body = json!({ "text": raw.content, "language": self.language }).to_string();
        let wire: WireAnnotation = self.client.parse(&self.client.post_json(&body)?)?;
        let text = raw.content.as_str();
        let sentences = wire
            .sentences
            .iter()
            .map(|s| self.span(text, s.start, s.end))
            .collect::<Result<_>>()?;
        let tokens = wire
            .tokens
            .iter()
            .map(|t| {
                let pos = match &t.pos {
                    Some(tag) => serde_json::from_value(Value::String(tag.to_uppercase()))
                        .unwrap_or_default(),
                    None => Pos::default(),
                };
                Ok(AnnotatedToken {
                    span: self.span(text, t.start, t.end)?,
                    pos,
                    morph: t.morph.clone(),
                    head: t.head,
                })
            })
            .collect::<Result<_>>()?;
        let entities = if self.capabilities.contains(&Capability::Ner) {
            wire.entities
                .iter()
                .map(|e| {
                    Ok(AnnotatedEntity {
                        span: self.span(text, e.start, e.end)?,
                        kind: e.label.clone(),
                    })
                })
                .collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        Ok(Annotation {
            sentences,
            tokens,
            entities,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchLimits {
    pub max_batch: usize,
    /// Characters of premise plus hypothesis.
    pub max_length: usize,
    pub max_concurrency: usize,
}

impl Default for BatchLimits {
    fn default() -> Self {
        BatchLimits {
            max_batch: 32,
            max_length: 2000,
            max_concurrency: 4,
        }
    }
}

#[derive(Deserialize)]
struct WireJudgments {
    judgments: Vec<NliJudgment>,
}

/// NLI service: `{model, pairs: [{premise, hypothesis}]}` in,
/// `{judgments: [{entailment, neutral, contradiction}]}` out.
pub struct HttpNli {
    client: Client,
    model_id: String,
    limits: BatchLimits,
}

impl HttpNli {
    pub fn new(model_id: &str, endpoint: Endpoint, limits: BatchLimits) -> Self {
        HttpNli {
            client: Client::new("nli", endpoint),
            model_id: model_id.to_string(),
            limits,
        }
    }
}

impl NliProvider for HttpNli {
    fn model_id(&self) -> &str {
        &self.model_id
    }

    fn max_batch(&self) -> usize {
        self.limits.max_batch.max(1)
    }

    fn max_length(&self) -> usize {
        self.limits.max_length
    }

    fn max_concurrency(&self) -> usize {
        self.limits.max_concurrency.max(1)
    }

    fn judge(&self, pairs: &[(String, String)]) -> Result<Vec<NliJudgment>> {
        let items: Vec<Value> = pairs
            .iter()
            .map(|(p, h)| json!({ "premise": p, "hypothesis": h }))
            .collect();
        let body = json!({ "model": self.model_id, "pairs": items }).to_string();
        let wire: WireJudgments = self.client.parse(&self.client.post_json(&body)?)?;
        if wire.judgments.len() != pairs.len() {
            return Err(self.client.fail(format!(
                "{} judgments for {} pairs",
                wire.judgments.len(),
                pairs.len()
            )));
        }
        for j in &wire.judgments {
            j.validate()?;
        }
        Ok(wire.judgments)
    }
}

#[derive(Deserialize)]
struct WireEmbeddings {
    embeddings: Vec<Vec<f64>>,
}

/// Embedding service: `{model, texts}` in, `{embeddings}` out.
pub struct HttpEmbedding {
    client: Client,
    model_id: String,
    dimension: usize,
    limits: BatchLimits,
}

impl HttpEmbedding {
    pub fn new(model_id: &str, endpoint: Endpoint, dimension: usize, limits: BatchLimits) -> Self {
        HttpEmbedding {
            client: Client::new("embedding", endpoint),
            model_id: model_id.to_string(),
            dimension,
            limits,
        }
    }
}

impl EmbeddingProvider for HttpEmbedding {
    fn model_id(&self) -> &str {
        &self.model_id
    }

    fn dimension(&self) -> usize {
        self.dimension
    }

    fn max_batch(&self) -> usize {
        self.limits.max_batch.max(1)
    }

    fn max_concurrency(&self) -> usize {
        self.limits.max_concurrency.max(1)
    }

    fn embed(&self, texts: &[String]) -> Result<Vec<Vec<f64>>> {
        let body = json!({ "model": self.model_id, "texts": texts }).to_string();
        let wire: WireEmbeddings = self.client.parse(&self.client.post_json(&body)?)?;
        if wire.embeddings.len() != texts.len() {
            return Err(self.client.fail(format!(
                "{} embeddings for {} texts",
                wire.embeddings.len(),
                texts.len()
            )));
        }
        if let Some(v) = wire.embeddings.iter().find(|v| v.len() != self.dimension) {
            return Err(Error::DimensionMismatch {
                left: self.dimension,
                right: v.len(),
            });
        }
        Ok(wire.embeddings)
    }
}

/// Chat-completions style generation. Request and response bodies are
/// kept verbatim in the output metadata.
pub struct HttpGenerator {
    client: Client,
    model_id: String,
    decoding: DecodingParams,
    max_concurrency: usize,
}

impl HttpGenerator {
    pub fn new(
        model_id: &str,
        endpoint: Endpoint,
        decoding: DecodingParams,
        max_concurrency: usize,
    ) -> Self {
        HttpGenerator {
            client: Client::new(model_id, endpoint),
            model_id: model_id.to_string(),
            decoding,
            max_concurrency,
        }
    }
}

impl GenerationProvider for HttpGenerator {
    fn model_id(&self) -> &str {
        &self.model_id
    }

    fn decoding(&self) -> DecodingParams {
        self.decoding.clone()
    }

    fn max_concurrency(&self) -> usize {
        self.max_concurrency.max(1)
    }

    fn generate(&self, request: &GenerationRequest) -> Result<GenerationOutput> {
        let mut req = json!({
            "model": self.model_id,
            "messages": [{ "role": "user", "content": request.prompt }],
            "temperature": self.decoding.temperature,
            "max_tokens": self.decoding.max_tokens,
        });
        if let Some(seed) = self.decoding.seed {
            req["seed"] = json!(seed);
        }
        let body = req.to_string();
        let response = self.client.post_json(&body)?;
        let parsed: Value = self.client.parse(&response)?;
        let text = parsed
            .pointer("/choices/0/message/content")
            .or_else(|| parsed.pointer("/choices/0/text"))
            .and_then(Value::as_str)
            .ok_or_else(|| self.client.fail("response has no choices[0] content"))?;
        Ok(GenerationOutput {
            text: text.trim().to_string(),
            metadata: json!({ "request": body, "response": response }),
        })
    }
}

/// LanguageTool-compatible `/v2/check` endpoint.
pub struct HttpChecker {
    client: Client,
    id: String,
    offset_unit: OffsetUnit,
    max_concurrency: usize,
}

impl HttpChecker {
    pub fn new(
        id: &str,
        endpoint: Endpoint,
        offset_unit: OffsetUnit,
        max_concurrency: usize,
    ) -> Self {
        HttpChecker {
            client: Client::new(id, endpoint),
            id: id.to_string(),
            offset_unit,
            max_concurrency,
        }
    }
}

impl GrammarChecker for HttpChecker {
    fn id(&self) -> &str {
        &self.id
    }

    fn max_concurrency(&self) -> usize {
        self.max_concurrency.max(1)
    }

    fn check(&self, text: &str, language: &str) -> Result<Vec<CheckerMatch>> {
        let body = self
            .client
            .post_form(&[("text", text), ("language", language)])?;
        parse_check_response(&self.id, text, &body, self.offset_unit)
    }
}
