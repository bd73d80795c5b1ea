use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::{ConfigurationLabel, PromptStrategy};

pub const EXCERPT_SLOT: &str = "{excerpt}";
pub const EXAMPLES_SLOT: &str = "{examples}";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FewShotExample {
    pub source: String,
    pub simplification: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptTemplate {
    pub strategy: PromptStrategy,
    pub body: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub few_shot_examples: Vec<FewShotExample>,
}

impl PromptTemplate {
    pub fn new(strategy: PromptStrategy, body: impl Into<String>) -> Result<Self> {
        let t = PromptTemplate {
            strategy,
            body: body.into(),
            few_shot_examples: Vec::new(),
        };
        t.validate()?;
        Ok(t)
    }

    pub fn with_examples(mut self, examples: Vec<FewShotExample>) -> Result<Self> {
        self.few_shot_examples = examples;
        self.validate()?;
        Ok(self)
    }

    /// The shipped template for a strategy.
    pub fn builtin(strategy: PromptStrategy) -> Self {
        let body = match strategy {
            PromptStrategy::Plain => include_str!("../../data/templates/plain.txt"),
            PromptStrategy::Target => include_str!("../../data/templates/target.txt"),
            PromptStrategy::Rules => include_str!("../../data/templates/rules.txt"),
            PromptStrategy::Content => include_str!("../../data/templates/content.txt"),
        };
        PromptTemplate::new(strategy, body).expect("shipped template is valid")
    }

    pub fn load(strategy: PromptStrategy, path: &Path) -> Result<Self> {
        PromptTemplate::new(strategy, std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let name = self.strategy.as_str().to_string();
        if self.body.matches(EXCERPT_SLOT).count() != 1 {
            return Err(Error::MissingSlot(name));
        }
        match self.body.matches(EXAMPLES_SLOT).count() {
            0 => {}
            1 if self.body.find(EXAMPLES_SLOT) < self.body.find(EXCERPT_SLOT) => {}
            _ => {
                return Err(Error::ConfigInvalid(format!(
                    "template `{name}`: at most one {EXAMPLES_SLOT} slot, placed before the excerpt"
                )))
            }
        }
        if !self.few_shot_examples.is_empty() && !self.strategy.has_few_shot_variant() {
            return Err(Error::ConfigInvalid(format!(
                "strategy `{name}` takes no few-shot examples"
            )));
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct ExampleFile {
    examples: Vec<FewShotExample>,
}

pub fn builtin_examples() -> Vec<FewShotExample> {
    parse_examples(include_str!("../../data/few_shot.toml")).expect("shipped examples are valid")
}

pub fn parse_examples(text: &str) -> Result<Vec<FewShotExample>> {
    let file: ExampleFile =
        toml::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
    Ok(file.examples)
}

pub fn load_examples(path: &Path) -> Result<Vec<FewShotExample>> {
    parse_examples(&std::fs::read_to_string(path)?)
}

fn render_examples(examples: &[FewShotExample]) -> String {
    let mut out = String::new();
    for (i, ex) in examples.iter().enumerate() {
        out.push_str(&format!(
            "Beispiel {}:\nOriginal: {}\nVereinfachung: {}\n\n",
            i + 1,
            ex.source.trim(),
            ex.simplification.trim()
        ));
    }
    out
}

/// Substitutes the excerpt and, before it, any few-shot examples. Without
/// an examples slot the examples are prepended to the body.
pub fn render_prompt(template: &PromptTemplate, excerpt: &str) -> Result<String> {
    template.validate()?;
    let examples = render_examples(&template.few_shot_examples);
    let body = if template.body.contains(EXAMPLES_SLOT) {
        template.body.replacen(EXAMPLES_SLOT, &examples, 1)
    } else {
        format!("{examples}{}", template.body)
    };
    // Replace only the slot position computed before substitution, so
    // braces inside examples are never mistaken for the slot.
    let at = body.rfind(EXCERPT_SLOT).expect("validated slot");
    Ok(format!(
        "{}{}{}",
        &body[..at],
        excerpt.trim(),
        &body[at + EXCERPT_SLOT.len()..]
    ))
}

/// Templates per strategy plus the few-shot pool.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateSet {
    pub templates: Vec<PromptTemplate>,
    pub examples: Vec<FewShotExample>,
}

impl Default for TemplateSet {
    fn default() -> Self {
        TemplateSet {
            templates: PromptStrategy::ALL
                .iter()
                .map(|s| PromptTemplate::builtin(*s))
                .collect(),
            examples: builtin_examples(),
        }
    }
}

impl TemplateSet {
    /// The template a label is rendered with: its strategy's body, with the
    /// few-shot pool attached when the label asks for it.
    pub fn for_label(&self, label: &ConfigurationLabel) -> Result<PromptTemplate> {
        label.validate()?;
        let base = self
            .templates
            .iter()
            .find(|t| t.strategy == label.strategy)
            .ok_or_else(|| {
                Error::ConfigInvalid(format!("no template for strategy `{}`", label.strategy))
            })?;
        let mut t = PromptTemplate {
            few_shot_examples: Vec::new(),
            ..base.clone()
        };
        if label.few_shot == Some(true) {
            if self.examples.is_empty() {
                return Err(Error::ConfigInvalid(format!(
                    "label `{label}` needs few-shot examples"
                )));
            }
            t.few_shot_examples = self.examples.clone();
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXCERPT: &str = "Die Stadt liegt am Rhein.";

    #[test]
    fn excerpt_appears_once() {
        for s in PromptStrategy::ALL {
            let p = render_prompt(&PromptTemplate::builtin(s), EXCERPT).unwrap();
            assert_eq!(p.matches(EXCERPT).count(), 1, "{s}");
            assert!(!p.contains(EXCERPT_SLOT) && !p.contains(EXAMPLES_SLOT));
        }
    }

    #[test]
    fn examples_precede_excerpt_in_order() {
        let set = TemplateSet::default();
        let label = ConfigurationLabel::new(
            PromptStrategy::Rules,
            crate::label::ModelSize::B1,
            Some(true),
        )
        .unwrap();
        let t = set.for_label(&label).unwrap();
        assert_eq!(t.few_shot_examples.len(), 2);
        let p = render_prompt(&t, EXCERPT).unwrap();
        let first = p.find(&t.few_shot_examples[0].source).unwrap();
        let second = p.find(&t.few_shot_examples[1].source).unwrap();
        let excerpt = p.find(EXCERPT).unwrap();
        assert!(first < second && second < excerpt);
        assert_eq!(p, render_prompt(&t, EXCERPT).unwrap());
    }

    #[test]
    fn slots_are_checked() {
        assert!(matches!(
            PromptTemplate::new(PromptStrategy::Plain, "no slot"),
            Err(Error::MissingSlot(_))
        ));
        assert!(matches!(
            PromptTemplate::new(PromptStrategy::Plain, "{excerpt} {excerpt}"),
            Err(Error::MissingSlot(_))
        ));
        assert!(PromptTemplate::new(PromptStrategy::Plain, "{excerpt} {examples}").is_err());
        let plain = PromptTemplate::builtin(PromptStrategy::Plain);
        assert!(plain.with_examples(builtin_examples()).is_err());
    }

    #[test]
    fn examples_without_slot_are_prepended() {
        let t = PromptTemplate::new(PromptStrategy::Content, "Text: {excerpt}")
            .unwrap()
            .with_examples(vec![FewShotExample {
                source: "A {excerpt} B".into(),
                simplification: "C".into(),
            }])
            .unwrap();
        let p = render_prompt(&t, "X").unwrap();
        assert!(p.starts_with("Beispiel 1:"));
        assert!(p.ends_with("Text: X"));
        assert!(p.contains("A {excerpt} B"));
    }
}
