//! Generation configuration labels.
//!
//! Four prompt strategies crossed with three model sizes. Only the `rules`
//! and `content` strategies have a few-shot variant, which gives
//! `(2 + 2 * 2) * 3 = 18` configurations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PromptStrategy {
    Plain,
    Target,
    Rules,
    Content,
}

impl PromptStrategy {
    pub const ALL: [PromptStrategy; 4] = [
        PromptStrategy::Plain,
        PromptStrategy::Target,
        PromptStrategy::Rules,
        PromptStrategy::Content,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PromptStrategy::Plain => "plain",
            PromptStrategy::Target => "target",
            PromptStrategy::Rules => "rules",
            PromptStrategy::Content => "content",
        }
    }

    /// Whether this strategy is generated with and without few-shot examples.
    pub fn has_few_shot_variant(self) -> bool {
        matches!(self, PromptStrategy::Rules | PromptStrategy::Content)
    }
}

impl fmt::Display for PromptStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PromptStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "plain" => Ok(PromptStrategy::Plain),
            "target" => Ok(PromptStrategy::Target),
            "rules" | "correctness" => Ok(PromptStrategy::Rules),
            "content" | "coverage" => Ok(PromptStrategy::Content),
            other => Err(Error::ConfigInvalid(format!(
                "unknown prompt strategy `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelSize {
    #[serde(rename = "1B")]
    B1,
    #[serde(rename = "4B")]
    B4,
    #[serde(rename = "12B")]
    B12,
}

impl ModelSize {
    pub const ALL: [ModelSize; 3] = [ModelSize::B1, ModelSize::B4, ModelSize::B12];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelSize::B1 => "1B",
            ModelSize::B4 => "4B",
            ModelSize::B12 => "12B",
        }
    }
}

impl fmt::Display for ModelSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelSize {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "1B" => Ok(ModelSize::B1),
            "4B" => Ok(ModelSize::B4),
            "12B" => Ok(ModelSize::B12),
            other => Err(Error::ConfigInvalid(format!(
                "unknown model size `{other}`"
            ))),
        }
    }
}

/// Identifies which of the 18 generation configurations produced a text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConfigurationLabel {
    pub strategy: PromptStrategy,
    pub size: ModelSize,
    /// `None` for strategies without a few-shot variant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub few_shot: Option<bool>,
}

impl ConfigurationLabel {
    pub fn new(strategy: PromptStrategy, size: ModelSize, few_shot: Option<bool>) -> Result<Self> {
        let label = ConfigurationLabel {
            strategy,
            size,
            few_shot,
        };
        label.validate()?;
        Ok(label)
    }

    pub fn validate(&self) -> Result<()> {
        match (self.strategy.has_few_shot_variant(), self.few_shot) {
            (true, Some(_)) | (false, None) => Ok(()),
            (true, None) => Err(Error::ConfigInvalid(format!(
                "strategy `{}` requires an explicit few-shot flag",
                self.strategy
            ))),
            (false, Some(_)) => Err(Error::ConfigInvalid(format!(
                "strategy `{}` has no few-shot variant",
                self.strategy
            ))),
        }
    }

    /// All 18 valid labels in canonical order (strategy, few-shot, size).
    pub fn all() -> Vec<ConfigurationLabel> {
        let mut out = Vec::with_capacity(18);
        for strategy in PromptStrategy::ALL {
            let variants: &[Option<bool>] = if strategy.has_few_shot_variant() {
                &[Some(false), Some(true)]
            } else {
                &[None]
            };
            for &few_shot in variants {
                for size in ModelSize::ALL {
                    out.push(ConfigurationLabel {
                        strategy,
                        size,
                        few_shot,
                    });
                }
            }
        }
        out
    }

    /// The prompt variant part of the label, e.g. `rules-fs` or `plain`.
    pub fn variant(&self) -> String {
        match self.few_shot {
            None => self.strategy.as_str().to_string(),
            Some(true) => format!("{}-fs", self.strategy),
            Some(false) => format!("{}-nofs", self.strategy),
        }
    }
}

impl fmt::Display for ConfigurationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.variant(), self.size)
    }
}

impl FromStr for ConfigurationLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (variant, size) = s
            .split_once('/')
            .ok_or_else(|| Error::ConfigInvalid(format!("malformed label `{s}`")))?;
        let (strategy, few_shot) = match variant.rsplit_once('-') {
            Some((strategy, "fs")) => (strategy, Some(true)),
            Some((strategy, "nofs")) => (strategy, Some(false)),
            _ => (variant, None),
        };
        ConfigurationLabel::new(strategy.parse()?, size.parse()?, few_shot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn eighteen_unique_labels() {
        let all = ConfigurationLabel::all();
        assert_eq!(all.len(), 18);
        let unique: HashSet<_> = all.iter().collect();
        assert_eq!(unique.len(), 18);
        assert!(all.iter().all(|l| l.validate().is_ok()));
    }

    #[test]
    fn few_shot_only_for_rules_and_content() {
        assert!(ConfigurationLabel::new(PromptStrategy::Plain, ModelSize::B1, Some(true)).is_err());
        assert!(ConfigurationLabel::new(PromptStrategy::Rules, ModelSize::B1, None).is_err());
        assert!(
            ConfigurationLabel::new(PromptStrategy::Content, ModelSize::B4, Some(false)).is_ok()
        );
    }

    #[test]
    fn display_parse_round_trip() {
        for label in ConfigurationLabel::all() {
            let parsed: ConfigurationLabel = label.to_string().parse().unwrap();
            assert_eq!(parsed, label);
        }
        assert_eq!(
            "rules-fs/12B"
                .parse::<ConfigurationLabel>()
                .unwrap()
                .to_string(),
            "rules-fs/12B"
        );
    }
}
