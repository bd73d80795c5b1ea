//! Distinguishability study: can a linear classifier tell configurations
//! apart from their fingerprints?

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fingerprint::io::FeatureMatrix;
use crate::fingerprint::{feature_index, AUX_NAMES, FEATURE_NAMES};
use crate::label::{ConfigurationLabel, ModelSize, PromptStrategy};

mod cv;
mod model;
pub mod report;
pub mod synthetic;

pub use cv::{
    ablate, accuracy, cross_validate, expected_random_accuracy, expected_random_f1, f1_score,
    random_baseline, simple_baseline, stratified_folds, AblationResult, CvConfig, MeanStd,
    StudyResult,
};
pub use model::{train_linear, LinearModel, Standardizer};

/// The six length features of the simple baseline.
pub const SIMPLE_FEATURES: [&str; 6] = [
    "aux_char_count",
    "word_count",
    "aux_sentence_count",
    "ASL",
    "aux_avg_word_length",
    "LEN",
];

/// Which rows are positive, and which rows take part at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    Strategy {
        strategy: PromptStrategy,
    },
    Size {
        size: ModelSize,
    },
    /// Rows of one strategy; positive when generated with few-shot examples.
    FewShot {
        strategy: PromptStrategy,
    },
    /// Rows of two sizes; positive for the first.
    SizePair {
        positive: ModelSize,
        negative: ModelSize,
    },
}

impl Target {
    /// `None` when the row is outside the task.
    pub fn classify(&self, label: &ConfigurationLabel) -> Option<bool> {
        match *self {
            Target::Strategy { strategy } => Some(label.strategy == strategy),
            Target::Size { size } => Some(label.size == size),
            Target::FewShot { strategy } => {
                (label.strategy == strategy).then(|| label.few_shot == Some(true))
            }
            Target::SizePair { positive, negative } => {
                if label.size == positive {
                    Some(true)
                } else if label.size == negative {
                    Some(false)
                } else {
                    None
                }
            }
        }
    }

    /// Short row name in the style of the result tables.
    pub fn display_name(&self) -> String {
        fn title(s: &str) -> String {
            let mut c = s.chars();
            c.next()
                .map_or(String::new(), |f| f.to_uppercase().chain(c).collect())
        }
        match self {
            Target::Strategy { strategy } => title(strategy.as_str()),
            Target::Size { size } => size.to_string(),
            Target::FewShot { strategy } => title(strategy.as_str()),
            Target::SizePair { positive, negative } => format!("{positive} vs. {negative}"),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Strategy { strategy } => write!(f, "strategy={strategy}"),
            Target::Size { size } => write!(f, "size={size}"),
            Target::FewShot { strategy } => write!(f, "few_shot={strategy}"),
            Target::SizePair { positive, negative } => write!(f, "size_pair={positive},{negative}"),
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    /// `strategy=target`, `size=1B`, `few_shot=rules`, `size_pair=1B,4B`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) = s
            .split_once('=')
            .ok_or_else(|| Error::ConfigInvalid(format!("malformed task `{s}`")))?;
        match kind.trim() {
            "strategy" => Ok(Target::Strategy {
                strategy: value.parse()?,
            }),
            "size" => Ok(Target::Size {
                size: value.parse()?,
            }),
            "few_shot" => {
                let strategy: PromptStrategy = value.parse()?;
                if !strategy.has_few_shot_variant() {
                    return Err(Error::ConfigInvalid(format!(
                        "strategy `{strategy}` has no few-shot variant"
                    )));
                }
                Ok(Target::FewShot { strategy })
            }
            "size_pair" => {
                let (a, b) = value.split_once(',').ok_or_else(|| {
                    Error::ConfigInvalid(format!("malformed size pair `{value}`"))
                })?;
                let (positive, negative): (ModelSize, ModelSize) = (a.parse()?, b.parse()?);
                if positive == negative {
                    return Err(Error::ConfigInvalid(
                        "size pair needs two different sizes".into(),
                    ));
                }
                Ok(Target::SizePair { positive, negative })
            }
            other => Err(Error::ConfigInvalid(format!("unknown task kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskSpec {
    pub name: String,
    pub target: Target,
    /// Column names: canonical features or `aux_` length columns.
    pub features: Vec<String>,
}

impl TaskSpec {
    /// All 23 features.
    pub fn new(target: Target) -> Self {
        TaskSpec {
            name: target.display_name(),
            target,
            features: FEATURE_NAMES.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn simple(&self) -> TaskSpec {
        TaskSpec {
            features: SIMPLE_FEATURES.iter().map(|s| s.to_string()).collect(),
            ..self.clone()
        }
    }

    pub fn without(&self, feature: &str) -> Result<TaskSpec> {
        if !is_column(feature) {
            return Err(Error::UnknownFeature(feature.to_string()));
        }
        Ok(TaskSpec {
            features: self
                .features
                .iter()
                .filter(|f| *f != feature)
                .cloned()
                .collect(),
            ..self.clone()
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.features.is_empty() {
            return Err(Error::ConfigInvalid(format!(
                "task `{}` has no features",
                self.name
            )));
        }
        for f in &self.features {
            if !is_column(f) {
                return Err(Error::UnknownFeature(f.clone()));
            }
        }
        Ok(())
    }
}

fn is_column(name: &str) -> bool {
    feature_index(name).is_some() || AUX_NAMES.contains(&name)
}

/// Named groups of tasks, one result table each.
pub fn standard_suite() -> Vec<(String, Vec<Target>)> {
    use ModelSize::{B1, B12, B4};
    use PromptStrategy::{Content, Rules};
    vec![
        (
            "Prompting strategies and model sizes".into(),
            PromptStrategy::ALL
                .iter()
                .map(|&strategy| Target::Strategy { strategy })
                .chain(ModelSize::ALL.iter().map(|&size| Target::Size { size }))
                .collect(),
        ),
        (
            "Pairwise model sizes".into(),
            vec![
                Target::SizePair {
                    positive: B1,
                    negative: B4,
                },
                Target::SizePair {
                    positive: B4,
                    negative: B12,
                },
                Target::SizePair {
                    positive: B1,
                    negative: B12,
                },
            ],
        ),
        (
            "Few-shot vs. no few-shot".into(),
            vec![
                Target::FewShot { strategy: Rules },
                Target::FewShot { strategy: Content },
            ],
        ),
    ]
}

/// Feature rows and binary labels for one task.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub feature_names: Vec<String>,
    pub x: Vec<Vec<f64>>,
    pub y: Vec<bool>,
    pub task: String,
}

impl Dataset {
    pub fn new(
        task: impl Into<String>,
        feature_names: Vec<String>,
        x: Vec<Vec<f64>>,
        y: Vec<bool>,
    ) -> Result<Self> {
        let task = task.into();
        if x.len() != y.len() {
            return Err(Error::ConfigInvalid(format!(
                "{} rows but {} labels",
                x.len(),
                y.len()
            )));
        }
        if x.iter().any(|r| r.len() != feature_names.len()) {
            return Err(Error::ConfigInvalid(
                "row width differs from feature count".into(),
            ));
        }
        let ds = Dataset {
            feature_names,
            x,
            y,
            task,
        };
        ds.check_classes(1)?;
        Ok(ds)
    }

    pub fn positives(&self) -> usize {
        self.y.iter().filter(|&&b| b).count()
    }

    pub fn prior(&self) -> f64 {
        self.positives() as f64 / self.y.len() as f64
    }

    pub fn check_classes(&self, min: usize) -> Result<()> {
        let pos = self.positives();
        let neg = self.y.len() - pos;
        if pos < min || neg < min {
            return Err(Error::DegenerateTask {
                task: self.task.clone(),
                reason: format!(
                    "{pos} positive and {neg} negative rows, need at least {min} of each"
                ),
            });
        }
        Ok(())
    }

    /// Same rows without one column.
    pub fn without(&self, feature: &str) -> Result<Dataset> {
        let i = self
            .feature_names
            .iter()
            .position(|f| f == feature)
            .ok_or_else(|| Error::UnknownFeature(feature.to_string()))?;
        let mut out = self.clone();
        out.feature_names.remove(i);
        for row in &mut out.x {
            row.remove(i);
        }
        Ok(out)
    }
}

pub fn build_dataset(matrix: &FeatureMatrix, task: &TaskSpec) -> Result<Dataset> {
    task.validate()?;
    let columns: Vec<Vec<f64>> = task
        .features
        .iter()
        .map(|f| {
            matrix
                .column(f)
                .ok_or_else(|| Error::UnknownFeature(f.clone()))
        })
        .collect::<Result<_>>()?;
    let mut x = Vec::new();
    let mut y = Vec::new();
    for (i, row) in matrix.rows.iter().enumerate() {
        let label = row.label.ok_or_else(|| {
            Error::ConfigInvalid(format!("row `{}` has no configuration label", row.pair_id))
        })?;
        if let Some(positive) = task.target.classify(&label) {
            x.push(columns.iter().map(|c| c[i]).collect());
            y.push(positive);
        }
    }
    Dataset::new(task.name.clone(), task.features.clone(), x, y)
}
