//! Markdown result tables and the feature-importance matrix.

use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{AblationResult, MeanStd, StudyResult};
use crate::artifact::ArtifactHeader;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    pub name: String,
    pub full: StudyResult,
    pub simple: Option<StudyResult>,
    pub random: Option<StudyResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Section {
    Study {
        title: String,
        rows: Vec<StudyRow>,
    },
    Ablation {
        title: String,
        dropped: String,
        rows: Vec<(String, AblationResult)>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StudyReport {
    pub header: Option<ArtifactHeader>,
    pub sections: Vec<Section>,
    /// Digits after the decimal point.
    pub decimals: usize,
}

fn pm(m: &MeanStd, d: usize) -> String {
    format!("{:.d$} ± {:.d$}", m.mean, m.std)
}

fn pair(r: &StudyResult, d: usize) -> String {
    format!("{} / {}", pm(&r.accuracy, d), pm(&r.f1, d))
}

fn cell(text: &str) -> String {
    text.replace('|', "\\|")
}

impl StudyReport {
    pub fn new(header: Option<ArtifactHeader>) -> Self {
        StudyReport {
            header,
            sections: Vec::new(),
            decimals: 1,
        }
    }

    pub fn to_markdown(&self) -> String {
        let d = self.decimals;
        let mut out = String::new();
        if let Some(h) = &self.header {
            let _ = writeln!(out, "<!-- {} -->\n", h.comment());
        }
        for (i, section) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            match section {
                Section::Study { title, rows } => {
                    let _ = writeln!(out, "## {}\n", cell(title));
                    out.push_str("| Target Label | Accuracy (± std) | F1-Score (± std) | Simple Baseline (Acc/F1 ± std) | Random Baseline (Acc/F1 ± std) |\n");
                    out.push_str("|:--|:-:|:-:|:-:|:-:|\n");
                    for row in rows {
                        let opt = |r: &Option<StudyResult>| {
                            r.as_ref()
                                .map_or("n/a".to_string(), |r| format!("({})", pair(r, d)))
                        };
                        let _ = writeln!(
                            out,
                            "| {} | {} | {} | {} | {} |",
                            cell(&row.name),
                            pm(&row.full.accuracy, d),
                            pm(&row.full.f1, d),
                            opt(&row.simple),
                            opt(&row.random)
                        );
                    }
                }
                Section::Ablation {
                    title,
                    dropped,
                    rows,
                } => {
                    let _ = writeln!(out, "## {}\n", cell(title));
                    let _ = writeln!(
                        out,
                        "| Target Label | Full Feature Set (Acc/F1 ± std) | Without {} (Acc/F1 ± std) |",
                        cell(dropped)
                    );
                    out.push_str("|:--|:-:|:-:|\n");
                    for (name, a) in rows {
                        let _ = writeln!(
                            out,
                            "| {} | {} | {} |",
                            cell(name),
                            pair(&a.with, d),
                            pair(&a.without, d)
                        );
                    }
                }
            }
        }
        out
    }

    /// Tasks × features matrix of mean absolute standardized weights from
    /// the full-feature models.
    pub fn write_importance_csv(&self, mut w: impl Write) -> Result<()> {
        let rows: Vec<&StudyRow> = self
            .sections
            .iter()
            .flat_map(|s| match s {
                Section::Study { rows, .. } => rows.iter().collect(),
                Section::Ablation { .. } => Vec::new(),
            })
            .collect();
        if let Some(h) = &self.header {
            writeln!(w, "# {}", h.comment())?;
        }
        let mut csv = csv::Writer::from_writer(w);
        let features: Vec<String> = rows
            .first()
            .map(|r| r.full.importance.iter().map(|(f, _)| f.clone()).collect())
            .unwrap_or_default();
        let to_err = |e: csv::Error| Error::Format {
            line: 0,
            message: e.to_string(),
        };
        let mut head = vec!["task".to_string()];
        head.extend(features.iter().cloned());
        csv.write_record(&head).map_err(to_err)?;
        for row in rows {
            let mut rec = vec![row.name.clone()];
            for f in &features {
                rec.push(
                    row.full
                        .importance_of(f)
                        .map_or(String::new(), |v| format!("{v:.6}")),
                );
            }
            csv.write_record(&rec).map_err(to_err)?;
        }
        csv.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn result(acc: f64, f1: f64) -> StudyResult {
        StudyResult {
            task: "t".into(),
            accuracy: MeanStd {
                mean: acc,
                std: 0.7,
            },
            f1: MeanStd {
                mean: f1,
                std: 1.94,
            },
            folds: 5,
            repeats: 5,
            rows: 100,
            positives: 17,
            importance: vec![("COR".into(), 0.5), ("ASL".into(), 1.25)],
            fold_hashes: vec![],
        }
    }

    #[test]
    fn table_layout() {
        let mut r = StudyReport::new(Some(ArtifactHeader::new("abc", 1)));
        r.sections.push(Section::Study {
            title: "Strategies".into(),
            rows: vec![StudyRow {
                name: "Plain".into(),
                full: result(84.44, 39.06),
                simple: Some(result(83.7, 35.2)),
                random: Some(result(71.9, 16.9)),
            }],
        });
        r.sections.push(Section::Ablation {
            title: "Ablation".into(),
            dropped: "ASL".into(),
            rows: vec![(
                "Target".into(),
                AblationResult {
                    dropped: "ASL".into(),
                    with: result(86.6, 48.3),
                    without: result(84.1, 24.9),
                },
            )],
        });
        let md = r.to_markdown();
        assert!(md.starts_with("<!-- simprof "));
        assert!(md.contains("| Plain | 84.4 ± 0.7 | 39.1 ± 1.9 | (83.7 ± 0.7 / 35.2 ± 1.9) | (71.9 ± 0.7 / 16.9 ± 1.9) |"));
        assert!(md.contains("| Target | 86.6 ± 0.7 / 48.3 ± 1.9 | 84.1 ± 0.7 / 24.9 ± 1.9 |"));
        assert!(md.contains("Without ASL"));

        let mut buf = Vec::new();
        r.write_importance_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "task,COR,ASL");
        assert_eq!(lines[2], "Plain,0.500000,1.250000");
    }
}
