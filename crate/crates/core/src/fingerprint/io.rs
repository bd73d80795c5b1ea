//! Fingerprint JSONL files and the feature matrix CSV.

use std::io::{BufRead, BufReader, Read, Write};

use crate::artifact::{read_jsonl, write_jsonl, ArtifactHeader};
use crate::error::{Error, Result};
use crate::label::ConfigurationLabel;

use super::{Features, Fingerprint, AUX_NAMES, FEATURE_COUNT, FEATURE_NAMES};

pub fn write_fingerprints(
    w: impl Write,
    header: Option<&ArtifactHeader>,
    fps: &[Fingerprint],
) -> Result<()> {
    write_jsonl(w, header, fps)
}

pub fn read_fingerprints(r: impl BufRead) -> Result<(Option<ArtifactHeader>, Vec<Fingerprint>)> {
    read_jsonl(r)
}

const LABEL_COLUMNS: [&str; 4] = ["pair_id", "strategy", "size", "few_shot"];

/// One row of the feature matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRow {
    pub pair_id: String,
    pub label: Option<ConfigurationLabel>,
    pub features: Features,
    /// Values for [`AUX_NAMES`].
    pub aux: [f64; 3],
}

impl From<&Fingerprint> for MatrixRow {
    fn from(fp: &Fingerprint) -> Self {
        MatrixRow {
            pair_id: fp.pair_id.clone(),
            label: fp.label,
            features: fp.features,
            aux: fp.length_stats.as_array(),
        }
    }
}

/// Rows of pairs with their 23 features and three auxiliary length columns.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FeatureMatrix {
    pub header: Option<ArtifactHeader>,
    pub rows: Vec<MatrixRow>,
}

impl FeatureMatrix {
    pub fn from_fingerprints(fps: &[Fingerprint], header: Option<ArtifactHeader>) -> Self {
        FeatureMatrix {
            header,
            rows: fps.iter().map(MatrixRow::from).collect(),
        }
    }

    pub fn column_names() -> Vec<&'static str> {
        LABEL_COLUMNS
            .iter()
            .chain(FEATURE_NAMES.iter())
            .chain(AUX_NAMES.iter())
            .copied()
            .collect()
    }

    /// Values of a feature or auxiliary column.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        if let Some(i) = super::feature_index(name) {
            return Some(self.rows.iter().map(|r| r.features.0[i]).collect());
        }
        let i = AUX_NAMES.iter().position(|n| *n == name)?;
        Some(self.rows.iter().map(|r| r.aux[i]).collect())
    }

    /// CSV with a `# ` provenance comment line, then the header row.
    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        if let Some(h) = &self.header {
            writeln!(w, "# {}", h.comment())?;
        }
        let mut csv = csv::Writer::from_writer(w);
        csv.write_record(Self::column_names()).map_err(csv_err)?;
        for row in &self.rows {
            let mut record = vec![row.pair_id.clone()];
            match row.label {
                Some(l) => {
                    record.push(l.strategy.to_string());
                    record.push(l.size.to_string());
                    record.push(l.few_shot.map_or(String::new(), |b| b.to_string()));
                }
                None => record.extend([String::new(), String::new(), String::new()]),
            }
            record.extend(row.features.0.iter().map(|v| v.to_string()));
            record.extend(row.aux.iter().map(|v| v.to_string()));
            csv.write_record(&record).map_err(csv_err)?;
        }
        csv.flush()?;
        Ok(())
    }

    pub fn read_csv(r: impl Read) -> Result<Self> {
        let mut reader = BufReader::new(r);
        let mut header = None;
        let mut first = String::new();
        reader.read_line(&mut first)?;
        let rest: Box<dyn Read> = match first.strip_prefix("# ") {
            Some(comment) => {
                header = ArtifactHeader::parse_comment(comment.trim());
                Box::new(reader)
            }
            None => Box::new(std::io::Cursor::new(first.into_bytes()).chain(reader)),
        };
        let mut csv = csv::Reader::from_reader(rest);
        let names: Vec<String> = csv
            .headers()
            .map_err(csv_err)?
            .iter()
            .map(str::to_string)
            .collect();
        let expected = Self::column_names();
        if names != expected {
            return Err(Error::Format {
                line: 1,
                message: "unexpected feature matrix columns".into(),
            });
        }
        let mut rows = Vec::new();
        for (n, record) in csv.records().enumerate() {
            let line = n + 2;
            let record = record.map_err(csv_err)?;
            let bad = |message: String| Error::Format { line, message };
            let label = if record[1].is_empty() {
                None
            } else {
                let few_shot = match &record[3] {
                    "" => None,
                    s => Some(s.parse::<bool>().map_err(|e| bad(e.to_string()))?),
                };
                Some(
                    ConfigurationLabel::new(record[1].parse()?, record[2].parse()?, few_shot)
                        .map_err(|e| bad(e.to_string()))?,
                )
            };
            let mut values = Vec::with_capacity(FEATURE_COUNT + 3);
            for field in record.iter().skip(4) {
                values.push(
                    field
                        .parse::<f64>()
                        .map_err(|e| bad(format!("`{field}`: {e}")))?,
                );
            }
            let mut features = [0.0; FEATURE_COUNT];
            features.copy_from_slice(&values[..FEATURE_COUNT]);
            rows.push(MatrixRow {
                pair_id: record[0].to_string(),
                label,
                features: Features(features),
                aux: [
                    values[FEATURE_COUNT],
                    values[FEATURE_COUNT + 1],
                    values[FEATURE_COUNT + 2],
                ],
            });
        }
        Ok(FeatureMatrix { header, rows })
    }
}

fn csv_err(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::Format {
        line,
        message: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::{ModelSize, PromptStrategy};

    #[test]
    fn csv_round_trip() {
        let mut f = Features::default();
        for (i, v) in f.0.iter_mut().enumerate() {
            *v = i as f64 / 7.0;
        }
        let m = FeatureMatrix {
            header: Some(ArtifactHeader::new("h", 3)),
            rows: vec![
                MatrixRow {
                    pair_id: "a,1".into(),
                    label: Some(
                        ConfigurationLabel::new(PromptStrategy::Rules, ModelSize::B4, Some(true))
                            .unwrap(),
                    ),
                    features: f,
                    aux: [10.0, 2.0, 4.5],
                },
                MatrixRow {
                    pair_id: "b".into(),
                    label: None,
                    features: Features::default(),
                    aux: [0.0; 3],
                },
            ],
        };
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# simprof "));
        assert_eq!(text.lines().nth(1).unwrap().split(',').count(), 4 + 23 + 3);
        assert_eq!(FeatureMatrix::read_csv(&buf[..]).unwrap(), m);
        let plain = text.lines().skip(1).collect::<Vec<_>>().join("\n");
        let back = FeatureMatrix::read_csv(plain.as_bytes()).unwrap();
        assert_eq!(back.header, None);
        assert_eq!(back.rows, m.rows);
        assert_eq!(m.column("aux_char_count").unwrap(), vec![10.0, 0.0]);
    }
}
