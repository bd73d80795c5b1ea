//! Radar ("spider") chart of normalized model fingerprints as SVG.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{feature_index, ModelFingerprint};
use crate::error::{Error, Result};

/// Maps a raw feature value onto [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Normalizer {
    Identity,
    Divide {
        by: f64,
    },
    /// `min(x, cap) / cap`
    Capped {
        cap: f64,
    },
    /// `1 - min(x, cap) / cap`
    InverseCapped {
        cap: f64,
    },
}

impl Normalizer {
    pub fn apply(&self, x: f64) -> f64 {
        let v = match *self {
            Normalizer::Identity => x,
            Normalizer::Divide { by } => x / by,
            Normalizer::Capped { cap } => x.min(cap) / cap,
            Normalizer::InverseCapped { cap } => 1.0 - x.min(cap) / cap,
        };
        v.clamp(0.0, 1.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpiderAxis {
    /// Canonical feature name.
    pub feature: String,
    /// Text drawn at the axis tip.
    pub label: String,
    pub normalizer: Normalizer,
}

impl SpiderAxis {
    pub fn new(feature: &str, label: &str, normalizer: Normalizer) -> Self {
        SpiderAxis {
            feature: feature.into(),
            label: label.into(),
            normalizer,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpiderConfig {
    pub axes: Vec<SpiderAxis>,
    pub size: u32,
    pub title: String,
}

impl Default for SpiderConfig {
    fn default() -> Self {
        use Normalizer::*;
        SpiderConfig {
            axes: vec![
                SpiderAxis::new("COR", "COR", Divide { by: 100.0 }),
                SpiderAxis::new("COV", "COV", Divide { by: 100.0 }),
                SpiderAxis::new("SIM", "SIM", Identity),
                SpiderAxis::new("LNG", "LNG", Identity),
                SpiderAxis::new("FBR_norm", "FBR", Identity),
                SpiderAxis::new("COH", "COH", Identity),
                SpiderAxis::new("LEN", "LEN", Capped { cap: 2.0 }),
                SpiderAxis::new("ENT", "ENT", Identity),
                SpiderAxis::new("ASL", "ASL", InverseCapped { cap: 40.0 }),
            ],
            size: 480,
            title: String::new(),
        }
    }
}

impl SpiderConfig {
    pub fn validate(&self) -> Result<()> {
        if self.axes.len() < 3 {
            return Err(Error::InvalidAxes(format!(
                "need at least 3 axes, got {}",
                self.axes.len()
            )));
        }
        for axis in &self.axes {
            if feature_index(&axis.feature).is_none() {
                return Err(Error::InvalidAxes(format!(
                    "unknown feature `{}`",
                    axis.feature
                )));
            }
            let bad = match axis.normalizer {
                Normalizer::Identity => false,
                Normalizer::Divide { by } => by <= 0.0 || !by.is_finite(),
                Normalizer::Capped { cap } | Normalizer::InverseCapped { cap } => {
                    cap <= 0.0 || !cap.is_finite()
                }
            };
            if bad {
                return Err(Error::InvalidAxes(format!(
                    "non-positive scale on `{}`",
                    axis.feature
                )));
            }
        }
        Ok(())
    }

    /// Normalized axis values of a fingerprint's means.
    pub fn values(&self, fp: &ModelFingerprint) -> Vec<f64> {
        self.axes
            .iter()
            .map(|a| {
                let x = fp.mean.get(&a.feature).unwrap_or(0.0);
                a.normalizer.apply(if x.is_finite() { x } else { 0.0 })
            })
            .collect()
    }
}

const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];
const DASHES: [&str; 4] = ["", "6 3", "2 3", "8 3 2 3"];

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Fixed-precision number formatting keeps the output byte-stable.
fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// Renders one polygon per fingerprint, in input order, with a legend.
/// Series beyond the color palette reuse colors with a different dash
/// pattern.
pub fn render_spider(fingerprints: &[ModelFingerprint], config: &SpiderConfig) -> Result<String> {
    config.validate()?;
    let n = config.axes.len();
    let size = config.size.max(200) as f64;
    let legend_h = 18.0 * fingerprints.len() as f64 + 10.0;
    let (cx, cy) = (
        size / 2.0,
        size / 2.0 + if config.title.is_empty() { 0.0 } else { 12.0 },
    );
    let radius = size * 0.36;
    let height = cy + size / 2.0 + legend_h;
    let point = |i: usize, r: f64| {
        let angle = std::f64::consts::TAU * i as f64 / n as f64 - std::f64::consts::FRAC_PI_2;
        (cx + r * angle.cos(), cy + r * angle.sin())
    };

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\" font-size=\"12\">",
        w = num(size),
        h = num(height)
    );
    let _ = writeln!(svg, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    if !config.title.is_empty() {
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"20.00\" text-anchor=\"middle\" font-size=\"14\">{}</text>",
            num(cx),
            escape(&config.title)
        );
    }

    svg.push_str("<g class=\"grid\" fill=\"none\" stroke=\"#cccccc\">\n");
    for ring in 1..=4 {
        let r = radius * ring as f64 / 4.0;
        let pts: Vec<String> = (0..n)
            .map(|i| {
                let (x, y) = point(i, r);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let _ = writeln!(svg, "<polygon points=\"{}\"/>", pts.join(" "));
    }
    for i in 0..n {
        let (x, y) = point(i, radius);
        let _ = writeln!(
            svg,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            num(cx),
            num(cy),
            num(x),
            num(y)
        );
    }
    svg.push_str("</g>\n<g class=\"labels\" text-anchor=\"middle\">\n");
    for (i, axis) in config.axes.iter().enumerate() {
        let (x, y) = point(i, radius + 16.0);
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" dominant-baseline=\"middle\">{}</text>",
            num(x),
            num(y),
            escape(&axis.label)
        );
    }
    svg.push_str("</g>\n<g class=\"series\" fill-opacity=\"0.12\" stroke-width=\"2\">\n");
    for (k, fp) in fingerprints.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let dash = DASHES[(k / COLORS.len()) % DASHES.len()];
        let dash_attr = if dash.is_empty() {
            String::new()
        } else {
            format!(" stroke-dasharray=\"{dash}\"")
        };
        let pts: Vec<String> = config
            .values(fp)
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let (x, y) = point(i, radius * v);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let _ = writeln!(
            svg,
            "<polygon data-series=\"{}\" points=\"{}\" fill=\"{color}\" stroke=\"{color}\"{dash_attr}/>",
            escape(&fp.name),
            pts.join(" ")
        );
    }
    svg.push_str("</g>\n<g class=\"legend\">\n");
    let top = cy + size / 2.0;
    for (k, fp) in fingerprints.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let dash = DASHES[(k / COLORS.len()) % DASHES.len()];
        let y = top + 18.0 * k as f64;
        let dash_attr = if dash.is_empty() {
            String::new()
        } else {
            format!(" stroke-dasharray=\"{dash}\"")
        };
        let _ = writeln!(
            svg,
            "<line x1=\"20.00\" y1=\"{y}\" x2=\"44.00\" y2=\"{y}\" stroke=\"{color}\" stroke-width=\"2\"{dash_attr}/>",
            y = num(y)
        );
        let _ = writeln!(
            svg,
            "<text x=\"50.00\" y=\"{}\" dominant-baseline=\"middle\">{} (n={})</text>",
            num(y),
            escape(&fp.name),
            fp.n
        );
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingerprint::Features;

    fn model(name: &str, value: f64) -> ModelFingerprint {
        ModelFingerprint {
            name: name.into(),
            label: None,
            n: 3,
            mean: Features([value; 23]),
            std: Features::default(),
        }
    }

    #[test]
    fn normalizers() {
        assert_eq!(Normalizer::Divide { by: 100.0 }.apply(55.0), 0.55);
        assert_eq!(Normalizer::Capped { cap: 2.0 }.apply(3.0), 1.0);
        assert_eq!(Normalizer::Capped { cap: 2.0 }.apply(1.0), 0.5);
        assert_eq!(Normalizer::InverseCapped { cap: 40.0 }.apply(10.0), 0.75);
        assert_eq!(Normalizer::InverseCapped { cap: 40.0 }.apply(60.0), 0.0);
        assert_eq!(Normalizer::Identity.apply(1.4), 1.0);
    }

    #[test]
    fn default_axes() {
        let cfg = SpiderConfig::default();
        let labels: Vec<_> = cfg.axes.iter().map(|a| a.label.as_str()).collect();
        assert_eq!(
            labels,
            ["COR", "COV", "SIM", "LNG", "FBR", "COH", "LEN", "ENT", "ASL"]
        );
        cfg.validate().unwrap();
    }

    #[test]
    fn one_polygon_per_series_and_stable() {
        let fps = [model("a/small", 0.5), model("b<&>", 0.8), model("c", 0.2)];
        let cfg = SpiderConfig::default();
        let svg = render_spider(&fps, &cfg).unwrap();
        assert_eq!(svg.matches("data-series=").count(), 3);
        assert!(svg.contains("b&lt;&amp;&gt;"));
        assert_eq!(svg, render_spider(&fps, &cfg).unwrap());
    }

    #[test]
    fn dash_patterns_after_palette() {
        let fps: Vec<_> = (0..10).map(|i| model(&format!("m{i}"), 0.5)).collect();
        let svg = render_spider(&fps, &SpiderConfig::default()).unwrap();
        assert!(svg.contains("stroke-dasharray=\"6 3\""));
    }

    #[test]
    fn invalid_axes() {
        let mut cfg = SpiderConfig::default();
        cfg.axes.truncate(2);
        assert!(matches!(
            render_spider(&[], &cfg),
            Err(Error::InvalidAxes(_))
        ));
        let mut cfg = SpiderConfig::default();
        cfg.axes[0].feature = "NOPE".into();
        assert!(matches!(
            render_spider(&[], &cfg),
            Err(Error::InvalidAxes(_))
        ));
    }
}
