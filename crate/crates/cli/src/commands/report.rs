//! Aggregated fingerprints per group and their spider chart.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use simprof::artifact::svg_with_comment;
use simprof::fingerprint::io::read_fingerprints;
use simprof::fingerprint::spider::render_spider;
use simprof::fingerprint::{aggregate_named, Fingerprint, ModelFingerprint};
use simprof::label::{ConfigurationLabel, ModelSize, PromptStrategy};
use simprof::{Error, Result};

use super::fixed;
use crate::{open_input, Context};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupBy {
    Strategy,
    Size,
    FewShot,
    Label,
}

impl GroupBy {
    fn name(self) -> &'static str {
        match self {
            GroupBy::Strategy => "strategy",
            GroupBy::Size => "size",
            GroupBy::FewShot => "few_shot",
            GroupBy::Label => "label",
        }
    }

    /// Sort key and display name of a label's group.
    fn key(self, l: &ConfigurationLabel) -> (usize, String) {
        let pos = |found: Option<usize>| found.unwrap_or(usize::MAX);
        match self {
            GroupBy::Strategy => (
                pos(PromptStrategy::ALL.iter().position(|s| *s == l.strategy)),
                l.strategy.to_string(),
            ),
            GroupBy::Size => (
                pos(ModelSize::ALL.iter().position(|s| *s == l.size)),
                l.size.to_string(),
            ),
            // Strategies without a few-shot variant count as zero-shot.
            GroupBy::FewShot => {
                let fs = l.few_shot == Some(true);
                (
                    usize::from(fs),
                    if fs { "few-shot" } else { "zero-shot" }.into(),
                )
            }
            GroupBy::Label => (
                pos(ConfigurationLabel::all().iter().position(|x| x == l)),
                l.to_string(),
            ),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    /// Fingerprint file written by `profile`.
    #[arg(long)]
    pub fingerprints: PathBuf,
    #[arg(long, value_enum, default_value = "strategy")]
    pub group_by: GroupBy,
}

pub fn spider_file(group: &str) -> String {
    format!("spider-{group}.svg")
}

pub fn summary_file(group: &str) -> String {
    format!("summary-{group}.md")
}

pub fn run(ctx: &Context, args: &ReportArgs) -> Result<()> {
    let (_, fps) = read_fingerprints(open_input(&args.fingerprints)?)?;
    let unlabeled = fps.iter().filter(|f| f.label.is_none()).count();
    if unlabeled > 0 {
        log::warn!("skipping {unlabeled} fingerprints without a configuration label");
    }
    let mut groups: BTreeMap<(usize, String), Vec<Fingerprint>> = BTreeMap::new();
    for fp in fps {
        if let Some(label) = fp.label {
            groups
                .entry(args.group_by.key(&label))
                .or_default()
                .push(fp);
        }
    }
    if groups.is_empty() {
        return Err(Error::EmptyInput);
    }
    let aggregated: Vec<ModelFingerprint> = groups
        .into_iter()
        .map(|((_, name), members)| aggregate_named(&members, name))
        .collect::<Result<_>>()?;

    let spider = ctx.config.spider();
    let header = ctx.header();
    let group = args.group_by.name();
    let svg = svg_with_comment(&render_spider(&aggregated, &spider)?, &header.comment());
    std::fs::write(ctx.out_path(&spider_file(group)), svg)?;

    let mut md = String::new();
    let _ = writeln!(md, "<!-- {} -->\n", header.comment());
    let _ = writeln!(md, "## Fingerprints by {}\n", group.replace('_', "-"));
    md.push_str("| Group | n |");
    for axis in &spider.axes {
        let _ = write!(md, " {} |", axis.label);
    }
    md.push_str("\n|:--|--:|");
    for _ in &spider.axes {
        md.push_str(":-:|");
    }
    md.push('\n');
    for m in &aggregated {
        let _ = write!(md, "| {} | {} |", m.name, m.n);
        for axis in &spider.axes {
            let mean = m.mean.get(&axis.feature).unwrap_or(f64::NAN);
            let std = m.std.get(&axis.feature).unwrap_or(f64::NAN);
            let _ = write!(md, " {} ± {} |", fixed(mean, 3), fixed(std, 3));
        }
        md.push('\n');
    }
    std::fs::write(ctx.out_path(&summary_file(group)), md)?;
    eprintln!("wrote {} groups", aggregated.len());
    Ok(())
}
