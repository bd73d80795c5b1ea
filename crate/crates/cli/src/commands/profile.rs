//! Fingerprints for generated pairs and the feature matrix.

use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;
use simprof::artifact::read_jsonl;
use simprof::fingerprint::io::{write_fingerprints, FeatureMatrix};
use simprof::fingerprint::{build_fingerprint, ProfileConfig, ProfilePair, Providers};
use simprof::generation::SimplificationRecord;
use simprof::rules::RuleCategory;
use simprof::text::RawText;
use simprof::Result;

use crate::{open_input, providers, Context};

pub const FINGERPRINTS_FILE: &str = "fingerprints.jsonl";
pub const MATRIX_FILE: &str = "features.csv";

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    /// Record file written by `generate`.
    #[arg(long)]
    pub records: PathBuf,
}

pub fn run(ctx: &Context, args: &ProfileArgs) -> Result<()> {
    let cfg = &ctx.config;
    let (_, records): (_, Vec<SimplificationRecord>) = read_jsonl(open_input(&args.records)?)?;
    let failed = records.iter().filter(|r| r.failed()).count();
    if failed > 0 {
        log::warn!("skipping {failed} records whose generation failed");
    }
    let usable: Vec<&SimplificationRecord> = records.iter().filter(|r| !r.failed()).collect();

    let profile_cfg = ProfileConfig {
        readability: cfg.readability,
        simplicity: cfg.rule_set(RuleCategory::Simplicity)?,
        correctness: cfg.rule_set(RuleCategory::Correctness)?,
    };
    let annotator = providers::annotator(cfg);
    let nli = providers::nli(cfg);
    let embed = providers::embedding(cfg);
    let checker = providers::checker(cfg);
    let p = Providers {
        nli: nli.as_ref(),
        embed: embed.as_ref(),
        checker: checker.as_deref(),
    };
    let fingerprints = usable
        .par_iter()
        .map(|r| {
            let source = RawText::new(r.excerpt_id.clone(), r.source_text.clone())
                .with_language(cfg.language.clone());
            let simp = RawText::new(r.pair_id.clone(), r.output_text.clone())
                .with_language(cfg.language.clone());
            let pair = ProfilePair::prepare(
                r.pair_id.clone(),
                Some(r.label),
                &source,
                &simp,
                annotator.as_ref(),
            )?;
            build_fingerprint(&pair, &p, &profile_cfg)
        })
        .collect::<Result<Vec<_>>>()?;

    let header = ctx.header();
    let mut out = ctx.create(FINGERPRINTS_FILE)?;
    write_fingerprints(&mut out, Some(&header), &fingerprints)?;
    std::io::Write::flush(&mut out)?;
    let matrix = FeatureMatrix::from_fingerprints(&fingerprints, Some(header));
    let mut csv = ctx.create(MATRIX_FILE)?;
    matrix.write_csv(&mut csv)?;
    std::io::Write::flush(&mut csv)?;
    let flagged = fingerprints.iter().filter(|f| !f.flags.is_empty()).count();
    eprintln!("profiled {} pairs ({flagged} flagged)", fingerprints.len());
    Ok(())
}
