//! Windowing, rule profiling and greedy coverage sampling.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;
use simprof::artifact::{append_jsonl, write_jsonl_header};
use simprof::generation::SourceExcerpt;
use simprof::rules::RuleCategory;
use simprof::sampler::{coverage_report, greedy_sample, profile_excerpts, SamplingPlan};
use simprof::text::corpus::read_articles;
use simprof::text::{extract_windows, segment, Excerpt};
use simprof::{Error, Result};

use super::fixed;
use crate::config::RunConfig;
use crate::{open_input, providers, Context};

pub const EXCERPTS_FILE: &str = "excerpts.jsonl";
pub const COVERAGE_FILE: &str = "coverage.md";

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    /// Newline-delimited JSON articles `{id, title, text}`.
    #[arg(long)]
    pub corpus: PathBuf,
    /// Number of excerpts to select.
    #[arg(long)]
    pub budget: Option<usize>,
}

impl SampleArgs {
    pub fn apply(&self, cfg: &mut RunConfig) {
        if let Some(b) = self.budget {
            cfg.sampler.budget = b;
        }
    }
}

pub fn run(ctx: &Context, args: &SampleArgs) -> Result<()> {
    let cfg = &ctx.config;
    let articles = read_articles(open_input(&args.corpus)?)?;
    let annotator = providers::annotator(cfg);
    let window = cfg.sampler.window;
    let per_article: Vec<Vec<Excerpt>> = articles
        .par_iter()
        .map(|a| {
            let raw = a.raw().with_language(cfg.language.clone());
            match segment(&raw, annotator.as_ref()) {
                Ok(doc) => Ok(extract_windows(&doc, window)),
                Err(Error::EmptyInput) => {
                    log::warn!("article {} is empty", a.id);
                    Ok(Vec::new())
                }
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    let excerpts: Vec<Excerpt> = per_article.into_iter().flatten().collect();
    log::info!(
        "{} articles, {} excerpts of {window} sentences",
        articles.len(),
        excerpts.len()
    );

    let rules = cfg.rule_set(RuleCategory::Simplicity)?;
    let profiles = profile_excerpts(&excerpts, &rules)?;
    let mut plan = SamplingPlan::with_default_quotas(cfg.sampler.budget, rules.ids());
    for (rule, quota) in &cfg.sampler.quotas {
        if rules.get(rule).is_none() {
            return Err(Error::ConfigInvalid(format!(
                "quota for unknown rule `{rule}`"
            )));
        }
        plan.quotas.insert(rule.clone(), *quota);
    }
    let selected = greedy_sample(&profiles, &plan)?;

    let by_id: std::collections::HashMap<String, &Excerpt> =
        excerpts.iter().map(|e| (e.id(), e)).collect();
    let mut out = ctx.create(EXCERPTS_FILE)?;
    write_jsonl_header(&mut out, &ctx.header())?;
    for id in &selected {
        let ex = by_id[id];
        append_jsonl(
            &mut out,
            &SourceExcerpt {
                excerpt_id: id.clone(),
                text: ex.text().to_string(),
            },
        )?;
    }
    out.flush()?;

    let rows = coverage_report(&profiles, &selected, &plan);
    let mut md = String::new();
    let _ = writeln!(md, "<!-- {} -->\n", ctx.header().comment());
    let _ = writeln!(
        md,
        "## Rule coverage\n\n{} of {} excerpts selected.\n",
        selected.len(),
        profiles.len()
    );
    md.push_str("| Rule | Quota | Selected | Available | Selected (%) | Corpus (%) | Met |\n");
    md.push_str("|:--|--:|--:|--:|--:|--:|:-:|\n");
    for r in &rows {
        let _ = writeln!(
            md,
            "| {} | {} | {} | {} | {} | {} | {} |",
            r.rule_id,
            r.quota,
            r.selected,
            r.available,
            fixed(r.selected_share, 2),
            fixed(r.corpus_share, 2),
            if r.satisfied() { "yes" } else { "no" }
        );
    }
    std::fs::write(ctx.out_path(COVERAGE_FILE), md)?;
    let unmet = rows.iter().filter(|r| !r.satisfied()).count();
    if unmet > 0 {
        log::warn!("{unmet} rule quotas could not be met");
    }
    eprintln!("selected {} of {} excerpts", selected.len(), profiles.len());
    Ok(())
}
