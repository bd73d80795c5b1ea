//! Simplification of sampled excerpts under every configuration.

use std::collections::BTreeSet;
use std::fs::OpenOptions;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::Args;
use simprof::artifact::{append_jsonl, read_jsonl, write_jsonl_header};
use simprof::generation::{generate_matrix, load_checkpoint, SourceExcerpt};
use simprof::{Error, Result};

use crate::{open_input, providers, Context};

pub const RECORDS_FILE: &str = "simplifications.jsonl";

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    /// Excerpt file written by `sample`.
    #[arg(long)]
    pub excerpts: PathBuf,
}

pub fn run(ctx: &Context, args: &GenerateArgs) -> Result<()> {
    let cfg = &ctx.config;
    let (_, excerpts): (_, Vec<SourceExcerpt>) = read_jsonl(open_input(&args.excerpts)?)?;
    let labels = cfg.labels()?;
    let templates = cfg.templates()?;
    let generators = providers::generators(cfg);

    let path = ctx.out_path(RECORDS_FILE);
    let (existing_header, done_records) = load_checkpoint(&path)?;
    if let Some(h) = &existing_header {
        if h.config_hash != ctx.config_hash || h.seed != ctx.seed {
            return Err(Error::ConfigInvalid(format!(
                "{} was written with config {} seed {}; remove it or choose another --out-dir",
                path.display(),
                h.config_hash,
                h.seed
            )));
        }
    }
    let done: BTreeSet<String> = done_records.iter().map(|r| r.pair_id.clone()).collect();
    let file = OpenOptions::new().create(true).append(true).open(&path)?;
    let mut out = BufWriter::new(file);
    if existing_header.is_none() {
        if !done.is_empty() {
            return Err(Error::ConfigInvalid(format!(
                "{} has records but no header",
                path.display()
            )));
        }
        write_jsonl_header(&mut out, &ctx.header())?;
    }
    let summary = generate_matrix(
        &excerpts,
        &labels,
        &templates,
        &generators,
        &done,
        |record| {
            append_jsonl(&mut out, &record)?;
            out.flush()?;
            Ok(())
        },
    )?;
    out.flush()?;
    eprintln!(
        "generated {} records ({} already present, {} failed)",
        summary.written, summary.skipped, summary.failed
    );
    if summary.failed > 0 {
        eprintln!("warning: {} generation failures recorded", summary.failed);
    }
    Ok(())
}
