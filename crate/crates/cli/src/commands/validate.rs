//! Distinguishability study over the feature matrix.

use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use simprof::fingerprint::io::FeatureMatrix;
use simprof::validation::report::{Section, StudyReport, StudyRow};
use simprof::validation::{
    ablate, build_dataset, cross_validate, random_baseline, simple_baseline, standard_suite,
    CvConfig, Target, TaskSpec,
};
use simprof::{Error, Result};

use crate::config::{RunConfig, TaskGroup};
use crate::{open_input, Context};

pub const REPORT_FILE: &str = "study.md";
pub const JSON_FILE: &str = "study.json";
pub const IMPORTANCE_FILE: &str = "importance.csv";

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// Feature matrix written by `profile`.
    #[arg(long)]
    pub matrix: PathBuf,
    /// Restricts the study to these tasks, e.g. `strategy=rules` or
    /// `size_pair=1B,4B`. Repeatable.
    #[arg(long = "task")]
    pub tasks: Vec<String>,
}

impl ValidateArgs {
    pub fn apply(&self, cfg: &mut RunConfig) {
        if !self.tasks.is_empty() {
            cfg.validation.groups = vec![TaskGroup {
                title: "Selected tasks".into(),
                tasks: self.tasks.clone(),
            }];
        }
    }
}

fn groups(cfg: &RunConfig) -> Result<Vec<(String, Vec<Target>)>> {
    if cfg.validation.groups.is_empty() {
        return Ok(standard_suite());
    }
    cfg.validation
        .groups
        .iter()
        .map(|g| {
            Ok((
                g.title.clone(),
                g.tasks.iter().map(|t| t.parse()).collect::<Result<_>>()?,
            ))
        })
        .collect()
}

fn skip_degenerate<T>(result: Result<T>) -> Result<Option<T>> {
    match result {
        Ok(v) => Ok(Some(v)),
        Err(e @ Error::DegenerateTask { .. }) => {
            log::warn!("skipping task: {e}");
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn study_row(
    matrix: &FeatureMatrix,
    target: Target,
    cv: &CvConfig,
    trials: usize,
) -> Result<StudyRow> {
    let task = TaskSpec::new(target);
    let ds = build_dataset(matrix, &task)?;
    let full = cross_validate(&ds, cv)?;
    let simple = simple_baseline(matrix, &task, cv)?;
    let random = random_baseline(&ds.y, trials, cv.seed)?;
    Ok(StudyRow {
        name: task.name,
        full,
        simple: Some(simple),
        random: Some(random),
    })
}

pub fn run(ctx: &Context, args: &ValidateArgs) -> Result<()> {
    let cfg = &ctx.config;
    let matrix = FeatureMatrix::read_csv(open_input(&args.matrix)?)?;
    let v = &cfg.validation;
    let cv = CvConfig {
        folds: v.folds,
        repeats: v.repeats,
        c: v.c,
        seed: ctx.seed,
    };
    let mut report = StudyReport::new(Some(ctx.header()));
    let mut skipped = 0;
    for (title, targets) in groups(cfg)? {
        let mut rows = Vec::new();
        for target in targets {
            match skip_degenerate(study_row(&matrix, target, &cv, v.random_trials))? {
                Some(row) => rows.push(row),
                None => skipped += 1,
            }
        }
        if !rows.is_empty() {
            report.sections.push(Section::Study { title, rows });
        }
    }
    for ab in &v.ablations {
        let mut rows = Vec::new();
        for t in &ab.tasks {
            let task = TaskSpec::new(t.parse()?);
            let ds = build_dataset(&matrix, &task)?;
            match skip_degenerate(ablate(&ds, &ab.feature, &cv))? {
                Some(r) => rows.push((task.name.clone(), r)),
                None => skipped += 1,
            }
        }
        if !rows.is_empty() {
            report.sections.push(Section::Ablation {
                title: ab.title.clone(),
                dropped: ab.feature.clone(),
                rows,
            });
        }
    }

    std::fs::write(ctx.out_path(REPORT_FILE), report.to_markdown())?;
    let mut json = ctx.create(JSON_FILE)?;
    serde_json::to_writer_pretty(&mut json, &report)?;
    json.write_all(b"\n")?;
    json.flush()?;
    let mut imp = ctx.create(IMPORTANCE_FILE)?;
    report.write_importance_csv(&mut imp)?;
    imp.flush()?;
    if skipped > 0 {
        eprintln!("warning: {skipped} tasks skipped for lack of rows");
    }
    eprintln!("wrote {} result tables", report.sections.len());
    Ok(())
}
