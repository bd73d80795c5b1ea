//! Greedy subset selection with per-rule coverage quotas.
//!
//! Each step picks the excerpt that violates the most rules whose quota is
//! still unmet, breaking ties by the lower excerpt id. Once no remaining
//! excerpt helps any quota, the rest of the budget is filled in id order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rules::{apply_rules, RuleSet};
use crate::text::Excerpt;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcerptProfile {
    pub excerpt_id: String,
    pub violated_rule_ids: BTreeSet<String>,
    pub violation_counts: BTreeMap<String, usize>,
}

impl ExcerptProfile {
    pub fn new(excerpt_id: impl Into<String>, counts: BTreeMap<String, usize>) -> Self {
        let counts: BTreeMap<String, usize> = counts.into_iter().filter(|(_, n)| *n > 0).collect();
        ExcerptProfile {
            excerpt_id: excerpt_id.into(),
            violated_rule_ids: counts.keys().cloned().collect(),
            violation_counts: counts,
        }
    }

    /// Profile that violates each of `rules` once.
    pub fn with_rules<'a>(
        excerpt_id: impl Into<String>,
        rules: impl IntoIterator<Item = &'a str>,
    ) -> Self {
        ExcerptProfile::new(
            excerpt_id,
            rules.into_iter().map(|r| (r.to_string(), 1)).collect(),
        )
    }

    pub fn violates(&self, rule_id: &str) -> bool {
        self.violated_rule_ids.contains(rule_id)
    }
}

pub fn profile_excerpt(excerpt: &Excerpt, rules: &RuleSet) -> Result<ExcerptProfile> {
    let mut counts = BTreeMap::new();
    for v in apply_rules(&excerpt.doc, rules)? {
        *counts.entry(v.rule_id).or_insert(0) += 1;
    }
    Ok(ExcerptProfile::new(excerpt.id(), counts))
}

/// Profiles excerpts in parallel, preserving input order.
pub fn profile_excerpts(excerpts: &[Excerpt], rules: &RuleSet) -> Result<Vec<ExcerptProfile>> {
    excerpts
        .par_iter()
        .map(|e| profile_excerpt(e, rules))
        .collect()
}

/// Percentage of excerpts violating each rule that occurs at least once.
pub fn rule_distribution(profiles: &[ExcerptProfile]) -> Result<BTreeMap<String, f64>> {
    if profiles.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut hits: BTreeMap<String, usize> = BTreeMap::new();
    for p in profiles {
        for r in &p.violated_rule_ids {
            *hits.entry(r.clone()).or_insert(0) += 1;
        }
    }
    let n = profiles.len() as f64;
    Ok(hits
        .into_iter()
        .map(|(r, k)| (r, k as f64 / n * 100.0))
        .collect())
}

pub const DEFAULT_BUDGET: usize = 1000;

/// `max(30, ceil(0.03 * budget))`.
pub fn default_quota(budget: usize) -> usize {
    30usize.max((budget * 3).div_ceil(100))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingPlan {
    pub budget: usize,
    pub quotas: BTreeMap<String, usize>,
}

impl SamplingPlan {
    pub fn new(budget: usize, quotas: BTreeMap<String, usize>) -> Self {
        SamplingPlan { budget, quotas }
    }

    /// The default quota for every rule.
    pub fn with_default_quotas<'a>(
        budget: usize,
        rule_ids: impl IntoIterator<Item = &'a str>,
    ) -> Self {
        let q = default_quota(budget);
        SamplingPlan::new(
            budget,
            rule_ids.into_iter().map(|r| (r.to_string(), q)).collect(),
        )
    }
}

/// Excerpts grouped by the set of quota rules they violate. Within a group
/// every member has the same gain, so only the lowest id competes.
struct Groups {
    masks: Vec<Vec<u64>>,
    members: Vec<VecDeque<usize>>,
}

fn popcount_and(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

/// Selects up to `budget` excerpt ids in selection order.
pub fn greedy_sample(profiles: &[ExcerptProfile], plan: &SamplingPlan) -> Result<Vec<String>> {
    if plan.budget > profiles.len() {
        return Err(Error::BudgetExceedsCorpus {
            budget: plan.budget,
            corpus: profiles.len(),
        });
    }
    let ids: BTreeSet<&str> = profiles.iter().map(|p| p.excerpt_id.as_str()).collect();
    if ids.len() != profiles.len() {
        return Err(Error::ConfigInvalid(
            "duplicate excerpt ids in profiles".into(),
        ));
    }
    let rules: Vec<&String> = plan.quotas.keys().collect();
    let words = rules.len().div_ceil(64).max(1);
    let bit = |i: usize| (i / 64, 1u64 << (i % 64));

    let mut order: Vec<usize> = (0..profiles.len()).collect();
    order.sort_by(|&a, &b| profiles[a].excerpt_id.cmp(&profiles[b].excerpt_id));
    let mut by_mask: BTreeMap<Vec<u64>, VecDeque<usize>> = BTreeMap::new();
    for &i in &order {
        let mut mask = vec![0u64; words];
        for (r, rule) in rules.iter().enumerate() {
            if profiles[i].violates(rule) {
                let (w, b) = bit(r);
                mask[w] |= b;
            }
        }
        by_mask.entry(mask).or_default().push_back(i);
    }
    let (masks, members): (Vec<_>, Vec<_>) = by_mask.into_iter().unzip();
    let mut groups = Groups { masks, members };

    let mut deficit: Vec<usize> = plan.quotas.values().copied().collect();
    let mut unmet = vec![0u64; words];
    for (r, &d) in deficit.iter().enumerate() {
        if d > 0 {
            let (w, b) = bit(r);
            unmet[w] |= b;
        }
    }

    let mut selected = Vec::with_capacity(plan.budget);
    while selected.len() < plan.budget {
        let mut best: Option<(u32, usize)> = None;
        for (g, queue) in groups.members.iter().enumerate() {
            let Some(&head) = queue.front() else { continue };
            let gain = popcount_and(&groups.masks[g], &unmet);
            let better = match best {
                None => true,
                Some((bg, bi)) => {
                    let best_head = groups.members[bi][0];
                    gain > bg
                        || (gain == bg
                            && profiles[head].excerpt_id < profiles[best_head].excerpt_id)
                }
            };
            if better {
                best = Some((gain, g));
            }
        }
        let Some((_, g)) = best else { break };
        let i = groups.members[g].pop_front().expect("non-empty group");
        for r in 0..rules.len() {
            let (w, b) = bit(r);
            if groups.masks[g][w] & b != 0 && deficit[r] > 0 {
                deficit[r] -= 1;
                if deficit[r] == 0 {
                    unmet[w] &= !b;
                }
            }
        }
        selected.push(profiles[i].excerpt_id.clone());
    }
    Ok(selected)
}

/// Uniform random subset of `budget` ids, for comparison with the greedy
/// selection.
pub fn random_sample(profiles: &[ExcerptProfile], budget: usize, seed: u64) -> Result<Vec<String>> {
    if budget > profiles.len() {
        return Err(Error::BudgetExceedsCorpus {
            budget,
            corpus: profiles.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(index::sample(&mut rng, profiles.len(), budget)
        .into_iter()
        .map(|i| profiles[i].excerpt_id.clone())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageRow {
    pub rule_id: String,
    pub quota: usize,
    /// Selected excerpts violating the rule.
    pub selected: usize,
    /// Corpus excerpts violating the rule.
    pub available: usize,
    pub selected_share: f64,
    pub corpus_share: f64,
}

impl CoverageRow {
    /// The quota is met, or every available excerpt was selected.
    pub fn satisfied(&self) -> bool {
        self.selected >= self.quota.min(self.available)
    }
}

/// Per-rule coverage of a selection, over the union of planned rules and
/// rules seen in the corpus.
pub fn coverage_report(
    profiles: &[ExcerptProfile],
    selected: &[String],
    plan: &SamplingPlan,
) -> Vec<CoverageRow> {
    let chosen: BTreeSet<&str> = selected.iter().map(String::as_str).collect();
    let mut rules: BTreeSet<&str> = plan.quotas.keys().map(String::as_str).collect();
    for p in profiles {
        rules.extend(p.violated_rule_ids.iter().map(String::as_str));
    }
    let n_sel = selected.len().max(1) as f64;
    let n_all = profiles.len().max(1) as f64;
    rules
        .into_iter()
        .map(|rule| {
            let available = profiles.iter().filter(|p| p.violates(rule)).count();
            let selected = profiles
                .iter()
                .filter(|p| p.violates(rule) && chosen.contains(p.excerpt_id.as_str()))
                .count();
            CoverageRow {
                rule_id: rule.to_string(),
                quota: plan.quotas.get(rule).copied().unwrap_or(0),
                selected,
                available,
                selected_share: selected as f64 / n_sel * 100.0,
                corpus_share: available as f64 / n_all * 100.0,
            }
        })
        .collect()
}

/// Count of selected excerpts violating `rule_id`.
pub fn count_rule(profiles: &[ExcerptProfile], selected: &[String], rule_id: &str) -> usize {
    let chosen: BTreeSet<&str> = selected.iter().map(String::as_str).collect();
    profiles
        .iter()
        .filter(|p| p.violates(rule_id) && chosen.contains(p.excerpt_id.as_str()))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{builtin_ruleset, RuleCategory};
    use crate::text::{extract_windows, segment, HeuristicAnnotator, RawText};
    use proptest::prelude::*;

    fn profile(id: &str, rules: &[&str]) -> ExcerptProfile {
        ExcerptProfile::with_rules(id, rules.iter().copied())
    }

    #[test]
    fn profiles_real_excerpt() {
        let long = "Die Stadt hat in den vergangenen Jahrhunderten viele große und kleine Kirchen, Brücken, Türme, Mauern, Gärten und Plätze für alle Bürger und Besucher gebaut.";
        let text =
            format!("{long} Der Hund bellt. Die Katze schläft. Das Kind lacht. Der Ball rollt.");
        let doc = segment(&RawText::new("a", text), &HeuristicAnnotator::new()).unwrap();
        let ex = &extract_windows(&doc, 5)[0];
        let rules = builtin_ruleset(RuleCategory::Simplicity);
        let p = profile_excerpt(ex, &rules).unwrap();
        assert!(p.violates("sentence_length"));
        assert_eq!(p.violation_counts["sentence_length"], 1);
        assert_eq!(p, profile_excerpt(ex, &rules).unwrap());

        let calm = segment(
            &RawText::new("b", "Der Hund bellt. Die Katze schläft. Das Kind lacht. Der Ball rollt. Die Sonne scheint."),
            &HeuristicAnnotator::new(),
        )
        .unwrap();
        let p = profile_excerpt(&extract_windows(&calm, 5)[0], &rules).unwrap();
        assert!(p.violated_rule_ids.is_empty(), "{:?}", p.violated_rule_ids);
    }

    #[test]
    fn distribution() {
        let ps = [
            profile("a", &["r"]),
            profile("b", &[]),
            profile("c", &[]),
            profile("d", &[]),
        ];
        assert_eq!(rule_distribution(&ps).unwrap()["r"], 25.0);
        let all = [profile("a", &["r"]), profile("b", &["r"])];
        assert_eq!(rule_distribution(&all).unwrap()["r"], 100.0);
        assert!(matches!(rule_distribution(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn default_quotas() {
        assert_eq!(default_quota(1000), 30);
        assert_eq!(default_quota(100), 30);
        assert_eq!(default_quota(2000), 60);
        assert_eq!(default_quota(1001), 31);
    }

    #[test]
    fn zero_quotas_take_first_ids() {
        let ps: Vec<_> = ["d", "b", "a", "c"]
            .iter()
            .map(|id| profile(id, &["r"]))
            .collect();
        let plan = SamplingPlan::new(2, [("r".to_string(), 0)].into());
        assert_eq!(greedy_sample(&ps, &plan).unwrap(), ["a", "b"]);
    }

    #[test]
    fn prefers_rare_rules() {
        let mut ps: Vec<_> = (0..100)
            .map(|i| profile(&format!("e{i:03}"), &["common"]))
            .collect();
        for i in [97, 98, 99] {
            ps[i] = profile(&format!("e{i:03}"), &["common", "rare"]);
        }
        let plan = SamplingPlan::new(
            5,
            [("rare".to_string(), 3), ("common".to_string(), 1)].into(),
        );
        let sel = greedy_sample(&ps, &plan).unwrap();
        assert_eq!(&sel[..3], ["e097", "e098", "e099"]);
        assert_eq!(&sel[3..], ["e000", "e001"]);
    }

    #[test]
    fn budget_errors() {
        let ps = [profile("a", &[])];
        let plan = SamplingPlan::new(2, BTreeMap::new());
        assert!(matches!(
            greedy_sample(&ps, &plan),
            Err(Error::BudgetExceedsCorpus { .. })
        ));
        assert!(matches!(
            random_sample(&ps, 2, 0),
            Err(Error::BudgetExceedsCorpus { .. })
        ));
    }

    #[test]
    fn planted_rare_rule_quota_is_met() {
        let ps: Vec<_> = (0..1000)
            .map(|i| {
                let rules: &[&str] = if i % 33 == 0 {
                    &["technical_terms", "sentence_length"]
                } else {
                    &["sentence_length"]
                };
                profile(&format!("x{i:04}"), rules)
            })
            .collect();
        let plan = SamplingPlan::new(100, [("technical_terms".to_string(), 30)].into());
        let sel = greedy_sample(&ps, &plan).unwrap();
        assert!(count_rule(&ps, &sel, "technical_terms") >= 30);
        let report = coverage_report(&ps, &sel, &plan);
        assert!(report.iter().all(CoverageRow::satisfied));
    }

    const RULES: [&str; 4] = ["r0", "r1", "r2", "r3"];

    fn corpus() -> impl Strategy<Value = Vec<ExcerptProfile>> {
        prop::collection::vec(prop::collection::vec(any::<bool>(), 4), 1..60).prop_map(|rows| {
            rows.iter()
                .enumerate()
                .map(|(i, bits)| {
                    let rules: Vec<&str> = RULES
                        .iter()
                        .zip(bits)
                        .filter(|(_, b)| **b)
                        .map(|(r, _)| *r)
                        .collect();
                    profile(&format!("p{i:03}"), &rules)
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn selection_is_unique_subset(ps in corpus(), budget_frac in 0.0f64..=1.0, quota in 0usize..10) {
            let budget = (ps.len() as f64 * budget_frac) as usize;
            let plan = SamplingPlan::new(budget, RULES.iter().map(|r| (r.to_string(), quota)).collect());
            let sel = greedy_sample(&ps, &plan).unwrap();
            prop_assert_eq!(sel.len(), budget);
            let unique: BTreeSet<_> = sel.iter().collect();
            prop_assert_eq!(unique.len(), sel.len());
            prop_assert!(sel.iter().all(|id| ps.iter().any(|p| &p.excerpt_id == id)));
            prop_assert_eq!(&sel, &greedy_sample(&ps, &plan).unwrap());
        }

        #[test]
        fn raising_a_quota_keeps_its_count_up_to_the_new_quota(
            ps in corpus(),
            budget_frac in 0.0f64..=1.0,
            quotas in prop::array::uniform4(0usize..8),
            rule in 0usize..4,
            extra in 1usize..8,
        ) {
            let budget = (ps.len() as f64 * budget_frac) as usize;
            let mut plan = SamplingPlan::new(budget, RULES.iter().zip(quotas).map(|(r, q)| (r.to_string(), q)).collect());
            let before = count_rule(&ps, &greedy_sample(&ps, &plan).unwrap(), RULES[rule]);
            *plan.quotas.get_mut(RULES[rule]).unwrap() += extra;
            let after = count_rule(&ps, &greedy_sample(&ps, &plan).unwrap(), RULES[rule]);
            prop_assert!(after >= before.min(plan.quotas[RULES[rule]]), "{} -> {}", before, after);
        }
    }

    // A higher quota can let greedy meet all quotas with fewer picks, which
    // loses incidental hits on the raised rule. Its count stays at or
    // above the new quota.
    #[test]
    fn raised_quota_can_lose_incidental_hits() {
        let rows: [&[&str]; 8] = [
            &["r0", "r1", "r2", "r3"],
            &["r0", "r3"],
            &["r1", "r3"],
            &["r1", "r2"],
            &["r0", "r1", "r2"],
            &[],
            &[],
            &["r1", "r3"],
        ];
        let ps: Vec<_> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| profile(&format!("p{i:03}"), r))
            .collect();
        let mut plan = SamplingPlan::new(
            5,
            RULES
                .iter()
                .zip([2, 4, 1, 3])
                .map(|(r, q)| (r.to_string(), q))
                .collect(),
        );
        assert_eq!(
            count_rule(&ps, &greedy_sample(&ps, &plan).unwrap(), "r2"),
            3
        );
        plan.quotas.insert("r2".into(), 2);
        let sel = greedy_sample(&ps, &plan).unwrap();
        assert_eq!(count_rule(&ps, &sel, "r2"), 2);
        assert!(coverage_report(&ps, &sel, &plan)
            .iter()
            .all(CoverageRow::satisfied));
    }

    #[test]
    fn coverage_dominates_random_sampling() {
        // Rule frequencies at or below budget / corpus size.
        let freqs = [("a", 0.08), ("b", 0.05), ("c", 0.03)];
        for trial in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(trial);
            let ps: Vec<_> = (0..1000)
                .map(|i| {
                    let rules: Vec<&str> = freqs
                        .iter()
                        .filter(|(_, f)| rand::Rng::random_bool(&mut rng, *f))
                        .map(|(r, _)| *r)
                        .collect();
                    profile(&format!("t{i:04}"), &rules)
                })
                .collect();
            let budget = 100;
            let plan = SamplingPlan::with_default_quotas(budget, freqs.iter().map(|(r, _)| *r));
            let sel = greedy_sample(&ps, &plan).unwrap();
            for (rule, _) in freqs {
                let available = ps.iter().filter(|p| p.violates(rule)).count() as f64;
                let expected_random = available * budget as f64 / ps.len() as f64;
                assert!(
                    count_rule(&ps, &sel, rule) as f64 >= expected_random,
                    "trial {trial} rule {rule}"
                );
            }
        }
    }
}
