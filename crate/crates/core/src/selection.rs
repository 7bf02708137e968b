//! Choosing `n` attributes of high relative relevance.
//!
//! * [`Selector::exhaustive`] scores every `n`-subset and returns a maximal
//!   relevant set.
//! * [`Selector::imrs`] grows the set greedily one attribute at a time, each
//!   step keeping the extension of largest relevance (the iterative maximal
//!   relevant set). It performs `n·|M| − n(n−1)/2` scorings.
//! * [`Selector::era`] runs the same greedy scheme on the entropic relevance
//!   approximation
//!   `ERA(N) = |𝔅(K_N)| / |𝔅(K)| · E(K_N) / E(K)` where `K_N` keeps only the
//!   attributes in `N`. Only the small kept sub-contexts are enumerated.
//! * [`Selector::random`] is the uniform random baseline.
//!
//! Ties go to the smallest attribute index (for the exhaustive search, the
//! lexicographically smallest index sequence). Relevance is compared exactly;
//! object entropy scores are compared as exact integers and Shannon entropy
//! scores with an absolute tolerance of `1e-12`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::context::FormalContext;
use crate::entropy::{object_closure_sizes, object_entropy_numerator, EntropyKind};
use crate::error::{Error, Result};
use crate::lattice::Enumerator;
use crate::relevance::{ClarifyPolicy, Relevance, RelevanceAnalysis};

pub const DEFAULT_COMBINATORIAL_GUARD: u128 = 1_000_000;
pub const ERA_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SelectionMethod {
    Exhaustive,
    Imrs,
    EraSe,
    EraOe,
    Random,
}

impl SelectionMethod {
    pub const ALL: [SelectionMethod; 5] = [
        SelectionMethod::Exhaustive,
        SelectionMethod::Imrs,
        SelectionMethod::EraSe,
        SelectionMethod::EraOe,
        SelectionMethod::Random,
    ];

    pub fn entropy_kind(self) -> Option<EntropyKind> {
        match self {
            SelectionMethod::EraSe => Some(EntropyKind::ShannonObject),
            SelectionMethod::EraOe => Some(EntropyKind::Object),
            _ => None,
        }
    }
}

impl fmt::Display for SelectionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SelectionMethod::Exhaustive => "exhaustive",
            SelectionMethod::Imrs => "imrs",
            SelectionMethod::EraSe => "era-se",
            SelectionMethod::EraOe => "era-oe",
            SelectionMethod::Random => "random",
        })
    }
}

impl FromStr for SelectionMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        SelectionMethod::ALL
            .into_iter()
            .find(|m| m.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown selection method {s:?}"))
    }
}

/// Direction of the entropic greedy search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Objective {
    #[default]
    Maximize,
    Minimize,
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "max" | "maximize" => Ok(Objective::Maximize),
            "min" | "minimize" => Ok(Objective::Minimize),
            other => Err(format!("unknown objective {other:?} (expected max or min)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelectionResult {
    pub method: SelectionMethod,
    /// Attribute indices of the input context, in selection order.
    pub chosen: Vec<usize>,
    pub names: Vec<String>,
    /// Exact relative relevance of the chosen set.
    pub relevance: Relevance,
    /// Relevance (or ERA score for the entropic methods) after each step.
    pub step_scores: Vec<f64>,
    /// Number of candidate sets scored.
    pub evaluations: u64,
    /// ERA score of the chosen set, for the entropic methods.
    pub era: Option<f64>,
    /// Concept count of the sub-context on the chosen attributes.
    pub subcontext_concepts: usize,
}

impl SelectionResult {
    pub fn size(&self) -> usize {
        self.chosen.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomBaseline {
    pub size: usize,
    pub trials: usize,
    pub seed: u64,
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    /// Sorted subset and its relevance, one entry per trial.
    pub per_trial: Vec<(Vec<usize>, Relevance)>,
}

impl RandomBaseline {
    pub fn min(&self) -> f64 {
        self.per_trial
            .iter()
            .map(|(_, r)| r.to_f64())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.per_trial
            .iter()
            .map(|(_, r)| r.to_f64())
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Mean and population standard deviation.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Mean and population standard deviation of relevances sharing the total
/// extent mass `total`, accumulated in integers so equal values give `std = 0`.
fn relevance_mean_std(trials: &[(Vec<usize>, Relevance)], total: u64) -> (f64, f64) {
    let n = trials.len() as u128;
    let (sum, sum_sq) = trials.iter().fold((0u128, 0u128), |(s, q), (_, r)| {
        let lost = (r.total_extent_sum() - r.surviving_extent_sum()) as u128;
        (s + lost, q + lost * lost)
    });
    let total = total as f64;
    let mean = sum as f64 / n as f64 / total;
    let var_numerator = n * sum_sq - sum * sum;
    let std = (var_numerator as f64).sqrt() / (n as f64 * total);
    (mean, std)
}

#[derive(Clone, Copy, Debug)]
pub struct SelectionOptions {
    pub policy: ClarifyPolicy,
    /// Largest number of candidate subsets an exhaustive search may score.
    pub combinatorial_guard: u128,
    pub enumerator: Enumerator,
}

impl Default for SelectionOptions {
    fn default() -> Self {
        SelectionOptions {
            policy: ClarifyPolicy::Auto,
            combinatorial_guard: DEFAULT_COMBINATORIAL_GUARD,
            enumerator: Enumerator::default(),
        }
    }
}

/// ERA score of a candidate. Object entropy scores carry an exact integer key
/// `|𝔅(K_N)| · (|G|² − Σ|g''|)`.
#[derive(Clone, Copy, Debug)]
struct EraScore {
    exact: Option<u128>,
    value: f64,
}

impl EraScore {
    fn compare(&self, other: &EraScore) -> Ordering {
        match (self.exact, other.exact) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ if (self.value - other.value).abs() <= ERA_TOLERANCE => Ordering::Equal,
            _ => self.value.total_cmp(&other.value),
        }
    }
}

/// `|𝔅(K)|` and `E(K)` of the full context.
#[derive(Clone, Copy, Debug)]
struct EraBase {
    kind: EntropyKind,
    concepts: usize,
    entropy: f64,
    oe_numerator: u64,
}

/// `C(n, k)`, saturating.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Runs the selection strategies against one context. The context is
/// clarified (or rejected, under [`ClarifyPolicy::Strict`]) and its lattice
/// enumerated once on construction.
#[derive(Clone, Debug)]
pub struct Selector {
    analysis: RelevanceAnalysis,
    options: SelectionOptions,
    attribute_count: usize,
}

impl Selector {
    pub fn new(ctx: &FormalContext, options: SelectionOptions) -> Result<Self> {
        Ok(Selector {
            analysis: RelevanceAnalysis::with_enumerator(ctx, options.policy, &options.enumerator)?,
            options,
            attribute_count: ctx.attribute_count(),
        })
    }

    pub fn analysis(&self) -> &RelevanceAnalysis {
        &self.analysis
    }

    fn ctx(&self) -> &FormalContext {
        self.analysis.context()
    }

    /// Number of attributes the strategies choose from (the clarified count).
    pub fn candidate_count(&self) -> usize {
        self.ctx().attribute_count()
    }

    /// `10·|M|` of the input context.
    pub fn default_trials(&self) -> usize {
        (10 * self.attribute_count).max(1)
    }

    fn check_size(&self, n: usize) -> Result<()> {
        let max = self.candidate_count();
        if n == 0 || n > max {
            return Err(Error::SizeOutOfRange { size: n, max });
        }
        Ok(())
    }

    fn check_guard(&self, n: usize) -> Result<()> {
        let candidates = binomial(self.candidate_count(), n);
        if candidates > self.options.combinatorial_guard {
            return Err(Error::CombinatorialGuard {
                candidates,
                guard: self.options.combinatorial_guard,
            });
        }
        Ok(())
    }

    fn finish(
        &self,
        method: SelectionMethod,
        order: Vec<usize>,
        step_scores: Vec<f64>,
        evaluations: u64,
        era: Option<f64>,
    ) -> Result<SelectionResult> {
        let set = BitSet::from_indices(self.candidate_count(), order.iter().copied());
        let relevance = self.analysis.relevance_of_classes(&set);
        let subcontext_concepts = self.options.enumerator.count(&self.ctx().restrict_attributes(&set))?;
        let map = self.analysis.clarification();
        let chosen: Vec<usize> = order.iter().map(|&c| map.representative(c)).collect();
        let names = order.iter().map(|&c| self.ctx().attributes()[c].clone()).collect();
        Ok(SelectionResult {
            method,
            chosen,
            names,
            relevance,
            step_scores,
            evaluations,
            era,
            subcontext_concepts,
        })
    }

    /// Greedy growth from the empty set. `better(a, b)` is true when score `a`
    /// strictly beats `b`; ties keep the earlier (smaller) attribute.
    fn greedy<K, S, B>(&self, n: usize, score: S, better: B) -> Result<(Vec<usize>, Vec<K>, u64)>
    where
        K: Send,
        S: Fn(&BitSet) -> Result<K> + Sync,
        B: Fn(&K, &K) -> bool,
    {
        let mc = self.candidate_count();
        let mut chosen = BitSet::empty(mc);
        let mut order = Vec::with_capacity(n);
        let mut steps = Vec::with_capacity(n);
        let mut evaluations = 0u64;
        for _ in 0..n {
            let candidates: Vec<usize> = (0..mc).filter(|&x| !chosen.contains(x)).collect();
            let scores = candidates
                .par_iter()
                .map(|&x| {
                    let mut set = chosen.clone();
                    set.insert(x);
                    score(&set)
                })
                .collect::<Result<Vec<K>>>()?;
            evaluations += candidates.len() as u64;
            let mut best: Option<(usize, K)> = None;
            for (x, s) in candidates.into_iter().zip(scores) {
                if best.as_ref().is_none_or(|(_, b)| better(&s, b)) {
                    best = Some((x, s));
                }
            }
            let (x, s) = best.expect("at least one candidate per step");
            chosen.insert(x);
            order.push(x);
            steps.push(s);
        }
        Ok((order, steps, evaluations))
    }

    /// Scores every `n`-subset in lexicographic order and keeps the first best.
    fn exhaustive_search<K, S, B>(&self, n: usize, score: S, better: B) -> Result<(Vec<usize>, K, u64)>
    where
        K: Send,
        S: Fn(&BitSet) -> Result<K> + Sync,
        B: Fn(&K, &K) -> bool,
    {
        self.check_guard(n)?;
        let mc = self.candidate_count();
        let subsets: Vec<Vec<usize>> = (0..mc).combinations(n).collect();
        let scores = subsets
            .par_iter()
            .map(|s| score(&BitSet::from_indices(mc, s.iter().copied())))
            .collect::<Result<Vec<K>>>()?;
        let evaluations = subsets.len() as u64;
        let mut best: Option<(Vec<usize>, K)> = None;
        for (s, k) in subsets.into_iter().zip(scores) {
            if best.as_ref().is_none_or(|(_, b)| better(&k, b)) {
                best = Some((s, k));
            }
        }
        let (s, k) = best.expect("at least one subset");
        Ok((s, k, evaluations))
    }

    /// A maximal relevant set of size `n`.
    pub fn exhaustive(&self, n: usize) -> Result<SelectionResult> {
        self.check_size(n)?;
        let (order, best, evaluations) =
            self.exhaustive_search(n, |set| Ok(self.analysis.relevance_of_classes(set)), |a, b| a > b)?;
        self.finish(
            SelectionMethod::Exhaustive,
            order,
            vec![best.to_f64()],
            evaluations,
            None,
        )
    }

    /// The iterative maximal relevant set of size `n`.
    pub fn imrs(&self, n: usize) -> Result<SelectionResult> {
        self.check_size(n)?;
        let (order, steps, evaluations) =
            self.greedy(n, |set| Ok(self.analysis.relevance_of_classes(set)), |a, b| a > b)?;
        let steps = steps.iter().map(Relevance::to_f64).collect();
        self.finish(SelectionMethod::Imrs, order, steps, evaluations, None)
    }

    fn era_base(&self, kind: EntropyKind) -> Result<EraBase> {
        let ctx = self.ctx();
        let objects = ctx.object_count();
        if objects == 0 {
            return Err(Error::EmptyObjectSet);
        }
        let sizes = object_closure_sizes(ctx);
        let oe_numerator = object_entropy_numerator(&sizes, objects);
        // Both entropies vanish exactly when every object closure is G.
        if oe_numerator == 0 {
            return Err(Error::DegenerateEntropy);
        }
        let entropy = entropy_from_sizes(kind, &sizes, objects);
        Ok(EraBase {
            kind,
            concepts: self.analysis.concepts().len(),
            entropy,
            oe_numerator,
        })
    }

    fn era_of(&self, base: &EraBase, set: &BitSet) -> Result<EraScore> {
        let sub = self.ctx().restrict_attributes(set);
        let concepts = self.options.enumerator.count(&sub)?;
        let objects = sub.object_count();
        let sizes = object_closure_sizes(&sub);
        let concept_ratio = concepts as f64 / base.concepts as f64;
        Ok(match base.kind {
            EntropyKind::Object => {
                let numerator = object_entropy_numerator(&sizes, objects);
                EraScore {
                    exact: Some(concepts as u128 * numerator as u128),
                    value: concept_ratio * (numerator as f64 / base.oe_numerator as f64),
                }
            }
            EntropyKind::ShannonObject => EraScore {
                exact: None,
                value: concept_ratio * entropy_from_sizes(base.kind, &sizes, objects) / base.entropy,
            },
        })
    }

    /// ERA of a set of input-context attributes.
    pub fn era_score(&self, attributes: &[usize], kind: EntropyKind) -> Result<f64> {
        let base = self.era_base(kind)?;
        let set = self.analysis.classes_of(attributes)?;
        Ok(self.era_of(&base, &set)?.value)
    }

    fn era_better(objective: Objective) -> impl Fn(&EraScore, &EraScore) -> bool {
        move |a, b| match objective {
            Objective::Maximize => a.compare(b) == Ordering::Greater,
            Objective::Minimize => a.compare(b) == Ordering::Less,
        }
    }

    fn era_method(kind: EntropyKind) -> SelectionMethod {
        match kind {
            EntropyKind::ShannonObject => SelectionMethod::EraSe,
            EntropyKind::Object => SelectionMethod::EraOe,
        }
    }

    /// Greedy selection on the entropic relevance approximation.
    pub fn era(&self, n: usize, kind: EntropyKind, objective: Objective) -> Result<SelectionResult> {
        self.check_size(n)?;
        let base = self.era_base(kind)?;
        let (order, steps, evaluations) = self.greedy(n, |set| self.era_of(&base, set), Self::era_better(objective))?;
        let last = steps.last().map(|s| s.value);
        let steps = steps.iter().map(|s| s.value).collect();
        self.finish(Self::era_method(kind), order, steps, evaluations, last)
    }

    /// Exhaustive search on the entropic relevance approximation.
    pub fn era_exhaustive(&self, n: usize, kind: EntropyKind, objective: Objective) -> Result<SelectionResult> {
        self.check_size(n)?;
        let base = self.era_base(kind)?;
        let (order, best, evaluations) =
            self.exhaustive_search(n, |set| self.era_of(&base, set), Self::era_better(objective))?;
        self.finish(
            Self::era_method(kind),
            order,
            vec![best.value],
            evaluations,
            Some(best.value),
        )
    }

    /// `trials` uniform `n`-subsets. Trial `t` draws from the ChaCha stream
    /// `t` of `seed` with a partial Fisher–Yates shuffle, so trials are
    /// independent of evaluation order.
    pub fn random(&self, n: usize, trials: usize, seed: u64) -> Result<RandomBaseline> {
        self.check_size(n)?;
        if trials == 0 {
            return Err(Error::NoTrials);
        }
        let mc = self.candidate_count();
        let map = self.analysis.clarification();
        let per_trial: Vec<(Vec<usize>, Relevance)> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(t as u64);
                let mut pool: Vec<usize> = (0..mc).collect();
                let (picked, _) = pool.partial_shuffle(&mut rng, n);
                let set = BitSet::from_indices(mc, picked.iter().copied());
                let relevance = self.analysis.relevance_of_classes(&set);
                let subset = set.iter().map(|c| map.representative(c)).collect();
                (subset, relevance)
            })
            .collect();
        let (mean, std) = relevance_mean_std(&per_trial, self.analysis.total_extent_sum());
        Ok(RandomBaseline {
            size: n,
            trials,
            seed,
            mean,
            std,
            per_trial,
        })
    }
}

fn entropy_from_sizes(kind: EntropyKind, sizes: &[usize], objects: usize) -> f64 {
    let n = objects as f64;
    match kind {
        EntropyKind::Object => object_entropy_numerator(sizes, objects) as f64 / (n * n),
        EntropyKind::ShannonObject => sizes
            .iter()
            .map(|&s| s as f64 / n)
            .filter(|&p| p > 0.0 && p < 1.0)
            .map(|p| -p * p.log2())
            .sum(),
    }
}

/// ERA of keeping `attributes` of `ctx`, given `|𝔅(K)|` and `E(K)`.
pub fn era_score(
    base_concepts: usize,
    base_entropy: f64,
    ctx: &FormalContext,
    attributes: &[usize],
    which: EntropyKind,
) -> Result<f64> {
    if base_entropy <= 0.0 {
        return Err(Error::DegenerateEntropy);
    }
    if ctx.object_count() == 0 {
        return Err(Error::EmptyObjectSet);
    }
    let sub = ctx.subcontext_keep(attributes)?;
    let concepts = Enumerator::default().count(&sub)?;
    let entropy = entropy_from_sizes(which, &object_closure_sizes(&sub), sub.object_count());
    Ok(concepts as f64 / base_concepts as f64 * entropy / base_entropy)
}

pub fn select_exhaustive(ctx: &FormalContext, n: usize) -> Result<SelectionResult> {
    Selector::new(ctx, SelectionOptions::default())?.exhaustive(n)
}

pub fn select_imrs(ctx: &FormalContext, n: usize) -> Result<SelectionResult> {
    Selector::new(ctx, SelectionOptions::default())?.imrs(n)
}

pub fn select_era(ctx: &FormalContext, n: usize, which: EntropyKind, objective: Objective) -> Result<SelectionResult> {
    Selector::new(ctx, SelectionOptions::default())?.era(n, which, objective)
}

pub fn select_random(ctx: &FormalContext, n: usize, trials: usize, seed: u64) -> Result<RandomBaseline> {
    Selector::new(ctx, SelectionOptions::default())?.random(n, trials, seed)
}
