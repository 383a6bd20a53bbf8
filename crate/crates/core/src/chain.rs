//! The idealizer chain `𝒩₋₁ = 𝒯, 𝒩₀ = N_ℬ(𝒯), 𝒩_i = N_ℬ(𝒩_{i−1})`.
//!
//! Ground truth is always the iterated idealizer computed on basis sets.
//! The closed forms (weight layers counted by `p_{m,·}`, the unrefinable
//! step, and for `m = 2` the `n`-th step) are predictions built from the
//! [`crate::partitions`] primitives and compared against it.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liering::{BasisElement, BasisSet, HomogeneousSet, LieRing};
use crate::partitions::{
    count_p, count_q, excludant_condition, excludant_profile, is_unrefinable, refinements,
    shape_predicates, MultiplicityBound, RefinementDag,
};
use crate::report::Verdict;

/// One term of the chain. `index` runs from −1 (`𝒯`) upwards.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub index: i64,
    pub basis_set: HomogeneousSet,
    /// `𝒲_i = 𝒩_i ∖ 𝒩_{i−1}`; for index −1 this is `𝒯` itself.
    pub new_elements: Vec<BasisElement>,
    /// `k ↦ |𝒲_i ∩ ℬ_k|` for every `k` in `1..=n`.
    pub per_layer_counts: BTreeMap<usize, usize>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub i: i64,
    pub rank: usize,
    pub predicted: Option<usize>,
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerRow {
    pub i: i64,
    pub k: usize,
    pub count: usize,
    pub predicted: Option<usize>,
    pub matches: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct ChainReport {
    pub bound: MultiplicityBound,
    pub steps: Vec<ChainStep>,
    /// Rank of every step `i ≥ 1` against `q_{m,i+1+δ}` where the closed form applies.
    pub growth_check: Vec<GrowthRow>,
    /// Every `(i, k)` with `i ≥ 1` against `p_{m,k+1+δ+i−n}` where it applies.
    pub layer_check: Vec<LayerRow>,
}

impl ChainReport {
    pub fn step(&self, index: i64) -> Option<&ChainStep> {
        self.steps.iter().find(|s| s.index == index)
    }

    /// Ranks of steps `1, 2, …`.
    pub fn ranks(&self) -> Vec<usize> {
        self.steps
            .iter()
            .filter(|s| s.index >= 1)
            .map(|s| s.rank)
            .collect()
    }

    /// `𝒩_i ∖ 𝒩_{i−1}` as a set, for `i ≥ 0`.
    pub fn new_set(&self, index: i64) -> Option<BTreeSet<BasisElement>> {
        self.step(index)
            .map(|s| s.new_elements.iter().cloned().collect())
    }
}

/// `𝒯 = {∂₁, …, ∂_n}` and `𝒰 = 𝒯 ∪ {x_j ∂_k : 1 ≤ j < k ≤ n}`.
pub fn initial_sets(bound: &MultiplicityBound) -> (HomogeneousSet, HomogeneousSet) {
    let n = bound.n();
    let t: Vec<_> = (1..=n).map(BasisElement::derivation).collect();
    let linear = (1..=n).flat_map(|k| (1..k).map(move |j| BasisElement::from_parts(&[j], k)));
    let u: Vec<_> = t.iter().cloned().chain(linear).collect();
    (
        HomogeneousSet::new(*bound, t).expect("derivations are basis elements"),
        HomogeneousSet::new(*bound, u).expect("linear elements are basis elements"),
    )
}

/// Default chain depth: far enough to reach the unrefinable step, and the
/// `n`-th step when `m = 2`.
pub fn default_depth(bound: &MultiplicityBound) -> usize {
    if bound.m() == 2 {
        bound.n() + 1
    } else {
        bound.n()
    }
}

/// Closed-form range `1 ≤ i ≤ n − 1 − δ_{m,2}`.
pub fn closed_form_range(bound: &MultiplicityBound) -> std::ops::RangeInclusive<usize> {
    1..=(bound.n() - 1).saturating_sub(bound.delta())
}

/// Predicted rank of step `i`: `q_{m, i+1+δ}`.
pub fn predicted_rank(bound: &MultiplicityBound, i: usize) -> usize {
    count_q(bound.m(), i + 1 + bound.delta())
}

/// Predicted `|𝒲_i ∩ ℬ_k|`: `p_{m, k+1+δ+i−n}` for `n − i + 1 ≤ k ≤ n`, else 0.
pub fn predicted_layer(bound: &MultiplicityBound, i: usize, k: usize) -> usize {
    let n = bound.n();
    if k + i > n && k <= n {
        count_p(bound.m(), k + 1 + bound.delta() + i - n)
    } else {
        0
    }
}

/// The basis sets `𝒩₋₁, 𝒩₀, …, 𝒩_depth` of the chain, as index sets of `ring`.
pub fn chain_sets(ring: &LieRing, depth: usize) -> Vec<BasisSet> {
    let (t, _) = initial_sets(ring.bound());
    let mut sets = vec![ring.to_set(&t)];
    for _ in 0..=depth {
        let next = ring.idealizer(sets.last().expect("nonempty"));
        sets.push(next);
    }
    sets
}

/// Iterates the idealizer from `𝒯` up to step `depth`.
pub fn idealizer_chain(bound: &MultiplicityBound, depth: usize) -> ChainReport {
    idealizer_chain_in(&LieRing::new(*bound), depth)
}

pub fn idealizer_chain_in(ring: &LieRing, depth: usize) -> ChainReport {
    let bound = *ring.bound();
    let n = bound.n();
    let sets = chain_sets(ring, depth);

    let mut steps = Vec::with_capacity(sets.len());
    for (pos, set) in sets.iter().enumerate() {
        let index = pos as i64 - 1;
        let mut fresh = set.clone();
        if pos > 0 {
            debug_assert!(sets[pos - 1].is_subset(set), "chain must ascend");
            fresh.difference_with(&sets[pos - 1]);
        }
        let new_elements: Vec<BasisElement> =
            fresh.ones().map(|i| ring.basis()[i].clone()).collect();
        let mut per_layer_counts: BTreeMap<usize, usize> = (1..=n).map(|k| (k, 0)).collect();
        for b in &new_elements {
            *per_layer_counts.get_mut(&b.k).expect("k in range") += 1;
        }
        steps.push(ChainStep {
            index,
            basis_set: ring.to_homogeneous(set),
            rank: new_elements.len(),
            new_elements,
            per_layer_counts,
        });
    }

    let range = closed_form_range(&bound);
    let mut growth_check = Vec::new();
    let mut layer_check = Vec::new();
    for s in steps.iter().filter(|s| s.index >= 1) {
        let i = s.index as usize;
        let in_range = range.contains(&i);
        let predicted = in_range.then(|| predicted_rank(&bound, i));
        growth_check.push(GrowthRow {
            i: s.index,
            rank: s.rank,
            predicted,
            matches: predicted.map(|p| p == s.rank),
        });
        for (&k, &count) in &s.per_layer_counts {
            let predicted = in_range.then(|| predicted_layer(&bound, i, k));
            layer_check.push(LayerRow {
                i: s.index,
                k,
                count,
                predicted,
                matches: predicted.map(|p| p == count),
            });
        }
    }

    ChainReport {
        bound,
        steps,
        growth_check,
        layer_check,
    }
}

/// Closed-form `𝒲_i`: elements `x^Λ ∂_k` with `n − i + 1 ≤ k ≤ n` and
/// `wt(Λ) = k + i − n + 1 + δ_{m,2}`, minus those of degree at most one
/// (which already lie in `𝒰`).
pub fn predicted_new_elements(bound: &MultiplicityBound, i: usize) -> Result<Vec<BasisElement>> {
    let range = closed_form_range(bound);
    if !range.contains(&i) {
        return Err(Error::StepOutOfRange {
            i,
            lo: *range.start(),
            hi: *range.end(),
        });
    }
    let n = bound.n();
    Ok(crate::liering::enumerate_basis(bound)
        .into_iter()
        .filter(|b| b.k + i > n && b.degree() >= 2 && b.weight() + n == b.k + i + 1 + bound.delta())
        .collect())
}

/// Checks ranks against `q_{m,·}`, layer counts against `p_{m,·}` and each
/// new layer against [`predicted_new_elements`], across the closed-form range.
pub fn verify_growth(bound: &MultiplicityBound, report: &ChainReport) -> Verdict {
    let mut v = Verdict::new(format!("growth m={} n={}", bound.m(), bound.n()));
    if report.bound != *bound {
        v.check(false, || "report computed for a different bound".into());
        return v;
    }
    for i in closed_form_range(bound) {
        let Some(step) = report.step(i as i64) else {
            v.note(format!("chain not computed up to i={i}"));
            continue;
        };
        let want = predicted_rank(bound, i);
        v.check(step.rank == want, || {
            format!("i={i}: rank {} but q predicts {want}", step.rank)
        });
        for (&k, &count) in &step.per_layer_counts {
            let want = predicted_layer(bound, i, k);
            v.check(count == want, || {
                format!("i={i} k={k}: layer count {count} but p predicts {want}")
            });
        }
        let predicted: BTreeSet<_> = predicted_new_elements(bound, i)
            .expect("i in range")
            .into_iter()
            .collect();
        let computed: BTreeSet<_> = step.new_elements.iter().cloned().collect();
        v.check(predicted == computed, || {
            let extra: Vec<_> = computed.difference(&predicted).collect();
            let missing: Vec<_> = predicted.difference(&computed).collect();
            format!("i={i}: computed-only {extra:?}, predicted-only {missing:?}")
        });
    }
    v
}

/// Elements `x^Λ ∂_k ∈ ℬ` with `wt(Λ) = k + 1`, `Λ` unrefinable in `𝒫art_m`
/// and satisfying the first excludant condition.
pub fn unrefinable_step_prediction(bound: &MultiplicityBound) -> Vec<BasisElement> {
    crate::liering::enumerate_basis(bound)
        .into_iter()
        .filter(|b| {
            b.weight() == b.k + 1
                && is_unrefinable(&b.partition, bound.m())
                && excludant_condition(&b.partition, b.k, bound)
                    .map(|idx| idx.strong == Some(1))
                    .unwrap_or(false)
        })
        .collect()
}

/// Compares step `n − δ_{m,2}` of the chain with
/// [`unrefinable_step_prediction`].
pub fn verify_unrefinable_step(bound: &MultiplicityBound) -> Result<Verdict> {
    let n = bound.n();
    if n < 4 {
        return Err(Error::Precondition(format!(
            "unrefinable step needs n >= 4, got {n}"
        )));
    }
    let step = n - bound.delta();
    let report = idealizer_chain(bound, step);
    let computed = report.new_set(step as i64).expect("step computed");
    let predicted: BTreeSet<_> = unrefinable_step_prediction(bound).into_iter().collect();
    let mut v = Verdict::new(format!("unrefinable step m={} n={}", bound.m(), n));
    for b in computed.union(&predicted) {
        let (c, p) = (computed.contains(b), predicted.contains(b));
        v.check(c == p, || {
            format!("{b}: in chain step {step} = {c}, predicted = {p}")
        });
    }
    v.note(format!("step {step} has {} elements", computed.len()));
    Ok(v)
}

/// `fil_{i,j} = x_i x_j ∂_{i+j}`.
pub fn filler(i: usize, j: usize) -> BasisElement {
    BasisElement::from_parts(&[i, j], i + j)
}

/// Which clause of the 1-step excludant condition holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OneStepBranch {
    /// 1-step refinable, first excludant condition.
    A,
    /// 1-step refinable, second excludant condition, every refinement has `θ_{e₁} = 1`.
    B,
    /// 1-step refinable, third excludant and second weak excludant
    /// conditions, `λ_{e₁+e₂} = 1`, unique refinement splitting `e₁ + e₂`.
    C,
    /// Unrefinable, second weak excludant condition.
    D,
}

/// The clause of the 1-step excludant condition satisfied by `x^Λ ∂_k`
/// (`m = 2`), or `None`.
pub fn one_step_branch(
    lambda: &crate::partitions::Partition,
    k: usize,
    n: usize,
) -> Result<Option<OneStepBranch>> {
    one_step_branch_with(lambda, k, n, &mut RefinementDag::new(2))
}

fn one_step_branch_with(
    lambda: &crate::partitions::Partition,
    k: usize,
    n: usize,
    dag: &mut RefinementDag,
) -> Result<Option<OneStepBranch>> {
    let bound = MultiplicityBound::new(2, n)?;
    if lambda.weight() != k + 1 {
        return Err(Error::WeightMismatch {
            weight: lambda.weight(),
            expected: k + 1,
        });
    }
    let idx = excludant_condition(lambda, k, &bound)?;
    let profile = excludant_profile(lambda, &bound)?;
    let steps = dag.steps(lambda);

    if steps == 0 {
        return Ok((idx.weak == Some(2)).then_some(OneStepBranch::D));
    }
    if steps != 1 {
        return Ok(None);
    }
    let refs = refinements(lambda, 2, None);
    match idx.strong {
        Some(1) => Ok(Some(OneStepBranch::A)),
        Some(2) => {
            let e1 = profile.excludant(1).expect("strong index 2 needs e1");
            let all_fill = refs.iter().all(|theta| theta.mult(e1) == 1);
            Ok(all_fill.then_some(OneStepBranch::B))
        }
        Some(3) if idx.weak == Some(2) => {
            let e1 = profile.excludant(1).expect("e1");
            let e2 = profile.excludant(2).expect("e2");
            if lambda.mult(e1 + e2) != 1 {
                return Ok(None);
            }
            let expected = lambda
                .with_removed(e1 + e2)
                .expect("λ_{e1+e2} = 1")
                .with_added(e1, 1)
                .with_added(e2, 1);
            Ok((refs == [expected]).then_some(OneStepBranch::C))
        }
        _ => Ok(None),
    }
}

pub fn one_step_excludant_condition(
    lambda: &crate::partitions::Partition,
    k: usize,
    n: usize,
) -> Result<bool> {
    Ok(one_step_branch(lambda, k, n)?.is_some())
}

/// The three sporadic elements at `n = 8`: `x₂x₇∂₈`, `x₄x₅∂₈`, `x₂x₄∂₅`.
pub fn nth_step_exceptions() -> Vec<BasisElement> {
    let mut v = vec![
        BasisElement::from_parts(&[2, 7], 8),
        BasisElement::from_parts(&[4, 5], 8),
        BasisElement::from_parts(&[2, 4], 5),
    ];
    v.sort();
    v
}

/// Predicted `𝒩_n ∖ 𝒩_{n−1}` for `m = 2`: elements with `wt(Λ) = k + 1`
/// satisfying the 1-step excludant condition, together with `x^Λ ∂_n`
/// where `Λ` is triangular or weak-triangular of weight `n + 2`.
pub fn nth_step_prediction(n: usize) -> Result<Vec<BasisElement>> {
    let bound = MultiplicityBound::new(2, n)?;
    let mut dag = RefinementDag::new(2);
    let mut out = Vec::new();
    for b in crate::liering::enumerate_basis(&bound) {
        let w = b.weight();
        let keep = if w == b.k + 1 {
            one_step_branch_with(&b.partition, b.k, n, &mut dag)?.is_some()
        } else if w == b.k + 2 && b.k == n {
            let s = shape_predicates(&b.partition);
            s.is_triangular || s.is_weak_triangular
        } else {
            false
        };
        if keep {
            out.push(b);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NthStepReport {
    pub n: usize,
    pub computed: Vec<BasisElement>,
    pub predicted: Vec<BasisElement>,
    /// In the chain step but not predicted.
    pub computed_only: Vec<BasisElement>,
    /// Predicted but absent from the chain step.
    pub predicted_only: Vec<BasisElement>,
    pub passed: bool,
}

impl NthStepReport {
    pub fn symmetric_difference(&self) -> Vec<BasisElement> {
        let mut v: Vec<_> = self
            .computed_only
            .iter()
            .chain(&self.predicted_only)
            .cloned()
            .collect();
        v.sort();
        v
    }

    pub fn verdict(&self) -> Verdict {
        let mut v = Verdict::new(format!("nth step n={}", self.n));
        let diff = self.symmetric_difference();
        let want = if self.n == 8 {
            nth_step_exceptions()
        } else {
            Vec::new()
        };
        v.check(diff == want, || {
            format!(
                "computed-only {:?}, predicted-only {:?}, expected exceptions {want:?}",
                self.computed_only, self.predicted_only
            )
        });
        for b in &self.computed_only {
            v.note(format!("{b}: in chain, not predicted"));
        }
        for b in &self.predicted_only {
            v.note(format!("{b}: predicted, not in chain"));
        }
        v
    }
}

/// Computes `𝒩_n ∖ 𝒩_{n−1}` for `m = 2` and compares it with
/// [`nth_step_prediction`]; at `n = 8` the difference must be exactly
/// [`nth_step_exceptions`], elsewhere empty.
pub fn verify_nth_step(n: usize) -> Result<NthStepReport> {
    if n < 5 {
        return Err(Error::Precondition(format!(
            "n-th step check needs n >= 5, got {n}"
        )));
    }
    let bound = MultiplicityBound::new(2, n)?;
    let report = idealizer_chain(&bound, n);
    let computed = report.new_set(n as i64).expect("step n computed");
    let predicted: BTreeSet<_> = nth_step_prediction(n)?.into_iter().collect();
    let computed_only: Vec<_> = computed.difference(&predicted).cloned().collect();
    let predicted_only: Vec<_> = predicted.difference(&computed).cloned().collect();
    let mut out = NthStepReport {
        n,
        computed: computed.into_iter().collect(),
        predicted: predicted.into_iter().collect(),
        computed_only,
        predicted_only,
        passed: false,
    };
    out.passed = out.verdict().passed;
    Ok(out)
}
