//! Integer partitions with bounded multiplicities.
//!
//! A [`Partition`] is stored as its multiplicity vector `λ = (λ₁, λ₂, …)`
//! with trailing zeros trimmed, so equal partitions compare equal
//! structurally. The same vector doubles as the exponent vector of a power
//! monomial `x^Λ` in [`crate::liering`].
//!
//! Besides enumeration and the counting sequences `p_{m,i}` / `q_{m,i}`,
//! this module implements the refinement calculus (a part `j` replaced by
//! smaller parts summing to `j` without breaking the multiplicity bound)
//! and the excludant bookkeeping relative to `f = x₁^{m-1} ⋯ x_{n-1}^{m-1}`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite multiplicity vector. `mults[i - 1]` is the multiplicity of part `i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    mults: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { mults: Vec::new() }
    }

    /// Builds a partition from its multiplicity vector, trimming trailing zeros.
    pub fn from_mults(mut mults: Vec<usize>) -> Self {
        while mults.last() == Some(&0) {
            mults.pop();
        }
        Partition { mults }
    }

    /// Builds a partition from a list of parts in any order.
    ///
    /// Panics if a part is zero; use [`Partition::try_from_parts`] for
    /// untrusted input.
    pub fn from_parts(parts: &[usize]) -> Self {
        Self::try_from_parts(parts).expect("parts must be positive")
    }

    pub fn try_from_parts(parts: &[usize]) -> Result<Self> {
        let mut mults = Vec::new();
        for &p in parts {
            if p == 0 {
                return Err(Error::Parse("parts must be positive".into()));
            }
            if mults.len() < p {
                mults.resize(p, 0);
            }
            mults[p - 1] += 1;
        }
        Ok(Self::from_mults(mults))
    }

    /// Multiplicity of part `i` (zero outside the support, and for `i = 0`).
    #[inline]
    pub fn mult(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.mults.get(i - 1).copied().unwrap_or(0)
        }
    }

    pub fn mults(&self) -> &[usize] {
        &self.mults
    }

    /// `Σ i·λᵢ`.
    pub fn weight(&self) -> usize {
        self.mults
            .iter()
            .enumerate()
            .map(|(i, &l)| (i + 1) * l)
            .sum()
    }

    /// Number of parts counted with multiplicity (the degree of `x^Λ`).
    pub fn len(&self) -> usize {
        self.mults.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    /// Largest part, or 0 for the empty partition.
    pub fn max_part(&self) -> usize {
        self.mults.len()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.mults.iter().copied().max().unwrap_or(0)
    }

    /// The distinct parts, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.mults
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > 0)
            .map(|(i, _)| i + 1)
    }

    /// Parts in descending order, repeated according to multiplicity.
    pub fn parts_desc(&self) -> impl Iterator<Item = usize> + '_ {
        self.mults
            .iter()
            .enumerate()
            .rev()
            .flat_map(|(i, &l)| std::iter::repeat_n(i + 1, l))
    }

    pub fn to_parts_desc(&self) -> Vec<usize> {
        self.parts_desc().collect()
    }

    /// Adds `count` copies of `part`.
    pub fn with_added(&self, part: usize, count: usize) -> Partition {
        assert!(part > 0);
        let mut mults = self.mults.clone();
        if mults.len() < part {
            mults.resize(part, 0);
        }
        mults[part - 1] += count;
        Partition::from_mults(mults)
    }

    /// Removes one copy of `part`, if present.
    pub fn with_removed(&self, part: usize) -> Option<Partition> {
        if self.mult(part) == 0 {
            return None;
        }
        let mut mults = self.mults.clone();
        mults[part - 1] -= 1;
        Some(Partition::from_mults(mults))
    }

    /// Multiplicity-wise sum, i.e. the exponent vector of `x^Λ · x^Θ`.
    pub fn sum(&self, other: &Partition) -> Partition {
        let len = self.mults.len().max(other.mults.len());
        let mults = (1..=len).map(|i| self.mult(i) + other.mult(i)).collect();
        Partition::from_mults(mults)
    }

    /// True when `self ∈ 𝒫art_m(max_part)`.
    pub fn fits(&self, m: usize, max_part: usize) -> bool {
        self.max_part() <= max_part && self.max_multiplicity() < m
    }

    pub fn check_fits(&self, m: usize, max_part: usize) -> Result<()> {
        if self.max_part() > max_part {
            return Err(Error::PartTooLarge {
                part: self.max_part(),
                max: max_part,
            });
        }
        if let Some(part) = self.support().find(|&p| self.mult(p) >= m) {
            return Err(Error::MultiplicityTooLarge {
                part,
                mult: self.mult(part),
                max: m - 1,
            });
        }
        Ok(())
    }
}

/// Canonical order: descending lexicographic on the descending part list,
/// so `{4} < {3,1} < {2,2} < {2,1,1}` and the empty partition sorts last.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts_desc().cmp(self.parts_desc())
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.parts_desc().map(|p| p.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split('+')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::try_from_parts(&parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.parts_desc())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::try_from_parts(&parts).map_err(serde::de::Error::custom)
    }
}

/// Multiplicity bound `m` (parts repeat at most `m − 1` times) together with
/// the number `n` of derivations in the ambient Lie ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiplicityBound {
    m: usize,
    n: usize,
}

impl MultiplicityBound {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 2 || n < 1 {
            return Err(Error::InvalidBound { m, n });
        }
        Ok(MultiplicityBound { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `δ_{m,2}`.
    pub fn delta(&self) -> usize {
        usize::from(self.m == 2)
    }

    pub fn max_mult(&self) -> usize {
        self.m - 1
    }
}

/// All partitions of `total` with parts at most `max_part` and every
/// multiplicity below `m`, in canonical order.
pub fn enumerate_partitions(total: usize, m: usize, max_part: usize) -> Vec<Partition> {
    fn rec(
        remaining: usize,
        top: usize,
        m: usize,
        mults: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition::from_mults(mults.clone()));
            return;
        }
        for p in (1..=top.min(remaining)).rev() {
            if mults[p - 1] + 1 < m {
                mults[p - 1] += 1;
                rec(remaining - p, p, m, mults, out);
                mults[p - 1] -= 1;
            }
        }
    }

    assert!(m >= 2, "multiplicity bound must be at least 2");
    let mut out = Vec::new();
    let top = max_part.min(total);
    let mut mults = vec![0; top];
    rec(total, top, m, &mut mults, &mut out);
    out
}

/// Every partition in `𝒫art_m(max_part)`, any weight, in canonical order.
pub fn bounded_partitions(m: usize, max_part: usize) -> Vec<Partition> {
    assert!(m >= 2, "multiplicity bound must be at least 2");
    let mut out = Vec::with_capacity(m.pow(max_part as u32));
    let mut mults = vec![0usize; max_part];
    loop {
        out.push(Partition::from_mults(mults.clone()));
        // mixed-radix increment
        let mut i = 0;
        loop {
            if i == max_part {
                out.sort();
                return out;
            }
            mults[i] += 1;
            if mults[i] < m {
                break;
            }
            mults[i] = 0;
            i += 1;
        }
    }
}

/// `p_{m,i}`: partitions of `i` into at least two parts, each repeated at
/// most `m − 1` times.
pub fn count_p(m: usize, i: usize) -> usize {
    enumerate_partitions(i, m, i)
        .iter()
        .filter(|p| p.len() >= 2)
        .count()
}

/// `q_{m,i} = Σ_{j ≤ i} p_{m,j}`.
pub fn count_q(m: usize, i: usize) -> usize {
    (1..=i).map(|j| count_p(m, j)).sum()
}

/// Refinements of `lambda` in `𝒫art_m`.
///
/// One copy of a part `j` is replaced by parts `j₁ < … < j_ℓ < j` taken
/// `a₁, …, a_ℓ` times with `Σ aᵢ jᵢ = j` and `aᵢ ≤ m − 1 − λ_{jᵢ}`. With
/// `arity = Some(a)` only refinements with `Σ aᵢ = a` are kept. The result
/// is deduplicated and in canonical order.
pub fn refinements(lambda: &Partition, m: usize, arity: Option<usize>) -> Vec<Partition> {
    fn decompose(
        remaining: usize,
        top: usize,
        caps: &[usize],
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if remaining == 0 {
            out.push(chosen.clone());
            return;
        }
        for p in (1..=top.min(remaining)).rev() {
            for a in 1..=caps[p - 1].min(remaining / p) {
                chosen.push((p, a));
                decompose(remaining - a * p, p - 1, caps, chosen, out);
                chosen.pop();
            }
        }
    }

    let mut found = BTreeSet::new();
    for j in lambda.support() {
        let caps: Vec<usize> = (1..j)
            .map(|p| (m - 1).saturating_sub(lambda.mult(p)))
            .collect();
        let mut decompositions = Vec::new();
        decompose(j, j - 1, &caps, &mut Vec::new(), &mut decompositions);
        let base = lambda.with_removed(j).expect("j is in the support");
        for d in decompositions {
            let a: usize = d.iter().map(|&(_, a)| a).sum();
            if arity.is_some_and(|want| want != a) {
                continue;
            }
            let theta = d
                .iter()
                .fold(base.clone(), |acc, &(p, a)| acc.with_added(p, a));
            found.insert(theta);
        }
    }
    found.into_iter().collect()
}

/// 2-refinements, the edges `Θ ≺ Λ` of the refinement DAG.
pub fn two_refinements(lambda: &Partition, m: usize) -> Vec<Partition> {
    refinements(lambda, m, Some(2))
}

pub fn is_unrefinable(lambda: &Partition, m: usize) -> bool {
    refinements(lambda, m, None).is_empty()
}

/// Length of the longest chain of 2-refinements starting at `lambda`
/// (every such chain ends at an unrefinable partition). Zero for
/// unrefinable partitions.
pub fn refinability_steps(lambda: &Partition, m: usize) -> usize {
    RefinementDag::new(m).steps(lambda)
}

/// Memoized walk over the 2-refinement DAG for a fixed `m`.
#[derive(Debug)]
pub struct RefinementDag {
    m: usize,
    memo: HashMap<Partition, usize>,
}

impl RefinementDag {
    pub fn new(m: usize) -> Self {
        RefinementDag {
            m,
            memo: HashMap::new(),
        }
    }

    pub fn steps(&mut self, lambda: &Partition) -> usize {
        if let Some(&t) = self.memo.get(lambda) {
            return t;
        }
        let t = two_refinements(lambda, self.m)
            .iter()
            .map(|theta| 1 + self.steps(theta))
            .max()
            .unwrap_or(0);
        self.memo.insert(lambda.clone(), t);
        t
    }
}

/// Excludants `e₁ < … < e_s` of a partition with multiplicities `μᵢ`, so
/// that `x^Λ · Π x_{eᵢ}^{μᵢ} = Π_{i<n} x_i^{m−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcludantProfile {
    pub excludants: Vec<(usize, usize)>,
}

impl ExcludantProfile {
    /// The `i`-th excludant, 1-based.
    pub fn excludant(&self, i: usize) -> Option<usize> {
        i.checked_sub(1)
            .and_then(|i| self.excludants.get(i))
            .map(|&(e, _)| e)
    }

    pub fn minimum(&self) -> Option<usize> {
        self.excludant(1)
    }

    pub fn len(&self) -> usize {
        self.excludants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.excludants.is_empty()
    }
}

pub fn excludant_profile(
    lambda: &Partition,
    bound: &MultiplicityBound,
) -> Result<ExcludantProfile> {
    lambda.check_fits(bound.m(), bound.n() - 1)?;
    let excludants = (1..bound.n())
        .filter_map(|i| {
            let mu = bound.max_mult() - lambda.mult(i);
            (mu > 0).then_some((i, mu))
        })
        .collect();
    Ok(ExcludantProfile { excludants })
}

/// Indices realizing the (strong) and weak excludant conditions for
/// `x^Λ ∂_k`. Both are 1-based; `None` when no index qualifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcludantIndices {
    /// Least `i` with `n < k + eᵢ`.
    pub strong: Option<usize>,
    /// Least `i` with `n < k + e₁ + … + eᵢ`.
    pub weak: Option<usize>,
}

pub fn excludant_condition(
    lambda: &Partition,
    k: usize,
    bound: &MultiplicityBound,
) -> Result<ExcludantIndices> {
    let n = bound.n();
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { k, n });
    }
    let profile = excludant_profile(lambda, bound)?;
    let strong = profile
        .excludants
        .iter()
        .position(|&(e, _)| n < k + e)
        .map(|i| i + 1);
    let mut acc = k;
    let weak = profile
        .excludants
        .iter()
        .position(|&(e, _)| {
            acc += e;
            n < acc
        })
        .map(|i| i + 1);
    Ok(ExcludantIndices { strong, weak })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape {
    /// `Λ = {1, 2, …, t}` for some `t ≥ 1`.
    pub is_triangular: bool,
    /// `Λ = {2, 3, …, t}` for some `t ≥ 2`.
    pub is_weak_triangular: bool,
}

pub fn shape_predicates(lambda: &Partition) -> Shape {
    let mults = lambda.mults();
    let ones_from = |start: usize| mults.len() > start && mults[start..].iter().all(|&l| l == 1);
    Shape {
        is_triangular: ones_from(0),
        is_weak_triangular: mults.first() == Some(&0) && ones_from(1),
    }
}

/// `t` such that `x = t(t+1)/2`, if any.
pub fn triangular_root(x: usize) -> Option<usize> {
    (0..)
        .map(|t| (t, t * (t + 1) / 2))
        .take_while(|&(_, tr)| tr <= x)
        .find(|&(_, tr)| tr == x)
        .map(|(t, _)| t)
}
