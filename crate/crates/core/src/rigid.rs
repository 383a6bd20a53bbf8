//! Rigid commutators `⟨b|I⟩` and their correspondence with the basis at `m = 2`.
//!
//! A rigid commutator is a base `b ∈ [1, n]` and a puncture set
//! `I ⊆ {1, …, b − 1}`, stored as a bitmask. Commutation is purely
//! combinatorial:
//!
//! ```text
//! [⟨a|I⟩, ⟨b|J⟩] = ⟨max(a,b) | (I ∪ J) ∖ {min(a,b)}⟩   if min(a,b) ∈ I ∪ J
//!                  [∅]                                   otherwise
//! ```
//!
//! The map `x^Λ ∂_k ↦ ⟨k | supp Λ⟩`, `0 ↦ [∅]` is a bijection from
//! `ℬ ∪ {0}` onto all rigid commutators. No permutation is ever built.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::idealizer_chain;
use crate::error::{Error, Result};
use crate::liering::{bracket_basis, enumerate_basis, BasisElement};
use crate::partitions::{MultiplicityBound, Partition};
use crate::report::Verdict;

/// Largest supported base; punctures live in a `u64`.
pub const MAX_BASE: usize = 63;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "RigidJson", try_from = "RigidJson")]
pub enum RigidCommutator {
    /// `[∅]`.
    Trivial,
    /// `⟨base|punctures⟩`; bit `i − 1` of `punctures` marks puncture `i`.
    Punctured { base: usize, punctures: u64 },
}

impl RigidCommutator {
    pub fn new(base: usize, punctures: &[usize]) -> Result<Self> {
        if base == 0 || base > MAX_BASE {
            return Err(Error::IndexOutOfRange {
                k: base,
                n: MAX_BASE,
            });
        }
        let mut mask = 0u64;
        for &i in punctures {
            if i == 0 || i >= base {
                return Err(Error::Precondition(format!(
                    "puncture {i} not in 1..{base}"
                )));
            }
            mask |= 1 << (i - 1);
        }
        Ok(RigidCommutator::Punctured {
            base,
            punctures: mask,
        })
    }

    /// `t_i = ⟨i|∅⟩`.
    pub fn t(i: usize) -> Self {
        Self::new(i, &[]).expect("valid base")
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, RigidCommutator::Trivial)
    }

    pub fn base(&self) -> Option<usize> {
        match *self {
            RigidCommutator::Trivial => None,
            RigidCommutator::Punctured { base, .. } => Some(base),
        }
    }

    pub fn puncture_mask(&self) -> u64 {
        match *self {
            RigidCommutator::Trivial => 0,
            RigidCommutator::Punctured { punctures, .. } => punctures,
        }
    }

    pub fn punctures(&self) -> Vec<usize> {
        let mask = self.puncture_mask();
        (1..=64).filter(|i| mask >> (i - 1) & 1 == 1).collect()
    }
}

/// `[a, b]`; any bracket with `[∅]` is `[∅]`.
pub fn rigid_bracket(a: RigidCommutator, b: RigidCommutator) -> RigidCommutator {
    use RigidCommutator::*;
    match (a, b) {
        (
            Punctured {
                base: ba,
                punctures: ia,
            },
            Punctured {
                base: bb,
                punctures: ib,
            },
        ) => {
            let lo = ba.min(bb);
            let hi = ba.max(bb);
            let union = ia | ib;
            let bit = 1u64 << (lo - 1);
            if union & bit != 0 {
                Punctured {
                    base: hi,
                    punctures: union & !bit,
                }
            } else {
                Trivial
            }
        }
        _ => Trivial,
    }
}

/// `f(x^Λ ∂_k) = ⟨k | supp Λ⟩`. Requires `m = 2`.
pub fn to_rigid(u: &BasisElement, bound: &MultiplicityBound) -> Result<RigidCommutator> {
    if bound.m() != 2 {
        return Err(Error::RequiresBinary(bound.m()));
    }
    if !u.is_valid(bound) {
        return Err(Error::Precondition(format!(
            "{u} is not a basis element for m = 2"
        )));
    }
    let support: Vec<usize> = u.partition.support().collect();
    RigidCommutator::new(u.k, &support)
}

/// `f` extended by `f(0) = [∅]`.
pub fn to_rigid_or_trivial(
    u: Option<&BasisElement>,
    bound: &MultiplicityBound,
) -> Result<RigidCommutator> {
    match u {
        None => {
            if bound.m() != 2 {
                return Err(Error::RequiresBinary(bound.m()));
            }
            Ok(RigidCommutator::Trivial)
        }
        Some(u) => to_rigid(u, bound),
    }
}

/// `f⁻¹`: `None` for `[∅]`.
pub fn from_rigid(r: RigidCommutator) -> Option<BasisElement> {
    match r {
        RigidCommutator::Trivial => None,
        RigidCommutator::Punctured { base, .. } => Some(BasisElement {
            partition: Partition::from_parts(&r.punctures()),
            k: base,
        }),
    }
}

/// All of `ℛ*` with base at most `n`, ordered by base then mask.
pub fn all_rigid(n: usize) -> Vec<RigidCommutator> {
    assert!(n <= MAX_BASE);
    (1..=n)
        .flat_map(|base| {
            (0..1u64 << (base - 1))
                .map(move |punctures| RigidCommutator::Punctured { base, punctures })
        })
        .collect()
}

/// `f` maps `ℬ` one-to-one onto `ℛ*` with `f⁻¹ ∘ f = id`, and `ℛ ∪ {[∅]}`
/// is closed under [`rigid_bracket`].
pub fn check_bijection(n: usize) -> Result<Verdict> {
    let bound = MultiplicityBound::new(2, n)?;
    if n > MAX_BASE {
        return Err(Error::IndexOutOfRange { k: n, n: MAX_BASE });
    }
    let mut v = Verdict::new(format!("f bijection n={n}"));
    let mut image = BTreeSet::new();
    for u in enumerate_basis(&bound) {
        let r = to_rigid(&u, &bound)?;
        v.check(image.insert(r), || format!("{u} collides at {r}"));
        v.check(from_rigid(r).as_ref() == Some(&u), || {
            format!("f^-1(f({u})) != {u}")
        });
    }
    let all: BTreeSet<_> = all_rigid(n).into_iter().collect();
    v.check(image == all, || {
        format!("image has {} elements, R* has {}", image.len(), all.len())
    });
    v.check(from_rigid(RigidCommutator::Trivial).is_none(), || {
        "f^-1([]) is not zero".into()
    });
    Ok(v)
}

/// Every bracket of two elements of `ℛ*` (base at most `n`) is trivial or
/// again in `ℛ*`.
pub fn check_closure(n: usize) -> Verdict {
    let all = all_rigid(n);
    let mut v = Verdict::new(format!("rigid closure n={n}"));
    for &a in &all {
        for &b in &all {
            let c = rigid_bracket(a, b);
            let ok = match c {
                RigidCommutator::Trivial => true,
                RigidCommutator::Punctured { base, punctures } => {
                    base <= n && punctures >> (base - 1) == 0
                }
            };
            v.check(ok, || format!("[{a}, {b}] = {c}"));
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreservationReport {
    pub n: usize,
    /// Ordered pairs examined.
    pub pairs: usize,
    /// Pairs where the bracket is nonzero or the supports are disjoint.
    pub hypothesis_pairs: usize,
    pub violations: Vec<(BasisElement, BasisElement)>,
}

impl PreservationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn verdict(&self) -> Verdict {
        let mut v = Verdict::new(format!("bracket preservation n={}", self.n));
        v.checked = self.hypothesis_pairs;
        if let Some((u, w)) = self.violations.first() {
            v.passed = false;
            v.failure = Some(format!(
                "f([{u}, {w}]) differs from [f({u}), f({w})] ({} violations)",
                self.violations.len()
            ));
        }
        v
    }
}

/// Checks `f([u, v]) = [f(u), f(v)]` over all ordered pairs of `ℬ` for
/// which `[u, v] ≠ 0` or `supp Λ ∩ supp Γ = ∅`.
pub fn check_bracket_preservation(n: usize) -> Result<PreservationReport> {
    let bound = MultiplicityBound::new(2, n)?;
    let basis = enumerate_basis(&bound);
    let images: Vec<RigidCommutator> = basis
        .iter()
        .map(|u| to_rigid(u, &bound))
        .collect::<Result<_>>()?;
    let rows: Vec<(usize, Vec<(BasisElement, BasisElement)>)> = basis
        .par_iter()
        .enumerate()
        .map(|(i, u)| {
            let mut count = 0;
            let mut bad = Vec::new();
            for (j, v) in basis.iter().enumerate() {
                let lie = bracket_basis(u, v, &bound);
                let disjoint = images[i].puncture_mask() & images[j].puncture_mask() == 0;
                if lie.is_none() && !disjoint {
                    continue;
                }
                count += 1;
                let lhs = to_rigid_or_trivial(lie.as_ref().map(|(_, w)| w), &bound)
                    .expect("bracket stays in the basis");
                if lhs != rigid_bracket(images[i], images[j]) {
                    bad.push((u.clone(), v.clone()));
                }
            }
            (count, bad)
        })
        .collect();
    let mut report = PreservationReport {
        n,
        pairs: basis.len() * basis.len(),
        hypothesis_pairs: 0,
        violations: Vec::new(),
    };
    for (count, bad) in rows {
        report.hypothesis_pairs += count;
        report.violations.extend(bad);
    }
    Ok(report)
}

fn in_set_or_trivial(s: &BTreeSet<RigidCommutator>, r: RigidCommutator) -> bool {
    r.is_trivial() || s.contains(&r)
}

/// `{ r ∈ ℛ* : [r, s] ∈ S ∪ {[∅]} for all s ∈ S }`.
///
/// `S` must consist of nontrivial commutators with base at most `n`, be
/// closed under commutation and be normalized by `t₁, …, t_n`.
pub fn rigid_set_normalizer(
    s: &BTreeSet<RigidCommutator>,
    n: usize,
) -> Result<BTreeSet<RigidCommutator>> {
    if n == 0 || n > MAX_BASE {
        return Err(Error::IndexOutOfRange { k: n, n: MAX_BASE });
    }
    if let Some(bad) = s.iter().find(|r| r.base().is_none_or(|b| b > n)) {
        return Err(Error::Precondition(format!(
            "{bad} is not in R* for n = {n}"
        )));
    }
    for &a in s {
        for &b in s {
            let c = rigid_bracket(a, b);
            if !in_set_or_trivial(s, c) {
                return Err(Error::Precondition(format!(
                    "set not closed: [{a}, {b}] = {c}"
                )));
            }
        }
        for i in 1..=n {
            let c = rigid_bracket(RigidCommutator::t(i), a);
            if !in_set_or_trivial(s, c) {
                return Err(Error::Precondition(format!(
                    "set not normalized by t{i}: [t{i}, {a}] = {c}"
                )));
            }
        }
    }
    let members: Vec<RigidCommutator> = s.iter().copied().collect();
    Ok(all_rigid(n)
        .into_par_iter()
        .filter(|&r| {
            members
                .iter()
                .all(|&g| in_set_or_trivial(s, rigid_bracket(r, g)))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect())
}

/// Compares the rigid chain started at `{t₁, …, t_n}` with the image under
/// `f` of the idealizer chain, step by step from −1 to `depth`.
pub fn verify_chain_correspondence(n: usize, depth: usize) -> Result<Verdict> {
    let bound = MultiplicityBound::new(2, n)?;
    let report = idealizer_chain(&bound, depth);
    let mut v = Verdict::new(format!("chain correspondence n={n} depth={depth}"));
    let mut rigid: BTreeSet<RigidCommutator> = (1..=n).map(RigidCommutator::t).collect();
    for step in &report.steps {
        if step.index >= 0 {
            rigid = rigid_set_normalizer(&rigid, n)?;
        }
        let image: BTreeSet<RigidCommutator> = step
            .basis_set
            .iter()
            .map(|u| to_rigid(u, &bound))
            .collect::<Result<_>>()?;
        v.check(image == rigid, || {
            let extra: Vec<_> = rigid.difference(&image).collect();
            let missing: Vec<_> = image.difference(&rigid).collect();
            format!(
                "step {}: rigid-only {extra:?}, lie-only {missing:?}",
                step.index
            )
        });
    }
    Ok(v)
}

/// Text form `[b;|i,j]`; the trivial commutator is `[]`.
impl fmt::Display for RigidCommutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base() {
            None => f.write_str("[]"),
            Some(b) => {
                let p: Vec<String> = self.punctures().iter().map(|i| i.to_string()).collect();
                write!(f, "[{b};|{}]", p.join(","))
            }
        }
    }
}

impl fmt::Debug for RigidCommutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RigidCommutator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad rigid commutator {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(bad)?;
        if inner.is_empty() {
            return Ok(RigidCommutator::Trivial);
        }
        let (base, rest) = inner.split_once(";|").ok_or_else(bad)?;
        let base: usize = base.trim().parse().map_err(|_| bad())?;
        let punctures = rest
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        RigidCommutator::new(base, &punctures)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RigidJson {
    Trivial { trivial: bool },
    Punctured { base: usize, punctures: Vec<usize> },
}

impl From<RigidCommutator> for RigidJson {
    fn from(r: RigidCommutator) -> Self {
        match r.base() {
            None => RigidJson::Trivial { trivial: true },
            Some(base) => RigidJson::Punctured {
                base,
                punctures: r.punctures(),
            },
        }
    }
}

impl TryFrom<RigidJson> for RigidCommutator {
    type Error = Error;

    fn try_from(j: RigidJson) -> Result<Self> {
        match j {
            RigidJson::Trivial { trivial: true } => Ok(RigidCommutator::Trivial),
            RigidJson::Trivial { trivial: false } => {
                Err(Error::Parse("\"trivial\" must be true".into()))
            }
            RigidJson::Punctured { base, punctures } => RigidCommutator::new(base, &punctures),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(base: usize, p: &[usize]) -> RigidCommutator {
        RigidCommutator::new(base, p).unwrap()
    }

    fn bound2(n: usize) -> MultiplicityBound {
        MultiplicityBound::new(2, n).unwrap()
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(rigid_bracket(r(5, &[3]), r(3, &[1])), r(5, &[1]));
        assert_eq!(
            rigid_bracket(r(4, &[]), r(2, &[])),
            RigidCommutator::Trivial
        );
        for a in all_rigid(5) {
            assert_eq!(rigid_bracket(a, a), RigidCommutator::Trivial);
            assert_eq!(
                rigid_bracket(a, RigidCommutator::Trivial),
                RigidCommutator::Trivial
            );
        }
    }

    #[test]
    fn f_examples() {
        let b = bound2(5);
        assert_eq!(
            to_rigid(&BasisElement::derivation(3), &b).unwrap(),
            RigidCommutator::t(3)
        );
        assert_eq!(
            to_rigid(&BasisElement::from_parts(&[1, 3], 5), &b).unwrap(),
            r(5, &[1, 3])
        );
        assert_eq!(
            from_rigid(r(4, &[2])),
            Some(BasisElement::from_parts(&[2], 4))
        );
        assert_eq!(from_rigid(RigidCommutator::Trivial), None);
        assert_eq!(
            to_rigid_or_trivial(None, &b).unwrap(),
            RigidCommutator::Trivial
        );
        let b3 = MultiplicityBound::new(3, 5).unwrap();
        assert_eq!(
            to_rigid(&BasisElement::derivation(3), &b3),
            Err(Error::RequiresBinary(3))
        );
    }

    #[test]
    fn preservation_pair_examples() {
        let b = bound2(5);
        // zero Lie bracket with intersecting supports: outside the hypothesis
        let u = BasisElement::from_parts(&[1, 3], 5);
        let v = BasisElement::from_parts(&[1], 3);
        assert_eq!(bracket_basis(&u, &v, &b), None);
        assert_eq!(
            rigid_bracket(to_rigid(&u, &b).unwrap(), to_rigid(&v, &b).unwrap()),
            r(5, &[1])
        );
        let u = BasisElement::from_parts(&[3], 5);
        let (_, w) = bracket_basis(&u, &v, &b).unwrap();
        assert_eq!(to_rigid(&w, &b).unwrap(), r(5, &[1]));
        assert_eq!(
            rigid_bracket(to_rigid(&u, &b).unwrap(), to_rigid(&v, &b).unwrap()),
            r(5, &[1])
        );
    }

    #[test]
    fn preservation_small() {
        let rep = check_bracket_preservation(5).unwrap();
        assert_eq!(rep.pairs, 31 * 31);
        assert!(rep.passed(), "{:?}", rep.violations);
        assert!(rep.hypothesis_pairs > 0 && rep.hypothesis_pairs < rep.pairs);
    }

    #[test]
    fn normalizer_examples() {
        let b = bound2(3);
        let t: BTreeSet<_> = (1..=3).map(RigidCommutator::t).collect();
        let (_, u) = crate::chain::initial_sets(&b);
        let fu: BTreeSet<_> = u.iter().map(|x| to_rigid(x, &b).unwrap()).collect();
        assert_eq!(rigid_set_normalizer(&t, 3).unwrap(), fu);
        let all: BTreeSet<_> = all_rigid(4).into_iter().collect();
        assert_eq!(rigid_set_normalizer(&all, 4).unwrap(), all);
    }

    #[test]
    fn normalizer_rejects_bad_sets() {
        // not normalized by t1: [t1, <3|{1}>] = <3|>
        let s: BTreeSet<_> = [r(3, &[1])].into_iter().collect();
        assert!(matches!(
            rigid_set_normalizer(&s, 3),
            Err(Error::Precondition(_))
        ));
        let s: BTreeSet<_> = [RigidCommutator::Trivial].into_iter().collect();
        assert!(rigid_set_normalizer(&s, 3).is_err());
        let s: BTreeSet<_> = [r(5, &[])].into_iter().collect();
        assert!(rigid_set_normalizer(&s, 4).is_err());
    }

    #[test]
    fn correspondence_small() {
        let v = verify_chain_correspondence(3, 1).unwrap();
        assert!(v.passed, "{v:?}");
        let v = verify_chain_correspondence(6, 5).unwrap();
        assert!(v.passed, "{v:?}");
    }

    #[test]
    fn text_and_json() {
        let a = r(5, &[1, 3]);
        assert_eq!(a.to_string(), "[5;|1,3]");
        assert_eq!(r(4, &[]).to_string(), "[4;|]");
        assert_eq!(RigidCommutator::Trivial.to_string(), "[]");
        for s in ["[5;|1,3]", "[4;|]", "[]"] {
            assert_eq!(s.parse::<RigidCommutator>().unwrap().to_string(), s);
        }
        assert!("[3;|3]".parse::<RigidCommutator>().is_err());
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"base":5,"punctures":[1,3]}"#
        );
        assert_eq!(
            serde_json::to_string(&RigidCommutator::Trivial).unwrap(),
            r#"{"trivial":true}"#
        );
        let back: RigidCommutator =
            serde_json::from_str(r#"{"base":5,"punctures":[3,1]}"#).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<RigidCommutator>(r#"{"trivial":false}"#).is_err());
        assert!(serde_json::from_str::<RigidCommutator>(r#"{"base":2,"punctures":[2]}"#).is_err());
    }

    #[test]
    fn bijection_and_closure() {
        for n in 1..=6 {
            let v = check_bijection(n).unwrap();
            assert!(v.passed, "{v:?}");
            assert!(check_closure(n).passed);
        }
    }

    #[test]
    fn invalid_construction() {
        assert!(RigidCommutator::new(0, &[]).is_err());
        assert!(RigidCommutator::new(64, &[]).is_err());
        assert!(RigidCommutator::new(3, &[0]).is_err());
    }
}
