//! Structural checks on the ring and the partition calculus.
//!
//! Exhaustive checks walk every basis element (or pair) at the given bound;
//! sampled checks draw `LieElement`s from a seeded ChaCha generator so runs
//! are reproducible.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chain::idealizer_chain;
use crate::liering::{
    bracket, bracket_basis, enumerate_basis, homogeneous_membership, idealizer, monomial_mul,
    partial_derivative, BasisElement, HomogeneousSet, LieElement, Monomial,
};
use crate::partitions::{
    bounded_partitions, enumerate_partitions, excludant_profile, is_unrefinable, refinements,
    two_refinements, MultiplicityBound, Partition,
};
use crate::report::Verdict;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

fn tag(name: &str, bound: &MultiplicityBound) -> String {
    format!("{name} m={} n={}", bound.m(), bound.n())
}

/// `[u, v] = −[v, u]` for every ordered pair of basis elements.
pub fn check_antisymmetry(bound: &MultiplicityBound) -> Verdict {
    let basis = enumerate_basis(bound);
    let m = bound.m();
    let mut v = Verdict::new(tag("antisymmetry", bound));
    for a in &basis {
        for b in &basis {
            let ab = bracket_basis(a, b, bound);
            let ba = bracket_basis(b, a, bound).map(|(c, w)| ((m - c) % m, w));
            v.check(ab == ba, || {
                format!("[{a}, {b}] = {ab:?} but -[{b}, {a}] = {ba:?}")
            });
        }
    }
    v
}

/// `[ℬ_j, ℬ_k] ⊆ ℤ_m ℬ_{max(j,k)} ∪ {0}`.
pub fn check_grading(bound: &MultiplicityBound) -> Verdict {
    let basis = enumerate_basis(bound);
    let mut v = Verdict::new(tag("grading", bound));
    for a in &basis {
        for b in &basis {
            if let Some((_, w)) = bracket_basis(a, b, bound) {
                v.check(w.k == a.k.max(b.k) && w.is_valid(bound), || {
                    format!("[{a}, {b}] = {w} outside layer {}", a.k.max(b.k))
                });
            }
        }
    }
    v
}

/// A nonzero `[x^Λ ∂_j, x^Θ ∂_k] = c x^Γ ∂_u` has `u = max(j,k)` and
/// `wt(Γ) = wt(Λ) + wt(Θ) − min(j,k)`.
pub fn check_weight_lemma(bound: &MultiplicityBound) -> Verdict {
    let basis = enumerate_basis(bound);
    let mut v = Verdict::new(tag("weight lemma", bound));
    for a in &basis {
        for b in &basis {
            if let Some((_, w)) = bracket_basis(a, b, bound) {
                let expected = a.weight() + b.weight() - a.k.min(b.k);
                v.check(w.k == a.k.max(b.k) && w.weight() == expected, || {
                    format!("[{a}, {b}] = {w}, expected weight {expected}")
                });
            }
        }
    }
    v
}

/// For fixed `v`, `u ↦ [u, v]` is injective on its nonzero locus.
pub fn check_injectivity(bound: &MultiplicityBound) -> Verdict {
    let basis = enumerate_basis(bound);
    let mut v = Verdict::new(tag("injectivity lemma", bound));
    for fixed in &basis {
        let mut seen: HashMap<BasisElement, &BasisElement> = HashMap::new();
        for u in &basis {
            if let Some((_, w)) = bracket_basis(u, fixed, bound) {
                let clash = seen.insert(w.clone(), u);
                v.check(clash.is_none(), || {
                    format!(
                        "[{u}, {fixed}] and [{}, {fixed}] both land on {w}",
                        clash.unwrap()
                    )
                });
            }
        }
    }
    v
}

type Poly = BTreeMap<Partition, usize>;

fn poly_add(p: &mut Poly, c: usize, mono: Monomial, m: usize) {
    if let Monomial::Power(x) = mono {
        let slot = p.entry(x).or_insert(0);
        *slot = (*slot + c) % m;
    }
}

fn poly_clean(mut p: Poly) -> Poly {
    p.retain(|_, c| *c != 0);
    p
}

/// `∂_k(ab) = ∂_k(a) b + a ∂_k(b)` for all monomials in `x₁, …, x_n` and
/// every `k ≤ n`, with truncation on both sides.
pub fn check_leibniz(bound: &MultiplicityBound) -> Verdict {
    let m = bound.m();
    let monos: Vec<Monomial> = bounded_partitions(m, bound.n())
        .into_iter()
        .map(Monomial::Power)
        .collect();
    let mut v = Verdict::new(tag("leibniz", bound));
    for k in 1..=bound.n() {
        for a in &monos {
            for b in &monos {
                let mut lhs = Poly::new();
                let (c, d) = partial_derivative(k, &monomial_mul(a, b, bound), bound);
                poly_add(&mut lhs, c, d, m);
                let mut rhs = Poly::new();
                let (ca, da) = partial_derivative(k, a, bound);
                poly_add(&mut rhs, ca, monomial_mul(&da, b, bound), m);
                let (cb, db) = partial_derivative(k, b, bound);
                poly_add(&mut rhs, cb, monomial_mul(a, &db, bound), m);
                let (lhs, rhs) = (poly_clean(lhs), poly_clean(rhs));
                v.check(lhs == rhs, || {
                    format!("d{k} of {a:?} * {b:?}: {lhs:?} vs {rhs:?}")
                });
            }
        }
    }
    v
}

/// A combination of up to `max_terms` basis elements drawn from `pool` with
/// nonzero coefficients.
pub fn random_element<R: Rng>(
    rng: &mut R,
    pool: &[BasisElement],
    m: usize,
    max_terms: usize,
) -> LieElement {
    let terms = rng.gen_range(1..=max_terms);
    LieElement::from_terms(
        (0..terms).map(|_| {
            (
                rng.gen_range(1..m),
                pool.choose(rng).expect("nonempty pool").clone(),
            )
        }),
        m,
    )
}

/// Jacobi identity on `samples` random triples.
pub fn check_jacobi(bound: &MultiplicityBound, samples: usize, seed: u64) -> Verdict {
    let basis = enumerate_basis(bound);
    let m = bound.m();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = Verdict::new(tag("jacobi", bound));
    for _ in 0..samples {
        let a = random_element(&mut rng, &basis, m, 4);
        let b = random_element(&mut rng, &basis, m, 4);
        let c = random_element(&mut rng, &basis, m, 4);
        let sum = bracket(&bracket(&a, &b, bound), &c, bound)
            .add(&bracket(&bracket(&b, &c, bound), &a, bound), m)
            .add(&bracket(&bracket(&c, &a, bound), &b, bound), m);
        v.check(sum.is_zero(), || {
            format!("a = {a}, b = {b}, c = {c}: sum {sum}")
        });
    }
    v
}

/// True iff `[z, h] ∈ span(H)` for every `h ∈ H`, by bilinear expansion.
pub fn idealizes(z: &LieElement, h: &HomogeneousSet) -> bool {
    let bound = h.bound();
    h.iter().all(|g| {
        bracket(z, &LieElement::basis(g.clone()), bound)
            .terms()
            .all(|(w, _)| h.contains(w))
    })
}

/// Checks the idealizer of `span(H)` against `samples` random elements.
///
/// Each `z` is compared with the term-wise criterion (every `c·b` idealizes
/// on its own). For prime `m` it is also compared with membership of its
/// support in `N_ℬ(H)`; for composite `m` that support test is only
/// sufficient, since a zero divisor can kill `[b, h]`.
pub fn check_homogeneity(h: &HomogeneousSet, samples: usize, seed: u64) -> Verdict {
    let bound = *h.bound();
    let m = bound.m();
    let basis = enumerate_basis(&bound);
    let normalizer = idealizer(h);
    let inside: Vec<BasisElement> = normalizer.iter().cloned().collect();
    let prime = (2..m).all(|d| !m.is_multiple_of(d));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = Verdict::new(format!("{} |H|={}", tag("homogeneity", &bound), h.len()));
    let mut positives = 0;
    for _ in 0..samples {
        let mut z = random_element(&mut rng, &inside, m, 4);
        if rng.gen_bool(0.5) {
            z = z.add(&random_element(&mut rng, &basis, m, 2), m);
        }
        let brute = idealizes(&z, h);
        positives += brute as usize;
        let termwise = z
            .terms()
            .all(|(b, c)| idealizes(&LieElement::from_terms([(c, b.clone())], m), h));
        v.check(brute == termwise, || {
            format!("z = {z}: brute {brute}, term-wise {termwise}")
        });
        let support = homogeneous_membership(&z, &normalizer);
        if prime {
            v.check(brute == support, || {
                format!("z = {z}: brute {brute}, support in N(H) {support}")
            });
        } else {
            v.check(!support || brute, || {
                format!("z = {z}: support in N(H) but not idealizing")
            });
        }
    }
    v.note(format!("{positives}/{samples} samples idealize"));
    v
}

/// [`check_homogeneity`] with `H` running over the chain sets `𝒩₋₁ … 𝒩_depth`.
pub fn check_homogeneity_on_chain(
    bound: &MultiplicityBound,
    depth: usize,
    samples: usize,
    seed: u64,
) -> Verdict {
    let report = idealizer_chain(bound, depth);
    let mut v = Verdict::new(tag("homogeneity", bound));
    for (offset, step) in report.steps.iter().enumerate() {
        v.merge(check_homogeneity(
            &step.basis_set,
            samples,
            seed + offset as u64,
        ));
    }
    v
}

/// `x^Λ · Π x_{eᵢ}^{μᵢ} = Π_{i<n} x_i^{m−1}` for every `Λ ∈ 𝒫art_m(n−1)`.
pub fn check_excludant_reconstruction(bound: &MultiplicityBound) -> Verdict {
    let full = Partition::from_mults(vec![bound.max_mult(); bound.n() - 1]);
    let mut v = Verdict::new(tag("excludant reconstruction", bound));
    for lambda in bounded_partitions(bound.m(), bound.n() - 1) {
        let profile = excludant_profile(&lambda, bound).expect("fits the bound");
        let filled = profile
            .excludants
            .iter()
            .fold(lambda.clone(), |acc, &(e, mu)| acc.with_added(e, mu));
        v.check(filled == full, || format!("{lambda}: filled to {filled}"));
    }
    v
}

fn partitions_up_to(max_weight: usize, m: usize) -> Vec<Partition> {
    (0..=max_weight)
        .flat_map(|w| enumerate_partitions(w, m, w))
        .collect()
}

/// Unrefinable iff no 2-refinement exists, for weights up to `max_weight`.
pub fn check_two_refinement_sufficiency(max_weight: usize, m: usize) -> Verdict {
    let mut v = Verdict::new(format!(
        "2-refinement sufficiency m={m} weight<={max_weight}"
    ));
    let rows: Vec<(Partition, bool, bool)> = partitions_up_to(max_weight, m)
        .into_par_iter()
        .map(|l| {
            let unref = is_unrefinable(&l, m);
            let no_two = two_refinements(&l, m).is_empty();
            (l, unref, no_two)
        })
        .collect();
    for (l, unref, no_two) in rows {
        v.check(unref == no_two, || {
            format!("{l}: unrefinable {unref}, no 2-refinement {no_two}")
        });
    }
    v
}

/// Every `a`-refinement of `Λ` is reached from `Λ` by a path of exactly
/// `a − 1` edges in the 2-refinement DAG.
pub fn check_refinement_decomposition(max_weight: usize, m: usize) -> Verdict {
    let mut v = Verdict::new(format!(
        "a-refinement decomposition m={m} weight<={max_weight}"
    ));
    let rows: Vec<(usize, Option<String>)> = partitions_up_to(max_weight, m)
        .into_par_iter()
        .map(|l| {
            let all = refinements(&l, m, None);
            let mut checked = 0;
            // layers[d] = partitions reachable from l in exactly d edges
            let mut layers = vec![BTreeSet::from([l.clone()])];
            for theta in all {
                checked += 1;
                let a = theta.len() - l.len() + 1;
                while layers.len() < a {
                    let next: BTreeSet<Partition> = layers
                        .last()
                        .unwrap()
                        .iter()
                        .flat_map(|p| two_refinements(p, m))
                        .collect();
                    layers.push(next);
                }
                if a < 2 || !layers[a - 1].contains(&theta) {
                    return (
                        checked,
                        Some(format!("{l} -> {theta} (a = {a}) not reached")),
                    );
                }
            }
            (checked, None)
        })
        .collect();
    for (count, failure) in rows {
        v.checked += count.saturating_sub(1);
        v.check(failure.is_none(), || failure.unwrap_or_default());
    }
    v
}

/// Sizes used by `verify properties` for one `(m, n)`.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub jacobi_samples: usize,
    pub homogeneity_samples: usize,
    pub homogeneity_depth: usize,
    pub refinement_weight: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            jacobi_samples: 1000,
            homogeneity_samples: 500,
            homogeneity_depth: 2,
            refinement_weight: 14,
            seed: DEFAULT_SEED,
        }
    }
}

/// Every check above at one bound.
pub fn property_suite(bound: &MultiplicityBound, config: &SuiteConfig) -> Vec<Verdict> {
    vec![
        check_antisymmetry(bound),
        check_grading(bound),
        check_weight_lemma(bound),
        check_injectivity(bound),
        check_leibniz(bound),
        check_jacobi(bound, config.jacobi_samples, config.seed),
        check_homogeneity_on_chain(
            bound,
            config.homogeneity_depth,
            config.homogeneity_samples,
            config.seed,
        ),
        check_excludant_reconstruction(bound),
        check_two_refinement_sufficiency(config.refinement_weight, bound.m()),
        check_refinement_decomposition(config.refinement_weight, bound.m()),
    ]
}
