//! The Lie ring `𝔏(n)` over `ℤ_m` spanned by the derivations `x^Λ ∂_k`.
//!
//! Monomials live in the truncated ring `DP_m(n) = ℤ_m[x₁,…,x_n]/(x_i^m)`;
//! any product that would raise an exponent to `m` or above is the zero
//! monomial. A basis element `x^Λ ∂_k` requires `Λ ∈ 𝒫art_m(k − 1)`, and
//! the bracket of two basis elements is either zero or a nonzero multiple
//! of a single basis element:
//!
//! ```text
//! [x^Λ ∂_k, x^Θ ∂_j] =  ∂_j(x^Λ) x^Θ ∂_k     if j < k
//!                      −x^Λ ∂_k(x^Θ) ∂_j     if j > k
//!                       0                    if j = k
//! ```
//!
//! [`LieRing`] indexes the basis and caches the full structure table so
//! that repeated idealizer computations only do table lookups.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{bounded_partitions, MultiplicityBound, Partition};

/// A power monomial in `DP_m(n)`, or the zero of the ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Monomial {
    Zero,
    Power(Partition),
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::Power(Partition::empty())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Monomial::Zero)
    }

    pub fn exponents(&self) -> Option<&Partition> {
        match self {
            Monomial::Zero => None,
            Monomial::Power(p) => Some(p),
        }
    }
}

/// Exponentwise sum, truncated by the ideal `(x_i^m)`.
pub fn monomial_mul(a: &Monomial, b: &Monomial, bound: &MultiplicityBound) -> Monomial {
    match (a, b) {
        (Monomial::Power(x), Monomial::Power(y)) => {
            let s = x.sum(y);
            if s.max_multiplicity() >= bound.m() {
                Monomial::Zero
            } else {
                Monomial::Power(s)
            }
        }
        _ => Monomial::Zero,
    }
}

/// `∂_k(x^Λ) = λ_k x^{Λ − e_k}`, returned as `(coefficient mod m, monomial)`.
/// A vanishing derivative is `(0, Zero)`.
pub fn partial_derivative(k: usize, a: &Monomial, bound: &MultiplicityBound) -> (usize, Monomial) {
    match a {
        Monomial::Power(x) if x.mult(k) > 0 => {
            let c = x.mult(k) % bound.m();
            let reduced = x.with_removed(k).expect("λ_k > 0");
            if c == 0 {
                (0, Monomial::Zero)
            } else {
                (c, Monomial::Power(reduced))
            }
        }
        _ => (0, Monomial::Zero),
    }
}

/// `x^Λ ∂_k` with `Λ ∈ 𝒫art_m(k − 1)`.
///
/// Ordered by `k` first, then canonically by partition.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    #[serde(rename = "parts")]
    pub partition: Partition,
    pub k: usize,
}

impl Ord for BasisElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.k
            .cmp(&other.k)
            .then_with(|| self.partition.cmp(&other.partition))
    }
}

impl PartialOrd for BasisElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl BasisElement {
    pub fn new(partition: Partition, k: usize, bound: &MultiplicityBound) -> Result<Self> {
        if k == 0 || k > bound.n() {
            return Err(Error::IndexOutOfRange { k, n: bound.n() });
        }
        partition.check_fits(bound.m(), k - 1)?;
        Ok(BasisElement { k, partition })
    }

    /// `∂_k`.
    pub fn derivation(k: usize) -> Self {
        BasisElement {
            k,
            partition: Partition::empty(),
        }
    }

    /// Shorthand for tests and examples: `x^{parts} ∂_k`, unchecked.
    pub fn from_parts(parts: &[usize], k: usize) -> Self {
        BasisElement {
            k,
            partition: Partition::from_parts(parts),
        }
    }

    pub fn is_valid(&self, bound: &MultiplicityBound) -> bool {
        self.k >= 1 && self.k <= bound.n() && self.partition.fits(bound.m(), self.k - 1)
    }

    pub fn weight(&self) -> usize {
        self.partition.weight()
    }

    /// Degree of the monomial coefficient.
    pub fn degree(&self) -> usize {
        self.partition.len()
    }
}

/// Text form `x1*x3 d5`, with exponents as `x2^2`; a bare derivation is `d5`.
impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .partition
            .support()
            .map(|i| match self.partition.mult(i) {
                1 => format!("x{i}"),
                e => format!("x{i}^{e}"),
            })
            .collect();
        if factors.is_empty() {
            write!(f, "d{}", self.k)
        } else {
            write!(f, "{} d{}", factors.join("*"), self.k)
        }
    }
}

impl fmt::Debug for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BasisElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("{what} in basis element {s:?}"));
        let s = s.trim();
        let (mono, d) = match s.rsplit_once(char::is_whitespace) {
            Some((m, d)) => (m.trim(), d),
            None => ("", s),
        };
        let k: usize = d
            .strip_prefix('d')
            .and_then(|k| k.parse().ok())
            .ok_or_else(|| bad("missing derivation"))?;
        let mut mults = Vec::new();
        if !mono.is_empty() {
            for factor in mono.split('*') {
                let factor = factor
                    .trim()
                    .strip_prefix('x')
                    .ok_or_else(|| bad("bad factor"))?;
                let (i, e) = match factor.split_once('^') {
                    Some((i, e)) => (i, e.parse::<usize>().map_err(|_| bad("bad exponent"))?),
                    None => (factor, 1),
                };
                let i: usize = i.parse().map_err(|_| bad("bad variable"))?;
                if i == 0 {
                    return Err(bad("variable index 0"));
                }
                if mults.len() < i {
                    mults.resize(i, 0);
                }
                mults[i - 1] += e;
            }
        }
        Ok(BasisElement {
            k,
            partition: Partition::from_mults(mults),
        })
    }
}

/// `[u, v]` on basis elements: `None` for zero, else `(c, w)` meaning `c·w`
/// with `c ∈ [1, m)`.
pub fn bracket_basis(
    u: &BasisElement,
    v: &BasisElement,
    bound: &MultiplicityBound,
) -> Option<(usize, BasisElement)> {
    let (k, j) = (u.k, v.k);
    let (coeff, mono, target) = if j < k {
        let (c, d) = partial_derivative(j, &Monomial::Power(u.partition.clone()), bound);
        let prod = monomial_mul(&d, &Monomial::Power(v.partition.clone()), bound);
        (c, prod, k)
    } else if j > k {
        let (c, d) = partial_derivative(k, &Monomial::Power(v.partition.clone()), bound);
        let prod = monomial_mul(&Monomial::Power(u.partition.clone()), &d, bound);
        ((bound.m() - c) % bound.m(), prod, j)
    } else {
        return None;
    };
    match mono {
        Monomial::Power(gamma) if coeff != 0 => {
            let w = BasisElement {
                k: target,
                partition: gamma,
            };
            debug_assert!(w.is_valid(bound), "bracket left the basis: {w}");
            Some((coeff, w))
        }
        _ => None,
    }
}

/// A finite `ℤ_m`-combination of basis elements; no stored coefficient is
/// zero mod `m`, and the empty map is zero.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LieElement {
    terms: BTreeMap<BasisElement, usize>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: usize,
    elem: BasisElement,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: BasisElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(b, 1);
        LieElement { terms }
    }

    pub fn from_terms<I>(terms: I, m: usize) -> Self
    where
        I: IntoIterator<Item = (usize, BasisElement)>,
    {
        let mut z = LieElement::zero();
        for (c, b) in terms {
            z.add_term(c, b, m);
        }
        z
    }

    /// Adds `c·b`, reducing mod `m` and dropping a vanishing term.
    pub fn add_term(&mut self, c: usize, b: BasisElement, m: usize) {
        match self.terms.entry(b) {
            Entry::Occupied(mut slot) => {
                let sum = (*slot.get() + c) % m;
                if sum == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
            Entry::Vacant(slot) => {
                if !c.is_multiple_of(m) {
                    slot.insert(c % m);
                }
            }
        }
    }

    pub fn add(&self, other: &LieElement, m: usize) -> LieElement {
        let mut z = self.clone();
        for (b, &c) in &other.terms {
            z.add_term(c, b.clone(), m);
        }
        z
    }

    pub fn scale(&self, s: usize, m: usize) -> LieElement {
        LieElement::from_terms(self.terms.iter().map(|(b, &c)| (c * s % m, b.clone())), m)
    }

    pub fn neg(&self, m: usize) -> LieElement {
        self.scale(m - 1, m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &BasisElement) -> usize {
        self.terms.get(b).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, usize)> {
        self.terms.iter().map(|(b, &c)| (b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(b, &c)| TermJson {
                coeff: c,
                elem: b.clone(),
            })
            .collect();
        serde_json::to_value(terms).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value, m: usize) -> Result<Self> {
        let terms: Vec<TermJson> =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(LieElement::from_terms(
            terms.into_iter().map(|t| (t.coeff, t.elem)),
            m,
        ))
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(b, &c)| {
                if c == 1 {
                    b.to_string()
                } else {
                    format!("{c}*{b}")
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Bilinear extension of [`bracket_basis`].
pub fn bracket(a: &LieElement, b: &LieElement, bound: &MultiplicityBound) -> LieElement {
    let m = bound.m();
    let mut out = LieElement::zero();
    for (u, cu) in a.terms() {
        for (v, cv) in b.terms() {
            if let Some((c, w)) = bracket_basis(u, v, bound) {
                out.add_term(c * cu % m * cv % m, w, m);
            }
        }
    }
    out
}

/// The basis `ℬ = ⋃ ℬ_k`, ordered by `k` then canonically by partition.
pub fn enumerate_basis(bound: &MultiplicityBound) -> Vec<BasisElement> {
    (1..=bound.n())
        .flat_map(|k| {
            bounded_partitions(bound.m(), k - 1)
                .into_iter()
                .map(move |partition| BasisElement { k, partition })
        })
        .collect()
}

/// A set of basis elements, standing for its `ℤ_m`-span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousSet {
    bound: MultiplicityBound,
    elements: BTreeSet<BasisElement>,
}

impl HomogeneousSet {
    pub fn new<I>(bound: MultiplicityBound, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = BasisElement>,
    {
        let elements: BTreeSet<_> = elements.into_iter().collect();
        if let Some(bad) = elements.iter().find(|b| !b.is_valid(&bound)) {
            return Err(Error::Precondition(format!(
                "{bad} is not a basis element for m = {}, n = {}",
                bound.m(),
                bound.n()
            )));
        }
        Ok(HomogeneousSet { bound, elements })
    }

    pub fn empty(bound: MultiplicityBound) -> Self {
        HomogeneousSet {
            bound,
            elements: BTreeSet::new(),
        }
    }

    pub fn full(bound: MultiplicityBound) -> Self {
        HomogeneousSet {
            bound,
            elements: enumerate_basis(&bound).into_iter().collect(),
        }
    }

    pub fn bound(&self) -> &MultiplicityBound {
        &self.bound
    }

    pub fn contains(&self, b: &BasisElement) -> bool {
        self.elements.contains(b)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BasisElement> {
        self.elements.iter()
    }

    pub fn elements(&self) -> &BTreeSet<BasisElement> {
        &self.elements
    }

    pub fn is_subset(&self, other: &HomogeneousSet) -> bool {
        self.elements.is_subset(&other.elements)
    }

    /// Elements of `self` not in `other`, in basis order.
    pub fn difference(&self, other: &HomogeneousSet) -> Vec<BasisElement> {
        self.elements.difference(&other.elements).cloned().collect()
    }
}

/// `N_ℬ(H) = { b ∈ ℬ : [b, h] ∈ ℤ_m H for all h ∈ H }`, computed directly
/// from [`bracket_basis`] without any caching.
pub fn idealizer(h: &HomogeneousSet) -> HomogeneousSet {
    let bound = *h.bound();
    let elements = enumerate_basis(&bound)
        .into_par_iter()
        .filter(|b| {
            h.iter().all(|g| match bracket_basis(b, g, &bound) {
                None => true,
                Some((_, w)) => h.contains(&w),
            })
        })
        .collect::<Vec<_>>();
    HomogeneousSet {
        bound,
        elements: elements.into_iter().collect(),
    }
}

/// True iff every basis element in the support of `z` lies in `h`.
pub fn homogeneous_membership(z: &LieElement, h: &HomogeneousSet) -> bool {
    z.terms().all(|(b, _)| h.contains(b))
}

const NO_TERM: u32 = u32::MAX;

/// Indexed basis of `𝔏(n)` with its cached structure table.
///
/// `table[u * len + v]` holds the basis index of `[u, v]` (the coefficient
/// is then nonzero) or `NO_TERM` when the bracket vanishes.
pub struct LieRing {
    bound: MultiplicityBound,
    basis: Vec<BasisElement>,
    index: HashMap<BasisElement, usize>,
    table: Vec<u32>,
    coeffs: Vec<u8>,
}

/// A subset of the basis, by index into [`LieRing::basis`].
pub type BasisSet = FixedBitSet;

impl LieRing {
    pub fn new(bound: MultiplicityBound) -> Self {
        let basis = enumerate_basis(&bound);
        let len = basis.len();
        assert!(len < NO_TERM as usize, "basis too large to index");
        let index: HashMap<_, _> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, b)| (b, i))
            .collect();
        let rows: Vec<(Vec<u32>, Vec<u8>)> = basis
            .par_iter()
            .map(|u| {
                let mut targets = Vec::with_capacity(len);
                let mut cs = Vec::with_capacity(len);
                for v in &basis {
                    match bracket_basis(u, v, &bound) {
                        Some((c, w)) => {
                            targets.push(index[&w] as u32);
                            cs.push(c as u8);
                        }
                        None => {
                            targets.push(NO_TERM);
                            cs.push(0);
                        }
                    }
                }
                (targets, cs)
            })
            .collect();
        let mut table = Vec::with_capacity(len * len);
        let mut coeffs = Vec::with_capacity(len * len);
        for (t, c) in rows {
            table.extend(t);
            coeffs.extend(c);
        }
        LieRing {
            bound,
            basis,
            index,
            table,
            coeffs,
        }
    }

    pub fn bound(&self) -> &MultiplicityBound {
        &self.bound
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, b: &BasisElement) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// Cached `[basis[u], basis[v]]` as `(coefficient, index)`.
    #[inline]
    pub fn bracket_index(&self, u: usize, v: usize) -> Option<(usize, usize)> {
        let at = u * self.basis.len() + v;
        match self.table[at] {
            NO_TERM => None,
            w => Some((self.coeffs[at] as usize, w as usize)),
        }
    }

    pub fn empty_set(&self) -> BasisSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn to_set(&self, h: &HomogeneousSet) -> BasisSet {
        let mut s = self.empty_set();
        for b in h.iter() {
            s.insert(self.index[b]);
        }
        s
    }

    pub fn to_homogeneous(&self, s: &BasisSet) -> HomogeneousSet {
        HomogeneousSet {
            bound: self.bound,
            elements: s.ones().map(|i| self.basis[i].clone()).collect(),
        }
    }

    /// Index-level idealizer, equal to [`idealizer`] on the same set.
    pub fn idealizer(&self, h: &BasisSet) -> BasisSet {
        let members: Vec<usize> = h.ones().collect();
        let keep: Vec<usize> = (0..self.len())
            .into_par_iter()
            .filter(|&b| {
                members.iter().all(|&g| match self.bracket_index(b, g) {
                    None => true,
                    Some((_, w)) => h.contains(w),
                })
            })
            .collect();
        let mut out = self.empty_set();
        out.extend(keep);
        out
    }
}
