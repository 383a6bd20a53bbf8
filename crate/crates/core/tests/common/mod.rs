#![allow(dead_code)]

//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's counting or bracket code.

use std::collections::{BTreeMap, BTreeSet};

use partlie::BasisElement;

/// `(m, "p" | "q") -> values for i = 1..16`, from `tests/data/sequences.csv`.
pub fn sequence_fixture() -> BTreeMap<(usize, String), Vec<usize>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/sequences.csv");
    let mut rdr = csv::Reader::from_path(path).expect("fixture present");
    let mut out = BTreeMap::new();
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let m: usize = rec[0].parse().unwrap();
        let values = rec.iter().skip(2).map(|v| v.parse().unwrap()).collect();
        out.insert((m, rec[1].to_string()), values);
    }
    out
}

/// Coefficients of `Π_{i ≥ 1} (1 + x^i + … + x^{(m−1)i})` up to `x^max`.
pub fn generating_function(m: usize, max: usize) -> Vec<u64> {
    let mut poly = vec![0u64; max + 1];
    poly[0] = 1;
    for i in 1..=max {
        let mut next = vec![0u64; max + 1];
        for (d, &c) in poly.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for a in 0..m {
                let e = d + a * i;
                if e > max {
                    break;
                }
                next[e] += c;
            }
        }
        poly = next;
    }
    poly
}

/// `p_{m,i}` from the generating function: drop the single-part partition.
pub fn gf_p(m: usize, i: usize) -> usize {
    generating_function(m, i)[i] as usize - usize::from(i >= 1)
}

/// A basis element as `(exponents of x_1..x_n, k)`.
pub type Elem = (Vec<usize>, usize);

pub fn to_elem(b: &BasisElement, n: usize) -> Elem {
    let mut e = vec![0; n];
    for i in 1..=n {
        e[i - 1] = b.partition.mult(i);
    }
    (e, b.k)
}

pub fn oracle_basis(m: usize, n: usize) -> Vec<Elem> {
    let mut out = Vec::new();
    for k in 1..=n {
        let vars = k - 1;
        let total = m.pow(vars as u32);
        for code in 0..total {
            let mut e = vec![0; n];
            let mut c = code;
            for slot in e.iter_mut().take(vars) {
                *slot = c % m;
                c /= m;
            }
            out.push((e, k));
        }
    }
    out
}

/// `∂_j(x^a) · x^b`, as `(coefficient mod m, exponents)` or `None` if zero.
fn deriv_times(j: usize, a: &[usize], b: &[usize], m: usize) -> Option<(usize, Vec<usize>)> {
    let c = a[j - 1] % m;
    if c == 0 {
        return None;
    }
    let mut e: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    e[j - 1] -= 1;
    if e.iter().any(|&x| x >= m) {
        return None;
    }
    Some((c, e))
}

/// `[x^a ∂_k, x^b ∂_j] = ∂_j(x^a) x^b ∂_k − x^a ∂_k(x^b) ∂_j`, as a sparse
/// combination.
pub fn oracle_bracket(u: &Elem, v: &Elem, m: usize) -> BTreeMap<Elem, usize> {
    let (a, k) = u;
    let (b, j) = v;
    let mut out: BTreeMap<Elem, usize> = BTreeMap::new();
    if let Some((c, e)) = deriv_times(*j, a, b, m) {
        *out.entry((e, *k)).or_default() += c;
    }
    if let Some((c, e)) = deriv_times(*k, b, a, m) {
        *out.entry((e, *j)).or_default() += m - c;
    }
    out.retain(|_, c| {
        *c %= m;
        *c != 0
    });
    out
}

pub fn oracle_idealizer(basis: &[Elem], h: &BTreeSet<Elem>, m: usize) -> BTreeSet<Elem> {
    basis
        .iter()
        .filter(|b| {
            h.iter()
                .all(|g| oracle_bracket(b, g, m).keys().all(|w| h.contains(w)))
        })
        .cloned()
        .collect()
}

/// `𝒩₋₁, 𝒩₀, …, 𝒩_depth` by brute force.
pub fn oracle_chain(m: usize, n: usize, depth: usize) -> Vec<BTreeSet<Elem>> {
    let basis = oracle_basis(m, n);
    let t: BTreeSet<Elem> = basis
        .iter()
        .filter(|(e, _)| e.iter().all(|&x| x == 0))
        .cloned()
        .collect();
    let mut sets = vec![t];
    for _ in 0..=depth {
        let next = oracle_idealizer(&basis, sets.last().unwrap(), m);
        sets.push(next);
    }
    sets
}

pub fn oracle_ranks(sets: &[BTreeSet<Elem>]) -> Vec<usize> {
    sets.windows(2).map(|w| w[1].len() - w[0].len()).collect()
}
