#![allow(dead_code)]

use keyform::{CharacteristicData, DualGraph, LaurentPolyXY, Rat};
use proptest::prelude::*;

/// Canonical string of a weighted forest, invariant under relabelling.
pub fn forest_canon(weights: &[i64], ltilde: usize, edges: &[[usize; 2]]) -> String {
    let n = weights.len();
    let mut adj = vec![Vec::new(); n];
    for &[a, b] in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            for &w in &adj[comp[i]] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        let best = comp.iter().map(|&root| encode(root, usize::MAX, weights, ltilde, &adj)).min().unwrap();
        comps.push(best);
    }
    comps.sort();
    comps.join(" ")
}

fn encode(v: usize, parent: usize, weights: &[i64], ltilde: usize, adj: &[Vec<usize>]) -> String {
    let mut kids: Vec<String> =
        adj[v].iter().filter(|&&w| w != parent).map(|&w| encode(w, v, weights, ltilde, adj)).collect();
    kids.sort();
    let tag = if v == ltilde { "L" } else { "" };
    format!("({tag}{}{})", weights[v], kids.concat())
}

pub fn graph_canon(g: &DualGraph) -> String {
    let weights: Vec<i64> = g.vertices.iter().map(|v| v.weight).collect();
    let lt = g.vertices.iter().position(|v| v.is_ltilde).unwrap();
    forest_canon(&weights, lt, &g.edges)
}

/// A chain of `n` vertices of weight -2 hung from `from`, returning the last.
pub fn push_chain(weights: &mut Vec<i64>, edges: &mut Vec<[usize; 2]>, from: usize, n: usize) -> usize {
    let mut last = from;
    for _ in 0..n {
        weights.push(-2);
        let v = weights.len() - 1;
        edges.push([last, v]);
        last = v;
    }
    last
}

/// Intersection number of the curve with a generic germ sharing its
/// expansion up to `(q_last + r)/P`, summed over conjugates: the conjugate
/// `u^(1/P) -> zeta^j u^(1/P)` first differs at the smallest characteristic
/// exponent `e` with `j e` not an integer.
pub fn alpha_by_conjugates(pairs: &CharacteristicData, r: u32) -> i64 {
    let n = pairs.len();
    let big_p = pairs.polydromy();
    let mut total = pairs.pairs[n - 1].q + r as i64;
    for j in 1..big_p {
        let e = (1..=n)
            .map(|k| pairs.exponent(k))
            .find(|e| !(e * Rat::from_integer(j.into())).is_integer())
            .expect("some exponent separates each nontrivial conjugate");
        total += keyform::rat::to_i64(&(e * Rat::from_integer(big_p.into()))).unwrap();
    }
    total
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Local pairs of a curve tangent to the line: one or two pairs with small
/// `p` and increasing exponents.
pub fn local_pairs() -> impl Strategy<Value = CharacteristicData> {
    (prop::collection::vec((2i64..=3, 1i64..=5), 0..=1), 2i64..=5, 1i64..=4).prop_map(|(rest, p1, q1)| {
        let q1 = (1..p1).map(|d| (q1 + d - 1) % (p1 - 1) + 1).find(|q| gcd(*q, p1) == 1).unwrap();
        let mut out = vec![(q1, p1)];
        for (p, d) in rest {
            let (q_prev, _) = *out.last().unwrap();
            let mut q = q_prev * p + d;
            while gcd(q, p) != 1 {
                q += 1;
            }
            out.push((q, p));
        }
        CharacteristicData::new(out).unwrap()
    })
}

/// A random element of `Q[x, 1/x, y]` with small support.
pub fn laurent() -> impl Strategy<Value = LaurentPolyXY> {
    prop::collection::vec((-3i64..=4, 0u32..=3, -4i64..=4, 1i64..=3), 1..=4).prop_map(|terms| {
        let mut f = LaurentPolyXY::zero();
        for (a, b, n, d) in terms {
            f.add_term(a, b, keyform::rat::rat(n, d));
        }
        if f.is_zero() {
            f = LaurentPolyXY::y();
        }
        f
    })
}

pub fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 128,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x6b65_7966),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Pairs, `r` and a random curve with those pairs.
pub fn curve() -> impl Strategy<Value = (CharacteristicData, u32, keyform::PuiseuxPoly)> {
    (local_pairs(), 0u32..=5, any::<u64>()).prop_map(|(pairs, r, seed)| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let c = keyform::random_curve(&pairs, r, &mut rng);
        (pairs, r, c)
    })
}

/// Generic series of a random curve.
pub fn generic() -> impl Strategy<Value = keyform::GenericDPS> {
    curve().prop_map(|(_, r, c)| {
        keyform::generic_dps_from_curve(&keyform::local_to_degreewise(&c).unwrap(), r).unwrap()
    })
}
