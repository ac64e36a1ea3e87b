//! Brute-force oracles over the field with three elements. Morphisms and the
//! extension cokernel are counted by listing every vertex-wise scalar family,
//! so no rank computation from the library is involved.

use std::collections::HashSet;

use proptest::prelude::*;
use tiltpoly::quiver::{ext_dim, hom_dim, indecomposables, Interval, IntervalTable, Quiver};
use tiltpoly::tilting::{
    enumerate_support_tilting, enumerate_tilting, enumerate_two_support_tilting,
};

const P: u32 = 3;

fn all_families(k: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..P.pow(k as u32)).map(move |mut code| {
        (0..k)
            .map(|_| {
                let d = code % P;
                code /= P;
                d
            })
            .collect()
    })
}

fn log3(mut x: usize) -> usize {
    let mut e = 0;
    while x > 1 {
        assert_eq!(x % 3, 0);
        x /= 3;
        e += 1;
    }
    e
}

/// `(hom, ext)` from the standard two-term complex
/// `sum_i Hom(M_i, N_i) -> sum_(s->t) Hom(M_s, N_t)`.
fn oracle(q: &Quiver, m: Interval, n: Interval) -> (usize, usize) {
    let common: Vec<usize> = (1..=q.n())
        .filter(|&v| m.contains_vertex(v) && n.contains_vertex(v))
        .collect();
    let targets: Vec<(usize, usize)> = q
        .arrows()
        .filter(|&(s, t)| m.contains_vertex(s) && n.contains_vertex(t))
        .collect();
    let phi_at = |phi: &[u32], v: usize| common.iter().position(|&c| c == v).map_or(0, |i| phi[i]);
    let mut kernel = 0usize;
    let mut image = HashSet::new();
    for phi in all_families(common.len()) {
        let delta: Vec<u32> = targets
            .iter()
            .map(|&(s, t)| {
                // phi_t o M(a) - N(a) o phi_s, each side zero when a space or map vanishes.
                let left = if m.contains_vertex(t) {
                    phi_at(&phi, t)
                } else {
                    0
                };
                let right = if n.contains_vertex(s) {
                    phi_at(&phi, s)
                } else {
                    0
                };
                (left + P - right) % P
            })
            .collect();
        if delta.iter().all(|&d| d == 0) {
            kernel += 1;
        }
        image.insert(delta);
    }
    (log3(kernel), targets.len() - log3(image.len()))
}

fn quiver_strategy(max_n: usize) -> impl Strategy<Value = Quiver> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n - 1)
            .prop_map(move |o| Quiver::new(n, o).unwrap())
    })
}

proptest! {
    #[test]
    fn hom_and_ext_match_the_field_oracle(q in quiver_strategy(7), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let ivs = indecomposables(&q);
        let (m, n) = (*a.get(&ivs), *b.get(&ivs));
        let (hom, ext) = oracle(&q, m, n);
        prop_assert_eq!(hom_dim(&q, m, n), hom);
        prop_assert_eq!(ext_dim(&q, m, n).unwrap(), ext);
    }
}

#[test]
fn oracle_exhaustive_up_to_four() {
    for n in 1..=4 {
        for q in Quiver::all_orientations(n).unwrap() {
            for &m in &indecomposables(&q) {
                for &k in &indecomposables(&q) {
                    let (hom, ext) = oracle(&q, m, k);
                    assert_eq!(
                        (hom_dim(&q, m, k), ext_dim(&q, m, k).unwrap()),
                        (hom, ext),
                        "{q} {m} {k}"
                    );
                }
            }
        }
    }
}

/// Rigid families by listing every subset of intervals, with Ext from the oracle.
fn brute_counts(q: &Quiver) -> (usize, usize, usize) {
    let ivs = indecomposables(q);
    let k = ivs.len();
    let ext: Vec<Vec<usize>> = ivs
        .iter()
        .map(|&a| ivs.iter().map(|&b| oracle(q, a, b).1).collect())
        .collect();
    let n = q.n();
    // tilting count per vertex mask, counting components independently
    let mut per_support = vec![0usize; 1 << n];
    for subset in 0u32..1 << k {
        let chosen: Vec<usize> = (0..k).filter(|&i| subset >> i & 1 == 1).collect();
        let rigid = chosen
            .iter()
            .all(|&i| chosen.iter().all(|&j| ext[i][j] == 0));
        if !rigid {
            continue;
        }
        let support = chosen
            .iter()
            .fold(0usize, |m, &i| m | ivs[i].mask() as usize);
        if chosen.len() == support.count_ones() as usize {
            per_support[support] += 1;
        }
    }
    let full = (1 << n) - 1;
    let tilting = per_support[full];
    let support: usize = per_support.iter().sum();
    let two: usize = (0..=full)
        .map(|m| per_support[m] * per_support[full ^ m])
        .sum();
    (tilting, support, two)
}

#[test]
fn enumeration_matches_subset_search() {
    for n in 1..=4 {
        for q in Quiver::all_orientations(n).unwrap() {
            let t = IntervalTable::new(&q).unwrap();
            let got = (
                enumerate_tilting(&t).len(),
                enumerate_support_tilting(&t).len(),
                enumerate_two_support_tilting(&t).len(),
            );
            assert_eq!(got, brute_counts(&q), "{q}");
        }
    }
}
