use std::collections::BTreeSet;

use num_bigint::BigUint;
use tiltpoly::catalan::{
    catalan, central_binomial, cube_decomposition, enumerate_all_paths, enumerate_dyck,
    enumerate_trees, factorial, split_path, tree_counts, RootedTree,
};
use tiltpoly::geometry::{interiors_disjoint, simplex_normalized_volume};
use tiltpoly::linalg::rational;

/// Paths counted by a height table, staying nonnegative when `dyck` is set.
fn ballot(n: usize, dyck: bool) -> BigUint {
    let offset = n;
    let mut row = vec![BigUint::from(0u32); 2 * n + 1];
    row[offset] = BigUint::from(1u32);
    for _ in 0..2 * n {
        let mut next = vec![BigUint::from(0u32); 2 * n + 1];
        for h in 0..=2 * n {
            if row[h] == BigUint::from(0u32) {
                continue;
            }
            if h < 2 * n {
                next[h + 1] += &row[h];
            }
            if h >= 1 && (!dyck || h > offset) {
                next[h - 1] += &row[h];
            }
        }
        row = next;
    }
    row[offset].clone()
}

#[test]
fn closed_forms_against_height_tables() {
    for n in 0..=40 {
        assert_eq!(catalan(n as u64), ballot(n, true), "n = {n}");
        assert_eq!(central_binomial(n as u64), ballot(n, false), "n = {n}");
    }
}

#[test]
fn tree_counts_follow_the_root_split() {
    let counts = tree_counts(12);
    for (n, c) in counts.iter().enumerate() {
        assert_eq!(*c, catalan(n as u64));
    }
    for (n, c) in counts.iter().enumerate().take(9) {
        let trees = enumerate_trees(n);
        assert_eq!(BigUint::from(trees.len()), *c);
        let distinct: BTreeSet<_> = trees.iter().map(RootedTree::to_parens).collect();
        assert_eq!(distinct.len(), trees.len());
    }
}

#[test]
fn tree_dyck_round_trip() {
    for n in 0..=8 {
        let dyck: BTreeSet<_> = enumerate_dyck(n).into_iter().collect();
        let images: BTreeSet<_> = enumerate_trees(n)
            .iter()
            .map(|t| {
                let p = t.to_dyck();
                assert_eq!(&RootedTree::from_dyck(&p).unwrap(), t);
                p
            })
            .collect();
        assert_eq!(images, dyck);
    }
}

#[test]
fn path_enumerations_are_sorted_and_complete() {
    for n in 0..=10 {
        let all = enumerate_all_paths(n);
        let dyck = enumerate_dyck(n);
        assert!(all.windows(2).all(|w| w[0].to_string() < w[1].to_string()));
        assert!(dyck.windows(2).all(|w| w[0].to_string() < w[1].to_string()));
        assert_eq!(BigUint::from(all.len()), central_binomial(n as u64));
        assert_eq!(BigUint::from(dyck.len()), catalan(n as u64));
    }
}

#[test]
fn excursion_signatures_separate_paths() {
    for n in 1..=6 {
        let keys: BTreeSet<Vec<_>> = enumerate_all_paths(n)
            .iter()
            .map(|p| {
                split_path(p)
                    .into_iter()
                    .map(|e| (e.side, e.path.to_string()))
                    .collect()
            })
            .collect();
        assert_eq!(BigUint::from(keys.len()), central_binomial(n as u64));
    }
}

#[test]
fn cube_pieces_are_unimodular_and_disjoint() {
    for n in 1..=6 {
        let pieces = cube_decomposition(n).unwrap();
        assert_eq!(BigUint::from(pieces.len()), factorial(n as u64));
        for s in &pieces {
            assert_eq!(simplex_normalized_volume(s).unwrap(), rational(1));
        }
    }
    let pieces = cube_decomposition(3).unwrap();
    for (i, a) in pieces.iter().enumerate() {
        for b in &pieces[i + 1..] {
            assert!(interiors_disjoint(a, b).unwrap());
        }
    }
}
