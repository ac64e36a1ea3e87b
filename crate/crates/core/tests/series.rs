use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use tiltpoly::catalan::{factorial, permutations};
use tiltpoly::geometry::{contains_point, convex_hull, union_volume, Certificate, Simplex};
use tiltpoly::linalg::{det_i64, rational, rref, Rational};
use tiltpoly::quiver::{extended_positive_roots, hom_dim, IntervalTable, Quiver};
use tiltpoly::series::{build_c, build_p, build_p_barred, c_generators, SeriesSpec, SeriesVariant};
use tiltpoly::tilting::{
    count_orderings, count_tilting_sequences, enumerate_tilting, OrderingRule,
};

fn vertex_sets(simplices: &[Simplex]) -> BTreeSet<BTreeSet<Vec<i64>>> {
    simplices
        .iter()
        .map(|s| s.vertices().iter().cloned().collect())
        .collect()
}

fn set(vs: &[&[i64]]) -> BTreeSet<Vec<i64>> {
    vs.iter().map(|v| v.to_vec()).collect()
}

#[test]
fn cluster_simplices_of_a2() {
    let t = IntervalTable::new(&Quiver::directed(2).unwrap()).unwrap();
    let got = vertex_sets(&build_p(SeriesVariant::Clus, &t).unwrap());
    let o: &[i64] = &[0, 0];
    let want: BTreeSet<_> = [
        set(&[o, &[1, 0], &[1, 1]]),
        set(&[o, &[1, 1], &[0, 1]]),
        set(&[o, &[0, 1], &[-1, 0]]),
        set(&[o, &[-1, 0], &[0, -1]]),
        set(&[o, &[0, -1], &[1, 0]]),
    ]
    .into_iter()
    .collect();
    assert_eq!(got, want);
}

#[test]
fn generator_chain_is_nested() {
    for n in 1..=4 {
        let clus = convex_hull(&build_c(&SeriesSpec::c(SeriesVariant::Clus, n)).unwrap()).unwrap();
        let full = convex_hull(&build_c(&SeriesSpec::c(SeriesVariant::Full, n)).unwrap()).unwrap();
        for g in c_generators(SeriesVariant::Plus, n).unwrap() {
            assert!(contains_point(&clus, &g));
        }
        for g in c_generators(SeriesVariant::Clus, n).unwrap() {
            assert!(contains_point(&full, &g));
        }
    }
}

#[test]
fn extended_roots_of_a3() {
    let roots: Vec<Vec<i64>> = extended_positive_roots(3)
        .into_iter()
        .map(|d| d.0)
        .collect();
    assert_eq!(roots.len(), 7);
    assert!(roots.contains(&vec![1, 0, 1]));
    let ordinary: BTreeSet<Vec<i64>> = c_generators(SeriesVariant::Plus, 3)
        .unwrap()
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect();
    let extra: Vec<&Vec<i64>> = roots.iter().filter(|r| !ordinary.contains(*r)).collect();
    assert_eq!(extra, vec![&vec![1, 0, 1]]);
}

#[test]
fn tilting_bases_are_unimodular() {
    for n in 1..=5 {
        for q in Quiver::all_orientations(n).unwrap() {
            let t = IntervalTable::new(&q).unwrap();
            for m in enumerate_tilting(&t) {
                let rows: Vec<Vec<i64>> = m.dim_vectors(n).into_iter().map(|d| d.0).collect();
                let d = det_i64(&rows);
                assert!(d == BigInt::from(1) || d == BigInt::from(-1), "{q}: {m:?}");
            }
        }
    }
}

/// Orderings of each tilting module with no nonzero map from a later summand
/// to an earlier one, by trying every permutation.
fn hom_orderings_brute(q: &Quiver) -> u64 {
    let t = IntervalTable::new(q).unwrap();
    let mut total = 0;
    for m in enumerate_tilting(&t) {
        let parts = m.parts();
        for perm in permutations(parts.len()) {
            let ok = (0..perm.len()).all(|i| {
                (i + 1..perm.len()).all(|j| hom_dim(q, parts[perm[j]], parts[perm[i]]) == 0)
            });
            total += u64::from(ok);
        }
    }
    total
}

#[test]
fn hom_rule_sequence_counts() {
    for n in 1..=5 {
        for q in Quiver::all_orientations(n).unwrap() {
            let t = IntervalTable::new(&q).unwrap();
            assert_eq!(
                count_tilting_sequences(&t, OrderingRule::Hom).unwrap(),
                hom_orderings_brute(&q),
                "{q}"
            );
        }
    }
    let directed: Vec<u64> = (1..=5)
        .map(|n| {
            count_tilting_sequences(
                &IntervalTable::new(&Quiver::directed(n).unwrap()).unwrap(),
                OrderingRule::Hom,
            )
            .unwrap()
        })
        .collect();
    assert_eq!(directed, vec![1, 2, 7, 36, 246]);
}

#[test]
fn nesting_rule_gives_factorials_on_linear_orientations() {
    for n in 1..=7 {
        for q in [
            Quiver::directed(n).unwrap(),
            Quiver::directed(n).unwrap().opposite(),
        ] {
            let t = IntervalTable::new(&q).unwrap();
            let total: u64 = enumerate_tilting(&t)
                .iter()
                .map(|m| count_orderings(&t, m.parts(), OrderingRule::Nesting).unwrap())
                .sum();
            assert_eq!(BigInt::from(total), BigInt::from(factorial(n as u64)));
        }
    }
}

#[test]
fn nesting_sigma_bar_tiles_the_cube_up_to_three() {
    for n in 1..=3 {
        let t = IntervalTable::new(&Quiver::directed(n).unwrap()).unwrap();
        let cube =
            convex_hull(&build_c(&SeriesSpec::c(SeriesVariant::BarredPlus, n)).unwrap()).unwrap();
        let simplices =
            build_p_barred(SeriesVariant::BarredPlus, &t, OrderingRule::Nesting).unwrap();
        let u = union_volume(&simplices, &cube).unwrap();
        assert_eq!(u.certificate, Certificate::Exact, "n = {n}");
        assert_eq!(u.total, rational(factorial(n as u64).try_into().unwrap()));
    }
}

/// Barycentric coordinates of `x` with respect to a full-dimensional simplex.
fn barycentric(s: &Simplex, x: &[Rational]) -> Vec<Rational> {
    let v = s.vertices();
    let d = x.len();
    let mut m: Vec<Vec<Rational>> = (0..d)
        .map(|r| {
            let mut row: Vec<Rational> = v[1..].iter().map(|p| rational(p[r] - v[0][r])).collect();
            row.push(&x[r] - rational(v[0][r]));
            row
        })
        .collect();
    assert_eq!(rref(&mut m), (0..d).collect::<Vec<_>>());
    let mut lambda: Vec<Rational> = m.iter().map(|row| row[d].clone()).collect();
    let rest: Rational = lambda.iter().cloned().sum();
    lambda.insert(0, rational(1) - rest);
    lambda
}

#[test]
fn nesting_sigma_bar_overlaps_from_four_vertices() {
    let t = IntervalTable::new(&Quiver::directed(4).unwrap()).unwrap();
    let cube =
        convex_hull(&build_c(&SeriesSpec::c(SeriesVariant::BarredPlus, 4)).unwrap()).unwrap();
    let simplices = build_p_barred(SeriesVariant::BarredPlus, &t, OrderingRule::Nesting).unwrap();
    let u = union_volume(&simplices, &cube).unwrap();
    assert_eq!(u.total, u.enclosure);
    assert_eq!(u.certificate, Certificate::RidgeMismatch);
    let point = |v: [i64; 4]| -> Vec<Rational> {
        v.iter()
            .map(|&a| Rational::new(a.into(), 97.into()))
            .collect()
    };
    let cover = |x: &[Rational]| {
        simplices
            .iter()
            .filter(|s| barycentric(s, x).iter().all(|l| *l > Rational::zero()))
            .count()
    };
    let touch = |x: &[Rational]| {
        simplices
            .iter()
            .filter(|s| barycentric(s, x).iter().all(|l| *l >= Rational::zero()))
            .count()
    };
    let doubled = point([44, 38, 86, 50]);
    assert_eq!(cover(&doubled), 2);
    let uncovered = point([76, 28, 31, 63]);
    assert!(cube.contains_rational(&uncovered));
    assert_eq!(touch(&uncovered), 0);
}
