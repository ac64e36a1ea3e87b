use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;
use tiltpoly::catalan::{
    central_binomial, enumerate_all_paths, join_excursions, sign_blocks, split_path, LatticePath,
    Side,
};
use tiltpoly::geometry::{
    convex_hull, polytope_volume, simplex_normalized_volume, Simplex, VPolytope,
};
use tiltpoly::linalg::{rational, Rational};
use tiltpoly::quiver::{euler_form, ext_dim, hom_dim, indecomposables, Quiver};

fn quiver_strategy(max_n: usize) -> impl Strategy<Value = Quiver> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n - 1)
            .prop_map(move |o| Quiver::new(n, o).unwrap())
    })
}

proptest! {
    #[test]
    fn hom_minus_ext_is_euler(q in quiver_strategy(9), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let ivs = indecomposables(&q);
        let (m, n) = (*a.get(&ivs), *b.get(&ivs));
        let hom = hom_dim(&q, m, n) as i64;
        let ext = ext_dim(&q, m, n).unwrap() as i64;
        prop_assert!(hom <= 1 && ext <= 1);
        prop_assert_eq!(hom - ext, euler_form(&q, &m.dim_vector(q.n()), &n.dim_vector(q.n())).unwrap());
    }

    #[test]
    fn opposite_quiver_swaps_arguments(q in quiver_strategy(8), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let ivs = indecomposables(&q);
        let (m, n) = (*a.get(&ivs), *b.get(&ivs));
        let op = q.opposite();
        prop_assert_eq!(hom_dim(&q, m, n), hom_dim(&op, n, m));
        prop_assert_eq!(ext_dim(&q, m, n).unwrap(), ext_dim(&op, n, m).unwrap());
    }
}

/// Integer matrix with determinant one, from elementary row operations.
fn unimodular(d: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect();
    for &(i, j, c) in ops {
        let (i, j) = (i % d, j % d);
        if i != j {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(src) {
                *x += c * y;
            }
        }
    }
    m
}

/// Twice the area of the convex hull of plane points, by the monotone chain
/// and the shoelace formula.
fn planar_doubled_area(points: &[Vec<i64>]) -> i64 {
    let mut p: Vec<(i64, i64)> = points.iter().map(|v| (v[0], v[1])).collect();
    p.sort_unstable();
    p.dedup();
    if p.len() < 3 {
        return 0;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 {
            Box::new(p.iter())
        } else {
            Box::new(p.iter().rev())
        };
        for &pt in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0
            {
                hull.pop();
            }
            hull.push(pt);
        }
        hull.pop();
    }
    let n = hull.len();
    (0..n)
        .map(|i| hull[i].0 * hull[(i + 1) % n].1 - hull[(i + 1) % n].0 * hull[i].1)
        .sum::<i64>()
        .abs()
}

fn volume_of(points: &[Vec<i64>]) -> Option<Rational> {
    convex_hull(&VPolytope::new(points.to_vec()).ok()?)
        .ok()
        .map(|h| polytope_volume(&h).value)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unimodular_simplices_have_volume_one(d in 1usize..5, ops in proptest::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..8)) {
        let m = unimodular(d, &ops);
        let mut verts = vec![vec![0; d]];
        verts.extend(m);
        prop_assert_eq!(simplex_normalized_volume(&Simplex::new(verts).unwrap()).unwrap(), rational(1));
    }

    #[test]
    fn planar_hull_matches_shoelace(points in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 2), 3..14)) {
        let expected = planar_doubled_area(&points);
        if let Some(v) = volume_of(&points) {
            prop_assert_eq!(v, rational(expected));
        } else {
            prop_assert_eq!(expected, 0);
        }
    }

    #[test]
    fn volume_invariant_under_coordinate_symmetries(
        points in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 4..10),
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
        flips in proptest::collection::vec(any::<bool>(), 3),
        shift in proptest::collection::vec(-5i64..=5, 3),
    ) {
        let moved: Vec<Vec<i64>> = points
            .iter()
            .map(|p| (0..3).map(|k| if flips[k] { -p[perm[k]] } else { p[perm[k]] } + shift[k]).collect())
            .collect();
        prop_assert_eq!(volume_of(&points), volume_of(&moved));
    }

    #[test]
    fn split_then_join_is_identity(steps in proptest::collection::vec(any::<bool>(), 0..12)) {
        // Balance the step list to a closed path by appending the missing steps.
        let mut s: Vec<i8> = steps.iter().map(|&b| if b { 1 } else { -1 }).collect();
        let sum: i32 = s.iter().map(|&x| i32::from(x)).sum();
        s.extend(std::iter::repeat_n(if sum > 0 { -1 } else { 1 }, sum.unsigned_abs() as usize));
        let p = LatticePath::new(s).unwrap();
        let parts = split_path(&p);
        prop_assert!(parts.iter().all(|e| e.path.is_dyck()));
        prop_assert_eq!(join_excursions(&parts), p.clone());
        let blocks = sign_blocks(&p);
        prop_assert!(blocks.windows(2).all(|w| w[0].side != w[1].side));
        prop_assert_eq!(join_excursions(&blocks), p);
    }
}

/// Exponent of `p` in `C(2n, n)` by Legendre's formula.
fn legendre_central(n: u64, p: u64) -> u64 {
    let mut e = 0;
    let mut pk = p;
    while pk <= 2 * n {
        e += (2 * n) / pk - 2 * (n / pk);
        pk *= p;
    }
    e
}

#[test]
fn n_plus_one_divides_central_binomial() {
    for n in 0u64..=1000 {
        let mut m = n + 1;
        let mut p = 2;
        while m > 1 {
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            assert!(legendre_central(n, p) >= k, "n = {n}, p = {p}");
            p += 1;
        }
        assert!((central_binomial(n) % BigUint::from(n + 1)).is_zero());
    }
}

#[test]
fn excursion_side_follows_first_step() {
    for p in enumerate_all_paths(4) {
        for e in split_path(&p) {
            assert!(e.path.is_dyck());
            let raw = join_excursions(std::slice::from_ref(&e));
            assert_eq!(e.side == Side::Above, raw.steps()[0] > 0);
        }
    }
}
