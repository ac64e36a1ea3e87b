//! Verification battery. Every claim compares two exact integers computed by
//! independent routes; a report passes iff they are equal.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::catalan::{
    binomial, catalan, central_binomial, cube_decomposition, enumerate_all_paths, enumerate_dyck,
    enumerate_trees, factorial, sign_blocks, split_path, tree_counts, LatticePath, RootedTree,
    Side,
};
use crate::error::{input, Error, Result};
use crate::geometry::{
    contains_point, convex_hull, polytope_volume, simplex_normalized_volume, unpaired_ridges,
    HPolytope, Simplex, VPolytope,
};
use crate::linalg::{det_i64, Rational};
use crate::quiver::{mask_vertices, restrict, Interval, IntervalTable, Quiver};
use crate::series::{build_c, build_p, build_p_barred, SeriesSpec, SeriesVariant};
use crate::tilting::{
    almost_complete_rigid, complements, count_tilting_sequences, count_two_support_sequences,
    enumerate_support_tilting, enumerate_tilting, enumerate_two_support_tilting,
    exchange_middle_terms, OrderingRule,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub n: usize,
    /// Orientation bits, absent for orientation-free claims.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<String>,
    #[serde(serialize_with = "big_to_str", deserialize_with = "big_from_str")]
    pub left: BigInt,
    #[serde(serialize_with = "big_to_str", deserialize_with = "big_from_str")]
    pub right: BigInt,
    pub pass: bool,
    /// Wall time of the batch that produced this report.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

fn big_to_str<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn big_from_str<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
    let s = String::deserialize(d)?;
    BigInt::from_str(&s).map_err(serde::de::Error::custom)
}

impl VerificationReport {
    pub fn new(
        claim: &str,
        n: usize,
        q: Option<&Quiver>,
        left: impl Into<BigInt>,
        right: impl Into<BigInt>,
    ) -> Self {
        let (left, right) = (left.into(), right.into());
        Self {
            claim: claim.to_string(),
            n,
            orientation: q.map(Quiver::bits),
            pass: left == right,
            left,
            right,
            runtime_ms: None,
        }
    }
}

pub fn all_pass(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

/// Process exit status for a finished battery.
pub fn exit_status(reports: &[VerificationReport]) -> i32 {
    if all_pass(reports) {
        0
    } else {
        1
    }
}

/// Claim groups that can be selected independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimGroup {
    Counts,
    Geometry,
    Facets,
    Recursions,
    Arithmetic,
    Sequences,
    Barred,
    Structure,
    Combinatorics,
}

impl ClaimGroup {
    pub const ALL: [ClaimGroup; 9] = [
        ClaimGroup::Counts,
        ClaimGroup::Geometry,
        ClaimGroup::Facets,
        ClaimGroup::Recursions,
        ClaimGroup::Arithmetic,
        ClaimGroup::Sequences,
        ClaimGroup::Barred,
        ClaimGroup::Structure,
        ClaimGroup::Combinatorics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaimGroup::Counts => "counts",
            ClaimGroup::Geometry => "geometry",
            ClaimGroup::Facets => "facets",
            ClaimGroup::Recursions => "recursions",
            ClaimGroup::Arithmetic => "arithmetic",
            ClaimGroup::Sequences => "sequences",
            ClaimGroup::Barred => "barred",
            ClaimGroup::Structure => "structure",
            ClaimGroup::Combinatorics => "combinatorics",
        }
    }

    fn needs_orientation(self) -> bool {
        matches!(
            self,
            ClaimGroup::Counts
                | ClaimGroup::Geometry
                | ClaimGroup::Recursions
                | ClaimGroup::Sequences
                | ClaimGroup::Barred
                | ClaimGroup::Structure
        )
    }
}

impl FromStr for ClaimGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimGroup::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown claim group {s:?}")))
    }
}

/// Size caps; larger inputs are refused unless `override_limits` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub geometry: usize,
    pub enumeration: usize,
    pub arithmetic: usize,
    pub override_limits: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            geometry: 5,
            enumeration: 8,
            arithmetic: 30,
            override_limits: false,
        }
    }
}

impl Limits {
    fn cap(&self, group: ClaimGroup) -> usize {
        match group {
            ClaimGroup::Geometry | ClaimGroup::Facets | ClaimGroup::Barred => self.geometry,
            ClaimGroup::Arithmetic | ClaimGroup::Combinatorics => self.arithmetic,
            _ => self.enumeration,
        }
    }

    /// Whether `group` may run at size `n`.
    pub fn allows(&self, group: ClaimGroup, n: usize) -> bool {
        self.override_limits || n <= self.cap(group)
    }

    pub fn check(&self, group: ClaimGroup, n: usize) -> Result<()> {
        if self.allows(group, n) {
            Ok(())
        } else {
            input(format!(
                "n = {n} exceeds the {} limit {}",
                group.name(),
                self.cap(group)
            ))
        }
    }
}

/// Shared settings: the ordering rule for sequences and optional Ext
/// corruptions applied to every table whose quiver contains the intervals.
#[derive(Debug, Clone, Default)]
pub struct Context {
    pub rule: OrderingRule,
    pub ext_overrides: Vec<(Interval, Interval, u32)>,
    pub timings: bool,
}

impl Context {
    pub fn table(&self, q: &Quiver) -> Result<IntervalTable> {
        let applicable: Vec<_> = self
            .ext_overrides
            .iter()
            .copied()
            .filter(|(a, b, _)| q.contains(*a) && q.contains(*b))
            .collect();
        IntervalTable::new(q)?.with_ext_overrides(&applicable)
    }

    fn timed<F>(&self, f: F) -> Result<Vec<VerificationReport>>
    where
        F: FnOnce() -> Result<Vec<VerificationReport>>,
    {
        let start = Instant::now();
        let mut out = f()?;
        if self.timings {
            let ms = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
            for r in &mut out {
                r.runtime_ms = Some(ms);
            }
        }
        Ok(out)
    }
}

fn big(x: impl Into<BigInt>) -> BigInt {
    x.into()
}

fn integer(v: &Rational) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::Internal(format!(
            "lattice volume {v} is not an integer"
        )))
    }
}

fn hull_of(spec: &SeriesSpec) -> Result<HPolytope> {
    convex_hull(&build_c(spec)?)
}

/// Enumeration counts against `C_n`, `C_{n+1}` and `C(2n, n)`.
pub fn verify_counts(ctx: &Context, q: &Quiver) -> Result<Vec<VerificationReport>> {
    ctx.timed(|| {
        let n = q.n();
        let t = ctx.table(q)?;
        let nn = n as u64;
        Ok(vec![
            VerificationReport::new(
                "count.tilting",
                n,
                Some(q),
                enumerate_tilting(&t).len(),
                catalan(nn),
            ),
            VerificationReport::new(
                "count.support_tilting",
                n,
                Some(q),
                enumerate_support_tilting(&t).len(),
                catalan(nn + 1),
            ),
            VerificationReport::new(
                "count.two_support_tilting",
                n,
                Some(q),
                enumerate_two_support_tilting(&t).len(),
                central_binomial(nn),
            ),
        ])
    })
}

/// Claims tying the C side to the P side for one variant: hull volume equals
/// the enumerated count, every simplex vertex lies in the hull, the simplex
/// volumes add up to the hull volume, and the simplices glue along ridges.
pub fn verify_equality(
    ctx: &Context,
    q: &Quiver,
    variant: SeriesVariant,
) -> Result<Vec<VerificationReport>> {
    ctx.timed(|| {
        let n = q.n();
        let t = ctx.table(q)?;
        let hull = hull_of(&SeriesSpec::c(variant, n))?;
        let simplices = if variant.is_barred() {
            build_p_barred(variant, &t, ctx.rule)?
        } else {
            build_p(variant, &t)?
        };
        let hull_volume = integer(&polytope_volume(&hull).value)?;
        let mut out = Vec::new();
        if !variant.is_barred() {
            out.push(VerificationReport::new(
                &format!("volume.{variant}"),
                n,
                Some(q),
                hull_volume.clone(),
                simplices.len(),
            ));
        }
        out.extend(union_claims(
            &variant.to_string(),
            n,
            Some(q),
            &simplices,
            &hull,
        )?);
        Ok(out)
    })
}

fn union_claims(
    label: &str,
    n: usize,
    q: Option<&Quiver>,
    simplices: &[Simplex],
    hull: &HPolytope,
) -> Result<Vec<VerificationReport>> {
    let outside = simplices
        .iter()
        .flat_map(|s| s.vertices())
        .filter(|v| !contains_point(hull, v))
        .count();
    let mut total = Rational::zero();
    for s in simplices {
        total += simplex_normalized_volume(s)?;
    }
    let hull_volume = integer(&polytope_volume(hull).value)?;
    let unpaired = if hull.is_full_dimensional() {
        unpaired_ridges(simplices, hull)?
    } else {
        usize::MAX
    };
    Ok(vec![
        VerificationReport::new(&format!("containment.{label}"), n, q, outside, 0),
        VerificationReport::new(
            &format!("equality.{label}"),
            n,
            q,
            integer(&total)?,
            hull_volume,
        ),
        VerificationReport::new(&format!("triangulation.{label}"), n, q, unpaired, 0),
    ])
}

/// Orientation-free hull claims for `C(A_n)`: the closed form for the three
/// unbarred volumes and the cone-over-facets decomposition from the origin.
pub fn verify_volumes(n: usize) -> Result<Vec<VerificationReport>> {
    let nn = n as u64;
    let mut out = Vec::new();
    for (variant, expected) in [
        (SeriesVariant::Plus, catalan(nn)),
        (SeriesVariant::Clus, catalan(nn + 1)),
        (SeriesVariant::Full, central_binomial(nn)),
    ] {
        let hull = hull_of(&SeriesSpec::c(variant, n))?;
        let v = integer(&polytope_volume(&hull).value)?;
        out.push(VerificationReport::new(
            &format!("volume.{variant}.closed_form"),
            n,
            None,
            v,
            expected,
        ));
    }
    let hull = hull_of(&SeriesSpec::c(SeriesVariant::Full, n))?;
    let pyramids: BigInt = hull.facets.iter().map(|f| &f.volume * &f.offset).sum();
    out.push(VerificationReport::new(
        "volume.facet_pyramids",
        n,
        None,
        pyramids,
        central_binomial(nn),
    ));
    Ok(out)
}

/// Facets of `C(A_n)` grouped by lattice volume against the predicted orbit
/// sizes: `C(n+1, i)` facets of volume `C(n-1, i-1)` for `i = 1..n`.
pub fn verify_facets(n: usize) -> Result<Vec<VerificationReport>> {
    let hull = hull_of(&SeriesSpec::c(SeriesVariant::Full, n))?;
    let nn = n as u64;
    let mut predicted: BTreeMap<BigInt, BigInt> = BTreeMap::new();
    for i in 1..=nn {
        *predicted.entry(big(binomial(nn - 1, i - 1))).or_default() += big(binomial(nn + 1, i));
    }
    let mut observed: BTreeMap<BigInt, BigInt> = BTreeMap::new();
    for f in &hull.facets {
        *observed.entry(f.volume.clone()).or_default() += 1;
    }
    let volumes: BTreeSet<BigInt> = predicted.keys().chain(observed.keys()).cloned().collect();
    let mut out: Vec<VerificationReport> = volumes
        .into_iter()
        .map(|v| {
            let claim = format!("facets.volume_multiplicity.{v}");
            let seen = observed.get(&v).cloned().unwrap_or_default();
            let want = predicted.get(&v).cloned().unwrap_or_default();
            VerificationReport::new(&claim, n, None, seen, want)
        })
        .collect();
    let predicted_total: BigInt = (1..=nn).map(|i| big(binomial(nn + 1, i))).sum();
    out.push(VerificationReport::new(
        "facets.total",
        n,
        None,
        hull.facets.len(),
        predicted_total,
    ));
    if n == 3 {
        let by_size = |k: usize| hull.facets.iter().filter(|f| f.incident.len() == k).count();
        out.push(VerificationReport::new(
            "facets.quadrilaterals",
            n,
            None,
            by_size(4),
            6,
        ));
        out.push(VerificationReport::new(
            "facets.triangles",
            n,
            None,
            by_size(3),
            8,
        ));
    }
    Ok(out)
}

/// Number of tilting modules of the full subquiver on `vertices`, as the
/// product over its connected components, each enumerated on its own.
fn tilting_count_on(q: &Quiver, vertices: &[usize]) -> Result<BigInt> {
    let mut prod = BigInt::one();
    for c in restrict(q, vertices) {
        prod *= enumerate_tilting(&IntervalTable::new(&c.quiver)?).len();
    }
    Ok(prod)
}

/// Enumeration-backed recursions: the count of tilting modules from removing
/// one vertex at a time, the 2-support count as a sum over support splits,
/// and the support tilting count as a sum over supports.
pub fn verify_recursions(ctx: &Context, q: &Quiver) -> Result<Vec<VerificationReport>> {
    ctx.timed(|| {
        let n = q.n();
        let t = ctx.table(q)?;
        let all: Vec<usize> = (1..=n).collect();
        let mut removal = BigInt::zero();
        for i in 1..=n {
            let rest: Vec<usize> = all.iter().copied().filter(|&v| v != i).collect();
            removal += tilting_count_on(q, &rest)?;
        }
        let full = (1u64 << n) - 1;
        let mut split = BigInt::zero();
        let mut supports = BigInt::zero();
        for mask in 0..=full {
            let inside = tilting_count_on(q, &mask_vertices(n, mask))?;
            split += &inside * tilting_count_on(q, &mask_vertices(n, full ^ mask))?;
            supports += inside;
        }
        Ok(vec![
            VerificationReport::new(
                "recursion.sincere_removal",
                n,
                Some(q),
                enumerate_tilting(&t).len(),
                removal,
            ),
            VerificationReport::new(
                "recursion.support_split",
                n,
                Some(q),
                enumerate_two_support_tilting(&t).len(),
                split,
            ),
            VerificationReport::new(
                "recursion.support_sum",
                n,
                Some(q),
                enumerate_support_tilting(&t).len(),
                supports,
            ),
        ])
    })
}

/// Pure arithmetic forms of the recursions and identities.
pub fn verify_arithmetic(n: usize) -> Vec<VerificationReport> {
    let nn = n as u64;
    let c: Vec<BigInt> = (0..=nn + 1).map(|k| big(catalan(k))).collect();
    let removal: BigInt = (1..=n).map(|i| &c[i - 1] * &c[n - i]).sum();
    // s[m]: compositions of m weighted by the product of C over the parts.
    let mut s = vec![BigInt::one()];
    // u[m]: subsets of a path on m vertices weighted by the product of C over components.
    let mut u = vec![BigInt::one()];
    for m in 1..=n {
        s.push((1..=m).map(|k| &c[k] * &s[m - k]).sum());
        let mut next = u[m - 1].clone();
        for k in 1..=m {
            next += if k == m {
                c[k].clone()
            } else {
                &c[k] * &u[m - k - 1]
            };
        }
        u.push(next);
    }
    let facet_sum: BigInt = (1..=nn)
        .map(|i| big(binomial(nn - 1, i - 1) * binomial(nn + 1, i)))
        .sum();
    let factorial_sum: BigInt = (0..=nn)
        .map(|i| big(binomial(nn, i) * factorial(i) * factorial(nn - i)))
        .sum();
    let central = big(central_binomial(nn));
    vec![
        VerificationReport::new(
            "recursion.sincere_removal.arithmetic",
            n,
            None,
            c[n].clone(),
            removal,
        ),
        VerificationReport::new(
            "recursion.support_split.arithmetic",
            n,
            None,
            central.clone(),
            big(2) * &s[n],
        ),
        VerificationReport::new(
            "recursion.support_sum.arithmetic",
            n,
            None,
            c[n + 1].clone(),
            u[n].clone(),
        ),
        VerificationReport::new(
            "identity.facet_binomial",
            n,
            None,
            facet_sum,
            central.clone(),
        ),
        VerificationReport::new(
            "identity.factorial_split",
            n,
            None,
            big(factorial(nn + 1)),
            factorial_sum,
        ),
        VerificationReport::new(
            "identity.catalan_divisibility",
            n,
            None,
            central % (nn + 1),
            0,
        ),
    ]
}

/// Sequence counts against `n!` and `(n + 1)!` under the context's ordering rule.
pub fn verify_sequences(ctx: &Context, q: &Quiver) -> Result<Vec<VerificationReport>> {
    ctx.timed(|| {
        let n = q.n();
        let t = ctx.table(q)?;
        let nn = n as u64;
        Ok(vec![
            VerificationReport::new(
                "count.tilting_sequences",
                n,
                Some(q),
                count_tilting_sequences(&t, ctx.rule)?,
                factorial(nn),
            ),
            VerificationReport::new(
                "count.two_support_sequences",
                n,
                Some(q),
                count_two_support_sequences(&t, ctx.rule)?,
                factorial(nn + 1),
            ),
        ])
    })
}

/// Barred hulls against `n!` and `(n + 1)!`.
pub fn verify_barred_volumes(n: usize) -> Result<Vec<VerificationReport>> {
    let nn = n as u64;
    let plus =
        integer(&polytope_volume(&hull_of(&SeriesSpec::c(SeriesVariant::BarredPlus, n))?).value)?;
    let full =
        integer(&polytope_volume(&hull_of(&SeriesSpec::c(SeriesVariant::BarredFull, n))?).value)?;
    Ok(vec![
        VerificationReport::new(
            "volume.barred_plus.closed_form",
            n,
            None,
            plus,
            factorial(nn),
        ),
        VerificationReport::new(
            "volume.barred_full.closed_form",
            n,
            None,
            full,
            factorial(nn + 1),
        ),
    ])
}

/// Barred hull volumes against sequence counts, and the unions of the
/// sequence simplices against the barred hulls.
pub fn verify_barred(ctx: &Context, q: &Quiver) -> Result<Vec<VerificationReport>> {
    let n = q.n();
    let mut out = ctx.timed(|| {
        let t = ctx.table(q)?;
        let plus = integer(
            &polytope_volume(&hull_of(&SeriesSpec::c(SeriesVariant::BarredPlus, n))?).value,
        )?;
        let full = integer(
            &polytope_volume(&hull_of(&SeriesSpec::c(SeriesVariant::BarredFull, n))?).value,
        )?;
        Ok(vec![
            VerificationReport::new(
                "volume.barred_plus.sequences",
                n,
                Some(q),
                plus,
                count_tilting_sequences(&t, ctx.rule)?,
            ),
            VerificationReport::new(
                "volume.barred_full.sequences",
                n,
                Some(q),
                full,
                count_two_support_sequences(&t, ctx.rule)?,
            ),
        ])
    })?;
    for variant in [
        SeriesVariant::BarredPlus,
        SeriesVariant::BarredClus,
        SeriesVariant::BarredFull,
    ] {
        out.extend(verify_equality(ctx, q, variant)?);
    }
    Ok(out)
}

/// Unimodularity of every tilting module and the one-or-two complement
/// property of almost complete rigid collections, with the exchange relation
/// `dim M1 + dim M2 = dim E` for some one or two summands `E`.
pub fn verify_structure(ctx: &Context, q: &Quiver) -> Result<Vec<VerificationReport>> {
    ctx.timed(|| {
        let n = q.n();
        let t = ctx.table(q)?;
        let tilting = enumerate_tilting(&t);
        let unimodular = tilting
            .iter()
            .filter(|m| {
                let rows: Vec<Vec<i64>> = m.dim_vectors(n).into_iter().map(|d| d.0).collect();
                det_i64(&rows).abs().is_one()
            })
            .count();
        let acr = almost_complete_rigid(&t);
        let mut one_or_two = 0usize;
        let mut exchange_cases = 0usize;
        let mut exchange_ok = 0usize;
        for a in &acr {
            let c = complements(&t, a)?;
            if (1..=2).contains(&c.len()) {
                one_or_two += 1;
            }
            if let [m1, m2] = c.as_slice() {
                exchange_cases += 1;
                if exchange_middle_terms(n, a, *m1, *m2).is_some() {
                    exchange_ok += 1;
                }
            }
        }
        Ok(vec![
            VerificationReport::new(
                "structure.unimodular",
                n,
                Some(q),
                unimodular,
                tilting.len(),
            ),
            VerificationReport::new("structure.complements", n, Some(q), one_or_two, acr.len()),
            VerificationReport::new(
                "structure.exchange",
                n,
                Some(q),
                exchange_ok,
                exchange_cases,
            ),
        ])
    })
}

/// Largest sizes at which trees and paths are materialized.
pub const MATERIALIZE_TREES: usize = 8;
pub const MATERIALIZE_PATHS: usize = 10;

/// Trees, Dyck paths and lattice paths. Count identities run at every size;
/// explicit objects only up to the materialization bounds.
pub fn verify_combinatorics(n: usize) -> Result<Vec<VerificationReport>> {
    let nn = n as u64;
    let cn = big(catalan(nn));
    let central = big(central_binomial(nn));
    let mut out = vec![VerificationReport::new(
        "recursion.trees",
        n,
        None,
        big(tree_counts(n)[n].clone()),
        cn.clone(),
    )];
    // Primitive excursions of semilength k number C_{k-1}; each sits above or below.
    let mut prim = vec![BigInt::one()];
    for m in 1..=n {
        prim.push(
            (1..=m)
                .map(|k| big(2) * big(catalan(k as u64 - 1)) * &prim[m - k])
                .sum(),
        );
    }
    out.push(VerificationReport::new(
        "identity.excursion_split",
        n,
        None,
        prim[n].clone(),
        central.clone(),
    ));
    if n > MATERIALIZE_PATHS {
        return Ok(out);
    }
    let dyck = enumerate_dyck(n);
    let paths = enumerate_all_paths(n);
    out.push(VerificationReport::new(
        "count.dyck",
        n,
        None,
        dyck.len(),
        cn.clone(),
    ));
    out.push(VerificationReport::new(
        "count.lattice_paths",
        n,
        None,
        paths.len(),
        central,
    ));
    out.extend(path_structure(n, &paths)?);
    if n > MATERIALIZE_TREES {
        return Ok(out);
    }
    let trees = enumerate_trees(n);
    out.push(VerificationReport::new(
        "count.trees",
        n,
        None,
        trees.len(),
        cn,
    ));
    let dyck_set: BTreeSet<_> = dyck.iter().cloned().collect();
    let images: BTreeSet<_> = trees
        .iter()
        .filter(|t| RootedTree::from_dyck(&t.to_dyck()).as_ref() == Ok(*t))
        .map(RootedTree::to_dyck)
        .filter(|p| dyck_set.contains(p))
        .collect();
    out.push(VerificationReport::new(
        "bijection.tree_dyck",
        n,
        None,
        images.len(),
        dyck.len(),
    ));
    Ok(out)
}

fn path_structure(n: usize, paths: &[LatticePath]) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let classes: BTreeSet<_> = paths
        .iter()
        .map(|p| {
            split_path(p)
                .into_iter()
                .map(|e| Ok((e.side, RootedTree::from_dyck(&e.path)?.to_parens())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    out.push(VerificationReport::new(
        "paths.split_classes",
        n,
        None,
        classes.len(),
        paths.len(),
    ));
    // Sign blocks mark a vertex subset (the above blocks); the number of paths
    // per subset must be the product of Catalan numbers over its components
    // and over the components of the complement.
    let mut per_subset: BTreeMap<u64, u64> = BTreeMap::new();
    for p in paths {
        let mut mask = 0u64;
        let mut pos = 0usize;
        for b in sign_blocks(p) {
            let k = b.semilength();
            if b.side == Side::Above {
                mask |= ((1u64 << k) - 1) << pos;
            }
            pos += k;
        }
        *per_subset.entry(mask).or_default() += 1;
    }
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let agreeing = (0..=full)
        .filter(|&mask| {
            let product = catalan_product(n, mask) * catalan_product(n, full ^ mask);
            big(per_subset.get(&mask).copied().unwrap_or(0)) == product
        })
        .count();
    out.push(VerificationReport::new(
        "paths.block_support",
        n,
        None,
        agreeing,
        full + 1,
    ));
    Ok(out)
}

fn catalan_product(n: usize, mask: u64) -> BigInt {
    let q = Quiver::directed(n.max(1)).expect("n >= 1");
    restrict(&q, &mask_vertices(n, mask))
        .iter()
        .map(|c| big(catalan(c.embedding.len() as u64)))
        .product()
}

/// Order simplices of the unit cube: total volume `n!` and a ridge-paired gluing.
pub fn verify_cube(n: usize) -> Result<Vec<VerificationReport>> {
    let simplices = cube_decomposition(n)?;
    let cube = convex_hull(&VPolytope::new(c_cube(n))?)?;
    let mut out = union_claims("cube", n, None, &simplices, &cube)?;
    out.retain(|r| r.claim != "containment.cube");
    out.push(VerificationReport::new(
        "volume.cube",
        n,
        None,
        simplices.len(),
        factorial(n as u64),
    ));
    Ok(out)
}

fn c_cube(n: usize) -> Vec<Vec<i64>> {
    (0..1u64 << n)
        .map(|m| (0..n).map(|i| (m >> i & 1) as i64).collect())
        .collect()
}

/// What to run in one battery invocation.
#[derive(Debug, Clone)]
pub struct Battery {
    pub sizes: Vec<usize>,
    /// Orientations per size; `None` means the directed orientation only.
    pub orientations: OrientationChoice,
    pub groups: Vec<ClaimGroup>,
    pub limits: Limits,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrientationChoice {
    Directed,
    All,
    /// Explicit orientation bits, applied to sizes of matching length.
    Bits(String),
}

impl OrientationChoice {
    pub fn quivers(&self, n: usize) -> Result<Vec<Quiver>> {
        match self {
            OrientationChoice::Directed => Ok(vec![Quiver::directed(n)?]),
            OrientationChoice::All => Quiver::all_orientations(n),
            OrientationChoice::Bits(b) => Ok(vec![Quiver::from_bits(n, b)?]),
        }
    }
}

enum Job {
    Oriented(ClaimGroup, Quiver),
    Free(ClaimGroup, usize),
}

fn run_job(ctx: &Context, limits: &Limits, job: &Job) -> Result<Vec<VerificationReport>> {
    match job {
        Job::Oriented(group, q) => match group {
            ClaimGroup::Counts => verify_counts(ctx, q),
            ClaimGroup::Geometry => {
                let mut out = Vec::new();
                for v in [
                    SeriesVariant::Plus,
                    SeriesVariant::Clus,
                    SeriesVariant::Full,
                ] {
                    out.extend(verify_equality(ctx, q, v)?);
                }
                Ok(out)
            }
            ClaimGroup::Recursions => verify_recursions(ctx, q),
            ClaimGroup::Sequences => verify_sequences(ctx, q),
            ClaimGroup::Barred => verify_barred(ctx, q),
            ClaimGroup::Structure => verify_structure(ctx, q),
            other => input(format!(
                "{} claims do not depend on an orientation",
                other.name()
            )),
        },
        Job::Free(group, n) => {
            let n = *n;
            match group {
                ClaimGroup::Geometry => ctx.timed(|| verify_volumes(n)),
                ClaimGroup::Facets => ctx.timed(|| verify_facets(n)),
                ClaimGroup::Arithmetic => ctx.timed(|| Ok(verify_arithmetic(n))),
                ClaimGroup::Barred => ctx.timed(|| verify_barred_volumes(n)),
                ClaimGroup::Combinatorics => ctx.timed(|| {
                    let mut out = verify_combinatorics(n)?;
                    if n <= 6 || (n == 7 && limits.override_limits) {
                        out.extend(verify_cube(n)?);
                    }
                    Ok(out)
                }),
                other => input(format!("{} claims need an orientation", other.name())),
            }
        }
    }
}

/// Claims whose hull would be too large are skipped for sizes above the
/// geometry limit; every other group refuses sizes above its own limit.
pub fn run_battery(ctx: &Context, battery: &Battery) -> Result<Vec<VerificationReport>> {
    let mut jobs = Vec::new();
    for &n in &battery.sizes {
        if n == 0 {
            return input("n must be at least 1");
        }
        for &group in &battery.groups {
            if !battery.limits.allows(group, n) {
                continue;
            }
            if group == ClaimGroup::Facets && n > 4 && !battery.limits.override_limits {
                continue;
            }
            if group.needs_orientation() {
                for q in battery.orientations.quivers(n)? {
                    jobs.push(Job::Oriented(group, q));
                }
            }
            if matches!(
                group,
                ClaimGroup::Geometry
                    | ClaimGroup::Facets
                    | ClaimGroup::Arithmetic
                    | ClaimGroup::Barred
                    | ClaimGroup::Combinatorics
            ) {
                jobs.push(Job::Free(group, n));
            }
        }
    }
    let results: Vec<Result<Vec<VerificationReport>>> = jobs
        .par_iter()
        .map(|job| run_job(ctx, &battery.limits, job))
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    sort_reports(&mut out);
    Ok(out)
}

/// Deterministic order: by claim, size, then orientation.
pub fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by(|a, b| (&a.claim, a.n, &a.orientation).cmp(&(&b.claim, b.n, &b.orientation)));
}
