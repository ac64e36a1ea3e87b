//! Root polytopes (the C side) and unions of tilting simplices (the P side).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::geometry::{Simplex, VPolytope};
use crate::quiver::{extended_positive_roots, positive_roots, DimVector, IntervalTable, Quiver};
use crate::tilting::{
    enumerate_support_tilting, enumerate_tilting, enumerate_two_support_tilting, orderings,
    ModuleCollection, OrderingRule, TiltingSequence,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesVariant {
    Plus,
    Clus,
    Full,
    BarredPlus,
    BarredClus,
    BarredFull,
}

impl SeriesVariant {
    pub const ALL: [SeriesVariant; 6] = [
        SeriesVariant::Plus,
        SeriesVariant::Clus,
        SeriesVariant::Full,
        SeriesVariant::BarredPlus,
        SeriesVariant::BarredClus,
        SeriesVariant::BarredFull,
    ];

    pub fn is_barred(self) -> bool {
        matches!(
            self,
            SeriesVariant::BarredPlus | SeriesVariant::BarredClus | SeriesVariant::BarredFull
        )
    }

    /// The unbarred variant with the same sign pattern.
    pub fn base(self) -> SeriesVariant {
        match self {
            SeriesVariant::BarredPlus => SeriesVariant::Plus,
            SeriesVariant::BarredClus => SeriesVariant::Clus,
            SeriesVariant::BarredFull => SeriesVariant::Full,
            v => v,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SeriesVariant::Plus => "plus",
            SeriesVariant::Clus => "clus",
            SeriesVariant::Full => "full",
            SeriesVariant::BarredPlus => "barred_plus",
            SeriesVariant::BarredClus => "barred_clus",
            SeriesVariant::BarredFull => "barred_full",
        }
    }
}

impl fmt::Display for SeriesVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SeriesVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown variant {s:?}")))
    }
}

/// Selects one polytope of either series. The P side needs an orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesSpec {
    pub variant: SeriesVariant,
    pub n: usize,
    pub orientation: Option<Quiver>,
}

impl SeriesSpec {
    pub fn c(variant: SeriesVariant, n: usize) -> Self {
        Self {
            variant,
            n,
            orientation: None,
        }
    }

    pub fn p(variant: SeriesVariant, q: &Quiver) -> Self {
        Self {
            variant,
            n: q.n(),
            orientation: Some(q.clone()),
        }
    }
}

fn neg_simple_roots(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..n).map(move |j| {
        let mut v = vec![0; n];
        v[j] = -1;
        v
    })
}

/// Generator list of the C-side polytope, in a fixed order.
pub fn c_generators(variant: SeriesVariant, n: usize) -> Result<Vec<Vec<i64>>> {
    if n == 0 {
        return input("n must be at least 1");
    }
    let roots: Vec<Vec<i64>> = if variant.is_barred() {
        extended_positive_roots(n)
    } else {
        positive_roots(n)
    }
    .into_iter()
    .map(|d| d.0)
    .collect();
    let mut out = roots.clone();
    match variant.base() {
        SeriesVariant::Plus => out.push(vec![0; n]),
        SeriesVariant::Clus => {
            out.extend(neg_simple_roots(n));
            out.push(vec![0; n]);
        }
        _ => out.extend(roots.iter().map(|r| r.iter().map(|x| -x).collect())),
    }
    Ok(out)
}

pub fn build_c(spec: &SeriesSpec) -> Result<VPolytope> {
    VPolytope::new(c_generators(spec.variant, spec.n)?)
}

fn cone(
    n: usize,
    plus: &[DimVector],
    minus: &[DimVector],
    minus_axes: &[usize],
) -> Result<Simplex> {
    let mut verts = vec![vec![0; n]];
    verts.extend(plus.iter().map(|d| d.0.clone()));
    verts.extend(minus.iter().map(|d| d.neg().0));
    for &j in minus_axes {
        let mut v = vec![0; n];
        v[j - 1] = -1;
        verts.push(v);
    }
    Simplex::new(verts)
}

fn outside(n: usize, mask: u64) -> Vec<usize> {
    (1..=n).filter(|&v| mask & (1 << (v - 1)) == 0).collect()
}

fn sigma(n: usize, t: &ModuleCollection) -> Result<Simplex> {
    cone(n, &t.dim_vectors(n), &[], &[])
}

/// One simplex per tilting module (plus), per support tilting module with
/// `-e_j` off the support (clus), or per 2-support pair with the minus part
/// negated (full). Barred variants use [`build_p_barred`].
pub fn build_p(variant: SeriesVariant, table: &IntervalTable) -> Result<Vec<Simplex>> {
    let n = table.quiver().n();
    match variant {
        SeriesVariant::Plus => enumerate_tilting(table)
            .iter()
            .map(|t| sigma(n, t))
            .collect(),
        SeriesVariant::Clus => enumerate_support_tilting(table)
            .iter()
            .map(|t| cone(n, &t.dim_vectors(n), &[], &outside(n, t.support_mask())))
            .collect(),
        SeriesVariant::Full => enumerate_two_support_tilting(table)
            .iter()
            .map(|p| cone(n, &p.plus.dim_vectors(n), &p.minus.dim_vectors(n), &[]))
            .collect(),
        barred => build_p_barred(barred, table, OrderingRule::default()),
    }
}

/// Splits a sequence greedily into runs of consecutive, pairwise orthogonal
/// entries and returns the partial sums inside each run.
pub fn sigma_bar_vertices(table: &IntervalTable, seq: &TiltingSequence) -> Result<Vec<DimVector>> {
    let n = table.quiver().n();
    let idx = seq
        .entries
        .iter()
        .map(|&e| table.index_of(e))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(idx.len());
    let mut run: Vec<usize> = Vec::new();
    let mut acc = DimVector(vec![0; n]);
    for (&i, e) in idx.iter().zip(&seq.entries) {
        let joins = !run.is_empty()
            && run
                .iter()
                .all(|&r| table.orthogonal_idx(r, i) && table.orthogonal_idx(i, r));
        if !joins {
            run.clear();
            acc = DimVector(vec![0; n]);
        }
        run.push(i);
        acc = acc.add(&e.dim_vector(n));
        out.push(acc.clone());
    }
    Ok(out)
}

/// `conv(0, partial sums)` for one sequence.
pub fn sigma_bar(table: &IntervalTable, seq: &TiltingSequence) -> Result<Simplex> {
    let n = table.quiver().n();
    cone(n, &sigma_bar_vertices(table, seq)?, &[], &[])
}

/// Barred P side: one simplex per sequence (plus), per support sequence with
/// `-e_j` off the support (clus), or per pair of sequences on complementary
/// supports with the second part negated (full).
pub fn build_p_barred(
    variant: SeriesVariant,
    table: &IntervalTable,
    rule: OrderingRule,
) -> Result<Vec<Simplex>> {
    let n = table.quiver().n();
    let mut out = Vec::new();
    match variant {
        SeriesVariant::BarredPlus => {
            for t in enumerate_tilting(table) {
                for s in orderings(table, t.parts(), rule)? {
                    out.push(sigma_bar(table, &s)?);
                }
            }
        }
        SeriesVariant::BarredClus => {
            for t in enumerate_support_tilting(table) {
                let axes = outside(n, t.support_mask());
                for s in orderings(table, t.parts(), rule)? {
                    out.push(cone(n, &sigma_bar_vertices(table, &s)?, &[], &axes)?);
                }
            }
        }
        SeriesVariant::BarredFull => {
            for pair in enumerate_two_support_tilting(table) {
                let minus = orderings(table, pair.minus.parts(), rule)?
                    .iter()
                    .map(|s| sigma_bar_vertices(table, s))
                    .collect::<Result<Vec<_>>>()?;
                for s in orderings(table, pair.plus.parts(), rule)? {
                    let plus = sigma_bar_vertices(table, &s)?;
                    for m in &minus {
                        out.push(cone(n, &plus, m, &[])?);
                    }
                }
            }
        }
        unbarred => return input(format!("{unbarred} is not a barred variant")),
    }
    Ok(out)
}
