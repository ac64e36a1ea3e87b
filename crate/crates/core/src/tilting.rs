//! Enumeration of tilting modules and their support, 2-support and
//! sequence variants.
//!
//! Everything is driven by an [`IntervalTable`], so a table with corrupted
//! entries propagates into every count built on top of it.

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::quiver::{mask_vertices, restrict, DimVector, Interval, IntervalTable};

/// Basic module: a set of pairwise distinct intervals, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModuleCollection {
    parts: Vec<Interval>,
}

impl ModuleCollection {
    pub fn new(mut parts: Vec<Interval>) -> Result<Self> {
        parts.sort_unstable();
        if parts.windows(2).any(|w| w[0] == w[1]) {
            return input("a basic module cannot repeat an indecomposable summand");
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn support_mask(&self) -> u64 {
        self.parts.iter().fold(0, |m, iv| m | iv.mask())
    }

    pub fn dim_vectors(&self, n: usize) -> Vec<DimVector> {
        self.parts.iter().map(|iv| iv.dim_vector(n)).collect()
    }

    pub fn contains(&self, iv: &Interval) -> bool {
        self.parts.binary_search(iv).is_ok()
    }

    fn union(&self, other: &ModuleCollection) -> ModuleCollection {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable();
        ModuleCollection { parts }
    }
}

/// `T = T+ (+) T-` with complementary supports.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoSupportPair {
    pub plus: ModuleCollection,
    pub minus: ModuleCollection,
}

/// Ordered list of summands.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TiltingSequence {
    pub entries: Vec<Interval>,
}

/// Which pairs of summands are forced into a fixed relative order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderingRule {
    /// `Hom(later, earlier) = 0`: a summand with a nonzero map to another
    /// must come first.
    #[default]
    Hom,
    /// A summand must come before every summand nested strictly inside its
    /// support. For the linear orientation this is the inner-vertex order of
    /// the binary tree attached to the module.
    Nesting,
}

impl OrderingRule {
    /// `a` has to be placed before `b`.
    fn precedes(self, table: &IntervalTable, a: usize, b: usize) -> bool {
        match self {
            OrderingRule::Hom => a != b && table.hom_idx(a, b) > 0,
            OrderingRule::Nesting => {
                let iv = table.intervals();
                iv[a].strictly_contains(&iv[b])
            }
        }
    }
}

pub fn is_rigid(table: &IntervalTable, parts: &[Interval]) -> Result<bool> {
    let idx = parts
        .iter()
        .map(|&p| table.index_of(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(idx
        .iter()
        .all(|&a| idx.iter().all(|&b| table.ext_idx(a, b) == 0)))
}

/// Rigid `k`-subsets of `candidates` (indices into the table), by depth-first
/// search in candidate order with pruning on the first Ext violation.
fn rigid_subsets(table: &IntervalTable, candidates: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(
        table: &IntervalTable,
        candidates: &[usize],
        k: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == k {
            out.push(chosen.clone());
            return;
        }
        let need = k - chosen.len();
        for pos in start..candidates.len() {
            if candidates.len() - pos < need {
                break;
            }
            let c = candidates[pos];
            if table.ext_idx(c, c) != 0 || !chosen.iter().all(|&x| table.compatible_idx(x, c)) {
                continue;
            }
            chosen.push(c);
            go(table, candidates, k, pos + 1, chosen, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    go(
        table,
        candidates,
        k,
        0,
        &mut Vec::with_capacity(k),
        &mut out,
    );
    out
}

fn collection(table: &IntervalTable, idx: &[usize]) -> ModuleCollection {
    let mut parts: Vec<Interval> = idx.iter().map(|&i| table.intervals()[i]).collect();
    parts.sort_unstable();
    ModuleCollection { parts }
}

/// Tilting modules of the full subquiver on the vertex range `lo..=hi`.
pub fn enumerate_tilting_within(
    table: &IntervalTable,
    lo: usize,
    hi: usize,
) -> Vec<ModuleCollection> {
    let candidates: Vec<usize> = table
        .intervals()
        .iter()
        .enumerate()
        .filter(|(_, iv)| iv.lo >= lo && iv.hi <= hi)
        .map(|(i, _)| i)
        .collect();
    rigid_subsets(table, &candidates, hi + 1 - lo)
        .iter()
        .map(|s| collection(table, s))
        .collect()
}

/// Rigid sets of `n` intervals, lexicographic.
pub fn enumerate_tilting(table: &IntervalTable) -> Vec<ModuleCollection> {
    let mut out = enumerate_tilting_within(table, 1, table.quiver().n());
    out.sort();
    out
}

/// Support tilting modules whose support is exactly `mask`: one tilting
/// module per connected component of the restriction, combined.
pub fn support_tilting_with_support(table: &IntervalTable, mask: u64) -> Vec<ModuleCollection> {
    let n = table.quiver().n();
    let comps = restrict(table.quiver(), &mask_vertices(n, mask));
    let mut acc = vec![ModuleCollection::empty()];
    for comp in &comps {
        let local = enumerate_tilting_within(table, comp.first(), comp.last());
        acc = acc
            .iter()
            .flat_map(|a| local.iter().map(move |b| a.union(b)))
            .collect();
    }
    acc.sort();
    acc
}

/// All support tilting modules, grouped by support mask in binary order.
pub fn enumerate_support_tilting(table: &IntervalTable) -> Vec<ModuleCollection> {
    let n = table.quiver().n();
    (0..1u64 << n)
        .flat_map(|mask| support_tilting_with_support(table, mask))
        .collect()
}

/// All 2-support tilting modules, grouped by the support mask of `plus`.
pub fn enumerate_two_support_tilting(table: &IntervalTable) -> Vec<TwoSupportPair> {
    let n = table.quiver().n();
    let full = (1u64 << n) - 1;
    let mut out = Vec::new();
    for mask in 0..=full {
        let plus = support_tilting_with_support(table, mask);
        let minus = support_tilting_with_support(table, full ^ mask);
        for p in &plus {
            for m in &minus {
                out.push(TwoSupportPair {
                    plus: p.clone(),
                    minus: m.clone(),
                });
            }
        }
    }
    out
}

/// Rigid collections with `n - 1` summands.
pub fn almost_complete_rigid(table: &IntervalTable) -> Vec<ModuleCollection> {
    let n = table.quiver().n();
    if n == 0 {
        return Vec::new();
    }
    let all: Vec<usize> = (0..table.intervals().len()).collect();
    rigid_subsets(table, &all, n - 1)
        .iter()
        .map(|s| collection(table, s))
        .collect()
}

/// Intervals completing an almost complete rigid collection to a tilting module.
pub fn complements(table: &IntervalTable, a: &ModuleCollection) -> Result<Vec<Interval>> {
    let n = table.quiver().n();
    if a.len() + 1 != n {
        return input(format!(
            "expected {} summands, got {}",
            n.saturating_sub(1),
            a.len()
        ));
    }
    if !is_rigid(table, a.parts())? {
        return input("collection is not rigid");
    }
    let idx = a
        .parts()
        .iter()
        .map(|&p| table.index_of(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(table
        .intervals()
        .iter()
        .enumerate()
        .filter(|(i, iv)| {
            !a.contains(iv)
                && table.ext_idx(*i, *i) == 0
                && idx.iter().all(|&j| table.compatible_idx(*i, j))
        })
        .map(|(_, &iv)| iv)
        .collect())
}

/// Summands of `a` (one or two of them) whose dimension vectors add up to
/// `dim m1 + dim m2`, if such a choice exists.
pub fn exchange_middle_terms(
    n: usize,
    a: &ModuleCollection,
    m1: Interval,
    m2: Interval,
) -> Option<Vec<Interval>> {
    let target = m1.dim_vector(n).add(&m2.dim_vector(n));
    let parts = a.parts();
    for (i, x) in parts.iter().enumerate() {
        if x.dim_vector(n) == target {
            return Some(vec![*x]);
        }
        for y in &parts[i + 1..] {
            if x.dim_vector(n).add(&y.dim_vector(n)) == target {
                return Some(vec![*x, *y]);
            }
        }
    }
    None
}

/// Predecessor masks: bit `j` of `pred[i]` is set iff summand `j` has to
/// precede summand `i`.
fn precedence(table: &IntervalTable, idx: &[usize], rule: OrderingRule) -> Vec<u32> {
    idx.iter()
        .map(|&b| {
            idx.iter()
                .enumerate()
                .filter(|&(_, &a)| rule.precedes(table, a, b))
                .fold(0u32, |m, (j, _)| m | 1 << j)
        })
        .collect()
}

/// Number of orderings of `parts` allowed by `rule`, by dynamic programming
/// over placed prefixes.
pub fn count_orderings(
    table: &IntervalTable,
    parts: &[Interval],
    rule: OrderingRule,
) -> Result<u64> {
    let idx = parts
        .iter()
        .map(|&p| table.index_of(p))
        .collect::<Result<Vec<_>>>()?;
    let k = idx.len();
    if k > 20 {
        return input("too many summands to order");
    }
    let pred = precedence(table, &idx, rule);
    let mut ways = vec![0u64; 1 << k];
    ways[0] = 1;
    for mask in 0..1usize << k {
        let w = ways[mask];
        if w == 0 {
            continue;
        }
        for (i, &p) in pred.iter().enumerate() {
            if mask >> i & 1 == 0 && (p as usize) & !mask == 0 {
                ways[mask | 1 << i] += w;
            }
        }
    }
    Ok(ways[(1 << k) - 1])
}

/// Every ordering of `parts` allowed by `rule`.
pub fn orderings(
    table: &IntervalTable,
    parts: &[Interval],
    rule: OrderingRule,
) -> Result<Vec<TiltingSequence>> {
    let idx = parts
        .iter()
        .map(|&p| table.index_of(p))
        .collect::<Result<Vec<_>>>()?;
    let pred = precedence(table, &idx, rule);
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(idx.len());
    fn go(
        parts: &[Interval],
        pred: &[u32],
        placed: u32,
        seq: &mut Vec<Interval>,
        out: &mut Vec<TiltingSequence>,
    ) {
        if seq.len() == parts.len() {
            out.push(TiltingSequence {
                entries: seq.clone(),
            });
            return;
        }
        for (i, &p) in pred.iter().enumerate() {
            if placed >> i & 1 == 0 && p & !placed == 0 {
                seq.push(parts[i]);
                go(parts, pred, placed | 1 << i, seq, out);
                seq.pop();
            }
        }
    }
    go(parts, &pred, 0, &mut seq, &mut out);
    Ok(out)
}

/// A sequence is admissible: its entries are distinct, pairwise without
/// Ext, and respect `rule`.
pub fn is_tilting_sequence(
    table: &IntervalTable,
    seq: &TiltingSequence,
    rule: OrderingRule,
) -> Result<bool> {
    let idx = seq
        .entries
        .iter()
        .map(|&p| table.index_of(p))
        .collect::<Result<Vec<_>>>()?;
    if ModuleCollection::new(seq.entries.clone()).is_err() || !is_rigid(table, &seq.entries)? {
        return Ok(false);
    }
    Ok(idx
        .iter()
        .enumerate()
        .all(|(i, &a)| idx[i + 1..].iter().all(|&b| !rule.precedes(table, b, a))))
}

/// Tilting sequences under the `Hom(later, earlier) = 0` rule.
pub fn enumerate_tilting_sequences(table: &IntervalTable) -> Result<Vec<TiltingSequence>> {
    enumerate_tilting_sequences_with(table, OrderingRule::Hom)
}

pub fn enumerate_tilting_sequences_with(
    table: &IntervalTable,
    rule: OrderingRule,
) -> Result<Vec<TiltingSequence>> {
    let mut out = Vec::new();
    for t in enumerate_tilting(table) {
        out.extend(orderings(table, t.parts(), rule)?);
    }
    Ok(out)
}

pub fn count_tilting_sequences(table: &IntervalTable, rule: OrderingRule) -> Result<u64> {
    enumerate_tilting(table)
        .iter()
        .map(|t| count_orderings(table, t.parts(), rule))
        .sum()
}

/// Pairs of sequences over complementary supports: each side is ordered on
/// its own, components of a disconnected side interleave freely.
pub fn enumerate_two_support_sequences(
    table: &IntervalTable,
    rule: OrderingRule,
) -> Result<Vec<(TiltingSequence, TiltingSequence)>> {
    let mut out = Vec::new();
    for pair in enumerate_two_support_tilting(table) {
        let plus = orderings(table, pair.plus.parts(), rule)?;
        let minus = orderings(table, pair.minus.parts(), rule)?;
        for p in &plus {
            for m in &minus {
                out.push((p.clone(), m.clone()));
            }
        }
    }
    Ok(out)
}

pub fn count_two_support_sequences(table: &IntervalTable, rule: OrderingRule) -> Result<u64> {
    let mut total = 0;
    for pair in enumerate_two_support_tilting(table) {
        total += count_orderings(table, pair.plus.parts(), rule)?
            * count_orderings(table, pair.minus.parts(), rule)?;
    }
    Ok(total)
}

pub fn count_support_sequences(table: &IntervalTable, rule: OrderingRule) -> Result<u64> {
    enumerate_support_tilting(table)
        .iter()
        .map(|t| count_orderings(table, t.parts(), rule))
        .sum()
}
