//! Type-A quivers, interval modules and their homological data.
//!
//! All Hom spaces are computed field-free: the structure maps of interval
//! modules are identities or zero, so a homomorphism is a family of scalars
//! constrained by one linear equation per arrow. Ext is recovered from Hom
//! through the Euler form, which is valid because the category has global
//! dimension one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::linalg::{self, rational, Rational};

/// Path quiver `1 - 2 - ... - n` with a direction on every edge.
///
/// `orientation[i]` is true iff the edge between vertices `i+1` and `i+2`
/// (1-based) points to the right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quiver {
    n: usize,
    orientation: Vec<bool>,
}

impl Quiver {
    pub fn new(n: usize, orientation: Vec<bool>) -> Result<Self> {
        if n == 0 {
            return input("quiver needs at least one vertex");
        }
        if orientation.len() != n - 1 {
            return input(format!(
                "orientation of A_{n} needs {} entries, got {}",
                n - 1,
                orientation.len()
            ));
        }
        Ok(Self { n, orientation })
    }

    /// The linear orientation `1 -> 2 -> ... -> n`.
    pub fn directed(n: usize) -> Result<Self> {
        Self::new(n, vec![true; n.saturating_sub(1)])
    }

    /// Parses a bitstring such as `"110"`; `1` means the arrow points right.
    pub fn from_bits(n: usize, bits: &str) -> Result<Self> {
        let orientation = bits
            .chars()
            .map(|c| match c {
                '1' => Ok(true),
                '0' => Ok(false),
                other => Err(Error::Input(format!(
                    "orientation character {other:?} is not 0 or 1"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, orientation)
    }

    /// Orientation from the low `n-1` bits of `mask`, bit `i` for edge `i`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        Self::new(
            n,
            (0..n.saturating_sub(1))
                .map(|i| mask >> i & 1 == 1)
                .collect(),
        )
    }

    /// Every orientation of `A_n`, ordered by the binary value of the mask.
    pub fn all_orientations(n: usize) -> Result<Vec<Self>> {
        if n == 0 {
            return input("quiver needs at least one vertex");
        }
        (0..1u64 << (n - 1))
            .map(|m| Self::from_mask(n, m))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn orientation(&self) -> &[bool] {
        &self.orientation
    }

    pub fn bits(&self) -> String {
        self.orientation
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    pub fn is_directed(&self) -> bool {
        self.orientation.iter().all(|&b| b)
    }

    /// Arrows as 1-based `(source, target)` pairs.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.orientation.iter().enumerate().map(|(i, &right)| {
            if right {
                (i + 1, i + 2)
            } else {
                (i + 2, i + 1)
            }
        })
    }

    /// All arrows reversed.
    pub fn opposite(&self) -> Self {
        Self {
            n: self.n,
            orientation: self.orientation.iter().map(|b| !b).collect(),
        }
    }

    /// Mirror image under `i -> n + 1 - i`.
    pub fn reflected(&self) -> Self {
        Self {
            n: self.n,
            orientation: self.orientation.iter().rev().map(|b| !b).collect(),
        }
    }

    /// Smallest bitstring among the orientations reachable by reflection and
    /// arrow reversal; all of them share every count in this crate.
    pub fn symmetry_class(&self) -> String {
        let r = self.reflected();
        [self.clone(), self.opposite(), r.opposite(), r]
            .iter()
            .map(Quiver::bits)
            .min()
            .expect("four candidates")
    }

    pub fn contains(&self, iv: Interval) -> bool {
        iv.hi <= self.n
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1")?;
        for (i, &right) in self.orientation.iter().enumerate() {
            write!(f, "{}{}", if right { "->" } else { "<-" }, i + 2)?;
        }
        Ok(())
    }
}

/// Indecomposable representation supported on the vertices `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo == 0 || lo > hi {
            return input(format!("[{lo},{hi}] is not an interval 1 <= lo <= hi"));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim_vector(&self, n: usize) -> DimVector {
        DimVector(
            (1..=n)
                .map(|v| i64::from(self.contains_vertex(v)))
                .collect(),
        )
    }

    /// Support bitmask, bit `v-1` for vertex `v`.
    pub fn mask(&self) -> u64 {
        ((1u64 << self.len()) - 1) << (self.lo - 1)
    }

    /// Supports are disjoint and no edge joins them.
    pub fn is_separated_from(&self, other: &Interval) -> bool {
        self.hi + 1 < other.lo || other.hi + 1 < self.lo
    }

    /// `other` is strictly nested inside `self`.
    pub fn strictly_contains(&self, other: &Interval) -> bool {
        self != other && self.lo <= other.lo && other.hi <= self.hi
    }
}

impl From<(usize, usize)> for Interval {
    fn from((lo, hi): (usize, usize)) -> Self {
        Self { lo, hi }
    }
}

impl From<Interval> for (usize, usize) {
    fn from(iv: Interval) -> Self {
        (iv.lo, iv.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Integer vector indexed by vertices. Signed copies appear in polytopes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (1..=self.0.len()).filter(|&v| self.0[v - 1] != 0).collect()
    }

    pub fn is_sincere(&self) -> bool {
        self.0.iter().all(|&x| x != 0)
    }

    pub fn neg(&self) -> DimVector {
        DimVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

/// All `n(n+1)/2` intervals, lexicographic in `(lo, hi)`.
pub fn indecomposables(q: &Quiver) -> Vec<Interval> {
    intervals_within(1, q.n)
}

pub(crate) fn intervals_within(lo: usize, hi: usize) -> Vec<Interval> {
    (lo..=hi)
        .flat_map(|i| (i..=hi).map(move |j| Interval { lo: i, hi: j }))
        .collect()
}

/// `<d, e> = sum_i d_i e_i - sum_arrows d_source e_target`.
pub fn euler_form(q: &Quiver, d: &DimVector, e: &DimVector) -> Result<i64> {
    if d.len() != q.n || e.len() != q.n {
        return input(format!(
            "dimension vectors of length {} and {} for a quiver with {} vertices",
            d.len(),
            e.len(),
            q.n
        ));
    }
    let diag: i64 = d.0.iter().zip(&e.0).map(|(a, b)| a * b).sum();
    let off: i64 = q.arrows().map(|(s, t)| d.0[s - 1] * e.0[t - 1]).sum();
    Ok(diag - off)
}

/// Dimension of `Hom(m, n)` from the rank of the commutativity system
/// `phi_t . m(a) = n(a) . phi_s` over all arrows `a: s -> t`.
pub fn hom_dim(q: &Quiver, m: Interval, n: Interval) -> usize {
    let lo = m.lo.max(n.lo);
    let hi = m.hi.min(n.hi);
    if lo > hi {
        return 0;
    }
    let vars: Vec<usize> = (lo..=hi).collect();
    let col = |v: usize| vars.iter().position(|&x| x == v);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (s, t) in q.arrows() {
        let m_map = m.contains_vertex(s) && m.contains_vertex(t);
        let n_map = n.contains_vertex(s) && n.contains_vertex(t);
        let mut row = vec![rational(0); vars.len()];
        if m_map {
            if let Some(c) = col(t) {
                row[c] += rational(1);
            }
        }
        if n_map {
            if let Some(c) = col(s) {
                row[c] -= rational(1);
            }
        }
        if row.iter().any(|x| *x != rational(0)) {
            rows.push(row);
        }
    }
    vars.len() - linalg::rank(&rows)
}

/// `ext = hom - <dim m, dim n>`.
pub fn ext_dim(q: &Quiver, m: Interval, n: Interval) -> Result<usize> {
    let hom = hom_dim(q, m, n) as i64;
    let euler = euler_form(q, &m.dim_vector(q.n), &n.dim_vector(q.n))?;
    usize::try_from(hom - euler)
        .map_err(|_| Error::Internal(format!("negative Ext between {m} and {n} over {q}")))
}

/// A connected piece of a full subquiver together with its vertex embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub quiver: Quiver,
    /// `embedding[k]` is the global vertex of local vertex `k + 1`.
    pub embedding: Vec<usize>,
}

impl Component {
    pub fn first(&self) -> usize {
        self.embedding[0]
    }

    pub fn last(&self) -> usize {
        *self.embedding.last().expect("components are nonempty")
    }

    /// Maps a local interval to the ambient quiver.
    pub fn lift(&self, iv: Interval) -> Interval {
        Interval {
            lo: self.embedding[iv.lo - 1],
            hi: self.embedding[iv.hi - 1],
        }
    }
}

/// Connected components of the full subquiver on `vertices`, left to right.
pub fn restrict(q: &Quiver, vertices: &[usize]) -> Vec<Component> {
    let mut sorted: Vec<usize> = vertices
        .iter()
        .copied()
        .filter(|&v| v >= 1 && v <= q.n)
        .collect();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = Vec::new();
    let mut run: Vec<usize> = Vec::new();
    for v in sorted {
        if run.last().is_some_and(|&last| last + 1 != v) {
            out.push(std::mem::take(&mut run));
        }
        run.push(v);
    }
    if !run.is_empty() {
        out.push(run);
    }
    out.into_iter()
        .map(|emb| {
            let orientation = emb.windows(2).map(|w| q.orientation[w[0] - 1]).collect();
            Component {
                quiver: Quiver {
                    n: emb.len(),
                    orientation,
                },
                embedding: emb,
            }
        })
        .collect()
}

/// Vertices of a subset mask, ascending.
pub fn mask_vertices(n: usize, mask: u64) -> Vec<usize> {
    (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect()
}

/// Dimension vectors of the intervals, in interval order.
pub fn positive_roots(n: usize) -> Vec<DimVector> {
    intervals_within(1, n)
        .iter()
        .map(|iv| iv.dim_vector(n))
        .collect()
}

/// All nonzero 0/1 vectors, ordered by binary value with vertex 1 lowest.
pub fn extended_positive_roots(n: usize) -> Vec<DimVector> {
    (1..1u64 << n)
        .map(|m| DimVector((0..n).map(|i| (m >> i & 1) as i64).collect()))
        .collect()
}

/// Precomputed Hom and Ext dimensions for every ordered pair of intervals.
#[derive(Debug, Clone)]
pub struct IntervalTable {
    quiver: Quiver,
    intervals: Vec<Interval>,
    hom: Vec<u32>,
    ext: Vec<u32>,
}

impl IntervalTable {
    pub fn new(q: &Quiver) -> Result<Self> {
        let intervals = indecomposables(q);
        let k = intervals.len();
        let mut hom = vec![0; k * k];
        let mut ext = vec![0; k * k];
        for (a, &x) in intervals.iter().enumerate() {
            for (b, &y) in intervals.iter().enumerate() {
                hom[a * k + b] = hom_dim(q, x, y) as u32;
                ext[a * k + b] = ext_dim(q, x, y)? as u32;
            }
        }
        Ok(Self {
            quiver: q.clone(),
            intervals,
            hom,
            ext,
        })
    }

    /// Replaces individual Ext entries. Used to build corrupted fixtures.
    pub fn with_ext_overrides(mut self, entries: &[(Interval, Interval, u32)]) -> Result<Self> {
        for &(x, y, v) in entries {
            let (a, b) = (self.index_of(x)?, self.index_of(y)?);
            let k = self.intervals.len();
            self.ext[a * k + b] = v;
        }
        Ok(self)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn index_of(&self, iv: Interval) -> Result<usize> {
        self.intervals
            .binary_search(&iv)
            .map_err(|_| Error::Input(format!("{iv} is not an interval of {}", self.quiver)))
    }

    pub fn hom_idx(&self, a: usize, b: usize) -> u32 {
        self.hom[a * self.intervals.len() + b]
    }

    pub fn ext_idx(&self, a: usize, b: usize) -> u32 {
        self.ext[a * self.intervals.len() + b]
    }

    pub fn hom(&self, x: Interval, y: Interval) -> Result<u32> {
        Ok(self.hom_idx(self.index_of(x)?, self.index_of(y)?))
    }

    pub fn ext(&self, x: Interval, y: Interval) -> Result<u32> {
        Ok(self.ext_idx(self.index_of(x)?, self.index_of(y)?))
    }

    /// No Ext in either direction.
    pub fn compatible_idx(&self, a: usize, b: usize) -> bool {
        self.ext_idx(a, b) == 0 && self.ext_idx(b, a) == 0
    }

    /// No Hom and no Ext in either direction.
    pub fn orthogonal_idx(&self, a: usize, b: usize) -> bool {
        self.compatible_idx(a, b) && self.hom_idx(a, b) == 0 && self.hom_idx(b, a) == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: usize, hi: usize) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn right(n: usize) -> Quiver {
        Quiver::directed(n).unwrap()
    }

    #[test]
    fn quiver_validation() {
        assert!(Quiver::new(0, vec![]).is_err());
        assert!(Quiver::new(3, vec![true]).is_err());
        assert!(Quiver::from_bits(3, "1x").is_err());
        let q = Quiver::from_bits(3, "10").unwrap();
        assert_eq!(q.arrows().collect::<Vec<_>>(), vec![(1, 2), (3, 2)]);
        assert_eq!(q.to_string(), "1->2<-3");
        assert_eq!(Quiver::all_orientations(4).unwrap().len(), 8);
    }

    #[test]
    fn intervals_small_cases() {
        assert_eq!(indecomposables(&right(1)), vec![iv(1, 1)]);
        let two = indecomposables(&right(2));
        assert_eq!(two, vec![iv(1, 1), iv(1, 2), iv(2, 2)]);
        let dims: Vec<Vec<i64>> = two.iter().map(|x| x.dim_vector(2).0).collect();
        assert_eq!(dims, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        let three: Vec<DimVector> = indecomposables(&right(3))
            .iter()
            .map(|x| x.dim_vector(3))
            .collect();
        let mut expected: Vec<DimVector> = [
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 1, 0],
            [0, 1, 1],
            [1, 1, 1],
        ]
        .iter()
        .map(|r| DimVector(r.to_vec()))
        .collect();
        let mut got = three.clone();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn euler_form_values() {
        let q = right(2);
        let e1 = DimVector(vec![1, 0]);
        let e2 = DimVector(vec![0, 1]);
        assert_eq!(euler_form(&q, &e1, &e1).unwrap(), 1);
        assert_eq!(euler_form(&q, &e1, &e2).unwrap(), -1);
        assert_eq!(euler_form(&q, &e2, &e1).unwrap(), 0);
        assert!(euler_form(&q, &e1, &DimVector(vec![1])).is_err());
        for q in Quiver::all_orientations(4).unwrap() {
            for v in 1..=4 {
                let e = iv(v, v).dim_vector(4);
                assert_eq!(euler_form(&q, &e, &e).unwrap(), 1);
            }
        }
    }

    #[test]
    fn hom_and_ext_on_a2() {
        let q = right(2);
        assert_eq!(hom_dim(&q, iv(1, 1), iv(2, 2)), 0);
        assert_eq!(hom_dim(&q, iv(1, 2), iv(1, 1)), 1);
        assert_eq!(hom_dim(&q, iv(2, 2), iv(1, 2)), 1);
        assert_eq!(hom_dim(&q, iv(1, 1), iv(1, 2)), 0);
        assert_eq!(ext_dim(&q, iv(1, 1), iv(2, 2)).unwrap(), 1);
        assert_eq!(ext_dim(&q, iv(2, 2), iv(1, 1)).unwrap(), 0);
    }

    #[test]
    fn nested_middle_interval_is_orthogonal() {
        let q = right(3);
        assert_eq!(hom_dim(&q, iv(2, 2), iv(1, 3)), 0);
        assert_eq!(hom_dim(&q, iv(1, 3), iv(2, 2)), 0);
        assert_eq!(ext_dim(&q, iv(2, 2), iv(1, 3)).unwrap(), 0);
        assert_eq!(ext_dim(&q, iv(1, 3), iv(2, 2)).unwrap(), 0);
    }

    #[test]
    fn restrict_components() {
        let q3 = right(3);
        let full = restrict(&q3, &[1, 2, 3]);
        assert_eq!(full.len(), 1);
        assert_eq!(full[0].quiver, q3);
        let split = restrict(&q3, &[1, 3]);
        assert_eq!(
            split.iter().map(|c| c.quiver.n()).collect::<Vec<_>>(),
            vec![1, 1]
        );
        let q5 = Quiver::from_bits(5, "0110").unwrap();
        let parts = restrict(&q5, &[4, 1, 2]);
        assert_eq!(
            parts.iter().map(|c| c.quiver.n()).collect::<Vec<_>>(),
            vec![2, 1]
        );
        assert_eq!(parts[0].quiver.orientation(), &[false]);
        assert_eq!(parts[1].embedding, vec![4]);
        assert!(restrict(&q5, &[]).is_empty());
    }

    #[test]
    fn root_sets() {
        assert_eq!(
            positive_roots(2),
            vec![
                DimVector(vec![1, 0]),
                DimVector(vec![1, 1]),
                DimVector(vec![0, 1])
            ]
        );
        let bar = extended_positive_roots(3);
        assert_eq!(bar.len(), 7);
        let roots = positive_roots(3);
        let extra: Vec<_> = bar.iter().filter(|d| !roots.contains(d)).collect();
        assert_eq!(extra, vec![&DimVector(vec![1, 0, 1])]);
        assert_eq!(positive_roots(1), extended_positive_roots(1));
    }

    #[test]
    fn symmetry_classes_of_a3() {
        let classes: std::collections::BTreeSet<String> = Quiver::all_orientations(3)
            .unwrap()
            .iter()
            .map(Quiver::symmetry_class)
            .collect();
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn table_overrides() {
        let q = right(2);
        let t = IntervalTable::new(&q).unwrap();
        assert_eq!(t.ext(iv(1, 1), iv(2, 2)).unwrap(), 1);
        let bad = t.with_ext_overrides(&[(iv(1, 1), iv(2, 2), 0)]).unwrap();
        assert_eq!(bad.ext(iv(1, 1), iv(2, 2)).unwrap(), 0);
        assert!(bad.ext(iv(1, 3), iv(1, 1)).is_err());
    }
}
