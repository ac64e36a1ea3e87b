//! Exact lattice geometry: simplices, beneath-beyond convex hulls with a
//! certified boundary triangulation, facet descriptions and normalized
//! volumes.
//!
//! Normalized volume is `d!` times the Euclidean volume, so a simplex spanned
//! by a lattice basis has volume 1 and every lattice polytope has integer
//! volume. No floating point is used anywhere.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::linalg::{self, Rational};

/// Convex hull of `k + 1` lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Simplex {
    vertices: Vec<Vec<i64>>,
}

impl Simplex {
    pub fn new(vertices: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return input("a simplex needs at least one vertex");
        };
        let d = first.len();
        if vertices.iter().any(|v| v.len() != d) {
            return input("simplex vertices have different dimensions");
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].len()
    }
}

/// `|det(v_1 - v_0, ..., v_d - v_0)|`; zero for degenerate simplices.
pub fn simplex_normalized_volume(s: &Simplex) -> Result<Rational> {
    let d = s.ambient_dim();
    if s.vertices.len() != d + 1 {
        return input(format!(
            "a full simplex in dimension {d} has {} vertices, got {}",
            d + 1,
            s.vertices.len()
        ));
    }
    let v0 = &s.vertices[0];
    let rows: Vec<Vec<i64>> = s.vertices[1..]
        .iter()
        .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
        .collect();
    Ok(Rational::from_integer(linalg::det_i64(&rows).abs()))
}

/// A finite set of lattice points; its convex hull is the polytope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VPolytope {
    points: Vec<Vec<i64>>,
}

impl VPolytope {
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return input("a polytope needs at least one generator");
        };
        let d = first.len();
        if d == 0 || points.iter().any(|p| p.len() != d) {
            return input("generators must share a positive dimension");
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn ambient_dim(&self) -> usize {
        self.points[0].len()
    }
}

/// Supporting inequality `<normal, x> <= offset` with a primitive normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
    /// Boundary simplices lying in this facet (indices into the triangulation).
    pub simplices: Vec<usize>,
    /// Generators attaining equality, ascending.
    pub incident: Vec<usize>,
    /// Normalized volume of the facet in the lattice of its hyperplane.
    pub volume: BigInt,
}

/// One maximal simplex of the boundary triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySimplex {
    /// Generator indices, ascending.
    pub vertices: Vec<usize>,
    pub facet: usize,
    /// Sign making the cone over this simplex positive from interior points.
    orientation: i8,
    /// Normalized volume inside the hyperplane lattice.
    pub lattice_volume: BigInt,
}

/// Facet description plus the certified boundary triangulation produced by
/// the incremental hull.
#[derive(Debug, Clone)]
pub struct HPolytope {
    points: Vec<Vec<i64>>,
    dim: usize,
    /// Coordinates that chart the affine span injectively.
    chart: Vec<usize>,
    /// Equalities `<normal, x> = offset` cutting out the affine span.
    pub equations: Vec<(Vec<BigInt>, BigInt)>,
    pub facets: Vec<Facet>,
    pub triangulation: Vec<BoundarySimplex>,
}

/// Result of a volume query. Lower-dimensional polytopes report zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Volume {
    pub value: Rational,
    pub full_dimensional: bool,
}

struct Face {
    verts: Vec<usize>,
    normal: Vec<BigInt>,
    offset: BigInt,
    content: BigInt,
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Indices of a maximal affinely independent subset, scanned greedily.
fn affine_basis(points: &[Vec<i64>], order: &[usize]) -> Vec<usize> {
    let Some(&first) = order.first() else {
        return Vec::new();
    };
    let mut basis = vec![first];
    let mut dirs: Vec<Vec<Rational>> = Vec::new();
    for &i in &order[1..] {
        let d: Vec<Rational> = sub(&points[i], &points[first])
            .into_iter()
            .map(linalg::rational)
            .collect();
        dirs.push(d);
        if linalg::rank(&dirs) == dirs.len() {
            basis.push(i);
        } else {
            dirs.pop();
        }
    }
    basis
}

struct Builder<'a> {
    pts: &'a [Vec<i64>],
    dim: usize,
    /// Sum of the initial simplex vertices; `/ (dim + 1)` is strictly interior.
    center: Vec<i64>,
}

impl Builder<'_> {
    fn face(&self, mut verts: Vec<usize>) -> Result<Face> {
        verts.sort_unstable();
        let base = &self.pts[verts[0]];
        let edges: Vec<Vec<BigInt>> = verts[1..]
            .iter()
            .map(|&v| {
                sub(&self.pts[v], base)
                    .into_iter()
                    .map(BigInt::from)
                    .collect()
            })
            .collect();
        let raw = linalg::cofactor_normal(&edges, self.dim);
        let (mut normal, content) = linalg::primitive(raw);
        if content.is_zero() {
            return Err(Error::Internal("degenerate boundary simplex".into()));
        }
        let mut offset = linalg::dot(&normal, base);
        let scale = BigInt::from(self.dim as i64 + 1);
        let c = linalg::dot(&normal, &self.center);
        if c > &offset * &scale {
            normal.iter_mut().for_each(|x| *x = -x.clone());
            offset = -offset;
        } else if c == &offset * &scale {
            return Err(Error::Internal(
                "interior reference point on a boundary hyperplane".into(),
            ));
        }
        Ok(Face {
            verts,
            normal,
            offset,
            content,
        })
    }

    fn orientation(&self, verts: &[usize]) -> i8 {
        let k = self.dim as i64 + 1;
        let rows: Vec<Vec<i64>> = verts
            .iter()
            .map(|&v| {
                self.pts[v]
                    .iter()
                    .zip(&self.center)
                    .map(|(x, c)| k * x - c)
                    .collect()
            })
            .collect();
        if linalg::det_i64(&rows).is_negative() {
            -1
        } else {
            1
        }
    }
}

/// Beneath-beyond convex hull.
///
/// Points are inserted in lexicographic order after an initial simplex found
/// by a greedy independence scan. Each insertion replaces the boundary
/// simplices strictly visible from the new point by cones over the horizon
/// ridges; points inside or on the current hull are skipped. Boundary
/// simplices sharing a supporting hyperplane are merged into one facet.
pub fn convex_hull(p: &VPolytope) -> Result<HPolytope> {
    let ambient = p.ambient_dim();
    let mut order: Vec<usize> = (0..p.points.len()).collect();
    order.sort_by(|&a, &b| p.points[a].cmp(&p.points[b]).then(a.cmp(&b)));
    order.dedup_by(|a, b| p.points[*a] == p.points[*b]);

    let basis = affine_basis(&p.points, &order);
    let dim = basis.len() - 1;
    if dim == 0 {
        return Err(Error::Degenerate("all generators coincide".into()));
    }

    let origin = &p.points[basis[0]];
    let dirs: Vec<Vec<Rational>> = basis[1..]
        .iter()
        .map(|&i| {
            sub(&p.points[i], origin)
                .into_iter()
                .map(linalg::rational)
                .collect()
        })
        .collect();
    let mut reduced = dirs.clone();
    let chart = linalg::rref(&mut reduced);
    let equations = linalg::nullspace(&dirs, ambient)
        .into_iter()
        .map(|w| {
            let off = linalg::dot(&w, origin);
            (w, off)
        })
        .collect();

    let projected: Vec<Vec<i64>> = p
        .points
        .iter()
        .map(|x| chart.iter().map(|&c| x[c]).collect())
        .collect();
    let center = basis.iter().fold(vec![0i64; dim], |acc, &i| {
        acc.iter().zip(&projected[i]).map(|(a, b)| a + b).collect()
    });
    let builder = Builder {
        pts: &projected,
        dim,
        center,
    };

    let mut faces: Vec<Face> = (0..basis.len())
        .map(|skip| {
            builder.face(
                basis
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
        .collect::<Result<_>>()?;

    for &i in &order {
        if basis.contains(&i) {
            continue;
        }
        let x = &projected[i];
        let visible: Vec<bool> = faces
            .iter()
            .map(|f| linalg::dot(&f.normal, x) > f.offset)
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for (f, _) in faces.iter().zip(&visible).filter(|(_, &v)| v) {
            for skip in 0..f.verts.len() {
                let ridge: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &v)| v)
                    .collect();
                *ridges.entry(ridge).or_default() += 1;
            }
        }
        let mut horizon: Vec<Vec<usize>> = ridges
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort();
        let mut next: Vec<Face> = faces
            .into_iter()
            .zip(visible)
            .filter(|(_, v)| !v)
            .map(|(f, _)| f)
            .collect();
        for mut ridge in horizon {
            ridge.push(i);
            next.push(builder.face(ridge)?);
        }
        faces = next;
    }

    faces.sort_by(|a, b| a.verts.cmp(&b.verts));
    let mut keyed: BTreeMap<(Vec<BigInt>, BigInt), Vec<usize>> = BTreeMap::new();
    for (idx, f) in faces.iter().enumerate() {
        keyed
            .entry((f.normal.clone(), f.offset.clone()))
            .or_default()
            .push(idx);
    }
    let mut facets = Vec::with_capacity(keyed.len());
    let mut facet_of = vec![0; faces.len()];
    let mut ordered: Vec<_> = keyed.into_iter().collect();
    ordered.sort_by(|a, b| a.1[0].cmp(&b.1[0]));
    for (fi, ((normal, offset), members)) in ordered.into_iter().enumerate() {
        let incident = projected
            .iter()
            .enumerate()
            .filter(|(_, x)| linalg::dot(&normal, x) == offset)
            .map(|(j, _)| j)
            .collect();
        let volume = members.iter().map(|&m| faces[m].content.clone()).sum();
        for &m in &members {
            facet_of[m] = fi;
        }
        let mut lifted = vec![BigInt::zero(); ambient];
        for (k, &c) in chart.iter().enumerate() {
            lifted[c] = normal[k].clone();
        }
        facets.push(Facet {
            normal: lifted,
            offset,
            simplices: members,
            incident,
            volume,
        });
    }
    let triangulation = faces
        .iter()
        .enumerate()
        .map(|(idx, f)| BoundarySimplex {
            vertices: f.verts.clone(),
            facet: facet_of[idx],
            orientation: builder.orientation(&f.verts),
            lattice_volume: f.content.clone(),
        })
        .collect();

    Ok(HPolytope {
        points: p.points.clone(),
        dim,
        chart,
        equations,
        facets,
        triangulation,
    })
}

impl HPolytope {
    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn ambient_dim(&self) -> usize {
        self.points[0].len()
    }

    /// Dimension of the affine span of the generators.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim()
    }

    /// Generators lying on at least one facet's vertex set, i.e. actually
    /// used by the boundary triangulation.
    pub fn hull_vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .triangulation
            .iter()
            .flat_map(|s| s.vertices.iter().copied())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Signed cone decomposition from `base`, which may lie anywhere.
    pub fn volume_from(&self, base: &[Rational]) -> Result<Rational> {
        if !self.is_full_dimensional() {
            return Ok(Rational::zero());
        }
        if base.len() != self.dim {
            return input("base point has the wrong dimension");
        }
        let denom = base.iter().fold(BigInt::one(), |acc, x| {
            num_integer::Integer::lcm(&acc, x.denom())
        });
        let scaled: Vec<BigInt> = base
            .iter()
            .map(|x| x.numer() * (&denom / x.denom()))
            .collect();
        let mut total = BigInt::zero();
        for s in &self.triangulation {
            let rows: Vec<Vec<BigInt>> = s
                .vertices
                .iter()
                .map(|&v| {
                    self.points[v]
                        .iter()
                        .zip(&scaled)
                        .map(|(&x, b)| &denom * x - b)
                        .collect()
                })
                .collect();
            let d = linalg::det(rows);
            total += if s.orientation < 0 { -d } else { d };
        }
        Ok(Rational::new(total, num_traits::pow(denom, self.dim)))
    }

    pub fn centroid(&self) -> Vec<Rational> {
        let m = BigInt::from(self.points.len());
        (0..self.ambient_dim())
            .map(|c| {
                Rational::new(
                    self.points.iter().map(|p| BigInt::from(p[c])).sum(),
                    m.clone(),
                )
            })
            .collect()
    }

    /// Facet with every generator tested against it; shared by the checks below.
    pub fn contains_rational(&self, x: &[Rational]) -> bool {
        if x.len() != self.ambient_dim() {
            return false;
        }
        let eval = |normal: &[BigInt]| -> Rational {
            normal
                .iter()
                .zip(x)
                .map(|(a, b)| Rational::from_integer(a.clone()) * b)
                .sum()
        };
        self.equations
            .iter()
            .all(|(w, off)| eval(w) == Rational::from_integer(off.clone()))
            && self
                .facets
                .iter()
                .all(|f| eval(&f.normal) <= Rational::from_integer(f.offset.clone()))
    }

    /// Number of generators on facet `f`.
    pub fn facet_point_count(&self, f: usize) -> usize {
        self.facets[f].incident.len()
    }

    /// Vertices used by the triangulation of facet `f`.
    pub fn facet_vertices(&self, f: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.facets[f]
            .simplices
            .iter()
            .flat_map(|&s| self.triangulation[s].vertices.iter().copied())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Coordinates used to chart a lower-dimensional hull.
    pub fn chart(&self) -> &[usize] {
        &self.chart
    }
}

/// Normalized volume, coning the boundary triangulation from the centroid of
/// the generators.
pub fn polytope_volume(h: &HPolytope) -> Volume {
    if !h.is_full_dimensional() {
        return Volume {
            value: Rational::zero(),
            full_dimensional: false,
        };
    }
    let value = h
        .volume_from(&h.centroid())
        .expect("centroid has the ambient dimension");
    Volume {
        value,
        full_dimensional: true,
    }
}

/// Closed containment test.
pub fn contains_point(h: &HPolytope, x: &[i64]) -> bool {
    let r: Vec<Rational> = x.iter().map(|&v| linalg::rational(v)).collect();
    h.contains_rational(&r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// Volumes agree and the simplices glue like a triangulation.
    Exact,
    /// Volumes agree but some ridge is not matched across opposite sides.
    RidgeMismatch,
    UpperBoundMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionVolume {
    pub total: Rational,
    pub enclosure: Rational,
    pub ridges_paired: bool,
    pub certificate: Certificate,
}

/// Every codimension-one face of a nondegenerate simplex is either shared by
/// exactly two simplices lying on opposite sides of it, or lies in a facet of
/// the enclosure and belongs to exactly one simplex. Under this condition the
/// covering multiplicity is constant inside the enclosure.
pub fn ridges_paired(simplices: &[Simplex], enclosure: &HPolytope) -> Result<bool> {
    Ok(unpaired_ridges(simplices, enclosure)? == 0)
}

/// Number of ridges violating the pairing condition of [`ridges_paired`].
pub fn unpaired_ridges(simplices: &[Simplex], enclosure: &HPolytope) -> Result<usize> {
    let d = enclosure.ambient_dim();
    let mut ridges: HashMap<Vec<Vec<i64>>, Vec<Vec<i64>>> = HashMap::new();
    for s in simplices {
        if s.ambient_dim() != d || s.vertices().len() != d + 1 {
            return input("ridge pairing needs full simplices in the enclosure dimension");
        }
        if simplex_normalized_volume(s)?.is_zero() {
            continue;
        }
        for skip in 0..=d {
            let mut ridge: Vec<Vec<i64>> = s
                .vertices()
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, v)| v.clone())
                .collect();
            ridge.sort();
            ridges
                .entry(ridge)
                .or_default()
                .push(s.vertices()[skip].clone());
        }
    }
    let mut bad = 0;
    for (ridge, apexes) in &ridges {
        match apexes.as_slice() {
            [_] => {
                let on_facet = enclosure
                    .facets
                    .iter()
                    .any(|f| ridge.iter().all(|v| linalg::dot(&f.normal, v) == f.offset));
                if !on_facet {
                    bad += 1;
                }
            }
            [a, b] => {
                let base = &ridge[0];
                let edges: Vec<Vec<BigInt>> = ridge[1..]
                    .iter()
                    .map(|v| sub(v, base).into_iter().map(BigInt::from).collect())
                    .collect();
                let normal = linalg::cofactor_normal(&edges, d);
                let side = |x: &[i64]| linalg::dot(&normal, &sub(x, base)).signum();
                let (sa, sb) = (side(a), side(b));
                if sa.is_zero() || sa == sb {
                    bad += 1;
                }
            }
            _ => bad += 1,
        }
    }
    Ok(bad)
}

/// Sums simplex volumes inside `enclosure`. With every vertex in the
/// enclosure, paired ridges and equal volumes, the simplices triangulate it.
pub fn union_volume(simplices: &[Simplex], enclosure: &HPolytope) -> Result<UnionVolume> {
    let mut total = Rational::zero();
    for s in simplices {
        if let Some(v) = s.vertices().iter().find(|v| !contains_point(enclosure, v)) {
            return Err(Error::Precondition(format!(
                "simplex vertex {v:?} lies outside the enclosure"
            )));
        }
        total += simplex_normalized_volume(s)?;
    }
    let enclosure_volume = polytope_volume(enclosure).value;
    let paired = ridges_paired(simplices, enclosure)?;
    let certificate = match (total == enclosure_volume, paired) {
        (false, _) => Certificate::UpperBoundMismatch,
        (true, true) => Certificate::Exact,
        (true, false) => Certificate::RidgeMismatch,
    };
    Ok(UnionVolume {
        total,
        enclosure: enclosure_volume,
        ridges_paired: paired,
        certificate,
    })
}

/// Pairwise check that two full-dimensional simplices in dimension at most 3
/// have disjoint interiors, by the separating axis test. Slow and only meant
/// for debugging small decompositions.
pub fn interiors_disjoint(a: &Simplex, b: &Simplex) -> Result<bool> {
    let d = a.ambient_dim();
    if d == 0 || d > 3 || b.ambient_dim() != d {
        return input("pairwise disjointness is only checked in dimensions 1 to 3");
    }
    let edges = |s: &Simplex| -> Vec<Vec<i64>> {
        let v = s.vertices();
        let mut out = Vec::new();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                out.push(sub(&v[j], &v[i]));
            }
        }
        out
    };
    let mut dirs = edges(a);
    dirs.extend(edges(b));
    let mut axes: Vec<Vec<i64>> = Vec::new();
    match d {
        1 => axes.push(vec![1]),
        2 => axes.extend(dirs.iter().map(|e| vec![-e[1], e[0]])),
        _ => {
            for i in 0..dirs.len() {
                for j in i + 1..dirs.len() {
                    let (u, v) = (&dirs[i], &dirs[j]);
                    axes.push(vec![
                        u[1] * v[2] - u[2] * v[1],
                        u[2] * v[0] - u[0] * v[2],
                        u[0] * v[1] - u[1] * v[0],
                    ]);
                }
            }
        }
    }
    let proj = |s: &Simplex, ax: &[i64]| -> (i64, i64) {
        let vals: Vec<i64> = s
            .vertices()
            .iter()
            .map(|v| v.iter().zip(ax).map(|(x, y)| x * y).sum())
            .collect();
        (*vals.iter().min().unwrap(), *vals.iter().max().unwrap())
    };
    Ok(axes
        .iter()
        .filter(|ax| ax.iter().any(|&x| x != 0))
        .any(|ax| {
            let (amin, amax) = proj(a, ax);
            let (bmin, bmax) = proj(b, ax);
            amax <= bmin || bmax <= amin
        }))
}
