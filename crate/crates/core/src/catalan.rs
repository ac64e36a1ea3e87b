//! Catalan numbers and the objects they count: rooted binary trees, Dyck
//! paths, free lattice paths and their signed excursions, plus the order
//! simplex decomposition of the unit cube.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::geometry::Simplex;

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // Each partial product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub fn central_binomial(n: u64) -> BigUint {
    binomial(2 * n, n)
}

/// `C(2n, n) / (n + 1)`; the division is checked to be exact.
pub fn catalan(n: u64) -> BigUint {
    let (q, r) = central_binomial(n).div_rem(&BigUint::from(n + 1));
    assert!(r.is_zero(), "n + 1 does not divide C(2n, n) for n = {n}");
    q
}

/// Rooted tree whose inner vertices have two children. A tree with `n`
/// inner vertices has `n + 1` leaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootedTree {
    Leaf,
    Node(Box<RootedTree>, Box<RootedTree>),
}

impl RootedTree {
    pub fn node(left: RootedTree, right: RootedTree) -> Self {
        RootedTree::Node(Box::new(left), Box::new(right))
    }

    pub fn inner_count(&self) -> usize {
        match self {
            RootedTree::Leaf => 0,
            RootedTree::Node(l, r) => 1 + l.inner_count() + r.inner_count(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.inner_count() + 1
    }

    /// `Leaf -> ""`, `Node(l, r) -> "(" l ")" r`.
    pub fn to_parens(&self) -> String {
        let mut s = String::new();
        self.write_parens(&mut s);
        s
    }

    fn write_parens(&self, out: &mut String) {
        if let RootedTree::Node(l, r) = self {
            out.push('(');
            l.write_parens(out);
            out.push(')');
            r.write_parens(out);
        }
    }

    pub fn from_parens(s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .map(|c| match c {
                '(' => Ok(1),
                ')' => Ok(-1),
                other => Err(Error::Input(format!(
                    "unexpected {other:?} in parenthesis string"
                ))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Self::from_dyck(&LatticePath::new(steps)?)
    }

    /// Standard encoding: up, left subtree, down, right subtree.
    pub fn to_dyck(&self) -> LatticePath {
        let steps = self
            .to_parens()
            .chars()
            .map(|c| if c == '(' { 1 } else { -1 })
            .collect();
        LatticePath { steps }
    }

    pub fn from_dyck(p: &LatticePath) -> Result<Self> {
        if !p.is_dyck() {
            return input(format!("{p} is not a Dyck path"));
        }
        fn parse(steps: &[i8]) -> RootedTree {
            if steps.is_empty() {
                return RootedTree::Leaf;
            }
            let mut h = 0i32;
            let close = steps
                .iter()
                .position(|&s| {
                    h += i32::from(s);
                    h == 0
                })
                .expect("balanced");
            RootedTree::node(parse(&steps[1..close]), parse(&steps[close + 1..]))
        }
        Ok(parse(&p.steps))
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_parens())
    }
}

/// All trees with `n` inner vertices, ordered by the size of the left subtree
/// and then recursively.
pub fn enumerate_trees(n: usize) -> Vec<RootedTree> {
    let mut memo: Vec<Vec<RootedTree>> = vec![vec![RootedTree::Leaf]];
    for m in 1..=n {
        let mut level = Vec::new();
        for i in 0..m {
            for l in &memo[i] {
                for r in &memo[m - 1 - i] {
                    level.push(RootedTree::node(l.clone(), r.clone()));
                }
            }
        }
        memo.push(level);
    }
    memo.swap_remove(n)
}

/// Tree counts from the split at the vertex next to the root:
/// `B_m = sum_i B_i B_{m-1-i}`.
pub fn tree_counts(n: usize) -> Vec<BigUint> {
    let mut b = vec![BigUint::one()];
    for m in 1..=n {
        let next = (0..m).map(|i| &b[i] * &b[m - 1 - i]).sum();
        b.push(next);
    }
    b
}

/// Path of `+1` / `-1` steps from height 0 back to height 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct LatticePath {
    steps: Vec<i8>,
}

impl LatticePath {
    pub fn new(steps: Vec<i8>) -> Result<Self> {
        if steps.iter().any(|&s| s != 1 && s != -1) {
            return input("steps must be +1 or -1");
        }
        if steps.iter().map(|&s| i64::from(s)).sum::<i64>() != 0 {
            return input("path does not return to height 0");
        }
        Ok(Self { steps })
    }

    pub fn steps(&self) -> &[i8] {
        &self.steps
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn heights(&self) -> Vec<i64> {
        self.steps
            .iter()
            .scan(0i64, |h, &s| {
                *h += i64::from(s);
                Some(*h)
            })
            .collect()
    }

    pub fn is_dyck(&self) -> bool {
        self.heights().iter().all(|&h| h >= 0)
    }

    pub fn reflected(&self) -> Self {
        Self {
            steps: self.steps.iter().map(|s| -s).collect(),
        }
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.steps {
            f.write_str(if s > 0 { "U" } else { "D" })?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .map(|c| match c {
                'U' => Ok(1),
                'D' => Ok(-1),
                other => Err(Error::Input(format!("path step {other:?} is not U or D"))),
            })
            .collect::<Result<_>>()?;
        Self::new(steps)
    }
}

impl TryFrom<String> for LatticePath {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<LatticePath> for String {
    fn from(p: LatticePath) -> String {
        p.to_string()
    }
}

fn paths(n: usize, dyck: bool) -> Vec<LatticePath> {
    fn go(
        ups: usize,
        downs: usize,
        h: i64,
        dyck: bool,
        cur: &mut Vec<i8>,
        out: &mut Vec<LatticePath>,
    ) {
        if ups == 0 && downs == 0 {
            out.push(LatticePath { steps: cur.clone() });
            return;
        }
        // D before U gives lexicographic order on U/D strings.
        if downs > 0 && (!dyck || h > 0) {
            cur.push(-1);
            go(ups, downs - 1, h - 1, dyck, cur, out);
            cur.pop();
        }
        if ups > 0 {
            cur.push(1);
            go(ups - 1, downs, h + 1, dyck, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, 0, dyck, &mut Vec::with_capacity(2 * n), &mut out);
    out
}

/// Dyck paths of semilength `n`, lexicographic.
pub fn enumerate_dyck(n: usize) -> Vec<LatticePath> {
    paths(n, true)
}

/// All lattice paths of semilength `n`, lexicographic.
pub fn enumerate_all_paths(n: usize) -> Vec<LatticePath> {
    paths(n, false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Above,
    Below,
}

/// A piece of a path between consecutive returns to the axis, reflected
/// upward when it runs below.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Excursion {
    pub side: Side,
    pub path: LatticePath,
}

impl Excursion {
    pub fn semilength(&self) -> usize {
        self.path.semilength()
    }

    fn unfold(&self) -> Vec<i8> {
        match self.side {
            Side::Above => self.path.steps.clone(),
            Side::Below => self.path.reflected().steps,
        }
    }
}

/// Splits at every return to height 0.
pub fn split_path(p: &LatticePath) -> Vec<Excursion> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, h) in p.heights().into_iter().enumerate() {
        if h == 0 {
            out.push(excursion(&p.steps[start..=i]));
            start = i + 1;
        }
    }
    out
}

fn excursion(steps: &[i8]) -> Excursion {
    let raw = LatticePath {
        steps: steps.to_vec(),
    };
    if steps[0] > 0 {
        Excursion {
            side: Side::Above,
            path: raw,
        }
    } else {
        Excursion {
            side: Side::Below,
            path: raw.reflected(),
        }
    }
}

/// Merges consecutive excursions on the same side; sides then alternate and
/// each block is a (not necessarily primitive) Dyck path.
pub fn sign_blocks(p: &LatticePath) -> Vec<Excursion> {
    let mut out: Vec<Excursion> = Vec::new();
    for e in split_path(p) {
        match out.last_mut() {
            Some(last) if last.side == e.side => last.path.steps.extend_from_slice(&e.path.steps),
            _ => out.push(e),
        }
    }
    out
}

pub fn join_excursions(parts: &[Excursion]) -> LatticePath {
    LatticePath {
        steps: parts.iter().flat_map(Excursion::unfold).collect(),
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

/// One order simplex `{1 >= x_pi(1) >= ... >= x_pi(n) >= 0}` per permutation,
/// with vertices `0, e_pi(1), e_pi(1) + e_pi(2), ..., (1, ..., 1)`.
pub fn cube_decomposition(n: usize) -> Result<Vec<Simplex>> {
    if !(1..=7).contains(&n) {
        return input(format!("cube decomposition supports 1 <= n <= 7, got {n}"));
    }
    permutations(n)
        .into_iter()
        .map(|perm| {
            let mut v = vec![0i64; n];
            let mut verts = vec![v.clone()];
            for &c in &perm {
                v[c] = 1;
                verts.push(v.clone());
            }
            Simplex::new(verts)
        })
        .collect()
}
