//! Reduced simplicial homology over `Z`, `Q` and `F_p`, acyclicity, and a
//! bounded simple-connectivity heuristic.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::graph::{bit, members, size, VertexSet};
use crate::laurent::Field;

/// Coefficient ring for homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Ring {
    Integers,
    Field(Field),
}

impl std::str::FromStr for Ring {
    type Err = Error;

    /// `Z`, `Q` or `F<p>`.
    fn from_str(text: &str) -> Result<Ring> {
        match text.trim() {
            "Z" => Ok(Ring::Integers),
            t if t == "Q" || t.starts_with('F') => Ok(Ring::Field(t.parse()?)),
            _ => Err(Error::Parse(format!("invalid ring `{text}` (expected Z, Q or F<p>)"))),
        }
    }
}

impl From<Ring> for String {
    fn from(r: Ring) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for Ring {
    type Error = Error;

    fn try_from(s: String) -> Result<Ring> {
        s.parse()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Field(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: i64,
    pub rank: usize,
    /// Elementary divisors greater than one (integer coefficients only).
    pub torsion: Vec<BigInt>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for DegreeHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "R".to_string() } else { format!("R^{}", self.rank) });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Reduced homology in degrees `−1..=dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    pub ring: Ring,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyProfile {
    pub fn degree(&self, d: i64) -> DegreeHomology {
        self.degrees
            .iter()
            .find(|h| h.degree == d)
            .cloned()
            .unwrap_or(DegreeHomology { degree: d, rank: 0, torsion: Vec::new() })
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|h| h.rank).collect()
    }

    /// Least degree with nonzero homology.
    pub fn first_nonzero(&self) -> Option<i64> {
        self.degrees.iter().find(|h| !h.is_zero()).map(|h| h.degree)
    }
}

/// Cells of dimension `d` (the empty cell in dimension `−1`).
fn chain_basis(cx: &SimplicialComplex, d: i64) -> Vec<VertexSet> {
    if d < -1 {
        Vec::new()
    } else if d == -1 {
        vec![0]
    } else {
        cx.cells_of_dim(d as usize)
    }
}

/// Augmented boundary matrix `C_d → C_{d−1}` (rows index `C_{d−1}`).
pub fn boundary_matrix(cx: &SimplicialComplex, d: i64) -> Vec<Vec<i64>> {
    let rows = chain_basis(cx, d - 1);
    let cols = chain_basis(cx, d);
    let index: HashMap<VertexSet, usize> = rows.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut m = vec![vec![0i64; cols.len()]; rows.len()];
    for (j, &c) in cols.iter().enumerate() {
        for (face, sign) in SimplicialComplex::boundary_faces(c) {
            if let Some(&i) = index.get(&face) {
                m[i][j] += sign;
            }
        }
    }
    m
}

/// Nonzero invariant factors of an integer matrix.
pub fn smith_invariants(m: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let v = &a[i][t] * &q;
                    a[i][j] -= v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(a[i][j].is_multiple_of(&a[t][t]))));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Rank of an integer matrix over `F_p`.
pub fn rank_mod_p(m: &[Vec<i64>], p: u64) -> usize {
    let p = p as i128;
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| (x as i128).rem_euclid(p)).collect()).collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, pr);
        let inv = mod_inverse(a[rank][c], p);
        for j in c..cols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for j in c..cols {
                    a[r][j] = (a[r][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: i128, p: i128) -> i128 {
    let (mut r0, mut r1, mut s0, mut s1) = (a, p, 1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p)
}

fn rank_in(m: &[Vec<i64>], ring: Ring) -> usize {
    match ring {
        Ring::Field(Field::Prime(p)) => rank_mod_p(m, p),
        _ => smith_invariants(m).len(),
    }
}

/// Reduced homology in degrees `−1..=max_degree` (default: the dimension).
pub fn reduced_homology_upto(cx: &SimplicialComplex, ring: Ring, max_degree: i64) -> HomologyProfile {
    let top = max_degree.min(cx.dimension().max(-1));
    let mut degrees = Vec::new();
    let mut lower_rank = 0;
    for d in -1..=top {
        let dim = chain_basis(cx, d).len();
        let bd = boundary_matrix(cx, d + 1);
        let (up_rank, torsion) = match ring {
            Ring::Integers => {
                let inv = smith_invariants(&bd);
                let tors = inv.iter().filter(|x| !x.is_one()).cloned().collect();
                (inv.len(), tors)
            }
            _ => (rank_in(&bd, ring), Vec::new()),
        };
        degrees.push(DegreeHomology { degree: d, rank: dim - lower_rank - up_rank, torsion });
        lower_rank = up_rank;
    }
    HomologyProfile { ring, degrees }
}

pub fn reduced_homology(cx: &SimplicialComplex, ring: Ring) -> HomologyProfile {
    reduced_homology_upto(cx, ring, i64::MAX)
}

/// `H̃_d = 0` for all `−1 ≤ d ≤ k`; vacuous for `k < −1`.
pub fn is_k_acyclic(cx: &SimplicialComplex, k: i64, ring: Ring) -> bool {
    if k < -1 {
        return true;
    }
    reduced_homology_upto(cx, ring, k).degrees.iter().all(|h| h.is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Heuristic {
    Yes,
    Unknown,
}

/// Edge-path group of the 2-skeleton simplified by Tietze moves; answers
/// `Yes` only when every generator is eliminated within `budget` moves.
pub fn simply_connected_heuristic(cx: &SimplicialComplex, budget: usize) -> Result<Heuristic> {
    let verts: Vec<usize> = members(cx.vertices()).collect();
    if verts.is_empty() {
        return Err(Error::Validation("the empty complex is not connected".into()));
    }
    let edges = cx.cells_of_dim(1);
    let mut parent: HashMap<usize, usize> = verts.iter().map(|&v| (v, v)).collect();
    fn find(p: &mut HashMap<usize, usize>, x: usize) -> usize {
        let mut r = x;
        while p[&r] != r {
            r = p[&r];
        }
        p.insert(x, r);
        r
    }
    let mut generator: HashMap<VertexSet, i64> = HashMap::new();
    for &e in &edges {
        let ends: Vec<usize> = members(e).collect();
        let (a, b) = (find(&mut parent, ends[0]), find(&mut parent, ends[1]));
        if a != b {
            parent.insert(a, b);
        } else {
            let id = generator.len() as i64 + 1;
            generator.insert(e, id);
        }
    }
    let root = find(&mut parent, verts[0]);
    if verts.iter().any(|&v| find(&mut parent, v) != root) {
        return Err(Error::Validation("complex is disconnected".into()));
    }
    let letter = |u: usize, v: usize| -> Option<i64> {
        let e = bit(u) | bit(v);
        generator.get(&e).map(|&g| if u < v { g } else { -g })
    };
    let mut relators: Vec<Vec<i64>> = Vec::new();
    for tri in cx.cells_of_dim(2) {
        let [a, b, c]: [usize; 3] = members(tri).collect::<Vec<_>>().try_into().expect("triangle");
        let word: Vec<i64> = [letter(a, b), letter(b, c), letter(c, a)].into_iter().flatten().collect();
        relators.push(word);
    }
    let mut alive: Vec<i64> = generator.values().copied().collect();
    alive.sort_unstable();
    let mut moves = 0;
    while !alive.is_empty() && moves < budget {
        relators.iter_mut().for_each(|r| *r = cyclic_reduce(r));
        relators.retain(|r| !r.is_empty());
        let pick = relators.iter().enumerate().find_map(|(i, r)| {
            let counts = letter_counts(r);
            r.iter().find(|x| counts[&x.abs()] == 1).map(|&x| (i, x))
        });
        let Some((i, x)) = pick else { break };
        let rel = relators.remove(i);
        let pos = rel.iter().position(|&y| y == x).expect("letter present");
        let mut rest: Vec<i64> = rel[pos + 1..].iter().chain(rel[..pos].iter()).copied().collect();
        let replacement: Vec<i64> = if x > 0 {
            rest.reverse();
            rest.iter().map(|y| -y).collect()
        } else {
            rest
        };
        let g = x.abs();
        for r in relators.iter_mut() {
            let mut out = Vec::new();
            for &y in r.iter() {
                if y == g {
                    out.extend(replacement.iter().copied());
                } else if y == -g {
                    out.extend(replacement.iter().rev().map(|z| -z));
                } else {
                    out.push(y);
                }
            }
            *r = out;
        }
        alive.retain(|&y| y != g);
        moves += 1;
    }
    Ok(if alive.is_empty() { Heuristic::Yes } else { Heuristic::Unknown })
}

fn letter_counts(r: &[i64]) -> HashMap<i64, usize> {
    let mut m = HashMap::new();
    for x in r {
        *m.entry(x.abs()).or_insert(0) += 1;
    }
    m
}

fn cyclic_reduce(r: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    for &x in r {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    while out.len() >= 2 && out[0] == -out[out.len() - 1] {
        out.pop();
        out.remove(0);
    }
    out
}

/// Euler characteristic from cell counts (unreduced).
pub fn euler_characteristic(cx: &SimplicialComplex) -> i64 {
    cx.cells.iter().map(|&c| if size(c) % 2 == 1 { 1 } else { -1 }).sum()
}
