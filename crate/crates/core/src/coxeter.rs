//! Finite-type classification of cliques, enumeration of spherical subsets
//! and χ-values of Garside elements.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{bit, members, size, Character, DefiningGraph, VertexSet};

/// Irreducible finite Coxeter types. Rank-2 diagrams are always `I2(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SphericalKind {
    A(u32),
    B(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
}

impl SphericalKind {
    pub fn rank(&self) -> u32 {
        match *self {
            SphericalKind::A(n) | SphericalKind::B(n) | SphericalKind::D(n) => n,
            SphericalKind::E6 => 6,
            SphericalKind::E7 => 7,
            SphericalKind::E8 => 8,
            SphericalKind::F4 | SphericalKind::H4 => 4,
            SphericalKind::H3 => 3,
            SphericalKind::I2(_) => 2,
        }
    }

    pub fn positive_root_count(&self) -> u64 {
        match *self {
            SphericalKind::A(n) => (n as u64) * (n as u64 + 1) / 2,
            SphericalKind::B(n) => (n as u64) * (n as u64),
            SphericalKind::D(n) => (n as u64) * (n as u64 - 1),
            SphericalKind::E6 => 36,
            SphericalKind::E7 => 63,
            SphericalKind::E8 => 120,
            SphericalKind::F4 => 24,
            SphericalKind::H3 => 15,
            SphericalKind::H4 => 60,
            SphericalKind::I2(k) => k as u64,
        }
    }

    pub fn coxeter_number(&self) -> u64 {
        match *self {
            SphericalKind::A(n) => n as u64 + 1,
            SphericalKind::B(n) => 2 * n as u64,
            SphericalKind::D(n) => 2 * n as u64 - 2,
            SphericalKind::E6 => 12,
            SphericalKind::E7 => 18,
            SphericalKind::E8 => 30,
            SphericalKind::F4 => 12,
            SphericalKind::H3 => 10,
            SphericalKind::H4 => 30,
            SphericalKind::I2(k) => k as u64,
        }
    }

    pub fn group_order(&self) -> u64 {
        fn fact(n: u64) -> u64 {
            (1..=n).product()
        }
        match *self {
            SphericalKind::A(n) => fact(n as u64 + 1),
            SphericalKind::B(n) => (1u64 << n) * fact(n as u64),
            SphericalKind::D(n) => (1u64 << (n - 1)) * fact(n as u64),
            SphericalKind::E6 => 51_840,
            SphericalKind::E7 => 2_903_040,
            SphericalKind::E8 => 696_729_600,
            SphericalKind::F4 => 1152,
            SphericalKind::H3 => 120,
            SphericalKind::H4 => 14_400,
            SphericalKind::I2(k) => 2 * k as u64,
        }
    }

    /// Types whose abelianization is infinite cyclic.
    pub fn has_cyclic_abelianization(&self) -> bool {
        match *self {
            SphericalKind::B(_) | SphericalKind::F4 => false,
            SphericalKind::I2(k) => k % 2 == 1,
            _ => true,
        }
    }
}

impl fmt::Display for SphericalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SphericalKind::A(n) => write!(f, "A{n}"),
            SphericalKind::B(n) => write!(f, "B{n}"),
            SphericalKind::D(n) => write!(f, "D{n}"),
            SphericalKind::E6 => write!(f, "E6"),
            SphericalKind::E7 => write!(f, "E7"),
            SphericalKind::E8 => write!(f, "E8"),
            SphericalKind::F4 => write!(f, "F4"),
            SphericalKind::H3 => write!(f, "H3"),
            SphericalKind::H4 => write!(f, "H4"),
            SphericalKind::I2(k) => write!(f, "I2({k})"),
        }
    }
}

/// An irreducible component with its generators in canonical order
/// (`b1..bn` for B, `a,b,c,d` for F4, path order for A and H, tip of the
/// longest arm towards the branch point for D and E).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub set: VertexSet,
    pub kind: SphericalKind,
    pub order: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub set: VertexSet,
    pub components: Vec<Component>,
}

impl Decomposition {
    pub fn component_of(&self, v: usize) -> Option<&Component> {
        self.components.iter().find(|c| c.set & bit(v) != 0)
    }
}

/// Order on vertex sets: by size, then lexicographically on sorted indices.
pub fn set_order(a: VertexSet, b: VertexSet) -> Ordering {
    size(a).cmp(&size(b)).then_with(|| members(a).cmp(members(b)))
}

fn diagram_label(g: &DefiningGraph, u: usize, v: usize) -> Option<u32> {
    g.label(u, v).filter(|&l| l >= 3)
}

/// Connected components of the Coxeter diagram (labels ≥ 3) restricted to `set`.
pub fn diagram_components(g: &DefiningGraph, set: VertexSet) -> Vec<VertexSet> {
    let mut seen = 0;
    let mut out = Vec::new();
    for v in members(set) {
        if seen & bit(v) != 0 {
            continue;
        }
        let mut comp = bit(v);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for y in members(set & !comp) {
                if diagram_label(g, x, y).is_some() {
                    comp |= bit(y);
                    stack.push(y);
                }
            }
        }
        seen |= comp;
        out.push(comp);
    }
    out
}

/// Decompose a clique of `g` into irreducible spherical components, or
/// `None` when `set` is not a clique or some component is of infinite type.
pub fn classify_clique(g: &DefiningGraph, set: VertexSet) -> Option<Decomposition> {
    if !g.is_clique(set) {
        return None;
    }
    let mut components = Vec::new();
    for comp in diagram_components(g, set) {
        components.push(classify_component(g, comp)?);
    }
    Some(Decomposition { set, components })
}

pub fn is_spherical(g: &DefiningGraph, set: VertexSet) -> bool {
    classify_clique(g, set).is_some()
}

fn walk_path(g: &DefiningGraph, set: VertexSet, start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = members(set).find(|&y| y != prev && y != cur && diagram_label(g, cur, y).is_some());
        match next {
            Some(y) if !order.contains(&y) => {
                order.push(y);
                prev = cur;
                cur = y;
            }
            _ => break,
        }
    }
    order
}

/// Classify a diagram-connected vertex set.
pub fn classify_component(g: &DefiningGraph, set: VertexSet) -> Option<Component> {
    let verts: Vec<usize> = members(set).collect();
    let n = verts.len();
    if n == 1 {
        return Some(Component { set, kind: SphericalKind::A(1), order: verts });
    }
    if n == 2 {
        let l = diagram_label(g, verts[0], verts[1])?;
        return Some(Component { set, kind: SphericalKind::I2(l), order: verts });
    }
    let mut edges = Vec::new();
    let mut degree = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            if let Some(l) = diagram_label(g, verts[i], verts[j]) {
                if !(3..=5).contains(&l) {
                    return None;
                }
                edges.push((verts[i], verts[j], l));
                degree[i] += 1;
                degree[j] += 1;
            }
        }
    }
    if edges.len() != n - 1 {
        return None;
    }
    let max_deg = *degree.iter().max().unwrap();
    let ends: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).map(|i| verts[i]).collect();
    let special: Vec<&(usize, usize, u32)> = edges.iter().filter(|e| e.2 != 3).collect();
    if max_deg <= 2 {
        let forward = walk_path(g, set, ends[0]);
        let labels: Vec<u32> =
            forward.windows(2).map(|w| diagram_label(g, w[0], w[1]).unwrap()).collect();
        let from = |start: usize| walk_path(g, set, start);
        match special.len() {
            0 => Some(Component { set, kind: SphericalKind::A(n as u32), order: forward }),
            1 => {
                let (u, v, l) = *special[0];
                let pos = labels.iter().position(|&x| x != 3).unwrap();
                let at_end = pos == 0 || pos == labels.len() - 1;
                let end_vertex = if ends.contains(&u) && (degree_in(g, set, u) == 1) { u } else { v };
                match (l, at_end, n) {
                    (4, true, _) => {
                        Some(Component { set, kind: SphericalKind::B(n as u32), order: from(end_vertex) })
                    }
                    (4, false, 4) => {
                        Some(Component { set, kind: SphericalKind::F4, order: from(ends[0].min(ends[1])) })
                    }
                    (5, true, 3) => Some(Component { set, kind: SphericalKind::H3, order: from(end_vertex) }),
                    (5, true, 4) => Some(Component { set, kind: SphericalKind::H4, order: from(end_vertex) }),
                    _ => None,
                }
            }
            _ => None,
        }
    } else {
        if max_deg != 3 || !special.is_empty() || degree.iter().filter(|&&d| d == 3).count() != 1 {
            return None;
        }
        let center = verts[degree.iter().position(|&d| d == 3).unwrap()];
        let mut arms: Vec<Vec<usize>> = Vec::new();
        for y in members(set) {
            if diagram_label(g, center, y).is_some() {
                let mut arm = walk_path(g, set & !bit(center), y);
                arm.reverse();
                arms.push(arm);
            }
        }
        arms.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        let mut lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
        lens.sort_unstable();
        let kind = match lens.as_slice() {
            [1, 1, k] => SphericalKind::D(*k as u32 + 3),
            [1, 2, 2] => SphericalKind::E6,
            [1, 2, 3] => SphericalKind::E7,
            [1, 2, 4] => SphericalKind::E8,
            _ => return None,
        };
        let mut order = arms[0].clone();
        order.push(center);
        for arm in &arms[1..] {
            order.extend(arm.iter().rev());
        }
        Some(Component { set, kind, order })
    }
}

fn degree_in(g: &DefiningGraph, set: VertexSet, v: usize) -> usize {
    members(set).filter(|&y| y != v && diagram_label(g, v, y).is_some()).count()
}

/// All spherical subsets (including ∅), ordered by size then lexicographically.
pub fn enumerate_spherical(g: &DefiningGraph) -> Vec<VertexSet> {
    let mut out = vec![0];
    let mut frontier = vec![0u64];
    let n = g.vertex_count();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &s in &frontier {
            let start = if s == 0 { 0 } else { 64 - s.leading_zeros() as usize };
            for v in start..n {
                let t = s | bit(v);
                if members(s).all(|u| out_contains_sorted(&out, t & !bit(u))) && is_spherical(g, t) {
                    next.push(t);
                }
            }
        }
        next.sort_by(|a, b| set_order(*a, *b));
        out.extend(next.iter().copied());
        frontier = next;
    }
    out
}

fn out_contains_sorted(out: &[VertexSet], s: VertexSet) -> bool {
    out.binary_search_by(|x| set_order(*x, s)).is_ok()
}

/// χ-value of the Garside element `w0` of an irreducible component.
pub fn center_chi_value(c: &Component, chi: &Character) -> i64 {
    let x = |i: usize| chi.value(c.order[i]);
    match c.kind {
        SphericalKind::B(n) => n as i64 * (x(0) + (n as i64 - 1) * x(1)),
        SphericalKind::F4 => 6 * (x(0) + x(1) + x(2) + x(3)),
        SphericalKind::I2(k) if k % 2 == 0 => (k as i64 / 2) * (x(0) + x(1)),
        kind => kind.positive_root_count() as i64 * x(0),
    }
}
