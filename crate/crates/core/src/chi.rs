//! Character-dependent combinatorics: dead vertices and edges, living
//! subgraphs, the poset `B^χ` and the maxima `B^χ(X)`.

use serde::Serialize;

use crate::coxeter::{center_chi_value, classify_clique, enumerate_spherical, Component, SphericalKind};
use crate::error::{Error, Result};
use crate::graph::{bit, members, Character, DefiningGraph, Edge, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeStatus {
    pub edge: Edge,
    pub two_dead: bool,
    /// `(n, Y)` for every `B_n`-type `Y ⊇ e`, `n ≥ 3`, whose label-4 edge is `e` and whose center is killed.
    pub n_dead_witnesses: Vec<(u32, VertexSet)>,
}

impl EdgeStatus {
    pub fn is_dead(&self) -> bool {
        self.two_dead || !self.n_dead_witnesses.is_empty()
    }
}

/// 2-dead: even label ≥ 4 and `χ(u) + χ(v) = 0`.
pub fn is_two_dead(g: &DefiningGraph, chi: &Character, u: usize, v: usize) -> bool {
    match g.label(u, v) {
        Some(l) => l >= 4 && l % 2 == 0 && chi.value(u) + chi.value(v) == 0,
        None => false,
    }
}

fn b_type_witness(comp: &Component) -> Option<(usize, usize)> {
    match comp.kind {
        SphericalKind::B(_) => Some((comp.order[0], comp.order[1])),
        _ => None,
    }
}

pub fn edge_status(g: &DefiningGraph, chi: &Character, u: usize, v: usize) -> Result<EdgeStatus> {
    let label = g
        .label(u, v)
        .ok_or_else(|| Error::Validation(format!("{}{} is not an edge", g.name(u), g.name(v))))?;
    let two_dead = is_two_dead(g, chi, u, v);
    let mut witnesses = Vec::new();
    if label == 4 {
        let e = bit(u) | bit(v);
        for y in enumerate_spherical(g) {
            if y & e != e {
                continue;
            }
            let d = classify_clique(g, y).expect("spherical");
            if let [comp] = d.components.as_slice() {
                if let Some((b1, b2)) = b_type_witness(comp) {
                    if bit(b1) | bit(b2) == e && center_chi_value(comp, chi) == 0 {
                        witnesses.push((comp.kind.rank(), y));
                    }
                }
            }
        }
    }
    Ok(EdgeStatus { edge: Edge { u: u.min(v), v: u.max(v), label }, two_dead, n_dead_witnesses: witnesses })
}

/// `Liv^χ` (dead vertices and open 2-dead edges removed) and `Liv_0^χ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LivingSubgraph {
    pub vertices: VertexSet,
    pub edges: Vec<(usize, usize)>,
    pub removed_edges: Vec<(usize, usize)>,
    pub dominant: bool,
}

impl LivingSubgraph {
    pub fn is_connected(&self) -> bool {
        connected(self.vertices, &self.edges)
    }

    /// Connectivity of `Liv_0^χ`, the full subgraph on living vertices.
    pub fn liv0_is_connected(&self, g: &DefiningGraph) -> bool {
        let edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|e| self.vertices & bit(e.u) != 0 && self.vertices & bit(e.v) != 0)
            .map(|e| (e.u, e.v))
            .collect();
        connected(self.vertices, &edges)
    }
}

/// Nonempty and connected.
pub fn connected(vertices: VertexSet, edges: &[(usize, usize)]) -> bool {
    let Some(start) = members(vertices).next() else {
        return false;
    };
    let mut reached = bit(start);
    loop {
        let before = reached;
        for &(u, v) in edges {
            if reached & (bit(u) | bit(v)) != 0 {
                reached |= bit(u) | bit(v);
            }
        }
        if reached == before {
            break;
        }
    }
    reached & vertices == vertices
}

pub fn living_subgraph(g: &DefiningGraph, chi: &Character) -> LivingSubgraph {
    let vertices = chi.living_set();
    let mut edges = Vec::new();
    let mut removed = Vec::new();
    for e in g.edges() {
        if vertices & bit(e.u) == 0 || vertices & bit(e.v) == 0 {
            continue;
        }
        if is_two_dead(g, chi, e.u, e.v) {
            removed.push((e.u, e.v));
        } else {
            edges.push((e.u, e.v));
        }
    }
    let dominant = members(chi.dead_set()).all(|v| g.neighbors(v) & vertices != 0);
    LivingSubgraph { vertices, edges, removed_edges: removed, dominant }
}

fn component_is_killed(g: &DefiningGraph, comp: &Component, chi: &Character) -> bool {
    if members(comp.set).all(|v| chi.is_dead(v)) {
        return true;
    }
    match comp.kind {
        SphericalKind::I2(k) if k % 2 == 0 => is_two_dead(g, chi, comp.order[0], comp.order[1]),
        SphericalKind::F4 => is_two_dead(g, chi, comp.order[1], comp.order[2]),
        SphericalKind::B(n) => chi.value(comp.order[0]) + (n as i64 - 1) * chi.value(comp.order[1]) == 0,
        _ => false,
    }
}

/// Membership in `B^χ` by the componentwise dead-piece criterion.
pub fn is_in_bchi(g: &DefiningGraph, chi: &Character, delta: VertexSet) -> Result<bool> {
    let d = classify_clique(g, delta)
        .ok_or_else(|| Error::Validation(format!("{} is not spherical", g.format_set(delta))))?;
    Ok(d.components.iter().all(|c| component_is_killed(g, c, chi)))
}

/// Membership in `B^χ` by vanishing of χ on the center, component by component.
pub fn is_in_bchi_by_center(g: &DefiningGraph, chi: &Character, delta: VertexSet) -> Result<bool> {
    let d = classify_clique(g, delta)
        .ok_or_else(|| Error::Validation(format!("{} is not spherical", g.format_set(delta))))?;
    Ok(d.components.iter().all(|c| center_chi_value(c, chi) == 0))
}

/// `B^χ` in the order of `enumerate_spherical`.
pub fn enumerate_bchi(g: &DefiningGraph, chi: &Character) -> Vec<VertexSet> {
    enumerate_spherical(g)
        .into_iter()
        .filter(|&d| is_in_bchi(g, chi, d).expect("spherical"))
        .collect()
}

/// `B^χ(X)`: the largest element of `B^χ` contained in the spherical set `X`.
pub fn bchi_of(g: &DefiningGraph, chi: &Character, x: VertexSet) -> Result<VertexSet> {
    let d = classify_clique(g, x).ok_or_else(|| Error::Validation(format!("{} is not spherical", g.format_set(x))))?;
    let mut out = 0;
    for comp in &d.components {
        out |= killed_maximum(g, chi, comp.set)?;
    }
    Ok(out)
}

fn killed_maximum(g: &DefiningGraph, chi: &Character, set: VertexSet) -> Result<VertexSet> {
    let verts: Vec<usize> = members(set).collect();
    let mut union = 0;
    let mut killed = Vec::new();
    for mask in 0u64..(1 << verts.len()) {
        let y: VertexSet = (0..verts.len()).filter(|i| mask & (1 << i) != 0).map(|i| bit(verts[i])).fold(0, |a, b| a | b);
        if is_in_bchi(g, chi, y)? {
            union |= y;
            killed.push(y);
        }
    }
    if !killed.contains(&union) {
        return Err(Error::Internal(format!(
            "B^χ({}) has no largest element (union {} not killed)",
            g.format_set(set),
            g.format_set(union)
        )));
    }
    Ok(union)
}
