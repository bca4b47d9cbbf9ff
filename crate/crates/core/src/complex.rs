//! Spherical link complexes `slk_Δ` and their χ-deleted subcomplexes `L_Δ^χ`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::chi::{is_in_bchi, is_two_dead};
use crate::coxeter::{center_chi_value, classify_clique, enumerate_spherical, set_order, SphericalKind};
use crate::error::{Error, Result};
use crate::graph::{bit, members, size, Character, DefiningGraph, VertexSet};

/// Abstract simplicial complex on vertex indices of a defining graph.
/// Cells are nonempty and sorted by size, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    pub cells: Vec<VertexSet>,
}

impl SimplicialComplex {
    pub fn new(mut cells: Vec<VertexSet>) -> Self {
        cells.retain(|&c| c != 0);
        cells.sort_by(|a, b| set_order(*a, *b));
        cells.dedup();
        SimplicialComplex { cells }
    }

    /// Top dimension, `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.cells.last().map(|&c| size(c) as i64 - 1).unwrap_or(-1)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<VertexSet> {
        self.cells.iter().copied().filter(|&c| size(c) == d + 1).collect()
    }

    pub fn vertices(&self) -> VertexSet {
        self.cells.iter().fold(0, |a, &c| a | c)
    }

    pub fn contains(&self, cell: VertexSet) -> bool {
        self.cells.binary_search_by(|x| set_order(*x, cell)).is_ok()
    }

    pub fn is_face_closed(&self) -> bool {
        self.cells.iter().all(|&c| size(c) == 1 || members(c).all(|v| self.contains(c & !bit(v))))
    }

    /// Codimension-one faces `X ∖ v_i` with sign `(−1)^i`.
    pub fn boundary_faces(cell: VertexSet) -> Vec<(VertexSet, i64)> {
        members(cell).enumerate().map(|(i, v)| (cell & !bit(v), if i % 2 == 0 { 1 } else { -1 })).collect()
    }

    /// One cell per line, vertex names separated by spaces.
    pub fn to_face_list(&self, g: &DefiningGraph) -> String {
        let mut out = String::new();
        for &c in &self.cells {
            let names: Vec<&str> = members(c).map(|v| g.name(v)).collect();
            let _ = writeln!(out, "{}", names.join(" "));
        }
        out
    }
}

/// Cause of a deleted cell of `L_Δ^χ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeletionRule {
    DeadVertex = 1,
    TwoDeadEdge = 2,
    KilledB = 3,
    NewF4 = 4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkComplex {
    pub base: VertexSet,
    pub complex: SimplicialComplex,
    pub deletion_log: Vec<(VertexSet, DeletionRule)>,
}

/// Cells `X ⊆ lk(Δ)` with `X ∪ Δ` spherical.
pub fn spherical_link(g: &DefiningGraph, delta: VertexSet) -> Result<SimplicialComplex> {
    link_cells(g, delta, &enumerate_spherical(g))
}

fn link_cells(g: &DefiningGraph, delta: VertexSet, spherical: &[VertexSet]) -> Result<SimplicialComplex> {
    if classify_clique(g, delta).is_none() {
        return Err(Error::Validation(format!("{} is not spherical", g.format_set(delta))));
    }
    let lk = g.link(delta);
    let cells = spherical.iter().filter(|&&s| s & delta == delta && s != delta && (s & !delta) & !lk == 0).map(|&s| s & !delta).collect();
    Ok(SimplicialComplex::new(cells))
}

fn rule_for(g: &DefiningGraph, chi: &Character, delta: VertexSet, x: VertexSet) -> Option<DeletionRule> {
    if x & chi.dead_set() != 0 {
        return Some(DeletionRule::DeadVertex);
    }
    let verts: Vec<usize> = members(x).collect();
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            if is_two_dead(g, chi, u, v) {
                return Some(DeletionRule::TwoDeadEdge);
            }
        }
    }
    if contains_killed_b(g, chi, x) {
        return Some(DeletionRule::KilledB);
    }
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            if g.label(u, v) == Some(2) && creates_killed_f4(g, chi, delta, bit(u) | bit(v)) {
                return Some(DeletionRule::NewF4);
            }
        }
    }
    None
}

fn contains_killed_b(g: &DefiningGraph, chi: &Character, x: VertexSet) -> bool {
    let verts: Vec<usize> = members(x).collect();
    (1u64..(1 << verts.len())).any(|mask| {
        let y: VertexSet = (0..verts.len()).filter(|i| mask & (1 << i) != 0).fold(0, |a, i| a | bit(verts[i]));
        if size(y) < 3 {
            return false;
        }
        match classify_clique(g, y) {
            Some(d) => match d.components.as_slice() {
                [c] => matches!(c.kind, SphericalKind::B(_)) && center_chi_value(c, chi) == 0,
                _ => false,
            },
            None => false,
        }
    })
}

fn creates_killed_f4(g: &DefiningGraph, chi: &Character, delta: VertexSet, e: VertexSet) -> bool {
    let Some(before) = classify_clique(g, delta) else {
        return false;
    };
    let Some(after) = classify_clique(g, delta | e) else {
        return false;
    };
    after.components.iter().any(|c| {
        c.kind == SphericalKind::F4
            && is_two_dead(g, chi, c.order[1], c.order[2])
            && before
                .components
                .iter()
                .any(|b| b.kind == SphericalKind::I2(4) && b.set == bit(c.order[1]) | bit(c.order[2]))
    })
}

/// `L_Δ^χ`: the spherical link of `Δ ∈ B^χ` with the χ-deletions applied.
pub fn l_complex(g: &DefiningGraph, chi: &Character, delta: VertexSet) -> Result<LinkComplex> {
    l_complex_with(g, chi, delta, &enumerate_spherical(g))
}

/// As [`l_complex`], reusing a precomputed list of spherical subsets.
pub fn l_complex_with(g: &DefiningGraph, chi: &Character, delta: VertexSet, spherical: &[VertexSet]) -> Result<LinkComplex> {
    if !is_in_bchi(g, chi, delta)? {
        return Err(Error::Validation(format!("{} is not in B^χ", g.format_set(delta))));
    }
    let slk = link_cells(g, delta, spherical)?;
    let mut kept = Vec::new();
    let mut log = Vec::new();
    for &x in &slk.cells {
        match rule_for(g, chi, delta, x) {
            Some(r) => log.push((x, r)),
            None => kept.push(x),
        }
    }
    Ok(LinkComplex { base: delta, complex: SimplicialComplex::new(kept), deletion_log: log })
}
