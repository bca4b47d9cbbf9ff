//! The `F[t^{±1}]` chain complex of the χ-cyclic cover of the Salvetti
//! complex: differentials, normalization, ranks over `F(t)` and the `E^1` page.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::chi::{bchi_of, enumerate_bchi};
use crate::complex::{l_complex_with, SimplicialComplex};
use crate::coset::t_polynomial;
use crate::coxeter::enumerate_spherical;
use crate::error::{Error, Result};
use crate::graph::{bit, members, size, Character, DefiningGraph, VertexSet};
use crate::homology::{reduced_homology, Ring};
use crate::laurent::{Field, FieldLaurent, Fp, GcdCoeff, Laurent, LaurentMatrix, RatFunc, ZLaurent};

/// Cells `σ_X` for spherical `X`, graded by `|X|`, with integral differentials.
#[derive(Debug, Clone)]
pub struct CyclicCoverComplex {
    pub cells: Vec<Vec<VertexSet>>,
    /// `boundary[k]` maps degree `k` to degree `k − 1`; `boundary[0]` is empty.
    pub boundary: Vec<LaurentMatrix<BigInt>>,
}

impl CyclicCoverComplex {
    pub fn top_degree(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cell_count(&self, k: usize) -> usize {
        self.cells.get(k).map_or(0, |c| c.len())
    }

    /// Coefficient of `σ_face` in `∂σ_cell` reduced over `field`.
    pub fn entry(&self, cell: VertexSet, face: VertexSet, field: Field) -> FieldLaurent {
        let k = size(cell);
        let zero = FieldLaurent::from_integral(&ZLaurent::zero(), field);
        if k == 0 || size(face) + 1 != k {
            return zero;
        }
        let col = self.cells[k].iter().position(|&c| c == cell);
        let row = self.cells[k - 1].iter().position(|&c| c == face);
        match (row, col) {
            (Some(r), Some(c)) => FieldLaurent::from_integral(self.boundary[k].get(r, c), field),
            _ => zero,
        }
    }

    pub fn rank(&self, k: usize, field: Field) -> usize {
        if k == 0 || k >= self.boundary.len() {
            0
        } else {
            self.boundary[k].rank_in_field(field)
        }
    }

    /// `dim_{F(t)} H_k` for `k = 0..=top_degree`.
    pub fn homology_dims(&self, field: Field) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.top_degree() + 1).map(|k| self.rank(k, field)).collect();
        (0..=self.top_degree()).map(|k| self.cell_count(k) - ranks[k] - ranks[k + 1]).collect()
    }
}

pub fn build_cyclic_cover(g: &DefiningGraph, chi: &Character) -> Result<CyclicCoverComplex> {
    let spherical = enumerate_spherical(g);
    let top = spherical.iter().map(|&s| size(s)).max().unwrap_or(0);
    let mut cells = vec![Vec::new(); top + 1];
    for &s in &spherical {
        cells[size(s)].push(s);
    }
    let mut boundary = vec![LaurentMatrix::zeros(0, cells[0].len())];
    for k in 1..=top {
        let index: HashMap<VertexSet, usize> = cells[k - 1].iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut m = LaurentMatrix::zeros(cells[k - 1].len(), cells[k].len());
        for (j, &x) in cells[k].iter().enumerate() {
            for (i, v) in members(x).enumerate() {
                let t = t_polynomial(g, x, v, chi)?;
                let entry = if i % 2 == 0 { t } else { t.neg() };
                m.set(index[&(x & !bit(v))], j, entry);
            }
        }
        boundary.push(m);
    }
    for k in 2..=top {
        if !boundary[k - 1].mul(&boundary[k]).is_zero() {
            return Err(Error::Internal(format!("∂∘∂ ≠ 0 in degree {k}")));
        }
    }
    Ok(CyclicCoverComplex { cells, boundary })
}

/// `dim_{F(t)} H_k` of the cyclic cover for `k = 0..=top`.
pub fn normalized_homology_dims(g: &DefiningGraph, chi: &Character, field: Field) -> Result<Vec<usize>> {
    Ok(build_cyclic_cover(g, chi)?.homology_dims(field))
}

/// Normalizing coefficients `a_X` with `σ_X = a_X σ̃_X`.
#[derive(Debug, Clone)]
pub struct Normalization {
    pub coeffs: BTreeMap<VertexSet, ZLaurent>,
}

impl Normalization {
    pub fn get(&self, x: VertexSet) -> &ZLaurent {
        &self.coeffs[&x]
    }

    /// Every `a_X` is nonzero over `field`.
    pub fn check_nonzero(&self, g: &DefiningGraph, field: Field) -> Result<()> {
        for (&x, a) in &self.coeffs {
            if FieldLaurent::from_integral(a, field).is_zero() {
                return Err(Error::Internal(format!("a_X vanishes over {field} for X = {}", g.format_set(x))));
            }
        }
        Ok(())
    }
}

/// `a_X = χ(T_X^{X_v}) a_{X_v}` for `v ∈ X ∖ B^χ(X)`, checked for every choice of `v`.
pub fn normalization(g: &DefiningGraph, chi: &Character) -> Result<Normalization> {
    let mut coeffs: BTreeMap<VertexSet, ZLaurent> = BTreeMap::new();
    for x in enumerate_spherical(g) {
        let b = bchi_of(g, chi, x)?;
        if b == x {
            coeffs.insert(x, ZLaurent::one());
            continue;
        }
        let mut value: Option<ZLaurent> = None;
        for v in members(x & !b) {
            let a = t_polynomial(g, x, v, chi)?.mul(&coeffs[&(x & !bit(v))]);
            match &value {
                None => value = Some(a),
                Some(prev) if *prev != a => {
                    return Err(Error::Internal(format!(
                        "a_X depends on the removed vertex for X = {}: {prev} vs {a}",
                        g.format_set(x)
                    )))
                }
                _ => {}
            }
        }
        coeffs.insert(x, value.expect("X ∖ B^χ(X) is nonempty"));
    }
    Ok(Normalization { coeffs })
}

/// Entry of the normalized differential `∂σ̃_X = Σ c σ̃_{X_v}`.
#[derive(Debug, Clone)]
pub struct NormalizedEntry<C: GcdCoeff> {
    pub cell: VertexSet,
    pub face: VertexSet,
    pub value: RatFunc<C>,
    /// The removed vertex lies in `B^χ(X)`.
    pub removed_in_bchi: bool,
}

fn normalized_entries<C: GcdCoeff>(
    g: &DefiningGraph,
    chi: &Character,
    cover: &CyclicCoverComplex,
    norm: &Normalization,
    conv: impl Fn(&ZLaurent) -> Laurent<C>,
) -> Result<Vec<NormalizedEntry<C>>> {
    let mut out = Vec::new();
    for k in 1..cover.cells.len() {
        for (j, &x) in cover.cells[k].iter().enumerate() {
            let b = bchi_of(g, chi, x)?;
            for v in members(x) {
                let face = x & !bit(v);
                let i = cover.cells[k - 1].iter().position(|&c| c == face).expect("face is spherical");
                let e = conv(cover.boundary[k].get(i, j));
                let value = RatFunc::new(e.mul(&conv(norm.get(face))), conv(norm.get(x)))?;
                out.push(NormalizedEntry { cell: x, face, value, removed_in_bchi: b & bit(v) != 0 });
            }
        }
    }
    Ok(out)
}

pub fn normalized_differential_q(g: &DefiningGraph, chi: &Character) -> Result<Vec<NormalizedEntry<BigInt>>> {
    let cover = build_cyclic_cover(g, chi)?;
    let norm = normalization(g, chi)?;
    norm.check_nonzero(g, Field::Rational)?;
    normalized_entries(g, chi, &cover, &norm, |z| z.clone())
}

pub fn normalized_differential_fp(g: &DefiningGraph, chi: &Character, p: u64) -> Result<Vec<NormalizedEntry<Fp>>> {
    let cover = build_cyclic_cover(g, chi)?;
    let norm = normalization(g, chi)?;
    norm.check_nonzero(g, Field::Prime(p))?;
    normalized_entries(g, chi, &cover, &norm, |z| z.reduce_mod(p))
}

/// `E^1_{p,q} = ⊕_{Δ ∈ B^χ, |Δ| = p} H̄_{q−1}(L_Δ^χ; F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E1Page {
    pub field: Field,
    pub entries: BTreeMap<(usize, usize), usize>,
    /// `(Δ, p, q, dim)` for every nonzero summand.
    pub breakdown: Vec<(VertexSet, usize, usize, usize)>,
}

impl E1Page {
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    /// `Σ_p E^1_{p, n−p}`.
    pub fn diagonal_total(&self, n: usize) -> usize {
        self.entries.iter().filter(|((p, q), _)| p + q == n).map(|(_, &d)| d).sum()
    }
}

pub fn e1_page(g: &DefiningGraph, chi: &Character, field: Field) -> Result<E1Page> {
    let spherical = enumerate_spherical(g);
    let mut entries = BTreeMap::new();
    let mut breakdown = Vec::new();
    for delta in enumerate_bchi(g, chi) {
        let l = l_complex_with(g, chi, delta, &spherical)?;
        let h = reduced_homology(&l.complex, Ring::Field(field));
        let p = size(delta);
        for deg in &h.degrees {
            if deg.rank > 0 {
                let q = (deg.degree + 1) as usize;
                *entries.entry((p, q)).or_insert(0) += deg.rank;
                breakdown.push((delta, p, q, deg.rank));
            }
        }
    }
    Ok(E1Page { field, entries, breakdown })
}

/// Sufficient condition for collapse at `E^1` in characteristic `p`; when it
/// holds the `E^1` diagonals are checked against the ranks over `F_p(t)`.
pub fn collapse_certificate(g: &DefiningGraph, chi: &Character, p: u64) -> Result<bool> {
    let divides = |pred: &dyn Fn(u32) -> bool| g.edges().iter().filter(|e| pred(e.label)).all(|e| (e.label as u64 / 2) % p == 0);
    let cond_i = chi.dead_set() == 0 && divides(&|l| l >= 4 && l % 2 == 0);
    let cond_ii = g.is_even() && divides(&|l| l > 2);
    if !(cond_i || cond_ii) {
        return Ok(false);
    }
    let field = Field::Prime(p);
    let dims = normalized_homology_dims(g, chi, field)?;
    let e1 = e1_page(g, chi, field)?;
    for (n, &d) in dims.iter().enumerate() {
        if e1.diagonal_total(n) != d {
            return Err(Error::Internal(format!(
                "collapse predicted but Σ E1 = {} ≠ dim H_{n} = {d} over {field}",
                e1.diagonal_total(n)
            )));
        }
    }
    Ok(true)
}

/// The complex of spherical subsets `X ≠ ∅`, each an `(|X|−1)`-cell.
pub fn spherical_nerve(g: &DefiningGraph) -> SimplicialComplex {
    SimplicialComplex::new(enumerate_spherical(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> (DefiningGraph, Character) {
        let g = DefiningGraph::new(
            &["a", "b", "c", "d"],
            &[("a", "b", 3), ("b", "c", 4), ("c", "d", 3), ("a", "c", 2), ("a", "d", 2), ("b", "d", 2)],
        )
        .unwrap();
        let chi = Character::from_integers(&g, &[1, 1, -1, -1]).unwrap();
        (g, chi)
    }

    #[test]
    fn single_vertex() {
        let g = DefiningGraph::with_vertices(&["v"]).unwrap();
        let chi = Character::from_integers(&g, &[1]).unwrap();
        let c = build_cyclic_cover(&g, &chi).unwrap();
        assert_eq!(c.boundary[1].get(0, 0), &ZLaurent::from_i64_terms(&[(0, 1), (1, -1)]));
        assert_eq!(c.homology_dims(Field::Rational), vec![0, 0]);
    }

    #[test]
    fn dihedral_four() {
        let g = DefiningGraph::new(&["v", "w"], &[("v", "w", 4)]).unwrap();
        let chi = Character::from_integers(&g, &[1, -1]).unwrap();
        assert_eq!(normalized_homology_dims(&g, &chi, Field::Prime(2)).unwrap(), vec![0, 1, 1]);
        assert_eq!(normalized_homology_dims(&g, &chi, Field::Rational).unwrap(), vec![0, 0, 0]);
        assert!(collapse_certificate(&g, &chi, 2).unwrap());
    }

    #[test]
    fn f4_char_two() {
        let (g, chi) = f4();
        let c = build_cyclic_cover(&g, &chi).unwrap();
        let e = c.entry(0b0111, 0b0110, Field::Prime(2));
        let expected = FieldLaurent::from_integral(&ZLaurent::from_i64_terms(&[(0, 1), (1, 2), (2, 2), (3, 1)]), Field::Prime(2));
        assert_eq!(e, expected);
        assert!(c.entry(0b1111, 0b0111, Field::Prime(2)).is_zero());
        assert_eq!(c.homology_dims(Field::Prime(2))[3], 1);
    }

    #[test]
    fn normalization_units() {
        let (g, chi) = f4();
        for e in normalized_differential_fp(&g, &chi, 2).unwrap() {
            if !e.removed_in_bchi {
                assert!(e.value.is_unit_monomial() && e.value.num.low_degree() == Some(0));
            }
        }
        let norm = normalization(&g, &chi).unwrap();
        assert_eq!(norm.get(0b0110), &ZLaurent::one());
    }

    #[test]
    fn path_example() {
        let g = DefiningGraph::new(&["a", "b", "c"], &[("a", "b", 2), ("b", "c", 3)]).unwrap();
        let chi = Character::from_integers(&g, &[1, 0, 0]).unwrap();
        for f in [Field::Rational, Field::Prime(2), Field::Prime(3)] {
            let d = normalized_homology_dims(&g, &chi, f).unwrap();
            assert_eq!((d[1], d[2]), (0, 0));
        }
        let e1 = e1_page(&g, &chi, Field::Rational).unwrap();
        assert_eq!(e1.entries, BTreeMap::from([((1, 0), 1), ((2, 0), 1)]));
    }
}
