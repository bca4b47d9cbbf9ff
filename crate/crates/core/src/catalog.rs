//! Named defining graphs (spherical, affine, triangle) and the regression
//! tables of their closed-form Σ-invariants.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::chi::living_subgraph;
use crate::coxeter::{classify_clique, SphericalKind};
use crate::error::{Error, Result};
use crate::graph::{abelianization_classes, Character, DefiningGraph};
use crate::sigma::{Analysis, Answer, Flags, SigmaVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    D,
    E,
    F,
    H,
    I2,
    AffineA,
    AffineB,
    AffineC,
    AffineD,
    AffineE,
    AffineF,
    AffineG,
    AffineI,
    Triangle,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::A,
        Family::B,
        Family::D,
        Family::E,
        Family::F,
        Family::H,
        Family::I2,
        Family::AffineA,
        Family::AffineB,
        Family::AffineC,
        Family::AffineD,
        Family::AffineE,
        Family::AffineF,
        Family::AffineG,
        Family::AffineI,
        Family::Triangle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::H => "H",
            Family::I2 => "I2",
            Family::AffineA => "A~",
            Family::AffineB => "B~",
            Family::AffineC => "C~",
            Family::AffineD => "D~",
            Family::AffineE => "E~",
            Family::AffineF => "F~",
            Family::AffineG => "G~",
            Family::AffineI => "I~",
            Family::Triangle => "triangle",
        }
    }

    /// Accepts the canonical name, `affine-X` and `Xtilde` for affine families.
    pub fn parse(text: &str) -> Result<Family> {
        let t = text.trim();
        let lower = t.to_ascii_lowercase();
        let base = lower
            .strip_prefix("affine-")
            .map(|s| format!("{s}~"))
            .or_else(|| lower.strip_suffix("tilde").map(|s| format!("{s}~")))
            .unwrap_or(lower);
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name().to_ascii_lowercase() == base)
            .ok_or_else(|| Error::Validation(format!("unknown family `{t}`")))
    }

    pub fn is_affine(&self) -> bool {
        matches!(
            self,
            Family::AffineA
                | Family::AffineB
                | Family::AffineC
                | Family::AffineD
                | Family::AffineE
                | Family::AffineF
                | Family::AffineG
                | Family::AffineI
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A generated member of a named family. Affine ranks follow the Dynkin
/// convention: `X~_n` has `n + 1` generators.
#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub family: Family,
    pub params: Vec<u32>,
    pub graph: DefiningGraph,
}

impl FamilySpec {
    pub fn label(&self) -> String {
        let p: Vec<String> = self.params.iter().map(|x| x.to_string()).collect();
        match self.family {
            Family::Triangle => format!("triangle({})", p.join(",")),
            Family::I2 => format!("I2({})", p.join(",")),
            f => format!("{}{}", f.name(), p.join(",")),
        }
    }

    /// Checks that the graph has the intended finite type, or that it is a
    /// non-spherical complete graph all of whose proper subsets are spherical.
    pub fn verify(&self) -> Result<()> {
        let g = &self.graph;
        let all = g.all();
        let bad = |why: &str| Error::Internal(format!("{}: {why}", self.label()));
        match self.family {
            Family::AffineI => {
                if g.edges().is_empty() && g.vertex_count() == 2 {
                    Ok(())
                } else {
                    Err(bad("expected two non-adjacent vertices"))
                }
            }
            f if f.is_affine() => {
                if classify_clique(g, all).is_some() || !g.is_complete() {
                    return Err(bad("expected a non-spherical complete graph"));
                }
                for v in 0..g.vertex_count() {
                    if classify_clique(g, all & !crate::graph::bit(v)).is_none() {
                        return Err(bad("a maximal proper subset is not spherical"));
                    }
                }
                Ok(())
            }
            Family::Triangle => {
                if g.is_complete() && g.vertex_count() == 3 {
                    Ok(())
                } else {
                    Err(bad("expected a triangle"))
                }
            }
            _ => {
                let d = classify_clique(g, all).ok_or_else(|| bad("not spherical"))?;
                match d.components.as_slice() {
                    [c] if c.kind == self.expected_kind() => Ok(()),
                    _ => Err(bad("unexpected finite type")),
                }
            }
        }
    }

    fn expected_kind(&self) -> SphericalKind {
        let n = self.params.first().copied().unwrap_or(0);
        match self.family {
            Family::A if n == 2 => SphericalKind::I2(3),
            Family::A => SphericalKind::A(n),
            Family::B if n == 2 => SphericalKind::I2(4),
            Family::B => SphericalKind::B(n),
            Family::D => SphericalKind::D(n),
            Family::E if n == 6 => SphericalKind::E6,
            Family::E if n == 7 => SphericalKind::E7,
            Family::E => SphericalKind::E8,
            Family::F => SphericalKind::F4,
            Family::H if n == 3 => SphericalKind::H3,
            Family::H => SphericalKind::H4,
            _ => SphericalKind::I2(n),
        }
    }
}

fn names(count: usize, first: usize) -> Vec<String> {
    (first..first + count).map(|i| format!("v{i}")).collect()
}

/// Complete graph on `names` with the given Dynkin edges and label 2 elsewhere.
fn dynkin(names: &[String], edges: &[(usize, usize, u32)]) -> Result<DefiningGraph> {
    let mut g = DefiningGraph::with_vertices(names)?;
    let n = names.len();
    let mut labels = vec![vec![2u32; n]; n];
    for &(u, v, l) in edges {
        labels[u][v] = l;
        labels[v][u] = l;
    }
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v, labels[u][v])?;
        }
    }
    Ok(g)
}

fn path(len: usize) -> Vec<(usize, usize, u32)> {
    (1..len).map(|i| (i - 1, i, 3)).collect()
}

fn one(params: &[u32], family: Family) -> Result<u32> {
    match params {
        [n] => Ok(*n),
        _ => Err(Error::Validation(format!("{family} takes exactly one parameter"))),
    }
}

fn out_of_range(family: Family, n: u32, need: &str) -> Error {
    Error::Validation(format!("{family}{n}: parameter must satisfy {need}"))
}

pub fn build_family(family: Family, params: &[u32]) -> Result<FamilySpec> {
    let g = match family {
        Family::Triangle => match params {
            [m, n, p] if [m, n, p].iter().all(|&&x| x >= 2) => {
                let vs = ["x", "y", "z"].map(String::from);
                let mut g = DefiningGraph::with_vertices(&vs)?;
                g.add_edge(0, 1, *m)?;
                g.add_edge(1, 2, *n)?;
                g.add_edge(0, 2, *p)?;
                g
            }
            _ => return Err(Error::Validation("triangle takes three labels M N P, each ≥ 2".into())),
        },
        _ => {
            let n = one(params, family)?;
            let r = n as usize;
            match family {
                Family::A => {
                    if n < 1 {
                        return Err(out_of_range(family, n, "n ≥ 1"));
                    }
                    dynkin(&names(r, 1), &path(r))?
                }
                Family::B => {
                    if n < 2 {
                        return Err(out_of_range(family, n, "n ≥ 2"));
                    }
                    let mut e = path(r);
                    e[0].2 = 4;
                    dynkin(&names(r, 1), &e)?
                }
                Family::D => {
                    if n < 4 {
                        return Err(out_of_range(family, n, "n ≥ 4"));
                    }
                    let mut e = path(r - 1);
                    e.push((r - 3, r - 1, 3));
                    dynkin(&names(r, 1), &e)?
                }
                Family::E => {
                    if !(6..=8).contains(&n) {
                        return Err(out_of_range(family, n, "6 ≤ n ≤ 8"));
                    }
                    let mut e = path(r - 1);
                    e.push((2, r - 1, 3));
                    dynkin(&names(r, 1), &e)?
                }
                Family::F => {
                    if n != 4 {
                        return Err(out_of_range(family, n, "n = 4"));
                    }
                    dynkin(&names(4, 1), &[(0, 1, 3), (1, 2, 4), (2, 3, 3)])?
                }
                Family::H => {
                    if !(3..=4).contains(&n) {
                        return Err(out_of_range(family, n, "3 ≤ n ≤ 4"));
                    }
                    let mut e = path(r);
                    e[0].2 = 5;
                    dynkin(&names(r, 1), &e)?
                }
                Family::I2 => {
                    if n < 2 {
                        return Err(out_of_range(family, n, "k ≥ 2"));
                    }
                    dynkin(&["v".to_string(), "w".to_string()], &[(0, 1, n)])?
                }
                Family::AffineA => {
                    if n < 2 {
                        return Err(out_of_range(family, n, "n ≥ 2"));
                    }
                    let mut e = path(r + 1);
                    e.push((0, r, 3));
                    dynkin(&names(r + 1, 0), &e)?
                }
                Family::AffineB => {
                    if n < 3 {
                        return Err(out_of_range(family, n, "n ≥ 3"));
                    }
                    let mut e = path(r);
                    e[0].2 = 4;
                    e.push((r - 2, r, 3));
                    dynkin(&names(r + 1, 1), &e)?
                }
                Family::AffineC => {
                    if n < 2 {
                        return Err(out_of_range(family, n, "n ≥ 2"));
                    }
                    let mut e = path(r + 1);
                    e[0].2 = 4;
                    e[r - 1].2 = 4;
                    dynkin(&names(r + 1, 0), &e)?
                }
                Family::AffineD => {
                    if n < 4 {
                        return Err(out_of_range(family, n, "n ≥ 4"));
                    }
                    let mut e = path(r);
                    e[0] = (0, 2, 3);
                    e.push((r - 2, r, 3));
                    dynkin(&names(r + 1, 1), &e)?
                }
                Family::AffineE => match n {
                    6 => {
                        let mut e = path(5);
                        e.push((2, 5, 3));
                        e.push((5, 6, 3));
                        dynkin(&names(7, 1), &e)?
                    }
                    7 => {
                        let mut e = path(7);
                        e.push((3, 7, 3));
                        dynkin(&names(8, 1), &e)?
                    }
                    8 => {
                        let mut e = path(8);
                        e.push((2, 8, 3));
                        dynkin(&names(9, 1), &e)?
                    }
                    _ => return Err(out_of_range(family, n, "6 ≤ n ≤ 8")),
                },
                Family::AffineF => {
                    if n != 4 {
                        return Err(out_of_range(family, n, "n = 4"));
                    }
                    dynkin(&names(5, 1), &[(0, 1, 3), (1, 2, 4), (2, 3, 3), (3, 4, 3)])?
                }
                Family::AffineG => {
                    if n != 2 {
                        return Err(out_of_range(family, n, "n = 2"));
                    }
                    dynkin(&names(3, 1), &[(0, 1, 3), (1, 2, 6)])?
                }
                Family::AffineI => {
                    if n != 1 {
                        return Err(out_of_range(family, n, "n = 1"));
                    }
                    DefiningGraph::with_vertices(&names(2, 1))?
                }
                Family::Triangle => unreachable!("handled above"),
            }
        }
    };
    let spec = FamilySpec { family, params: params.to_vec(), graph: g };
    spec.verify()?;
    Ok(spec)
}

/// Primitive integer vectors of length `rank` with entries in `[-bound, bound]`,
/// one per antipodal pair (first nonzero entry positive), in lexicographic order.
pub fn character_grid(rank: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let width = (2 * bound + 1) as usize;
    let total = width.pow(rank as u32);
    for idx in 0..total {
        let mut k = idx;
        let mut v = vec![0i64; rank];
        for slot in v.iter_mut().rev() {
            *slot = (k % width) as i64 - bound;
            k /= width;
        }
        let first = v.iter().find(|x| **x != 0).copied();
        if first.is_none_or(|f| f < 0) {
            continue;
        }
        if v.iter().fold(0i64, |a, &b| a.gcd(&b)) == 1 {
            out.push(v);
        }
    }
    out
}

fn proportional(a: &[i64], b: &[i64]) -> bool {
    a.len() == b.len()
        && (a.iter().zip(b).all(|(x, y)| x == y) || a.iter().zip(b).all(|(x, y)| *x == -*y))
}

/// `j` with `(a, b) = ±λ(j, −1)`, when `a/b` is integral.
fn ratio_to_minus_one(a: i64, b: i64) -> Option<i64> {
    if b == 0 || a % b != 0 {
        None
    } else {
        Some(-a / b)
    }
}

/// Closed-form membership in the homological invariant for the named
/// families. `classes` are the primitive class values in the order of
/// `abelianization_classes`. `None` when no closed form is tabulated.
pub fn expected_answer(spec: &FamilySpec, classes: &[i64], n: usize) -> Option<Answer> {
    let big = spec.graph.vertex_count();
    let yes = |b: bool| if b { Answer::In } else { Answer::Out };
    let k = spec.params.first().copied().unwrap_or(0) as usize;
    Some(match spec.family {
        Family::I2 if k % 2 == 0 => yes(n == 0 || !proportional(classes, &[1, -1])),
        Family::B if k == 2 => yes(n == 0 || !proportional(classes, &[1, -1])),
        Family::F => yes(n <= 2 || !proportional(classes, &[1, -1])),
        Family::B => yes(n + 2 <= k || !proportional(classes, &[k as i64 - 1, -1])),
        Family::A | Family::D | Family::E | Family::H | Family::I2 => Answer::In,
        Family::AffineB => {
            let exceptional = ratio_to_minus_one(classes[0], classes[1]) == Some(big as i64 - 2);
            yes(n + if exceptional { 3 } else { 2 } <= big)
        }
        Family::AffineC => {
            let j = ratio_to_minus_one(classes[0], classes[1]);
            let i = ratio_to_minus_one(classes[2], classes[1]);
            let range = 0..=(big as i64 - 2);
            let exceptional = match (j, i) {
                (Some(j), Some(i)) => range.contains(&j) && range.contains(&i) && j + i + 2 >= big as i64,
                _ => false,
            };
            yes(n + if exceptional { 3 } else { 2 } <= big)
        }
        f if f.is_affine() => yes(n + 2 <= big),
        Family::Triangle => {
            let g = &spec.graph;
            if classify_clique(g, g.all()).is_some() {
                return None;
            }
            let chi = Character::from_class_values(g, classes).ok()?;
            yes(n == 0 || (n == 1 && living_subgraph(g, &chi).is_connected()))
        }
        _ => return None,
    })
}

/// Whether `classes` is one of the tabulated exceptional classes of the family.
pub fn is_exceptional(spec: &FamilySpec, classes: &[i64]) -> bool {
    let n_max = spec.graph.vertex_count() + 1;
    let generic = |n: usize| match spec.family {
        f if f.is_affine() => n + 2 <= spec.graph.vertex_count(),
        Family::F => n <= 2,
        Family::B => n + 2 <= spec.params[0] as usize,
        _ => n == 0,
    };
    (0..=n_max).any(|n| expected_answer(spec, classes, n).is_some_and(|a| (a == Answer::In) != generic(n)))
        && !matches!(spec.family, Family::Triangle)
}

/// One family/character/degree check of the regression suite.
#[derive(Debug, Clone, Serialize)]
pub struct RegressionCase {
    pub family: String,
    pub classes: Vec<i64>,
    pub n: usize,
    pub exceptional: bool,
    pub expected: Answer,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegressionOutcome {
    pub case: RegressionCase,
    pub verdict: SigmaVerdict,
}

impl RegressionOutcome {
    pub fn passed(&self) -> bool {
        self.verdict.answer == self.case.expected && self.verdict.conflict.is_none()
    }
}

/// Verdicts for every class in `classes` at degrees `1..=n_max`, compared with
/// the closed form.
pub fn regress_family(spec: &FamilySpec, classes: &[Vec<i64>], n_max: usize) -> Result<Vec<RegressionOutcome>> {
    let g = &spec.graph;
    let ab = abelianization_classes(g);
    let mut out = Vec::new();
    for cv in classes {
        let chi = Character::from_class_values(g, cv)?;
        let primitive = chi.class_values(&ab);
        let analysis = Analysis::new(g, &chi, Flags::for_graph(g))?;
        for n in 1..=n_max {
            let Some(expected) = expected_answer(spec, &primitive, n) else {
                continue;
            };
            let verdict = analysis.verdict(n)?;
            out.push(RegressionOutcome {
                case: RegressionCase {
                    family: spec.label(),
                    classes: primitive.clone(),
                    n,
                    exceptional: is_exceptional(spec, &primitive),
                    expected,
                },
                verdict,
            });
        }
    }
    Ok(out)
}

/// Exceptional classes of the family followed by the sampled grid with
/// entries of absolute value at most `bound`.
pub fn sampled_classes(spec: &FamilySpec, bound: i64) -> Vec<Vec<i64>> {
    let rank = abelianization_classes(&spec.graph).rank();
    let big = spec.graph.vertex_count() as i64;
    let mut out: Vec<Vec<i64>> = match (spec.family, spec.params.first()) {
        (Family::I2, Some(k)) if k % 2 == 0 => vec![vec![1, -1]],
        (Family::B, Some(&k)) => vec![vec![k as i64 - 1, -1]],
        (Family::F, _) => vec![vec![1, -1]],
        (Family::AffineB, _) => vec![vec![big - 2, -1]],
        (Family::AffineF, _) => vec![vec![1, -1], vec![2, -1], vec![1, -2], vec![3, -1]],
        (Family::AffineC, _) => {
            let mut v = Vec::new();
            for j in 0..=big - 2 {
                for i in 0..=big - 2 {
                    if j + i + 2 >= big - 1 {
                        v.push(vec![j, -1, i]);
                    }
                }
            }
            v
        }
        _ => Vec::new(),
    };
    for c in character_grid(rank, bound) {
        if !out.iter().any(|e| proportional(e, &c)) {
            out.push(c);
        }
    }
    out
}

/// The named-family part of the regression suite.
pub fn regression_families() -> Result<Vec<(FamilySpec, usize)>> {
    let mut out = Vec::new();
    for k in [4, 6, 8] {
        out.push((build_family(Family::I2, &[k])?, 3));
    }
    out.push((build_family(Family::F, &[4])?, 4));
    for n in 3..=6 {
        out.push((build_family(Family::B, &[n])?, n as usize));
    }
    for n in [3, 4] {
        out.push((build_family(Family::AffineB, &[n])?, n as usize + 1));
    }
    for n in [2, 3, 4] {
        out.push((build_family(Family::AffineC, &[n])?, n as usize + 1));
    }
    out.push((build_family(Family::AffineF, &[4])?, 5));
    out.push((build_family(Family::AffineG, &[2])?, 3));
    out.push((build_family(Family::AffineI, &[1])?, 2));
    for n in [2, 3, 4] {
        out.push((build_family(Family::AffineA, &[n])?, n as usize + 1));
    }
    out.push((build_family(Family::AffineD, &[4])?, 5));
    out.push((build_family(Family::AffineE, &[6])?, 7));
    for (f, n) in [(Family::A, 4), (Family::D, 4), (Family::D, 5), (Family::H, 3), (Family::H, 4), (Family::E, 6), (Family::E, 7)] {
        out.push((build_family(f, &[n])?, n as usize));
    }
    for t in [[3, 3, 3], [2, 4, 4], [2, 3, 6], [3, 4, 5]] {
        out.push((build_family(Family::Triangle, &t)?, 3));
    }
    Ok(out)
}

/// Full regression suite over the sampled grid with `|value| ≤ bound`.
pub fn regression_suite(bound: i64) -> Result<Vec<RegressionOutcome>> {
    let mut out = Vec::new();
    for (spec, n_max) in regression_families()? {
        out.extend(regress_family(&spec, &sampled_classes(&spec, bound), n_max)?);
    }
    Ok(out)
}
