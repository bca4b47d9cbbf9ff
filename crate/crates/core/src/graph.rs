//! Defining graphs, characters and abelianization classes.
//!
//! Vertex subsets are stored as bit masks (`VertexSet`), bit `i` being the
//! vertex with index `i` in declaration order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexSet = u64;

/// Largest number of vertices representable by a `VertexSet`.
pub const MAX_VERTICES: usize = 64;

/// Iterate over the indices of the vertices in `set`, in increasing order.
pub fn members(set: VertexSet) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

pub fn bit(i: usize) -> VertexSet {
    1u64 << i
}

pub fn size(set: VertexSet) -> usize {
    set.count_ones() as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: u32,
}

/// A finite simple graph with integer edge labels at least 2.
///
/// A missing edge means the two generators satisfy no relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    labels: Vec<Vec<u32>>,
}

impl DefiningGraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, u32)]) -> Result<Self> {
        let mut g = DefiningGraph::with_vertices(vertices)?;
        for (u, v, label) in edges {
            g.add_edge_by_name(u.as_ref(), v.as_ref(), *label)?;
        }
        Ok(g)
    }

    pub fn with_vertices<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        if vertices.len() > MAX_VERTICES {
            return Err(Error::Unsupported(format!(
                "at most {MAX_VERTICES} vertices are supported, got {}",
                vertices.len()
            )));
        }
        let mut index = HashMap::new();
        let mut names = Vec::new();
        for name in vertices {
            let name = name.as_ref().to_string();
            if name.is_empty() {
                return Err(Error::Parse("empty vertex identifier".into()));
            }
            if index.insert(name.clone(), names.len()).is_some() {
                return Err(Error::Parse(format!("duplicate vertex `{name}`")));
            }
            names.push(name);
        }
        let n = names.len();
        Ok(DefiningGraph { names, index, labels: vec![vec![0; n]; n] })
    }

    pub fn add_edge_by_name(&mut self, u: &str, v: &str, label: u32) -> Result<()> {
        let iu = self.index_of(u)?;
        let iv = self.index_of(v)?;
        self.add_edge(iu, iv, label).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("edge `{u}`-`{v}`: {msg}")),
            other => other,
        })
    }

    pub fn add_edge(&mut self, u: usize, v: usize, label: u32) -> Result<()> {
        if u == v {
            return Err(Error::Parse("loops are not allowed".into()));
        }
        if label < 2 {
            return Err(Error::Parse(format!("label {label} is below 2")));
        }
        if self.labels[u][v] != 0 {
            return Err(Error::Parse("duplicate edge".into()));
        }
        self.labels[u][v] = label;
        self.labels[v][u] = label;
        Ok(())
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown vertex `{name}`")))
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn all(&self) -> VertexSet {
        if self.names.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.names.len()) - 1
        }
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Edge label between `u` and `v`, or `None` when they are not adjacent.
    pub fn label(&self, u: usize, v: usize) -> Option<u32> {
        match self.labels[u][v] {
            0 => None,
            l => Some(l),
        }
    }

    pub fn edges(&self) -> Vec<Edge> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if let Some(label) = self.label(u, v) {
                    out.push(Edge { u, v, label });
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        let mut m = 0;
        for (u, &l) in self.labels[v].iter().enumerate() {
            if l != 0 {
                m |= bit(u);
            }
        }
        m
    }

    /// Vertices outside `set` adjacent to every vertex of `set`.
    pub fn link(&self, set: VertexSet) -> VertexSet {
        let mut m = self.all() & !set;
        for v in members(set) {
            m &= self.neighbors(v);
        }
        m
    }

    pub fn is_clique(&self, set: VertexSet) -> bool {
        members(set).all(|v| (set & !bit(v)) & !self.neighbors(v) == 0)
    }

    pub fn is_complete(&self) -> bool {
        self.is_clique(self.all())
    }

    /// True when every label is even.
    pub fn is_even(&self) -> bool {
        self.edges().iter().all(|e| e.label % 2 == 0)
    }

    /// Induced subgraph on `set`; vertex order is preserved.
    pub fn induced(&self, set: VertexSet) -> (DefiningGraph, Vec<usize>) {
        let keep: Vec<usize> = members(set).collect();
        let names: Vec<&str> = keep.iter().map(|&v| self.names[v].as_str()).collect();
        let mut g = DefiningGraph::with_vertices(&names).expect("subset of a valid graph");
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if let Some(l) = self.label(a, b) {
                    g.add_edge(i, j, l).expect("subset of a valid graph");
                }
            }
        }
        (g, keep)
    }

    pub fn format_set(&self, set: VertexSet) -> String {
        let parts: Vec<&str> = members(set).map(|v| self.name(v)).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn set_names(&self, set: VertexSet) -> Vec<String> {
        members(set).map(|v| self.names[v].clone()).collect()
    }

    pub fn set_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        let mut m = 0;
        for n in names {
            m |= bit(self.index_of(n.as_ref())?);
        }
        Ok(m)
    }

    /// Smallest prime `p` with `p | l/2` for every even label `l > 2`
    /// (2 when there is no such label), or `None` when no prime works.
    pub fn common_prime_of_even_labels(&self) -> Option<u64> {
        let halves: Vec<u64> = self
            .edges()
            .iter()
            .filter(|e| e.label > 2 && e.label % 2 == 0)
            .map(|e| (e.label / 2) as u64)
            .collect();
        common_prime(&halves)
    }

    /// Every prime dividing `l/2` for some even label `l > 2`.
    pub fn primes_of_even_labels(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for e in self.edges() {
            if e.label > 2 && e.label % 2 == 0 {
                for p in prime_factors((e.label / 2) as u64) {
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn common_prime(values: &[u64]) -> Option<u64> {
    let g = values.iter().fold(0u64, |acc, &x| acc.gcd(&x));
    if values.is_empty() {
        return Some(2);
    }
    prime_factors(g).first().copied()
}

/// Odd-edge-connected components of the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianizationClasses {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl AbelianizationClasses {
    pub fn rank(&self) -> usize {
        self.classes.len()
    }
}

pub fn abelianization_classes(g: &DefiningGraph) -> AbelianizationClasses {
    let n = g.vertex_count();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut stack = vec![start];
        let mut members_here = Vec::new();
        class_of[start] = id;
        while let Some(v) = stack.pop() {
            members_here.push(v);
            for u in 0..n {
                if class_of[u] == usize::MAX && g.label(u, v).is_some_and(|l| l % 2 == 1) {
                    class_of[u] = id;
                    stack.push(u);
                }
            }
        }
        members_here.sort_unstable();
        classes.push(members_here);
    }
    AbelianizationClasses { classes, class_of }
}

pub type Rational = Ratio<i64>;

/// Parse `"p/q"` or `"p"` into a rational number.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(p, q))
        }
        None => Ok(Ratio::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// A nonzero character `χ : A_Γ → Q`, determined by its vertex values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    values: Vec<Rational>,
    scaled: Vec<i64>,
    is_discrete: bool,
}

impl Character {
    /// Validate vertex values (indexed by vertex) against the odd-edge constraint.
    pub fn new(g: &DefiningGraph, values: Vec<Rational>) -> Result<Self> {
        if values.len() != g.vertex_count() {
            return Err(Error::Validation(format!(
                "character has {} values but the graph has {} vertices",
                values.len(),
                g.vertex_count()
            )));
        }
        for e in g.edges() {
            if e.label % 2 == 1 && values[e.u] != values[e.v] {
                return Err(Error::Validation(format!(
                    "odd edge `{}`-`{}` (label {}) needs equal values, got {} and {}",
                    g.name(e.u),
                    g.name(e.v),
                    e.label,
                    values[e.u],
                    values[e.v]
                )));
            }
        }
        if values.iter().all(|x| x.is_zero()) {
            return Err(Error::Validation("the zero character is not allowed".into()));
        }
        let is_discrete = values.iter().all(|x| x.is_integer());
        let lcm = values.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
        let ints: Vec<i64> = values.iter().map(|x| (x * lcm).to_integer()).collect();
        let g_all = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
        let scaled = ints.iter().map(|x| x / g_all).collect();
        Ok(Character { values, scaled, is_discrete })
    }

    pub fn from_integers(g: &DefiningGraph, values: &[i64]) -> Result<Self> {
        Character::new(g, values.iter().map(|&x| Ratio::from_integer(x)).collect())
    }

    /// Build from one value per abelianization class (classes in the order of
    /// `abelianization_classes`).
    pub fn from_class_values(g: &DefiningGraph, class_values: &[i64]) -> Result<Self> {
        let ab = abelianization_classes(g);
        if class_values.len() != ab.rank() {
            return Err(Error::Validation(format!(
                "expected {} class values, got {}",
                ab.rank(),
                class_values.len()
            )));
        }
        let values: Vec<i64> = (0..g.vertex_count()).map(|v| class_values[ab.class_of[v]]).collect();
        Character::from_integers(g, &values)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Primitive integer vector positively proportional to the input.
    pub fn scaled(&self) -> &[i64] {
        &self.scaled
    }

    pub fn value(&self, v: usize) -> i64 {
        self.scaled[v]
    }

    pub fn is_discrete(&self) -> bool {
        self.is_discrete
    }

    pub fn is_dead(&self, v: usize) -> bool {
        self.scaled[v] == 0
    }

    pub fn dead_set(&self) -> VertexSet {
        let mut m = 0;
        for (v, &x) in self.scaled.iter().enumerate() {
            if x == 0 {
                m |= bit(v);
            }
        }
        m
    }

    pub fn living_set(&self) -> VertexSet {
        let mut m = 0;
        for (v, &x) in self.scaled.iter().enumerate() {
            if x != 0 {
                m |= bit(v);
            }
        }
        m
    }

    pub fn negated(&self) -> Character {
        Character {
            values: self.values.iter().map(|x| -x).collect(),
            scaled: self.scaled.iter().map(|x| -x).collect(),
            is_discrete: self.is_discrete,
        }
    }

    /// Sum of values over `set`.
    pub fn sum(&self, set: VertexSet) -> i64 {
        members(set).map(|v| self.scaled[v]).sum()
    }

    /// Restriction to the induced subgraph on `keep` (as returned by `induced`).
    pub fn restrict(&self, sub: &DefiningGraph, keep: &[usize]) -> Result<Character> {
        Character::new(sub, keep.iter().map(|&v| self.values[v]).collect())
    }

    /// Representative class values of the scaled vector.
    pub fn class_values(&self, ab: &AbelianizationClasses) -> Vec<i64> {
        ab.classes.iter().map(|c| self.scaled[c[0]]).collect()
    }

    /// Canonical representative of `±[χ]`: first nonzero scaled entry positive.
    pub fn antipodal_class(&self) -> Vec<i64> {
        let first = self.scaled.iter().find(|x| **x != 0).copied().unwrap_or(1);
        if first < 0 {
            self.scaled.iter().map(|x| -x).collect()
        } else {
            self.scaled.clone()
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.scaled.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Validate a named map of raw rational values.
pub fn validate_character(g: &DefiningGraph, raw: &BTreeMap<String, Rational>) -> Result<Character> {
    for key in raw.keys() {
        g.index_of(key).map_err(|_| Error::Validation(format!("character names unknown vertex `{key}`")))?;
    }
    let mut values = Vec::with_capacity(g.vertex_count());
    for name in g.names() {
        match raw.get(name) {
            Some(x) => values.push(*x),
            None => return Err(Error::Validation(format!("character has no value for `{name}`"))),
        }
    }
    Character::new(g, values)
}

/// Input document: `vertices`, `edges` and an optional `character`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDocument {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<BTreeMap<String, RationalSpec>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub u: String,
    pub v: String,
    pub label: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalSpec {
    Int(i64),
    Text(String),
}

impl RationalSpec {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            RationalSpec::Int(x) => Ok(Ratio::from_integer(*x)),
            RationalSpec::Text(s) => parse_rational(s),
        }
    }
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn graph(&self) -> Result<DefiningGraph> {
        let mut g = DefiningGraph::with_vertices(&self.vertices)?;
        for e in &self.edges {
            if e.label < 2 || e.label > u32::MAX as i64 {
                return Err(Error::Parse(format!("edge `{}`-`{}`: label {} is below 2", e.u, e.v, e.label)));
            }
            g.add_edge_by_name(&e.u, &e.v, e.label as u32)?;
        }
        Ok(g)
    }

    pub fn raw_character(&self) -> Result<Option<BTreeMap<String, Rational>>> {
        match &self.character {
            None => Ok(None),
            Some(map) => {
                let mut out = BTreeMap::new();
                for (k, v) in map {
                    out.insert(k.clone(), v.to_rational()?);
                }
                Ok(Some(out))
            }
        }
    }

    pub fn from_graph(g: &DefiningGraph, chi: Option<&Character>) -> Self {
        InputDocument {
            vertices: g.names().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeSpec { u: g.name(e.u).into(), v: g.name(e.v).into(), label: e.label as i64 })
                .collect(),
            character: chi.map(|c| {
                g.names()
                    .iter()
                    .zip(c.values())
                    .map(|(n, x)| {
                        let spec = if x.is_integer() {
                            RationalSpec::Int(x.to_integer())
                        } else {
                            RationalSpec::Text(format!("{}/{}", x.numer(), x.denom()))
                        };
                        (n.clone(), spec)
                    })
                    .collect()
            }),
        }
    }
}

/// Parse the graph part of an input document.
pub fn parse_graph(text: &str) -> Result<DefiningGraph> {
    InputDocument::parse(text)?.graph()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Ratio::new(p, q)
    }

    #[test]
    fn parse_dihedral_six() {
        let g = parse_graph(r#"{"vertices":["v","w"],"edges":[{"u":"v","v":"w","label":6}]}"#).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.label(0, 1), Some(6));
    }

    #[test]
    fn parse_rejects_bad_labels_and_duplicates() {
        let one = r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","label":1}]}"#;
        assert!(matches!(parse_graph(one), Err(Error::Parse(_))));
        let dup_v = r#"{"vertices":["a","a"],"edges":[]}"#;
        assert!(matches!(parse_graph(dup_v), Err(Error::Parse(_))));
        let dup_e = r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","label":2},{"u":"b","v":"a","label":3}]}"#;
        assert!(matches!(parse_graph(dup_e), Err(Error::Parse(_))));
        let lp = r#"{"vertices":["a"],"edges":[{"u":"a","v":"a","label":3}]}"#;
        assert!(matches!(parse_graph(lp), Err(Error::Parse(_))));
    }

    #[test]
    fn parse_path_343() {
        let text = r#"{"vertices":["a","b","c","d"],"edges":[
            {"u":"a","v":"b","label":3},{"u":"b","v":"c","label":4},{"u":"c","v":"d","label":3}]}"#;
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edges().len(), 3);
        assert_eq!(abelianization_classes(&g).rank(), 2);
    }

    #[test]
    fn character_b3_accepted() {
        let g = DefiningGraph::new(&["b1", "b2", "b3"], &[("b1", "b2", 4), ("b2", "b3", 3), ("b1", "b3", 2)]).unwrap();
        let chi = Character::from_integers(&g, &[2, -1, -1]).unwrap();
        let ab = abelianization_classes(&g);
        assert_eq!(chi.class_values(&ab), vec![2, -1]);
    }

    #[test]
    fn character_odd_mismatch_rejected() {
        let g = DefiningGraph::new(&["v", "w"], &[("v", "w", 3)]).unwrap();
        assert!(matches!(Character::from_integers(&g, &[1, 2]), Err(Error::Validation(_))));
        assert!(matches!(Character::from_integers(&g, &[0, 0]), Err(Error::Validation(_))));
    }

    #[test]
    fn character_scaling() {
        let g = DefiningGraph::new(&["v", "w"], &[("v", "w", 4)]).unwrap();
        let chi = Character::new(&g, vec![r(1, 2), r(-1, 3)]).unwrap();
        assert_eq!(chi.scaled(), &[3, -2]);
        assert!(!chi.is_discrete());
        let chi = Character::from_integers(&g, &[4, -6]).unwrap();
        assert_eq!(chi.scaled(), &[2, -3]);
    }

    #[test]
    fn classes_of_families() {
        let b = DefiningGraph::new(
            &["b1", "b2", "b3", "b4"],
            &[("b1", "b2", 4), ("b2", "b3", 3), ("b3", "b4", 3), ("b1", "b3", 2), ("b1", "b4", 2), ("b2", "b4", 2)],
        )
        .unwrap();
        let ab = abelianization_classes(&b);
        assert_eq!(ab.classes, vec![vec![0], vec![1, 2, 3]]);
        let even = DefiningGraph::new(&["a", "b", "c"], &[("a", "b", 2), ("b", "c", 4)]).unwrap();
        assert_eq!(abelianization_classes(&even).rank(), 3);
        let a = DefiningGraph::new(&["a", "b", "c"], &[("a", "b", 3), ("b", "c", 3), ("a", "c", 2)]).unwrap();
        assert_eq!(abelianization_classes(&a).rank(), 1);
    }

    #[test]
    fn document_round_trip() {
        let text = r#"{"vertices":["v","w"],"edges":[{"u":"v","v":"w","label":4}],"character":{"v":"1/2","w":-1}}"#;
        let doc = InputDocument::parse(text).unwrap();
        let g = doc.graph().unwrap();
        let chi = validate_character(&g, &doc.raw_character().unwrap().unwrap()).unwrap();
        assert_eq!(chi.scaled(), &[1, -2]);
        let again = InputDocument::from_graph(&g, Some(&chi));
        assert_eq!(again, doc);
    }

    #[test]
    fn primes_of_labels() {
        let g = DefiningGraph::new(&["a", "b", "c"], &[("a", "b", 4), ("b", "c", 12)]).unwrap();
        assert_eq!(g.common_prime_of_even_labels(), Some(2));
        let h = DefiningGraph::new(&["a", "b", "c"], &[("a", "b", 4), ("b", "c", 6)]).unwrap();
        assert_eq!(h.common_prime_of_even_labels(), None);
        assert_eq!(h.primes_of_even_labels(), vec![2, 3]);
    }
}
