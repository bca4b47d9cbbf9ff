//! Full analysis report for one `(Γ, χ)` pair, rendered as text or JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::DeletionRule;
use crate::error::{Error, Result};
use crate::graph::{abelianization_classes, Character, DefiningGraph, InputDocument};
use crate::homology::Ring;
use crate::kernel::e1_page;
use crate::laurent::Field;
use crate::sigma::{Analysis, Flags, LinkMode, Sigma1Report, SigmaVerdict, Tri};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub degree: i64,
    pub rank: usize,
    /// Elementary divisors greater than one, as decimal strings.
    pub torsion: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkEntry {
    pub delta: Vec<String>,
    pub cells: usize,
    pub dimension: i64,
    /// Nonzero reduced homology of `L_Δ^χ` over the report ring.
    pub homology: Vec<HomologyEntry>,
    pub deleted: Vec<(Vec<String>, DeletionRule)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongLinkEntry {
    pub n: usize,
    pub homological: Tri,
    pub homotopical: Tri,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1Entry {
    pub field: Field,
    /// `(p, q, dim)` for every nonzero `E^1_{p,q}`.
    pub entries: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputDocument,
    /// Primitive integer vector of χ on the vertices.
    pub character: Vec<i64>,
    pub class_values: Vec<i64>,
    /// `S(A_Γ) = S^d`.
    pub sphere_dimension: usize,
    pub n_max: usize,
    pub ring: Ring,
    pub fields: Vec<Field>,
    pub assume_k_pi_1: bool,
    pub spherical_subsets: usize,
    pub bchi: Vec<LinkEntry>,
    pub strong_link: Vec<StrongLinkEntry>,
    /// `dim_{F(t)} H_k` of the cyclic cover for `k = 0..=top`.
    pub kernel_homology: BTreeMap<Field, Vec<usize>>,
    pub e1: Vec<E1Entry>,
    pub sigma1: Sigma1Report,
    pub verdicts: Vec<SigmaVerdict>,
}

pub fn run_report(g: &DefiningGraph, chi: &Character, n_max: usize, flags: Flags) -> Result<Report> {
    let ab = abelianization_classes(g);
    let a = Analysis::new(g, chi, flags.clone())?;
    let bchi = a
        .bchi
        .iter()
        .zip(&a.links)
        .zip(&a.profiles)
        .map(|((&d, l), h)| LinkEntry {
            delta: g.set_names(d),
            cells: l.complex.cells.len(),
            dimension: l.complex.dimension(),
            homology: h
                .degrees
                .iter()
                .filter(|x| !x.is_zero())
                .map(|x| HomologyEntry {
                    degree: x.degree,
                    rank: x.rank,
                    torsion: x.torsion.iter().map(|t| t.to_string()).collect(),
                })
                .collect(),
            deleted: l.deletion_log.iter().map(|&(x, r)| (g.set_names(x), r)).collect(),
        })
        .collect();
    let strong_link = (1..=n_max)
        .map(|n| StrongLinkEntry {
            n,
            homological: a.strong_link(n, LinkMode::Homological),
            homotopical: a.strong_link(n, LinkMode::HomotopicalHeuristic),
        })
        .collect();
    let kernel_homology = a.kernel_dims()?.clone();
    let mut e1 = Vec::new();
    for &field in &flags.fields {
        let page = e1_page(g, chi, field)?;
        e1.push(E1Entry { field, entries: page.entries.iter().map(|(&(p, q), &d)| (p, q, d)).collect() });
    }
    Ok(Report {
        input: InputDocument::from_graph(g, Some(chi)),
        character: chi.scaled().to_vec(),
        class_values: chi.class_values(&ab),
        sphere_dimension: ab.rank().saturating_sub(1),
        n_max,
        ring: flags.ring,
        fields: flags.fields.clone(),
        assume_k_pi_1: flags.assume_k_pi_1,
        spherical_subsets: a.spherical.len(),
        bchi,
        strong_link,
        kernel_homology,
        e1,
        sigma1: a.sigma1_report()?,
        verdicts: a.profile(n_max)?,
    })
}

fn set(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let edges: Vec<String> = self.input.edges.iter().map(|e| format!("{}-{}:{}", e.u, e.v, e.label)).collect();
        let _ = writeln!(o, "graph: vertices {} edges {}", set(&self.input.vertices), set(&edges));
        let _ = writeln!(o, "character: ({}) class values ({})", list(&self.character), list(&self.class_values));
        let _ = writeln!(o, "character sphere: S^{}", self.sphere_dimension);
        let _ = writeln!(
            o,
            "settings: n_max {} ring {} fields {} assume K(π,1) {}",
            self.n_max,
            self.ring,
            list(&self.fields),
            self.assume_k_pi_1
        );
        let _ = writeln!(o, "spherical subsets: {}", self.spherical_subsets);
        let _ = writeln!(o, "B^χ ({} elements):", self.bchi.len());
        for l in &self.bchi {
            let h: Vec<String> = l
                .homology
                .iter()
                .map(|x| {
                    let mut s = format!("H{}: rank {}", x.degree, x.rank);
                    if !x.torsion.is_empty() {
                        let _ = write!(s, " torsion {}", x.torsion.join(","));
                    }
                    s
                })
                .collect();
            let h = if h.is_empty() { "acyclic".to_string() } else { h.join("; ") };
            let _ = writeln!(o, "  Δ = {}: L has {} cells, dim {}, {}", set(&l.delta), l.cells, l.dimension, h);
            for (x, r) in &l.deleted {
                let _ = writeln!(o, "    deleted {} by {:?}", set(x), r);
            }
        }
        let _ = writeln!(o, "strong link condition:");
        for s in &self.strong_link {
            let _ = writeln!(o, "  n = {}: homological {:?}, homotopical {:?}", s.n, s.homological, s.homotopical);
        }
        let _ = writeln!(o, "kernel homology dims over F(t):");
        for (f, d) in &self.kernel_homology {
            let _ = writeln!(o, "  {f}: [{}]", list(d));
        }
        let _ = writeln!(o, "E1 page:");
        for e in &self.e1 {
            let parts: Vec<String> = e.entries.iter().map(|(p, q, d)| format!("E1({p},{q}) = {d}")).collect();
            let body = if parts.is_empty() { "0".to_string() } else { parts.join(", ") };
            let _ = writeln!(o, "  {}: {}", e.field, body);
        }
        let s1 = &self.sigma1;
        let _ = writeln!(
            o,
            "Σ^1: Liv {} connected {} dominant {} Liv0 connected {} Meier sufficient {} prime hypothesis {}",
            set(&s1.liv),
            s1.liv_connected,
            s1.liv_dominant,
            s1.liv0_connected,
            s1.meier_sufficient,
            s1.prime_hypothesis
        );
        let _ = writeln!(o, "verdicts:");
        for v in &self.verdicts {
            let _ = write!(o, "  Σ^{}(A_Γ, Z): {} via {}", v.n, v.answer, v.certificate);
            if v.k_pi_1_assumed {
                let _ = write!(o, " [assuming K(π,1)]");
            }
            let _ = write!(o, "; homotopical Σ^{}: {}", v.n, v.homotopical);
            if let Some(c) = &v.conflict {
                let _ = write!(o, "; CONFLICT {c}");
            }
            let _ = writeln!(o);
        }
        o
    }
}
