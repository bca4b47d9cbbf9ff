//! Verdicts for `[χ] ∈ Σ^n(A_Γ, Z)`: strong-link sufficiency, homology
//! witnesses for non-membership, exactness regimes and `Liv_0` propagation.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chi::{enumerate_bchi, living_subgraph, LivingSubgraph};
use crate::complex::{l_complex_with, LinkComplex};
use crate::coxeter::{center_chi_value, classify_clique, enumerate_spherical};
use crate::error::Result;
use crate::graph::{bit, members, size, Character, DefiningGraph, VertexSet};
use crate::homology::{reduced_homology, simply_connected_heuristic, Heuristic, HomologyProfile, Ring};
use crate::kernel::{build_cyclic_cover, CyclicCoverComplex};
use crate::laurent::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Answer {
    In,
    Out,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::In => "IN",
            Answer::Out => "OUT",
            Answer::Unknown => "UNKNOWN",
        })
    }
}

/// Named situations in which membership is decided exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `B^χ = {∅}`: membership iff `L_∅^χ` is `(n−1)`-acyclic.
    EmptyPoset,
    /// Common prime of the `l/2` and no dead vertex.
    PrimeNonvanishing,
    /// Common prime of the `l/2` and no dead vertex on an odd edge.
    PrimeOddLiving,
    /// Even graph with a common prime of the `l/2`.
    EvenPrime,
    /// `n = 1` with a common prime: iff `Liv^χ` connected and dominant.
    SigmaOnePrime,
    /// `n = 1`: `Liv^χ` connected and dominant suffices.
    Meier,
    /// `n ≥ 1`: `Liv_0^χ` disconnected excludes membership.
    Liv0Disconnected,
    /// Non-spherical triangle: `Σ^2 = ∅`, `Σ^1` iff `Liv^χ` connected.
    NonsphericalTriangle,
    /// Complete, non-spherical, all proper subsets spherical, χ vanishing on `B^χ`.
    CompleteAlmostSpherical,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::EmptyPoset => "empty-poset",
            Regime::PrimeNonvanishing => "prime-nonvanishing",
            Regime::PrimeOddLiving => "prime-odd-living",
            Regime::EvenPrime => "even-prime",
            Regime::SigmaOnePrime => "sigma1-prime",
            Regime::Meier => "meier",
            Regime::Liv0Disconnected => "liv0-disconnected",
            Regime::NonsphericalTriangle => "nonspherical-triangle",
            Regime::CompleteAlmostSpherical => "complete-almost-spherical",
        }
    }

    /// Regimes that decide through the strong link condition.
    fn decides_by_strong_link(&self) -> bool {
        matches!(self, Regime::EmptyPoset | Regime::PrimeNonvanishing | Regime::PrimeOddLiving | Regime::EvenPrime)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// `Σ^0` is the whole sphere.
    Trivial,
    /// Γ spherical and χ nonzero on the center.
    Center { value: i64 },
    StrongLink { ring: Ring },
    HomologyWitness { field: Field, degree: usize, dimension: usize },
    Regime { regime: Regime },
    /// Not in `Σ^degree` for a smaller degree.
    Nested { degree: usize },
    /// The restriction to `Liv_0^χ` is not in `Σ^n`.
    Liv0Propagation { liv0: Vec<String> },
    /// No certificate applies.
    Missing { reason: String },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Trivial => write!(f, "trivial (Σ^0 is the whole sphere)"),
            Certificate::Center { value } => write!(f, "center (χ(w0) = {value} ≠ 0)"),
            Certificate::StrongLink { ring } => write!(f, "strong-link over {ring}"),
            Certificate::HomologyWitness { field, degree, dimension } => {
                write!(f, "homology-witness (dim H_{degree} = {dimension} over {field}(t))")
            }
            Certificate::Regime { regime } => write!(f, "exactness-regime {}", regime.name()),
            Certificate::Nested { degree } => write!(f, "nested (OUT already at degree {degree})"),
            Certificate::Liv0Propagation { liv0 } => write!(f, "liv0-propagation (Liv0 = {{{}}})", liv0.join(",")),
            Certificate::Missing { reason } => write!(f, "none: {reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaVerdict {
    pub n: usize,
    pub answer: Answer,
    pub certificate: Certificate,
    pub k_pi_1_assumed: bool,
    /// Membership in the homotopical invariant `Σ^n(A_Γ)`.
    pub homotopical: Answer,
    /// Set when certificates for both answers fired.
    pub conflict: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flags {
    pub assume_k_pi_1: bool,
    pub ring: Ring,
    pub fields: Vec<Field>,
    pub heuristic_budget: usize,
}

impl Flags {
    pub fn for_graph(g: &DefiningGraph) -> Flags {
        Flags { assume_k_pi_1: true, ring: Ring::Integers, fields: default_fields(g), heuristic_budget: 10_000 }
    }
}

/// `F_2, F_3, F_5`, every prime dividing some `l/2`, and `Q`.
pub fn default_fields(g: &DefiningGraph) -> Vec<Field> {
    let mut primes = vec![2, 3, 5];
    for p in g.primes_of_even_labels() {
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    primes.sort_unstable();
    let mut out: Vec<Field> = primes.into_iter().map(Field::Prime).collect();
    out.push(Field::Rational);
    out
}

/// Three-valued truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    True,
    False,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkMode {
    Homological,
    HomotopicalHeuristic,
}

struct Candidate {
    answer: Answer,
    certificate: Certificate,
    k_pi_1: bool,
}

/// Cached data for one `(Γ, χ)` pair.
pub struct Analysis<'a> {
    pub g: &'a DefiningGraph,
    pub chi: Character,
    pub flags: Flags,
    pub spherical: Vec<VertexSet>,
    pub bchi: Vec<VertexSet>,
    pub links: Vec<LinkComplex>,
    pub profiles: Vec<HomologyProfile>,
    pub liv: LivingSubgraph,
    cover: OnceCell<CyclicCoverComplex>,
    dims: OnceCell<BTreeMap<Field, Vec<usize>>>,
    simply_connected: OnceCell<Vec<Heuristic>>,
}

impl<'a> Analysis<'a> {
    pub fn new(g: &'a DefiningGraph, chi: &Character, flags: Flags) -> Result<Self> {
        let spherical = enumerate_spherical(g);
        let bchi = enumerate_bchi(g, chi);
        let mut links = Vec::new();
        let mut profiles = Vec::new();
        for &d in &bchi {
            let l = l_complex_with(g, chi, d, &spherical)?;
            profiles.push(reduced_homology(&l.complex, flags.ring));
            links.push(l);
        }
        let liv = living_subgraph(g, chi);
        Ok(Analysis {
            g,
            chi: chi.clone(),
            flags,
            spherical,
            bchi,
            links,
            profiles,
            liv,
            cover: OnceCell::new(),
            dims: OnceCell::new(),
            simply_connected: OnceCell::new(),
        })
    }

    fn acyclic_upto(profile: &HomologyProfile, k: i64) -> bool {
        k < -1 || (-1..=k).all(|d| profile.degree(d).is_zero())
    }

    /// Strong `n`-link condition over the configured ring.
    pub fn strong_link(&self, n: usize, mode: LinkMode) -> Tri {
        let mut unknown = false;
        for (i, &d) in self.bchi.iter().enumerate() {
            if size(d) > n {
                continue;
            }
            let k = n as i64 - 1 - size(d) as i64;
            if !Self::acyclic_upto(&self.profiles[i], k) {
                return Tri::False;
            }
            if mode == LinkMode::HomotopicalHeuristic && k >= 1 && self.heuristics()[i] != Heuristic::Yes {
                unknown = true;
            }
        }
        if unknown {
            Tri::Unknown
        } else {
            Tri::True
        }
    }

    fn heuristics(&self) -> &Vec<Heuristic> {
        self.simply_connected.get_or_init(|| {
            self.links
                .iter()
                .map(|l| simply_connected_heuristic(&l.complex, self.flags.heuristic_budget).unwrap_or(Heuristic::Unknown))
                .collect()
        })
    }

    pub fn cover(&self) -> Result<&CyclicCoverComplex> {
        if let Some(c) = self.cover.get() {
            return Ok(c);
        }
        let c = build_cyclic_cover(self.g, &self.chi)?;
        Ok(self.cover.get_or_init(|| c))
    }

    /// `dim_{F(t)} H_k` of the cyclic cover for every configured field.
    pub fn kernel_dims(&self) -> Result<&BTreeMap<Field, Vec<usize>>> {
        if let Some(d) = self.dims.get() {
            return Ok(d);
        }
        let cover = self.cover()?;
        let dims = self.flags.fields.iter().map(|&f| (f, cover.homology_dims(f))).collect();
        Ok(self.dims.get_or_init(|| dims))
    }

    fn center_value(&self) -> Option<i64> {
        let d = classify_clique(self.g, self.g.all())?;
        d.components.iter().map(|c| center_chi_value(c, &self.chi)).find(|&v| v != 0)
    }

    fn homology_witness(&self, n: usize) -> Result<Option<Certificate>> {
        let dims = self.kernel_dims()?;
        for j in 0..=n {
            for &field in &self.flags.fields {
                if let Some(&d) = dims[&field].get(j) {
                    if d > 0 {
                        return Ok(Some(Certificate::HomologyWitness { field, degree: j, dimension: d }));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn prime_hypothesis(&self) -> bool {
        self.g.common_prime_of_even_labels().is_some()
    }

    fn dead_on_odd_edge(&self) -> bool {
        self.g.edges().iter().any(|e| e.label % 2 == 1 && (self.chi.is_dead(e.u) || self.chi.is_dead(e.v)))
    }

    fn is_nonspherical_triangle(&self) -> bool {
        self.g.vertex_count() == 3 && self.g.is_complete() && classify_clique(self.g, self.g.all()).is_none()
    }

    fn is_complete_almost_spherical(&self) -> bool {
        let all = self.g.all();
        self.g.is_complete()
            && classify_clique(self.g, all).is_none()
            && members(all).all(|v| classify_clique(self.g, all & !bit(v)).is_some())
            && self.bchi.iter().all(|&d| members(d).all(|v| self.chi.is_dead(v)))
    }

    /// Exactness regimes that apply at degree `n`, in cascade order.
    pub fn regimes(&self, n: usize) -> Vec<Regime> {
        let mut out = Vec::new();
        let prime = self.prime_hypothesis();
        if self.bchi == [0] {
            out.push(Regime::EmptyPoset);
        }
        if prime && self.chi.dead_set() == 0 {
            out.push(Regime::PrimeNonvanishing);
        }
        if prime && !self.dead_on_odd_edge() {
            out.push(Regime::PrimeOddLiving);
        }
        if prime && self.g.is_even() {
            out.push(Regime::EvenPrime);
        }
        if n == 1 && prime {
            out.push(Regime::SigmaOnePrime);
        }
        if n == 1 && self.liv.is_connected() && self.liv.dominant {
            out.push(Regime::Meier);
        }
        if n >= 1 && !self.liv.liv0_is_connected(self.g) {
            out.push(Regime::Liv0Disconnected);
        }
        if self.is_nonspherical_triangle() {
            out.push(Regime::NonsphericalTriangle);
        }
        if self.is_complete_almost_spherical() {
            out.push(Regime::CompleteAlmostSpherical);
        }
        out
    }

    fn regime_answer(&self, r: Regime, n: usize) -> (Answer, bool) {
        let sl = self.strong_link(n, LinkMode::Homological) == Tri::True;
        let conn_dom = self.liv.is_connected() && self.liv.dominant;
        match r {
            _ if r.decides_by_strong_link() => (if sl { Answer::In } else { Answer::Out }, n >= 2),
            Regime::SigmaOnePrime => (if conn_dom { Answer::In } else { Answer::Out }, false),
            Regime::Meier => (Answer::In, false),
            Regime::Liv0Disconnected => (Answer::Out, false),
            Regime::NonsphericalTriangle => {
                if n >= 2 || !self.liv.is_connected() {
                    (Answer::Out, false)
                } else {
                    (Answer::In, false)
                }
            }
            Regime::CompleteAlmostSpherical => {
                let big = self.g.vertex_count();
                (if n + 2 <= big { Answer::In } else { Answer::Out }, true)
            }
            _ => unreachable!("all regimes handled"),
        }
    }

    fn liv0_propagation(&self, n: usize) -> Result<Option<Certificate>> {
        let liv0 = self.chi.living_set();
        if liv0 == self.g.all() || liv0 == 0 {
            return Ok(None);
        }
        let (sub, keep) = self.g.induced(liv0);
        let chi = self.chi.restrict(&sub, &keep)?;
        let flags = Flags { fields: default_fields(&sub), ..self.flags.clone() };
        let inner = Analysis::new(&sub, &chi, flags)?;
        let v = inner.verdict(n)?;
        if v.answer == Answer::Out {
            return Ok(Some(Certificate::Liv0Propagation { liv0: self.g.set_names(liv0) }));
        }
        Ok(None)
    }

    fn missing_reason(&self, n: usize) -> String {
        let mut parts = vec![if self.strong_link(n, LinkMode::Homological) == Tri::True {
            format!("strong {n}-link condition holds over {} but sufficiency needs K(π,1)", self.flags.ring)
        } else {
            format!("strong {n}-link condition fails over {}", self.flags.ring)
        }];
        let fields: Vec<String> = self.flags.fields.iter().map(|f| f.to_string()).collect();
        parts.push(format!("no homology witness in degrees ≤ {n} over {}", fields.join(",")));
        if !self.prime_hypothesis() {
            parts.push("no prime divides l/2 for every even label > 2".into());
        } else if self.dead_on_odd_edge() {
            parts.push("a dead vertex lies on an odd-labelled edge".into());
        }
        if self.bchi != [0] {
            parts.push("B^χ ≠ {∅}".into());
        }
        parts.join("; ")
    }

    /// Decision cascade at degree `n`.
    pub fn verdict(&self, n: usize) -> Result<SigmaVerdict> {
        if n == 0 {
            return Ok(SigmaVerdict {
                n,
                answer: Answer::In,
                certificate: Certificate::Trivial,
                k_pi_1_assumed: false,
                homotopical: Answer::In,
                conflict: None,
            });
        }
        let mut cands = Vec::new();
        if let Some(value) = self.center_value() {
            cands.push(Candidate { answer: Answer::In, certificate: Certificate::Center { value }, k_pi_1: false });
        }
        if self.strong_link(n, LinkMode::Homological) == Tri::True {
            cands.push(Candidate {
                answer: Answer::In,
                certificate: Certificate::StrongLink { ring: self.flags.ring },
                k_pi_1: true,
            });
        }
        if let Some(w) = self.homology_witness(n)? {
            let degree = match w {
                Certificate::HomologyWitness { degree, .. } => degree,
                _ => 0,
            };
            cands.push(Candidate { answer: Answer::Out, certificate: w, k_pi_1: degree >= 2 });
        }
        for r in self.regimes(n) {
            let (answer, k_pi_1) = self.regime_answer(r, n);
            cands.push(Candidate { answer, certificate: Certificate::Regime { regime: r }, k_pi_1 });
        }
        if n >= 2 {
            let lower = self.verdict(n - 1)?;
            if lower.answer == Answer::Out {
                let degree = match lower.certificate {
                    Certificate::Nested { degree } => degree,
                    _ => n - 1,
                };
                cands.push(Candidate { answer: Answer::Out, certificate: Certificate::Nested { degree }, k_pi_1: lower.k_pi_1_assumed });
            }
        }
        if !cands.iter().any(|c| c.k_pi_1 <= self.flags.assume_k_pi_1) {
            if let Some(c) = self.liv0_propagation(n)? {
                cands.push(Candidate { answer: Answer::Out, certificate: c, k_pi_1: false });
            }
        }
        let ins: Vec<&Candidate> = cands.iter().filter(|c| c.answer == Answer::In).collect();
        let outs: Vec<&Candidate> = cands.iter().filter(|c| c.answer == Answer::Out).collect();
        let conflict = match (ins.first(), outs.first()) {
            (Some(a), Some(b)) => Some(format!("{} vs {}", a.certificate, b.certificate)),
            _ => None,
        };
        let chosen = cands.into_iter().find(|c| c.k_pi_1 <= self.flags.assume_k_pi_1);
        let (answer, certificate, k_pi_1_assumed) = match chosen {
            Some(c) => (c.answer, c.certificate, c.k_pi_1),
            None => {
                let reason = if self.flags.assume_k_pi_1 {
                    self.missing_reason(n)
                } else {
                    format!("{} (the K(π,1) conjecture is not assumed)", self.missing_reason(n))
                };
                (Answer::Unknown, Certificate::Missing { reason }, false)
            }
        };
        let homotopical = match answer {
            Answer::In if n <= 1 || matches!(certificate, Certificate::Center { .. }) => Answer::In,
            Answer::In if self.strong_link(2, LinkMode::HomotopicalHeuristic) == Tri::True => Answer::In,
            Answer::Out => Answer::Out,
            _ => Answer::Unknown,
        };
        Ok(SigmaVerdict { n, answer, certificate, k_pi_1_assumed, homotopical, conflict })
    }

    /// Verdicts for `n = 1..=max`.
    pub fn profile(&self, max: usize) -> Result<Vec<SigmaVerdict>> {
        (1..=max).map(|n| self.verdict(n)).collect()
    }

    pub fn sigma1_report(&self) -> Result<Sigma1Report> {
        let conn = self.liv.is_connected();
        Ok(Sigma1Report {
            liv: self.g.set_names(self.liv.vertices),
            liv_connected: conn,
            liv_dominant: self.liv.dominant,
            liv0_connected: self.liv.liv0_is_connected(self.g),
            meier_sufficient: conn && self.liv.dominant,
            prime_hypothesis: self.prime_hypothesis(),
            verdict: self.verdict(1)?,
        })
    }
}

/// Summary of the first invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sigma1Report {
    pub liv: Vec<String>,
    pub liv_connected: bool,
    pub liv_dominant: bool,
    pub liv0_connected: bool,
    pub meier_sufficient: bool,
    pub prime_hypothesis: bool,
    pub verdict: SigmaVerdict,
}

pub fn sigma_membership(g: &DefiningGraph, chi: &Character, n: usize, flags: Flags) -> Result<SigmaVerdict> {
    Analysis::new(g, chi, flags)?.verdict(n)
}

pub fn strong_link_condition(g: &DefiningGraph, chi: &Character, n: usize, ring: Ring, mode: LinkMode) -> Result<Tri> {
    let flags = Flags { ring, ..Flags::for_graph(g) };
    Ok(Analysis::new(g, chi, flags)?.strong_link(n, mode))
}

/// `FP_n` for `ker χ` from the verdicts at `χ` and `−χ`: OUT if either is OUT,
/// IN if either is IN (one suffices).
pub fn kernel_finiteness(g: &DefiningGraph, chi: &Character, n: usize, flags: Flags) -> Result<SigmaVerdict> {
    let plus = sigma_membership(g, chi, n, flags.clone())?;
    let minus = sigma_membership(g, &chi.negated(), n, flags)?;
    let mut out = match (plus.answer, minus.answer) {
        (Answer::Out, _) => plus.clone(),
        (_, Answer::Out) => minus.clone(),
        (Answer::In, _) => plus.clone(),
        _ => minus.clone(),
    };
    if matches!((plus.answer, minus.answer), (Answer::In, Answer::Out) | (Answer::Out, Answer::In)) {
        out.conflict.get_or_insert_with(|| format!("χ gives {} but −χ gives {}", plus.answer, minus.answer));
    }
    Ok(out)
}

pub fn sigma1_report(g: &DefiningGraph, chi: &Character) -> Result<Sigma1Report> {
    Analysis::new(g, chi, Flags::for_graph(g))?.sigma1_report()
}
