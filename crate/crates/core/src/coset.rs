//! Signed coset polynomials `χ(T_X^{X_v})`: closed forms for dihedral, `A_m`
//! and `B_m` components, an exact orbit engine for the remaining types and
//! brute-force group oracles.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::{classify_clique, Component, SphericalKind};
use crate::error::{Error, Result};
use crate::graph::{bit, members, Character, DefiningGraph, VertexSet};
use crate::laurent::{double_factorial_2m, q_binomial, q_factorial, BiLaurent, Field, FieldLaurent, ZLaurent};

type Q = Ratio<i64>;

/// `x0 + x1√2 + x2√5 + x3√10` with rational coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct QuadExt(pub [Q; 4]);

impl QuadExt {
    pub fn zero() -> Self {
        QuadExt([Q::zero(); 4])
    }

    pub fn from_int(x: i64) -> Self {
        QuadExt([Q::from_integer(x), Q::zero(), Q::zero(), Q::zero()])
    }

    pub fn new(x0: Q, x1: Q, x2: Q, x3: Q) -> Self {
        QuadExt([x0, x1, x2, x3])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadExt(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadExt(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }

    pub fn neg(&self) -> Self {
        QuadExt(std::array::from_fn(|i| -self.0[i]))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = o.0;
        let two = Q::from_integer(2);
        let five = Q::from_integer(5);
        let ten = Q::from_integer(10);
        QuadExt([
            a0 * b0 + two * a1 * b1 + five * a2 * b2 + ten * a3 * b3,
            a0 * b1 + a1 * b0 + five * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + two * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        ])
    }

    /// Exact sign as an ordering against zero.
    pub fn signum(&self) -> Ordering {
        let [x0, x1, x2, x3] = self.0;
        let a = (x0, x1);
        let b = (x2, x3);
        let sa = sign_sqrt2(a);
        let sb = sign_sqrt2(b);
        if sa == sb || sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal {
            return sb;
        }
        let a2 = mul_sqrt2(a, a);
        let b2 = mul_sqrt2(b, b);
        let diff = sign_sqrt2((a2.0 - Q::from_integer(5) * b2.0, a2.1 - Q::from_integer(5) * b2.1));
        if sa == Ordering::Greater {
            diff
        } else {
            diff.reverse()
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// `2cos(π/m)` for `m ∈ {2,3,4,5}`.
    pub fn two_cos_pi_over(m: u32) -> Result<Self> {
        let h = Q::new(1, 2);
        Ok(match m {
            2 => QuadExt::zero(),
            3 => QuadExt::from_int(1),
            4 => QuadExt::new(Q::zero(), Q::one(), Q::zero(), Q::zero()),
            5 => QuadExt::new(h, Q::zero(), h, Q::zero()),
            _ => {
                return Err(Error::Unsupported(format!(
                    "reflection matrices over Q(√2, √5) need labels 2..5 (got {m})"
                )))
            }
        })
    }
}

fn sign_q(x: Q) -> Ordering {
    x.cmp(&Q::zero())
}

fn mul_sqrt2(a: (Q, Q), b: (Q, Q)) -> (Q, Q) {
    (a.0 * b.0 + Q::from_integer(2) * a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn sign_sqrt2((a, b): (Q, Q)) -> Ordering {
    let sa = sign_q(a);
    let sb = sign_q(b);
    if sa == sb || sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal {
        return sb;
    }
    let d = sign_q(a * a - Q::from_integer(2) * b * b);
    if sa == Ordering::Greater {
        d
    } else {
        d.reverse()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a} + {b}√2 + {c}√5 + {d}√10")
    }
}

type BigQ = Ratio<BigInt>;

/// The cyclotomic polynomial `Φ_n` (coefficients from the constant term up).
fn cyclotomic(n: u64) -> Vec<BigInt> {
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        num = poly_div_exact(&num, &cyclotomic(d));
    }
    num
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dl = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dl];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dl].clone() / &den[dl];
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "cyclotomic division is exact");
    quot
}

fn poly_mul(a: &[BigQ], b: &[BigQ]) -> Vec<BigQ> {
    let mut out = vec![BigQ::zero(); (a.len() + b.len()).saturating_sub(1)];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_eval(p: &[BigQ], x: &BigQ) -> BigQ {
    p.iter().rev().fold(BigQ::zero(), |acc, c| acc * x + c)
}

/// `C_k` with `C_k(z + 1/z) = z^k + z^{−k}`.
fn chebyshev(k: usize) -> Vec<BigQ> {
    let mut prev = vec![BigQ::from_integer(BigInt::from(2))];
    let mut cur = vec![BigQ::zero(), BigQ::one()];
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let mut next = poly_mul(&cur, &[BigQ::zero(), BigQ::one()]);
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

#[derive(Debug)]
struct CycloContext {
    /// Monic minimal polynomial of `x = 2cos(π/M)`.
    modulus: Vec<BigQ>,
    /// Isolating interval of `x` among the roots of `modulus`, refined in place.
    interval: Mutex<(BigQ, BigQ)>,
}

/// Element of `Q(2cos(π/M))`, stored as a polynomial in `x = 2cos(π/M)` of
/// degree below `[Q(x):Q]`.
#[derive(Debug, Clone)]
pub struct RealCyclotomic {
    coeffs: Vec<BigQ>,
    ctx: std::sync::Arc<CycloContext>,
}

impl PartialEq for RealCyclotomic {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs
    }
}

impl Eq for RealCyclotomic {}

impl std::hash::Hash for RealCyclotomic {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.coeffs.hash(h);
    }
}

impl RealCyclotomic {
    /// The field `Q(2cos(π/M))` for `6 ≤ M ≤ 10^5`, returned as `2cos(π/m)` for every `m` in `labels`.
    pub fn two_cos_table(labels: &[u32]) -> Result<(Self, Vec<Self>)> {
        let big = labels.iter().fold(1u64, |a, &m| num_integer::lcm(a, m as u64));
        if !(6..=100_000).contains(&big) {
            return Err(Error::Unsupported(format!("cyclotomic orbit field for lcm {big} of labels")));
        }
        let phi = cyclotomic(2 * big);
        let d = (phi.len() - 1) / 2;
        let mut psi = vec![BigQ::from_integer(phi[d].clone())];
        for k in 1..=d {
            let c = BigQ::from_integer(phi[d + k].clone());
            for (i, x) in chebyshev(k).into_iter().enumerate() {
                if i >= psi.len() {
                    psi.resize(i + 1, BigQ::zero());
                }
                psi[i] += &c * x;
            }
        }
        let lo = BigQ::from_float(2.0 * (2.0 * std::f64::consts::PI / big as f64).cos()).expect("finite");
        let hi = BigQ::from_integer(BigInt::from(2));
        let (slo, shi) = (poly_eval(&psi, &lo), poly_eval(&psi, &hi));
        if slo.is_zero() || shi.is_zero() || slo.is_positive() == shi.is_positive() {
            return Err(Error::Internal(format!("could not isolate 2cos(π/{big})")));
        }
        let ctx = std::sync::Arc::new(CycloContext { modulus: psi, interval: Mutex::new((lo, hi)) });
        let zero = RealCyclotomic { coeffs: Vec::new(), ctx: ctx.clone() };
        let values = labels
            .iter()
            .map(|&m| zero.from_poly(chebyshev((big / m as u64) as usize)))
            .collect();
        Ok((zero, values))
    }

    fn from_poly(&self, mut p: Vec<BigQ>) -> Self {
        let m = &self.ctx.modulus;
        let d = m.len() - 1;
        while p.len() > d {
            let top = p.pop().expect("nonempty");
            if !top.is_zero() {
                let shift = p.len() - d;
                for (i, c) in m.iter().take(d).enumerate() {
                    p[shift + i] -= &top * c;
                }
            }
        }
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        RealCyclotomic { coeffs: p, ctx: self.ctx.clone() }
    }

    pub fn from_int(&self, x: i64) -> Self {
        self.from_poly(vec![BigQ::from_integer(BigInt::from(x))])
    }

    #[cfg(test)]
    fn sub_int(&self, zero: &Self, x: i64) -> Self {
        OrbitScalar::add(self, &zero.from_int(-x))
    }

    /// Exact sign by interval evaluation on a shrinking isolating interval.
    pub fn signum(&self) -> Result<Ordering> {
        if self.coeffs.is_empty() {
            return Ok(Ordering::Equal);
        }
        let mut guard = self.ctx.interval.lock().expect("interval lock");
        for _ in 0..512 {
            let (lo, hi) = guard.clone();
            let (mut a, mut b) = (BigQ::zero(), BigQ::zero());
            let (mut plo, mut phi) = (BigQ::one(), BigQ::one());
            for c in &self.coeffs {
                if c.is_positive() {
                    a += c * &plo;
                    b += c * &phi;
                } else {
                    a += c * &phi;
                    b += c * &plo;
                }
                plo = plo * &lo;
                phi = phi * &hi;
            }
            if a.is_positive() {
                return Ok(Ordering::Greater);
            }
            if b.is_negative() {
                return Ok(Ordering::Less);
            }
            let mid = (&lo + &hi) / BigQ::from_integer(BigInt::from(2));
            let s_mid = poly_eval(&self.ctx.modulus, &mid);
            let s_lo = poly_eval(&self.ctx.modulus, &lo);
            *guard = if s_mid.is_zero() {
                (mid.clone(), mid)
            } else if s_mid.is_positive() == s_lo.is_positive() {
                (mid, hi)
            } else {
                (lo, mid)
            };
        }
        Err(Error::Internal("sign of a cyclotomic element not resolved".into()))
    }
}

/// Arithmetic needed by the orbit engine.
trait OrbitScalar: Clone + Eq + std::hash::Hash {
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn positive(&self) -> Result<bool>;
}

impl OrbitScalar for QuadExt {
    fn add(&self, o: &Self) -> Self {
        QuadExt::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        QuadExt::mul(self, o)
    }
    fn neg(&self) -> Self {
        QuadExt::neg(self)
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn positive(&self) -> Result<bool> {
        Ok(self.is_positive())
    }
}

impl OrbitScalar for RealCyclotomic {
    fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let p = (0..n)
            .map(|i| self.coeffs.get(i).cloned().unwrap_or_default() + o.coeffs.get(i).cloned().unwrap_or_default())
            .collect();
        self.from_poly(p)
    }
    fn mul(&self, o: &Self) -> Self {
        self.from_poly(poly_mul(&self.coeffs, &o.coeffs))
    }
    fn neg(&self) -> Self {
        RealCyclotomic { coeffs: self.coeffs.iter().map(|c| -c).collect(), ctx: self.ctx.clone() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn positive(&self) -> Result<bool> {
        Ok(self.signum()? == Ordering::Greater)
    }
}

/// Length and χ-weight of a minimal coset representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CosetRepWeight {
    pub length: u32,
    pub chi_weight: i64,
}

/// `Σ (−1)^length t^chi_weight`.
pub fn polynomial_of(reps: &[CosetRepWeight]) -> ZLaurent {
    let mut terms: HashMap<i64, i64> = HashMap::new();
    for r in reps {
        *terms.entry(r.chi_weight).or_default() += if r.length % 2 == 0 { 1 } else { -1 };
    }
    let list: Vec<(i64, i64)> = terms.into_iter().collect();
    ZLaurent::from_i64_terms(&list)
}

fn labels_of(g: &DefiningGraph, order: &[usize]) -> Vec<Vec<u32>> {
    order
        .iter()
        .map(|&u| order.iter().map(|&w| if u == w { 1 } else { g.label(u, w).unwrap_or(0) }).collect())
        .collect()
}

fn parabolic_order(g: &DefiningGraph, set: VertexSet) -> Result<u64> {
    let d = classify_clique(g, set)
        .ok_or_else(|| Error::Internal(format!("parabolic {} is not spherical", g.format_set(set))))?;
    Ok(d.components.iter().map(|c| c.kind.group_order()).product())
}

fn component_of(g: &DefiningGraph, x: VertexSet, v: usize) -> Result<Component> {
    if x & bit(v) == 0 {
        return Err(Error::Validation(format!("vertex {} is not in {}", g.name(v), g.format_set(x))));
    }
    let d = classify_clique(g, x)
        .ok_or_else(|| Error::Validation(format!("{} is not spherical", g.format_set(x))))?;
    Ok(d.component_of(v).expect("v lies in x").clone())
}

/// Orbit of `ω_v` under the geometric representation, explored level by
/// level along length-increasing simple reflections.
fn orbit_reps(labels: &[Vec<u32>], pos: usize, chi: &[i64]) -> Result<Vec<CosetRepWeight>> {
    let n = labels.len();
    let off: Vec<u32> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| labels[i][j]).collect();
    if off.iter().all(|&m| (2..=5).contains(&m)) {
        let mut cos = vec![vec![QuadExt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    cos[i][j] = QuadExt::two_cos_pi_over(labels[i][j])?;
                }
            }
        }
        orbit_in(&cos, QuadExt::zero(), QuadExt::from_int(1), pos, chi)
    } else {
        let (zero, values) = RealCyclotomic::two_cos_table(&off)?;
        let mut cos = vec![vec![zero.clone(); n]; n];
        let mut it = values.into_iter();
        for (i, row) in cos.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                if i != j {
                    *slot = it.next().expect("one value per off-diagonal label");
                }
            }
        }
        let one = zero.from_int(1);
        orbit_in(&cos, zero, one, pos, chi)
    }
}

fn orbit_in<S: OrbitScalar>(cos: &[Vec<S>], zero: S, one: S, pos: usize, chi: &[i64]) -> Result<Vec<CosetRepWeight>> {
    let n = cos.len();
    let mut start = vec![zero; n];
    start[pos] = one;
    let mut out = vec![CosetRepWeight { length: 0, chi_weight: 0 }];
    let mut level: Vec<(Vec<S>, i64)> = vec![(start, 0)];
    let mut length = 0;
    while !level.is_empty() {
        length += 1;
        let mut next: Vec<(Vec<S>, i64)> = Vec::new();
        let mut index: HashMap<Vec<S>, usize> = HashMap::new();
        for (p, w) in &level {
            for i in 0..n {
                if !p[i].positive()? {
                    continue;
                }
                let mut q = p.clone();
                q[i] = p[i].neg();
                for j in 0..n {
                    if j != i && !cos[i][j].is_zero() {
                        q[j] = q[j].add(&p[i].mul(&cos[i][j]));
                    }
                }
                let weight = w + chi[i];
                match index.get(&q) {
                    Some(&k) => {
                        if next[k].1 != weight {
                            return Err(Error::Internal(format!(
                                "orbit point reached with χ-weights {} and {weight}",
                                next[k].1
                            )));
                        }
                    }
                    None => {
                        index.insert(q.clone(), next.len());
                        next.push((q, weight));
                    }
                }
            }
        }
        out.extend(next.iter().map(|(_, w)| CosetRepWeight { length, chi_weight: *w }));
        level = next;
    }
    Ok(out)
}

/// Minimal coset representatives of `W_X / W_{X∖v}` for an irreducible
/// spherical `X`, computed by the orbit engine.
pub fn minimal_coset_reps(
    g: &DefiningGraph,
    x: VertexSet,
    v: usize,
    chi: &Character,
) -> Result<Vec<CosetRepWeight>> {
    let comp = component_of(g, x, v)?;
    if comp.set != x {
        return Err(Error::Validation(format!("{} is not irreducible", g.format_set(x))));
    }
    reps_for_component(g, &comp, v, chi)
}

fn reps_for_component(g: &DefiningGraph, comp: &Component, v: usize, chi: &Character) -> Result<Vec<CosetRepWeight>> {
    let labels = labels_of(g, &comp.order);
    let pos = comp.order.iter().position(|&u| u == v).expect("v in component");
    let values: Vec<i64> = comp.order.iter().map(|&u| chi.value(u)).collect();
    let reps = orbit_reps(&labels, pos, &values)?;
    let expected = comp.kind.group_order() / parabolic_order(g, comp.set & !bit(v))?;
    if reps.len() as u64 != expected {
        return Err(Error::Internal(format!(
            "orbit of size {} but |W_X|/|W_X_v| = {expected}",
            reps.len()
        )));
    }
    Ok(reps)
}

fn dihedral_closed_form(k: u32, chi_v: i64, chi_s: i64) -> ZLaurent {
    let terms: Vec<(i64, i64)> = (0..k as i64)
        .map(|l| ((l + 1) / 2 * chi_v + l / 2 * chi_s, if l % 2 == 0 { 1 } else { -1 }))
        .collect();
    ZLaurent::from_i64_terms(&terms)
}

fn type_a_closed_form(m: u32, pos: u32, c: i64) -> ZLaurent {
    q_binomial(m + 1, pos).subst_monomial(-1, c)
}

/// Signed Poincaré polynomial of `B_j × A_k` (generators `b1..bj`, then `k`
/// further generators carrying the variable `q`).
fn type_b_poincare(j: u32, k: u32) -> BiLaurent {
    let q = BiLaurent::monomial(ZLaurent::t_pow(1), 0);
    let t = BiLaurent::t_pow(1);
    double_factorial_2m(j, &q, &t).mul(&q_factorial(k + 1, &q))
}

fn type_b_closed_form(m: u32, pos: u32, chi_b1: i64, chi_b2: i64) -> ZLaurent {
    let whole = type_b_poincare(m, 0);
    let part = type_b_poincare(pos - 1, m - pos);
    let quotient = whole.div_exact(&part).expect("parabolic Poincaré series divide");
    quotient.subst_monomials(-1, chi_b2, -1, chi_b1)
}

type CacheKey = (SphericalKind, Vec<Vec<u32>>, Vec<i64>, usize);

fn cache() -> &'static Mutex<HashMap<CacheKey, ZLaurent>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, ZLaurent>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `χ(T_X^{X_v})` for an irreducible spherical component, by closed form
/// where one exists and by the orbit engine otherwise.
pub fn t_polynomial_component(g: &DefiningGraph, comp: &Component, v: usize, chi: &Character) -> Result<ZLaurent> {
    let pos = comp
        .order
        .iter()
        .position(|&u| u == v)
        .ok_or_else(|| Error::Validation(format!("vertex {} is not in {}", g.name(v), g.format_set(comp.set))))?;
    let values: Vec<i64> = comp.order.iter().map(|&u| chi.value(u)).collect();
    let key = (comp.kind, labels_of(g, &comp.order), values.clone(), pos);
    if let Some(p) = cache().lock().expect("cache lock").get(&key) {
        return Ok(p.clone());
    }
    let poly = match comp.kind {
        SphericalKind::A(1) => ZLaurent::one().sub(&ZLaurent::t_pow(values[0])),
        SphericalKind::I2(k) => dihedral_closed_form(k, values[pos], values[1 - pos]),
        SphericalKind::A(m) => type_a_closed_form(m, pos as u32 + 1, values[0]),
        SphericalKind::B(m) => type_b_closed_form(m, pos as u32 + 1, values[0], values[1]),
        _ => polynomial_of(&reps_for_component(g, comp, v, chi)?),
    };
    cache().lock().expect("cache lock").insert(key, poly.clone());
    Ok(poly)
}

/// `χ(T_X^{X_v})` for any spherical `X ∋ v`; only the component of `v` contributes.
pub fn t_polynomial(g: &DefiningGraph, x: VertexSet, v: usize, chi: &Character) -> Result<ZLaurent> {
    let comp = component_of(g, x, v)?;
    t_polynomial_component(g, &comp, v, chi)
}

/// `χ(T_X^{X_v})` reduced over `field`.
pub fn t_polynomial_in(g: &DefiningGraph, x: VertexSet, v: usize, chi: &Character, field: Field) -> Result<FieldLaurent> {
    Ok(FieldLaurent::from_integral(&t_polynomial(g, x, v, chi)?, field))
}

/// `χ(T_X^{X_v})` through the orbit engine regardless of type.
pub fn t_polynomial_generic(g: &DefiningGraph, x: VertexSet, v: usize, chi: &Character) -> Result<ZLaurent> {
    let comp = component_of(g, x, v)?;
    Ok(polynomial_of(&reps_for_component(g, &comp, v, chi)?))
}

/// One element of a finite Coxeter group found by breadth-first search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub length: u32,
    /// Letter counts of one reduced word, indexed like the generator list.
    pub letter_counts: Vec<u32>,
    /// Index of `w s_i` for every generator `i`.
    pub right: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct GroupTable {
    pub generators: Vec<usize>,
    pub elements: Vec<GroupElement>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn longest_length(&self) -> u32 {
        self.elements.iter().map(|e| e.length).max().unwrap_or(0)
    }

    /// Elements `w` with `l(ws) > l(w)` for every generator `s ∈ keep`.
    pub fn minimal_reps(&self, keep: VertexSet, chi: &[i64]) -> Vec<CosetRepWeight> {
        let positions: Vec<usize> =
            (0..self.generators.len()).filter(|&i| keep & bit(self.generators[i]) != 0).collect();
        let mut out: Vec<CosetRepWeight> = self
            .elements
            .iter()
            .filter(|e| positions.iter().all(|&i| self.elements[e.right[i]].length > e.length))
            .map(|e| CosetRepWeight {
                length: e.length,
                chi_weight: e.letter_counts.iter().zip(chi).map(|(&c, &x)| c as i64 * x).sum(),
            })
            .collect();
        out.sort();
        out
    }
}

fn bfs_table<E: Clone + Eq + std::hash::Hash>(
    generators: Vec<usize>,
    identity: E,
    gens: &[E],
    compose: impl Fn(&E, &E) -> E,
    bound: usize,
) -> Result<GroupTable> {
    let n = gens.len();
    let mut index: HashMap<E, usize> = HashMap::new();
    let mut items: Vec<E> = vec![identity.clone()];
    let mut elements = vec![GroupElement { length: 0, letter_counts: vec![0; n], right: vec![usize::MAX; n] }];
    index.insert(identity, 0);
    let mut head = 0;
    while head < items.len() {
        let cur = items[head].clone();
        for i in 0..n {
            let nxt = compose(&cur, &gens[i]);
            let k = match index.get(&nxt) {
                Some(&k) => k,
                None => {
                    if items.len() >= bound {
                        return Err(Error::Unsupported(format!("group order exceeds the bound {bound}")));
                    }
                    let mut counts = elements[head].letter_counts.clone();
                    counts[i] += 1;
                    let k = items.len();
                    elements.push(GroupElement { length: elements[head].length + 1, letter_counts: counts, right: vec![usize::MAX; n] });
                    index.insert(nxt.clone(), k);
                    items.push(nxt);
                    k
                }
            };
            elements[head].right[i] = k;
        }
        head += 1;
    }
    Ok(GroupTable { generators, elements })
}

/// Full element table of `W_X` from exact reflection matrices.
pub fn brute_force_group_oracle(g: &DefiningGraph, x: VertexSet, bound: usize) -> Result<GroupTable> {
    let gens_idx: Vec<usize> = members(x).collect();
    let n = gens_idx.len();
    let labels = labels_of(g, &gens_idx);
    let mut mats = Vec::new();
    for i in 0..n {
        let mut m = vec![QuadExt::zero(); n * n];
        for j in 0..n {
            m[j * n + j] = QuadExt::from_int(1);
        }
        // s_i(α_j) = α_j + 2cos(π/m_ij) α_i, stored column-wise.
        for j in 0..n {
            let c = if i == j { QuadExt::from_int(-2) } else { QuadExt::two_cos_pi_over(labels[i][j])? };
            m[i * n + j] = m[i * n + j].add(&c);
        }
        mats.push(m);
    }
    let mut identity = vec![QuadExt::zero(); n * n];
    for j in 0..n {
        identity[j * n + j] = QuadExt::from_int(1);
    }
    let compose = |a: &Vec<QuadExt>, b: &Vec<QuadExt>| {
        let mut c = vec![QuadExt::zero(); n * n];
        for r in 0..n {
            for k in 0..n {
                if a[r * n + k].is_zero() {
                    continue;
                }
                for col in 0..n {
                    if !b[k * n + col].is_zero() {
                        c[r * n + col] = c[r * n + col].add(&a[r * n + k].mul(&b[k * n + col]));
                    }
                }
            }
        }
        c
    };
    bfs_table(gens_idx, identity, &mats, compose, bound)
}

/// Dihedral group of order `2k` as pairs `(ε, c)` acting by `i ↦ εi + c` on `Z/k`.
pub fn dihedral_group_oracle(g: &DefiningGraph, x: VertexSet) -> Result<GroupTable> {
    let gens_idx: Vec<usize> = members(x).collect();
    if gens_idx.len() != 2 {
        return Err(Error::Validation(format!("{} is not a dihedral pair", g.format_set(x))));
    }
    let k = g
        .label(gens_idx[0], gens_idx[1])
        .ok_or_else(|| Error::Validation(format!("{} is not spherical", g.format_set(x))))? as i64;
    let compose = move |a: &(i64, i64), b: &(i64, i64)| (a.0 * b.0, (a.1 + a.0 * b.1).rem_euclid(k));
    bfs_table(gens_idx, (1, 0), &[(-1, 0), (-1, 1)], compose, usize::MAX)
}

/// Reference polynomial from a group table.
pub fn oracle_t_polynomial(table: &GroupTable, x: VertexSet, v: usize, chi: &Character) -> ZLaurent {
    let values: Vec<i64> = table.generators.iter().map(|&u| chi.value(u)).collect();
    polynomial_of(&table.minimal_reps(x & !bit(v), &values))
}

/// Constant term of a Laurent polynomial.
pub fn constant_term(p: &ZLaurent) -> BigInt {
    p.coeff(0).cloned().unwrap_or_else(BigInt::zero)
}

/// True when the polynomial is `±1`.
pub fn is_plus_minus_one(p: &ZLaurent) -> bool {
    p.is_monomial() && p.low_degree() == Some(0) && p.leading().map(|c| c.abs().is_one()).unwrap_or(false)
}
