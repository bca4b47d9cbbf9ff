//! Exact Laurent polynomials over `Z`, `Q` and `F_p`, rational functions,
//! q-combinatorics and ranks of Laurent matrices over the fraction field.
//!
//! Polynomials over `Q` are stored with integer coefficients: every
//! coefficient that arises from the chain complexes is integral, and
//! fraction-free elimination keeps them integral.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring of a Laurent polynomial: an integral domain with exact division.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / o` when the quotient exists in the ring.
    fn div_exact(&self, o: &Self) -> Option<Self>;
}

/// Coefficient rings with a context-free unit.
pub trait Unital: Coeff {
    fn one() -> Self;
}

impl Coeff for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        let (q, r) = self.div_rem(o);
        if Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }
}

impl Unital for BigInt {
    fn one() -> Self {
        One::one()
    }
}

/// Element of the prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(x: i64, p: u64) -> Fp {
        Fp { v: x.rem_euclid(p as i64) as u64, p }
    }
    pub fn from_bigint(x: &BigInt, p: u64) -> Fp {
        let r = x.mod_floor(&BigInt::from(p));
        Fp { v: r.try_into().expect("residue fits in u64"), p }
    }
    pub fn value(&self) -> u64 {
        self.v
    }
    pub fn modulus(&self) -> u64 {
        self.p
    }
    fn pow(&self, mut e: u64) -> Fp {
        let mut base = self.v as u128;
        let mut acc: u128 = 1;
        let p = self.p as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp { v: acc as u64, p: self.p }
    }
    pub fn inv(&self) -> Option<Fp> {
        if self.v == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }
}

impl Coeff for Fp {
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp { v: ((self.v as u128 + o.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        Fp { v: ((self.v as u128 + self.p as u128 - o.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp { v: ((self.v as u128 * o.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { v: (self.p - self.v) % self.p, p: self.p }
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
}

/// Laurent polynomial `Σ c_i t^(low + i)`; zero is the empty coefficient list.
#[derive(Clone, PartialEq)]
pub struct Laurent<C> {
    low: i64,
    coeffs: Vec<C>,
}

pub type ZLaurent = Laurent<BigInt>;
pub type FpLaurent = Laurent<Fp>;
/// Polynomials in two variables: outer variable `t`, coefficients in `q`.
pub type BiLaurent = Laurent<ZLaurent>;

impl<C: Coeff> Laurent<C> {
    pub fn zero() -> Self {
        Laurent { low: 0, coeffs: Vec::new() }
    }

    pub fn monomial(c: C, exp: i64) -> Self {
        Laurent::from_coeffs(exp, vec![c])
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<C>) -> Self {
        let mut p = Laurent { low, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Number of coefficient slots between lowest and highest degree.
    pub fn span(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, exp: i64) -> Option<&C> {
        if exp < self.low {
            return None;
        }
        self.coeffs.get((exp - self.low) as usize).filter(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    fn combine(&self, o: &Self, subtract: bool) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { o.neg() } else { o.clone() };
        }
        let low = self.low.min(o.low);
        let high = self.high_degree().unwrap().max(o.high_degree().unwrap());
        let mut coeffs = Vec::with_capacity((high - low + 1) as usize);
        for e in low..=high {
            let a = self.slot(e);
            let b = o.slot(e);
            let c = match (a, b) {
                (Some(a), Some(b)) => {
                    if subtract {
                        a.sub(b)
                    } else {
                        a.add(b)
                    }
                }
                (Some(a), None) => a.clone(),
                (None, Some(b)) => {
                    if subtract {
                        b.neg()
                    } else {
                        b.clone()
                    }
                }
                (None, None) => {
                    // Only reachable for gaps between the two supports; reuse a zero.
                    let any = self.coeffs[0].clone();
                    any.sub(&any)
                }
            };
            coeffs.push(c);
        }
        Laurent::from_coeffs(low, coeffs)
    }

    fn slot(&self, e: i64) -> Option<&C> {
        if e < self.low {
            None
        } else {
            self.coeffs.get((e - self.low) as usize)
        }
    }

    pub fn neg(&self) -> Self {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        let zero = self.coeffs[0].sub(&self.coeffs[0]);
        let mut coeffs = vec![zero; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Laurent::from_coeffs(self.low + o.low, coeffs)
    }

    pub fn scale(&self, c: &C) -> Self {
        Laurent::from_coeffs(self.low, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Exact quotient in the Laurent ring, if it exists.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let lead = d.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let dn = d.coeffs.len();
        if rem.len() < dn {
            return None;
        }
        let qn = rem.len() - dn + 1;
        let mut q: Vec<Option<C>> = vec![None; qn];
        for k in (0..qn).rev() {
            let top = &rem[k + dn - 1];
            if top.is_zero() {
                continue;
            }
            let c = top.div_exact(lead)?;
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] = rem[k + j].sub(&c.mul(dc));
                }
            }
            q[k] = Some(c);
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let zero = lead.sub(lead);
        let coeffs = q.into_iter().map(|c| c.unwrap_or_else(|| zero.clone())).collect();
        Some(Laurent::from_coeffs(self.low - d.low, coeffs))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        Laurent::from_coeffs(self.low, self.coeffs.iter().map(f).collect())
    }

    /// True when the polynomial is `c t^k` for a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms().count() == 1
    }
}

impl<C: Unital> Laurent<C> {
    pub fn one() -> Self {
        Laurent::monomial(C::one(), 0)
    }

    pub fn t_pow(k: i64) -> Self {
        Laurent::monomial(C::one(), k)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Laurent::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `1 - t^k`.
    pub fn one_minus_t_pow(k: i64) -> Self {
        Laurent::one().sub(&Laurent::t_pow(k))
    }
}

impl<C: Coeff> Coeff for Laurent<C> {
    fn is_zero(&self) -> bool {
        Laurent::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Laurent::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Laurent::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Laurent::mul(self, o)
    }
    fn neg(&self) -> Self {
        Laurent::neg(self)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        Laurent::div_exact(self, o)
    }
}

impl<C: Unital> Unital for Laurent<C> {
    fn one() -> Self {
        Laurent::one()
    }
}

impl ZLaurent {
    pub fn from_i64_terms(terms: &[(i64, i64)]) -> ZLaurent {
        terms.iter().fold(ZLaurent::zero(), |acc, &(e, c)| acc.add(&ZLaurent::monomial(BigInt::from(c), e)))
    }

    /// Substitute `t ↦ sign · t^exp`.
    pub fn subst_monomial(&self, sign: i64, exp: i64) -> ZLaurent {
        let mut out = ZLaurent::zero();
        for (e, c) in self.terms() {
            let s = if sign < 0 && e.rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
            out = out.add(&ZLaurent::monomial(s, e * exp));
        }
        out
    }

    pub fn reduce_mod(&self, p: u64) -> FpLaurent {
        self.map_coeffs(|c| Fp::from_bigint(c, p))
    }

    pub fn content(&self) -> BigInt {
        self.terms().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c))
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms().fold(BigInt::zero(), |acc, (_, c)| acc + c)
    }
}

impl BiLaurent {
    /// Substitute `q ↦ sq · t^eq` and `t ↦ st · t^et` into `Σ_j t^j c_j(q)`.
    pub fn subst_monomials(&self, sq: i64, eq: i64, st: i64, et: i64) -> ZLaurent {
        let mut out = ZLaurent::zero();
        for (j, c) in self.terms() {
            let inner = c.subst_monomial(sq, eq);
            let sign = if st < 0 && j.rem_euclid(2) == 1 { -1 } else { 1 };
            out = out.add(&inner.shift(j * et).scale(&BigInt::from(sign)));
        }
        out
    }
}

impl<C: Coeff> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = mag != "1" || e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{}", if show_coeff { "*" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

/// Coefficient field of a kernel computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// `0` stands for `Q`, a prime `p` for `F_p`.
    pub fn from_code(code: u64) -> Result<Field> {
        match code {
            0 => Ok(Field::Rational),
            p if is_prime(p) => Ok(Field::Prime(p)),
            other => Err(Error::Validation(format!("{other} is neither 0 nor a prime"))),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = Error;

    /// `Q`, `F<p>`, or a field code (`0` or a prime).
    fn from_str(text: &str) -> Result<Field> {
        let t = text.trim();
        if t == "Q" {
            return Ok(Field::Rational);
        }
        let digits = t.strip_prefix('F').unwrap_or(t);
        let code = digits.parse::<u64>().map_err(|_| Error::Parse(format!("invalid field `{text}`")))?;
        if t.starts_with('F') && code == 0 {
            return Err(Error::Parse(format!("invalid field `{text}`")));
        }
        Field::from_code(code)
    }
}

impl From<Field> for String {
    fn from(f: Field) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for Field {
    type Error = Error;

    fn try_from(s: String) -> Result<Field> {
        s.parse()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A Laurent polynomial over a chosen field, integer coefficients standing for `Q`.
#[derive(Clone, PartialEq, Debug)]
pub enum FieldLaurent {
    Rational(ZLaurent),
    Prime(FpLaurent),
}

impl FieldLaurent {
    pub fn from_integral(z: &ZLaurent, field: Field) -> FieldLaurent {
        match field {
            Field::Rational => FieldLaurent::Rational(z.clone()),
            Field::Prime(p) => FieldLaurent::Prime(z.reduce_mod(p)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldLaurent::Rational(z) => z.is_zero(),
            FieldLaurent::Prime(z) => z.is_zero(),
        }
    }
}

impl fmt::Display for FieldLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldLaurent::Rational(z) => write!(f, "{z}"),
            FieldLaurent::Prime(z) => write!(f, "{z}"),
        }
    }
}

/// `[m]_q = 1 + q + … + q^(m-1)`.
pub fn q_int<C: Unital>(m: u32, q: &Laurent<C>) -> Laurent<C> {
    let mut acc = Laurent::zero();
    let mut power = Laurent::one();
    for _ in 0..m {
        acc = acc.add(&power);
        power = power.mul(q);
    }
    acc
}

/// `[m]_q! = [1]_q [2]_q … [m]_q`.
pub fn q_factorial<C: Unital>(m: u32, q: &Laurent<C>) -> Laurent<C> {
    (1..=m).fold(Laurent::one(), |acc, i| acc.mul(&q_int(i, q)))
}

/// `[2m]_{q,t}!! = [m]_q! Π_{i=0}^{m-1} (1 + t q^i)`.
pub fn double_factorial_2m<C: Unital>(m: u32, q: &Laurent<C>, t: &Laurent<C>) -> Laurent<C> {
    let mut acc = q_factorial(m, q);
    let mut qi = Laurent::one();
    for _ in 0..m {
        acc = acc.mul(&Laurent::one().add(&t.mul(&qi)));
        qi = qi.mul(q);
    }
    acc
}

/// Gaussian binomial `[n]_q! / ([k]_q! [n-k]_q!)` as a polynomial in `q`.
pub fn q_binomial(n: u32, k: u32) -> ZLaurent {
    let q = ZLaurent::t_pow(1);
    let num = q_factorial(n, &q);
    let den = q_factorial(k, &q).mul(&q_factorial(n - k, &q));
    num.div_exact(&den).expect("Gaussian binomials are polynomials")
}

/// Dense matrix with Laurent polynomial entries.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentMatrix<C: Coeff> {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Laurent<C>>,
}

impl<C: Coeff> LaurentMatrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix { rows, cols, entries: vec![Laurent::zero(); rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> &Laurent<C> {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Laurent<C>) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix shapes must agree");
        let mut out = LaurentMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&Laurent<C>) -> Laurent<D>) -> LaurentMatrix<D> {
        LaurentMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    /// Rank over the fraction field, by fraction-free (Bareiss) elimination.
    pub fn rank_over_fraction_field(&self) -> usize {
        let (m, n) = (self.rows, self.cols);
        let mut a: Vec<Vec<Laurent<C>>> =
            (0..m).map(|r| (0..n).map(|c| self.get(r, c).clone()).collect()).collect();
        let mut prev: Option<Laurent<C>> = None;
        let mut rank = 0;
        for col in 0..n {
            if rank == m {
                break;
            }
            let pivot = (rank..m).filter(|&r| !a[r][col].is_zero()).min_by_key(|&r| a[r][col].span());
            let Some(p) = pivot else { continue };
            a.swap(rank, p);
            let piv = a[rank][col].clone();
            for r in rank + 1..m {
                let factor = a[r][col].clone();
                for c in col + 1..n {
                    let mut v = piv.mul(&a[r][c]);
                    if !factor.is_zero() && !a[rank][c].is_zero() {
                        v = v.sub(&factor.mul(&a[rank][c]));
                    }
                    if let Some(d) = &prev {
                        v = v.div_exact(d).expect("Bareiss quotients are exact");
                    }
                    a[r][c] = v;
                }
                a[r][col] = Laurent::zero();
            }
            prev = Some(piv);
            rank += 1;
        }
        rank
    }
}

impl LaurentMatrix<BigInt> {
    pub fn reduce_mod(&self, p: u64) -> LaurentMatrix<Fp> {
        self.map(|e| e.reduce_mod(p))
    }

    /// Rank over `F(t)` for the requested field `F`.
    pub fn rank_in_field(&self, field: Field) -> usize {
        match field {
            Field::Rational => self.rank_over_fraction_field(),
            Field::Prime(p) => self.reduce_mod(p).rank_over_fraction_field(),
        }
    }
}

/// Polynomial gcd with a canonical normalization, used by rational functions.
pub trait GcdCoeff: Coeff + fmt::Display {
    /// Gcd of two nonzero polynomials, normalized, lowest degree 0.
    fn poly_gcd(a: &Laurent<Self>, b: &Laurent<Self>) -> Laurent<Self>;
    /// Unit `u` such that `den / u` is in canonical form.
    fn canonical_unit(den: &Laurent<Self>) -> Self;
}

fn strip_low<C: Coeff>(a: &Laurent<C>) -> Laurent<C> {
    match a.low_degree() {
        Some(l) => a.shift(-l),
        None => Laurent::zero(),
    }
}

impl GcdCoeff for Fp {
    fn poly_gcd(a: &FpLaurent, b: &FpLaurent) -> FpLaurent {
        let mut x = strip_low(a);
        let mut y = strip_low(b);
        while !y.is_zero() {
            let r = poly_rem_field(&x, &y);
            x = y;
            y = strip_low(&r);
        }
        let lead_inv = x.leading().unwrap().inv().unwrap();
        x.scale(&lead_inv)
    }
    fn canonical_unit(den: &FpLaurent) -> Fp {
        *den.leading().unwrap()
    }
}

fn poly_rem_field(a: &FpLaurent, b: &FpLaurent) -> FpLaurent {
    let mut r = a.clone();
    let bh = b.high_degree().unwrap();
    let binv = b.leading().unwrap().inv().unwrap();
    while let Some(rh) = r.high_degree() {
        if rh < bh || r.low_degree().unwrap() < b.low_degree().unwrap() {
            break;
        }
        let c = r.leading().unwrap().mul(&binv);
        r = r.sub(&b.shift(rh - bh).scale(&c));
    }
    r
}

impl GcdCoeff for BigInt {
    fn poly_gcd(a: &ZLaurent, b: &ZLaurent) -> ZLaurent {
        let ca = a.content();
        let cb = b.content();
        let c = ca.gcd(&cb);
        let mut x = primitive(&strip_low(a));
        let mut y = primitive(&strip_low(b));
        if x.high_degree() < y.high_degree() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            let r = pseudo_rem(&x, &y);
            x = y;
            y = if r.is_zero() { r } else { primitive(&strip_low(&r)) };
        }
        let g = x.scale(&c);
        if g.leading().unwrap().is_negative() {
            g.neg()
        } else {
            g
        }
    }
    fn canonical_unit(den: &ZLaurent) -> BigInt {
        if Signed::is_negative(den.leading().unwrap()) {
            -BigInt::from(1)
        } else {
            BigInt::from(1)
        }
    }
}

fn primitive(a: &ZLaurent) -> ZLaurent {
    let c = a.content();
    if Zero::is_zero(&c) {
        return a.clone();
    }
    a.map_coeffs(|x| x / &c)
}

fn pseudo_rem(a: &ZLaurent, b: &ZLaurent) -> ZLaurent {
    let mut r = a.clone();
    let bh = b.high_degree().unwrap();
    let bl = b.leading().unwrap().clone();
    while let Some(rh) = r.high_degree() {
        if rh < bh {
            break;
        }
        let c = r.leading().unwrap().clone();
        r = r.scale(&bl).sub(&b.shift(rh - bh).scale(&c));
    }
    r
}

/// Reduced fraction `num / den` of Laurent polynomials.
///
/// Canonical form: numerator and denominator coprime, denominator of lowest
/// degree 0 with a canonical leading coefficient (monic over `F_p`, positive
/// over `Z`).
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<C: Coeff> {
    pub num: Laurent<C>,
    pub den: Laurent<C>,
}

impl<C: GcdCoeff> RatFunc<C> {
    pub fn new(num: Laurent<C>, den: Laurent<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Internal("rational function with zero denominator".into()));
        }
        if num.is_zero() {
            let one_den = den.div_exact(&den).expect("nonzero divides itself");
            return Ok(RatFunc { num, den: strip_low(&one_den) });
        }
        let g = C::poly_gcd(&num, &den);
        let mut n = num.div_exact(&g).expect("gcd divides");
        let mut d = den.div_exact(&g).expect("gcd divides");
        let shift = d.low_degree().unwrap();
        d = d.shift(-shift);
        n = n.shift(-shift);
        let u = C::canonical_unit(&d);
        let ul = Laurent::monomial(u, 0);
        n = n.div_exact(&ul).expect("unit");
        d = d.div_exact(&ul).expect("unit");
        Ok(RatFunc { num: n, den: d })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.num.is_zero() {
            return Err(Error::Internal("division by the zero rational function".into()));
        }
        RatFunc::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        RatFunc::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    /// True when the value is `±t^k` times a unit of the coefficient field.
    pub fn is_unit_monomial(&self) -> bool {
        self.num.is_monomial() && self.den.is_monomial()
    }
}

impl<C: GcdCoeff> fmt::Display for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_monomial() && self.den.low_degree() == Some(0) && self.den.leading().map(|c| c.to_string()) == Some("1".into()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
