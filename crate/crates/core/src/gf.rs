//! Exact arithmetic in GF(p^m) for odd primes p.
//!
//! Elements are kept in log form (`Zero` or `Pow(e)`, meaning γ^e) and
//! addition goes through a Zech-logarithm table. The integer encoding of an
//! element is its coefficient vector in base p (constant term least
//! significant); it defines the element ordering used to pick γ.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("field size {p}^{m} exceeds the cap of 2^20 elements")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("field of size {0} is not a square field")]
    NotASquareField(u64),
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    BadModulus(u32),
    #[error("cannot parse field element {0:?}")]
    ParseElement(String),
    #[error("cannot parse field spec {0:?} (expected \"p^m\" or a prime power)")]
    ParseField(String),
    #[error("integer encoding {0} is outside the field")]
    OutOfRange(u64),
}

/// A field element: zero or a power of the primitive element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fq {
    Zero,
    Pow(u32),
}

impl Fq {
    pub fn is_zero(self) -> bool {
        self == Fq::Zero
    }

    /// Discrete log, `None` for zero.
    pub fn log(self) -> Option<u32> {
        match self {
            Fq::Zero => None,
            Fq::Pow(e) => Some(e),
        }
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fq::Zero => write!(f, "0"),
            Fq::Pow(e) => write!(f, "g^{e}"),
        }
    }
}

impl Serialize for Fq {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_element_unreduced(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses "0", "1", "g" or "g^e" without reducing the exponent.
/// Negative exponents are rejected here; use [`FieldCtx::parse_element`].
fn parse_element_unreduced(s: &str) -> Result<Fq, GfError> {
    let t = s.trim();
    match t {
        "0" => return Ok(Fq::Zero),
        "1" => return Ok(Fq::Pow(0)),
        "g" => return Ok(Fq::Pow(1)),
        _ => {}
    }
    t.strip_prefix("g^")
        .and_then(|e| e.parse::<u32>().ok())
        .map(Fq::Pow)
        .ok_or_else(|| GfError::ParseElement(s.to_string()))
}

impl FromStr for Fq {
    type Err = GfError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_element_unreduced(s)
    }
}

/// GF(p^m) with fixed modulus, primitive element and log tables.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    gamma_int: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("gamma", &self.gamma_int)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus && self.gamma_int == other.gamma_int
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds GF(p^m) with the lexicographically smallest monic irreducible
    /// modulus and the smallest primitive element.
    pub fn new(p: u64, m: u32) -> Result<Self, GfError> {
        check_params(p, m)?;
        let p32 = p as u32;
        let modulus = smallest_irreducible(p32, m);
        Self::build(p32, m, modulus)
    }

    /// Builds GF(p^m) from an explicit monic modulus given as coefficients
    /// c_0..c_m (constant term first).
    pub fn with_modulus(p: u64, m: u32, modulus: &[u32]) -> Result<Self, GfError> {
        check_params(p, m)?;
        let p32 = p as u32;
        if modulus.len() != m as usize + 1
            || modulus[m as usize] != 1
            || modulus.iter().any(|&c| c >= p32)
            || !is_irreducible(p32, modulus)
        {
            return Err(GfError::BadModulus(m));
        }
        Self::build(p32, m, modulus.to_vec())
    }

    /// Parses "p^m" or a plain prime power such as "81".
    pub fn parse(spec: &str) -> Result<Self, GfError> {
        let (p, m) = parse_field_spec(spec)?;
        Self::new(p, m)
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>) -> Result<Self, GfError> {
        let q = p.pow(m);
        let n = q - 1;
        let arith = PolyArith { p, m, modulus: &modulus };
        let factors = prime_factors(n as u64);
        let gamma_int = (1..q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| arith.pow(g, (n as u64) / r) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![NO_LOG; q as usize];
        let mut x = 1u32;
        for e in 0..n {
            exp.push(x);
            log[x as usize] = e;
            x = arith.mul(x, gamma_int);
        }
        debug_assert_eq!(x, 1);
        let zech = exp
            .iter()
            .map(|&x| {
                let c0 = x % p;
                let y = x - c0 + (c0 + 1) % p;
                if y == 0 {
                    NO_LOG
                } else {
                    log[y as usize]
                }
            })
            .collect();
        Ok(FieldCtx { p, m, q, modulus, gamma_int, exp, log, zech })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of elements.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group, q − 1.
    pub fn order(&self) -> u32 {
        self.q - 1
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Integer encoding of the primitive element.
    pub fn gamma_int(&self) -> u32 {
        self.gamma_int
    }

    /// The field spec string "p^m".
    pub fn spec(&self) -> String {
        format!("{}^{}", self.p, self.m)
    }

    pub fn gamma(&self) -> Fq {
        Fq::Pow(1 % self.order())
    }

    pub fn zero(&self) -> Fq {
        Fq::Zero
    }

    pub fn one(&self) -> Fq {
        Fq::Pow(0)
    }

    /// γ^e for any integer e.
    pub fn gamma_pow(&self, e: i64) -> Fq {
        Fq::Pow(e.rem_euclid(self.order() as i64) as u32)
    }

    /// Brings an element with an unreduced exponent into canonical form.
    pub fn reduce(&self, a: Fq) -> Fq {
        match a {
            Fq::Zero => Fq::Zero,
            Fq::Pow(e) => Fq::Pow(e % self.order()),
        }
    }

    /// Element from its base-p integer encoding.
    pub fn from_int(&self, x: u64) -> Result<Fq, GfError> {
        if x >= self.q as u64 {
            return Err(GfError::OutOfRange(x));
        }
        Ok(if x == 0 { Fq::Zero } else { Fq::Pow(self.log[x as usize]) })
    }

    /// Base-p integer encoding of an element.
    pub fn to_int(&self, a: Fq) -> u32 {
        match self.reduce(a) {
            Fq::Zero => 0,
            Fq::Pow(e) => self.exp[e as usize],
        }
    }

    /// Image of an integer under Z → GF(p) ⊂ GF(p^m).
    pub fn from_i64(&self, n: i64) -> Fq {
        let r = n.rem_euclid(self.p as i64) as usize;
        if r == 0 {
            Fq::Zero
        } else {
            Fq::Pow(self.log[r])
        }
    }

    /// All elements: zero first, then γ^0, γ^1, ….
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        std::iter::once(Fq::Zero).chain((0..self.order()).map(Fq::Pow))
    }

    /// Parses "0", "1", "g", "g^e" (e may be negative) and reduces it.
    pub fn parse_element(&self, s: &str) -> Result<Fq, GfError> {
        let t = s.trim();
        if let Some(e) = t.strip_prefix("g^") {
            let e: i64 = e.parse().map_err(|_| GfError::ParseElement(s.to_string()))?;
            return Ok(self.gamma_pow(e));
        }
        parse_element_unreduced(t).map(|a| self.reduce(a))
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        match (a, b) {
            (Fq::Zero, x) | (x, Fq::Zero) => x,
            (Fq::Pow(i), Fq::Pow(j)) => {
                let n = self.order();
                let d = if j >= i { j - i } else { j + n - i };
                let z = self.zech[d as usize];
                if z == NO_LOG {
                    Fq::Zero
                } else {
                    let s = i + z;
                    Fq::Pow(if s >= n { s - n } else { s })
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        match a {
            Fq::Zero => Fq::Zero,
            Fq::Pow(e) => {
                let n = self.order();
                let s = e + n / 2;
                Fq::Pow(if s >= n { s - n } else { s })
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        match (a, b) {
            (Fq::Pow(i), Fq::Pow(j)) => {
                let n = self.order();
                let s = i + j;
                Fq::Pow(if s >= n { s - n } else { s })
            }
            _ => Fq::Zero,
        }
    }

    pub fn inv(&self, a: Fq) -> Result<Fq, GfError> {
        match a {
            Fq::Zero => Err(GfError::DivisionByZero),
            Fq::Pow(e) => Ok(Fq::Pow((self.order() - e) % self.order())),
        }
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e for a non-negative exponent (0^0 = 1).
    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        match a {
            Fq::Zero if e == 0 => Fq::Pow(0),
            Fq::Zero => Fq::Zero,
            Fq::Pow(x) => {
                let n = self.order() as u64;
                Fq::Pow(((x as u64 % n) * (e % n) % n) as u32)
            }
        }
    }

    /// a^e for any integer exponent; negative exponents need a ≠ 0.
    pub fn powi(&self, a: Fq, e: i64) -> Result<Fq, GfError> {
        if e >= 0 {
            return Ok(self.pow(a, e as u64));
        }
        let b = self.inv(a)?;
        Ok(self.pow(b, e.unsigned_abs()))
    }

    pub fn sum<I: IntoIterator<Item = Fq>>(&self, it: I) -> Fq {
        it.into_iter().fold(Fq::Zero, |acc, x| self.add(acc, x))
    }

    /// Base field size q when this field has q² elements.
    pub fn square_base(&self) -> Option<u32> {
        self.m.is_multiple_of(2).then(|| self.p.pow(self.m / 2))
    }

    /// x ↦ x^q in a field of size q².
    pub fn frobenius_q(&self, x: Fq) -> Result<Fq, GfError> {
        let base = self
            .square_base()
            .ok_or(GfError::NotASquareField(self.q as u64))?;
        Ok(self.pow(x, base as u64))
    }

    /// Quadratic character: 0 for zero, +1 for nonzero squares, −1 otherwise.
    pub fn quadratic_character(&self, c: Fq) -> i8 {
        match self.reduce(c) {
            Fq::Zero => 0,
            Fq::Pow(e) if e % 2 == 0 => 1,
            Fq::Pow(_) => -1,
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fq) -> Option<u64> {
        let e = self.reduce(a).log()? as u64;
        let n = self.order() as u64;
        Some(n / gcd(n, e))
    }
}

fn check_params(p: u64, m: u32) -> Result<(), GfError> {
    if p == 2 {
        return Err(GfError::EvenCharacteristic);
    }
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if m == 0 {
        return Err(GfError::ZeroDegree);
    }
    match p.checked_pow(m) {
        Some(q) if q <= MAX_FIELD_SIZE => Ok(()),
        _ => Err(GfError::FieldTooLarge { p, m }),
    }
}

/// Splits "p^m" or a prime power "q" into (p, m).
pub fn parse_field_spec(spec: &str) -> Result<(u64, u32), GfError> {
    let bad = || GfError::ParseField(spec.to_string());
    let t = spec.trim();
    if let Some((p, m)) = t.split_once('^') {
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let m: u32 = m.trim().parse().map_err(|_| bad())?;
        return Ok((p, m));
    }
    let q: u64 = t.parse().map_err(|_| bad())?;
    prime_power(q).ok_or_else(bad)
}

/// Arithmetic on base-p integer encodings modulo a fixed monic polynomial.
struct PolyArith<'a> {
    p: u32,
    m: u32,
    modulus: &'a [u32],
}

impl PolyArith<'_> {
    fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut d = vec![0; self.m as usize];
        for c in d.iter_mut() {
            *c = x % self.p;
            x /= self.p;
        }
        d
    }

    fn encode(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (m, p) = (self.m as usize, self.p as u64);
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for top in (m..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (i, &f) in self.modulus[..m].iter().enumerate() {
                let idx = top - m + i;
                prod[idx] = (prod[idx] + (p - c) * f as u64) % p;
            }
            prod[top] = 0;
        }
        let d: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
        self.encode(&d)
    }

    fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
}

/// Remainder of f modulo the monic g over GF(p); coefficients constant-first.
fn poly_rem(p: u32, f: &[u32], g: &[u32]) -> Vec<u32> {
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    let p = p as u64;
    for top in (dg..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for (i, &gi) in g.iter().enumerate() {
            let idx = top - dg + i;
            r[idx] = (r[idx] + (p - c) * gi as u64) % p;
        }
    }
    r.truncate(dg);
    r.into_iter().map(|c| c as u32).collect()
}

/// Monic polynomial of degree d whose lower coefficients encode `code` in base p.
fn monic_from_code(p: u32, d: u32, mut code: u64) -> Vec<u32> {
    let mut f = Vec::with_capacity(d as usize + 1);
    for _ in 0..d {
        f.push((code % p as u64) as u32);
        code /= p as u64;
    }
    f.push(1);
    f
}

fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let m = (f.len() - 1) as u32;
    for d in 1..=m / 2 {
        for code in 0..(p as u64).pow(d) {
            let g = monic_from_code(p, d, code);
            if poly_rem(p, f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree m under the base-p encoding of its
/// lower coefficients (constant term least significant).
fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    (0..(p as u64).pow(m))
        .map(|code| monic_from_code(p, m, code))
        .find(|f| is_irreducible(p, f))
        .expect("irreducible polynomials exist in every degree")
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// (p, m) with q = p^m, if q is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut m = 0;
    let mut x = q;
    while x > 1 {
        x /= p;
        m += 1;
    }
    Some((p, m))
}

/// p-adic valuation of x ≥ 1.
pub fn v_p(mut x: u64, p: u64) -> u32 {
    assert!(x >= 1 && p >= 2, "v_p needs x ≥ 1 and p ≥ 2");
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Number of positive divisors of x ≥ 1.
pub fn divisor_count(x: u64) -> u64 {
    assert!(x >= 1, "divisor_count needs x ≥ 1");
    let mut count = 0;
    let mut d = 1;
    while d * d <= x {
        if x.is_multiple_of(d) {
            count += if d * d == x { 1 } else { 2 };
        }
        d += 1;
    }
    count
}

/// Positive divisors of x ≥ 1 in increasing order.
pub fn divisors(x: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=x).take_while(|d| d * d <= x).filter(|d| x.is_multiple_of(*d)).collect();
    let upper: Vec<u64> = out.iter().rev().map(|d| x / d).filter(|&e| e * e != x).collect();
    out.extend(upper);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_generator_is_smallest() {
        let f = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f.gamma_int(), 2);
        let f = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f.gamma_int(), 3);
        let f = FieldCtx::new(31, 1).unwrap();
        assert_eq!(f.gamma_int(), 3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldCtx::new(2, 1).unwrap_err(), GfError::EvenCharacteristic);
        assert_eq!(FieldCtx::new(9, 1).unwrap_err(), GfError::NotPrime(9));
        assert!(matches!(FieldCtx::new(3, 13), Err(GfError::FieldTooLarge { .. })));
        assert!(FieldCtx::with_modulus(3, 2, &[0, 0, 1]).is_err());
    }

    #[test]
    fn small_arithmetic() {
        let f = FieldCtx::new(5, 1).unwrap();
        let e = |x| f.from_int(x).unwrap();
        assert_eq!(f.mul(e(2), e(3)), e(1));
        assert_eq!(f.inv(e(4)).unwrap(), e(4));
        assert_eq!(f.add(e(3), e(4)), e(2));
        assert_eq!(f.inv(Fq::Zero), Err(GfError::DivisionByZero));
        assert_eq!(f.powi(e(2), -1).unwrap(), e(3));
        let g = FieldCtx::new(3, 4).unwrap();
        assert_eq!(g.pow(g.gamma(), 80), g.one());
        assert_eq!(g.element_order(g.gamma()), Some(80));
    }

    #[test]
    fn frobenius_examples() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f9.frobenius_q(Fq::Zero).unwrap(), Fq::Zero);
        assert_eq!(f9.frobenius_q(Fq::Pow(1)).unwrap(), Fq::Pow(3));
        let f25 = FieldCtx::new(5, 2).unwrap();
        assert_eq!(f25.frobenius_q(Fq::Pow(7)).unwrap(), Fq::Pow(11));
        let f27 = FieldCtx::new(3, 3).unwrap();
        assert_eq!(f27.frobenius_q(Fq::Pow(1)), Err(GfError::NotASquareField(27)));
    }

    #[test]
    fn quadratic_character_examples() {
        let f = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f.quadratic_character(f.from_int(4).unwrap()), 1);
        assert_eq!(f.quadratic_character(f.from_int(2).unwrap()), -1);
        assert_eq!(f.quadratic_character(Fq::Zero), 0);
    }

    #[test]
    fn number_theory() {
        assert_eq!(v_p(48, 2), 4);
        assert_eq!(v_p(7, 2), 0);
        assert_eq!(divisor_count(12), 6);
        assert_eq!(divisor_count(1), 1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(12), None);
        assert_eq!(parse_field_spec("5^2").unwrap(), (5, 2));
        assert_eq!(parse_field_spec("121").unwrap(), (11, 2));
    }

    #[test]
    fn element_strings_round_trip() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f.parse_element("g^9").unwrap(), Fq::Pow(1));
        assert_eq!(f.parse_element("g^-1").unwrap(), Fq::Pow(7));
        assert_eq!(f.parse_element("1").unwrap(), Fq::Pow(0));
        assert_eq!(Fq::Pow(5).to_string(), "g^5");
        assert!(f.parse_element("x").is_err());
    }
}
