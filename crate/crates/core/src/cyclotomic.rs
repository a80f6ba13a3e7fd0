//! Exact arithmetic in `Q(z)`, `z` a primitive `l`-th root of unity.
//!
//! Elements are rational polynomials in `z` reduced modulo the cyclotomic
//! polynomial `Phi_l`, so the representation is canonical and zero tests are
//! exact. Coefficient vectors are kept without trailing zeros; the zero element
//! has no coefficients at all and costs no allocation.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `Phi_l` as integer coefficients in ascending degree, via
/// `Phi_l = (x^l - 1) / prod_{d | l, d < l} Phi_d`.
pub fn cyclotomic_polynomial(l: u32) -> Vec<BigInt> {
    assert!(l >= 1, "cyclotomic level must be positive");
    let mut num = vec![BigInt::zero(); l as usize + 1];
    num[0] = BigInt::from(-1);
    num[l as usize] = BigInt::one();
    for d in (1..l).filter(|d| l.is_multiple_of(*d)) {
        num = div_exact_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Euler's totient.
pub fn totient(l: u32) -> usize {
    let mut n = l;
    let mut out = l;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out as usize
}

#[derive(Debug)]
struct FieldData {
    level: u32,
    degree: usize,
    modulus: Vec<BigRational>,
    /// `z^k` reduced, for `k < max(l, 2*degree - 1)`.
    powers: Vec<Vec<BigRational>>,
}

/// Handle to the field `Q(z_l)`; cheap to clone, shared per level.
#[derive(Clone, Debug)]
pub struct CycField(Arc<FieldData>);

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.0.level == other.0.level
    }
}

impl Eq for CycField {}

impl CycField {
    pub fn new(level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidLevel(level));
        }
        static CACHE: OnceLock<Mutex<HashMap<u32, CycField>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut cache = cache.lock().unwrap_or_else(|e| e.into_inner());
        Ok(cache.entry(level).or_insert_with(|| CycField::build(level)).clone())
    }

    fn build(level: u32) -> Self {
        let modulus: Vec<BigRational> =
            cyclotomic_polynomial(level).into_iter().map(BigRational::from_integer).collect();
        let degree = modulus.len() - 1;
        let count = (level as usize).max(2 * degree);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![BigRational::one()];
        for _ in 0..count {
            powers.push(trim(cur.clone()));
            // multiply by z, then fold the top coefficient back in
            cur.insert(0, BigRational::zero());
            if cur.len() > degree {
                let top = cur.pop().unwrap();
                for (c, m) in cur.iter_mut().zip(&modulus) {
                    *c -= &top * m;
                }
            }
        }
        CycField(Arc::new(FieldData { level, degree, modulus, powers }))
    }

    pub fn level(&self) -> u32 {
        self.0.level
    }

    /// `phi(l)`, the degree of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn zero(&self) -> CycElem {
        CycElem { field: self.clone(), coeffs: Vec::new() }
    }

    pub fn one(&self) -> CycElem {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, v: i64) -> CycElem {
        self.from_rational(BigRational::from_integer(v.into()))
    }

    pub fn from_rational(&self, q: BigRational) -> CycElem {
        CycElem { field: self.clone(), coeffs: trim(vec![q]) }
    }

    /// `z^(k mod l)`.
    pub fn root_power(&self, k: i64) -> CycElem {
        let l = self.0.level as i64;
        let k = k.rem_euclid(l) as usize;
        CycElem { field: self.clone(), coeffs: self.0.powers[k].clone() }
    }

    /// Reduces an arbitrary rational polynomial in `z` modulo `Phi_l`.
    pub fn from_coeffs(&self, coeffs: Vec<BigRational>) -> CycElem {
        let mut out = vec![BigRational::zero(); self.0.degree];
        for (k, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = k % self.0.level as usize;
            for (o, p) in out.iter_mut().zip(&self.0.powers[k]) {
                *o += &c * p;
            }
        }
        CycElem { field: self.clone(), coeffs: trim(out) }
    }
}

/// `Phi_l` with rational coefficients, ascending.
pub fn minimal_polynomial(field: &CycField) -> &[BigRational] {
    &field.0.modulus
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycElem {
    field: CycField,
    coeffs: Vec<BigRational>,
}

impl std::hash::Hash for CycElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.level().hash(state);
        self.coeffs.hash(state);
    }
}

impl CycElem {
    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn level(&self) -> u32 {
        self.field.level()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Coefficient of `z^k` in the reduced representation.
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The full coefficient vector of length `phi(l)`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        let mut v = self.coeffs.clone();
        v.resize(self.field.degree(), BigRational::zero());
        v
    }

    /// `Some(q)` when the element is the rational `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn check(&self, other: &CycElem) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::LevelMismatch(self.level(), other.level()))
        }
    }

    pub fn try_add(&self, other: &CycElem) -> Result<CycElem> {
        self.check(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &CycElem) -> Result<CycElem> {
        self.check(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &CycElem) -> Result<CycElem> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &CycElem, negate: bool) -> CycElem {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = other.coeffs.get(k);
            out.push(match (a, b, negate) {
                (Some(a), Some(b), false) => a + b,
                (Some(a), Some(b), true) => a - b,
                (Some(a), None, _) => a.clone(),
                (None, Some(b), false) => b.clone(),
                (None, Some(b), true) => -b,
                (None, None, _) => unreachable!(),
            });
        }
        CycElem { field: self.field.clone(), coeffs: trim(out) }
    }

    fn mul_unchecked(&self, other: &CycElem) -> CycElem {
        if self.is_zero() || other.is_zero() {
            return self.field.zero();
        }
        if let Some(q) = self.as_rational() {
            return other.scale(&q);
        }
        if let Some(q) = other.as_rational() {
            return self.scale(&q);
        }
        let mut prod = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        self.field.from_coeffs(prod)
    }

    pub fn scale(&self, q: &BigRational) -> CycElem {
        if q.is_zero() {
            return self.field.zero();
        }
        CycElem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// `(a, Phi_l)`.
    pub fn inv(&self) -> Result<CycElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field.from_rational(q.recip()));
        }
        // invariant: s_i * a == r_i  (mod Phi)
        let mut r0 = self.field.0.modulus.clone();
        let mut r1 = self.coeffs.clone();
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1 = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Phi is irreducible
        let c = r1[0].recip();
        Ok(self.field.from_coeffs(s1).scale(&c))
    }

    pub fn try_div(&self, other: &CycElem) -> Result<CycElem> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> CycElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Image under the embedding `Q(z_l) -> Q(z_m)`, `z_l -> z_m^(m/l)`.
    pub fn lift(&self, target: &CycField) -> Result<CycElem> {
        let (l, m) = (self.level(), target.level());
        if m % l != 0 {
            return Err(Error::LevelMismatch(l, m));
        }
        let step = (m / l) as usize;
        let mut spread = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            spread[k * step] = c.clone();
        }
        Ok(target.from_coeffs(spread))
    }

    /// Evaluates an integer polynomial (ascending coefficients) at `self`.
    pub fn eval_poly(&self, poly: &[BigInt]) -> CycElem {
        poly.iter().rev().fold(self.field.zero(), |acc, c| {
            acc.mul_unchecked(self) + self.field.from_rational(BigRational::from_integer(c.clone()))
        })
    }
}

fn poly_trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = a.to_vec();
    out.resize(a.len().max(b.len()), BigRational::zero());
    for (o, y) in out.iter_mut().zip(b) {
        *o -= y;
    }
    poly_trim(&mut out);
    out
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (i, d) in b.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    poly_trim(&mut quot);
    poly_trim(&mut rem);
    (quot, rem)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&CycElem> for &CycElem {
            type Output = CycElem;
            fn $method(self, rhs: &CycElem) -> CycElem {
                assert!(
                    self.field == rhs.field,
                    "cyclotomic level mismatch: {} vs {}",
                    self.level(),
                    rhs.level()
                );
                $body(self, rhs)
            }
        }
        impl $tr<CycElem> for CycElem {
            type Output = CycElem;
            fn $method(self, rhs: CycElem) -> CycElem {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycElem> for CycElem {
            type Output = CycElem;
            fn $method(self, rhs: &CycElem) -> CycElem {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycElem, b: &CycElem| a.add_unchecked(b, false));
forward_binop!(Sub, sub, |a: &CycElem, b: &CycElem| a.add_unchecked(b, true));
forward_binop!(Mul, mul, |a: &CycElem, b: &CycElem| a.mul_unchecked(b));

impl AddAssign<&CycElem> for CycElem {
    fn add_assign(&mut self, rhs: &CycElem) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycElem> for CycElem {
    fn sub_assign(&mut self, rhs: &CycElem) {
        *self = &*self - rhs;
    }
}

impl Neg for &CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        CycElem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        -&self
    }
}

impl CycElem {
    /// Number of nonzero summands in the printed form.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for CycElem {
    /// Ascending powers of `z`: `2 + 1*z`, `1/2 - 3*z^2`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = if first {
                first = false;
                c.clone()
            } else if c.is_negative() {
                f.write_str(" - ")?;
                -c
            } else {
                f.write_str(" + ")?;
                c.clone()
            };
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*z")?,
                _ => write!(f, "{mag}*z^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Parses a rational literal: `7`, `-3`, `2/5`, `0.25`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = parse_int(p)?;
        let q: BigInt = parse_int(q)?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{whole_digits}{frac}");
        let num: BigInt = if digits.is_empty() { return None } else { digits.parse().ok()? };
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let r = BigRational::new(num, den);
        return Some(if neg { -r } else { r });
    }
    parse_int(s).map(BigRational::from_integer)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl CycField {
    /// Parses the printed form: a signed sum of terms `q`, `q*z`, `q*z^k`,
    /// `z`, `z^k`. Powers of `z` at or above `phi(l)` are reduced.
    pub fn parse_elem(&self, s: &str) -> Result<CycElem> {
        let bytes = s.as_bytes();
        let mut acc = self.zero();
        let mut i = 0;
        let mut first = true;
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        loop {
            skip_ws(&mut i);
            if i >= bytes.len() {
                if first {
                    return Err(Error::parse(i, "empty coefficient"));
                }
                break;
            }
            let mut neg = false;
            if !first || bytes[i] == b'-' || bytes[i] == b'+' {
                match bytes[i] {
                    b'+' => {}
                    b'-' => neg = true,
                    _ => return Err(Error::parse(i, "expected `+` or `-`")),
                }
                i += 1;
                skip_ws(&mut i);
            }
            first = false;
            let start = i;
            while i < bytes.len() && !matches!(bytes[i], b'+' | b' ' | b'\t') && !(bytes[i] == b'-' && i > start && bytes[i - 1] != b'^') {
                i += 1;
            }
            let term = &s[start..i];
            let value = self.parse_term(term, start)?;
            acc = if neg { acc - value } else { acc + value };
        }
        Ok(acc)
    }

    fn parse_term(&self, term: &str, pos: usize) -> Result<CycElem> {
        let (coef, power) = match term.split_once('*') {
            Some((c, z)) => (Some(c), Some(z)),
            None if term.starts_with('z') => (None, Some(term)),
            None => (Some(term), None),
        };
        let q = match coef {
            Some(c) => parse_rational(c)
                .ok_or_else(|| Error::parse(pos, format!("invalid rational `{c}`")))?,
            None => BigRational::one(),
        };
        let k: i64 = match power {
            None => 0,
            Some("z") => 1,
            Some(z) => {
                let e = z
                    .strip_prefix("z^")
                    .and_then(|e| e.parse::<i64>().ok())
                    .ok_or_else(|| Error::parse(pos, format!("invalid power of z `{z}`")))?;
                e
            }
        };
        Ok(self.root_power(k).scale(&q))
    }
}

impl FromStr for CycField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let l: u32 = s.trim().parse().map_err(|_| Error::parse(0, format!("invalid level `{s}`")))?;
        CycField::new(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn elem(f: &CycField, v: &[i64]) -> CycElem {
        f.from_coeffs(v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    #[test]
    fn cyclotomic_polynomial_examples() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        // Phi_105 is the first with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic_polynomial(105).contains(&BigInt::from(-2)));
        for l in 1..=40 {
            assert_eq!(cyclotomic_polynomial(l).len() - 1, totient(l));
        }
    }

    #[test]
    fn arithmetic_examples() {
        let f3 = CycField::new(3).unwrap();
        let prod = elem(&f3, &[1, 1]) * elem(&f3, &[1, -1]);
        assert_eq!(prod, elem(&f3, &[2, 1]));
        assert_eq!(prod.to_string(), "2 + 1*z");

        for l in 2..=12 {
            let f = CycField::new(l).unwrap();
            let z = f.root_power(1);
            assert_eq!(z.inv().unwrap(), f.root_power(l as i64 - 1));
            let a = elem(&f, &[3, 0, -2]);
            assert_eq!(&a + &f.zero(), a);
        }
        assert_eq!(f3.zero().inv(), Err(Error::DivisionByZero));
        let f4 = CycField::new(4).unwrap();
        assert_eq!(f3.one().try_add(&f4.one()), Err(Error::LevelMismatch(3, 4)));
    }

    #[test]
    fn root_power_examples() {
        let f4 = CycField::new(4).unwrap();
        assert_eq!(f4.root_power(2), f4.from_int(-1));
        let f5 = CycField::new(5).unwrap();
        assert_eq!(f5.root_power(-1), f5.root_power(4));
        let f3 = CycField::new(3).unwrap();
        assert_eq!(f3.root_power(3), f3.one());
        assert_eq!(f3.root_power(0), f3.one());
    }

    #[test]
    fn generator_is_primitive_root() {
        for l in 1..=30 {
            let f = CycField::new(l).unwrap();
            let z = f.root_power(1);
            assert!(z.eval_poly(&cyclotomic_polynomial(l)).is_zero(), "Phi_{l}(z) != 0");
            assert!(z.pow(l as u64).is_one());
            for k in 1..l {
                assert!(!z.pow(k as u64).is_one(), "z^{k} = 1 at level {l}");
            }
        }
    }

    #[test]
    fn lift_embeds_roots() {
        let f2 = CycField::new(2).unwrap();
        let f3 = CycField::new(3).unwrap();
        let f6 = CycField::new(6).unwrap();
        assert_eq!(f2.root_power(1).lift(&f6).unwrap(), f6.root_power(3));
        assert_eq!(f3.root_power(2).lift(&f6).unwrap(), f6.root_power(4));
        let a = elem(&f3, &[1, 2]);
        let b = elem(&f3, &[-3, 1]);
        assert_eq!((&a * &b).lift(&f6).unwrap(), a.lift(&f6).unwrap() * b.lift(&f6).unwrap());
        assert!(f3.one().lift(&f2).is_err());
    }

    #[test]
    fn printing_and_parsing() {
        let f5 = CycField::new(5).unwrap();
        let a = f5.from_coeffs(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::zero(),
            BigRational::from_integer((-3).into()),
            BigRational::one(),
        ]);
        assert_eq!(a.to_string(), "1/2 - 3*z^2 + 1*z^3");
        assert_eq!(f5.parse_elem(&a.to_string()).unwrap(), a);
        assert_eq!(f5.zero().to_string(), "0");
        assert_eq!(f5.parse_elem("-z^4").unwrap(), -f5.root_power(4));
        assert_eq!(f5.parse_elem("z^5").unwrap(), f5.one());
        assert_eq!(f5.parse_elem("-1*z - 2").unwrap().to_string(), "-2 - 1*z");
        assert!(f5.parse_elem("").is_err());
        assert!(f5.parse_elem("1 +").is_err());
        assert!(f5.parse_elem("2*y").is_err());
        assert_eq!(parse_rational("0.25"), Some(BigRational::new(1.into(), 4.into())));
        assert_eq!(parse_rational("-1.5"), Some(BigRational::new((-3).into(), 2.into())));
        assert_eq!(parse_rational("3/0"), None);
    }

    fn arb_elem(f: CycField) -> impl Strategy<Value = CycElem> {
        let d = f.degree();
        prop::collection::vec((-5i64..=5, 1i64..=3), d).prop_map(move |v| {
            f.from_coeffs(v.into_iter().map(|(p, q)| BigRational::new(p.into(), q.into())).collect())
        })
    }

    fn arb_triple() -> impl Strategy<Value = (CycElem, CycElem, CycElem)> {
        (2u32..=12).prop_flat_map(|l| {
            let f = CycField::new(l).unwrap();
            (arb_elem(f.clone()), arb_elem(f.clone()), arb_elem(f))
        })
    }

    proptest! {
        #[test]
        fn inverse_property((a, _, _) in arb_triple()) {
            prop_assume!(!a.is_zero());
            prop_assert!((a.inv().unwrap() * &a).is_one());
        }

        #[test]
        fn field_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a);
        }

        #[test]
        fn display_roundtrip((a, _, _) in arb_triple()) {
            prop_assert_eq!(a.field().parse_elem(&a.to_string()).unwrap(), a);
        }
    }
}
