//! Steinitz (supernatural) numbers: formal products `prod_p p^(r_p)` over all
//! primes with exponents in `N ∪ {0, inf}`.
//!
//! A number is stored as a finite map of prime exponents plus a `default`
//! exponent carried by every prime outside the map. The default makes numbers
//! such as the product of all primes (`rest^1`) representable. No map entry
//! ever equals the default, so structural equality is numeric equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exponent of a prime in a Steinitz number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exponent {
    Finite(u64),
    Inf,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Exponent::Finite(_))
    }

    pub fn is_zero(self) -> bool {
        self == Exponent::ZERO
    }
}

impl Add for Exponent {
    type Output = Exponent;

    /// Saturating: anything plus `Inf` is `Inf`.
    fn add(self, rhs: Exponent) -> Exponent {
        match (self, rhs) {
            (Exponent::Finite(a), Exponent::Finite(b)) => {
                Exponent::Finite(a.checked_add(b).expect("finite exponent overflow"))
            }
            _ => Exponent::Inf,
        }
    }
}

impl From<u64> for Exponent {
    fn from(v: u64) -> Self {
        Exponent::Finite(v)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(v) => write!(f, "{v}"),
            Exponent::Inf => f.write_str("inf"),
        }
    }
}

/// Deterministic Miller-Rabin; the witness set is exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Trial-division factorization, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Boolean predicates on a Steinitz number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub is_natural: bool,
    pub is_infinite: bool,
    pub is_locally_finite: bool,
    pub is_primary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SteinitzNumber {
    support: BTreeMap<u64, Exponent>,
    default: Exponent,
}

impl Default for SteinitzNumber {
    fn default() -> Self {
        Self::one()
    }
}

impl SteinitzNumber {
    pub fn one() -> Self {
        SteinitzNumber { support: BTreeMap::new(), default: Exponent::ZERO }
    }

    /// Builds a number from explicit prime exponents and the exponent shared
    /// by all other primes. Later entries for the same prime overwrite earlier
    /// ones.
    pub fn new(
        entries: impl IntoIterator<Item = (u64, Exponent)>,
        default: Exponent,
    ) -> Result<Self> {
        let mut support = BTreeMap::new();
        for (p, e) in entries {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            support.insert(p, e);
        }
        Ok(Self::canonical(support, default))
    }

    /// `p^e` for a prime `p`.
    pub fn prime_power(p: u64, e: Exponent) -> Result<Self> {
        Self::new([(p, e)], Exponent::ZERO)
    }

    fn canonical(mut support: BTreeMap<u64, Exponent>, default: Exponent) -> Self {
        support.retain(|_, e| *e != default);
        SteinitzNumber { support, default }
    }

    pub fn from_natural(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroNotAllowed);
        }
        let support = factorize(n).into_iter().map(|(p, e)| (p, Exponent::Finite(e))).collect();
        Ok(SteinitzNumber { support, default: Exponent::ZERO })
    }

    pub fn to_natural(&self) -> Result<u128> {
        if !self.is_natural() {
            return Err(Error::NotNatural);
        }
        let mut acc: u128 = 1;
        for (&p, &e) in &self.support {
            let Exponent::Finite(e) = e else { unreachable!() };
            let e = u32::try_from(e).map_err(|_| Error::Overflow)?;
            let pe = (p as u128).checked_pow(e).ok_or(Error::Overflow)?;
            acc = acc.checked_mul(pe).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    pub fn exponent_of(&self, p: u64) -> Exponent {
        self.support.get(&p).copied().unwrap_or(self.default)
    }

    pub fn default_exponent(&self) -> Exponent {
        self.default
    }

    /// Primes whose exponent differs from the default, ascending.
    pub fn support(&self) -> impl Iterator<Item = (u64, Exponent)> + '_ {
        self.support.iter().map(|(&p, &e)| (p, e))
    }

    fn pointwise(&self, other: &Self, op: impl Fn(Exponent, Exponent) -> Exponent) -> Self {
        let mut support = BTreeMap::new();
        for &p in self.support.keys().chain(other.support.keys()) {
            support.insert(p, op(self.exponent_of(p), other.exponent_of(p)));
        }
        Self::canonical(support, op(self.default, other.default))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.pointwise(other, |a, b| a + b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        self.pointwise(other, Ord::max)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.pointwise(other, Ord::min)
    }

    /// `self | other`, i.e. every exponent of `self` is at most the matching
    /// exponent of `other`.
    pub fn divides(&self, other: &Self) -> bool {
        if self.default > other.default {
            return false;
        }
        self.support
            .keys()
            .chain(other.support.keys())
            .all(|&p| self.exponent_of(p) <= other.exponent_of(p))
    }

    pub fn is_natural(&self) -> bool {
        self.default.is_zero() && self.support.values().all(|e| e.is_finite())
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_natural()
    }

    pub fn is_locally_finite(&self) -> bool {
        self.default.is_finite() && self.support.values().all(|e| e.is_finite())
    }

    /// `p^s` for a single prime `p`, with `s` finite and positive or infinite.
    pub fn is_primary(&self) -> bool {
        self.default.is_zero() && self.support.len() == 1
    }

    pub fn classify(&self) -> Classification {
        Classification {
            is_natural: self.is_natural(),
            is_infinite: self.is_infinite(),
            is_locally_finite: self.is_locally_finite(),
            is_primary: self.is_primary(),
        }
    }

    /// Least common multiple of a sequence of positive integers; `1` for an
    /// empty sequence.
    pub fn lcm_of_sequence(sizes: impl IntoIterator<Item = u64>) -> Result<Self> {
        sizes.into_iter().try_fold(Self::one(), |acc, n| Ok(acc.lcm(&Self::from_natural(n)?)))
    }
}

impl PartialOrd for SteinitzNumber {
    /// Divisibility order; `None` for incomparable numbers.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.divides(other), other.divides(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

fn check_chain(chain: &[u64]) -> Result<()> {
    if chain.contains(&0) {
        return Err(Error::ZeroNotAllowed);
    }
    for w in chain.windows(2) {
        if w[1] % w[0] != 0 {
            return Err(Error::ChainNotDivisible { prev: w[0], next: w[1] });
        }
    }
    Ok(())
}

/// Checks `st(A ⊗ B) = st(A) · st(B)` for algebras presented as unions of
/// matrix algebras of the given divisibility chains of sizes.
///
/// The tensor product is presented by the chain of pointwise products; a
/// shorter chain is padded with its last size (an empty chain reads as `[1]`).
pub fn st_product_law_check(chain_a: &[u64], chain_b: &[u64]) -> Result<bool> {
    check_chain(chain_a)?;
    check_chain(chain_b)?;
    let st_a = SteinitzNumber::lcm_of_sequence(chain_a.iter().copied())?;
    let st_b = SteinitzNumber::lcm_of_sequence(chain_b.iter().copied())?;
    let len = chain_a.len().max(chain_b.len()).max(1);
    let at = |c: &[u64], i: usize| c.get(i).or(c.last()).copied().unwrap_or(1);
    let mut st_ab = SteinitzNumber::one();
    for i in 0..len {
        let n = SteinitzNumber::from_natural(at(chain_a, i))?;
        let m = SteinitzNumber::from_natural(at(chain_b, i))?;
        st_ab = st_ab.lcm(&n.mul(&m));
    }
    Ok(st_ab == st_a.mul(&st_b))
}

impl fmt::Display for SteinitzNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self
            .support
            .iter()
            .map(|(p, e)| match e {
                Exponent::Finite(1) => p.to_string(),
                e => format!("{p}^{e}"),
            })
            .collect();
        if !self.default.is_zero() {
            terms.push(format!("rest^{}", self.default));
        }
        if terms.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&terms.join(" * "))
        }
    }
}

fn parse_exponent(s: &str, pos: usize) -> Result<Exponent> {
    if s == "inf" {
        return Ok(Exponent::Inf);
    }
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(pos, format!("invalid exponent `{s}`")));
    }
    s.parse::<u64>()
        .map(Exponent::Finite)
        .map_err(|_| Error::parse(pos, format!("exponent `{s}` out of range")))
}

impl FromStr for SteinitzNumber {
    type Err = Error;

    /// Grammar: `term ("*" term)*` with `term = prime ["^" exp] | "rest^" exp`
    /// and `exp = decimal | "inf"`. The literal `1` is the empty product.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "1" {
            return Ok(Self::one());
        }
        let mut support = BTreeMap::new();
        let mut default = None;
        let mut offset = 0;
        for raw in s.split('*') {
            let lead = raw.len() - raw.trim_start().len();
            let term = raw.trim();
            let pos = offset + lead;
            offset += raw.len() + 1;
            if term.is_empty() {
                return Err(Error::parse(pos, "empty term"));
            }
            let (base, exp) = match term.split_once('^') {
                Some((b, e)) => {
                    let b = b.trim_end();
                    let e_trim = e.trim();
                    let e_pos = pos + term.find('^').unwrap() + 1 + (e.len() - e.trim_start().len());
                    (b, Some(parse_exponent(e_trim, e_pos)?))
                }
                None => (term, None),
            };
            if base == "rest" {
                let Some(exp) = exp else {
                    return Err(Error::parse(pos, "`rest` requires an exponent"));
                };
                if default.replace(exp).is_some() {
                    return Err(Error::parse(pos, "`rest` given twice"));
                }
                continue;
            }
            if base.is_empty() || !base.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse(pos, format!("expected a prime or `rest`, got `{base}`")));
            }
            let p: u64 = base
                .parse()
                .map_err(|_| Error::parse(pos, format!("prime `{base}` out of range")))?;
            if !is_prime(p) {
                return Err(Error::parse(pos, format!("{p} is not prime")));
            }
            if support.insert(p, exp.unwrap_or(Exponent::Finite(1))).is_some() {
                return Err(Error::parse(pos, format!("prime {p} given twice")));
            }
        }
        Ok(Self::canonical(support, default.unwrap_or(Exponent::ZERO)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn st(s: &str) -> SteinitzNumber {
        s.parse().unwrap()
    }

    fn fin(e: u64) -> Exponent {
        Exponent::Finite(e)
    }

    #[test]
    fn from_natural_examples() {
        let one = SteinitzNumber::from_natural(1).unwrap();
        assert_eq!(one.support().count(), 0);
        assert_eq!(one.default_exponent(), Exponent::ZERO);

        let twelve = SteinitzNumber::from_natural(12).unwrap();
        assert_eq!(twelve.support().collect::<Vec<_>>(), vec![(2, fin(2)), (3, fin(1))]);

        let big = SteinitzNumber::from_natural(3_145_728).unwrap();
        assert_eq!(big.support().collect::<Vec<_>>(), vec![(2, fin(20)), (3, fin(1))]);

        assert_eq!(SteinitzNumber::from_natural(0), Err(Error::ZeroNotAllowed));
    }

    #[test]
    fn to_natural_examples() {
        assert_eq!(st("2^2 * 3").to_natural(), Ok(12));
        assert_eq!(st("2^inf").to_natural(), Err(Error::NotNatural));
        assert_eq!(st("rest^1").to_natural(), Err(Error::NotNatural));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(st("2^inf * 3").mul(&st("2 * 3^inf")), st("2^inf * 3^inf"));
        let s = st("2^inf * 5^3 * rest^1");
        assert_eq!(s.mul(&SteinitzNumber::one()), s);
        let p = SteinitzNumber::from_natural(12).unwrap().mul(&SteinitzNumber::from_natural(18).unwrap());
        assert_eq!(p.to_natural(), Ok(216));
    }

    #[test]
    fn lattice_examples() {
        let n = |v| SteinitzNumber::from_natural(v).unwrap();
        assert_eq!(n(12).lcm(&n(18)), n(36));
        assert!(st("2^inf").divides(&st("2^inf * 3")));
        assert!(!st("2^inf * 3").divides(&st("2^inf")));
        assert_eq!(st("2^inf * 3").gcd(&st("2 * 3^inf")), n(6));
        // differing defaults
        assert!(st("7^5").divides(&st("rest^1 * 7^5")));
        assert!(!st("rest^2").divides(&st("rest^1 * 7^5")));
        assert!(st("rest^1").divides(&st("rest^inf")));
    }

    #[test]
    fn lcm_of_sequence_examples() {
        let powers = (1..=10).map(|k| 3u64.pow(k));
        let s = SteinitzNumber::lcm_of_sequence(powers).unwrap();
        assert_eq!(s, SteinitzNumber::prime_power(3, fin(10)).unwrap());
        assert!(s.is_primary());
        assert_eq!(SteinitzNumber::lcm_of_sequence([]).unwrap(), SteinitzNumber::one());
        assert_eq!(SteinitzNumber::lcm_of_sequence([6, 10, 15]).unwrap().to_natural(), Ok(30));
        assert_eq!(SteinitzNumber::lcm_of_sequence([4, 0]), Err(Error::ZeroNotAllowed));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            st("2^inf").classify(),
            Classification { is_natural: false, is_infinite: true, is_locally_finite: false, is_primary: true }
        );
        assert_eq!(
            st("rest^1").classify(),
            Classification { is_natural: false, is_infinite: true, is_locally_finite: true, is_primary: false }
        );
        assert_eq!(
            SteinitzNumber::from_natural(8).unwrap().classify(),
            Classification { is_natural: true, is_infinite: false, is_locally_finite: true, is_primary: true }
        );
        assert!(!SteinitzNumber::one().is_primary());
        assert!(!st("rest^inf").is_locally_finite());
        assert!(st("rest^inf * 3^2").is_infinite());
    }

    #[test]
    fn product_law_examples() {
        assert_eq!(st_product_law_check(&[2, 4, 8], &[3, 9]), Ok(true));
        assert_eq!(st_product_law_check(&[1], &[1]), Ok(true));
        assert_eq!(st_product_law_check(&[], &[5, 25]), Ok(true));
        assert_eq!(
            st_product_law_check(&[2, 3], &[1]),
            Err(Error::ChainNotDivisible { prev: 2, next: 3 })
        );
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "{n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn canonical_form_drops_default_entries() {
        let s = SteinitzNumber::new([(2, fin(1)), (3, fin(4))], fin(1)).unwrap();
        assert_eq!(s.support().collect::<Vec<_>>(), vec![(3, fin(4))]);
        assert_eq!(SteinitzNumber::new([(4, fin(1))], fin(0)), Err(Error::NotPrime(4)));
    }

    #[test]
    fn text_format() {
        let s = st("2^inf * 3^2 * rest^1");
        assert_eq!(s.to_string(), "2^inf * 3^2 * rest^1");
        assert_eq!(st("3 * 2").to_string(), "2 * 3");
        assert_eq!(st("rest^0 * 5^1").to_string(), "5");
        assert_eq!(SteinitzNumber::one().to_string(), "1");
        assert_eq!(st("2^0 * rest^3").to_string(), "2^0 * rest^3");

        for bad in ["", "4", "2^", "2^x", "2 * 2", "rest", "rest^1 * rest^2", "2 ** 3"] {
            let err = bad.parse::<SteinitzNumber>().unwrap_err();
            assert!(err.is_parse(), "{bad}: {err:?}");
        }
        match "2 * 9".parse::<SteinitzNumber>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
    }

    fn arb_exponent() -> impl Strategy<Value = Exponent> {
        prop_oneof![4 => (0u64..4).prop_map(Exponent::Finite), 1 => Just(Exponent::Inf)]
    }

    fn arb_steinitz() -> impl Strategy<Value = SteinitzNumber> {
        (
            prop::collection::vec((prop::sample::select(vec![2u64, 3, 5, 7, 11]), arb_exponent()), 0..4),
            prop_oneof![3 => Just(Exponent::ZERO), 1 => arb_exponent()],
        )
            .prop_map(|(entries, default)| SteinitzNumber::new(entries, default).unwrap())
    }

    proptest! {
        #[test]
        fn mul_commutative_associative(a in arb_steinitz(), b in arb_steinitz(), c in arb_steinitz()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn absorption(a in arb_steinitz(), b in arb_steinitz()) {
            prop_assert_eq!(a.lcm(&a.gcd(&b)), a.clone());
            prop_assert_eq!(a.gcd(&a.lcm(&b)), a);
        }

        #[test]
        fn divides_product(a in arb_steinitz(), b in arb_steinitz()) {
            prop_assert!(a.divides(&a.mul(&b)));
        }

        #[test]
        fn antisymmetry(a in arb_steinitz(), b in arb_steinitz()) {
            if a.divides(&b) && b.divides(&a) {
                prop_assert_eq!(a, b);
            }
        }

        #[test]
        fn display_roundtrip(a in arb_steinitz()) {
            prop_assert_eq!(a.to_string().parse::<SteinitzNumber>().unwrap(), a);
        }

        #[test]
        fn natural_roundtrip(n in 1u64..=1_000_000) {
            prop_assert_eq!(SteinitzNumber::from_natural(n).unwrap().to_natural().unwrap(), n as u128);
        }
    }
}
