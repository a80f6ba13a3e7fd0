//! The generalized Clifford algebra `Clg(l, I)`.
//!
//! Generators `x_i` are indexed by exact rationals and satisfy
//!
//! ```text
//! x_i^l = 1,    x_i^-1 x_j x_i = z x_j  (i < j),    x_i^-1 x_j x_i = z^-1 x_j  (i > j)
//! ```
//!
//! with `z` a primitive `l`-th root of unity. Equivalently `x_j x_i = z x_i x_j`
//! for `i < j`, hence `x_j^b x_i^a = z^(ab) x_i^a x_j^b`. Every word rewrites to
//! a phase times an ordered monomial `x_{i1}^{k1} ... x_{ir}^{kr}` with
//! `i1 < ... < ir` and `1 <= k <= l-1`, and these monomials form a basis.
//!
//! Phases are tracked as integers mod `l` while rewriting and only become
//! cyclotomic coefficients when a product lands in a [`CliffordElement`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::cyclotomic::{parse_rational, CycElem, CycField};
use crate::error::{Error, Result};
use crate::linalg::{self, SparseVec};
use crate::DIMENSION_GUARD;

/// Position of a generator in the ordered index set; rationals are dense, so
/// a new generator fits strictly between any two existing ones.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorIndex(pub BigRational);

impl GeneratorIndex {
    pub fn new(p: i64, q: i64) -> Self {
        GeneratorIndex(BigRational::new(p.into(), q.into()))
    }

    pub fn midpoint(&self, other: &GeneratorIndex) -> GeneratorIndex {
        GeneratorIndex((&self.0 + &other.0) / BigRational::from_integer(2.into()))
    }

    pub fn offset(&self, delta: &BigRational) -> GeneratorIndex {
        GeneratorIndex(&self.0 + delta)
    }
}

impl From<i64> for GeneratorIndex {
    fn from(v: i64) -> Self {
        GeneratorIndex(BigRational::from_integer(v.into()))
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for GeneratorIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s)
            .map(GeneratorIndex)
            .ok_or_else(|| Error::parse(0, format!("invalid rational index `{s}`")))
    }
}

/// Parses a comma-separated index list such as `1,2` or `0.5, 3/2`.
pub fn parse_index_list(s: &str) -> Result<Vec<GeneratorIndex>> {
    let mut out = Vec::new();
    let mut pos = 0;
    for item in s.split(',') {
        let lead = item.len() - item.trim_start().len();
        if !item.trim().is_empty() {
            let idx = item
                .trim()
                .parse()
                .map_err(|_| Error::parse(pos + lead, format!("invalid rational index `{}`", item.trim())))?;
            out.push(idx);
        } else if s.split(',').count() > 1 {
            return Err(Error::parse(pos, "empty list item"));
        }
        pos += item.len() + 1;
    }
    Ok(out)
}

/// Probes strictly interleaving the given indices: one below the smallest,
/// one at each midpoint, one above the largest (the midpoint strategy).
pub fn interleaved_probes(ambient: &[GeneratorIndex]) -> Vec<GeneratorIndex> {
    let sorted: BTreeSet<_> = ambient.iter().cloned().collect();
    let sorted: Vec<_> = sorted.into_iter().collect();
    let half = BigRational::new(1.into(), 2.into());
    let (Some(first), Some(last)) = (sorted.first(), sorted.last()) else {
        return Vec::new();
    };
    let mut out = vec![first.offset(&-&half)];
    out.extend(sorted.windows(2).map(|w| w[0].midpoint(&w[1])));
    out.push(last.offset(&half));
    out
}

/// Ordered monomial: strictly increasing indices, positive exponents. The
/// empty monomial is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(GeneratorIndex, u32)>,
}

impl Ord for Monomial {
    /// Lexicographic by index sequence, then by exponent sequence.
    fn cmp(&self, other: &Self) -> Ordering {
        self.factors
            .iter()
            .map(|f| &f.0)
            .cmp(other.factors.iter().map(|f| &f.0))
            .then_with(|| self.factors.iter().map(|f| f.1).cmp(other.factors.iter().map(|f| f.1)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    /// `x_i^k`, with `k` reduced mod `l`.
    pub fn generator(i: GeneratorIndex, k: i64, l: u32) -> Self {
        let k = k.rem_euclid(l as i64) as u32;
        if k == 0 {
            Monomial::unit()
        } else {
            Monomial { factors: vec![(i, k)] }
        }
    }

    /// Validates strictly increasing indices and exponents in `1..l`.
    pub fn from_factors(factors: Vec<(GeneratorIndex, u32)>, l: u32) -> Option<Self> {
        let sorted = factors.windows(2).all(|w| w[0].0 < w[1].0);
        let in_range = factors.iter().all(|&(_, k)| k >= 1 && k < l);
        (sorted && in_range).then_some(Monomial { factors })
    }

    pub fn factors(&self) -> &[(GeneratorIndex, u32)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent_of(&self, i: &GeneratorIndex) -> u32 {
        self.factors
            .binary_search_by(|f| f.0.cmp(i))
            .map(|pos| self.factors[pos].1)
            .unwrap_or(0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (n, (i, k)) in self.factors.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{i}^{k}")?;
        }
        Ok(())
    }
}

/// Product `u * v = z^phase * w` of two ordered monomials.
///
/// Moving a factor `x_i^a` of `v` left past a factor `x_j^b` of `u` with
/// `j > i` costs `z^(ab)`; equal indices merge with exponents added mod `l`.
pub fn monomial_product(u: &Monomial, v: &Monomial, l: u32) -> (u32, Monomial) {
    let l64 = l as u64;
    // suffix[t] = sum of exponents of u.factors[t..]
    let mut suffix = vec![0u64; u.factors.len() + 1];
    for t in (0..u.factors.len()).rev() {
        suffix[t] = suffix[t + 1] + u.factors[t].1 as u64;
    }
    let mut phase = 0u64;
    let mut t = 0;
    for (i, a) in &v.factors {
        while t < u.factors.len() && u.factors[t].0 <= *i {
            t += 1;
        }
        phase = (phase + (*a as u64 % l64) * (suffix[t] % l64)) % l64;
    }

    let mut factors = Vec::with_capacity(u.factors.len() + v.factors.len());
    let (mut p, mut q) = (0, 0);
    while p < u.factors.len() || q < v.factors.len() {
        let ord = match (u.factors.get(p), v.factors.get(q)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                factors.push(u.factors[p].clone());
                p += 1;
            }
            Ordering::Greater => {
                factors.push(v.factors[q].clone());
                q += 1;
            }
            Ordering::Equal => {
                let k = (u.factors[p].1 + v.factors[q].1) % l;
                if k != 0 {
                    factors.push((u.factors[p].0.clone(), k));
                }
                p += 1;
                q += 1;
            }
        }
    }
    (phase as u32, Monomial { factors })
}

/// Unnormalized product of generator powers; powers may be negative.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word {
    pub letters: Vec<(GeneratorIndex, i64)>,
}

impl Word {
    pub fn new(letters: Vec<(GeneratorIndex, i64)>) -> Self {
        Word { letters }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Whitespace-separated letters `x<rational>[^<int>]`, e.g. `x1^2 x0.5^-1 x2`.
    /// The single token `1` is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut rest = s;
        let mut base = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let after = &rest[start..];
            let end = after.find(char::is_whitespace).unwrap_or(after.len());
            let tok = &after[..end];
            let pos = base + start;
            if tok != "1" {
                letters.push(parse_letter(tok, pos)?);
            }
            base += start + end;
            rest = &after[end..];
        }
        Ok(Word { letters })
    }
}

fn parse_letter(tok: &str, pos: usize) -> Result<(GeneratorIndex, i64)> {
    let Some(body) = tok.strip_prefix('x') else {
        return Err(Error::parse(pos, format!("expected a generator `x<index>`, got `{tok}`")));
    };
    let (idx, pow) = match body.split_once('^') {
        Some((i, p)) => {
            let p = p
                .parse::<i64>()
                .map_err(|_| Error::parse(pos + 2 + i.len(), format!("invalid power `{p}`")))?;
            (i, p)
        }
        None => (body, 1),
    };
    let idx = parse_rational(idx)
        .ok_or_else(|| Error::parse(pos + 1, format!("invalid rational index `{idx}`")))?;
    Ok((GeneratorIndex(idx), pow))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.letters.iter().map(|(i, p)| format!("x{i}^{p}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Finite linear combination of ordered monomials with coefficients in `Q(z_l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElement {
    field: CycField,
    terms: BTreeMap<Monomial, CycElem>,
}

impl CliffordElement {
    pub fn zero(field: &CycField) -> Self {
        CliffordElement { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(field: &CycField) -> Self {
        Self::term(field, Monomial::unit(), field.one())
    }

    pub fn term(field: &CycField, m: Monomial, coeff: CycElem) -> Self {
        let mut e = Self::zero(field);
        e.add_term(m, coeff);
        e
    }

    /// The generator `x_i`.
    pub fn generator(field: &CycField, i: GeneratorIndex) -> Self {
        Self::term(field, Monomial::generator(i, 1, field.level()), field.one())
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn level(&self) -> u32 {
        self.field.level()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> CycElem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn add_term(&mut self, m: Monomial, coeff: CycElem) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(c) => {
                *c += &coeff;
                if c.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, coeff);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::LevelMismatch(self.level(), other.level()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &CycElem) -> Self {
        let mut out = Self::zero(&self.field);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    /// Bilinear extension of [`monomial_product`].
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let l = self.level();
        let mut out = Self::zero(&self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let (phase, w) = monomial_product(u, v, l);
                let c = a * b;
                let c = if phase == 0 { c } else { c * self.field.root_power(phase as i64) };
                out.add_term(w, c);
            }
        }
        Ok(out)
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Coordinates in a fixed monomial basis; `None` if a monomial is missing.
    pub fn coordinates(&self, index: &HashMap<Monomial, usize>) -> Option<SparseVec> {
        self.terms.iter().map(|(m, c)| index.get(m).map(|&k| (k, c.clone()))).collect()
    }
}

/// The automorphism `phi_i`: `x_k -> z^(delta_ik) x_k`.
pub fn automorphism_phi(i: &GeneratorIndex, a: &CliffordElement) -> CliffordElement {
    let mut out = CliffordElement::zero(&a.field);
    for (m, c) in &a.terms {
        let k = m.exponent_of(i);
        out.add_term(m.clone(), c * &a.field.root_power(k as i64));
    }
    out
}

/// Rewrites a word into `z^k` times an ordered monomial.
pub fn normal_form(w: &Word, field: &CycField) -> CliffordElement {
    let (phase, m) = normal_form_phase(w, field.level());
    CliffordElement::term(field, m, field.root_power(phase as i64))
}

/// Phase-and-monomial form of [`normal_form`], without touching the field.
pub fn normal_form_phase(w: &Word, l: u32) -> (u32, Monomial) {
    w.letters.iter().fold((0, Monomial::unit()), |(phase, acc), (i, p)| {
        let (ph, m) = monomial_product(&acc, &Monomial::generator(i.clone(), *p, l), l);
        ((phase + ph) % l, m)
    })
}

/// `S_j` with `x_j^-1 v x_j = z^(S_j) v`: exponents above `j` count positively,
/// below `j` negatively, and a factor at `j` itself contributes nothing.
pub fn conjugation_phase(v: &Monomial, j: &GeneratorIndex, l: u32) -> u32 {
    let l = l as i64;
    let s: i64 = v
        .factors
        .iter()
        .map(|(i, k)| match i.cmp(j) {
            Ordering::Greater => *k as i64,
            Ordering::Less => -(*k as i64),
            Ordering::Equal => 0,
        })
        .sum();
    s.rem_euclid(l) as u32
}

fn dedup(indices: &[GeneratorIndex]) -> Vec<GeneratorIndex> {
    indices.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Every ordered monomial on `indices`, in canonical order; `l^n` of them.
pub fn all_monomials(indices: &[GeneratorIndex], l: u32) -> Vec<Monomial> {
    let indices = dedup(indices);
    let mut out = vec![Monomial::unit()];
    for i in indices.iter().rev() {
        let mut next = Vec::with_capacity(out.len() * l as usize);
        for m in &out {
            next.push(m.clone());
            for k in 1..l {
                let mut factors = vec![(i.clone(), k)];
                factors.extend(m.factors.iter().cloned());
                next.push(Monomial { factors });
            }
        }
        out = next;
    }
    out.sort();
    out
}

fn truncation_size(n: usize, l: u32) -> Result<usize> {
    (l as usize)
        .checked_pow(n as u32)
        .filter(|&d| d <= DIMENSION_GUARD)
        .ok_or(Error::TruncationTooLarge {
            dim: (l as usize).checked_pow(n as u32).unwrap_or(usize::MAX),
            limit: DIMENSION_GUARD,
        })
}

/// Ordered monomials on `ambient` whose conjugation phase vanishes for every
/// probe. The centralizer of the probes inside the truncation is invariant
/// under all `phi_i`, so it is spanned by exactly these monomials.
pub fn centralizer_congruence(ambient: &[GeneratorIndex], probes: &[GeneratorIndex], l: u32) -> Vec<Monomial> {
    let probes = dedup(probes);
    all_monomials(ambient, l)
        .into_iter()
        .filter(|m| probes.iter().all(|j| conjugation_phase(m, j, l) == 0))
        .collect()
}

/// Centralizer of the probe generators within the span of ordered monomials
/// on `ambient`, found by solving `[a, x_j] = 0` for all probes exactly.
pub fn centralizer_bruteforce(
    ambient: &[GeneratorIndex],
    probes: &[GeneratorIndex],
    field: &CycField,
) -> Result<Vec<CliffordElement>> {
    let l = field.level();
    let ambient = dedup(ambient);
    truncation_size(ambient.len(), l)?;
    let basis = all_monomials(&ambient, l);
    let mut row_of: HashMap<Monomial, usize> = HashMap::new();
    let mut rows: Vec<SparseVec> = Vec::new();
    for j in dedup(probes) {
        let x = CliffordElement::generator(field, j);
        for (col, m) in basis.iter().enumerate() {
            let a = CliffordElement::term(field, m.clone(), field.one());
            for (w, c) in a.commutator(&x)?.terms {
                let next = row_of.len();
                let r = *row_of.entry(w).or_insert(next);
                if r == rows.len() {
                    rows.push(SparseVec::new());
                }
                rows[r].insert(col, c);
            }
        }
    }
    let kernel = linalg::nullspace(field, rows, basis.len());
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut e = CliffordElement::zero(field);
            for (col, c) in v {
                e.add_term(basis[col].clone(), c);
            }
            e
        })
        .collect())
}

/// Whether two families of elements span the same subspace.
pub fn spans_equal(field: &CycField, a: &[CliffordElement], b: &[CliffordElement]) -> bool {
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    for e in a.iter().chain(b) {
        for m in e.terms.keys() {
            let next = index.len();
            index.entry(m.clone()).or_insert(next);
        }
    }
    let coords = |v: &[CliffordElement]| -> Vec<SparseVec> {
        v.iter().map(|e| e.coordinates(&index).expect("indexed above")).collect()
    };
    linalg::same_span(field, &coords(a), &coords(b))
}

impl fmt::Display for CliffordElement {
    /// `coeff * monomial` terms joined by ` + `; coefficients that are not
    /// rational are parenthesized; the unit monomial prints as the bare
    /// coefficient.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let coeff = if c.as_rational().is_some() { c.to_string() } else { format!("({c})") };
            if m.is_unit() {
                f.write_str(&coeff)?;
            } else {
                write!(f, "{coeff} * {m}")?;
            }
        }
        Ok(())
    }
}

/// Splits at top-level `+` and binary `-`, keeping the sign of each piece.
fn split_summands(s: &str) -> Result<Vec<(bool, usize, &str)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut neg = false;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::parse(i, "unbalanced `)`"));
                }
            }
            b'+' | b'-' if depth == 0 => {
                let before = s[..i].trim_end();
                let binary = b == b'+'
                    || (i > 0
                        && bytes[i - 1].is_ascii_whitespace()
                        && !before.is_empty()
                        && !before.ends_with(['^', '*', '(', '+', '-']));
                if binary {
                    out.push((neg, start, &s[start..i]));
                    neg = b == b'-';
                    start = i + 1;
                }
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::parse(s.len(), "unbalanced `(`"));
    }
    out.push((neg, start, &s[start..]));
    Ok(out)
}

impl CliffordElement {
    /// Parses the printed element format. Monomial parts may be arbitrary
    /// words (`2 * x2 x1`), which are normalized on the way in.
    pub fn parse(s: &str, field: &CycField) -> Result<Self> {
        let mut acc = CliffordElement::zero(field);
        for (neg, pos, raw) in split_summands(s)? {
            let lead = raw.len() - raw.trim_start().len();
            let term = raw.trim();
            let pos = pos + lead;
            if term.is_empty() {
                return Err(Error::parse(pos, "empty term"));
            }
            let mut e = parse_summand(term, pos, field)?;
            if neg {
                e = e.scale(&-field.one());
            }
            acc = acc.add(&e)?;
        }
        Ok(acc)
    }
}

fn parse_summand(term: &str, pos: usize, field: &CycField) -> Result<CliffordElement> {
    // split at the last top-level `*` whose right side is a word
    let mut depth = 0;
    let mut split = None;
    for (i, b) in term.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'*' if depth == 0 => {
                let right = term[i + 1..].trim_start();
                if right.starts_with('x') || right == "1" {
                    split = Some(i);
                }
            }
            _ => {}
        }
    }
    let (coef_str, word_str, word_pos) = match split {
        Some(i) => (Some(term[..i].trim()), &term[i + 1..], pos + i + 1),
        None if term.starts_with('x') => (None, term, pos),
        None => (Some(term), "1", pos),
    };
    let coeff = match coef_str {
        None => field.one(),
        Some(c) => {
            let inner = c.strip_prefix('(').and_then(|c| c.strip_suffix(')')).unwrap_or(c);
            field.parse_elem(inner).map_err(|e| match e {
                Error::Parse { pos: p, msg } => Error::Parse { pos: pos + p, msg },
                other => other,
            })?
        }
    };
    let word: Word = word_str.parse().map_err(|e| match e {
        Error::Parse { pos: p, msg } => Error::Parse { pos: word_pos + p, msg },
        other => other,
    })?;
    Ok(normal_form(&word, field).scale(&coeff))
}

/// Helper for building `x_i` indices from integers.
pub fn indices(vals: &[i64]) -> Vec<GeneratorIndex> {
    vals.iter().map(|&v| GeneratorIndex::from(v)).collect()
}
