//! Clock-and-shift matrix realizations of finite truncations of `Clg(l, I)`.
//!
//! With `C = diag(1, z, ..., z^(l-1))` and `S e_k = e_(k+1 mod l)` one has
//! `C S = z S C`, i.e. `S^-1 C S = z C`. The generator images
//!
//! ```text
//! g_k = C ⊗ ... ⊗ C ⊗ S ⊗ I ⊗ ... ⊗ I      (k-1 clocks, shift in slot k)
//! ```
//!
//! therefore satisfy `g_i^-1 g_j g_i = z g_j` for `i < j`, which is exactly the
//! orientation of the algebra's defining relation. This convention is fixed
//! for every level and size.
//!
//! Matrices are vectorized column-major (`X[r][c]` sits at `c * rows + r`)
//! whenever they enter the linear solvers.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::clifford::{CliffordElement, GeneratorIndex};
use crate::cyclotomic::{CycElem, CycField};
use crate::error::{Error, Result};
use crate::linalg::{self, RowEchelon, SparseVec};
use crate::DIMENSION_GUARD;

/// Dense matrix over `Q(z_l)`; products skip zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: CycField,
    rows: usize,
    cols: usize,
    entries: Vec<CycElem>,
}

impl ExactMatrix {
    pub fn zeros(field: &CycField, rows: usize, cols: usize) -> Self {
        ExactMatrix { field: field.clone(), rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &CycField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: &CycField, rows: usize, cols: usize, f: impl Fn(usize, usize) -> CycElem) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let e = f(r, c);
                assert!(e.field() == field, "entry from a different cyclotomic field");
                entries.push(e);
            }
        }
        ExactMatrix { field: field.clone(), rows, cols, entries }
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycElem {
        &self.entries[r * self.cols + c]
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c { e.is_one() } else { e.is_zero() }
                })
            })
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::LevelMismatch(self.field.level(), other.field.level()))
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &Self, negate: bool) -> Result<Self> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, got: other.rows * other.cols });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| if negate { a - b } else { a + b })
            .collect();
        Ok(ExactMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, true)
    }

    pub fn scale(&self, c: &CycElem) -> Self {
        ExactMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let mut acc = Self::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Re-expresses the entries over `Q(z_m)` for a multiple `m` of the level.
    pub fn lift(&self, target: &CycField) -> Result<Self> {
        let entries = self.entries.iter().map(|e| e.lift(target)).collect::<Result<_>>()?;
        Ok(ExactMatrix { field: target.clone(), rows: self.rows, cols: self.cols, entries })
    }

    /// Column-major sparse vectorization.
    pub fn to_sparse_vec(&self) -> SparseVec {
        let mut v = SparseVec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.get(r, c);
                if !e.is_zero() {
                    v.insert(c * self.rows + r, e.clone());
                }
            }
        }
        v
    }

    /// Inverse of [`to_sparse_vec`](Self::to_sparse_vec).
    pub fn from_sparse_vec(field: &CycField, rows: usize, cols: usize, v: &SparseVec) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for (&k, e) in v {
            let (c, r) = (k / rows, k % rows);
            m.entries[r * cols + c] = e.clone();
        }
        m
    }
}

impl fmt::Display for ExactMatrix {
    /// One row per line, tab-separated entries.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "{}", row.join("\t"))?;
        }
        Ok(())
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    a.check_field(b)?;
    let (rows, cols) = (a.rows * b.rows, a.cols * b.cols);
    let mut out = ExactMatrix::zeros(&a.field, rows, cols);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let x = a.get(ar, ac);
            if x.is_zero() {
                continue;
            }
            for br in 0..b.rows {
                for bc in 0..b.cols {
                    let y = b.get(br, bc);
                    if !y.is_zero() {
                        out.entries[(ar * b.rows + br) * cols + ac * b.cols + bc] = x * y;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `diag(1, z, ..., z^(l-1))` with `l` the field's level.
pub fn clock(field: &CycField) -> ExactMatrix {
    let l = field.level() as usize;
    ExactMatrix::from_fn(field, l, l, |r, c| if r == c { field.root_power(r as i64) } else { field.zero() })
}

/// Cyclic shift `e_k -> e_(k+1 mod l)`.
pub fn shift(field: &CycField) -> ExactMatrix {
    let l = field.level() as usize;
    ExactMatrix::from_fn(field, l, l, |r, c| if r == (c + 1) % l { field.one() } else { field.zero() })
}

/// Image of the `k`-th generator (1-based) among `n` in the `l^n`-dimensional
/// clock-and-shift realization.
pub fn jw_generator(k: usize, n: usize, field: &CycField) -> ExactMatrix {
    assert!((1..=n).contains(&k), "generator {k} out of range 1..={n}");
    let (c, s) = (clock(field), shift(field));
    let eye = ExactMatrix::identity(field, field.level() as usize);
    let mut out = ExactMatrix::identity(field, 1);
    for slot in 1..=n {
        let factor = match slot.cmp(&k) {
            std::cmp::Ordering::Less => &c,
            std::cmp::Ordering::Equal => &s,
            std::cmp::Ordering::Greater => &eye,
        };
        out = kron(&out, factor).expect("same field");
    }
    out
}

/// Images of an ordered list of generators.
#[derive(Clone, Debug)]
pub struct RepAssignment {
    field: CycField,
    indices: Vec<GeneratorIndex>,
    images: Vec<ExactMatrix>,
}

impl RepAssignment {
    /// Assigns `images[t]` to `indices[t]`. All images must be square and of
    /// one size; the defining relations are not checked here (see
    /// [`verify_relations`]).
    pub fn new(field: &CycField, indices: Vec<GeneratorIndex>, images: Vec<ExactMatrix>) -> Result<Self> {
        if indices.len() != images.len() {
            return Err(Error::DimensionMismatch { expected: indices.len(), got: images.len() });
        }
        if let Some(first) = images.first() {
            for m in &images {
                if m.field() != field {
                    return Err(Error::LevelMismatch(field.level(), m.field().level()));
                }
                if !m.is_square() || m.rows() != first.rows() {
                    return Err(Error::DimensionMismatch { expected: first.rows(), got: m.rows() });
                }
            }
        }
        Ok(RepAssignment { field: field.clone(), indices, images })
    }

    /// Generators `x_1, ..., x_n` in the standard `l^n`-dimensional realization.
    pub fn standard(n: usize, field: &CycField) -> Self {
        let indices = (1..=n as i64).map(GeneratorIndex::from).collect();
        Self::on_indices(indices, field)
    }

    /// The standard realization with the generators placed at the given
    /// indices, taken in increasing order.
    pub fn on_indices(mut indices: Vec<GeneratorIndex>, field: &CycField) -> Self {
        indices.sort();
        indices.dedup();
        let n = indices.len();
        let images = (1..=n).map(|k| jw_generator(k, n, field)).collect();
        RepAssignment { field: field.clone(), indices, images }
    }

    /// `x_1 -> S`, `x_2 -> C`: the irreducible `l`-dimensional realization of
    /// `Clg(l, {1, 2})`, whose image is all of `M_l`.
    pub fn irreducible_pair(field: &CycField) -> Self {
        RepAssignment {
            field: field.clone(),
            indices: vec![GeneratorIndex::from(1), GeneratorIndex::from(2)],
            images: vec![shift(field), clock(field)],
        }
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn level(&self) -> u32 {
        self.field.level()
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Size of the matrices (1 when there are no generators).
    pub fn dim(&self) -> usize {
        self.images.first().map_or(1, ExactMatrix::rows)
    }

    pub fn indices(&self) -> &[GeneratorIndex] {
        &self.indices
    }

    pub fn images(&self) -> &[ExactMatrix] {
        &self.images
    }

    pub fn image_of(&self, i: &GeneratorIndex) -> Option<&ExactMatrix> {
        self.indices.iter().position(|j| j == i).map(|t| &self.images[t])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return writeln!(f, "relations: ok");
        }
        writeln!(f, "relations: FAILED ({})", self.failures.len())?;
        for fail in &self.failures {
            writeln!(f, "  {fail}")?;
        }
        Ok(())
    }
}

/// Checks `g^l = 1` for every image and `g_j g_i = z g_i g_j` (equivalently
/// `g_i^-1 g_j g_i = z g_j`) for every pair of indices `i < j`.
pub fn verify_relations(rep: &RepAssignment) -> Result<RelationReport> {
    let l = rep.level();
    let z = rep.field.root_power(1);
    let mut failures = Vec::new();
    for (i, g) in rep.indices.iter().zip(&rep.images) {
        if !g.pow(l)?.is_identity() {
            failures.push(format!("x{i}^{l} != 1"));
        }
    }
    let mut order: Vec<usize> = (0..rep.len()).collect();
    order.sort_by(|&a, &b| rep.indices[a].cmp(&rep.indices[b]));
    for (p, &a) in order.iter().enumerate() {
        for &b in &order[p + 1..] {
            let (gi, gj) = (&rep.images[a], &rep.images[b]);
            let lhs = gj.mul(gi)?;
            let rhs = gi.mul(gj)?.scale(&z);
            if lhs != rhs {
                let (i, j) = (&rep.indices[a], &rep.indices[b]);
                let dir = if lhs == gi.mul(gj)?.scale(&rep.field.root_power(-1)) { " (twist is z^-1)" } else { "" };
                failures.push(format!("x{i}^-1 x{j} x{i} != z x{j}{dir}"));
            }
        }
    }
    Ok(RelationReport { ok: failures.is_empty(), failures })
}

/// Evaluation homomorphism `Clg -> M_dim` determined by the assignment.
pub fn rep_element(a: &CliffordElement, rep: &RepAssignment) -> Result<ExactMatrix> {
    if a.field() != rep.field() {
        return Err(Error::LevelMismatch(a.level(), rep.level()));
    }
    let dim = rep.dim();
    let mut powers: HashMap<(usize, u32), ExactMatrix> = HashMap::new();
    let mut out = ExactMatrix::zeros(&rep.field, dim, dim);
    for (m, c) in a.terms() {
        let mut acc = ExactMatrix::identity(&rep.field, dim);
        for (i, k) in m.factors() {
            let t = rep
                .indices
                .iter()
                .position(|j| j == i)
                .ok_or_else(|| Error::UnmappedIndex(i.to_string()))?;
            let power = match powers.entry((t, *k)) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => e.insert(rep.images[t].pow(*k)?),
            };
            acc = acc.mul(power)?;
        }
        out = out.add(&acc.scale(c))?;
    }
    Ok(out)
}

fn check_square_family(mats: &[ExactMatrix], dim: Option<usize>) -> Result<Option<usize>> {
    let size = dim.or_else(|| mats.first().map(ExactMatrix::rows));
    for m in mats {
        let n = size.expect("nonempty");
        if !m.is_square() {
            return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
        }
        if m.rows() != n {
            return Err(Error::DimensionMismatch { expected: n, got: m.rows() });
        }
    }
    if let (Some(f), true) = (mats.first(), mats.len() > 1) {
        for m in mats {
            if m.field() != f.field() {
                return Err(Error::LevelMismatch(f.field().level(), m.field().level()));
            }
        }
    }
    Ok(size)
}

/// Dimension of the unital subalgebra generated by `mats`: the span of the
/// identity is closed under left multiplication by every generator until the
/// rank stops growing.
pub fn spanned_dimension(mats: &[ExactMatrix]) -> Result<usize> {
    let Some(n) = check_square_family(mats, None)? else {
        return Ok(1);
    };
    let field = mats[0].field().clone();
    let mut ech = RowEchelon::new(field.clone());
    let id = ExactMatrix::identity(&field, n);
    ech.insert(id.to_sparse_vec());
    let mut frontier = vec![id];
    while let Some(b) = frontier.pop() {
        for g in mats {
            let p = g.mul(&b)?;
            if ech.insert(p.to_sparse_vec()) {
                if ech.rank() > DIMENSION_GUARD {
                    return Err(Error::TruncationTooLarge { dim: ech.rank(), limit: DIMENSION_GUARD });
                }
                frontier.push(p);
            }
        }
    }
    Ok(ech.rank())
}

/// Whether the `l^n` ordered monomials on `x_1..x_n` have linearly
/// independent images in the standard realization.
pub fn faithfulness_check(n: usize, field: &CycField) -> Result<bool> {
    let l = field.level() as usize;
    let count = l
        .checked_pow(n as u32)
        .filter(|&c| c <= DIMENSION_GUARD)
        .ok_or(Error::TruncationTooLarge { dim: l.saturating_pow(n as u32), limit: DIMENSION_GUARD })?;
    let rep = RepAssignment::standard(n, field);
    let mut powers: Vec<Vec<ExactMatrix>> = Vec::with_capacity(n);
    for g in rep.images() {
        let mut ps = vec![ExactMatrix::identity(field, rep.dim())];
        for k in 1..l {
            ps.push(ps[k - 1].mul(g)?);
        }
        powers.push(ps);
    }
    // depth-first over exponent vectors, reusing prefix products
    let mut ech = RowEchelon::new(field.clone());
    let mut stack = vec![(0usize, ExactMatrix::identity(field, rep.dim()))];
    while let Some((depth, prefix)) = stack.pop() {
        if depth == n {
            if !ech.insert(prefix.to_sparse_vec()) {
                return Ok(false);
            }
            continue;
        }
        for k in (0..l).rev() {
            let next = if k == 0 { prefix.clone() } else { prefix.mul(&powers[depth][k])? };
            stack.push((depth + 1, next));
        }
    }
    Ok(ech.rank() == count)
}

/// A subspace of matrices given by a basis.
#[derive(Clone, Debug)]
pub struct MatrixCentralizer {
    pub dimension: usize,
    pub basis: Vec<ExactMatrix>,
}

/// Centralizer of `mats` in the full algebra `M_dim`: the common kernel of
/// `X -> X m - m X` over all `m`.
pub fn matrix_centralizer(field: &CycField, mats: &[ExactMatrix], dim: usize) -> Result<MatrixCentralizer> {
    check_square_family(mats, Some(dim))?;
    if let Some(m) = mats.iter().find(|m| m.field() != field) {
        return Err(Error::LevelMismatch(field.level(), m.field().level()));
    }
    let unknowns = dim * dim;
    if unknowns > DIMENSION_GUARD {
        return Err(Error::TruncationTooLarge { dim: unknowns, limit: DIMENSION_GUARD });
    }
    let var = |r: usize, c: usize| c * dim + r;
    let mut ech = RowEchelon::new(field.clone());
    for m in mats {
        for r in 0..dim {
            for c in 0..dim {
                // (X m - m X)[r][c] = sum_k X[r][k] m[k][c] - m[r][k] X[k][c]
                let mut row = SparseVec::new();
                for k in 0..dim {
                    let a = m.get(k, c);
                    if !a.is_zero() {
                        linalg::axpy(&mut row, a, &SparseVec::from([(var(r, k), field.one())]));
                    }
                    let b = m.get(r, k);
                    if !b.is_zero() {
                        linalg::axpy(&mut row, &-b, &SparseVec::from([(var(k, c), field.one())]));
                    }
                }
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
    }
    let basis: Vec<ExactMatrix> =
        ech.nullspace(unknowns).iter().map(|v| ExactMatrix::from_sparse_vec(field, dim, dim, v)).collect();
    Ok(MatrixCentralizer { dimension: basis.len(), basis })
}

/// Centralizer of `mats` inside the span of `within` (which need not be
/// linearly independent).
pub fn relative_centralizer(mats: &[ExactMatrix], within: &[ExactMatrix]) -> Result<MatrixCentralizer> {
    let Some(first) = within.first() else {
        return Ok(MatrixCentralizer { dimension: 0, basis: Vec::new() });
    };
    let field = first.field().clone();
    let mut all = within.to_vec();
    all.extend_from_slice(mats);
    check_square_family(&all, None)?;

    let mut ech = RowEchelon::new(field.clone());
    let span: Vec<&ExactMatrix> = within.iter().filter(|w| ech.insert(w.to_sparse_vec())).collect();

    let mut eqs: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for (p, m) in mats.iter().enumerate() {
        for (t, w) in span.iter().enumerate() {
            for (k, e) in w.commutator(m)?.to_sparse_vec() {
                eqs.entry((p, k)).or_default().insert(t, e);
            }
        }
    }
    let kernel = linalg::nullspace(&field, eqs.into_values(), span.len());
    let n = first.rows();
    let basis = kernel
        .iter()
        .map(|v| {
            v.iter().try_fold(ExactMatrix::zeros(&field, n, n), |acc, (&t, c)| acc.add(&span[t].scale(c)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MatrixCentralizer { dimension: basis.len(), basis })
}
