//! Exact linear algebra over `Z/N` for arbitrary (composite) `N`.
//!
//! Row spans are kept in Howell normal form: an echelon basis whose pivots divide
//! `N`, whose entries above each pivot are reduced into `[0, pivot)`, and whose
//! span is saturated (every span vector with `k` leading zeros is a combination
//! of the rows with pivot column `>= k`). Two Howell bases over the same modulus
//! and ambient dimension are identical exactly when their spans are equal, which
//! is what every "same submodule" test in the crate relies on.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::zn::{self, Cardinality, MAX_MODULUS};

/// Dense matrix over `Z/N`, row-major, entries in `[0, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZnMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

pub(crate) fn check_modulus(n: u64) -> Result<()> {
    if !(2..=MAX_MODULUS).contains(&n) {
        return Err(Error::BadModulus(n));
    }
    Ok(())
}

impl ZnMatrix {
    pub fn new(modulus: u64, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        check_modulus(modulus)?;
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: entries.len() });
        }
        let data = entries.iter().map(|&e| zn::reduce_signed(e as i128, modulus)).collect();
        Ok(Self { modulus, rows, cols, data })
    }

    pub fn zero(modulus: u64, rows: usize, cols: usize) -> Self {
        Self { modulus, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(modulus: u64, n: usize) -> Self {
        let mut m = Self::zero(modulus, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus;
        }
        m
    }

    /// Build from rows of already-reduced entries. All rows must have length `cols`.
    pub fn from_rows(modulus: u64, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        check_modulus(modulus)?;
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r.iter().map(|&e| e % modulus));
        }
        Ok(Self { modulus, rows: rows.len(), cols, data })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// `x · self` for a row vector `x` of length `rows`.
    pub fn left_mul(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: x.len() });
        }
        let n = self.modulus;
        let mut out = vec![0u64; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            let xi = xi % n;
            if xi == 0 {
                continue;
            }
            axpy(&mut out, xi, self.row(i), 0, n);
        }
        Ok(out)
    }

    /// Row span in Howell form.
    pub fn howell(&self) -> HowellBasis {
        howell(self)
    }
}

/// `dst[start..] += q * src[start..]` modulo `n`.
#[inline]
pub(crate) fn axpy(dst: &mut [u64], q: u64, src: &[u64], start: usize, n: u64) {
    if q == 0 {
        return;
    }
    for (d, &s) in dst[start..].iter_mut().zip(&src[start..]) {
        if s != 0 {
            *d = (*d + q * s) % n;
        }
    }
}

#[inline]
fn scale_row(v: &mut [u64], q: u64, start: usize, n: u64) {
    for x in v[start..].iter_mut() {
        *x = *x * q % n;
    }
}

/// Canonical Howell basis of a `Z/N`-submodule of `(Z/N)^dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HowellBasis {
    modulus: u64,
    dim: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl HowellBasis {
    pub fn zero(modulus: u64, dim: usize) -> Self {
        Self { modulus, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(modulus: u64, dim: usize) -> Self {
        let mut b = HowellBuilder::new(modulus, dim);
        for i in 0..dim {
            let mut e = vec![0; dim];
            e[i] = 1;
            b.insert(e);
        }
        b.finish()
    }

    pub fn from_rows(modulus: u64, dim: usize, rows: &[Vec<u64>]) -> Result<Self> {
        check_modulus(modulus)?;
        let mut b = HowellBuilder::new(modulus, dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: r.len() });
            }
            b.insert(r.iter().map(|&x| x % modulus).collect());
        }
        Ok(b.finish())
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn len(&self) -> usize {
        self.rows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_matrix(&self) -> ZnMatrix {
        ZnMatrix::from_rows(self.modulus, self.dim, &self.rows).expect("rows have ambient length")
    }

    /// Canonical representative of `v` modulo the span.
    pub fn reduce(&self, v: &mut [u64]) {
        let n = self.modulus;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let p = row[c];
            let q = v[c] / p;
            if q != 0 {
                axpy(v, n - q % n, row, c, n);
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut w: Vec<u64> = v.iter().map(|&x| x % self.modulus).collect();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn span_contains(&self, v: &[u64]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        Ok(self.contains(v))
    }

    pub fn span_equal(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self == other)
    }

    pub fn is_subspan_of(&self, other: &Self) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        Ok(())
    }

    /// Number of elements in the span: the product of `N / pivot` over pivots.
    pub fn span_size(&self) -> Cardinality {
        let mut c = Cardinality::one();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            c = c.mul(&Cardinality::from_u64(self.modulus / row[p]));
        }
        c
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut b = HowellBuilder::from_basis(self);
        for r in &other.rows {
            b.insert(r.clone());
        }
        Ok(b.finish())
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let d = self.dim;
        let mut b = HowellBuilder::new(self.modulus, 2 * d);
        for r in &self.rows {
            let mut v = r.clone();
            v.extend_from_slice(r);
            b.insert(v);
        }
        for r in &other.rows {
            let mut v = r.clone();
            v.resize(2 * d, 0);
            b.insert(v);
        }
        Ok(b.finish().tail(d))
    }

    /// Rows whose pivot lies at or after `start`, restricted to the trailing
    /// coordinates. This is the Howell basis of `span ∩ ({0}^start × (Z/N)^rest)`.
    pub fn tail(&self, start: usize) -> Self {
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if c >= start {
                rows.push(row[start..].to_vec());
                pivots.push(c - start);
            }
        }
        Self { modulus: self.modulus, dim: self.dim - start, rows, pivots }
    }

    /// Image under the coordinate projection onto the columns in `cols`.
    pub fn project(&self, cols: &[usize]) -> Self {
        let mut b = HowellBuilder::new(self.modulus, cols.len());
        for r in &self.rows {
            b.insert(cols.iter().map(|&c| r[c]).collect());
        }
        b.finish()
    }

    /// Enumerate every element of the span. Each element appears exactly once.
    pub fn elements(&self) -> SpanElements<'_> {
        SpanElements {
            basis: self,
            counter: vec![0; self.rows.len()],
            orders: self.rows.iter().zip(&self.pivots).map(|(r, &c)| self.modulus / r[c]).collect(),
            done: false,
        }
    }
}

pub struct SpanElements<'a> {
    basis: &'a HowellBasis,
    counter: Vec<u64>,
    orders: Vec<u64>,
    done: bool,
}

impl Iterator for SpanElements<'_> {
    type Item = Vec<u64>;
    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let n = self.basis.modulus;
        let mut v = vec![0u64; self.basis.dim];
        for (row, &k) in self.basis.rows.iter().zip(&self.counter) {
            axpy(&mut v, k, row, 0, n);
        }
        let mut i = 0;
        loop {
            if i == self.counter.len() {
                self.done = true;
                break;
            }
            self.counter[i] += 1;
            if self.counter[i] < self.orders[i] {
                break;
            }
            self.counter[i] = 0;
            i += 1;
        }
        Some(v)
    }
}

/// Incremental Howell basis construction.
///
/// Slot `c` holds the row whose pivot is column `c`. Inserting a vector reduces it
/// against the slots, merging pivots with an extended-gcd step when the pivot
/// does not divide the incoming entry; every newly placed pivot row also queues
/// its annihilator multiple `(N/p)·row` so the span stays saturated.
#[derive(Clone, Debug)]
pub struct HowellBuilder {
    modulus: u64,
    dim: usize,
    slots: Vec<Option<Vec<u64>>>,
}

impl HowellBuilder {
    pub fn new(modulus: u64, dim: usize) -> Self {
        Self { modulus, dim, slots: vec![None; dim] }
    }

    pub fn from_basis(b: &HowellBasis) -> Self {
        let mut s = Self::new(b.modulus, b.dim);
        for (row, &c) in b.rows.iter().zip(&b.pivots) {
            s.slots[c] = Some(row.clone());
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Insert `v` (entries already in `[0, N)`). Returns `true` if the span grew.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let n = self.modulus;
        let mut grew = false;
        let mut work = vec![v];
        while let Some(mut v) = work.pop() {
            let mut c = 0;
            loop {
                while c < self.dim && v[c] == 0 {
                    c += 1;
                }
                if c == self.dim {
                    break;
                }
                match self.slots[c].take() {
                    None => {
                        let w = zn::normalizing_unit(v[c], n);
                        if w != 1 {
                            scale_row(&mut v, w, c, n);
                        }
                        let p = v[c];
                        if p != 1 {
                            let mut ann = v.clone();
                            scale_row(&mut ann, n / p, c, n);
                            if ann.iter().any(|&x| x != 0) {
                                work.push(ann);
                            }
                        }
                        self.slots[c] = Some(v);
                        grew = true;
                        break;
                    }
                    Some(row) => {
                        let p = row[c];
                        let a = v[c];
                        if a % p == 0 {
                            let q = a / p;
                            axpy(&mut v, n - q, &row, c, n);
                            self.slots[c] = Some(row);
                            continue;
                        }
                        let (g, s, t) = zn::ext_gcd(p, a);
                        let s = zn::reduce_signed(s, n);
                        let t = zn::reduce_signed(t, n);
                        let mut new_row = vec![0u64; self.dim];
                        axpy(&mut new_row, s, &row, c, n);
                        axpy(&mut new_row, t, &v, c, n);
                        let mut other = vec![0u64; self.dim];
                        axpy(&mut other, a / g, &row, c, n);
                        axpy(&mut other, n - (p / g) % n, &v, c, n);
                        debug_assert_eq!(new_row[c], g % n);
                        debug_assert_eq!(other[c], 0);
                        if g != 1 {
                            let mut ann = new_row.clone();
                            scale_row(&mut ann, n / g, c, n);
                            if ann.iter().any(|&x| x != 0) {
                                work.push(ann);
                            }
                        }
                        self.slots[c] = Some(new_row);
                        grew = true;
                        v = other;
                    }
                }
            }
        }
        grew
    }

    /// Membership test against the current (saturated, not yet reduced) basis.
    pub fn contains(&self, v: &[u64]) -> bool {
        let n = self.modulus;
        let mut w: Vec<u64> = v.iter().map(|&x| x % n).collect();
        for c in 0..self.dim {
            if w[c] == 0 {
                continue;
            }
            match &self.slots[c] {
                None => return false,
                Some(row) => {
                    let p = row[c];
                    if w[c] % p != 0 {
                        return false;
                    }
                    let q = w[c] / p;
                    axpy(&mut w, n - q, row, c, n);
                }
            }
        }
        true
    }

    pub fn span_size(&self) -> Cardinality {
        let mut c = Cardinality::one();
        for (i, slot) in self.slots.iter().enumerate() {
            if let Some(row) = slot {
                c = c.mul(&Cardinality::from_u64(self.modulus / row[i]));
            }
        }
        c
    }

    /// Reduce entries above pivots and return the canonical basis.
    pub fn finish(self) -> HowellBasis {
        let n = self.modulus;
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut pivots = Vec::new();
        for (c, slot) in self.slots.into_iter().enumerate() {
            if let Some(row) = slot {
                let p = row[c];
                for earlier in rows.iter_mut() {
                    let q = earlier[c] / p;
                    if q != 0 {
                        axpy(earlier, n - q % n, &row, c, n);
                    }
                }
                rows.push(row);
                pivots.push(c);
            }
        }
        HowellBasis { modulus: n, dim: self.dim, rows, pivots }
    }
}

/// Howell basis of the row span of `m`.
pub fn howell(m: &ZnMatrix) -> HowellBasis {
    let mut b = HowellBuilder::new(m.modulus, m.cols);
    for i in 0..m.rows {
        b.insert(m.row(i).to_vec());
    }
    b.finish()
}

/// Howell basis of `[m | I]`, the workhorse behind kernels and solving.
fn augmented(m: &ZnMatrix) -> HowellBasis {
    let width = m.cols + m.rows;
    let mut b = HowellBuilder::new(m.modulus, width);
    for i in 0..m.rows {
        let mut v = vec![0u64; width];
        v[..m.cols].copy_from_slice(m.row(i));
        v[m.cols + i] = 1;
        b.insert(v);
    }
    b.finish()
}

/// Canonical basis of the left kernel `{x : x·m ≡ 0 (mod N)}`.
pub fn kernel(m: &ZnMatrix) -> HowellBasis {
    augmented(m).tail(m.cols)
}

/// A solution of `x·m = b`, or `None`. The returned `x` is the canonical
/// representative of its coset modulo the kernel, so the answer is deterministic.
pub fn solve(m: &ZnMatrix, b: &[u64]) -> Result<Option<Vec<u64>>> {
    if b.len() != m.cols {
        return Err(Error::DimensionMismatch { expected: m.cols, got: b.len() });
    }
    let n = m.modulus;
    let aug = augmented(m);
    let mut v = vec![0u64; m.cols + m.rows];
    for (i, &x) in b.iter().enumerate() {
        v[i] = x % n;
    }
    let mut x = vec![0u64; m.rows];
    for (row, &c) in aug.rows.iter().zip(&aug.pivots) {
        if c >= m.cols {
            break;
        }
        let p = row[c];
        if v[c] % p != 0 {
            return Ok(None);
        }
        let q = v[c] / p;
        if q != 0 {
            axpy(&mut v, n - q, row, c, n);
            axpy(&mut x, q, &row[m.cols..], 0, n);
        }
    }
    if v[..m.cols].iter().any(|&e| e != 0) {
        return Ok(None);
    }
    aug.tail(m.cols).reduce(&mut x);
    Ok(Some(x))
}
