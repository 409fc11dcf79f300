//! Exact linear algebra over the two-element field.
//!
//! Vectors are bit-packed into `u64` words and every elimination step is a
//! word-level XOR. Pivots are chosen as the first nonzero entry in row order,
//! so a reduction is fully determined by the input rows.

use std::fmt;

use crate::error::{Result, TopologyError};

const WORD: usize = 64;

/// A dense vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn unit(len: usize, bit: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(bit, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len` with the listed positions set.
    /// Repeated positions cancel, as they would in a GF(2) sum.
    pub fn from_support(len: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// In-place addition.
    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Parity of the bitwise AND, i.e. the GF(2) dot product.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot product");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Positions of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    /// Appends `other` after `self`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

/// A dense matrix over GF(2), stored as bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<BitVec>,
}

impl Gf2Matrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            rows: vec![BitVec::zeros(n_cols); n_rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n_rows: n,
            n_cols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows that must all have length `n_cols`.
    pub fn from_rows(n_cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(TopologyError::DimensionMismatch {
                expected: n_cols,
                found: bad.len(),
            });
        }
        Ok(Self {
            n_rows: rows.len(),
            n_cols,
            rows,
        })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `n_rows`.
    pub fn from_columns(n_rows: usize, cols: &[BitVec]) -> Result<Self> {
        let mut m = Self::zeros(n_rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != n_rows {
                return Err(TopologyError::DimensionMismatch {
                    expected: n_rows,
                    found: c.len(),
                });
            }
            for i in c.ones() {
                m.rows[i].set(j, true);
            }
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[Vec<u8>]) -> Self {
        let n_cols = rows.first().map_or(0, Vec::len);
        let rows: Vec<BitVec> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), n_cols, "ragged dense matrix");
                BitVec::from_bools(&r.iter().map(|&x| x & 1 == 1).collect::<Vec<_>>())
            })
            .collect();
        Self {
            n_rows: rows.len(),
            n_cols,
            rows,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn column(&self, j: usize) -> BitVec {
        let mut c = BitVec::zeros(self.n_rows);
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn columns(&self) -> Vec<BitVec> {
        self.transpose().rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.n_cols, self.n_rows);
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// Matrix-vector product `M v`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.n_cols {
            return Err(TopologyError::DimensionMismatch {
                expected: self.n_cols,
                found: v.len(),
            });
        }
        let mut out = BitVec::zeros(self.n_rows);
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.n_cols != rhs.n_rows {
            return Err(TopologyError::DimensionMismatch {
                expected: self.n_cols,
                found: rhs.n_rows,
            });
        }
        let mut out = Gf2Matrix::zeros(self.n_rows, rhs.n_cols);
        for (i, r) in self.rows.iter().enumerate() {
            for k in r.ones() {
                out.rows[i].xor_assign(&rhs.rows[k]);
            }
        }
        Ok(out)
    }

    /// Stacks `self` on top of `below`.
    pub fn vstack(&self, below: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.n_cols != below.n_cols {
            return Err(TopologyError::DimensionMismatch {
                expected: self.n_cols,
                found: below.n_cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(below.rows.iter().cloned());
        Gf2Matrix::from_rows(self.n_cols, rows)
    }

    /// Reduced row echelon form; the returned pivots are `(row, column)` pairs
    /// with strictly increasing columns.
    pub fn rref(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.n_cols {
            if next == rows.len() {
                break;
            }
            let Some(found) = (next..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (i, r) in rows.iter_mut().enumerate() {
                if i != next && r.get(col) {
                    r.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
        }
        (
            Gf2Matrix {
                n_rows: self.n_rows,
                n_cols: self.n_cols,
                rows,
            },
            pivots,
        )
    }

    /// Row rank over GF(2).
    pub fn rank(&self) -> usize {
        // Forward elimination only; cheaper than the full RREF.
        let mut basis: Vec<BitVec> = Vec::new();
        let mut pivot_of: Vec<usize> = Vec::new();
        for r in &self.rows {
            let mut v = r.clone();
            for (b, &p) in basis.iter().zip(&pivot_of) {
                if v.get(p) {
                    v.xor_assign(b);
                }
            }
            if let Some(p) = v.first_one() {
                // Keep the basis fully reduced on its pivot columns.
                for b in basis.iter_mut() {
                    if b.get(p) {
                        b.xor_assign(&v);
                    }
                }
                basis.push(v);
                pivot_of.push(p);
            }
        }
        basis.len()
    }

    /// A basis of the null space `{ v : M v = 0 }`, one vector per free column
    /// of the RREF, ordered by free column.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.n_cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.n_cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVec::unit(self.n_cols, free);
                for (row, &p) in pivots.iter().enumerate() {
                    if r.rows[row].get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `M x = b`, or `None` when `b` lies outside the column space.
    pub fn solve_preimage(&self, b: &BitVec) -> Result<Option<BitVec>> {
        if b.len() != self.n_rows {
            return Err(TopologyError::DimensionMismatch {
                expected: self.n_rows,
                found: b.len(),
            });
        }
        let augmented = Gf2Matrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols + 1,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| r.concat(&BitVec::from_bools(&[b.get(i)])))
                .collect(),
        };
        let (r, pivots) = augmented.rref();
        if pivots.last() == Some(&self.n_cols) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.n_cols);
        for (row, &p) in pivots.iter().enumerate() {
            if r.rows[row].get(self.n_cols) {
                x.set(p, true);
            }
        }
        debug_assert_eq!(self.mul_vec(&x)?, *b);
        if self.mul_vec(&x)? != *b {
            return Ok(None);
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.n_rows, self.n_cols)?;
        for r in &self.rows {
            for j in 0..self.n_cols {
                write!(f, "{}", u8::from(r.get(j)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Incrementally built span of vectors, kept in reduced echelon form.
///
/// Each stored vector remembers which inserted generators it is a sum of,
/// so membership queries can also return the combination that realizes them.
#[derive(Clone, Debug)]
pub struct EchelonSpan {
    len: usize,
    reduced: Vec<(usize, BitVec, BitVec)>,
    generators: usize,
    capacity: usize,
}

impl EchelonSpan {
    /// `capacity` bounds the number of generators that may be inserted.
    pub fn new(len: usize, capacity: usize) -> Self {
        Self {
            len,
            reduced: Vec::new(),
            generators: 0,
            capacity,
        }
    }

    pub fn dim(&self) -> usize {
        self.reduced.len()
    }

    fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut v = v.clone();
        let mut combo = BitVec::zeros(self.capacity);
        for (p, b, c) in &self.reduced {
            if v.get(*p) {
                v.xor_assign(b);
                combo.xor_assign(c);
            }
        }
        (v, combo)
    }

    /// Inserts `v` as generator number `self.generators()`; returns whether it
    /// was independent of the current span. Dependent vectors still consume a
    /// generator slot.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.len, "length mismatch in span insert");
        assert!(self.generators < self.capacity, "span capacity exceeded");
        let (residual, mut combo) = self.reduce(v);
        combo.flip(self.generators);
        self.generators += 1;
        match residual.first_one() {
            None => false,
            Some(p) => {
                for (_, b, c) in self.reduced.iter_mut() {
                    if b.get(p) {
                        b.xor_assign(&residual);
                        c.xor_assign(&combo);
                    }
                }
                self.reduced.push((p, residual, combo));
                true
            }
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// If `v` is in the span, a set of generator indices summing to it.
    pub fn express(&self, v: &BitVec) -> Option<BitVec> {
        let (residual, combo) = self.reduce(v);
        residual.is_zero().then_some(combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow_triangle_d1() -> Gf2Matrix {
        // rows: vertices 0,1,2; columns: edges 01, 02, 12
        Gf2Matrix::from_dense(&[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]])
    }

    /// Largest independent row subset by brute force.
    fn brute_rank(m: &Gf2Matrix) -> usize {
        let n = m.n_rows();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let chosen: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let independent = (1u32..(1 << size)).all(|sub| {
                let mut acc = BitVec::zeros(m.n_cols());
                for (k, &i) in chosen.iter().enumerate() {
                    if sub >> k & 1 == 1 {
                        acc.xor_assign(m.row(i));
                    }
                }
                !acc.is_zero()
            });
            if independent {
                best = size;
            }
        }
        best
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::identity(3).rank(), 3);
        assert_eq!(Gf2Matrix::zeros(4, 7).rank(), 0);
        let d1 = hollow_triangle_d1();
        assert_eq!(brute_rank(&d1), 2);
        assert_eq!(d1.rank(), 2);
        assert_eq!(Gf2Matrix::zeros(0, 0).rank(), 0);
        assert_eq!(Gf2Matrix::zeros(0, 5).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(Gf2Matrix::identity(2).kernel_basis().is_empty());
        let k = Gf2Matrix::from_dense(&[vec![1, 1]]).kernel_basis();
        assert_eq!(k, vec![BitVec::from_bools(&[true, true])]);

        let d1 = hollow_triangle_d1();
        let brute: Vec<BitVec> = (1u32..8)
            .map(|m| BitVec::from_support(3, (0..3).filter(|i| m >> i & 1 == 1)))
            .filter(|c| d1.mul_vec(c).unwrap().is_zero())
            .collect();
        assert_eq!(brute, vec![BitVec::from_bools(&[true, true, true])]);
        assert_eq!(d1.kernel_basis(), brute);
    }

    #[test]
    fn solve_examples() {
        let b = BitVec::from_bools(&[true, false, true]);
        let x = Gf2Matrix::identity(3).solve_preimage(&b).unwrap().unwrap();
        assert_eq!(x, b);
        assert!(Gf2Matrix::zeros(3, 3).solve_preimage(&b).unwrap().is_none());

        // vertex 0 + vertex 2 is the boundary of a path from 0 to 2
        let d1 = hollow_triangle_d1();
        let x = d1.solve_preimage(&b).unwrap().unwrap();
        assert_eq!(d1.mul_vec(&x).unwrap(), b);
        let brute: Vec<BitVec> = (0u32..8)
            .map(|m| BitVec::from_support(3, (0..3).filter(|i| m >> i & 1 == 1)))
            .filter(|c| d1.mul_vec(c).unwrap() == b)
            .collect();
        assert!(brute.contains(&x));
        // vertex 0 alone has odd degree and is not a boundary
        assert!(d1.solve_preimage(&BitVec::unit(3, 0)).unwrap().is_none());
    }

    #[test]
    fn solve_rejects_dimension_mismatch() {
        let err = Gf2Matrix::identity(3).solve_preimage(&BitVec::zeros(2));
        assert!(matches!(err, Err(TopologyError::DimensionMismatch { .. })));
    }

    #[test]
    fn bitvec_ones_and_concat() {
        let v = BitVec::from_support(130, [0, 64, 129]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.first_one(), Some(0));
        let w = v.concat(&BitVec::unit(2, 1));
        assert_eq!(w.ones().collect::<Vec<_>>(), vec![0, 64, 129, 131]);
        assert_eq!(BitVec::from_support(4, [1, 1]).count_ones(), 0);
    }

    #[test]
    fn echelon_span_expresses_members() {
        let mut span = EchelonSpan::new(3, 3);
        assert!(span.insert(&BitVec::from_bools(&[true, true, false])));
        assert!(span.insert(&BitVec::from_bools(&[false, true, true])));
        assert!(!span.insert(&BitVec::from_bools(&[true, false, true])));
        let combo = span
            .express(&BitVec::from_bools(&[true, false, true]))
            .unwrap();
        // generator 2 alone, or generators 0 and 1
        assert!(combo == BitVec::from_support(3, [2]) || combo == BitVec::from_support(3, [0, 1]));
        assert!(!span.contains(&BitVec::unit(3, 0)));
    }
}
