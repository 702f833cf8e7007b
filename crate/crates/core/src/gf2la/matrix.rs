use std::fmt;

use super::BitVector;
use crate::galois::PolyF2;
use crate::{Error, Result};

/// Dense matrix over GF(2) stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GF2Matrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<BitVector>,
}

/// Reduced row echelon form together with its pivot columns.
///
/// `pivots[i]` is the pivot column of row `i` for `i < rank`; rows at or
/// beyond `rank` are zero.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: GF2Matrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row space of a matrix, kept in reduced echelon form for repeated
/// membership queries.
#[derive(Clone, Debug)]
pub struct RowSpace {
    ncols: usize,
    basis: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(m: &GF2Matrix) -> Self {
        let ech = m.rref();
        let rank = ech.rank();
        let basis = ech.reduced.rows.into_iter().take(rank).collect();
        RowSpace {
            ncols: m.ncols,
            basis,
            pivots: ech.pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        assert_eq!(
            v.len(),
            self.ncols,
            "vector length does not match column count"
        );
        let mut w = v.clone();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if w.get(pc) {
                w.xor_assign(row);
            }
        }
        w.is_zero()
    }
}

impl GF2Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        GF2Matrix {
            nrows,
            ncols,
            rows: vec![BitVector::zeros(ncols); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| BitVector::unit(n, i)).collect();
        GF2Matrix {
            nrows: n,
            ncols: n,
            rows,
        }
    }

    /// Builds a matrix from rows of equal length. `ncols` is needed so that
    /// a 0-row matrix still knows its width.
    pub fn from_rows(ncols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has length {} but ncols = {ncols}",
                rows[bad].len()
            )));
        }
        Ok(GF2Matrix {
            nrows: rows.len(),
            ncols,
            rows,
        })
    }

    /// Builds a matrix from 0/1 rows. Panics on ragged input.
    pub fn from_dense<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let rows: Vec<BitVector> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.as_ref().len(), ncols, "ragged dense matrix");
                BitVector::from_u8s(r.as_ref())
            })
            .collect();
        GF2Matrix {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    /// `N x N` circulant of `p`: row `i` holds the coefficients of
    /// `z^i p(z) mod z^N - 1`, i.e. entry `(i, j)` is the coefficient of
    /// `z^((j - i) mod N)`.
    pub fn circulant(p: &PolyF2, n: usize) -> Self {
        let base = p.reduce_cyclic(n);
        let exps = base.exponents();
        let rows = (0..n)
            .map(|i| BitVector::from_support(n, exps.iter().map(|&e| (e + i) % n)))
            .collect();
        GF2Matrix {
            nrows: n,
            ncols: n,
            rows,
        }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.rows[r].flip(c);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut col = BitVector::zeros(self.nrows);
        for (r, row) in self.rows.iter().enumerate() {
            if row.get(c) {
                col.set(r, true);
            }
        }
        col
    }

    pub fn columns(&self) -> Vec<BitVector> {
        self.transpose().rows
    }

    /// Column-wise concatenation `[self | right]`.
    pub fn hconcat(&self, right: &GF2Matrix) -> Result<GF2Matrix> {
        if self.nrows != right.nrows {
            return Err(Error::DimensionMismatch(format!(
                "hconcat of {} rows with {} rows",
                self.nrows, right.nrows
            )));
        }
        let rows = self
            .rows
            .iter()
            .zip(&right.rows)
            .map(|(a, b)| a.concat(b))
            .collect();
        Ok(GF2Matrix {
            nrows: self.nrows,
            ncols: self.ncols + right.ncols,
            rows,
        })
    }

    /// Row-wise stacking.
    pub fn vconcat(&self, below: &GF2Matrix) -> Result<GF2Matrix> {
        if self.ncols != below.ncols {
            return Err(Error::DimensionMismatch(format!(
                "vconcat of {} columns with {} columns",
                self.ncols, below.ncols
            )));
        }
        let mut rows = self.rows.clone();
        rows.extend(below.rows.iter().cloned());
        Ok(GF2Matrix {
            nrows: rows.len(),
            ncols: self.ncols,
            rows,
        })
    }

    pub fn transpose(&self) -> GF2Matrix {
        let mut out = GF2Matrix::zeros(self.ncols, self.nrows);
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                out.rows[c].set(r, true);
            }
        }
        out
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &GF2Matrix) -> Result<GF2Matrix> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let rows = self.rows.iter().map(|row| other.vecmat(row)).collect();
        Ok(GF2Matrix {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        })
    }

    /// `M x` for a column vector `x`. Panics if `x.len() != ncols`.
    pub fn matvec(&self, x: &BitVector) -> BitVector {
        assert_eq!(
            x.len(),
            self.ncols,
            "matvec: vector length does not match column count"
        );
        let mut out = BitVector::zeros(self.nrows);
        for (r, row) in self.rows.iter().enumerate() {
            if row.dot(x) {
                out.set(r, true);
            }
        }
        out
    }

    /// `u^T M` for a row vector `u`. Panics if `u.len() != nrows`.
    pub fn vecmat(&self, u: &BitVector) -> BitVector {
        assert_eq!(
            u.len(),
            self.nrows,
            "vecmat: vector length does not match row count"
        );
        let mut out = BitVector::zeros(self.ncols);
        for r in u.iter_ones() {
            out.xor_assign(&self.rows[r]);
        }
        out
    }

    /// Reduced row echelon form. Pivot rule: leftmost column with a nonzero
    /// entry among the remaining rows, topmost such row.
    pub fn rref(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let pivots = eliminate(&mut rows, self.ncols, &mut ());
        Echelon {
            reduced: GF2Matrix {
                nrows: self.nrows,
                ncols: self.ncols,
                rows,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Rows spanning `{u : u M = 0}`, with `nrows(M) - rank(M)` rows.
    pub fn left_nullspace_basis(&self) -> GF2Matrix {
        let mut rows = self.rows.clone();
        let mut history: Vec<BitVector> = (0..self.nrows)
            .map(|i| BitVector::unit(self.nrows, i))
            .collect();
        let rank = eliminate(&mut rows, self.ncols, &mut history).len();
        let basis = history.into_iter().skip(rank).collect();
        GF2Matrix {
            nrows: self.nrows - rank,
            ncols: self.nrows,
            rows: basis,
        }
    }

    /// Some `x` with `M x = s`, or `None` when no solution exists. Free
    /// variables are set to zero, so the result is deterministic.
    pub fn solve(&self, s: &BitVector) -> Option<BitVector> {
        assert_eq!(
            s.len(),
            self.nrows,
            "solve: target length does not match row count"
        );
        let mut rows = self.rows.clone();
        let mut rhs = s.clone();
        let pivots = eliminate(&mut rows, self.ncols, &mut rhs);
        let rank = pivots.len();
        if rhs.next_one(rank).is_some() {
            return None;
        }
        let mut x = BitVector::zeros(self.ncols);
        for (r, &c) in pivots.iter().enumerate() {
            if rhs.get(r) {
                x.set(c, true);
            }
        }
        Some(x)
    }

    /// Whether `v` is a GF(2) combination of the rows.
    pub fn in_rowspace(&self, v: &BitVector) -> bool {
        RowSpace::new(self).contains(v)
    }

    /// One line per row, characters `0`/`1`.
    pub fn dump(&self) -> String {
        let mut s = String::with_capacity(self.nrows * (self.ncols + 1));
        for row in &self.rows {
            s.push_str(&row.to_string());
            s.push('\n');
        }
        s
    }

    /// Parses the [`dump`](Self::dump) format. Blank lines are ignored.
    pub fn parse_dump(text: &str) -> Result<GF2Matrix> {
        let mut rows = Vec::new();
        let mut ncols = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut bits = Vec::with_capacity(line.len());
            for ch in line.chars() {
                match ch {
                    '0' => bits.push(0u8),
                    '1' => bits.push(1u8),
                    other => {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            msg: format!("unexpected character {other:?} in matrix dump"),
                        })
                    }
                }
            }
            match ncols {
                None => ncols = Some(bits.len()),
                Some(n) if n != bits.len() => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("row has {} columns, expected {n}", bits.len()),
                    })
                }
                _ => {}
            }
            rows.push(BitVector::from_u8s(&bits));
        }
        GF2Matrix::from_rows(ncols.unwrap_or(0), rows)
    }
}

/// Data carried along with the rows during elimination.
pub(crate) trait Companion {
    fn swap(&mut self, a: usize, b: usize);
    fn xor_into(&mut self, dst: usize, src: usize);
}

impl Companion for () {
    fn swap(&mut self, _: usize, _: usize) {}
    fn xor_into(&mut self, _: usize, _: usize) {}
}

/// One companion row per matrix row (e.g. the row-operation history).
impl Companion for Vec<BitVector> {
    fn swap(&mut self, a: usize, b: usize) {
        self.as_mut_slice().swap(a, b);
    }
    fn xor_into(&mut self, dst: usize, src: usize) {
        let s = self[src].clone();
        self[dst].xor_assign(&s);
    }
}

/// One companion bit per matrix row (a right-hand side).
impl Companion for BitVector {
    fn swap(&mut self, a: usize, b: usize) {
        let (va, vb) = (self.get(a), self.get(b));
        self.set(a, vb);
        self.set(b, va);
    }
    fn xor_into(&mut self, dst: usize, src: usize) {
        if self.get(src) {
            self.flip(dst);
        }
    }
}

/// Gauss-Jordan elimination in place, mirroring every row operation onto
/// `companion`. Returns the pivot column of each nonzero row.
pub(crate) fn eliminate<C: Companion + ?Sized>(
    rows: &mut [BitVector],
    ncols: usize,
    companion: &mut C,
) -> Vec<usize> {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| rows[r].get(c)) else {
            continue;
        };
        if p != rank {
            rows.swap(p, rank);
            companion.swap(p, rank);
        }
        let (head, tail) = rows.split_at_mut(rank);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row exists");
        for (i, row) in head.iter_mut().enumerate() {
            if row.get(c) {
                row.xor_assign(pivot_row);
                companion.xor_into(i, rank);
            }
        }
        for (j, row) in tail.iter_mut().enumerate() {
            if row.get(c) {
                row.xor_assign(pivot_row);
                companion.xor_into(rank + 1 + j, rank);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    pivots
}

impl fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GF2Matrix {}x{}", self.nrows, self.ncols)?;
        f.write_str(&self.dump())
    }
}
