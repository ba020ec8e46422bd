//! Dense matrices over GF(2^m).

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Reduced row echelon form plus the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// From nested row lists of element bits. An empty outer list gives a
    /// `0 x cols` matrix where `cols` must be supplied by the caller's context,
    /// so this constructor takes the expected shape.
    pub fn from_bits(field: &Field, rows: usize, cols: usize, bits: &[Vec<u64>]) -> Result<Matrix> {
        if bits.len() != rows || bits.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!("expected a {rows}x{cols} matrix")));
        }
        let data = bits
            .iter()
            .flatten()
            .map(|&b| field.elem(b))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(field, rows, cols, data)
    }

    /// Convenience for tests and examples: square or rectangular literal over
    /// any field; panics on ragged input.
    pub fn from_rows(field: &Field, rows: &[&[u16]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix literal");
        let data = rows.iter().flat_map(|r| r.iter().map(|&b| Elem(b))).collect();
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Elem>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn to_bits(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|e| e.0 as u64).collect()).collect()
    }

    pub fn field(&self) -> &Field {
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add: shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "mul: {}x{} times {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                axpy(&self.field, dst, a, src);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols, "mul_vec: length mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Elem::ZERO, |acc, (&a, &b)| acc + f.mul(a, b))
            })
            .collect()
    }

    /// Horizontal concatenation; all blocks must share a row count.
    pub fn hstack(field: &Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack: row mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, off + j, b.get(i, j));
                }
            }
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks must share a column count.
    pub fn vstack(field: &Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack: column mismatch");
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn block_diag(field: &Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let mut out = Matrix::zeros(&self.field, r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j));
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m);
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        rref_in_place(&mut m).len()
    }

    /// Rank and a kernel basis: one vector per free column in increasing
    /// column order, with that free variable set to one and the others zero.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Elem>>) {
        let Echelon { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Elem::ZERO; self.cols];
            v[free] = Elem::ONE;
            for (r, &p) in pivots.iter().enumerate() {
                // x_p = -sum(reduced[r][free] x_free); negation is the identity.
                v[p] = reduced.get(r, free);
            }
            basis.push(v);
        }
        (pivots.len(), basis)
    }

    /// Kernel basis as the columns of a `cols x nullity` matrix.
    pub fn kernel_matrix(&self) -> Matrix {
        let (_, basis) = self.rank_kernel();
        Matrix::from_columns(&self.field, self.cols, &basis)
    }

    /// One solution of `self * X = target`, free variables set to zero.
    pub fn solve(&self, target: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, target.rows, "solve: row mismatch");
        let aug = Matrix::hstack(&self.field, self.rows, &[self, target]);
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(&self.field, self.cols, target.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..target.cols {
                x.set(p, j, reduced.get(r, self.cols + j));
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, target: &[Elem]) -> Option<Vec<Elem>> {
        let t = Matrix::from_columns(&self.field, self.rows, &[target.to_vec()]);
        self.solve(&t).map(|x| x.column(0))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Matrix::identity(&self.field, self.rows))?;
        (self.rank() == self.rows).then_some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Determinant by elimination (square matrices only).
    pub fn det(&self) -> Elem {
        assert!(self.is_square(), "det of non-square matrix");
        let f = self.field.clone();
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Elem::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return Elem::ZERO;
            };
            if p != c {
                m.swap_rows(p, c);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv);
            for r in c + 1..n {
                let factor = f.mul(m.get(r, c), inv);
                if !factor.is_zero() {
                    m.add_row_multiple(r, c, factor);
                }
            }
        }
        det
    }

    /// Reduced-echelon basis of the column span, as columns.
    pub fn column_space(&self) -> Matrix {
        let Echelon { reduced, pivots } = self.transpose().rref();
        let k = pivots.len();
        reduced.submatrix(0, k, 0, self.rows).transpose()
    }

    /// Standard basis vectors, chosen greedily in index order, completing the
    /// (independent) columns of `self` to a basis of the ambient space.
    pub fn complement_basis(&self) -> Matrix {
        let mut span = EchelonBasis::new(&self.field, self.rows);
        for c in self.columns() {
            span.insert(&c);
        }
        let mut chosen = Vec::new();
        for i in 0..self.rows {
            let mut e = vec![Elem::ZERO; self.rows];
            e[i] = Elem::ONE;
            if span.insert(&e) {
                chosen.push(e);
            }
        }
        Matrix::from_columns(&self.field, self.rows, &chosen)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[dst] += c * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: Elem) {
        assert_ne!(dst, src);
        let cols = self.cols;
        let (d, s) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * cols);
            (&mut lo[dst * cols..(dst + 1) * cols], &hi[..cols])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * cols);
            (&mut hi[..cols], &lo[src * cols..(src + 1) * cols])
        };
        axpy(&self.field, d, c, s);
    }

    fn scale_row(&mut self, r: usize, c: Elem) {
        let f = self.field.clone();
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v = f.mul(*v, c);
        }
    }

    /// Row-major flattening, used to treat matrices as vectors.
    pub fn flatten(&self) -> Vec<Elem> {
        self.data.clone()
    }

    pub fn from_flat(field: &Field, rows: usize, cols: usize, v: &[Elem]) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: v.to_vec() }
    }
}

/// `dst += c * src`.
#[inline]
pub(crate) fn axpy(field: &Field, dst: &mut [Elem], c: Elem, src: &[Elem]) {
    if c.is_zero() {
        return;
    }
    if c == Elem::ONE {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d += s;
        }
    } else {
        for (d, &s) in dst.iter_mut().zip(src) {
            if !s.is_zero() {
                *d += field.mul(c, s);
            }
        }
    }
}

fn rref_in_place(m: &mut Matrix) -> Vec<usize> {
    let f = m.field.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        let piv = m.get(r, c);
        if piv != Elem::ONE {
            m.scale_row(r, f.inv(piv));
        }
        for i in 0..m.rows {
            if i != r {
                let factor = m.get(i, c);
                if !factor.is_zero() {
                    m.add_row_multiple(i, r, factor);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Incrementally maintained echelon basis of a subspace of `F^n`; used for
/// greedy, order-dependent basis selection.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: Field,
    n: usize,
    // (pivot index, vector with 1 at pivot)
    rows: Vec<(usize, Vec<Elem>)>,
}

impl EchelonBasis {
    pub fn new(field: &Field, n: usize) -> EchelonBasis {
        EchelonBasis { field: field.clone(), n, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.n);
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let c = v[*p];
            if !c.is_zero() {
                axpy(&self.field, &mut v, c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.reduce(v).iter().all(|e| e.is_zero())
    }

    /// Adds `v` if it is independent; returns whether it was added.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let inv = self.field.inv(r[p]);
        for e in &mut r {
            *e = self.field.mul(*e, inv);
        }
        for (_, row) in &mut self.rows {
            let c = row[p];
            if !c.is_zero() {
                axpy(&self.field, row, c, &r);
            }
        }
        self.rows.push((p, r));
        true
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.0.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl std::ops::Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        Matrix::mul(self, rhs)
    }
}

impl std::ops::Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        Matrix::add(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::gf2()
    }

    #[test]
    fn rank_kernel_examples() {
        let f = gf2();
        let (r, k) = Matrix::from_rows(&f, &[&[1, 1], &[1, 1]]).rank_kernel();
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![Elem(1), Elem(1)]]);

        let (r, k) = Matrix::identity(&f, 3).rank_kernel();
        assert_eq!((r, k.len()), (3, 0));

        let (r, k) = Matrix::zeros(&f, 2, 3).rank_kernel();
        assert_eq!((r, k.len()), (0, 3));
    }

    #[test]
    fn solve_examples() {
        let f = gf2();
        let t = vec![Elem(1), Elem(0), Elem(1)];
        assert_eq!(Matrix::identity(&f, 3).solve_vec(&t), Some(t.clone()));
        assert_eq!(
            Matrix::from_rows(&f, &[&[1, 1]]).solve_vec(&[Elem(1)]),
            Some(vec![Elem(1), Elem(0)])
        );
        assert_eq!(Matrix::zeros(&f, 2, 2).solve_vec(&[Elem(1), Elem(0)]), None);
    }

    #[test]
    fn inverse_and_det_over_gf8() {
        let f = Field::gf2m(3).unwrap();
        let m = Matrix::from_rows(&f, &[&[3, 1, 0], &[5, 7, 2], &[0, 4, 6]]);
        let inv = m.inverse().expect("invertible");
        assert_eq!(&m * &inv, Matrix::identity(&f, 3));
        assert!(!m.det().is_zero());
        let sing = Matrix::from_rows(&f, &[&[3, 6], &[3, 6]]);
        assert!(sing.inverse().is_none());
        assert!(sing.det().is_zero());
    }

    #[test]
    fn column_space_is_reduced() {
        let f = gf2();
        let m = Matrix::from_rows(&f, &[&[1, 1, 0], &[1, 1, 0], &[0, 1, 1]]);
        let cs = m.column_space();
        assert_eq!(cs.cols(), 2);
        assert_eq!(cs.column(0), vec![Elem(1), Elem(1), Elem(0)]);
        assert_eq!(cs.column(1), vec![Elem(0), Elem(0), Elem(1)]);
        let comp = cs.complement_basis();
        assert_eq!(comp.column(0), vec![Elem(1), Elem(0), Elem(0)]);
    }

    #[test]
    fn echelon_basis_membership() {
        let f = Field::gf2m(2).unwrap();
        let mut b = EchelonBasis::new(&f, 3);
        assert!(b.insert(&[Elem(2), Elem(3), Elem(0)]));
        assert!(!b.insert(&[Elem(3), Elem(1), Elem(0)])); // alpha times the first
        assert!(b.contains(&[Elem(1), Elem(2), Elem(0)]));
        assert!(b.insert(&[Elem(0), Elem(0), Elem(1)]));
        assert_eq!(b.dim(), 2);
    }
}
