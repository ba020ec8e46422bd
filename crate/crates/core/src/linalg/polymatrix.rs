//! Matrices over the polynomial ring k[λ] and their Smith normal form.

use std::fmt;

use super::matrix::Matrix;
use crate::gf::{Field, Poly};

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

/// `left * input * right = diag(diagonal)` with unimodular `left`, `right`.
/// Nonzero diagonal entries are monic and each divides the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<Poly>,
    pub left: PolyMatrix,
    pub right: PolyMatrix,
    pub left_inv: PolyMatrix,
    pub right_inv: PolyMatrix,
}

impl PolyMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix { field: field.clone(), rows, cols, data: vec![Poly::zero(field); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(field));
        }
        m
    }

    pub fn from_entries(field: &Field, rows: usize, cols: usize, data: Vec<Poly>) -> PolyMatrix {
        assert_eq!(data.len(), rows * cols, "entry count");
        PolyMatrix { field: field.clone(), rows, cols, data }
    }

    /// The pencil `constant + λ * linear`.
    pub fn pencil(constant: &Matrix, linear: &Matrix) -> PolyMatrix {
        assert_eq!((constant.rows(), constant.cols()), (linear.rows(), linear.cols()));
        let field = constant.field();
        let data = constant
            .entries()
            .iter()
            .zip(linear.entries())
            .map(|(&c, &l)| Poly::new(field, vec![c, l]))
            .collect();
        PolyMatrix { field: field.clone(), rows: constant.rows(), cols: constant.cols(), data }
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

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "polymatrix mul shape");
        let mut out = PolyMatrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(&self.field);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc = acc.add(&a.mul(other.get(k, j)));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "det of non-square polynomial matrix");
        let n = self.rows;
        if n == 0 {
            return Poly::one(&self.field);
        }
        let mut m = self.clone();
        let mut prev = Poly::one(&self.field);
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return Poly::zero(&self.field);
                };
                m.swap_rows(k, p);
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.get(i, j).mul(&pivot).add(&m.get(i, k).mul(m.get(k, j)));
                    m.set(i, j, num.div_exact(&prev).expect("Bareiss division is exact"));
                }
                m.set(i, k, Poly::zero(&self.field));
            }
            prev = pivot;
        }
        m.get(n - 1, n - 1).clone()
    }

    /// Rank over the fraction field k(λ), by fraction-free (Bareiss)
    /// elimination. Entries stay minors of the input, so degrees stay small.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut prev = Poly::one(&self.field);
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !m.get(i, col).is_zero()) else { continue };
            m.swap_rows(rank, p);
            let pivot = m.get(rank, col).clone();
            for i in rank + 1..self.rows {
                let c = m.get(i, col).clone();
                for j in col..self.cols {
                    let num = m.get(i, j).mul(&pivot).add(&c.mul(m.get(rank, j)));
                    m.set(i, j, num.div_exact(&prev).expect("Bareiss division is exact"));
                }
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &Poly) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if !s.is_zero() {
                let v = self.get(dst, j).add(&c.mul(s));
                self.set(dst, j, v);
            }
        }
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: &Poly) {
        for i in 0..self.rows {
            let s = self.get(i, src);
            if !s.is_zero() {
                let v = self.get(i, dst).add(&c.mul(s));
                self.set(i, dst, v);
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: &Poly) {
        for j in 0..self.cols {
            let v = self.get(r, j).mul(c);
            self.set(r, j, v);
        }
    }

    fn scale_col(&mut self, col: usize, c: &Poly) {
        for i in 0..self.rows {
            let v = self.get(i, col).mul(c);
            self.set(i, col, v);
        }
    }

    /// Smith normal form by elementary operations. The pivot is always a
    /// nonzero entry of minimal degree in the trailing block, ties broken by
    /// canonical polynomial order and then by position.
    pub fn smith_form(&self) -> SmithForm {
        let f = &self.field;
        let (r, c) = (self.rows, self.cols);
        let mut w = self.clone();
        let mut ops = Tracker {
            left: PolyMatrix::identity(f, r),
            left_inv: PolyMatrix::identity(f, r),
            right: PolyMatrix::identity(f, c),
            right_inv: PolyMatrix::identity(f, c),
        };
        let mut diagonal = Vec::with_capacity(r.min(c));
        'outer: for t in 0..r.min(c) {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..r {
                    for j in t..c {
                        let e = w.get(i, j);
                        if e.is_zero() {
                            continue;
                        }
                        let better = match best {
                            None => true,
                            Some((bi, bj)) => e < w.get(bi, bj),
                        };
                        if better {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    diagonal.extend((t..r.min(c)).map(|_| Poly::zero(f)));
                    break 'outer;
                };
                if pi != t {
                    w.swap_rows(pi, t);
                    ops.swap_rows(pi, t);
                }
                if pj != t {
                    w.swap_cols(pj, t);
                    ops.swap_cols(pj, t);
                }
                let pivot = w.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..r {
                    if w.get(i, t).is_zero() {
                        continue;
                    }
                    let (q, rem) = w.get(i, t).divrem(&pivot).unwrap();
                    w.add_row(i, t, &q);
                    ops.add_row(i, t, &q);
                    clean &= rem.is_zero();
                }
                for j in t + 1..c {
                    if w.get(t, j).is_zero() {
                        continue;
                    }
                    let (q, rem) = w.get(t, j).divrem(&pivot).unwrap();
                    w.add_col(j, t, &q);
                    ops.add_col(j, t, &q);
                    clean &= rem.is_zero();
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..r)
                    .find(|&i| (t + 1..c).any(|j| !pivot.divides(w.get(i, j))));
                if let Some(i) = offender {
                    let one = Poly::one(f);
                    w.add_row(t, i, &one);
                    ops.add_row(t, i, &one);
                    continue;
                }
                break;
            }
            let lead = w.get(t, t).leading();
            if lead != crate::gf::Elem::ONE {
                let u = Poly::constant(f, f.inv(lead));
                let u_inv = Poly::constant(f, lead);
                w.scale_row(t, &u);
                ops.scale_row(t, &u, &u_inv);
            }
            diagonal.push(w.get(t, t).clone());
        }
        SmithForm {
            diagonal,
            left: ops.left,
            right: ops.right,
            left_inv: ops.left_inv,
            right_inv: ops.right_inv,
        }
    }
}

/// Accumulates the transforms of the Smith reduction together with their
/// inverses.
struct Tracker {
    left: PolyMatrix,
    left_inv: PolyMatrix,
    right: PolyMatrix,
    right_inv: PolyMatrix,
}

impl Tracker {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.left.swap_rows(a, b);
        self.left_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.right.swap_cols(a, b);
        self.right_inv.swap_rows(a, b);
    }

    // Characteristic 2: every elementary operation is its own negation.
    fn add_row(&mut self, dst: usize, src: usize, c: &Poly) {
        self.left.add_row(dst, src, c);
        self.left_inv.add_col(src, dst, c);
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &Poly) {
        self.right.add_col(dst, src, c);
        self.right_inv.add_row(src, dst, c);
    }

    fn scale_row(&mut self, r: usize, u: &Poly, u_inv: &Poly) {
        self.left.scale_row(r, u);
        self.left_inv.scale_col(r, u_inv);
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
