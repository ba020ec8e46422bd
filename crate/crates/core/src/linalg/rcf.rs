//! Rational canonical form through the Smith form of `xI + M`.

use super::matrix::Matrix;
use super::polymatrix::PolyMatrix;
use crate::gf::{factor, Elem, Field, Poly};

/// `transform * M * transform^-1` is block diagonal with one companion block
/// per elementary divisor, in the listed order. `basis` is `transform^-1`;
/// its columns are the cyclic bases `w, Mw, M^2 w, ...` of the blocks.
#[derive(Clone, Debug)]
pub struct RationalCanonicalForm {
    pub elementary_divisors: Vec<(Poly, usize)>,
    pub transform: Matrix,
    pub basis: Matrix,
}

impl RationalCanonicalForm {
    /// The block-diagonal matrix of companion blocks.
    pub fn canonical_matrix(&self, field: &Field) -> Matrix {
        let blocks: Vec<Matrix> =
            self.elementary_divisors.iter().map(|(f, l)| companion(&f.pow(*l as u64))).collect();
        Matrix::block_diag(field, &blocks.iter().collect::<Vec<_>>())
    }
}

/// Companion matrix of a monic polynomial: ones on the subdiagonal and the
/// low coefficients in the last column, so `e_i -> e_{i+1}` and
/// `e_{n-1} -> sum c_i e_i`.
pub fn companion(p: &Poly) -> Matrix {
    assert!(p.is_monic(), "companion of a non-monic polynomial");
    let field = p.field();
    let n = p.degree().unwrap();
    let mut c = Matrix::zeros(field, n, n);
    for i in 0..n {
        if i + 1 < n {
            c.set(i + 1, i, Elem::ONE);
        }
        c.set(i, n - 1, p.coeff(i));
    }
    c
}

/// `p(M) v` by Horner's rule.
pub fn eval_at(p: &Poly, m: &Matrix, v: &[Elem]) -> Vec<Elem> {
    let field = m.field();
    let mut acc = vec![Elem::ZERO; v.len()];
    for &c in p.coeffs().iter().rev() {
        acc = m.mul_vec(&acc);
        if !c.is_zero() {
            for (a, &x) in acc.iter_mut().zip(v) {
                *a += field.mul(c, x);
            }
        }
    }
    acc
}

/// Invariant factors of `M` (the non-unit Smith diagonal of `xI + M`), each
/// paired with a generator of the matching cyclic summand.
pub fn invariant_factors(m: &Matrix) -> Vec<(Poly, Vec<Elem>)> {
    assert!(m.is_square(), "rcf of a non-square matrix");
    let field = m.field();
    let n = m.rows();
    let pencil = PolyMatrix::pencil(m, &Matrix::identity(field, n));
    let smith = pencil.smith_form();
    let mut out = Vec::new();
    for (i, d) in smith.diagonal.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let mut v = vec![Elem::ZERO; n];
        for j in 0..n {
            let e = eval_at(smith.left_inv.get(j, i), m, &unit(n, j));
            for (a, x) in v.iter_mut().zip(e) {
                *a += x;
            }
        }
        out.push((d.clone(), v));
    }
    out
}

fn unit(n: usize, j: usize) -> Vec<Elem> {
    let mut e = vec![Elem::ZERO; n];
    e[j] = Elem::ONE;
    e
}

pub fn rcf(m: &Matrix) -> RationalCanonicalForm {
    let field = m.field();
    let n = m.rows();
    let mut blocks: Vec<(Poly, usize, Poly, Vec<Elem>)> = Vec::new();
    for (d, v) in invariant_factors(m) {
        let fac = factor(&d).expect("invariant factor is nonzero");
        for (f, l) in fac.factors {
            let power = f.pow(l as u64);
            let cofactor = d.div_exact(&power).expect("primary part divides");
            blocks.push((f, l, power, eval_at(&cofactor, m, &v)));
        }
    }
    blocks.sort_by(|a, b| {
        let (da, db) = (a.2.degree().unwrap(), b.2.degree().unwrap());
        db.cmp(&da).then_with(|| a.2.cmp(&b.2))
    });
    let mut columns = Vec::with_capacity(n);
    for (_, _, power, w) in &blocks {
        let mut x = w.clone();
        for _ in 0..power.degree().unwrap() {
            let next = m.mul_vec(&x);
            columns.push(std::mem::replace(&mut x, next));
        }
    }
    let basis = Matrix::from_columns(field, n, &columns);
    let transform = basis.inverse().expect("cyclic bases span the space");
    RationalCanonicalForm {
        elementary_divisors: blocks.into_iter().map(|(f, l, _, _)| (f, l)).collect(),
        transform,
        basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &Matrix) -> RationalCanonicalForm {
        let r = rcf(m);
        let conj = r.transform.mul(m).mul(&r.basis);
        assert_eq!(conj, r.canonical_matrix(m.field()));
        let total: usize = r.elementary_divisors.iter().map(|(f, l)| f.degree().unwrap() * l).sum();
        assert_eq!(total, m.rows());
        r
    }

    fn p(f: &Field, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }

    #[test]
    fn nilpotent_jordan_block() {
        let f = Field::gf2();
        let m = Matrix::from_rows(&f, &[&[0, 0], &[1, 0]]);
        assert_eq!(check(&m).elementary_divisors, vec![(p(&f, "x"), 2)]);
    }

    #[test]
    fn identity_is_semisimple() {
        let f = Field::gf2();
        let r = check(&Matrix::identity(&f, 2));
        assert_eq!(r.elementary_divisors, vec![(p(&f, "x+1"), 1), (p(&f, "x+1"), 1)]);
    }

    #[test]
    fn companion_of_irreducible() {
        let f = Field::gf2();
        let c = companion(&p(&f, "x^2+x+1"));
        assert_eq!(check(&c).elementary_divisors, vec![(p(&f, "x^2+x+1"), 1)]);
    }

    #[test]
    fn mixed_blocks_sorted() {
        let f = Field::gf2m(2).unwrap();
        let a = companion(&p(&f, "x+2").pow(2));
        let b = companion(&p(&f, "x^2+x+2"));
        let c = companion(&p(&f, "x+3"));
        let m = Matrix::block_diag(&f, &[&c, &a, &b]);
        let r = check(&m);
        let degs: Vec<usize> =
            r.elementary_divisors.iter().map(|(g, l)| g.degree().unwrap() * l).collect();
        assert_eq!(degs, [2, 2, 1]);
    }
}
