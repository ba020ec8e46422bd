//! Splitting summands off a module.

use crate::error::{Error, Result};
use crate::kmodule::{intertwiner_system, KModule, Submodule};
use crate::linalg::Matrix;

/// A direct-sum complement of a submodule.
#[derive(Clone, Debug)]
pub struct Split {
    /// Intertwiner `M -> S` restricting to the identity on `S`.
    pub retraction: Matrix,
    pub complement: KModule,
    /// Columns span `ker(retraction)`; the complement acts on this basis.
    pub complement_inclusion: Matrix,
}

/// Splits `s` off its ambient module. With `T = [ι | C]` for the greedy
/// complement `C`, a retraction has the form `[I | Y] T⁻¹` where `Y` solves
/// `A_S Y + Y A_22 = A_12` and the same for `B`.
pub fn split_off(s: &Submodule) -> Result<Split> {
    let m = &s.ambient;
    let field = m.field();
    let (n, k) = (m.dim(), s.dim());
    let iota = &s.inclusion;
    let cm = iota.complement_basis();
    let t = Matrix::hstack(field, n, &[iota, &cm]);
    let t_inv = t.inverse().ok_or_else(|| Error::Internal("inclusion columns are dependent".into()))?;
    let a_hat = t_inv.mul(m.a()).mul(&t);
    let b_hat = t_inv.mul(m.b()).mul(&t);
    let (a_s, a12, a22) = (a_hat.submatrix(0, k, 0, k), a_hat.submatrix(0, k, k, n), a_hat.submatrix(k, n, k, n));
    let (b_s, b12, b22) = (b_hat.submatrix(0, k, 0, k), b_hat.submatrix(0, k, k, n), b_hat.submatrix(k, n, k, n));
    let sys = intertwiner_system(field, &[(&a22, &a_s), (&b22, &b_s)], k, n - k);
    let rhs = Matrix::vstack(field, 1, &[
        &Matrix::from_flat(field, k * (n - k), 1, &a12.flatten()),
        &Matrix::from_flat(field, k * (n - k), 1, &b12.flatten()),
    ]);
    let y = sys.solve(&rhs).ok_or(Error::NotASummand)?;
    let y = Matrix::from_flat(field, k, n - k, &y.flatten());
    let top = Matrix::hstack(field, k, &[&Matrix::identity(field, k), &y]);
    let retraction = top.mul(&t_inv);
    let complement_inclusion = iota.mul(&y).add(&cm);
    let complement = Submodule { ambient: m.clone(), inclusion: complement_inclusion.clone() }.restricted();
    Ok(Split { retraction, complement, complement_inclusion })
}

/// Kernel of an intertwiner as a module, with its inclusion.
pub fn kernel_of(m: &KModule, map: &Matrix) -> (KModule, Matrix) {
    let inclusion = map.kernel_matrix();
    let sub = Submodule { ambient: m.clone(), inclusion: inclusion.clone() };
    (sub.restricted(), inclusion)
}

/// Free summands of `m`: one embedding `(v, Av, Bv, ABv)` per preimage `v`
/// of the echelon basis of `im AB`, plus the complement they split off.
pub fn strip_free(m: &KModule) -> Result<(Vec<Matrix>, Split)> {
    let field = m.field();
    let ab = m.a().mul(m.b());
    let image = ab.column_space();
    let mut embeddings = Vec::with_capacity(image.cols());
    let mut all = Vec::new();
    for y in image.columns() {
        let v = ab.solve_vec(&y).expect("basis vector lies in the image");
        let av = m.a().mul_vec(&v);
        let bv = m.b().mul_vec(&v);
        let cols = vec![v, av, bv, y];
        all.extend(cols.iter().cloned());
        embeddings.push(Matrix::from_columns(field, m.dim(), &cols));
    }
    let inclusion = Matrix::from_columns(field, m.dim(), &all);
    let split = split_off(&Submodule::new(m, inclusion)?)?;
    Ok((embeddings, split))
}
