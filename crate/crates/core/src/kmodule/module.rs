use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;

/// A representation of the Klein four group in characteristic 2, given by the
/// actions of `a = 1 + σ` and `b = 1 + τ`. Always satisfies `A² = B² = 0`
/// and `AB = BA`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KModule {
    field: Field,
    a: Matrix,
    b: Matrix,
}

/// A subspace of `ambient` closed under both actions, spanned by the
/// independent columns of `inclusion`.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub ambient: KModule,
    pub inclusion: Matrix,
}

impl KModule {
    /// Checks the defining relations in the order `A² = 0`, `B² = 0`, `AB = BA`.
    pub fn new(a: Matrix, b: Matrix) -> Result<KModule> {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch);
        }
        if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
            return Err(Error::ShapeMismatch(format!(
                "A is {}x{}, B is {}x{}; both must be n x n",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        if !a.mul(&a).is_zero() {
            return Err(Error::NotSquareZeroA);
        }
        if !b.mul(&b).is_zero() {
            return Err(Error::NotSquareZeroB);
        }
        if a.mul(&b) != b.mul(&a) {
            return Err(Error::NotCommuting);
        }
        Ok(KModule { field: a.field().clone(), a, b })
    }

    pub fn zero(field: &Field) -> KModule {
        KModule { field: field.clone(), a: Matrix::zeros(field, 0, 0), b: Matrix::zeros(field, 0, 0) }
    }

    /// Skips validation; callers guarantee the relations.
    pub(crate) fn from_parts(a: Matrix, b: Matrix) -> KModule {
        debug_assert!(KModule::new(a.clone(), b.clone()).is_ok());
        KModule { field: a.field().clone(), a, b }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    /// The module on the basis given by the columns of the invertible `p`:
    /// actions `p⁻¹ A p` and `p⁻¹ B p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<KModule> {
        let inv = p.inverse().ok_or_else(|| Error::ShapeMismatch("basis change is singular".into()))?;
        Ok(KModule::from_parts(inv.mul(&self.a).mul(p), inv.mul(&self.b).mul(p)))
    }

    /// The same matrices over an extension of GF(2); only defined when this
    /// module lives over the prime field, whose elements embed bitwise.
    pub fn extend_scalars(&self, field: &Field) -> Result<KModule> {
        if self.field.degree() != 1 {
            return Err(Error::FieldMismatch);
        }
        let lift = |m: &Matrix| Matrix::new(field, m.rows(), m.cols(), m.entries().to_vec()).expect("sized");
        Ok(KModule::from_parts(lift(&self.a), lift(&self.b)))
    }

    /// The contragredient module: transposed actions.
    pub fn dual(&self) -> KModule {
        KModule::from_parts(self.a.transpose(), self.b.transpose())
    }

    /// `im A + im B` as a reduced-echelon column basis.
    pub fn radical(&self) -> Submodule {
        let span = Matrix::hstack(&self.field, self.dim(), &[&self.a, &self.b]).column_space();
        Submodule { ambient: self.clone(), inclusion: span }
    }

    /// `ker A ∩ ker B`.
    pub fn socle(&self) -> Submodule {
        let stacked = Matrix::vstack(&self.field, self.dim(), &[&self.a, &self.b]);
        Submodule { ambient: self.clone(), inclusion: stacked.kernel_matrix() }
    }

    /// Minimal number of generators.
    pub fn radical_quotient_dim(&self) -> usize {
        self.dim() - self.radical().dim()
    }

    /// Number of free summands. Each contributes one dimension to `im AB`.
    pub fn free_rank(&self) -> usize {
        self.a.mul(&self.b).rank()
    }

    pub fn is_projective_free(&self) -> bool {
        self.a.mul(&self.b).is_zero()
    }

    /// `X` with `X A_self = A_other X` and `X B_self = B_other X`.
    pub fn is_hom_to(&self, other: &KModule, x: &Matrix) -> bool {
        x.rows() == other.dim()
            && x.cols() == self.dim()
            && x.mul(&self.a) == other.a.mul(x)
            && x.mul(&self.b) == other.b.mul(x)
    }

    /// Reduced-echelon basis of the intertwiners `self -> other`. The unknown
    /// `X[i][j]` sits at coordinate `i * dim(self) + j`.
    pub fn hom_space(&self, other: &KModule) -> Result<Vec<Matrix>> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let (r, c) = (other.dim(), self.dim());
        let system = intertwiner_system(&self.field, &[(&self.a, &other.a), (&self.b, &other.b)], r, c);
        let (_, kernel) = system.rank_kernel();
        Ok(kernel.iter().map(|v| Matrix::from_flat(&self.field, r, c, v)).collect())
    }
}

/// Linear system in the entries of an `r x c` matrix `X` expressing
/// `X S = T X` for every pair `(S, T)`.
pub(crate) fn intertwiner_system(field: &Field, pairs: &[(&Matrix, &Matrix)], r: usize, c: usize) -> Matrix {
    let unknowns = r * c;
    let mut sys = Matrix::zeros(field, pairs.len() * r * c, unknowns);
    for (p, (s, t)) in pairs.iter().enumerate() {
        for i in 0..r {
            for j in 0..c {
                let row = p * r * c + i * c + j;
                // (X S)_{ij} = sum_k X_{ik} S_{kj}
                for k in 0..c {
                    let v = s.get(k, j);
                    if !v.is_zero() {
                        let idx = i * c + k;
                        sys.set(row, idx, sys.get(row, idx) + v);
                    }
                }
                // (T X)_{ij} = sum_k T_{ik} X_{kj}
                for k in 0..r {
                    let v = t.get(i, k);
                    if !v.is_zero() {
                        let idx = k * c + j;
                        sys.set(row, idx, sys.get(row, idx) + v);
                    }
                }
            }
        }
    }
    sys
}

/// Block-diagonal sum together with the block inclusions.
pub fn direct_sum(field: &Field, modules: &[&KModule]) -> Result<(KModule, Vec<Matrix>)> {
    if modules.iter().any(|m| m.field() != field) {
        return Err(Error::FieldMismatch);
    }
    let a: Vec<&Matrix> = modules.iter().map(|m| m.a()).collect();
    let b: Vec<&Matrix> = modules.iter().map(|m| m.b()).collect();
    let sum = KModule::from_parts(Matrix::block_diag(field, &a), Matrix::block_diag(field, &b));
    let n = sum.dim();
    let mut offset = 0;
    let mut inclusions = Vec::with_capacity(modules.len());
    for m in modules {
        let mut inc = Matrix::zeros(field, n, m.dim());
        for i in 0..m.dim() {
            inc.set(offset + i, i, Elem::ONE);
        }
        offset += m.dim();
        inclusions.push(inc);
    }
    Ok((sum, inclusions))
}

impl Submodule {
    /// Checks independence of the columns and closure under both actions.
    pub fn new(ambient: &KModule, inclusion: Matrix) -> Result<Submodule> {
        if inclusion.rows() != ambient.dim() {
            return Err(Error::ShapeMismatch("inclusion rows must equal the ambient dimension".into()));
        }
        if inclusion.rank() != inclusion.cols() {
            return Err(Error::ShapeMismatch("inclusion columns are dependent".into()));
        }
        let s = Submodule { ambient: ambient.clone(), inclusion };
        if s.action(ambient.a()).is_none() || s.action(ambient.b()).is_none() {
            return Err(Error::ShapeMismatch("subspace is not closed under the action".into()));
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.inclusion.cols()
    }

    fn action(&self, m: &Matrix) -> Option<Matrix> {
        self.inclusion.solve(&m.mul(&self.inclusion))
    }

    /// The submodule as a module on the basis of inclusion columns.
    pub fn restricted(&self) -> KModule {
        let a = self.action(self.ambient.a()).expect("closed under a");
        let b = self.action(self.ambient.b()).expect("closed under b");
        KModule::from_parts(a, b)
    }

    /// Same subspace of the same ambient space.
    pub fn same_span(&self, other: &Submodule) -> bool {
        self.dim() == other.dim()
            && Matrix::hstack(self.ambient.field(), self.ambient.dim(), &[&self.inclusion, &other.inclusion])
                .rank()
                == self.dim()
    }
}
