//! Projective-free modules as representations of the Kronecker quiver, and
//! the pencil `ψ1 + λψ2` attached to them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field, Poly};
use crate::kmodule::{KModule, Submodule};
use crate::linalg::{Matrix, PolyMatrix};

/// Two parallel maps `ψ1, ψ2 : k^d1 -> k^d2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub psi1: Matrix,
    pub psi2: Matrix,
}

/// The bases used by [`to_quiver`]: `complement` columns represent the top
/// `M / rad M`, `radical` columns are the reduced-echelon radical basis.
#[derive(Clone, Debug)]
pub struct QuiverBasis {
    pub complement: Matrix,
    pub radical: Matrix,
}

impl QuiverBasis {
    /// `[complement | radical]`, an invertible matrix.
    pub fn matrix(&self) -> Matrix {
        let n = self.complement.rows();
        Matrix::hstack(self.complement.field(), n, &[&self.complement, &self.radical])
    }
}

/// A polynomial vector `g_0 + g_1 λ + ... + g_l λ^l` with `g_l ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilVector {
    pub coeffs: Vec<Vec<Elem>>,
}

impl PencilVector {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Speciality {
    Special,
    /// Nonzero `v` with `ψ1 v = ψ2 v = 0`.
    CommonKernel(Vec<Elem>),
    /// Nonzero functional `φ` with `φ ψ1 = φ ψ2 = 0`.
    Cokernel(Vec<Elem>),
}

impl QuiverRep {
    pub fn new(psi1: Matrix, psi2: Matrix) -> Result<QuiverRep> {
        if psi1.field() != psi2.field() {
            return Err(Error::FieldMismatch);
        }
        if psi1.rows() != psi2.rows() || psi1.cols() != psi2.cols() {
            return Err(Error::ShapeMismatch("psi1 and psi2 must have the same shape".into()));
        }
        Ok(QuiverRep { psi1, psi2 })
    }

    pub fn field(&self) -> &Field {
        self.psi1.field()
    }

    pub fn d1(&self) -> usize {
        self.psi1.cols()
    }

    pub fn d2(&self) -> usize {
        self.psi1.rows()
    }

    pub fn pencil(&self) -> PolyMatrix {
        PolyMatrix::pencil(&self.psi1, &self.psi2)
    }

    pub fn is_special(&self) -> Speciality {
        let stacked = Matrix::vstack(self.field(), self.d1(), &[&self.psi1, &self.psi2]);
        if let Some(v) = stacked.rank_kernel().1.into_iter().next() {
            return Speciality::CommonKernel(v);
        }
        let side = Matrix::hstack(self.field(), self.d2(), &[&self.psi1, &self.psi2]);
        match side.transpose().rank_kernel().1.into_iter().next() {
            Some(phi) => Speciality::Cokernel(phi),
            None => Speciality::Special,
        }
    }

    /// `det(ψ1 + λψ2)`.
    pub fn pencil_determinant(&self) -> Result<Poly> {
        if self.d1() != self.d2() {
            return Err(Error::NotSquare { d1: self.d1(), d2: self.d2() });
        }
        Ok(self.pencil().det())
    }

    /// Rank of the pencil over the rational function field k(λ).
    pub fn generic_rank(&self) -> usize {
        self.pencil().smith_form().diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// A kernel vector of the pencil of least degree; `None` when the pencil
    /// has full column rank over k(λ). Among the minimal ones, the first
    /// reduced-echelon kernel vector of the stacked coefficient system.
    pub fn pencil_kernel_min(&self) -> Option<PencilVector> {
        let (d1, d2) = (self.d1(), self.d2());
        if d1 == 0 || self.generic_rank() == d1 {
            return None;
        }
        let field = self.field();
        for d in 0..=d1 {
            // Coefficient of λ^j: ψ1 g_j + ψ2 g_{j-1} = 0 for j = 0..=d+1.
            let mut sys = Matrix::zeros(field, d2 * (d + 2), d1 * (d + 1));
            for i in 0..=d {
                for r in 0..d2 {
                    for c in 0..d1 {
                        sys.set(i * d2 + r, i * d1 + c, self.psi1.get(r, c));
                        sys.set((i + 1) * d2 + r, i * d1 + c, self.psi2.get(r, c));
                    }
                }
            }
            if let Some(v) = sys.rank_kernel().1.into_iter().next() {
                let coeffs: Vec<Vec<Elem>> = v.chunks(d1).map(<[Elem]>::to_vec).collect();
                debug_assert!(coeffs[d].iter().any(|x| !x.is_zero()));
                return Some(PencilVector { coeffs });
            }
        }
        // Minimal indices never exceed the number of columns.
        unreachable!("pencil of deficient rank without a kernel vector of degree <= d1")
    }

    /// `V ⊕ W` with `a(α, β) = (0, ψ1 α)` and `b(α, β) = (0, ψ2 α)`.
    pub fn to_module(&self) -> KModule {
        let field = self.field();
        let (d1, d2) = (self.d1(), self.d2());
        let embed = |psi: &Matrix| {
            let top = Matrix::zeros(field, d1, d1 + d2);
            let bottom = Matrix::hstack(field, d2, &[psi, &Matrix::zeros(field, d2, d2)]);
            Matrix::vstack(field, d1 + d2, &[&top, &bottom])
        };
        KModule::new(embed(&self.psi1), embed(&self.psi2)).expect("block maps satisfy the relations")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&QuiverDoc {
            d1: self.d1(),
            d2: self.d2(),
            psi1: self.psi1.to_bits(),
            psi2: self.psi2.to_bits(),
        })
        .expect("quiver document serializes")
    }

    pub fn from_json(field: &Field, text: &str) -> Result<QuiverRep> {
        let doc: QuiverDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        QuiverRep::new(
            Matrix::from_bits(field, doc.d2, doc.d1, &doc.psi1)?,
            Matrix::from_bits(field, doc.d2, doc.d1, &doc.psi2)?,
        )
    }
}

#[derive(Serialize, Deserialize)]
struct QuiverDoc {
    d1: usize,
    d2: usize,
    psi1: Vec<Vec<u64>>,
    psi2: Vec<Vec<u64>>,
}

/// `[M / rad M, rad M; a, b]` for a projective-free `M`.
pub fn to_quiver(m: &KModule) -> Result<(QuiverRep, QuiverBasis)> {
    if !m.is_projective_free() {
        return Err(Error::NotProjectiveFree);
    }
    let radical = m.radical().inclusion;
    let complement = radical.complement_basis();
    let induced = |x: &Matrix| radical.solve(&x.mul(&complement)).expect("image lies in the radical");
    let rep = QuiverRep { psi1: induced(m.a()), psi2: induced(m.b()) };
    Ok((rep, QuiverBasis { complement, radical }))
}

pub fn from_quiver(r: &QuiverRep) -> KModule {
    r.to_module()
}

/// The copy of `Ω^l(k)` spanned by `g_0, ..., g_l, b g_0, ..., b g_{l-1}`,
/// where the `g_i` are the coefficients of `v` lifted through the basis of
/// [`to_quiver`]. On that basis the restricted action is the canonical one.
pub fn syzygy_submodule_from_vector(m: &KModule, v: &PencilVector) -> Result<Submodule> {
    let (rep, basis) = to_quiver(m)?;
    let l = v.degree();
    if v.coeffs.iter().any(|g| g.len() != rep.d1()) {
        return Err(Error::ShapeMismatch("coefficient length differs from d1".into()));
    }
    let mut check = vec![Elem::ZERO; rep.d2()];
    for j in 0..=l + 1 {
        check.iter_mut().for_each(|x| *x = Elem::ZERO);
        if j <= l {
            add_into(&mut check, &rep.psi1.mul_vec(&v.coeffs[j]));
        }
        if j >= 1 {
            add_into(&mut check, &rep.psi2.mul_vec(&v.coeffs[j - 1]));
        }
        if check.iter().any(|x| !x.is_zero()) {
            return Err(Error::ShapeMismatch("not a kernel vector of the pencil".into()));
        }
    }
    let g: Vec<Vec<Elem>> = v.coeffs.iter().map(|c| basis.complement.mul_vec(c)).collect();
    let mut columns = g.clone();
    columns.extend(g[..l].iter().map(|x| m.b().mul_vec(x)));
    let inclusion = Matrix::from_columns(m.field(), m.dim(), &columns);
    if inclusion.rank() != 2 * l + 1 {
        return Err(Error::NotMinimal);
    }
    Submodule::new(m, inclusion)
}

fn add_into(dst: &mut [Elem], src: &[Elem]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d += s;
    }
}
