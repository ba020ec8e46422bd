//! Projective covers, Heller shifts, extensions and almost-split sequences.

use serde::{Deserialize, Serialize};

use crate::classify::{decompose, split_off, strip_free};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::kmodule::io::ModuleDoc;
use crate::kmodule::{direct_sum, KModule, Label, Submodule};
use crate::linalg::{EchelonBasis, Matrix};

/// Largest `|l|` accepted by [`ar_sequence`] unless overridden.
pub const AR_LIMIT: i64 = 6;

/// A minimal projective cover `F -> M` and its kernel.
#[derive(Clone, Debug)]
pub struct CoverData {
    /// Rank of the free module `F`.
    pub free_rank: usize,
    /// `F` itself, block sum of regular modules on `(e_j, a e_j, b e_j, ab e_j)`.
    pub free: KModule,
    /// `dim M x 4g` intertwiner, surjective.
    pub covering: Matrix,
    pub kernel: KModule,
    pub kernel_inclusion: Matrix,
}

pub fn projective_cover(m: &KModule) -> CoverData {
    let field = m.field();
    let tops = m.radical().inclusion.complement_basis();
    let g = tops.cols();
    let mut cols = Vec::with_capacity(4 * g);
    for v in tops.columns() {
        let av = m.a().mul_vec(&v);
        let bv = m.b().mul_vec(&v);
        let abv = m.a().mul_vec(&bv);
        cols.extend([v, av, bv, abv]);
    }
    let covering = Matrix::from_columns(field, m.dim(), &cols);
    let free_one = Label::Free.canonical(field).expect("Free is valid");
    let copies: Vec<&KModule> = (0..g).map(|_| &free_one).collect();
    let (free, _) = direct_sum(field, &copies).expect("same field");
    let kernel_inclusion = covering.kernel_matrix();
    let kernel = Submodule { ambient: free.clone(), inclusion: kernel_inclusion.clone() }.restricted();
    CoverData { free_rank: g, free, covering, kernel, kernel_inclusion }
}

/// Heller shift. Positive `n` iterates cover kernels, negative `n` is
/// computed on the dual, and `n = 0` removes free summands.
pub fn omega(m: &KModule, n: i64) -> Result<KModule> {
    match n {
        0 => Ok(strip_free(m)?.1.complement),
        n if n > 0 => {
            let mut cur = m.clone();
            for _ in 0..n {
                cur = projective_cover(&cur).kernel;
            }
            Ok(cur)
        }
        n => Ok(omega(&m.dual(), -n)?.dual()),
    }
}

/// A short exact sequence `0 -> left -> middle -> right -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSequence {
    pub left: KModule,
    pub middle: KModule,
    pub right: KModule,
    pub inject: Matrix,
    pub surject: Matrix,
}

impl ShortExactSequence {
    /// Checks that both maps intertwine, `inject` is injective, `surject`
    /// surjective and `im inject = ker surject`.
    pub fn is_exact(&self) -> bool {
        self.left.is_hom_to(&self.middle, &self.inject)
            && self.middle.is_hom_to(&self.right, &self.surject)
            && self.inject.rank() == self.left.dim()
            && self.surject.rank() == self.right.dim()
            && self.surject.mul(&self.inject).is_zero()
            && self.left.dim() + self.right.dim() == self.middle.dim()
    }

    /// Split iff `inject` has an intertwining retraction.
    pub fn is_split(&self) -> bool {
        let sub = Submodule { ambient: self.middle.clone(), inclusion: self.inject.clone() };
        split_off(&sub).is_ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SesDoc {
            left: ModuleDoc::of(&self.left),
            middle: ModuleDoc::of(&self.middle),
            right: ModuleDoc::of(&self.right),
            inject: self.inject.to_bits(),
            surject: self.surject.to_bits(),
        })
        .expect("sequence document serializes")
    }

    pub fn from_json(text: &str) -> Result<ShortExactSequence> {
        let doc: SesDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let left = doc.left.to_module()?;
        let middle = doc.middle.to_module()?;
        let right = doc.right.to_module()?;
        let field = middle.field().clone();
        let inject = Matrix::from_bits(&field, middle.dim(), left.dim(), &doc.inject)?;
        let surject = Matrix::from_bits(&field, right.dim(), middle.dim(), &doc.surject)?;
        let ses = ShortExactSequence { left, middle, right, inject, surject };
        if !ses.is_exact() {
            return Err(Error::ShapeMismatch("maps do not form a short exact sequence".into()));
        }
        Ok(ses)
    }
}

#[derive(Serialize, Deserialize)]
struct SesDoc {
    left: ModuleDoc,
    middle: ModuleDoc,
    right: ModuleDoc,
    inject: Vec<Vec<u64>>,
    surject: Vec<Vec<u64>>,
}

/// Maps `Ω¹C -> A` that extend over the free cover of `C`, as flattened
/// vectors in an echelon basis.
fn coboundaries(cover: &CoverData, a: &KModule) -> EchelonBasis {
    let field = a.field();
    let omega_dim = cover.kernel.dim();
    let mut span = EchelonBasis::new(field, a.dim() * omega_dim);
    // A map F -> A is fixed by the images x of the generators e_j.
    for j in 0..cover.free_rank {
        for i in 0..a.dim() {
            let mut x = vec![Elem::ZERO; a.dim()];
            x[i] = Elem::ONE;
            let ax = a.a().mul_vec(&x);
            let bx = a.b().mul_vec(&x);
            let abx = a.a().mul_vec(&bx);
            let mut phi = Matrix::zeros(field, a.dim(), 4 * cover.free_rank);
            for (c, col) in [x, ax, bx, abx].iter().enumerate() {
                for (r, &v) in col.iter().enumerate() {
                    phi.set(r, 4 * j + c, v);
                }
            }
            span.insert(&phi.mul(&cover.kernel_inclusion).flatten());
        }
    }
    span
}

/// Representatives of a basis of `Ext¹(C, A)`: intertwiners `Ω¹C -> A`
/// (on the kernel basis of [`projective_cover`]) independent modulo those
/// that extend to the cover. Chosen greedily from the hom-space basis.
pub fn ext1_basis(c: &KModule, a: &KModule) -> Result<Vec<Matrix>> {
    if c.field() != a.field() {
        return Err(Error::FieldMismatch);
    }
    let cover = projective_cover(c);
    let mut span = coboundaries(&cover, a);
    let mut out = Vec::new();
    for h in cover.kernel.hom_space(a)? {
        if span.insert(&h.flatten()) {
            out.push(h);
        }
    }
    Ok(out)
}

/// Pushout of `0 -> Ω¹C -> F -> C -> 0` along `h`. The middle term has
/// basis `(A, lifts of C)`, so `inject = [I; 0]` and `surject = [0 I]`.
pub fn extension_from_cocycle(c: &KModule, a: &KModule, h: &Matrix) -> Result<ShortExactSequence> {
    if c.field() != a.field() {
        return Err(Error::FieldMismatch);
    }
    let field = a.field();
    let cover = projective_cover(c);
    if !cover.kernel.is_hom_to(a, h) {
        return Err(Error::NotACocycle);
    }
    let (da, dc, dw) = (a.dim(), c.dim(), cover.kernel.dim());
    let df = 4 * cover.free_rank;
    let (sum, _) = direct_sum(field, &[a, &cover.free])?;
    let relations = Matrix::vstack(field, dw, &[h, &cover.kernel_inclusion]);
    let lifts = cover.covering.solve(&Matrix::identity(field, dc)).expect("cover is surjective");
    let top = Matrix::vstack(field, da, &[&Matrix::identity(field, da), &Matrix::zeros(field, df, da)]);
    let bottom = Matrix::vstack(field, dc, &[&Matrix::zeros(field, da, dc), &lifts]);
    let kept = Matrix::hstack(field, da + df, &[&top, &bottom]);
    let t = Matrix::hstack(field, da + df, &[&relations, &kept]);
    let t_inv = t.inverse().ok_or_else(|| Error::Internal("pushout basis is singular".into()))?;
    let project = t_inv.submatrix(dw, da + df, 0, da + df);
    let middle = KModule::new(project.mul(sum.a()).mul(&kept), project.mul(sum.b()).mul(&kept))?;
    let inject = Matrix::vstack(field, da, &[&Matrix::identity(field, da), &Matrix::zeros(field, dc, da)]);
    let surject = Matrix::hstack(field, dc, &[&Matrix::zeros(field, dc, da), &Matrix::identity(field, dc)]);
    Ok(ShortExactSequence { left: a.clone(), middle, right: c.clone(), inject, surject })
}

/// `Ω^n(k)` for any integer `n`.
pub fn syzygy_label(n: i64) -> Label {
    match n {
        0 => Label::Trivial,
        n if n > 0 => Label::SyzygyPos(n as usize),
        n => Label::SyzygyNeg(n.unsigned_abs() as usize),
    }
}

/// Expected middle term of the almost-split sequence ending in `Ω^l(k)`.
pub fn ar_middle_labels(l: i64) -> Vec<Label> {
    let mut labels = if l == -1 {
        vec![Label::Free, Label::Trivial, Label::Trivial]
    } else {
        vec![syzygy_label(l + 1), syzygy_label(l + 1)]
    };
    labels.sort();
    labels
}

/// The almost-split sequence `0 -> Ω^{l+2}k -> E -> Ω^l k -> 0` over GF(2).
pub fn ar_sequence(l: i64) -> Result<ShortExactSequence> {
    ar_sequence_over(&Field::gf2(), l, AR_LIMIT)
}

/// Searches cocycle coordinates in canonical field order (odometer, lowest
/// coordinate fastest) for the first extension whose middle term has the
/// expected summands.
pub fn ar_sequence_over(field: &Field, l: i64, limit: i64) -> Result<ShortExactSequence> {
    if l.abs() > limit {
        return Err(Error::OutOfRange(format!("|l| = {} exceeds the limit {limit}", l.abs())));
    }
    let right = syzygy_label(l).canonical(field)?;
    let left = syzygy_label(l + 2).canonical(field)?;
    let expected = ar_middle_labels(l);
    let basis = ext1_basis(&right, &left)?;
    let omega_dim = projective_cover(&right).kernel.dim();
    let q = field.order();
    let mut digits = vec![0usize; basis.len()];
    loop {
        // advance the odometer; the all-zero cocycle is skipped
        let Some(pos) = digits.iter().position(|&d| d + 1 < q) else {
            return Err(Error::SearchExhausted);
        };
        digits[pos] += 1;
        digits[..pos].iter_mut().for_each(|d| *d = 0);
        let mut h = Matrix::zeros(field, left.dim(), omega_dim);
        for (d, b) in digits.iter().zip(&basis) {
            h = h.add(&b.scale(Elem(*d as u16)));
        }
        let ses = extension_from_cocycle(&right, &left, &h)?;
        let labels: Vec<Label> = decompose(&ses.middle)?.labels();
        if labels == expected {
            return Ok(ses);
        }
    }
}
