//! Decomposition into indecomposable summands with an explicit witness.

use serde::{Deserialize, Serialize};

use super::split::{kernel_of, split_off, strip_free};
use crate::error::{Error, Result};
use crate::gf::{factor, Elem, Field, Poly};
use crate::kmodule::io::LabelDoc;
use crate::kmodule::{direct_sum, KModule, Label};
use crate::linalg::{rcf, Matrix, PolyMatrix};
use crate::quiver::{syzygy_submodule_from_vector, to_quiver, QuiverBasis, QuiverRep};
use crate::syzygy::syzygy_label;

/// Summands in canonical order and an invertible `witness` with
/// `witness * A_sum = A_input * witness` (likewise for `B`), where `A_sum`
/// is the block sum of the canonical summands.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<(Label, KModule)>,
    pub witness: Matrix,
}

/// One odd-dimensional summand found from a minimal pencil kernel vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub label: Label,
    /// Degree of the minimal kernel vector.
    pub degree: usize,
    /// Found on the dual module.
    pub dual_side: bool,
    /// Ambient dimension when the summand was found.
    pub ambient_dim: usize,
}

/// What the pipeline did, for auditing the lemmas it relies on.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub free_summands: usize,
    pub extractions: Vec<Extraction>,
    /// Dimension of the remaining regular part.
    pub regular_dim: usize,
    /// Labels of the regular part from Smith forms.
    pub smith_labels: Vec<Label>,
}

impl Decomposition {
    pub fn labels(&self) -> Vec<Label> {
        self.summands.iter().map(|(l, _)| l.clone()).collect()
    }

    /// The block sum of the canonical summands.
    pub fn canonical_sum(&self, field: &Field) -> KModule {
        let mods: Vec<&KModule> = self.summands.iter().map(|(_, m)| m).collect();
        direct_sum(field, &mods).expect("summands share the field").0
    }

    /// Exact check of the witness identity against `m`.
    pub fn verify(&self, m: &KModule) -> bool {
        let sum = self.canonical_sum(m.field());
        sum.dim() == m.dim()
            && self.witness.is_invertible()
            && sum.is_hom_to(m, &self.witness)
            && self.summands.iter().all(|(l, s)| l.dim() == s.dim())
            && self.summands.windows(2).all(|w| w[0].0 <= w[1].0)
    }

    pub fn to_json(&self) -> String {
        let doc = DecompositionDoc {
            summands: self
                .summands
                .iter()
                .map(|(l, _)| SummandDoc { label: LabelDoc::of(l), dim: l.dim() })
                .collect(),
            witness: self.witness.to_bits(),
        };
        serde_json::to_string(&doc).expect("decomposition document serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct DecompositionDoc {
    summands: Vec<SummandDoc>,
    witness: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct SummandDoc {
    label: LabelDoc,
    dim: usize,
}

pub fn decompose(m: &KModule) -> Result<Decomposition> {
    decompose_traced(m).map(|(d, _)| d)
}

pub fn decompose_traced(m: &KModule) -> Result<(Decomposition, Trace)> {
    let field = m.field().clone();
    let mut trace = Trace::default();
    // (label, embedding into m whose columns carry the canonical basis)
    let mut parts: Vec<(Label, Matrix)> = Vec::new();

    let (free, split) = strip_free(m)?;
    trace.free_summands = free.len();
    parts.extend(free.into_iter().map(|e| (Label::Free, e)));
    let mut cur = split.complement;
    let mut cur_inc = split.complement_inclusion;

    // Ω^l(k) summands from minimal kernel vectors of the pencil.
    loop {
        let (rep, _) = to_quiver(&cur)?;
        let Some(v) = rep.pencil_kernel_min() else { break };
        let sub = syzygy_submodule_from_vector(&cur, &v)?;
        let s = split_off(&sub)?;
        let label = syzygy_label(v.degree() as i64);
        trace.extractions.push(Extraction {
            label: label.clone(),
            degree: v.degree(),
            dual_side: false,
            ambient_dim: cur.dim(),
        });
        parts.push((label, cur_inc.mul(&sub.inclusion)));
        cur_inc = cur_inc.mul(&s.complement_inclusion);
        cur = s.complement;
    }

    // Ω^{-l}(k) summands: the same search on the dual, transported back.
    loop {
        let dual = cur.dual();
        let (rep, _) = to_quiver(&dual)?;
        let Some(v) = rep.pencil_kernel_min() else { break };
        let l = v.degree();
        let sub = syzygy_submodule_from_vector(&dual, &v)?;
        let s = split_off(&sub)?;
        let j = neg_to_dual_pos(&field, l);
        let embed = s.retraction.transpose().mul(&j);
        let retract = j.transpose().mul(&sub.inclusion.transpose());
        let label = syzygy_label(-(l as i64));
        trace.extractions.push(Extraction { label: label.clone(), degree: l, dual_side: true, ambient_dim: cur.dim() });
        parts.push((label, cur_inc.mul(&embed)));
        let (rest, rest_inc) = kernel_of(&cur, &retract);
        cur_inc = cur_inc.mul(&rest_inc);
        cur = rest;
    }

    trace.regular_dim = cur.dim();
    let (regular, smith) = regular_part(&cur)?;
    trace.smith_labels = smith;
    parts.extend(regular.into_iter().map(|(l, e)| (l, cur_inc.mul(&e))));

    parts.sort_by(|x, y| x.0.cmp(&y.0));
    let mut summands = Vec::with_capacity(parts.len());
    for (l, _) in &parts {
        summands.push((l.clone(), l.canonical(&field)?));
    }
    let embeds: Vec<&Matrix> = parts.iter().map(|(_, e)| e).collect();
    let witness = Matrix::hstack(&field, m.dim(), &embeds);
    let d = Decomposition { summands, witness };
    if !d.verify(m) {
        return Err(Error::Internal("decomposition witness failed verification".into()));
    }
    Ok((d, trace))
}

/// Isomorphism `Ω^{-n}(k) -> Ω^n(k)*` sending `g_i -> f*_{n-i}` and
/// `f_m -> g*_{n-m}`; a permutation matrix.
pub fn neg_to_dual_pos(field: &Field, n: usize) -> Matrix {
    let d = 2 * n + 1;
    let mut j = Matrix::zeros(field, d, d);
    if n == 0 {
        j.set(0, 0, Elem::ONE);
        return j;
    }
    for i in 1..=n {
        j.set(2 * n + 1 - i, i - 1, Elem::ONE);
    }
    for m in 0..=n {
        j.set(n - m, n + m, Elem::ONE);
    }
    j
}

/// Band and ZeroBand labels of a regular square pencil via Smith forms:
/// finite elementary divisors of `ψ1 + λψ2` give Band, powers of `μ` in
/// the Smith form of `ψ2 + μψ1` give ZeroBand.
pub fn smith_labels(rep: &QuiverRep) -> Result<Vec<Label>> {
    let mut labels = Vec::new();
    for d in rep.pencil().smith_form().diagonal {
        if d.is_zero() {
            return Err(Error::Internal("pencil is singular".into()));
        }
        if !d.is_one() {
            labels.extend(factor(&d)?.factors.into_iter().map(|(f, l)| Label::band(f, l)));
        }
    }
    for d in PolyMatrix::pencil(&rep.psi2, &rep.psi1).smith_form().diagonal {
        let n = d.coeffs().iter().take_while(|c| c.is_zero()).count();
        if n > 0 {
            labels.push(Label::ZeroBand(n));
        }
    }
    labels.sort();
    Ok(labels)
}

/// `{v : ψ v ∈ span(target)}` as a reduced column basis.
fn preimage(psi: &Matrix, target: &Matrix) -> Matrix {
    let field = psi.field();
    let d1 = psi.cols();
    let stacked = Matrix::hstack(field, psi.rows(), &[psi, target]);
    let kernel = stacked.kernel_matrix();
    kernel.submatrix(0, d1, 0, kernel.cols()).column_space()
}

/// Limits of `V_{i+1} = ψ1⁻¹(ψ2 V_i)` from everything and of
/// `W_{i+1} = ψ2⁻¹(ψ1 W_i)` from zero.
fn wong_limits(rep: &QuiverRep) -> (Matrix, Matrix) {
    let field = rep.field();
    let d1 = rep.d1();
    let mut v = Matrix::identity(field, d1);
    loop {
        let next = preimage(&rep.psi1, &rep.psi2.mul(&v));
        if next.cols() == v.cols() {
            break;
        }
        v = next;
    }
    let mut w = Matrix::zeros(field, d1, 0);
    loop {
        let next = preimage(&rep.psi2, &rep.psi1.mul(&w));
        if next.cols() == w.cols() {
            break;
        }
        w = next;
    }
    (v, w)
}

/// Labelled summands with the columns embedding their canonical bases.
type Embeddings = Vec<(Label, Matrix)>;

/// Summands of a module whose pencil is square and regular, with
/// embeddings realizing the canonical bases, plus the Smith-form labels.
fn regular_part(m: &KModule) -> Result<(Embeddings, Vec<Label>)> {
    if m.dim() == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let (rep, basis) = to_quiver(m)?;
    if rep.d1() != rep.d2() || rep.pencil_determinant()?.is_zero() {
        return Err(Error::Internal("remaining pencil is not square regular".into()));
    }
    let smith = smith_labels(&rep)?;
    let (v_star, w_star) = wong_limits(&rep);
    if v_star.cols() + w_star.cols() != rep.d1() {
        return Err(Error::Internal("deflating subspaces do not span".into()));
    }
    let mut out = Vec::new();
    // On V*, ψ2 is injective and T = (ψ2|V*)⁻¹ψ1 acts; its cyclic bases
    // u_i give g_i = u_i and f_i = b g_i.
    let t = rep.psi2.mul(&v_star).solve(&rep.psi1.mul(&v_star)).ok_or_else(|| Error::Internal("ψ1 V* ⊄ ψ2 V*".into()))?;
    for (label, us) in cyclic_blocks(&t, &v_star, false)? {
        out.push((label, embedding(m, &basis, &us, m.b())));
    }
    // On W*, ψ1 is injective and N = (ψ1|W*)⁻¹ψ2 is nilpotent; h_i = a g_i.
    let nil = rep.psi1.mul(&w_star).solve(&rep.psi2.mul(&w_star)).ok_or_else(|| Error::Internal("ψ2 W* ⊄ ψ1 W*".into()))?;
    for (label, us) in cyclic_blocks(&nil, &w_star, true)? {
        out.push((label, embedding(m, &basis, &us, m.a())));
    }
    let mut wong: Vec<Label> = out.iter().map(|(l, _)| l.clone()).collect();
    wong.sort();
    if wong != smith {
        return Err(Error::Internal(format!("Smith labels {smith:?} disagree with deflating-subspace labels {wong:?}")));
    }
    Ok((out, smith))
}

/// Elementary-divisor blocks of `t` (acting on the columns of `within`),
/// each with its cyclic basis `u_0, t u_0, ...` in ambient coordinates.
fn cyclic_blocks(t: &Matrix, within: &Matrix, nilpotent: bool) -> Result<Vec<(Label, Vec<Vec<Elem>>)>> {
    if t.rows() == 0 {
        return Ok(Vec::new());
    }
    let r = rcf(t);
    let vectors = within.mul(&r.basis).columns();
    let mut out = Vec::new();
    let mut offset = 0;
    for (f, l) in r.elementary_divisors {
        let n = f.degree().unwrap() * l;
        let label = if nilpotent {
            if f != Poly::x(t.field()) {
                return Err(Error::Internal("nilpotent part has a nonzero eigenvalue".into()));
            }
            Label::ZeroBand(l)
        } else {
            Label::band(f, l)
        };
        out.push((label, vectors[offset..offset + n].to_vec()));
        offset += n;
    }
    Ok(out)
}

/// Columns `(g_{n-1}, ..., g_0, x g_{n-1}, ..., x g_0)` with `g_i` the lift
/// of `u_i` to the module.
fn embedding(m: &KModule, basis: &QuiverBasis, us: &[Vec<Elem>], x: &Matrix) -> Matrix {
    let g: Vec<Vec<Elem>> = us.iter().rev().map(|u| basis.complement.mul_vec(u)).collect();
    let mut cols = g.clone();
    cols.extend(g.iter().map(|v| x.mul_vec(v)));
    Matrix::from_columns(m.field(), m.dim(), &cols)
}
