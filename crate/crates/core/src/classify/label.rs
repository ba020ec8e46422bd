//! Labels of indecomposables from invariants, and the λ₀ route for the
//! regular part.

use super::decompose::decompose;
use crate::error::{Error, Result};
use crate::gf::Poly;
use crate::kmodule::{KModule, Label};
use crate::linalg::rcf;
use crate::quiver::{to_quiver, QuiverRep};

/// Label of an indecomposable module. Indecomposability is certified by
/// [`decompose`]; the label itself is read off invariants: `AB ≠ 0` gives
/// Free, odd dimensions are told apart by the socle, even ones by whether
/// `b` is invertible on the quiver (then the rational canonical form of
/// `ψ2⁻¹ψ1` is a single block).
pub fn label_of(m: &KModule) -> Result<Label> {
    let d = decompose(m)?;
    if d.summands.len() != 1 {
        return Err(Error::NotIndecomposable(d.summands.len()));
    }
    let label = label_from_invariants(m)?;
    if label != d.summands[0].0 {
        return Err(Error::Internal(format!("invariants give {label}, decomposition gives {}", d.summands[0].0)));
    }
    Ok(label)
}

fn label_from_invariants(m: &KModule) -> Result<Label> {
    let dim = m.dim();
    if !m.is_projective_free() {
        return Ok(Label::Free);
    }
    if dim % 2 == 1 {
        let n = dim / 2;
        if n == 0 {
            return Ok(Label::Trivial);
        }
        let socle = m.socle().dim();
        return match socle {
            s if s == n => Ok(Label::SyzygyPos(n)),
            s if s == n + 1 => Ok(Label::SyzygyNeg(n)),
            s => Err(Error::Internal(format!("odd module of dim {dim} with socle {s}"))),
        };
    }
    let (rep, _) = to_quiver(m)?;
    match rep.psi2.inverse() {
        Some(inv) => {
            let r = rcf(&inv.mul(&rep.psi1));
            match r.elementary_divisors.as_slice() {
                [(f, l)] => Ok(Label::band(f.clone(), *l)),
                _ => Err(Error::Internal("Band candidate has several rational blocks".into())),
            }
        }
        None => Ok(Label::ZeroBand(dim / 2)),
    }
}

/// Labels of a regular square pencil through a point `λ₀` with
/// `ψ1 + λ₀ψ2` invertible: with `S = (ψ1 + λ₀ψ2)⁻¹ψ2`, a divisor `x^n` of
/// `S` gives ZeroBand(n) and a divisor `g^l` with `g(0) ≠ 0` gives
/// Band(f, l) for `f(λ) = rev(g)(λ + λ₀)` made monic. `None` when no such
/// `λ₀` exists in the field.
pub fn lambda0_labels(rep: &QuiverRep) -> Result<Option<Vec<Label>>> {
    if rep.d1() != rep.d2() {
        return Err(Error::NotSquare { d1: rep.d1(), d2: rep.d2() });
    }
    let field = rep.field();
    let Some((l0, inv)) = field
        .elements()
        .find_map(|c| rep.psi1.add(&rep.psi2.scale(c)).inverse().map(|inv| (c, inv)))
    else {
        return Ok(None);
    };
    let s = inv.mul(&rep.psi2);
    let x = Poly::x(field);
    let mut labels: Vec<Label> = rcf(&s)
        .elementary_divisors
        .into_iter()
        .map(|(g, l)| {
            if g == x {
                Label::ZeroBand(l)
            } else {
                Label::band(g.reversed().shift_argument(l0).monic(), l)
            }
        })
        .collect();
    labels.sort();
    Ok(Some(labels))
}

/// [`lambda0_labels`] for a projective-free module with a regular pencil.
pub fn lambda0_labels_of(m: &KModule) -> Result<Option<Vec<Label>>> {
    let (rep, _) = to_quiver(m)?;
    lambda0_labels(&rep)
}
