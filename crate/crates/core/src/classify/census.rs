//! Brute-force census of indecomposable modules of small dimension.
//!
//! Independent of the decomposition pipeline: indecomposability is decided
//! by searching the endomorphism ring for nontrivial idempotents, and
//! isomorphism classes by intertwiner search.

use rayon::prelude::*;

use super::iso::{iso, Invariants};
use crate::error::{Error, Result};
use crate::gf::{irreducible_powers, Elem, Field};
use crate::kmodule::{KModule, Label};
use crate::linalg::Matrix;

/// Full enumeration of pairs is attempted only below this many matrices.
const MAX_MATRICES: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct CensusClass {
    pub representative: KModule,
    /// Canonical label isomorphic to the class, if any.
    pub label: Option<Label>,
    /// Enumerated pairs falling in this class.
    pub members: usize,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub dim: usize,
    pub valid_pairs: usize,
    pub indecomposable_pairs: usize,
    pub classes: Vec<CensusClass>,
}

/// All labels whose canonical module has dimension `dim` over `field`.
pub fn labels_of_dim(field: &Field, dim: usize) -> Vec<Label> {
    let mut out = Vec::new();
    match dim {
        0 => {}
        1 => out.push(Label::Trivial),
        d if d % 2 == 1 => out.extend([Label::SyzygyPos(d / 2), Label::SyzygyNeg(d / 2)]),
        d => {
            if d == 4 {
                out.push(Label::Free);
            }
            out.push(Label::ZeroBand(d / 2));
            out.extend(
                irreducible_powers(field, d / 2)
                    .into_iter()
                    .filter(|(f, l)| f.degree().unwrap() * l == d / 2)
                    .map(|(f, l)| Label::band(f, l)),
            );
        }
    }
    out.sort();
    out
}

fn all_matrices(field: &Field, n: usize) -> impl Iterator<Item = Matrix> + '_ {
    let q = field.order() as u64;
    let count = q.pow((n * n) as u32);
    (0..count).map(move |mut idx| {
        let data: Vec<Elem> = (0..n * n)
            .map(|_| {
                let e = Elem((idx % q) as u16);
                idx /= q;
                e
            })
            .collect();
        Matrix::new(field, n, n, data).expect("sized")
    })
}

fn square_zero(field: &Field, n: usize) -> Vec<Matrix> {
    all_matrices(field, n).filter(|m| m.mul(m).is_zero()).collect()
}

/// Representatives of square-zero 4x4 matrices over GF(2) up to
/// conjugacy: ranks 0, 1, 2 in Jordan form.
fn square_zero_representatives(field: &Field) -> Vec<Matrix> {
    let mut r1 = Matrix::zeros(field, 4, 4);
    r1.set(1, 0, Elem::ONE);
    let mut r2 = r1.clone();
    r2.set(3, 2, Elem::ONE);
    vec![Matrix::zeros(field, 4, 4), r1, r2]
}

/// No idempotent endomorphism besides 0 and 1.
pub fn is_indecomposable(m: &KModule) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(false);
    }
    if m.dim() > 1 {
        // A socle vector outside the radical spans a trivial summand.
        let rad = m.radical().inclusion;
        let soc = m.socle().inclusion;
        let joint = Matrix::hstack(m.field(), m.dim(), &[&rad, &soc]).rank();
        if joint > rad.cols() {
            return Ok(false);
        }
    }
    let end = m.hom_space(m)?;
    let field = m.field();
    let q = field.order();
    let id = Matrix::identity(field, m.dim());
    let zero = Matrix::zeros(field, m.dim(), m.dim());
    let mut digits = vec![0usize; end.len()];
    let mut x = zero.clone();
    loop {
        if x != zero && x != id && x.mul(&x) == x {
            return Ok(false);
        }
        // odometer step, updating x incrementally
        let Some(pos) = digits.iter().position(|&d| d + 1 < q) else { return Ok(true) };
        for i in 0..pos {
            x = x.add(&end[i].scale(Elem(digits[i] as u16)));
            digits[i] = 0;
        }
        x = x.add(&end[pos].scale(Elem(digits[pos] as u16)));
        digits[pos] += 1;
        x = x.add(&end[pos].scale(Elem(digits[pos] as u16)));
    }
}

/// Enumerates every valid pair `(A, B)` of the given dimension (for
/// dimension 4 over GF(2), `A` runs over conjugacy representatives), keeps
/// the indecomposable ones and sorts them into isomorphism classes.
pub fn census(field: &Field, dim: usize) -> Result<Census> {
    let q = field.order() as u64;
    let pruned = dim == 4 && field.degree() == 1;
    let full_ok = q.checked_pow((dim * dim) as u32).is_some_and(|c| c <= MAX_MATRICES) && dim <= 3;
    if !pruned && !full_ok {
        return Err(Error::OutOfRange(format!("census of dimension {dim} over {field} is too large")));
    }
    let squares = square_zero(field, dim);
    let a_choices = if pruned { square_zero_representatives(field) } else { squares.clone() };
    let pairs: Vec<KModule> = a_choices
        .iter()
        .flat_map(|a| {
            squares
                .iter()
                .filter(move |b| a.mul(b) == b.mul(a))
                .map(move |b| KModule::new(a.clone(), b.clone()).expect("relations checked"))
        })
        .collect();
    let flags: Vec<bool> = pairs.par_iter().map(is_indecomposable).collect::<Result<_>>()?;
    let indecomposables: Vec<&KModule> = pairs.iter().zip(&flags).filter(|(_, &f)| f).map(|(m, _)| m).collect();

    let mut classes: Vec<(Invariants, CensusClass)> = Vec::new();
    for m in &indecomposables {
        let inv = Invariants::of(m);
        let mut found = false;
        for (ci, class) in classes.iter_mut() {
            if *ci == inv && iso(m, &class.representative)?.is_some() {
                class.members += 1;
                found = true;
                break;
            }
        }
        if !found {
            classes.push((inv, CensusClass { representative: (*m).clone(), label: None, members: 1 }));
        }
    }
    let mut classes: Vec<CensusClass> = classes.into_iter().map(|(_, c)| c).collect();
    let candidates: Vec<(Label, KModule)> = labels_of_dim(field, dim)
        .into_iter()
        .map(|l| {
            let m = l.canonical(field)?;
            Ok((l, m))
        })
        .collect::<Result<_>>()?;
    for class in &mut classes {
        for (l, c) in &candidates {
            if iso(&class.representative, c)?.is_some() {
                class.label = Some(l.clone());
                break;
            }
        }
    }
    classes.sort_by(|x, y| x.label.cmp(&y.label));
    Ok(Census { dim, valid_pairs: pairs.len(), indecomposable_pairs: indecomposables.len(), classes })
}
