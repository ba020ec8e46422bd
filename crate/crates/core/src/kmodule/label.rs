use std::cmp::Ordering;
use std::fmt;

use super::module::KModule;
use crate::error::{Error, Result};
use crate::gf::{is_irreducible, Elem, Field, Poly};
use crate::linalg::Matrix;

/// Isomorphism type of an indecomposable module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    /// The regular module, dimension 4.
    Free,
    /// Even-dimensional family indexed by a power of a monic irreducible.
    Band { poly: Poly, power: usize },
    /// Even-dimensional family where `b` acts nilpotently on the top.
    ZeroBand(usize),
    Trivial,
    /// `Ω^n(k)`, dimension `2n + 1`.
    SyzygyPos(usize),
    /// `Ω^{-n}(k)`, dimension `2n + 1`.
    SyzygyNeg(usize),
}

impl Label {
    pub fn band(poly: Poly, power: usize) -> Label {
        Label::Band { poly, power }
    }

    pub fn dim(&self) -> usize {
        match self {
            Label::Free => 4,
            Label::Band { poly, power } => 2 * poly.degree().unwrap_or(0) * power,
            Label::ZeroBand(n) => 2 * n,
            Label::Trivial => 1,
            Label::SyzygyPos(n) | Label::SyzygyNeg(n) => 2 * n + 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Label::Free => "Free",
            Label::Band { .. } => "Band",
            Label::ZeroBand(_) => "ZeroBand",
            Label::Trivial => "Trivial",
            Label::SyzygyPos(_) => "SyzygyPos",
            Label::SyzygyNeg(_) => "SyzygyNeg",
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            Label::Free => 0,
            Label::Band { .. } => 1,
            Label::ZeroBand(_) => 2,
            Label::SyzygyNeg(_) => 3,
            Label::SyzygyPos(_) => 4,
            Label::Trivial => 5,
        }
    }

    /// The label of the dual module.
    pub fn dual(&self) -> Label {
        match self {
            Label::SyzygyPos(n) => Label::SyzygyNeg(*n),
            Label::SyzygyNeg(n) => Label::SyzygyPos(*n),
            other => other.clone(),
        }
    }

    /// Rejects zero indices and Band polynomials that are not monic
    /// irreducible over `field`.
    pub fn check(&self, field: &Field) -> Result<()> {
        match self {
            Label::Band { poly, power } => {
                if poly.field() != field {
                    return Err(Error::FieldMismatch);
                }
                if *power == 0 {
                    return Err(Error::InvalidLabel("Band power must be positive".into()));
                }
                if !poly.is_monic() || !is_irreducible(poly) {
                    return Err(Error::InvalidLabel(format!("{poly} is not monic irreducible over {field}")));
                }
                Ok(())
            }
            Label::ZeroBand(0) | Label::SyzygyPos(0) | Label::SyzygyNeg(0) => {
                Err(Error::InvalidLabel(format!("{} index must be positive", self.kind())))
            }
            _ => Ok(()),
        }
    }

    /// The canonical module of this label.
    pub fn canonical(&self, field: &Field) -> Result<KModule> {
        self.check(field)?;
        Ok(canonical_unchecked(self, field))
    }
}

fn canonical_unchecked(label: &Label, field: &Field) -> KModule {
    let n = label.dim();
    let mut a = Matrix::zeros(field, n, n);
    let mut b = Matrix::zeros(field, n, n);
    // Column j holds the image of basis vector j.
    let arrow = |m: &mut Matrix, from: usize, to: usize| m.set(to, from, Elem::ONE);
    match label {
        Label::Free => {
            // (e, ae, be, abe)
            arrow(&mut a, 0, 1);
            arrow(&mut a, 2, 3);
            arrow(&mut b, 0, 2);
            arrow(&mut b, 1, 3);
        }
        Label::Band { poly, power } => {
            let theta = poly.pow(*power as u64);
            let d = n / 2;
            // (g_{d-1}, ..., g_0, f_{d-1}, ..., f_0)
            let g = |i: usize| d - 1 - i;
            let f = |i: usize| d + d - 1 - i;
            for i in 0..d {
                arrow(&mut b, g(i), f(i));
                if i + 1 < d {
                    arrow(&mut a, g(i), f(i + 1));
                }
            }
            for i in 0..d {
                a.set(f(i), g(d - 1), theta.coeff(i));
            }
        }
        Label::ZeroBand(m) => {
            let d = *m;
            // (g_{d-1}, ..., g_0, h_{d-1}, ..., h_0)
            let g = |i: usize| d - 1 - i;
            let h = |i: usize| d + d - 1 - i;
            for i in 0..d {
                arrow(&mut a, g(i), h(i));
                if i + 1 < d {
                    arrow(&mut b, g(i), h(i + 1));
                }
            }
        }
        Label::Trivial => {}
        Label::SyzygyPos(m) => {
            let d = *m;
            // (g_0, ..., g_d, f_0, ..., f_{d-1})
            let f = |i: usize| d + 1 + i;
            for i in 0..d {
                arrow(&mut b, i, f(i));
            }
            for i in 1..=d {
                arrow(&mut a, i, f(i - 1));
            }
        }
        Label::SyzygyNeg(m) => {
            let d = *m;
            // (g_1, ..., g_d, f_0, ..., f_d)
            let f = |i: usize| d + i;
            for i in 1..=d {
                arrow(&mut a, i - 1, f(i - 1));
                arrow(&mut b, i - 1, f(i));
            }
        }
    }
    KModule::from_parts(a, b)
}

/// Dimension descending, then Free < Band < ZeroBand < SyzygyNeg <
/// SyzygyPos < Trivial, then polynomial order, then index.
impl Ord for Label {
    fn cmp(&self, other: &Label) -> Ordering {
        other
            .dim()
            .cmp(&self.dim())
            .then_with(|| self.kind_rank().cmp(&other.kind_rank()))
            .then_with(|| match (self, other) {
                (Label::Band { poly: p, power: l }, Label::Band { poly: q, power: m }) => {
                    p.cmp(q).then(l.cmp(m))
                }
                (Label::ZeroBand(x), Label::ZeroBand(y))
                | (Label::SyzygyPos(x), Label::SyzygyPos(y))
                | (Label::SyzygyNeg(x), Label::SyzygyNeg(y)) => x.cmp(y),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Label) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Free | Label::Trivial => write!(f, "{}", self.kind()),
            Label::Band { poly, power } => write!(f, "Band({poly},{power})"),
            Label::ZeroBand(n) | Label::SyzygyPos(n) | Label::SyzygyNeg(n) => {
                write!(f, "{}({n})", self.kind())
            }
        }
    }
}
