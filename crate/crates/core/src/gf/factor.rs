//! Factorization over GF(2^m): square-free split, distinct-degree split,
//! then equal-degree splitting with a trace map and a fixed-seed generator.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Elem, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Seed for the equal-degree splitting step. Results do not depend on it,
/// only the work done to reach them.
const SPLIT_SEED: u64 = 0x4b4c_4549_4e34;

/// `unit * prod(f^e)` with monic irreducible `f`, sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    /// Multiplies everything back together.
    pub fn expand(&self, field: &Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit), |acc, (f, e)| acc.mul(&f.pow(*e as u64)))
    }
}

pub fn factor(p: &Poly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = p.field().clone();
    let unit = p.leading();
    let monic = p.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut merged: BTreeMap<Poly, usize> = BTreeMap::new();
    for (sf, mult) in squarefree(&monic) {
        for (block, d) in distinct_degree(&sf, field.degree()) {
            for irr in equal_degree(&block, d, field.degree(), &mut rng) {
                *merged.entry(irr).or_default() += mult;
            }
        }
    }
    Ok(Factorization { unit, factors: merged.into_iter().collect() })
}

pub fn is_irreducible(p: &Poly) -> bool {
    match p.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => factor(p).is_ok_and(|f| f.factors.len() == 1 && f.factors[0].1 == 1),
    }
}

/// `(f, l)` with `p = f^l` and `f` irreducible, when `p` is such a power.
pub fn is_irreducible_power(p: &Poly) -> Option<(Poly, usize)> {
    if !p.is_monic() || p.degree() == Some(0) {
        return None;
    }
    let fac = factor(p).ok()?;
    match fac.factors.as_slice() {
        [(f, l)] => Some((f.clone(), *l)),
        _ => None,
    }
}

/// All monic irreducible polynomials of the given degree, in canonical order.
pub fn monic_irreducibles(field: &Field, degree: usize) -> Vec<Poly> {
    let q = field.order() as u64;
    let count = q.checked_pow(degree as u32).expect("enumeration too large");
    (0..count)
        .map(|mut idx| {
            let mut coeffs = Vec::with_capacity(degree + 1);
            for _ in 0..degree {
                coeffs.push(Elem((idx % q) as u16));
                idx /= q;
            }
            coeffs.push(Elem::ONE);
            Poly::new(field, coeffs)
        })
        .filter(is_irreducible)
        .collect()
}

/// Every `(f, l)` with `f` monic irreducible and `deg(f^l) <= max_degree`,
/// ordered by `deg(f^l)` and then canonically.
pub fn irreducible_powers(field: &Field, max_degree: usize) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    for d in 1..=max_degree {
        for f in monic_irreducibles(field, d) {
            for l in 1..=max_degree / d {
                out.push((f.clone(), l));
            }
        }
    }
    out.sort_by(|(f1, l1), (f2, l2)| {
        (f1.degree().unwrap() * l1, f1.pow(*l1 as u64)).cmp(&(f2.degree().unwrap() * l2, f2.pow(*l2 as u64)))
    });
    out
}

fn squarefree(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let c0 = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c0).expect("gcd divides");
    let mut c = c0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    if !c.is_one() {
        let root = c.sqrt().expect("remaining part is a square in characteristic 2");
        for (g, m) in squarefree(&root) {
            out.push((g, 2 * m));
        }
    }
    out
}

/// Splits a square-free monic polynomial into products of irreducibles of
/// equal degree `d`.
fn distinct_degree(f: &Poly, m: u32) -> Vec<(Poly, usize)> {
    let field = f.field();
    let x = Poly::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest).unwrap();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap() >= 2 * d {
        // h = x^(q^d) mod rest
        h = h.square_k_mod(m as u64, &rest).unwrap();
        let g = h.add(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g).unwrap();
            h = h.rem(&rest).unwrap();
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree().unwrap() > 0 {
        let deg = rest.degree().unwrap();
        out.push((rest, deg));
    }
    out
}

fn equal_degree(f: &Poly, d: usize, m: u32, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let q = field.order() as u64;
    loop {
        let coeffs: Vec<Elem> = (0..n).map(|_| Elem(rng.random_range(0..q) as u16)).collect();
        let a = Poly::new(field, coeffs);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut g = a.gcd(f);
        if g.is_one() {
            // Absolute trace a + a^2 + ... + a^(2^(md-1)) mod f.
            let mut term = a.rem(f).unwrap();
            let mut trace = term.clone();
            for _ in 1..(m as usize * d) {
                term = term.square().rem(f).unwrap();
                trace = trace.add(&term);
            }
            g = trace.gcd(f);
        }
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let other = f.div_exact(&g).unwrap();
            let mut out = equal_degree(&g, d, m, rng);
            out.extend(equal_degree(&other, d, m, rng));
            return out;
        }
    }
}
