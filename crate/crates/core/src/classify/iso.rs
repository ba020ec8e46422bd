//! Isomorphism search over the hom space.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::kmodule::KModule;
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct IsoConfig {
    /// Exhaustive search runs when `q^d` is at most this.
    pub exhaustion_bound: u64,
    /// Random draws before giving up when the hom space is too large.
    pub random_draws: usize,
    /// Cheap random draws tried before any exhaustive search.
    pub warmup_draws: usize,
    pub seed: u64,
}

impl Default for IsoConfig {
    fn default() -> IsoConfig {
        IsoConfig { exhaustion_bound: 1 << 20, random_draws: 100_000, warmup_draws: 64, seed: 0 }
    }
}

/// Numerical invariants that any isomorphism preserves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub dim: usize,
    pub free_rank: usize,
    pub socle: usize,
    pub radical: usize,
    pub rank_a: usize,
    pub rank_b: usize,
    /// `rank(A + cB)` for every nonzero `c`, in field order (small fields only).
    pub rank_mixed: Vec<usize>,
}

impl Invariants {
    pub fn of(m: &KModule) -> Invariants {
        let field = m.field();
        let rank_mixed = if field.order() <= 16 {
            field.elements().skip(1).map(|c| m.a().add(&m.b().scale(c)).rank()).collect()
        } else {
            Vec::new()
        };
        Invariants {
            dim: m.dim(),
            free_rank: m.free_rank(),
            socle: m.socle().dim(),
            radical: m.radical().dim(),
            rank_a: m.a().rank(),
            rank_b: m.b().rank(),
            rank_mixed,
        }
    }
}

/// An invertible intertwiner `X` with `X A_M = A_N X`, `X B_M = B_N X`, or
/// `None` after a sound non-isomorphism certificate.
pub fn iso(m: &KModule, n: &KModule) -> Result<Option<Matrix>> {
    iso_with(m, n, &IsoConfig::default())
}

pub fn iso_with(m: &KModule, n: &KModule, cfg: &IsoConfig) -> Result<Option<Matrix>> {
    if m.field() != n.field() {
        return Err(Error::FieldMismatch);
    }
    if m.dim() != n.dim() || Invariants::of(m) != Invariants::of(n) {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(Matrix::zeros(m.field(), 0, 0)));
    }
    let hom = m.hom_space(n)?;
    if hom.len() != m.hom_space(m)?.len() {
        return Ok(None);
    }
    let field = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    if let Some(x) = random_search(field, &hom, cfg.warmup_draws, &mut rng) {
        return Ok(Some(x));
    }
    let d = hom.len() as u32;
    let space = (field.order() as u64).checked_pow(d);
    if space.is_some_and(|s| s <= cfg.exhaustion_bound) {
        return Ok(exhaustive_search(field, &hom));
    }
    match random_search(field, &hom, cfg.random_draws, &mut rng) {
        Some(x) => Ok(Some(x)),
        None => Err(Error::Inconclusive { hom_dim: hom.len() }),
    }
}

fn combine(field: &Field, basis: &[Matrix], coeffs: &[Elem]) -> Matrix {
    let mut acc = Matrix::zeros(field, basis[0].rows(), basis[0].cols());
    for (b, &c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

fn random_search(field: &Field, basis: &[Matrix], draws: usize, rng: &mut ChaCha8Rng) -> Option<Matrix> {
    if basis.is_empty() {
        return None;
    }
    let q = field.order() as u16;
    (0..draws).find_map(|_| {
        let coeffs: Vec<Elem> = basis.iter().map(|_| Elem(rng.random_range(0..q))).collect();
        let x = combine(field, basis, &coeffs);
        x.is_invertible().then_some(x)
    })
}

/// Every combination of the basis, in odometer order; the first invertible
/// one is returned.
pub fn exhaustive_search(field: &Field, basis: &[Matrix]) -> Option<Matrix> {
    if basis.is_empty() {
        return None;
    }
    let n = basis[0].rows();
    if field.degree() == 1 && n <= 64 && basis[0].cols() == n {
        return gf2_gray_search(field, basis);
    }
    let q = field.order();
    let mut digits = vec![0usize; basis.len()];
    loop {
        let coeffs: Vec<Elem> = digits.iter().map(|&d| Elem(d as u16)).collect();
        let x = combine(field, basis, &coeffs);
        if x.is_invertible() {
            return Some(x);
        }
        let pos = digits.iter().position(|&d| d + 1 < q)?;
        digits[pos] += 1;
        digits[..pos].iter_mut().for_each(|d| *d = 0);
    }
}

/// Rows of a GF(2) matrix as bit masks.
fn pack(m: &Matrix) -> Vec<u64> {
    (0..m.rows())
        .map(|i| m.row(i).iter().enumerate().fold(0u64, |acc, (j, e)| acc | (u64::from(e.bits()) << j)))
        .collect()
}

fn gf2_full_rank(rows: &[u64]) -> bool {
    let mut rows = rows.to_vec();
    for r in 0..rows.len() {
        let Some(p) = (r..rows.len()).find(|&i| rows[i] != 0) else { return false };
        rows.swap(r, p);
        let low = rows[r] & rows[r].wrapping_neg();
        for i in r + 1..rows.len() {
            if rows[i] & low != 0 {
                rows[i] ^= rows[r];
            }
        }
    }
    true
}

/// Gray-code walk over all GF(2) combinations; one row-XOR per step.
fn gf2_gray_search(field: &Field, basis: &[Matrix]) -> Option<Matrix> {
    let packed: Vec<Vec<u64>> = basis.iter().map(pack).collect();
    let d = basis.len();
    let mut cur = vec![0u64; basis[0].rows()];
    for step in 1u64..(1u64 << d) {
        let bit = step.trailing_zeros() as usize;
        for (c, p) in cur.iter_mut().zip(&packed[bit]) {
            *c ^= p;
        }
        if gf2_full_rank(&cur) {
            let gray = step ^ (step >> 1);
            let coeffs: Vec<Elem> = (0..d).map(|i| Elem((gray >> i & 1) as u16)).collect();
            return Some(combine(field, basis, &coeffs));
        }
    }
    None
}
