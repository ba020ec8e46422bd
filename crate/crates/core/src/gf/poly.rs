//! Univariate polynomials over GF(2^m).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::field::{Elem, Field};
use crate::error::{Error, Result};

/// A polynomial, coefficients lowest degree first with no trailing zeros.
/// The empty coefficient list is the zero polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Builds from raw coefficient bits, validating each against the field.
    pub fn from_bits(field: &Field, bits: &[u64]) -> Result<Poly> {
        let coeffs = bits.iter().map(|&b| field.elem(b)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The indeterminate itself.
    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![Elem::ZERO, Elem::ONE])
    }

    /// `c * x^k`.
    pub fn monomial(field: &Field, c: Elem, k: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero past the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// Coefficient bits, lowest degree first.
    pub fn to_bits(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.0 as u64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Elem::ONE
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elem::ONE)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()))
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert!(self.field == other.field);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Poly::new(&self.field, coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert!(self.field == other.field);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += f.mul(a, b);
            }
        }
        Poly::new(f, out)
    }

    /// `self * x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Elem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs }
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let f = &self.field;
        let inv_lead = f.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = f.mul(rem[top], inv_lead);
            if !c.is_zero() {
                let k = top - dd;
                quot[k] = c;
                for (i, &d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] += f.mul(c, d);
                }
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        match other.rem(self) {
            Ok(r) => r.is_zero(),
            Err(_) => other.is_zero(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^e mod modulus` by repeated squaring.
    pub fn powmod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// `self^(2^k) mod modulus`.
    pub fn square_k_mod(&self, k: u64, modulus: &Poly) -> Result<Poly> {
        let mut acc = self.rem(modulus)?;
        for _ in 0..k {
            acc = acc.square().rem(modulus)?;
        }
        Ok(acc)
    }

    /// Squaring is coefficient-wise in characteristic 2:
    /// `(sum a_i x^i)^2 = sum a_i^2 x^(2i)`.
    pub fn square(&self) -> Poly {
        let f = &self.field;
        let mut out = vec![Elem::ZERO; (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[2 * i] = f.mul(a, a);
        }
        Poly::new(f, out)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { Elem::ZERO })
            .collect();
        Poly::new(&self.field, coeffs)
    }

    /// Square root of a polynomial whose odd coefficients vanish.
    pub fn sqrt(&self) -> Option<Poly> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        let f = &self.field;
        let coeffs = self.coeffs.iter().step_by(2).map(|&c| f.sqrt(c)).collect();
        Some(Poly::new(f, coeffs))
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.mul(acc, x) + c)
    }

    /// `x^deg * self(1/x)`: coefficients reversed.
    pub fn reversed(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(&self.field, c)
    }

    /// `self(x + c)`.
    pub fn shift_argument(&self, c: Elem) -> Poly {
        let lin = Poly::new(&self.field, vec![c, Elem::ONE]);
        self.coeffs.iter().rev().fold(Poly::zero(&self.field), |acc, &a| {
            acc.mul(&lin).add(&Poly::constant(&self.field, a))
        })
    }

    /// Parses `x^2+x+1`, `x2+x+1`, `3x^2+1`, `3*x+2`, `0`, `1`.
    /// Errors name the offending token.
    pub fn parse(field: &Field, text: &str) -> Result<Poly> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc = Poly::zero(field);
        for token in cleaned.split('+') {
            let term = parse_term(field, token)
                .ok_or_else(|| Error::Parse(format!("bad polynomial term `{token}`")))??;
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

fn parse_term(field: &Field, token: &str) -> Option<Result<Poly>> {
    if token.is_empty() {
        return None;
    }
    let (coef_part, rest) = match token.find('x') {
        Some(pos) => (&token[..pos], Some(&token[pos + 1..])),
        None => (token, None),
    };
    let coef_part = coef_part.strip_suffix('*').unwrap_or(coef_part);
    let coef = if coef_part.is_empty() {
        rest?;
        1
    } else {
        coef_part.parse::<u64>().ok()?
    };
    let coef = match field.elem(coef) {
        Ok(c) => c,
        Err(e) => return Some(Err(e)),
    };
    let power = match rest {
        None => 0,
        Some("") => 1,
        Some(r) => r.strip_prefix('^').unwrap_or(r).parse::<usize>().ok()?,
    };
    if power > 4096 {
        return None;
    }
    Some(Ok(Poly::monomial(field, coef, power)))
}

/// Canonical order: degree first (zero smallest), then coefficient bits
/// compared from the highest degree down.
impl Ord for Poly {
    fn cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Poly) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let show_coef = c.0 != 1 || i == 0;
            if show_coef {
                write!(f, "{}", c.0)?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
