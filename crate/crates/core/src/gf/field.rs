//! The ground field GF(2^m) in the polynomial basis.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

/// Built-in moduli, indexed by extension degree. Each entry is the bit mask
/// of a monic irreducible polynomial over GF(2) (bit i = coefficient of x^i).
///
/// | m | modulus                 |
/// |---|-------------------------|
/// | 2 | x^2 + x + 1             |
/// | 3 | x^3 + x + 1             |
/// | 4 | x^4 + x + 1             |
/// | 5 | x^5 + x^2 + 1           |
/// | 6 | x^6 + x + 1             |
/// | 7 | x^7 + x + 1             |
/// | 8 | x^8 + x^4 + x^3 + x^2 + 1 |
pub const DEFAULT_MODULI: [u32; 9] = [0, 0b10, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D];

/// An element of GF(2^m). Bit i is the coefficient of x^i in the polynomial
/// basis; addition is exclusive-or.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn bits(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

// Addition in characteristic 2 is XOR of the coefficient bits.
impl std::ops::Add for Elem {
    type Output = Elem;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for Elem {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    degree: u32,
    modulus: u32,
    // exp has length 2(q-1) so that log a + log b never needs reducing.
    exp: Vec<u16>,
    log: Vec<u16>,
}

/// A finite field of characteristic 2. Cheap to clone; all clones share
/// the same multiplication tables.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl Field {
    /// The prime field GF(2).
    pub fn gf2() -> Field {
        Field::build(1, 0b10)
    }

    /// GF(2^m) with the built-in modulus. Only `1 <= m <= 8` has a default.
    pub fn gf2m(m: u32) -> Result<Field> {
        if m == 0 || m as usize >= DEFAULT_MODULI.len() {
            return Err(Error::InvalidField(format!(
                "no built-in modulus for degree {m} (supported: 1..=8)"
            )));
        }
        Ok(Field::build(m, DEFAULT_MODULI[m as usize]))
    }

    /// GF(2^m) defined by an explicit modulus (bit mask including the leading
    /// term). The modulus must be irreducible of degree m over GF(2).
    pub fn with_modulus(m: u32, modulus: u32) -> Result<Field> {
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::InvalidField(format!("degree {m} outside 1..={MAX_DEGREE}")));
        }
        if m == 1 {
            // GF(2) needs no modulus; accept x or x+1 for symmetry.
            if modulus != 0b10 && modulus != 0b11 && modulus != 0 {
                return Err(Error::InvalidField("modulus for m = 1 must have degree 1".into()));
            }
            return Ok(Field::gf2());
        }
        if bit_degree(modulus) != Some(m) {
            return Err(Error::InvalidField(format!("modulus {modulus:#b} does not have degree {m}")));
        }
        if !gf2_irreducible(modulus) {
            return Err(Error::InvalidField(format!("modulus {modulus:#b} is reducible over GF(2)")));
        }
        Ok(Field::build(m, modulus))
    }

    fn build(degree: u32, modulus: u32) -> Field {
        let q = 1usize << degree;
        let order = q - 1;
        let slow = |a: u32, b: u32| slow_mul(a, b, degree, modulus);
        // Find a generator of the multiplicative group by brute force.
        let mut generator = 1u32;
        if degree > 1 {
            for cand in 2..q as u32 {
                let mut x = cand;
                let mut len = 1usize;
                while x != 1 {
                    x = slow(x, cand);
                    len += 1;
                }
                if len == order {
                    generator = cand;
                    break;
                }
            }
        }
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u16; q];
        let mut x = 1u32;
        for i in 0..order {
            exp[i] = x as u16;
            exp[i + order] = x as u16;
            log[x as usize] = i as u16;
            x = slow(x, generator);
        }
        Field(Arc::new(Tables { degree, modulus, exp, log }))
    }

    /// Extension degree m.
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    /// Defining modulus as a GF(2) bit mask; `None` for the prime field.
    pub fn modulus(&self) -> Option<u32> {
        (self.0.degree > 1).then_some(self.0.modulus)
    }

    /// Number of elements q = 2^m.
    pub fn order(&self) -> usize {
        1usize << self.0.degree
    }

    /// Validates raw bits as an element of this field.
    pub fn elem(&self, bits: u64) -> Result<Elem> {
        if bits >= self.order() as u64 {
            return Err(Error::InvalidField(format!(
                "element {bits} out of range for GF(2^{})",
                self.0.degree
            )));
        }
        Ok(Elem(bits as u16))
    }

    /// All elements in canonical order (by bits).
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order()).map(|b| Elem(b as u16))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if self.0.degree == 1 {
            return Elem::ONE;
        }
        let t = &self.0;
        Elem(t.exp[t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize])
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(!a.is_zero(), "inverse of zero");
        if self.0.degree == 1 {
            return Elem::ONE;
        }
        let t = &self.0;
        let order = self.order() - 1;
        Elem(t.exp[(order - t.log[a.0 as usize] as usize) % order])
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let order = (self.order() - 1) as u64;
        let t = &self.0;
        let l = (t.log[a.0 as usize] as u64 * (e % order)) % order;
        Elem(t.exp[l as usize])
    }

    /// The unique square root (Frobenius is bijective on a finite field of
    /// characteristic 2).
    pub fn sqrt(&self, a: Elem) -> Elem {
        if a.is_zero() || self.0.degree == 1 {
            return a;
        }
        let order = self.order() - 1;
        let l = self.0.log[a.0 as usize] as usize;
        let half = if l.is_multiple_of(2) { l / 2 } else { (l + order) / 2 };
        Elem(self.0.exp[half])
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.degree == other.0.degree && self.modulus() == other.modulus())
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus() {
            None => write!(f, "GF(2)"),
            Some(m) => write!(f, "GF(2^{}; {:#x})", self.0.degree, m),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.degree == 1 {
            write!(f, "GF(2)")
        } else {
            write!(f, "GF({})", self.order())
        }
    }
}

fn bit_degree(p: u32) -> Option<u32> {
    (p != 0).then(|| 31 - p.leading_zeros())
}

fn slow_mul(mut a: u32, mut b: u32, degree: u32, modulus: u32) -> u32 {
    let mut acc = 0u32;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> degree & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

fn gf2_rem(mut a: u32, b: u32) -> u32 {
    let db = bit_degree(b).expect("nonzero divisor");
    while let Some(da) = bit_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Irreducibility over GF(2) by trial division; fine for degree <= 16.
pub fn gf2_irreducible(p: u32) -> bool {
    let Some(d) = bit_degree(p) else { return false };
    if d == 0 {
        return false;
    }
    for cand in 2u32..(1 << (d / 2 + 1)) {
        let dc = bit_degree(cand).unwrap();
        if dc >= 1 && dc <= d / 2 && gf2_rem(p, cand) == 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli_are_irreducible() {
        for m in 2..=8u32 {
            assert!(gf2_irreducible(DEFAULT_MODULI[m as usize]), "m = {m}");
        }
        assert!(!gf2_irreducible(0b101)); // (x+1)^2
    }

    #[test]
    fn gf4_alpha_squared_is_alpha_plus_one() {
        let f = Field::gf2m(2).unwrap();
        assert_eq!(f.mul(Elem(2), Elem(2)), Elem(3));
    }

    #[test]
    fn inverses_and_square_roots() {
        for m in [1, 2, 3, 4, 8] {
            let f = Field::gf2m(m).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(a, f.inv(a)), Elem::ONE);
                let r = f.sqrt(a);
                assert_eq!(f.mul(r, r), a);
            }
        }
    }

    #[test]
    fn mul_agrees_with_carryless_reference() {
        let f = Field::with_modulus(5, 0b100101).unwrap();
        for a in 0..32u32 {
            for b in 0..32u32 {
                assert_eq!(
                    f.mul(Elem(a as u16), Elem(b as u16)).0 as u32,
                    slow_mul(a, b, 5, 0b100101)
                );
            }
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(Field::with_modulus(4, 0b10101).is_err()); // x^4+x^2+1 reducible
        assert!(Field::with_modulus(3, 0b10011).is_err()); // wrong degree
        assert!(Field::with_modulus(17, 0).is_err());
        assert!(Field::with_modulus(16, 0x1002B).is_ok());
    }
}
