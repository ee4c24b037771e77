use crate::error::{GpiError, Result};
use serde::{Deserialize, Serialize};

// GF(4) = {0, 1, w, w^2} encoded as 0, 1, 2, 3 with w^2 = w + 1; addition is xor.
const GF4_MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
const GF4_INV: [u8; 4] = [0, 1, 3, 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Prime(u8),
    Gf4,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn new(q: u32) -> Result<Field> {
        if q == 4 {
            Ok(Field::Gf4)
        } else if q <= 251 && is_prime(q as u64) {
            Ok(Field::Prime(q as u8))
        } else {
            Err(GpiError::UnsupportedField(q))
        }
    }

    pub fn gf(p: u8) -> Field {
        Field::new(p as u32).expect("supported field")
    }

    pub fn size(self) -> u32 {
        match self {
            Field::Prime(p) => p as u32,
            Field::Gf4 => 4,
        }
    }

    pub fn characteristic(self) -> u8 {
        match self {
            Field::Prime(p) => p,
            Field::Gf4 => 2,
        }
    }

    /// Degree over the prime field.
    pub fn degree(self) -> u32 {
        match self {
            Field::Prime(_) => 1,
            Field::Gf4 => 2,
        }
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        match self {
            Field::Prime(p) => ((a as u16 + b as u16) % p as u16) as u8,
            Field::Gf4 => a ^ b,
        }
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        match self {
            Field::Prime(p) => {
                if a == 0 {
                    0
                } else {
                    p - a
                }
            }
            Field::Gf4 => a,
        }
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        match self {
            Field::Prime(p) => ((a as u16 * b as u16) % p as u16) as u8,
            Field::Gf4 => GF4_MUL[a as usize][b as usize],
        }
    }

    pub fn inv(self, a: u8) -> Option<u8> {
        if a == 0 {
            return None;
        }
        match self {
            Field::Prime(p) => Some(self.pow(a, p as u64 - 2)),
            Field::Gf4 => Some(GF4_INV[a as usize]),
        }
    }

    pub fn pow(self, a: u8, mut e: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn elements(self) -> impl Iterator<Item = u8> {
        0..self.size() as u8
    }

    /// Reduce an arbitrary integer into the prime field (GF(4): reduce mod 2).
    pub fn from_int(self, v: i64) -> u8 {
        let p = self.characteristic() as i64;
        v.rem_euclid(p) as u8
    }

    pub fn is_element(self, a: u64) -> bool {
        a < self.size() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axioms(f: Field) {
        let els: Vec<u8> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn small_fields_satisfy_axioms() {
        for q in [2, 3, 4, 5, 7, 11] {
            axioms(Field::new(q).unwrap());
        }
    }

    #[test]
    fn gf4_omega() {
        let f = Field::Gf4;
        assert_eq!(f.mul(2, 2), f.add(2, 1));
        for x in 1..4 {
            assert_eq!(f.pow(x, 3), 1);
        }
    }

    #[test]
    fn rejects_unsupported() {
        assert!(Field::new(8).is_err());
        assert!(Field::new(9).is_err());
        assert!(Field::new(257).is_err());
        assert!(Field::new(251).is_ok());
    }
}
