use super::field::Field;
use super::matrix::Matrix;
use crate::error::{GpiError, Result};

/// Univariate polynomial over GF(q), coefficients from the constant term up, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    pub field: Field,
    pub coeffs: Vec<u8>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<u8>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: vec![] }
    }

    pub fn constant(field: Field, c: u8) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn x(field: Field) -> Poly {
        Poly::new(field, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; the zero polynomial has degree -1.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lead(&self) -> u8 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).unwrap();
        self.scale(inv)
    }

    pub fn scale(&self, c: u8) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                f.add(
                    *self.coeffs.get(i).unwrap_or(&0),
                    *o.coeffs.get(i).unwrap_or(&0),
                )
            })
            .collect();
        Poly::new(f, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(self.field.neg(1)))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut c = vec![0u8; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, c)
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = self.field;
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        if r.len() < d.coeffs.len() {
            return (Poly::zero(f), self.clone());
        }
        let inv = f.inv(d.lead()).unwrap();
        let mut q = vec![0u8; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                r[k] = f.sub(r[k], f.mul(c, b));
            }
        }
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: (g, s, t) with s*self + t*o = g, g monic.
    pub fn xgcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::constant(f, 1), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::constant(f, 1));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = f.inv(r0.lead()).unwrap_or(1);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(a, f.from_int(i as i64)))
            .collect();
        Poly::new(f, c)
    }

    pub fn mulmod(&self, o: &Poly, m: &Poly) -> Poly {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::constant(self.field, 1).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u8) -> u8 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluate at a square matrix (Horner).
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let f = self.field;
        let n = m.rows;
        let mut acc = Matrix::zeros(f, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&Matrix::scalar(f, n, c));
        }
        acc
    }

    /// Exhaustive irreducibility check by trial division with all monic polynomials of degree <= deg/2.
    pub fn is_irreducible_exhaustive(&self) -> bool {
        let n = self.degree();
        if n <= 0 {
            return false;
        }
        let q = self.field.size() as usize;
        for d in 1..=(n / 2) as usize {
            let count = q.pow(d as u32);
            for idx in 0..count {
                let mut c = crate::gfq_linalg::matrix::vec_from_index(self.field, idx, d);
                c.push(1);
                let g = Poly::new(self.field, c);
                if self.rem(&g).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u8,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: Field) -> Poly {
        let mut acc = Poly::constant(field, self.unit);
        for (p, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(p);
            }
        }
        acc
    }
}

/// Factor a nonzero polynomial into monic irreducibles with multiplicities.
pub fn factor_univariate(poly: &Poly) -> Result<Factorization> {
    if poly.is_zero() {
        return Err(GpiError::Invalid("cannot factor the zero polynomial".into()));
    }
    let unit = poly.lead();
    let f = poly.monic();
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (sq, mult) in squarefree(&f) {
        for irr in berlekamp(&sq) {
            out.push((irr, mult));
        }
    }
    out.sort_by(|a, b| (a.0.degree(), &a.0.coeffs, a.1).cmp(&(b.0.degree(), &b.0.coeffs, b.1)));
    Ok(Factorization { unit, factors: out })
}

fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let field = f.field;
    let p = field.characteristic() as usize;
    let mut res = Vec::new();
    if f.degree() <= 0 {
        return res;
    }
    let d = f.derivative();
    let mut c = f.gcd(&d);
    let mut w = f.divrem(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0;
        if fac.degree() > 0 {
            res.push((fac.monic(), i));
        }
        w = y;
        c = c.divrem(&w).0;
        i += 1;
    }
    if c.degree() > 0 {
        // c is a p-th power: take the root coefficientwise.
        let q = field.size() as u64;
        let root_exp = q / p as u64;
        let coeffs: Vec<u8> = c
            .coeffs
            .iter()
            .step_by(p)
            .map(|&a| field.pow(a, root_exp))
            .collect();
        let r = Poly::new(field, coeffs);
        for (g, m) in squarefree(&r.monic()) {
            res.push((g, m * p as u32));
        }
    }
    res
}

/// Split a monic squarefree polynomial into irreducible factors.
fn berlekamp(f: &Poly) -> Vec<Poly> {
    let field = f.field;
    let n = f.degree() as usize;
    if n <= 1 {
        return vec![f.clone()];
    }
    let q = field.size() as u64;
    // Column i: x^{iq} mod f.
    let xq = Poly::x(field).powmod(q, f);
    let mut b = Matrix::zeros(field, n, n);
    let mut cur = Poly::constant(field, 1);
    for i in 0..n {
        for (j, &c) in cur.coeffs.iter().enumerate() {
            b.set(j, i, c);
        }
        cur = cur.mulmod(&xq, f);
    }
    let kernel = b.sub(&Matrix::identity(field, n)).nullspace();
    let r = kernel.len();
    let mut factors = vec![f.clone()];
    if r == 1 {
        return factors;
    }
    for v in &kernel {
        let g = Poly::new(field, v.clone());
        if g.degree() <= 0 {
            continue;
        }
        let mut next = Vec::new();
        for h in factors {
            if h.degree() <= 1 {
                next.push(h);
                continue;
            }
            let mut rest = h.clone();
            for c in field.elements() {
                if rest.degree() <= 0 {
                    break;
                }
                let s = rest.gcd(&g.sub(&Poly::constant(field, c)));
                if s.degree() > 0 && s.degree() < rest.degree() {
                    rest = rest.divrem(&s).0.monic();
                    next.push(s);
                }
            }
            if rest.degree() > 0 {
                next.push(rest);
            }
        }
        factors = next;
        if factors.len() == r {
            break;
        }
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(field: Field, c: &[u8]) -> Poly {
        Poly::new(field, c.to_vec())
    }

    #[test]
    fn spec_examples() {
        let f = Field::gf(2);
        let fx = factor_univariate(&p(f, &[0, 1, 1])).unwrap();
        assert_eq!(fx.factors, vec![(p(f, &[0, 1]), 1), (p(f, &[1, 1]), 1)]);
        let fx = factor_univariate(&p(f, &[1, 0, 1])).unwrap();
        assert_eq!(fx.factors, vec![(p(f, &[1, 1]), 2)]);
        let fx = factor_univariate(&p(f, &[1, 1, 1])).unwrap();
        assert_eq!(fx.factors, vec![(p(f, &[1, 1, 1]), 1)]);
        assert!(factor_univariate(&Poly::zero(f)).is_err());
    }

    #[test]
    fn factors_multiply_back_and_are_irreducible() {
        for q in [2u32, 3, 4, 5] {
            let field = Field::new(q).unwrap();
            let mut seed = 12345u64;
            for _ in 0..60 {
                let deg = 1 + (seed % 9) as usize;
                let mut c = Vec::new();
                for _ in 0..=deg {
                    seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    c.push(((seed >> 33) % q as u64) as u8);
                }
                c[deg] = 1 + c[deg] % (q as u8 - 1);
                let poly = p(field, &c);
                let fx = factor_univariate(&poly).unwrap();
                assert_eq!(fx.expand(field), poly);
                for (g, _) in &fx.factors {
                    assert!(g.is_irreducible_exhaustive(), "{g:?} over GF({q})");
                }
            }
        }
    }

    #[test]
    fn xgcd_identity() {
        let f = Field::gf(3);
        let a = p(f, &[1, 2, 0, 1]);
        let b = p(f, &[2, 1, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}
