use crate::error::{GpiError, Result};
use crate::gfq_linalg::matrix::{axpy, span_basis, vec_from_index};
use crate::gfq_linalg::{factor_univariate, EchelonBasis, Field, Matrix, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A subspace of n x n matrices closed under multiplication.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    pub field: Field,
    pub n: usize,
    pub basis: Vec<Matrix>,
    eb: EchelonBasis,
}

impl MatrixAlgebra {
    /// Wrap a basis; dependent vectors are dropped. Closure is not checked here (see `check_closed`).
    pub fn from_basis(field: Field, n: usize, basis: Vec<Matrix>) -> MatrixAlgebra {
        let mut eb = EchelonBasis::new(field, n * n, true);
        let mut kept = Vec::new();
        for b in basis {
            if eb.insert(&b.data) {
                kept.push(b);
            }
        }
        MatrixAlgebra { field, n, basis: kept, eb }
    }

    /// Unital algebra generated by the given matrices.
    pub fn generated_by(field: Field, n: usize, gens: &[Matrix]) -> MatrixAlgebra {
        let mut alg = MatrixAlgebra::from_basis(field, n, vec![Matrix::identity(field, n)]);
        let mut frontier: Vec<Matrix> = vec![Matrix::identity(field, n)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.mul(g);
                if alg.eb.insert(&y.data) {
                    alg.basis.push(y.clone());
                    frontier.push(y);
                }
            }
        }
        alg
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, x: &Matrix) -> Option<Vec<u8>> {
        self.eb.coords(&x.data)
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        self.eb.contains(&x.data)
    }

    pub fn element(&self, coords: &[u8]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.n, self.n);
        for (c, b) in coords.iter().zip(&self.basis) {
            axpy(self.field, &mut m.data, *c, &b.data);
        }
        m
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.field, self.n)
    }

    pub fn check_closed(&self) -> Result<()> {
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                if !self.contains(&a.mul(b)) {
                    return Err(GpiError::Invalid(format!(
                        "algebra not closed: product of basis elements {i} and {j} leaves the span"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_unital(&self) -> bool {
        self.contains(&self.identity())
    }

    pub fn is_commutative(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, a)| {
            self.basis[..i].iter().all(|b| a.mul(b) == b.mul(a))
        })
    }

    /// Elements of `span` (given as a basis in this algebra) commuting with every basis element.
    pub fn center(&self) -> Vec<Matrix> {
        let k = self.dim();
        let nn = self.n * self.n;
        // unknown coefficients c; constraint sum c_i [b_i, b_j] = 0
        let mut rows = vec![vec![0u8; k]; nn * k];
        for (i, bi) in self.basis.iter().enumerate() {
            for (j, bj) in self.basis.iter().enumerate() {
                let comm = bi.mul(bj).sub(&bj.mul(bi));
                for (e, &v) in comm.data.iter().enumerate() {
                    rows[j * nn + e][i] = v;
                }
            }
        }
        let m = Matrix::from_rows(self.field, &rows);
        m.nullspace().iter().map(|c| self.element(c)).collect()
    }

    /// Enumerate every element (only for small algebras).
    pub fn all_elements(&self) -> Vec<Matrix> {
        let q = self.field.size() as usize;
        let total = q.pow(self.dim() as u32);
        (0..total)
            .map(|i| self.element(&vec_from_index(self.field, i, self.dim())))
            .collect()
    }

    pub fn size_log2(&self) -> f64 {
        self.dim() as f64 * (self.field.size() as f64).log2()
    }
}

/// Span of products a*b for a in `xs`, b in `ys`.
fn product_span(field: Field, n: usize, xs: &[Matrix], ys: &[Matrix]) -> Vec<Matrix> {
    let mut eb = EchelonBasis::new(field, n * n, false);
    let mut out = Vec::new();
    for a in xs {
        for b in ys {
            let p = a.mul(b);
            if eb.insert(&p.data) {
                out.push(p);
            }
        }
    }
    out
}

// ---------- radical ----------

/// Integer matrix power modulo `modulus` of a matrix with entries already reduced.
fn int_mat_mul(a: &[u64], b: &[u64], n: usize, modulus: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % modulus;
            }
        }
    }
    out
}

/// g_i(a) = (Tr(lift(a)^{p^i}) mod p^{i+1}) / p^i, the Ronyai trace functional.
fn trace_functional(a: &Matrix, p: u64, i: u32) -> u8 {
    let n = a.rows;
    let modulus = p.pow(i + 1);
    let mut acc: Vec<u64> = (0..n * n).map(|k| if k % (n + 1) == 0 { 1 } else { 0 }).collect();
    let mut base: Vec<u64> = a.data.iter().map(|&x| x as u64).collect();
    let mut e = p.pow(i);
    while e > 0 {
        if e & 1 == 1 {
            acc = int_mat_mul(&acc, &base, n, modulus);
        }
        e >>= 1;
        if e > 0 {
            base = int_mat_mul(&base, &base, n, modulus);
        }
    }
    let tr = (0..n).fold(0u64, |s, k| (s + acc[k * n + k]) % modulus);
    ((tr / p.pow(i)) % p) as u8
}

fn radical_prime(alg: &MatrixAlgebra) -> Vec<Matrix> {
    let field = alg.field;
    let p = field.characteristic() as u64;
    let n = alg.n.max(1);
    let mut l = 0u32;
    while p.pow(l + 1) <= n as u64 {
        l += 1;
    }
    let mut ideal: Vec<Matrix> = alg.basis.clone();
    for i in 0..=l {
        if ideal.is_empty() {
            break;
        }
        // rows indexed by ideal basis, columns by algebra basis
        let rows: Vec<Vec<u8>> = ideal
            .iter()
            .map(|v| alg.basis.iter().map(|b| trace_functional(&v.mul(b), p, i)).collect())
            .collect();
        let m = Matrix::from_rows(field, &rows).transpose();
        let kernel = m.nullspace();
        ideal = kernel
            .iter()
            .map(|c| {
                let mut x = Matrix::zeros(field, alg.n, alg.n);
                for (cc, v) in c.iter().zip(&ideal) {
                    axpy(field, &mut x.data, *cc, &v.data);
                }
                x
            })
            .collect();
    }
    ideal
}

pub fn restrict_scalars_gf4(m: &Matrix) -> Matrix {
    let f2 = Field::gf(2);
    let mut out = Matrix::zeros(f2, 2 * m.rows, 2 * m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            let c = m.get(i, j);
            let (c0, c1) = (c & 1, c >> 1);
            out.set(2 * i, 2 * j, c0);
            out.set(2 * i, 2 * j + 1, c1);
            out.set(2 * i + 1, 2 * j, c1);
            out.set(2 * i + 1, 2 * j + 1, c0 ^ c1);
        }
    }
    out
}

fn extend_scalars_gf4(m: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(Field::Gf4, m.rows / 2, m.cols / 2);
    for i in 0..out.rows {
        for j in 0..out.cols {
            out.set(i, j, m.get(2 * i, 2 * j) | (m.get(2 * i + 1, 2 * j) << 1));
        }
    }
    out
}

/// Basis of the Jacobson radical; verified to be a nilpotent ideal.
pub fn algebra_radical(alg: &MatrixAlgebra) -> Result<Vec<Matrix>> {
    alg.check_closed()?;
    let rad = match alg.field {
        Field::Prime(_) => radical_prime(alg),
        Field::Gf4 => {
            let mut basis2 = Vec::new();
            for b in &alg.basis {
                basis2.push(restrict_scalars_gf4(b));
                basis2.push(restrict_scalars_gf4(&b.scale(2)));
            }
            let a2 = MatrixAlgebra::from_basis(Field::gf(2), 2 * alg.n, basis2);
            let r2 = radical_prime(&a2);
            let back: Vec<Matrix> = r2.iter().map(extend_scalars_gf4).collect();
            let vecs: Vec<Vec<u8>> = back.iter().map(|m| m.data.clone()).collect();
            span_basis(Field::Gf4, alg.n * alg.n, &vecs)
                .into_iter()
                .map(|d| Matrix { field: Field::Gf4, rows: alg.n, cols: alg.n, data: d })
                .collect()
        }
    };
    verify_nilpotent_ideal(alg, &rad)?;
    Ok(rad)
}

fn verify_nilpotent_ideal(alg: &MatrixAlgebra, j: &[Matrix]) -> Result<()> {
    let sub = MatrixAlgebra::from_basis(alg.field, alg.n, j.to_vec());
    for x in j {
        for b in &alg.basis {
            if !sub.contains(&x.mul(b)) || !sub.contains(&b.mul(x)) {
                return Err(GpiError::Verification("radical is not an ideal".into()));
            }
        }
    }
    let mut power = j.to_vec();
    for _ in 0..=alg.n {
        if power.is_empty() {
            return Ok(());
        }
        power = product_span(alg.field, alg.n, &power, j);
    }
    Err(GpiError::Verification("radical is not nilpotent".into()))
}

/// Filtration-adapted basis of J: a basis of J^m, extended to J^{m-1}, ..., J.
fn adapted_radical_basis(field: Field, n: usize, j: &[Matrix]) -> Vec<Matrix> {
    let mut layers = vec![j.to_vec()];
    loop {
        let next = product_span(field, n, layers.last().unwrap(), j);
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }
    let mut eb = EchelonBasis::new(field, n * n, false);
    let mut out = Vec::new();
    for layer in layers.iter().rev() {
        for x in layer {
            if eb.insert(&x.data) {
                out.push(x.clone());
            }
        }
    }
    out
}

// ---------- semisimple structure ----------

/// L = J + complement; S = L/J realised through its left regular representation.
#[derive(Clone, Debug)]
pub struct Wedderburn {
    pub radical: Vec<Matrix>,
    pub complement: Vec<Matrix>,
    pub quotient: MatrixAlgebra,
    coords: EchelonBasis,
}

impl Wedderburn {
    pub fn new(alg: &MatrixAlgebra) -> Result<Wedderburn> {
        let field = alg.field;
        let radical = algebra_radical(alg)?;
        let nn = alg.n * alg.n;
        let mut eb = EchelonBasis::new(field, nn, true);
        for r in &radical {
            eb.insert(&r.data);
        }
        let mut complement = Vec::new();
        for b in &alg.basis {
            if eb.insert(&b.data) {
                complement.push(b.clone());
            }
        }
        let jd = radical.len();
        let s = complement.len();
        let mut qbasis = Vec::with_capacity(s);
        for ci in &complement {
            let mut m = Matrix::zeros(field, s, s);
            for (col, cj) in complement.iter().enumerate() {
                let c = eb.coords(&ci.mul(cj).data).expect("closed algebra");
                for row in 0..s {
                    m.set(row, col, c[jd + row]);
                }
            }
            qbasis.push(m);
        }
        let quotient = MatrixAlgebra::from_basis(field, s, qbasis);
        if quotient.dim() != s {
            return Err(GpiError::Verification("semisimple quotient lost dimension".into()));
        }
        Ok(Wedderburn { radical, complement, quotient, coords: eb })
    }

    /// Image in S of an element of L.
    pub fn project(&self, x: &Matrix) -> Matrix {
        let c = self.coords.coords(&x.data).expect("element of the algebra");
        let jd = self.radical.len();
        self.quotient.element(&c[jd..])
    }

    /// Some preimage in L of an element of S.
    pub fn lift(&self, y: &Matrix) -> Matrix {
        let c = self.quotient.coords(y).expect("element of the quotient");
        let f = self.quotient.field;
        let n = self.complement.first().map_or(0, |m| m.rows);
        let mut out = Matrix::zeros(f, n, n);
        for (cc, b) in c.iter().zip(&self.complement) {
            axpy(f, &mut out.data, *cc, &b.data);
        }
        out
    }
}

/// Minimal polynomial of x inside a corner algebra with identity e.
pub fn min_poly_relative(x: &Matrix, e: &Matrix) -> Poly {
    let field = x.field;
    let mut eb = EchelonBasis::new(field, x.data.len(), true);
    let mut p = e.clone();
    let mut k = 0;
    loop {
        if let Some(c) = eb.coords(&p.data) {
            let mut coeffs: Vec<u8> = c.iter().map(|&v| field.neg(v)).collect();
            coeffs.push(1);
            return Poly::new(field, coeffs);
        }
        eb.insert(&p.data);
        p = p.mul(x);
        k += 1;
        assert!(k <= x.data.len() + 1);
    }
}

pub fn eval_relative(poly: &Poly, x: &Matrix, e: &Matrix) -> Matrix {
    let mut acc = Matrix::zeros(x.field, x.rows, x.cols);
    for &c in poly.coeffs.iter().rev() {
        acc = acc.mul(x).add(&e.scale(c));
    }
    acc
}

/// One idempotent per distinct irreducible factor of the minimal polynomial of x (relative to e).
pub fn crt_idempotents(x: &Matrix, e: &Matrix) -> Vec<Matrix> {
    let m = min_poly_relative(x, e);
    let fac = factor_univariate(&m).expect("nonzero minimal polynomial");
    if fac.factors.len() <= 1 {
        return vec![e.clone()];
    }
    let field = x.field;
    let mut out = Vec::new();
    for (f, a) in &fac.factors {
        let mut fa = Poly::constant(field, 1);
        for _ in 0..*a {
            fa = fa.mul(f);
        }
        let cof = m.divrem(&fa).0;
        let (g, s, _) = cof.xgcd(&fa);
        debug_assert!(g.is_one());
        let poly = s.mul(&cof).rem(&m);
        out.push(eval_relative(&poly, x, e));
    }
    out
}

#[derive(Clone, Debug)]
pub struct SimpleBlock {
    pub central: Matrix,
    pub idempotents: Vec<Matrix>,
    /// |K| where the block is M_n(K).
    pub field_size: u128,
    /// dim over the base field of K.
    pub k: usize,
}

impl SimpleBlock {
    pub fn n(&self) -> usize {
        self.idempotents.len()
    }
}

fn corner_basis(s: &MatrixAlgebra, e: &Matrix, f: &Matrix) -> Vec<Matrix> {
    let field = s.field;
    let mut eb = EchelonBasis::new(field, s.n * s.n, false);
    let mut out = Vec::new();
    for b in &s.basis {
        let x = e.mul(b).mul(f);
        if eb.insert(&x.data) {
            out.push(x);
        }
    }
    out
}

/// Split a semisimple algebra into simple blocks with complete sets of primitive idempotents.
pub fn simple_blocks(s: &MatrixAlgebra, seed: u64) -> Result<Vec<SimpleBlock>> {
    let field = s.field;
    let q = field.size() as u64;
    let one = s.identity();
    let center = s.center();
    // Berlekamp subalgebra of the center: its idempotents are the central primitive ones.
    let cz = MatrixAlgebra::from_basis(field, s.n, center.clone());
    let rows: Vec<Vec<u8>> = center
        .iter()
        .map(|z| cz.coords(&z.pow(q).sub(z)).expect("center is closed"))
        .collect();
    let fixed: Vec<Matrix> = if rows.is_empty() {
        vec![]
    } else {
        Matrix::from_rows(field, &rows)
            .transpose()
            .nullspace()
            .iter()
            .map(|c| cz.element(c))
            .collect()
    };
    let mut centrals = vec![one.clone()];
    for z in &fixed {
        let mut next = Vec::new();
        for e in &centrals {
            next.extend(crt_idempotents(&z.mul(e), e));
        }
        centrals = next;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks = Vec::new();
    for c in centrals {
        let block_dim = corner_basis(s, &c, &c).len();
        let k = center
            .iter()
            .map(|z| z.mul(&c))
            .collect::<Vec<_>>();
        let k = MatrixAlgebra::from_basis(field, s.n, k).dim();
        let mut stack = vec![c.clone()];
        let mut prims = Vec::new();
        while let Some(e) = stack.pop() {
            let corner = corner_basis(s, &e, &e);
            if corner.len() == k {
                prims.push(e);
                continue;
            }
            let parts = split_corner(&corner, &e, &mut rng)?;
            stack.extend(parts);
        }
        let nb = prims.len();
        if nb * nb * k != block_dim {
            return Err(GpiError::Verification(format!(
                "block of dimension {block_dim} with {nb} idempotents over a degree-{k} center"
            )));
        }
        prims.sort_by(|a, b| a.data.cmp(&b.data));
        blocks.push(SimpleBlock {
            central: c,
            idempotents: prims,
            field_size: (q as u128).pow(k as u32),
            k,
        });
    }
    Ok(blocks)
}

/// Find a nontrivial orthogonal idempotent split of a non-division corner algebra.
fn split_corner(corner: &[Matrix], e: &Matrix, rng: &mut ChaCha8Rng) -> Result<Vec<Matrix>> {
    let field = e.field;
    let try_x = |x: &Matrix| -> Option<Vec<Matrix>> {
        let parts = crt_idempotents(x, e);
        (parts.len() > 1).then_some(parts)
    };
    for b in corner {
        if let Some(p) = try_x(b) {
            return Ok(p);
        }
    }
    for a in corner {
        for b in corner {
            if let Some(p) = try_x(&a.mul(b)) {
                return Ok(p);
            }
        }
    }
    let q = field.size();
    for _ in 0..4000 {
        let mut x = Matrix::zeros(field, e.rows, e.cols);
        for b in corner {
            let c = rng.gen_range(0..q) as u8;
            axpy(field, &mut x.data, c, &b.data);
        }
        if let Some(p) = try_x(&x) {
            return Ok(p);
        }
    }
    Err(GpiError::Undecided("no splitting element found in a simple corner algebra".into()))
}

// ---------- unit group ----------

pub fn gl_order(n: usize, q: u128) -> Option<u128> {
    let qn = q.checked_pow(n as u32)?;
    let mut acc: u128 = 1;
    let mut qi: u128 = 1;
    for _ in 0..n {
        acc = acc.checked_mul(qn - qi)?;
        qi *= q;
    }
    Some(acc)
}

#[derive(Clone, Debug)]
pub struct UnitGroup {
    pub generators: Vec<Matrix>,
    pub order: u128,
}

fn prime_divisors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Generator of the multiplicative group of a field corner e S e (identity e).
fn field_generator(corner: &[Matrix], e: &Matrix, size: u128) -> Result<Matrix> {
    let field = e.field;
    let k = corner.len();
    let order = size - 1;
    let primes = prime_divisors(order);
    let total = (field.size() as u128).pow(k as u32);
    if total > 1 << 22 {
        return Err(GpiError::Budget("field block too large to search for a generator".into()));
    }
    for idx in 1..total as usize {
        let c = vec_from_index(field, idx, k);
        let mut y = Matrix::zeros(field, e.rows, e.cols);
        for (cc, b) in c.iter().zip(corner) {
            axpy(field, &mut y.data, *cc, &b.data);
        }
        let pw = |exp: u128| -> Matrix {
            let mut acc = e.clone();
            let mut base = y.clone();
            let mut ex = exp;
            while ex > 0 {
                if ex & 1 == 1 {
                    acc = acc.mul(&base);
                }
                base = base.mul(&base);
                ex >>= 1;
            }
            acc
        };
        if pw(order) != *e {
            continue;
        }
        if primes.iter().all(|&r| pw(order / r) != *e) {
            return Ok(y);
        }
    }
    Err(GpiError::Verification("no multiplicative generator in a field block".into()))
}

/// Generators and order of the unit group of a unital matrix algebra.
pub fn unit_group(alg: &MatrixAlgebra, seed: u64) -> Result<UnitGroup> {
    if !alg.is_unital() {
        return Err(GpiError::Invalid("unit group of a non-unital algebra".into()));
    }
    let field = alg.field;
    let n = alg.n;
    let w = Wedderburn::new(alg)?;
    let one = alg.identity();
    let mut gens = Vec::new();
    let scalars: Vec<u8> = match field {
        Field::Prime(_) => vec![1],
        Field::Gf4 => vec![1, 2],
    };
    for j in adapted_radical_basis(field, n, &w.radical) {
        for &c in &scalars {
            gens.push(one.add(&j.scale(c)));
        }
    }
    let q = field.size() as u128;
    let mut order = q
        .checked_pow(w.radical.len() as u32)
        .ok_or_else(|| GpiError::Budget("unit group order overflow".into()))?;
    let s = &w.quotient;
    let s_one = s.identity();
    for block in simple_blocks(s, seed)? {
        let nb = block.n();
        order = order
            .checked_mul(gl_order(nb, block.field_size).ok_or_else(|| GpiError::Budget("order overflow".into()))?)
            .ok_or_else(|| GpiError::Budget("unit group order overflow".into()))?;
        let e1 = &block.idempotents[0];
        let corner = corner_basis(s, e1, e1);
        let y = field_generator(&corner, e1, block.field_size)?;
        gens.push(w.lift(&s_one.sub(e1).add(&y)));
        for i in 0..nb {
            for j in 0..nb {
                if i == j {
                    continue;
                }
                for t in corner_basis(s, &block.idempotents[i], &block.idempotents[j]) {
                    for &c in &scalars {
                        gens.push(w.lift(&s_one.add(&t.scale(c))));
                    }
                }
            }
        }
    }
    for g in &gens {
        if !g.is_invertible() {
            return Err(GpiError::Verification("unit group generator is singular".into()));
        }
    }
    gens.sort_by(|a, b| a.data.cmp(&b.data));
    gens.dedup();
    gens.retain(|g| !g.is_identity());
    Ok(UnitGroup { generators: gens, order })
}

/// True iff the algebra (unital) is local: its semisimple quotient is a field.
pub fn is_local(alg: &MatrixAlgebra) -> Result<bool> {
    let w = Wedderburn::new(alg)?;
    let s = &w.quotient;
    if !s.is_commutative() {
        return Ok(false);
    }
    let q = s.field.size() as u64;
    let rows: Vec<Vec<u8>> = s
        .basis
        .iter()
        .map(|z| s.coords(&z.pow(q).sub(z)).expect("closed"))
        .collect();
    let fixed = Matrix::from_rows(s.field, &rows).transpose().nullspace().len();
    Ok(fixed == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn m(field: Field, rows: &[&[u8]]) -> Matrix {
        Matrix::from_rows(field, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn full(field: Field, n: usize) -> MatrixAlgebra {
        let mut basis = Vec::new();
        for i in 0..n * n {
            let mut x = Matrix::zeros(field, n, n);
            x.data[i] = 1;
            basis.push(x);
        }
        MatrixAlgebra::from_basis(field, n, basis)
    }

    /// Oracle: J = {x : xy nilpotent for all y}.
    fn brute_radical_dim(alg: &MatrixAlgebra) -> usize {
        let els = alg.all_elements();
        let count = els
            .iter()
            .filter(|x| els.iter().all(|y| x.mul(y).is_nilpotent()))
            .count();
        let q = alg.field.size() as f64;
        (count as f64).log(q).round() as usize
    }

    fn brute_units(alg: &MatrixAlgebra) -> usize {
        alg.all_elements().iter().filter(|x| x.is_invertible()).count()
    }

    fn closure_order(gens: &[Matrix], n: usize, field: Field) -> usize {
        let mut seen: HashSet<Matrix> = HashSet::new();
        let id = Matrix::identity(field, n);
        seen.insert(id.clone());
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = x.mul(g);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn radical_examples() {
        let f2 = Field::gf(2);
        assert!(algebra_radical(&full(f2, 2)).unwrap().is_empty());
        let upper = MatrixAlgebra::from_basis(
            f2,
            2,
            vec![m(f2, &[&[1, 0], &[0, 0]]), m(f2, &[&[0, 1], &[0, 0]]), m(f2, &[&[0, 0], &[0, 1]])],
        );
        let j = algebra_radical(&upper).unwrap();
        assert_eq!(j, vec![m(f2, &[&[0, 1], &[0, 0]])]);
        let nil = m(f2, &[&[0, 1], &[0, 0]]);
        let alg = MatrixAlgebra::generated_by(f2, 2, &[nil.clone()]);
        assert_eq!(algebra_radical(&alg).unwrap(), vec![nil]);
    }

    #[test]
    fn radical_matches_oracle_on_generated_algebras() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2u32, 3, 4] {
            let field = Field::new(q).unwrap();
            for n in 2..=3 {
                for _ in 0..12 {
                    let gens: Vec<Matrix> = (0..rng.gen_range(1..=2))
                        .map(|_| {
                            let data = (0..n * n)
                                .map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(0..q) as u8 })
                                .collect();
                            Matrix::from_flat(field, n, n, data).unwrap()
                        })
                        .collect();
                    let alg = MatrixAlgebra::generated_by(field, n, &gens);
                    if alg.size_log2() > 14.0 {
                        continue;
                    }
                    let j = algebra_radical(&alg).unwrap();
                    assert_eq!(j.len(), brute_radical_dim(&alg), "{gens:?} over GF({q})");
                }
            }
        }
    }

    #[test]
    fn unit_group_examples() {
        let f2 = Field::gf(2);
        let scal = MatrixAlgebra::from_basis(f2, 2, vec![Matrix::identity(f2, 2)]);
        let u = unit_group(&scal, 0).unwrap();
        assert_eq!(u.order, 1);
        let diag = MatrixAlgebra::from_basis(
            f2,
            2,
            vec![m(f2, &[&[1, 0], &[0, 0]]), m(f2, &[&[0, 0], &[0, 1]])],
        );
        assert_eq!(unit_group(&diag, 0).unwrap().order, 1);
        let u = unit_group(&full(f2, 2), 0).unwrap();
        assert_eq!(u.order, 6);
        assert_eq!(closure_order(&u.generators, 2, f2), 6);
    }

    #[test]
    fn unit_group_orders_match_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2u32, 3, 4, 5] {
            let field = Field::new(q).unwrap();
            for n in 1..=3 {
                for _ in 0..10 {
                    let gens: Vec<Matrix> = (0..rng.gen_range(1..=2))
                        .map(|_| {
                            let data = (0..n * n).map(|_| rng.gen_range(0..q) as u8).collect();
                            Matrix::from_flat(field, n, n, data).unwrap()
                        })
                        .collect();
                    let alg = MatrixAlgebra::generated_by(field, n, &gens);
                    if alg.size_log2() > 16.0 {
                        continue;
                    }
                    let u = unit_group(&alg, 3).unwrap();
                    let exhaustive = brute_units(&alg);
                    assert_eq!(u.order as usize, exhaustive, "{gens:?} GF({q})");
                    assert_eq!(closure_order(&u.generators, n, field), exhaustive);
                }
            }
        }
        let f3 = Field::gf(3);
        let u = unit_group(&full(f3, 2), 0).unwrap();
        assert_eq!(u.order, 48);
        assert_eq!(closure_order(&u.generators, 2, f3), 48);
    }

    #[test]
    fn locality() {
        let f2 = Field::gf(2);
        assert!(!is_local(&full(f2, 2)).unwrap());
        let nil = m(f2, &[&[0, 1], &[0, 0]]);
        assert!(is_local(&MatrixAlgebra::generated_by(f2, 2, &[nil])).unwrap());
        let c = m(f2, &[&[0, 1], &[1, 1]]);
        assert!(is_local(&MatrixAlgebra::generated_by(f2, 2, &[c])).unwrap());
    }
}
