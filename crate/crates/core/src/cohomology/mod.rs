//! Low-degree cohomology of Q with coefficients in GF(p)^d, extension data, and class isomorphism.

mod cciso;
mod extension;

pub use cciso::{cciso, CcisoResult};
pub use extension::{extension_data, extension_from_data, ExtensionData};

use crate::error::{GpiError, Result};
use crate::gfq_linalg::matrix::{axpy, vec_add, vec_sub};
use crate::gfq_linalg::{EchelonBasis, Field, Matrix};
use crate::group_core::{greedy_generators, FiniteGroup};
use crate::rep_mod::Representation;
use serde_json::{json, Value};
use std::collections::VecDeque;

/// Default cap on the number of H^2 classes enumerated.
pub const DEFAULT_H2_BUDGET: u64 = 1_000_000;

/// A function Q x Q -> GF(p)^d stored densely; values[(a*n + b)*d + i].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocycle {
    pub field: Field,
    pub d: usize,
    pub n: usize,
    pub values: Vec<u8>,
}

/// u : Q -> GF(p)^d with f - g = b_u.
pub type CoboundaryWitness = Vec<Vec<u8>>;

impl Cocycle {
    pub fn zero(field: Field, n: usize, d: usize) -> Cocycle {
        Cocycle { field, d, n, values: vec![0; n * n * d] }
    }

    pub fn get(&self, a: usize, b: usize) -> &[u8] {
        let k = (a * self.n + b) * self.d;
        &self.values[k..k + self.d]
    }

    pub fn set(&mut self, a: usize, b: usize, v: &[u8]) {
        let k = (a * self.n + b) * self.d;
        self.values[k..k + self.d].copy_from_slice(v);
    }

    pub fn add(&self, other: &Cocycle) -> Cocycle {
        Cocycle { values: vec_add(self.field, &self.values, &other.values), ..self.clone() }
    }

    pub fn sub(&self, other: &Cocycle) -> Cocycle {
        Cocycle { values: vec_sub(self.field, &self.values, &other.values), ..self.clone() }
    }

    pub fn scale(&self, c: u8) -> Cocycle {
        Cocycle { values: self.values.iter().map(|&x| self.field.mul(x, c)).collect(), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.n).all(|q| self.get(0, q).iter().all(|&x| x == 0) && self.get(q, 0).iter().all(|&x| x == 0))
    }

    /// First triple violating f(p,q) + f(pq,r) = theta_p f(q,r) + f(p,qr).
    pub fn cocycle_violation(&self, group: &FiniteGroup, theta: &Representation) -> Option<(usize, usize, usize)> {
        let f = self.field;
        let n = self.n;
        for p in 0..n {
            let tp = &theta.images[p];
            for q in 0..n {
                let pq = group.mul(p, q);
                let left0 = self.get(p, q);
                for r in 0..n {
                    let left = vec_add(f, left0, self.get(pq, r));
                    let right = vec_add(f, &tp.mul_vec(self.get(q, r)), self.get(p, group.mul(q, r)));
                    if left != right {
                        return Some((p, q, r));
                    }
                }
            }
        }
        None
    }

    pub fn check(&self, group: &FiniteGroup, theta: &Representation) -> Result<()> {
        if self.n != group.order() || self.d != theta.d || self.field != theta.field {
            return Err(GpiError::Dimension("cocycle shape does not match the group and action".into()));
        }
        if let Some((p, q, r)) = self.cocycle_violation(group, theta) {
            return Err(GpiError::Invalid(format!("cocycle identity fails at ({p}, {q}, {r})")));
        }
        Ok(())
    }

    /// b_u(q, q') = u(q) + theta_q u(q') - u(qq').
    pub fn coboundary(group: &FiniteGroup, theta: &Representation, u: &[Vec<u8>]) -> Cocycle {
        let f = theta.field;
        let n = group.order();
        let mut out = Cocycle::zero(f, n, theta.d);
        for a in 0..n {
            for b in 0..n {
                let v = vec_sub(f, &vec_add(f, &u[a], &theta.images[a].mul_vec(&u[b])), &u[group.mul(a, b)]);
                out.set(a, b, &v);
            }
        }
        out
    }

    /// f^{(alpha,beta)}(q,q') = alpha f(beta^{-1} q, beta^{-1} q').
    pub fn act(&self, alpha: &Matrix, beta: &[usize]) -> Cocycle {
        let mut out = Cocycle::zero(self.field, self.n, self.d);
        for a in 0..self.n {
            for b in 0..self.n {
                out.set(beta[a], beta[b], &alpha.mul_vec(self.get(a, b)));
            }
        }
        out
    }

    /// Subtract b_u with u constant f(1,1); returns the normalized cocycle and u.
    pub fn normalize(&self, group: &FiniteGroup, theta: &Representation) -> (Cocycle, CoboundaryWitness) {
        let c = self.get(0, 0).to_vec();
        let u = vec![c; self.n];
        (self.sub(&Cocycle::coboundary(group, theta, &u)), u)
    }

    pub fn to_json(&self) -> Value {
        let values: Vec<Vec<Vec<u8>>> = (0..self.n)
            .map(|a| (0..self.n).map(|b| self.get(a, b).to_vec()).collect())
            .collect();
        json!({ "p": self.field.characteristic(), "d": self.d, "n": self.n, "values": values })
    }

    pub fn from_json(v: &Value) -> Result<Cocycle> {
        let get = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .ok_or_else(|| GpiError::Invalid(format!("cocycle JSON lacks integer field {k:?}")))
        };
        let p = get("p")?;
        if p > 251 || !crate::gfq_linalg::field::is_prime(p) {
            return Err(GpiError::UnsupportedField(p as u32));
        }
        let field = Field::gf(p as u8);
        let (d, n) = (get("d")? as usize, get("n")? as usize);
        let parsed: Option<Vec<Vec<Vec<u64>>>> = serde_json::from_value(v.get("values").cloned().unwrap_or(Value::Null)).ok();
        let vals = parsed.ok_or_else(|| GpiError::Invalid("cocycle values must be an n x n x d integer array".into()))?;
        let mut out = Cocycle::zero(field, n, d);
        if vals.len() != n {
            return Err(GpiError::Dimension("cocycle values have the wrong number of rows".into()));
        }
        for (a, row) in vals.iter().enumerate() {
            if row.len() != n {
                return Err(GpiError::Dimension("cocycle row has the wrong length".into()));
            }
            for (b, vec) in row.iter().enumerate() {
                if vec.len() != d || vec.iter().any(|&x| x >= p) {
                    return Err(GpiError::Invalid(format!("bad cocycle value at ({a}, {b})")));
                }
                out.set(a, b, &vec.iter().map(|&x| x as u8).collect::<Vec<_>>());
            }
        }
        Ok(out)
    }
}

/// Spanning tree of the Cayley graph for right multiplication by generators.
struct CayleyTree {
    gens: Vec<usize>,
    /// BFS order of elements, starting at the identity.
    order: Vec<usize>,
    /// parent[q] = (q', k) with q = q' * gens[k]
    parent: Vec<(usize, usize)>,
}

impl CayleyTree {
    fn new(group: &FiniteGroup, gens: Vec<usize>) -> CayleyTree {
        let n = group.order();
        let mut parent = vec![(usize::MAX, usize::MAX); n];
        parent[0] = (0, usize::MAX);
        let mut order = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let y = group.mul(x, g);
                if parent[y].0 == usize::MAX {
                    parent[y] = (x, k);
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
        CayleyTree { gens, order, parent }
    }

    fn is_tree_edge(&self, group: &FiniteGroup, x: usize, k: usize) -> bool {
        let y = group.mul(x, self.gens[k]);
        y != 0 && self.parent[y] == (x, k)
    }
}

/// Linear expression table: row-major d x m matrices over the unknowns.
type Expr = Vec<u8>;

fn expr_axpy(f: Field, dst: &mut Expr, c: u8, src: &Expr) {
    axpy(f, dst, c, src);
}

/// Z^2, B^2 and a complement, with cocycles encoded by their values f(r, x), r != 1, x a generator.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    pub field: Field,
    pub n: usize,
    pub d: usize,
    pub gens: Vec<usize>,
    pub z2_basis: Vec<Cocycle>,
    pub b2_basis: Vec<Cocycle>,
    pub h2_reps: Vec<Cocycle>,
    /// For every independent B^2 vector inserted, the (q, i) with b_{e_{q,i}}.
    b2_sources: Vec<(usize, usize)>,
    classes: EchelonBasis,
}

impl CohomologySpace {
    pub fn new(group: &FiniteGroup, theta: &Representation) -> Result<CohomologySpace> {
        let n = group.order();
        let d = theta.d;
        let f = theta.field;
        if theta.images.len() != n {
            return Err(GpiError::Dimension("action does not match the group".into()));
        }
        let tree = CayleyTree::new(group, greedy_generators(group));
        let xs = tree.gens.len();
        let var = |r: usize, k: usize, i: usize| ((r - 1) * xs + k) * d + i;
        let m = n.saturating_sub(1) * xs * d;
        // u_expr(r, k): d expressions for f(r, x_k)
        let u_expr = |r: usize, k: usize| -> Vec<Expr> {
            (0..d)
                .map(|i| {
                    let mut e = vec![0u8; m];
                    if r != 0 {
                        e[var(r, k, i)] = 1;
                    }
                    e
                })
                .collect()
        };
        let apply = |mat: &Matrix, v: &[Expr]| -> Vec<Expr> {
            (0..d)
                .map(|i| {
                    let mut e = vec![0u8; m];
                    for (j, vj) in v.iter().enumerate() {
                        let c = mat.get(i, j);
                        if c != 0 {
                            expr_axpy(f, &mut e, c, vj);
                        }
                    }
                    e
                })
                .collect()
        };
        let one = f.neg(1);
        let mut constraints = EchelonBasis::new(f, m.max(1), false);
        for p in 1..n {
            let tp = &theta.images[p];
            let mut table: Vec<Option<Vec<Expr>>> = vec![None; n];
            table[0] = Some(vec![vec![0u8; m]; d]);
            let step = |table: &Vec<Option<Vec<Expr>>>, q: usize, k: usize| -> Vec<Expr> {
                let base = table[q].as_ref().unwrap();
                let pq = group.mul(p, q);
                let mut out = base.clone();
                for (o, e) in out.iter_mut().zip(u_expr(pq, k)) {
                    expr_axpy(f, o, 1, &e);
                }
                for (o, e) in out.iter_mut().zip(apply(tp, &u_expr(q, k))) {
                    expr_axpy(f, o, one, &e);
                }
                out
            };
            for &q in &tree.order[1..] {
                let (qp, k) = tree.parent[q];
                table[q] = Some(step(&table, qp, k));
            }
            for &q in &tree.order {
                for k in 0..xs {
                    if tree.is_tree_edge(group, q, k) {
                        continue;
                    }
                    let y = group.mul(q, tree.gens[k]);
                    let via = step(&table, q, k);
                    for (a, b) in via.iter().zip(table[y].as_ref().unwrap()) {
                        let diff = vec_sub(f, a, b);
                        if diff.iter().any(|&x| x != 0) {
                            constraints.insert(&diff);
                        }
                    }
                }
            }
        }
        let solutions = if m == 0 { vec![] } else { constraints.kernel() };
        let expand = |sol: &[u8]| -> Cocycle {
            let mut c = Cocycle::zero(f, n, d);
            for p in 1..n {
                let tp = &theta.images[p];
                let uval = |r: usize, k: usize| -> Vec<u8> {
                    if r == 0 {
                        vec![0; d]
                    } else {
                        (0..d).map(|i| sol[var(r, k, i)]).collect()
                    }
                };
                for &q in &tree.order[1..] {
                    let (qp, k) = tree.parent[q];
                    let v = vec_sub(
                        f,
                        &vec_add(f, c.get(p, qp), &uval(group.mul(p, qp), k)),
                        &tp.mul_vec(&uval(qp, k)),
                    );
                    c.set(p, q, &v);
                }
            }
            c
        };
        let z2_basis: Vec<Cocycle> = solutions.iter().map(|s| expand(s)).collect();
        let space = CohomologySpace {
            field: f,
            n,
            d,
            gens: tree.gens.clone(),
            z2_basis,
            b2_basis: vec![],
            h2_reps: vec![],
            b2_sources: vec![],
            classes: EchelonBasis::new(f, m.max(1), true),
        };
        let mut space = space;
        for z in &space.z2_basis {
            if let Some((p, q, r)) = z.cocycle_violation(group, theta) {
                return Err(GpiError::Verification(format!("Z^2 basis element fails at ({p}, {q}, {r})")));
            }
        }
        for q in 1..n {
            for i in 0..d {
                let mut u = vec![vec![0u8; d]; n];
                u[q][i] = 1;
                let b = Cocycle::coboundary(group, theta, &u);
                let coords = space.encode(&b);
                if space.classes.insert(&coords) {
                    space.b2_basis.push(b);
                    space.b2_sources.push((q, i));
                }
            }
        }
        let zs = space.z2_basis.clone();
        for z in zs {
            let coords = space.encode(&z);
            if space.classes.insert(&coords) {
                space.h2_reps.push(z);
            }
        }
        if space.b2_basis.len() + space.h2_reps.len() != space.z2_basis.len() {
            return Err(GpiError::Verification("B^2 is not contained in Z^2".into()));
        }
        Ok(space)
    }

    fn encode(&self, c: &Cocycle) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.n.saturating_sub(1) * self.gens.len() * self.d);
        for r in 1..self.n {
            for &x in &self.gens {
                out.extend_from_slice(c.get(r, x));
            }
        }
        if out.is_empty() {
            out.push(0);
        }
        out
    }

    pub fn dim_z2(&self) -> usize {
        self.z2_basis.len()
    }

    pub fn dim_b2(&self) -> usize {
        self.b2_basis.len()
    }

    pub fn dim_h2(&self) -> usize {
        self.h2_reps.len()
    }

    /// Full coordinates (B^2 part then H^2 part) of a normalized cocycle.
    fn coords(&self, c: &Cocycle) -> Result<Vec<u8>> {
        if !c.is_normalized() {
            return Err(GpiError::Invalid("cocycle is not normalized".into()));
        }
        self.classes
            .coords(&self.encode(c))
            .ok_or_else(|| GpiError::Invalid("not a cocycle for this action".into()))
    }

    /// Coordinates of the class of c on the H^2 representatives.
    pub fn class_coords(&self, c: &Cocycle) -> Result<Vec<u8>> {
        Ok(self.coords(c)?[self.b2_basis.len()..].to_vec())
    }

    pub fn class_rep(&self, coords: &[u8]) -> Cocycle {
        let mut out = Cocycle::zero(self.field, self.n, self.d);
        for (c, r) in coords.iter().zip(&self.h2_reps) {
            axpy(self.field, &mut out.values, *c, &r.values);
        }
        out
    }

    /// u with c = b_u, if c is a coboundary.
    pub fn coboundary_witness(&self, c: &Cocycle) -> Result<Option<CoboundaryWitness>> {
        let coords = self.coords(c)?;
        let k = self.b2_basis.len();
        if coords[k..].iter().any(|&x| x != 0) {
            return Ok(None);
        }
        let mut u = vec![vec![0u8; self.d]; self.n];
        for (&(q, i), &a) in self.b2_sources.iter().zip(&coords[..k]) {
            u[q][i] = self.field.add(u[q][i], a);
        }
        Ok(Some(u))
    }
}

/// Witness u with f - g = b_u, or `None` for distinct classes.
pub fn is_cohomologous(
    group: &FiniteGroup,
    theta: &Representation,
    f: &Cocycle,
    g: &Cocycle,
) -> Result<Option<CoboundaryWitness>> {
    let space = CohomologySpace::new(group, theta)?;
    is_cohomologous_in(&space, group, theta, f, g)
}

pub fn is_cohomologous_in(
    space: &CohomologySpace,
    group: &FiniteGroup,
    theta: &Representation,
    f: &Cocycle,
    g: &Cocycle,
) -> Result<Option<CoboundaryWitness>> {
    f.check(group, theta)?;
    g.check(group, theta)?;
    let h = f.sub(g);
    let Some(u) = space.coboundary_witness(&h)? else { return Ok(None) };
    if Cocycle::coboundary(group, theta, &u) != h {
        return Err(GpiError::Verification("coboundary witness does not reproduce f - g".into()));
    }
    Ok(Some(u))
}

/// Fixed points M^Q.
pub fn h0(theta: &Representation) -> Vec<Vec<u8>> {
    let f = theta.field;
    let d = theta.d;
    let mut rows = Vec::new();
    for &g in &theta.gens {
        let a = theta.images[g].sub(&Matrix::identity(f, d));
        for r in 0..d {
            rows.push(a.row(r).to_vec());
        }
    }
    if rows.is_empty() {
        return (0..d).map(|i| (0..d).map(|j| (i == j) as u8).collect()).collect();
    }
    Matrix::from_rows(f, &rows).nullspace()
}

/// Crossed homomorphisms and principal ones.
#[derive(Clone, Debug)]
pub struct FirstCohomology {
    /// Each crossed homomorphism as its list of values over Q.
    pub z1_basis: Vec<Vec<Vec<u8>>>,
    pub b1_basis: Vec<Vec<Vec<u8>>>,
    pub dim_h1: usize,
}

pub fn h1(group: &FiniteGroup, theta: &Representation) -> Result<FirstCohomology> {
    let n = group.order();
    let f = theta.field;
    let d = theta.d;
    let tree = CayleyTree::new(group, greedy_generators(group));
    let xs = tree.gens.len();
    let m = xs * d;
    // delta(q) as d expressions in the unknowns delta(x_k)_i
    let mut table: Vec<Vec<Expr>> = vec![vec![vec![0u8; m.max(1)]; d]; n];
    let step = |table: &Vec<Vec<Expr>>, q: usize, k: usize| -> Vec<Expr> {
        let mut out = table[q].clone();
        let tq = &theta.images[q];
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..d {
                let c = tq.get(i, j);
                if c != 0 {
                    o[k * d + j] = f.add(o[k * d + j], c);
                }
            }
        }
        out
    };
    for &q in &tree.order[1..] {
        let (qp, k) = tree.parent[q];
        table[q] = step(&table, qp, k);
    }
    let mut cons = EchelonBasis::new(f, m.max(1), false);
    for &q in &tree.order {
        for k in 0..xs {
            if tree.is_tree_edge(group, q, k) {
                continue;
            }
            let y = group.mul(q, tree.gens[k]);
            let via = step(&table, q, k);
            for (a, b) in via.iter().zip(&table[y]) {
                cons.insert(&vec_sub(f, a, b));
            }
        }
    }
    let sols = if m == 0 { vec![] } else { cons.kernel() };
    let eval = |sol: &[u8]| -> Vec<Vec<u8>> {
        (0..n)
            .map(|q| {
                (0..d)
                    .map(|i| table[q][i].iter().zip(sol).fold(0u8, |s, (&a, &b)| f.add(s, f.mul(a, b))))
                    .collect()
            })
            .collect()
    };
    let z1_basis: Vec<Vec<Vec<u8>>> = sols.iter().map(|s| eval(s)).collect();
    for z in &z1_basis {
        for a in 0..n {
            for b in 0..n {
                let rhs = vec_add(f, &z[a], &theta.images[a].mul_vec(&z[b]));
                if z[group.mul(a, b)] != rhs {
                    return Err(GpiError::Verification("Z^1 basis element is not a crossed homomorphism".into()));
                }
            }
        }
    }
    let mut eb = EchelonBasis::new(f, (n * d).max(1), false);
    let mut b1_basis = Vec::new();
    for i in 0..d {
        let mut mvec = vec![0u8; d];
        mvec[i] = 1;
        let b: Vec<Vec<u8>> = (0..n).map(|q| vec_sub(f, &theta.images[q].mul_vec(&mvec), &mvec)).collect();
        let flat: Vec<u8> = b.concat();
        if !flat.is_empty() && eb.insert(&flat) {
            b1_basis.push(b);
        }
    }
    let dim_h1 = z1_basis.len() - b1_basis.len();
    Ok(FirstCohomology { z1_basis, b1_basis, dim_h1 })
}

/// dim H^j(Q, M) for j in {0, 1, 2}.
pub fn cohomology_dim(group: &FiniteGroup, theta: &Representation, j: u32) -> Result<usize> {
    match j {
        0 => Ok(h0(theta).len()),
        1 => Ok(h1(group, theta)?.dim_h1),
        2 => Ok(CohomologySpace::new(group, theta)?.dim_h2()),
        _ => Err(GpiError::Invalid(format!("cohomology degree {j} is not supported"))),
    }
}
