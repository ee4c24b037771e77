#![allow(dead_code)]

use gpi_core::cohomology::{Cocycle, CohomologySpace};
use gpi_core::gfq_linalg::{vec_from_index, Field, Matrix};
use gpi_core::group_core::{make_group, Family, FiniteGroup};
use gpi_core::rep_mod::Representation;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;

pub fn mk(f: Family) -> FiniteGroup {
    make_group(&f).unwrap()
}

pub fn product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup {
    mk(Family::Product(Box::new(a), Box::new(b)))
}

pub fn cyc(n: usize) -> FiniteGroup {
    mk(Family::Cyclic(n))
}

/// Named groups of order <= 64 from the family constructors and direct products.
pub fn named_groups() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    for n in [2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16, 18, 24, 27, 32, 36, 64] {
        out.push((format!("Z{n}"), cyc(n)));
    }
    for (p, d) in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (5, 2), (7, 2)] {
        out.push((format!("Z{p}^{d}"), mk(Family::ElemAb { p, d })));
    }
    for m in 1..=5 {
        out.push((format!("D{}", 1 << (m + 1)), mk(Family::Dihedral(m))));
    }
    for m in 3..=5 {
        out.push((format!("SD{}", 1 << (m + 1)), mk(Family::Semidihedral(m))));
    }
    for m in 2..=5 {
        out.push((format!("Q{}", 1 << (m + 1)), mk(Family::Quaternion(m))));
    }
    for n in [3, 5, 6, 7, 9, 10, 12, 15, 18] {
        out.push((format!("Dih{n}"), mk(Family::Dih(n))));
    }
    out.push(("S3".into(), mk(Family::Symmetric(3))));
    out.push(("S4".into(), mk(Family::Symmetric(4))));
    out.push(("A4".into(), mk(Family::Alternating(4))));
    let s3 = || mk(Family::Symmetric(3));
    let d8 = || mk(Family::Dihedral(2));
    let q8 = || mk(Family::Quaternion(2));
    out.push(("Z2xS3".into(), product(cyc(2), s3())));
    out.push(("Z3xS3".into(), product(cyc(3), s3())));
    out.push(("S3xS3".into(), product(s3(), s3())));
    out.push(("Z2xD8".into(), product(cyc(2), d8())));
    out.push(("Z2xQ8".into(), product(cyc(2), q8())));
    out.push(("Z4xZ2".into(), product(cyc(4), cyc(2))));
    out.push(("Z4xZ4".into(), product(cyc(4), cyc(4))));
    out.push(("Z8xZ2".into(), product(cyc(8), cyc(2))));
    out.push(("Z4xZ2^2".into(), product(cyc(4), mk(Family::ElemAb { p: 2, d: 2 }))));
    out.push(("Z2xA4".into(), product(cyc(2), mk(Family::Alternating(4)))));
    out.push(("Z3xQ8".into(), product(cyc(3), q8())));
    out.push(("Z3xD8".into(), product(cyc(3), d8())));
    out.push(("Z4xS3".into(), product(cyc(4), s3())));
    out.push(("Z2^2xS3".into(), product(mk(Family::ElemAb { p: 2, d: 2 }), s3())));
    out.push(("D8xZ4".into(), product(d8(), cyc(4))));
    out.push(("Q8xZ4".into(), product(q8(), cyc(4))));
    out.push(("D8xD8".into(), product(d8(), d8())));
    out.push(("Q8xZ2^2".into(), product(q8(), mk(Family::ElemAb { p: 2, d: 2 }))));
    out.push(("Z3xZ3xZ2".into(), product(mk(Family::ElemAb { p: 3, d: 2 }), cyc(2))));
    out
}

pub fn random_relabel(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> FiniteGroup {
    let mut rest: Vec<usize> = (1..g.order()).collect();
    rest.shuffle(rng);
    let perm: Vec<usize> = std::iter::once(0).chain(rest).collect();
    g.relabel(&perm)
}

/// Extend generator images to a homomorphism by a Cayley-graph sweep.
pub fn hom_from_gen_images(q: &FiniteGroup, gens: &[usize], imgs: &[Matrix]) -> Option<Vec<Matrix>> {
    let field = imgs.first()?.field;
    let d = imgs[0].rows;
    let mut out: Vec<Option<Matrix>> = vec![None; q.order()];
    out[0] = Some(Matrix::identity(field, d));
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let mx = out[x].clone().unwrap();
        for (g, mg) in gens.iter().zip(imgs) {
            let y = q.mul(x, *g);
            let my = mx.mul(mg);
            match &out[y] {
                None => {
                    out[y] = Some(my);
                    queue.push_back(y);
                }
                Some(m) if *m != my => return None,
                _ => {}
            }
        }
    }
    out.into_iter().collect()
}

pub fn gl(field: Field, k: usize) -> Vec<Matrix> {
    let q = field.size() as usize;
    (0..q.pow((k * k) as u32))
        .map(|i| Matrix::from_flat(field, k, k, vec_from_index(field, i, k * k)).unwrap())
        .filter(|m| m.is_invertible())
        .collect()
}

/// All homomorphisms Q -> GL(k, field), k <= 2.
pub fn small_reps(q: &FiniteGroup, field: Field, k: usize) -> Vec<Representation> {
    let gens = gpi_core::group_core::greedy_generators(q);
    let pool = gl(field, k);
    let mut out = Vec::new();
    let mut idx = vec![0usize; gens.len()];
    loop {
        let imgs: Vec<Matrix> = idx.iter().map(|&i| pool[i].clone()).collect();
        if let Some(images) = hom_from_gen_images(q, &gens, &imgs) {
            out.push(Representation::new(q, field, images).unwrap());
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < pool.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub fn random_invertible(field: Field, d: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let data = (0..d * d).map(|_| rng.gen_range(0..field.size()) as u8).collect();
        let m = Matrix::from_flat(field, d, d, data).unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

/// Conjugated direct sum of random blocks of dimension <= 2.
pub fn random_theta(q: &FiniteGroup, field: Field, d: usize, rng: &mut ChaCha8Rng) -> Representation {
    let ones = small_reps(q, field, 1);
    let twos = if d >= 2 { small_reps(q, field, 2) } else { vec![] };
    let mut left = d;
    let mut acc: Option<Representation> = None;
    while left > 0 {
        let block = if left >= 2 && !twos.is_empty() && rng.gen_bool(0.5) {
            left -= 2;
            twos.choose(rng).unwrap().clone()
        } else {
            left -= 1;
            ones.choose(rng).unwrap().clone()
        };
        acc = Some(match acc {
            None => block,
            Some(a) => a.direct_sum(&block),
        });
    }
    acc.unwrap().conjugate(&random_invertible(field, d, rng))
}

pub fn random_cocycle(q: &FiniteGroup, theta: &Representation, rng: &mut ChaCha8Rng) -> Cocycle {
    let space = CohomologySpace::new(q, theta).unwrap();
    let field = theta.field;
    let mut f = Cocycle::zero(field, q.order(), theta.d);
    for z in &space.z2_basis {
        let c = rng.gen_range(0..field.size()) as u8;
        f = f.add(&z.scale(c));
    }
    f
}

pub struct RandomExtension {
    pub label: String,
    pub q: FiniteGroup,
    pub theta: Representation,
    pub f: Cocycle,
    pub g: FiniteGroup,
}

pub fn quotient_pool() -> Vec<(String, FiniteGroup)> {
    vec![
        ("Z2".into(), cyc(2)),
        ("Z4".into(), cyc(4)),
        ("S3".into(), mk(Family::Symmetric(3))),
        ("D8".into(), mk(Family::Dihedral(2))),
        ("Q8".into(), mk(Family::Quaternion(2))),
        ("D16".into(), mk(Family::Dihedral(3))),
        ("SD16".into(), mk(Family::Semidihedral(3))),
        ("Q16".into(), mk(Family::Quaternion(3))),
    ]
}

/// Every (p, d) with d <= 3 and |Q| p^d <= 64.
pub fn layer_choices(qn: usize) -> Vec<(u8, usize)> {
    let mut out = Vec::new();
    for p in [2u8, 3, 5, 7] {
        for d in 1..=3usize {
            if qn * (p as usize).pow(d as u32) <= 64 {
                out.push((p, d));
            }
        }
    }
    out
}

pub fn random_extension(qname: &str, q: &FiniteGroup, p: u8, d: usize, rng: &mut ChaCha8Rng) -> RandomExtension {
    let field = Field::gf(p);
    let theta = random_theta(q, field, d, rng);
    let f = random_cocycle(q, &theta, rng);
    let g = gpi_core::cohomology::extension_from_data(q, &theta, &f).unwrap();
    RandomExtension { label: format!("{qname}.Z{p}^{d}"), q: q.clone(), theta, f, g }
}

pub struct IndecomposableCensus {
    pub per_dim: Vec<usize>,
    /// Largest dimension whose enumeration fit the budget.
    pub max_dim: usize,
    pub modules: Vec<Representation>,
}

/// Indecomposable F_q Q-modules up to isomorphism, by exhaustive search over generator images
/// while q^(d^2 #gens) <= budget.
pub fn brute_indecomposables(q: &FiniteGroup, field: Field, budget: u64) -> IndecomposableCensus {
    use gpi_core::rep_mod::{is_indecomposable, module_isomorphism, MatrixModule};
    let gens = gpi_core::group_core::greedy_generators(q);
    let mut per_dim = Vec::new();
    let mut modules = Vec::new();
    let mut max_dim = 0;
    if gens.is_empty() {
        // the trivial group: only the 1-dimensional trivial module is indecomposable
        let triv = Representation::trivial(q, field, 1);
        return IndecomposableCensus { per_dim: vec![1], max_dim: 1, modules: vec![triv] };
    }
    for d in 1..=q.order() {
        let cost = (field.size() as u64).checked_pow((d * d * gens.len()) as u32);
        if cost.map_or(true, |c| c > budget) {
            break;
        }
        max_dim = d;
        let pool = gl(field, d);
        let mut reps: Vec<(MatrixModule, Representation)> = Vec::new();
        let mut idx = vec![0usize; gens.len()];
        'outer: loop {
            let imgs: Vec<Matrix> = idx.iter().map(|&i| pool[i].clone()).collect();
            if let Some(images) = hom_from_gen_images(q, &gens, &imgs) {
                let rep = Representation::new(q, field, images).unwrap();
                let m = MatrixModule { field, dim: d, gens: imgs };
                let fp = m.fingerprint();
                let seen = reps
                    .iter()
                    .any(|(r, _)| r.fingerprint() == fp && module_isomorphism(r, &m, 0).unwrap().is_some());
                if !seen {
                    reps.push((m, rep));
                }
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break 'outer;
                }
                idx[k] += 1;
                if idx[k] < pool.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
        let ind: Vec<Representation> =
            reps.into_iter().filter(|(m, _)| is_indecomposable(m).unwrap()).map(|(_, r)| r).collect();
        per_dim.push(ind.len());
        modules.extend(ind);
    }
    IndecomposableCensus { per_dim, max_dim, modules }
}

/// |{B : cB = Bc}| summed over c in the centralizer of the nilpotent Jordan block J,
/// divided by its order: the number of conjugacy classes of pairs (J, B) (Burnside).
pub fn wild_orbit_count(p: u8, d: usize) -> u64 {
    let field = Field::gf(p);
    let mut j = Matrix::zeros(field, d, d);
    for r in 0..d - 1 {
        j.set(r, r + 1, 1);
    }
    // centralizer of J = invertible polynomials in J
    let mut units = Vec::new();
    for idx in 0..(p as usize).pow(d as u32) {
        let c = vec_from_index(field, idx, d);
        if c[0] == 0 {
            continue;
        }
        let mut m = Matrix::zeros(field, d, d);
        let mut pw = Matrix::identity(field, d);
        for &ci in &c {
            m = m.add(&pw.scale(ci));
            pw = pw.mul(&j);
        }
        units.push(m);
    }
    let mut fixed = 0u64;
    for c in &units {
        // dim of {B : cB - Bc = 0} as a linear map on d x d matrices
        let mut rows = Vec::new();
        for k in 0..d * d {
            let mut e = Matrix::zeros(field, d, d);
            e.set(k / d, k % d, 1);
            rows.push(c.mul(&e).sub(&e.mul(c)).data.clone());
        }
        let lin = Matrix::from_rows(field, &rows);
        fixed += (p as u64).pow((d * d - lin.rank()) as u32);
    }
    fixed / units.len() as u64
}
