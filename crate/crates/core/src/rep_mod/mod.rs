//! Group representations over GF(q) viewed as modules: Hom-spaces, isomorphism,
//! decomposition into indecomposables, restriction and induction.

pub mod algebra;
pub mod decompose;

pub use algebra::{algebra_radical, is_local, unit_group, MatrixAlgebra, UnitGroup, Wedderburn};
pub use decompose::{decompose_module, decompose_representation, is_indecomposable, DecompositionResult};

use crate::error::{GpiError, Result};
use crate::gfq_linalg::matrix::vec_from_index;
use crate::gfq_linalg::{EchelonBasis, Field, Matrix};
use crate::group_core::{greedy_generators, subgroup_as_group, FiniteGroup, Subgroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// A module over a finitely generated algebra: one action matrix per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixModule {
    pub field: Field,
    pub dim: usize,
    pub gens: Vec<Matrix>,
}

impl MatrixModule {
    pub fn new(field: Field, dim: usize, gens: Vec<Matrix>) -> Result<MatrixModule> {
        for g in &gens {
            if g.rows != dim || g.cols != dim || g.field != field {
                return Err(GpiError::Dimension(format!(
                    "module generator is {}x{} over {:?}, expected {dim}x{dim} over {:?}",
                    g.rows, g.cols, g.field, field
                )));
            }
        }
        Ok(MatrixModule { field, dim, gens })
    }

    pub fn direct_sum(&self, other: &MatrixModule) -> MatrixModule {
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| Matrix::block_diag(self.field, &[a.clone(), b.clone()]))
            .collect();
        MatrixModule { field: self.field, dim: self.dim + other.dim, gens }
    }

    /// The module with actions c A c^{-1}.
    pub fn conjugate(&self, c: &Matrix) -> MatrixModule {
        let ci = c.inv();
        let gens = self.gens.iter().map(|a| c.mul(a).mul(&ci)).collect();
        MatrixModule { field: self.field, dim: self.dim, gens }
    }

    /// True iff C A_i = B_i C for every generator.
    pub fn intertwines(&self, other: &MatrixModule, c: &Matrix) -> bool {
        self.gens.iter().zip(&other.gens).all(|(a, b)| c.mul(a) == b.mul(c))
    }

    /// Cheap isomorphism invariant: ranks of A_i - cI.
    pub fn fingerprint(&self) -> Vec<usize> {
        let scalars: Vec<u8> = if self.field.size() <= 16 {
            self.field.elements().collect()
        } else {
            vec![0, 1]
        };
        let mut out = vec![self.dim];
        for a in &self.gens {
            for &c in &scalars {
                out.push(a.sub(&Matrix::scalar(self.field, self.dim, c)).rank());
            }
        }
        out
    }
}

/// Images of every group element; `gens` indexes a generating set of the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub field: Field,
    pub d: usize,
    pub images: Vec<Matrix>,
    pub gens: Vec<usize>,
}

impl Representation {
    pub fn new(group: &FiniteGroup, field: Field, images: Vec<Matrix>) -> Result<Representation> {
        if images.len() != group.order() {
            return Err(GpiError::Dimension(format!(
                "{} images for a group of order {}",
                images.len(),
                group.order()
            )));
        }
        let d = images.first().map_or(0, |m| m.rows);
        for m in &images {
            if m.rows != d || m.cols != d || m.field != field {
                return Err(GpiError::Dimension("images must all be d x d over one field".into()));
            }
        }
        let rep = Representation { field, d, images, gens: greedy_generators(group) };
        if let Err((g, h)) = check_representation(group, &rep) {
            return Err(GpiError::Invalid(format!("not a homomorphism at the pair ({g}, {h})")));
        }
        Ok(rep)
    }

    pub fn trivial(group: &FiniteGroup, field: Field, d: usize) -> Representation {
        Representation {
            field,
            d,
            images: vec![Matrix::identity(field, d); group.order()],
            gens: greedy_generators(group),
        }
    }

    /// Regular representation: g sends basis vector e_x to e_{gx}.
    pub fn regular(group: &FiniteGroup, field: Field) -> Representation {
        let n = group.order();
        let images = (0..n)
            .map(|g| {
                let mut m = Matrix::zeros(field, n, n);
                for x in 0..n {
                    m.set(group.mul(g, x), x, 1);
                }
                m
            })
            .collect();
        Representation { field, d: n, images, gens: greedy_generators(group) }
    }

    pub fn module(&self) -> MatrixModule {
        MatrixModule {
            field: self.field,
            dim: self.d,
            gens: self.gens.iter().map(|&g| self.images[g].clone()).collect(),
        }
    }

    /// q -> theta(beta^{-1}(q)) for an automorphism given by its images.
    pub fn pullback(&self, beta: &[usize]) -> Representation {
        let mut images = self.images.clone();
        for (q, &bq) in beta.iter().enumerate() {
            images[bq] = self.images[q].clone();
        }
        Representation { field: self.field, d: self.d, images, gens: self.gens.clone() }
    }

    /// q -> c theta(q) c^{-1}.
    pub fn conjugate(&self, c: &Matrix) -> Representation {
        let ci = c.inv();
        let images = self.images.iter().map(|a| c.mul(a).mul(&ci)).collect();
        Representation { field: self.field, d: self.d, images, gens: self.gens.clone() }
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| Matrix::block_diag(self.field, &[a.clone(), b.clone()]))
            .collect();
        Representation { field: self.field, d: self.d + other.d, images, gens: self.gens.clone() }
    }

    /// Extend a module on the generators to the whole group (assumes it is a representation).
    pub fn from_module(group: &FiniteGroup, m: &MatrixModule, gens: &[usize]) -> Result<Representation> {
        let n = group.order();
        let mut images: Vec<Option<Matrix>> = vec![None; n];
        images[0] = Some(Matrix::identity(m.field, m.dim));
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let y = group.mul(x, g);
                if images[y].is_none() {
                    images[y] = Some(images[x].as_ref().unwrap().mul(&m.gens[k]));
                    queue.push_back(y);
                }
            }
        }
        let images: Option<Vec<Matrix>> = images.into_iter().collect();
        let images = images.ok_or_else(|| GpiError::Invalid("generators do not generate the group".into()))?;
        let mut rep = Representation::new(group, m.field, images)?;
        rep.gens = gens.to_vec();
        Ok(rep)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.field.characteristic(),
            "q": self.field.size(),
            "d": self.d,
            "images": self.images.iter().map(|m| m.data.clone()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(group: &FiniteGroup, v: &Value) -> Result<Representation> {
        let get = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .ok_or_else(|| GpiError::Invalid(format!("representation JSON lacks integer field {k:?}")))
        };
        let q = get("q").or_else(|_| get("p"))?;
        let field = Field::new(q as u32)?;
        if let Ok(p) = get("p") {
            if p != field.characteristic() as u64 {
                return Err(GpiError::Invalid(format!("p = {p} does not match q = {q}")));
            }
        }
        let d = get("d")? as usize;
        let images = v
            .get("images")
            .and_then(Value::as_array)
            .ok_or_else(|| GpiError::Invalid("representation JSON lacks \"images\"".into()))?;
        let mut mats = Vec::with_capacity(images.len());
        for img in images {
            let flat: Option<Vec<u8>> = img
                .as_array()
                .map(|a| {
                    a.iter()
                        .flat_map(|x| match x {
                            Value::Array(row) => row.iter().map(|y| y.as_u64()).collect::<Vec<_>>(),
                            other => vec![other.as_u64()],
                        })
                        .map(|x| x.filter(|&x| x < 256).map(|x| x as u8))
                        .collect()
                })
                .flatten();
            let flat = flat.ok_or_else(|| GpiError::Invalid("image entries must be integers".into()))?;
            mats.push(Matrix::from_flat(field, d, d, flat)?);
        }
        Representation::new(group, field, mats)
    }
}

/// First pair (g, h) with theta(g) theta(h) != theta(gh), if any.
pub fn check_representation(group: &FiniteGroup, rep: &Representation) -> std::result::Result<(), (usize, usize)> {
    if rep.images.len() != group.order() || !rep.images.first().is_some_and(|m| m.is_identity()) {
        return Err((0, 0));
    }
    let n = group.order();
    for g in 0..n {
        for h in 0..n {
            if rep.images[g].mul(&rep.images[h]) != rep.images[group.mul(g, h)] {
                return Err((g, h));
            }
        }
    }
    Ok(())
}

/// Basis of {C : C A_i = B_i C}, C of shape dim(N) x dim(M).
pub fn hom_space(m: &MatrixModule, n: &MatrixModule) -> Result<Vec<Matrix>> {
    if m.field != n.field || m.gens.len() != n.gens.len() {
        return Err(GpiError::Invalid("hom_space needs modules over the same algebra".into()));
    }
    let f = m.field;
    let (dm, dn) = (m.dim, n.dim);
    let unknowns = dm * dn;
    if unknowns == 0 {
        return Ok(vec![]);
    }
    let mut eb = EchelonBasis::new(f, unknowns, false);
    for (a, b) in m.gens.iter().zip(&n.gens) {
        for r in 0..dn {
            for c in 0..dm {
                let mut row = vec![0u8; unknowns];
                for k in 0..dm {
                    let v = a.get(k, c);
                    if v != 0 {
                        row[r * dm + k] = f.add(row[r * dm + k], v);
                    }
                }
                for k in 0..dn {
                    let v = b.get(r, k);
                    if v != 0 {
                        row[k * dm + c] = f.sub(row[k * dm + c], v);
                    }
                }
                eb.insert(&row);
                if eb.dim() == unknowns {
                    return Ok(vec![]);
                }
            }
        }
    }
    Ok(eb
        .kernel()
        .into_iter()
        .map(|v| Matrix { field: f, rows: dn, cols: dm, data: v })
        .collect())
}

pub const EXHAUSTIVE_HOM_LIMIT: u64 = 1 << 16;

/// Invertible C with C A_i = B_i C, or `None` when the modules are not isomorphic.
pub fn module_isomorphism(m: &MatrixModule, n: &MatrixModule, seed: u64) -> Result<Option<Matrix>> {
    if m.field != n.field || m.gens.len() != n.gens.len() {
        return Err(GpiError::Invalid("module_isomorphism needs modules over the same algebra".into()));
    }
    if m.dim != n.dim {
        return Ok(None);
    }
    if m.dim == 0 {
        return Ok(Some(Matrix::zeros(m.field, 0, 0)));
    }
    if m.fingerprint() != n.fingerprint() {
        return Ok(None);
    }
    let hom = hom_space(m, n)?;
    if hom.is_empty() {
        return Ok(None);
    }
    let found = |c: Matrix| -> Result<Option<Matrix>> {
        if !m.intertwines(n, &c) {
            return Err(GpiError::Verification("intertwiner check failed".into()));
        }
        Ok(Some(c))
    };
    for b in &hom {
        if b.is_invertible() {
            return found(b.clone());
        }
    }
    let f = m.field;
    let combo = |coeffs: &[u8]| {
        let mut c = Matrix::zeros(f, n.dim, m.dim);
        for (k, b) in coeffs.iter().zip(&hom) {
            crate::gfq_linalg::matrix::axpy(f, &mut c.data, *k, &b.data);
        }
        c
    };
    let q = f.size() as u64;
    let space = q.checked_pow(hom.len() as u32);
    if let Some(total) = space.filter(|&t| t <= EXHAUSTIVE_HOM_LIMIT) {
        for idx in 1..total as usize {
            let c = combo(&vec_from_index(f, idx, hom.len()));
            if c.is_invertible() {
                return found(c);
            }
        }
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 * m.dim {
        let coeffs: Vec<u8> = (0..hom.len()).map(|_| rng.gen_range(0..q) as u8).collect();
        let c = combo(&coeffs);
        if c.is_invertible() {
            return found(c);
        }
    }
    match decompose::structural_isomorphism(m, n, seed)? {
        Some(c) => found(c),
        None => Ok(None),
    }
}

/// Representation of H (as its own Cayley table) obtained by restriction.
pub fn restrict_module(group: &FiniteGroup, rep: &Representation, h: &Subgroup) -> Result<(FiniteGroup, Representation)> {
    if !crate::group_core::is_subgroup(group, &h.elements) {
        return Err(GpiError::InvalidGroup("restriction target is not a subgroup".into()));
    }
    let (hg, emb) = subgroup_as_group(group, h);
    let images = emb.iter().map(|&x| rep.images[x].clone()).collect();
    let r = Representation::new(&hg, rep.field, images)?;
    Ok((hg, r))
}

/// Left coset representatives t_i of H in Q (least element of each coset, in increasing order).
pub fn left_transversal(group: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let n = group.order();
    let mut covered = vec![false; n];
    let mut reps = Vec::new();
    for t in 0..n {
        if covered[t] {
            continue;
        }
        reps.push(t);
        for &x in &h.elements {
            covered[group.mul(t, x)] = true;
        }
    }
    reps
}

/// Induce a representation of H (indexed like `subgroup_as_group(group, h)`) up to the group.
pub fn induce_module(group: &FiniteGroup, h: &Subgroup, rep: &Representation) -> Result<Representation> {
    if !crate::group_core::is_subgroup(group, &h.elements) {
        return Err(GpiError::InvalidGroup("induction source is not a subgroup".into()));
    }
    let (_, emb) = subgroup_as_group(group, h);
    let mut pos = vec![usize::MAX; group.order()];
    for (i, &x) in emb.iter().enumerate() {
        pos[x] = i;
    }
    if rep.images.len() != emb.len() {
        return Err(GpiError::Dimension("representation does not match the subgroup".into()));
    }
    let ts = left_transversal(group, h);
    let (k, d, f) = (ts.len(), rep.d, rep.field);
    let images = (0..group.order())
        .map(|g| {
            let mut m = Matrix::zeros(f, k * d, k * d);
            for (i, &ti) in ts.iter().enumerate() {
                for (j, &tj) in ts.iter().enumerate() {
                    let x = group.mul(group.mul(group.inv(ti), g), tj);
                    if pos[x] == usize::MAX {
                        continue;
                    }
                    let blk = &rep.images[pos[x]];
                    for r in 0..d {
                        for c in 0..d {
                            m.set(i * d + r, j * d + c, blk.get(r, c));
                        }
                    }
                }
            }
            m
        })
        .collect();
    Representation::new(group, f, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_core::{make_group, Family};

    fn z2() -> FiniteGroup {
        make_group(&Family::Cyclic(2)).unwrap()
    }

    #[test]
    fn hom_space_examples() {
        let g = z2();
        let f3 = Field::gf(3);
        let triv = Representation::trivial(&g, f3, 1);
        let sign = Representation::new(&g, f3, vec![Matrix::identity(f3, 1), Matrix::scalar(f3, 1, 2)]).unwrap();
        assert_eq!(hom_space(&triv.module(), &triv.module()).unwrap().len(), 1);
        assert!(hom_space(&triv.module(), &sign.module()).unwrap().is_empty());
        let reg = Representation::regular(&g, Field::gf(2));
        assert_eq!(hom_space(&reg.module(), &reg.module()).unwrap().len(), 2);
    }

    #[test]
    fn iso_examples() {
        let g = z2();
        let f2 = Field::gf(2);
        let reg = Representation::regular(&g, f2);
        let triv2 = Representation::trivial(&g, f2, 2);
        assert!(module_isomorphism(&reg.module(), &triv2.module(), 0).unwrap().is_none());
        let c = module_isomorphism(&reg.module(), &reg.module(), 0).unwrap().unwrap();
        assert!(c.is_invertible());
        let bad = vec![Matrix::identity(f2, 1), Matrix::zeros(f2, 1, 1)];
        assert!(Representation::new(&g, f2, bad).is_err());
    }

    #[test]
    fn induce_trivial_from_trivial_subgroup_is_regular() {
        let s3 = make_group(&Family::Symmetric(3)).unwrap();
        let f2 = Field::gf(2);
        let h = Subgroup::trivial();
        let (hg, _) = subgroup_as_group(&s3, &h);
        let ind = induce_module(&s3, &h, &Representation::trivial(&hg, f2, 1)).unwrap();
        assert_eq!(ind.d, 6);
        let reg = Representation::regular(&s3, f2);
        assert!(module_isomorphism(&ind.module(), &reg.module(), 1).unwrap().is_some());
    }

    #[test]
    fn json_round_trip() {
        let g = z2();
        let reg = Representation::regular(&g, Field::Gf4);
        let back = Representation::from_json(&g, &reg.to_json()).unwrap();
        assert_eq!(back.images, reg.images);
    }
}
