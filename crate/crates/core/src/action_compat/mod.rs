//! Pairs (alpha, beta) in GL(d,p) x Aut(Q) acting on representations, and the action
//! compatibility coset {(alpha, beta) : theta^(alpha,beta) = eta}.

use crate::error::{GpiError, Result};
use crate::gfq_linalg::{vec_from_index, vec_index, Field, Matrix};
use crate::group_core::FiniteGroup;
use crate::perm_group::{setwise_transporter, Perm, PermGroupBSGS, DEFAULT_TRANSPORTER_NODES};
use crate::rep_mod::decompose::indecomposable_iso;
use crate::rep_mod::{decompose_module, hom_space, module_isomorphism, unit_group, MatrixAlgebra, MatrixModule, Representation};
use std::collections::HashMap;

pub const DEFAULT_CLOSURE_BUDGET: usize = 10_000;

/// (alpha, beta) acting by theta^(alpha,beta)(q) = alpha theta(beta^{-1} q) alpha^{-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pair {
    pub alpha: Matrix,
    pub beta: Vec<usize>,
}

impl Pair {
    pub fn identity(field: Field, d: usize, n: usize) -> Pair {
        Pair { alpha: Matrix::identity(field, d), beta: (0..n).collect() }
    }

    /// Act by self first, then by other.
    pub fn then(&self, other: &Pair) -> Pair {
        Pair {
            alpha: other.alpha.mul(&self.alpha),
            beta: self.beta.iter().map(|&x| other.beta[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Pair {
        let mut beta = vec![0; self.beta.len()];
        for (x, &y) in self.beta.iter().enumerate() {
            beta[y] = x;
        }
        Pair { alpha: self.alpha.inv(), beta }
    }

    pub fn act_on(&self, theta: &Representation) -> Representation {
        theta.pullback(&self.beta).conjugate(&self.alpha)
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.is_identity() && self.beta.iter().enumerate().all(|(i, &x)| i == x)
    }
}

/// Faithful permutation encoding of pairs on GF(p)^d (by vector index) followed by Q.
#[derive(Clone, Debug)]
pub struct PairCodec {
    pub field: Field,
    pub d: usize,
    pub n: usize,
    pd: usize,
    vecs: Vec<Vec<u8>>,
}

impl PairCodec {
    pub fn new(field: Field, d: usize, n: usize) -> Result<PairCodec> {
        let pd = (field.size() as usize)
            .checked_pow(d as u32)
            .filter(|&x| x <= 1 << 16)
            .ok_or_else(|| GpiError::Budget(format!("module GF({})^{d} too large to permute", field.size())))?;
        let vecs = (0..pd).map(|i| vec_from_index(field, i, d)).collect();
        Ok(PairCodec { field, d, n, pd, vecs })
    }

    pub fn degree(&self) -> usize {
        self.pd + self.n
    }

    pub fn to_perm(&self, pair: &Pair) -> Perm {
        let mut img: Vec<usize> = self.vecs.iter().map(|v| vec_index(self.field, &pair.alpha.mul_vec(v))).collect();
        img.extend(pair.beta.iter().map(|&b| b + self.pd));
        Perm(img.into_iter().map(|x| x as u32).collect())
    }

    pub fn from_perm(&self, perm: &Perm) -> Pair {
        let cols: Vec<Vec<u8>> = (0..self.d)
            .map(|i| {
                let mut e = vec![0u8; self.d];
                e[i] = 1;
                self.vecs[perm.apply(vec_index(self.field, &e))].clone()
            })
            .collect();
        let alpha = if self.d == 0 { Matrix::identity(self.field, 0) } else { Matrix::from_cols(self.field, self.d, &cols) };
        let beta = (0..self.n).map(|q| perm.apply(q + self.pd) - self.pd).collect();
        Pair { alpha, beta }
    }
}

/// Coset {s.then(representative) : s in subgroup}; subgroup stabilizes the source action.
#[derive(Clone, Debug)]
pub struct CompatCoset {
    pub representative: Option<Pair>,
    pub generators: Vec<Pair>,
    pub subgroup: PermGroupBSGS,
    pub codec: PairCodec,
}

impl CompatCoset {
    pub fn is_empty(&self) -> bool {
        self.representative.is_none()
    }

    pub fn size(&self) -> u128 {
        if self.is_empty() {
            0
        } else {
            self.subgroup.order()
        }
    }

    pub fn contains(&self, pair: &Pair) -> bool {
        match &self.representative {
            None => false,
            Some(r) => self.subgroup.contains(&self.codec.to_perm(&pair.then(&r.inverse()))),
        }
    }
}

/// Indecomposables closed under pullback by automorphism generators.
#[derive(Clone, Debug)]
pub struct ClosureTable {
    pub items: Vec<Representation>,
    /// gen_actions[k][i] = index of items[i]^{gamma_k}.
    pub gen_actions: Vec<Vec<usize>>,
    /// Index of each input module in `items`.
    pub start_index: Vec<usize>,
}

pub fn clo_closure(
    start: &[Representation],
    aut_gens: &[Vec<usize>],
    budget: usize,
) -> Result<ClosureTable> {
    let mut items: Vec<Representation> = Vec::new();
    let mut modules: Vec<MatrixModule> = Vec::new();
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut locate = |rep: Representation,
                      items: &mut Vec<Representation>,
                      modules: &mut Vec<MatrixModule>|
     -> Result<(usize, bool)> {
        let m = rep.module();
        let key = m.fingerprint();
        let bucket = buckets.entry(key).or_default();
        for &i in bucket.iter() {
            if indecomposable_iso(&m, &modules[i])?.is_some() {
                return Ok((i, false));
            }
        }
        if items.len() >= budget {
            return Err(GpiError::Budget(format!(
                "closure blow-up: more than {budget} indecomposables (likely a wild input)"
            )));
        }
        bucket.push(items.len());
        items.push(rep);
        modules.push(m);
        Ok((items.len() - 1, true))
    };
    let mut start_index = Vec::new();
    for s in start {
        start_index.push(locate(s.clone(), &mut items, &mut modules)?.0);
    }
    let mut gen_actions: Vec<Vec<usize>> = vec![Vec::new(); aut_gens.len()];
    let mut i = 0;
    while i < items.len() {
        for (k, gamma) in aut_gens.iter().enumerate() {
            let pulled = items[i].pullback(gamma);
            let (j, _) = locate(pulled, &mut items, &mut modules)?;
            gen_actions[k].push(j);
        }
        i += 1;
    }
    Ok(ClosureTable { items, gen_actions, start_index })
}

fn multiplicities(
    group: &FiniteGroup,
    rep: &Representation,
    seed: u64,
) -> Result<Vec<(Representation, usize)>> {
    let dec = decompose_module(&rep.module(), seed)?;
    dec.summands
        .iter()
        .map(|(m, k)| Ok((Representation::from_module(group, m, &rep.gens)?, *k)))
        .collect()
}

#[derive(Clone, Copy, Debug)]
pub struct CompatBudgets {
    pub closure: usize,
    pub transporter_nodes: usize,
}

impl Default for CompatBudgets {
    fn default() -> Self {
        CompatBudgets { closure: DEFAULT_CLOSURE_BUDGET, transporter_nodes: DEFAULT_TRANSPORTER_NODES }
    }
}

/// Pairs (alpha, beta) with beta in the group generated by `aut_gens` and theta^(alpha,beta) = eta.
pub fn action_compatibility(
    group: &FiniteGroup,
    theta: &Representation,
    eta: &Representation,
    aut_gens: &[Vec<usize>],
    budgets: CompatBudgets,
    seed: u64,
) -> Result<CompatCoset> {
    if theta.field != eta.field || theta.d != eta.d {
        return Err(GpiError::Invalid("actions over different fields or dimensions".into()));
    }
    let n = group.order();
    let field = theta.field;
    let eta = &Representation { gens: theta.gens.clone(), ..eta.clone() };
    let codec = PairCodec::new(field, theta.d, n)?;
    let empty = |codec: PairCodec| CompatCoset {
        representative: None,
        generators: vec![],
        subgroup: PermGroupBSGS::trivial(codec.degree()),
        codec,
    };
    let mt = multiplicities(group, theta, seed)?;
    let me = multiplicities(group, eta, seed)?;
    let dims = |m: &[(Representation, usize)]| {
        let mut v: Vec<(usize, usize)> = m.iter().map(|(r, k)| (r.d, *k)).collect();
        v.sort();
        v
    };
    if dims(&mt) != dims(&me) {
        return Ok(empty(codec));
    }
    let start: Vec<Representation> = mt.iter().chain(&me).map(|x| x.0.clone()).collect();
    let table = clo_closure(&start, aut_gens, budgets.closure)?;
    let items = table.items.len();
    let mut mult_t = vec![0usize; items];
    let mut mult_e = vec![0usize; items];
    for (k, (_, m)) in mt.iter().enumerate() {
        mult_t[table.start_index[k]] += m;
    }
    for (k, (_, m)) in me.iter().enumerate() {
        mult_e[table.start_index[mt.len() + k]] += m;
    }
    let deg = n + items;
    let combined: Vec<Perm> = aut_gens
        .iter()
        .enumerate()
        .map(|(k, gamma)| {
            let mut img: Vec<u32> = gamma.iter().map(|&x| x as u32).collect();
            img.extend(table.gen_actions[k].iter().map(|&j| (n + j) as u32));
            Perm(img)
        })
        .collect();
    let mut current = PermGroupBSGS::new(&combined, deg)?;
    let mut rep = Perm::identity(deg);
    let mut values: Vec<usize> = mult_t.iter().chain(&mult_e).copied().filter(|&m| m > 0).collect();
    values.sort_unstable_by(|a, b| b.cmp(a));
    values.dedup();
    for m in values {
        let s: Vec<usize> = (0..items).filter(|&i| mult_t[i] == m).map(|i| n + i).collect();
        let t: Vec<usize> = (0..items).filter(|&i| mult_e[i] == m).map(|i| n + i).collect();
        if s.len() != t.len() {
            return Ok(empty(codec));
        }
        let rinv = rep.inverse();
        let t2: Vec<usize> = t.iter().map(|&x| rinv.apply(x)).collect();
        match setwise_transporter(&current, &s, &t2, budgets.transporter_nodes)? {
            None => return Ok(empty(codec)),
            Some(c) => {
                rep = c.representative.then(&rep);
                current = c.subgroup;
            }
        }
    }
    let beta0: Vec<usize> = (0..n).map(|q| rep.apply(q)).collect();
    let theta_b = theta.pullback(&beta0);
    let alpha0 = module_isomorphism(&theta_b.module(), &eta.module(), seed)?
        .ok_or_else(|| GpiError::Verification("transported action is not isomorphic to the target".into()))?;
    let representative = Pair { alpha: alpha0, beta: beta0 };
    if representative.act_on(theta).images != eta.images {
        return Err(GpiError::Verification("compatibility representative fails".into()));
    }
    let mut generators = Vec::new();
    for s in current.strong_generators() {
        let gamma: Vec<usize> = (0..n).map(|q| s.apply(q)).collect();
        let tg = theta.pullback(&gamma);
        let alpha = module_isomorphism(&tg.module(), &theta.module(), seed)?
            .ok_or_else(|| GpiError::Verification("stabilizing automorphism has no linear part".into()))?;
        generators.push(Pair { alpha, beta: gamma });
    }
    let end = hom_space(&theta.module(), &theta.module())?;
    let units = unit_group(&MatrixAlgebra::from_basis(field, theta.d, end), seed)?;
    for u in &units.generators {
        generators.push(Pair { alpha: u.clone(), beta: (0..n).collect() });
    }
    for g in &generators {
        if g.act_on(theta).images != theta.images {
            return Err(GpiError::Verification("stabilizer generator moves the action".into()));
        }
    }
    let perms: Vec<Perm> = generators.iter().map(|g| codec.to_perm(g)).collect();
    let subgroup = PermGroupBSGS::new(&perms, codec.degree())?;
    let expected = current.order() * units.order;
    if subgroup.order() != expected {
        return Err(GpiError::Verification(format!(
            "stabilizer order {} differs from |K| * |units| = {expected}",
            subgroup.order()
        )));
    }
    Ok(CompatCoset { representative: Some(representative), generators, subgroup, codec })
}

/// Generators H plus one witness per generator of the quotient part; checked against an expected order.
pub fn semidirect_generators(
    h_gens: &[Perm],
    witnesses: &[Perm],
    degree: usize,
    expected_order: Option<u128>,
) -> Result<Vec<Perm>> {
    let mut out: Vec<Perm> = h_gens.to_vec();
    out.extend(witnesses.iter().cloned());
    if let Some(e) = expected_order {
        let g = PermGroupBSGS::new(&out, degree)?;
        if g.order() != e {
            return Err(GpiError::Verification(format!("generated order {} but expected {e}", g.order())));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_core::{make_group, Family};

    fn z3_gf4() -> (FiniteGroup, Representation, Representation) {
        let g = make_group(&Family::Cyclic(3)).unwrap();
        let f = Field::Gf4;
        let w = |c: u8| (0..3).map(|k| Matrix::scalar(f, 1, f.pow(c, k as u64))).collect::<Vec<_>>();
        let a = Representation::new(&g, f, w(2)).unwrap();
        let b = Representation::new(&g, f, w(3)).unwrap();
        (g, a, b)
    }

    #[test]
    fn pullback_by_inversion() {
        let (g, a, b) = z3_gf4();
        let inv: Vec<usize> = (0..3).map(|x| g.inv(x)).collect();
        assert_eq!(a.pullback(&inv).images, b.images);
    }

    #[test]
    fn closure_of_omega_rep() {
        let (g, a, _) = z3_gf4();
        let inv: Vec<usize> = (0..3).map(|x| g.inv(x)).collect();
        let t = clo_closure(&[a], &[inv], 100).unwrap();
        assert_eq!(t.items.len(), 2);
        assert_eq!(t.gen_actions[0], vec![1, 0]);
    }

    #[test]
    fn compat_needs_inversion() {
        let (g, a, b) = z3_gf4();
        let inv: Vec<usize> = (0..3).map(|x| g.inv(x)).collect();
        let c = action_compatibility(&g, &a, &b, &[inv.clone()], CompatBudgets::default(), 0).unwrap();
        assert_eq!(c.representative.as_ref().unwrap().beta, inv);
        assert!(c.size() > 0);
        let none = action_compatibility(&g, &a, &b, &[], CompatBudgets::default(), 0).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn trivial_rep_has_full_stabilizer() {
        let g = make_group(&Family::Cyclic(4)).unwrap();
        let th = Representation::trivial(&g, Field::gf(3), 1);
        let aut = vec![vec![0, 3, 2, 1]];
        let c = action_compatibility(&g, &th, &th, &aut, CompatBudgets::default(), 0).unwrap();
        // GL(1,3) x Aut(Z4)
        assert_eq!(c.size(), 4);
    }

    #[test]
    fn pair_codec_round_trip() {
        let f = Field::gf(3);
        let codec = PairCodec::new(f, 2, 4).unwrap();
        let p = Pair { alpha: Matrix::from_rows(f, &[vec![1, 2], vec![0, 1]]), beta: vec![0, 3, 2, 1] };
        assert_eq!(codec.from_perm(&codec.to_perm(&p)), p);
        let q = Pair { alpha: Matrix::from_rows(f, &[vec![2, 0], vec![1, 1]]), beta: vec![0, 1, 2, 3] };
        assert_eq!(codec.to_perm(&p.then(&q)), codec.to_perm(&p).then(&codec.to_perm(&q)));
    }
}
