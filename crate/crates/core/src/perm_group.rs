//! Permutation groups by generators: Schreier-Sims, orbits, point and setwise transporters.
//!
//! Permutations act on the right: `p.then(q)` applies `p` first.

use crate::error::{GpiError, Result};
use std::collections::{HashMap, HashSet, VecDeque};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(GpiError::Invalid("not a permutation".into()));
            }
        }
        Ok(Perm(images.iter().map(|&x| x as u32).collect()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().position(|(i, &x)| i as u32 != x)
    }
}

#[derive(Clone, Debug)]
struct Level {
    point: u32,
    sgens: Vec<Perm>,
    orbit: Vec<u32>,
    trans: HashMap<u32, Perm>,
    checked: HashSet<(u32, usize)>,
}

impl Level {
    fn new(point: u32, degree: usize) -> Level {
        let mut trans = HashMap::new();
        trans.insert(point, Perm::identity(degree));
        Level { point, sgens: Vec::new(), orbit: vec![point], trans, checked: HashSet::new() }
    }

    /// Extend the orbit with the current strong generators, keeping existing transversal entries.
    fn extend_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let b = self.orbit[i];
            for s in &self.sgens {
                let c = s.0[b as usize];
                if !self.trans.contains_key(&c) {
                    let u = self.trans[&b].then(s);
                    self.trans.insert(c, u);
                    self.orbit.push(c);
                }
            }
            i += 1;
        }
    }
}

/// A permutation group with a base and strong generating set.
#[derive(Clone, Debug)]
pub struct PermGroupBSGS {
    degree: usize,
    gens: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroupBSGS {
    pub fn trivial(degree: usize) -> PermGroupBSGS {
        PermGroupBSGS { degree, gens: Vec::new(), levels: Vec::new() }
    }

    pub fn new(gens: &[Perm], degree: usize) -> Result<PermGroupBSGS> {
        Self::with_base_prefix(gens, degree, &[])
    }

    /// BSGS whose base starts with `prefix` (smallest moved point chosen for later base points).
    pub fn with_base_prefix(gens: &[Perm], degree: usize, prefix: &[usize]) -> Result<PermGroupBSGS> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(GpiError::Dimension(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        if prefix.iter().any(|&p| p >= degree) {
            return Err(GpiError::Invalid("base point outside the domain".into()));
        }
        let mut g = PermGroupBSGS {
            degree,
            gens: Vec::new(),
            levels: prefix.iter().map(|&p| Level::new(p as u32, degree)).collect(),
        };
        for s in gens {
            g.add_generator(s);
        }
        Ok(g)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point as usize).collect()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.levels.first().map(|l| l.sgens.clone()).unwrap_or_default()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for i in from..self.levels.len() {
            let lvl = &self.levels[i];
            let b = h.0[lvl.point as usize];
            match lvl.trans.get(&b) {
                None => return (h, i),
                Some(u) => h = h.then(&u.inverse()),
            }
        }
        let n = self.levels.len();
        (h, n)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, _) = self.sift(g, 0);
        h.is_identity()
    }

    /// Add a generator; returns true if the group grew.
    pub fn add_generator(&mut self, g: &Perm) -> bool {
        assert_eq!(g.degree(), self.degree);
        let (r, j) = self.sift(g, 0);
        if r.is_identity() {
            return false;
        }
        self.gens.push(g.clone());
        self.insert_strong(r, j);
        let mut i = j.min(self.levels.len() - 1) as isize;
        while i >= 0 {
            match self.find_missing(i as usize) {
                Some((r, j)) => {
                    self.insert_strong(r, j);
                    i = j.min(self.levels.len() - 1) as isize;
                }
                None => i -= 1,
            }
        }
        true
    }

    /// Insert a residue that fixes the first `j` base points.
    fn insert_strong(&mut self, r: Perm, j: usize) {
        if j == self.levels.len() {
            let p = r.first_moved().expect("nontrivial residue");
            self.levels.push(Level::new(p as u32, self.degree));
        }
        for l in 0..=j {
            self.levels[l].sgens.push(r.clone());
            self.levels[l].extend_orbit();
        }
    }

    /// First Schreier generator at level i that does not sift, with its residue and stop level.
    fn find_missing(&mut self, i: usize) -> Option<(Perm, usize)> {
        let mut k = 0;
        while k < self.levels[i].orbit.len() {
            let b = self.levels[i].orbit[k];
            for si in 0..self.levels[i].sgens.len() {
                if self.levels[i].checked.contains(&(b, si)) {
                    continue;
                }
                self.levels[i].checked.insert((b, si));
                let lvl = &self.levels[i];
                let s = &lvl.sgens[si];
                let c = s.0[b as usize];
                let h = lvl.trans[&b].then(s).then(&lvl.trans[&c].inverse());
                let (r, j) = self.sift(&h, i + 1);
                if !r.is_identity() {
                    return Some((r, j));
                }
            }
            k += 1;
        }
        None
    }

    /// Pointwise stabilizer of the first `k` base points, as a BSGS.
    pub fn stabilizer_of_base_prefix(&self, k: usize) -> PermGroupBSGS {
        if k >= self.levels.len() {
            return PermGroupBSGS::trivial(self.degree);
        }
        let levels: Vec<Level> = self.levels[k..].to_vec();
        let gens = levels[0].sgens.clone();
        PermGroupBSGS { degree: self.degree, gens, levels }
    }

    /// Transversal element of level `i` mapping its base point to `b`.
    fn transversal(&self, i: usize, b: u32) -> Option<&Perm> {
        self.levels[i].trans.get(&b)
    }

    /// All elements (intended for small groups in tests and oracles).
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.degree)];
        for lvl in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lvl.orbit.len());
            for h in &out {
                for b in &lvl.orbit {
                    next.push(h.then(&lvl.trans[b]));
                }
            }
            out = next;
        }
        out
    }

    /// Orbit of a point under the generators.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        orbit_with_transversal(&self.gens, self.degree, x).0
    }
}

/// Orbit of `x` with transversal perms t_y (x^{t_y} = y).
pub fn orbit_with_transversal(gens: &[Perm], degree: usize, x: usize) -> (Vec<usize>, HashMap<usize, Perm>) {
    let mut trans = HashMap::new();
    trans.insert(x, Perm::identity(degree));
    let mut orbit = vec![x];
    let mut queue = VecDeque::from([x]);
    while let Some(b) = queue.pop_front() {
        for s in gens {
            let c = s.apply(b);
            if !trans.contains_key(&c) {
                let u = trans[&b].then(s);
                trans.insert(c, u);
                orbit.push(c);
                queue.push_back(c);
            }
        }
    }
    (orbit, trans)
}

/// The coset {s.then(representative) : s in subgroup}.
#[derive(Clone, Debug)]
pub struct PermCoset {
    pub representative: Perm,
    pub subgroup: PermGroupBSGS,
}

impl PermCoset {
    pub fn contains(&self, g: &Perm) -> bool {
        self.subgroup.contains(&g.then(&self.representative.inverse()))
    }

    pub fn size(&self) -> u128 {
        self.subgroup.order()
    }
}

/// {σ in P : x^σ = y}, or None.
pub fn point_transporter(p: &PermGroupBSGS, x: usize, y: usize) -> Option<PermCoset> {
    let (_, trans) = orbit_with_transversal(&p.gens, p.degree, x);
    let rep = trans.get(&y)?.clone();
    let chain = PermGroupBSGS::with_base_prefix(&p.gens, p.degree, &[x]).expect("valid group");
    Some(PermCoset { representative: rep, subgroup: chain.stabilizer_of_base_prefix(1) })
}

pub const DEFAULT_TRANSPORTER_NODES: usize = 1_000_000;

/// {σ in P : S^σ = T} by backtracking over a stabilizer chain whose base starts with S.
pub fn setwise_transporter(
    p: &PermGroupBSGS,
    s: &[usize],
    t: &[usize],
    node_cap: usize,
) -> Result<Option<PermCoset>> {
    if s.len() != t.len() {
        return Err(GpiError::Invalid(format!("set sizes differ: {} vs {}", s.len(), t.len())));
    }
    let mut s_sorted = s.to_vec();
    s_sorted.sort_unstable();
    s_sorted.dedup();
    let mut t_mask = vec![false; p.degree];
    for &x in t {
        t_mask[x] = true;
    }
    if s_sorted.len() != s.len() || t_mask.iter().filter(|&&b| b).count() != t.len() {
        return Err(GpiError::Invalid("transporter sets contain repeated points".into()));
    }
    let k = s_sorted.len();
    let chain = PermGroupBSGS::with_base_prefix(&p.gens, p.degree, &s_sorted)?;
    let mut leaves: Vec<Perm> = Vec::new();
    let mut nodes = 0usize;
    let id = Perm::identity(p.degree);
    dfs(&chain, k, 0, &id, &t_mask, &mut leaves, &mut nodes, node_cap)?;
    let Some(rep) = leaves.first().cloned() else {
        return Ok(None);
    };
    let rep_inv = rep.inverse();
    let mut gens: Vec<Perm> = chain.stabilizer_of_base_prefix(k).strong_generators();
    gens.extend(leaves[1..].iter().map(|l| l.then(&rep_inv)));
    let sub = PermGroupBSGS::new(&gens, p.degree)?;
    Ok(Some(PermCoset { representative: rep, subgroup: sub }))
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    chain: &PermGroupBSGS,
    k: usize,
    i: usize,
    tail: &Perm,
    t_mask: &[bool],
    leaves: &mut Vec<Perm>,
    nodes: &mut usize,
    cap: usize,
) -> Result<()> {
    *nodes += 1;
    if *nodes > cap {
        return Err(GpiError::Budget(format!("setwise transporter exceeded {cap} search nodes")));
    }
    if i == k {
        leaves.push(tail.clone());
        return Ok(());
    }
    let orbit = chain.levels[i].orbit.clone();
    for b in orbit {
        if !t_mask[tail.apply(b as usize)] {
            continue;
        }
        let u = chain.transversal(i, b).unwrap();
        let next = u.then(tail);
        dfs(chain, k, i + 1, &next, t_mask, leaves, nodes, cap)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize) -> Perm {
        Perm((0..n as u32).map(|i| (i + 1) % n as u32).collect())
    }

    fn transposition(n: usize, a: usize, b: usize) -> Perm {
        let mut v: Vec<u32> = (0..n as u32).collect();
        v.swap(a, b);
        Perm(v)
    }

    #[test]
    fn orders() {
        assert_eq!(PermGroupBSGS::new(&[], 4).unwrap().order(), 1);
        assert_eq!(PermGroupBSGS::new(&[cyc(4)], 4).unwrap().order(), 4);
        let s4 = PermGroupBSGS::new(&[transposition(4, 0, 1), cyc(4)], 4).unwrap();
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.elements().iter().collect::<HashSet<_>>().len(), 24);
        let s6 = PermGroupBSGS::new(&[transposition(6, 0, 1), cyc(6)], 6).unwrap();
        assert_eq!(s6.order(), 720);
        assert!(PermGroupBSGS::new(&[cyc(3)], 4).is_err());
    }

    #[test]
    fn membership_matches_enumeration() {
        let g = PermGroupBSGS::new(&[Perm(vec![1, 0, 2, 3, 4, 5]), Perm(vec![0, 2, 3, 1, 5, 4])], 6).unwrap();
        let els: HashSet<Perm> = g.elements().into_iter().collect();
        assert_eq!(els.len() as u128, g.order());
        let all = PermGroupBSGS::new(&[transposition(6, 0, 1), cyc(6)], 6).unwrap();
        for e in all.elements() {
            assert_eq!(g.contains(&e), els.contains(&e));
        }
    }

    #[test]
    fn point_transporter_examples() {
        let c4 = PermGroupBSGS::new(&[cyc(4)], 4).unwrap();
        let t = point_transporter(&c4, 1, 1).unwrap();
        assert!(t.representative.is_identity());
        assert_eq!(t.size(), 1);
        let t = point_transporter(&c4, 0, 2).unwrap();
        assert_eq!(t.representative, cyc(4).then(&cyc(4)));
        assert_eq!(t.size(), 1);
        let split = PermGroupBSGS::new(&[transposition(4, 0, 1)], 4).unwrap();
        assert!(point_transporter(&split, 0, 2).is_none());
    }

    #[test]
    fn setwise_examples() {
        let triv = PermGroupBSGS::trivial(4);
        let t = setwise_transporter(&triv, &[0, 1], &[0, 1], 1000).unwrap().unwrap();
        assert!(t.representative.is_identity());
        assert_eq!(t.size(), 1);
        let split = PermGroupBSGS::new(&[transposition(4, 0, 1), transposition(4, 2, 3)], 4).unwrap();
        assert!(setwise_transporter(&split, &[0, 1], &[2, 3], 1000).unwrap().is_none());
        let c4 = PermGroupBSGS::new(&[cyc(4)], 4).unwrap();
        let t = setwise_transporter(&c4, &[0, 1], &[2, 3], 1000).unwrap().unwrap();
        assert_eq!(t.representative, cyc(4).then(&cyc(4)));
        assert!(setwise_transporter(&c4, &[0], &[1, 2], 10).is_err());
    }
}
