//! Groups given by Cayley tables, with element 0 as the identity.

mod families;

pub use families::{make_group, recognize_tame_2group, Family, TameType};

use crate::error::{GpiError, Result};
use crate::gfq_linalg::field::is_prime;
use crate::gfq_linalg::{vec_from_index, Field};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct GroupFile {
    n: usize,
    table: Vec<Vec<usize>>,
}

/// Validate a Cayley table; the first violated axiom is reported.
pub fn load_group(table: &[Vec<usize>]) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(GpiError::InvalidGroup("empty table".into()));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(GpiError::InvalidGroup(format!("row {i} has length {} != {n}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(GpiError::InvalidGroup(format!("row {i} contains out-of-range entry {bad}")));
        }
    }
    for i in 0..n {
        let mut seen = vec![false; n];
        for &x in &table[i] {
            if std::mem::replace(&mut seen[x], true) {
                return Err(GpiError::InvalidGroup(format!("row {i} is not a permutation")));
            }
        }
    }
    for j in 0..n {
        let mut seen = vec![false; n];
        for row in table {
            if std::mem::replace(&mut seen[row[j]], true) {
                return Err(GpiError::InvalidGroup(format!("column {j} is not a permutation")));
            }
        }
    }
    for i in 0..n {
        if table[0][i] != i || table[i][0] != i {
            return Err(GpiError::InvalidGroup(format!("element 0 is not the identity (index {i})")));
        }
    }
    let flat: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
    let at = |a: usize, b: usize| flat[a * n + b] as usize;
    let check = |a: usize, b: usize, c: usize| -> Result<()> {
        if at(at(a, b), c) != at(a, at(b, c)) {
            return Err(GpiError::InvalidGroup(format!("associativity fails at ({a}, {b}, {c})")));
        }
        Ok(())
    };
    if n <= 512 {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    check(a, b, c)?;
                }
            }
        }
    } else {
        let mut s = 0x9e3779b97f4a7c15u64;
        for _ in 0..200_000 {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            let (a, b, c) = ((s % n as u64) as usize, ((s >> 20) % n as u64) as usize, ((s >> 40) % n as u64) as usize);
            check(a, b, c)?;
        }
    }
    let mut inv = vec![0u32; n];
    for a in 0..n {
        inv[a] = (0..n).find(|&b| at(a, b) == 0).unwrap() as u32;
    }
    Ok(FiniteGroup { n, table: flat, inv })
}

impl FiniteGroup {
    /// Build from a closure without validation; used by constructors whose tables are correct by construction.
    pub(crate) fn from_fn_unchecked(n: usize, mul: impl Fn(usize, usize) -> usize) -> FiniteGroup {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(mul(a, b) as u32);
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| table[a * n + b] == 0).expect("group has inverses") as u32;
        }
        FiniteGroup { n, table, inv }
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup { n: 1, table: vec![0], inv: vec![0] }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// g x g^{-1}
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GroupFile { n: self.n, table: self.table() }).unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<FiniteGroup> {
        let gf: GroupFile = serde_json::from_value(v.clone())
            .map_err(|e| GpiError::Invalid(format!("group file: {e}")))?;
        if gf.n != gf.table.len() {
            return Err(GpiError::InvalidGroup(format!("n = {} but table has {} rows", gf.n, gf.table.len())));
        }
        load_group(&gf.table)
    }

    /// Relabel elements: `perm[old] = new`, with perm[0] = 0.
    pub fn relabel(&self, perm: &[usize]) -> FiniteGroup {
        assert_eq!(perm[0], 0);
        let mut back = vec![0; self.n];
        for (o, &nw) in perm.iter().enumerate() {
            back[nw] = o;
        }
        FiniteGroup::from_fn_unchecked(self.n, |a, b| perm[self.mul(back[a], back[b])])
    }

    /// Element orders, computed once.
    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.n).map(|x| element_order(self, x)).collect()
    }
}

pub fn element_order(g: &FiniteGroup, x: usize) -> usize {
    let mut k = 1;
    let mut y = x;
    while y != 0 {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subgroup {
    pub elements: Vec<usize>,
}

impl Subgroup {
    pub fn from_sorted(elements: Vec<usize>) -> Subgroup {
        Subgroup { elements }
    }

    pub fn trivial() -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        Subgroup { elements: (0..g.order()).collect() }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &x in &self.elements {
            m[x] = true;
        }
        m
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// Smallest subgroup containing `gens`, found by breadth-first closure.
pub fn subgroup_closure(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let gens: Vec<usize> = gens.iter().copied().filter(|&x| x != 0).collect();
    let mut out = vec![0];
    while let Some(a) = queue.pop_front() {
        for &s in &gens {
            let b = g.mul(a, s);
            if !seen[b] {
                seen[b] = true;
                out.push(b);
                queue.push_back(b);
            }
        }
    }
    out.sort_unstable();
    Subgroup { elements: out }
}

pub fn is_subgroup(g: &FiniteGroup, elements: &[usize]) -> bool {
    let mut m = vec![false; g.order()];
    for &x in elements {
        if x >= g.order() {
            return false;
        }
        m[x] = true;
    }
    m[0] && elements.iter().all(|&a| m[g.inv(a)] && elements.iter().all(|&b| m[g.mul(a, b)]))
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let n = g.order();
    Subgroup {
        elements: (0..n).filter(|&z| (0..n).all(|x| g.mul(z, x) == g.mul(x, z))).collect(),
    }
}

pub fn centralizer_size(g: &FiniteGroup, x: usize) -> usize {
    (0..g.order()).filter(|&y| g.mul(x, y) == g.mul(y, x)).count()
}

/// Commutator subgroup of a subgroup `s`.
pub fn derived_of(g: &FiniteGroup, s: &Subgroup) -> Subgroup {
    let mut comms = Vec::new();
    let mut seen = vec![false; g.order()];
    for &a in &s.elements {
        for &b in &s.elements {
            let c = g.commutator(a, b);
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    subgroup_closure(g, &comms)
}

pub fn derived_subgroup(g: &FiniteGroup) -> Subgroup {
    derived_of(g, &Subgroup::whole(g))
}

pub fn is_solvable_subgroup(g: &FiniteGroup, s: &Subgroup) -> bool {
    let mut cur = s.clone();
    loop {
        if cur.is_trivial() {
            return true;
        }
        let next = derived_of(g, &cur);
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
}

pub fn normal_closure(g: &FiniteGroup, set: &[usize]) -> Subgroup {
    let mut conjs = Vec::new();
    let mut seen = vec![false; g.order()];
    for &x in set {
        for h in 0..g.order() {
            let c = g.conj(x, h);
            if !seen[c] {
                seen[c] = true;
                conjs.push(c);
            }
        }
    }
    subgroup_closure(g, &conjs)
}

/// None if normal, else a pair (x in S, g) with g x g^{-1} outside S.
pub fn normality_witness(g: &FiniteGroup, s: &Subgroup) -> Option<(usize, usize)> {
    let m = s.mask(g.order());
    for h in 0..g.order() {
        for &x in &s.elements {
            if !m[g.conj(x, h)] {
                return Some((x, h));
            }
        }
    }
    None
}

pub fn is_normal(g: &FiniteGroup, s: &Subgroup) -> bool {
    normality_witness(g, s).is_none()
}

pub fn normalizer(g: &FiniteGroup, s: &Subgroup) -> Subgroup {
    let m = s.mask(g.order());
    Subgroup {
        elements: (0..g.order())
            .filter(|&h| s.elements.iter().all(|&x| m[g.conj(x, h)]))
            .collect(),
    }
}

pub fn conjugate_subgroup(g: &FiniteGroup, s: &Subgroup, h: usize) -> Subgroup {
    let mut e: Vec<usize> = s.elements.iter().map(|&x| g.conj(x, h)).collect();
    e.sort_unstable();
    Subgroup { elements: e }
}

pub fn intersect(a: &Subgroup, b: &Subgroup) -> Subgroup {
    Subgroup { elements: a.elements.iter().copied().filter(|&x| b.contains(x)).collect() }
}

/// Quotient by a normal subgroup; cosets ordered by least representative.
pub fn quotient_group(g: &FiniteGroup, nsub: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
    if let Some((x, h)) = normality_witness(g, nsub) {
        return Err(GpiError::Invalid(format!(
            "subgroup is not normal: {h} * {x} * {h}^-1 leaves it"
        )));
    }
    let n = g.order();
    let mut proj = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if proj[x] == usize::MAX {
            let id = reps.len();
            reps.push(x);
            for &k in &nsub.elements {
                proj[g.mul(x, k)] = id;
            }
        }
    }
    let q = FiniteGroup::from_fn_unchecked(reps.len(), |a, b| proj[g.mul(reps[a], reps[b])]);
    Ok((q, proj))
}

/// Least coset representatives of a normal subgroup, indexed by quotient element.
pub fn coset_representatives(proj: &[usize], q_order: usize) -> Vec<usize> {
    let mut reps = vec![usize::MAX; q_order];
    for (x, &c) in proj.iter().enumerate() {
        if reps[c] == usize::MAX {
            reps[c] = x;
        }
    }
    reps
}

/// The subgroup `s` as a group in its own right, with the embedding (local index -> parent index).
pub fn subgroup_as_group(g: &FiniteGroup, s: &Subgroup) -> (FiniteGroup, Vec<usize>) {
    let emb = s.elements.clone();
    let mut local = vec![usize::MAX; g.order()];
    for (i, &x) in emb.iter().enumerate() {
        local[x] = i;
    }
    let h = FiniteGroup::from_fn_unchecked(emb.len(), |a, b| local[g.mul(emb[a], emb[b])]);
    (h, emb)
}

pub fn prime_factors(mut n: usize) -> Vec<usize> {
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

pub fn p_part(mut n: usize, p: usize) -> usize {
    let mut r = 1;
    while n % p == 0 {
        n /= p;
        r *= p;
    }
    r
}

/// A Sylow p-subgroup, grown one step at a time inside its normalizer.
pub fn sylow_subgroup(g: &FiniteGroup, p: usize) -> Result<Subgroup> {
    if !is_prime(p as u64) {
        return Err(GpiError::Invalid(format!("{p} is not prime")));
    }
    let target = p_part(g.order(), p);
    let mut pg = Subgroup::trivial();
    while pg.order() < target {
        let norm = normalizer(g, &pg);
        let inp = pg.mask(g.order());
        let mut grown = false;
        for &y in &norm.elements {
            if inp[y] {
                continue;
            }
            // order of y modulo P
            let mut k = 1;
            let mut z = y;
            while !inp[z] {
                z = g.mul(z, y);
                k += 1;
            }
            if k % p == 0 {
                let x = g.pow(y, (k / p) as i64);
                let mut gens = pg.elements.clone();
                gens.push(x);
                pg = subgroup_closure(g, &gens);
                grown = true;
                break;
            }
        }
        if !grown {
            return Err(GpiError::Verification("Sylow growth stalled".into()));
        }
    }
    Ok(pg)
}

/// Largest normal p-subgroup: the intersection of the conjugates of a Sylow p-subgroup.
pub fn o_p_subgroup(g: &FiniteGroup, p: usize) -> Result<Subgroup> {
    let s = sylow_subgroup(g, p)?;
    let mut cur = s.clone();
    for h in 0..g.order() {
        if cur.is_trivial() {
            break;
        }
        cur = intersect(&cur, &conjugate_subgroup(g, &s, h));
    }
    Ok(cur)
}

/// Largest solvable normal subgroup, generated by the elements whose normal closure is solvable.
pub fn solvable_radical(g: &FiniteGroup) -> Subgroup {
    let n = g.order();
    let mut decided = vec![None::<bool>; n];
    let mut gens = Vec::new();
    for x in 0..n {
        if decided[x].is_none() {
            let ok = is_solvable_subgroup(g, &normal_closure(g, &[x]));
            for h in 0..n {
                decided[g.conj(x, h)] = Some(ok);
            }
        }
        if decided[x] == Some(true) {
            gens.push(x);
        }
    }
    subgroup_closure(g, &gens)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemAbStructure {
    pub p: u8,
    pub d: usize,
    pub basis: Vec<usize>,
    /// coords[i] is the coordinate vector of `elements[i]`.
    pub elements: Vec<usize>,
    pub coords: Vec<Vec<u8>>,
    /// element_of[vec_index(v)] is the element with coordinates v.
    pub element_of: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotElemAb {
    NonCommuting(usize, usize),
    BadOrder(usize, usize),
}

impl ElemAbStructure {
    pub fn field(&self) -> Field {
        Field::gf(self.p)
    }

    pub fn coords_of(&self, x: usize) -> Option<&Vec<u8>> {
        self.elements.binary_search(&x).ok().map(|i| &self.coords[i])
    }

    pub fn element(&self, v: &[u8]) -> usize {
        self.element_of[crate::gfq_linalg::vec_index(self.field(), v)]
    }
}

/// Coordinates for an elementary abelian subgroup, or a witness that it is not one.
pub fn elem_ab_structure(g: &FiniteGroup, s: &Subgroup) -> std::result::Result<ElemAbStructure, NotElemAb> {
    for &a in &s.elements {
        for &b in &s.elements {
            if a < b && g.mul(a, b) != g.mul(b, a) {
                return Err(NotElemAb::NonCommuting(a, b));
            }
        }
    }
    let mut p = 0;
    for &x in &s.elements {
        if x == 0 {
            continue;
        }
        let o = element_order(g, x);
        if !is_prime(o as u64) || (p != 0 && o != p) {
            return Err(NotElemAb::BadOrder(x, o));
        }
        p = o;
    }
    if p == 0 {
        // trivial subgroup; record it over GF(2) with d = 0
        p = 2;
    }
    if p > 251 {
        return Err(NotElemAb::BadOrder(s.elements[1], p));
    }
    let field = Field::gf(p as u8);
    let mut basis = Vec::new();
    let mut span = Subgroup::trivial();
    for &x in &s.elements {
        if !span.contains(x) {
            basis.push(x);
            span = subgroup_closure(g, &basis);
        }
    }
    let d = basis.len();
    let total = p.pow(d as u32);
    let mut element_of = vec![0usize; total];
    for (idx, slot) in element_of.iter_mut().enumerate() {
        let v = vec_from_index(field, idx, d);
        let mut e = 0;
        for (i, &c) in v.iter().enumerate() {
            e = g.mul(e, g.pow(basis[i], c as i64));
        }
        *slot = e;
    }
    let mut pairs: Vec<(usize, Vec<u8>)> = element_of
        .iter()
        .enumerate()
        .map(|(idx, &e)| (e, vec_from_index(field, idx, d)))
        .collect();
    pairs.sort();
    Ok(ElemAbStructure {
        p: p as u8,
        d,
        basis,
        elements: pairs.iter().map(|x| x.0).collect(),
        coords: pairs.into_iter().map(|x| x.1).collect(),
        element_of,
    })
}

/// Greedy generating set: repeatedly add the element of largest order outside the current span.
pub fn greedy_generators(g: &FiniteGroup) -> Vec<usize> {
    let orders = g.element_orders();
    let mut cand: Vec<usize> = (1..g.order()).collect();
    cand.sort_by_key(|&x| (std::cmp::Reverse(orders[x]), x));
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial();
    for x in cand {
        if span.order() == g.order() {
            break;
        }
        if !span.contains(x) {
            gens.push(x);
            span = subgroup_closure(g, &gens);
        }
    }
    gens
}
