//! Exhaustive ground truth at desk scale.

use crate::cohomology::{CoboundaryWitness, Cocycle};
use crate::error::{GpiError, Result};
use crate::gfq_linalg::{vec_from_index, Matrix};
use crate::group_core::{centralizer_size, greedy_generators, FiniteGroup};
use crate::perm_group::{Perm, PermGroupBSGS};
use crate::rep_mod::{MatrixModule, Representation};
use std::collections::VecDeque;

pub const BRUTE_MAX_ORDER: usize = 200;
pub const BRUTE_MAX_SEARCH: u64 = 1 << 20;

/// Per-element invariant preserved by isomorphisms: (order, centralizer size, number of square roots).
fn fingerprints(g: &FiniteGroup) -> Vec<(usize, usize, usize)> {
    let n = g.order();
    let orders = g.element_orders();
    let mut roots = vec![0usize; n];
    for y in 0..n {
        roots[g.mul(y, y)] += 1;
    }
    (0..n).map(|x| (orders[x], centralizer_size(g, x), roots[x])).collect()
}

struct Search<'a> {
    g: &'a FiniteGroup,
    h: &'a FiniteGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a FiniteGroup, h: &'a FiniteGroup) -> Option<Search<'a>> {
        let fg = fingerprints(g);
        let fh = fingerprints(h);
        let mut census_g = fg.clone();
        let mut census_h = fh.clone();
        census_g.sort();
        census_h.sort();
        if census_g != census_h {
            return None;
        }
        let gens = greedy_generators(g);
        let candidates = gens
            .iter()
            .map(|&x| (0..h.order()).filter(|&y| fh[y] == fg[x]).collect())
            .collect();
        Some(Search { g, h, gens, candidates })
    }

    /// Partial map on <gens[..k]> determined by images, if consistent and injective.
    fn closure(&self, images: &[usize]) -> Option<Vec<usize>> {
        let n = self.g.order();
        let mut phi = vec![usize::MAX; n];
        let mut used = vec![false; n];
        phi[0] = 0;
        used[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &img) in images.iter().enumerate() {
                let y = self.g.mul(x, self.gens[k]);
                let v = self.h.mul(phi[x], img);
                if phi[y] == usize::MAX {
                    if used[v] {
                        return None;
                    }
                    phi[y] = v;
                    used[v] = true;
                    queue.push_back(y);
                } else if phi[y] != v {
                    return None;
                }
            }
        }
        Some(phi)
    }

    /// Complete `prefix` to an isomorphism, trying candidates in index order.
    fn extend(&self, prefix: &mut Vec<usize>) -> Option<Vec<usize>> {
        let k = prefix.len();
        if k == self.gens.len() {
            return self.closure(prefix);
        }
        for &c in &self.candidates[k] {
            prefix.push(c);
            if self.closure(prefix).is_some() {
                if let Some(full) = self.extend(prefix) {
                    prefix.pop();
                    return Some(full);
                }
            }
            prefix.pop();
        }
        None
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > BRUTE_MAX_ORDER {
        return Err(GpiError::Budget(format!("brute force limited to order {BRUTE_MAX_ORDER}, got {n}")));
    }
    Ok(())
}

/// Some isomorphism G -> H (as element images), or `None` when none exists.
pub fn brute_iso(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Vec<usize>>> {
    check_order(g.order())?;
    if g.order() != h.order() {
        return Ok(None);
    }
    let Some(s) = Search::new(g, h) else { return Ok(None) };
    let found = s.extend(&mut Vec::new());
    if let Some(phi) = &found {
        if let Some((a, b)) = homomorphism_violation(g, h, phi) {
            return Err(GpiError::Verification(format!("brute isomorphism fails at ({a}, {b})")));
        }
    }
    Ok(found)
}

pub fn homomorphism_violation(g: &FiniteGroup, h: &FiniteGroup, phi: &[usize]) -> Option<(usize, usize)> {
    let n = g.order();
    for a in 0..n {
        for b in 0..n {
            if phi[g.mul(a, b)] != h.mul(phi[a], phi[b]) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Aut(G) as a permutation group on the elements.
pub fn brute_aut(g: &FiniteGroup) -> Result<PermGroupBSGS> {
    let n = g.order();
    check_order(n)?;
    let s = Search::new(g, g).expect("a group matches itself");
    let r = s.gens.len();
    let mut gens: Vec<Perm> = Vec::new();
    let mut expected: u128 = 1;
    // stabilizer chain: level k fixes gens[..k]; handle the deepest level first
    for k in (0..r).rev() {
        let prefix: Vec<usize> = s.gens[..k].to_vec();
        let level_gens: Vec<Perm> = gens.clone();
        let mut orbit = orbit_of(&level_gens, n, s.gens[k]);
        for &c in &s.candidates[k] {
            if orbit.contains(&c) {
                continue;
            }
            let mut trial = prefix.clone();
            trial.push(c);
            if s.closure(&trial).is_none() {
                continue;
            }
            if let Some(phi) = s.extend(&mut trial) {
                let p = Perm::from_images(&phi)?;
                gens.push(p);
                orbit = orbit_of(&gens, n, s.gens[k]);
            }
        }
        expected *= orbit.len() as u128;
    }
    let group = PermGroupBSGS::new(&gens, n)?;
    if group.order() != expected {
        return Err(GpiError::Verification(format!(
            "automorphism group order {} disagrees with the chain product {expected}",
            group.order()
        )));
    }
    Ok(group)
}

fn orbit_of(gens: &[Perm], n: usize, x: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut out = vec![x];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = g.apply(out[i]);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

/// Exhaustive search for a nontrivial idempotent commuting with the action.
pub fn brute_indecomposable(m: &MatrixModule) -> Result<bool> {
    let f = m.field;
    let d = m.dim;
    let total = (f.size() as u64).checked_pow((d * d) as u32).filter(|&t| t <= BRUTE_MAX_SEARCH);
    let Some(total) = total else {
        return Err(GpiError::Budget("q^(d^2) exceeds the brute-force budget".into()));
    };
    if d == 0 {
        return Ok(false);
    }
    for idx in 0..total as usize {
        let e = Matrix { field: f, rows: d, cols: d, data: vec_from_index(f, idx, d * d) };
        if e.is_zero() || e.is_identity() || e.mul(&e) != e {
            continue;
        }
        if m.gens.iter().all(|a| a.mul(&e) == e.mul(a)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First u (with u(1) = 0) in index order with f - g = b_u.
pub fn brute_cohomologous(
    group: &FiniteGroup,
    theta: &Representation,
    f: &Cocycle,
    g: &Cocycle,
) -> Result<Option<CoboundaryWitness>> {
    let n = group.order();
    let d = theta.d;
    let field = theta.field;
    let free = (n.saturating_sub(1)) * d;
    let total = (field.size() as u64).checked_pow(free as u32).filter(|&t| t <= BRUTE_MAX_SEARCH);
    let Some(total) = total else {
        return Err(GpiError::Budget("p^(d |Q|) exceeds the brute-force budget".into()));
    };
    let diff = f.sub(g);
    for idx in 0..total as usize {
        let flat = vec_from_index(field, idx, free);
        let mut u = vec![vec![0u8; d]; n];
        for q in 1..n {
            u[q].copy_from_slice(&flat[(q - 1) * d..q * d]);
        }
        if Cocycle::coboundary(group, theta, &u) == diff {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq_linalg::Field;
    use crate::group_core::{make_group, Family};

    fn mk(f: Family) -> FiniteGroup {
        make_group(&f).unwrap()
    }

    #[test]
    fn iso_examples() {
        let z6 = mk(Family::Cyclic(6));
        let p = mk(Family::Product(Box::new(mk(Family::Cyclic(2))), Box::new(mk(Family::Cyclic(3)))));
        assert!(brute_iso(&z6, &z6).unwrap().is_some());
        assert!(brute_iso(&z6, &p).unwrap().is_some());
        assert!(brute_iso(&mk(Family::Dihedral(2)), &mk(Family::Quaternion(2))).unwrap().is_none());
    }

    #[test]
    fn aut_orders() {
        for (f, o) in [
            (Family::Cyclic(6), 2u128),
            (Family::Symmetric(3), 6),
            (Family::Quaternion(2), 24),
            (Family::Dihedral(2), 8),
            (Family::ElemAb { p: 2, d: 3 }, 168),
            (Family::Symmetric(4), 24),
            (Family::Alternating(4), 24),
            (Family::Dih(6), 12),
        ] {
            assert_eq!(brute_aut(&mk(f.clone())).unwrap().order(), o, "{f:?}");
        }
    }

    #[test]
    fn indecomposable_examples() {
        let z2 = mk(Family::Cyclic(2));
        let f2 = Field::gf(2);
        assert!(brute_indecomposable(&Representation::regular(&z2, f2).module()).unwrap());
        assert!(!brute_indecomposable(&Representation::trivial(&z2, f2, 2).module()).unwrap());
        assert!(brute_indecomposable(&Representation::trivial(&z2, f2, 1).module()).unwrap());
    }

    #[test]
    fn cohomologous_examples() {
        let z2 = mk(Family::Cyclic(2));
        let f2 = Field::gf(2);
        let th = Representation::trivial(&z2, f2, 1);
        let zero = Cocycle::zero(f2, 2, 1);
        assert_eq!(brute_cohomologous(&z2, &th, &zero, &zero).unwrap(), Some(vec![vec![0], vec![0]]));
        let mut z4 = Cocycle::zero(f2, 2, 1);
        z4.set(1, 1, &[1]);
        assert!(brute_cohomologous(&z2, &th, &z4, &zero).unwrap().is_none());
    }
}
