use super::{is_cohomologous_in, CoboundaryWitness, Cocycle, CohomologySpace};
use crate::action_compat::{CompatCoset, Pair};
use crate::error::{GpiError, Result};
use crate::gfq_linalg::{vec_from_index, vec_index};
use crate::group_core::FiniteGroup;
use crate::perm_group::{Perm, PermGroupBSGS};
use crate::rep_mod::Representation;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct CcisoResult {
    /// Some t with f^t cohomologous to g, together with u such that f^t - g = b_u.
    pub representative: Option<(Pair, CoboundaryWitness)>,
    /// Stabilizer of the class of f inside the given stabilizer of theta.
    pub class_stabilizer: PermGroupBSGS,
    pub orbit_size: usize,
}

/// Pairs s in `stab` (all fixing theta) with f^s cohomologous to g.
pub fn cciso(
    group: &FiniteGroup,
    theta: &Representation,
    space: &CohomologySpace,
    f: &Cocycle,
    g: &Cocycle,
    stab: &CompatCoset,
    h2_budget: u64,
) -> Result<CcisoResult> {
    let codec = &stab.codec;
    let field = space.field;
    let k = space.dim_h2();
    let classes = (field.size() as u64)
        .checked_pow(k as u32)
        .filter(|&c| c <= h2_budget)
        .ok_or_else(|| GpiError::Budget(format!("H^2 has dimension {k}; enumeration exceeds the budget")))?;
    let gens: Vec<Perm> = stab.subgroup.strong_generators();
    // action of each generator on class coordinates, column j = image of h2_reps[j]
    let mut actions: Vec<Vec<Vec<u8>>> = Vec::new();
    for perm in &gens {
        let pair = codec.from_perm(perm);
        if pair.act_on(theta).images != theta.images {
            return Err(GpiError::Verification("stabilizer element moves the action".into()));
        }
        let cols = space
            .h2_reps
            .iter()
            .map(|r| space.class_coords(&r.act(&pair.alpha, &pair.beta)))
            .collect::<Result<Vec<_>>>()?;
        actions.push(cols);
    }
    let apply = |a: usize, c: &[u8]| -> Vec<u8> {
        let mut out = vec![0u8; k];
        for (j, &cj) in c.iter().enumerate() {
            if cj != 0 {
                crate::gfq_linalg::matrix::axpy(field, &mut out, cj, &actions[a][j]);
            }
        }
        out
    };
    let cf = space.class_coords(f)?;
    let cg = space.class_coords(g)?;
    let deg = codec.degree();
    let start = vec_index(field, &cf);
    let mut transversal: HashMap<usize, Perm> = HashMap::from([(start, Perm::identity(deg))]);
    let mut orbit = vec![start];
    let mut i = 0;
    while i < orbit.len() {
        let c = vec_from_index(field, orbit[i], k);
        for (a, perm) in gens.iter().enumerate() {
            let img = vec_index(field, &apply(a, &c));
            if !transversal.contains_key(&img) {
                let t = transversal[&orbit[i]].then(perm);
                transversal.insert(img, t);
                orbit.push(img);
            }
        }
        i += 1;
        if orbit.len() as u64 > classes {
            return Err(GpiError::Verification("orbit larger than H^2".into()));
        }
    }
    let total = stab.subgroup.order();
    let target = total / orbit.len() as u128;
    let mut st = PermGroupBSGS::trivial(deg);
    'outer: for &c in &orbit {
        let cv = vec_from_index(field, c, k);
        for (a, perm) in gens.iter().enumerate() {
            if st.order() == target {
                break 'outer;
            }
            let img = vec_index(field, &apply(a, &cv));
            let w = transversal[&c].then(perm).then(&transversal[&img].inverse());
            if !w.is_identity() {
                st.add_generator(&w);
            }
        }
    }
    if st.order() != target {
        return Err(GpiError::Verification(format!(
            "class stabilizer has order {} but orbit-stabilizer predicts {target}",
            st.order()
        )));
    }
    let representative = match transversal.get(&vec_index(field, &cg)) {
        None => None,
        Some(t) => {
            let pair = codec.from_perm(t);
            let moved = f.act(&pair.alpha, &pair.beta);
            let u = is_cohomologous_in(space, group, theta, &moved, g)?
                .ok_or_else(|| GpiError::Verification("transported class is not cohomologous to g".into()))?;
            Some((pair, u))
        }
    };
    Ok(CcisoResult { representative, class_stabilizer: st, orbit_size: orbit.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action_compat::{action_compatibility, CompatBudgets};
    use crate::gfq_linalg::Field;
    use crate::group_core::{make_group, Family};

    #[test]
    fn z2_classes_do_not_merge() {
        let q = make_group(&Family::Cyclic(2)).unwrap();
        let th = Representation::trivial(&q, Field::gf(2), 1);
        let space = CohomologySpace::new(&q, &th).unwrap();
        let stab = action_compatibility(&q, &th, &th, &[], CompatBudgets::default(), 0).unwrap();
        let zero = Cocycle::zero(Field::gf(2), 2, 1);
        let nz = space.h2_reps[0].clone();
        let r = cciso(&q, &th, &space, &nz, &zero, &stab, 1000).unwrap();
        assert!(r.representative.is_none());
        let r = cciso(&q, &th, &space, &nz, &nz, &stab, 1000).unwrap();
        let (pair, u) = r.representative.unwrap();
        assert!(pair.is_identity());
        assert!(u.iter().all(|x| x.iter().all(|&c| c == 0)));
    }

    #[test]
    fn klein_trivial_classes_form_orbits_under_gl() {
        // Q = Z2 x Z2, A = F2 trivial: H^2 = F2^3, Aut(Q) = S3 acts; classes split into orbits
        let q = make_group(&Family::ElemAb { p: 2, d: 2 }).unwrap();
        let th = Representation::trivial(&q, Field::gf(2), 1);
        let space = CohomologySpace::new(&q, &th).unwrap();
        let aut = vec![vec![0, 2, 1, 3], vec![0, 1, 3, 2]];
        let stab = action_compatibility(&q, &th, &th, &aut, CompatBudgets::default(), 0).unwrap();
        assert_eq!(stab.size(), 6);
        let mut sizes = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for idx in 0..8usize {
            let c = space.class_rep(&vec_from_index(Field::gf(2), idx, 3));
            let r = cciso(&q, &th, &space, &c, &c, &stab, 1000).unwrap();
            let key = {
                let mut orbit_members = Vec::new();
                for j in 0..8usize {
                    let d = space.class_rep(&vec_from_index(Field::gf(2), j, 3));
                    if cciso(&q, &th, &space, &c, &d, &stab, 1000).unwrap().representative.is_some() {
                        orbit_members.push(j);
                    }
                }
                orbit_members
            };
            assert_eq!(key.len(), r.orbit_size);
            if seen.insert(key) {
                sizes.push(r.orbit_size);
            }
        }
        sizes.sort();
        // orbits of the 8 extensions of Z2 by Z2^2: Z2^3 | Z2xZ4 (3 classes) | D8 (3) | Q8 (1)
        assert_eq!(sizes, vec![1, 1, 3, 3]);
    }
}
