use super::Cocycle;
use crate::error::{GpiError, Result};
use crate::gfq_linalg::{vec_from_index, vec_index, Field, Matrix};
use crate::group_core::{
    coset_representatives, elem_ab_structure, is_normal, load_group, quotient_group, ElemAbStructure, FiniteGroup,
    NotElemAb, Subgroup,
};
use crate::rep_mod::Representation;

/// (theta, f_s) for G with respect to A and the least-representative section s.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub quotient: FiniteGroup,
    /// G element -> quotient element.
    pub projection: Vec<usize>,
    pub structure: ElemAbStructure,
    pub theta: Representation,
    pub f: Cocycle,
    pub section: Vec<usize>,
}

impl ExtensionData {
    /// The G element a * s(q).
    pub fn element(&self, g: &FiniteGroup, a: &[u8], q: usize) -> usize {
        g.mul(self.structure.element(a), self.section[q])
    }

    /// (a, q) with x = a * s(q).
    pub fn decompose(&self, g: &FiniteGroup, x: usize) -> (Vec<u8>, usize) {
        let q = self.projection[x];
        let a = g.mul(x, g.inv(self.section[q]));
        (self.structure.coords_of(a).expect("x s(q)^-1 lies in A").clone(), q)
    }
}

pub fn extension_data(g: &FiniteGroup, a: &Subgroup) -> Result<ExtensionData> {
    if !is_normal(g, a) {
        return Err(GpiError::Invalid("A is not normal in G".into()));
    }
    let structure = elem_ab_structure(g, a).map_err(|e| match e {
        NotElemAb::NonCommuting(x, y) => GpiError::Invalid(format!("A is not abelian: {x} and {y} do not commute")),
        NotElemAb::BadOrder(x, o) => GpiError::Invalid(format!("A is not elementary abelian: element {x} has order {o}")),
    })?;
    let (quotient, projection) = quotient_group(g, a)?;
    let qn = quotient.order();
    let section = coset_representatives(&projection, qn);
    let field = structure.field();
    let d = structure.d;
    let images: Vec<Matrix> = section
        .iter()
        .map(|&s| {
            let sinv = g.inv(s);
            let cols: Vec<Vec<u8>> = structure
                .basis
                .iter()
                .map(|&b| structure.coords_of(g.mul(g.mul(s, b), sinv)).expect("A is normal").clone())
                .collect();
            if d == 0 {
                Matrix::zeros(field, 0, 0)
            } else {
                Matrix::from_cols(field, d, &cols)
            }
        })
        .collect();
    let theta = Representation::new(&quotient, field, images)?;
    let mut f = Cocycle::zero(field, qn, d);
    for p in 0..qn {
        for q in 0..qn {
            let pq = quotient.mul(p, q);
            let x = g.mul(g.mul(section[p], section[q]), g.inv(section[pq]));
            f.set(p, q, structure.coords_of(x).expect("s(p)s(q)s(pq)^-1 lies in A"));
        }
    }
    f.check(&quotient, &theta)?;
    Ok(ExtensionData { quotient, projection, structure, theta, f, section })
}

/// Group on pairs (a, q), index q * p^d + vec_index(a), with
/// (a, q)(a', q') = (a + theta_q a' + f(q, q'), qq').
pub fn extension_from_data(q: &FiniteGroup, theta: &Representation, f: &Cocycle) -> Result<FiniteGroup> {
    let field: Field = theta.field;
    let d = theta.d;
    let pd = (field.size() as usize).pow(d as u32);
    let n = q.order();
    let total = pd * n;
    if total > 4096 {
        return Err(GpiError::Budget(format!("extension of order {total} is too large")));
    }
    let vecs: Vec<Vec<u8>> = (0..pd).map(|i| vec_from_index(field, i, d)).collect();
    let mut table = vec![vec![0usize; total]; total];
    for x in 0..total {
        let (qa, ia) = (x / pd, x % pd);
        for y in 0..total {
            let (qb, ib) = (y / pd, y % pd);
            let mut v = theta.images[qa].mul_vec(&vecs[ib]);
            for (i, t) in v.iter_mut().enumerate() {
                *t = field.add(field.add(*t, vecs[ia][i]), f.get(qa, qb)[i]);
            }
            table[x][y] = q.mul(qa, qb) * pd + vec_index(field, &v);
        }
    }
    load_group(&table).map_err(|e| GpiError::Verification(format!("extension table is not a group: {e}")))
}
