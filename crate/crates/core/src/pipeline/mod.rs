//! Isomorphism of tame extensions: EDPC, lifting quotient isomorphisms through an
//! elementary abelian layer, and the iterated tower driver.

pub mod registry;

pub use registry::{CharacteristicFunctor, IsoStrategy, Registry};

use crate::action_compat::{action_compatibility, CompatBudgets, CompatCoset, Pair};
use crate::brute_oracle::{brute_aut, brute_iso, homomorphism_violation};
use crate::cohomology::{
    cciso, extension_data, h1, is_cohomologous_in, CoboundaryWitness, Cocycle, CohomologySpace, ExtensionData,
    DEFAULT_H2_BUDGET,
};
use crate::error::{GpiError, Result};
use crate::gfq_linalg::matrix::vec_add;
use crate::group_core::{
    recognize_tame_2group, subgroup_as_group, sylow_subgroup, FiniteGroup, Subgroup, TameType,
};
use crate::perm_group::{Perm, PermGroupBSGS};
use crate::rep_mod::Representation;
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub seed: u64,
    pub compat: CompatBudgets,
    pub h2_budget: u64,
    pub functor: String,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            seed: 0,
            compat: CompatBudgets::default(),
            h2_budget: DEFAULT_H2_BUDGET,
            functor: "o-p-radical".into(),
        }
    }
}

/// Iso(G, H) as one witness plus generators of Aut(G) (permutations of G's elements).
#[derive(Clone, Debug)]
pub struct IsoCoset {
    pub witness: Option<Vec<usize>>,
    pub aut_generators: Vec<Perm>,
    pub aut: PermGroupBSGS,
}

impl IsoCoset {
    pub fn empty(n: usize) -> IsoCoset {
        IsoCoset { witness: None, aut_generators: vec![], aut: PermGroupBSGS::trivial(n) }
    }

    pub fn is_empty(&self) -> bool {
        self.witness.is_none()
    }

    pub fn aut_order(&self) -> u128 {
        self.aut.order()
    }

    pub fn aut_images(&self) -> Vec<Vec<usize>> {
        self.aut_generators.iter().map(|p| p.images()).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TamenessReport {
    pub p: u8,
    pub sylow_order: usize,
    pub sylow_type: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LayerReport {
    pub order: usize,
    pub layer_p: u8,
    pub layer_d: usize,
    pub quotient_order: usize,
    pub tameness: TamenessReport,
    pub dim_h2: usize,
    pub verdict: bool,
}

pub fn tameness_report(q: &FiniteGroup, p: u8) -> Result<TamenessReport> {
    let s = sylow_subgroup(q, p as usize)?;
    let (sg, _) = subgroup_as_group(q, &s);
    let n = sg.order();
    let kind = if n == 1 {
        "trivial".to_string()
    } else if sg.element_orders().contains(&n) {
        "cyclic".to_string()
    } else if p == 2 {
        match recognize_tame_2group(&sg).0 {
            TameType::Dihedral(m) => format!("dihedral({m})"),
            TameType::Semidihedral(m) => format!("semidihedral({m})"),
            TameType::Quaternion(m) => format!("quaternion({m})"),
            TameType::Cyclic => "cyclic".into(),
            TameType::Trivial => "trivial".into(),
            TameType::None => "wild".into(),
        }
    } else {
        "wild".into()
    };
    Ok(TamenessReport { p, sylow_order: n, sylow_type: kind })
}

/// First violation of map(xy) = map(x)map(y), or a bijectivity failure.
pub fn verify_isomorphism(g: &FiniteGroup, h: &FiniteGroup, map: &[usize]) -> Result<()> {
    let n = g.order();
    if h.order() != n || map.len() != n {
        return Err(GpiError::Invalid("map does not match the group orders".into()));
    }
    let mut seen = vec![false; n];
    for &y in map {
        if y >= n || std::mem::replace(&mut seen[y], true) {
            return Err(GpiError::Invalid(format!("map is not a bijection (image {y} repeated or out of range)")));
        }
    }
    if let Some((a, b)) = homomorphism_violation(g, h, map) {
        return Err(GpiError::Verification(format!("map(xy) != map(x)map(y) at ({a}, {b})")));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct EdpcResult {
    pub compat: CompatCoset,
    /// Stabilizer of (theta, [f]) inside the compat stabilizer, as permutations of the pair codec.
    pub class_stabilizer: PermGroupBSGS,
    /// (alpha, beta) with theta^(alpha,beta) = eta and f^(alpha,beta) - g = b_u.
    pub representative: Option<(Pair, CoboundaryWitness)>,
}

#[allow(clippy::too_many_arguments)]
pub fn edpc(
    q: &FiniteGroup,
    theta: &Representation,
    f: &Cocycle,
    eta: &Representation,
    g: &Cocycle,
    aut_gens: &[Vec<usize>],
    space_theta: &CohomologySpace,
    cfg: &PipelineConfig,
) -> Result<EdpcResult> {
    let compat = action_compatibility(q, theta, eta, aut_gens, cfg.compat, cfg.seed)?;
    let stab_only = CompatCoset {
        representative: Some(Pair::identity(theta.field, theta.d, q.order())),
        ..compat.clone()
    };
    let Some(c0) = compat.representative.clone() else {
        return Ok(EdpcResult {
            compat,
            class_stabilizer: PermGroupBSGS::trivial(stab_only.codec.degree()),
            representative: None,
        });
    };
    let c0i = c0.inverse();
    let g_back = g.act(&c0i.alpha, &c0i.beta);
    let res = cciso(q, theta, space_theta, f, &g_back, &stab_only, cfg.h2_budget)?;
    let representative = match res.representative {
        None => None,
        Some((t, _)) => {
            let rep = t.then(&c0);
            if rep.act_on(theta).images != eta.images {
                return Err(GpiError::Verification("EDPC representative does not carry theta to eta".into()));
            }
            let moved = f.act(&rep.alpha, &rep.beta);
            let space_eta = CohomologySpace::new(q, eta)?;
            let u = is_cohomologous_in(&space_eta, q, eta, &moved, g)?
                .ok_or_else(|| GpiError::Verification("EDPC representative does not match the classes".into()))?;
            Some((rep, u))
        }
    };
    Ok(EdpcResult { compat, class_stabilizer: res.class_stabilizer, representative })
}

/// The map (a, q) -> (alpha a + u(beta q), phi0(beta q)) from G's data to H's data.
fn assemble_map(
    g: &FiniteGroup,
    h: &FiniteGroup,
    dg: &ExtensionData,
    dh: &ExtensionData,
    phi0: &[usize],
    pair: &Pair,
    u: &[Vec<u8>],
) -> Vec<usize> {
    let field = dg.structure.field();
    (0..g.order())
        .map(|x| {
            let (a, q) = dg.decompose(g, x);
            let bq = pair.beta[q];
            let v = vec_add(field, &pair.alpha.mul_vec(&a), &u[bq]);
            dh.element(h, &v, phi0[bq])
        })
        .collect()
}

/// Lift Iso(G/A, H/B) to Iso(G, H) when A, B are characteristic elementary abelian.
pub fn iso_from_quotient(
    g: &FiniteGroup,
    h: &FiniteGroup,
    a: &Subgroup,
    b: &Subgroup,
    iso_q: &IsoCoset,
    cfg: &PipelineConfig,
) -> Result<(IsoCoset, LayerReport)> {
    let dg = extension_data(g, a)?;
    let dh = extension_data(h, b)?;
    let q = &dg.quotient;
    let tameness = tameness_report(q, dg.structure.p)?;
    let mut report = LayerReport {
        order: g.order(),
        layer_p: dg.structure.p,
        layer_d: dg.structure.d,
        quotient_order: q.order(),
        tameness,
        dim_h2: 0,
        verdict: false,
    };
    let n = g.order();
    if g.order() != h.order() || dg.structure.p != dh.structure.p || dg.structure.d != dh.structure.d {
        return Ok((IsoCoset::empty(n), report));
    }
    let Some(phi0) = iso_q.witness.clone() else {
        return Ok((IsoCoset::empty(n), report));
    };
    let theta = &dg.theta;
    let eta = Representation {
        field: theta.field,
        d: theta.d,
        images: phi0.iter().map(|&x| dh.theta.images[x].clone()).collect(),
        gens: theta.gens.clone(),
    };
    let mut gq = Cocycle::zero(theta.field, q.order(), theta.d);
    for x in 0..q.order() {
        for y in 0..q.order() {
            gq.set(x, y, dh.f.get(phi0[x], phi0[y]));
        }
    }
    gq.check(q, &eta)?;
    let space = CohomologySpace::new(q, theta)?;
    report.dim_h2 = space.dim_h2();
    let aut_q = iso_q.aut_images();
    let res = edpc(q, theta, &dg.f, &eta, &gq, &aut_q, &space, cfg)?;
    let Some((pair, u)) = res.representative else {
        return Ok((IsoCoset::empty(n), report));
    };
    let witness = assemble_map(g, h, &dg, &dh, &phi0, &pair, &u);
    verify_isomorphism(g, h, &witness)?;
    // Aut(G): lifts of the class stabilizer, then the crossed-homomorphism kernel
    let identity_q: Vec<usize> = (0..q.order()).collect();
    let mut gens = Vec::new();
    for perm in res.class_stabilizer.strong_generators() {
        let s = res.compat.codec.from_perm(&perm);
        let moved = dg.f.act(&s.alpha, &s.beta);
        let u = is_cohomologous_in(&space, q, theta, &moved, &dg.f)?
            .ok_or_else(|| GpiError::Verification("class stabilizer element moves the class".into()))?;
        let map = assemble_map(g, g, &dg, &dg, &identity_q, &s, &u);
        verify_isomorphism(g, g, &map)?;
        gens.push(Perm::from_images(&map)?);
    }
    let z1 = h1(q, theta)?;
    let id_pair = Pair::identity(theta.field, theta.d, q.order());
    for z in &z1.z1_basis {
        let map = assemble_map(g, g, &dg, &dg, &identity_q, &id_pair, z);
        verify_isomorphism(g, g, &map)?;
        gens.push(Perm::from_images(&map)?);
    }
    let aut = PermGroupBSGS::new(&gens, n)?;
    let expected = res.class_stabilizer.order() * (dg.structure.p as u128).pow(z1.z1_basis.len() as u32);
    if aut.order() != expected {
        return Err(GpiError::Verification(format!(
            "|Aut(G)| = {} but |Stab(theta,[f])| * |Z^1| = {expected}",
            aut.order()
        )));
    }
    report.verdict = true;
    Ok((IsoCoset { witness: Some(witness), aut_generators: gens, aut }, report))
}

/// Brute force on both groups.
pub fn brute_coset(g: &FiniteGroup, h: &FiniteGroup) -> Result<IsoCoset> {
    let aut = brute_aut(g)?;
    let witness = brute_iso(g, h)?;
    Ok(IsoCoset { witness, aut_generators: aut.generators().to_vec(), aut })
}

/// Iterate the lifting step over the characteristic tower chosen by `functor`.
pub fn gpi_tower(
    g: &FiniteGroup,
    h: &FiniteGroup,
    functor: &dyn CharacteristicFunctor,
    cfg: &PipelineConfig,
    layers: &mut Vec<LayerReport>,
) -> Result<IsoCoset> {
    let n = g.order();
    if n != h.order() {
        return Ok(IsoCoset::empty(n));
    }
    let a = functor.apply(g);
    let b = functor.apply(h);
    if a.order() != b.order() {
        return Ok(IsoCoset::empty(n));
    }
    if a.is_trivial() {
        return brute_coset(g, h);
    }
    let (qg, _) = crate::group_core::quotient_group(g, &a)?;
    let (qh, _) = crate::group_core::quotient_group(h, &b)?;
    let iso_q = gpi_tower(&qg, &qh, functor, cfg, layers)?;
    if iso_q.is_empty() {
        return Ok(IsoCoset::empty(n));
    }
    let (coset, report) = iso_from_quotient(g, h, &a, &b, &iso_q, cfg)?;
    layers.push(report);
    Ok(coset)
}

/// Full pipeline with the registry's default functor.
pub fn gpi_full(g: &FiniteGroup, h: &FiniteGroup, cfg: &PipelineConfig) -> Result<IsoCoset> {
    let reg = Registry::default();
    let functor = reg.functor(&cfg.functor)?;
    gpi_tower(g, h, functor, cfg, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_core::{center, make_group, Family};

    fn mk(f: Family) -> FiniteGroup {
        make_group(&f).unwrap()
    }

    #[test]
    fn z4_over_center() {
        let z4 = mk(Family::Cyclic(4));
        let cfg = PipelineConfig::default();
        let a = Subgroup::from_sorted(vec![0, 2]);
        let (q, _) = crate::group_core::quotient_group(&z4, &a).unwrap();
        let iso_q = brute_coset(&q, &q).unwrap();
        let (c, _) = iso_from_quotient(&z4, &z4, &a, &a, &iso_q, &cfg).unwrap();
        assert!(!c.is_empty());
        assert_eq!(c.aut_order(), 2);
        let k = mk(Family::ElemAb { p: 2, d: 2 });
        let b = Subgroup::from_sorted(vec![0, 1]);
        let (c, _) = iso_from_quotient(&z4, &k, &a, &b, &iso_q, &cfg).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn q8_over_center_matches_brute() {
        let q8 = mk(Family::Quaternion(2));
        let z = center(&q8);
        let (q, _) = crate::group_core::quotient_group(&q8, &z).unwrap();
        let iso_q = brute_coset(&q, &q).unwrap();
        let (c, _) = iso_from_quotient(&q8, &q8, &z, &z, &iso_q, &PipelineConfig::default()).unwrap();
        assert_eq!(c.aut_order(), 24);
    }

    #[test]
    fn full_pipeline_small_groups() {
        let cfg = PipelineConfig::default();
        let s3 = mk(Family::Symmetric(3));
        let c = gpi_full(&s3, &s3, &cfg).unwrap();
        assert_eq!(c.aut_order(), 6);
        let z6 = mk(Family::Cyclic(6));
        let p = mk(Family::Product(Box::new(mk(Family::Cyclic(2))), Box::new(mk(Family::Cyclic(3)))));
        assert!(!gpi_full(&z6, &p, &cfg).unwrap().is_empty());
        let d8 = mk(Family::Dihedral(2));
        let q8 = mk(Family::Quaternion(2));
        assert!(gpi_full(&d8, &q8, &cfg).unwrap().is_empty());
        assert_eq!(gpi_full(&d8, &d8, &cfg).unwrap().aut_order(), 8);
    }

    #[test]
    fn verify_rejects_constant_map() {
        let z2 = mk(Family::Cyclic(2));
        assert!(verify_isomorphism(&z2, &z2, &[0, 0]).is_err());
        assert!(verify_isomorphism(&z2, &z2, &[0, 1]).is_ok());
    }
}
