mod common;

use common::*;
use gpi_core::brute_oracle::{brute_aut, brute_iso};
use gpi_core::group_core::Family;
use gpi_core::pipeline::{gpi_full, verify_isomorphism, PipelineConfig, Registry};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn named_groups_match_brute_aut() {
    let cfg = PipelineConfig::default();
    for (name, g) in named_groups().into_iter().filter(|(n, g)| g.order() <= 32 && n != "D8xD8") {
        let c = gpi_full(&g, &g, &cfg).unwrap();
        assert_eq!(c.aut_order(), brute_aut(&g).unwrap().order(), "{name}");
    }
}

#[test]
fn verdicts_invariant_under_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = PipelineConfig::default();
    let pairs = [
        (cyc(8), product(cyc(4), cyc(2))),
        (mk(Family::Dihedral(2)), mk(Family::Quaternion(2))),
        (mk(Family::Dih(6)), product(cyc(2), mk(Family::Symmetric(3)))),
        (mk(Family::Semidihedral(3)), mk(Family::Dihedral(3))),
    ];
    for (g, h) in pairs {
        let base = gpi_full(&g, &h, &cfg).unwrap();
        assert_eq!(base.is_empty(), brute_iso(&g, &h).unwrap().is_none());
        for _ in 0..3 {
            let g2 = random_relabel(&g, &mut rng);
            let h2 = random_relabel(&h, &mut rng);
            let c = gpi_full(&g2, &h2, &cfg).unwrap();
            assert_eq!(c.is_empty(), base.is_empty());
            assert_eq!(c.aut_order(), base.aut_order());
            if let Some(w) = &c.witness {
                verify_isomorphism(&g2, &h2, w).unwrap();
            }
        }
    }
}

#[test]
fn strategies_and_functors_agree() {
    let reg = Registry::default();
    let g = mk(Family::Quaternion(3));
    let h = mk(Family::Semidihedral(3));
    for functor in reg.functor_names() {
        let cfg = PipelineConfig { functor: functor.into(), ..PipelineConfig::default() };
        let (gg, _) = reg.run("tower", &g, &g, &cfg).unwrap();
        let (gh, _) = reg.run("tower", &g, &h, &cfg).unwrap();
        assert_eq!(gg.aut_order(), brute_aut(&g).unwrap().order(), "{functor}");
        assert!(gh.is_empty());
    }
    let (b, _) = reg.run("brute", &g, &g, &PipelineConfig::default()).unwrap();
    assert_eq!(b.aut_order(), brute_aut(&g).unwrap().order());
}

#[test]
fn random_extensions_against_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cfg = PipelineConfig::default();
    for (qn, q) in quotient_pool().into_iter().take(5) {
        for (p, d) in layer_choices(q.order()).into_iter().filter(|&(p, d)| q.order() * (p as usize).pow(d as u32) <= 32) {
            let a = random_extension(&qn, &q, p, d, &mut rng);
            let b = random_extension(&qn, &q, p, d, &mut rng);
            let c = gpi_full(&a.g, &b.g, &cfg).unwrap();
            assert_eq!(c.is_empty(), brute_iso(&a.g, &b.g).unwrap().is_none(), "{} vs {}", a.label, b.label);
            if !c.is_empty() {
                assert_eq!(c.aut_order(), brute_aut(&a.g).unwrap().order(), "{}", a.label);
            }
        }
    }
}

#[test]
fn wild_layer_reports_budget() {
    let d8 = mk(Family::Dihedral(2));
    let g = product(d8.clone(), d8);
    let err = gpi_full(&g, &g, &PipelineConfig::default()).unwrap_err();
    assert_eq!(err.exit_code(), 2, "{err}");
}

#[test]
fn dihedral_twelve_and_z2_times_s3_are_isomorphic() {
    // Dih(2k) ~ Z2 x Dih(k) for odd k: the central rotation of order 2 splits off
    let g = mk(Family::Dih(6));
    let h = product(cyc(2), mk(Family::Symmetric(3)));
    assert!(brute_iso(&g, &h).unwrap().is_some());
    let c = gpi_full(&g, &h, &PipelineConfig::default()).unwrap();
    verify_isomorphism(&g, &h, c.witness.as_ref().unwrap()).unwrap();
    assert_eq!(c.aut_order(), 12);
}
